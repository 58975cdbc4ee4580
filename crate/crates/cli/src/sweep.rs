use std::path::PathBuf;

use clap::{Args as ClapArgs, ValueEnum};
use rayon::prelude::*;
use vasqforge::{derive_seed, structural_stats, EngineConfig};

use crate::common::{build, csv_writer, fixed, io_err, mean, CliError, ConfigSource};

pub const HEADER: [&str; 8] = [
    "param",
    "value",
    "mean_density",
    "mean_branch_count",
    "mean_tortuosity",
    "mean_radius",
    "mean_nodes",
    "mean_edge_length",
];

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Param {
    #[value(name = "Da")]
    Da,
    #[value(name = "Dk")]
    Dk,
    #[value(name = "Ls")]
    Ls,
}

impl Param {
    fn name(self) -> &'static str {
        match self {
            Param::Da => "Da",
            Param::Dk => "Dk",
            Param::Ls => "Ls",
        }
    }

    fn apply(self, c: &mut EngineConfig, v: f64) {
        match self {
            Param::Da => c.growth.attraction_distance = v,
            Param::Dk => c.growth.kill_distance = v,
            Param::Ls => c.growth.segment_length = v,
        }
    }
}

#[derive(ClapArgs, Debug)]
pub struct Args {
    #[command(flatten)]
    pub source: ConfigSource,
    #[arg(long, value_enum)]
    pub param: Param,
    /// Comma-separated values.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub values: Vec<f64>,
    /// Masks per value.
    #[arg(long, default_value_t = 20)]
    pub per: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "CSV")]
    pub out: PathBuf,
}

struct One {
    density: f64,
    branches: f64,
    tortuosity: f64,
    radius: f64,
    nodes: f64,
    edge_sum: f64,
    edges: usize,
}

fn value_text(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{v:.0}")
    } else {
        v.to_string()
    }
}

pub fn run(a: Args) -> Result<(), CliError> {
    if a.per == 0 {
        return Err(CliError::Usage("--per must be >= 1".into()));
    }
    let (base_config, base) = a.source.load()?;
    let mut w = csv_writer(&a.out)?;
    let werr = |e: csv::Error| io_err(&a.out, e);
    w.write_record(HEADER).map_err(werr)?;

    for &v in &a.values {
        let mut config = base_config.clone();
        a.param.apply(&mut config, v);
        let engine = match build(&config, &base) {
            Ok(e) => e,
            Err(e) => {
                eprintln!("warning: {}={} skipped: {e}", a.param.name(), value_text(v));
                w.write_record([a.param.name(), &value_text(v), "", "", "", "", "", ""])
                    .map_err(werr)?;
                continue;
            }
        };
        let runs = (0..a.per)
            .into_par_iter()
            .map(|j| {
                let s = engine.generate(derive_seed(a.seed, j as u64))?;
                let st = structural_stats::<f64>(&s.mask);
                Ok(One {
                    density: st.vessel_density,
                    branches: st.branch_count as f64,
                    tortuosity: st.mean_tortuosity,
                    radius: st.mean_radius,
                    nodes: s.forest.len() as f64,
                    edge_sum: s.forest.edge_lengths().sum(),
                    edges: s.forest.edges().count(),
                })
            })
            .collect::<Result<Vec<_>, vasqforge::Error>>()?;
        let edges: usize = runs.iter().map(|r| r.edges).sum();
        let edge_mean = if edges > 0 {
            fixed(runs.iter().map(|r| r.edge_sum).sum::<f64>() / edges as f64)
        } else {
            String::new()
        };
        let m = |f: fn(&One) -> f64| fixed(mean(runs.iter().map(f)).expect("per >= 1"));
        w.write_record([
            a.param.name().to_string(),
            value_text(v),
            m(|r| r.density),
            m(|r| r.branches),
            m(|r| r.tortuosity),
            m(|r| r.radius),
            m(|r| r.nodes),
            edge_mean,
        ])
        .map_err(werr)?;
    }
    w.flush().map_err(|e| io_err(&a.out, e))?;
    Ok(())
}
