use std::fs;
use std::path::PathBuf;

use clap::Args as ClapArgs;
use rayon::prelude::*;
use serde::Serialize;
use vasqforge::{murray_mask, murray_tree, Error, Forest, MurrayReport, DEFAULT_OFFSET};

use crate::common::{io_err, list_pngs, load_mask, write_file, CliError};

#[derive(ClapArgs, Debug)]
pub struct Args {
    /// Directory of PNG masks.
    #[arg(long, value_name = "DIR", required_unless_present = "forest", conflicts_with = "forest")]
    pub masks: Option<PathBuf>,
    /// Forest JSON written by `generate --forest`.
    #[arg(long, value_name = "FILE")]
    pub forest: Option<PathBuf>,
    /// Only masks whose file name starts with this prefix.
    #[arg(long, default_value = "")]
    pub prefix: String,
    #[arg(long, default_value_t = 2.0)]
    pub gamma: f64,
    /// Skeleton pixels between a junction and the radius sample.
    #[arg(long, default_value_t = DEFAULT_OFFSET)]
    pub offset: usize,
    /// Report JSON path.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
enum Status {
    Ok,
    NoBifurcation,
}

#[derive(Serialize)]
struct Item {
    file: String,
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<MurrayReport<f64>>,
}

#[derive(Serialize)]
struct Report {
    gamma: f64,
    offset: usize,
    valid: usize,
    total: usize,
    mean_cs: Option<f64>,
    std_cs: Option<f64>,
    items: Vec<Item>,
}

fn item(file: String, r: Result<MurrayReport<f64>, Error>) -> Result<Item, CliError> {
    match r {
        Ok(report) => Ok(Item {
            file,
            status: Status::Ok,
            report: Some(report),
        }),
        Err(Error::NoBifurcation) => Ok(Item {
            file,
            status: Status::NoBifurcation,
            report: None,
        }),
        Err(e) => Err(CliError::Usage(format!("{file}: {e}"))),
    }
}

/// Mean and sample standard deviation.
pub fn summary(values: &[f64]) -> Option<(f64, f64)> {
    let n = values.len();
    if n == 0 {
        return None;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let sd = if n > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    Some((mean, sd))
}

pub fn run(a: Args) -> Result<(), CliError> {
    if !(a.gamma > 0.0) {
        return Err(CliError::Usage("--gamma must be > 0".into()));
    }
    if a.offset == 0 {
        return Err(CliError::Usage("--offset must be >= 1".into()));
    }
    let items = if let Some(dir) = &a.masks {
        let names = list_pngs(dir, &a.prefix)?;
        names
            .into_par_iter()
            .map(|name| {
                let mask = load_mask(&dir.join(&name))?;
                item(name, murray_mask::<f64>(&mask, a.gamma, a.offset))
            })
            .collect::<Result<Vec<_>, _>>()?
    } else {
        let path = a.forest.as_ref().expect("clap enforces one input");
        let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        let forest: Forest =
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        forest.validate()?;
        vec![item(path.display().to_string(), murray_tree(&forest, a.gamma))?]
    };

    let scores: Vec<f64> = items
        .iter()
        .filter_map(|i| i.report.as_ref().map(|r| r.compliance_score))
        .collect();
    let stats = summary(&scores);
    match stats {
        Some((m, sd)) => println!("CS: {:.2} ± {:.2}", m * 100.0, sd * 100.0),
        None => println!("CS: n/a"),
    }
    println!("valid masks: {}/{}", scores.len(), items.len());

    if let Some(out) = &a.out {
        let report = Report {
            gamma: a.gamma,
            offset: a.offset,
            valid: scores.len(),
            total: items.len(),
            mean_cs: stats.map(|s| s.0),
            std_cs: stats.map(|s| s.1),
            items,
        };
        let mut json = serde_json::to_vec_pretty(&report).expect("report serialises");
        json.push(b'\n');
        write_file(out, &json)?;
    }
    Ok(())
}
