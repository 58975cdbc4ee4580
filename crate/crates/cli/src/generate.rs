use std::fs;
use std::path::{Path, PathBuf};

use clap::Args as ClapArgs;
use rayon::prelude::*;
use serde::Serialize;
use vasqforge::{derive_seed, structural_stats, Engine, StructuralStats};

use crate::common::{build, config_hash, io_err, write_file, CliError, ConfigSource};

#[derive(ClapArgs, Debug)]
pub struct Args {
    #[command(flatten)]
    pub source: ConfigSource,
    /// Number of masks.
    #[arg(long)]
    pub count: usize,
    /// Master seed; image i uses a seed derived from (seed, i).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
    /// Also write each grown forest as forest_NNNNN.json.
    #[arg(long)]
    pub forest: bool,
}

#[derive(Serialize)]
struct Entry {
    index: usize,
    seed: u64,
    mask: String,
    skeleton: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    forest: Option<String>,
    nodes: usize,
    iterations: usize,
    stats: StructuralStats<f64>,
}

#[derive(Serialize)]
struct Manifest<'a> {
    config_hash: String,
    config: &'a vasqforge::EngineConfig,
    seed: u64,
    count: usize,
    images: Vec<Entry>,
}

fn one(engine: &Engine, out: &Path, master: u64, i: usize, forest: bool) -> Result<Entry, CliError> {
    let seed = derive_seed(master, i as u64);
    let s = engine.generate(seed)?;
    let mask = format!("mask_{i:05}.png");
    let skeleton = format!("skel_{i:05}.png");
    write_file(&out.join(&mask), &s.mask.encode_png()?)?;
    write_file(&out.join(&skeleton), &s.skeleton.encode_png()?)?;
    let forest_name = if forest {
        let name = format!("forest_{i:05}.json");
        let json = serde_json::to_vec(&s.forest).expect("forest serialises");
        write_file(&out.join(&name), &json)?;
        Some(name)
    } else {
        None
    };
    Ok(Entry {
        index: i,
        seed,
        mask,
        skeleton,
        forest: forest_name,
        nodes: s.forest.len(),
        iterations: s.iterations,
        stats: structural_stats(&s.mask),
    })
}

pub fn run(a: Args) -> Result<(), CliError> {
    if a.count == 0 {
        return Err(CliError::Usage("--count must be >= 1".into()));
    }
    let (config, base) = a.source.load()?;
    let engine = build(&config, &base)?;
    fs::create_dir_all(&a.out).map_err(|e| io_err(&a.out, e))?;

    let images = (0..a.count)
        .into_par_iter()
        .map(|i| one(&engine, &a.out, a.seed, i, a.forest))
        .collect::<Result<Vec<_>, _>>()?;

    let manifest = Manifest {
        config_hash: config_hash(&config),
        config: &config,
        seed: a.seed,
        count: a.count,
        images,
    };
    let mut json = serde_json::to_vec_pretty(&manifest).expect("manifest serialises");
    json.push(b'\n');
    write_file(&a.out.join("manifest.json"), &json)?;
    eprintln!("wrote {} masks to {}", a.count, a.out.display());
    Ok(())
}
