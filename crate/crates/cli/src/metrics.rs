use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::Args as ClapArgs;
use rayon::prelude::*;
use vasqforge::cl_dice;

use crate::common::{csv_writer, fixed, io_err, list_pngs, load_mask, mean, CliError};

pub const HEADER: [&str; 5] = ["file", "dsc", "cl_dice", "t_prec", "t_sens"];

#[derive(ClapArgs, Debug)]
pub struct Args {
    #[arg(long, value_name = "DIR")]
    pub pred: PathBuf,
    #[arg(long, value_name = "DIR")]
    pub gt: PathBuf,
    #[arg(long, value_name = "CSV")]
    pub out: PathBuf,
}

pub fn run(a: Args) -> Result<(), CliError> {
    let pred: BTreeSet<String> = list_pngs(&a.pred, "")?.into_iter().collect();
    let gt: BTreeSet<String> = list_pngs(&a.gt, "")?.into_iter().collect();
    let unmatched: Vec<_> = pred.symmetric_difference(&gt).cloned().collect();
    if !unmatched.is_empty() {
        return Err(CliError::Usage(format!("unmatched files: {}", unmatched.join(", "))));
    }
    if pred.is_empty() {
        return Err(CliError::Usage("no PNG files found".into()));
    }

    let rows = pred
        .into_iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|name| {
            let p = load_mask(&a.pred.join(&name))?;
            let g = load_mask(&a.gt.join(&name))?;
            let c = cl_dice::<f64>(&p, &g).map_err(|e| CliError::Usage(format!("{name}: {e}")))?;
            Ok((name, [c.dsc, c.cl_dice, c.t_prec, c.t_sens]))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut w = csv_writer(&a.out)?;
    let werr = |e: csv::Error| io_err(&a.out, e);
    w.write_record(HEADER).map_err(werr)?;
    for (name, v) in &rows {
        let mut rec = vec![name.clone()];
        rec.extend(v.iter().map(|&x| fixed(x)));
        w.write_record(&rec).map_err(werr)?;
    }
    let mut rec = vec!["mean".to_string()];
    for k in 0..4 {
        rec.push(fixed(mean(rows.iter().map(|r| r.1[k])).expect("non-empty")));
    }
    w.write_record(&rec).map_err(werr)?;
    w.flush().map_err(|e| io_err(&a.out, e))?;
    Ok(())
}
