use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Args as ClapArgs;
use sha2::{Digest, Sha256};
use vasqforge::{BinaryMask, Engine, EngineConfig, Error};

pub const THREADS_ENV: &str = "VASQFORGE_THREADS";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Image(_) => CliError::Io(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub fn io_err(path: &Path, e: impl fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

pub fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let n = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a non-negative integer, got {v:?}")))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

#[derive(ClapArgs, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct ConfigSource {
    /// JSON config file.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Built-in preset: fundus, octa, oct, brain_dsa or coronary_dsa.
    #[arg(long, value_name = "NAME")]
    pub preset: Option<String>,
}

impl ConfigSource {
    /// The parsed config and the directory its relative paths resolve against.
    pub fn load(&self) -> Result<(EngineConfig, PathBuf), CliError> {
        if let Some(name) = &self.preset {
            let c = EngineConfig::preset(name).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown preset {name:?}; expected one of {}",
                    vasqforge::PRESETS.join(", ")
                ))
            })?;
            return Ok((c, PathBuf::from(".")));
        }
        let path = self.config.as_ref().expect("clap enforces one source");
        let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        let c = EngineConfig::from_json(&text)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((c, base))
    }
}

pub fn build(config: &EngineConfig, base: &Path) -> Result<Engine, CliError> {
    config.build(base).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn config_hash(config: &EngineConfig) -> String {
    let bytes = serde_json::to_vec(config).expect("config serialises");
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// PNG files in `dir` whose names start with `prefix`, sorted by name.
pub fn list_pngs(dir: &Path, prefix: &str) -> Result<Vec<String>, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| io_err(dir, e))?;
    let mut names = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| io_err(dir, e))?;
        let name = entry.file_name().to_string_lossy().into_owned();
        let is_png = Path::new(&name)
            .extension()
            .is_some_and(|x| x.eq_ignore_ascii_case("png"));
        if is_png && name.starts_with(prefix) && entry.path().is_file() {
            names.push(name);
        }
    }
    names.sort();
    Ok(names)
}

pub fn load_mask(path: &Path) -> Result<BinaryMask, CliError> {
    BinaryMask::load(path).map_err(|e| io_err(path, e))
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| io_err(path, e))
}

pub fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>, CliError> {
    let f = fs::File::create(path).map_err(|e| io_err(path, e))?;
    Ok(csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(f))
}

pub fn fixed(v: f64) -> String {
    format!("{v:.6}")
}

pub fn mean(v: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (sum, n) = v.into_iter().fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    (n > 0).then(|| sum / n as f64)
}
