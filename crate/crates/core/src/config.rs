//! JSON generation config and per-modality presets.
//!
//! A config has five sections: `domain`, `placement`, `growth`, `radius` and
//! `raster`. Unknown keys are rejected. Paths inside a config are resolved
//! relative to the directory of the config file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::mask::BinaryMask;
use crate::params::{GrowerMode, GrowthParams, PlacementParams, PlacementStrategy, RadiusParams, RasterParams};

pub const PRESETS: [&str; 5] = ["fundus", "octa", "oct", "brain_dsa", "coronary_dsa"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainConfig {
    pub width: u32,
    pub height: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyName {
    Uniform,
    GridJitter,
    RealConditioned,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementConfig {
    pub strategy: StrategyName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default = "default_cell")]
    pub cell: u32,
    /// Defaults to half the cell size.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jitter: Option<f64>,
    #[serde(default = "default_stride")]
    pub vessel_stride: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_mask: Option<PathBuf>,
    pub roots: Vec<[f64; 2]>,
}

fn default_cell() -> u32 {
    20
}

fn default_stride() -> u32 {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowerModeName {
    #[default]
    AllInfluenced,
    NearestNode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstacleConfig {
    /// Foreground pixels of a PNG mask are obstacle.
    Png(PathBuf),
    /// Filled discs `[cx, cy, r]`.
    Discs(Vec<[f64; 3]>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthConfig {
    #[serde(alias = "da")]
    pub attraction_distance: f64,
    #[serde(alias = "dk")]
    pub kill_distance: f64,
    #[serde(alias = "ls")]
    pub segment_length: f64,
    pub max_nodes: usize,
    pub max_iterations: usize,
    #[serde(default)]
    pub per_attractor_normalize: bool,
    #[serde(default)]
    pub grower_mode: GrowerModeName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstacle: Option<ObstacleConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadiusConfig {
    pub r_tip: f64,
    pub gamma: f64,
    pub r_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RasterConfig {
    pub width: u32,
    pub height: u32,
    pub supersample: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EngineConfig {
    pub domain: DomainConfig,
    pub placement: PlacementConfig,
    pub growth: GrowthConfig,
    pub radius: RadiusConfig,
    pub raster: RasterConfig,
}

/// Fully resolved parameters, ready to generate images.
#[derive(Debug, Clone, PartialEq)]
pub struct Engine {
    pub width: u32,
    pub height: u32,
    pub placement: PlacementParams<f64>,
    pub growth: GrowthParams<f64>,
    pub radius: RadiusParams<f64>,
    pub raster: RasterParams,
}

fn field_err(field: &str, e: impl std::fmt::Display) -> Error {
    Error::Parameter(format!("{field}: {e}"))
}

fn wrap(field: &str, e: Error) -> Error {
    match e {
        Error::Parameter(m) => field_err(field, m),
        e => field_err(field, e),
    }
}

impl EngineConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parameter(format!("config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    pub fn preset(name: &str) -> Option<Self> {
        let (w, h) = (512u32, 512u32);
        let (cx, cy) = (w as f64 / 2.0, h as f64 / 2.0);
        let ring = |n: usize, r: f64| -> Vec<[f64; 2]> {
            (0..n)
                .map(|k| {
                    let a = std::f64::consts::TAU * k as f64 / n as f64;
                    [cx + r * a.cos(), cy + r * a.sin()]
                })
                .collect()
        };
        let (roots, obstacle) = match name {
            // Optic disc towards the nasal side.
            "fundus" => (vec![[0.22 * w as f64, cy]], None),
            // Roots on the foveal avascular zone boundary; the zone is blocked.
            "octa" => (ring(6, 44.0), Some(ObstacleConfig::Discs(vec![[cx, cy, 38.0]]))),
            "oct" => (ring(4, 60.0), Some(ObstacleConfig::Discs(vec![[cx, cy, 54.0]]))),
            // Major vessel origin at the skull base.
            "brain_dsa" => (vec![[cx, h as f64 - 8.0]], None),
            // Ostium near the top of the frame.
            "coronary_dsa" => (vec![[0.4 * w as f64, 8.0]], None),
            _ => return None,
        };
        Some(Self {
            domain: DomainConfig { width: w, height: h },
            placement: PlacementConfig {
                strategy: StrategyName::GridJitter,
                count: None,
                cell: 10,
                jitter: Some(5.0),
                vessel_stride: 1,
                reference_mask: None,
                roots,
            },
            growth: GrowthConfig {
                attraction_distance: 20.0,
                kill_distance: 10.0,
                segment_length: 15.0,
                max_nodes: 2000,
                max_iterations: 500,
                per_attractor_normalize: false,
                grower_mode: GrowerModeName::AllInfluenced,
                obstacle,
            },
            radius: RadiusConfig {
                r_tip: 1.0,
                gamma: 2.0,
                r_max: 12.0,
            },
            raster: RasterConfig {
                width: w,
                height: h,
                supersample: 4,
            },
        })
    }

    /// Validates every section and loads referenced masks.
    pub fn build(&self, base_dir: &Path) -> Result<Engine> {
        let (width, height) = (self.domain.width, self.domain.height);
        if width == 0 || height == 0 {
            return Err(field_err("domain", "width and height must be >= 1"));
        }
        let resolve = |p: &Path| if p.is_absolute() { p.to_path_buf() } else { base_dir.join(p) };

        let obstacle = match &self.growth.obstacle {
            None => None,
            Some(ObstacleConfig::Png(p)) => {
                let m = BinaryMask::load(resolve(p)).map_err(|e| wrap("growth.obstacle", e))?;
                if m.width() != width || m.height() != height {
                    return Err(field_err("growth.obstacle", "mask size differs from domain"));
                }
                Some(m)
            }
            Some(ObstacleConfig::Discs(discs)) => Some(BinaryMask::from_fn(width, height, |x, y| {
                discs.iter().any(|&[cx, cy, r]| {
                    (x as f64 - cx).powi(2) + (y as f64 - cy).powi(2) <= r * r
                })
            })),
        };

        let g = &self.growth;
        let growth = GrowthParams {
            attraction_distance: g.attraction_distance,
            kill_distance: g.kill_distance,
            segment_length: g.segment_length,
            max_nodes: g.max_nodes,
            max_iterations: g.max_iterations,
            per_attractor_normalize: g.per_attractor_normalize,
            grower_mode: match g.grower_mode {
                GrowerModeName::AllInfluenced => GrowerMode::AllInfluenced,
                GrowerModeName::NearestNode => GrowerMode::NearestNode,
            },
            obstacle,
        };
        growth.validate().map_err(|e| wrap("growth", e))?;

        let p = &self.placement;
        let jitter = p.jitter.unwrap_or(p.cell as f64 / 2.0);
        let strategy = match p.strategy {
            StrategyName::Uniform => PlacementStrategy::Uniform {
                count: p.count.ok_or_else(|| field_err("placement.count", "required for uniform placement"))?,
            },
            StrategyName::GridJitter => PlacementStrategy::GridJitter { cell: p.cell, jitter },
            StrategyName::RealConditioned => {
                let path = p.reference_mask.as_ref().ok_or_else(|| {
                    field_err("placement.reference_mask", "required for real_conditioned placement")
                })?;
                let reference_mask = BinaryMask::load(resolve(path))
                    .map_err(|e| wrap("placement.reference_mask", e))?;
                PlacementStrategy::RealConditioned {
                    reference_mask,
                    vessel_stride: p.vessel_stride,
                    cell: p.cell,
                    jitter,
                }
            }
        };
        if p.cell < 1 || p.cell > width.min(height) {
            return Err(field_err("placement.cell", format!("must lie in [1, {}]", width.min(height))));
        }
        if !(0.0..=p.cell as f64 / 2.0).contains(&jitter) {
            return Err(field_err("placement.jitter", "must lie in [0, cell/2]"));
        }
        if p.vessel_stride < 1 {
            return Err(field_err("placement.vessel_stride", "must be >= 1"));
        }
        if matches!(strategy, PlacementStrategy::Uniform { count: 0 }) {
            return Err(field_err("placement.count", "must be >= 1"));
        }
        let placement = PlacementParams {
            strategy,
            roots: p.roots.iter().map(|&[x, y]| Point2::new(x, y)).collect(),
            seed: 0,
        };
        crate::placement::init_roots(&placement, width, height, growth.obstacle.as_ref())
            .map_err(|e| wrap("placement.roots", e))?;

        let radius = RadiusParams {
            r_tip: self.radius.r_tip,
            gamma: self.radius.gamma,
            r_max: self.radius.r_max,
        };
        radius.validate().map_err(|e| wrap("radius", e))?;

        let raster = RasterParams {
            width: self.raster.width,
            height: self.raster.height,
            supersample: self.raster.supersample,
        };
        raster.validate().map_err(|e| wrap("raster", e))?;
        if raster.width < width || raster.height < height {
            return Err(field_err("raster", "image must be at least as large as the domain"));
        }

        Ok(Engine {
            width,
            height,
            placement,
            growth,
            radius,
            raster,
        })
    }
}
