//! Configuration records for placement, growth, radius assignment and
//! rasterization.

use crate::error::{param, Result};
use crate::geom::Point2;
use crate::mask::BinaryMask;
use crate::scalar::Scalar;

/// Which nodes an attractor pulls on during a growth step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GrowerMode {
    /// Every node within the attraction distance is influenced.
    #[default]
    AllInfluenced,
    /// Each attractor influences only its nearest node (classic variant).
    NearestNode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthParams<T> {
    pub attraction_distance: T,
    pub kill_distance: T,
    pub segment_length: T,
    pub max_nodes: usize,
    pub max_iterations: usize,
    /// Normalise each node-to-attractor vector before summing.
    pub per_attractor_normalize: bool,
    pub grower_mode: GrowerMode,
    pub obstacle: Option<BinaryMask>,
}

impl<T: Scalar> Default for GrowthParams<T> {
    fn default() -> Self {
        Self {
            attraction_distance: T::lit(20.0),
            kill_distance: T::lit(10.0),
            segment_length: T::lit(15.0),
            max_nodes: 2000,
            max_iterations: 500,
            per_attractor_normalize: false,
            grower_mode: GrowerMode::AllInfluenced,
            obstacle: None,
        }
    }
}

impl<T: Scalar> GrowthParams<T> {
    pub fn validate(&self) -> Result<()> {
        let (da, dk, ls) = (self.attraction_distance, self.kill_distance, self.segment_length);
        if !(da.is_finite() && da > T::zero()) {
            return Err(param(format!("attraction distance must be > 0, got {da}")));
        }
        if !(dk.is_finite() && dk > T::zero()) {
            return Err(param(format!("kill distance must be > 0, got {dk}")));
        }
        if !(ls.is_finite() && ls > T::zero()) {
            return Err(param(format!("segment length must be > 0, got {ls}")));
        }
        if dk >= da {
            return Err(param(format!(
                "kill distance ({dk}) must be smaller than attraction distance ({da})"
            )));
        }
        if self.max_nodes < 1 {
            return Err(param("max_nodes must be >= 1"));
        }
        if self.max_iterations < 1 {
            return Err(param("max_iterations must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlacementStrategy<T> {
    Uniform {
        count: usize,
    },
    GridJitter {
        cell: u32,
        jitter: T,
    },
    RealConditioned {
        reference_mask: BinaryMask,
        vessel_stride: u32,
        cell: u32,
        jitter: T,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlacementParams<T> {
    pub strategy: PlacementStrategy<T>,
    pub roots: Vec<Point2<T>>,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusParams<T> {
    pub r_tip: T,
    pub gamma: T,
    pub r_max: T,
}

impl<T: Scalar> Default for RadiusParams<T> {
    fn default() -> Self {
        Self {
            r_tip: T::one(),
            gamma: T::lit(2.0),
            r_max: T::lit(12.0),
        }
    }
}

impl<T: Scalar> RadiusParams<T> {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("r_tip", self.r_tip), ("gamma", self.gamma), ("r_max", self.r_max)] {
            if !(v.is_finite() && v > T::zero()) {
                return Err(param(format!("{name} must be > 0, got {v}")));
            }
        }
        if self.r_tip > self.r_max {
            return Err(param(format!(
                "r_tip ({}) exceeds r_max ({})",
                self.r_tip, self.r_max
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RasterParams {
    pub width: u32,
    pub height: u32,
    /// Subsamples per pixel side: 1, 2 or 4.
    pub supersample: u32,
}

impl Default for RasterParams {
    fn default() -> Self {
        Self {
            width: 512,
            height: 512,
            supersample: 4,
        }
    }
}

impl RasterParams {
    pub fn validate(&self) -> Result<()> {
        if !matches!(self.supersample, 1 | 2 | 4) {
            return Err(param(format!(
                "supersample must be 1, 2 or 4, got {}",
                self.supersample
            )));
        }
        if self.width == 0 || self.height == 0 {
            return Err(param("raster dimensions must be non-zero"));
        }
        Ok(())
    }
}
