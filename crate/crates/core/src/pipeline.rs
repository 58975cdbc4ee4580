//! One synthetic image: placement, growth, radii and rasterization.

use crate::config::Engine;
use crate::error::Result;
use crate::forest::VesselForest;
use crate::growth::grow;
use crate::mask::BinaryMask;
use crate::placement::{init_roots, place};
use crate::radius::assign_radii;
use crate::raster::{rasterize, render_skeleton};

#[derive(Debug, Clone)]
pub struct Sample {
    pub seed: u64,
    pub forest: VesselForest<f64>,
    pub mask: BinaryMask,
    pub skeleton: BinaryMask,
    pub iterations: usize,
    pub attractors: usize,
    pub attractors_left: usize,
}

impl Engine {
    pub fn generate(&self, seed: u64) -> Result<Sample> {
        let mut placement = self.placement.clone();
        placement.seed = seed;
        let obstacle = self.growth.obstacle.as_ref();
        let mut field = place(&placement, self.width, self.height, obstacle)?;
        let attractors = field.len();
        let mut forest = VesselForest::new(self.width, self.height);
        for r in init_roots(&placement, self.width, self.height, obstacle)? {
            forest.add_node(r, None)?;
        }
        let iterations = grow(&mut forest, &mut field, &self.growth);
        assign_radii(&mut forest, &self.radius)?;
        let mask = rasterize(&forest, &self.raster)?;
        let skeleton = render_skeleton(&forest, self.raster.width, self.raster.height);
        Ok(Sample {
            seed,
            forest,
            mask,
            skeleton,
            iterations,
            attractors,
            attractors_left: field.live_count(),
        })
    }
}
