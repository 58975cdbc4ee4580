//! Procedural vascular masks grown by space colonization.
//!
//! Generic over `f32`/`f64`; the aliases below fix the scalar to `f64`
//! (and `f32` where suffixed).

pub mod config;
pub mod error;
pub mod field;
pub mod forest;
pub mod geom;
pub mod growth;
pub mod mask;
pub mod morphology;
pub mod params;
pub mod pipeline;
pub mod placement;
pub mod radius;
pub mod raster;
pub mod scalar;
pub mod spatial;
pub mod validate;

pub use config::{Engine, EngineConfig, PRESETS};
pub use error::{Error, Result};
pub use field::AttractorField;
pub use forest::{GrowthNode, VesselForest};
pub use geom::Point2;
pub use growth::{grow, growth_direction, influenced_nodes, step};
pub use mask::BinaryMask;
pub use morphology::{branch_points, components, distance_transform, end_points, skeletonize, DistanceMap};
pub use params::{GrowerMode, GrowthParams, PlacementParams, PlacementStrategy, RadiusParams, RasterParams};
pub use pipeline::Sample;
pub use placement::{derive_seed, place, place_grid_jitter, place_real_conditioned, place_uniform};
pub use radius::assign_radii;
pub use raster::{draw_line, rasterize, render_skeleton};
pub use scalar::Scalar;
pub use validate::{
    cl_dice, compliance_score, dice, murray_mask, DEFAULT_OFFSET, murray_ratio, murray_tree, structural_stats, BifurcationEntry,
    MetricsReport, MurrayReport, StructuralStats,
};

pub type Point = Point2<f64>;
pub type Point32 = Point2<f32>;
pub type Forest = VesselForest<f64>;
pub type Forest32 = VesselForest<f32>;
pub type Node = GrowthNode<f64>;
pub type Field = AttractorField<f64>;
pub type Field32 = AttractorField<f32>;
pub type Growth = GrowthParams<f64>;
pub type Growth32 = GrowthParams<f32>;
pub type Radii = RadiusParams<f64>;
pub type Placement = PlacementParams<f64>;
