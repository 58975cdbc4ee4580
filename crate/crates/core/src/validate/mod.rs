//! Validation: Murray's-law compliance, overlap metrics and structural
//! statistics.

mod metrics;
mod murray;
mod stats;
mod walk;

pub use metrics::{cl_dice, dice, MetricsReport};
pub use murray::{
    compliance_score, murray_mask, murray_ratio, murray_tree, BifurcationEntry, MurrayReport,
    DEFAULT_OFFSET,
};
pub use stats::{structural_stats, StructuralStats};
