//! Structural summaries of vessel masks.

use std::collections::HashSet;

use serde::Serialize;

use crate::mask::BinaryMask;
use crate::morphology::{branch_points, distance_transform, end_points, skeletonize};
use crate::scalar::{from_usize, Scalar};

use super::walk::{Px, Skeleton, WalkEnd};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StructuralStats<T> {
    /// Foreground fraction of the image.
    pub vessel_density: T,
    pub branch_count: usize,
    pub endpoint_count: usize,
    /// Mean arc/chord ratio over skeleton branches; 1 when there are none.
    pub mean_tortuosity: T,
    /// Mean distance-transform value over skeleton pixels.
    pub mean_radius: T,
}

fn step_len(a: Px, b: Px) -> f64 {
    if a.0 != b.0 && a.1 != b.1 {
        std::f64::consts::SQRT_2
    } else {
        1.0
    }
}

fn chord(a: Px, b: Px) -> f64 {
    (a.0 as f64 - b.0 as f64).hypot(a.1 as f64 - b.1 as f64)
}

/// Arc/chord ratios of every node-to-node skeleton branch that has at least
/// one interior pixel.
pub(crate) fn branch_tortuosities(skeleton: &BinaryMask) -> Vec<f64> {
    let sk = Skeleton::new(skeleton);
    let mut claimed: HashSet<Px> = HashSet::new();
    let mut out = Vec::new();
    for u in skeleton.foreground() {
        if !sk.is_node(u) {
            continue;
        }
        let starts: Vec<Px> = sk.neighbors(u).collect();
        for v in starts {
            if sk.is_node(v) || claimed.contains(&v) {
                continue;
            }
            let (path, end) = sk.walk(u, v, &mut claimed, None);
            if end != WalkEnd::Node {
                continue;
            }
            let mut arc = step_len(u, path[0]);
            for w in path.windows(2) {
                arc += step_len(w[0], w[1]);
            }
            let c = chord(u, *path.last().unwrap());
            if c > 0.0 {
                out.push(arc / c);
            }
        }
    }
    out
}

pub fn structural_stats<T: Scalar>(mask: &BinaryMask) -> StructuralStats<T> {
    let skeleton = skeletonize(mask);
    let vessel_density = if mask.is_empty() {
        T::zero()
    } else {
        from_usize::<T>(mask.count()) / from_usize(mask.len())
    };
    let tort = branch_tortuosities(&skeleton);
    let mean_tortuosity = if tort.is_empty() {
        T::one()
    } else {
        T::lit(tort.iter().sum::<f64>() / tort.len() as f64)
    };
    let dt = distance_transform::<T>(mask);
    let n = skeleton.count();
    let mean_radius = if n == 0 {
        T::zero()
    } else {
        skeleton
            .foreground()
            .fold(T::zero(), |a, (x, y)| a + dt.get(x, y))
            / from_usize(n)
    };
    StructuralStats {
        vessel_density,
        branch_count: branch_points(&skeleton).len(),
        endpoint_count: end_points(&skeleton).len(),
        mean_tortuosity,
        mean_radius,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn empty_mask_conventions() {
        let s = structural_stats::<f64>(&BinaryMask::new(32, 32));
        assert_eq!(s.vessel_density, 0.0);
        assert_eq!(s.branch_count, 0);
        assert_eq!(s.endpoint_count, 0);
        assert_eq!(s.mean_tortuosity, 1.0);
        assert_eq!(s.mean_radius, 0.0);
    }

    #[test]
    fn straight_line() {
        let m = BinaryMask::from_fn(100, 100, |x, y| y == 50 && (25..75).contains(&x));
        let s = structural_stats::<f64>(&m);
        assert_abs_diff_eq!(s.vessel_density, 0.005, epsilon = 1e-15);
        assert_eq!(s.endpoint_count, 2);
        assert_eq!(s.branch_count, 0);
        assert_abs_diff_eq!(s.mean_tortuosity, 1.0, epsilon = 1e-12);
        assert_eq!(s.mean_radius, 1.0);
    }

    #[test]
    fn tee_junction() {
        let m = BinaryMask::from_fn(21, 21, |x, y| {
            (y == 5 && (2..19).contains(&x)) || (x == 10 && (5..18).contains(&y))
        });
        let s = structural_stats::<f64>(&m);
        assert_eq!(s.branch_count, 1);
        assert_eq!(s.endpoint_count, 3);
        assert_abs_diff_eq!(s.mean_tortuosity, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn bent_path_is_tortuous() {
        let m = BinaryMask::from_fn(40, 40, |x, y| {
            (y == 5 && (5..30).contains(&x)) || (x == 29 && (5..30).contains(&y))
        });
        let t = branch_tortuosities(&skeletonize(&m));
        assert_eq!(t.len(), 1);
        assert!(t[0] > 1.3, "{t:?}");
    }
}
