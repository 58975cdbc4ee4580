//! Tip-to-base radius assignment following Murray's law.

use crate::error::Result;
use crate::forest::VesselForest;
use crate::params::RadiusParams;
use crate::scalar::Scalar;

/// Gives every leaf `r_tip` and every internal node
/// `(sum of child r^gamma)^(1/gamma)`, clamped to `r_max`. A node with a
/// single child copies that child's radius exactly.
pub fn assign_radii<T: Scalar>(forest: &mut VesselForest<T>, params: &RadiusParams<T>) -> Result<()> {
    params.validate()?;
    let n = forest.len();
    let gamma = params.gamma;
    let mut sum_pow = vec![T::zero(); n];
    let mut n_children = vec![0usize; n];
    let mut only_child = vec![T::zero(); n];

    for id in (0..n).rev() {
        let (r, clamped) = match n_children[id] {
            0 => (params.r_tip, false),
            1 => (only_child[id], false),
            _ => {
                let r = sum_pow[id].powf(T::one() / gamma);
                if r > params.r_max {
                    (params.r_max, true)
                } else {
                    (r, false)
                }
            }
        };
        forest.set_radius(id, r, clamped);
        if let Some(p) = forest.node(id).parent {
            sum_pow[p] = sum_pow[p] + r.powf(gamma);
            n_children[p] += 1;
            only_child[p] = r;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point2;
    use approx::assert_abs_diff_eq;

    fn p(x: f64, y: f64) -> Point2<f64> {
        Point2::new(x, y)
    }

    fn star(k: usize) -> VesselForest<f64> {
        let mut f = VesselForest::new(100, 100);
        f.add_node(p(50.0, 50.0), None).unwrap();
        for i in 0..k {
            f.add_node(p(40.0 + i as f64 * 5.0, 60.0), Some(0)).unwrap();
        }
        f
    }

    #[test]
    fn two_leaves_give_sqrt2() {
        let mut f = star(2);
        assign_radii(&mut f, &RadiusParams::default()).unwrap();
        assert_abs_diff_eq!(f.node(0).radius, 2f64.sqrt(), epsilon = 1e-12);
        assert_eq!(f.node(1).radius, 1.0);
    }

    #[test]
    fn chain_passes_through() {
        let mut f = VesselForest::new(100, 100);
        f.add_node(p(1.0, 1.0), None).unwrap();
        f.add_node(p(2.0, 1.0), Some(0)).unwrap();
        f.add_node(p(3.0, 1.0), Some(1)).unwrap();
        assign_radii(&mut f, &RadiusParams::default()).unwrap();
        assert!(f.nodes().iter().all(|n| n.radius == 1.0));
    }

    #[test]
    fn three_leaves_r_tip_two() {
        let mut f = star(3);
        let params = RadiusParams { r_tip: 2.0, ..RadiusParams::default() };
        assign_radii(&mut f, &params).unwrap();
        assert_abs_diff_eq!(f.node(0).radius, 2.0 * 3f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn clamp_flags_node() {
        let mut f = star(4);
        let params = RadiusParams { r_tip: 1.0, gamma: 2.0, r_max: 1.5 };
        assign_radii(&mut f, &params).unwrap();
        assert_eq!(f.node(0).radius, 1.5);
        assert!(f.node(0).clamped);
        assert!(!f.node(1).clamped);
    }

    #[test]
    fn invalid_params_rejected() {
        let mut f = star(2);
        let params = RadiusParams { r_tip: 3.0, gamma: 2.0, r_max: 2.0 };
        assert!(assign_radii(&mut f, &params).is_err());
        let params = RadiusParams { r_tip: 1.0, gamma: 0.0, r_max: 2.0 };
        assert!(assign_radii(&mut f, &params).is_err());
    }
}
