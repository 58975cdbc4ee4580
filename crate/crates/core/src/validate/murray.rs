//! Murray's-law compliance at vessel bifurcations.
//!
//! At a bifurcation with parent radius `r0` and child radii `r_i`, the Murray
//! ratio is `MR = sum(r_i^gamma) / r0^gamma` and the deviation is `|1 - MR|`.
//! A set of bifurcations scores `CS = 1 / (1 + mean deviation)`.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::forest::VesselForest;
use crate::geom::Point2;
use crate::mask::BinaryMask;
use crate::morphology::{distance_transform, skeletonize};
use crate::scalar::{from_usize, Scalar};

use super::walk::{Skeleton, WalkEnd};

/// Skeleton steps between a junction and the pixel whose distance value is
/// read as a branch radius.
pub const DEFAULT_OFFSET: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BifurcationEntry<T> {
    pub location: Point2<T>,
    pub r0: T,
    pub children: Vec<T>,
    pub mr: T,
    pub deviation: T,
    /// The parent radius was clamped during radius assignment.
    pub clamped: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MurrayReport<T> {
    pub per_bifurcation: Vec<BifurcationEntry<T>>,
    pub mean_deviation: T,
    pub compliance_score: T,
    pub gamma: T,
}

impl<T: Scalar> MurrayReport<T> {
    fn from_entries(per_bifurcation: Vec<BifurcationEntry<T>>, gamma: T) -> Result<Self> {
        let devs: Vec<T> = per_bifurcation.iter().map(|e| e.deviation).collect();
        let compliance_score = compliance_score(&devs)?;
        let mean_deviation = mean(&devs);
        Ok(Self {
            per_bifurcation,
            mean_deviation,
            compliance_score,
            gamma,
        })
    }

    pub fn clamped_count(&self) -> usize {
        self.per_bifurcation.iter().filter(|e| e.clamped).count()
    }
}

fn mean<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |a, &b| a + b) / from_usize(v.len())
}

pub fn murray_ratio<T: Scalar>(r0: T, children: &[T], gamma: T) -> Result<T> {
    if !(r0 > T::zero() && r0.is_finite()) {
        return Err(param(format!("parent radius must be > 0, got {r0}")));
    }
    if children.is_empty() {
        return Err(param("at least one child radius is required"));
    }
    if children.iter().any(|&r| !(r > T::zero() && r.is_finite())) {
        return Err(param("child radii must be > 0"));
    }
    if !(gamma > T::zero()) {
        return Err(param(format!("gamma must be > 0, got {gamma}")));
    }
    let sum = children.iter().fold(T::zero(), |a, &r| a + r.powf(gamma));
    Ok(sum / r0.powf(gamma))
}

pub fn compliance_score<T: Scalar>(deviations: &[T]) -> Result<T> {
    if deviations.is_empty() {
        return Err(Error::NoBifurcation);
    }
    if deviations.iter().any(|&d| !(d >= T::zero())) {
        return Err(param("deviations must be >= 0"));
    }
    Ok(T::one() / (T::one() + mean(deviations)))
}

fn entry<T: Scalar>(location: Point2<T>, r0: T, children: Vec<T>, gamma: T, clamped: bool) -> Result<BifurcationEntry<T>> {
    let mr = murray_ratio(r0, &children, gamma)?;
    Ok(BifurcationEntry {
        location,
        r0,
        children,
        mr,
        deviation: (T::one() - mr).abs(),
        clamped,
    })
}

/// Scores every bifurcation of a radius-assigned forest using its stored
/// parent and child radii.
pub fn murray_tree<T: Scalar>(forest: &VesselForest<T>, gamma: T) -> Result<MurrayReport<T>> {
    if !forest.has_radii() {
        return Err(Error::State("forest radii have not been assigned".into()));
    }
    let entries = forest
        .bifurcations()
        .into_iter()
        .map(|(id, kids)| {
            let n = forest.node(id);
            let radii = kids.iter().map(|&c| forest.node(c).radius).collect();
            entry(n.pos, n.radius, radii, gamma, n.clamped)
        })
        .collect::<Result<Vec<_>>>()?;
    MurrayReport::from_entries(entries, gamma)
}

/// Scores the junctions of a binary vessel mask.
///
/// The mask is thinned; each 8-connected cluster of junction pixels is one
/// bifurcation. Every branch leaving the cluster is followed for `offset`
/// skeleton pixels and the distance-transform value at that pixel is taken
/// as the branch radius. The largest radius is the parent. Junctions with
/// fewer than three branches that reach `offset` pixels without meeting
/// another junction or ending are skipped.
pub fn murray_mask<T: Scalar>(mask: &BinaryMask, gamma: T, offset: usize) -> Result<MurrayReport<T>> {
    if offset == 0 {
        return Err(param("offset must be >= 1"));
    }
    let skeleton = skeletonize(mask);
    let dt = distance_transform::<T>(mask);
    let sk = Skeleton::new(&skeleton);
    let mut entries = Vec::new();

    for cluster in sk.junction_clusters() {
        let members: HashSet<_> = cluster.iter().copied().collect();
        let mut starts = Vec::new();
        for &c in &cluster {
            for n in sk.neighbors(c) {
                if !members.contains(&n) && !starts.iter().any(|&(s, _)| s == n) {
                    starts.push((n, c));
                }
            }
        }
        starts.sort_by_key(|&((x, y), _)| (y, x));
        let mut claimed: HashSet<_> = members.clone();
        claimed.extend(starts.iter().map(|&(s, _)| s));

        let mut radii = Vec::new();
        for &(start, from) in &starts {
            claimed.remove(&start);
            let (path, end) = sk.walk(from, start, &mut claimed, Some(offset));
            if end == WalkEnd::Limit && !sk.is_junction(path[offset - 1]) {
                let (x, y) = path[offset - 1];
                radii.push(dt.get(x, y));
            }
        }
        if radii.len() < 3 {
            continue;
        }
        radii.sort_by(|a, b| b.partial_cmp(a).expect("finite radii"));
        let r0 = radii[0];
        let children = radii[1..].to_vec();
        let (sx, sy) = cluster
            .iter()
            .fold((0.0, 0.0), |(ax, ay), &(x, y)| (ax + x as f64, ay + y as f64));
        let k = cluster.len() as f64;
        let location = Point2::new(T::lit(sx / k), T::lit(sy / k));
        entries.push(entry(location, r0, children, gamma, false)?);
    }
    MurrayReport::from_entries(entries, gamma)
}
