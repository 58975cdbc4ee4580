//! Space-colonization growth.
//!
//! Each step gathers, for every node, the live attractors within the
//! attraction distance, moves one segment length along the resulting unit
//! direction to place a child, and afterwards removes every attractor within
//! the kill distance of a node added in that step. Growth stops at the node
//! cap, at the iteration cap, or when a step adds nothing.
//!
//! Neighbour queries go through [`SpatialGrid`]; every candidate list is
//! sorted by index before use so results do not depend on bucket order.

use std::collections::BTreeMap;

use crate::field::AttractorField;
use crate::forest::VesselForest;
use crate::geom::Point2;
use crate::params::{GrowerMode, GrowthParams};
use crate::scalar::Scalar;
use crate::spatial::SpatialGrid;

/// Minimum spacing between nodes; closer children are not added.
pub const DUPLICATE_EPS: f64 = 1e-6;

/// Direction sums shorter than this are treated as cancelled.
pub const DEGENERATE_EPS: f64 = 1e-12;

/// For each node, the live attractors within `da`. Nodes with no attractor in
/// range are omitted.
pub fn influenced_nodes<T: Scalar>(
    forest: &VesselForest<T>,
    field: &AttractorField<T>,
    da: T,
) -> BTreeMap<usize, Vec<usize>> {
    let da2 = da * da;
    let mut out = BTreeMap::new();
    for (i, n) in forest.nodes().iter().enumerate() {
        let hits: Vec<usize> = field
            .points()
            .iter()
            .enumerate()
            .filter(|&(j, a)| field.is_alive(j) && a.dist_sq(n.pos) <= da2)
            .map(|(j, _)| j)
            .collect();
        if !hits.is_empty() {
            out.insert(i, hits);
        }
    }
    out
}

/// Unit growth direction from `node` towards `attractors`, or `None` when the
/// pull cancels out.
///
/// With `per_attractor_normalize` each offset is scaled to unit length before
/// summing; otherwise raw offsets are summed.
pub fn growth_direction<T: Scalar>(
    node: Point2<T>,
    attractors: impl IntoIterator<Item = Point2<T>>,
    per_attractor_normalize: bool,
) -> Option<Point2<T>> {
    let mut sum = Point2::new(T::zero(), T::zero());
    for a in attractors {
        let v = a - node;
        if per_attractor_normalize {
            let len = v.norm();
            if len > T::zero() {
                sum = sum + v * (T::one() / len);
            }
        } else {
            sum = sum + v;
        }
    }
    let len = sum.norm();
    if !(len.as_f64() >= DEGENERATE_EPS) {
        return None;
    }
    Some(sum * (T::one() / len))
}

/// Incremental growth state: spatial indexes over nodes and attractors plus
/// the ascending list of live attractors.
struct Colonizer<'a, T: Scalar> {
    forest: &'a mut VesselForest<T>,
    field: &'a mut AttractorField<T>,
    params: &'a GrowthParams<T>,
    node_grid: SpatialGrid,
    attractor_grid: SpatialGrid,
    live: Vec<usize>,
    influence: Vec<Vec<usize>>,
}

impl<'a, T: Scalar> Colonizer<'a, T> {
    fn new(
        forest: &'a mut VesselForest<T>,
        field: &'a mut AttractorField<T>,
        params: &'a GrowthParams<T>,
    ) -> Self {
        let cell = params
            .attraction_distance
            .max(params.kill_distance)
            .as_f64();
        let (w, h) = (forest.width(), forest.height());
        let mut node_grid = SpatialGrid::new(w, h, cell);
        for n in forest.nodes() {
            node_grid.insert(n.id, n.pos);
        }
        let mut attractor_grid = SpatialGrid::new(w, h, cell);
        for (i, a) in field.points().iter().enumerate() {
            attractor_grid.insert(i, *a);
        }
        let live = field.live_indices();
        Self {
            forest,
            field,
            params,
            node_grid,
            attractor_grid,
            live,
            influence: Vec::new(),
        }
    }

    fn kill_near(&mut self, ids: impl IntoIterator<Item = usize>) {
        let dk = self.params.kill_distance;
        let dk2 = dk * dk;
        let mut killed = false;
        for id in ids {
            let p = self.forest.node(id).pos;
            let field = &mut *self.field;
            self.attractor_grid.for_each_candidate(p, dk.as_f64(), |j| {
                if field.is_alive(j) && field.points()[j].dist_sq(p) <= dk2 {
                    field.kill(j);
                    killed = true;
                }
            });
        }
        if killed {
            let field = &*self.field;
            self.live.retain(|&j| field.is_alive(j));
        }
    }

    /// Fills `self.influence[node]` with ascending attractor indices.
    fn gather(&mut self) {
        let n = self.forest.len();
        for v in &mut self.influence {
            v.clear();
        }
        self.influence.resize_with(n, Vec::new);
        let da = self.params.attraction_distance;
        let da2 = da * da;
        let nodes = self.forest.nodes();
        for &j in &self.live {
            let a = self.field.points()[j];
            match self.params.grower_mode {
                GrowerMode::AllInfluenced => {
                    let influence = &mut self.influence;
                    let mut hits: Vec<usize> = Vec::new();
                    self.node_grid.for_each_candidate(a, da.as_f64(), |i| {
                        if nodes[i].pos.dist_sq(a) <= da2 {
                            hits.push(i);
                        }
                    });
                    for i in hits {
                        influence[i].push(j);
                    }
                }
                GrowerMode::NearestNode => {
                    let mut best: Option<(T, usize)> = None;
                    self.node_grid.for_each_candidate(a, da.as_f64(), |i| {
                        let d = nodes[i].pos.dist_sq(a);
                        if d <= da2 {
                            let better = match best {
                                None => true,
                                Some((bd, bi)) => d < bd || (d == bd && i < bi),
                            };
                            if better {
                                best = Some((d, i));
                            }
                        }
                    });
                    if let Some((_, i)) = best {
                        self.influence[i].push(j);
                    }
                }
            }
        }
    }

    fn is_duplicate(&self, p: Point2<T>) -> bool {
        let eps2 = T::lit(DUPLICATE_EPS * DUPLICATE_EPS);
        let nodes = self.forest.nodes();
        let mut dup = false;
        self.node_grid.for_each_candidate(p, DUPLICATE_EPS, |i| {
            dup |= nodes[i].pos.dist_sq(p) <= eps2;
        });
        dup
    }

    fn step(&mut self) -> bool {
        if self.live.is_empty() || self.forest.is_empty() {
            return false;
        }
        self.gather();
        let existing = self.forest.len();
        let ls = self.params.segment_length;
        let (w, h) = (self.forest.width(), self.forest.height());
        for i in 0..existing {
            if self.influence[i].is_empty() {
                continue;
            }
            if self.forest.len() >= self.params.max_nodes {
                break;
            }
            let pos = self.forest.node(i).pos;
            let points = self.field.points();
            let dir = growth_direction(
                pos,
                self.influence[i].iter().map(|&j| points[j]),
                self.params.per_attractor_normalize,
            );
            let Some(dir) = dir else { continue };
            let next = pos + dir * ls;
            if !next.in_rect(w, h) {
                continue;
            }
            if self
                .params
                .obstacle
                .as_ref()
                .is_some_and(|o| o.contains_point(next))
            {
                continue;
            }
            if self.is_duplicate(next) {
                continue;
            }
            let id = self
                .forest
                .add_node(next, Some(i))
                .expect("position and parent were checked");
            self.node_grid.insert(id, next);
        }
        let added = existing..self.forest.len();
        let grew = !added.is_empty();
        self.kill_near(added);
        grew
    }
}

/// One growth step. Returns whether any node was added.
pub fn step<T: Scalar>(
    forest: &mut VesselForest<T>,
    field: &mut AttractorField<T>,
    params: &GrowthParams<T>,
) -> bool {
    if forest.len() >= params.max_nodes {
        return false;
    }
    Colonizer::new(forest, field, params).step()
}

/// Grows until the node cap, the iteration cap, or stagnation, and returns
/// the number of steps that added nodes.
///
/// Attractors already within the kill distance of an existing node are
/// removed before the first step.
pub fn grow<T: Scalar>(
    forest: &mut VesselForest<T>,
    field: &mut AttractorField<T>,
    params: &GrowthParams<T>,
) -> usize {
    if forest.is_empty() || forest.len() >= params.max_nodes {
        return 0;
    }
    let mut c = Colonizer::new(forest, field, params);
    let initial = 0..c.forest.len();
    c.kill_near(initial);
    let mut iterations = 0;
    while iterations < params.max_iterations && c.forest.len() < params.max_nodes {
        if !c.step() {
            break;
        }
        iterations += 1;
    }
    iterations
}
