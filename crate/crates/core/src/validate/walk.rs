//! Tracing paths along a thinned skeleton.

use std::collections::HashSet;

use crate::mask::{BinaryMask, NEIGHBORS_8};
use crate::morphology::branch_degree;

pub(crate) type Px = (u32, u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum WalkEnd {
    /// Reached a junction or tip pixel, which is the last pixel of the path.
    Node,
    /// Reached the requested length.
    Limit,
    /// Ran into a pixel already claimed by another walk.
    Claimed,
}

pub(crate) struct Skeleton<'a> {
    mask: &'a BinaryMask,
    degree: Vec<u8>,
}

#[inline]
fn adjacent(a: Px, b: Px) -> bool {
    a != b && (a.0 as i64 - b.0 as i64).abs() <= 1 && (a.1 as i64 - b.1 as i64).abs() <= 1
}

impl<'a> Skeleton<'a> {
    pub(crate) fn new(mask: &'a BinaryMask) -> Self {
        let mut degree = vec![0u8; mask.len()];
        for (x, y) in mask.foreground() {
            degree[mask.index(x, y)] = branch_degree(mask, x, y) as u8;
        }
        Self { mask, degree }
    }

    pub(crate) fn degree(&self, p: Px) -> u8 {
        self.degree[self.mask.index(p.0, p.1)]
    }

    /// Junction or tip: anything that is not an interior path pixel.
    pub(crate) fn is_node(&self, p: Px) -> bool {
        self.degree(p) != 2
    }

    pub(crate) fn is_junction(&self, p: Px) -> bool {
        self.degree(p) >= 3
    }

    pub(crate) fn neighbors(&self, p: Px) -> impl Iterator<Item = Px> + '_ {
        NEIGHBORS_8.iter().filter_map(move |(dx, dy)| {
            let (x, y) = (p.0 as i64 + dx, p.1 as i64 + dy);
            self.mask.get_signed(x, y).then_some((x as u32, y as u32))
        })
    }

    /// Follows path pixels starting at `start`, having arrived from `prev`.
    ///
    /// At each pixel the next one is chosen among foreground neighbours other
    /// than `prev`, preferring pixels not adjacent to `prev` (which would be a
    /// shortcut), then node pixels, then 4-neighbours. Every visited pixel is
    /// added to `claimed`.
    pub(crate) fn walk(
        &self,
        prev: Px,
        start: Px,
        claimed: &mut HashSet<Px>,
        max_len: Option<usize>,
    ) -> (Vec<Px>, WalkEnd) {
        let mut path = vec![start];
        claimed.insert(start);
        let (mut prev, mut cur) = (prev, start);
        loop {
            if max_len.is_some_and(|k| path.len() >= k) {
                return (path, WalkEnd::Limit);
            }
            if self.is_node(cur) {
                return (path, WalkEnd::Node);
            }
            let mut cands: Vec<Px> = self
                .neighbors(cur)
                .filter(|&n| n != prev)
                .collect();
            let far: Vec<Px> = cands.iter().copied().filter(|&n| !adjacent(n, prev)).collect();
            if !far.is_empty() {
                cands = far;
            }
            let rank = |n: Px| {
                let diagonal = n.0 != cur.0 && n.1 != cur.1;
                (claimed.contains(&n), !self.is_node(n), diagonal)
            };
            cands.sort_by_key(|&n| rank(n));
            let Some(&next) = cands.first() else {
                // Isolated interior pixel cannot happen on a valid path, but
                // stop cleanly rather than loop.
                return (path, WalkEnd::Claimed);
            };
            if claimed.contains(&next) {
                return (path, WalkEnd::Claimed);
            }
            claimed.insert(next);
            path.push(next);
            prev = cur;
            cur = next;
        }
    }

    /// 8-connected groups of junction pixels, each sorted, in raster order of
    /// their first pixel.
    pub(crate) fn junction_clusters(&self) -> Vec<Vec<Px>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for p in self.mask.foreground() {
            if !self.is_junction(p) || seen.contains(&p) {
                continue;
            }
            let mut cluster = vec![p];
            seen.insert(p);
            let mut i = 0;
            while i < cluster.len() {
                let q = cluster[i];
                for n in self.neighbors(q) {
                    if self.is_junction(n) && seen.insert(n) {
                        cluster.push(n);
                    }
                }
                i += 1;
            }
            cluster.sort_by_key(|&(x, y)| (y, x));
            out.push(cluster);
        }
        out
    }
}
