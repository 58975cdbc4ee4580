//! Binary morphology used by the mask validators: thinning, exact Euclidean
//! distance transform, junction detection and connected components.
//!
//! Pixels outside the image are background throughout. Connectivity is
//! 8-connectivity for the foreground.

use std::collections::VecDeque;

use crate::mask::{BinaryMask, NEIGHBORS_8};
use crate::scalar::Scalar;

/// Foreground flags of the 8 neighbours in clockwise order from north
/// (P2..P9 in Zhang-Suen notation).
#[inline]
fn ring(mask: &BinaryMask, x: u32, y: u32) -> [bool; 8] {
    let mut r = [false; 8];
    for (k, (dx, dy)) in NEIGHBORS_8.iter().enumerate() {
        r[k] = mask.get_signed(x as i64 + dx, y as i64 + dy);
    }
    r
}

/// Number of background-to-foreground transitions around the ring.
#[inline]
fn transitions(r: &[bool; 8]) -> usize {
    (0..8).filter(|&k| !r[k] && r[(k + 1) % 8]).count()
}

/// Number of 8-connected components formed by the foreground neighbours.
fn ring_components(r: &[bool; 8]) -> usize {
    let mut seen = [false; 8];
    let mut count = 0;
    for start in 0..8 {
        if !r[start] || seen[start] {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(k) = stack.pop() {
            let (kx, ky) = NEIGHBORS_8[k];
            for j in 0..8 {
                let (jx, jy) = NEIGHBORS_8[j];
                if r[j] && !seen[j] && (kx - jx).abs() <= 1 && (ky - jy).abs() <= 1 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    count
}

fn zhang_suen_deletable(mask: &BinaryMask, x: u32, y: u32, first: bool) -> bool {
    let r = ring(mask, x, y);
    let b = r.iter().filter(|&&v| v).count();
    if !(2..=6).contains(&b) || transitions(&r) != 1 {
        return false;
    }
    // r: 0=N(P2) 2=E(P4) 4=S(P6) 6=W(P8)
    let (n, e, s, w) = (r[0], r[2], r[4], r[6]);
    if first {
        !(n && e && s) && !(e && s && w)
    } else {
        !(n && e && w) && !(n && s && w)
    }
}

/// Corner pixels of 4-connected staircases: exactly one horizontal and one
/// vertical foreground 4-neighbour, and removable without splitting the
/// neighbourhood.
fn staircase_deletable(mask: &BinaryMask, x: u32, y: u32) -> bool {
    let r = ring(mask, x, y);
    let (n, e, s, w) = (r[0], r[2], r[4], r[6]);
    let horizontal = e as u8 + w as u8;
    let vertical = n as u8 + s as u8;
    horizontal == 1 && vertical == 1 && ring_components(&r) == 1
}

/// Zhang-Suen thinning to a fixpoint.
///
/// Each sub-iteration collects its deletion candidates on a snapshot, as in
/// the classic parallel scheme, then removes them one at a time, re-testing
/// each against the current image. The re-test keeps two-pixel-thick
/// structures (such as 2x2 blocks) from vanishing. Once Zhang-Suen stops,
/// redundant staircase corners are removed so junction detection by
/// neighbour count is not fooled by them. The whole procedure repeats until
/// nothing changes, so the result is idempotent.
pub fn skeletonize(mask: &BinaryMask) -> BinaryMask {
    let mut m = mask.clone();
    let mut candidates = Vec::new();
    loop {
        let mut changed = false;
        for first in [true, false] {
            candidates.clear();
            candidates.extend(m.foreground().filter(|&(x, y)| zhang_suen_deletable(&m, x, y, first)));
            for &(x, y) in &candidates {
                if zhang_suen_deletable(&m, x, y, first) {
                    m.set(x, y, false);
                    changed = true;
                }
            }
        }
        if changed {
            continue;
        }
        candidates.clear();
        candidates.extend(m.foreground().filter(|&(x, y)| staircase_deletable(&m, x, y)));
        for &(x, y) in &candidates {
            if staircase_deletable(&m, x, y) {
                m.set(x, y, false);
                changed = true;
            }
        }
        if !changed {
            return m;
        }
    }
}

/// Per-pixel Euclidean distance to the nearest background pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMap<T> {
    width: u32,
    height: u32,
    values: Vec<T>,
}

impl<T: Scalar> DistanceMap<T> {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, x: u32, y: u32) -> T {
        self.values[y as usize * self.width as usize + x as usize]
    }
}

/// Lower envelope of parabolas `(q - v)^2 + f[v]`; writes the minimum at every
/// integer `q` into `out`.
fn lower_envelope(f: &[f64], out: &mut [f64], v: &mut Vec<usize>, z: &mut Vec<f64>) {
    let n = f.len();
    v.clear();
    z.clear();
    v.push(0);
    z.push(f64::NEG_INFINITY);
    z.push(f64::INFINITY);
    let parabola_cut = |q: usize, p: usize| {
        let (qf, pf) = (q as f64, p as f64);
        ((f[q] + qf * qf) - (f[p] + pf * pf)) / (2.0 * qf - 2.0 * pf)
    };
    for q in 1..n {
        // z[0] is -inf, so the stack never empties.
        let mut s = parabola_cut(q, *v.last().unwrap());
        while s <= z[v.len() - 1] {
            v.pop();
            z.pop();
            s = parabola_cut(q, *v.last().unwrap());
        }
        let k = v.len();
        v.push(q);
        z[k] = s;
        z.push(f64::INFINITY);
    }
    let mut k = 0;
    for (q, o) in out.iter_mut().enumerate() {
        let qf = q as f64;
        while z[k + 1] < qf {
            k += 1;
        }
        let d = qf - v[k] as f64;
        *o = d * d + f[v[k]];
    }
}

/// Exact Euclidean distance transform (separable lower-envelope method).
///
/// Background pixels map to 0; the one-pixel ring outside the image counts
/// as background.
pub fn distance_transform<T: Scalar>(mask: &BinaryMask) -> DistanceMap<T> {
    let (w, h) = (mask.width() as usize, mask.height() as usize);
    // Row pass: squared horizontal distance to background, exact integers.
    let mut g = vec![0f64; w * h];
    for y in 0..h {
        let mut last: i64 = -1;
        for x in 0..w {
            if !mask.get(x as u32, y as u32) {
                last = x as i64;
            }
            let d = (x as i64 - last) as f64;
            g[y * w + x] = d * d;
        }
        let mut next: i64 = w as i64;
        for x in (0..w).rev() {
            if !mask.get(x as u32, y as u32) {
                next = x as i64;
            }
            let d = (next - x as i64) as f64;
            let i = y * w + x;
            g[i] = g[i].min(d * d);
        }
    }
    // Column pass over the column padded with a background cell at each end.
    let mut col = vec![0f64; h + 2];
    let mut out = vec![0f64; h + 2];
    let (mut v, mut z) = (Vec::with_capacity(h + 2), Vec::with_capacity(h + 3));
    let mut values = vec![T::zero(); w * h];
    for x in 0..w {
        col[0] = 0.0;
        col[h + 1] = 0.0;
        for y in 0..h {
            col[y + 1] = g[y * w + x];
        }
        lower_envelope(&col, &mut out, &mut v, &mut z);
        for y in 0..h {
            values[y * w + x] = T::lit(out[y + 1]).sqrt();
        }
    }
    DistanceMap {
        width: mask.width(),
        height: mask.height(),
        values,
    }
}

/// Number of distinct skeleton branches touching `(x, y)`: the count of
/// background-to-foreground transitions around its 8-neighbourhood.
pub fn branch_degree(skeleton: &BinaryMask, x: u32, y: u32) -> usize {
    transitions(&ring(skeleton, x, y))
}

/// Skeleton pixels where three or more branches meet, row-major.
///
/// Neighbours are counted as branches rather than pixels, so the pixels
/// flanking an orthogonal junction are not reported alongside its centre.
pub fn branch_points(skeleton: &BinaryMask) -> Vec<(u32, u32)> {
    skeleton
        .foreground()
        .filter(|&(x, y)| branch_degree(skeleton, x, y) >= 3)
        .collect()
}

/// Skeleton pixels where exactly one branch ends, row-major.
pub fn end_points(skeleton: &BinaryMask) -> Vec<(u32, u32)> {
    skeleton
        .foreground()
        .filter(|&(x, y)| branch_degree(skeleton, x, y) == 1)
        .collect()
}

/// 8-connected component labelling. Returns the component count and a
/// row-major label grid where 0 is background and components are numbered
/// from 1 in raster order of their first pixel.
pub fn components(mask: &BinaryMask) -> (usize, Vec<u32>) {
    let (w, h) = (mask.width() as i64, mask.height() as i64);
    let mut labels = vec![0u32; mask.len()];
    let mut count = 0u32;
    let mut queue = VecDeque::new();
    for (sx, sy) in mask.foreground() {
        let si = mask.index(sx, sy);
        if labels[si] != 0 {
            continue;
        }
        count += 1;
        labels[si] = count;
        queue.push_back((sx as i64, sy as i64));
        while let Some((x, y)) = queue.pop_front() {
            for (dx, dy) in NEIGHBORS_8 {
                let (nx, ny) = (x + dx, y + dy);
                if nx < 0 || ny < 0 || nx >= w || ny >= h {
                    continue;
                }
                let ni = (ny * w + nx) as usize;
                if mask.pixels()[ni] && labels[ni] == 0 {
                    labels[ni] = count;
                    queue.push_back((nx, ny));
                }
            }
        }
    }
    (count as usize, labels)
}
