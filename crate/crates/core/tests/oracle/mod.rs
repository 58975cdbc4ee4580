//! Brute-force reference implementations and random instance builders
//! shared by the integration tests and the acceptance runner.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vasqforge::{
    assign_radii, rasterize, skeletonize, AttractorField, BinaryMask, GrowerMode, GrowthParams, Point2, RadiusParams,
    RasterParams, VesselForest,
};

pub type P = Point2<f64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BruteRun {
    pub nodes: Vec<(P, Option<usize>)>,
    pub alive: Vec<bool>,
    pub iterations: usize,
}

/// Space colonization with every neighbour query done by exhaustive search.
pub fn brute_grow(roots: &[P], attractors: &[P], p: &GrowthParams<f64>, w: u32, h: u32) -> BruteRun {
    let mut nodes: Vec<(P, Option<usize>)> = roots.iter().map(|&r| (r, None)).collect();
    let mut alive = vec![true; attractors.len()];
    let (da2, dk2) = (p.attraction_distance.powi(2), p.kill_distance.powi(2));
    let mut iterations = 0;
    if nodes.is_empty() || nodes.len() >= p.max_nodes {
        return BruteRun { nodes, alive, iterations };
    }
    for (j, a) in attractors.iter().enumerate() {
        if nodes.iter().any(|(n, _)| n.dist_sq(*a) <= dk2) {
            alive[j] = false;
        }
    }
    while iterations < p.max_iterations && nodes.len() < p.max_nodes {
        if !alive.iter().any(|&a| a) {
            break;
        }
        let existing = nodes.len();
        let mut influence = vec![Vec::new(); existing];
        for (j, a) in attractors.iter().enumerate() {
            if !alive[j] {
                continue;
            }
            match p.grower_mode {
                GrowerMode::AllInfluenced => {
                    for (i, (n, _)) in nodes.iter().enumerate() {
                        if n.dist_sq(*a) <= da2 {
                            influence[i].push(j);
                        }
                    }
                }
                GrowerMode::NearestNode => {
                    let mut best: Option<(f64, usize)> = None;
                    for (i, (n, _)) in nodes.iter().enumerate() {
                        let d = n.dist_sq(*a);
                        if d <= da2 && best.is_none_or(|(bd, _)| d < bd) {
                            best = Some((d, i));
                        }
                    }
                    if let Some((_, i)) = best {
                        influence[i].push(j);
                    }
                }
            }
        }
        for i in 0..existing {
            if influence[i].is_empty() {
                continue;
            }
            if nodes.len() >= p.max_nodes {
                break;
            }
            let pos = nodes[i].0;
            let mut sum = P::new(0.0, 0.0);
            for &j in &influence[i] {
                let v = attractors[j] - pos;
                sum = if p.per_attractor_normalize {
                    let len = v.norm();
                    if len > 0.0 { sum + v * (1.0 / len) } else { sum }
                } else {
                    sum + v
                };
            }
            let len = sum.norm();
            if !(len >= 1e-12) {
                continue;
            }
            let next = pos + sum * (1.0 / len) * p.segment_length;
            if !(next.x >= 0.0 && next.y >= 0.0 && next.x < w as f64 && next.y < h as f64) {
                continue;
            }
            if let Some(o) = &p.obstacle {
                let (px, py) = (next.x.round() as i64, next.y.round() as i64);
                if o.get_signed(px, py) {
                    continue;
                }
            }
            if nodes.iter().any(|(n, _)| n.dist_sq(next) <= 1e-12) {
                continue;
            }
            nodes.push((next, Some(i)));
        }
        if nodes.len() == existing {
            break;
        }
        for (j, a) in attractors.iter().enumerate() {
            if alive[j] && nodes[existing..].iter().any(|(n, _)| n.dist_sq(*a) <= dk2) {
                alive[j] = false;
            }
        }
        iterations += 1;
    }
    BruteRun { nodes, alive, iterations }
}

pub struct Instance {
    pub w: u32,
    pub h: u32,
    pub roots: Vec<P>,
    pub attractors: Vec<P>,
    pub params: GrowthParams<f64>,
}

impl Instance {
    pub fn forest(&self) -> VesselForest<f64> {
        let mut f = VesselForest::new(self.w, self.h);
        for &r in &self.roots {
            f.add_node(r, None).unwrap();
        }
        f
    }

    pub fn field(&self) -> AttractorField<f64> {
        AttractorField::new(self.attractors.clone())
    }
}

pub fn disc_mask(w: u32, h: u32, cx: f64, cy: f64, r: f64) -> BinaryMask {
    BinaryMask::from_fn(w, h, |x, y| (x as f64 - cx).powi(2) + (y as f64 - cy).powi(2) <= r * r)
}

/// A small random growth problem covering both grower modes, both direction
/// rules and optional obstacles.
pub fn random_instance(seed: u64) -> Instance {
    let mut r = rng(seed);
    let w = r.gen_range(48..160u32);
    let h = r.gen_range(48..160u32);
    let da = r.gen_range(8.0..30.0);
    let dk = r.gen_range(1.0..da * 0.9);
    let obstacle = r.gen_bool(0.3).then(|| {
        let (cx, cy) = (w as f64 / 2.0, h as f64 / 2.0);
        disc_mask(w, h, cx, cy, r.gen_range(3.0..12.0))
    });
    let params = GrowthParams {
        attraction_distance: da,
        kill_distance: dk,
        segment_length: r.gen_range(2.0..15.0),
        max_nodes: r.gen_range(20..400),
        max_iterations: r.gen_range(10..200),
        per_attractor_normalize: r.gen_bool(0.3),
        grower_mode: if r.gen_bool(0.3) { GrowerMode::NearestNode } else { GrowerMode::AllInfluenced },
        obstacle,
    };
    let inside = |p: &P| params.obstacle.as_ref().is_none_or(|o| !o.contains_point(*p));
    let n_att = r.gen_range(20..400);
    let attractors: Vec<P> = (0..n_att)
        .map(|_| P::new(r.gen::<f64>() * w as f64, r.gen::<f64>() * h as f64))
        .filter(|p| inside(p))
        .collect();
    let mut roots = Vec::new();
    while roots.len() < r.gen_range(1..4) {
        let p = P::new(r.gen::<f64>() * w as f64, r.gen::<f64>() * h as f64);
        if inside(&p) {
            roots.push(p);
        }
    }
    Instance { w, h, roots, attractors, params }
}

/// Random tree with at least one bifurcation and radii that stay below the
/// clamp.
pub fn random_forest(seed: u64) -> VesselForest<f64> {
    let mut r = rng(seed);
    loop {
        let n = r.gen_range(3..120);
        let mut f = VesselForest::new(200, 200);
        for i in 0..n {
            let parent = if i == 0 || (i > 4 && r.gen_bool(0.03)) { None } else { Some(r.gen_range(0..i)) };
            f.add_node(P::new(r.gen::<f64>() * 200.0, r.gen::<f64>() * 200.0), parent).unwrap();
        }
        if !f.bifurcations().is_empty() {
            return f;
        }
    }
}

pub fn unclamped_radii(gamma: f64) -> RadiusParams<f64> {
    RadiusParams { r_tip: 1.0, gamma, r_max: 1e12 }
}

pub fn random_mask(r: &mut ChaCha8Rng, w: u32, h: u32, p: f64) -> BinaryMask {
    BinaryMask::from_fn(w, h, |_, _| r.gen_bool(p))
}

/// Union of random discs, bars and noise: blobs with holes, thin lines and
/// isolated pixels.
pub fn random_shapes(seed: u64, w: u32, h: u32) -> BinaryMask {
    let mut r = rng(seed);
    let mut m = BinaryMask::new(w, h);
    for _ in 0..r.gen_range(1..6) {
        let (cx, cy) = (r.gen_range(0.0..w as f64), r.gen_range(0.0..h as f64));
        match r.gen_range(0..3) {
            0 => {
                let rad = r.gen_range(1.0..10.0);
                for (x, y) in disc_mask(w, h, cx, cy, rad).foreground() {
                    m.set(x, y, true);
                }
            }
            1 => {
                let (bw, bh) = (r.gen_range(1..20), r.gen_range(1..20));
                for y in cy as u32..(cy as u32 + bh).min(h) {
                    for x in cx as u32..(cx as u32 + bw).min(w) {
                        m.set(x, y, true);
                    }
                }
            }
            _ => {
                let (ex, ey) = (r.gen_range(0.0..w as f64), r.gen_range(0.0..h as f64));
                vasqforge::draw_line(&mut m, (cx, cy), (ex, ey));
            }
        }
    }
    for _ in 0..r.gen_range(0..8) {
        let (x, y) = (r.gen_range(0..w), r.gen_range(0..h));
        let v = !m.get(x, y);
        m.set(x, y, v);
    }
    m
}

fn counts(a: &BinaryMask, b: &BinaryMask) -> (u64, u64, u64) {
    let (mut ab, mut na, mut nb) = (0, 0, 0);
    for y in 0..a.height() {
        for x in 0..a.width() {
            let (pa, pb) = (a.get(x, y), b.get(x, y));
            na += pa as u64;
            nb += pb as u64;
            ab += (pa && pb) as u64;
        }
    }
    (ab, na, nb)
}

pub fn brute_dice(a: &BinaryMask, b: &BinaryMask) -> f64 {
    let (ab, na, nb) = counts(a, b);
    if na + nb == 0 {
        1.0
    } else {
        (2 * ab) as f64 / (na + nb) as f64
    }
}

/// (cl_dice, t_prec, t_sens)
pub fn brute_cl_dice(pred: &BinaryMask, gt: &BinaryMask) -> (f64, f64, f64) {
    let both_empty = !pred.any() && !gt.any();
    let frac = |s: &BinaryMask, o: &BinaryMask| {
        let (so, ns, _) = counts(s, o);
        if ns == 0 {
            if both_empty { 1.0 } else { 0.0 }
        } else {
            so as f64 / ns as f64
        }
    };
    let tp = frac(&skeletonize(pred), gt);
    let ts = frac(&skeletonize(gt), pred);
    let cl = if tp + ts > 0.0 { 2.0 * tp * ts / (tp + ts) } else { 0.0 };
    (cl, tp, ts)
}

/// Euclidean distance to the nearest background pixel, treating everything
/// outside the image as background.
pub fn brute_distance(mask: &BinaryMask) -> Vec<f64> {
    let (w, h) = (mask.width() as i64, mask.height() as i64);
    let mut out = Vec::with_capacity((w * h) as usize);
    for y in 0..h {
        for x in 0..w {
            if !mask.get(x as u32, y as u32) {
                out.push(0.0);
                continue;
            }
            let mut best = i64::MAX;
            for by in -1..=h {
                for bx in -1..=w {
                    if !mask.get_signed(bx, by) {
                        best = best.min((bx - x).pow(2) + (by - y).pow(2));
                    }
                }
            }
            out.push((best as f64).sqrt());
        }
    }
    out
}

/// 8-connected component count by flood fill.
pub fn brute_components(mask: &BinaryMask) -> usize {
    let (w, h) = (mask.width() as i64, mask.height() as i64);
    let mut seen = vec![false; (w * h) as usize];
    let mut n = 0;
    for start in mask.foreground() {
        let s = (start.1 as i64 * w + start.0 as i64) as usize;
        if seen[s] {
            continue;
        }
        n += 1;
        seen[s] = true;
        let mut stack = vec![(start.0 as i64, start.1 as i64)];
        while let Some((x, y)) = stack.pop() {
            for dy in -1..=1 {
                for dx in -1..=1 {
                    let (nx, ny) = (x + dx, y + dy);
                    if nx < 0 || ny < 0 || nx >= w || ny >= h || !mask.get_signed(nx, ny) {
                        continue;
                    }
                    let k = (ny * w + nx) as usize;
                    if !seen[k] {
                        seen[k] = true;
                        stack.push((nx, ny));
                    }
                }
            }
        }
    }
    n
}

/// A straight vessel drawn once thin and once thick around the same axis.
pub fn thickness_pair(seed: u64) -> (BinaryMask, BinaryMask) {
    let mut r = rng(seed);
    let (w, h) = (96, 96);
    let horizontal = r.gen_bool(0.5);
    let (c, a, b) = (r.gen_range(20..76) as f64, r.gen_range(8..30) as f64, r.gen_range(60..88) as f64);
    let (p, q) = if horizontal {
        (P::new(a, c), P::new(b, c))
    } else {
        (P::new(c, a), P::new(c, b))
    };
    let draw = |radius: f64| {
        let mut f = VesselForest::new(w, h);
        f.add_node(p, None).unwrap();
        f.add_node(q, Some(0)).unwrap();
        assign_radii(&mut f, &RadiusParams { r_tip: radius, gamma: 2.0, r_max: 12.0 }).unwrap();
        rasterize(&f, &RasterParams { width: w, height: h, supersample: 4 }).unwrap()
    };
    (draw(1.0), draw(3.0))
}
