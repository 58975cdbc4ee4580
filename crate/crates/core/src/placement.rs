//! Initial attractor fields and root positions.
//!
//! All randomness comes from a ChaCha8 stream seeded with a 64-bit value, so a
//! given `(strategy, domain, parameters, seed)` always yields the same
//! attractor list. Batch jobs derive one seed per image with [`derive_seed`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{param, Error, Result};
use crate::field::AttractorField;
use crate::geom::Point2;
use crate::mask::BinaryMask;
use crate::params::{PlacementParams, PlacementStrategy};
use crate::scalar::Scalar;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-image stream seed: a hash of the master seed and the image index.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master) ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` attractors drawn uniformly over the non-obstacle part of the domain.
pub fn place_uniform<T: Scalar>(
    width: u32,
    height: u32,
    count: usize,
    obstacle: Option<&BinaryMask>,
    seed: u64,
) -> Result<AttractorField<T>> {
    if count == 0 {
        return Err(param("uniform placement needs count >= 1"));
    }
    if width == 0 || height == 0 {
        return Err(param("domain must be non-empty"));
    }
    let mut rng = rng(seed);
    let mut points = Vec::with_capacity(count);
    match obstacle {
        None => {
            for _ in 0..count {
                let x = rng.gen::<f64>() * width as f64;
                let y = rng.gen::<f64>() * height as f64;
                points.push(Point2::new(T::lit(x), T::lit(y)));
            }
        }
        Some(obs) => {
            // Sample a free pixel, then a point inside the unit area that
            // rounds to it.
            let free: Vec<(u32, u32)> = (0..height)
                .flat_map(|y| (0..width).map(move |x| (x, y)))
                .filter(|&(x, y)| !obs.get_signed(x as i64, y as i64))
                .collect();
            if free.is_empty() {
                return Err(Error::Placement("obstacle covers the whole domain".into()));
            }
            while points.len() < count {
                let (px, py) = free[rng.gen_range(0..free.len())];
                let x = px as f64 + rng.gen::<f64>() - 0.5;
                let y = py as f64 + rng.gen::<f64>() - 0.5;
                let p = Point2::new(T::lit(x), T::lit(y));
                if p.in_rect(width, height) && !obs.contains_point(p) {
                    points.push(p);
                }
            }
        }
    }
    Ok(AttractorField::new(points))
}

fn check_grid<T: Scalar>(width: u32, height: u32, cell: u32, jitter: T) -> Result<()> {
    if cell < 1 || cell > width.min(height) {
        return Err(param(format!(
            "grid cell {cell} must lie in [1, {}]",
            width.min(height)
        )));
    }
    if !(jitter >= T::zero()) || jitter.as_f64() > cell as f64 / 2.0 {
        return Err(param(format!(
            "jitter {jitter} must lie in [0, cell/2 = {}]",
            cell as f64 / 2.0
        )));
    }
    Ok(())
}

fn jittered_center<T: Scalar>(rng: &mut ChaCha8Rng, x0: u32, y0: u32, cell: u32, jitter: f64) -> Point2<T> {
    let half = cell as f64 / 2.0;
    let (mut dx, mut dy) = (0.0, 0.0);
    if jitter > 0.0 {
        dx = (2.0 * rng.gen::<f64>() - 1.0) * jitter;
        dy = (2.0 * rng.gen::<f64>() - 1.0) * jitter;
    }
    Point2::new(T::lit(x0 as f64 + half + dx), T::lit(y0 as f64 + half + dy))
}

/// One attractor per complete grid cell, offset from the cell centre by up to
/// `jitter` on each axis. Cells are visited row by row.
pub fn place_grid_jitter<T: Scalar>(
    width: u32,
    height: u32,
    cell: u32,
    jitter: T,
    seed: u64,
) -> Result<AttractorField<T>> {
    check_grid(width, height, cell, jitter)?;
    let mut rng = rng(seed);
    let j = jitter.as_f64();
    let mut points = Vec::with_capacity(((width / cell) * (height / cell)) as usize);
    for cy in 0..height / cell {
        for cx in 0..width / cell {
            points.push(jittered_center(&mut rng, cx * cell, cy * cell, cell, j));
        }
    }
    Ok(AttractorField::new(points))
}

/// Dense attractors on the reference vessels plus jittered grid attractors in
/// every vessel-free cell.
///
/// The dense part tiles the mask with `vessel_stride`-sized blocks and places
/// one attractor on the first foreground pixel (row-major) of every block that
/// has one, so each vessel pixel has an attractor within Chebyshev distance
/// `vessel_stride`. With stride 1 every vessel pixel gets an attractor.
pub fn place_real_conditioned<T: Scalar>(
    reference: &BinaryMask,
    vessel_stride: u32,
    cell: u32,
    jitter: T,
    seed: u64,
) -> Result<AttractorField<T>> {
    if vessel_stride < 1 {
        return Err(param("vessel_stride must be >= 1"));
    }
    let (w, h) = (reference.width(), reference.height());
    check_grid(w, h, cell, jitter)?;
    if !reference.any() {
        return Err(Error::Placement("reference mask has no vessel pixels".into()));
    }

    let mut points = Vec::new();
    for by in (0..h).step_by(vessel_stride as usize) {
        for bx in (0..w).step_by(vessel_stride as usize) {
            let hit = (by..(by + vessel_stride).min(h))
                .flat_map(|y| (bx..(bx + vessel_stride).min(w)).map(move |x| (x, y)))
                .find(|&(x, y)| reference.get(x, y));
            if let Some((x, y)) = hit {
                points.push(Point2::new(T::lit(x as f64), T::lit(y as f64)));
            }
        }
    }

    let mut rng = rng(seed);
    let j = jitter.as_f64();
    for cy in 0..h / cell {
        for cx in 0..w / cell {
            let (x0, y0) = (cx * cell, cy * cell);
            let has_vessel =
                (y0..y0 + cell).any(|y| (x0..x0 + cell).any(|x| reference.get(x, y)));
            if !has_vessel {
                points.push(jittered_center(&mut rng, x0, y0, cell, j));
            }
        }
    }
    Ok(AttractorField::new(points))
}

/// Validated root coordinates.
pub fn init_roots<T: Scalar>(
    params: &PlacementParams<T>,
    width: u32,
    height: u32,
    obstacle: Option<&BinaryMask>,
) -> Result<Vec<Point2<T>>> {
    if params.roots.is_empty() {
        return Err(param("at least one root is required"));
    }
    for r in &params.roots {
        if !r.in_rect(width, height) {
            return Err(param(format!(
                "root ({}, {}) lies outside the {width}x{height} domain",
                r.x, r.y
            )));
        }
        if obstacle.is_some_and(|o| o.contains_point(*r)) {
            return Err(param(format!("root ({}, {}) lies inside the obstacle", r.x, r.y)));
        }
    }
    Ok(params.roots.clone())
}

/// Builds the attractor field for `params`, dropping attractors that fall
/// inside the obstacle.
pub fn place<T: Scalar>(
    params: &PlacementParams<T>,
    width: u32,
    height: u32,
    obstacle: Option<&BinaryMask>,
) -> Result<AttractorField<T>> {
    let field = match &params.strategy {
        PlacementStrategy::Uniform { count } => {
            return place_uniform(width, height, *count, obstacle, params.seed)
        }
        PlacementStrategy::GridJitter { cell, jitter } => {
            place_grid_jitter(width, height, *cell, *jitter, params.seed)?
        }
        PlacementStrategy::RealConditioned {
            reference_mask,
            vessel_stride,
            cell,
            jitter,
        } => {
            if reference_mask.width() != width || reference_mask.height() != height {
                return Err(Error::Dimension(
                    reference_mask.width(),
                    reference_mask.height(),
                    width,
                    height,
                ));
            }
            place_real_conditioned(reference_mask, *vessel_stride, *cell, *jitter, params.seed)?
        }
    };
    Ok(match obstacle {
        Some(o) => field.without_obstacle(o),
        None => field,
    })
}
