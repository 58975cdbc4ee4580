//! Rendering forests to binary masks.
//!
//! Pixel `(x, y)` is centred on the continuous point `(x, y)`. With
//! supersampling `s`, each pixel is probed on an `s x s` lattice of points
//! centred on it and becomes foreground when at least half of the probes fall
//! inside some vessel primitive.

use crate::error::{param, Error, Result};
use crate::forest::VesselForest;
use crate::mask::BinaryMask;
use crate::params::RasterParams;
use crate::scalar::Scalar;

/// A segment whose radius varies linearly from `ra` at `a` to `rb` at `b`.
/// Degenerates to a disc when `a == b`.
#[derive(Debug, Clone, Copy)]
struct Capsule {
    ax: f64,
    ay: f64,
    bx: f64,
    by: f64,
    ra: f64,
    rb: f64,
}

impl Capsule {
    #[inline]
    fn contains(&self, x: f64, y: f64) -> bool {
        let (ex, ey) = (self.bx - self.ax, self.by - self.ay);
        let len2 = ex * ex + ey * ey;
        let t = if len2 > 0.0 {
            (((x - self.ax) * ex + (y - self.ay) * ey) / len2).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let (cx, cy) = (self.ax + t * ex, self.ay + t * ey);
        let r = self.ra + t * (self.rb - self.ra);
        let (dx, dy) = (x - cx, y - cy);
        dx * dx + dy * dy <= r * r
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let r = self.ra.max(self.rb);
        (
            self.ax.min(self.bx) - r,
            self.ay.min(self.by) - r,
            self.ax.max(self.bx) + r,
            self.ay.max(self.by) + r,
        )
    }
}

struct SubsampleBuffer {
    s: usize,
    sw: usize,
    sh: usize,
    bits: Vec<bool>,
}

impl SubsampleBuffer {
    fn new(width: u32, height: u32, s: u32) -> Self {
        let s = s as usize;
        let (sw, sh) = (width as usize * s, height as usize * s);
        Self { s, sw, sh, bits: vec![false; sw * sh] }
    }

    #[inline]
    fn coord(&self, i: usize) -> f64 {
        (i as f64 + 0.5) / self.s as f64 - 0.5
    }

    /// Inclusive subsample index range whose probe coordinates fall in
    /// `[lo, hi]`, or `None` if it is empty.
    fn range(&self, lo: f64, hi: f64, n: usize) -> Option<(usize, usize)> {
        let s = self.s as f64;
        let first = ((lo + 0.5) * s - 0.5).ceil().max(0.0);
        let last = ((hi + 0.5) * s - 0.5).floor().min(n as f64 - 1.0);
        (first <= last).then_some((first as usize, last as usize))
    }

    fn draw(&mut self, c: &Capsule) {
        let (x0, y0, x1, y1) = c.bounds();
        let (Some((sx0, sx1)), Some((sy0, sy1))) =
            (self.range(x0, x1, self.sw), self.range(y0, y1, self.sh))
        else {
            return;
        };
        for sy in sy0..=sy1 {
            let y = self.coord(sy);
            let row = sy * self.sw;
            for sx in sx0..=sx1 {
                let i = row + sx;
                if !self.bits[i] && c.contains(self.coord(sx), y) {
                    self.bits[i] = true;
                }
            }
        }
    }

    fn resolve(&self, width: u32, height: u32) -> BinaryMask {
        let s = self.s;
        let need = s * s;
        BinaryMask::from_fn(width, height, |x, y| {
            let mut hits = 0;
            for ky in 0..s {
                let row = (y as usize * s + ky) * self.sw + x as usize * s;
                hits += self.bits[row..row + s].iter().filter(|&&b| b).count();
            }
            2 * hits >= need
        })
    }
}

/// Renders every edge as a tapered capsule and every isolated node as a disc.
pub fn rasterize<T: Scalar>(forest: &VesselForest<T>, params: &RasterParams) -> Result<BinaryMask> {
    params.validate()?;
    if params.width < forest.width() || params.height < forest.height() {
        return Err(param(format!(
            "image {}x{} is smaller than the {}x{} forest domain",
            params.width,
            params.height,
            forest.width(),
            forest.height()
        )));
    }
    if !forest.has_radii() {
        return Err(Error::State("forest radii have not been assigned".into()));
    }
    let mut buf = SubsampleBuffer::new(params.width, params.height, params.supersample);
    let mut has_edge = vec![false; forest.len()];
    for (p, c) in forest.edges() {
        has_edge[p] = true;
        has_edge[c] = true;
        let (a, b) = (forest.node(p), forest.node(c));
        buf.draw(&Capsule {
            ax: a.pos.x.as_f64(),
            ay: a.pos.y.as_f64(),
            bx: b.pos.x.as_f64(),
            by: b.pos.y.as_f64(),
            ra: a.radius.as_f64(),
            rb: b.radius.as_f64(),
        });
    }
    for n in forest.nodes().iter().filter(|n| !has_edge[n.id]) {
        let (x, y, r) = (n.pos.x.as_f64(), n.pos.y.as_f64(), n.radius.as_f64());
        buf.draw(&Capsule { ax: x, ay: y, bx: x, by: y, ra: r, rb: r });
    }
    Ok(buf.resolve(params.width, params.height))
}

/// Sets the pixels of an 8-connected line from `a` to `b`: one pixel per
/// step along the major axis, at the rounded minor coordinate of the exact
/// segment. Both endpoint pixels are always set.
pub fn draw_line(mask: &mut BinaryMask, a: (f64, f64), b: (f64, f64)) {
    let pa = (a.0.round() as i64, a.1.round() as i64);
    let pb = (b.0.round() as i64, b.1.round() as i64);
    mask.set_signed(pa.0, pa.1, true);
    mask.set_signed(pb.0, pb.1, true);
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let x_major = dx.abs() >= dy.abs();
    let (m0, m1) = if x_major { (pa.0, pb.0) } else { (pa.1, pb.1) };
    let (lo, hi) = (m0.min(m1), m0.max(m1));
    for m in lo..=hi {
        let (x, y) = if x_major {
            let y = if dx != 0.0 { a.1 + (m as f64 - a.0) * dy / dx } else { a.1 };
            (m, y.round() as i64)
        } else {
            let x = if dy != 0.0 { a.0 + (m as f64 - a.1) * dx / dy } else { a.0 };
            (x.round() as i64, m)
        };
        mask.set_signed(x, y, true);
    }
}

/// One-pixel centreline rendering of the forest.
pub fn render_skeleton<T: Scalar>(forest: &VesselForest<T>, width: u32, height: u32) -> BinaryMask {
    let mut mask = BinaryMask::new(width, height);
    for n in forest.nodes() {
        let (x, y) = n.pos.pixel();
        mask.set_signed(x, y, true);
    }
    for (p, c) in forest.edges() {
        let (a, b) = (forest.node(p).pos, forest.node(c).pos);
        draw_line(
            &mut mask,
            (a.x.as_f64(), a.y.as_f64()),
            (b.x.as_f64(), b.y.as_f64()),
        );
    }
    mask
}
