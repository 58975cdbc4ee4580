//! Uniform bucket grid for fixed-radius neighbour queries over a bounded
//! rectangle.

use crate::geom::Point2;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct SpatialGrid {
    cell: f64,
    cols: usize,
    rows: usize,
    buckets: Vec<Vec<u32>>,
}

impl SpatialGrid {
    /// Grid covering `[0, width] x [0, height]` with square cells of side
    /// `cell`. Points outside are clamped into the border buckets.
    pub fn new(width: u32, height: u32, cell: f64) -> Self {
        assert!(cell > 0.0 && cell.is_finite());
        let cols = (width as f64 / cell).floor() as usize + 1;
        let rows = (height as f64 / cell).floor() as usize + 1;
        Self {
            cell,
            cols,
            rows,
            buckets: vec![Vec::new(); cols * rows],
        }
    }

    #[inline]
    fn coord(&self, v: f64, n: usize) -> usize {
        let c = (v / self.cell).floor();
        if c <= 0.0 {
            0
        } else {
            (c as usize).min(n - 1)
        }
    }

    pub fn insert<T: Scalar>(&mut self, idx: usize, p: Point2<T>) {
        let cx = self.coord(p.x.as_f64(), self.cols);
        let cy = self.coord(p.y.as_f64(), self.rows);
        self.buckets[cy * self.cols + cx].push(idx as u32);
    }

    /// Calls `f` with the index of every stored point in buckets overlapping
    /// the square of half-side `r` around `p`. Callers do their own exact
    /// distance test; visit order is unspecified.
    #[inline]
    pub fn for_each_candidate<T: Scalar>(&self, p: Point2<T>, r: f64, mut f: impl FnMut(usize)) {
        let (x, y) = (p.x.as_f64(), p.y.as_f64());
        let x0 = self.coord(x - r, self.cols);
        let x1 = self.coord(x + r, self.cols);
        let y0 = self.coord(y - r, self.rows);
        let y1 = self.coord(y + r, self.rows);
        for cy in y0..=y1 {
            let row = cy * self.cols;
            for cx in x0..=x1 {
                for &i in &self.buckets[row + cx] {
                    f(i as usize);
                }
            }
        }
    }

    /// Indices of `points` stored in the grid lying within distance `r` of
    /// `p`, ascending.
    pub fn within<T: Scalar>(&self, points: &[Point2<T>], p: Point2<T>, r: T) -> Vec<usize> {
        let r2 = r * r;
        let mut out = Vec::new();
        self.for_each_candidate(p, r.as_f64(), |i| {
            if points[i].dist_sq(p) <= r2 {
                out.push(i);
            }
        });
        out.sort_unstable();
        out
    }
}
