use crate::geom::Point2;
use crate::mask::BinaryMask;
use crate::scalar::Scalar;

/// Attractor points and their liveness. An attractor that has been killed
/// stays dead for the rest of the run.
#[derive(Debug, Clone, PartialEq)]
pub struct AttractorField<T> {
    points: Vec<Point2<T>>,
    alive: Vec<bool>,
}

impl<T: Scalar> AttractorField<T> {
    pub fn new(points: Vec<Point2<T>>) -> Self {
        let alive = vec![true; points.len()];
        Self { points, alive }
    }

    pub fn empty() -> Self {
        Self::new(Vec::new())
    }

    pub fn points(&self) -> &[Point2<T>] {
        &self.points
    }

    pub fn alive(&self) -> &[bool] {
        &self.alive
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_alive(&self, i: usize) -> bool {
        self.alive[i]
    }

    pub fn kill(&mut self, i: usize) {
        self.alive[i] = false;
    }

    pub fn live_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn live_indices(&self) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| self.alive[i]).collect()
    }

    /// Concatenates two fields, keeping liveness.
    pub fn extend(&mut self, other: AttractorField<T>) {
        self.points.extend(other.points);
        self.alive.extend(other.alive);
    }

    /// Drops attractors whose nearest pixel is set in `obstacle`.
    pub fn without_obstacle(self, obstacle: &BinaryMask) -> Self {
        let (points, alive) = self
            .points
            .into_iter()
            .zip(self.alive)
            .filter(|(p, _)| !obstacle.contains_point(*p))
            .unzip();
        Self { points, alive }
    }
}
