//! Overlap metrics between predicted and reference masks.

use serde::Serialize;

use crate::error::Result;
use crate::mask::BinaryMask;
use crate::morphology::skeletonize;
use crate::scalar::{from_usize, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricsReport<T> {
    pub dsc: T,
    pub cl_dice: T,
    /// Fraction of the predicted skeleton lying inside the reference mask.
    pub t_prec: T,
    /// Fraction of the reference skeleton lying inside the predicted mask.
    pub t_sens: T,
}

/// Dice similarity `2|P & G| / (|P| + |G|)`; 1 when both masks are empty.
pub fn dice<T: Scalar>(pred: &BinaryMask, gt: &BinaryMask) -> Result<T> {
    let inter = pred.intersection_count(gt)?;
    let total = pred.count() + gt.count();
    if total == 0 {
        return Ok(T::one());
    }
    Ok(from_usize::<T>(2 * inter) / from_usize(total))
}

fn skeleton_fraction<T: Scalar>(skeleton: &BinaryMask, other: &BinaryMask, both_empty: bool) -> Result<T> {
    let n = skeleton.count();
    if n == 0 {
        return Ok(if both_empty { T::one() } else { T::zero() });
    }
    Ok(from_usize::<T>(skeleton.intersection_count(other)?) / from_usize(n))
}

/// Centreline Dice: the harmonic mean of topology precision and sensitivity.
pub fn cl_dice<T: Scalar>(pred: &BinaryMask, gt: &BinaryMask) -> Result<MetricsReport<T>> {
    pred.check_same_dims(gt)?;
    let dsc = dice(pred, gt)?;
    let both_empty = !pred.any() && !gt.any();
    let t_prec = skeleton_fraction(&skeletonize(pred), gt, both_empty)?;
    let t_sens = skeleton_fraction(&skeletonize(gt), pred, both_empty)?;
    let sum = t_prec + t_sens;
    let cl_dice = if sum > T::zero() {
        T::lit(2.0) * t_prec * t_sens / sum
    } else {
        T::zero()
    };
    Ok(MetricsReport { dsc, cl_dice, t_prec, t_sens })
}
