//! Crossing weights (indices) and the relative weights of the three regions
//! produced by smoothing a disjoint pair.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{GaussDiagram, PairShape, Region, Sign, Smoothing};

/// Relative weights of the region pairs, with `A1` the left region, `A2` the
/// middle and `A3` the right one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightTriple {
    pub w12: u64,
    pub w13: u64,
    pub w23: u64,
}

impl WeightTriple {
    pub fn get(&self, a: Region, b: Region) -> u64 {
        match (a.min(b), a.max(b)) {
            (Region::Left, Region::Middle) => self.w12,
            (Region::Left, Region::Right) => self.w13,
            (Region::Middle, Region::Right) => self.w23,
            _ => 0,
        }
    }
}

/// A disjoint pair read as a labelled generator: its shape, the weights on
/// the region pairs, and the product of the two arrow signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairConfig {
    pub shape: PairShape,
    pub labels: WeightTriple,
    pub sign: Sign,
}

/// Which side of `c` the arrow `x` crosses from: +1 when the tail of `x` lies
/// on the counterclockwise arc from the tail of `c` to its head.
pub fn int_sign(d: &GaussDiagram, c: usize, x: usize) -> Result<i64> {
    if !d.arrows_intersect(c, x)? {
        return Err(Error::Disjoint(c, x));
    }
    Ok(int_unchecked(d, c, x))
}

fn int_unchecked(d: &GaussDiagram, c: usize, x: usize) -> i64 {
    let (ac, ax) = (&d.arrows()[c], &d.arrows()[x]);
    if d.between(ac.tail, ac.head, ax.tail) {
        1
    } else {
        -1
    }
}

/// `w(c)`: the signed count of arrows crossing `c`.
pub fn crossing_weight(d: &GaussDiagram, c: usize) -> Result<i64> {
    d.arrow(c)?;
    d.require_nonsingular()?;
    Ok(weight_unchecked(d, c))
}

fn weight_unchecked(d: &GaussDiagram, c: usize) -> i64 {
    (0..d.n())
        .filter(|&x| x != c && d.intersect_unchecked(c, x))
        .map(|x| d.arrows()[x].sign.value() * int_unchecked(d, c, x))
        .sum()
}

/// Weights of all arrows, indexed by arrow id.
pub fn weights(d: &GaussDiagram) -> Result<Vec<i64>> {
    d.require_nonsingular()?;
    Ok(weights_unchecked(d))
}

/// Like [`weights`], but singular arrows count as their stored resolution.
pub(crate) fn weights_unchecked(d: &GaussDiagram) -> Vec<i64> {
    (0..d.n()).map(|c| weight_unchecked(d, c)).collect()
}

pub fn relative_weights(d: &GaussDiagram, p: usize, q: usize) -> Result<WeightTriple> {
    let s = d.smooth_pair(p, q)?;
    Ok(relative_from_smoothing(d, &s))
}

pub(crate) fn relative_from_smoothing(d: &GaussDiagram, s: &Smoothing) -> WeightTriple {
    // Signed sums for LM (against the left chord), MR (against the right one)
    // and LR against either chord.
    let (mut lm, mut mr, mut lr, mut lr_alt) = (0i64, 0i64, 0i64, 0i64);
    for (x, (rt, rh)) in s.crossing_arcs(d) {
        if rt == rh {
            continue;
        }
        let sign = d.arrows()[x].sign.value();
        match (rt.min(rh), rt.max(rh)) {
            (Region::Left, Region::Middle) => lm += sign * int_unchecked(d, s.left, x),
            (Region::Middle, Region::Right) => mr += sign * int_unchecked(d, s.right, x),
            _ => {
                let (first, second) = if s.left < s.right {
                    (s.left, s.right)
                } else {
                    (s.right, s.left)
                };
                lr += sign * int_unchecked(d, first, x);
                lr_alt += sign * int_unchecked(d, second, x);
            }
        }
    }
    debug_assert_eq!(lr.abs(), lr_alt.abs(), "relative weight depends on the chord choice");
    WeightTriple {
        w12: lm.unsigned_abs(),
        w13: lr.unsigned_abs(),
        w23: mr.unsigned_abs(),
    }
}

pub fn classify_pair(d: &GaussDiagram, p: usize, q: usize) -> Result<PairConfig> {
    let s = d.smooth_pair(p, q)?;
    Ok(PairConfig {
        shape: s.shape,
        labels: relative_from_smoothing(d, &s),
        sign: d.arrows()[p].sign * d.arrows()[q].sign,
    })
}
