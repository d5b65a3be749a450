//! The group A generated by symbols `A_{ij}`, stored through its isomorphism
//! with the direct sum of copies of Z₂: an element is the finite set of
//! coordinates holding a one.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AElement {
    support: BTreeSet<i64>,
}

impl AElement {
    pub fn identity() -> AElement {
        AElement::default()
    }

    /// `A_{ij}`: ones in positions `min(i,j) .. max(i,j) - 1`.
    pub fn generator(i: i64, j: i64) -> AElement {
        AElement {
            support: (i.min(j)..i.max(j)).collect(),
        }
    }

    pub fn from_support<I: IntoIterator<Item = i64>>(coords: I) -> AElement {
        AElement {
            support: coords.into_iter().collect(),
        }
    }

    pub fn support(&self) -> &BTreeSet<i64> {
        &self.support
    }

    pub fn is_identity(&self) -> bool {
        self.support.is_empty()
    }

    pub fn multiply(&self, other: &AElement) -> AElement {
        AElement {
            support: self.support.symmetric_difference(&other.support).copied().collect(),
        }
    }

    pub fn mul_assign(&mut self, other: &AElement) {
        for &c in &other.support {
            if !self.support.remove(&c) {
                self.support.insert(c);
            }
        }
    }

    /// The automorphism moving coordinate `i` to `i - 1`.
    pub fn shift(&self) -> AElement {
        AElement::from_support(self.support.iter().map(|i| i - 1))
    }

    /// The automorphism moving coordinate `i` to `-i - 1`, so that
    /// `A_{i,i+1}` goes to `A_{-i-1,-i}`.
    pub fn reflect(&self) -> AElement {
        AElement::from_support(self.support.iter().map(|i| -i - 1))
    }

    /// True when the support has an even number of coordinates.
    pub fn support_parity_even(&self) -> bool {
        self.support.len().is_multiple_of(2)
    }

    /// Maximal runs of consecutive coordinates, each as `(i, j)` with `A_{ij}`
    /// covering `i .. j - 1`.
    pub fn runs(&self) -> Vec<(i64, i64)> {
        let mut out: Vec<(i64, i64)> = Vec::new();
        for &c in &self.support {
            match out.last_mut() {
                Some(run) if run.1 == c => run.1 = c + 1,
                _ => out.push((c, c + 1)),
            }
        }
        out
    }
}

impl Mul for &AElement {
    type Output = AElement;
    fn mul(self, rhs: &AElement) -> AElement {
        self.multiply(rhs)
    }
}

impl Mul for AElement {
    type Output = AElement;
    fn mul(self, rhs: AElement) -> AElement {
        self.multiply(&rhs)
    }
}

impl FromIterator<AElement> for AElement {
    fn from_iter<I: IntoIterator<Item = AElement>>(iter: I) -> AElement {
        let mut acc = AElement::identity();
        for x in iter {
            acc.mul_assign(&x);
        }
        acc
    }
}

/// Product of interval generators, e.g. `A_{-5,-3}A_{1,7}`; `1` for the identity.
impl fmt::Display for AElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        for (i, j) in self.runs() {
            write!(f, "A_{{{i},{j}}}")?;
        }
        Ok(())
    }
}
