//! Formal sums of labelled two-arrow generators and their reduction modulo
//! the three-term relations.
//!
//! Both quotient groups in the crate share one shape: generators are a pair
//! shape with three labels, generators with degenerate labels vanish, and
//! each `Inward` or `Outward` generator equals a sum of two `Parallel` ones.
//! Eliminating the antiparallel shapes leaves the `Parallel` generators with
//! non-degenerate labels as a basis.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::marker::PhantomData;

use serde::Serialize;

use crate::gauss::PairShape;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Generator<L> {
    pub shape: PairShape,
    pub labels: [L; 3],
}

impl<L> Generator<L> {
    pub fn new(shape: PairShape, labels: [L; 3]) -> Generator<L> {
        Generator { shape, labels }
    }

    pub fn parallel(labels: [L; 3]) -> Generator<L> {
        Generator::new(PairShape::Parallel, labels)
    }
}

/// A presentation: label type, canonical ordering, vanishing generators and
/// the rewrite of antiparallel generators.
pub trait Presentation {
    type Label: Clone + Ord + Debug;

    /// Canonical representative; antiparallel shapes are symmetric under
    /// exchanging the two chords.
    fn canonical(g: Generator<Self::Label>) -> Generator<Self::Label>;

    /// Generators that are relations on their own.
    fn vanishes(g: &Generator<Self::Label>) -> bool;

    /// The two `Parallel` generators an antiparallel one is equal to.
    fn expand(g: &Generator<Self::Label>) -> [Generator<Self::Label>; 2];

    /// The terms of the linear functional dual to the basis element `basis`.
    fn functional_terms(basis: &[Self::Label; 3]) -> [Generator<Self::Label>; 3];
}

/// Labels are the relative weights `(w12, w23, w13)`, i.e. (left-middle,
/// middle-right, left-right). Generators with a repeated label vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Weighted;

impl Presentation for Weighted {
    type Label = u64;

    fn canonical(mut g: Generator<u64>) -> Generator<u64> {
        if g.shape != PairShape::Parallel && g.labels[0] > g.labels[1] {
            g.labels.swap(0, 1);
        }
        g
    }

    fn vanishes(g: &Generator<u64>) -> bool {
        let [x, y, z] = g.labels;
        x == y || y == z || x == z
    }

    fn expand(g: &Generator<u64>) -> [Generator<u64>; 2] {
        let [x, y, z] = g.labels;
        match g.shape {
            PairShape::Inward => [Generator::parallel([x, z, y]), Generator::parallel([y, z, x])],
            PairShape::Outward => [Generator::parallel([z, x, y]), Generator::parallel([z, y, x])],
            PairShape::Parallel => unreachable!("parallel generators are not rewritten"),
        }
    }

    fn functional_terms(&[i, j, k]: &[u64; 3]) -> [Generator<u64>; 3] {
        [
            Generator::parallel([i, j, k]),
            Weighted::canonical(Generator::new(PairShape::Inward, [i, k, j])),
            Weighted::canonical(Generator::new(PairShape::Outward, [j, k, i])),
        ]
    }
}

/// An unreduced formal integer combination of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum<P: Presentation> {
    terms: BTreeMap<Generator<P::Label>, i64>,
    _p: PhantomData<P>,
}

impl<P: Presentation> Default for FormalSum<P> {
    fn default() -> Self {
        FormalSum {
            terms: BTreeMap::new(),
            _p: PhantomData,
        }
    }
}

impl<P: Presentation> FormalSum<P> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, g: Generator<P::Label>, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let g = P::canonical(g);
        let c = self.terms.entry(g.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&g);
        }
    }

    pub fn add_sum(&mut self, other: &FormalSum<P>, factor: i64) {
        for (g, c) in &other.terms {
            self.add(g.clone(), c * factor);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Generator<P::Label>, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn reducible(&self) -> Vec<Generator<P::Label>> {
        self.terms
            .keys()
            .filter(|g| g.shape != PairShape::Parallel || P::vanishes(g))
            .cloned()
            .collect()
    }

    /// Rewrites one term at a time, letting `choose(k)` pick which of the `k`
    /// currently reducible terms goes next.
    pub fn reduce_with(mut self, mut choose: impl FnMut(usize) -> usize) -> Combination<P> {
        loop {
            let pending = self.reducible();
            if pending.is_empty() {
                break;
            }
            let g = pending[choose(pending.len()) % pending.len()].clone();
            let c = self.terms.remove(&g).expect("pending term present");
            if !P::vanishes(&g) {
                for h in P::expand(&g) {
                    self.add(h, c);
                }
            }
        }
        Combination { terms: self.terms, _p: PhantomData }
    }

    pub fn reduce(self) -> Combination<P> {
        self.reduce_with(|_| 0)
    }

    /// Pairing against the functional dual to `basis`, on the raw sum.
    pub fn pair_raw(&self, basis: &[P::Label; 3]) -> i64 {
        P::functional_terms(basis)
            .iter()
            .map(|g| self.terms.get(g).copied().unwrap_or(0))
            .sum()
    }
}

/// A combination in reduced normal form: only non-vanishing `Parallel` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination<P: Presentation> {
    terms: BTreeMap<Generator<P::Label>, i64>,
    _p: PhantomData<P>,
}

impl<P: Presentation> Default for Combination<P> {
    fn default() -> Self {
        Combination {
            terms: BTreeMap::new(),
            _p: PhantomData,
        }
    }
}

impl<P: Presentation> Combination<P> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &BTreeMap<Generator<P::Label>, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the basis element `Parallel(labels)`.
    pub fn coefficient(&self, labels: &[P::Label; 3]) -> i64 {
        self.terms
            .get(&Generator::parallel(labels.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn into_sum(self) -> FormalSum<P> {
        FormalSum { terms: self.terms, _p: PhantomData }
    }

    pub fn records(&self) -> Vec<TermRecord<P::Label>> {
        self.terms
            .iter()
            .map(|(g, &coeff)| TermRecord {
                config: g.shape.name(),
                labels: g.labels.clone(),
                coeff,
            })
            .collect()
    }
}

/// Serialized form of one term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermRecord<L> {
    pub config: &'static str,
    pub labels: [L; 3],
    pub coeff: i64,
}

pub type ACombination = Combination<Weighted>;
pub type ARawSum = FormalSum<Weighted>;

/// The defining relation for an antiparallel generator, as
/// `g - expand(g)`. Zero in the quotient.
pub fn relation<P: Presentation>(shape: PairShape, labels: [P::Label; 3]) -> FormalSum<P> {
    let g = Generator::new(shape, labels);
    let mut s = FormalSum::new();
    s.add(g.clone(), 1);
    for h in P::expand(&P::canonical(g)) {
        s.add(h, -1);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeated_labels_vanish() {
        let mut s = ARawSum::new();
        s.add(Generator::parallel([1, 1, 2]), 3);
        assert!(s.reduce().is_zero());
    }

    #[test]
    fn relations_reduce_to_zero() {
        for shape in [PairShape::Inward, PairShape::Outward] {
            for x in 0..4 {
                for y in 0..4 {
                    for z in 0..4 {
                        assert!(relation::<Weighted>(shape, [x, y, z]).reduce().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn basis_is_fixed() {
        let mut s = ARawSum::new();
        s.add(Generator::parallel([1, 0, 2]), 1);
        s.add(Generator::parallel([2, 0, 1]), -2);
        let r = s.clone().reduce();
        assert_eq!(r.clone().into_sum(), s);
        assert_eq!(r.coefficient(&[2, 0, 1]), -2);
    }

    #[test]
    fn antiparallel_symmetry() {
        let mut s = ARawSum::new();
        s.add(Generator::new(PairShape::Inward, [3, 1, 2]), 1);
        s.add(Generator::new(PairShape::Inward, [1, 3, 2]), -1);
        assert!(s.is_zero());
    }

    #[test]
    fn functional_vanishes_on_relations() {
        for shape in [PairShape::Inward, PairShape::Outward] {
            for l in 0..64u64 {
                let labels = [l % 4, (l / 4) % 4, l / 16];
                let r = relation::<Weighted>(shape, labels);
                for b in 0..64u64 {
                    let basis = [b % 4, (b / 4) % 4, b / 16];
                    if Weighted::vanishes(&Generator::parallel(basis)) {
                        continue;
                    }
                    assert_eq!(r.pair_raw(&basis), 0, "{shape:?} {labels:?} {basis:?}");
                }
            }
        }
    }
}
