//! Gauss diagrams of knots in thickened surfaces, with a homology class on
//! every arc, and the invariants valued in 𝒜(Σ).

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::algebra::{ACombination, ARawSum, Combination, FormalSum, Generator, Presentation};
use crate::error::{Error, Result};
use crate::gauss::{parse_gauss_code, GaussDiagram, PairShape};
use crate::invariants::phi_general;
use crate::reidemeister::{apply_move, Move, WalkOptions, Walker};

/// A class in H₁(Σ_g; Z) in the symplectic basis `a₁, b₁, …, a_g, b_g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyClass(pub Vec<i64>);

impl HomologyClass {
    pub fn zero(genus: usize) -> HomologyClass {
        HomologyClass(vec![0; 2 * genus])
    }

    pub fn genus(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &HomologyClass) -> HomologyClass {
        HomologyClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &HomologyClass) -> HomologyClass {
        HomologyClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Serialize for HomologyClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The signed intersection pairing `a · J · b`, with `J` the block sum of
/// `[[0, 1], [-1, 0]]`.
pub fn intersection_number(a: &HomologyClass, b: &HomologyClass) -> Result<i64> {
    if a.0.len() != b.0.len() {
        return Err(Error::GenusMismatch(a.genus(), b.genus()));
    }
    Ok(a.0
        .chunks_exact(2)
        .zip(b.0.chunks_exact(2))
        .map(|(x, y)| x[0] * y[1] - x[1] * y[0])
        .sum())
}

fn omega(a: &HomologyClass, b: &HomologyClass) -> u64 {
    intersection_number(a, b).expect("equal genus").unsigned_abs()
}

/// Labels are the classes of the left, middle and right regions. Generators
/// with a zero class vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Homological;

impl Presentation for Homological {
    type Label = HomologyClass;

    fn canonical(mut g: Generator<HomologyClass>) -> Generator<HomologyClass> {
        if g.shape != PairShape::Parallel && g.labels[0] > g.labels[2] {
            g.labels.swap(0, 2);
        }
        g
    }

    fn vanishes(g: &Generator<HomologyClass>) -> bool {
        g.labels.iter().any(HomologyClass::is_zero)
    }

    fn expand(g: &Generator<HomologyClass>) -> [Generator<HomologyClass>; 2] {
        let [a, b, c] = g.labels.clone();
        match g.shape {
            PairShape::Inward => [
                Generator::parallel([b.clone(), a.clone(), c.clone()]),
                Generator::parallel([b, c, a]),
            ],
            PairShape::Outward => [
                Generator::parallel([c.clone(), a.clone(), b.clone()]),
                Generator::parallel([a, c, b]),
            ],
            PairShape::Parallel => unreachable!("parallel generators are not rewritten"),
        }
    }

    fn functional_terms(basis: &[HomologyClass; 3]) -> [Generator<HomologyClass>; 3] {
        let [al, be, ga] = basis.clone();
        [
            Generator::parallel([al.clone(), be.clone(), ga.clone()]),
            Homological::canonical(Generator::new(PairShape::Inward, [be.clone(), al.clone(), ga.clone()])),
            Homological::canonical(Generator::new(PairShape::Outward, [al, ga, be])),
        ]
    }
}

pub type ASigmaCombination = Combination<Homological>;
pub type ASigmaRawSum = FormalSum<Homological>;

pub fn normal_form_asigma(raw: ASigmaRawSum) -> ASigmaCombination {
    raw.reduce()
}

/// A Gauss diagram with a homology class on each arc. Arc `k` runs from
/// endpoint `k` to endpoint `k + 1`; the last arc passes the basepoint. An
/// empty diagram has a single arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledSurfaceDiagram {
    base: GaussDiagram,
    genus: usize,
    arcs: Vec<HomologyClass>,
}

impl LabeledSurfaceDiagram {
    pub fn new(base: GaussDiagram, genus: usize, arcs: Vec<HomologyClass>) -> Result<LabeledSurfaceDiagram> {
        let expected = base.len().max(1);
        if arcs.len() != expected {
            return Err(Error::Format {
                line: 0,
                message: format!("{} arc labels for {expected} arcs", arcs.len()),
            });
        }
        if let Some(a) = arcs.iter().find(|a| a.0.len() != 2 * genus) {
            return Err(Error::GenusMismatch(a.genus(), genus));
        }
        Ok(LabeledSurfaceDiagram { base, genus, arcs })
    }

    /// Every arc labelled with the zero class.
    pub fn zero_labeled(base: GaussDiagram, genus: usize) -> LabeledSurfaceDiagram {
        let arcs = vec![HomologyClass::zero(genus); base.len().max(1)];
        LabeledSurfaceDiagram { base, genus, arcs }
    }

    pub fn base(&self) -> &GaussDiagram {
        &self.base
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn arcs(&self) -> &[HomologyClass] {
        &self.arcs
    }

    /// Class of the whole knot.
    pub fn total_class(&self) -> HomologyClass {
        self.arcs
            .iter()
            .fold(HomologyClass::zero(self.genus), |acc, a| acc.add(a))
    }

    pub fn with_arc(&self, k: usize, class: HomologyClass) -> Result<LabeledSurfaceDiagram> {
        let mut arcs = self.arcs.clone();
        *arcs.get_mut(k).ok_or(Error::Position {
            position: k,
            max: self.arcs.len() - 1,
        })? = class;
        LabeledSurfaceDiagram::new(self.base.clone(), self.genus, arcs)
    }

    /// Classes of the left, middle and right components after smoothing `p`, `q`.
    pub fn region_classes(&self, p: usize, q: usize) -> Result<[HomologyClass; 3]> {
        let s = self.base.smooth_pair(p, q)?;
        let mut out = [
            HomologyClass::zero(self.genus),
            HomologyClass::zero(self.genus),
            HomologyClass::zero(self.genus),
        ];
        for (k, a) in self.arcs.iter().enumerate() {
            let r = s.arc_region(k);
            out[r.index()] = out[r.index()].add(a);
        }
        Ok(out)
    }

    /// Parses the text format: `genus g`, the Gauss code, then one
    /// `arc k: c1 … c2g` line per arc. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<LabeledSurfaceDiagram> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let bad = |line: usize, message: &str| Error::Format {
            line,
            message: message.to_string(),
        };
        let (ln, first) = lines.next().ok_or_else(|| bad(1, "missing genus line"))?;
        let genus = first
            .strip_prefix("genus")
            .and_then(|g| g.trim().parse::<usize>().ok())
            .ok_or_else(|| bad(ln, "expected `genus g`"))?;
        let (ln, code) = lines.next().ok_or_else(|| bad(ln + 1, "missing Gauss code"))?;
        let code = if code == "-" { "" } else { code };
        let base = parse_gauss_code(code).map_err(|e| bad(ln, &e.to_string()))?;
        let count = base.len().max(1);
        let mut arcs: Vec<Option<HomologyClass>> = vec![None; count];
        for (ln, l) in lines {
            let (head, coords) = l.split_once(':').ok_or_else(|| bad(ln, "expected `arc k: ...`"))?;
            let k = head
                .trim()
                .strip_prefix("arc")
                .and_then(|k| k.trim().parse::<usize>().ok())
                .ok_or_else(|| bad(ln, "expected `arc k`"))?;
            let c: Vec<i64> = coords
                .split_whitespace()
                .map(|x| x.parse::<i64>().map_err(|_| bad(ln, "bad coordinate")))
                .collect::<Result<_>>()?;
            if c.len() != 2 * genus {
                return Err(bad(ln, &format!("expected {} coordinates", 2 * genus)));
            }
            let slot = arcs.get_mut(k).ok_or_else(|| bad(ln, "arc index out of range"))?;
            if slot.is_some() {
                return Err(bad(ln, "arc given twice"));
            }
            *slot = Some(HomologyClass(c));
        }
        let arcs = arcs
            .into_iter()
            .enumerate()
            .map(|(k, a)| a.ok_or_else(|| bad(0, &format!("arc {k} missing"))))
            .collect::<Result<Vec<_>>>()?;
        LabeledSurfaceDiagram::new(base, genus, arcs)
    }
}

impl fmt::Display for LabeledSurfaceDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "genus {}", self.genus)?;
        if self.base.is_empty() {
            writeln!(f, "-")?;
        } else {
            writeln!(f, "{}", self.base)?;
        }
        for (k, a) in self.arcs.iter().enumerate() {
            let c: Vec<String> = a.0.iter().map(|x| x.to_string()).collect();
            writeln!(f, "arc {k}: {}", c.join(" "))?;
        }
        Ok(())
    }
}

/// The signed sum of region-labelled disjoint pairs, unreduced.
pub fn phi_sigma_raw(d: &LabeledSurfaceDiagram) -> ASigmaRawSum {
    let mut s = ASigmaRawSum::new();
    for (p, q) in d.base.parallel_pairs() {
        let sm = d.base.smooth_pair(p, q).expect("disjoint pair");
        let classes = d.region_classes(p, q).expect("disjoint pair");
        let sign = d.base.arrows()[p].sign * d.base.arrows()[q].sign;
        s.add(Generator::new(sm.shape, classes), sign.value());
    }
    s
}

/// Φ[Σ]: the reduced sum of region-labelled disjoint pairs.
pub fn phi_sigma(d: &LabeledSurfaceDiagram) -> ASigmaCombination {
    phi_sigma_raw(d).reduce()
}

/// Hypothesis for Φ_{α,β,γ}: no zero class, and either all distinct or
/// `α = γ ≠ β`.
pub fn gv_admissible(al: &HomologyClass, be: &HomologyClass, ga: &HomologyClass) -> bool {
    if al.is_zero() || be.is_zero() || ga.is_zero() {
        return false;
    }
    let distinct = al != be && be != ga && al != ga;
    distinct || (al == ga && be != ga)
}

pub fn gv_functional(
    x: &ASigmaCombination,
    al: &HomologyClass,
    be: &HomologyClass,
    ga: &HomologyClass,
) -> Result<i64> {
    if !gv_admissible(al, be, ga) {
        return Err(Error::Hypothesis);
    }
    Ok(x.coefficient(&[al.clone(), be.clone(), ga.clone()]))
}

/// Replaces region classes `(α, β, γ)` by the weights
/// `(|α·β|, |β·γ|, |α·γ|)` and reduces in 𝒜.
pub fn hat_phi_sigma(x: &ASigmaCombination) -> ACombination {
    let mut raw = ARawSum::new();
    for (g, &c) in x.terms() {
        let [a, b, cl] = &g.labels;
        raw.add(Generator::new(g.shape, [omega(a, b), omega(b, cl), omega(a, cl)]), c);
    }
    raw.reduce()
}

/// [`hat_phi_sigma`] applied term by term to an unreduced sum.
pub fn hat_phi_sigma_raw(x: &ASigmaRawSum) -> ARawSum {
    let mut raw = ARawSum::new();
    for (g, &c) in x.terms() {
        let [a, b, cl] = &g.labels;
        raw.add(Generator::new(g.shape, [omega(a, b), omega(b, cl), omega(a, cl)]), c);
    }
    raw
}

pub fn project_to_virtual(d: &LabeledSurfaceDiagram) -> GaussDiagram {
    d.base.clone()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommuteReport {
    pub commutes: bool,
    pub lhs: ACombination,
    pub rhs: ACombination,
}

/// Compares `φ̂_Σ(Φ[Σ](d))` with `φ` of the underlying virtual diagram. Only
/// labellings read off an actual curve on the surface are expected to agree.
pub fn commuting_check(d: &LabeledSurfaceDiagram) -> Result<CommuteReport> {
    let lhs = hat_phi_sigma(&phi_sigma(d));
    let rhs = phi_general(&project_to_virtual(d))?;
    Ok(CommuteReport {
        commutes: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Region classes of an `R3` slot must be untouched, so the arc between the
/// two endpoints of each slot has to be null.
fn inner_arcs_zero(d: &LabeledSurfaceDiagram, starts: &[usize]) -> bool {
    starts.iter().all(|&k| d.arcs[k].is_zero())
}

/// Whether `m` is a legal labelled move on `d`: every arc created or
/// destroyed inside the local picture carries the zero class.
pub fn labeled_move_allowed(d: &LabeledSurfaceDiagram, m: &Move) -> bool {
    let b = &d.base;
    match *m {
        Move::R1Add { .. } | Move::R2Add { .. } => true,
        Move::R1Remove { arrow } => {
            let a = &b.arrows()[arrow];
            let first = if (a.tail + 1) % b.len() == a.head { a.tail } else { a.head };
            if b.len() == 2 {
                d.arcs.iter().any(HomologyClass::is_zero)
            } else {
                inner_arcs_zero(d, &[first])
            }
        }
        Move::R2Remove { arrows: [x, y] } => {
            let (a, c) = (&b.arrows()[x], &b.arrows()[y]);
            let start = |p: usize, q: usize| if (p + 1) % b.len() == q { p } else { q };
            inner_arcs_zero(d, &[start(a.tail, c.tail), start(a.head, c.head)])
        }
        Move::R3 { slots } => inner_arcs_zero(d, &slots),
    }
}

/// Applies a move to a labelled diagram. Inserted arcs inside the move get
/// the zero class; a split arc `v` becomes `v₁, 0, …, v − v₁` with `v₁`
/// drawn from `split`. Removed pieces merge their outer arcs.
pub fn apply_labeled_move(
    d: &LabeledSurfaceDiagram,
    m: &Move,
    split: &mut impl FnMut(&HomologyClass) -> HomologyClass,
) -> Result<LabeledSurfaceDiagram> {
    if !labeled_move_allowed(d, m) {
        return Err(Error::MoveMismatch(format!("labels block {m:?}")));
    }
    let base = apply_move(&d.base, m)?;
    let len = d.base.len();
    let zero = HomologyClass::zero(d.genus);
    // Arc after each token, kept alongside the token sequence.
    let mut seq: Vec<(bool, HomologyClass)> = d.arcs.iter().cloned().map(|a| (true, a)).collect();
    let mut arcs_new: Vec<HomologyClass>;
    match *m {
        Move::R1Add { .. } | Move::R2Add { .. } if len == 0 => {
            // The circle arc becomes the arc after the last inserted endpoint.
            arcs_new = vec![zero.clone(); base.len()];
            *arcs_new.last_mut().expect("inserted endpoints") = d.arcs[0].clone();
        }
        Move::R1Add { gap, .. } => {
            arcs_new = insert_at(&mut seq, gap, 2, &zero, split);
        }
        Move::R2Add { gaps: [g0, g1], .. } => {
            if g0 == g1 {
                arcs_new = insert_at(&mut seq, g0, 4, &zero, split);
            } else {
                insert_at(&mut seq, g1, 2, &zero, split);
                arcs_new = insert_at(&mut seq, g0, 2, &zero, split);
            }
        }
        Move::R1Remove { arrow } => {
            let a = &d.base.arrows()[arrow];
            arcs_new = remove_positions(&d.arcs, &[a.tail, a.head], &zero);
        }
        Move::R2Remove { arrows: [x, y] } => {
            let (a, c) = (&d.base.arrows()[x], &d.base.arrows()[y]);
            arcs_new = remove_positions(&d.arcs, &[a.tail, a.head, c.tail, c.head], &zero);
        }
        Move::R3 { .. } => arcs_new = d.arcs.clone(),
    }
    if base.is_empty() && arcs_new.is_empty() {
        arcs_new = vec![d.total_class()];
    }
    LabeledSurfaceDiagram::new(base, d.genus, arcs_new)
}

/// Inserts `count` endpoints at `gap` into a sequence of (token, arc after)
/// entries and returns the arc list.
fn insert_at(
    seq: &mut Vec<(bool, HomologyClass)>,
    gap: usize,
    count: usize,
    zero: &HomologyClass,
    split: &mut impl FnMut(&HomologyClass) -> HomologyClass,
) -> Vec<HomologyClass> {
    let len = seq.len();
    let host = (gap + len - 1) % len;
    let v = seq[host].1.clone();
    let v1 = split(&v);
    seq[host].1 = v1.clone();
    let mut inserted: Vec<(bool, HomologyClass)> = vec![(true, zero.clone()); count];
    inserted[count - 1].1 = v.sub(&v1);
    seq.splice(gap..gap, inserted);
    seq.iter().map(|(_, a)| a.clone()).collect()
}

/// Drops endpoints, merging each removed arc into the arc before it.
fn remove_positions(arcs: &[HomologyClass], positions: &[usize], zero: &HomologyClass) -> Vec<HomologyClass> {
    let len = arcs.len();
    let mut acc: Vec<HomologyClass> = arcs.to_vec();
    let mut gone = vec![false; len];
    for &p in positions {
        gone[p] = true;
    }
    // The arc before endpoint p absorbs the arc after it.
    for p in 0..len {
        if gone[p] {
            let mut prev = (p + len - 1) % len;
            while gone[prev] && prev != p {
                prev = (prev + len - 1) % len;
            }
            if prev != p {
                let moved = std::mem::replace(&mut acc[p], zero.clone());
                acc[prev] = acc[prev].add(&moved);
            }
        }
    }
    (0..len).filter(|&p| !gone[p]).map(|p| acc[p].clone()).collect()
}

/// Splits off a random `v₁` with coordinates in `[-2, 2]`.
pub fn random_split<R: Rng>(rng: &mut R) -> impl FnMut(&HomologyClass) -> HomologyClass + '_ {
    move |v: &HomologyClass| HomologyClass(v.0.iter().map(|_| rng.random_range(-2..=2)).collect())
}

/// Applies `steps` random labelled moves. Moves blocked by non-null inner
/// arcs are skipped, so fewer than `steps` moves may be applied.
pub fn labeled_random_walk(
    d: &LabeledSurfaceDiagram,
    steps: usize,
    seed: u64,
    frame_preserving: bool,
) -> (LabeledSurfaceDiagram, Vec<Move>) {
    let mut walker = Walker::new(seed, WalkOptions::for_diagram(&d.base, frame_preserving));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut cur = d.clone();
    let mut applied = Vec::new();
    for _ in 0..steps {
        let moves: Vec<Move> = walker
            .candidates(&cur.base)
            .into_iter()
            .filter(|m| labeled_move_allowed(&cur, m))
            .collect();
        if moves.is_empty() {
            continue;
        }
        let m = moves[rng.random_range(0..moves.len())];
        let mut split = random_split(&mut rng);
        cur = apply_labeled_move(&cur, &m, &mut split).expect("allowed move applies");
        applied.push(m);
    }
    (cur, applied)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::Region;

    fn h(v: &[i64]) -> HomologyClass {
        HomologyClass(v.to_vec())
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(intersection_number(&h(&[1, 0]), &h(&[0, 1])), Ok(1));
        assert_eq!(intersection_number(&h(&[3, -2]), &h(&[3, -2])), Ok(0));
        assert_eq!(intersection_number(&h(&[1, 1]), &h(&[1, -1])), Ok(-2));
        assert!(intersection_number(&h(&[1, 1]), &h(&[1, 0, 0, 1])).is_err());
    }

    #[test]
    fn zero_labels_give_zero() {
        let base: GaussDiagram = "O1+U1+O2-U2-".parse().unwrap();
        let d = LabeledSurfaceDiagram::zero_labeled(base, 1);
        assert!(phi_sigma(&d).is_zero());
        assert!(phi_sigma(&LabeledSurfaceDiagram::zero_labeled(GaussDiagram::empty(), 1)).is_zero());
    }

    #[test]
    fn zero_class_generator_maps_to_zero() {
        let mut s = ASigmaRawSum::new();
        s.add(Generator::parallel([h(&[1, 0]), h(&[0, 0]), h(&[0, 1])]), 1);
        assert!(s.clone().reduce().is_zero());
        assert!(hat_phi_sigma_raw(&s).reduce().is_zero());
    }

    #[test]
    fn parse_round_trip() {
        let text = "genus 1\nO1+U1+\narc 0: 0 0\narc 1: 1 -1\n";
        let d = LabeledSurfaceDiagram::parse(text).unwrap();
        assert_eq!(d.to_string(), text);
        assert_eq!(d.total_class(), h(&[1, -1]));
        assert!(LabeledSurfaceDiagram::parse("genus 1\nO1+U1+\narc 0: 0 0\n").is_err());
        assert!(LabeledSurfaceDiagram::parse("genus 1\nO1+U1+\narc 0: 0\narc 1: 0 0\n").is_err());
    }

    #[test]
    fn hypothesis() {
        let (a, b) = (h(&[1, 0]), h(&[0, 1]));
        assert!(gv_admissible(&a, &b, &a));
        assert!(!gv_admissible(&a, &a, &b));
        assert!(!gv_admissible(&a, &b, &h(&[0, 0])));
        assert_eq!(gv_functional(&ASigmaCombination::zero(), &a, &b, &a), Ok(0));
    }

    #[test]
    fn region_regions() {
        let base: GaussDiagram = "O1+U1+O2+U2+".parse().unwrap();
        let arcs = vec![h(&[1, 0]), h(&[0, 1]), h(&[2, 0]), h(&[0, 3])];
        let d = LabeledSurfaceDiagram::new(base, 1, arcs).unwrap();
        let [l, m, r] = d.region_classes(0, 1).unwrap();
        assert_eq!(l.add(&m).add(&r), d.total_class());
        let s = d.base().smooth_pair(0, 1).unwrap();
        assert_eq!(s.arc_region(0), Region::Left);
        assert_eq!(l, h(&[1, 0]));
        assert_eq!(r, h(&[2, 0]));
    }
}
