//! The three loop invariant φ_{ijk}, the framed invariant Φ^fr, the 𝒜-valued
//! invariant φ and the functionals relating them.

use serde::Serialize;

use crate::algebra::{ACombination, ARawSum, Generator, Presentation, Weighted};
use crate::error::{Error, Result};
use crate::gauss::GaussDiagram;
use crate::group_a::AElement;
use crate::weights::{relative_from_smoothing, weights, PairConfig};

/// Labels of a pair configuration in generator order `(w12, w23, w13)`.
pub fn generator_of(c: &PairConfig) -> Generator<u64> {
    Weighted::canonical(Generator::new(c.shape, [c.labels.w12, c.labels.w23, c.labels.w13]))
}

/// Classifies every disjoint pair.
pub fn pair_configs(d: &GaussDiagram) -> Result<Vec<PairConfig>> {
    d.require_nonsingular()?;
    Ok(d.parallel_pairs()
        .into_iter()
        .map(|(p, q)| {
            let s = d.smooth_pair(p, q).expect("disjoint pair");
            PairConfig {
                shape: s.shape,
                labels: relative_from_smoothing(d, &s),
                sign: d.arrows()[p].sign * d.arrows()[q].sign,
            }
        })
        .collect())
}

fn check_distinct(i: u64, j: u64, k: u64) -> Result<()> {
    if i == j || j == k || i == k {
        Err(Error::IndicesNotDistinct(i, j, k))
    } else {
        Ok(())
    }
}

/// φ_{ijk}: signed count of disjoint pairs matching one of the three
/// labelled configurations of F_{ijk}.
pub fn phi_ijk(d: &GaussDiagram, i: u64, j: u64, k: u64) -> Result<i64> {
    check_distinct(i, j, k)?;
    let f = Weighted::functional_terms(&[i, j, k]);
    Ok(pair_configs(d)?
        .iter()
        .filter(|c| f.contains(&generator_of(c)))
        .map(|c| c.sign.value())
        .sum())
}

/// The signed formal sum of all disjoint pairs, before reduction.
pub fn phi_raw(d: &GaussDiagram) -> Result<ARawSum> {
    let mut s = ARawSum::new();
    for c in pair_configs(d)? {
        s.add(generator_of(&c), c.sign.value());
    }
    Ok(s)
}

pub fn phi_general(d: &GaussDiagram) -> Result<ACombination> {
    Ok(normal_form_a(phi_raw(d)?))
}

pub fn normal_form_a(raw: ARawSum) -> ACombination {
    raw.reduce()
}

/// φ̂_{ijk}: the pairing with F_{ijk}, read off a reduced combination.
pub fn functional_phi_hat(x: &ACombination, i: u64, j: u64, k: u64) -> Result<i64> {
    check_distinct(i, j, k)?;
    Ok(x.coefficient(&[i, j, k]))
}

/// Φ^fr: the product of `A_{w(p) w(q)}` over disjoint pairs.
pub fn phi_fr(d: &GaussDiagram) -> Result<AElement> {
    let w = weights(d)?;
    Ok(phi_fr_with(d, &w))
}

fn phi_fr_with(d: &GaussDiagram, w: &[i64]) -> AElement {
    d.parallel_pairs()
        .into_iter()
        .map(|(p, q)| AElement::generator(w[p], w[q]))
        .collect()
}

/// Multiplies `x` by `A_{0,w(a)}` for every arrow `a` of `d2`.
pub fn writhe_correction(x: &AElement, d2: &GaussDiagram) -> Result<AElement> {
    let mut out = x.clone();
    for w in weights(d2)? {
        out.mul_assign(&AElement::generator(0, w));
    }
    Ok(out)
}

/// Φ^fr together with its image under the reflection `i ↦ -i-1`, which is
/// what inverse, mirror and switch do to Φ^fr.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub phi_fr: AElement,
    pub reflected: AElement,
    pub detects_noninvertible: bool,
    pub detects_chiral: bool,
    pub detects_switch: bool,
}

pub fn symmetry_report(d: &GaussDiagram) -> Result<SymmetryReport> {
    let phi_fr = phi_fr(d)?;
    let reflected = phi_fr.reflect();
    let differ = phi_fr != reflected;
    Ok(SymmetryReport {
        phi_fr,
        reflected,
        detects_noninvertible: differ,
        detects_chiral: differ,
        detects_switch: differ,
    })
}

/// `Φ^fr(d1 # d2) · Φ^fr(d1) · Φ^fr(d2)` for the splice at gaps `b1`, `b2`.
pub fn phi_fr_connect_ratio(d1: &GaussDiagram, b1: usize, d2: &GaussDiagram, b2: usize) -> Result<AElement> {
    let sum = d1.connect_sum(b1, d2, b2)?;
    Ok(phi_fr(&sum)?.multiply(&phi_fr(d1)?).multiply(&phi_fr(d2)?))
}

fn paired_product(w: &[i64]) -> AElement {
    w.chunks_exact(2).map(|c| AElement::generator(c[0], c[1])).collect()
}

/// The ratio predicted from arrow counts and weights alone: `1` when both
/// counts are even, `E` built from the even diagram when exactly one is odd,
/// and `O₁O₂A_{p_n q_m}` when both are odd.
pub fn connect_ratio_formula(d1: &GaussDiagram, d2: &GaussDiagram) -> Result<AElement> {
    let (p, q) = (weights(d1)?, weights(d2)?);
    Ok(match (p.len() % 2, q.len() % 2) {
        (0, 0) => AElement::identity(),
        (0, _) => paired_product(&p),
        (_, 0) => paired_product(&q),
        _ => {
            let last = AElement::generator(p[p.len() - 1], q[q.len() - 1]);
            paired_product(&p[..p.len() - 1])
                .multiply(&paired_product(&q[..q.len() - 1]))
                .multiply(&last)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> GaussDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn empty_diagram() {
        let e = GaussDiagram::empty();
        assert_eq!(phi_ijk(&e, 1, 0, 2), Ok(0));
        assert!(phi_fr(&e).unwrap().is_identity());
        assert!(phi_general(&e).unwrap().is_zero());
    }

    #[test]
    fn rejects_repeated_indices() {
        assert_eq!(phi_ijk(&GaussDiagram::empty(), 1, 1, 2), Err(Error::IndicesNotDistinct(1, 1, 2)));
    }

    #[test]
    fn virtual_trefoil_undetected() {
        assert!(phi_fr(&d("O1+O2+U1+U2+")).unwrap().is_identity());
    }

    #[test]
    fn kink_needs_writhe_correction() {
        let vt = d("O1+O2+U1+U2+");
        let kinked = d("O1+O2+U1+U2+O3+U3+");
        assert_ne!(phi_fr(&vt), phi_fr(&kinked));
        assert_eq!(phi_fr(&kinked).unwrap(), writhe_correction(&phi_fr(&vt).unwrap(), &vt).unwrap());
        let twice = d("O1+O2+U1+U2+O3+U3+O4-U4-");
        assert_eq!(phi_fr(&vt), phi_fr(&twice));
    }

    #[test]
    fn singular_input_rejected() {
        assert_eq!(phi_fr(&d("O1+*U1+*")), Err(Error::Singular));
    }
}
