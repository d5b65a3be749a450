//! Example diagrams used throughout the tests, the CLI and the demo page.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::gauss::{End, GaussDiagram, Sign, Token};
use crate::surface::LabeledSurfaceDiagram;

/// Replaces arrow `a` by `mult[a]` parallel copies (missing entries mean 1):
/// tails side by side at the old tail, heads in reverse order at the old
/// head, so the copies are pairwise disjoint. Multiplicity zero deletes the
/// arrow.
pub fn stack(d: &GaussDiagram, mult: &[usize]) -> GaussDiagram {
    let m = |a: usize| mult.get(a).copied().unwrap_or(1);
    let first: Vec<usize> = (0..d.n())
        .scan(1, |next, a| {
            let f = *next;
            *next += m(a);
            Some(f)
        })
        .collect();
    let mut out = Vec::new();
    for t in d.tokens() {
        let a = t.label - 1;
        let labels = first[a]..first[a] + m(a);
        let push = |label| Token { label, ..t };
        match t.end {
            End::Tail => out.extend(labels.map(push)),
            End::Head => out.extend(labels.rev().map(push)),
        }
    }
    GaussDiagram::from_tokens(&out).expect("stacking keeps a valid diagram")
}

/// A uniformly shuffled diagram with `n` arrows of random sign, the first
/// `singular` of which (by label) are singular.
pub fn random_diagram<R: Rng>(rng: &mut R, n: usize, singular: usize) -> GaussDiagram {
    let mut tokens: Vec<Token> = Vec::with_capacity(2 * n);
    for label in 1..=n {
        let sign = if rng.random() { Sign::Pos } else { Sign::Neg };
        for end in [End::Tail, End::Head] {
            tokens.push(Token {
                end,
                label,
                sign,
                singular: label <= singular,
            });
        }
    }
    tokens.shuffle(rng);
    GaussDiagram::from_tokens(&tokens).expect("each label used twice")
}

pub const VT: &str = include_str!("../fixtures/VT.gauss");
pub const K_LOOP: &str = include_str!("../fixtures/K_LOOP.gauss");
pub const K_PRIME: &str = include_str!("../fixtures/K_PRIME.gauss");
pub const O2: &str = include_str!("../fixtures/O2.gauss");
pub const D1: &str = include_str!("../fixtures/D1.gauss");
pub const D2: &str = include_str!("../fixtures/D2.gauss");
pub const D3: &str = include_str!("../fixtures/D3.gauss");
pub const D1_FR: &str = include_str!("../fixtures/D1_FR.gauss");
pub const D2_FR: &str = include_str!("../fixtures/D2_FR.gauss");
pub const D3_FR: &str = include_str!("../fixtures/D3_FR.gauss");
pub const FT1: &str = include_str!("../fixtures/FT1.gauss");
pub const FT2: &str = include_str!("../fixtures/FT2.gauss");
pub const SEC43: &str = include_str!("../fixtures/SEC43.gauss");
pub const FIG8: &str = include_str!("../fixtures/FIG8.gauss");
pub const TREFOIL: &str = include_str!("../fixtures/TREFOIL.gauss");
pub const REALIZED_G1: &str = include_str!("../fixtures/REALIZED_G1.lgauss");
pub const TORUS6: &str = include_str!("../fixtures/TORUS6.lgauss");

/// Arrow virtualized in [`D1`] to get [`D2`] and [`D3`].
pub const D1_ARROW: usize = 1;
/// Arrow virtualized in [`D1_FR`] to get [`D2_FR`] and [`D3_FR`].
pub const D1_FR_ARROW: usize = 2;
/// Parameters `(i, j, k)` of the [`FT2`] file.
pub const FT2_INDICES: (u64, u64, u64) = (1, 0, 2);
/// Stack height `i` of the [`FT1`] file.
pub const FT1_HEIGHT: usize = 3;

/// Named Gauss-code fixtures without singular arrows.
pub const NAMED: [(&str, &str); 12] = [
    ("VT", VT),
    ("K_LOOP", K_LOOP),
    ("K_PRIME", K_PRIME),
    ("O2", O2),
    ("D1", D1),
    ("D2", D2),
    ("D3", D3),
    ("D1_FR", D1_FR),
    ("D2_FR", D2_FR),
    ("D3_FR", D3_FR),
    ("SEC43", SEC43),
    ("FIG8", FIG8),
];

/// Parses the first non-comment line of a fixture file.
pub fn load(text: &str) -> GaussDiagram {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("")
        .parse()
        .expect("fixture parses")
}

pub fn load_labeled(text: &str) -> LabeledSurfaceDiagram {
    LabeledSurfaceDiagram::parse(text).expect("fixture parses")
}

/// Every non-singular fixture, parsed, in the order of [`NAMED`] followed by
/// the classical trefoil.
pub fn all_nonsingular() -> Vec<(&'static str, GaussDiagram)> {
    NAMED
        .iter()
        .map(|&(name, text)| (name, load(text)))
        .chain(std::iter::once(("TREFOIL", load(TREFOIL))))
        .collect()
}

/// The knot `O(n)`: two single arrows and two stacks of height `n`, with
/// crossing weights `(n, 0, -2, 1)`.
pub fn o_n(n: usize) -> GaussDiagram {
    stack(&"O1+O2+O3+U4+U2+O4+U1+U3+".parse().expect("valid code"), &[1, 1, n, n])
}

/// The base of [`K_PRIME`] before its first three arrows are tripled.
pub fn k_prime_base() -> GaussDiagram {
    "O1+O2+O3+O4+U1+U2+U4+O5+U3+U5+".parse().expect("valid code")
}

/// One singular arrow crossing a stack of `i` parallel arrows, plus a kink.
/// The derivative of Φ^fr is `A_{-i,i}`.
pub fn ft1(i: usize) -> GaussDiagram {
    stack(&"O1+*O2+U1+*U2+O3+U3+".parse().expect("valid code"), &[1, i, 1])
}

/// Two disjoint singular arrows in parallel position with positive stacks
/// of `i`, `j` and `k` arrows joining their left-middle, middle-right and
/// left-right regions. The derivative of φ_{i,j,k} is 1.
pub fn ft2(i: usize, j: usize, k: usize) -> GaussDiagram {
    let mut label = 2;
    let mut bundle = |m: usize| {
        let v: Vec<usize> = (label + 1..=label + m).collect();
        label += m;
        v
    };
    let (lm, mr, lr) = (bundle(i), bundle(j), bundle(k));
    let tok = |end, label, singular| Token {
        end,
        label,
        sign: Sign::Pos,
        singular,
    };
    let mut t = vec![tok(End::Tail, 1, true)];
    t.extend(mr.iter().rev().chain(lr.iter().rev()).map(|&x| tok(End::Head, x, false)));
    t.push(tok(End::Head, 1, true));
    t.extend(lm.iter().rev().map(|&x| tok(End::Head, x, false)));
    t.extend(mr.iter().map(|&x| tok(End::Tail, x, false)));
    t.push(tok(End::Head, 2, true));
    t.extend(lm.iter().chain(&lr).map(|&x| tok(End::Tail, x, false)));
    t.push(tok(End::Tail, 2, true));
    GaussDiagram::from_tokens(&t).expect("each label used twice")
}
