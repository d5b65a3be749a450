//! Signed Gauss diagrams: the circle of arrow endpoints, its text encoding,
//! and the structural operations (smoothing, connected sum, symmetries).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn of(v: i64) -> Sign {
        if v < 0 {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

/// Which end of an arrow sits at an endpoint. The tail is the over-strand
/// (`O` in a code), the head the under-strand (`U`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub fn other(self) -> End {
        match self {
            End::Tail => End::Head,
            End::Head => End::Tail,
        }
    }
}

/// One occurrence in a signed Gauss code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    pub end: End,
    pub label: usize,
    pub sign: Sign,
    pub singular: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    pub sign: Sign,
    pub singular: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub arrow: usize,
    pub end: End,
}

/// A Gauss diagram with a basepoint. Arrow ids are `0..n`, numbered by first
/// occurrence counterclockwise from the basepoint; codes print them 1-based.
///
/// Singular arrows always store their positive resolution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    ends: Vec<Endpoint>,
    arrows: Vec<Arrow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Inverse,
    Mirror,
    Switch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Virtualization {
    Way,
    Sign,
}

/// The three rotation classes of two disjoint directed chords.
///
/// Each chord has an outer arc, the arc of the circle between its endpoints
/// that avoids the other chord. `Inward` means both tails start their outer
/// arc (counterclockwise), `Outward` means both heads do, and `Parallel`
/// means exactly one does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairShape {
    Parallel,
    Inward,
    Outward,
}

impl PairShape {
    pub fn name(self) -> &'static str {
        match self {
            PairShape::Parallel => "parallel",
            PairShape::Inward => "inward",
            PairShape::Outward => "outward",
        }
    }
}

/// The components left after smoothing two disjoint arrows: the outer region
/// of the left chord, the middle, and the outer region of the right chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Region {
    Left,
    Middle,
    Right,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::Left, Region::Middle, Region::Right];

    pub fn index(self) -> usize {
        match self {
            Region::Left => 0,
            Region::Middle => 1,
            Region::Right => 2,
        }
    }
}

/// Result of the oriented smoothing of a disjoint pair.
///
/// For `Parallel` pairs the left chord is the one whose head starts its outer
/// arc. For the two symmetric shapes it is the smaller arrow id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smoothing {
    pub shape: PairShape,
    pub left: usize,
    pub right: usize,
    len: usize,
    left_arc: (usize, usize),
    right_arc: (usize, usize),
    regions: Vec<Option<Region>>,
}

impl Smoothing {
    /// Region of an endpoint position; `None` for the smoothed endpoints.
    pub fn region_at(&self, position: usize) -> Option<Region> {
        self.regions[position]
    }

    /// Region containing arc `k`, the piece of circle from position `k` to `k + 1`.
    pub fn arc_region(&self, k: usize) -> Region {
        let inside = |(s, e): (usize, usize)| {
            (k + self.len - s) % self.len < (e + self.len - s) % self.len
        };
        if inside(self.left_arc) {
            Region::Left
        } else if inside(self.right_arc) {
            Region::Right
        } else {
            Region::Middle
        }
    }

    /// Endpoint positions of the remaining arrows, split as `[A1, A2, A3]`
    /// with `A2` the middle component.
    pub fn components(&self) -> [Vec<usize>; 3] {
        let mut out: [Vec<usize>; 3] = Default::default();
        for (pos, r) in self.regions.iter().enumerate() {
            if let Some(r) = r {
                out[r.index()].push(pos);
            }
        }
        out
    }

    /// For every remaining arrow, the regions of its tail and head.
    pub fn crossing_arcs(&self, d: &GaussDiagram) -> BTreeMap<usize, (Region, Region)> {
        d.arrows
            .iter()
            .enumerate()
            .filter(|&(id, _)| id != self.left && id != self.right)
            .map(|(id, a)| {
                let t = self.regions[a.tail].expect("remaining endpoint");
                let h = self.regions[a.head].expect("remaining endpoint");
                (id, (t, h))
            })
            .collect()
    }
}

impl GaussDiagram {
    pub fn empty() -> GaussDiagram {
        GaussDiagram {
            ends: Vec::new(),
            arrows: Vec::new(),
        }
    }

    /// Builds a diagram from tokens in counterclockwise order, renumbering
    /// arrows by first occurrence. Singular arrows given with a negative sign
    /// are replaced by their positive resolution.
    pub fn from_tokens(tokens: &[Token]) -> Result<GaussDiagram> {
        Ok(GaussDiagram::from_tokens_traced(tokens)?.0)
    }

    /// [`GaussDiagram::from_tokens`], also returning the input label of every
    /// arrow id.
    pub fn from_tokens_traced(tokens: &[Token]) -> Result<(GaussDiagram, Vec<usize>)> {
        let max_label = tokens.iter().map(|t| t.label).max().unwrap_or(0);
        // First and second occurrence of each label, and the id given to it.
        let mut occ: Vec<[Option<usize>; 2]> = vec![[None; 2]; max_label + 1];
        for (pos, t) in tokens.iter().enumerate() {
            let o = &mut occ[t.label];
            match o {
                [None, _] => o[0] = Some(pos),
                [Some(_), None] => o[1] = Some(pos),
                _ => {
                    let count = tokens.iter().filter(|x| x.label == t.label).count();
                    return Err(Error::LabelCount { label: t.label, count });
                }
            }
        }
        for (label, o) in occ.iter().enumerate() {
            let (a, b) = match *o {
                [None, _] => continue,
                [Some(_), None] => return Err(Error::LabelCount { label, count: 1 }),
                [Some(x), Some(y)] => (tokens[x], tokens[y]),
            };
            if a.end == b.end {
                return Err(Error::RoleMismatch { label });
            }
            if a.sign != b.sign {
                return Err(Error::SignMismatch { label });
            }
            if a.singular != b.singular {
                return Err(Error::MarkerMismatch { label });
            }
        }
        let mut ids: Vec<Option<usize>> = vec![None; max_label + 1];
        let mut labels = Vec::with_capacity(tokens.len() / 2);
        let mut ends = Vec::with_capacity(tokens.len());
        let mut arrows: Vec<Arrow> = Vec::with_capacity(tokens.len() / 2);
        for (pos, t) in tokens.iter().enumerate() {
            let id = *ids[t.label].get_or_insert(arrows.len());
            if id == arrows.len() {
                labels.push(t.label);
                arrows.push(Arrow {
                    tail: 0,
                    head: 0,
                    sign: t.sign,
                    singular: t.singular,
                });
            }
            match t.end {
                End::Tail => arrows[id].tail = pos,
                End::Head => arrows[id].head = pos,
            }
            ends.push(Endpoint { arrow: id, end: t.end });
        }
        for a in arrows.iter_mut() {
            if a.singular && a.sign == Sign::Neg {
                *a = a.crossing_changed();
                ends[a.tail].end = End::Tail;
                ends[a.head].end = End::Head;
            }
        }
        Ok((GaussDiagram { ends, arrows }, labels))
    }

    /// Tokens in basepoint order, labelled `id + 1`.
    pub fn tokens(&self) -> Vec<Token> {
        self.ends
            .iter()
            .map(|e| {
                let a = &self.arrows[e.arrow];
                Token {
                    end: e.end,
                    label: e.arrow + 1,
                    sign: a.sign,
                    singular: a.singular,
                }
            })
            .collect()
    }

    /// Number of arrows.
    pub fn n(&self) -> usize {
        self.arrows.len()
    }

    /// Number of endpoints, `2n`.
    pub fn len(&self) -> usize {
        self.ends.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ends.is_empty()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn endpoints(&self) -> &[Endpoint] {
        &self.ends
    }

    pub fn arrow(&self, id: usize) -> Result<&Arrow> {
        self.arrows.get(id).ok_or(Error::InvalidArrow(id))
    }

    pub fn endpoint(&self, position: usize) -> Endpoint {
        self.ends[position]
    }

    pub fn position(&self, id: usize, end: End) -> usize {
        match end {
            End::Tail => self.arrows[id].tail,
            End::Head => self.arrows[id].head,
        }
    }

    pub fn has_singular(&self) -> bool {
        self.arrows.iter().any(|a| a.singular)
    }

    /// Singular arrow ids in basepoint order.
    pub fn singular_arrows(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.arrows[i].singular).collect()
    }

    pub(crate) fn require_nonsingular(&self) -> Result<()> {
        if self.has_singular() {
            Err(Error::Singular)
        } else {
            Ok(())
        }
    }

    /// True iff `x` lies strictly inside the counterclockwise arc from `from` to `to`.
    pub fn between(&self, from: usize, to: usize, x: usize) -> bool {
        let len = self.len();
        let dx = (x + len - from) % len;
        dx > 0 && dx < (to + len - from) % len
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        self.arrow(a)?;
        self.arrow(b)?;
        if a == b {
            return Err(Error::SameArrow(a));
        }
        Ok(())
    }

    pub(crate) fn intersect_unchecked(&self, a: usize, b: usize) -> bool {
        let (x, y) = (&self.arrows[a], &self.arrows[b]);
        self.between(x.tail, x.head, y.tail) != self.between(x.tail, x.head, y.head)
    }

    pub fn arrows_intersect(&self, a: usize, b: usize) -> Result<bool> {
        self.check_pair(a, b)?;
        Ok(self.intersect_unchecked(a, b))
    }

    /// All unordered pairs of non-intersecting arrows, as `(p, q)` with `p < q`.
    pub fn parallel_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                if !self.intersect_unchecked(p, q) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Outer arc of `a` relative to the disjoint arrow `b`, as (start, end)
    /// positions in counterclockwise order.
    fn outer_arc(&self, a: usize, b: usize) -> (usize, usize) {
        let (x, y) = (&self.arrows[a], &self.arrows[b]);
        if self.between(x.tail, x.head, y.tail) {
            (x.head, x.tail)
        } else {
            (x.tail, x.head)
        }
    }

    pub fn smooth_pair(&self, p: usize, q: usize) -> Result<Smoothing> {
        self.check_pair(p, q)?;
        if self.intersect_unchecked(p, q) {
            return Err(Error::Intersecting(p, q));
        }
        let (arc_p, arc_q) = (self.outer_arc(p, q), self.outer_arc(q, p));
        let tail_first_p = arc_p.0 == self.arrows[p].tail;
        let tail_first_q = arc_q.0 == self.arrows[q].tail;
        let (shape, left, right) = match (tail_first_p, tail_first_q) {
            (true, true) => (PairShape::Inward, p.min(q), p.max(q)),
            (false, false) => (PairShape::Outward, p.min(q), p.max(q)),
            (false, true) => (PairShape::Parallel, p, q),
            (true, false) => (PairShape::Parallel, q, p),
        };
        let arc_of = |id: usize| if id == p { arc_p } else { arc_q };
        let (left_arc, right_arc) = (arc_of(left), arc_of(right));
        let smoothed = |pos: usize| {
            let e = self.ends[pos].arrow;
            e == p || e == q
        };
        let regions = (0..self.len())
            .map(|pos| {
                if smoothed(pos) {
                    None
                } else if self.between(left_arc.0, left_arc.1, pos) {
                    Some(Region::Left)
                } else if self.between(right_arc.0, right_arc.1, pos) {
                    Some(Region::Right)
                } else {
                    Some(Region::Middle)
                }
            })
            .collect();
        Ok(Smoothing {
            shape,
            left,
            right,
            len: self.len(),
            left_arc,
            right_arc,
            regions,
        })
    }

    pub fn writhe(&self) -> Result<i64> {
        self.require_nonsingular()?;
        Ok(self.arrows.iter().map(|a| a.sign.value()).sum())
    }

    /// The diagram with its basepoint moved forward by `k` positions.
    pub fn rotated(&self, k: usize) -> GaussDiagram {
        if self.is_empty() {
            return self.clone();
        }
        let mut t = self.tokens();
        t.rotate_left(k % self.len());
        GaussDiagram::from_tokens(&t).expect("rotation keeps a valid code")
    }

    /// Token stream of the lexicographically least rotation.
    pub fn canonical_tokens(&self) -> Vec<Token> {
        (0..self.len().max(1))
            .map(|k| self.rotated(k).tokens())
            .min()
            .unwrap_or_default()
    }

    pub fn canonical_code(&self) -> String {
        write_code(&self.canonical_tokens())
    }

    pub fn canonical_equal(&self, other: &GaussDiagram) -> bool {
        self.n() == other.n() && self.canonical_tokens() == other.canonical_tokens()
    }

    /// Splices `other` into `self`: the circle of `self` is cut at gap `b1`
    /// and the circle of `other`, cut at gap `b2`, is inserted there.
    pub fn connect_sum(&self, b1: usize, other: &GaussDiagram, b2: usize) -> Result<GaussDiagram> {
        if b1 > self.len() {
            return Err(Error::Position { position: b1, max: self.len() });
        }
        if b2 > other.len() {
            return Err(Error::Position { position: b2, max: other.len() });
        }
        let t1 = self.tokens();
        let mut t2 = other.tokens();
        if !t2.is_empty() {
            let k = b2 % t2.len();
            t2.rotate_left(k);
        }
        let shift = self.n();
        let mut out = Vec::with_capacity(t1.len() + t2.len());
        out.extend_from_slice(&t1[..b1]);
        out.extend(t2.into_iter().map(|t| Token { label: t.label + shift, ..t }));
        out.extend_from_slice(&t1[b1..]);
        GaussDiagram::from_tokens(&out)
    }

    pub fn apply_symmetry(&self, mode: Symmetry) -> GaussDiagram {
        let mut t = self.tokens();
        match mode {
            Symmetry::Inverse => t.reverse(),
            Symmetry::Mirror => t.iter_mut().for_each(|x| x.sign = x.sign.flip()),
            Symmetry::Switch => t.iter_mut().for_each(|x| {
                x.sign = x.sign.flip();
                x.end = x.end.other();
            }),
        }
        GaussDiagram::from_tokens(&t).expect("symmetry keeps a valid code")
    }

    pub fn virtualize(&self, a: usize, kind: Virtualization) -> Result<GaussDiagram> {
        self.arrow(a)?;
        let mut t = self.tokens();
        for x in t.iter_mut().filter(|x| x.label == a + 1) {
            match kind {
                Virtualization::Way => x.end = x.end.other(),
                Virtualization::Sign => x.sign = x.sign.flip(),
            }
        }
        GaussDiagram::from_tokens(&t)
    }

    /// Marks arrows singular. Negative arrows are crossing-changed first so
    /// the stored arrow is the positive resolution.
    pub fn make_singular(&self, ids: &[usize]) -> Result<GaussDiagram> {
        let mut t = self.tokens();
        for &id in ids {
            self.arrow(id)?;
            for x in t.iter_mut().filter(|x| x.label == id + 1) {
                x.singular = true;
            }
        }
        GaussDiagram::from_tokens(&t)
    }

    /// Resolves every singular arrow: bit 0 keeps the stored positive arrow,
    /// bit 1 changes the crossing (direction reversed, sign negated).
    pub fn resolve(&self, sigma: &[bool]) -> Result<GaussDiagram> {
        let singular = self.singular_arrows();
        if sigma.len() != singular.len() {
            return Err(Error::ResolutionLength {
                got: sigma.len(),
                expected: singular.len(),
            });
        }
        let mut t = self.tokens();
        for (&id, &bit) in singular.iter().zip(sigma) {
            for x in t.iter_mut().filter(|x| x.label == id + 1) {
                x.singular = false;
                if bit {
                    x.end = x.end.other();
                    x.sign = x.sign.flip();
                }
            }
        }
        GaussDiagram::from_tokens(&t)
    }
}

impl Arrow {
    fn crossing_changed(self) -> Arrow {
        Arrow {
            tail: self.head,
            head: self.tail,
            sign: self.sign.flip(),
            singular: self.singular,
        }
    }
}

fn write_code(tokens: &[Token]) -> String {
    let mut s = String::with_capacity(tokens.len() * 4);
    for t in tokens {
        s.push(match t.end {
            End::Tail => 'O',
            End::Head => 'U',
        });
        s.push_str(&t.label.to_string());
        s.push(t.sign.symbol());
        if t.singular {
            s.push('*');
        }
    }
    s
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_code(&self.tokens()))
    }
}

/// Parses a signed Gauss code such as `O1+O2+U1+U2+`. Commas and whitespace
/// between tokens are ignored.
pub fn parse_gauss_code(text: &str) -> Result<GaussDiagram> {
    let chars: Vec<char> = text.chars().collect();
    let syntax = |i: usize, message: &str| Error::Syntax {
        column: i + 1,
        message: message.to_string(),
    };
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == ',' {
            i += 1;
            continue;
        }
        let end = match c {
            'O' => End::Tail,
            'U' => End::Head,
            _ => return Err(syntax(i, "expected O or U")),
        };
        i += 1;
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        if start == i || chars[start] == '0' {
            return Err(syntax(start, "expected a positive label"));
        }
        let digits: String = chars[start..i].iter().collect();
        let label = digits
            .parse::<usize>()
            .map_err(|_| syntax(start, "label too large"))?;
        let sign = match chars.get(i) {
            Some('+') => Sign::Pos,
            Some('-') => Sign::Neg,
            _ => return Err(syntax(i, "expected + or -")),
        };
        i += 1;
        let singular = chars.get(i) == Some(&'*');
        if singular {
            i += 1;
        }
        tokens.push(Token {
            end,
            label,
            sign,
            singular,
        });
    }
    GaussDiagram::from_tokens(&tokens)
}

impl FromStr for GaussDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<GaussDiagram> {
        parse_gauss_code(s)
    }
}
