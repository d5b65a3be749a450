//! Reidemeister moves on Gauss diagrams, seeded random walks, and finite-type
//! derivatives over resolutions of singular arrows.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{End, GaussDiagram, Sign, Token};
use crate::group_a::AElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
}

/// A move together with the data locating it. Gaps are insertion points:
/// gap `g` sits just before endpoint position `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    /// Inserts an isolated arrow at `gap`.
    R1Add { gap: usize, tail_first: bool, sign: Sign },
    R1Remove { arrow: usize },
    /// Inserts two arrows of opposite signs (`sign` for the first), with one
    /// slot of adjacent endpoints at each gap, `gaps[0] <= gaps[1]`. The slot
    /// at `gaps[0]` holds the tails when `tails_first`. With `crossed` both
    /// slots list the arrows in the same order, so the new arrows intersect.
    R2Add {
        gaps: [usize; 2],
        tails_first: bool,
        crossed: bool,
        sign: Sign,
    },
    R2Remove { arrows: [usize; 2] },
    /// Swaps the two endpoints in each slot `(k, k+1)` of a triangle site.
    R3 { slots: [usize; 3] },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Add { .. } => MoveKind::R1Add,
            Move::R1Remove { .. } => MoveKind::R1Remove,
            Move::R2Add { .. } => MoveKind::R2Add,
            Move::R2Remove { .. } => MoveKind::R2Remove,
            Move::R3 { .. } => MoveKind::R3,
        }
    }

    pub fn is_r1(&self) -> bool {
        matches!(self.kind(), MoveKind::R1Add | MoveKind::R1Remove)
    }
}

/// A rewritten diagram with, for each of its arrows, the id of the arrow it
/// came from (`None` for inserted arrows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Applied {
    pub diagram: GaussDiagram,
    pub origin: Vec<Option<usize>>,
}

fn next(len: usize, k: usize) -> usize {
    (k + 1) % len
}

fn adjacent(len: usize, x: usize, y: usize) -> bool {
    next(len, x) == y || next(len, y) == x
}

fn r1_removable(d: &GaussDiagram, a: usize) -> bool {
    let x = &d.arrows()[a];
    adjacent(d.len(), x.tail, x.head)
}

fn r2_removable(d: &GaussDiagram, a: usize, b: usize) -> bool {
    let (x, y) = (&d.arrows()[a], &d.arrows()[b]);
    a != b && x.sign != y.sign && adjacent(d.len(), x.tail, y.tail) && adjacent(d.len(), x.head, y.head)
}

type SlotKey = [(u8, End, Sign); 6];

/// Canonical key of a triangle: minimum over slot orders, arrows relabelled
/// by first occurrence.
fn canonical_key(slots: &[[(usize, End); 2]; 3], signs: impl Fn(usize) -> Sign) -> SlotKey {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut best: Option<SlotKey> = None;
    for perm in PERMS {
        let mut seen: Vec<usize> = Vec::with_capacity(3);
        let mut key = [(0u8, End::Tail, Sign::Pos); 6];
        let mut i = 0;
        for &s in &perm {
            for &(a, end) in &slots[s] {
                let lab = match seen.iter().position(|&x| x == a) {
                    Some(p) => p,
                    None => {
                        seen.push(a);
                        seen.len() - 1
                    }
                };
                key[i] = (lab as u8, end, signs(a));
                i += 1;
            }
        }
        if best.is_none_or(|b| key < b) {
            best = Some(key);
        }
    }
    best.expect("six permutations")
}

/// Every local picture of a third Reidemeister move, read off three straight
/// strands in the plane: all orientations, all height orders, and the third
/// strand on either side of the crossing of the first two.
fn r3_table() -> &'static [SlotKey] {
    static TABLE: OnceLock<Vec<SlotKey>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut keys = Vec::new();
        const HEIGHTS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for orient in 0..8u32 {
            for hts in HEIGHTS {
                for side in [1.0f64, -1.0] {
                    let mut dir = [(0.0f64, 0.0f64); 3];
                    let mut base = [(0.0f64, 0.0f64); 3];
                    for (i, (d, b)) in dir.iter_mut().zip(base.iter_mut()).enumerate() {
                        let th = (60.0 * i as f64).to_radians();
                        let o = if orient >> i & 1 == 1 { -1.0 } else { 1.0 };
                        *d = (o * th.cos(), o * th.sin());
                        if i == 2 {
                            *b = (-side * th.sin(), side * th.cos());
                        }
                    }
                    // Slots hold (travel parameter, arrow, end) per strand.
                    let mut slots: [Vec<(f64, usize, End)>; 3] = Default::default();
                    let mut signs = [Sign::Pos; 3];
                    let pairs = [(0, 1), (0, 2), (1, 2)];
                    for (arrow, &(i, j)) in pairs.iter().enumerate() {
                        let (a11, a12) = (dir[i].0, -dir[j].0);
                        let (a21, a22) = (dir[i].1, -dir[j].1);
                        let (r1, r2) = (base[j].0 - base[i].0, base[j].1 - base[i].1);
                        let det = a11 * a22 - a12 * a21;
                        let t = (r1 * a22 - a12 * r2) / det;
                        let u = (a11 * r2 - a21 * r1) / det;
                        let (over, under) = if hts[i] > hts[j] { (i, j) } else { (j, i) };
                        let cross = dir[over].0 * dir[under].1 - dir[over].1 * dir[under].0;
                        signs[arrow] = if cross > 0.0 { Sign::Pos } else { Sign::Neg };
                        let end = |strand| if over == strand { End::Tail } else { End::Head };
                        slots[i].push((t, arrow, end(i)));
                        slots[j].push((u, arrow, end(j)));
                    }
                    let mut local = [[(0usize, End::Tail); 2]; 3];
                    for (s, l) in slots.iter_mut().zip(local.iter_mut()) {
                        s.sort_by(|x, y| x.0.total_cmp(&y.0));
                        *l = [(s[0].1, s[0].2), (s[1].1, s[1].2)];
                    }
                    keys.push(canonical_key(&local, |a| signs[a]));
                }
            }
        }
        keys.sort_unstable();
        keys.dedup();
        keys
    })
}

/// Number of distinct local R3 patterns known to the engine.
pub fn r3_pattern_count() -> usize {
    r3_table().len()
}

fn slot_of(d: &GaussDiagram, k: usize) -> [(usize, End); 2] {
    let (x, y) = (d.endpoint(k), d.endpoint(next(d.len(), k)));
    [(x.arrow, x.end), (y.arrow, y.end)]
}

fn other_end(d: &GaussDiagram, pos: usize) -> usize {
    let e = d.endpoint(pos);
    d.position(e.arrow, e.end.other())
}

fn r3_site_valid(d: &GaussDiagram, slots: [usize; 3]) -> bool {
    let len = d.len();
    if len < 6 || slots.iter().any(|&k| k >= len) {
        return false;
    }
    let mut positions = [0; 6];
    for (i, &k) in slots.iter().enumerate() {
        positions[2 * i] = k;
        positions[2 * i + 1] = next(len, k);
    }
    positions.sort_unstable();
    if positions.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let local = [slot_of(d, slots[0]), slot_of(d, slots[1]), slot_of(d, slots[2])];
    let mut pairs = [(0, 0); 3];
    for (s, p) in local.iter().zip(pairs.iter_mut()) {
        let (a, b) = (s[0].0, s[1].0);
        if a == b {
            return false;
        }
        *p = (a.min(b), a.max(b));
    }
    pairs.sort_unstable();
    if pairs[0] == pairs[1] || pairs[1] == pairs[2] {
        return false;
    }
    // Three distinct pairs drawn from the slot arrows cover exactly three
    // arrows only when they form a triangle.
    let mut arrows = [pairs[0].0, pairs[0].1, pairs[1].0, pairs[1].1, pairs[2].0, pairs[2].1];
    arrows.sort_unstable();
    let distinct = 1 + arrows.windows(2).filter(|w| w[0] != w[1]).count();
    distinct == 3
        && r3_table()
            .binary_search(&canonical_key(&local, |a| d.arrows()[a].sign))
            .is_ok()
}

/// All R3 sites of `d`, each as its three slot starts in increasing order.
pub fn r3_moves(d: &GaussDiagram) -> Vec<Move> {
    let len = d.len();
    if len < 6 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for k in 0..len {
        let k1 = next(len, k);
        if d.endpoint(k).arrow == d.endpoint(k1).arrow {
            continue;
        }
        let pa = other_end(d, k);
        let pb = other_end(d, k1);
        for s2 in [(pa + len - 1) % len, pa] {
            let c_pos = if s2 == pa { next(len, pa) } else { s2 };
            let c = d.endpoint(c_pos).arrow;
            if c == d.endpoint(k).arrow || c == d.endpoint(k1).arrow {
                continue;
            }
            let pc = other_end(d, c_pos);
            let s3 = if pc == next(len, pb) {
                pb
            } else if pb == next(len, pc) {
                pc
            } else {
                continue;
            };
            let mut slots = [k, s2, s3];
            slots.sort_unstable();
            let m = Move::R3 { slots };
            if !out.contains(&m) && r3_site_valid(d, slots) {
                out.push(m);
            }
        }
    }
    out
}

/// Removal moves present in `d`.
pub fn removal_moves(d: &GaussDiagram, allow_r1: bool) -> Vec<Move> {
    let mut out = Vec::new();
    let n = d.n();
    if allow_r1 {
        out.extend((0..n).filter(|&a| r1_removable(d, a)).map(|arrow| Move::R1Remove { arrow }));
    }
    for a in 0..n {
        let t = d.arrows()[a].tail;
        for p in [(t + 1) % d.len(), (t + d.len() - 1) % d.len()] {
            let b = d.endpoint(p).arrow;
            if a < b && d.endpoint(p).end == End::Tail && r2_removable(d, a, b) {
                let m = Move::R2Remove { arrows: [a, b] };
                if !out.contains(&m) {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// Every insertion at every gap: four R1 variants per gap and eight R2
/// templates per pair of gaps.
pub fn insertion_moves(d: &GaussDiagram, allow_r1: bool) -> Vec<Move> {
    let gaps = d.len() + 1;
    let mut out = Vec::new();
    if allow_r1 {
        for gap in 0..gaps {
            for tail_first in [true, false] {
                for sign in [Sign::Pos, Sign::Neg] {
                    out.push(Move::R1Add { gap, tail_first, sign });
                }
            }
        }
    }
    for g0 in 0..gaps {
        for g1 in g0..gaps {
            for tails_first in [true, false] {
                for crossed in [true, false] {
                    for sign in [Sign::Pos, Sign::Neg] {
                        out.push(Move::R2Add {
                            gaps: [g0, g1],
                            tails_first,
                            crossed,
                            sign,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Removals, R3 sites, and the full insertion families.
pub fn enumerate_moves(d: &GaussDiagram) -> Vec<Move> {
    let mut out = removal_moves(d, true);
    out.extend(r3_moves(d));
    out.extend(insertion_moves(d, true));
    out
}

pub fn apply_move(d: &GaussDiagram, m: &Move) -> Result<GaussDiagram> {
    Ok(apply_move_traced(d, m)?.diagram)
}

pub fn apply_move_traced(d: &GaussDiagram, m: &Move) -> Result<Applied> {
    let n = d.n();
    let mut t = d.tokens();
    let mismatch = |what: &str| Error::MoveMismatch(format!("{what}: {m:?}"));
    let token = |end: End, label: usize, sign: Sign| Token {
        end,
        label,
        sign,
        singular: false,
    };
    match *m {
        Move::R1Add { gap, tail_first, sign } => {
            if gap > t.len() {
                return Err(mismatch("gap out of range"));
            }
            let first = if tail_first { End::Tail } else { End::Head };
            t.splice(gap..gap, [token(first, n + 1, sign), token(first.other(), n + 1, sign)]);
        }
        Move::R1Remove { arrow } => {
            if arrow >= n || !r1_removable(d, arrow) {
                return Err(mismatch("no removable kink"));
            }
            t.retain(|x| x.label != arrow + 1);
        }
        Move::R2Add {
            gaps: [g0, g1],
            tails_first,
            crossed,
            sign,
        } => {
            if g0 > g1 || g1 > t.len() {
                return Err(mismatch("bad gaps"));
            }
            let (a, b) = (n + 1, n + 2);
            let e0 = if tails_first { End::Tail } else { End::Head };
            let e1 = e0.other();
            let (sa, sb) = (sign, sign.flip());
            let second = if crossed {
                [token(e1, a, sa), token(e1, b, sb)]
            } else {
                [token(e1, b, sb), token(e1, a, sa)]
            };
            t.splice(g1..g1, second);
            t.splice(g0..g0, [token(e0, a, sa), token(e0, b, sb)]);
        }
        Move::R2Remove { arrows: [a, b] } => {
            if a >= n || b >= n || !r2_removable(d, a, b) {
                return Err(mismatch("no removable bigon"));
            }
            t.retain(|x| x.label != a + 1 && x.label != b + 1);
        }
        Move::R3 { slots } => {
            if !r3_site_valid(d, slots) {
                return Err(mismatch("no R3 site"));
            }
            let len = t.len();
            for k in slots {
                t.swap(k, next(len, k));
            }
        }
    }
    let (diagram, labels) = GaussDiagram::from_tokens_traced(&t)?;
    let origin = labels.into_iter().map(|l| (l <= n).then(|| l - 1)).collect();
    Ok(Applied { diagram, origin })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkOptions {
    /// Excludes R1 moves.
    pub frame_preserving: bool,
    /// No insertions once the diagram has this many arrows.
    pub max_arrows: usize,
    /// Sampled insertions of each family offered per step.
    pub samples: usize,
}

impl WalkOptions {
    pub fn for_diagram(d: &GaussDiagram, frame_preserving: bool) -> WalkOptions {
        WalkOptions {
            frame_preserving,
            max_arrows: d.n() + 12,
            samples: 2,
        }
    }
}

/// A seeded generator of random moves.
///
/// Each step picks uniformly among all removals, all R3 sites and a few
/// sampled insertions. Half of the sampled R2 insertions land next to the
/// far endpoints of an existing slot, which is how R3 sites get created.
pub struct Walker {
    rng: ChaCha8Rng,
    opts: WalkOptions,
}

impl Walker {
    pub fn new(seed: u64, opts: WalkOptions) -> Walker {
        Walker {
            rng: ChaCha8Rng::seed_from_u64(seed),
            opts,
        }
    }

    fn sign(&mut self) -> Sign {
        if self.rng.random() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    fn r2_at(&mut self, g0: usize, g1: usize) -> Move {
        Move::R2Add {
            gaps: [g0.min(g1), g0.max(g1)],
            tails_first: self.rng.random(),
            crossed: self.rng.random(),
            sign: self.sign(),
        }
    }

    pub fn candidates(&mut self, d: &GaussDiagram) -> Vec<Move> {
        let allow_r1 = !self.opts.frame_preserving;
        let mut out = removal_moves(d, allow_r1);
        out.extend(r3_moves(d));
        if d.n() + 2 <= self.opts.max_arrows || out.is_empty() {
            let len = d.len();
            for _ in 0..self.opts.samples {
                if allow_r1 {
                    let m = Move::R1Add {
                        gap: self.rng.random_range(0..=len),
                        tail_first: self.rng.random(),
                        sign: self.sign(),
                    };
                    out.push(m);
                }
                let (g0, g1) = (self.rng.random_range(0..=len), self.rng.random_range(0..=len));
                let m = self.r2_at(g0, g1);
                out.push(m);
                if len >= 2 {
                    let k = self.rng.random_range(0..len);
                    let (pa, pb) = (other_end(d, k), other_end(d, next(len, k)));
                    let ga = pa + self.rng.random_range(0..2usize);
                    let gb = pb + self.rng.random_range(0..2usize);
                    let m = self.r2_at(ga, gb);
                    out.push(m);
                }
            }
        }
        out
    }

    /// Applies one random move.
    pub fn step(&mut self, d: &GaussDiagram) -> (Move, Applied) {
        let c = self.candidates(d);
        let m = c[self.rng.random_range(0..c.len())];
        let applied = apply_move_traced(d, &m).expect("candidate moves apply");
        (m, applied)
    }
}

/// Applies `steps` random moves; deterministic in `seed`.
pub fn random_walk(d: &GaussDiagram, steps: usize, seed: u64, frame_preserving: bool) -> GaussDiagram {
    let mut w = Walker::new(seed, WalkOptions::for_diagram(d, frame_preserving));
    let mut cur = d.clone();
    for _ in 0..steps {
        cur = w.step(&cur).1.diagram;
    }
    cur
}

fn resolutions(d: &GaussDiagram) -> Result<Vec<(bool, GaussDiagram)>> {
    let k = d.singular_arrows().len();
    if k == 0 {
        return Err(Error::NotSingular);
    }
    (0..1u64 << k)
        .map(|bits| {
            let sigma: Vec<bool> = (0..k).map(|i| bits >> i & 1 == 1).collect();
            let odd = bits.count_ones() % 2 == 1;
            Ok((odd, d.resolve(&sigma)?))
        })
        .collect()
}

/// `Σ_σ (-1)^{|σ|} v(K_σ)` over all resolutions of the singular arrows.
pub fn derivative_int(d: &GaussDiagram, v: impl Fn(&GaussDiagram) -> Result<i64>) -> Result<i64> {
    let mut total = 0;
    for (odd, r) in resolutions(d)? {
        let x = v(&r)?;
        total += if odd { -x } else { x };
    }
    Ok(total)
}

/// `Π_σ v(K_σ)`; signs are irrelevant since every element is an involution.
pub fn derivative_group(d: &GaussDiagram, v: impl Fn(&GaussDiagram) -> Result<AElement>) -> Result<AElement> {
    let mut acc = AElement::identity();
    for (_, r) in resolutions(d)? {
        acc.mul_assign(&v(&r)?);
    }
    Ok(acc)
}
