//! A slow, test-side reimplementation used as an oracle. It works on raw
//! token lists and traces smoothed components by walking the circle, sharing
//! no code with the library beyond the parser.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use gaussloop::gauss::End;
use gaussloop::GaussDiagram;

#[derive(Clone, Copy, Debug)]
pub struct Chord {
    pub tail: usize,
    pub head: usize,
    pub sign: i64,
}

pub fn chords(d: &GaussDiagram) -> Vec<Chord> {
    let mut out: BTreeMap<usize, Chord> = BTreeMap::new();
    for (pos, t) in d.tokens().iter().enumerate() {
        let c = out.entry(t.label).or_insert(Chord { tail: 0, head: 0, sign: t.sign.value() });
        match t.end {
            End::Tail => c.tail = pos,
            End::Head => c.head = pos,
        }
    }
    out.into_values().collect()
}

fn inside(lo: usize, hi: usize, x: usize) -> bool {
    lo < x && x < hi
}

pub fn crosses(a: &Chord, b: &Chord) -> bool {
    let (lo, hi) = (a.tail.min(a.head), a.tail.max(a.head));
    inside(lo, hi, b.tail) != inside(lo, hi, b.head)
}

/// Weight of chord `c`: +sign for each crossing chord whose tail sits on the
/// stretch travelled from the tail of `c` forward to its head.
pub fn weight(ch: &[Chord], c: usize) -> i64 {
    let a = ch[c];
    let len = 2 * ch.len();
    let forward = |x: usize| (x + len - a.tail) % len < (a.head + len - a.tail) % len;
    ch.iter()
        .enumerate()
        .filter(|&(i, b)| i != c && crosses(&a, b))
        .map(|(_, b)| if forward(b.tail) { b.sign } else { -b.sign })
        .sum()
}

pub fn weights(d: &GaussDiagram) -> Vec<i64> {
    let ch = chords(d);
    (0..ch.len()).map(|c| weight(&ch, c)).collect()
}

/// Component id of every arc (arc k leaves position k) after smoothing p, q.
fn trace(ch: &[Chord], p: usize, q: usize) -> Vec<usize> {
    let len = 2 * ch.len();
    let partner = |x: usize| -> Option<usize> {
        for &c in &[p, q] {
            if ch[c].tail == x {
                return Some(ch[c].head);
            }
            if ch[c].head == x {
                return Some(ch[c].tail);
            }
        }
        None
    };
    let mut comp = vec![usize::MAX; len];
    let mut next_id = 0;
    for start in 0..len {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut arc = start;
        while comp[arc] == usize::MAX {
            comp[arc] = next_id;
            let pos = (arc + 1) % len;
            arc = partner(pos).unwrap_or(pos);
        }
        next_id += 1;
    }
    comp
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Shape {
    Parallel,
    Inward,
    Outward,
}

/// Shape and `[LM, MR, LR]` for a disjoint pair.
pub fn classify(ch: &[Chord], p: usize, q: usize) -> (Shape, [u64; 3]) {
    let comp = trace(ch, p, q);
    let len = comp.len();
    // The outer component of a chord is reached right after one of its ends
    // and touches no end of the other chord.
    let touches = |c: usize, k: usize| {
        let x = &ch[k];
        comp[x.tail] == c || comp[x.head] == c || comp[(x.tail + len - 1) % len] == c || comp[(x.head + len - 1) % len] == c
    };
    let outer = |k: usize, other: usize| -> (usize, End) {
        let x = &ch[k];
        for (pos, end) in [(x.tail, End::Tail), (x.head, End::Head)] {
            let c = comp[pos];
            if !touches(c, other) {
                return (c, end);
            }
        }
        unreachable!("a disjoint chord bounds an outer component")
    };
    let (cp, ep) = outer(p, q);
    let (cq, eq) = outer(q, p);
    let (shape, left) = match (ep, eq) {
        (End::Tail, End::Tail) => (Shape::Inward, p.min(q)),
        (End::Head, End::Head) => (Shape::Outward, p.min(q)),
        (End::Head, End::Tail) => (Shape::Parallel, p),
        (End::Tail, End::Head) => (Shape::Parallel, q),
    };
    let (l, r) = if left == p { (cp, cq) } else { (cq, cp) };
    let region = |c: usize| if c == l { 0 } else if c == r { 2 } else { 1 };
    let mut sums = [[0i64; 3]; 3];
    for (i, x) in ch.iter().enumerate() {
        if i == p || i == q {
            continue;
        }
        let (a, b) = (region(comp[x.tail]), region(comp[x.head]));
        if a < b {
            sums[a][b] += x.sign;
        } else if b < a {
            sums[b][a] -= x.sign;
        }
    }
    let labels = [sums[0][1].unsigned_abs(), sums[1][2].unsigned_abs(), sums[0][2].unsigned_abs()];
    (shape, labels)
}

pub fn disjoint_pairs(ch: &[Chord]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for p in 0..ch.len() {
        for q in p + 1..ch.len() {
            if !crosses(&ch[p], &ch[q]) {
                out.push((p, q));
            }
        }
    }
    out
}

/// φ_{ijk} by matching each pair against the three configurations of F_{ijk}.
pub fn phi_ijk(d: &GaussDiagram, i: u64, j: u64, k: u64) -> i64 {
    let ch = chords(d);
    let same2 = |a: [u64; 3], x: u64, y: u64, z: u64| a[2] == z && ((a[0], a[1]) == (x, y) || (a[0], a[1]) == (y, x));
    disjoint_pairs(&ch)
        .into_iter()
        .filter(|&(p, q)| {
            let (shape, a) = classify(&ch, p, q);
            match shape {
                Shape::Parallel => a == [i, j, k],
                Shape::Inward => same2(a, i, k, j),
                Shape::Outward => same2(a, j, k, i),
            }
        })
        .map(|(p, q)| ch[p].sign * ch[q].sign)
        .sum()
}

/// Φ^fr as the set of coordinates with an odd number of covering intervals.
pub fn phi_fr(d: &GaussDiagram) -> BTreeSet<i64> {
    let ch = chords(d);
    let w: Vec<i64> = (0..ch.len()).map(|c| weight(&ch, c)).collect();
    let mut odd = BTreeSet::new();
    for (p, q) in disjoint_pairs(&ch) {
        for x in w[p].min(w[q])..w[p].max(w[q]) {
            if !odd.remove(&x) {
                odd.insert(x);
            }
        }
    }
    odd
}
