//! Closed polygonal curves on the square torus, read off as labelled Gauss
//! diagrams. Arc labels count signed crossings of the grid lines, so the
//! labelling is one an actual curve has.

use rand::Rng;

use crate::error::Result;
use crate::gauss::{End, GaussDiagram, Sign, Token};
use crate::surface::{HomologyClass, LabeledSurfaceDiagram};

/// A closed curve given by a lift to the plane: vertices `points[0..m]`,
/// closed up by a final segment to `points[0] + shift`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusCurve {
    pub points: Vec<(f64, f64)>,
    pub shift: (i64, i64),
}

struct Piece {
    /// Curve parameter (segment index plus local parameter) at both ends.
    s0: f64,
    s1: f64,
    /// Endpoints translated into the unit square.
    a: (f64, f64),
    b: (f64, f64),
}

struct Crossing {
    s_over: f64,
    s_under: f64,
    sign: Sign,
}

impl TorusCurve {
    fn vertex(&self, i: usize) -> (f64, f64) {
        let m = self.points.len();
        let (x, y) = self.points[i % m];
        if i == m {
            (x + self.shift.0 as f64, y + self.shift.1 as f64)
        } else {
            (x, y)
        }
    }

    /// Lifted position at curve parameter `s ∈ [0, m]`.
    fn at(&self, s: f64) -> (f64, f64) {
        let m = self.points.len();
        let i = (s.floor() as usize).min(m - 1);
        let t = s - i as f64;
        let (p, q) = (self.vertex(i), self.vertex(i + 1));
        (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1))
    }

    fn pieces(&self) -> Vec<Piece> {
        let mut out = Vec::new();
        for i in 0..self.points.len() {
            let (p, q) = (self.vertex(i), self.vertex(i + 1));
            let mut ts = vec![0.0, 1.0];
            for (u, v) in [(p.0, q.0), (p.1, q.1)] {
                let (lo, hi) = (u.min(v), u.max(v));
                let mut k = lo.floor() + 1.0;
                while k < hi {
                    ts.push((k - u) / (v - u));
                    k += 1.0;
                }
            }
            ts.sort_by(f64::total_cmp);
            for w in ts.windows(2) {
                let (t0, t1) = (w[0], w[1]);
                let lerp = |t: f64| (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1));
                let mid = lerp((t0 + t1) / 2.0);
                let cell = (mid.0.floor(), mid.1.floor());
                let (a, b) = (lerp(t0), lerp(t1));
                out.push(Piece {
                    s0: i as f64 + t0,
                    s1: i as f64 + t1,
                    a: (a.0 - cell.0, a.1 - cell.1),
                    b: (b.0 - cell.0, b.1 - cell.1),
                });
            }
        }
        out
    }

    fn crossings<R: Rng>(&self, rng: &mut R) -> Vec<Crossing> {
        let pieces = self.pieces();
        let total = self.points.len() as f64;
        let mut out = Vec::new();
        for (i, p) in pieces.iter().enumerate() {
            for q in &pieces[i + 1..] {
                let touching = p.s1 == q.s0 || (q.s1 == total && p.s0 == 0.0);
                if touching {
                    continue;
                }
                let dp = (p.b.0 - p.a.0, p.b.1 - p.a.1);
                let dq = (q.b.0 - q.a.0, q.b.1 - q.a.1);
                let den = dp.0 * dq.1 - dp.1 * dq.0;
                if den == 0.0 {
                    continue;
                }
                let e = (q.a.0 - p.a.0, q.a.1 - p.a.1);
                let t = (e.0 * dq.1 - e.1 * dq.0) / den;
                let u = (e.0 * dp.1 - e.1 * dp.0) / den;
                if !(0.0..1.0).contains(&t) || !(0.0..1.0).contains(&u) {
                    continue;
                }
                let sp = p.s0 + t * (p.s1 - p.s0);
                let sq = q.s0 + u * (q.s1 - q.s0);
                let p_over: bool = rng.random();
                let (s_over, s_under, d_over, d_under) = if p_over { (sp, sq, dp, dq) } else { (sq, sp, dq, dp) };
                let cross = d_over.0 * d_under.1 - d_over.1 * d_under.0;
                out.push(Crossing {
                    s_over,
                    s_under,
                    sign: if cross > 0.0 { Sign::Pos } else { Sign::Neg },
                });
            }
        }
        out
    }

    /// The labelled Gauss diagram of the curve, with over/under information
    /// at each crossing drawn from `rng`. The basepoint is `points[0]`.
    pub fn diagram<R: Rng>(&self, rng: &mut R) -> Result<LabeledSurfaceDiagram> {
        let crossings = self.crossings(rng);
        let mut events: Vec<(f64, Token)> = Vec::with_capacity(2 * crossings.len());
        for (c, x) in crossings.iter().enumerate() {
            for (s, end) in [(x.s_over, End::Tail), (x.s_under, End::Head)] {
                let token = Token {
                    end,
                    label: c + 1,
                    sign: x.sign,
                    singular: false,
                };
                events.push((s, token));
            }
        }
        events.sort_by(|a, b| a.0.total_cmp(&b.0));
        let tokens: Vec<Token> = events.iter().map(|e| e.1).collect();
        let base = GaussDiagram::from_tokens(&tokens)?;
        let cell = |p: (f64, f64)| (p.0.floor() as i64, p.1.floor() as i64);
        let arcs = if events.is_empty() {
            vec![HomologyClass(vec![self.shift.0, self.shift.1])]
        } else {
            (0..events.len())
                .map(|k| {
                    let from = cell(self.at(events[k].0));
                    let to = if k + 1 < events.len() {
                        cell(self.at(events[k + 1].0))
                    } else {
                        let (x, y) = cell(self.at(events[0].0));
                        (x + self.shift.0, y + self.shift.1)
                    };
                    HomologyClass(vec![to.0 - from.0, to.1 - from.1])
                })
                .collect()
        };
        LabeledSurfaceDiagram::new(base, 1, arcs)
    }

    /// A random curve with `vertices` corners, steps of size below `reach`
    /// and a random total class with coordinates in `[-max_class, max_class]`.
    pub fn random<R: Rng>(rng: &mut R, vertices: usize, reach: f64, max_class: i64) -> TorusCurve {
        let mut points = Vec::with_capacity(vertices);
        let mut cur = (rng.random::<f64>(), rng.random::<f64>());
        for _ in 0..vertices {
            points.push(cur);
            cur = (
                cur.0 + rng.random_range(-reach..reach),
                cur.1 + rng.random_range(-reach..reach),
            );
        }
        let shift = (
            rng.random_range(-max_class..=max_class),
            rng.random_range(-max_class..=max_class),
        );
        TorusCurve { points, shift }
    }
}
