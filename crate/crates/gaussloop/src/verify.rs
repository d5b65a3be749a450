//! Invariance certification along seeded random walks. A violation comes
//! back as a transcript that [`replay`] turns into the offending diagrams.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::TermRecord;
use crate::error::{Error, Result};
use crate::gauss::GaussDiagram;
use crate::group_a::AElement;
use crate::invariants::{functional_phi_hat, phi_fr, phi_general, phi_ijk, writhe_correction};
use crate::reidemeister::{apply_move, Move, MoveKind, WalkOptions, Walker};
use crate::weights::weights;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Invariant {
    Phi(u64, u64, u64),
    PhiGeneral,
    PhiFr,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::Phi(i, j, k) => write!(f, "phi:{i},{j},{k}"),
            Invariant::PhiGeneral => write!(f, "phigen"),
            Invariant::PhiFr => write!(f, "phifr"),
        }
    }
}

impl FromStr for Invariant {
    type Err = Error;

    /// `phi:i,j,k`, `phigen` or `phifr`.
    fn from_str(s: &str) -> Result<Invariant> {
        let bad = || Error::Syntax {
            column: 1,
            message: format!("unknown invariant `{s}`"),
        };
        match s {
            "phigen" => return Ok(Invariant::PhiGeneral),
            "phifr" => return Ok(Invariant::PhiFr),
            _ => {}
        }
        let idx = s.strip_prefix("phi:").ok_or_else(bad)?;
        let v: Vec<u64> = idx
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match v[..] {
            [i, j, k] if i != j && j != k && i != k => Ok(Invariant::Phi(i, j, k)),
            [i, j, k] => Err(Error::IndicesNotDistinct(i, j, k)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Combination(Vec<TermRecord<u64>>),
    Group(AElement),
}

/// Evaluates several invariants, computing φ once and reading each
/// `φ_{i,j,k}` off it through its dual functional.
pub fn evaluate_all(invs: &[Invariant], d: &GaussDiagram) -> Result<Vec<Value>> {
    let mut general = None;
    invs.iter()
        .map(|&inv| match inv {
            Invariant::PhiFr => evaluate(inv, d),
            Invariant::Phi(..) | Invariant::PhiGeneral => {
                if general.is_none() {
                    general = Some(phi_general(d)?);
                }
                let g = general.as_ref().expect("just computed");
                Ok(match inv {
                    Invariant::Phi(i, j, k) => Value::Int(functional_phi_hat(g, i, j, k)?),
                    _ => Value::Combination(g.records()),
                })
            }
        })
        .collect()
}

pub fn evaluate(inv: Invariant, d: &GaussDiagram) -> Result<Value> {
    Ok(match inv {
        Invariant::Phi(i, j, k) => Value::Int(phi_ijk(d, i, j, k)?),
        Invariant::PhiGeneral => Value::Combination(phi_general(d)?.records()),
        Invariant::PhiFr => Value::Group(phi_fr(d)?),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkPlan {
    pub steps: usize,
    pub seed: u64,
    pub frame_preserving: bool,
    /// Compare Φ^fr against its start value times `(Π A_{0,w})^{#R1}`
    /// instead of the plain start value.
    pub parity_aware: bool,
    /// Invariants are compared every this many steps and after the last one.
    pub check_every: usize,
}

impl WalkPlan {
    pub fn new(steps: usize, seed: u64) -> WalkPlan {
        WalkPlan {
            steps,
            seed,
            frame_preserving: false,
            parity_aware: false,
            check_every: 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WalkStats {
    pub steps: usize,
    pub r1: usize,
    pub r2: usize,
    pub r3: usize,
    pub max_arrows: usize,
}

/// Everything needed to reproduce a violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transcript {
    /// The invariant that changed, or `weights` when an arrow surviving a
    /// move changed weight.
    pub check: String,
    pub seed: u64,
    pub frame_preserving: bool,
    pub start: String,
    pub moves: Vec<Move>,
    pub expected: Value,
    pub found: Value,
    pub diagram: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub stats: WalkStats,
    pub violation: Option<Transcript>,
}

/// Walks `plan.steps` random moves from `d`, checking every invariant in
/// `invs` at checkpoints and the weights of surviving arrows at every step.
pub fn certify(d: &GaussDiagram, invs: &[Invariant], plan: &WalkPlan) -> Result<Outcome> {
    let start: Vec<Value> = invs.iter().map(|&i| evaluate(i, d)).collect::<Result<_>>()?;
    let kink_factor = writhe_correction(&AElement::identity(), d)?;
    let mut walker = Walker::new(plan.seed, WalkOptions::for_diagram(d, plan.frame_preserving));
    let mut stats = WalkStats {
        max_arrows: d.n(),
        ..WalkStats::default()
    };
    let mut moves = Vec::with_capacity(plan.steps);
    let mut cur = d.clone();
    let mut w_cur = weights(d)?;
    let violation = |check: String, moves: &[Move], expected: Value, found: Value, at: &GaussDiagram| {
        Some(Transcript {
            check,
            seed: plan.seed,
            frame_preserving: plan.frame_preserving,
            start: d.to_string(),
            moves: moves.to_vec(),
            expected,
            found,
            diagram: at.to_string(),
        })
    };
    for step in 1..=plan.steps {
        let (m, applied) = walker.step(&cur);
        moves.push(m);
        match m.kind() {
            MoveKind::R1Add | MoveKind::R1Remove => stats.r1 += 1,
            MoveKind::R2Add | MoveKind::R2Remove => stats.r2 += 1,
            MoveKind::R3 => stats.r3 += 1,
        }
        stats.steps = step;
        let w_new = weights(&applied.diagram)?;
        for (id, origin) in applied.origin.iter().enumerate() {
            if let Some(o) = *origin {
                if w_new[id] != w_cur[o] {
                    let v = violation(
                        "weights".into(),
                        &moves,
                        Value::Int(w_cur[o]),
                        Value::Int(w_new[id]),
                        &applied.diagram,
                    );
                    return Ok(Outcome { stats, violation: v });
                }
            }
        }
        cur = applied.diagram;
        w_cur = w_new;
        stats.max_arrows = stats.max_arrows.max(cur.n());
        if step % plan.check_every.max(1) != 0 && step != plan.steps {
            continue;
        }
        let values = evaluate_all(invs, &cur)?;
        for ((&inv, v0), found) in invs.iter().zip(&start).zip(values) {
            let mut expected = v0.clone();
            if let (Invariant::PhiFr, Value::Group(g), true) = (inv, v0, plan.parity_aware) {
                if stats.r1 % 2 == 1 {
                    expected = Value::Group(g.multiply(&kink_factor));
                }
            }
            if found != expected {
                let v = violation(inv.to_string(), &moves, expected, found, &cur);
                return Ok(Outcome { stats, violation: v });
            }
        }
    }
    Ok(Outcome { stats, violation: None })
}

/// The diagrams visited by applying `moves` to `start`, `start` included.
pub fn replay(start: &GaussDiagram, moves: &[Move]) -> Result<Vec<GaussDiagram>> {
    let mut out = vec![start.clone()];
    for m in moves {
        let next = apply_move(out.last().expect("nonempty"), m)?;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_invariants() {
        assert_eq!("phi:1,0,2".parse(), Ok(Invariant::Phi(1, 0, 2)));
        assert_eq!("phifr".parse(), Ok(Invariant::PhiFr));
        assert_eq!("phi:1,1,2".parse::<Invariant>(), Err(Error::IndicesNotDistinct(1, 1, 2)));
        assert!("phi:1,2".parse::<Invariant>().is_err());
        assert!("psi".parse::<Invariant>().is_err());
    }

    #[test]
    fn replay_reaches_the_reported_diagram() {
        let d: GaussDiagram = "O1+O2+U1+U2+".parse().unwrap();
        let plan = WalkPlan {
            check_every: 1,
            ..WalkPlan::new(40, 9)
        };
        // Plain Φ^fr is not an invariant once kinks are allowed.
        let out = certify(&d, &[Invariant::PhiFr], &plan).unwrap();
        let t = out.violation.expect("an odd number of kinks changes Φ^fr");
        let path = replay(&d, &t.moves).unwrap();
        assert_eq!(path.last().unwrap().to_string(), t.diagram);
        let parity = WalkPlan {
            parity_aware: true,
            ..plan
        };
        assert_eq!(certify(&d, &[Invariant::PhiFr], &parity).unwrap().violation, None);
    }
}
