use gaussloop::fixtures::{self, all_nonsingular, load_labeled};
use gaussloop::surface::{commuting_check, labeled_random_walk, phi_sigma, HomologyClass, LabeledSurfaceDiagram};
use gaussloop::torus::TorusCurve;
use gaussloop::verify::{certify, replay, Invariant, WalkPlan};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const INVS: [Invariant; 4] = [
    Invariant::Phi(1, 0, 2),
    Invariant::Phi(2, 0, 1),
    Invariant::PhiGeneral,
    Invariant::PhiFr,
];

#[test]
fn short_walks_keep_invariants() {
    for (name, d) in all_nonsingular() {
        for seed in 0..10 {
            for frame_preserving in [false, true] {
                let plan = WalkPlan {
                    frame_preserving,
                    parity_aware: !frame_preserving,
                    check_every: 5,
                    ..WalkPlan::new(60, seed)
                };
                let out = certify(&d, &INVS, &plan).unwrap();
                assert!(out.violation.is_none(), "{name} seed {seed}: {:?}", out.violation);
                if frame_preserving {
                    assert_eq!(out.stats.r1, 0);
                }
            }
        }
    }
}

#[test]
fn kink_count_shows_up_in_phi_fr() {
    let d = fixtures::load(fixtures::SEC43);
    let plan = WalkPlan::new(50, 4);
    let out = certify(&d, &[Invariant::PhiFr], &plan).unwrap();
    let t = out.violation.expect("plain Φ^fr changes after an odd number of kinks");
    let path = replay(&d, &t.moves).unwrap();
    let r1 = t.moves.iter().filter(|m| m.is_r1()).count();
    assert_eq!(r1 % 2, 1);
    assert_eq!(path.last().unwrap().to_string(), t.diagram);
}

#[test]
fn labeled_walks_keep_phi_sigma() {
    for text in [fixtures::REALIZED_G1, fixtures::TORUS6] {
        let d = load_labeled(text);
        let start = phi_sigma(&d);
        for seed in 0..20 {
            for frame_preserving in [false, true] {
                let (e, moves) = labeled_random_walk(&d, 80, seed, frame_preserving);
                assert_eq!(phi_sigma(&e), start, "seed {seed}: {moves:?}");
                assert_eq!(e.total_class(), d.total_class());
            }
        }
    }
}

fn perturb(d: &LabeledSurfaceDiagram, k: usize, by: &HomologyClass) -> LabeledSurfaceDiagram {
    let n = d.arcs().len();
    let next = (k + 1) % n;
    let moved = d.with_arc(k, d.arcs()[k].add(by)).unwrap();
    moved.with_arc(next, moved.arcs()[next].sub(by)).unwrap()
}

#[test]
fn realized_torus_curves_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut nontrivial, mut caught) = (0, 0);
    for _ in 0..300 {
        let vertices = rng.random_range(2..6);
        let curve = TorusCurve::random(&mut rng, vertices, 1.6, 2);
        let d = curve.diagram(&mut rng).unwrap();
        let report = commuting_check(&d).unwrap();
        assert!(report.commutes, "{d}");
        if report.lhs.is_zero() || d.arcs().len() < 2 {
            continue;
        }
        nontrivial += 1;
        let k = rng.random_range(0..d.arcs().len());
        let bad = perturb(&d, k, &HomologyClass(vec![1, 1]));
        if !commuting_check(&bad).unwrap().commutes {
            caught += 1;
        }
    }
    assert!(nontrivial > 20, "only {nontrivial} nontrivial samples");
    assert!(caught > 0);
}

#[test]
fn torus_fixture_negative_control() {
    let d = load_labeled(fixtures::TORUS6);
    assert!(commuting_check(&d).unwrap().commutes);
    let bad = perturb(&d, 2, &HomologyClass(vec![1, 0]));
    assert!(!commuting_check(&bad).unwrap().commutes);
}
