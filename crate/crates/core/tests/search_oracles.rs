mod common;

use genarc::arcs::certificate::{verify_certificate, SearchMode};
use genarc::arcs::{is_arc, is_complete, secants, ArcKind};
use genarc::plane::Plane;
use genarc::search::{self, SearchConfig};

/// Smallest complete and largest sizes in the search space, by brute-force
/// enumeration.
fn brute_force(plane: &Plane, kind: ArcKind) -> (usize, usize) {
    let all = common::all_valid(plane, kind, true);
    let max = all.iter().map(Vec::len).max().unwrap();
    let min = all
        .iter()
        .filter(|s| !s.is_empty())
        .filter(|s| {
            let mut pts: Vec<_> = s.iter().map(|&i| plane.point(i)).collect();
            let complete = (0..plane.size() as u32).filter(|i| !s.contains(i)).all(|i| {
                pts.push(plane.point(i));
                let fits = common::in_search_space(plane, &pts, kind);
                pts.pop();
                !fits
            });
            if s.len() >= 5 {
                assert_eq!(complete, is_complete(plane, &pts, kind).unwrap());
            }
            complete
        })
        .map(Vec::len)
        .min()
        .unwrap();
    (min, max)
}

fn answer(cfg: &SearchConfig) -> usize {
    let r = search::run(cfg).unwrap();
    assert!(r.exhaustive);
    for w in &r.witnesses {
        assert!(verify_certificate(w).unwrap().passed());
    }
    r.answer.unwrap()
}

#[test]
fn frame_fixed_and_unrestricted_agree_with_enumeration() {
    for q in [2u32, 3, 4] {
        let plane = Plane::of_order(q).unwrap();
        for kind in ArcKind::ALL {
            let (min, max) = brute_force(&plane, kind);
            for mode in [SearchMode::MinComplete, SearchMode::Max] {
                let expected = if mode == SearchMode::Max { max } else { min };
                let fixed = SearchConfig::new(q, kind, mode);
                let mut free = fixed.clone().unrestricted();
                if mode == SearchMode::MinComplete {
                    free.k_floor = Some(1);
                }
                assert_eq!(answer(&fixed), expected, "q={q} {kind} {mode} fixed");
                assert_eq!(answer(&free), expected, "q={q} {kind} {mode} unrestricted");
                let mut reduced = fixed.clone();
                reduced.permutation_reduction = true;
                assert_eq!(answer(&reduced), expected, "q={q} {kind} {mode} reduced");
            }
        }
    }
}

#[test]
fn stripping_a_three_secant_leaves_an_arc() {
    for q in [2u32, 3, 4] {
        let plane = Plane::of_order(q).unwrap();
        let mut stripped = 0;
        for s in common::all_valid(&plane, ArcKind::Generalized, false) {
            let pts: Vec<_> = s.iter().map(|&i| plane.point(i)).collect();
            for triple in secants(&plane, &pts).values().filter(|l| l.len() == 3) {
                let rest: Vec<_> = pts.iter().copied().filter(|p| !triple.contains(p)).collect();
                assert!(is_arc(&plane, &rest), "q={q} {s:?}");
                stripped += 1;
            }
        }
        assert!(stripped > 0);
    }
}

#[test]
fn single_worker_witnesses_are_deterministic() {
    let mut cfg = SearchConfig::new(7, ArcKind::Veronesian, SearchMode::MinComplete);
    cfg.witness_cap = 50;
    let a = search::run(&cfg).unwrap();
    let b = search::run(&cfg).unwrap();
    assert_eq!(a.witnesses, b.witnesses);
    assert_eq!(a.nodes_explored, b.nodes_explored);
    let parallel = search::run(&cfg.clone().workers(4)).unwrap();
    assert_eq!(parallel.answer, a.answer);
}

#[test]
fn veronesian_values_stay_below_generalized() {
    for q in [3u32, 4, 5, 7] {
        let run = |kind, mode| answer(&SearchConfig::new(q, kind, mode));
        let tv = run(ArcKind::Veronesian, SearchMode::MinComplete);
        let tg = run(ArcKind::Generalized, SearchMode::MinComplete);
        let mv = run(ArcKind::Veronesian, SearchMode::Max);
        let mg = run(ArcKind::Generalized, SearchMode::Max);
        assert!(tv <= tg && mv <= mg, "q={q}: {tv} {tg} {mv} {mg}");
    }
}

#[test]
fn budgets_and_bad_configs() {
    let mut cfg = SearchConfig::new(9, ArcKind::Generalized, SearchMode::Max);
    cfg.node_budget = Some(50);
    let r = search::run(&cfg).unwrap();
    assert!(!r.exhaustive);
    for w in &r.witnesses {
        assert!(verify_certificate(w).unwrap().kind_valid);
    }
    assert!(search::run(&SearchConfig::new(6, ArcKind::Arc, SearchMode::Max)).is_err());
    assert!(search::run(&SearchConfig::new(16, ArcKind::Arc, SearchMode::Max)).is_err());
    let mut empty = SearchConfig::new(5, ArcKind::Arc, SearchMode::MinComplete);
    empty.k_floor = Some(7);
    empty.k_ceiling = Some(6);
    assert!(search::run(&empty).is_err());
}
