mod common;

use std::collections::HashMap;

use genarc::conics::{classify, conics_through, nucleus, veronese, Conic, ConicClass};
use genarc::gf::FieldElement;
use genarc::plane::Plane;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn expected_size(q: usize, class: ConicClass) -> usize {
    match class {
        ConicClass::Irreducible | ConicClass::DoubleLine => q + 1,
        ConicClass::TwoLines => 2 * q + 1,
        ConicClass::ConjugatePair => 1,
    }
}

fn census(plane: &Plane, forms: &[[FieldElement; 6]]) -> HashMap<ConicClass, usize> {
    let q = plane.q() as usize;
    let mut counts = HashMap::new();
    for &coeffs in forms {
        let conic = Conic::new(plane.field(), coeffs).unwrap();
        let cls = classify(plane, &conic).unwrap();
        assert_eq!(cls.points.len(), expected_size(q, cls.class), "{:?}", conic.format(plane));
        if cls.class == ConicClass::DoubleLine {
            let p = &cls.points;
            assert!(p[2..].iter().all(|r| plane.collinear(&p[0], &p[1], r)));
        }
        *counts.entry(cls.class).or_insert(0) += 1;
    }
    counts
}

#[test]
fn every_form_over_small_fields_has_the_right_point_count() {
    for q in [3u32, 4] {
        let plane = Plane::of_order(q).unwrap();
        let forms = common::normalized_forms(plane.field());
        let counts = census(&plane, &forms);
        let n = (q * q + q + 1) as usize;
        let q = q as usize;
        assert_eq!(forms.len(), q.pow(5) + q.pow(4) + q.pow(3) + q * q + q + 1);
        assert_eq!(counts[&ConicClass::Irreducible], q.pow(5) - q * q);
        assert_eq!(counts[&ConicClass::TwoLines], n * (n - 1) / 2);
        assert_eq!(counts[&ConicClass::DoubleLine], n);
        assert_eq!(counts[&ConicClass::ConjugatePair], n * (q * q - q) / 2);
    }
}

#[test]
fn sampled_forms_at_q5() {
    let plane = Plane::of_order(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let forms: Vec<_> = (0..600)
        .map(|_| std::array::from_fn(|_| plane.field().element(rng.gen_range(0..5)).unwrap()))
        .filter(|v: &[FieldElement; 6]| v.iter().any(|x| !x.is_zero()))
        .collect();
    let counts = census(&plane, &forms);
    assert!(counts.get(&ConicClass::Irreducible).copied().unwrap_or(0) > 400);
}

#[test]
fn hyperplane_sections_pull_back_to_conics() {
    for q in [2u32, 3, 4] {
        let plane = Plane::of_order(q).unwrap();
        let f = plane.field();
        let images: Vec<_> = plane.all_points().iter().map(|p| veronese(&plane, p)).collect();
        for h in common::normalized_forms(f) {
            let section: Vec<u32> = images
                .iter()
                .enumerate()
                .filter(|(_, v)| {
                    let s = (0..6).fold(FieldElement::ZERO, |acc, i| f.add(acc, f.mul(h[i], v[i])));
                    s.is_zero()
                })
                .map(|(i, _)| i as u32)
                .collect();
            assert_eq!(section, Conic::new(f, h).unwrap().zero_set(&plane));
        }
    }
}

#[test]
fn five_points_of_an_irreducible_conic_fix_it() {
    for q in [3u32, 4, 5, 7] {
        let plane = Plane::of_order(q).unwrap();
        let f = plane.field();
        let one = f.element(1).unwrap();
        let z = FieldElement::ZERO;
        let conic = Conic::new(f, [z, z, one, f.neg(one), z, z]).unwrap();
        let cls = classify(&plane, &conic).unwrap();
        assert_eq!(cls.class, ConicClass::Irreducible);
        for start in 0..cls.points.len() - 4 {
            let pencil = conics_through(&plane, &cls.points[start..start + 5]).unwrap();
            assert_eq!(pencil.basis, vec![conic]);
            assert_eq!(classify(&plane, &pencil.basis[0]).unwrap().class, ConicClass::Irreducible);
        }
    }
}

#[test]
fn tangents_of_even_order_conics_are_concurrent() {
    for q in [2u32, 4, 8] {
        let plane = Plane::of_order(q).unwrap();
        let f = plane.field();
        let one = f.element(1).unwrap();
        let z = FieldElement::ZERO;
        let conic = Conic::new(f, [z, z, one, one, z, z]).unwrap();
        let zero = conic.zero_set(&plane);
        let n = nucleus(&plane, &conic).unwrap();
        assert!(!zero.contains(&n.index));
        for &l in plane.line_ids_through(n.index) {
            let meets = plane.point_ids_on(l).iter().filter(|p| zero.contains(p)).count();
            assert_eq!(meets, 1, "q={q}");
        }
    }
    let odd = Plane::of_order(3).unwrap();
    let c = Conic::from_values(odd.field(), [0, 0, 1, 2, 0, 0]).unwrap();
    assert!(nucleus(&odd, &c).is_err());
}
