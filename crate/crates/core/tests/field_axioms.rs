use genarc::gf::{prime_power, FieldSpec};

fn small_fields() -> Vec<FieldSpec> {
    (2..=16u32)
        .filter(|&q| prime_power(q).is_some())
        .map(|q| FieldSpec::of_order(q).unwrap())
        .collect()
}

#[test]
fn ring_axioms_hold_exhaustively() {
    for f in small_fields() {
        let els: Vec<_> = f.elements().collect();
        assert_eq!(els.len() as u32, f.q());
        let zero = f.element(0).unwrap();
        let one = f.element(1).unwrap();
        for &a in &els {
            assert_eq!(f.add(a, zero), a);
            assert_eq!(f.mul(a, one), a);
            assert_eq!(f.add(a, f.neg(a)), zero);
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a), "q={}", f.q());
                assert_eq!(f.mul(a, b), f.mul(b, a), "q={}", f.q());
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn multiplicative_group_is_cyclic_on_alpha() {
    for f in small_fields() {
        let q = f.q();
        assert_eq!(f.order(f.alpha()), Some(q - 1), "q={q}");
        let mut seen = vec![false; q as usize];
        for k in 0..(q - 1) as u64 {
            let x = f.exp(k);
            assert!(!seen[x.value() as usize], "alpha^{k} repeats in GF({q})");
            seen[x.value() as usize] = true;
            assert_eq!(f.log(x), Some(k as u32));
        }
        assert!(!seen[0]);
        for x in f.elements().filter(|x| !x.is_zero()) {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), f.element(1).unwrap());
        }
        assert!(f.inv(f.element(0).unwrap()).is_err());
    }
}

#[test]
fn frobenius_fixes_every_element() {
    for f in small_fields() {
        for x in f.elements() {
            assert_eq!(f.pow(x, f.q() as u64), x, "q={}", f.q());
        }
    }
}

#[test]
fn alternative_moduli_give_fields() {
    for (p, r, m, alpha) in [(2, 3, vec![1, 1, 0, 1], 2), (3, 2, vec![2, 2, 1], 3), (2, 4, vec![1, 0, 0, 1, 1], 2)] {
        let f = FieldSpec::new(p, r, Some(m.clone())).unwrap();
        assert_eq!(f.modulus(), &m[..]);
        assert_eq!(f.alpha().value(), alpha);
        assert_eq!(f.order(f.alpha()), Some(f.q() - 1));
    }
    assert!(FieldSpec::new(2, 2, Some(vec![1, 0, 1])).is_err());
    assert!(FieldSpec::of_order(6).is_err());
    assert!(FieldSpec::of_order(1 << 15).is_err());
}

#[test]
fn element_literals_round_trip() {
    for f in small_fields() {
        for x in f.elements() {
            assert_eq!(f.parse(&f.format(x)).unwrap(), x);
        }
    }
}
