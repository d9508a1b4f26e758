use liegen_core::exact::{
    format_rational, isolate_largest_positive_root, parse_rational, rat, ratio, Matrix, Polynomial,
    RootIsolation, SpanBasis,
};
use liegen_core::generators::diagram_automorphism;
use num_traits::Signed;
use proptest::prelude::*;

fn matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
        let rows: Vec<&[i64]> = v.chunks(n).collect();
        Matrix::from_i64(&rows)
    })
}

fn bracket(a: &Matrix, b: &Matrix) -> Matrix {
    a.bracket(b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_bilinear_and_alternating(a in matrix(3), b in matrix(3), c in matrix(3), k in -5i64..=5) {
        prop_assert_eq!(bracket(&(&a + &b), &c), &bracket(&a, &c) + &bracket(&b, &c));
        prop_assert_eq!(bracket(&a.scale(&rat(k)), &b), bracket(&a, &b).scale(&rat(k)));
        prop_assert_eq!(bracket(&a, &b), -&bracket(&b, &a));
        prop_assert!(bracket(&a, &a).is_zero());
    }

    #[test]
    fn jacobi_identity(a in matrix(3), b in matrix(3), c in matrix(3)) {
        let sum = &(&bracket(&a, &bracket(&b, &c)) + &bracket(&b, &bracket(&c, &a)))
            + &bracket(&c, &bracket(&a, &b));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn span_is_order_independent(ms in prop::collection::vec(matrix(2), 1..6), seed in any::<u64>()) {
        let mut forward = SpanBasis::new(2);
        for m in &ms {
            forward.insert(m).unwrap();
        }
        let mut shuffled = ms.clone();
        let k = (seed as usize) % shuffled.len();
        shuffled.rotate_left(k);
        shuffled.reverse();
        let mut backward = SpanBasis::new(2);
        for m in &shuffled {
            backward.insert(m).unwrap();
        }
        prop_assert_eq!(forward.rank(), backward.rank());
        prop_assert_eq!(forward.rows(), backward.rows());
        for m in &ms {
            prop_assert!(forward.contains(m).unwrap());
        }
    }

    #[test]
    fn root_bracket_sign_contract(coeffs in prop::collection::vec(-20i64..=20, 1..6), lead in 1i64..=5) {
        let mut c = coeffs;
        c.push(lead);
        let p = Polynomial::from_i64(&c);
        let width = ratio(1, 1 << 20);
        match isolate_largest_positive_root(&p, &width) {
            Ok(RootIsolation::Bracket(b)) => {
                prop_assert!(b.width() <= width);
                prop_assert!(!p.eval(&b.lo).is_positive());
                prop_assert!(p.eval(&b.hi).is_positive());
                for step in [1i64, 2, 10, 1000] {
                    prop_assert!(p.eval(&(&b.hi + rat(step))).is_positive());
                }
            }
            Ok(RootIsolation::NoPositiveRoot) => {
                for x in [ratio(1, 1000), rat(1), rat(7), rat(1000)] {
                    prop_assert!(p.eval(&x).is_positive());
                }
            }
            Err(e) => prop_assert_eq!(e, liegen_core::Error::TangentialRoot),
        }
    }

    #[test]
    fn diagram_automorphism_preserves_brackets(a in matrix(4), b in matrix(4)) {
        let lhs = diagram_automorphism(&bracket(&a, &b));
        let rhs = bracket(&diagram_automorphism(&a), &diagram_automorphism(&b));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(diagram_automorphism(&diagram_automorphism(&a)), a);
    }

    #[test]
    fn rationals_round_trip(p in any::<i64>(), q in 1i64..=i64::MAX) {
        let x = ratio(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }
}

#[test]
fn nonpositive_constant_has_no_bracket() {
    let p = Polynomial::from_i64(&[3]);
    assert!(matches!(
        isolate_largest_positive_root(&p, &ratio(1, 8)),
        Ok(RootIsolation::NoPositiveRoot)
    ));
    let neg = Polynomial::from_i64(&[-1, 0, 1]).scale(&rat(-1));
    assert!(isolate_largest_positive_root(&neg, &ratio(1, 8)).is_err());
    assert!(neg.leading().unwrap().is_negative());
}
