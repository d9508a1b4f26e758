use liegen_core::exact::{rat, ratio, Rational};
use liegen_core::generators::{g2_bvector, PairFamily};
use liegen_core::groups::OneParameter;
use liegen_core::par::Execution;
use liegen_core::pingpong::{
    certify_free_dense, compute_r0, compute_t0, default_width, pingpong_spotcheck, t_inequality,
    Conclusion, Parameters,
};
use num_traits::Signed;

fn b4() -> Vec<Rational> {
    vec![rat(8), rat(12), rat(14)]
}

#[test]
fn t_bounds_are_sign_consistent() {
    let w = default_width();
    for n in 2..=10 {
        let bound = compute_t0(n, &w).unwrap();
        let p = t_inequality(n).unwrap();
        let bracket = bound
            .bracket
            .as_ref()
            .expect("every t polynomial has a positive root");
        assert!(p.eval(&bound.safe_value).is_positive(), "n = {n}");
        assert!(!p.eval(&bracket.lo).is_positive(), "n = {n}");
        assert!(bracket.hi <= bound.safe_value);
        assert!(bracket.width() <= w);
        assert!(bound.verify());
    }
}

#[test]
fn t_bound_values() {
    let w = default_width();
    let at = |n| compute_t0(n, &w).unwrap().bracket.unwrap();
    assert!(at(2).contains(&rat(2)));
    // T^2/2 - 2T - 2 vanishes at 2 + 2 sqrt 2
    let b3 = at(3);
    assert!(b3.lo > ratio(4828427, 1000000) && b3.hi < ratio(4828428, 1000000));
    let b4 = at(4);
    assert!(b4.lo > ratio(77, 10) && b4.hi < ratio(78, 10));
    let b7 = at(7);
    assert!(b7.lo > ratio(165, 10) && b7.hi < ratio(167, 10));
    assert!(compute_t0(7, &w).unwrap().safe_value <= rat(17));
}

#[test]
fn r_bound_values() {
    let w = default_width();
    let r4 = compute_r0(&b4(), &w).unwrap();
    let br = r4.bracket.as_ref().unwrap();
    assert!(br.lo > ratio(7, 10) && br.hi < ratio(8, 10));
    assert!(r4.safe_value <= rat(1));
    let g2 = compute_r0(&g2_bvector(), &w).unwrap();
    assert_eq!(g2.polys.len(), 6);
    let top = g2.bracket.as_ref().unwrap();
    assert!(top.lo > ratio(163, 10) && top.hi < ratio(165, 10));
    assert!(g2.safe_value <= rat(17));
}

#[test]
fn coarse_width_still_certifies() {
    let fine = compute_t0(5, &default_width()).unwrap();
    let coarse = compute_t0(5, &ratio(1, 4)).unwrap();
    assert!(coarse.verify());
    assert!(coarse.safe_value >= fine.safe_value);
}

fn no_violations(g: OneParameter) {
    let report = pingpong_spotcheck(&g, -3..=3, 200, 2024, Execution::default()).unwrap();
    assert_eq!(report.evaluations, 1200);
    assert!(
        report.violations.is_empty(),
        "{:?}",
        report.violations.first()
    );
}

#[test]
fn spotchecks_at_certified_parameters() {
    no_violations(OneParameter::Corner { n: 2, s: rat(3) });
    no_violations(OneParameter::Corner {
        n: 5,
        s: ratio(-5, 2),
    });
    no_violations(OneParameter::Lower { r: rat(2), b: b4() });
    no_violations(OneParameter::Upper { n: 3, t: rat(5) });
    no_violations(OneParameter::Upper { n: 4, t: rat(-8) });
    no_violations(OneParameter::Lower {
        r: rat(17),
        b: g2_bvector(),
    });
}

#[test]
fn certificates_for_shift_pairs() {
    let w = default_width();
    for n in 3..=8 {
        let t = compute_t0(n, &w).unwrap().safe_value + rat(1);
        let c = certify_free_dense(
            n,
            PairFamily::Corner,
            None,
            &Parameters::UpperCorner { t, s: rat(3) },
            &w,
        )
        .unwrap();
        assert_eq!(c.conclusion, Conclusion::FreeDenseCertified, "n = {n}");
        assert_eq!(Some(c.label), c.expected);
    }
}

#[test]
fn certificates_for_lower_and_g2() {
    let w = default_width();
    let c = certify_free_dense(
        4,
        PairFamily::LowerBidiagonal,
        Some(&b4()),
        &Parameters::UpperLower {
            t: rat(9),
            r: rat(2),
        },
        &w,
    )
    .unwrap();
    assert_eq!(c.conclusion, Conclusion::FreeDenseCertified);
    assert_eq!(c.label.to_string(), "A3");
    let g2 = certify_free_dense(
        7,
        PairFamily::G2,
        None,
        &Parameters::UpperLower {
            t: rat(18),
            r: rat(-18),
        },
        &w,
    )
    .unwrap();
    assert_eq!(g2.conclusion, Conclusion::FreeDenseCertified);
    assert_eq!(g2.closure_dim, 14);
}

#[test]
fn conclusion_is_monotone_in_the_parameters() {
    let w = default_width();
    let grid = [ratio(1, 2), rat(1), rat(3), rat(7), rat(8), rat(20)];
    let conclude = |t: &Rational, s: &Rational| {
        certify_free_dense(
            4,
            PairFamily::Corner,
            None,
            &Parameters::UpperCorner {
                t: t.clone(),
                s: s.clone(),
            },
            &w,
        )
        .unwrap()
        .conclusion
    };
    let table: Vec<Vec<Conclusion>> = grid
        .iter()
        .map(|t| grid.iter().map(|s| conclude(t, s)).collect())
        .collect();
    for i in 0..grid.len() {
        for j in 0..grid.len() {
            if i + 1 < grid.len() {
                assert!(table[i][j] <= table[i + 1][j]);
            }
            if j + 1 < grid.len() {
                assert!(table[i][j] <= table[i][j + 1]);
            }
        }
    }
    assert_eq!(table[0][0], Conclusion::DenseOnly);
    assert_eq!(table[4][2], Conclusion::FreeDenseCertified);
}
