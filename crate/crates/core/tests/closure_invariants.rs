use liegen_core::closure::{
    classify, closed_form_bracket, iterated_bracket, predicted_type, subalgebra_closure, TypeLabel,
};
use liegen_core::exact::Matrix;
use liegen_core::generators::{
    doubling_bvector, g2_pair, lower_pair, shift_matrix, shift_pair, BVectorConvention, PairFamily,
};

fn closure_of(family: PairFamily, n: usize) -> (usize, TypeLabel) {
    let p = shift_pair(n, family).unwrap();
    let r = subalgebra_closure(&[p.first, p.second]).unwrap();
    assert!(r.verified);
    (r.dim, classify(&r))
}

#[test]
fn corner_family_dimensions() {
    for n in [3, 5, 7, 9] {
        let (dim, label) = closure_of(PairFamily::Corner, n);
        assert_eq!(dim, n * n - 1, "n = {n}");
        assert_eq!(label, predicted_type(PairFamily::Corner, n).unwrap());
    }
    for n in [4, 6, 8, 10] {
        let m = n / 2;
        let (dim, label) = closure_of(PairFamily::Corner, n);
        assert_eq!(dim, m * (2 * m + 1), "n = {n}");
        assert_eq!(label, predicted_type(PairFamily::Corner, n).unwrap());
    }
}

#[test]
fn double_corner_family_dimensions() {
    for n in [4, 6, 8] {
        let (dim, label) = closure_of(PairFamily::DoubleCorner, n);
        assert_eq!(dim, n * n - 1, "n = {n}");
        assert_eq!(label, predicted_type(PairFamily::DoubleCorner, n).unwrap());
    }
    for n in [5, 9, 11] {
        let (dim, label) = closure_of(PairFamily::DoubleCorner, n);
        assert_eq!(dim, n * (n - 1) / 2, "n = {n}");
        assert_eq!(label, predicted_type(PairFamily::DoubleCorner, n).unwrap());
    }
    let (dim, label) = closure_of(PairFamily::DoubleCorner, 7);
    assert_eq!(dim, 14);
    assert_eq!(label, TypeLabel::g2());
}

#[test]
fn g2_pair_generates_g2() {
    let p = g2_pair();
    let r = subalgebra_closure(&[p.first, p.second]).unwrap();
    assert_eq!(r.dim, 14);
    assert_eq!(classify(&r), TypeLabel::g2());
}

#[test]
fn doubling_lower_pair_generates_sl() {
    for n in 3..=8 {
        let b = doubling_bvector(n, BVectorConvention::MatrixSize).unwrap();
        let p = lower_pair(&b).unwrap();
        let r = subalgebra_closure(&[p.first, p.second]).unwrap();
        assert_eq!(r.dim, n * n - 1, "n = {n}");
    }
}

#[test]
fn simple_root_vectors_and_lowest_root_generate_sl() {
    for n in 3..=8 {
        let mut seed: Vec<Matrix> = (1..n).map(|i| Matrix::unit(n, i, i + 1)).collect();
        seed.push(Matrix::unit(n, n, 1));
        assert_eq!(subalgebra_closure(&seed).unwrap().dim, n * n - 1, "n = {n}");
    }
}

#[test]
fn closed_forms_match_iterated_brackets() {
    for n in 3..=10 {
        let x = shift_matrix(n);
        for family in [PairFamily::Corner, PairFamily::DoubleCorner] {
            if family == PairFamily::DoubleCorner && n < 4 {
                continue;
            }
            let y = shift_pair(n, family).unwrap().second;
            for s in 0..=2 * n {
                assert_eq!(
                    closed_form_bracket(n, s, family).unwrap(),
                    iterated_bracket(&x, &y, s).unwrap(),
                    "{family:?} n={n} s={s}"
                );
            }
        }
    }
}
