//! Random Jacobi-valid three-dimensional frames with positive-definite metrics.

#![allow(dead_code)]

use kappamu::frame::{LieFrame, MetricFrame};
use kappamu::linalg::Matrix;
use kappamu::scalar::Rational;
use rand::Rng;

pub fn q(v: i64) -> Rational {
    Rational::int(v)
}

/// Unimodular brackets `[e_i, e_j] = ε_ijl N^{lk} e_k` for symmetric `N`.
pub fn unimodular(n: [i64; 6]) -> LieFrame {
    let [a, b, c, d, e, f] = n;
    let nn = [[a, d, e], [d, b, f], [e, f, c]];
    let mut entries = Vec::new();
    for (i, j, l) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        for (k, &c) in nn[l].iter().enumerate() {
            entries.push((i, j, k, q(c)));
        }
    }
    LieFrame::from_sparse(3, &entries).expect("symmetric N satisfies Jacobi")
}

/// Non-unimodular brackets `[e_0, e_1] = a e_1 + b e_2`, `[e_0, e_2] = c e_1 + d e_2`.
pub fn semidirect(m: [i64; 4]) -> LieFrame {
    let [a, b, c, d] = m;
    let entries = [(0, 1, 1, q(a)), (0, 1, 2, q(b)), (0, 2, 1, q(c)), (0, 2, 2, q(d))];
    LieFrame::from_sparse(3, &entries).expect("abelian ideal satisfies Jacobi")
}

/// `g = L Lᵀ + I` with `L` lower triangular.
pub fn metric(l: [i64; 6]) -> Matrix {
    let [a, b, c, d, e, f] = l;
    let lower = Matrix::from_rows(vec![
        vec![q(a), q(0), q(0)],
        vec![q(b), q(c), q(0)],
        vec![q(d), q(e), q(f)],
    ]);
    let g = lower.mul(&lower.transpose());
    Matrix::from_fn(3, 3, |i, j| if i == j { &g[(i, j)] + q(1) } else { g[(i, j)].clone() })
}

pub fn random_metric_frame(rng: &mut impl Rng) -> MetricFrame {
    let mut ints = |k: usize| -> Vec<i64> { (0..k).map(|_| rng.gen_range(-3..=3)).collect() };
    let frame = if ints(1)[0] >= 0 {
        unimodular(ints(6).try_into().unwrap())
    } else {
        semidirect(ints(4).try_into().unwrap())
    };
    let g = metric(ints(6).try_into().unwrap());
    MetricFrame::new(frame, g).expect("L Lᵀ + I is positive definite")
}
