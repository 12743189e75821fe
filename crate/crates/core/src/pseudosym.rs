//! Curvature conditions of semisymmetric type.
//!
//! An endomorphism field `A` acts on a `(0,k)` tensor as a derivation,
//! `(A·T)(X_1, ..., X_k) = -Σ_i T(X_1, ..., A X_i, ..., X_k)`, and on a
//! vector-valued `(1,k)` tensor with the extra leading term `A T(X_1, ..., X_k)`.
//! `R·T` uses `A = R(X,Y)`; `Q(B,T)` uses `A = X ∧_B Y`. Both append the
//! pair `(X, Y)` as the last two covariant slots.

use serde::Serialize;

use crate::curvature::{curvature_apply, lower_curvature};
use crate::frame::MetricFrame;
use crate::linalg::Matrix;
use crate::scalar::Rational;
use crate::tensor::{basis, check_len, vec_scale, vec_sub, Tensor, TensorError, Vector};

/// `(X ∧_B Y) Z = B(Y,Z) X - B(X,Z) Y`.
pub fn wedge_endomorphism(
    b: &Tensor,
    x: &[Rational],
    y: &[Rational],
    z: &[Rational],
) -> Result<Vector, TensorError> {
    b.expect_arity((0, 2))?;
    for v in [x, y, z] {
        check_len(v, b.dim())?;
    }
    Ok(vec_sub(&vec_scale(x, &b.eval2(y, z)), &vec_scale(y, &b.eval2(x, z))))
}

/// Matrix of `e_m ↦ (e_x ∧_B e_y) e_m`.
fn wedge_matrix(b: &Tensor, x: usize, y: usize) -> Matrix {
    let d = b.dim();
    let mut a = Matrix::zeros(d, d);
    for m in 0..d {
        a[(x, m)] += b.get(&[y, m]);
        a[(y, m)] -= b.get(&[x, m]);
    }
    a
}

/// Matrix of `e_m ↦ R(e_x, e_y) e_m`.
fn curvature_matrix(r: &Tensor, x: usize, y: usize) -> Matrix {
    let d = r.dim();
    Matrix::from_fn(d, d, |l, m| r.get(&[l, m, x, y]).clone())
}

fn operators(d: usize, f: impl Fn(usize, usize) -> Matrix) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(d * d);
    for x in 0..d {
        for y in 0..d {
            out.push(f(x, y));
        }
    }
    out
}

/// Derivation action on a `(0,k)` tensor, one endomorphism per trailing pair.
fn derive_covariant(t: &Tensor, ops: &[Matrix]) -> Tensor {
    let d = t.dim();
    let k = t.order();
    Tensor::from_fn(d, 0, k + 2, |ix| {
        let a = &ops[ix[k] * d + ix[k + 1]];
        let mut slots = ix[..k].to_vec();
        let mut v = Rational::zero();
        for i in 0..k {
            let orig = slots[i];
            for l in 0..d {
                let c = &a[(l, orig)];
                if c.is_zero() {
                    continue;
                }
                slots[i] = l;
                v -= c * t.get(&slots);
            }
            slots[i] = orig;
        }
        v
    })
}

/// Derivation action on a `(1,k)` tensor stored `[l][a_1]...[a_k]`.
fn derive_vector(t: &Tensor, ops: &[Matrix]) -> Tensor {
    let d = t.dim();
    let k = t.order() - 1;
    Tensor::from_fn(d, 1, k + 2, |ix| {
        let a = &ops[ix[k + 1] * d + ix[k + 2]];
        let mut slots = ix[..=k].to_vec();
        let l = slots[0];
        let mut v = Rational::zero();
        for m in 0..d {
            let c = &a[(l, m)];
            if !c.is_zero() {
                slots[0] = m;
                v += c * t.get(&slots);
            }
        }
        slots[0] = l;
        for i in 1..=k {
            let orig = slots[i];
            for m in 0..d {
                let c = &a[(m, orig)];
                if c.is_zero() {
                    continue;
                }
                slots[i] = m;
                v -= c * t.get(&slots);
            }
            slots[i] = orig;
        }
        v
    })
}

fn check_operands(r_or_b: &Tensor, arity: (usize, usize), t: &Tensor, p: usize) -> Result<(), TensorError> {
    r_or_b.expect_arity(arity)?;
    if t.arity().0 != p || t.arity().1 == 0 {
        return Err(TensorError::ArityMismatch {
            expected: (p, t.arity().1.max(1)),
            got: t.arity(),
        });
    }
    if t.dim() != r_or_b.dim() {
        return Err(TensorError::ShapeMismatch {
            left: r_or_b.shape(),
            right: t.shape(),
        });
    }
    Ok(())
}

/// `(R·T)(X_1, ..., X_k; X, Y)` for a `(1,3)` curvature `R` and `(0,k)` `T`.
pub fn curvature_action(r: &Tensor, t: &Tensor) -> Result<Tensor, TensorError> {
    check_operands(r, (1, 3), t, 0)?;
    Ok(derive_covariant(t, &operators(r.dim(), |x, y| curvature_matrix(r, x, y))))
}

/// `Q(B,T)(X_1, ..., X_k; X, Y) = ((X ∧_B Y)·T)(X_1, ..., X_k)`.
pub fn q_tensor(b: &Tensor, t: &Tensor) -> Result<Tensor, TensorError> {
    check_operands(b, (0, 2), t, 0)?;
    Ok(derive_covariant(t, &operators(b.dim(), |x, y| wedge_matrix(b, x, y))))
}

/// `R·T` for a vector-valued `(1,k)` tensor `T`.
pub fn curvature_action_vector(r: &Tensor, t: &Tensor) -> Result<Tensor, TensorError> {
    check_operands(r, (1, 3), t, 1)?;
    Ok(derive_vector(t, &operators(r.dim(), |x, y| curvature_matrix(r, x, y))))
}

/// `Q(B,T)` for a vector-valued `(1,k)` tensor `T`.
pub fn q_tensor_vector(b: &Tensor, t: &Tensor) -> Result<Tensor, TensorError> {
    check_operands(b, (0, 2), t, 1)?;
    Ok(derive_vector(t, &operators(b.dim(), |x, y| wedge_matrix(b, x, y))))
}

/// `Q(S,R)(X_1, X_2, X_3; X, Y)` written out term by term:
/// `(X∧_S Y)R(X_1,X_2)X_3 - R((X∧_S Y)X_1, X_2)X_3 - R(X_1, (X∧_S Y)X_2)X_3
///  - R(X_1, X_2)(X∧_S Y)X_3`, stored like [`q_tensor_vector`] on `R`.
pub fn q_s_r_expanded(s: &Tensor, r: &Tensor) -> Result<Tensor, TensorError> {
    check_operands(s, (0, 2), r, 1)?;
    let d = r.dim();
    let e: Vec<Vector> = (0..d).map(|i| basis(d, i)).collect();
    let mut out = Tensor::zeros(d, 1, 5);
    for x in 0..d {
        for y in 0..d {
            let w = |z: &[Rational]| wedge_endomorphism(s, &e[x], &e[y], z).expect("shapes checked");
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        let (x1, x2, x3) = (&e[i], &e[j], &e[k]);
                        let t1 = w(&curvature_apply(r, x1, x2, x3));
                        let t2 = curvature_apply(r, &w(x1), x2, x3);
                        let t3 = curvature_apply(r, x1, &w(x2), x3);
                        let t4 = curvature_apply(r, x1, x2, &w(x3));
                        for l in 0..d {
                            let v = &t1[l] - &t2[l] - &t3[l] - &t4[l];
                            out.set(&[l, k, i, j, x, y], v);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of testing `T1 = L·T2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum Fit {
    BothZero,
    T2Zero,
    Proportional(Rational),
    Independent,
}

impl Fit {
    /// True when the linear-dependence condition holds: a constant fits,
    /// or both sides vanish.
    pub fn holds(&self) -> bool {
        matches!(self, Fit::Proportional(_) | Fit::BothZero)
    }

    pub fn constant(&self) -> Option<&Rational> {
        match self {
            Fit::Proportional(l) => Some(l),
            _ => None,
        }
    }
}

pub fn proportionality_fit(t1: &Tensor, t2: &Tensor) -> Result<Fit, TensorError> {
    t1.same_shape(t2)?;
    let pivot = t2.values().iter().position(|v| !v.is_zero());
    let Some(p) = pivot else {
        return Ok(if t1.is_zero() { Fit::BothZero } else { Fit::T2Zero });
    };
    let l = t1.values()[p]
        .checked_div(&t2.values()[p])
        .expect("pivot is nonzero");
    let fits = t1
        .values()
        .iter()
        .zip(t2.values())
        .all(|(a, b)| *a == &l * b);
    Ok(if fits { Fit::Proportional(l) } else { Fit::Independent })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub semisymmetric: bool,
    pub pseudosymmetric: bool,
    pub pseudosymmetric_constant: Option<Rational>,
    pub rgps: bool,
    pub rgps_constant: Option<Rational>,
    pub q_g_zero: bool,
    pub q_s_zero: bool,
    pub pseudosymmetry_fit: Fit,
    pub rgps_fit: Fit,
    /// The same test with `R` read as a vector-valued `(1,3)` tensor.
    pub rgps_fit_vector_valued: Fit,
}

/// Fits `R·R` against `Q(g,R)` and `Q(S,R)` on the lowered curvature.
pub fn classify_symmetry(m: &MetricFrame, r: &Tensor, s: &Tensor) -> SymmetryReport {
    let g = m.metric_tensor();
    let r04 = lower_curvature(m, r);
    let rr = curvature_action(r, &r04).expect("curvature shapes");
    let qg = q_tensor(&g, &r04).expect("curvature shapes");
    let qs = q_tensor(s, &r04).expect("curvature shapes");
    let pseudo = proportionality_fit(&rr, &qg).expect("same shape");
    let rgps = proportionality_fit(&rr, &qs).expect("same shape");
    let rr_v = curvature_action_vector(r, r).expect("curvature shapes");
    let qs_v = q_tensor_vector(s, r).expect("curvature shapes");
    let rgps_v = proportionality_fit(&rr_v, &qs_v).expect("same shape");
    SymmetryReport {
        semisymmetric: rr.is_zero(),
        pseudosymmetric: pseudo.holds(),
        pseudosymmetric_constant: pseudo.constant().cloned(),
        rgps: rgps.holds(),
        rgps_constant: rgps.constant().cloned(),
        q_g_zero: qg.is_zero(),
        q_s_zero: qs.is_zero(),
        pseudosymmetry_fit: pseudo,
        rgps_fit: rgps,
        rgps_fit_vector_valued: rgps_v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::Geometry;
    use crate::frame::family_frame;

    fn r(p: i64, q: i64) -> Rational {
        Rational::frac(p, q)
    }

    fn geo(c2: Rational, c3: Rational) -> Geometry {
        Geometry::compute(MetricFrame::orthonormal(family_frame(r(2, 1), c2, c3)))
    }

    fn e(i: usize) -> Vector {
        basis(3, i)
    }

    #[test]
    fn wedge_examples() {
        let g = Tensor::bilinear(&Matrix::identity(3));
        assert_eq!(wedge_endomorphism(&g, &e(0), &e(1), &e(1)).unwrap(), e(0));
        assert!(wedge_endomorphism(&g, &e(2), &e(2), &e(1)).unwrap().iter().all(Rational::is_zero));
        let gm = geo(r(-5, 2), r(3, 2));
        assert_eq!(
            wedge_endomorphism(&gm.ricci, &e(1), &e(2), &e(2)).unwrap(),
            vec_scale(&e(1), &r(-9, 1))
        );
    }

    #[test]
    fn metric_is_parallel_and_q_g_g_vanishes() {
        let gm = geo(r(1, 3), r(-2, 1));
        let g = gm.metric.metric_tensor();
        assert!(curvature_action(&gm.riemann, &g).unwrap().is_zero());
        assert!(q_tensor(&g, &g).unwrap().is_zero());
        assert!(q_tensor(&Tensor::zeros(3, 0, 2), &gm.riemann_lowered).unwrap().is_zero());
    }

    #[test]
    fn expanded_form_matches_derivation() {
        let gm = geo(r(-5, 2), r(3, 2));
        let a = q_tensor_vector(&gm.ricci, &gm.riemann).unwrap();
        let b = q_s_r_expanded(&gm.ricci, &gm.riemann).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fit_outcomes() {
        let mut t2 = Tensor::zeros(3, 0, 2);
        t2.set(&[0, 1], r(2, 1));
        t2.set(&[2, 2], r(-1, 3));
        let zero = Tensor::zeros(3, 0, 2);
        assert_eq!(proportionality_fit(&zero, &t2).unwrap(), Fit::Proportional(Rational::zero()));
        assert_eq!(proportionality_fit(&t2.scale(&r(3, 1)), &t2).unwrap(), Fit::Proportional(r(3, 1)));
        assert_eq!(proportionality_fit(&zero, &zero).unwrap(), Fit::BothZero);
        assert_eq!(proportionality_fit(&t2, &zero).unwrap(), Fit::T2Zero);
        let mut bent = t2.scale(&r(3, 1));
        *bent.get_mut(&[1, 1]) += Rational::one();
        assert_eq!(proportionality_fit(&bent, &t2).unwrap(), Fit::Independent);
        assert!(proportionality_fit(&t2, &Tensor::zeros(3, 1, 1)).is_err());
    }
}
