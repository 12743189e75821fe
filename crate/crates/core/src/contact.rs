//! Contact metric structures `(φ, ξ, η, g)` on invariant frames.
//!
//! The Reeb field is a designated frame vector. `η = g(·, ξ)`, and on
//! invariant frames `dη(X,Y) = ½(Xη(Y) - Yη(X) - η([X,Y])) = -½ η([X,Y])`.
//! `φ` is then the unique endomorphism with `dη(X,Y) = g(X, φY)`.

use std::fmt;

use thiserror::Error;

use crate::curvature::covariant_derivative;
use crate::frame::MetricFrame;
use crate::linalg::Matrix;
use crate::scalar::Rational;
use crate::tensor::{basis, is_zero_vec, vec_add, vec_scale, vec_sub, Tensor, Vector};

/// The identity that failed when a structure is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContactAxiom {
    UnitReeb,
    ContactForm,
    PhiSquared,
    DEtaPhi,
    EtaDual,
    HSymmetric,
    HXiZero,
}

impl fmt::Display for ContactAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ContactAxiom::UnitReeb => "eta(xi) = 1",
            ContactAxiom::ContactForm => "eta ^ (d eta)^n != 0",
            ContactAxiom::PhiSquared => "phi^2 = -I + eta (x) xi",
            ContactAxiom::DEtaPhi => "d eta(X,Y) = g(X, phi Y)",
            ContactAxiom::EtaDual => "eta(X) = g(X, xi)",
            ContactAxiom::HSymmetric => "h is g-symmetric",
            ContactAxiom::HXiZero => "h xi = 0",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContactError {
    #[error("reeb index {index} out of range for dimension {dim}")]
    XiIndexOutOfRange { index: usize, dim: usize },
    #[error("contact axiom violated: {0}")]
    ContactAxiomViolation(ContactAxiom),
    #[error("h^2 is not a scalar multiple of the identity on the contact distribution")]
    HSquaredNotScalar,
    #[error("eigenvalue of h is irrational: lambda^2 = {lambda_squared}")]
    IrrationalEigenvalue { lambda_squared: Rational },
}

#[derive(Debug, Clone)]
pub struct ContactMetricStructure {
    metric: MetricFrame,
    xi_index: usize,
    xi: Vector,
    eta: Vector,
    d_eta: Matrix,
    phi: Tensor,
    h: Tensor,
}

/// `dη(e_i, e_j) = -½ η([e_i, e_j])`.
fn d_eta_matrix(m: &MetricFrame, eta: &[Rational]) -> Matrix {
    let d = m.dim();
    let f = m.frame();
    let half = Rational::frac(-1, 2);
    Matrix::from_fn(d, d, |i, j| {
        let v: Rational = (0..d).map(|k| f.constant(i, j, k) * &eta[k]).sum();
        &half * v
    })
}

fn axiom(a: ContactAxiom) -> ContactError {
    ContactError::ContactAxiomViolation(a)
}

impl ContactMetricStructure {
    /// Builds the structure with `ξ = e_{xi_index}`, solving for `φ`.
    pub fn build(metric: MetricFrame, xi_index: usize) -> Result<Self, ContactError> {
        let (xi, eta, d_eta) = Self::reeb_data(&metric, xi_index)?;
        // g(X, φY) = dη(X, Y)  ⇒  φ = g⁻¹ dη
        let phi = Tensor::endomorphism(&metric.metric_inverse().mul(&d_eta));
        Self::finish(metric, xi_index, xi, eta, d_eta, phi)
    }

    /// Validation-only path for a caller-supplied `φ`.
    pub fn validate(metric: MetricFrame, xi_index: usize, phi: Tensor) -> Result<Self, ContactError> {
        assert_eq!(phi.shape(), (metric.dim(), 1, 1), "phi must be a (1,1) tensor");
        let (xi, eta, d_eta) = Self::reeb_data(&metric, xi_index)?;
        let d = metric.dim();
        for i in 0..d {
            for j in 0..d {
                let rhs = metric.inner(&basis(d, i), &phi.apply(&basis(d, j)));
                if d_eta[(i, j)] != rhs {
                    return Err(axiom(ContactAxiom::DEtaPhi));
                }
            }
        }
        Self::finish(metric, xi_index, xi, eta, d_eta, phi)
    }

    fn reeb_data(
        metric: &MetricFrame,
        xi_index: usize,
    ) -> Result<(Vector, Vector, Matrix), ContactError> {
        let d = metric.dim();
        if xi_index >= d {
            return Err(ContactError::XiIndexOutOfRange { index: xi_index, dim: d });
        }
        let xi = basis(d, xi_index);
        let eta = metric.lower(&xi);
        if !metric.norm_sq(&xi).is_one() {
            return Err(axiom(ContactAxiom::UnitReeb));
        }
        let d_eta = d_eta_matrix(metric, &eta);
        // η ∧ (dη)^n ≠ 0 iff dη has rank 2n with ξ spanning its kernel.
        if d_eta.rank() != d - 1 || !is_zero_vec(&d_eta.mul_vec(&xi)) {
            return Err(axiom(ContactAxiom::ContactForm));
        }
        Ok((xi, eta, d_eta))
    }

    fn finish(
        metric: MetricFrame,
        xi_index: usize,
        xi: Vector,
        eta: Vector,
        d_eta: Matrix,
        phi: Tensor,
    ) -> Result<Self, ContactError> {
        let d = metric.dim();
        let phi_m = phi.to_matrix();
        let expected = Matrix::from_fn(d, d, |i, j| {
            let delta = if i == j { Rational::one() } else { Rational::zero() };
            &xi[i] * &eta[j] - delta
        });
        if phi_m.mul(&phi_m) != expected {
            return Err(axiom(ContactAxiom::PhiSquared));
        }
        for (i, eta_i) in eta.iter().enumerate() {
            if metric.inner(&basis(d, i), &xi) != *eta_i {
                return Err(axiom(ContactAxiom::EtaDual));
            }
        }
        let mut s = ContactMetricStructure {
            metric,
            xi_index,
            xi,
            eta,
            d_eta,
            phi,
            h: Tensor::zeros(d, 1, 1),
        };
        s.h = s.compute_h();
        for i in 0..d {
            for j in 0..i {
                let (ei, ej) = (basis(d, i), basis(d, j));
                if s.metric.inner(&s.h.apply(&ei), &ej) != s.metric.inner(&ei, &s.h.apply(&ej)) {
                    return Err(axiom(ContactAxiom::HSymmetric));
                }
            }
        }
        if !is_zero_vec(&s.h.apply(&s.xi)) {
            return Err(axiom(ContactAxiom::HXiZero));
        }
        Ok(s)
    }

    /// `h X = ½([ξ, φX] - φ[ξ, X])`.
    pub fn compute_h(&self) -> Tensor {
        let d = self.dim();
        let f = self.metric.frame();
        let half = Rational::frac(1, 2);
        let mut h = Tensor::zeros(d, 1, 1);
        for j in 0..d {
            let x = basis(d, j);
            let a = f.lie_bracket(&self.xi, &self.phi.apply(&x)).expect("sizes match");
            let b = self.phi.apply(&f.lie_bracket(&self.xi, &x).expect("sizes match"));
            let col = vec_scale(&vec_sub(&a, &b), &half);
            for (k, v) in col.into_iter().enumerate() {
                h.set(&[k, j], v);
            }
        }
        h
    }

    pub fn metric(&self) -> &MetricFrame {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn n(&self) -> usize {
        (self.dim() - 1) / 2
    }

    pub fn xi_index(&self) -> usize {
        self.xi_index
    }

    pub fn xi(&self) -> &[Rational] {
        &self.xi
    }

    /// Components `η(e_i)`.
    pub fn eta(&self) -> &[Rational] {
        &self.eta
    }

    pub fn eta_of(&self, x: &[Rational]) -> Rational {
        self.eta.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn d_eta(&self) -> &Matrix {
        &self.d_eta
    }

    pub fn phi(&self) -> &Tensor {
        &self.phi
    }

    pub fn h(&self) -> &Tensor {
        &self.h
    }

    /// Unnormalized basis of the contact distribution `ker η`, made of
    /// the frame vectors other than ξ projected off ξ.
    pub fn contact_basis(&self) -> Vec<Vector> {
        let d = self.dim();
        (0..d)
            .filter(|&i| i != self.xi_index)
            .map(|i| {
                let e = basis(d, i);
                let c = self.eta_of(&e);
                vec_sub(&e, &vec_scale(&self.xi, &c))
            })
            .collect()
    }
}

/// `∇_{e_j} ξ + φ e_j + φ h e_j`, column `j` of a `(1,1)` tensor.
pub fn nabla_xi_residual(
    gamma: &Tensor,
    xi: &[Rational],
    phi: &Tensor,
    h: &Tensor,
) -> Tensor {
    let d = gamma.dim();
    let mut out = Tensor::zeros(d, 1, 1);
    for j in 0..d {
        let x = basis(d, j);
        let lhs = covariant_derivative(gamma, &x, xi);
        let r = vec_add(&lhs, &vec_add(&phi.apply(&x), &phi.apply(&h.apply(&x))));
        for (k, v) in r.into_iter().enumerate() {
            out.set(&[k, j], v);
        }
    }
    out
}

/// Residual of `∇_X ξ = -φX - φhX` over the frame.
pub fn verify_nabla_xi(s: &ContactMetricStructure, gamma: &Tensor) -> Tensor {
    nabla_xi_residual(gamma, &s.xi, &s.phi, &s.h)
}

/// Residual `(∇_{e_i} φ) e_j - g(e_i, e_j) ξ + η(e_j) e_i` as a `(1,2)`
/// tensor `[k][i][j]`.
pub fn sasakian_residual(s: &ContactMetricStructure, gamma: &Tensor) -> Tensor {
    let d = s.dim();
    let mut out = Tensor::zeros(d, 1, 2);
    for i in 0..d {
        let x = basis(d, i);
        for j in 0..d {
            let y = basis(d, j);
            let nabla_phi_y = vec_sub(
                &covariant_derivative(gamma, &x, &s.phi.apply(&y)),
                &s.phi.apply(&covariant_derivative(gamma, &x, &y)),
            );
            let rhs = vec_sub(
                &vec_scale(&s.xi, &s.metric.inner(&x, &y)),
                &vec_scale(&x, &s.eta_of(&y)),
            );
            for (k, v) in vec_sub(&nabla_phi_y, &rhs).into_iter().enumerate() {
                out.set(&[k, i, j], v);
            }
        }
    }
    out
}

pub fn is_sasakian(s: &ContactMetricStructure, gamma: &Tensor) -> bool {
    sasakian_residual(s, gamma).is_zero()
}

/// Eigenvalue `λ ≥ 0` of `h` with unnormalized, mutually g-orthogonal bases
/// of `D(0)`, `D(λ)`, `D(-λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenDistributions {
    pub lambda: Rational,
    pub basis_zero: Vec<Vector>,
    pub basis_plus: Vec<Vector>,
    pub basis_minus: Vec<Vector>,
}

/// `λ²` from `h² = λ²(I - η⊗ξ)`, when `h²` has that form.
pub fn lambda_squared(s: &ContactMetricStructure) -> Result<Rational, ContactError> {
    let d = s.dim();
    let h = s.h.to_matrix();
    let h2 = h.mul(&h);
    let minus_phi2 = Matrix::from_fn(d, d, |i, j| {
        let delta = if i == j { Rational::one() } else { Rational::zero() };
        delta - &s.xi[i] * &s.eta[j]
    });
    let probe = (0..d).find(|&i| i != s.xi_index).expect("dim >= 3");
    let c = h2[(probe, probe)].checked_div(&minus_phi2[(probe, probe)]).map_err(|_| ContactError::HSquaredNotScalar)?;
    if h2 != minus_phi2.scale(&c) {
        return Err(ContactError::HSquaredNotScalar);
    }
    Ok(c)
}

pub fn h_eigenstructure(s: &ContactMetricStructure) -> Result<EigenDistributions, ContactError> {
    let lambda_squared = lambda_squared(s)?;
    let lambda = lambda_squared
        .sqrt_exact()
        .ok_or_else(|| ContactError::IrrationalEigenvalue {
            lambda_squared: lambda_squared.clone(),
        })?;
    let d = s.dim();
    let h = s.h.to_matrix();
    let shifted = |c: &Rational| h.sub(&Matrix::identity(d).scale(c));
    let m = &s.metric;
    let mut zero = vec![s.xi.clone()];
    zero.extend(h.nullspace());
    let basis_zero = gram_schmidt(m, zero);
    if lambda.is_zero() {
        return Ok(EigenDistributions {
            lambda,
            basis_zero,
            basis_plus: Vec::new(),
            basis_minus: Vec::new(),
        });
    }
    let basis_plus = gram_schmidt(m, shifted(&lambda).nullspace());
    let basis_minus = gram_schmidt(m, shifted(&-&lambda).nullspace());
    debug_assert_eq!(basis_plus.len(), s.n());
    debug_assert_eq!(basis_minus.len(), s.n());
    Ok(EigenDistributions {
        lambda,
        basis_zero,
        basis_plus,
        basis_minus,
    })
}

/// Exact Gram-Schmidt without normalization; drops dependent vectors.
pub fn gram_schmidt(m: &MetricFrame, vectors: Vec<Vector>) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for v in vectors {
        let mut w = v;
        for u in &out {
            let c = m.inner(&w, u).checked_div(&m.norm_sq(u)).expect("basis vectors are nonzero");
            w = vec_sub(&w, &vec_scale(u, &c));
        }
        if !is_zero_vec(&w) {
            out.push(w);
        }
    }
    out
}
