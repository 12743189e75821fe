//! Levi-Civita connection and curvature of a left-invariant metric.
//!
//! All fields here have constant coefficients in the frame, so the
//! derivative terms of the Koszul formula drop out and
//! `2 g(∇_X Y, Z) = -g(X, [Y,Z]) - g(Y, [X,Z]) + g(Z, [X,Y])`.
//!
//! Curvature follows `R(X,Y) = ∇_X ∇_Y - ∇_Y ∇_X - ∇_{[X,Y]}` and the Ricci
//! tensor is `S(X,Y) = tr(V ↦ R(V,X)Y)`.

use thiserror::Error;

use crate::frame::MetricFrame;
use crate::scalar::Rational;
use crate::tensor::{check_len, Tensor, TensorError, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error("vectors do not span a plane")]
    DegeneratePlane,
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Connection coefficients `Γ[k][i][j]`, the `e_k`-component of `∇_{e_i} e_j`.
pub fn levi_civita_connection(m: &MetricFrame) -> Tensor {
    let d = m.dim();
    let frame = m.frame();
    let g = m.metric();
    let half = Rational::frac(1, 2);
    // lowered[i][j][z] = g(∇_{e_i} e_j, e_z)
    let bracket_with = |a: usize, b: usize, z: usize| -> Rational {
        // g(e_z, [e_a, e_b])
        (0..d)
            .map(|p| frame.constant(a, b, p) * &g[(p, z)])
            .sum()
    };
    let mut lowered = Tensor::zeros(d, 0, 3);
    for i in 0..d {
        for j in 0..d {
            for z in 0..d {
                let v = -bracket_with(j, z, i) - bracket_with(i, z, j) + bracket_with(i, j, z);
                lowered.set(&[i, j, z], &half * v);
            }
        }
    }
    let g_inv = m.metric_inverse();
    Tensor::from_fn(d, 1, 2, |ix| {
        let (k, i, j) = (ix[0], ix[1], ix[2]);
        (0..d).map(|z| &g_inv[(k, z)] * lowered.get(&[i, j, z])).sum()
    })
}

/// `∇_X Y` for constant-coefficient fields.
pub fn covariant_derivative(gamma: &Tensor, x: &[Rational], y: &[Rational]) -> Vector {
    let d = gamma.dim();
    let mut out = vec![Rational::zero(); d];
    for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            let w = xi * yj;
            for (k, o) in out.iter_mut().enumerate() {
                let c = gamma.get(&[k, i, j]);
                if !c.is_zero() {
                    *o += &w * c;
                }
            }
        }
    }
    out
}

/// Curvature `R[l][k][i][j]`, the `e_l`-component of `R(e_i, e_j) e_k`.
pub fn riemann_curvature(m: &MetricFrame, gamma: &Tensor) -> Tensor {
    let d = m.dim();
    let frame = m.frame();
    Tensor::from_fn(d, 1, 3, |ix| {
        let (l, k, i, j) = (ix[0], ix[1], ix[2], ix[3]);
        let mut v = Rational::zero();
        for p in 0..d {
            v += gamma.get(&[p, j, k]) * gamma.get(&[l, i, p]);
            v -= gamma.get(&[p, i, k]) * gamma.get(&[l, j, p]);
            let c = frame.constant(i, j, p);
            if !c.is_zero() {
                v -= c * gamma.get(&[l, p, k]);
            }
        }
        v
    })
}

/// `S[x][y] = Σ_v R[v][y][v][x]`.
pub fn ricci_tensor(r: &Tensor) -> Tensor {
    let d = r.dim();
    Tensor::from_fn(d, 0, 2, |ix| {
        (0..d).map(|v| r.get(&[v, ix[1], v, ix[0]]).clone()).sum()
    })
}

/// `R(i,j,k,l) = g(R(e_i,e_j)e_k, e_l)`.
pub fn lower_curvature(m: &MetricFrame, r: &Tensor) -> Tensor {
    let d = m.dim();
    let g = m.metric();
    Tensor::from_fn(d, 0, 4, |ix| {
        let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
        (0..d).map(|p| r.get(&[p, k, i, j]) * &g[(p, l)]).sum()
    })
}

/// Inverse of [`lower_curvature`]: raises the last slot back to a `(1,3)` tensor.
pub fn raise_curvature(m: &MetricFrame, r04: &Tensor) -> Tensor {
    let d = m.dim();
    let g_inv = m.metric_inverse();
    Tensor::from_fn(d, 1, 3, |ix| {
        let (l, k, i, j) = (ix[0], ix[1], ix[2], ix[3]);
        (0..d).map(|p| r04.get(&[i, j, k, p]) * &g_inv[(l, p)]).sum()
    })
}

/// `R(X,Y)Z` for a `(1,3)` curvature tensor.
pub fn curvature_apply(r: &Tensor, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
    let d = r.dim();
    let mut out = vec![Rational::zero(); d];
    for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (k, zk) in z.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi * yj * zk;
                for (l, o) in out.iter_mut().enumerate() {
                    let c = r.get(&[l, k, i, j]);
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
    }
    out
}

/// `K(X,Y) = g(R(X,Y)Y, X) / (g(X,X) g(Y,Y) - g(X,Y)^2)`.
pub fn sectional_curvature(
    m: &MetricFrame,
    r: &Tensor,
    x: &[Rational],
    y: &[Rational],
) -> Result<Rational, CurvatureError> {
    check_len(x, m.dim())?;
    check_len(y, m.dim())?;
    let gxy = m.inner(x, y);
    let area = m.norm_sq(x) * m.norm_sq(y) - &gxy * &gxy;
    if area.is_zero() {
        return Err(CurvatureError::DegeneratePlane);
    }
    let num = m.inner(&curvature_apply(r, x, y, y), x);
    Ok(num.checked_div(&area).expect("area is nonzero"))
}

/// Connection, curvature and Ricci tensor of one metric frame.
#[derive(Debug, Clone)]
pub struct Geometry {
    pub metric: MetricFrame,
    pub gamma: Tensor,
    pub riemann: Tensor,
    pub riemann_lowered: Tensor,
    pub ricci: Tensor,
}

impl Geometry {
    pub fn compute(metric: MetricFrame) -> Self {
        let gamma = levi_civita_connection(&metric);
        let riemann = riemann_curvature(&metric, &gamma);
        let riemann_lowered = lower_curvature(&metric, &riemann);
        let ricci = ricci_tensor(&riemann);
        Geometry {
            metric,
            gamma,
            riemann,
            riemann_lowered,
            ricci,
        }
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn sectional(&self, x: &[Rational], y: &[Rational]) -> Result<Rational, CurvatureError> {
        sectional_curvature(&self.metric, &self.riemann, x, y)
    }

    /// Scalar curvature `tr_g S`.
    pub fn scalar_curvature(&self) -> Rational {
        let d = self.dim();
        let g_inv = self.metric.metric_inverse();
        let mut s = Rational::zero();
        for i in 0..d {
            for j in 0..d {
                s += &g_inv[(i, j)] * self.ricci.get(&[i, j]);
            }
        }
        s
    }
}
