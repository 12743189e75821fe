//! Lie-algebra frames and invariant metrics on them.

use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::Rational;
use crate::tensor::{check_len, Tensor, TensorError, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("frame dimension must be odd and at least 3, got {0}")]
    BadDimension(usize),
    #[error("expected {expected} structure constants, got {got}")]
    WrongConstantCount { expected: usize, got: usize },
    #[error("index ({i}, {j}, {k}) out of range for dimension {dim}")]
    IndexOutOfRange {
        i: usize,
        j: usize,
        k: usize,
        dim: usize,
    },
    #[error("[e{i}, e{j}] has e{k}-component that violates antisymmetry")]
    AntisymmetryViolation { i: usize, j: usize, k: usize },
    #[error("conflicting entries for the e{k}-component of [e{i}, e{j}]")]
    ConflictingEntry { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails for (e{i}, e{j}, e{k}) in component e{component}")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        component: usize,
    },
    #[error("metric must be a {dim}x{dim} matrix")]
    MetricShape { dim: usize },
    #[error("metric is not symmetric")]
    MetricNotSymmetric,
    #[error("metric is not positive definite (leading minor {index} is {value})")]
    MetricNotPositiveDefinite { index: usize, value: Rational },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// A real Lie algebra with basis `e_0, ..., e_{d-1}` and
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieFrame {
    dim: usize,
    constants: Vec<Rational>,
}

impl LieFrame {
    /// `constants` is the full array `c[i][j][k]`, row-major.
    pub fn new(dim: usize, constants: Vec<Rational>) -> Result<Self, FrameError> {
        if dim < 3 || dim.is_multiple_of(2) {
            return Err(FrameError::BadDimension(dim));
        }
        if constants.len() != dim.pow(3) {
            return Err(FrameError::WrongConstantCount {
                expected: dim.pow(3),
                got: constants.len(),
            });
        }
        let frame = LieFrame { dim, constants };
        frame.check_antisymmetry()?;
        frame.check_jacobi()?;
        Ok(frame)
    }

    /// Builds a frame from sparse `(i, j, k, value)` entries meaning
    /// `[e_i, e_j]` has `e_k`-component `value`; the `(j, i, k)` entries are
    /// completed by antisymmetry. Repeating an entry with a different value
    /// (directly or through its antisymmetric partner) is an error.
    pub fn from_sparse(
        dim: usize,
        entries: &[(usize, usize, usize, Rational)],
    ) -> Result<Self, FrameError> {
        if dim < 3 || dim.is_multiple_of(2) {
            return Err(FrameError::BadDimension(dim));
        }
        let mut slots: Vec<Option<Rational>> = vec![None; dim.pow(3)];
        let at = |i: usize, j: usize, k: usize| (i * dim + j) * dim + k;
        for (i, j, k, v) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(FrameError::IndexOutOfRange { i, j, k, dim });
            }
            if i == j {
                if !v.is_zero() {
                    return Err(FrameError::AntisymmetryViolation { i, j, k });
                }
                continue;
            }
            for (slot, value) in [(at(i, j, k), v.clone()), (at(j, i, k), -v)] {
                match &slots[slot] {
                    Some(existing) if *existing != value => {
                        return Err(FrameError::ConflictingEntry { i, j, k });
                    }
                    _ => slots[slot] = Some(value),
                }
            }
        }
        let constants = slots
            .into_iter()
            .map(|s| s.unwrap_or_else(Rational::zero))
            .collect();
        Self::new(dim, constants)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Half the dimension: the frame has `dim = 2n + 1`.
    pub fn n(&self) -> usize {
        (self.dim - 1) / 2
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Structure constants as a `(1,2)` tensor `[k][i][j]`.
    pub fn as_tensor(&self) -> Tensor {
        Tensor::from_fn(self.dim, 1, 2, |ix| self.constant(ix[1], ix[2], ix[0]).clone())
    }

    /// `[e_i, e_j]` as a component vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        (0..self.dim)
            .map(|k| self.constant(i, j, k).clone())
            .collect()
    }

    pub fn lie_bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector, FrameError> {
        check_len(x, self.dim)?;
        check_len(y, self.dim)?;
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_antisymmetry(&self) -> Result<(), FrameError> {
        for i in 0..self.dim {
            for j in i..self.dim {
                for k in 0..self.dim {
                    if *self.constant(i, j, k) != -self.constant(j, i, k) {
                        return Err(FrameError::AntisymmetryViolation { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// `[[e_i, e_j], e_k]` component `p`.
    fn double_bracket(&self, i: usize, j: usize, k: usize, p: usize) -> Rational {
        (0..self.dim)
            .map(|m| self.constant(i, j, m) * self.constant(m, k, p))
            .sum()
    }

    fn check_jacobi(&self) -> Result<(), FrameError> {
        let d = self.dim;
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    for p in 0..d {
                        let cyclic = self.double_bracket(i, j, k, p)
                            + self.double_bracket(j, k, i, p)
                            + self.double_bracket(k, i, j, p);
                        if !cyclic.is_zero() {
                            return Err(FrameError::JacobiViolation {
                                i,
                                j,
                                k,
                                component: p,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The three-dimensional family `[e_1,e_2] = c1 e_0`, `[e_2,e_0] = c2 e_1`,
/// `[e_0,e_1] = c3 e_2`. Jacobi holds for every choice of constants.
pub fn family_frame(c1: Rational, c2: Rational, c3: Rational) -> LieFrame {
    LieFrame::from_sparse(3, &[(1, 2, 0, c1), (2, 0, 1, c2), (0, 1, 2, c3)])
        .expect("family brackets satisfy Jacobi")
}

/// A Lie frame with a left-invariant (constant-coefficient) metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricFrame {
    frame: LieFrame,
    g: Matrix,
    g_inv: Matrix,
}

impl MetricFrame {
    pub fn new(frame: LieFrame, g: Matrix) -> Result<Self, FrameError> {
        let dim = frame.dim();
        if g.rows() != dim || g.cols() != dim {
            return Err(FrameError::MetricShape { dim });
        }
        if !g.is_symmetric() {
            return Err(FrameError::MetricNotSymmetric);
        }
        for (index, value) in g.leading_principal_minors().into_iter().enumerate() {
            if !value.is_positive() {
                return Err(FrameError::MetricNotPositiveDefinite {
                    index: index + 1,
                    value,
                });
            }
        }
        let g_inv = g.inverse().expect("positive definite metric is invertible");
        Ok(MetricFrame { frame, g, g_inv })
    }

    /// The metric making the frame orthonormal.
    pub fn orthonormal(frame: LieFrame) -> Self {
        let g = Matrix::identity(frame.dim());
        MetricFrame {
            frame,
            g_inv: g.clone(),
            g,
        }
    }

    pub fn frame(&self) -> &LieFrame {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn metric(&self) -> &Matrix {
        &self.g
    }

    pub fn metric_inverse(&self) -> &Matrix {
        &self.g_inv
    }

    pub fn metric_tensor(&self) -> Tensor {
        Tensor::bilinear(&self.g)
    }

    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let gy = self.g.mul_vec(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self, x: &[Rational]) -> Rational {
        self.inner(x, x)
    }

    /// Metric dual of a vector: the covector `g(·, v)`.
    pub fn lower(&self, v: &[Rational]) -> Vector {
        self.g.mul_vec(v)
    }

    /// Vector metrically dual to a covector.
    pub fn raise(&self, w: &[Rational]) -> Vector {
        self.g_inv.mul_vec(w)
    }

    pub fn lie_bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector, FrameError> {
        self.frame.lie_bracket(x, y)
    }
}
