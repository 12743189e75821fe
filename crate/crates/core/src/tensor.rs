//! Dense multi-index arrays over a frame.
//!
//! A tensor of arity `(p, q)` stores `dim^(p+q)` entries in row-major order,
//! contravariant indices first. The conventions used across the crate:
//!
//! | tensor | entry | meaning |
//! |--------|-------|---------|
//! | Γ (1,2) | `[k][i][j]` | `e_k`-component of `∇_{e_i} e_j` |
//! | R (1,3) | `[l][k][i][j]` | `e_l`-component of `R(e_i, e_j) e_k` |
//! | R (0,4) | `[i][j][k][l]` | `g(R(e_i, e_j) e_k, e_l)` |
//! | φ, h (1,1) | `[k][j]` | `e_k`-component of `φ e_j` |
//! | S, g (0,2) | `[i][j]` | `S(e_i, e_j)` |

use std::fmt;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::Rational;

/// Components of a vector in the frame basis.
pub type Vector = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize, usize),
        right: (usize, usize, usize),
    },
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("expected arity {expected:?}, got {got:?}")]
    ArityMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    dim: usize,
    contravariant: usize,
    covariant: usize,
    data: Vec<Rational>,
}

impl Tensor {
    pub fn zeros(dim: usize, contravariant: usize, covariant: usize) -> Self {
        let len = dim.pow((contravariant + covariant) as u32);
        Tensor {
            dim,
            contravariant,
            covariant,
            data: vec![Rational::zero(); len],
        }
    }

    pub fn from_fn(
        dim: usize,
        contravariant: usize,
        covariant: usize,
        f: impl Fn(&[usize]) -> Rational,
    ) -> Self {
        let mut t = Self::zeros(dim, contravariant, covariant);
        for (flat, idx) in MultiIndex::new(dim, contravariant + covariant).enumerate() {
            t.data[flat] = f(&idx);
        }
        t
    }

    /// `(1,1)` tensor from a matrix whose column `j` is the image of `e_j`.
    pub fn endomorphism(m: &Matrix) -> Self {
        assert_eq!(m.rows(), m.cols());
        Self::from_fn(m.rows(), 1, 1, |ix| m[(ix[0], ix[1])].clone())
    }

    /// `(0,2)` tensor with entries `m[(i, j)]`.
    pub fn bilinear(m: &Matrix) -> Self {
        assert_eq!(m.rows(), m.cols());
        Self::from_fn(m.rows(), 0, 2, |ix| m[(ix[0], ix[1])].clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.contravariant, self.covariant)
    }

    pub fn order(&self) -> usize {
        self.contravariant + self.covariant
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.dim, self.contravariant, self.covariant)
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.data
    }

    fn flat(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.order());
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &Rational {
        &self.data[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Rational) {
        let f = self.flat(idx);
        self.data[f] = value;
    }

    pub fn get_mut(&mut self, idx: &[usize]) -> &mut Rational {
        let f = self.flat(idx);
        &mut self.data[f]
    }

    /// `(multi-index, value)` pairs in storage order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> {
        MultiIndex::new(self.dim, self.order()).zip(self.data.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn max_abs(&self) -> Rational {
        Rational::max_abs(&self.data)
    }

    /// Largest-magnitude entry with its index, or `None` for an all-zero tensor.
    pub fn worst_entry(&self) -> Option<(Vec<usize>, Rational)> {
        let mut best: Option<(Vec<usize>, Rational)> = None;
        for (idx, v) in self.entries() {
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(_, b)| &a > b) {
                best = Some((idx, a));
            }
        }
        best
    }

    pub fn scale(&self, c: &Rational) -> Tensor {
        Tensor {
            data: self.data.iter().map(|v| v * c).collect(),
            ..self.clone()
        }
    }

    pub fn checked_sub(&self, rhs: &Tensor) -> Result<Tensor, TensorError> {
        self.same_shape(rhs)?;
        Ok(Tensor {
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
            ..self.clone()
        })
    }

    pub fn checked_add(&self, rhs: &Tensor) -> Result<Tensor, TensorError> {
        self.same_shape(rhs)?;
        Ok(Tensor {
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }

    pub fn same_shape(&self, rhs: &Tensor) -> Result<(), TensorError> {
        if self.shape() != rhs.shape() {
            return Err(TensorError::ShapeMismatch {
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(())
    }

    pub fn expect_arity(&self, expected: (usize, usize)) -> Result<(), TensorError> {
        if self.arity() != expected {
            return Err(TensorError::ArityMismatch {
                expected,
                got: self.arity(),
            });
        }
        Ok(())
    }

    /// Rank-2 tensor as a matrix (first index = row).
    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.order(), 2, "to_matrix needs a rank-2 tensor");
        Matrix::from_fn(self.dim, self.dim, |i, j| self.get(&[i, j]).clone())
    }

    /// Applies a `(1,1)` tensor to a vector.
    pub fn apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.arity(), (1, 1));
        (0..self.dim)
            .map(|k| (0..self.dim).map(|j| self.get(&[k, j]) * &v[j]).sum())
            .collect()
    }

    /// Evaluates a `(0,2)` tensor on two vectors.
    pub fn eval2(&self, x: &[Rational], y: &[Rational]) -> Rational {
        assert_eq!(self.arity(), (0, 2));
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    acc += xi * yj * self.get(&[i, j]);
                }
            }
        }
        acc
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Tensor(dim={}, arity=({},{})) [",
            self.dim, self.contravariant, self.covariant
        )?;
        for (idx, v) in self.entries().filter(|(_, v)| !v.is_zero()) {
            write!(f, " {idx:?}={v:?}")?;
        }
        write!(f, " ]")
    }
}

/// Row-major enumeration of all `dim^order` multi-indices.
#[derive(Debug, Clone)]
pub struct MultiIndex {
    dim: usize,
    current: Option<Vec<usize>>,
}

impl MultiIndex {
    pub fn new(dim: usize, order: usize) -> Self {
        let current = if dim == 0 && order > 0 {
            None
        } else {
            Some(vec![0; order])
        };
        MultiIndex { dim, current }
    }
}

impl Iterator for MultiIndex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut pos = next.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            next[pos] += 1;
            if next[pos] < self.dim {
                self.current = Some(next);
                break;
            }
            next[pos] = 0;
        }
        Some(out)
    }
}

/// Standard basis vector `e_i`.
pub fn basis(dim: usize, i: usize) -> Vector {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

pub fn check_len(v: &[Rational], dim: usize) -> Result<(), TensorError> {
    if v.len() != dim {
        return Err(TensorError::DimensionMismatch {
            expected: dim,
            got: v.len(),
        });
    }
    Ok(())
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rational], c: &Rational) -> Vector {
    a.iter().map(|x| x * c).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Rational::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_index_enumerates_row_major() {
        let all: Vec<Vec<usize>> = MultiIndex::new(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(MultiIndex::new(3, 0).count(), 1);
        assert_eq!(MultiIndex::new(3, 4).count(), 81);
    }

    #[test]
    fn entry_count_is_dim_to_order() {
        let t = Tensor::zeros(3, 1, 3);
        assert_eq!(t.len(), 81);
        let t = Tensor::zeros(5, 0, 6);
        assert_eq!(t.len(), 15625);
    }

    #[test]
    fn get_set_and_worst_entry() {
        let mut t = Tensor::zeros(3, 0, 2);
        t.set(&[1, 2], Rational::frac(-7, 2));
        t.set(&[0, 0], Rational::int(3));
        assert_eq!(t.get(&[1, 2]), &Rational::frac(-7, 2));
        assert_eq!(t.worst_entry(), Some((vec![1, 2], Rational::frac(7, 2))));
        assert_eq!(t.max_abs(), Rational::frac(7, 2));
        let other = Tensor::zeros(3, 1, 1);
        assert!(matches!(
            t.checked_sub(&other),
            Err(TensorError::ShapeMismatch { .. })
        ));
    }
}
