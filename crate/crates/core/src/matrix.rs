//! Dense matrices over the exact scalar field. Dimensions here never exceed
//! six, so everything is row-major `Vec<Scalar>` with straightforward
//! Gauss-Jordan inversion.

use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Clone, Debug)]
pub struct ScalarMatrix {
    pub n: usize,
    entries: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![Scalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::DimensionMismatch(
                "rows of unequal length".into(),
            ));
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                *m.at_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.entries[i * self.n + j]
    }

    pub fn mul(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.n, rhs.n);
        ScalarMatrix::from_fn(self.n, |i, j| {
            let mut acc = Scalar::zero();
            for l in 0..self.n {
                acc = acc.add(&self.at(i, l).mul(rhs.at(l, j)));
            }
            acc
        })
    }

    pub fn add(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.n, rhs.n);
        ScalarMatrix::from_fn(self.n, |i, j| self.at(i, j).add(rhs.at(i, j)))
    }

    pub fn neg(&self) -> ScalarMatrix {
        ScalarMatrix::from_fn(self.n, |i, j| self.at(i, j).neg())
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.n, x.len());
        (0..self.n)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.n {
                    acc = acc.add(&self.at(i, j).mul(&x[j]));
                }
                acc
            })
            .collect()
    }

    pub fn eq_matrix(&self, rhs: &ScalarMatrix) -> bool {
        self.n == rhs.n
            && (0..self.n).all(|i| (0..self.n).all(|j| self.at(i, j).eq_scalar(rhs.at(i, j))))
    }

    /// Entries of self that are not identically zero, as (i, j, value).
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.at(i, j).is_zero() {
                    out.push((i, j, self.at(i, j).clone()));
                }
            }
        }
        out
    }

    /// Exact inverse by Gauss-Jordan elimination over the scalar field.
    pub fn inverse(&self) -> Result<ScalarMatrix, MatrixError> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = ScalarMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.at(r, col).is_zero())
                .ok_or(MatrixError::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a.at(pivot, j).clone();
                    *a.at_mut(pivot, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = tmp;
                    let tmp = inv.at(pivot, j).clone();
                    *inv.at_mut(pivot, j) = inv.at(col, j).clone();
                    *inv.at_mut(col, j) = tmp;
                }
            }
            let p = a.at(col, col).inv().expect("pivot nonzero");
            for j in 0..n {
                *a.at_mut(col, j) = a.at(col, j).mul(&p);
                *inv.at_mut(col, j) = inv.at(col, j).mul(&p);
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col).clone();
                for j in 0..n {
                    let av = a.at(r, j).sub(&factor.mul(a.at(col, j)));
                    *a.at_mut(r, j) = av;
                    let iv = inv.at(r, j).sub(&factor.mul(inv.at(col, j)));
                    *inv.at_mut(r, j) = iv;
                }
            }
        }
        Ok(inv)
    }

    pub fn to_f64(
        &self,
        bindings: &crate::scalar::Bindings,
    ) -> Result<nalgebra::DMatrix<f64>, crate::scalar::ScalarError> {
        let n = self.n;
        let mut m = nalgebra::DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = crate::scalar::evaluate_f64(self.at(i, j), bindings)?;
            }
        }
        Ok(m)
    }
}

impl PartialEq for ScalarMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.eq_matrix(other)
    }
}
