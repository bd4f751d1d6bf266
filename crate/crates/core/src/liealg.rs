//! Lie algebras as dense structure-constant tensors over the exact scalar
//! field, plus a parallel float-coefficient type for algebras with
//! transcendental constants (the Hasegawa family at a concrete lattice
//! matrix). The two paths never mix inside one algebra.

use crate::matrix::{MatrixError, ScalarMatrix};
use crate::scalar::{parse_scalar, print_scalar, Scalar, ScalarError};
use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("eigenvalue constraint violated: {0}")]
    EigenvalueConstraintViolated(String),
    #[error("unknown catalog name '{0}'")]
    UnknownName(String),
    #[error("bad algebra file: {0}")]
    BadFile(String),
}

/// Vector in the algebra, as scalar components on the basis.
pub type Vector = Vec<Scalar>;

/// Lie algebra with exact structure constants c^k_{ij}: [X_i, X_j] = sum_k c^k_{ij} X_k.
/// Indices are 0-based internally; basis labels use the conventional 1-based names.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    dim: usize,
    /// Dense layout c[(k * n + i) * n + j].
    c: Vec<Scalar>,
    labels: Vec<String>,
}

/// One failing Jacobi triple with its nonzero defect vector.
#[derive(Clone, Debug)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub defect: Vector,
}

impl LieAlgebra {
    /// Build from nonzero brackets given as 0-based (i, j, [(k, coeff)]) with
    /// i < j; the antisymmetric completion is implied.
    pub fn from_brackets(
        dim: usize,
        labels: Vec<String>,
        brackets: &[(usize, usize, Vec<(usize, Scalar)>)],
    ) -> Result<Self, LieError> {
        let mut c = vec![Scalar::zero(); dim * dim * dim];
        for (i, j, coeffs) in brackets {
            if *i >= *j || *j >= dim {
                return Err(LieError::DimensionMismatch(format!(
                    "bracket indices ({i},{j}) out of range or not i<j"
                )));
            }
            for (k, v) in coeffs {
                if *k >= dim {
                    return Err(LieError::DimensionMismatch(format!(
                        "target index {k} out of range"
                    )));
                }
                c[(k * dim + i) * dim + j] = v.clone();
                c[(k * dim + j) * dim + i] = v.neg();
            }
        }
        Ok(Self { dim, c, labels })
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            c: vec![Scalar::zero(); dim * dim * dim],
            labels: (1..=dim).map(|i| format!("X{i}")).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, k: usize, i: usize, j: usize) -> &Scalar {
        &self.c[(k * self.dim + i) * self.dim + j]
    }

    /// Bracket of two basis elements, as a vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        (0..self.dim)
            .map(|k| self.structure_constant(k, i, j).clone())
            .collect()
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, LieError> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(LieError::DimensionMismatch(format!(
                "vectors of length {}/{} on a dim-{} algebra",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        let mut out = vec![Scalar::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].mul(&y[j]);
                for (k, out_k) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(k, i, j);
                    if !c.is_zero() {
                        *out_k = out_k.add(&xy.mul(c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// All basis triples violating the Jacobi identity, with exact defects.
    pub fn jacobi_check(&self) -> Vec<JacobiViolation> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let ij = self.bracket_basis(i, j);
                    let jk = self.bracket_basis(j, k);
                    let ki = self.bracket_basis(k, i);
                    let e = |idx: usize| -> Vector {
                        let mut v = vec![Scalar::zero(); self.dim];
                        v[idx] = Scalar::one();
                        v
                    };
                    let a = self.bracket(&ij, &e(k)).expect("dims");
                    let b = self.bracket(&jk, &e(i)).expect("dims");
                    let c = self.bracket(&ki, &e(j)).expect("dims");
                    let defect: Vector = (0..self.dim)
                        .map(|m| a[m].add(&b[m]).add(&c[m]))
                        .collect();
                    if defect.iter().any(|x| !x.is_zero()) {
                        out.push(JacobiViolation { i, j, k, defect });
                    }
                }
            }
        }
        out
    }

    /// Transport the bracket along V: {x,y} = V^-1 [Vx, Vy].
    pub fn change_basis(&self, v: &BasisChange) -> Result<LieAlgebra, LieError> {
        if v.matrix().n != self.dim {
            return Err(LieError::DimensionMismatch(
                "basis change size differs from algebra dimension".into(),
            ));
        }
        let n = self.dim;
        let mut c = vec![Scalar::zero(); n * n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let vi: Vector = (0..n).map(|r| v.matrix().at(r, i).clone()).collect();
                let vj: Vector = (0..n).map(|r| v.matrix().at(r, j).clone()).collect();
                let br = self.bracket(&vi, &vj)?;
                let transported = v.inverse_matrix().apply(&br);
                for (k, val) in transported.into_iter().enumerate() {
                    c[(k * n + i) * n + j] = val.clone();
                    c[(k * n + j) * n + i] = val.neg();
                }
            }
        }
        Ok(LieAlgebra {
            dim: n,
            c,
            labels: self.labels.clone(),
        })
    }

    pub fn eq_algebra(&self, other: &LieAlgebra) -> bool {
        self.dim == other.dim
            && self
                .c
                .iter()
                .zip(other.c.iter())
                .all(|(a, b)| a.eq_scalar(b))
    }

    /// Indeterminates occurring anywhere in the structure constants.
    pub fn vars_present(&self) -> Vec<crate::scalar::Indeterminate> {
        let mut out = Vec::new();
        for s in &self.c {
            for v in s.vars_present() {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Specialize indeterminates in the structure constants to exact values.
    pub fn specialize(
        &self,
        bindings: &BTreeMap<crate::scalar::Indeterminate, crate::scalar::Rational>,
    ) -> LieAlgebra {
        let c = self
            .c
            .iter()
            .map(|s| {
                let mut num = s.numerator().clone();
                let mut den = s.denominator().clone();
                for (v, val) in bindings {
                    num = num.substitute(*v, val);
                    den = den.substitute(*v, val);
                }
                Scalar::new(num, den).expect("specialization hit a pole in structure constants")
            })
            .collect();
        LieAlgebra {
            dim: self.dim,
            c,
            labels: self.labels.clone(),
        }
    }

    /// Float image of the algebra; requires constant structure constants.
    pub fn to_float(&self) -> Result<FloatLieAlgebra, LieError> {
        let bindings = crate::scalar::Bindings::new();
        let mut c = vec![0.0; self.dim * self.dim * self.dim];
        for (idx, s) in self.c.iter().enumerate() {
            c[idx] = crate::scalar::evaluate_f64(s, &bindings)?;
        }
        Ok(FloatLieAlgebra {
            dim: self.dim,
            c,
            labels: self.labels.clone(),
        })
    }
}

/// Invertible basis change with its exact inverse.
#[derive(Clone, Debug)]
pub struct BasisChange {
    v: ScalarMatrix,
    v_inv: ScalarMatrix,
}

impl BasisChange {
    pub fn new(v: ScalarMatrix) -> Result<Self, LieError> {
        let v_inv = v.inverse()?;
        debug_assert!(v.mul(&v_inv).eq_matrix(&ScalarMatrix::identity(v.n)));
        Ok(Self { v, v_inv })
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.v
    }

    pub fn inverse_matrix(&self) -> &ScalarMatrix {
        &self.v_inv
    }

    pub fn inverted(&self) -> Self {
        Self {
            v: self.v_inv.clone(),
            v_inv: self.v.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// Float-coefficient algebras
// ---------------------------------------------------------------------------

/// Structure constants in f64, for algebras whose constants are
/// transcendental (eigen-logs of an integer matrix).
#[derive(Clone, Debug)]
pub struct FloatLieAlgebra {
    dim: usize,
    c: Vec<f64>,
    labels: Vec<String>,
}

impl FloatLieAlgebra {
    pub fn from_constants(dim: usize, labels: Vec<String>, c: Vec<f64>) -> Self {
        assert_eq!(c.len(), dim * dim * dim);
        Self { dim, c, labels }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, k: usize, i: usize, j: usize) -> f64 {
        self.c[(k * self.dim + i) * self.dim + j]
    }

    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0.0 {
                    continue;
                }
                let xy = x[i] * y[j];
                for (k, out_k) in out.iter_mut().enumerate() {
                    *out_k += xy * self.structure_constant(k, i, j);
                }
            }
        }
        out
    }

    /// Max Jacobi defect component over all basis triples.
    pub fn jacobi_defect(&self) -> f64 {
        let n = self.dim;
        let e = |idx: usize| -> Vec<f64> {
            let mut v = vec![0.0; n];
            v[idx] = 1.0;
            v
        };
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let a = self.bracket(&self.bracket(&e(i), &e(j)), &e(k));
                    let b = self.bracket(&self.bracket(&e(j), &e(k)), &e(i));
                    let c = self.bracket(&self.bracket(&e(k), &e(i)), &e(j));
                    for m in 0..n {
                        worst = worst.max((a[m] + b[m] + c[m]).abs());
                    }
                }
            }
        }
        worst
    }
}

// ---------------------------------------------------------------------------
// Solvable extensions and the 3x3 matrix log
// ---------------------------------------------------------------------------

/// 4-dimensional solvable algebra on {E1..E4} with [E1, E_i] = L E_i for
/// i = 2..4 (L acting on span{E2, E3, E4}), all other brackets zero.
pub fn solvable_from_derivation(l: &ScalarMatrix) -> Result<LieAlgebra, LieError> {
    if l.n != 3 {
        return Err(LieError::DimensionMismatch("derivation must be 3x3".into()));
    }
    let labels = vec!["E1".into(), "E2".into(), "E3".into(), "E4".into()];
    let mut brackets = Vec::new();
    for i in 0..3 {
        let coeffs: Vec<(usize, Scalar)> = (0..3)
            .filter(|&r| !l.at(r, i).is_zero())
            .map(|r| (r + 1, l.at(r, i).clone()))
            .collect();
        if !coeffs.is_empty() {
            brackets.push((0usize, i + 1, coeffs));
        }
    }
    LieAlgebra::from_brackets(4, labels, &brackets)
}

pub fn solvable_from_derivation_f64(l: &Matrix3<f64>, labels: [&str; 4]) -> FloatLieAlgebra {
    let dim = 4;
    let mut c = vec![0.0; dim * dim * dim];
    for i in 0..3 {
        for r in 0..3 {
            c[((r + 1) * dim) * dim + (i + 1)] = l[(r, i)];
            c[((r + 1) * dim + (i + 1)) * dim] = -l[(r, i)];
        }
    }
    FloatLieAlgebra::from_constants(dim, labels.iter().map(|s| s.to_string()).collect(), c)
}

/// Eigen-decomposition and log of an integer 3x3 matrix with three real,
/// positive, distinct eigenvalues.
#[derive(Clone, Debug)]
pub struct Log3 {
    /// L = V diag(lambda) V^-1 where lambda are the logs of the eigenvalues.
    pub l: Matrix3<f64>,
    /// Logs of the eigenvalues, descending.
    pub eigen_logs: [f64; 3],
    /// Eigenvector matrix (columns).
    pub v: Matrix3<f64>,
}

/// Roots of x^3 + p x + q when all three are real and distinct.
fn depressed_cubic_roots(p: f64, q: f64) -> Option<[f64; 3]> {
    let disc = -4.0 * p * p * p - 27.0 * q * q;
    if disc <= 0.0 {
        return None;
    }
    let m = 2.0 * (-p / 3.0).sqrt();
    let theta = (3.0 * q / (p * m)).acos() / 3.0;
    let mut roots = [0.0; 3];
    for (i, r) in roots.iter_mut().enumerate() {
        *r = m * (theta - 2.0 * std::f64::consts::PI * i as f64 / 3.0).cos();
    }
    Some(roots)
}

pub fn matrix_log3(a: &[[i64; 3]; 3]) -> Result<Log3, LieError> {
    let af = Matrix3::from_fn(|i, j| a[i][j] as f64);
    // characteristic polynomial x^3 - tr x^2 + m x - det
    let tr = af.trace();
    let m = af[(0, 0)] * af[(1, 1)] - af[(0, 1)] * af[(1, 0)]
        + af[(0, 0)] * af[(2, 2)] - af[(0, 2)] * af[(2, 0)]
        + af[(1, 1)] * af[(2, 2)] - af[(1, 2)] * af[(2, 1)];
    let det = af.determinant();
    // shift x = y + tr/3 to the depressed form y^3 + p y + q
    let p = m - tr * tr / 3.0;
    let q = -2.0 * tr * tr * tr / 27.0 + tr * m / 3.0 - det;
    let roots = depressed_cubic_roots(p, q).ok_or_else(|| {
        LieError::EigenvalueConstraintViolated(
            "eigenvalues are not three distinct reals".to_string(),
        )
    })?;
    let mut eig: Vec<f64> = roots.iter().map(|y| y + tr / 3.0).collect();
    eig.sort_by(|x, y| y.partial_cmp(x).unwrap());
    if eig.iter().any(|&x| x <= 0.0) {
        return Err(LieError::EigenvalueConstraintViolated(
            "eigenvalues must be positive".to_string(),
        ));
    }
    let scale = eig[0].abs();
    if (eig[0] - eig[1]).abs() < 1e-9 * scale || (eig[1] - eig[2]).abs() < 1e-9 * scale {
        return Err(LieError::EigenvalueConstraintViolated(
            "eigenvalues must be distinct".to_string(),
        ));
    }
    // eigenvector of (A - lambda I): largest cross product of two rows
    let eigvec = |lambda: f64| -> Vector3<f64> {
        let b = af - Matrix3::identity() * lambda;
        let rows: Vec<Vector3<f64>> = (0..3).map(|r| b.row(r).transpose()).collect();
        let mut best = rows[0].cross(&rows[1]);
        for cand in [rows[0].cross(&rows[2]), rows[1].cross(&rows[2])] {
            if cand.norm() > best.norm() {
                best = cand;
            }
        }
        best / best.norm()
    };
    let v = Matrix3::from_columns(&[eigvec(eig[0]), eigvec(eig[1]), eigvec(eig[2])]);
    let v_inv = v.try_inverse().ok_or_else(|| {
        LieError::EigenvalueConstraintViolated("eigenvector matrix is singular".to_string())
    })?;
    let d = Matrix3::from_diagonal(&Vector3::new(eig[0], eig[1], eig[2]));
    let recon = v * d * v_inv;
    let err = (recon - af).amax();
    if err > 1e-10 {
        return Err(LieError::EigenvalueConstraintViolated(format!(
            "eigendecomposition reconstruction error {err:.3e} exceeds 1e-10"
        )));
    }
    let logs = [eig[0].ln(), eig[1].ln(), eig[2].ln()];
    let dl = Matrix3::from_diagonal(&Vector3::new(logs[0], logs[1], logs[2]));
    Ok(Log3 {
        l: v * dl * v_inv,
        eigen_logs: logs,
        v,
    })
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

pub const CATALOG_NAMES: [&str; 4] = ["filiform4", "filiform6", "fg_solv", "hasegawa"];

fn sc(text: &str) -> Scalar {
    parse_scalar(text).expect("catalog scalar text")
}

fn xlabels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{i}")).collect()
}

/// The four catalog algebras by name. `hasegawa_symbolic` is the transported
/// Hasegawa bracket with symbolic eigen-logs l1, l2.
pub fn catalog_algebra(name: &str) -> Result<LieAlgebra, LieError> {
    match name {
        "filiform4" => LieAlgebra::from_brackets(
            4,
            xlabels(4),
            &[
                (0, 1, vec![(2, Scalar::one())]),
                (0, 2, vec![(3, Scalar::one())]),
            ],
        ),
        "filiform6" => LieAlgebra::from_brackets(
            6,
            xlabels(6),
            &[
                (0, 1, vec![(2, Scalar::one())]),
                (0, 2, vec![(3, Scalar::one())]),
                (0, 3, vec![(4, Scalar::one())]),
                (0, 4, vec![(5, Scalar::one())]),
            ],
        ),
        "fg_solv" => LieAlgebra::from_brackets(
            4,
            xlabels(4),
            &[
                (0, 2, vec![(0, sc("-k"))]),
                (1, 2, vec![(1, sc("k"))]),
            ],
        ),
        "hasegawa" | "hasegawa_symbolic" => LieAlgebra::from_brackets(
            4,
            xlabels(4),
            &[
                (0, 1, vec![(1, sc("l1"))]),
                (0, 2, vec![(2, sc("l2"))]),
                (0, 3, vec![(3, sc("-l1-l2"))]),
            ],
        ),
        other => Err(LieError::UnknownName(other.to_string())),
    }
}

/// The lattice matrix A of the Hasegawa construction for 6 <= k <= 15.
pub fn hasegawa_lattice_matrix(k: i64) -> Result<[[i64; 3]; 3], LieError> {
    if !(6..=15).contains(&k) {
        return Err(LieError::EigenvalueConstraintViolated(format!(
            "hasegawa lattice parameter k={k} outside 6..=15"
        )));
    }
    Ok([[0, 0, 1], [1, 0, -k], [0, 1, 8]])
}

/// Hasegawa algebra in the standard basis {E_i} with float constants from
/// log A, for a concrete integer lattice parameter.
pub fn hasegawa_numeric(k: i64) -> Result<(FloatLieAlgebra, Log3), LieError> {
    let a = hasegawa_lattice_matrix(k)?;
    let log = matrix_log3(&a)?;
    let g = solvable_from_derivation_f64(&log.l, ["E1", "E2", "E3", "E4"]);
    Ok((g, log))
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct BracketEntry {
    i: usize,
    j: usize,
    coeffs: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    dim: usize,
    brackets: Vec<BracketEntry>,
}

/// Parse the JSON algebra format: 1-based indices, i < j entries only.
pub fn algebra_from_json(text: &str) -> Result<LieAlgebra, LieError> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| LieError::BadFile(e.to_string()))?;
    let mut brackets = Vec::new();
    for e in &file.brackets {
        if e.i == 0 || e.j == 0 || e.i >= e.j || e.j > file.dim {
            return Err(LieError::BadFile(format!(
                "bracket indices ({}, {}) must satisfy 1 <= i < j <= dim",
                e.i, e.j
            )));
        }
        let mut coeffs = Vec::new();
        for (k, txt) in &e.coeffs {
            let k: usize = k
                .parse()
                .map_err(|_| LieError::BadFile(format!("bad target index '{k}'")))?;
            if k == 0 || k > file.dim {
                return Err(LieError::BadFile(format!("target index {k} out of range")));
            }
            coeffs.push((k - 1, parse_scalar(txt)?));
        }
        brackets.push((e.i - 1, e.j - 1, coeffs));
    }
    LieAlgebra::from_brackets(file.dim, xlabels(file.dim), &brackets)
}

pub fn algebra_to_json(g: &LieAlgebra) -> String {
    let mut brackets = Vec::new();
    for i in 0..g.dim() {
        for j in (i + 1)..g.dim() {
            let mut coeffs = BTreeMap::new();
            for k in 0..g.dim() {
                let c = g.structure_constant(k, i, j);
                if !c.is_zero() {
                    coeffs.insert((k + 1).to_string(), print_scalar(c));
                }
            }
            if !coeffs.is_empty() {
                brackets.push(BracketEntry {
                    i: i + 1,
                    j: j + 1,
                    coeffs,
                });
            }
        }
    }
    serde_json::to_string_pretty(&AlgebraFile {
        dim: g.dim(),
        brackets,
    })
    .expect("serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Indeterminate};

    fn e(n: usize, i: usize) -> Vector {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    }

    #[test]
    fn filiform4_brackets() {
        let g = catalog_algebra("filiform4").unwrap();
        let b = g.bracket(&e(4, 0), &e(4, 1)).unwrap();
        assert!(b[2].eq_scalar(&Scalar::one()));
        assert!(b[0].is_zero() && b[1].is_zero() && b[3].is_zero());
        let z = g.bracket(&e(4, 1), &e(4, 2)).unwrap();
        assert!(z.iter().all(|x| x.is_zero()));
        // [x, x] = 0
        let x: Vector = vec![sc("1"), sc("t"), sc("-2"), sc("1/2")];
        let xx = g.bracket(&x, &x).unwrap();
        assert!(xx.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn jacobi_passes_on_catalog() {
        for name in CATALOG_NAMES {
            let g = catalog_algebra(name).unwrap();
            assert!(g.jacobi_check().is_empty(), "{name} fails Jacobi");
        }
        assert!(LieAlgebra::abelian(4).jacobi_check().is_empty());
    }

    #[test]
    fn jacobi_detects_tampering() {
        // filiform4 plus [X3,X4] = X1 violates Jacobi on (X1,X2,X4):
        // [[X1,X2],X4] = [X3,X4] = X1 while the other two cyclic terms vanish.
        let g = LieAlgebra::from_brackets(
            4,
            xlabels(4),
            &[
                (0, 1, vec![(2, Scalar::one())]),
                (0, 2, vec![(3, Scalar::one())]),
                (2, 3, vec![(0, Scalar::one())]),
            ],
        )
        .unwrap();
        let violations = g.jacobi_check();
        assert!(!violations.is_empty());
        let v = &violations[0];
        assert_eq!((v.i, v.j, v.k), (0, 1, 3));
        assert!(v.defect[0].eq_scalar(&Scalar::one()));
    }

    #[test]
    fn identity_basis_change_is_noop() {
        let g = catalog_algebra("filiform4").unwrap();
        let id = BasisChange::new(ScalarMatrix::identity(4)).unwrap();
        assert!(g.change_basis(&id).unwrap().eq_algebra(&g));
    }

    #[test]
    fn basis_change_round_trip() {
        let g = catalog_algebra("filiform6").unwrap();
        let mut m = ScalarMatrix::identity(6);
        *m.at_mut(0, 1) = sc("2");
        *m.at_mut(2, 3) = sc("-1/3");
        *m.at_mut(4, 4) = sc("5");
        let v = BasisChange::new(m).unwrap();
        let h = g.change_basis(&v).unwrap();
        assert!(h.change_basis(&v.inverted()).unwrap().eq_algebra(&g));
        assert!(h.jacobi_check().is_empty());
    }

    #[test]
    fn scaling_basis_change_matches_direct_evaluation() {
        // V = 2I: {x,y} = V^-1 [Vx,Vy] = 2 [x,y]
        let g = catalog_algebra("filiform4").unwrap();
        let v = BasisChange::new(ScalarMatrix::from_fn(4, |i, j| {
            if i == j {
                sc("2")
            } else {
                Scalar::zero()
            }
        }))
        .unwrap();
        let h = g.change_basis(&v).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let vi: Vector = (0..4).map(|r| v.matrix().at(r, i).clone()).collect();
                let vj: Vector = (0..4).map(|r| v.matrix().at(r, j).clone()).collect();
                let expect = v.inverse_matrix().apply(&g.bracket(&vi, &vj).unwrap());
                let got = h.bracket(&e(4, i), &e(4, j)).unwrap();
                for m in 0..4 {
                    assert!(got[m].eq_scalar(&expect[m]));
                }
            }
        }
    }

    #[test]
    fn solvable_from_symbolic_diagonal_is_hasegawa() {
        let mut l = ScalarMatrix::zero(3);
        *l.at_mut(0, 0) = sc("l1");
        *l.at_mut(1, 1) = sc("l2");
        *l.at_mut(2, 2) = sc("-l1-l2");
        let g = solvable_from_derivation(&l).unwrap();
        let h = catalog_algebra("hasegawa").unwrap();
        assert!(g.eq_algebra(&h));
        // zero derivation gives the abelian algebra
        let z = solvable_from_derivation(&ScalarMatrix::zero(3)).unwrap();
        assert!(z.eq_algebra(&LieAlgebra::abelian(4)));
    }

    #[test]
    fn matrix_log3_k6() {
        let a = hasegawa_lattice_matrix(6).unwrap();
        let log = matrix_log3(&a).unwrap();
        // det A = 1 forces the logs to sum to zero
        let sum: f64 = log.eigen_logs.iter().sum();
        assert!(sum.abs() < 1e-12, "log sum {sum}");
        assert!(log.l.trace().abs() < 1e-12);
    }

    #[test]
    fn matrix_log3_rejects_identity() {
        let a = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        assert!(matches!(
            matrix_log3(&a),
            Err(LieError::EigenvalueConstraintViolated(_))
        ));
    }

    #[test]
    fn hasegawa_numeric_jacobi() {
        let (g, log) = hasegawa_numeric(6).unwrap();
        assert!(g.jacobi_defect() <= 1e-10);
        // ad_{E1} eigenvalues are the logs; they sum to 0
        assert!(log.eigen_logs.iter().sum::<f64>().abs() < 1e-12);
        assert!(hasegawa_numeric(5).is_err());
    }

    #[test]
    fn bracket_bilinearity() {
        let g = catalog_algebra("fg_solv").unwrap();
        let a = sc("2/3");
        let b = sc("-t");
        let x: Vector = vec![sc("1"), sc("k"), sc("0"), sc("t")];
        let y: Vector = vec![sc("s"), sc("1"), sc("1/2"), sc("0")];
        let z: Vector = vec![sc("0"), sc("1"), sc("t^2"), sc("3")];
        let ax_by: Vector = (0..4).map(|i| a.mul(&x[i]).add(&b.mul(&y[i]))).collect();
        let lhs = g.bracket(&ax_by, &z).unwrap();
        let bx = g.bracket(&x, &z).unwrap();
        let by = g.bracket(&y, &z).unwrap();
        for i in 0..4 {
            let rhs = a.mul(&bx[i]).add(&b.mul(&by[i]));
            assert!(lhs[i].eq_scalar(&rhs));
        }
    }

    #[test]
    fn json_round_trip() {
        let g = catalog_algebra("fg_solv").unwrap();
        let h = algebra_from_json(&algebra_to_json(&g)).unwrap();
        assert!(g.eq_algebra(&h));
    }

    #[test]
    fn unknown_name_rejected() {
        assert!(matches!(
            catalog_algebra("filiform5"),
            Err(LieError::UnknownName(_))
        ));
    }

    #[test]
    fn specialize_fg_solv() {
        let g = catalog_algebra("fg_solv").unwrap();
        let mut b = BTreeMap::new();
        b.insert(Indeterminate::K, rat(1, 1));
        let h = g.specialize(&b);
        assert!(h.vars_present().is_empty());
        assert!(h
            .structure_constant(0, 0, 2)
            .eq_scalar(&Scalar::from_int(-1)));
    }
}
