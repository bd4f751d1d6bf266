//! Left-invariant exterior forms on a Lie algebra, the Chevalley-Eilenberg
//! differential, exact Betti numbers, and symplectic / almost-Kahler checks.
//!
//! A form of degree p is stored as coefficients on strictly increasing
//! multi-indices; wedge products re-sort with the sign of the permutation.
//! Betti numbers come from exact elimination over Q(sqrt2, sqrt3), never from
//! a numeric rank tolerance, so they are integers by construction. For
//! nilpotent algebras (Nomizu) and completely solvable ones (Hattori) these
//! equal the de Rham Betti numbers of the compact quotient; everything here
//! is the Lie-algebra side of that correspondence.

use crate::acstruct::{check_acs, AcsError};
use crate::liealg::LieAlgebra;
use crate::matrix::ScalarMatrix;
use crate::scalar::{
    evaluate_f64, parse_scalar, print_scalar, AlgebraicNumber, Bindings, Indeterminate, Scalar,
    ScalarError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("expected a form of degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("structure constants still contain {0:?}; specialize them first")]
    SymbolicCoefficients(Vec<Indeterminate>),
    #[error("J is not an almost complex structure")]
    NotAlmostComplex,
    #[error("neither sign convention for the induced 2-form validates")]
    NoValidConvention,
    #[error("bad form file: {0}")]
    BadFile(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Acs(#[from] AcsError),
}

/// Exterior form with [`Scalar`] coefficients on increasing multi-indices.
///
/// Indices are 0-based internally; the JSON interchange format is 1-based to
/// match the x_1, ..., x_n naming used everywhere else.
#[derive(Clone, Debug)]
pub struct ExteriorForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

/// Sort indices increasingly, tracking the permutation sign.
/// Returns None when an index repeats (the wedge term vanishes).
fn sort_with_sign(mut idx: Vec<usize>) -> Option<(Vec<usize>, i32)> {
    let mut sign = 1i32;
    // Insertion sort; swap count parity is all we need at these lengths.
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((idx, sign))
    }
}

impl ExteriorForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The basis form x_{i1} ^ ... ^ x_{ip} (0-based, any order, sign fixed).
    pub fn basis(dim: usize, idx: &[usize]) -> Result<Self, FormError> {
        Self::term(dim, idx, Scalar::one())
    }

    /// A single term c * x_{i1} ^ ... ^ x_{ip}.
    pub fn term(dim: usize, idx: &[usize], coeff: Scalar) -> Result<Self, FormError> {
        if idx.iter().any(|&i| i >= dim) {
            return Err(FormError::DimensionMismatch(format!(
                "index out of range for dimension {dim}"
            )));
        }
        let mut out = Self::zero(dim, idx.len());
        match sort_with_sign(idx.to_vec()) {
            None => {}
            Some((sorted, sign)) => {
                let c = if sign < 0 { coeff.neg() } else { coeff };
                out.insert(sorted, c);
            }
        }
        Ok(out)
    }

    /// The constant function 1 as a 0-form.
    pub fn one(dim: usize) -> Self {
        let mut out = Self::zero(dim, 0);
        out.insert(Vec::new(), Scalar::one());
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    /// Coefficient of the given increasing multi-index.
    pub fn coeff(&self, idx: &[usize]) -> Scalar {
        self.terms.get(idx).cloned().unwrap_or_else(Scalar::zero)
    }

    fn insert(&mut self, idx: Vec<usize>, c: Scalar) {
        debug_assert_eq!(idx.len(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &ExteriorForm) -> Result<ExteriorForm, FormError> {
        if self.dim != rhs.dim || self.degree != rhs.degree {
            return Err(FormError::DimensionMismatch(
                "form addition needs equal dimension and degree".into(),
            ));
        }
        let mut out = self.clone();
        for (idx, c) in &rhs.terms {
            out.insert(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &ExteriorForm) -> Result<ExteriorForm, FormError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> ExteriorForm {
        let mut out = ExteriorForm::zero(self.dim, self.degree);
        for (idx, c) in &self.terms {
            out.insert(idx.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> ExteriorForm {
        let mut out = ExteriorForm::zero(self.dim, self.degree);
        for (idx, c0) in &self.terms {
            out.insert(idx.clone(), c0.mul(c));
        }
        out
    }

    pub fn wedge(&self, rhs: &ExteriorForm) -> Result<ExteriorForm, FormError> {
        if self.dim != rhs.dim {
            return Err(FormError::DimensionMismatch(
                "wedge factors live on different algebras".into(),
            ));
        }
        let mut out = ExteriorForm::zero(self.dim, self.degree + rhs.degree);
        if out.degree > self.dim {
            return Ok(out);
        }
        for (i1, c1) in &self.terms {
            for (i2, c2) in &rhs.terms {
                let mut idx = i1.clone();
                idx.extend_from_slice(i2);
                if let Some((sorted, sign)) = sort_with_sign(idx) {
                    let c = c1.mul(c2);
                    out.insert(sorted, if sign < 0 { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn wedge_pow(&self, k: usize) -> Result<ExteriorForm, FormError> {
        let mut out = ExteriorForm::one(self.dim);
        for _ in 0..k {
            out = out.wedge(self)?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn eq_form(&self, rhs: &ExteriorForm) -> bool {
        self.dim == rhs.dim
            && self.degree == rhs.degree
            && self.sub(rhs).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Value of a 2-form on the basis pair (X_i, X_j).
    pub fn value_on_basis_pair(&self, i: usize, j: usize) -> Result<Scalar, FormError> {
        if self.degree != 2 {
            return Err(FormError::WrongDegree {
                expected: 2,
                got: self.degree,
            });
        }
        Ok(match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeff(&[i, j]),
            std::cmp::Ordering::Equal => Scalar::zero(),
            std::cmp::Ordering::Greater => self.coeff(&[j, i]).neg(),
        })
    }

    pub fn vars_present(&self) -> Vec<Indeterminate> {
        let mut vars = Vec::new();
        for c in self.terms.values() {
            for v in c.vars_present() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        vars.sort();
        vars
    }
}

impl std::fmt::Display for ExteriorForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = idx.iter().map(|i| format!("x{}", i + 1)).collect();
            if idx.is_empty() {
                write!(f, "({})", print_scalar(c))?;
            } else {
                write!(f, "({})*{}", print_scalar(c), mono.join("^"))?;
            }
        }
        Ok(())
    }
}

/// d x^k = -sum_{i<j} c^k_{ij} x^i ^ x^j for a dual basis 1-form.
fn d_dual_one_form(g: &LieAlgebra, k: usize) -> ExteriorForm {
    let n = g.dim();
    let mut out = ExteriorForm::zero(n, 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let c = g.structure_constant(k, i, j);
            if !c.is_zero() {
                out.insert(vec![i, j], c.neg());
            }
        }
    }
    out
}

/// Chevalley-Eilenberg differential, extended from (d alpha)(X,Y) = -alpha([X,Y])
/// on 1-forms as an antiderivation: d(x^i ^ beta) = d(x^i) ^ beta - x^i ^ d(beta).
pub fn ce_differential(g: &LieAlgebra, alpha: &ExteriorForm) -> Result<ExteriorForm, FormError> {
    let n = g.dim();
    if alpha.dim != n {
        return Err(FormError::DimensionMismatch(format!(
            "form on dimension {} vs algebra of dimension {}",
            alpha.dim, n
        )));
    }
    let mut out = ExteriorForm::zero(n, alpha.degree + 1);
    for (idx, c) in &alpha.terms {
        for (m, &k) in idx.iter().enumerate() {
            // d hits factor m; the leading sign is (-1)^m from moving d past
            // the first m one-form factors.
            let rest: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|(pos, _)| *pos != m)
                .map(|(_, &i)| i)
                .collect();
            let dfactor = d_dual_one_form(g, k);
            let rest_form = ExteriorForm::basis(n, &rest)?;
            let piece = dfactor.wedge(&rest_form)?;
            let signed = if m % 2 == 1 { c.neg() } else { c.clone() };
            out = out.add(&piece.scale(&signed))?;
        }
    }
    Ok(out)
}

/// Increasing p-element multi-indices of {0, ..., n-1} in lexicographic order.
pub fn multi_indices(n: usize, p: usize) -> Vec<Vec<usize>> {
    if p > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..p).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next combination.
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - p {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in (i + 1)..p {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The full Chevalley-Eilenberg complex of an algebra: bases of each
/// Lambda^p g* and the matrices of d_p in those bases.
pub struct CochainComplex {
    dim: usize,
    bases: Vec<Vec<Vec<usize>>>,
    /// d[p] maps Lambda^p to Lambda^{p+1}; rows indexed by the (p+1)-basis,
    /// columns by the p-basis. d[n] is the zero map with no rows.
    d: Vec<Vec<Vec<Scalar>>>,
}

impl CochainComplex {
    pub fn new(g: &LieAlgebra) -> Result<Self, FormError> {
        let n = g.dim();
        let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|p| multi_indices(n, p)).collect();
        let mut d = Vec::with_capacity(n + 1);
        for p in 0..=n {
            let rows = if p + 1 <= n { bases[p + 1].len() } else { 0 };
            let cols = bases[p].len();
            let mut mat = vec![vec![Scalar::zero(); cols]; rows];
            if rows > 0 {
                let row_of: BTreeMap<&Vec<usize>, usize> = bases[p + 1]
                    .iter()
                    .enumerate()
                    .map(|(r, idx)| (idx, r))
                    .collect();
                for (col, idx) in bases[p].iter().enumerate() {
                    let img = ce_differential(g, &ExteriorForm::basis(n, idx)?)?;
                    for (out_idx, c) in img.terms() {
                        mat[row_of[out_idx]][col] = c.clone();
                    }
                }
            }
            d.push(mat);
        }
        Ok(Self { dim: n, bases, d })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self, p: usize) -> &[Vec<usize>] {
        &self.bases[p]
    }

    pub fn d_matrix(&self, p: usize) -> &Vec<Vec<Scalar>> {
        &self.d[p]
    }

    /// Exact check that d_{p+1} d_p = 0 for every p.
    pub fn d_squared_is_zero(&self) -> bool {
        for p in 0..self.dim {
            let a = &self.d[p + 1]; // rows x mid
            let b = &self.d[p]; // mid x cols
            for row in a {
                for col in 0..self.bases[p].len() {
                    let mut acc = Scalar::zero();
                    for (m, am) in row.iter().enumerate() {
                        acc = acc.add(&am.mul(&b[m][col]));
                    }
                    if !acc.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Gauss-Jordan over the exact coefficient field; returns pivot columns.
/// Rows are reduced in place to reduced echelon form.
fn rref(rows: &mut Vec<Vec<AlgebraicNumber>>) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = &rows[r][j] * &f;
                    rows[i][j] = &rows[i][j] - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduce one vector against rows already in reduced echelon form.
fn reduce_against(v: &mut [AlgebraicNumber], rows: &[Vec<AlgebraicNumber>], pivots: &[usize]) {
    for (row, &p) in rows.iter().zip(pivots) {
        if !v[p].is_zero() {
            let f = v[p].clone();
            for j in 0..v.len() {
                let delta = &row[j] * &f;
                v[j] = &v[j] - &delta;
            }
        }
    }
}

fn exact_matrix(m: &[Vec<Scalar>]) -> Vec<Vec<AlgebraicNumber>> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|s| s.as_algnum().expect("constant entry"))
                .collect()
        })
        .collect()
}

fn require_constant(g: &LieAlgebra) -> Result<(), FormError> {
    let vars = g.vars_present();
    if vars.is_empty() {
        Ok(())
    } else {
        Err(FormError::SymbolicCoefficients(vars))
    }
}

/// Betti numbers b_0, ..., b_n by exact elimination: b_p = dim ker d_p - rank d_{p-1}.
pub fn betti_numbers(g: &LieAlgebra) -> Result<Vec<usize>, FormError> {
    require_constant(g)?;
    let complex = CochainComplex::new(g)?;
    let n = g.dim();
    let mut ranks = vec![0usize; n + 1]; // rank of d_p
    for p in 0..=n {
        let mut m = exact_matrix(complex.d_matrix(p));
        ranks[p] = rref(&mut m).len();
    }
    let mut betti = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let cols = complex.basis(p).len();
        let below = if p == 0 { 0 } else { ranks[p - 1] };
        betti.push(cols - ranks[p] - below);
    }
    Ok(betti)
}

/// Closed p-forms whose classes form a basis of H^p, in reduced echelon form
/// of the kernel basis (pivot-first ordering) after quotienting the image.
pub fn cohomology_generators(g: &LieAlgebra, p: usize) -> Result<Vec<ExteriorForm>, FormError> {
    require_constant(g)?;
    let n = g.dim();
    if p > n {
        return Err(FormError::DimensionMismatch(format!(
            "degree {p} exceeds dimension {n}"
        )));
    }
    let complex = CochainComplex::new(g)?;
    let cols = complex.basis(p).len();

    // Kernel of d_p: free columns of its reduced echelon form.
    let mut dp = exact_matrix(complex.d_matrix(p));
    let pivots = rref(&mut dp);
    let mut kernel: Vec<Vec<AlgebraicNumber>> = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![AlgebraicNumber::zero(); cols];
        v[free] = AlgebraicNumber::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&dp[r][free];
        }
        kernel.push(v);
    }

    // Image of d_{p-1} as reduced rows, then kill it inside the kernel.
    let mut image: Vec<Vec<AlgebraicNumber>> = Vec::new();
    if p > 0 {
        let dprev = exact_matrix(complex.d_matrix(p - 1));
        let prev_cols = complex.basis(p - 1).len();
        for c in 0..prev_cols {
            image.push((0..cols).map(|r| dprev[r][c].clone()).collect());
        }
    }
    let image_pivots = rref(&mut image);
    let image_rows: Vec<Vec<AlgebraicNumber>> = image.into_iter().take(image_pivots.len()).collect();

    for v in kernel.iter_mut() {
        reduce_against(v, &image_rows, &image_pivots);
    }
    let reps = rref(&mut kernel).len();
    kernel.truncate(reps);

    let mut out = Vec::with_capacity(reps);
    for v in kernel {
        let mut form = ExteriorForm::zero(n, p);
        for (c, coeff) in v.into_iter().enumerate() {
            if !coeff.is_zero() {
                form.insert(complex.basis(p)[c].clone(), Scalar::from_algnum(coeff));
            }
        }
        out.push(form);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticReport {
    pub closed: bool,
    pub nondegenerate: bool,
}

/// Closedness and nondegeneracy of a 2-form, both decided exactly.
/// Nondegeneracy is read off the top wedge power omega^{n/2}.
pub fn symplectic_check(
    g: &LieAlgebra,
    omega: &ExteriorForm,
) -> Result<SymplecticReport, FormError> {
    if omega.degree != 2 {
        return Err(FormError::WrongDegree {
            expected: 2,
            got: omega.degree,
        });
    }
    if omega.dim != g.dim() {
        return Err(FormError::DimensionMismatch(format!(
            "2-form on dimension {} vs algebra of dimension {}",
            omega.dim,
            g.dim()
        )));
    }
    let closed = ce_differential(g, omega)?.is_zero();
    let n = g.dim();
    let nondegenerate = n % 2 == 0 && !omega.wedge_pow(n / 2)?.is_zero();
    Ok(SymplecticReport {
        closed,
        nondegenerate,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AlmostKahlerReport {
    pub closed: bool,
    pub nondegenerate: bool,
    pub compatible: bool,
    pub taming: bool,
    /// Basis pairs (i, j), 0-based, where omega(JX_i, JX_j) != omega(X_i, X_j).
    pub incompatible_pairs: Vec<(usize, usize)>,
}

impl AlmostKahlerReport {
    pub fn all_pass(&self) -> bool {
        self.closed && self.nondegenerate && self.compatible && self.taming
    }
}

/// Full almost-Kahler verification: symplectic checks plus compatibility
/// omega(Jx, Jy) = omega(x, y) (exact, on all basis pairs) and taming
/// omega(x, Jx) > 0 on seeded random nonzero vectors (numeric, at the given
/// bindings for any indeterminates).
pub fn almost_kahler_check(
    g: &LieAlgebra,
    omega: &ExteriorForm,
    j: &ScalarMatrix,
    bindings: &Bindings,
    seed: u64,
) -> Result<AlmostKahlerReport, FormError> {
    let n = g.dim();
    if j.n != n || omega.dim != n {
        return Err(FormError::DimensionMismatch(
            "omega, J, and the algebra must share one dimension".into(),
        ));
    }
    if !check_acs(j)?.ok {
        return Err(FormError::NotAlmostComplex);
    }
    let symp = symplectic_check(g, omega)?;

    // Compatibility, exactly: omega(JX_i, JX_j) = sum_{k,l} J_ki J_lj omega(X_k, X_l).
    let mut incompatible = Vec::new();
    for i in 0..n {
        for jj in (i + 1)..n {
            let mut lhs = Scalar::zero();
            for k in 0..n {
                for l in 0..n {
                    let w = omega.value_on_basis_pair(k, l)?;
                    if w.is_zero() {
                        continue;
                    }
                    lhs = lhs.add(&j.at(k, i).mul(j.at(l, jj)).mul(&w));
                }
            }
            if !lhs.eq_scalar(&omega.coeff(&[i, jj])) {
                incompatible.push((i, jj));
            }
        }
    }

    // Taming, numerically at the bindings: omega(x, Jx) > 0 with one uniform
    // sign across all samples.
    let mut w = vec![vec![0.0f64; n]; n];
    let mut jf = vec![vec![0.0f64; n]; n];
    for a in 0..n {
        for b in 0..n {
            w[a][b] = evaluate_f64(&omega.value_on_basis_pair(a, b)?, bindings)?;
            jf[a][b] = evaluate_f64(j.at(a, b), bindings)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut taming = true;
    for _ in 0..100 {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm2: f64 = x.iter().map(|v| v * v).sum();
        if norm2 < 1e-12 {
            continue;
        }
        let jx: Vec<f64> = (0..n)
            .map(|a| (0..n).map(|b| jf[a][b] * x[b]).sum())
            .collect();
        let val: f64 = (0..n)
            .map(|a| (0..n).map(|b| w[a][b] * x[a] * jx[b]).sum::<f64>())
            .sum();
        if val <= 0.0 {
            taming = false;
        }
    }

    Ok(AlmostKahlerReport {
        closed: symp.closed,
        nondegenerate: symp.nondegenerate,
        compatible: incompatible.is_empty(),
        taming,
        incompatible_pairs: incompatible,
    })
}

/// Which argument of the induced bilinear form J is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OmegaConvention {
    /// omega(x, y) = sum_i x^i(Jx) x^i(y), antisymmetrized.
    JFirst,
    /// omega(x, y) = sum_i x^i(x) x^i(Jy), antisymmetrized.
    JSecond,
}

/// The 2-form sum_i x_i ^ (x_i o J) under the chosen dual-action convention;
/// the two conventions differ by a global sign.
pub fn omega_from_acs(j: &ScalarMatrix, conv: OmegaConvention) -> ExteriorForm {
    let n = j.n;
    let mut out = ExteriorForm::zero(n, 2);
    for k in 0..n {
        for l in (k + 1)..n {
            // Antisymmetrization of the raw bilinear form x^T J y (JSecond)
            // or (Jx)^T y (JFirst).
            let c = match conv {
                OmegaConvention::JSecond => {
                    j.at(k, l).sub(j.at(l, k)).mul(&Scalar::from_rational(
                        crate::scalar::rat(1, 2),
                    ))
                }
                OmegaConvention::JFirst => {
                    j.at(l, k).sub(j.at(k, l)).mul(&Scalar::from_rational(
                        crate::scalar::rat(1, 2),
                    ))
                }
            };
            out.insert(vec![k, l], c);
        }
    }
    out
}

#[derive(Debug, Serialize)]
pub struct InducedOmega {
    #[serde(skip)]
    pub form: ExteriorForm,
    pub convention: OmegaConvention,
    pub report: AlmostKahlerReport,
}

/// Build the induced 2-form from J, trying both sign conventions and keeping
/// whichever passes the full almost-Kahler check.
pub fn induced_omega(
    g: &LieAlgebra,
    j: &ScalarMatrix,
    bindings: &Bindings,
    seed: u64,
) -> Result<InducedOmega, FormError> {
    for conv in [OmegaConvention::JFirst, OmegaConvention::JSecond] {
        let form = omega_from_acs(j, conv);
        let report = almost_kahler_check(g, &form, j, bindings, seed)?;
        if report.all_pass() {
            return Ok(InducedOmega {
                form,
                convention: conv,
                report,
            });
        }
    }
    Err(FormError::NoValidConvention)
}

#[derive(Serialize, Deserialize)]
struct FormFile {
    degree: usize,
    terms: Vec<FormTermFile>,
}

#[derive(Serialize, Deserialize)]
struct FormTermFile {
    /// 1-based increasing indices.
    idx: Vec<usize>,
    coeff: String,
}

pub fn form_from_json(text: &str, dim: usize) -> Result<ExteriorForm, FormError> {
    let file: FormFile =
        serde_json::from_str(text).map_err(|e| FormError::BadFile(e.to_string()))?;
    let mut out = ExteriorForm::zero(dim, file.degree);
    for term in file.terms {
        if term.idx.len() != file.degree {
            return Err(FormError::BadFile(format!(
                "index {:?} does not have degree {}",
                term.idx, file.degree
            )));
        }
        if term.idx.iter().any(|&i| i == 0 || i > dim) {
            return Err(FormError::BadFile(format!(
                "index {:?} out of 1..={dim}",
                term.idx
            )));
        }
        let idx0: Vec<usize> = term.idx.iter().map(|&i| i - 1).collect();
        let coeff = parse_scalar(&term.coeff)?;
        out = out.add(&ExteriorForm::term(dim, &idx0, coeff)?)?;
    }
    Ok(out)
}

pub fn form_to_json(form: &ExteriorForm) -> String {
    let file = FormFile {
        degree: form.degree,
        terms: form
            .terms
            .iter()
            .map(|(idx, c)| FormTermFile {
                idx: idx.iter().map(|&i| i + 1).collect(),
                coeff: print_scalar(c),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("form serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::catalog_algebra;
    use crate::scalar::rat;

    fn x(dim: usize, idx: &[usize]) -> ExteriorForm {
        ExteriorForm::basis(dim, idx).unwrap()
    }

    #[test]
    fn wedge_signs_and_vanishing() {
        let a = x(4, &[0]);
        let b = x(4, &[1]);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        assert!(ab.eq_form(&ba.neg()));
        assert!(a.wedge(&a).unwrap().is_zero());
        // x2^x1 normalizes to -x1^x2.
        assert!(x(4, &[1, 0]).eq_form(&x(4, &[0, 1]).neg()));
    }

    #[test]
    fn filiform4_dual_differentials() {
        let g = catalog_algebra("filiform4").unwrap();
        let dx3 = ce_differential(&g, &x(4, &[2])).unwrap();
        assert!(dx3.eq_form(&x(4, &[0, 1]).neg()));
        let dx4 = ce_differential(&g, &x(4, &[3])).unwrap();
        assert!(dx4.eq_form(&x(4, &[0, 2]).neg()));
        assert!(ce_differential(&g, &x(4, &[0])).unwrap().is_zero());
    }

    #[test]
    fn fg_solv_dual_differential() {
        // [X1,X3] = -k X1, so (dx1)(X1,X3) = -x1([X1,X3]) = k.
        let g = catalog_algebra("fg_solv").unwrap();
        let dx1 = ce_differential(&g, &x(4, &[0])).unwrap();
        let want = x(4, &[0, 2]).scale(&Scalar::var(Indeterminate::K));
        assert!(dx1.eq_form(&want));
    }

    #[test]
    fn d_squared_vanishes_on_catalog() {
        for name in ["filiform4", "filiform6", "fg_solv", "hasegawa"] {
            let g = catalog_algebra(name).unwrap();
            let complex = CochainComplex::new(&g).unwrap();
            assert!(complex.d_squared_is_zero(), "d^2 != 0 for {name}");
        }
    }

    #[test]
    fn betti_filiform4_and_abelian() {
        let g = catalog_algebra("filiform4").unwrap();
        assert_eq!(betti_numbers(&g).unwrap(), vec![1, 2, 2, 2, 1]);
        let a = LieAlgebra::abelian(4);
        assert_eq!(betti_numbers(&a).unwrap(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn betti_requires_specialization() {
        let g = catalog_algebra("fg_solv").unwrap();
        assert!(matches!(
            betti_numbers(&g),
            Err(FormError::SymbolicCoefficients(_))
        ));
        let mut at = std::collections::BTreeMap::new();
        at.insert(Indeterminate::K, rat(1, 1));
        let g1 = g.specialize(&at);
        assert_eq!(betti_numbers(&g1).unwrap(), vec![1, 2, 2, 2, 1]);
    }

    #[test]
    fn betti_filiform6_duality_and_euler() {
        let g = catalog_algebra("filiform6").unwrap();
        let b = betti_numbers(&g).unwrap();
        assert_eq!(b[0], 1);
        assert_eq!(b[6], 1);
        for p in 0..=6 {
            assert_eq!(b[p], b[6 - p], "duality fails at p={p}");
        }
        let euler: i64 = b
            .iter()
            .enumerate()
            .map(|(p, &bp)| if p % 2 == 0 { bp as i64 } else { -(bp as i64) })
            .sum();
        assert_eq!(euler, 0);
    }

    #[test]
    fn hasegawa_b1_degenerates_when_a_log_vanishes() {
        let g = catalog_algebra("hasegawa").unwrap();
        let mut at = std::collections::BTreeMap::new();
        at.insert(Indeterminate::L1, rat(0, 1));
        at.insert(Indeterminate::L2, rat(1, 1));
        let degenerate = g.specialize(&at);
        assert_eq!(betti_numbers(&degenerate).unwrap()[1], 2);

        at.insert(Indeterminate::L1, rat(3, 10));
        at.insert(Indeterminate::L2, rat(2, 5));
        let generic = g.specialize(&at);
        assert_eq!(betti_numbers(&generic).unwrap()[1], 1);
    }

    #[test]
    fn filiform4_generators() {
        let g = catalog_algebra("filiform4").unwrap();
        let h1 = cohomology_generators(&g, 1).unwrap();
        assert_eq!(h1.len(), 2);
        assert!(h1[0].eq_form(&x(4, &[0])));
        assert!(h1[1].eq_form(&x(4, &[1])));
        let h2 = cohomology_generators(&g, 2).unwrap();
        assert_eq!(h2.len(), 2);
        for gen in &h2 {
            assert!(ce_differential(&g, gen).unwrap().is_zero());
        }
        // Classes of x1^x4 and x2^x3 (in some echelon-determined order).
        assert!(h2.iter().any(|f| f.eq_form(&x(4, &[0, 3]))));
        assert!(h2.iter().any(|f| f.eq_form(&x(4, &[1, 2]))));
        let top = cohomology_generators(&LieAlgebra::abelian(4), 4).unwrap();
        assert_eq!(top.len(), 1);
        assert!(top[0].eq_form(&x(4, &[0, 1, 2, 3])));
    }

    #[test]
    fn symplectic_filiform4() {
        let g = catalog_algebra("filiform4").unwrap();
        let omega = x(4, &[0, 3]).add(&x(4, &[1, 2])).unwrap();
        let rep = symplectic_check(&g, &omega).unwrap();
        assert!(rep.closed && rep.nondegenerate);

        let degenerate = x(4, &[0, 1]);
        let rep = symplectic_check(&g, &degenerate).unwrap();
        assert!(rep.closed && !rep.nondegenerate);

        let zero = ExteriorForm::zero(4, 2);
        let rep = symplectic_check(&g, &zero).unwrap();
        assert!(rep.closed && !rep.nondegenerate);
    }

    #[test]
    fn filiform6_constant_acs_is_almost_kahler() {
        // JX1 = X6, JX2 = X5, JX3 = -X4 and the induced 2-form.
        let g = catalog_algebra("filiform6").unwrap();
        let mut j = ScalarMatrix::zero(6);
        for (from, to, sign) in [
            (0, 5, 1),
            (1, 4, 1),
            (2, 3, -1),
            (5, 0, -1),
            (4, 1, -1),
            (3, 2, 1),
        ] {
            *j.at_mut(to, from) = Scalar::from_int(sign);
        }
        let bindings = Bindings::new();
        let induced = induced_omega(&g, &j, &bindings, 7).unwrap();
        assert!(induced.report.all_pass());
        // omega = x1^x6 + x2^x5 - x3^x4.
        let want = x(6, &[0, 5])
            .add(&x(6, &[1, 4]))
            .unwrap()
            .add(&x(6, &[2, 3]).neg())
            .unwrap();
        assert!(induced.form.eq_form(&want));
    }

    #[test]
    fn abelian_flat_kahler_model() {
        let g = LieAlgebra::abelian(4);
        let mut j = ScalarMatrix::zero(4);
        for (from, to, sign) in [(0, 1, 1), (1, 0, -1), (2, 3, 1), (3, 2, -1)] {
            *j.at_mut(to, from) = Scalar::from_int(sign);
        }
        let induced = induced_omega(&g, &j, &Bindings::new(), 11).unwrap();
        assert!(induced.report.all_pass());
    }

    #[test]
    fn incompatible_pair_is_reported() {
        // omega = x1^x4 + x2^x3 with the standard J0 (JX1 = X2, JX3 = X4):
        // omega(JX1, JX4) = omega(X2, -X3) = -1 but omega(X1, X4) = 1.
        let g = catalog_algebra("filiform4").unwrap();
        let omega = x(4, &[0, 3]).add(&x(4, &[1, 2])).unwrap();
        let mut j = ScalarMatrix::zero(4);
        for (from, to, sign) in [(0, 1, 1), (1, 0, -1), (2, 3, 1), (3, 2, -1)] {
            *j.at_mut(to, from) = Scalar::from_int(sign);
        }
        let report = almost_kahler_check(&g, &omega, &j, &Bindings::new(), 3).unwrap();
        assert!(!report.compatible);
        assert!(report.incompatible_pairs.contains(&(0, 3)));
        assert!(report.incompatible_pairs.contains(&(1, 2)));
    }

    #[test]
    fn taming_uses_time_bindings() {
        // A t-dependent ACS on the abelian algebra: JX1 = t X2, JX2 = -X1/t,
        // JX3 = X4, JX4 = -X3; the induced form tames it for every t > 0.
        let g = LieAlgebra::abelian(4);
        let t = Scalar::var(Indeterminate::T);
        let mut j = ScalarMatrix::zero(4);
        *j.at_mut(1, 0) = t.clone();
        *j.at_mut(0, 1) = t.inv().unwrap().neg();
        *j.at_mut(3, 2) = Scalar::one();
        *j.at_mut(2, 3) = Scalar::from_int(-1);
        let b = crate::scalar::time_bindings(3.0);
        let induced = induced_omega(&g, &j, &b, 5).unwrap();
        assert!(induced.report.all_pass());
        // Coefficient on x1^x2 is (t + 1/t)/2.
        let want = t.add(&t.inv().unwrap()).mul(&Scalar::from_rational(rat(1, 2)));
        assert!(induced.form.coeff(&[0, 1]).eq_scalar(&want));
    }

    #[test]
    fn form_json_round_trip() {
        let g = catalog_algebra("filiform4").unwrap();
        let omega = x(4, &[0, 3])
            .add(&x(4, &[1, 2]).scale(&Scalar::var(Indeterminate::K)))
            .unwrap();
        let text = form_to_json(&omega);
        let back = form_from_json(&text, g.dim()).unwrap();
        assert!(back.eq_form(&omega));
        assert!(form_from_json("{\"degree\":2,\"terms\":[{\"idx\":[0,1],\"coeff\":\"1\"}]}", 4).is_err());
    }
}
