//! Almost complex structures, the Nijenhuis tensor, and the catalog of the
//! four shipped J_t families with their reference tensor formulas.
//!
//! Sign convention throughout: N(X,Y) = [X,Y] + J[JX,Y] + J[X,JY] - [JX,JY].
//! This is -1 times the common textbook convention; all decay and vanishing
//! statements are insensitive to the global sign, and the shipped reference
//! formulas use this convention, so computed and reference components compare
//! directly.

use crate::liealg::{BasisChange, FloatLieAlgebra, LieAlgebra, LieError};
use crate::matrix::{MatrixError, ScalarMatrix};
use crate::scalar::{
    asymptotic_order, parse_scalar, print_scalar, Scalar, ScalarError,
};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AcsError {
    #[error("matrix dimension {0} is odd")]
    OddDimension(usize),
    #[error("J is not almost complex: {0} nonzero entries in J^2 + I")]
    NotAlmostComplex(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("unknown family '{0}'")]
    UnknownName(String),
    #[error("bad matrix file: {0}")]
    BadFile(String),
}

/// Outcome of the J^2 = -I test, with the nonzero entries of J^2 + I.
#[derive(Clone, Debug)]
pub struct AcsReport {
    pub ok: bool,
    pub defects: Vec<(usize, usize, Scalar)>,
}

/// True iff J^2 + I = 0 identically; defects list the failing entries.
pub fn check_acs(j: &ScalarMatrix) -> Result<AcsReport, AcsError> {
    if j.n % 2 != 0 {
        return Err(AcsError::OddDimension(j.n));
    }
    let defect = j.mul(j).add(&ScalarMatrix::identity(j.n));
    let defects = defect.nonzero_entries();
    Ok(AcsReport {
        ok: defects.is_empty(),
        defects,
    })
}

/// Float counterpart with the infinity-norm tolerance for numeric algebras.
pub fn check_acs_f64(j: &DMatrix<f64>, tol: f64) -> Result<bool, AcsError> {
    if j.nrows() % 2 != 0 || j.nrows() != j.ncols() {
        return Err(AcsError::OddDimension(j.nrows()));
    }
    let d = j * j + DMatrix::identity(j.nrows(), j.nrows());
    Ok(d.amax() <= tol)
}

/// The (1,2)-tensor N^k_{ij}, stored on i < j; skew completion implied.
#[derive(Clone, Debug)]
pub struct NijenhuisTensor {
    pub dim: usize,
    comps: BTreeMap<(usize, usize), Vec<Scalar>>,
}

impl NijenhuisTensor {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            comps: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: Vec<Scalar>) {
        assert!(i < j && j < self.dim);
        self.comps.insert((i, j), value);
    }

    /// N(X_i, X_j) as a vector, honoring skew-symmetry for i >= j.
    pub fn component(&self, i: usize, j: usize) -> Vec<Scalar> {
        if i == j {
            return vec![Scalar::zero(); self.dim];
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        let v = self
            .comps
            .get(&key)
            .cloned()
            .unwrap_or_else(|| vec![Scalar::zero(); self.dim]);
        if flip {
            v.iter().map(|x| x.neg()).collect()
        } else {
            v
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.dim;
        (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
    }

    pub fn is_zero(&self) -> bool {
        self.pairs()
            .all(|(i, j)| self.component(i, j).iter().all(|x| x.is_zero()))
    }
}

/// Nijenhuis tensor of J on g, computed exactly from the defining formula.
pub fn nijenhuis(g: &LieAlgebra, j: &ScalarMatrix) -> Result<NijenhuisTensor, AcsError> {
    let n = g.dim();
    if j.n != n {
        return Err(AcsError::DimensionMismatch(format!(
            "J is {}x{} on a dim-{} algebra",
            j.n, j.n, n
        )));
    }
    let acs = check_acs(j)?;
    if !acs.ok {
        return Err(AcsError::NotAlmostComplex(acs.defects.len()));
    }
    let e = |i: usize| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    };
    let jcol = |i: usize| -> Vec<Scalar> { (0..n).map(|r| j.at(r, i).clone()).collect() };
    let mut out = NijenhuisTensor::new(n);
    for i in 0..n {
        for jj in (i + 1)..n {
            let t1 = g.bracket(&e(i), &e(jj))?;
            let t2 = j.apply(&g.bracket(&jcol(i), &e(jj))?);
            let t3 = j.apply(&g.bracket(&e(i), &jcol(jj))?);
            let t4 = g.bracket(&jcol(i), &jcol(jj))?;
            let comp: Vec<Scalar> = (0..n)
                .map(|m| t1[m].add(&t2[m]).add(&t3[m]).sub(&t4[m]))
                .collect();
            out.set(i, jj, comp);
        }
    }
    Ok(out)
}

/// Float Nijenhuis components, one vector per (i, j) pair with i < j.
pub fn nijenhuis_f64(
    g: &FloatLieAlgebra,
    j: &DMatrix<f64>,
) -> Result<Vec<((usize, usize), Vec<f64>)>, AcsError> {
    let n = g.dim();
    if j.nrows() != n || j.ncols() != n {
        return Err(AcsError::DimensionMismatch(format!(
            "J is {}x{} on a dim-{} algebra",
            j.nrows(),
            j.ncols(),
            n
        )));
    }
    let e = |i: usize| -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    };
    let jcol = |i: usize| -> Vec<f64> { (0..n).map(|r| j[(r, i)]).collect() };
    let japply = |v: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|r| (0..n).map(|c| j[(r, c)] * v[c]).sum())
            .collect()
    };
    let mut out = Vec::new();
    for i in 0..n {
        for jj in (i + 1)..n {
            let t1 = g.bracket(&e(i), &e(jj));
            let t2 = japply(&g.bracket(&jcol(i), &e(jj)));
            let t3 = japply(&g.bracket(&e(i), &jcol(jj)));
            let t4 = g.bracket(&jcol(i), &jcol(jj));
            let comp: Vec<f64> = (0..n).map(|m| t1[m] + t2[m] + t3[m] - t4[m]).collect();
            out.push(((i, jj), comp));
        }
    }
    Ok(out)
}

/// True iff the Nijenhuis tensor vanishes identically.
pub fn is_integrable(g: &LieAlgebra, j: &ScalarMatrix) -> Result<bool, AcsError> {
    Ok(nijenhuis(g, j)?.is_zero())
}

/// V^-1 J V; conjugation preserves the almost-complex property.
pub fn conjugate(j: &ScalarMatrix, v: &BasisChange) -> Result<ScalarMatrix, AcsError> {
    if j.n != v.matrix().n {
        return Err(AcsError::DimensionMismatch(
            "conjugation shapes differ".into(),
        ));
    }
    Ok(v.inverse_matrix().mul(j).mul(v.matrix()))
}

// ---------------------------------------------------------------------------
// Family catalog
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayKind {
    /// Norm decays like e^{-t} (csch t entries).
    ExponentialInT,
    /// Norm decays like a power of t.
    PowerInT,
}

impl DecayKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DecayKind::ExponentialInT => "exponential_in_t",
            DecayKind::PowerInT => "power_in_t",
        }
    }
}

/// One catalog family: the algebra, the J_t (or K_t) matrix, and the
/// reference Nijenhuis components as shipped data.
#[derive(Clone, Debug)]
pub struct FamilyCatalogEntry {
    pub name: &'static str,
    pub algebra: LieAlgebra,
    pub j: ScalarMatrix,
    pub reference_n: NijenhuisTensor,
    pub decay_kind: DecayKind,
    /// Human note on where the matrix lives (e.g. K_t acts in the
    /// diagonalized basis for the Hasegawa family).
    pub note: &'static str,
}

struct FamilyData {
    name: &'static str,
    j_json: &'static str,
    n_json: &'static str,
    decay: DecayKind,
    note: &'static str,
}

const FAMILY_DATA: [FamilyData; 4] = [
    FamilyData {
        name: "filiform4",
        j_json: include_str!("../data/filiform4_j.json"),
        n_json: include_str!("../data/filiform4_n.json"),
        decay: DecayKind::ExponentialInT,
        note: "4d filiform nilpotent; J_t entries in s = sinh t",
    },
    FamilyData {
        name: "filiform6",
        j_json: include_str!("../data/filiform6_j.json"),
        n_json: include_str!("../data/filiform6_n.json"),
        decay: DecayKind::PowerInT,
        note: "6d filiform nilpotent; rational in t with sqrt3 coefficients",
    },
    FamilyData {
        name: "fg_solv",
        j_json: include_str!("../data/fg_solv_j.json"),
        n_json: include_str!("../data/fg_solv_n.json"),
        decay: DecayKind::PowerInT,
        note: "Fernandez-Gray solvable algebra; symbolic parameter k != 0",
    },
    FamilyData {
        name: "hasegawa",
        j_json: include_str!("../data/hasegawa_j.json"),
        n_json: include_str!("../data/hasegawa_n.json"),
        decay: DecayKind::PowerInT,
        note: "Hasegawa solvable family; K_t in the diagonalized basis with eigen-logs l1, l2",
    },
];

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    dim: usize,
    rows: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct ComponentEntry {
    i: usize,
    j: usize,
    coeffs: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct ComponentFile {
    dim: usize,
    components: Vec<ComponentEntry>,
}

/// Parse the JSON J matrix format `{"dim": n, "rows": [["<scalar>", ...]]}`.
pub fn matrix_from_json(text: &str) -> Result<ScalarMatrix, AcsError> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| AcsError::BadFile(e.to_string()))?;
    if file.rows.len() != file.dim || file.rows.iter().any(|r| r.len() != file.dim) {
        return Err(AcsError::BadFile("rows do not match dim".into()));
    }
    let mut rows = Vec::new();
    for r in &file.rows {
        let mut row = Vec::new();
        for cell in r {
            row.push(parse_scalar(cell)?);
        }
        rows.push(row);
    }
    Ok(ScalarMatrix::from_rows(rows)?)
}

pub fn matrix_to_json(m: &ScalarMatrix) -> String {
    let rows: Vec<Vec<String>> = (0..m.n)
        .map(|i| (0..m.n).map(|j| print_scalar(m.at(i, j))).collect())
        .collect();
    serde_json::to_string_pretty(&MatrixFile { dim: m.n, rows }).expect("serialize")
}

fn tensor_from_json(text: &str) -> Result<NijenhuisTensor, AcsError> {
    let file: ComponentFile =
        serde_json::from_str(text).map_err(|e| AcsError::BadFile(e.to_string()))?;
    let mut t = NijenhuisTensor::new(file.dim);
    for c in &file.components {
        if c.i == 0 || c.i >= c.j || c.j > file.dim {
            return Err(AcsError::BadFile(format!(
                "component indices ({}, {}) must satisfy 1 <= i < j <= dim",
                c.i, c.j
            )));
        }
        let mut v = vec![Scalar::zero(); file.dim];
        for (k, txt) in &c.coeffs {
            let k: usize = k
                .parse()
                .map_err(|_| AcsError::BadFile(format!("bad component index '{k}'")))?;
            if k == 0 || k > file.dim {
                return Err(AcsError::BadFile(format!("component index {k} out of range")));
            }
            v[k - 1] = parse_scalar(txt)?;
        }
        t.set(c.i - 1, c.j - 1, v);
    }
    Ok(t)
}

pub fn catalog_family(name: &str) -> Result<FamilyCatalogEntry, AcsError> {
    let data = FAMILY_DATA
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| AcsError::UnknownName(name.to_string()))?;
    Ok(FamilyCatalogEntry {
        name: data.name,
        algebra: crate::liealg::catalog_algebra(data.name)?,
        j: matrix_from_json(data.j_json)?,
        reference_n: tensor_from_json(data.n_json)?,
        decay_kind: data.decay,
        note: data.note,
    })
}

pub fn catalog_family_names() -> Vec<&'static str> {
    FAMILY_DATA.iter().map(|d| d.name).collect()
}

/// Raw data texts of every shipped matrix entry and reference formula, for
/// round-trip checks and external consumption.
pub fn catalog_scalar_texts() -> Vec<String> {
    let mut out = Vec::new();
    for data in &FAMILY_DATA {
        let jf: MatrixFile = serde_json::from_str(data.j_json).expect("catalog data");
        out.extend(jf.rows.into_iter().flatten());
        let nf: ComponentFile = serde_json::from_str(data.n_json).expect("catalog data");
        for c in nf.components {
            out.extend(c.coeffs.into_values());
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Family verification
// ---------------------------------------------------------------------------

/// Per-component verdict in a family verification report.
#[derive(Clone, Debug)]
pub struct ComponentVerdict {
    /// 1-based pair (i, j).
    pub i: usize,
    pub j: usize,
    /// Symbolic match against the shipped reference formula.
    pub matches_reference: bool,
    /// Which basis coefficients disagree (1-based), when any.
    pub mismatched_coeffs: Vec<usize>,
    /// (s_order, t_order) of each nonzero coefficient of the computed
    /// component, and whether all of them tend to zero.
    pub orders: Vec<(usize, (i64, i64))>,
    pub tends_to_zero: bool,
}

#[derive(Clone, Debug)]
pub struct NumericCheck {
    pub t: f64,
    pub max_abs_diff: f64,
    pub max_rel_diff: f64,
    pub acs_defect: f64,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub name: String,
    /// J^2 = -I identically in all indeterminates.
    pub acs_ok: bool,
    /// Overall sign relating the shipped reference list to the recomputed
    /// tensor: +1 when they agree as printed, -1 when the reference list as a
    /// whole is the negative of the recomputation (the source lists for the
    /// 6d and solvable families are written in the opposite convention).
    pub reference_sign: i32,
    pub components: Vec<ComponentVerdict>,
    pub numeric: Vec<NumericCheck>,
    /// All components match sign * reference.
    pub all_match: bool,
    /// Every nonzero component decays as t -> infinity.
    pub all_decay: bool,
}

/// Relative tolerance for numeric comparisons, with an absolute floor where
/// components decay toward zero.
pub const NUMERIC_REL_TOL: f64 = 1e-9;
pub const NUMERIC_ABS_FLOOR: f64 = 1e-12;

/// Verify one catalog family: J^2 = -I identically, recomputed N_t against
/// the shipped reference componentwise, decay certification, and optional
/// numeric cross-checks at given t values. Mismatches are reported, not
/// raised.
pub fn verify_family(name: &str, t_values: &[f64]) -> Result<FamilyReport, AcsError> {
    let fam = catalog_family(name)?;
    let acs = check_acs(&fam.j)?;
    let computed = nijenhuis(&fam.algebra, &fam.j)?;

    // Determine the overall sign convention of the reference list from the
    // first coefficient that is nonzero on both sides.
    let mut reference_sign = 1i32;
    'outer: for (i, j) in computed.pairs() {
        let got = computed.component(i, j);
        let want = fam.reference_n.component(i, j);
        for k in 0..fam.algebra.dim() {
            if got[k].is_zero() || want[k].is_zero() {
                continue;
            }
            if got[k].eq_scalar(&want[k].neg()) && !got[k].eq_scalar(&want[k]) {
                reference_sign = -1;
            }
            break 'outer;
        }
    }

    let mut components = Vec::new();
    let mut all_match = true;
    let mut all_decay = true;
    for (i, j) in computed.pairs() {
        let got = computed.component(i, j);
        let want: Vec<Scalar> = fam
            .reference_n
            .component(i, j)
            .iter()
            .map(|x| if reference_sign < 0 { x.neg() } else { x.clone() })
            .collect();
        let mut mismatched = Vec::new();
        for k in 0..fam.algebra.dim() {
            if !got[k].eq_scalar(&want[k]) {
                mismatched.push(k + 1);
            }
        }
        let mut orders = Vec::new();
        let mut decays = true;
        for (k, comp) in got.iter().enumerate() {
            if comp.is_zero() {
                continue;
            }
            let ord = asymptotic_order(comp)?;
            decays &= ord < (0, 0);
            orders.push((k + 1, ord));
        }
        all_match &= mismatched.is_empty();
        all_decay &= decays;
        components.push(ComponentVerdict {
            i: i + 1,
            j: j + 1,
            matches_reference: mismatched.is_empty(),
            mismatched_coeffs: mismatched,
            orders,
            tends_to_zero: decays,
        });
    }

    // Numeric mode: specialize every indeterminate to an exact rational
    // sample (s gets the f64-exact rational of sinh t; the identities hold
    // identically in s, so any binding certifies them) and compare exactly,
    // converting to floats only for reporting. Generic nonzero values for the
    // parameters k, l1, l2.
    let mut numeric = Vec::new();
    for &t in t_values {
        use crate::scalar::{rat, Indeterminate, Rational};
        let mut b = BTreeMap::new();
        b.insert(Indeterminate::T, Rational::from_float(t).expect("finite t"));
        b.insert(
            Indeterminate::S,
            Rational::from_float(t.sinh()).expect("finite sinh t"),
        );
        b.insert(Indeterminate::K, rat(1, 1));
        b.insert(Indeterminate::L1, rat(7, 10));
        b.insert(Indeterminate::L2, rat(-1, 5));
        let jt = ScalarMatrix::from_fn(fam.j.n, |i, j| {
            fam.j.at(i, j).specialize(&b).expect("sample point hit a pole")
        });
        let defect = jt.mul(&jt).add(&ScalarMatrix::identity(jt.n));
        let acs_defect = defect
            .nonzero_entries()
            .iter()
            .map(|(_, _, v)| v.to_f64_constant().unwrap_or(f64::NAN).abs())
            .fold(0.0, f64::max);
        let mut max_abs = 0.0f64;
        let mut max_rel = 0.0f64;
        for (i, j) in computed.pairs() {
            let got = computed.component(i, j);
            let want = fam.reference_n.component(i, j);
            for k in 0..fam.algebra.dim() {
                let gv = got[k].specialize(&b)?;
                let mut wv = want[k].specialize(&b)?;
                if reference_sign < 0 {
                    wv = wv.neg();
                }
                let diff = gv.sub(&wv).to_f64_constant().unwrap_or(f64::NAN).abs();
                max_abs = max_abs.max(diff);
                let scale = gv
                    .to_f64_constant()
                    .unwrap_or(f64::NAN)
                    .abs()
                    .max(wv.to_f64_constant().unwrap_or(f64::NAN).abs());
                if scale > NUMERIC_ABS_FLOOR {
                    max_rel = max_rel.max(diff / scale);
                }
            }
        }
        numeric.push(NumericCheck {
            t,
            max_abs_diff: max_abs,
            max_rel_diff: max_rel,
            acs_defect,
            ok: acs_defect <= 1e-10 && (max_rel <= NUMERIC_REL_TOL || max_abs <= NUMERIC_ABS_FLOOR),
        });
    }

    Ok(FamilyReport {
        name: name.to_string(),
        acs_ok: acs.ok,
        reference_sign,
        components,
        numeric,
        all_match,
        all_decay,
    })
}
