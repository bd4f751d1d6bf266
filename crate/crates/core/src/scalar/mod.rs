//! The coefficient field: rational functions in {t, s, k, l1, l2} over
//! Q(sqrt2, sqrt3).
//!
//! A [`Scalar`] is an unreduced fraction of two polynomials. No multivariate
//! gcd is performed; equality a/b = c/d is decided as ad - bc == 0 via the
//! deterministic evaluation grid. Canonicalization is limited to stripping a
//! common monomial factor and fixing the denominator's leading sign, which
//! makes printing deterministic.

pub mod algnum;
pub mod parse;
pub mod poly;

pub use algnum::{rat, AlgebraicNumber, Rational};
pub use parse::{parse_scalar, print_scalar};
pub use poly::{Indeterminate, Poly, ALL_VARS, NVARS};

use num::{ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("division by a scalar that is identically zero")]
    DivisionByZero,
    #[error("denominator evaluates to zero")]
    PoleError,
    #[error("indeterminate '{0}' is unbound")]
    UnboundIndeterminate(&'static str),
    #[error("asymptotic order of the zero scalar is undefined")]
    ZeroInput,
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown symbol '{name}' at byte {pos}")]
    UnknownSymbol { pos: usize, name: String },
}

/// Element of the fraction field, kept as an unreduced numerator/denominator
/// pair. The denominator is never the zero polynomial.
#[derive(Clone, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero_by_grid() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut s = Self { num, den };
        s.normalize();
        Ok(s)
    }

    pub fn from_poly(num: Poly) -> Self {
        Self {
            num,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Poly::constant(AlgebraicNumber::from_int(n)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_poly(Poly::constant(AlgebraicNumber::from_rational(r)))
    }

    pub fn from_algnum(x: AlgebraicNumber) -> Self {
        Self::from_poly(Poly::constant(x))
    }

    pub fn var(v: Indeterminate) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Strip a common monomial factor and make the denominator's leading
    /// coefficient positive.
    fn normalize(&mut self) {
        if self.num.is_structurally_zero() {
            self.den = Poly::one();
            return;
        }
        let mn = self.num.min_exps();
        let md = self.den.min_exps();
        let mut common = [0u16; NVARS];
        let mut any = false;
        for i in 0..NVARS {
            common[i] = mn[i].min(md[i]);
            any |= common[i] > 0;
        }
        if any {
            self.num = self.num.shift_down(&common);
            self.den = self.den.shift_down(&common);
        }
        if self.den.lead_sign() < 0 {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero_by_grid()
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        let mut s = Scalar {
            num: self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            den: self.den.mul(&rhs.den),
        };
        s.normalize();
        s
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        let mut s = Scalar {
            num: self.num.mul(&rhs.num),
            den: self.den.mul(&rhs.den),
        };
        s.normalize();
        s
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut s = Scalar {
            num: self.num.mul(&rhs.den),
            den: self.den.mul(&rhs.num),
        };
        s.normalize();
        Ok(s)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        Scalar::one().div(self)
    }

    pub fn scale_int(&self, n: i64) -> Scalar {
        self.mul(&Scalar::from_int(n))
    }

    /// Equality in the fraction field: ad - bc identically zero.
    pub fn eq_scalar(&self, rhs: &Scalar) -> bool {
        self.num
            .mul(&rhs.den)
            .sub(&rhs.num.mul(&self.den))
            .is_zero_by_grid()
    }

    pub fn vars_present(&self) -> Vec<Indeterminate> {
        let mut v = self.num.vars_present();
        for x in self.den.vars_present() {
            if !v.contains(&x) {
                v.push(x);
            }
        }
        v
    }

    pub fn is_constant(&self) -> bool {
        self.vars_present().is_empty()
    }

    /// Substitute exact rational values for the given indeterminates.
    pub fn specialize(
        &self,
        values: &BTreeMap<Indeterminate, Rational>,
    ) -> Result<Scalar, ScalarError> {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        for (v, val) in values {
            num = num.substitute(*v, val);
            den = den.substitute(*v, val);
        }
        Scalar::new(num, den).map_err(|_| ScalarError::PoleError)
    }

    /// The value as an element of Q(sqrt2, sqrt3) when no indeterminates occur.
    pub fn as_algnum(&self) -> Option<AlgebraicNumber> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(&n * &d.inv()?)
    }

    pub fn to_f64_constant(&self) -> Option<f64> {
        self.as_algnum().map(|x| x.to_f64())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.eq_scalar(other)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_scalar(self))
    }
}

/// A value bound to an indeterminate at evaluation time.
#[derive(Clone, Debug)]
pub enum Binding {
    Exact(Rational),
    Approx(f64),
}

impl Binding {
    fn to_f64(&self) -> f64 {
        match self {
            Binding::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Binding::Approx(x) => *x,
        }
    }
}

pub type Bindings = BTreeMap<Indeterminate, Binding>;

/// Bindings for a numeric family time: t itself plus s = sinh t.
pub fn time_bindings(t: f64) -> Bindings {
    let mut b = BTreeMap::new();
    b.insert(Indeterminate::T, Binding::Approx(t));
    b.insert(Indeterminate::S, Binding::Approx(t.sinh()));
    b
}

/// Result of evaluating a scalar: exact when everything stayed rational.
#[derive(Clone, Debug, PartialEq)]
pub enum EvalResult {
    Exact(Rational),
    Approx(f64),
}

impl EvalResult {
    pub fn to_f64(&self) -> f64 {
        match self {
            EvalResult::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            EvalResult::Approx(x) => *x,
        }
    }
}

/// Evaluate a scalar under the given bindings. Every indeterminate occurring
/// in the scalar must be bound; if t is bound, any occurrence of s must be
/// bound to sinh(t) — use [`time_bindings`] for that coupling.
pub fn evaluate(x: &Scalar, bindings: &Bindings) -> Result<EvalResult, ScalarError> {
    for v in x.vars_present() {
        if !bindings.contains_key(&v) {
            return Err(ScalarError::UnboundIndeterminate(v.symbol()));
        }
    }
    let all_exact = x
        .vars_present()
        .iter()
        .all(|v| matches!(bindings.get(v), Some(Binding::Exact(_))));
    if all_exact {
        let bind = |v: Indeterminate| -> Rational {
            match bindings.get(&v) {
                Some(Binding::Exact(r)) => r.clone(),
                _ => Rational::zero(),
            }
        };
        let n = x.num.eval_exact(&bind);
        let d = x.den.eval_exact(&bind);
        if d.is_zero() {
            return Err(ScalarError::PoleError);
        }
        let q = &n * &d.inv().expect("nonzero");
        if q.is_rational() {
            return Ok(EvalResult::Exact(q.rational_part().clone()));
        }
        return Ok(EvalResult::Approx(q.to_f64()));
    }
    let bind = |v: Indeterminate| -> f64 { bindings.get(&v).map(|b| b.to_f64()).unwrap_or(0.0) };
    let n = x.num.eval_f64(&bind);
    let d = x.den.eval_f64(&bind);
    if d == 0.0 {
        return Err(ScalarError::PoleError);
    }
    Ok(EvalResult::Approx(n / d))
}

pub fn evaluate_f64(x: &Scalar, bindings: &Bindings) -> Result<f64, ScalarError> {
    evaluate(x, bindings).map(|r| r.to_f64())
}

/// Growth grading of a nonzero scalar as t -> infinity, with s = sinh t graded
/// infinitely heavier than any power of t. The scalar tends to 0 iff the
/// returned pair is lexicographically below (0, 0).
pub fn asymptotic_order(x: &Scalar) -> Result<(i64, i64), ScalarError> {
    if x.is_zero() {
        return Err(ScalarError::ZeroInput);
    }
    let s = Indeterminate::S;
    let t = Indeterminate::T;
    let s_order = x.num.degree(s) as i64 - x.den.degree(s) as i64;
    let num_lead = x.num.leading_part(s);
    let den_lead = x.den.leading_part(s);
    let t_order = num_lead.degree(t) as i64 - den_lead.degree(t) as i64;
    Ok((s_order, t_order))
}

/// True iff the scalar tends to 0 as t -> infinity.
pub fn tends_to_zero(x: &Scalar) -> Result<bool, ScalarError> {
    asymptotic_order(x).map(|o| o < (0, 0))
}
