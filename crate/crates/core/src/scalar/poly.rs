//! Multivariate polynomials over Q(sqrt2, sqrt3) in the five indeterminates
//! t, s (= sinh t), k, l1, l2.
//!
//! Terms live in a BTreeMap keyed by exponent vectors, so the representation
//! is canonical: zero coefficients are dropped on insertion. Identity testing
//! nevertheless goes through a deterministic evaluation grid (see
//! [`Poly::is_zero_by_grid`]), which certifies vanishing independently of the
//! normal form.

use super::algnum::{AlgebraicNumber, Rational};
use std::collections::BTreeMap;
use std::fmt;

pub const NVARS: usize = 5;

/// Per-indeterminate degree cap; exceeding it aborts with a diagnostic,
/// catching runaway expression blow-up early. Unreduced fraction arithmetic
/// on the 6d family builds intermediate denominators of degree well past 100
/// in t, so the cap sits comfortably above that.
pub const DEGREE_CAP: u16 = 512;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Indeterminate {
    /// Family parameter t.
    T = 0,
    /// Formal marker for sinh t; bound to sinh of the t value at evaluation.
    S = 1,
    /// Fernandez-Gray parameter k.
    K = 2,
    /// Hasegawa eigen-log lambda_1.
    L1 = 3,
    /// Hasegawa eigen-log lambda_2.
    L2 = 4,
}

pub const ALL_VARS: [Indeterminate; NVARS] = [
    Indeterminate::T,
    Indeterminate::S,
    Indeterminate::K,
    Indeterminate::L1,
    Indeterminate::L2,
];

impl Indeterminate {
    pub fn symbol(self) -> &'static str {
        match self {
            Indeterminate::T => "t",
            Indeterminate::S => "s",
            Indeterminate::K => "k",
            Indeterminate::L1 => "l1",
            Indeterminate::L2 => "l2",
        }
    }

    pub fn from_symbol(sym: &str) -> Option<Self> {
        match sym {
            "t" => Some(Indeterminate::T),
            "s" => Some(Indeterminate::S),
            "k" => Some(Indeterminate::K),
            "l1" => Some(Indeterminate::L1),
            "l2" => Some(Indeterminate::L2),
            _ => None,
        }
    }
}

pub type Exps = [u16; NVARS];

/// Polynomial in canonical expanded form.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Exps, AlgebraicNumber>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(AlgebraicNumber::one())
    }

    pub fn constant(c: AlgebraicNumber) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; NVARS], c);
        }
        Self { terms }
    }

    pub fn var(v: Indeterminate) -> Self {
        let mut e = [0u16; NVARS];
        e[v as usize] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, AlgebraicNumber::one());
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &AlgebraicNumber)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Structural zero test on the canonical form.
    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&[0; NVARS])
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    fn insert_term(&mut self, e: Exps, c: AlgebraicNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn degree(&self, v: Indeterminate) -> u16 {
        self.terms.keys().map(|e| e[v as usize]).max().unwrap_or(0)
    }

    pub fn vars_present(&self) -> Vec<Indeterminate> {
        ALL_VARS
            .iter()
            .copied()
            .filter(|&v| self.degree(v) > 0)
            .collect()
    }

    fn check_cap(&self) {
        for v in ALL_VARS {
            let d = self.degree(v);
            assert!(
                d <= DEGREE_CAP,
                "polynomial degree {} in '{}' exceeds cap {}; expression blow-up",
                d,
                v.symbol(),
                DEGREE_CAP
            );
        }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(*e, -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            out.insert_term(*e, -c);
        }
        out
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = [0u16; NVARS];
                for i in 0..NVARS {
                    e[i] = e1[i] + e2[i];
                }
                out.insert_term(e, c1 * c2);
            }
        }
        out.check_cap();
        out
    }

    pub fn scale(&self, c: &AlgebraicNumber) -> Poly {
        let mut out = Poly::zero();
        for (e, c0) in &self.terms {
            out.insert_term(*e, c0 * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Substitute a rational value for one indeterminate.
    pub fn substitute(&self, v: Indeterminate, value: &Rational) -> Poly {
        let vi = v as usize;
        let val = AlgebraicNumber::from_rational(value.clone());
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut p = AlgebraicNumber::one();
            for _ in 0..e[vi] {
                p = &p * &val;
            }
            let mut e2 = *e;
            e2[vi] = 0;
            out.insert_term(e2, &p * c);
        }
        out
    }

    /// Deterministic identity test: for each indeterminate present, sample
    /// deg+1 small integer points and evaluate on the full grid. A polynomial
    /// vanishing on such a grid is identically zero (multivariate
    /// interpolation), so this is exact, not probabilistic.
    pub fn is_zero_by_grid(&self) -> bool {
        match self.vars_present().first() {
            None => self
                .terms
                .get(&[0; NVARS])
                .map(|c| c.is_zero())
                .unwrap_or(true),
            Some(&v) => {
                let deg = self.degree(v);
                for i in 0..=deg as i64 {
                    let point = Rational::from_integer(i.into());
                    if !self.substitute(v, &point).is_zero_by_grid() {
                        return false;
                    }
                }
                true
            }
        }
    }

    /// Evaluate with every indeterminate bound to a float.
    pub fn eval_f64(&self, bind: &dyn Fn(Indeterminate) -> f64) -> f64 {
        let vals: Vec<f64> = ALL_VARS.iter().map(|&v| bind(v)).collect();
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut m = c.to_f64();
            for i in 0..NVARS {
                m *= vals[i].powi(e[i] as i32);
            }
            acc += m;
        }
        acc
    }

    /// Evaluate with every indeterminate bound to a rational; exact.
    pub fn eval_exact(&self, bind: &dyn Fn(Indeterminate) -> Rational) -> AlgebraicNumber {
        let vals: Vec<AlgebraicNumber> = ALL_VARS
            .iter()
            .map(|&v| AlgebraicNumber::from_rational(bind(v)))
            .collect();
        let mut acc = AlgebraicNumber::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for i in 0..NVARS {
                for _ in 0..e[i] {
                    m = &m * &vals[i];
                }
            }
            acc = &acc + &m;
        }
        acc
    }

    /// Terms whose s-degree equals the s-degree of the whole polynomial.
    pub fn leading_part(&self, v: Indeterminate) -> Poly {
        let d = self.degree(v);
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[v as usize] == d {
                out.insert_term(*e, c.clone());
            }
        }
        out
    }

    /// The constant coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<AlgebraicNumber> {
        if self.vars_present().is_empty() {
            Some(
                self.terms
                    .get(&[0; NVARS])
                    .cloned()
                    .unwrap_or_else(AlgebraicNumber::zero),
            )
        } else {
            None
        }
    }

    /// Sign of the coefficient of the lex-greatest monomial; 0 for zero.
    pub fn lead_sign(&self) -> i32 {
        self.terms
            .iter()
            .next_back()
            .map(|(_, c)| c.lead_sign())
            .unwrap_or(0)
    }

    /// Componentwise minimum exponent vector over all terms.
    pub fn min_exps(&self) -> Exps {
        let mut m = [u16::MAX; NVARS];
        for e in self.terms.keys() {
            for i in 0..NVARS {
                m[i] = m[i].min(e[i]);
            }
        }
        if self.terms.is_empty() {
            [0; NVARS]
        } else {
            m
        }
    }

    /// Divide every term by the monomial with the given exponents.
    pub fn shift_down(&self, by: &Exps) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            for i in 0..NVARS {
                debug_assert!(e2[i] >= by[i]);
                e2[i] -= by[i];
            }
            out.insert_term(e2, c.clone());
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::scalar::parse::print_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::algnum::rat;

    fn t() -> Poly {
        Poly::var(Indeterminate::T)
    }

    #[test]
    fn grid_identity_true() {
        // (t^2+1)(t^2-1) - (t^4-1) == 0
        let t2 = t().mul(&t());
        let lhs = t2
            .add(&Poly::one())
            .mul(&t2.sub(&Poly::one()))
            .sub(&t2.mul(&t2).sub(&Poly::one()));
        assert!(lhs.is_zero_by_grid());
        assert!(lhs.is_structurally_zero());
    }

    #[test]
    fn grid_identity_false() {
        let p = t().sub(&Poly::var(Indeterminate::S));
        assert!(!p.is_zero_by_grid());
    }

    #[test]
    fn substitute_and_eval() {
        // p = 2t^2 - 3, p(2) = 5
        let p = t()
            .mul(&t())
            .scale(&AlgebraicNumber::from_int(2))
            .sub(&Poly::constant(AlgebraicNumber::from_int(3)));
        let q = p.substitute(Indeterminate::T, &rat(2, 1));
        assert_eq!(q.as_constant().unwrap(), AlgebraicNumber::from_int(5));
        assert!((p.eval_f64(&|_| 2.0) - 5.0).abs() < 1e-15);
    }

    #[test]
    #[should_panic(expected = "exceeds cap")]
    fn degree_cap_trips() {
        let mut p = t();
        for _ in 0..10 {
            p = p.mul(&p); // degree 1024
        }
    }
}
