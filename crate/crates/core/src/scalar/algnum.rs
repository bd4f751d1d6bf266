//! Exact arithmetic in the number field Q(sqrt2, sqrt3).
//!
//! Elements are stored on the basis {1, sqrt2, sqrt3, sqrt6}, which is closed
//! under multiplication up to rational factors. Inversion goes through the
//! four Galois conjugates, so nonzero elements invert exactly.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rational = BigRational;

/// a + b*sqrt2 + c*sqrt3 + d*sqrt6 with rational a, b, c, d.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgebraicNumber {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl AlgebraicNumber {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Self { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
            c: Rational::zero(),
            d: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    pub fn sqrt2() -> Self {
        Self {
            a: Rational::zero(),
            b: Rational::one(),
            c: Rational::zero(),
            d: Rational::zero(),
        }
    }

    pub fn sqrt3() -> Self {
        Self {
            a: Rational::zero(),
            b: Rational::zero(),
            c: Rational::one(),
            d: Rational::zero(),
        }
    }

    pub fn sqrt6() -> Self {
        Self {
            a: Rational::zero(),
            b: Rational::zero(),
            c: Rational::zero(),
            d: Rational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// True when the irrational components vanish.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    /// Galois conjugate sending sqrt2 -> -sqrt2.
    fn conj2(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            c: self.c.clone(),
            d: -self.d.clone(),
        }
    }

    /// Galois conjugate sending sqrt3 -> -sqrt3.
    fn conj3(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }

    /// Exact inverse of a nonzero element; None for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // x * conj2(x) lies in Q(sqrt3); multiplying by the sqrt3-conjugate
        // of that product lands in Q.
        let p = self * &self.conj2();
        let q = &p * &p.conj3();
        debug_assert!(q.is_rational());
        let norm = q.a.clone();
        let adj = &self.conj2() * &p.conj3();
        let inv_norm = norm.recip();
        Some(Self {
            a: &adj.a * &inv_norm,
            b: &adj.b * &inv_norm,
            c: &adj.c * &inv_norm,
            d: &adj.d * &inv_norm,
        })
    }

    pub fn to_f64(&self) -> f64 {
        let r = |x: &Rational| x.to_f64().unwrap_or(f64::NAN);
        r(&self.a) + r(&self.b) * 2f64.sqrt() + r(&self.c) * 3f64.sqrt() + r(&self.d) * 6f64.sqrt()
    }

    /// Sign of the leading rational component (a, then b, c, d).
    /// Zero maps to 0. Used only to canonicalize printing.
    pub fn lead_sign(&self) -> i32 {
        for x in [&self.a, &self.b, &self.c, &self.d] {
            if x.is_positive() {
                return 1;
            }
            if x.is_negative() {
                return -1;
            }
        }
        0
    }
}

impl Add for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn add(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        AlgebraicNumber {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            c: &self.c + &rhs.c,
            d: &self.d + &rhs.d,
        }
    }
}

impl Sub for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn sub(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        AlgebraicNumber {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            c: &self.c - &rhs.c,
            d: &self.d - &rhs.d,
        }
    }
}

impl Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        AlgebraicNumber {
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }
}

impl Mul for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn mul(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&rhs.a, &rhs.b, &rhs.c, &rhs.d);
        let two = rat(2, 1);
        let three = rat(3, 1);
        let six = rat(6, 1);
        AlgebraicNumber {
            a: a1 * a2 + &two * (b1 * b2) + &three * (c1 * c2) + &six * (d1 * d2),
            b: a1 * b2 + b1 * a2 + &three * (c1 * d2 + d1 * c2),
            c: a1 * c2 + c1 * a2 + &two * (b1 * d2 + d1 * b2),
            d: a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        }
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::scalar::parse::print_algnum(self))
    }
}
