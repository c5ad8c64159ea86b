//! Exact scalars: rationals, optionally extended by a single square root.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Unbounded rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q` with an optional sign.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let bad = || Error::Parse {
        line: 1,
        column: 1,
        message: format!("invalid rational `{s}`"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `a + b·√d` with `d` square-free and not 1. Rational values carry `b = 0, d = 0`.
///
/// Two irrational values with different `d` cannot be combined; the checked
/// operations report this, the operator impls panic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    a: Rat,
    b: Rat,
    d: BigInt,
}

impl Quad {
    pub fn zero() -> Self {
        Quad::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Quad::from_rat(Rat::one())
    }

    pub fn from_rat(a: Rat) -> Self {
        Quad {
            a,
            b: Rat::zero(),
            d: BigInt::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Quad::from_rat(rat_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Quad::from_rat(rat(n, d))
    }

    /// Builds `a + b·√d`, reducing `d` to its square-free part.
    pub fn new(a: Rat, b: Rat, d: &BigInt) -> Result<Self, Error> {
        if d.is_negative() {
            return Err(Error::NegativeRadicand(d.to_string()));
        }
        let (square, free) = square_free_split(d)?;
        let b = b * Rat::from_integer(square);
        Ok(Quad::canonical(a, b, free))
    }

    fn canonical(a: Rat, b: Rat, d: BigInt) -> Self {
        if b.is_zero() || d.is_zero() {
            Quad::from_rat(a)
        } else if d.is_one() {
            Quad::from_rat(a + b)
        } else {
            Quad { a, b, d }
        }
    }

    /// Exact square root of a non-negative rational.
    pub fn sqrt(r: &Rat) -> Result<Self, Error> {
        if r.is_negative() {
            return Err(Error::NegativeRadicand(fmt_rat(r)));
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let n = r.numer() * r.denom();
        let (square, free) = square_free_split(&n)?;
        let b = Rat::new(square, r.denom().clone());
        Ok(Quad::canonical(Rat::zero(), b, free))
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn radical_part(&self) -> &Rat {
        &self.b
    }

    /// The square-free radicand, when the value is irrational.
    pub fn field(&self) -> Option<&BigInt> {
        if self.b.is_zero() {
            None
        } else {
            Some(&self.d)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.a)
    }

    fn common_field(&self, other: &Quad) -> Result<BigInt, Error> {
        match (self.field(), other.field()) {
            (Some(d1), Some(d2)) if d1 != d2 => Err(Error::FieldMismatch(d1.clone(), d2.clone())),
            (Some(d), _) | (_, Some(d)) => Ok(d.clone()),
            (None, None) => Ok(BigInt::zero()),
        }
    }

    pub fn checked_add(&self, other: &Quad) -> Result<Quad, Error> {
        let d = self.common_field(other)?;
        Ok(Quad::canonical(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_sub(&self, other: &Quad) -> Result<Quad, Error> {
        let d = self.common_field(other)?;
        Ok(Quad::canonical(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn checked_mul(&self, other: &Quad) -> Result<Quad, Error> {
        let d = self.common_field(other)?;
        let dr = Rat::from_integer(d.clone());
        let a = &self.a * &other.a + &self.b * &other.b * dr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Quad::canonical(a, b, d))
    }

    pub fn conj(&self) -> Quad {
        Quad::canonical(self.a.clone(), -self.b.clone(), self.d.clone())
    }

    /// `a² − b²d`, the field norm. Zero only for zero since `d` is not a square.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * Rat::from_integer(self.d.clone())
    }

    pub fn inv(&self) -> Result<Quad, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Quad::canonical(&c.a / &n, &c.b / &n, c.d))
    }

    pub fn checked_div(&self, other: &Quad) -> Result<Quad, Error> {
        self.checked_mul(&other.inv()?)
    }

    pub fn scale(&self, r: &Rat) -> Quad {
        Quad::canonical(&self.a * r, &self.b * r, self.d.clone())
    }

    pub fn pow(&self, k: u32) -> Quad {
        let mut out = Quad::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact sign of the real number `a + b√d`.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a² with b²d
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rat::from_integer(self.d.clone());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Quad {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }
}

fn sign(r: &Rat) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Splits `n ≥ 0` as `s²·m` with `m` square-free.
fn square_free_split(n: &BigInt) -> Result<(BigInt, BigInt), Error> {
    if n.is_zero() {
        return Ok((BigInt::zero(), BigInt::zero()));
    }
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0u32;
        while rest.is_multiple_of(&bp) {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            square *= bp.pow(e / 2);
            if e % 2 == 1 {
                free *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let limit = BigInt::from(TRIAL_LIMIT);
    if rest > &limit * &limit {
        let r = rest.sqrt();
        if &r * &r == rest {
            square *= r;
            return Ok((square, free));
        }
        return Err(Error::RadicandTooLarge(n.to_string()));
    }
    free *= rest;
    Ok((square, free))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Quad> for &Quad {
            type Output = Quad;
            fn $method(self, rhs: &Quad) -> Quad {
                self.$checked(rhs).expect("incompatible square-root fields")
            }
        }
        impl $trait<Quad> for Quad {
            type Output = Quad;
            fn $method(self, rhs: Quad) -> Quad {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Quad> for Quad {
            type Output = Quad;
            fn $method(self, rhs: &Quad) -> Quad {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Div<&Quad> for &Quad {
    type Output = Quad;
    fn div(self, rhs: &Quad) -> Quad {
        self.checked_div(rhs).expect("division by zero or incompatible fields")
    }
}

impl Div<Quad> for Quad {
    type Output = Quad;
    fn div(self, rhs: Quad) -> Quad {
        &self / &rhs
    }
}

impl Neg for &Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad::canonical(-self.a.clone(), -self.b.clone(), self.d.clone())
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        -&self
    }
}

impl From<Rat> for Quad {
    fn from(r: Rat) -> Self {
        Quad::from_rat(r)
    }
}

impl From<i64> for Quad {
    fn from(n: i64) -> Self {
        Quad::from_int(n)
    }
}

impl fmt::Display for Quad {
    /// `a`, `b*sqrt(d)` or `a + b*sqrt(d)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&fmt_rat(&self.a));
        }
        let radical = if self.b.is_one() {
            format!("sqrt({})", self.d)
        } else if (-self.b.clone()).is_one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", fmt_rat(&self.b), self.d)
        };
        if self.a.is_zero() {
            f.write_str(&radical)
        } else if let Some(r) = radical.strip_prefix('-') {
            write!(f, "{} - {}", fmt_rat(&self.a), r)
        } else {
            write!(f, "{} + {}", fmt_rat(&self.a), radical)
        }
    }
}

impl FromStr for Quad {
    type Err = Error;

    /// Accepts the output of `Display`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let vars = crate::poly::Vars::new(Vec::<String>::new());
        let p = crate::poly::Poly::parse(s, &vars)?;
        Ok(p.constant_term())
    }
}
