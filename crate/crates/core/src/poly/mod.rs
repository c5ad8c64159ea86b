//! Sparse multivariate polynomials with [`Quad`] coefficients.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad::{Quad, Rat};

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Vars(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    /// `x, y`.
    pub fn xy() -> Self {
        Vars::new(["x", "y"])
    }

    /// `x1, ..., xn`.
    pub fn indexed(n: usize) -> Self {
        Vars::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(","))
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// All exponent vectors of total degree `deg` in `nvars` variables, descending.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == nvars {
                prefix.push(deg);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=deg).rev() {
                prefix.push(e);
                rec(nvars, deg - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if deg == 0 {
                out.push(Monomial(vec![]));
            }
            return out;
        }
        rec(nvars, deg, &mut Vec::new(), &mut out);
        out
    }

    pub fn display(&self, vars: &Vars) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let name = &vars.names()[i];
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in a fixed ordered set of variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Monomial, Quad>,
}

impl Poly {
    pub fn zero(vars: &Vars) -> Self {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Quad) -> Self {
        Poly::term(vars, Monomial::one(vars.len()), c)
    }

    pub fn one(vars: &Vars) -> Self {
        Poly::constant(vars, Quad::one())
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Poly::term(vars, Monomial::var(vars.len(), i), Quad::one())
    }

    pub fn term(vars: &Vars, m: Monomial, c: Quad) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length");
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `c · x^exps`.
    pub fn monomial(vars: &Vars, exps: &[u32], c: impl Into<Quad>) -> Self {
        Poly::term(vars, Monomial(exps.to_vec()), c.into())
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Monomial, Quad)>) -> Self {
        let mut p = Poly::zero(vars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Quad)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Quad {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Quad::zero)
    }

    pub fn constant_term(&self) -> Quad {
        self.coeff(&vec![0; self.nvars()])
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Lowest total degree present; `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Quad)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: &Quad) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarMismatch(
                self.vars.to_string(),
                other.vars.to_string(),
            ));
        }
        let f1 = self.terms.values().find_map(Quad::field);
        let f2 = other.terms.values().find_map(Quad::field);
        if let (Some(a), Some(b)) = (f1, f2) {
            if a != b {
                return Err(Error::FieldMismatch(a.clone(), b.clone()));
            }
        }
        Ok(())
    }

    /// The square-free radicand of the coefficient field, if any coefficient is irrational.
    pub fn field(&self) -> Option<&num_bigint::BigInt> {
        self.terms.values().find_map(Quad::field)
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        Ok(self.mul_impl(other, None))
    }

    fn mul_impl(&self, other: &Poly, trunc: Option<u32>) -> Poly {
        let mut acc: BTreeMap<Monomial, Quad> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(t) = trunc {
                    if m1.degree() + m2.degree() > t {
                        continue;
                    }
                }
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.get_mut(&m) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly {
            vars: self.vars.clone(),
            terms: acc,
        }
    }

    /// Product with every monomial of degree `> deg` dropped.
    pub fn mul_truncated(&self, other: &Poly, deg: u32) -> Poly {
        self.check_compatible(other).expect("incompatible polynomials");
        self.mul_impl(other, Some(deg))
    }

    pub fn scale(&self, c: &Quad) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rat) -> Poly {
        self.scale(&Quad::from_rat(r.clone()))
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(&self.vars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn diff(&self, var: usize) -> Result<Poly> {
        if var >= self.nvars() {
            return Err(Error::VarOutOfRange {
                index: var,
                nvars: self.nvars(),
            });
        }
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, &c.scale(&Rat::from_integer(e.into())));
        }
        Ok(out)
    }

    /// Partial derivative; panics on an out-of-range index.
    pub fn d(&self, var: usize) -> Poly {
        self.diff(var).expect("variable index in range")
    }

    /// Keeps the monomials of total degree `≤ deg`.
    pub fn truncate(&self, deg: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, deg: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Composition `p(map₁, …, mapₙ)`. The targets may live in another variable set.
    pub fn subst(&self, map: &[Poly]) -> Result<Poly> {
        self.subst_impl(map, None)
    }

    /// Composition truncated at total degree `deg`.
    pub fn subst_truncated(&self, map: &[Poly], deg: u32) -> Result<Poly> {
        self.subst_impl(map, Some(deg))
    }

    fn subst_impl(&self, map: &[Poly], trunc: Option<u32>) -> Result<Poly> {
        if map.len() != self.nvars() {
            return Err(Error::Dimension {
                expected: self.nvars(),
                got: map.len(),
            });
        }
        let target = match map.first() {
            Some(p) => p.vars.clone(),
            None => {
                return Ok(Poly::constant(&self.vars, self.constant_term()));
            }
        };
        for p in map {
            if p.vars != target {
                return Err(Error::VarMismatch(target.to_string(), p.vars.to_string()));
            }
        }
        let mul = |a: &Poly, b: &Poly| match trunc {
            Some(t) => a.mul_impl(b, Some(t)),
            None => a.mul_impl(b, None),
        };
        // cache of powers per variable
        let mut powers: Vec<Vec<Poly>> = map.iter().map(|p| vec![Poly::one(&p.vars), p.clone()]).collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = mul(powers[i].last().unwrap(), &map[i]);
                    powers[i].push(next);
                }
                t = mul(&t, &powers[i][e as usize]);
                if t.is_zero() {
                    break;
                }
            }
            out = out.try_add(&t)?;
        }
        Ok(match trunc {
            Some(d) => out.truncate(d),
            None => out,
        })
    }

    /// Exact quotient `p / q`, or `Error::Inconsistent` when `q` does not divide `p`.
    pub fn exact_div(&self, q: &Poly) -> Result<Poly> {
        self.check_compatible(q)?;
        let (lm, lc) = q.leading().ok_or(Error::DivisionByZero)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.vars);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return Err(Error::Inconsistent("not divisible".into()));
            }
            let t = Poly::term(&self.vars, m.div(&lm), c / &lc);
            rem = rem.try_sub(&t.mul_impl(q, None))?;
            quot = quot.try_add(&t)?;
        }
        Ok(quot)
    }

    pub fn eval(&self, point: &[Quad]) -> Result<Quad> {
        if point.len() != self.nvars() {
            return Err(Error::Dimension {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let mut out = Quad::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                t = &t * &x.pow(e);
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial around `point`: returns `p(x + point)`.
    pub fn recentre(&self, point: &[Quad]) -> Result<Poly> {
        let map: Vec<Poly> = point
            .iter()
            .enumerate()
            .map(|(i, c)| {
                Poly::var(&self.vars, i)
                    .try_add(&Poly::constant(&self.vars, c.clone()))
                    .expect("same vars")
            })
            .collect();
        self.subst(&map)
    }

    /// The same polynomial viewed in another variable set of the same size.
    pub fn rename(&self, vars: &Vars) -> Poly {
        assert_eq!(vars.len(), self.nvars());
        Poly {
            vars: vars.clone(),
            terms: self.terms.clone(),
        }
    }

    pub fn parse(s: &str, vars: &Vars) -> Result<Poly> {
        parse::parse_poly(s, vars)
    }
}

impl fmt::Display for Poly {
    /// Canonical form: descending graded-lex, explicit ` + `/` - ` separators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<(bool, String)> = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mono = m.display(&self.vars);
            let is_one = mono == "1";
            let mut push = |r: &Rat, radical: Option<&num_bigint::BigInt>| {
                if num_traits::Zero::is_zero(r) {
                    return;
                }
                let neg = num_traits::Signed::is_negative(r);
                let mag = num_traits::Signed::abs(r);
                let mut factors = Vec::new();
                let mag_one = num_traits::One::is_one(&mag);
                if !mag_one || (is_one && radical.is_none()) {
                    factors.push(crate::quad::fmt_rat(&mag));
                }
                if let Some(d) = radical {
                    factors.push(format!("sqrt({d})"));
                }
                if !is_one {
                    factors.push(mono.clone());
                }
                pieces.push((neg, factors.join("*")));
            };
            push(c.rational_part(), None);
            if let Some(d) = c.field() {
                push(c.radical_part(), Some(d));
            }
        }
        if pieces.is_empty() {
            return f.write_str("0");
        }
        for (i, (neg, body)) in pieces.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("incompatible polynomials")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
