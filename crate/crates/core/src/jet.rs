//! Truncated power series and coordinate changes fixing the origin.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Poly, Vars};

/// A polynomial known modulo monomials of degree `> degree`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Jet {
    poly: Poly,
    degree: u32,
}

impl Jet {
    pub fn new(p: &Poly, degree: u32) -> Self {
        Jet {
            poly: p.truncate(degree),
            degree,
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn add(&self, other: &Jet) -> Jet {
        let d = self.degree.min(other.degree);
        Jet::new(&(&self.poly + &other.poly), d)
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        let d = self.degree.min(other.degree);
        Jet::new(&(&self.poly - &other.poly), d)
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let d = self.degree.min(other.degree);
        Jet {
            poly: self.poly.mul_truncated(&other.poly, d),
            degree: d,
        }
    }

    /// The derivative loses one order of accuracy.
    pub fn diff(&self, var: usize) -> Result<Jet> {
        Ok(Jet {
            poly: self.poly.diff(var)?,
            degree: self.degree.saturating_sub(1),
        })
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({})", self.poly, self.degree + 1)
    }
}

/// A map `x ↦ φ(x)` with `φ(0) = 0` and invertible linear part, known up to a
/// common truncation degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JetMap {
    comps: Vec<Poly>,
    degree: u32,
}

impl JetMap {
    pub fn new(comps: Vec<Poly>, degree: u32) -> Result<Self> {
        let n = comps.len();
        if n == 0 {
            return Err(Error::InvalidJetMap("no components".into()));
        }
        let vars = comps[0].vars().clone();
        if vars.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: vars.len(),
            });
        }
        if let Some(p) = comps.iter().find(|p| *p.vars() != vars) {
            return Err(Error::VarMismatch(vars.to_string(), p.vars().to_string()));
        }
        if degree == 0 {
            return Err(Error::InvalidJetMap("truncation degree must be at least 1".into()));
        }
        if comps.iter().any(|p| !p.constant_term().is_zero()) {
            return Err(Error::InvalidJetMap("component with a constant term".into()));
        }
        let map = JetMap {
            comps: comps.iter().map(|p| p.truncate(degree)).collect(),
            degree,
        };
        if map.linear_part().det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(map)
    }

    pub fn identity(vars: &Vars, degree: u32) -> Self {
        JetMap {
            comps: (0..vars.len()).map(|i| Poly::var(vars, i)).collect(),
            degree,
        }
    }

    /// `x ↦ C·x`.
    pub fn linear(vars: &Vars, c: &Matrix, degree: u32) -> Result<Self> {
        let comps = (0..vars.len())
            .map(|i| {
                (0..vars.len()).fold(Poly::zero(vars), |acc, j| {
                    acc + Poly::var(vars, j).scale(c.get(i, j))
                })
            })
            .collect();
        JetMap::new(comps, degree)
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn vars(&self) -> &Vars {
        self.comps[0].vars()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn is_identity(&self) -> bool {
        *self == JetMap::identity(self.vars(), self.degree)
    }

    /// The Jacobian at the origin.
    pub fn linear_part(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, p) in self.comps.iter().enumerate() {
            for j in 0..n {
                let mono = crate::poly::Monomial::var(n, j);
                m.set(i, j, p.coeff(mono.exps()));
            }
        }
        m
    }

    /// `p ∘ φ`, truncated.
    pub fn pull(&self, p: &Poly) -> Poly {
        p.subst_truncated(&self.comps, self.degree)
            .expect("jet map matches polynomial variables")
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &JetMap) -> Result<JetMap> {
        if self.dim() != g.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: g.dim(),
            });
        }
        let degree = self.degree.min(g.degree);
        let comps = self
            .comps
            .iter()
            .map(|p| p.subst_truncated(&g.comps, degree))
            .collect::<Result<Vec<_>>>()?;
        JetMap::new(comps, degree)
    }

    /// Fixed-point iteration `g ← g − A⁻¹(φ(g) − x)`, gaining one order per step.
    pub fn invert(&self) -> Result<JetMap> {
        let a_inv = self.linear_part().inverse()?;
        let vars = self.vars().clone();
        let n = self.dim();
        let apply_inv = |v: &[Poly]| -> Vec<Poly> {
            (0..n)
                .map(|i| {
                    (0..n).fold(Poly::zero(&vars), |acc, j| acc + v[j].scale(a_inv.get(i, j)))
                })
                .collect()
        };
        let x: Vec<Poly> = (0..n).map(|i| Poly::var(&vars, i)).collect();
        let mut g = apply_inv(&x);
        for _ in 1..self.degree {
            let fg: Vec<Poly> = self
                .comps
                .iter()
                .map(|p| p.subst_truncated(&g, self.degree))
                .collect::<Result<_>>()?;
            let diff: Vec<Poly> = fg.iter().zip(&x).map(|(a, b)| a - b).collect();
            let corr = apply_inv(&diff);
            g = g.iter().zip(&corr).map(|(a, b)| (a - b).truncate(self.degree)).collect();
        }
        JetMap::new(g, self.degree)
    }

    /// Matrix of partial derivatives `∂φ^i/∂x^j`, accurate to degree `degree − 1`.
    pub fn jacobian(&self) -> Vec<Vec<Poly>> {
        self.comps
            .iter()
            .map(|p| (0..self.dim()).map(|j| p.d(j)).collect())
            .collect()
    }

    pub fn truncate(&self, degree: u32) -> JetMap {
        JetMap {
            comps: self.comps.iter().map(|p| p.truncate(degree)).collect(),
            degree: degree.min(self.degree),
        }
    }
}

impl fmt::Display for JetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().map(ToString::to_string).collect();
        write!(f, "({}) + O({})", parts.join(", "), self.degree + 1)
    }
}
