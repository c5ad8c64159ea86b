//! Finite-dimensional algebras given by structure constants.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::nij::OperatorField;
use crate::poly::{Poly, Vars};
use crate::quad::{fmt_rat, parse_rat, Quad, Rat};

/// Structure constants `a[k][i][j]`: the coefficient of `ξ_k` in `ξ_i * ξ_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lsa {
    dim: usize,
    a: Vec<Quad>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieStructure {
    /// `c[k][i][j] = a[k][i][j] − a[k][j][i]`, flattened like [`Lsa`].
    pub constants: Lsa,
    pub is_commutative: bool,
    pub jacobi_ok: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Invariants {
    pub tr_l: Poly,
    pub det_l: Poly,
    pub tr_r: Poly,
    pub det_r: Poly,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

impl Lsa {
    pub fn zero(dim: usize) -> Self {
        Lsa {
            dim,
            a: vec![Quad::zero(); dim * dim * dim],
        }
    }

    /// Builds from a nested `a[k][i][j]` array, rejecting ragged input.
    pub fn from_array(a: &[Vec<Vec<Rat>>]) -> Result<Self> {
        let n = a.len();
        let mut out = Lsa::zero(n);
        for (k, plane) in a.iter().enumerate() {
            if plane.len() != n {
                return Err(Error::MalformedAlgebra(format!(
                    "a[{k}] has {} rows, expected {n}",
                    plane.len()
                )));
            }
            for (i, row) in plane.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::MalformedAlgebra(format!(
                        "a[{k}][{i}] has {} entries, expected {n}",
                        row.len()
                    )));
                }
                for (j, v) in row.iter().enumerate() {
                    out.set(k, i, j, Quad::from_rat(v.clone()));
                }
            }
        }
        Ok(out)
    }

    /// Adds `c·ξ_k` to the product `ξ_i * ξ_j` (0-based).
    pub fn with(mut self, i: usize, j: usize, k: usize, c: impl Into<Quad>) -> Self {
        let v = self.get(k, i, j) + &c.into();
        self.set(k, i, j, v);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, k: usize, i: usize, j: usize) -> usize {
        (k * self.dim + i) * self.dim + j
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &Quad {
        &self.a[self.idx(k, i, j)]
    }

    pub fn set(&mut self, k: usize, i: usize, j: usize, v: Quad) {
        let idx = self.idx(k, i, j);
        self.a[idx] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Quad::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.a.iter().all(Quad::is_rational)
    }

    pub fn field(&self) -> Option<&num_bigint::BigInt> {
        self.a.iter().find_map(Quad::field)
    }

    /// `u * v` in coordinates.
    pub fn mul(&self, u: &[Quad], v: &[Quad]) -> Result<Vec<Quad>> {
        self.check_len(u)?;
        self.check_len(v)?;
        let n = self.dim;
        let mut out = vec![Quad::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(k, i, j);
                    if !c.is_zero() {
                        *o = &*o + &(c * &uv);
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_len(&self, v: &[Quad]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn basis(&self, i: usize) -> Vec<Quad> {
        let mut e = vec![Quad::zero(); self.dim];
        e[i] = Quad::one();
        e
    }

    /// `(u*v)*w − u*(v*w)`.
    pub fn associator(&self, u: &[Quad], v: &[Quad], w: &[Quad]) -> Result<Vec<Quad>> {
        let left = self.mul(&self.mul(u, v)?, w)?;
        let right = self.mul(u, &self.mul(v, w)?)?;
        Ok(left.iter().zip(&right).map(|(a, b)| a - b).collect())
    }

    pub fn is_left_symmetric(&self) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for s in 0..n {
                    for k in 0..n {
                        let mut acc = Quad::zero();
                        for r in 0..n {
                            acc = &acc + &(self.get(r, i, j) * self.get(k, r, s));
                            acc = &acc - &(self.get(k, i, r) * self.get(r, j, s));
                            acc = &acc - &(self.get(r, j, i) * self.get(k, r, s));
                            acc = &acc + &(self.get(k, j, r) * self.get(r, i, s));
                        }
                        if !acc.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn lie_structure(&self) -> LieStructure {
        let n = self.dim;
        let mut c = Lsa::zero(n);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    c.set(k, i, j, self.get(k, i, j) - self.get(k, j, i));
                }
            }
        }
        let is_commutative = c.is_zero();
        let mut jacobi_ok = true;
        'outer: for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let (ei, ej, el) = (self.basis(i), self.basis(j), self.basis(l));
                    let br = |u: &[Quad], v: &[Quad]| c.mul(u, v).expect("dimension");
                    let t1 = br(&br(&ei, &ej), &el);
                    let t2 = br(&br(&ej, &el), &ei);
                    let t3 = br(&br(&el, &ei), &ej);
                    if t1.iter().zip(&t2).zip(&t3).any(|((a, b), c)| !(&(a + b) + c).is_zero()) {
                        jacobi_ok = false;
                        break 'outer;
                    }
                }
            }
        }
        LieStructure {
            constants: c,
            is_commutative,
            jacobi_ok,
        }
    }

    /// Default coordinates: `x, y` in dimension 2, `x1, …, xn` otherwise.
    pub fn default_vars(&self) -> Vars {
        if self.dim == 2 {
            Vars::xy()
        } else {
            Vars::indexed(self.dim)
        }
    }

    /// `(L_ξ)^k_j = a^k_{sj} x^s` and `(R_ξ)^k_i = a^k_{is} x^s`.
    pub fn mult_matrices_in(&self, vars: &Vars) -> (OperatorField, OperatorField) {
        let n = self.dim;
        assert_eq!(vars.len(), n, "coordinate count");
        let lin = |f: &dyn Fn(usize) -> Quad| {
            (0..n).fold(Poly::zero(vars), |acc, s| acc + Poly::var(vars, s).scale(&f(s)))
        };
        let l = (0..n)
            .map(|k| (0..n).map(|j| lin(&|s| self.get(k, s, j).clone())).collect())
            .collect();
        let r = (0..n)
            .map(|k| (0..n).map(|i| lin(&|s| self.get(k, i, s).clone())).collect())
            .collect();
        (
            OperatorField::new(vars, l).expect("square"),
            OperatorField::new(vars, r).expect("square"),
        )
    }

    pub fn mult_matrices(&self) -> (OperatorField, OperatorField) {
        self.mult_matrices_in(&self.default_vars())
    }

    pub fn invariant_polys(&self) -> Invariants {
        let (l, r) = self.mult_matrices();
        Invariants {
            tr_l: l.trace(),
            det_l: l.det(),
            tr_r: r.trace(),
            det_r: r.det(),
        }
    }

    /// Constants in the basis `ξ'_i = C^s_i ξ_s` (columns of `C` are the new vectors).
    pub fn change_basis(&self, c: &Matrix) -> Result<Lsa> {
        let n = self.dim;
        if c.rows() != n || c.cols() != n {
            return Err(Error::Dimension {
                expected: n,
                got: c.rows(),
            });
        }
        let cinv = c.inverse()?;
        let mut out = Lsa::zero(n);
        for i in 0..n {
            for j in 0..n {
                let prod = self.mul(&c.column(i), &c.column(j))?;
                let coords = cinv.mul_vec(&prod);
                for (k, v) in coords.into_iter().enumerate() {
                    out.set(k, i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// `R_ξ` as an operator field.
    pub fn linear_operator_field(&self) -> OperatorField {
        self.mult_matrices().1
    }

    /// Whether `Im L` (or `Im R`) contains a non-semisimple element.
    pub fn property_s(&self, side: Side) -> Result<bool> {
        if self.dim != 2 {
            return Err(Error::UnsupportedDimension(self.dim));
        }
        let (l, r) = self.mult_matrices();
        let m = match side {
            Side::Left => l,
            Side::Right => r,
        };
        // linear conditions for M_ξ to be scalar: m12 = m21 = m11 − m22 = 0
        let conds = [
            m.entry(0, 1).clone(),
            m.entry(1, 0).clone(),
            m.entry(0, 0) - m.entry(1, 1),
        ];
        let rows: Vec<Vec<Quad>> = conds
            .iter()
            .map(|p| vec![p.coeff(&[1, 0]), p.coeff(&[0, 1])])
            .collect();
        let dim_s = 2 - Matrix::from_rows(rows).rank();
        if dim_s == 2 {
            return Ok(false);
        }
        let t = m.trace();
        let q = &(&t * &t) - &m.det().scale(&Quad::from_int(4));
        if q.is_zero() {
            return Ok(true);
        }
        let (qa, qb, qc) = (q.coeff(&[2, 0]), q.coeff(&[1, 1]), q.coeff(&[0, 2]));
        let disc = &(&qb * &qb) - &(&(&qa * &qc) * &Quad::from_int(4));
        Ok(match disc.signum() {
            -1 => false,
            1 => true,
            _ => dim_s == 0,
        })
    }

    /// Text format: header `lsa dim=<n>`, then lines `i j k <c>` with 1-based
    /// indices meaning `ξ_i * ξ_j ∋ c·ξ_k`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Lsa> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let perr = |line: usize, column: usize, message: String| Error::Parse {
            line,
            column,
            message,
        };
        let (hline, header) = lines.next().ok_or_else(|| perr(1, 1, "empty input".into()))?;
        let dim = header
            .strip_prefix("lsa")
            .map(str::trim)
            .and_then(|rest| rest.strip_prefix("dim="))
            .and_then(|d| d.trim().parse::<usize>().ok())
            .filter(|&d| d > 0)
            .ok_or_else(|| perr(hline, 1, "expected header `lsa dim=<n>`".into()))?;
        let mut out = Lsa::zero(dim);
        for (lineno, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(perr(lineno, 1, format!("expected `i j k <rational>`, got `{line}`")));
            }
            let mut idx = [0usize; 3];
            for (slot, f) in idx.iter_mut().zip(&fields[..3]) {
                let col = line.find(f).unwrap_or(0) + 1;
                *slot = f
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| (1..=dim).contains(&v))
                    .ok_or_else(|| perr(lineno, col, format!("index `{f}` outside 1..={dim}")))?
                    - 1;
            }
            let col = line.rfind(fields[3]).unwrap_or(0) + 1;
            let c = parse_rat(fields[3]).map_err(|e| perr(lineno, col, e.to_string()))?;
            out = out.with(idx[0], idx[1], idx[2], c);
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Lsa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lsa dim={}", self.dim)?;
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.get(k, i, j);
                    if c.is_zero() {
                        continue;
                    }
                    match c.as_rat() {
                        Some(r) => writeln!(f, "{} {} {} {}", i + 1, j + 1, k + 1, fmt_rat(r))?,
                        None => writeln!(f, "{} {} {} {}", i + 1, j + 1, k + 1, c)?,
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::rat;

    fn b1(alpha: i64) -> Lsa {
        Lsa::zero(2).with(1, 0, 0, 1).with(1, 1, 1, alpha)
    }

    fn c5_minus() -> Lsa {
        Lsa::zero(2)
            .with(1, 1, 1, 1)
            .with(1, 0, 0, 1)
            .with(0, 1, 0, 1)
            .with(0, 0, 1, -1)
    }

    fn v(xs: &[i64]) -> Vec<Quad> {
        xs.iter().map(|&x| Quad::from_int(x)).collect()
    }

    #[test]
    fn validate_shapes() {
        let z = vec![vec![vec![Rat::from_integer(0.into()); 2]; 2]; 2];
        assert!(Lsa::from_array(&z).unwrap().is_zero());
        let mut ragged = z.clone();
        ragged[1][0].pop();
        assert!(matches!(Lsa::from_array(&ragged), Err(Error::MalformedAlgebra(_))));
    }

    #[test]
    fn associators() {
        let one = Lsa::zero(1).with(0, 0, 0, 1);
        assert_eq!(one.associator(&v(&[1]), &v(&[1]), &v(&[1])).unwrap(), v(&[0]));
        let nil = Lsa::zero(2).with(0, 0, 1, 1).with(1, 0, 1, 1);
        assert_ne!(nil.associator(&v(&[1, 0]), &v(&[1, 0]), &v(&[1, 0])).unwrap(), v(&[0, 0]));
        assert!(nil.associator(&v(&[1]), &v(&[1, 0]), &v(&[1, 0])).is_err());
    }

    #[test]
    fn left_symmetry() {
        assert!(c5_minus().is_left_symmetric());
        assert!(b1(2).is_left_symmetric());
        let bad = Lsa::zero(2).with(0, 0, 0, 1).with(0, 1, 0, 1);
        assert!(!bad.is_left_symmetric());
    }

    #[test]
    fn matrices_of_b1() {
        let (l, r) = b1(2).mult_matrices();
        assert_eq!(l.to_rows_string(), vec![vec!["y", "0"], vec!["0", "2*y"]]);
        assert_eq!(r.to_rows_string(), vec![vec!["0", "x"], vec!["0", "2*y"]]);
        let inv = b1(2).invariant_polys();
        assert_eq!(inv.tr_r.to_string(), "2*y");
        assert_eq!(inv.tr_l.to_string(), "3*y");
        assert_eq!(inv.det_l.to_string(), "2*y^2");
        assert!(inv.det_r.is_zero());
        assert_eq!(c5_minus().invariant_polys().det_r.to_string(), "x^2 + y^2");
    }

    #[test]
    fn lie_structure_of_b1() {
        let ls = b1(3).lie_structure();
        assert!(!ls.is_commutative && ls.jacobi_ok);
        assert_eq!(ls.constants.get(0, 1, 0), &Quad::from_int(1));
        assert_eq!(ls.constants.get(0, 0, 1), &Quad::from_int(-1));
        assert!(c5_minus().lie_structure().is_commutative);
    }

    #[test]
    fn basis_change_round_trip() {
        let b2 = Lsa::zero(2).with(1, 0, 0, 1).with(1, 1, 1, 1).with(1, 1, 0, 1);
        let c = Matrix::from_i64(&[&[1, 0], &[1, 1]]);
        let a2 = b2.change_basis(&c).unwrap();
        assert_eq!(a2.change_basis(&c.inverse().unwrap()).unwrap(), b2);
        assert_eq!(b2.change_basis(&Matrix::identity(2)).unwrap(), b2);
        assert!(a2.is_left_symmetric());
    }

    #[test]
    fn property_s_cases() {
        let b2 = Lsa::zero(2).with(1, 0, 0, 1).with(1, 1, 1, 1).with(1, 1, 0, 1);
        assert!(b2.property_s(Side::Left).unwrap());
        assert!(!b1(3).property_s(Side::Left).unwrap());
        assert!(!Lsa::zero(2).property_s(Side::Left).unwrap());
        assert!(Lsa::zero(3).property_s(Side::Left).is_err());
    }

    #[test]
    fn text_round_trip() {
        let a = b1(2).with(0, 1, 0, rat(-1, 2));
        let text = a.to_string();
        assert_eq!(Lsa::parse(&text).unwrap(), a);
        let err = Lsa::parse("lsa dim=2\n1 3 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 3, .. }), "{err:?}");
    }
}
