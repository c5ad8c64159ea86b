//! Operator fields with polynomial entries and their Nijenhuis torsion.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::lsa::Lsa;
use crate::poly::{Poly, Vars};
use crate::quad::{Quad, Rat};

/// `entries[k][i] = R^k_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorField {
    vars: Vars,
    entries: Vec<Vec<Poly>>,
}

impl OperatorField {
    pub fn new(vars: &Vars, entries: Vec<Vec<Poly>>) -> Result<Self> {
        let n = vars.len();
        if entries.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: entries.len(),
            });
        }
        for row in &entries {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: row.len(),
                });
            }
            if let Some(p) = row.iter().find(|p| p.vars() != vars) {
                return Err(Error::VarMismatch(vars.to_string(), p.vars().to_string()));
            }
        }
        Ok(OperatorField {
            vars: vars.clone(),
            entries,
        })
    }

    /// Rows of polynomial strings in the given variables.
    pub fn from_strs(vars: &Vars, rows: &[&[&str]]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| Poly::parse(s, vars)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        OperatorField::new(vars, entries)
    }

    pub fn zeros(vars: &Vars) -> Self {
        let n = vars.len();
        OperatorField {
            vars: vars.clone(),
            entries: vec![vec![Poly::zero(vars); n]; n],
        }
    }

    /// `λ·Id`.
    pub fn scalar(vars: &Vars, lambda: &Quad) -> Self {
        let mut out = OperatorField::zeros(vars);
        for i in 0..vars.len() {
            out.entries[i][i] = Poly::constant(vars, lambda.clone());
        }
        out
    }

    /// Constant matrix.
    pub fn constant(vars: &Vars, m: &Matrix) -> Self {
        let n = vars.len();
        OperatorField {
            vars: vars.clone(),
            entries: (0..n)
                .map(|k| (0..n).map(|i| Poly::constant(vars, m.get(k, i).clone())).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn entry(&self, k: usize, i: usize) -> &Poly {
        &self.entries[k][i]
    }

    pub fn set(&mut self, k: usize, i: usize, p: Poly) {
        assert_eq!(p.vars(), &self.vars);
        self.entries[k][i] = p;
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn to_rows_string(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> OperatorField {
        OperatorField {
            vars: self.vars.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    fn zip(&self, other: &OperatorField, f: impl Fn(&Poly, &Poly) -> Poly) -> OperatorField {
        assert_eq!(self.dim(), other.dim(), "operator dimensions");
        OperatorField {
            vars: self.vars.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.iter().zip(b).map(|(p, q)| f(p, q)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &OperatorField) -> OperatorField {
        self.zip(other, |p, q| p + q)
    }

    pub fn sub(&self, other: &OperatorField) -> OperatorField {
        self.zip(other, |p, q| p - q)
    }

    pub fn scale(&self, c: &Quad) -> OperatorField {
        self.map(|p| p.scale(c))
    }

    fn mul_impl(&self, other: &OperatorField, trunc: Option<u32>) -> OperatorField {
        let n = self.dim();
        assert_eq!(n, other.dim(), "operator dimensions");
        let entries = (0..n)
            .map(|k| {
                (0..n)
                    .map(|i| {
                        (0..n).fold(Poly::zero(&self.vars), |acc, r| {
                            let a = &self.entries[k][r];
                            let b = &other.entries[r][i];
                            if a.is_zero() || b.is_zero() {
                                return acc;
                            }
                            match trunc {
                                Some(t) => acc + a.mul_truncated(b, t),
                                None => acc + a * b,
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        OperatorField {
            vars: self.vars.clone(),
            entries,
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &OperatorField) -> OperatorField {
        self.mul_impl(other, None)
    }

    pub fn mul_truncated(&self, other: &OperatorField, deg: u32) -> OperatorField {
        self.mul_impl(other, Some(deg))
    }

    pub fn truncate(&self, deg: u32) -> OperatorField {
        self.map(|p| p.truncate(deg))
    }

    pub fn homogeneous_part(&self, deg: u32) -> OperatorField {
        self.map(|p| p.homogeneous_part(deg))
    }

    pub fn degree(&self) -> Option<u32> {
        self.entries.iter().flatten().filter_map(Poly::degree).max()
    }

    pub fn trace(&self) -> Poly {
        (0..self.dim()).fold(Poly::zero(&self.vars), |acc, i| acc + &self.entries[i][i])
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Poly {
        fn rec(m: &[Vec<Poly>], vars: &Vars) -> Poly {
            match m.len() {
                0 => Poly::one(vars),
                1 => m[0][0].clone(),
                2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
                n => {
                    let mut acc = Poly::zero(vars);
                    for c in 0..n {
                        if m[0][c].is_zero() {
                            continue;
                        }
                        let minor: Vec<Vec<Poly>> = m[1..]
                            .iter()
                            .map(|row| {
                                row.iter()
                                    .enumerate()
                                    .filter(|(j, _)| *j != c)
                                    .map(|(_, p)| p.clone())
                                    .collect()
                            })
                            .collect();
                        let t = &m[0][c] * &rec(&minor, vars);
                        acc = if c % 2 == 0 { acc + t } else { acc - t };
                    }
                    acc
                }
            }
        }
        rec(&self.entries, &self.vars)
    }

    pub fn eval(&self, point: &[Quad]) -> Result<Matrix> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(rows))
    }

    /// Entries composed with `map` (which may live in other variables).
    pub fn subst(&self, map: &[Poly], trunc: Option<u32>) -> Result<OperatorField> {
        let vars = map.first().map(|p| p.vars().clone()).unwrap_or_else(|| self.vars.clone());
        let entries = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|p| match trunc {
                        Some(t) => p.subst_truncated(map, t),
                        None => p.subst(map),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        OperatorField::new(&vars, entries)
    }

    pub fn recentre(&self, point: &[Quad]) -> Result<OperatorField> {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| p.recentre(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        OperatorField::new(&self.vars, entries)
    }

    /// `R − λ·Id`.
    pub fn shift(&self, lambda: &Rat) -> OperatorField {
        self.sub(&OperatorField::scalar(&self.vars, &Quad::from_rat(lambda.clone())))
    }

    /// Text format: `op dim=<n> vars=x,y` followed by `n` lines of `n`
    /// comma-separated polynomials. `#` starts a comment.
    pub fn parse(text: &str) -> Result<OperatorField> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
            .filter(|(_, l)| !l.trim().is_empty());
        let perr = |line: usize, column: usize, message: String| Error::Parse {
            line,
            column,
            message,
        };
        let (hline, header) = lines.next().ok_or_else(|| perr(1, 1, "empty input".into()))?;
        let mut words = header.split_whitespace();
        if words.next() != Some("op") {
            return Err(perr(hline, 1, "expected header `op dim=<n> vars=…`".into()));
        }
        let mut dim = None;
        let mut vars = None;
        for w in words {
            let col = header.find(w).unwrap_or(0) + 1;
            if let Some(d) = w.strip_prefix("dim=") {
                dim = Some(
                    d.parse::<usize>()
                        .ok()
                        .filter(|&d| d > 0)
                        .ok_or_else(|| perr(hline, col, format!("bad dimension `{d}`")))?,
                );
            } else if let Some(v) = w.strip_prefix("vars=") {
                vars = Some(Vars::new(v.split(',').map(str::trim)));
            } else {
                return Err(perr(hline, col, format!("unknown header field `{w}`")));
            }
        }
        let dim = dim.ok_or_else(|| perr(hline, 1, "missing `dim=`".into()))?;
        let vars = vars.unwrap_or_else(|| if dim == 2 { Vars::xy() } else { Vars::indexed(dim) });
        if vars.len() != dim {
            return Err(perr(
                hline,
                1,
                format!("dim={dim} but {} variables declared", vars.len()),
            ));
        }
        let mut entries = Vec::with_capacity(dim);
        for (lineno, line) in lines.by_ref().take(dim) {
            let mut row = Vec::with_capacity(dim);
            let mut offset = 0;
            for cell in line.split(',') {
                let p = Poly::parse(cell, &vars).map_err(|e| match e {
                    Error::Parse {
                        column, message, ..
                    } => perr(lineno, offset + column, message),
                    other => other,
                })?;
                row.push(p);
                offset += cell.chars().count() + 1;
            }
            if row.len() != dim {
                return Err(perr(
                    lineno,
                    1,
                    format!("expected {dim} entries, got {}", row.len()),
                ));
            }
            entries.push(row);
        }
        if entries.len() != dim {
            return Err(perr(
                hline + entries.len() + 1,
                1,
                format!("expected {dim} rows, got {}", entries.len()),
            ));
        }
        if let Some((lineno, _)) = lines.next() {
            return Err(perr(lineno, 1, "trailing input after operator rows".into()));
        }
        OperatorField::new(&vars, entries)
    }
}

impl fmt::Display for OperatorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "op dim={} vars={}", self.dim(), self.vars)?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Components `N^k_{ij}` for `i < j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorsionTensor {
    dim: usize,
    comps: Vec<Poly>,
}

impl TorsionTensor {
    fn slot(&self, k: usize, i: usize, j: usize) -> usize {
        let n = self.dim;
        let pair = i * n - i * (i + 1) / 2 + (j - i - 1);
        k * (n * (n - 1) / 2) + pair
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `N^k_{ij}`, antisymmetric in `(i, j)`.
    pub fn get(&self, k: usize, i: usize, j: usize) -> Poly {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.comps[self.slot(k, i, j)].clone(),
            Greater => -&self.comps[self.slot(k, j, i)],
            Equal => Poly::zero(self.comps[0].vars()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    /// Lowest total degree of a nonzero component.
    pub fn min_degree(&self) -> Option<u32> {
        self.comps.iter().filter_map(Poly::min_degree).min()
    }

    /// Iterates `(k, i, j, N^k_{ij})` with `i < j`.
    pub fn components(&self) -> impl Iterator<Item = (usize, usize, usize, &Poly)> {
        let n = self.dim;
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let np = pairs.len();
        self.comps
            .iter()
            .enumerate()
            .map(move |(s, p)| (s / np, pairs[s % np].0, pairs[s % np].1, p))
    }
}

pub fn torsion(r: &OperatorField) -> TorsionTensor {
    let n = r.dim();
    if n < 2 {
        return TorsionTensor {
            dim: n,
            comps: Vec::new(),
        };
    }
    // d[k][i][s] = ∂_s R^k_i
    let d: Vec<Vec<Vec<Poly>>> = r
        .entries
        .iter()
        .map(|row| row.iter().map(|p| (0..n).map(|s| p.d(s)).collect()).collect())
        .collect();
    let mut comps = Vec::new();
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                let mut acc = Poly::zero(&r.vars);
                for s in 0..n {
                    acc = acc + &d[k][j][s] * &r.entries[s][i];
                    acc = acc - &d[k][i][s] * &r.entries[s][j];
                    acc = acc - &d[s][j][i] * &r.entries[k][s];
                    acc = acc + &d[s][i][j] * &r.entries[k][s];
                }
                comps.push(acc);
            }
        }
    }
    TorsionTensor { dim: n, comps }
}

pub fn is_nijenhuis(r: &OperatorField) -> bool {
    torsion(r).is_zero()
}

fn require_2d(r: &OperatorField) -> Result<()> {
    if r.dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: r.dim(),
        });
    }
    Ok(())
}

/// `d(det R) − cof(R)·d(tr R)`; both components vanish iff `R` is Nijenhuis.
pub fn cofactor_residual(r: &OperatorField) -> Result<(Poly, Poly)> {
    require_2d(r)?;
    let t = r.trace();
    let d = r.det();
    let (tx, ty) = (t.d(0), t.d(1));
    let e = |k: usize, i: usize| r.entry(k, i);
    let first = d.d(0) - (e(1, 1) * &tx - e(1, 0) * &ty);
    let second = d.d(1) - (e(0, 0) * &ty - e(0, 1) * &tx);
    Ok((first, second))
}

/// `Some(λ)` when `R(P) = λ·Id`.
pub fn is_scalar_point(r: &OperatorField, p: &[Quad]) -> Result<Option<Quad>> {
    let m = r.eval(p)?;
    let lambda = m.get(0, 0).clone();
    let n = r.dim();
    for k in 0..n {
        for i in 0..n {
            let want = if k == i { lambda.clone() } else { Quad::zero() };
            if m.get(k, i) != &want {
                return Ok(None);
            }
        }
    }
    Ok(Some(lambda))
}

/// Structure constants `a^k_{ij} = ∂R^k_i/∂x^j` at a scalar point.
pub fn isotropy_algebra(r: &OperatorField, p: &[Quad]) -> Result<Lsa> {
    if is_scalar_point(r, p)?.is_none() {
        return Err(Error::NotScalarPoint);
    }
    let n = r.dim();
    let mut a = Lsa::zero(n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                a.set(k, i, j, r.entry(k, i).d(j).eval(p)?);
            }
        }
    }
    Ok(a)
}

/// Homogeneous parts `R_0, …, R_maxdeg` of the expansion at `P`.
pub fn taylor_parts(r: &OperatorField, p: &[Quad], maxdeg: Option<u32>) -> Result<Vec<OperatorField>> {
    let centred = r.recentre(p)?;
    let top = maxdeg.unwrap_or_else(|| centred.degree().unwrap_or(0));
    Ok((0..=top).map(|d| centred.homogeneous_part(d)).collect())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DeterminantSolution {
    Unique(OperatorField),
    /// `R¹₂` is an arbitrary function; the template carries 0 in that slot.
    NotUnique { template: OperatorField },
    NotPolynomial,
}

/// Operator in `x, y` with `tr R = αy`, `det R = D`, built from the
/// local normal form of 2D Nijenhuis operators.
pub fn from_determinant(alpha: &Rat, d: &Poly) -> Result<DeterminantSolution> {
    if num_traits::Zero::is_zero(alpha) {
        return Err(Error::InvalidInput("alpha must be nonzero".into()));
    }
    if d.nvars() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: d.nvars(),
        });
    }
    let vars = d.vars().clone();
    let a = Quad::from_rat(alpha.clone());
    let a_inv = a.inv()?;
    let y = Poly::var(&vars, 1);
    let (dx, dy) = (d.d(0), d.d(1));
    let r11 = dy.scale(&a_inv);
    let r21 = -dx.scale(&a_inv);
    let r22 = y.scale(&a) - &r11;
    let numer = d.scale(&a) - &dy * &r22;
    let build = |r12: Poly| {
        OperatorField::new(&vars, vec![vec![r11.clone(), r12], vec![r21.clone(), r22.clone()]])
            .expect("2x2")
    };
    if dx.is_zero() {
        if numer.is_zero() {
            return Ok(DeterminantSolution::NotUnique {
                template: build(Poly::zero(&vars)),
            });
        }
        return Err(Error::Inconsistent(format!(
            "D_x vanishes but {numer} does not"
        )));
    }
    match numer.exact_div(&dx) {
        Ok(r12) => Ok(DeterminantSolution::Unique(build(r12))),
        Err(Error::Inconsistent(_)) => Ok(DeterminantSolution::NotPolynomial),
        Err(e) => Err(e),
    }
}

/// Components of `R*dμ − μ·dμ`.
pub fn eigenfunction_residual(r: &OperatorField, mu: &Poly) -> Result<(Poly, Poly)> {
    require_2d(r)?;
    let grad = [mu.d(0), mu.d(1)];
    let comp = |i: usize| {
        let rd = r.entry(0, i) * &grad[0] + r.entry(1, i) * &grad[1];
        rd - mu * &grad[i]
    };
    Ok((comp(0), comp(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(rows: &[&[&str]]) -> OperatorField {
        OperatorField::from_strs(&Vars::xy(), rows).unwrap()
    }

    fn origin() -> Vec<Quad> {
        vec![Quad::zero(), Quad::zero()]
    }

    #[test]
    fn torsion_examples() {
        assert!(is_nijenhuis(&op(&[&["0", "-x"], &["-x", "-2*y"]])));
        assert!(is_nijenhuis(&op(&[&["x", "0"], &["0", "y"]])));
        let t = torsion(&op(&[&["y", "0"], &["0", "x"]]));
        assert_eq!(t.get(0, 0, 1).to_string(), "-x + y");
        assert_eq!(t.get(1, 0, 1).to_string(), "-x + y");
        assert_eq!(t.get(1, 1, 0).to_string(), "x - y");
    }

    #[test]
    fn triangular_templates() {
        assert!(is_nijenhuis(&op(&[&["y^2", "x*y"], &["0", "y^2"]])));
        assert!(is_nijenhuis(&op(&[&["0", "x + y^3"], &["0", "-y"]])));
        assert!(!is_nijenhuis(&op(&[&["y", "0"], &["0", "x"]])));
    }

    #[test]
    fn cofactor_examples() {
        let z = |r: (Poly, Poly)| r.0.is_zero() && r.1.is_zero();
        assert!(z(cofactor_residual(&op(&[&["0", "-x"], &["-x", "-2*y"]])).unwrap()));
        assert!(!z(cofactor_residual(&op(&[&["y", "0"], &["0", "x"]])).unwrap()));
        assert!(z(cofactor_residual(&op(&[&["3", "0"], &["0", "3"]])).unwrap()));
    }

    #[test]
    fn scalar_points_and_isotropy() {
        let e1 = op(&[&["0", "-x"], &["-x", "-2*y"]]);
        assert_eq!(is_scalar_point(&e1, &origin()).unwrap(), Some(Quad::zero()));
        let d = op(&[&["x", "0"], &["0", "y"]]);
        let one = vec![Quad::one(), Quad::one()];
        assert_eq!(is_scalar_point(&d, &one).unwrap(), Some(Quad::one()));
        let p = vec![Quad::one(), Quad::from_int(2)];
        assert_eq!(is_scalar_point(&d, &p).unwrap(), None);
        assert_eq!(isotropy_algebra(&d, &p), Err(Error::NotScalarPoint));
        let b4 = op(&[&["y", "y - x^2"], &["0", "y"]]);
        assert!(isotropy_algebra(&b4, &origin()).unwrap().is_left_symmetric());
    }

    #[test]
    fn taylor_of_b4_witness() {
        let parts = taylor_parts(&op(&[&["y", "y - x^2"], &["0", "y"]]), &origin(), None).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts[0].is_zero());
        assert_eq!(parts[1], op(&[&["y", "y"], &["0", "y"]]));
        assert_eq!(parts[2], op(&[&["0", "-x^2"], &["0", "0"]]));
    }

    #[test]
    fn determinant_constructor() {
        let v = Vars::xy();
        let two = Rat::from_integer(2.into());
        let d = Poly::parse("x^2 + y^2", &v).unwrap();
        match from_determinant(&two, &d).unwrap() {
            DeterminantSolution::Unique(r) => assert_eq!(r, op(&[&["y", "x"], &["-x", "y"]])),
            other => panic!("{other:?}"),
        }
        let d = Poly::parse("x^3", &v).unwrap();
        match from_determinant(&two, &d).unwrap() {
            DeterminantSolution::Unique(r) => {
                assert_eq!(r, op(&[&["0", "2/3*x"], &["-3/2*x^2", "2*y"]]));
                assert!(is_nijenhuis(&r));
            }
            other => panic!("{other:?}"),
        }
        let one = Rat::from_integer(1.into());
        match from_determinant(&one, &Poly::zero(&v)).unwrap() {
            DeterminantSolution::NotUnique { template } => {
                assert_eq!(template, op(&[&["0", "0"], &["0", "y"]]))
            }
            other => panic!("{other:?}"),
        }
        assert!(from_determinant(&one, &Poly::parse("y", &v).unwrap()).is_err());
        let d = Poly::parse("x^2*y + x", &v).unwrap();
        assert_eq!(from_determinant(&one, &d).unwrap(), DeterminantSolution::NotPolynomial);
    }

    #[test]
    fn eigenfunctions() {
        let v = Vars::xy();
        let z = |r: (Poly, Poly)| r.0.is_zero() && r.1.is_zero();
        let d = op(&[&["x", "0"], &["0", "y"]]);
        assert!(z(eigenfunction_residual(&d, &Poly::parse("x", &v).unwrap()).unwrap()));
        assert!(!z(eigenfunction_residual(&d, &Poly::parse("x + y", &v).unwrap()).unwrap()));
        let b = op(&[&["0", "x"], &["0", "2*y"]]);
        assert!(z(eigenfunction_residual(&b, &Poly::parse("2*y", &v).unwrap()).unwrap()));
    }

    #[test]
    fn shifting() {
        let l = Rat::from_integer(3.into());
        let s = OperatorField::scalar(&Vars::xy(), &Quad::from_int(3));
        assert!(s.shift(&l).is_zero());
        let r = op(&[&["y^2", "x*y"], &["0", "y^2"]]);
        assert_eq!(r.shift(&l).shift(&-l.clone()), r);
    }

    #[test]
    fn op_text_round_trip() {
        let r = op(&[&["0", "-x"], &["-x", "-2*y"]]);
        assert_eq!(OperatorField::parse(&r.to_string()).unwrap(), r);
        let err = OperatorField::parse("op dim=2 vars=x,y\nx, y\n0, z\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 4, .. }), "{err:?}");
    }
}
