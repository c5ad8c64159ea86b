//! Planar vector-field jets: the triangular reduction and formal normal forms.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::JetMap;
use crate::linalg::Matrix;
use crate::nij::OperatorField;
use crate::poly::{Monomial, Poly, Vars};
use crate::quad::{fmt_rat, Quad, Rat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    comps: Vec<Poly>,
}

impl VectorField {
    pub fn new(comps: Vec<Poly>) -> Result<Self> {
        let Some(first) = comps.first() else {
            return Err(Error::InvalidInput("empty vector field".into()));
        };
        let vars = first.vars().clone();
        if vars.len() != comps.len() {
            return Err(Error::Dimension {
                expected: vars.len(),
                got: comps.len(),
            });
        }
        if let Some(p) = comps.iter().find(|p| *p.vars() != vars) {
            return Err(Error::VarMismatch(vars.to_string(), p.vars().to_string()));
        }
        Ok(VectorField { comps })
    }

    pub fn from_strs(vars: &Vars, comps: &[&str]) -> Result<Self> {
        VectorField::new(comps.iter().map(|s| Poly::parse(s, vars)).collect::<Result<_>>()?)
    }

    pub fn vars(&self) -> &Vars {
        self.comps[0].vars()
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    /// The derivation `h ↦ v(h) = Σ vⁱ ∂h/∂xⁱ`.
    pub fn apply(&self, h: &Poly) -> Poly {
        self.comps
            .iter()
            .enumerate()
            .fold(Poly::zero(self.vars()), |acc, (i, v)| acc + v * &h.d(i))
    }

    pub fn linear_part(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, p) in self.comps.iter().enumerate() {
            for j in 0..n {
                m.set(i, j, p.coeff(Monomial::var(n, j).exps()));
            }
        }
        m
    }

    pub fn truncate(&self, deg: u32) -> VectorField {
        VectorField {
            comps: self.comps.iter().map(|p| p.truncate(deg)).collect(),
        }
    }

    /// `ṽ(x̃) = Dφ·v` expressed at `x = φ⁻¹(x̃)`, truncated at the degree of `φ`.
    pub fn pushforward(&self, phi: &JetMap) -> Result<VectorField> {
        let deg = phi.degree();
        let inv = phi.invert()?;
        let jac = phi.jacobian();
        let comps = jac
            .iter()
            .map(|row| {
                let p = row
                    .iter()
                    .zip(&self.comps)
                    .fold(Poly::zero(self.vars()), |acc, (a, b)| acc + a.mul_truncated(b, deg));
                p.subst_truncated(inv.components(), deg)
            })
            .collect::<Result<_>>()?;
        Ok(VectorField { comps })
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn triangular_alpha(r: &OperatorField) -> Result<Rat> {
    let bad = || Error::InvalidInput("operator is not of the form [[0, f], [0, a*y]]".into());
    if r.dim() != 2 || !r.entry(0, 0).is_zero() || !r.entry(1, 0).is_zero() {
        return Err(bad());
    }
    let vars = r.vars();
    let r22 = r.entry(1, 1);
    let coef = r22.coeff(&[0, 1]);
    if *r22 != Poly::var(vars, 1).scale(&coef) || coef.is_zero() {
        return Err(bad());
    }
    let f = r.entry(0, 1);
    if !f.constant_term().is_zero() || !f.coeff(&[1, 0]).is_one() || !f.coeff(&[0, 1]).is_zero() {
        return Err(Error::InvalidInput("f must have linear part x".into()));
    }
    coef.as_rat().cloned().ok_or_else(bad)
}

/// `[[0, f], [0, αy]] ↦ (f, αy)`.
pub fn tridiagonal_reduce(r: &OperatorField) -> Result<VectorField> {
    triangular_alpha(r)?;
    VectorField::new(vec![r.entry(0, 1).clone(), r.entry(1, 1).clone()])
}

/// `(f, αy) ↦ [[0, f], [0, αy]]`.
pub fn tridiagonal_unreduce(v: &VectorField) -> Result<OperatorField> {
    if v.dim() != 2 {
        return Err(Error::UnsupportedDimension(v.dim()));
    }
    let vars = v.vars().clone();
    let r = OperatorField::new(
        &vars,
        vec![
            vec![Poly::zero(&vars), v.comps[0].clone()],
            vec![Poly::zero(&vars), v.comps[1].clone()],
        ],
    )?;
    triangular_alpha(&r)?;
    Ok(r)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Table5Row {
    NoResonance,
    /// `ẋ = r·x + a·y^r, ẏ = y` up to a common factor, roles of the axes as found.
    ResonantNode { r: u32, a: i32 },
    /// `λ₁/λ₂ = −p/q`.
    ResonantSaddle { p: u32, q: u32 },
}

impl fmt::Display for Table5Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Table5Row::NoResonance => write!(f, "no resonance"),
            Table5Row::ResonantNode { r, a } => write!(f, "resonant node (r = {r}, a = {a})"),
            Table5Row::ResonantSaddle { p, q } => write!(f, "resonant saddle (p = {p}, q = {q})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VfNormalForm {
    pub field: VectorField,
    /// `x̃ = φ(x)` carrying the input to `field`.
    pub map: JetMap,
    pub row: Table5Row,
    pub eigenvalues: (Rat, Rat),
}

fn diagonal_eigenvalues(v: &VectorField) -> Result<(Rat, Rat)> {
    if v.dim() != 2 {
        return Err(Error::UnsupportedDimension(v.dim()));
    }
    if v.comps.iter().any(|p| !p.constant_term().is_zero()) {
        return Err(Error::InvalidInput("origin is not a critical point".into()));
    }
    let a = v.linear_part();
    if !a.get(0, 1).is_zero() || !a.get(1, 0).is_zero() {
        return Err(Error::InvalidInput("linear part must be diagonal".into()));
    }
    let l1 = a.get(0, 0).as_rat().cloned();
    let l2 = a.get(1, 1).as_rat().cloned();
    match (l1, l2) {
        (Some(l1), Some(l2)) if !l1.is_zero() && !l2.is_zero() => Ok((l1, l2)),
        (Some(_), Some(_)) => Err(Error::InvalidInput("zero eigenvalue".into())),
        _ => Err(Error::InvalidInput("eigenvalues must be rational".into())),
    }
}

fn eigen_weight(m: &Monomial, l: &(Rat, Rat)) -> Rat {
    &l.0 * Rat::from_integer(m.exps()[0].into()) + &l.1 * Rat::from_integer(m.exps()[1].into())
}

/// Whether `x^i y^j` in component `c` (0-based) is resonant.
pub fn is_resonant(exps: &[u32], component: usize, l: &(Rat, Rat)) -> bool {
    let lc = if component == 0 { &l.0 } else { &l.1 };
    eigen_weight(&Monomial(exps.to_vec()), l) == *lc
}

fn as_small_int(r: &Rat) -> Option<u32> {
    if r.is_integer() && r.is_positive() {
        r.to_integer().to_u32()
    } else {
        None
    }
}

/// Poincaré–Dulac reduction up to `maxdeg`: every non-resonant monomial is removed.
pub fn vf_normal_form(v: &VectorField, maxdeg: u32) -> Result<VfNormalForm> {
    let l = diagonal_eigenvalues(v)?;
    let vars = v.vars().clone();
    let mut field = v.truncate(maxdeg);
    let mut total = JetMap::identity(&vars, maxdeg);
    for k in 2..=maxdeg {
        let mut h = vec![Poly::zero(&vars), Poly::zero(&vars)];
        for (c, hc) in h.iter_mut().enumerate() {
            let lc = if c == 0 { &l.0 } else { &l.1 };
            for (m, coef) in field.comps[c].homogeneous_part(k).terms() {
                let denom = lc - eigen_weight(m, &l);
                if !denom.is_zero() {
                    let t = coef.scale(&denom.recip());
                    *hc = &*hc + &Poly::term(&vars, m.clone(), t);
                }
            }
        }
        if h.iter().all(Poly::is_zero) {
            continue;
        }
        let step = JetMap::new(
            vec![&Poly::var(&vars, 0) + &h[0], &Poly::var(&vars, 1) + &h[1]],
            maxdeg,
        )?;
        field = field.pushforward(&step)?;
        total = step.compose(&total)?;
    }
    let ratio = &l.0 / &l.1;
    let row = if l.0 == l.1 {
        Table5Row::NoResonance
    } else if let Some(r) = as_small_int(&ratio).filter(|&r| r >= 2) {
        let (a, scaled) = normalize_node(&field, 0, r, maxdeg)?;
        if let Some(s) = scaled {
            field = field.pushforward(&s)?;
            total = s.compose(&total)?;
        }
        Table5Row::ResonantNode { r, a }
    } else if let Some(r) = as_small_int(&ratio.recip()).filter(|&r| r >= 2) {
        let (a, scaled) = normalize_node(&field, 1, r, maxdeg)?;
        if let Some(s) = scaled {
            field = field.pushforward(&s)?;
            total = s.compose(&total)?;
        }
        Table5Row::ResonantNode { r, a }
    } else if ratio.is_negative() {
        let p = (-ratio.clone()).numer().to_u32();
        let q = ratio.denom().to_u32();
        match (p, q) {
            (Some(p), Some(q)) => Table5Row::ResonantSaddle { p, q },
            _ => return Err(Error::InvalidInput("eigenvalue ratio too large".into())),
        }
    } else {
        Table5Row::NoResonance
    };
    Ok(VfNormalForm {
        field,
        map: total,
        row,
        eigenvalues: l,
    })
}

/// Rescales the fast coordinate so the resonant coefficient becomes `±1`.
fn normalize_node(field: &VectorField, fast: usize, r: u32, maxdeg: u32) -> Result<(i32, Option<JetMap>)> {
    let mut exps = [0u32; 2];
    exps[1 - fast] = r;
    let coef = field.comps[fast].coeff(&exps);
    if coef.is_zero() {
        return Ok((0, None));
    }
    let sign = coef.signum();
    if coef.abs().is_one() || r > maxdeg {
        return Ok((sign, None));
    }
    let mut diag = Matrix::identity(2);
    diag.set(fast, fast, coef.abs().inv()?);
    Ok((sign, Some(JetMap::linear(field.vars(), &diag, maxdeg)?)))
}

/// Basis of polynomials `h` of degree `≤ maxdeg` with `v(h) = μh` modulo
/// degree `maxdeg + 1`, in reduced echelon form.
pub fn eigenfunction_kernel(v: &VectorField, mu: &Quad, maxdeg: u32) -> Result<Vec<Poly>> {
    let vars = v.vars().clone();
    let n = v.dim();
    let monos: Vec<Monomial> = (0..=maxdeg).flat_map(|d| Monomial::all_of_degree(n, d)).collect();
    let cols: Vec<Vec<Quad>> = monos
        .iter()
        .map(|m| {
            let h = Poly::term(&vars, m.clone(), Quad::one());
            let e = (v.apply(&h) - h.scale(mu)).truncate(maxdeg);
            monos.iter().map(|mm| e.coeff(mm.exps())).collect()
        })
        .collect();
    let kernel = Matrix::from_columns(&cols).nullspace();
    if kernel.is_empty() {
        return Ok(Vec::new());
    }
    let (basis, _) = Matrix::from_rows(kernel).rref();
    Ok((0..basis.rows())
        .map(|i| {
            Poly::from_terms(
                &vars,
                monos.iter().cloned().zip(basis.row(i).iter().cloned()),
            )
        })
        .filter(|p| !p.is_zero())
        .collect())
}

pub fn describe_eigenvalues(l: &(Rat, Rat)) -> String {
    format!("({}, {})", fmt_rat(&l.0), fmt_rat(&l.1))
}
