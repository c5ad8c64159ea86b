//! Degree-by-degree formal linearization of operator jets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::JetMap;
use crate::linalg::Matrix;
use crate::nij::{is_scalar_point, isotropy_algebra, torsion, OperatorField};
use crate::poly::{Monomial, Poly, Vars};
use crate::quad::Quad;

/// A direction of the degree-`degree` residual that no change of coordinates
/// can remove. `component`/`column` are 1-based, as in `R^k_i`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ResonanceObstruction {
    pub degree: u32,
    pub component: usize,
    pub column: usize,
    pub monomial: Vec<u32>,
    pub monomial_text: String,
    pub coefficient: String,
}

impl ResonanceObstruction {
    pub fn coefficient_value(&self) -> Result<Quad> {
        self.coefficient.parse()
    }
}

impl fmt::Display for ResonanceObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree {}, entry ({},{}), monomial {}, coefficient {}",
            self.degree, self.component, self.column, self.monomial_text, self.coefficient
        )
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Linearization {
    /// `x̃ = φ(x)`, carrying `R` to its linear part.
    pub map: JetMap,
    /// `λ·Id + R₁`.
    pub linear: OperatorField,
    pub maxdeg: u32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LinearizeOutcome {
    Linearized(Linearization),
    Obstructed(ResonanceObstruction),
}

impl LinearizeOutcome {
    pub fn is_linearized(&self) -> bool {
        matches!(self, LinearizeOutcome::Linearized(_))
    }

    pub fn obstruction(&self) -> Option<&ResonanceObstruction> {
        match self {
            LinearizeOutcome::Obstructed(o) => Some(o),
            LinearizeOutcome::Linearized(_) => None,
        }
    }
}

fn origin(n: usize) -> Vec<Quad> {
    vec![Quad::zero(); n]
}

/// Jacobian matrix field `∂φ^k/∂x^i` of a polynomial map.
fn jacobian_field(vars: &Vars, comps: &[Poly]) -> OperatorField {
    let n = comps.len();
    let entries = comps.iter().map(|p| (0..n).map(|i| p.d(i)).collect()).collect();
    OperatorField::new(vars, entries).expect("square jacobian")
}

/// Inverse of a matrix field with invertible value at the origin, as a series
/// truncated at `deg`.
fn inverse_series(m: &OperatorField, deg: u32) -> Result<OperatorField> {
    let vars = m.vars().clone();
    let a = m.eval(&origin(m.dim()))?;
    let a_inv = OperatorField::constant(&vars, &a.inverse()?);
    let nilp = m.sub(&OperatorField::constant(&vars, &a));
    let step = a_inv.mul(&nilp).scale(&-Quad::one());
    let mut term = OperatorField::constant(&vars, &Matrix::identity(m.dim()));
    let mut sum = term.clone();
    for _ in 0..deg {
        term = term.mul_truncated(&step, deg);
        if term.is_zero() {
            break;
        }
        sum = sum.add(&term);
    }
    Ok(sum.mul_truncated(&a_inv, deg))
}

/// `R̃(x̃) = J R J⁻¹ |_{x = φ⁻¹(x̃)}` with `J = Dφ`, truncated at the degree of `φ`.
pub fn pushforward(r: &OperatorField, phi: &JetMap) -> Result<OperatorField> {
    if r.dim() != phi.dim() {
        return Err(Error::Dimension {
            expected: r.dim(),
            got: phi.dim(),
        });
    }
    if r.vars() != phi.vars() {
        return Err(Error::VarMismatch(r.vars().to_string(), phi.vars().to_string()));
    }
    let deg = phi.degree();
    let j = jacobian_field(phi.vars(), phi.components());
    let j_inv = inverse_series(&j, deg)?;
    let conj = j.mul_truncated(&r.truncate(deg), deg).mul_truncated(&j_inv, deg);
    let inv = phi.invert()?;
    conj.subst(inv.components(), Some(deg))
}

/// `R₁(ψ)`: the linear operator field evaluated at the vector `ψ`.
fn linear_at(r1: &OperatorField, psi: &[Poly]) -> OperatorField {
    r1.subst(psi, None).expect("matching dimensions")
}

fn conjugation_residual(r: &OperatorField, r1: &OperatorField, psi: &[Poly], deg: u32) -> OperatorField {
    let vars = r.vars().clone();
    let n = r.dim();
    let phi: Vec<Poly> = (0..n).map(|i| &Poly::var(&vars, i) + &psi[i]).collect();
    let j = jacobian_field(&vars, &phi);
    let lhs = j.mul_truncated(r, deg);
    let rhs = linear_at(r1, &phi).mul_truncated(&j, deg);
    lhs.sub(&rhs).truncate(deg)
}

/// `H(ψ) = Dψ·R₁ − R₁·Dψ − R₁(ψ)` for homogeneous `ψ`.
fn homological(r1: &OperatorField, psi: &[Poly]) -> OperatorField {
    let dpsi = jacobian_field(r1.vars(), psi);
    dpsi.mul(r1).sub(&r1.mul(&dpsi)).sub(&linear_at(r1, psi))
}

/// Coefficient vector of the degree-`k` part, indexed by (row, column, monomial).
fn flatten(op: &OperatorField, monos: &[Monomial]) -> Vec<Quad> {
    let n = op.dim();
    let mut out = Vec::with_capacity(n * n * monos.len());
    for row in 0..n {
        for col in 0..n {
            let p = op.entry(row, col);
            out.extend(monos.iter().map(|m| p.coeff(m.exps())));
        }
    }
    out
}

pub(crate) fn homological_matrix(r1: &OperatorField, k: u32) -> (Matrix, Vec<(usize, Monomial)>) {
    let vars = r1.vars().clone();
    let n = r1.dim();
    let monos = Monomial::all_of_degree(n, k);
    let unknowns: Vec<(usize, Monomial)> = (0..n)
        .flat_map(|c| monos.iter().map(move |m| (c, m.clone())))
        .collect();
    let cols: Vec<Vec<Quad>> = unknowns
        .iter()
        .map(|(c, m)| {
            let mut psi = vec![Poly::zero(&vars); n];
            psi[*c] = Poly::term(&vars, m.clone(), Quad::one());
            flatten(&homological(r1, &psi), &monos)
        })
        .collect();
    (Matrix::from_columns(&cols), unknowns)
}

fn shifted(r: &OperatorField) -> Result<(Quad, OperatorField)> {
    let n = r.dim();
    let lambda = is_scalar_point(r, &origin(n))?.ok_or(Error::NotScalarPoint)?;
    let r0 = r.sub(&OperatorField::scalar(r.vars(), &lambda));
    Ok((lambda, r0))
}

/// Lowest degree `≤ maxdeg` at which the torsion of `R` fails to vanish.
pub fn torsion_defect(r: &OperatorField, maxdeg: u32) -> Option<u32> {
    let t = torsion(&r.truncate(maxdeg));
    t.components()
        .filter_map(|(_, _, _, p)| p.truncate(maxdeg).min_degree())
        .min()
}

/// Seeks `φ = id + ψ₂ + … + ψ_maxdeg` with `φ_*R = R(0) + R₁` modulo degree
/// `maxdeg + 1`, solving one exact linear system per degree.
pub fn formal_linearize(r: &OperatorField, maxdeg: u32) -> Result<LinearizeOutcome> {
    if maxdeg == 0 {
        return Err(Error::InvalidInput("maxdeg must be at least 1".into()));
    }
    let n = r.dim();
    let vars = r.vars().clone();
    let (lambda, r0) = shifted(r)?;
    if !isotropy_algebra(r, &origin(n))?.is_left_symmetric() {
        return Err(Error::NotLeftSymmetric);
    }
    if let Some(d) = torsion_defect(&r0, maxdeg) {
        return Err(Error::NotNijenhuis(d as usize));
    }
    let r0 = r0.truncate(maxdeg);
    let r1 = r0.homogeneous_part(1);
    let mut psi = vec![Poly::zero(&vars); n];
    for k in 2..=maxdeg {
        let resid = conjugation_residual(&r0, &r1, &psi, k);
        debug_assert!(resid.truncate(k - 1).is_zero());
        let ek = resid.homogeneous_part(k);
        if ek.is_zero() {
            continue;
        }
        let monos = Monomial::all_of_degree(n, k);
        let e = flatten(&ek, &monos);
        let (h, unknowns) = homological_matrix(&r1, k);
        let rhs: Vec<Quad> = e.iter().map(|c| -c).collect();
        match h.solve(&rhs) {
            Ok(u) => {
                for ((c, m), coef) in unknowns.iter().zip(&u) {
                    if !coef.is_zero() {
                        psi[*c] = &psi[*c] + &Poly::term(&vars, m.clone(), coef.clone());
                    }
                }
            }
            Err(Error::Inconsistent(_)) => {
                return Ok(LinearizeOutcome::Obstructed(obstruction(&h, &e, &monos, n, k, &vars)?));
            }
            Err(err) => return Err(err),
        }
    }
    let comps: Vec<Poly> = (0..n).map(|i| &Poly::var(&vars, i) + &psi[i]).collect();
    let map = JetMap::new(comps, maxdeg)?;
    let linear = r1.add(&OperatorField::scalar(&vars, &lambda));
    let pushed = pushforward(r, &map)?;
    if !pushed.sub(&linear).truncate(maxdeg).is_zero() {
        return Err(Error::Verification("linearizing map fails its certificate".into()));
    }
    Ok(LinearizeOutcome::Linearized(Linearization { map, linear, maxdeg }))
}

fn obstruction(
    h: &Matrix,
    e: &[Quad],
    monos: &[Monomial],
    n: usize,
    k: u32,
    vars: &Vars,
) -> Result<ResonanceObstruction> {
    let support: Vec<usize> = (0..e.len()).filter(|&i| !e[i].is_zero()).collect();
    let order: Vec<usize> = support
        .iter()
        .copied()
        .chain((0..e.len()).filter(|i| e[*i].is_zero()))
        .collect();
    let complement = h.image_complement(&order);
    let (_, coeffs) = h.decompose(e, &complement)?;
    let (slot, coef) = complement
        .iter()
        .zip(&coeffs)
        .find(|(_, c)| !c.is_zero())
        .ok_or_else(|| Error::Verification("residual lies in the homological image".into()))?;
    let per_entry = monos.len();
    let entry = slot / per_entry;
    let mono = &monos[slot % per_entry];
    Ok(ResonanceObstruction {
        degree: k,
        component: entry / n + 1,
        column: entry % n + 1,
        monomial: mono.exps().to_vec(),
        monomial_text: mono.display(vars),
        coefficient: coef.to_string(),
    })
}

/// Rank test that the obstruction direction is outside the image of the
/// homological operator of `r`'s linear part at the given degree.
pub fn obstruction_is_sound(r: &OperatorField, o: &ResonanceObstruction) -> Result<bool> {
    let (_, r0) = shifted(r)?;
    let r1 = r0.homogeneous_part(1);
    let n = r.dim();
    let (h, _) = homological_matrix(&r1, o.degree);
    let monos = Monomial::all_of_degree(n, o.degree);
    let pos = monos
        .iter()
        .position(|m| m.exps() == o.monomial.as_slice())
        .ok_or_else(|| Error::InvalidInput("monomial of the wrong degree".into()))?;
    let slot = ((o.component - 1) * n + (o.column - 1)) * monos.len() + pos;
    let mut e = vec![Quad::zero(); h.rows()];
    e[slot] = Quad::one();
    let cols: Vec<Vec<Quad>> = (0..h.cols()).map(|j| h.column(j)).chain([e]).collect();
    Ok(Matrix::from_columns(&cols).rank() > h.rank())
}
