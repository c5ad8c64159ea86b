//! Jet-level Morse splitting and the trace/determinant linearization used for
//! the algebras with a nondegenerate quadratic determinant.

use num_traits::Signed;

use super::homological::pushforward;
use crate::classify::{classify, Label};
use crate::error::{Error, Result};
use crate::jet::JetMap;
use crate::nij::{from_determinant, is_scalar_point, isotropy_algebra, DeterminantSolution, OperatorField};
use crate::poly::Poly;
use crate::quad::{Quad, Rat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MorseSplit {
    /// `(x, y) ↦ (h(x, y), y)`.
    pub map: JetMap,
    pub sign: i32,
    /// `g(y)`, written in the same variables as `f`.
    pub g: Poly,
    pub g_yy: Quad,
    pub f_yy: Quad,
}

/// `f = sgn(β)·h² + g(y)` modulo degree `deg + 1`, with `β = f_xx(0)`.
pub fn morse_split(f: &Poly, deg: u32) -> Result<MorseSplit> {
    if f.nvars() != 2 {
        return Err(Error::UnsupportedDimension(f.nvars()));
    }
    if deg < 2 {
        return Err(Error::InvalidInput("truncation degree must be at least 2".into()));
    }
    let vars = f.vars().clone();
    if !f.homogeneous_part(1).is_zero() {
        return Err(Error::InvalidInput("origin is not a critical point".into()));
    }
    let half_beta = f.coeff(&[2, 0]);
    if half_beta.is_zero() {
        return Err(Error::InvalidInput("f_xx(0) = 0".into()));
    }
    let sign = half_beta.signum();
    let s = Quad::from_int(sign as i64);
    let c = match half_beta.as_rat() {
        Some(r) => Quad::sqrt(&r.abs())?,
        None => return Err(Error::InvalidInput("f_xx(0) must be rational".into())),
    };
    let x = Poly::var(&vars, 0);
    let y = Poly::var(&vars, 1);
    let two_sc = (&Quad::from_int(2) * &s) * c.clone();
    let mut big_x = x.scale(&c.inv()?);
    for k in 2..=deg {
        let fk = f.subst_truncated(&[big_x.clone(), y.clone()], deg)?.homogeneous_part(k);
        let mut delta = Poly::zero(&vars);
        for (m, coef) in fk.terms() {
            let (i, j) = (m.exps()[0], m.exps()[1]);
            if i == 0 || (i == 2 && j == 0) {
                continue;
            }
            let t = coef.checked_div(&two_sc)?;
            delta = delta + Poly::monomial(&vars, &[i - 1, j], -t);
        }
        big_x = big_x + delta;
    }
    let chart = JetMap::new(vec![big_x.clone(), y.clone()], deg)?;
    let collapsed = f.subst_truncated(&[big_x, y.clone()], deg)?;
    let g = Poly::from_terms(
        &vars,
        collapsed
            .terms()
            .filter(|(m, _)| m.exps()[0] == 0)
            .map(|(m, c)| (m.clone(), c.clone())),
    );
    let map = chart.invert()?;
    let h = &map.components()[0];
    let check = (f - &(&h.mul_truncated(h, deg).scale(&s) + &g)).truncate(deg);
    if !check.is_zero() {
        return Err(Error::Verification(format!("Morse splitting leaves {check}")));
    }
    let g_yy = g.coeff(&[0, 2]).scale(&Rat::from_integer(2.into()));
    let f_yy = f.coeff(&[0, 2]).scale(&Rat::from_integer(2.into()));
    Ok(MorseSplit {
        map,
        sign,
        g,
        g_yy,
        f_yy,
    })
}

/// Change `(x, y) ↦ (u, tr R / α)` with `u ∈ {x, y}` chosen to keep the map
/// invertible, and the operator in the new chart.
pub fn trace_normalize(r: &OperatorField, alpha: &Quad, deg: u32) -> Result<(JetMap, OperatorField)> {
    if r.dim() != 2 {
        return Err(Error::UnsupportedDimension(r.dim()));
    }
    let vars = r.vars().clone();
    let lambda = is_scalar_point(r, &[Quad::zero(), Quad::zero()])?.ok_or(Error::NotScalarPoint)?;
    let t = r.trace() - Poly::constant(&vars, &Quad::from_int(2) * &lambda);
    let t_new = t.truncate(deg).scale(&alpha.inv()?);
    let keep = if t_new.coeff(&[0, 1]).is_zero() { 1 } else { 0 };
    let phi = JetMap::new(vec![Poly::var(&vars, keep), t_new], deg)?;
    let pushed = pushforward(r, &phi)?;
    Ok((phi, pushed))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantLinearization {
    pub map: JetMap,
    pub determinant: Poly,
    pub reconstructed: OperatorField,
}

fn trace_coefficient(label: Label) -> Option<i64> {
    match label {
        Label::C5Plus | Label::C5Minus => Some(2),
        Label::B5Plus | Label::B5Minus => Some(-2),
        _ => None,
    }
}

/// Linear normalization, `ỹ = tr R / α`, Morse splitting of `det R` along `x`,
/// then reconstruction of the operator from `(tr, det)`.
pub fn linearize_by_invariants(r: &OperatorField, deg: u32) -> Result<InvariantLinearization> {
    let vars = r.vars().clone();
    if vars.len() != 2 {
        return Err(Error::UnsupportedDimension(vars.len()));
    }
    let o = [Quad::zero(), Quad::zero()];
    let lambda = is_scalar_point(r, &o)?.ok_or(Error::NotScalarPoint)?;
    let r0 = r.sub(&OperatorField::scalar(&vars, &lambda));
    let class = classify(&isotropy_algebra(r, &o)?)?;
    let alpha = trace_coefficient(class.form.label).ok_or_else(|| {
        Error::InvalidInput(format!("{} has no trace/determinant normalization", class.form))
    })?;
    let alpha = Quad::from_int(alpha);
    let lin = JetMap::linear(&vars, &class.witness.inverse()?, deg)?;
    let r_lin = pushforward(&r0, &lin)?;
    let (trace_map, r_tr) = trace_normalize(&r_lin, &alpha, deg)?;
    let split = morse_split(&r_tr.det().truncate(deg), deg)?;
    let r_final = pushforward(&r_tr, &split.map)?;
    let x = Poly::var(&vars, 0);
    let determinant = &x.mul_truncated(&x, deg).scale(&Quad::from_int(split.sign as i64)) + &split.g;
    let alpha_rat = alpha.as_rat().expect("rational").clone();
    let reconstructed = match from_determinant(&alpha_rat, &determinant)? {
        DeterminantSolution::Unique(op) => op.truncate(deg),
        _ => {
            return Err(Error::Verification(
                "determinant in the final chart does not fix the operator".into(),
            ))
        }
    };
    if reconstructed != r_final.truncate(deg) {
        return Err(Error::Verification("reconstruction disagrees with the operator".into()));
    }
    let map = split.map.compose(&trace_map)?.compose(&lin)?;
    Ok(InvariantLinearization {
        map,
        determinant,
        reconstructed: reconstructed.add(&OperatorField::scalar(&vars, &lambda)),
    })
}
