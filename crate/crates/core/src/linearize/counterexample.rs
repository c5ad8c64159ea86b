//! Polynomial Nijenhuis operators whose linear part is a degenerate algebra but
//! which admit no linearizing change of coordinates.

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::brjuno::CFrac;
use super::sigma::{sigma_membership, SigmaSet};
use crate::classify::{Label, NormalForm};
use crate::error::{Error, Result};
use crate::nij::OperatorField;
use crate::poly::{Poly, Vars};
use crate::quad::{fmt_rat, Quad, Rat};

fn op(rows: &[&[&str]]) -> OperatorField {
    OperatorField::from_strs(&Vars::xy(), rows).expect("fixed operator text")
}

fn b1_counterexample(form: &NormalForm, alpha: &Rat) -> Result<OperatorField> {
    let vars = Vars::xy();
    let x = Poly::var(&vars, 0);
    let y = Poly::var(&vars, 1);
    let zero = Poly::zero(&vars);
    let a = Quad::from_rat(alpha.clone());
    let tags = sigma_membership(alpha);
    if tags.contains(&SigmaSet::Sigma0) {
        return Ok(op(&[&["y^2", "x"], &["0", "y^2"]]));
    }
    if tags.contains(&SigmaSet::Sigma1) {
        let r = alpha.to_integer().to_u32().ok_or_else(|| Error::InvalidInput("alpha too large".into()))?;
        return OperatorField::new(
            &vars,
            vec![vec![zero, x.clone()], vec![x.pow(r - 1), y.scale(&a)]],
        );
    }
    if tags.contains(&SigmaSet::Sigma3) {
        let r = alpha.denom().to_u32().ok_or_else(|| Error::InvalidInput("alpha too small".into()))?;
        let f = &x + &y.pow(r).scale(&a);
        return OperatorField::new(&vars, vec![vec![zero.clone(), f], vec![zero, y.scale(&a)]]);
    }
    if alpha.is_negative() {
        let p = (-alpha).numer().to_u32();
        let q = alpha.denom().to_u32();
        let (Some(p), Some(q)) = (p, q) else {
            return Err(Error::InvalidInput("alpha too large".into()));
        };
        let f = &x + &Poly::monomial(&vars, &[p + 1, q], 1);
        return OperatorField::new(&vars, vec![vec![zero.clone(), f], vec![zero, y.scale(&a)]]);
    }
    Err(Error::NotDegenerate(form.to_string()))
}

pub fn gen_counterexample(form: &NormalForm) -> Result<OperatorField> {
    match form.label {
        Label::C1 => Ok(op(&[&["x^2", "0"], &["0", "y^2"]])),
        Label::C2 => Ok(op(&[&["x^2", "0"], &["0", "y"]])),
        Label::C3 => Ok(op(&[&["y^2", "y"], &["0", "y^2"]])),
        Label::C4 => Ok(op(&[&["y + y*x^2", "x + x^3"], &["-x*y^2", "y - y*x^2"]])),
        Label::B4 => Ok(op(&[&["y", "y - x^2"], &["0", "y"]])),
        Label::B3 => {
            let alpha = form.alpha.as_ref().expect("b3 carries alpha");
            let beta = Rat::one() - alpha.recip();
            let vars = Vars::xy();
            let y = Poly::var(&vars, 1);
            let f = &Poly::var(&vars, 0).scale_rat(&beta) + &y.pow(2);
            OperatorField::new(&vars, vec![vec![y.clone(), f], vec![Poly::zero(&vars), y]])
        }
        Label::B1 => b1_counterexample(form, form.alpha.as_ref().expect("b1 carries alpha")),
        Label::C5Plus | Label::C5Minus | Label::B5Plus | Label::B5Minus | Label::B2 => {
            Err(Error::NotDegenerate(form.to_string()))
        }
    }
}

/// `b1,α` with `α` irrational: only a flat smooth witness exists for `α < 0`.
pub fn gen_counterexample_irrational(cf: &CFrac) -> Result<OperatorField> {
    if !cf.is_irrational() {
        return Err(Error::InvalidInput("rational parameters must be given exactly".into()));
    }
    if cf.signum() < 0 {
        Err(Error::NotRepresentable(format!("b1,{cf}")))
    } else {
        Err(Error::NotDegenerate(format!("b1,{cf}")))
    }
}

/// A function of the operator that vanishes for the linear part and not for
/// the counterexample, both written as polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeparatingInvariant {
    pub name: String,
    pub linear: Poly,
    pub perturbed: Poly,
}

impl SeparatingInvariant {
    pub fn separates(&self) -> bool {
        self.linear.is_zero() && !self.perturbed.is_zero()
    }
}

fn invariant(name: &str, r: &OperatorField, f: impl Fn(&OperatorField) -> Poly) -> SeparatingInvariant {
    let r1 = r.homogeneous_part(1);
    SeparatingInvariant {
        name: name.into(),
        linear: f(&r1),
        perturbed: f(r),
    }
}

fn discriminant(r: &OperatorField) -> Poly {
    let t = r.trace();
    &(&t * &t) - &r.det().scale(&Quad::from_int(4))
}

/// `det R` along the curve of scalar-type points, parametrized by `x`.
fn det_on_scalar_locus(r: &OperatorField) -> Poly {
    let vars = r.vars().clone();
    let x = Poly::var(&vars, 0);
    // the off-diagonal entry is y − c(x); its zero set is the scalar locus
    let off = r.entry(0, 1);
    let c = &Poly::var(&vars, 1) - off;
    r.det().subst(&[x, c]).expect("two variables")
}

pub fn separating_invariant(form: &NormalForm) -> Result<SeparatingInvariant> {
    let r = gen_counterexample(form)?;
    Ok(match form.label {
        Label::C1 => invariant("tr R", &r, OperatorField::trace),
        Label::C2 | Label::C3 => invariant("det R", &r, OperatorField::det),
        Label::C4 => invariant("(tr R)^2 - 4 det R", &r, discriminant),
        Label::B4 => invariant("det R on the scalar-type locus", &r, det_on_scalar_locus),
        Label::B3 => {
            let alpha = form.alpha.as_ref().expect("b3 carries alpha");
            if !alpha.is_one() {
                let beta = Rat::one() - alpha.recip();
                return Err(Error::Inconsistent(format!(
                    "the b3 witness with alpha = {} is linearized by x' = x + y^2/({})",
                    fmt_rat(alpha),
                    fmt_rat(&beta)
                )));
            }
            invariant("entry (1,2) of R - (tr R / 2) Id", &r, |op| {
                op.entry(0, 1).clone()
            })
        }
        Label::B1 => {
            let alpha = form.alpha.as_ref().expect("b1 carries alpha");
            if alpha.is_zero() || (alpha.is_integer() && alpha.is_positive()) {
                invariant("det R", &r, OperatorField::det)
            } else {
                return Err(Error::InvalidInput(format!(
                    "{form}: trace and determinant agree with the linear part; the obstruction is formal"
                )));
            }
        }
        _ => unreachable!("gen_counterexample rejects the remaining forms"),
    })
}

/// The ten degenerate forms with polynomial witnesses, one parameter per family.
pub fn counterexample_suite() -> Vec<NormalForm> {
    vec![
        NormalForm::plain(Label::C1),
        NormalForm::plain(Label::C2),
        NormalForm::plain(Label::C3),
        NormalForm::plain(Label::C4),
        NormalForm::plain(Label::B4),
        NormalForm::b3(1, 1).expect("b3,1"),
        NormalForm::b1(0, 1),
        NormalForm::b1(3, 1),
        NormalForm::b1(1, 2),
        NormalForm::b1(-1, 1),
    ]
}
