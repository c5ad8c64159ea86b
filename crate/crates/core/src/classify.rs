//! Normal forms of two-dimensional real left-symmetric algebras.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::lsa::{Lsa, Side};
use crate::poly::Poly;
use crate::quad::{fmt_rat, parse_rat, Quad, Rat};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    C1,
    C2,
    C3,
    C4,
    C5Plus,
    C5Minus,
    B1,
    B2,
    B3,
    B4,
    B5Plus,
    B5Minus,
}

impl Label {
    pub const ALL: [Label; 12] = [
        Label::C1,
        Label::C2,
        Label::C3,
        Label::C4,
        Label::C5Plus,
        Label::C5Minus,
        Label::B1,
        Label::B2,
        Label::B3,
        Label::B4,
        Label::B5Plus,
        Label::B5Minus,
    ];

    pub fn has_alpha(self) -> bool {
        matches!(self, Label::B1 | Label::B3)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::C1 => "c1",
            Label::C2 => "c2",
            Label::C3 => "c3",
            Label::C4 => "c4",
            Label::C5Plus => "c5+",
            Label::C5Minus => "c5-",
            Label::B1 => "b1",
            Label::B2 => "b2",
            Label::B3 => "b3",
            Label::B4 => "b4",
            Label::B5Plus => "b5+",
            Label::B5Minus => "b5-",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('−', "-").replace('_', "");
        Label::ALL
            .into_iter()
            .find(|l| l.as_str() == norm)
            .ok_or_else(|| Error::InvalidInput(format!("unknown normal form `{s}`")))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalForm {
    pub label: Label,
    pub alpha: Option<Rat>,
}

impl NormalForm {
    pub fn new(label: Label, alpha: Option<Rat>) -> Result<Self> {
        match (label.has_alpha(), &alpha) {
            (true, None) => Err(Error::InvalidNormalForm(format!("{label} needs alpha"))),
            (false, Some(_)) => Err(Error::InvalidNormalForm(format!("{label} takes no alpha"))),
            (true, Some(a)) if label == Label::B3 && a.is_zero() => {
                Err(Error::InvalidNormalForm("b3 requires alpha != 0".into()))
            }
            _ => Ok(NormalForm { label, alpha }),
        }
    }

    pub fn plain(label: Label) -> Self {
        NormalForm::new(label, None).expect("label without parameter")
    }

    pub fn with_alpha(label: Label, alpha: Rat) -> Result<Self> {
        NormalForm::new(label, Some(alpha))
    }

    /// `b1` with integer-ratio parameter, a common test fixture.
    pub fn b1(n: i64, d: i64) -> Self {
        NormalForm::with_alpha(Label::B1, Rat::new(n.into(), d.into())).expect("b1")
    }

    pub fn b3(n: i64, d: i64) -> Result<Self> {
        NormalForm::with_alpha(Label::B3, Rat::new(n.into(), d.into()))
    }

    /// Structure constants from the tables of normal forms.
    pub fn algebra(&self) -> Lsa {
        let z = Lsa::zero(2);
        let alpha = || Quad::from_rat(self.alpha.clone().expect("validated"));
        match self.label {
            Label::C1 => z,
            Label::C2 => z.with(1, 1, 1, 1),
            Label::C3 => z.with(1, 1, 0, 1),
            Label::C4 => z.with(1, 1, 1, 1).with(1, 0, 0, 1).with(0, 1, 0, 1),
            Label::C5Plus => z.with(1, 1, 1, 1).with(1, 0, 0, 1).with(0, 1, 0, 1).with(0, 0, 1, 1),
            Label::C5Minus => z
                .with(1, 1, 1, 1)
                .with(1, 0, 0, 1)
                .with(0, 1, 0, 1)
                .with(0, 0, 1, -1),
            Label::B1 => z.with(1, 0, 0, 1).with(1, 1, 1, alpha()),
            Label::B2 => z.with(1, 0, 0, 1).with(1, 1, 0, 1).with(1, 1, 1, 1),
            Label::B3 => {
                let beta = &Quad::one() - &alpha().inv().expect("alpha != 0");
                z.with(0, 1, 0, 1).with(1, 0, 0, beta).with(1, 1, 1, 1)
            }
            Label::B4 => z.with(0, 1, 0, 1).with(1, 1, 0, 1).with(1, 1, 1, 1),
            Label::B5Plus => z.with(0, 0, 1, 1).with(1, 0, 0, -1).with(1, 1, 1, -2),
            Label::B5Minus => z.with(0, 0, 1, -1).with(1, 0, 0, -1).with(1, 1, 1, -2),
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.alpha {
            Some(a) => write!(f, "{},{}", self.label, fmt_rat(a)),
            None => write!(f, "{}", self.label),
        }
    }
}

impl FromStr for NormalForm {
    type Err = Error;

    /// `b1,2/3`, `b3,-1`, `c5-`.
    fn from_str(s: &str) -> Result<Self> {
        let (l, a) = match s.split_once(',') {
            Some((l, a)) => (l, Some(parse_rat(a.trim())?)),
            None => (s, None),
        };
        NormalForm::new(l.parse()?, a)
    }
}

pub fn normal_form(form: &NormalForm) -> Lsa {
    form.algebra()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassificationResult {
    pub form: NormalForm,
    /// Columns are the normal-form basis vectors in input coordinates.
    pub witness: Matrix,
    pub verified: bool,
}

impl ClassificationResult {
    /// Radicand of the field the witness lives in, if irrational.
    pub fn witness_field(&self) -> Option<num_bigint::BigInt> {
        matrix_field(&self.witness)
    }
}

pub(crate) fn matrix_field(m: &Matrix) -> Option<num_bigint::BigInt> {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .find_map(|(i, j)| m.get(i, j).field().cloned())
}

fn q(n: i64) -> Quad {
    Quad::from_int(n)
}

fn cols(c0: [Quad; 2], c1: [Quad; 2]) -> Matrix {
    Matrix::from_columns(&[c0.to_vec(), c1.to_vec()])
}

/// First standard basis vector independent of `v`.
fn complement(v: &[Quad]) -> Vec<Quad> {
    if v[1].is_zero() {
        vec![q(0), q(1)]
    } else {
        vec![q(1), q(0)]
    }
}

fn normalize(v: Vec<Quad>) -> Vec<Quad> {
    let lead = v.iter().find(|c| !c.is_zero()).cloned().expect("nonzero vector");
    let inv = lead.inv().expect("nonzero");
    v.iter().map(|c| c * &inv).collect()
}

/// Rows `s`: entries of `L_{e_s}` flattened.
fn left_map(a: &Lsa) -> Matrix {
    Matrix::from_columns(
        &(0..2)
            .map(|s| {
                let mut v = Vec::new();
                for k in 0..2 {
                    for j in 0..2 {
                        v.push(a.get(k, s, j).clone());
                    }
                }
                v
            })
            .collect::<Vec<_>>(),
    )
}

fn rational(x: &Quad, what: &str) -> Result<Rat> {
    x.as_rat()
        .cloned()
        .ok_or_else(|| Error::Verification(format!("{what} is irrational")))
}

/// Candidate `(form, witness)` from the constructive case analysis.
fn construct(a: &Lsa) -> Result<(NormalForm, Matrix)> {
    let lmap = left_map(a);
    match lmap.rank() {
        0 => Ok((NormalForm::plain(Label::C1), Matrix::identity(2))),
        1 => rank_one(a, &lmap),
        _ if a.lie_structure().is_commutative => rank_two_commutative(a, &lmap),
        _ => rank_two_solvable(a),
    }
}

fn rank_one(a: &Lsa, lmap: &Matrix) -> Result<(NormalForm, Matrix)> {
    let kernel = lmap.nullspace();
    let eta1 = normalize(kernel[0].clone());
    let eta2 = complement(&eta1);
    let b = Matrix::from_columns(&[eta1.clone(), eta2.clone()]);
    let a1 = a.change_basis(&b)?;
    // [η1, η2] = c·η1 with η1*η2 = 0
    let c = -a1.get(0, 1, 0);
    if c.is_zero() {
        let (ca, cb) = (a1.get(1, 1, 1).clone(), a1.get(0, 1, 1).clone());
        if !ca.is_zero() {
            let m = cols([q(1), q(0)], [&cb / &(&ca * &ca), ca.inv()?]);
            return Ok((NormalForm::plain(Label::C2), b.mul(&m)));
        }
        let m = cols([cb, q(0)], [q(0), q(1)]);
        return Ok((NormalForm::plain(Label::C3), b.mul(&m)));
    }
    let b = Matrix::from_columns(&[eta1, eta2.iter().map(|v| v / &c).collect()]);
    let a1 = a.change_basis(&b)?;
    let (ca, cb) = (a1.get(1, 1, 1).clone(), a1.get(0, 1, 1).clone());
    let minus_one = q(-1);
    if ca != minus_one {
        let t = -(&cb / &(&q(1) + &ca));
        let alpha = rational(&-&ca, "alpha")?;
        let m = cols([q(1), q(0)], [t, q(-1)]);
        return Ok((NormalForm::with_alpha(Label::B1, alpha)?, b.mul(&m)));
    }
    if cb.is_zero() {
        let m = cols([q(1), q(0)], [q(0), q(-1)]);
        return Ok((NormalForm::with_alpha(Label::B1, Rat::one())?, b.mul(&m)));
    }
    let m = cols([cb, q(0)], [q(0), q(-1)]);
    Ok((NormalForm::plain(Label::B2), b.mul(&m)))
}

fn rank_two_commutative(a: &Lsa, lmap: &Matrix) -> Result<(NormalForm, Matrix)> {
    let id = [q(1), q(0), q(0), q(1)];
    let eta2 = lmap
        .solve(&id)
        .map_err(|_| Error::Verification("identity not in the image of L".into()))?;
    let eta1 = complement(&eta2);
    let b = Matrix::from_columns(&[eta1, eta2]);
    let a1 = a.change_basis(&b)?;
    let (ca, cb) = (a1.get(0, 0, 0).clone(), a1.get(1, 0, 0).clone());
    let half_a = &ca / &q(2);
    let delta = &(&half_a * &half_a) + &cb;
    if delta.is_zero() {
        let m = cols([q(1), -&half_a], [q(0), q(1)]);
        return Ok((NormalForm::plain(Label::C4), b.mul(&m)));
    }
    let d = rational(&delta, "discriminant")?;
    let root = Quad::sqrt(&num_traits::Signed::abs(&d))?;
    let s = root.inv()?;
    let m = cols([s.clone(), -&(&half_a * &s)], [q(0), q(1)]);
    let label = if delta.signum() > 0 {
        Label::C5Plus
    } else {
        Label::C5Minus
    };
    Ok((NormalForm::plain(label), b.mul(&m)))
}

fn rank_two_solvable(a: &Lsa) -> Result<(NormalForm, Matrix)> {
    let bracket = |u: &[Quad], v: &[Quad]| -> Result<Vec<Quad>> {
        let uv = a.mul(u, v)?;
        let vu = a.mul(v, u)?;
        Ok(uv.iter().zip(&vu).map(|(p, q)| p - q).collect())
    };
    let eta1 = normalize(bracket(&a.basis(0), &a.basis(1))?);
    let (eta2, _) = (0..2)
        .find_map(|j| {
            let e = a.basis(j);
            let br = bracket(&eta1, &e).ok()?;
            let idx = eta1.iter().position(|c| !c.is_zero())?;
            let lambda = &br[idx] / &eta1[idx];
            (!lambda.is_zero()).then(|| (e.iter().map(|c| c / &lambda).collect::<Vec<_>>(), lambda))
        })
        .ok_or_else(|| Error::Verification("derived algebra is central".into()))?;
    let b = Matrix::from_columns(&[eta1, eta2]);
    let a1 = a.change_basis(&b)?;
    let (p, qq) = (a1.get(0, 0, 0).clone(), a1.get(1, 0, 0).clone());
    if p.is_zero() && qq.is_zero() {
        let (ca, cb) = (a1.get(0, 0, 1).clone(), a1.get(0, 1, 1).clone());
        if ca.is_one() {
            if cb.is_zero() {
                return Ok((NormalForm::with_alpha(Label::B3, Rat::one())?, b));
            }
            let m = cols([cb, q(0)], [q(0), q(1)]);
            return Ok((NormalForm::plain(Label::B4), b.mul(&m)));
        }
        let s = &cb / &(&q(1) - &ca);
        let inv = ca.inv()?;
        let m = cols([q(1), q(0)], [&s * &inv, inv.clone()]);
        let alpha = rational(&ca, "alpha")?;
        return Ok((NormalForm::with_alpha(Label::B3, alpha)?, b.mul(&m)));
    }
    if qq.is_zero() {
        return Err(Error::Verification("L of the derived element is not nilpotent".into()));
    }
    let d = rational(&qq, "square coefficient")?;
    let s = Quad::sqrt(&num_traits::Signed::abs(&d))?.inv()?;
    let m = cols([s, q(0)], [&p / &qq, q(1)]);
    let label = if qq.signum() > 0 {
        Label::B5Plus
    } else {
        Label::B5Minus
    };
    Ok((NormalForm::plain(label), b.mul(&m)))
}

/// Parameter recovered from basis-independent invariants.
fn invariant_alpha(a: &Lsa, label: Label) -> Result<Option<Rat>> {
    let inv = a.invariant_polys();
    let ratio = |num: &Poly, den: &Poly| -> Result<Rat> {
        let r = num
            .exact_div(den)
            .map_err(|_| Error::Verification("invariant ratio is not constant".into()))?;
        if r.degree().unwrap_or(0) > 0 {
            return Err(Error::Verification("invariant ratio is not constant".into()));
        }
        rational(&r.constant_term(), "invariant ratio")
    };
    Ok(match label {
        Label::B1 => Some(ratio(&inv.tr_r, &(&inv.tr_l - &inv.tr_r))?),
        Label::B3 => {
            let beta = ratio(&inv.det_l, &inv.det_r)?;
            Some((Rat::one() - beta).recip())
        }
        _ => None,
    })
}

pub fn classify(a: &Lsa) -> Result<ClassificationResult> {
    if a.dim() != 2 {
        return Err(Error::UnsupportedDimension(a.dim()));
    }
    if !a.is_left_symmetric() {
        return Err(Error::NotLeftSymmetric);
    }
    let (form, witness) = construct(a)?;
    if let Some(alpha) = invariant_alpha(a, form.label)? {
        if Some(&alpha) != form.alpha.as_ref() {
            return Err(Error::Verification(format!(
                "parameter mismatch: construction gave {form}, invariants give {}",
                fmt_rat(&alpha)
            )));
        }
    }
    let target = form.algebra();
    for (s0, s1) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
        let flip = cols([q(s0), q(0)], [q(0), q(s1)]);
        let w = witness.mul(&flip);
        if a.change_basis(&w)? == target {
            return Ok(ClassificationResult {
                form,
                witness: w,
                verified: true,
            });
        }
    }
    Err(Error::Verification(format!("witness for {form} does not conjugate")))
}

/// Whether two algebras are isomorphic, with `C` such that `change_basis(a, C) = b`
/// when both witnesses share a coefficient field.
pub fn is_isomorphic(a: &Lsa, b: &Lsa) -> Result<(bool, Option<Matrix>)> {
    let ca = classify(a)?;
    let cb = classify(b)?;
    if ca.form != cb.form {
        return Ok((false, None));
    }
    let (fa, fb) = (ca.witness_field(), cb.witness_field());
    if fa.is_some() && fb.is_some() && fa != fb {
        return Ok((true, None));
    }
    let c = ca.witness.mul(&cb.witness.inverse()?);
    if a.change_basis(&c)? != *b {
        return Err(Error::Verification("composed witness does not conjugate".into()));
    }
    Ok((true, Some(c)))
}

/// Negative value somewhere on the plane, for a binary quadratic form.
fn takes_negative(p: &Poly) -> bool {
    let (a, b, c) = (p.coeff(&[2, 0]), p.coeff(&[1, 1]), p.coeff(&[0, 2]));
    let disc = &(&b * &b) - &(&(&a * &c) * &q(4));
    a.signum() < 0 || c.signum() < 0 || disc.signum() > 0
}

/// Basis-independent yes/no features used to tell normal forms apart.
pub fn invariant_profile(a: &Lsa, params: &[Rat]) -> Vec<(String, bool)> {
    let inv = a.invariant_polys();
    let disc_r = &(&inv.tr_r * &inv.tr_r) - &inv.det_r.scale(&q(4));
    let mut out = vec![
        ("commutative".to_string(), a.lie_structure().is_commutative),
        ("detR == 0".into(), inv.det_r.is_zero()),
        ("detL == 0".into(), inv.det_l.is_zero()),
        ("trR == 0".into(), inv.tr_r.is_zero()),
        ("trL == 0".into(), inv.tr_l.is_zero()),
        ("trR^2 - 4 detR == 0".into(), disc_r.is_zero()),
        ("T(trR^2 - 4 detR) != 0".into(), takes_negative(&disc_r)),
        ("T(detR) != 0".into(), takes_negative(&inv.det_r)),
        ("property S for Im L".into(), a.property_s(Side::Left).unwrap_or(false)),
        ("property S for Im R".into(), a.property_s(Side::Right).unwrap_or(false)),
    ];
    for beta in params {
        let b = Quad::from_rat(beta.clone());
        let f = inv.det_l.scale(&b) - &inv.tr_r * &inv.tr_r;
        out.push((format!("{} detL - trR^2 == 0", fmt_rat(beta)), f.is_zero()));
        let g = inv.det_r.scale(&b) - &inv.det_l;
        out.push((format!("{} detR - detL == 0", fmt_rat(beta)), g.is_zero()));
    }
    out
}

/// The first invariant feature on which the two normal forms differ.
pub fn separating_invariant(f: &NormalForm, g: &NormalForm) -> Option<String> {
    let mut params = Vec::new();
    for form in [f, g] {
        if let Some(a) = &form.alpha {
            params.push(a.clone());
            if form.label == Label::B3 {
                params.push(Rat::one() - a.recip());
            }
        }
    }
    let pa = invariant_profile(&f.algebra(), &params);
    let pb = invariant_profile(&g.algebra(), &params);
    pa.into_iter()
        .zip(pb)
        .find(|(x, y)| x.1 != y.1)
        .map(|(x, _)| x.0)
}
