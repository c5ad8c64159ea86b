//! Exceptional parameter sets and the degeneracy tables.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::brjuno::{brjuno, BrjunoOutcome, CFrac};
use crate::classify::{Label, NormalForm};
use crate::error::{Error, Result};
use crate::quad::Rat;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SigmaSet {
    Sigma0,
    Sigma1,
    Sigma2,
    Sigma2Hat,
    Sigma3,
    SigmaU,
    SigmaSm,
    SigmaAn,
}

impl SigmaSet {
    pub fn symbol(self) -> &'static str {
        match self {
            SigmaSet::Sigma0 => "Σ0",
            SigmaSet::Sigma1 => "Σ1",
            SigmaSet::Sigma2 => "Σ2",
            SigmaSet::Sigma2Hat => "Σ̂2",
            SigmaSet::Sigma3 => "Σ3",
            SigmaSet::SigmaU => "Σu",
            SigmaSet::SigmaSm => "Σsm",
            SigmaSet::SigmaAn => "Σan",
        }
    }
}

impl fmt::Display for SigmaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Smooth,
    Analytic,
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "smooth" | "sm" => Ok(Category::Smooth),
            "analytic" | "an" => Ok(Category::Analytic),
            other => Err(Error::InvalidInput(format!("unknown category `{other}`"))),
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Smooth => "smooth",
            Category::Analytic => "analytic",
        })
    }
}

/// Every set containing the rational `α`, unions included.
pub fn sigma_membership(alpha: &Rat) -> Vec<SigmaSet> {
    let mut out = Vec::new();
    if alpha.is_zero() {
        out.push(SigmaSet::Sigma0);
    }
    if alpha.is_integer() && alpha.to_integer() >= 3.into() {
        out.push(SigmaSet::Sigma1);
    }
    if alpha.is_negative() {
        out.push(SigmaSet::Sigma2);
        out.push(SigmaSet::Sigma2Hat);
    }
    if alpha.is_positive() && alpha.numer().is_one() && alpha.denom() >= &2.into() {
        out.push(SigmaSet::Sigma3);
    }
    let in_sm = out
        .iter()
        .any(|s| matches!(s, SigmaSet::Sigma0 | SigmaSet::Sigma1 | SigmaSet::Sigma2 | SigmaSet::Sigma3));
    let in_an = out
        .iter()
        .any(|s| matches!(s, SigmaSet::Sigma0 | SigmaSet::Sigma1 | SigmaSet::Sigma2Hat | SigmaSet::Sigma3));
    if in_sm {
        out.push(SigmaSet::SigmaSm);
    }
    if in_an {
        out.push(SigmaSet::SigmaAn);
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum VerdictValue {
    Degenerate,
    NonDegenerate,
    Unknown,
}

impl fmt::Display for VerdictValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictValue::Degenerate => "Degenerate",
            VerdictValue::NonDegenerate => "NonDegenerate",
            VerdictValue::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub value: VerdictValue,
    pub justification: String,
}

impl Verdict {
    fn new(value: VerdictValue, justification: impl Into<String>) -> Self {
        Verdict {
            value,
            justification: justification.into(),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.value, self.justification)
    }
}

fn first_of(tags: &[SigmaSet], wanted: &[SigmaSet]) -> Option<SigmaSet> {
    wanted.iter().copied().find(|w| tags.contains(w))
}

pub fn verdict(form: &NormalForm, category: Category) -> Verdict {
    use VerdictValue::*;
    let table = match category {
        Category::Smooth => "smooth table",
        Category::Analytic => "analytic table",
    };
    match form.label {
        Label::C1 | Label::C2 | Label::C3 | Label::C4 | Label::B3 | Label::B4 => {
            Verdict::new(Degenerate, format!("{table}, row {}", form.label))
        }
        Label::C5Plus | Label::C5Minus | Label::B5Plus | Label::B5Minus | Label::B2 => {
            Verdict::new(NonDegenerate, format!("{table}, row {}", form.label))
        }
        Label::B1 => {
            let alpha = form.alpha.as_ref().expect("b1 carries alpha");
            let tags = sigma_membership(alpha);
            let hit = match category {
                Category::Smooth => first_of(
                    &tags,
                    &[SigmaSet::Sigma0, SigmaSet::Sigma1, SigmaSet::Sigma2, SigmaSet::Sigma3],
                ),
                Category::Analytic => first_of(
                    &tags,
                    &[SigmaSet::Sigma0, SigmaSet::Sigma1, SigmaSet::Sigma2Hat, SigmaSet::Sigma3],
                ),
            };
            match hit {
                Some(s) => Verdict::new(Degenerate, s.symbol()),
                None => {
                    let union = match category {
                        Category::Smooth => SigmaSet::SigmaSm,
                        Category::Analytic => SigmaSet::SigmaAn,
                    };
                    Verdict::new(NonDegenerate, format!("α ∉ {union}"))
                }
            }
        }
    }
}

/// Verdict for `b1,α` with `α` irrational, given by its continued fraction.
pub fn verdict_irrational(cf: &CFrac, category: Category, depth: usize) -> Result<Verdict> {
    use VerdictValue::*;
    if !cf.is_irrational() {
        return Err(Error::InvalidInput(
            "rational parameters must be given exactly, not as a continued fraction".into(),
        ));
    }
    let negative = cf.signum() < 0;
    Ok(match (category, negative) {
        (_, false) => Verdict::new(NonDegenerate, "α > 0 irrational, α ∉ Σsm ∪ Σan"),
        (Category::Smooth, true) => Verdict::new(Degenerate, SigmaSet::Sigma2.symbol()),
        (Category::Analytic, true) => match brjuno(cf, depth)? {
            BrjunoOutcome::BrjunoYes { .. } => Verdict::new(NonDegenerate, "α negative Brjuno"),
            BrjunoOutcome::Undetermined { partial_sum, depth } => Verdict::new(
                Unknown,
                format!(
                    "{}: Brjuno series undetermined, partial sum {partial_sum:.6} at depth {depth}",
                    SigmaSet::SigmaU
                ),
            ),
            BrjunoOutcome::NotIrrational => unreachable!("checked above"),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::rat;

    #[test]
    fn membership_examples() {
        use SigmaSet::*;
        assert_eq!(sigma_membership(&rat(3, 1)), vec![Sigma1, SigmaSm, SigmaAn]);
        assert_eq!(sigma_membership(&rat(-2, 3)), vec![Sigma2, Sigma2Hat, SigmaSm, SigmaAn]);
        assert!(sigma_membership(&rat(5, 2)).is_empty());
        assert_eq!(sigma_membership(&rat(0, 1)), vec![Sigma0, SigmaSm, SigmaAn]);
        assert_eq!(sigma_membership(&rat(1, 4)), vec![Sigma3, SigmaSm, SigmaAn]);
        assert!(sigma_membership(&rat(2, 1)).is_empty());
        assert!(sigma_membership(&rat(1, 1)).is_empty());
        assert!(sigma_membership(&rat(2, 3)).is_empty());
    }

    #[test]
    fn verdict_examples() {
        let v = verdict(&NormalForm::b1(-1, 1), Category::Smooth);
        assert_eq!(v.value, VerdictValue::Degenerate);
        assert_eq!(v.to_string(), "Degenerate (Σ2)");
        let c5 = NormalForm::plain(Label::C5Minus);
        assert_eq!(verdict(&c5, Category::Analytic).value, VerdictValue::NonDegenerate);
        assert_eq!(verdict(&NormalForm::b1(5, 2), Category::Smooth).value, VerdictValue::NonDegenerate);
        assert_eq!(verdict(&NormalForm::b3(2, 1).unwrap(), Category::Smooth).value, VerdictValue::Degenerate);
    }

    #[test]
    fn irrational_parameters() {
        let golden_neg = CFrac::periodic(-1, &[], &[1]).unwrap();
        let v = verdict_irrational(&golden_neg, Category::Analytic, 50).unwrap();
        assert_eq!(v.value, VerdictValue::NonDegenerate);
        let v = verdict_irrational(&golden_neg, Category::Smooth, 50).unwrap();
        assert_eq!(v.value, VerdictValue::Degenerate);
        let u = CFrac::prefix(-1, &[1, 10, 1000, 1_000_000]).unwrap();
        assert_eq!(verdict_irrational(&u, Category::Analytic, 10).unwrap().value, VerdictValue::Unknown);
        let pos = CFrac::prefix(2, &[1, 2]).unwrap();
        assert_eq!(verdict_irrational(&pos, Category::Analytic, 10).unwrap().value, VerdictValue::NonDegenerate);
        assert!(verdict_irrational(&CFrac::finite(0, &[2]).unwrap(), Category::Smooth, 5).is_err());
    }
}
