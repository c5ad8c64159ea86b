//! Continued fractions and the Brjuno series `Σ log(q_{n+1}) / q_n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Partial quotients `[a0; a1, a2, …]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CFrac {
    /// A rational number.
    Finite { a0: BigInt, quotients: Vec<BigInt> },
    /// `[a0; preperiod, (period)]`, a quadratic irrational.
    Periodic {
        a0: BigInt,
        preperiod: Vec<BigInt>,
        period: Vec<BigInt>,
    },
    /// The first quotients of an expansion known to be infinite.
    Prefix { a0: BigInt, quotients: Vec<BigInt> },
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub enum BrjunoOutcome {
    BrjunoYes { partial_sum: f64, depth: usize },
    Undetermined { partial_sum: f64, depth: usize },
    NotIrrational,
}

impl CFrac {
    pub fn a0(&self) -> &BigInt {
        match self {
            CFrac::Finite { a0, .. } | CFrac::Periodic { a0, .. } | CFrac::Prefix { a0, .. } => a0,
        }
    }

    pub fn periodic(a0: i64, preperiod: &[i64], period: &[i64]) -> Result<Self> {
        let cf = CFrac::Periodic {
            a0: a0.into(),
            preperiod: preperiod.iter().map(|&a| a.into()).collect(),
            period: period.iter().map(|&a| a.into()).collect(),
        };
        cf.validate()?;
        Ok(cf)
    }

    pub fn prefix(a0: i64, quotients: &[i64]) -> Result<Self> {
        let cf = CFrac::Prefix {
            a0: a0.into(),
            quotients: quotients.iter().map(|&a| a.into()).collect(),
        };
        cf.validate()?;
        Ok(cf)
    }

    pub fn finite(a0: i64, quotients: &[i64]) -> Result<Self> {
        let cf = CFrac::Finite {
            a0: a0.into(),
            quotients: quotients.iter().map(|&a| a.into()).collect(),
        };
        cf.validate()?;
        Ok(cf)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |qs: &[BigInt]| qs.iter().any(|a| !a.is_positive());
        match self {
            CFrac::Finite { quotients, .. } | CFrac::Prefix { quotients, .. } if bad(quotients) => {
                Err(Error::InvalidInput("partial quotients after a0 must be positive".into()))
            }
            CFrac::Periodic { period, .. } if period.is_empty() => {
                Err(Error::InvalidInput("empty period".into()))
            }
            CFrac::Periodic {
                preperiod, period, ..
            } if bad(preperiod) || bad(period) => {
                Err(Error::InvalidInput("partial quotients after a0 must be positive".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn is_irrational(&self) -> bool {
        !matches!(self, CFrac::Finite { .. })
    }

    /// Sign of the represented number; `0` only for the finite `[0]`.
    pub fn signum(&self) -> i32 {
        let a0 = self.a0();
        let has_tail = match self {
            CFrac::Finite { quotients, .. } => !quotients.is_empty(),
            _ => true,
        };
        if a0.is_negative() {
            -1
        } else if a0.is_zero() && !has_tail {
            0
        } else {
            1
        }
    }

    /// `a_n` for `n ≥ 1`, or `None` past the known quotients.
    pub fn quotient(&self, n: usize) -> Option<BigInt> {
        assert!(n >= 1);
        let i = n - 1;
        match self {
            CFrac::Finite { quotients, .. } | CFrac::Prefix { quotients, .. } => quotients.get(i).cloned(),
            CFrac::Periodic {
                preperiod, period, ..
            } => {
                if i < preperiod.len() {
                    Some(preperiod[i].clone())
                } else {
                    Some(period[(i - preperiod.len()) % period.len()].clone())
                }
            }
        }
    }

    /// Denominators `q_0 = 1, q_1 = a_1, q_{n+1} = a_{n+1} q_n + q_{n−1}` up to `q_count`.
    pub fn denominators(&self, count: usize) -> Vec<BigInt> {
        let mut qs = vec![BigInt::one()];
        let mut prev = BigInt::zero();
        for n in 1..=count {
            let Some(a) = self.quotient(n) else { break };
            let next = a * qs.last().expect("nonempty") + &prev;
            prev = qs.last().expect("nonempty").clone();
            qs.push(next);
        }
        qs
    }
}

fn ln_big(q: &BigInt) -> f64 {
    let bits = q.bits();
    if bits < 1000 {
        q.to_f64().expect("finite").ln()
    } else {
        let shift = bits - 64;
        let top: BigInt = q >> shift;
        top.to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
    }
}

fn ratio_f64(num: f64, q: &BigInt) -> f64 {
    if q.bits() < 1000 {
        num / q.to_f64().expect("finite")
    } else {
        (num.ln() - ln_big(q)).exp()
    }
}

/// `Σ_{n=0}^{depth−1} log(q_{n+1}) / q_n` with the number of terms actually used.
pub fn partial_sum(cf: &CFrac, depth: usize) -> (f64, usize) {
    let qs = cf.denominators(depth);
    let used = qs.len() - 1;
    let sum = (0..used).map(|n| ratio_f64(ln_big(&qs[n + 1]), &qs[n])).sum();
    (sum, used)
}

pub fn brjuno(cf: &CFrac, depth: usize) -> Result<BrjunoOutcome> {
    if depth == 0 {
        return Err(Error::InvalidInput("depth must be at least 1".into()));
    }
    cf.validate()?;
    Ok(match cf {
        CFrac::Finite { .. } => BrjunoOutcome::NotIrrational,
        CFrac::Periodic { .. } => {
            let (partial_sum, depth) = partial_sum(cf, depth);
            BrjunoOutcome::BrjunoYes { partial_sum, depth }
        }
        CFrac::Prefix { .. } => {
            let (partial_sum, depth) = partial_sum(cf, depth);
            BrjunoOutcome::Undetermined { partial_sum, depth }
        }
    })
}

fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim().replace('−', "-");
    t.parse::<BigInt>()
        .map_err(|_| Error::InvalidInput(format!("bad partial quotient `{}`", s.trim())))
}

impl FromStr for CFrac {
    type Err = Error;

    /// `[0; 2]`, `[0; 1, (1)]`, `[-1; 2, 3, ...]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidInput(format!("continued fraction must be bracketed: `{t}`")))?;
        let (a0, rest) = match inner.split_once(';') {
            Some((a, r)) => (parse_int(a)?, r.trim()),
            None => (parse_int(inner)?, ""),
        };
        let cf = if let Some(open) = rest.find('(') {
            let close = rest
                .rfind(')')
                .filter(|&c| c > open && rest[c + 1..].trim().is_empty())
                .ok_or_else(|| Error::InvalidInput("unterminated period".into()))?;
            let pre = rest[..open].trim().trim_end_matches(',');
            let preperiod = split_ints(pre)?;
            let period = split_ints(&rest[open + 1..close])?;
            CFrac::Periodic {
                a0,
                preperiod,
                period,
            }
        } else if let Some(body) = rest.strip_suffix("...").or_else(|| rest.strip_suffix('…')) {
            CFrac::Prefix {
                a0,
                quotients: split_ints(body.trim().trim_end_matches(','))?,
            }
        } else {
            CFrac::Finite {
                a0,
                quotients: split_ints(rest)?,
            }
        };
        cf.validate()?;
        Ok(cf)
    }
}

fn split_ints(s: &str) -> Result<Vec<BigInt>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_int).collect()
}

impl fmt::Display for CFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        match self {
            CFrac::Finite { a0, quotients } if quotients.is_empty() => write!(f, "[{a0}]"),
            CFrac::Finite { a0, quotients } => write!(f, "[{a0}; {}]", join(quotients)),
            CFrac::Prefix { a0, quotients } if quotients.is_empty() => write!(f, "[{a0}; ...]"),
            CFrac::Prefix { a0, quotients } => write!(f, "[{a0}; {}, ...]", join(quotients)),
            CFrac::Periodic {
                a0,
                preperiod,
                period,
            } => {
                if preperiod.is_empty() {
                    write!(f, "[{a0}; ({})]", join(period))
                } else {
                    write!(f, "[{a0}; {}, ({})]", join(preperiod), join(period))
                }
            }
        }
    }
}
