//! Numerical tests for ampleness of a general bundle of a given character.
//!
//! Necessary: the total slope meets `E` and `F` in degree at least 1, and
//!
//! ```text
//! (*)   ν²/2 > Δ/(r+1).
//! ```
//!
//! Sufficient: `V(-H)` is globally generated for an ample `H`. On `F_e` we use
//! `H = E + (e+1)F`, on `P²` the hyperplane class. Neither test is sharp, so
//! the answer is three-valued.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::chern::ChernCharacter;
use crate::error::{ErrorClass, Result};
use crate::global_generation::{gg_hirzebruch, gg_p2, GgClause, GgVerdict, P2Character};
use crate::rational::{half, int};
use crate::surface::{DivisorClass, Surface};

/// A failed necessary condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NecessaryFailure {
    SlopeE(BigRational),
    SlopeF(BigRational),
    /// `ν²/2 ≤ Δ/(r+1)`.
    Star,
}

impl fmt::Display for NecessaryFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NecessaryFailure::SlopeE(x) => write!(f, "slope.E = {x} < 1"),
            NecessaryFailure::SlopeF(x) => write!(f, "slope.F = {x} < 1"),
            NecessaryFailure::Star => f.write_str("nu^2/2 <= Delta/(r+1)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmpleVerdict {
    NecessaryFailed(Vec<NecessaryFailure>),
    /// `V(-H)` is globally generated by the given clause. `extended` marks
    /// surfaces (`F_0`, `F_1`, `P²`) where the twist argument is applied with
    /// the corresponding classifier rather than a stated list of conditions.
    Sufficient { clause: GgClause, extended: bool },
    Unknown { reason: Option<String> },
}

impl AmpleVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            AmpleVerdict::NecessaryFailed(_) => "NecessaryFailed",
            AmpleVerdict::Sufficient { .. } => "Sufficient",
            AmpleVerdict::Unknown { .. } => "Unknown",
        }
    }
}

impl fmt::Display for AmpleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmpleVerdict::NecessaryFailed(reasons) => {
                let r: Vec<String> = reasons.iter().map(ToString::to_string).collect();
                write!(f, "NecessaryFailed({})", r.join("; "))
            }
            AmpleVerdict::Sufficient { clause, extended } => {
                write!(f, "Sufficient(clause {}{})", clause.number(), if *extended { ", extended" } else { "" })
            }
            AmpleVerdict::Unknown { reason: Some(r) } => write!(f, "Unknown({r})"),
            AmpleVerdict::Unknown { reason: None } => f.write_str("Unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmpleStatus {
    pub verdict: AmpleVerdict,
    pub star_lhs: BigRational,
    pub star_rhs: BigRational,
}

impl AmpleStatus {
    pub fn star_holds(&self) -> bool {
        self.star_lhs > self.star_rhs
    }
}

/// `E + (e+1)F`.
pub fn polarization(s: Surface) -> DivisorClass {
    DivisorClass::new(1, i64::from(s.e()) + 1)
}

fn star(nu_sq: BigRational, delta: &BigRational, rank: i64) -> (BigRational, BigRational) {
    (nu_sq * half(), delta / int(rank + 1))
}

fn from_gg(gg: Result<GgVerdict>, extended: bool) -> Result<AmpleVerdict> {
    match gg {
        Ok(g) => Ok(match g.clause {
            Some(clause) => AmpleVerdict::Sufficient { clause, extended },
            None => AmpleVerdict::Unknown { reason: None },
        }),
        Err(err) if err.class() == ErrorClass::Unsupported => {
            Ok(AmpleVerdict::Unknown { reason: Some(format!("{}: {err}", err.label())) })
        }
        Err(err) => Err(err),
    }
}

/// Whether `V(-H)` is globally generated, without the necessary tests.
pub fn sufficient_via_twist(s: Surface, v: &ChernCharacter) -> Result<AmpleVerdict> {
    v.validate(s)?;
    from_gg(gg_hirzebruch(s, &v.twist(s, -polarization(s))), s.e() < 2)
}

pub fn ample_status(s: Surface, v: &ChernCharacter) -> Result<AmpleStatus> {
    v.validate(s)?;
    let nu = v.nu();
    let delta = v.delta(s);
    let (star_lhs, star_rhs) = star(s.intersect_q(&nu, &nu), &delta, v.rank);
    let mut failures = Vec::new();
    let dot_e = v.nu_dot_e(s);
    let dot_f = v.nu_dot_f();
    if dot_e < BigRational::one() {
        failures.push(NecessaryFailure::SlopeE(dot_e));
    }
    if dot_f < BigRational::one() {
        failures.push(NecessaryFailure::SlopeF(dot_f));
    }
    if star_lhs <= star_rhs {
        failures.push(NecessaryFailure::Star);
    }
    let verdict = if failures.is_empty() {
        sufficient_via_twist(s, v)?
    } else {
        AmpleVerdict::NecessaryFailed(failures)
    };
    Ok(AmpleStatus { verdict, star_lhs, star_rhs })
}

/// The three explicit sufficient conditions on `F_e`, `e ≥ 2`, for a character
/// with slope·E ≥ 1 and slope·F ≥ 1. Returns the first that holds.
pub fn explicit_sufficient_clause(s: Surface, v: &ChernCharacter) -> Option<u8> {
    let e = i64::from(s.e());
    let r = v.rank;
    let dot_f = v.nu_dot_f();
    if dot_f == BigRational::one() {
        let degree = v.c1.b - r * (e + 1);
        let (a, m) = (degree.div_euclid(r), degree.rem_euclid(r));
        let line = |extra: i64| ChernCharacter::line_bundle(s, DivisorClass::new(1, e + a + 1 + extra));
        let model = line(0).scaled(r - m).add(&line(1).scaled(m));
        return (a >= 0 && model == *v).then_some(1);
    }
    if dot_f > BigRational::one() {
        let chi_low = v.twist(s, DivisorClass::new(-1, -(e + 2))).chi(s);
        if !chi_low.is_negative() {
            return Some(2);
        }
        let chi_h = v.twist(s, DivisorClass::new(-1, -(e + 1))).chi(s);
        if chi_h >= BigInt::from(r + 2) {
            return Some(3);
        }
    }
    None
}

pub fn ample_status_p2(v: &P2Character) -> Result<AmpleStatus> {
    v.validate()?;
    let mu = v.mu();
    let (star_lhs, star_rhs) = star(&mu * &mu, &v.delta(), v.rank);
    let mut failures = Vec::new();
    if mu < BigRational::one() {
        failures.push(NecessaryFailure::SlopeF(mu));
    }
    if star_lhs <= star_rhs {
        failures.push(NecessaryFailure::Star);
    }
    let verdict = if failures.is_empty() {
        from_gg(gg_p2(&v.twist(-1)), true)?
    } else {
        AmpleVerdict::NecessaryFailed(failures)
    };
    Ok(AmpleStatus { verdict, star_lhs, star_rhs })
}
