//! Betti numbers of a general prioritary sheaf of a given character, and the
//! special / nonspecial classification derived from them.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::chern::ChernCharacter;
use crate::error::{Error, Result};
use crate::line_cohomology::{self, BettiTriple, Step};
use crate::rational::{ceil, int};
use crate::surface::{DivisorClass, Surface};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiResult {
    pub triple: BettiTriple,
    /// Number of E-twists taken by the induction, when it ran.
    pub twist_count: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Speciality {
    Nonspecial,
    Special,
}

/// Which branch of the classification decided the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialityClause {
    /// 1: slope·F = -1.
    SlopeFMinusOne,
    /// 2: slope·F > -1 and slope·E ≥ -1.
    SlopeEAboveMinusOne,
    /// 3a: the E-induction ends with slope·F ≤ -1.
    InductionEndsLowF,
    /// 3b: the E-induction ends with slope·E ≥ -1; special iff the twisted χ is positive.
    InductionEndsChi { twisted_chi: BigInt },
}

impl SpecialityClause {
    pub fn label(&self) -> &'static str {
        match self {
            SpecialityClause::SlopeFMinusOne => "1",
            SpecialityClause::SlopeEAboveMinusOne => "2",
            SpecialityClause::InductionEndsLowF => "3a",
            SpecialityClause::InductionEndsChi { .. } => "3b",
        }
    }
}

impl fmt::Display for SpecialityClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialityVerdict {
    pub verdict: Speciality,
    pub clause: SpecialityClause,
    pub m: Option<u64>,
    /// The clause was evaluated on the Serre dual character (slope·F < -1).
    pub via_serre_dual: bool,
}

/// Smallest `m ≥ 1` at which `ν(v(-mE))·F ≤ -1` or `ν(v(-mE))·E ≥ -1`, and whether
/// the F-condition holds there. Requires `ν·F > -1` and `ν·E < -1`.
fn induction_length(s: Surface, nu_f: &BigRational, nu_e: &BigRational) -> (u64, bool) {
    let to_u64 = |x: BigInt| -> u64 { u64::try_from(x.max(BigInt::one())).expect("twist count fits in u64") };
    // ν·F - m ≤ -1
    let m_f = to_u64(ceil(&(nu_f + int(1))));
    // ν·E + m·e ≥ -1; never for e = 0
    let m_e = (s.e() > 0).then(|| to_u64(ceil(&((int(-1) - nu_e) / int(s.e_i64())))));
    match m_e {
        Some(m_e) if m_e < m_f => (m_e, false),
        _ => (m_f, true),
    }
}

/// Betti numbers of a general sheaf in the prioritary stack of `v`.
pub fn betti(s: Surface, v: &ChernCharacter) -> Result<BettiResult> {
    v.validate(s)?;
    let delta = v.discriminant_nonnegative(s)?;
    if v.nu_dot_f() < int(-1) {
        if v.rank >= 2 {
            let dual = v.serre_dual(s);
            let inner = betti_upper(s, &dual);
            let mut triple = inner.triple.reversed();
            triple.trace.insert(0, Step::SerreDual);
            return Ok(BettiResult { triple, twist_count: inner.twist_count });
        }
        if delta.is_zero() {
            let triple = line_cohomology::cohomology(s, v.c1);
            let twist_count = triple.trace.iter().find_map(|st| match st {
                Step::EInduct { m } => Some(*m),
                _ => None,
            });
            return Ok(BettiResult { triple, twist_count });
        }
        return Err(Error::UnsupportedRankOne);
    }
    Ok(betti_upper(s, v))
}

/// `ν·F ≥ -1`.
fn betti_upper(s: Surface, v: &ChernCharacter) -> BettiResult {
    let chi = v.chi(s);
    let zero = BigInt::zero;
    let mut trace = vec![Step::ChiFormula];
    let nu_f = v.nu_dot_f();
    if nu_f == int(-1) {
        trace.push(Step::FMinusOne);
        return BettiResult { triple: BettiTriple::new(zero(), -chi, zero(), trace), twist_count: None };
    }
    let nu_e = v.nu_dot_e(s);
    if nu_e >= int(-1) {
        trace.push(Step::EOk);
        let triple = if chi.is_negative() {
            BettiTriple::new(zero(), -chi, zero(), trace)
        } else {
            BettiTriple::new(chi, zero(), zero(), trace)
        };
        return BettiResult { triple, twist_count: None };
    }
    let (m, f_low) = induction_length(s, &nu_f, &nu_e);
    trace.push(Step::EInduct { m });
    let triple = if f_low {
        trace.push(Step::FLow);
        BettiTriple::new(zero(), -chi, zero(), trace)
    } else {
        let twisted = v.twist(s, DivisorClass::new(-(m as i64), 0));
        let h0 = twisted.chi(s).max(zero());
        let h1 = &h0 - chi;
        BettiTriple::new(h0, h1, zero(), trace)
    };
    BettiResult { triple, twist_count: Some(m) }
}

/// Special means the general sheaf has at least two nonzero cohomology groups.
///
/// Characters with `ν·F < -1` are classified through their Serre dual.
pub fn is_special(s: Surface, v: &ChernCharacter) -> Result<SpecialityVerdict> {
    v.validate(s)?;
    let delta = v.discriminant_nonnegative(s)?;
    if v.nu_dot_f() < int(-1) {
        if v.rank < 2 && !delta.is_zero() {
            return Err(Error::UnsupportedRankOne);
        }
        let mut verdict = special_upper(s, &v.serre_dual(s));
        verdict.via_serre_dual = true;
        return Ok(verdict);
    }
    Ok(special_upper(s, v))
}

fn special_upper(s: Surface, v: &ChernCharacter) -> SpecialityVerdict {
    let nonspecial = |clause, m| SpecialityVerdict { verdict: Speciality::Nonspecial, clause, m, via_serre_dual: false };
    let nu_f = v.nu_dot_f();
    if nu_f == int(-1) {
        return nonspecial(SpecialityClause::SlopeFMinusOne, None);
    }
    let nu_e = v.nu_dot_e(s);
    if nu_e >= int(-1) {
        return nonspecial(SpecialityClause::SlopeEAboveMinusOne, None);
    }
    let (m, f_low) = induction_length(s, &nu_f, &nu_e);
    if f_low {
        return nonspecial(SpecialityClause::InductionEndsLowF, Some(m));
    }
    let twisted_chi = v.twist(s, DivisorClass::new(-(m as i64), 0)).chi(s);
    let verdict = if twisted_chi.is_positive() { Speciality::Special } else { Speciality::Nonspecial };
    SpecialityVerdict {
        verdict,
        clause: SpecialityClause::InductionEndsChi { twisted_chi },
        m: Some(m),
        via_serre_dual: false,
    }
}
