//! Whether the general prioritary sheaf of a character is globally generated,
//! on `F_e` and on `P²`.
//!
//! The answer depends only on a handful of Euler characteristics once the
//! preconditions hold: rank at least 2, nonnegative discriminant, and nef total
//! slope (a globally generated bundle has nef `c1`).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::chern::ChernCharacter;
use crate::error::{Error, Result};
use crate::rational::{as_integer, frac, half, int, Q};
use crate::surface::{DivisorClass, Surface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generation {
    GloballyGenerated,
    NotGloballyGenerated,
}

impl fmt::Display for Generation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generation::GloballyGenerated => "GloballyGenerated",
            Generation::NotGloballyGenerated => "NotGloballyGenerated",
        })
    }
}

/// The numbered cases of the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GgClause {
    /// 1: a sum of pullbacks `(r-m)·O(aF) + m·O((a+1)F)` from a ruling.
    Pullback,
    /// 2: positive fibre degree and `χ(v(-F)) ≥ 0`.
    TwistNonnegative,
    /// 3: positive fibre degree, `χ(v(-F)) < 0` and `χ(v) ≥ r + 2`.
    LargeChi,
    /// 4: `(r+1)·O - O(-2E-2F)` on `F_1`, or `(r+1)·O - O(-2)` on `P²`.
    Exceptional,
}

impl GgClause {
    pub fn number(self) -> u8 {
        match self {
            GgClause::Pullback => 1,
            GgClause::TwistNonnegative => 2,
            GgClause::LargeChi => 3,
            GgClause::Exceptional => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GgClause::Pullback => "pullback",
            GgClause::TwistNonnegative => "twist-nonnegative",
            GgClause::LargeChi => "large-chi",
            GgClause::Exceptional => "exceptional",
        }
    }
}

impl fmt::Display for GgClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.number(), self.name())
    }
}

/// Fibre class of the ruling a pullback comes from. On `F_e` with `e ≥ 1`
/// only `F` occurs; on `F_0` the two rulings are `F` and `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ruling {
    F,
    E,
}

/// `v = (r-m)·ch O(aC) + m·ch O((a+1)C)` for the fibre class `C` of `ruling`,
/// normalized to `0 ≤ m < r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PullbackWitness {
    pub ruling: Ruling,
    pub a: i64,
    pub m: i64,
}

impl PullbackWitness {
    fn from_degree(ruling: Ruling, degree: i64, rank: i64) -> Self {
        PullbackWitness { ruling, a: degree.div_euclid(rank), m: degree.rem_euclid(rank) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GgVerdict {
    pub verdict: Generation,
    pub clause: Option<GgClause>,
    pub witness: Option<PullbackWitness>,
    /// Quantities evaluated on the way to the verdict, in order.
    pub trace: Vec<String>,
}

impl GgVerdict {
    pub fn is_globally_generated(&self) -> bool {
        self.verdict == Generation::GloballyGenerated
    }

    fn generated(clause: GgClause, witness: Option<PullbackWitness>, trace: Vec<String>) -> Self {
        GgVerdict { verdict: Generation::GloballyGenerated, clause: Some(clause), witness, trace }
    }

    fn not_generated(trace: Vec<String>) -> Self {
        GgVerdict { verdict: Generation::NotGloballyGenerated, clause: None, witness: None, trace }
    }
}

impl fmt::Display for GgVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verdict)?;
        if let Some(c) = self.clause {
            write!(f, ", clause {c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GgOptions {
    /// Report a non-nef slope as `NotGloballyGenerated` instead of an error.
    pub lenient: bool,
}

fn twisted_chi(s: Surface, v: &ChernCharacter, d: DivisorClass) -> BigInt {
    v.twist(s, d).chi(s)
}

pub fn gg_hirzebruch(s: Surface, v: &ChernCharacter) -> Result<GgVerdict> {
    gg_hirzebruch_with(s, v, GgOptions::default())
}

pub fn gg_hirzebruch_with(s: Surface, v: &ChernCharacter, opts: GgOptions) -> Result<GgVerdict> {
    v.validate(s)?;
    if v.rank < 2 {
        return Err(Error::RankTooSmall(v.rank));
    }
    v.discriminant_nonnegative(s)?;
    let dot_e = v.nu_dot_e(s);
    let dot_f = v.nu_dot_f();
    let mut trace = vec![format!("nu.E={dot_e}"), format!("nu.F={dot_f}")];
    if dot_e.is_negative() || dot_f.is_negative() {
        let reason = format!("slope.E = {dot_e}, slope.F = {dot_f}");
        if opts.lenient {
            trace.push(format!("not nef: {reason}"));
            return Ok(GgVerdict::not_generated(trace));
        }
        return Err(Error::NonNefSlope(reason));
    }
    if s.e() == 0 {
        Ok(classify_quadric(s, v, trace))
    } else {
        Ok(classify_ruled(s, v, trace))
    }
}

fn classify_ruled(s: Surface, v: &ChernCharacter, mut trace: Vec<String>) -> GgVerdict {
    let r = v.rank;
    if v.c1.a == 0 {
        trace.push(format!("ch2={}", v.ch2));
        if v.ch2.is_zero() && v.c1.b >= 0 {
            let w = PullbackWitness::from_degree(Ruling::F, v.c1.b, r);
            return GgVerdict::generated(GgClause::Pullback, Some(w), trace);
        }
        return GgVerdict::not_generated(trace);
    }
    let chi_f = twisted_chi(s, v, -DivisorClass::F);
    trace.push(format!("chi(v(-F))={chi_f}"));
    if !chi_f.is_negative() {
        return GgVerdict::generated(GgClause::TwistNonnegative, None, trace);
    }
    let chi = v.chi(s);
    trace.push(format!("chi={chi}"));
    if chi >= BigInt::from(r + 2) {
        return GgVerdict::generated(GgClause::LargeChi, None, trace);
    }
    if s.e() == 1 && *v == exceptional_f1(r) {
        return GgVerdict::generated(GgClause::Exceptional, None, trace);
    }
    GgVerdict::not_generated(trace)
}

/// `(r+1)·ch O - ch O(-2E-2F) = (r, 2E+2F, -2)` on `F_1`.
fn exceptional_f1(r: i64) -> ChernCharacter {
    ChernCharacter::from_parts(r, 2, 2, int(-2))
}

/// `F_0`: the same rule with both rulings tried.
fn classify_quadric(s: Surface, v: &ChernCharacter, mut trace: Vec<String>) -> GgVerdict {
    let r = v.rank;
    let (k, l) = (v.c1.a, v.c1.b);
    if v.ch2.is_zero() && (k == 0 || l == 0) {
        trace.push("ch2=0".to_string());
        let w = if k == 0 {
            PullbackWitness::from_degree(Ruling::F, l, r)
        } else {
            PullbackWitness::from_degree(Ruling::E, k, r)
        };
        return GgVerdict::generated(GgClause::Pullback, Some(w), trace);
    }
    if k == 0 || l == 0 {
        trace.push(format!("ch2={}", v.ch2));
        return GgVerdict::not_generated(trace);
    }
    let chi_f = twisted_chi(s, v, -DivisorClass::F);
    let chi_e = twisted_chi(s, v, -DivisorClass::E);
    trace.push(format!("chi(v(-F))={chi_f}"));
    trace.push(format!("chi(v(-E))={chi_e}"));
    if !chi_f.is_negative() || !chi_e.is_negative() {
        return GgVerdict::generated(GgClause::TwistNonnegative, None, trace);
    }
    let chi = v.chi(s);
    trace.push(format!("chi={chi}"));
    if chi >= BigInt::from(r + 2) {
        return GgVerdict::generated(GgClause::LargeChi, None, trace);
    }
    GgVerdict::not_generated(trace)
}

/// The kernel character `χ(v)·ch O - v` of the evaluation map.
pub fn lazarsfeld_mukai(s: Surface, v: &ChernCharacter) -> Result<ChernCharacter> {
    v.validate(s)?;
    let chi = v.chi(s);
    let excess = &chi - BigInt::from(v.rank);
    if !excess.is_positive() {
        return Err(Error::NonPositiveMukaiRank { chi, rank: v.rank });
    }
    let rank = excess.to_i64().ok_or_else(|| Error::Internal(format!("rank {excess} out of range")))?;
    Ok(ChernCharacter::new(rank, -v.c1, -v.ch2.clone()))
}

/// Euler characteristics of the Serre dual `m^D` of the Lazarsfeld-Mukai
/// character and its twists by `-F`, `-E`, `-E-F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MukaiDualChecks {
    pub chi: BigInt,
    pub chi_minus_f: BigInt,
    pub chi_minus_e: BigInt,
    pub chi_minus_ef: BigInt,
}

impl MukaiDualChecks {
    /// `χ = 0`, `χ(-F) < 0`, `χ(-E) ≤ 0`, and `χ(-E-F) < 0` when `e ≥ 2`.
    pub fn hold(&self, s: Surface) -> bool {
        self.chi.is_zero()
            && self.chi_minus_f.is_negative()
            && !self.chi_minus_e.is_positive()
            && (s.e() < 2 || self.chi_minus_ef.is_negative())
    }
}

pub fn mukai_dual_checks(s: Surface, v: &ChernCharacter) -> Result<MukaiDualChecks> {
    let md = lazarsfeld_mukai(s, v)?.serre_dual(s);
    Ok(MukaiDualChecks {
        chi: md.chi(s),
        chi_minus_f: twisted_chi(s, &md, -DivisorClass::F),
        chi_minus_e: twisted_chi(s, &md, -DivisorClass::E),
        chi_minus_ef: twisted_chi(s, &md, DivisorClass::new(-1, -1)),
    })
}

/// A character on `P²`: rank, `c1 = d·H`, and `ch2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct P2Character {
    pub rank: i64,
    pub d: i64,
    pub ch2: BigRational,
}

impl P2Character {
    pub fn new(rank: i64, d: i64, ch2: BigRational) -> Self {
        Self { rank, d, ch2 }
    }

    /// `ch O(n)`.
    pub fn line_bundle(n: i64) -> Self {
        Self::new(1, n, Q::from_integer(BigInt::from(n * n)) * half())
    }

    /// `χ = ch2 + 3d/2 + r`.
    pub fn chi_q(&self) -> BigRational {
        &self.ch2 + frac(3 * self.d, 2) + int(self.rank)
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank < 1 {
            return Err(Error::NonPositiveRank(self.rank));
        }
        let chi = self.chi_q();
        if !chi.is_integer() {
            return Err(Error::NonIntegralChi(chi));
        }
        Ok(())
    }

    pub fn chi(&self) -> BigInt {
        as_integer(&self.chi_q()).expect("chi of an inadmissible character")
    }

    pub fn mu(&self) -> BigRational {
        frac(self.d, self.rank)
    }

    /// `½μ² - ch2/r`.
    pub fn delta(&self) -> BigRational {
        let mu = self.mu();
        &mu * &mu * half() - &self.ch2 / int(self.rank)
    }

    /// `v ⊗ O(n)`.
    pub fn twist(&self, n: i64) -> Self {
        let ch2 = &self.ch2 + int(self.d * n) + int(self.rank * n * n) * half();
        Self::new(self.rank, self.d + self.rank * n, ch2)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.rank + other.rank, self.d + other.d, &self.ch2 + &other.ch2)
    }

    pub fn scaled(&self, n: i64) -> Self {
        Self::new(n * self.rank, n * self.d, &self.ch2 * int(n))
    }
}

impl fmt::Display for P2Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, c1={}H, ch2={})", self.rank, self.d, self.ch2)
    }
}

pub fn gg_p2(v: &P2Character) -> Result<GgVerdict> {
    gg_p2_with(v, GgOptions::default())
}

pub fn gg_p2_with(v: &P2Character, opts: GgOptions) -> Result<GgVerdict> {
    v.validate()?;
    if v.rank < 2 {
        return Err(Error::RankTooSmall(v.rank));
    }
    let delta = v.delta();
    if delta.is_negative() {
        return Err(Error::NegativeDiscriminant(delta));
    }
    let mu = v.mu();
    let mut trace = vec![format!("mu={mu}")];
    if mu.is_negative() {
        if opts.lenient {
            trace.push("not nef".to_string());
            return Ok(GgVerdict::not_generated(trace));
        }
        return Err(Error::NonNefSlope(format!("slope = {mu}")));
    }
    if v.d == 0 {
        trace.push(format!("ch2={}", v.ch2));
        if v.ch2.is_zero() {
            return Ok(GgVerdict::generated(GgClause::Pullback, None, trace));
        }
        return Ok(GgVerdict::not_generated(trace));
    }
    let chi_1 = v.twist(-1).chi();
    trace.push(format!("chi(v(-1))={chi_1}"));
    if !chi_1.is_negative() {
        return Ok(GgVerdict::generated(GgClause::TwistNonnegative, None, trace));
    }
    let chi = v.chi();
    trace.push(format!("chi={chi}"));
    if chi >= BigInt::from(v.rank + 2) {
        return Ok(GgVerdict::generated(GgClause::LargeChi, None, trace));
    }
    if *v == P2Character::new(v.rank, 2, int(-2)) {
        return Ok(GgVerdict::generated(GgClause::Exceptional, None, trace));
    }
    Ok(GgVerdict::not_generated(trace))
}
