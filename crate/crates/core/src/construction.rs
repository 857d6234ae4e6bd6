//! Explicit prioritary models: a direct sum of the four line bundles
//!
//! ```text
//! L(-E-(e+1)F),  L(-E-eF),  L(-F),  L
//! ```
//!
//! followed by general elementary modifications at points. Their cohomology is
//! computed from line-bundle data alone, which gives an independent check on
//! [`crate::general_betti::betti`].
//!
//! The slopes of the four bundles (relative to `L`) span the parallelogram
//! `-1 ≤ x ≤ 0`, `ex - 1 ≤ y ≤ ex`. Its translates tile the plane; we own the
//! half-open copy `x ∈ (-1, 0]`, `y ∈ (ex - 1, ex]`, which makes `L` unique. The
//! diagonal `y = (e+1)x` cuts it into a lower triangle using `L(-F)` and an
//! upper one using `L(-E-eF)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::chern::ChernCharacter;
use crate::error::{Error, Result};
use crate::gaeta::resolution_bundles;
use crate::general_betti::betti;
use crate::line_cohomology::{cohomology, BettiTriple};
use crate::rational::{ceil, int};
use crate::surface::{DivisorClass, Surface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Triangle {
    /// `O(-E-(e+1)F)`, `O(-F)`, `O`.
    Lower,
    /// `O(-E-(e+1)F)`, `O(-E-eF)`, `O`.
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSumModel {
    pub l: DivisorClass,
    pub triangle: Triangle,
    /// Multiplicities of `L(-E-(e+1)F)`, `L(-E-eF)`, `L(-F)`, `L`.
    pub counts: [i64; 4],
    /// Number of elementary modifications.
    pub m: BigInt,
}

impl DirectSumModel {
    pub fn summands(&self, s: Surface) -> [(DivisorClass, i64); 4] {
        let bundles = resolution_bundles(s, self.l);
        [0, 1, 2, 3].map(|i| (bundles[i], self.counts[i]))
    }

    /// Character of the direct sum before any modification.
    pub fn unmodified_character(&self, s: Surface) -> ChernCharacter {
        self.summands(s)
            .iter()
            .fold(ChernCharacter::new(0, DivisorClass::ZERO, BigRational::zero()), |acc, (d, n)| {
                acc.add(&ChernCharacter::line_bundle(s, *d).scaled(*n))
            })
    }

    /// Character after the modifications.
    pub fn character(&self, s: Surface) -> ChernCharacter {
        let w = self.unmodified_character(s);
        let ch2 = &w.ch2 - BigRational::from_integer(self.m.clone());
        ChernCharacter::new(w.rank, w.c1, ch2)
    }
}

pub fn build_model(s: Surface, v: &ChernCharacter) -> Result<DirectSumModel> {
    v.validate(s)?;
    v.discriminant_nonnegative(s)?;
    let e = i64::from(s.e());
    let r = v.rank;
    let nu = v.nu();
    let le = ceil(&nu.a);
    let x = &nu.a - BigRational::from_integer(le.clone());
    let lf = ceil(&(&nu.b - &x * int(e)));
    let l = DivisorClass::new(
        le.to_i64().ok_or_else(|| Error::Internal("twist out of range".into()))?,
        lf.to_i64().ok_or_else(|| Error::Internal("twist out of range".into()))?,
    );
    let c = v.c1 - r * l;
    let (k, lc) = (c.a, c.b);
    let (triangle, counts) = if lc <= (e + 1) * k {
        let a = -k;
        let b = (e + 1) * k - lc;
        (Triangle::Lower, [a, 0, b, r - a - b])
    } else {
        let c3 = e * k - lc;
        let b = lc - (e + 1) * k;
        (Triangle::Upper, [c3, b, 0, r - b - c3])
    };
    if counts.iter().any(|n| *n < 0) {
        return Err(Error::Internal(format!("negative multiplicities {counts:?} for {v} on {s}")));
    }
    let mut model = DirectSumModel { l, triangle, counts, m: BigInt::zero() };
    let w = model.unmodified_character(s);
    let m = w.chi(s) - v.chi(s);
    if m.is_negative() {
        return Err(Error::Internal(format!("model for {v} on {s} has smaller Euler characteristic")));
    }
    model.m = m;
    Ok(model)
}

/// Cohomology of the general modified model.
///
/// Each modification lowers `h0` when the sheaf has sections and no `h1`,
/// and raises `h1` otherwise; `h2` never changes. When the direct sum already
/// has both `h0` and `h1` nothing can be said.
pub fn predicted_betti(s: Surface, model: &DirectSumModel) -> Result<BettiTriple> {
    let mut h = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for (d, n) in model.summands(s) {
        if n == 0 {
            continue;
        }
        let t = cohomology(s, d);
        let n = BigInt::from(n);
        h[0] += &t.h0 * &n;
        h[1] += &t.h1 * &n;
        h[2] += &t.h2 * &n;
    }
    let [mut h0, mut h1, h2] = h;
    if h0.is_positive() && h1.is_positive() {
        return Err(Error::AmbiguousModification);
    }
    // Sections drop one per step until they run out; the rest go to h1.
    let used = h0.clone().min(model.m.clone());
    h0 -= &used;
    h1 += &model.m - &used;
    Ok(BettiTriple::new(h0, h1, h2, Vec::new()))
}

/// Cohomology of the general sheaf of character `v` as read off a model.
///
/// Models with slope·F < -1 carry `h2`, which modifications preserve but a
/// general sheaf need not have. For rank at least 2 those characters are
/// handled on the Serre dual, whose models have no `h2`.
pub fn predict(s: Surface, v: &ChernCharacter) -> Result<BettiTriple> {
    if v.rank >= 2 && v.nu_dot_f() < int(-1) {
        let dual = v.serre_dual(s);
        return Ok(predicted_betti(s, &build_model(s, &dual)?)?.reversed());
    }
    predicted_betti(s, &build_model(s, v)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointOutcome {
    Match,
    /// The model has both `h0` and `h1` before modification.
    Abstain,
    /// The Betti computation does not cover this character.
    Unsupported,
    Mismatch(Box<(BettiTriple, BettiTriple)>),
}

pub fn check_point(s: Surface, v: &ChernCharacter) -> Result<PointOutcome> {
    let expected = match betti(s, v) {
        Ok(b) => b.triple,
        Err(Error::UnsupportedRankOne) => return Ok(PointOutcome::Unsupported),
        Err(err) => return Err(err),
    };
    let predicted = match predict(s, v) {
        Ok(t) => t,
        Err(Error::AmbiguousModification) => return Ok(PointOutcome::Abstain),
        Err(err) => return Err(err),
    };
    if predicted.numbers() == expected.numbers() {
        Ok(PointOutcome::Match)
    } else {
        Ok(PointOutcome::Mismatch(Box::new((expected, predicted))))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub grid_size: usize,
    pub matches: usize,
    pub abstentions: usize,
    pub unsupported: usize,
    pub failures: Vec<(Surface, ChernCharacter, String)>,
}

impl VerifyReport {
    pub fn record(&mut self, s: Surface, v: &ChernCharacter, outcome: Result<PointOutcome>) {
        self.grid_size += 1;
        match outcome {
            Ok(PointOutcome::Match) => self.matches += 1,
            Ok(PointOutcome::Abstain) => self.abstentions += 1,
            Ok(PointOutcome::Unsupported) => self.unsupported += 1,
            Ok(PointOutcome::Mismatch(pair)) => {
                let (expected, predicted) = *pair;
                self.failures.push((s, v.clone(), format!("expected {expected}, predicted {predicted}")))
            }
            Err(err) => self.failures.push((s, v.clone(), err.to_string())),
        }
    }

    /// Abstentions over points where a prediction was attempted.
    pub fn abstention_rate(&self) -> f64 {
        let attempted = self.grid_size - self.unsupported;
        if attempted == 0 {
            0.0
        } else {
            self.abstentions as f64 / attempted as f64
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify<'a>(points: impl IntoIterator<Item = &'a (Surface, ChernCharacter)>) -> VerifyReport {
    let mut report = VerifyReport::default();
    for (s, v) in points {
        report.record(*s, v, check_point(*s, v));
    }
    report
}

/// `2r²Δ` of the lower-triangle sum `O(-E-(e+1)F)^a ⊕ O(-F)^b ⊕ O^c`.
pub fn lower_triangle_discriminant(e: i64, a: i64, b: i64, c: i64) -> BigInt {
    BigInt::from(-a * (b * e + c * e + 2 * c))
}
