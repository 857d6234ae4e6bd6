//! Gaeta-type resolutions
//!
//! ```text
//! 0 → L(-E-(e+1)F)^α → L(-E-eF)^β ⊕ L(-F)^γ ⊕ L^δ → V → 0
//! ```
//!
//! The exponents are forced by the character; the only freedom is the line
//! bundle `L`. A twist `L` is *feasible* for `v` when
//!
//! ```text
//! χ(v(-L)) ≥ 0,  χ(v(-L-E)) ≤ 0,  χ(v(-L-F)) ≤ 0,  χ(v(-L-E-F)) ≤ 0,
//! ```
//!
//! and a general prioritary sheaf of character `v` then has such a resolution.
//!
//! Writing `L = ν - K/2 + aE + bF`, the curve `χ(v(-L)) = 0` is the hyperbola
//! `a(b - ae/2) = Δ`. Feasible twists sit just below its left branch, so the
//! search is confined to a finite box around that branch.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::chern::ChernCharacter;
use crate::error::{Error, Result};
use crate::rational::{ceil, ceil_sqrt, floor, frac, int, Q};
use crate::surface::{DivisorClass, RationalDivisorClass, Surface};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exponents {
    pub alpha: BigInt,
    pub beta: BigInt,
    pub gamma: BigInt,
    pub delta: BigInt,
}

impl Exponents {
    pub fn is_feasible(&self) -> bool {
        [&self.alpha, &self.beta, &self.gamma, &self.delta].iter().all(|x| !x.is_negative())
    }

    /// `β + γ + δ - α`.
    pub fn rank(&self) -> BigInt {
        &self.beta + &self.gamma + &self.delta - &self.alpha
    }
}

impl fmt::Display for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.alpha, self.beta, self.gamma, self.delta)
    }
}

/// The four line bundles of the resolution relative to the twist `L`:
/// the syzygy term `L-E-(e+1)F` and the generators `L-E-eF`, `L-F`, `L`.
pub fn resolution_bundles(s: Surface, l: DivisorClass) -> [DivisorClass; 4] {
    let e = s.e_i64();
    [
        l - DivisorClass::new(1, e + 1),
        l - DivisorClass::new(1, e),
        l - DivisorClass::F,
        l,
    ]
}

/// Exponents of an `L`-Gaeta-type resolution of `v`. Negative entries mean `L`
/// is not feasible.
pub fn exponents(s: Surface, v: &ChernCharacter, l: DivisorClass) -> Exponents {
    let chi = v.chi(s);
    twisted_exponents(s, v, &chi, l)
}

/// `χ(v ⊗ O(D)) = χ(v) + D·c1(v) + r(χ(O(D)) - 1)`.
fn twisted_chi(s: Surface, v: &ChernCharacter, chi: &BigInt, d: DivisorClass) -> BigInt {
    chi + s.intersect(d, v.c1) + BigInt::from(v.rank) * (s.chi_line(d) - 1)
}

fn twisted_exponents(s: Surface, v: &ChernCharacter, chi: &BigInt, l: DivisorClass) -> Exponents {
    let g = |d: DivisorClass| twisted_chi(s, v, chi, -d);
    Exponents {
        alpha: -g(l + DivisorClass::new(1, 1)),
        beta: -g(l + DivisorClass::E),
        gamma: -g(l + DivisorClass::F),
        delta: g(l),
    }
}

/// Whether the discriminant meets the threshold that guarantees a feasible twist:
/// `Δ ≥ 1/4` on `F_0`, `Δ ≥ 1/8` on `F_1`, `Δ ≥ 0` otherwise.
pub fn threshold_met(s: Surface, delta: &BigRational) -> bool {
    let bound = match s.e() {
        0 => frac(1, 4),
        1 => frac(1, 8),
        _ => Q::zero(),
    };
    *delta >= bound
}

/// The hyperbola data and the finite box searched for twists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchRegion {
    /// `ν - K/2`, where the asymptotes meet.
    pub center: RationalDivisorClass,
    /// Slope of the asymptote `b = ae/2`; the other asymptote is `a = 0`.
    pub asymptote_slope: BigRational,
    pub delta: BigRational,
    pub x_range: (i64, i64),
    pub y_range: (i64, i64),
}

impl SearchRegion {
    /// The box for `v`.
    ///
    /// `x` spans `⌊ν_E⌋ - C ..= ⌈ν_E⌉ + C` with `C = ⌈2 + 2√max(Δ,1)⌉`. The column
    /// `x = ⌈ν_E⌉` always holds a feasible twist once the discriminant threshold
    /// is met, and no column with `x > ν_E + 1` holds one.
    ///
    /// `y` covers `⌊ν_F⌋ - C ..= ⌈ν_F⌉ + C` and is widened so that it contains
    /// every feasible twist whose `x` lies in range: in a column at distance
    /// `t = ν_E + 1 - x > 0` such twists satisfy `b ∈ [-te/2 - Δ/t - 1, 0]`. The one
    /// unbounded family (`Δ = 0`, `t = 0`) is truncated by the box.
    pub fn for_character(s: Surface, v: &ChernCharacter) -> Self {
        let delta = v.delta(s);
        let nu = v.nu();
        let k = s.canonical_class().to_rational();
        let center = &nu - &k.scale(&frac(1, 2));
        let e = int(s.e_i64());
        let big_m = if delta > int(1) { delta.clone() } else { int(1) };
        let c: BigInt = 2 + ceil_sqrt(&(big_m * int(4)));

        let x_lo: BigInt = floor(&nu.a) - &c;
        let x_hi: BigInt = ceil(&nu.a) + &c;

        // Smallest positive t = ν_E + 1 - x over integers x.
        let frac_part = &nu.a - Q::from_integer(floor(&nu.a));
        let t_min = if frac_part.is_zero() { int(1) } else { frac_part };
        let t_max = &nu.a + int(1) - Q::from_integer(x_lo.clone());
        let b_min = -(&t_max * &e) / int(2) - &delta / &t_min - int(1);
        let y_cert_lo = floor(&(&b_min + &center.b));
        let y_lo = (floor(&nu.b) - &c).min(y_cert_lo);
        let y_hi = (ceil(&nu.b) + &c).max(ceil(&nu.b) + BigInt::from(s.e()));

        let to_i64 = |x: BigInt| x.to_i64().expect("search box fits in i64");
        SearchRegion {
            center,
            asymptote_slope: e / int(2),
            delta,
            x_range: (to_i64(x_lo), to_i64(x_hi)),
            y_range: (to_i64(y_lo), to_i64(y_hi)),
        }
    }

    pub fn contains(&self, l: DivisorClass) -> bool {
        (self.x_range.0..=self.x_range.1).contains(&l.a) && (self.y_range.0..=self.y_range.1).contains(&l.b)
    }

    pub fn point_count(&self) -> u64 {
        let w = (self.x_range.1 - self.x_range.0 + 1) as u64;
        let h = (self.y_range.1 - self.y_range.0 + 1) as u64;
        w * h
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaetaResolution {
    pub l: DivisorClass,
    pub exponents: Exponents,
    /// The discriminant meets the threshold for this surface.
    pub guaranteed: bool,
}

impl GaetaResolution {
    /// `β·ch(L-E-eF) + γ·ch(L-F) + δ·ch(L) - α·ch(L-E-(e+1)F)`.
    pub fn character(&self, s: Surface) -> ChernCharacter {
        let [syz, g1, g2, g3] = resolution_bundles(s, self.l);
        let n = |x: &BigInt| x.to_i64().expect("exponent fits in i64");
        let line = |d| ChernCharacter::line_bundle(s, d);
        line(g1)
            .scaled(n(&self.exponents.beta))
            .add(&line(g2).scaled(n(&self.exponents.gamma)))
            .add(&line(g3).scaled(n(&self.exponents.delta)))
            .sub(&line(syz).scaled(n(&self.exponents.alpha)))
    }

    /// The resolution as a line of text.
    pub fn render(&self, s: Surface) -> String {
        let [syz, g1, g2, g3] = resolution_bundles(s, self.l);
        let x = &self.exponents;
        let mut gens = Vec::new();
        for (d, n) in [(g1, &x.beta), (g2, &x.gamma), (g3, &x.delta)] {
            if !n.is_zero() {
                gens.push(format!("{}^{}", render_line(d), n));
            }
        }
        let gens = if gens.is_empty() { "0".to_string() } else { gens.join(" + ") };
        let left = if x.alpha.is_zero() { "0".to_string() } else { format!("{}^{}", render_line(syz), x.alpha) };
        format!("0 -> {left} -> {gens} -> V -> 0")
    }
}

fn render_line(d: DivisorClass) -> String {
    format!("O({}E{:+}F)", d.a, d.b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaetaSearch {
    Found { resolution: GaetaResolution, region: SearchRegion },
    Infeasible { guaranteed: bool, region: SearchRegion },
}

fn check_preconditions(s: Surface, v: &ChernCharacter) -> Result<BigRational> {
    v.validate(s)?;
    v.discriminant_nonnegative(s)
}

/// Feasible twists in one column `x`, in increasing `y`.
///
/// For fixed `x` the map `y ↦ χ(v(-xE-yF))` is affine, so `χ(v(-L)) ≥ 0` together
/// with `χ(v(-L-F)) ≤ 0` pins `y` to at most two values.
fn column_candidates(s: Surface, v: &ChernCharacter, chi: &BigInt, x: i64, y_range: (i64, i64)) -> Vec<i64> {
    let g = |y: i64| twisted_chi(s, v, chi, -DivisorClass::new(x, y));
    let g0 = g(0);
    let slope = g(1) - &g0;
    let ys: Vec<i64> = if slope.is_negative() {
        // g(y) = slope·y + g0 ∈ [0, -slope]  ⇔  y ∈ [q - 1, q] with q = g0 / (-slope)
        let q = BigRational::new(g0, -slope);
        let top = floor(&q).to_i64().expect("column candidate fits in i64");
        if q.is_integer() { vec![top - 1, top] } else { vec![top] }
    } else if slope.is_zero() && g0.is_zero() {
        (y_range.0..=y_range.1).collect()
    } else {
        Vec::new()
    };
    ys.into_iter().filter(|y| (y_range.0..=y_range.1).contains(y)).collect()
}

fn feasible_in_region<'a>(
    s: Surface,
    v: &'a ChernCharacter,
    chi: &'a BigInt,
    region: &'a SearchRegion,
) -> impl Iterator<Item = (DivisorClass, Exponents)> + 'a {
    (region.x_range.0..=region.x_range.1).flat_map(move |x| {
        column_candidates(s, v, chi, x, region.y_range).into_iter().filter_map(move |y| {
            let l = DivisorClass::new(x, y);
            let ex = twisted_exponents(s, v, chi, l);
            ex.is_feasible().then_some((l, ex))
        })
    })
}

/// Lexicographically smallest feasible twist `(x, y)` in the search box.
pub fn find_l(s: Surface, v: &ChernCharacter) -> Result<GaetaSearch> {
    let delta = check_preconditions(s, v)?;
    let guaranteed = threshold_met(s, &delta);
    let region = SearchRegion::for_character(s, v);
    let chi = v.chi(s);
    let first = feasible_in_region(s, v, &chi, &region).next();
    match first {
        Some((l, exponents)) => Ok(GaetaSearch::Found {
            resolution: GaetaResolution { l, exponents, guaranteed },
            region,
        }),
        None if guaranteed => Err(Error::Internal(format!(
            "no feasible twist for {v} on {s} although the discriminant threshold holds"
        ))),
        None => Ok(GaetaSearch::Infeasible { guaranteed, region }),
    }
}

/// Every feasible twist in the search box, in lexicographic order.
pub fn find_all(s: Surface, v: &ChernCharacter) -> Result<(SearchRegion, Vec<GaetaResolution>)> {
    let delta = check_preconditions(s, v)?;
    let guaranteed = threshold_met(s, &delta);
    let region = SearchRegion::for_character(s, v);
    let chi = v.chi(s);
    let all = feasible_in_region(s, v, &chi, &region)
        .map(|(l, exponents)| GaetaResolution { l, exponents, guaranteed })
        .collect();
    Ok((region, all))
}

/// Exhaustive scan of the search box, computing every exponent from scratch by
/// twisting the character. Independent of the column solver used by [`find_l`].
#[cfg(any(test, feature = "oracle"))]
pub fn brute_force_feasible(s: Surface, v: &ChernCharacter, region: &SearchRegion) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    for x in region.x_range.0..=region.x_range.1 {
        for y in region.y_range.0..=region.y_range.1 {
            let l = DivisorClass::new(x, y);
            let chi_at = |d: DivisorClass| v.twist(s, -(l + d)).chi(s);
            let ok = !chi_at(DivisorClass::ZERO).is_negative()
                && !chi_at(DivisorClass::E).is_positive()
                && !chi_at(DivisorClass::F).is_positive()
                && !chi_at(DivisorClass::new(1, 1)).is_positive();
            if ok {
                out.push(l);
            }
        }
    }
    out
}
