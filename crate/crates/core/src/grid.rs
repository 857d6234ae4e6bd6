//! Finite families of characters used for sweeps.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Signed;

use crate::chern::ChernCharacter;
use crate::rational::{ceil, floor, frac, int, parse_rational};
use crate::surface::Surface;

/// Every admissible `(r, kE + lF, ch2)` on `F_e` with `e ≤ e_max`,
/// `r_min ≤ r ≤ r_max`, `|k|, |l| ≤ c1_bound` and `0 ≤ Δ ≤ delta_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub e_max: u32,
    pub r_min: i64,
    pub r_max: i64,
    pub c1_bound: i64,
    pub delta_max: BigRational,
}

impl Grid {
    pub fn full() -> Self {
        Grid { e_max: 3, r_min: 1, r_max: 4, c1_bound: 6, delta_max: int(4) }
    }

    pub fn small() -> Self {
        Grid { e_max: 2, r_min: 1, r_max: 3, c1_bound: 3, delta_max: int(2) }
    }

    /// Applies `key=value` pairs separated by commas, e.g. `e_max=2,delta_max=5/2`.
    /// Keys: `e_max`, `r_min`, `r_max`, `c1`, `delta_max`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self, String> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| format!("expected key=value, got {item:?}"))?;
            let int_value = || value.trim().parse::<i64>().map_err(|e| format!("{key}: {e}"));
            match key.trim() {
                "e_max" => self.e_max = value.trim().parse().map_err(|e| format!("{key}: {e}"))?,
                "r_min" => self.r_min = int_value()?,
                "r_max" => self.r_max = int_value()?,
                "c1" => self.c1_bound = int_value()?,
                "delta_max" => self.delta_max = parse_rational(value.trim()).map_err(|e| format!("{key}: {e}"))?,
                other => return Err(format!("unknown grid key {other:?}")),
            }
        }
        if self.r_min < 1 || self.r_max < self.r_min {
            return Err(format!("bad rank range {}..={}", self.r_min, self.r_max));
        }
        if self.c1_bound < 0 || self.delta_max.is_negative() {
            return Err("grid bounds must be nonnegative".to_string());
        }
        Ok(self)
    }

    pub fn points(&self) -> Vec<(Surface, ChernCharacter)> {
        let mut out = Vec::new();
        let b = self.c1_bound;
        for e in 0..=self.e_max {
            let s = Surface::new(e);
            let ei = i64::from(e);
            for r in self.r_min..=self.r_max {
                for k in -b..=b {
                    for l in -b..=b {
                        // Δ ∈ [0, D]  ⇔  ch2 ∈ [rν²/2 - rD, rν²/2], with 2·ch2 ≡ ke (mod 2).
                        let r_nu_sq = frac(2 * k * l - ei * k * k, r);
                        let lo = ceil(&(&r_nu_sq - int(2 * r) * &self.delta_max));
                        let hi = floor(&r_nu_sq);
                        let (lo, hi) = (to_i64(lo), to_i64(hi));
                        for twice in lo..=hi {
                            if (twice - k * ei).rem_euclid(2) != 0 {
                                continue;
                            }
                            out.push((s, ChernCharacter::from_parts(r, k, l, frac(twice, 2))));
                        }
                    }
                }
            }
        }
        out
    }
}

fn to_i64(x: num_bigint::BigInt) -> i64 {
    i64::try_from(x).expect("grid bound fits in i64")
}

impl FromStr for Grid {
    type Err = String;

    /// `small`, `full`, or either followed by `:` and overrides.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (base, rest) = s.split_once(':').unwrap_or((s, ""));
        let grid = match base.trim() {
            "small" => Grid::small(),
            "full" => Grid::full(),
            other => return Err(format!("unknown grid {other:?} (expected small or full)")),
        };
        grid.with_overrides(rest)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "e<={} r={}..{} |k|,|l|<={} 0<=Delta<={}",
            self.e_max, self.r_min, self.r_max, self.c1_bound, self.delta_max
        )
    }
}
