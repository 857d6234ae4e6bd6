//! Chern characters `(r, c1, ch2)` on `F_e` and their numerical invariants.
//!
//! [`ChernCharacter::validate`] is the only admissibility gate. Every other
//! method assumes the character has positive rank and integral Euler
//! characteristic, which forces `ch2 ∈ k·e/2 + Z` where `c1 = kE + lF`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{as_integer, half, int, Q};
use crate::surface::{DivisorClass, RationalDivisorClass, Surface};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernCharacter {
    pub rank: i64,
    pub c1: DivisorClass,
    pub ch2: BigRational,
}

/// Slope, discriminant and Euler characteristic of a character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterInvariants {
    pub nu: RationalDivisorClass,
    pub delta: BigRational,
    pub chi: BigInt,
    /// `P(ν) = χ(O) + ½ ν·(ν - K)`.
    pub p_nu: BigRational,
    pub mu_h: Option<BigRational>,
}

impl ChernCharacter {
    pub fn new(rank: i64, c1: DivisorClass, ch2: BigRational) -> Self {
        Self { rank, c1, ch2 }
    }

    /// Convenience constructor with `c1 = kE + lF` and `ch2 = num/den`.
    pub fn from_parts(rank: i64, k: i64, l: i64, ch2: BigRational) -> Self {
        Self::new(rank, DivisorClass::new(k, l), ch2)
    }

    /// `ch O(D) = (1, D, D²/2)`.
    pub fn line_bundle(s: Surface, d: DivisorClass) -> Self {
        let d2 = Q::from_integer(s.intersect(d, d));
        Self::new(1, d, d2 * half())
    }

    /// `n · ch(O)`.
    pub fn trivial(rank: i64) -> Self {
        Self::new(rank, DivisorClass::ZERO, Q::zero())
    }

    pub fn validate(&self, s: Surface) -> Result<()> {
        if self.rank < 1 {
            return Err(Error::NonPositiveRank(self.rank));
        }
        let chi = self.chi_q(s);
        if !chi.is_integer() {
            return Err(Error::NonIntegralChi(chi));
        }
        Ok(())
    }

    /// Euler characteristic as an exact rational: `ch2 - k·e/2 + k + l + r`.
    pub fn chi_q(&self, s: Surface) -> BigRational {
        let k = self.c1.a;
        let l = self.c1.b;
        &self.ch2 - int(k * s.e_i64()) * half() + int(k + l + self.rank)
    }

    /// Euler characteristic of an admissible character.
    pub fn chi(&self, s: Surface) -> BigInt {
        let q = self.chi_q(s);
        debug_assert!(q.is_integer(), "chi of an inadmissible character");
        q.to_integer()
    }

    /// Total slope `ν = c1 / r`.
    pub fn nu(&self) -> RationalDivisorClass {
        self.c1.to_rational().scale(&BigRational::new(BigInt::one(), BigInt::from(self.rank)))
    }

    pub fn nu_dot_f(&self) -> BigRational {
        BigRational::new(BigInt::from(self.c1.a), BigInt::from(self.rank))
    }

    pub fn nu_dot_e(&self, s: Surface) -> BigRational {
        let c1e = self.c1.b - s.e_i64() * self.c1.a;
        BigRational::new(BigInt::from(c1e), BigInt::from(self.rank))
    }

    /// `Δ = ½ν² - ch2/r`.
    pub fn delta(&self, s: Surface) -> BigRational {
        let nu = self.nu();
        s.intersect_q(&nu, &nu) * half() - &self.ch2 / int(self.rank)
    }

    pub fn invariants(&self, s: Surface, polarization: Option<DivisorClass>) -> Result<CharacterInvariants> {
        self.validate(s)?;
        let nu = self.nu();
        let delta = self.delta(s);
        let k = s.canonical_class().to_rational();
        let p_nu = Q::one() + s.intersect_q(&nu, &(&nu - &k)) * half();
        let chi_q = int(self.rank) * (&p_nu - &delta);
        let chi = as_integer(&chi_q).ok_or_else(|| Error::NonIntegralChi(chi_q.clone()))?;
        let mu_h = match polarization {
            None => None,
            Some(h) => {
                if !s.cone_position(&h.to_rational()).ample {
                    return Err(Error::NonAmplePolarization(h));
                }
                let num = Q::from_integer(s.intersect(self.c1, h));
                let den = Q::from_integer(s.intersect(h, h) * BigInt::from(self.rank));
                Some(num / den)
            }
        };
        Ok(CharacterInvariants { nu, delta, chi, p_nu, mu_h })
    }

    /// `v ⊗ O(D)`.
    pub fn twist(&self, s: Surface, d: DivisorClass) -> Self {
        let c1 = self.c1 + self.rank * d;
        let ch2 = &self.ch2
            + Q::from_integer(s.intersect(self.c1, d))
            + Q::from_integer(s.intersect(d, d) * BigInt::from(self.rank)) * half();
        Self::new(self.rank, c1, ch2)
    }

    /// `v* ⊗ K`.
    pub fn serre_dual(&self, s: Surface) -> Self {
        let k = s.canonical_class();
        let c1 = self.rank * k - self.c1;
        let ch2 = &self.ch2 - Q::from_integer(s.intersect(self.c1, k))
            + Q::from_integer(s.intersect(k, k) * BigInt::from(self.rank)) * half();
        Self::new(self.rank, c1, ch2)
    }

    /// Character of a general elementary modification at a point.
    pub fn point_modification(&self) -> Self {
        Self::new(self.rank, self.c1, &self.ch2 - Q::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.rank + other.rank, self.c1 + other.c1, &self.ch2 + &other.ch2)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.rank - other.rank, self.c1 - other.c1, &self.ch2 - &other.ch2)
    }

    pub fn scaled(&self, n: i64) -> Self {
        Self::new(n * self.rank, n * self.c1, &self.ch2 * int(n))
    }

    pub(crate) fn discriminant_nonnegative(&self, s: Surface) -> Result<BigRational> {
        let delta = self.delta(s);
        if delta.is_negative() {
            return Err(Error::NegativeDiscriminant(delta));
        }
        Ok(delta)
    }
}

impl fmt::Display for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, c1={}E{:+}F, ch2={})", self.rank, self.c1.a, self.c1.b, self.ch2)
    }
}
