//! The Picard lattice of a Hirzebruch surface `F_e`.
//!
//! Classes are written `aE + bF` where `F` is a fiber of the ruling and `E` is
//! the section with `E² = -e`. The surface parameter is never stored inside a
//! class; every operation that needs the intersection form takes a [`Surface`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::rational::{int, Q};

/// The Hirzebruch surface `F_e = P(O ⊕ O(e))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surface {
    e: u32,
}

impl Surface {
    pub const fn new(e: u32) -> Self {
        Self { e }
    }

    pub const fn e(self) -> u32 {
        self.e
    }

    pub(crate) fn e_i64(self) -> i64 {
        i64::from(self.e)
    }

    /// `K = -2E - (e+2)F`.
    pub fn canonical_class(self) -> DivisorClass {
        DivisorClass::new(-2, -(self.e_i64() + 2))
    }

    /// Intersection of two integral classes.
    pub fn intersect(self, d1: DivisorClass, d2: DivisorClass) -> BigInt {
        let e = BigInt::from(self.e);
        let (a1, b1, a2, b2) = (
            BigInt::from(d1.a),
            BigInt::from(d1.b),
            BigInt::from(d2.a),
            BigInt::from(d2.b),
        );
        -(&a1 * &a2 * e) + &a1 * b2 + a2 * b1
    }

    /// Intersection of two rational classes: `a1·a2·(-e) + a1·b2 + a2·b1`.
    pub fn intersect_q(self, d1: &RationalDivisorClass, d2: &RationalDivisorClass) -> BigRational {
        let e = Q::from_integer(BigInt::from(self.e));
        -(&d1.a * &d2.a * e) + &d1.a * &d2.b + &d2.a * &d1.b
    }

    /// `D·E` for a rational class.
    pub fn dot_e(self, d: &RationalDivisorClass) -> BigRational {
        &d.b - &d.a * Q::from_integer(BigInt::from(self.e))
    }

    /// `D·F` for a rational class.
    pub fn dot_f(self, d: &RationalDivisorClass) -> BigRational {
        d.a.clone()
    }

    pub fn cone_position(self, d: &RationalDivisorClass) -> ConePosition {
        let de = self.dot_e(d);
        let df = self.dot_f(d);
        ConePosition {
            effective: !d.a.is_negative() && !d.b.is_negative(),
            nef: !de.is_negative() && !df.is_negative(),
            ample: de.is_positive() && df.is_positive(),
        }
    }

    /// `χ(O(aE+bF)) = (a+1)(b+1) - e·a(a+1)/2`. Always integral since `a(a+1)` is even.
    pub fn chi_line(self, d: DivisorClass) -> BigInt {
        let a = BigInt::from(d.a);
        let b = BigInt::from(d.b);
        let e = BigInt::from(self.e);
        let a1: BigInt = &a + 1;
        let tri: BigInt = (&a * &a1) / 2;
        a1 * (b + 1) - e * tri
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.e)
    }
}

/// Which of the standard cones of `N¹(F_e)` a class belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConePosition {
    pub effective: bool,
    pub nef: bool,
    pub ample: bool,
}

/// An integral class `aE + bF` in `Pic(F_e)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass { a: 0, b: 0 };
    pub const E: DivisorClass = DivisorClass { a: 1, b: 0 };
    pub const F: DivisorClass = DivisorClass { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn to_rational(self) -> RationalDivisorClass {
        RationalDivisorClass::new(int(self.a), int(self.b))
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> Self {
        DivisorClass::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> Self {
        DivisorClass::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> Self {
        DivisorClass::new(-self.a, -self.b)
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass::new(self * rhs.a, self * rhs.b)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_class(f, &self.a.to_string(), &self.b.to_string())
    }
}

/// A class in `N¹(F_e)_Q`, used for total slopes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalDivisorClass {
    pub a: BigRational,
    pub b: BigRational,
}

impl RationalDivisorClass {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::new(Q::zero(), Q::zero())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(&self.a * s, &self.b * s)
    }
}

impl Add<&RationalDivisorClass> for &RationalDivisorClass {
    type Output = RationalDivisorClass;
    fn add(self, rhs: &RationalDivisorClass) -> RationalDivisorClass {
        RationalDivisorClass::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub<&RationalDivisorClass> for &RationalDivisorClass {
    type Output = RationalDivisorClass;
    fn sub(self, rhs: &RationalDivisorClass) -> RationalDivisorClass {
        RationalDivisorClass::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl fmt::Display for RationalDivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_class(f, &self.a.to_string(), &self.b.to_string())
    }
}

fn write_class(f: &mut fmt::Formatter<'_>, a: &str, b: &str) -> fmt::Result {
    write!(f, "({a})E + ({b})F")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn intersection_table() {
        let s = Surface::new(1);
        assert_eq!(s.intersect(DivisorClass::E, DivisorClass::E), BigInt::from(-1));
        for e in 0..5 {
            let s = Surface::new(e);
            assert_eq!(s.intersect(DivisorClass::F, DivisorClass::F), BigInt::zero());
            assert_eq!(s.intersect(DivisorClass::E, DivisorClass::F), BigInt::from(1));
        }
        let s = Surface::new(2);
        assert_eq!(
            s.intersect(DivisorClass::new(1, 3), DivisorClass::new(2, 1)),
            BigInt::from(3)
        );
    }

    #[test]
    fn canonical_classes() {
        assert_eq!(Surface::new(0).canonical_class(), DivisorClass::new(-2, -2));
        assert_eq!(Surface::new(1).canonical_class(), DivisorClass::new(-2, -3));
        assert_eq!(Surface::new(2).canonical_class(), DivisorClass::new(-2, -4));
        for e in 0..6 {
            let s = Surface::new(e);
            let k = s.canonical_class();
            assert_eq!(s.intersect(k, k), BigInt::from(8));
        }
    }

    #[test]
    fn cone_examples() {
        let s = Surface::new(2);
        let p = s.cone_position(&DivisorClass::E.to_rational());
        assert!(p.effective && !p.nef && !p.ample);
        let p = s.cone_position(&DivisorClass::new(1, 2).to_rational());
        assert!(p.nef && !p.ample);
        for e in 0..4 {
            let p = Surface::new(e).cone_position(&RationalDivisorClass::zero());
            assert_eq!(p, ConePosition { effective: true, nef: true, ample: false });
        }
        let p = s.cone_position(&RationalDivisorClass::new(frac(1, 2), frac(3, 2)));
        assert!(p.ample);
    }

    #[test]
    fn chi_line_examples() {
        for e in 0..5 {
            let s = Surface::new(e);
            assert_eq!(s.chi_line(DivisorClass::ZERO), BigInt::from(1));
            for b in -10..=10 {
                assert_eq!(s.chi_line(DivisorClass::new(-1, b)), BigInt::zero());
            }
        }
        assert_eq!(Surface::new(1).chi_line(DivisorClass::new(1, 0)), BigInt::from(1));
    }

    #[test]
    fn chi_line_matches_serre_symmetric_form() {
        // χ(D) = χ(O) + ½ D·(D-K)
        for e in 0..=4 {
            let s = Surface::new(e);
            let k = s.canonical_class();
            for a in -10..=10 {
                for b in -10..=10 {
                    let d = DivisorClass::new(a, b);
                    let twice = s.intersect(d, d - k);
                    assert_eq!(s.chi_line(d), BigInt::from(1) + twice / 2, "e={e} D={d}");
                }
            }
        }
    }

    #[test]
    fn nef_classes_are_effective() {
        for e in 0..=4 {
            let s = Surface::new(e);
            for a in -6..=6 {
                for b in -6..=12 {
                    let p = s.cone_position(&DivisorClass::new(a, b).to_rational());
                    if p.nef {
                        assert!(p.effective);
                    }
                }
            }
        }
    }
}
