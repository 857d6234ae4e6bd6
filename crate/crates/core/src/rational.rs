//! Small helpers around `BigRational`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn half() -> BigRational {
    frac(1, 2)
}

/// Returns the integer value of `q` if its denominator is 1.
pub fn as_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

pub fn floor(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil(q: &BigRational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

/// Parses `"p/q"`, `"-p/q"` or `"n"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim().replace('\u{2212}', "-");
    let parsed = match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
            let d = BigInt::from_str(d.trim()).map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(
            BigInt::from_str(&t).map_err(|e| format!("bad rational {s:?}: {e}"))?,
        ),
    };
    Ok(parsed)
}

/// Smallest square root bound: `⌈√q⌉` for `q ≥ 0`.
pub fn ceil_sqrt(q: &BigRational) -> BigInt {
    if !q.is_positive() {
        return BigInt::zero();
    }
    let c = ceil(q);
    let mut s = c.sqrt();
    while BigRational::from_integer(&s * &s) < *q {
        s += BigInt::one();
    }
    while s > BigInt::zero() {
        let t: BigInt = &s - 1;
        if BigRational::from_integer(&t * &t) >= *q {
            s = t;
        } else {
            break;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-3/2").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("4/2").unwrap(), int(2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(parse_rational("\u{2212}1/3").unwrap(), frac(-1, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn floors_and_ceils() {
        assert_eq!(floor(&frac(-3, 2)), BigInt::from(-2));
        assert_eq!(ceil(&frac(-3, 2)), BigInt::from(-1));
        assert_eq!(ceil(&int(4)), BigInt::from(4));
        assert_eq!(ceil_sqrt(&int(4)), BigInt::from(2));
        assert_eq!(ceil_sqrt(&frac(17, 4)), BigInt::from(3));
        assert_eq!(ceil_sqrt(&frac(1, 8)), BigInt::from(1));
        assert_eq!(ceil_sqrt(&int(0)), BigInt::from(0));
    }
}
