//! Exact rational scalars.
//!
//! All quantities in this crate (weights, phases, degrees, pairings) are
//! `BigRational` values: arbitrary-precision, stored in lowest terms with a
//! positive denominator, and never rounded.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

pub type Q = BigRational;

/// Exact integer as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exact fraction `n/d`.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Reduce into `[0, 1)`.
pub fn mod1(x: &Q) -> Q {
    x - x.floor()
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

/// Renders `p/q`, or just `p` when the value is an integer.
pub fn q_to_string(x: &Q) -> String {
    x.to_string()
}

/// Parses `p` or `p/q`.
pub fn q_from_string(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
    }
}

/// Least common multiple of the denominators of a set of rationals.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    let mut l = BigInt::one();
    for x in xs {
        l = l.lcm(&x.denom().abs());
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for x in [qr(2, 5), qi(-3), qr(-7, 4), Q::zero()] {
            assert_eq!(q_from_string(&q_to_string(&x)).unwrap(), x);
        }
    }

    #[test]
    fn mod1_lands_in_unit_interval() {
        for x in [qr(-1, 5), qr(7, 5), qi(2), qr(-9, 4)] {
            let m = mod1(&x);
            assert!(m >= Q::zero() && m < Q::one());
            assert!((x - m).is_integer());
        }
    }
}
