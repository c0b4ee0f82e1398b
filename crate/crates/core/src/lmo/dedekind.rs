use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::Error;
use crate::series::{int, Rational};

/// The sawtooth function `((x))`: `x - floor(x) - 1/2`, or 0 at integers.
fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        return Rational::zero();
    }
    x - x.floor() - Rational::new(BigInt::from(1), BigInt::from(2))
}

/// Classical Dedekind sum `s(q, p) = sum_{k=1}^{p-1} ((k/p)) ((kq/p))`.
pub fn dedekind_sum(q: i64, p: i64) -> Result<Rational, Error> {
    if p < 1 {
        return Err(Error::InvalidArgument(alloc::format!("modulus {p} must be positive")));
    }
    if q.gcd(&p) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    let mut total = Rational::zero();
    for k in 1..p {
        let a = Rational::new(BigInt::from(k), BigInt::from(p));
        let b = Rational::new(BigInt::from(k) * BigInt::from(q), BigInt::from(p));
        total += sawtooth(&a) * sawtooth(&b);
    }
    Ok(total)
}

/// Dedekind symbol `S(q/p)`, normalized as twelve times the classical
/// Dedekind sum.
pub fn dedekind_symbol(q: i64, p: i64) -> Result<Rational, Error> {
    Ok(dedekind_sum(q, p)? * int(12))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn small_values() {
        assert_eq!(dedekind_symbol(5, 1).unwrap(), int(0));
        assert_eq!(dedekind_symbol(1, 3).unwrap(), rat(2, 3));
        assert_eq!(dedekind_sum(1, 5).unwrap(), rat(1, 5));
        assert_eq!(dedekind_sum(2, 5).unwrap(), int(0));
    }

    #[test]
    fn rejects_common_factor() {
        assert_eq!(dedekind_symbol(2, 4), Err(Error::NotCoprime { p: 4, q: 2 }));
        assert!(dedekind_symbol(1, 0).is_err());
    }

    #[test]
    fn periodic_and_odd() {
        for p in 1..15i64 {
            for q in -20..20i64 {
                if q.gcd(&p) != 1 {
                    continue;
                }
                let s = dedekind_symbol(q, p).unwrap();
                assert_eq!(s, dedekind_symbol(q + p, p).unwrap());
                assert_eq!(-s, dedekind_symbol(-q, p).unwrap());
            }
        }
    }
}
