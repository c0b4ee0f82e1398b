//! The coefficients `b_{2m}` of `½ log(sinh(x/2) / (x/2))`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::series::Rational;

/// Truncated univariate power series, `c[k]` the coefficient of `x^k`.
fn mul(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `½ log(sinh(x/2) / (x/2))` up to and including `x^max`.
pub fn log_sinh_series(max: usize) -> Vec<Rational> {
    let len = max + 1;
    // sinh(x/2)/(x/2) - 1 = sum over k >= 1 of (x/2)^{2k} / (2k+1)!
    let mut u = vec![Rational::zero(); len];
    let mut fact = BigInt::one();
    let mut pow2 = BigInt::one();
    for n in 1..=len {
        fact *= BigInt::from(n as u64 + 1);
        pow2 *= BigInt::from(2);
        if n % 2 == 0 && n < len {
            u[n] = Rational::new(BigInt::one(), &fact * &pow2);
        }
    }
    // log(1 + u) = u - u^2/2 + u^3/3 - ...; u has no constant term, so
    // `max` terms suffice.
    let mut out = vec![Rational::zero(); len];
    let mut power = u.clone();
    for k in 1..=max.max(1) {
        let c = Rational::new(BigInt::from(if k % 2 == 1 { 1 } else { -1 }), BigInt::from(k as u64 * 2));
        for (o, p) in out.iter_mut().zip(power.iter()) {
            *o += &c * p;
        }
        power = mul(&power, &u, len);
    }
    out
}

/// `b_{2m}` for `m >= 1`.
pub fn modified_bernoulli(m: u32) -> Rational {
    let n = 2 * m as usize;
    log_sinh_series(n).swap_remove(n)
}

/// `b_2, b_4, ..., b_{2k}` in one pass.
pub fn modified_bernoulli_up_to(k: u32) -> Vec<Rational> {
    let series = log_sinh_series(2 * k as usize);
    (1..=k as usize).map(|m| series[2 * m].clone()).collect()
}
