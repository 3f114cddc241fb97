//! Exact rational coefficients and small number-theoretic helpers.
//!
//! Every series coefficient in this crate is a [`Rational`]:
//! an arbitrary-precision fraction that is always stored in lowest terms
//! with a positive denominator (guaranteed by `num`'s `Ratio` constructor).

use num::{BigInt, BigUint, One};

/// Arbitrary-precision exact fraction, the coefficient ring for all series.
pub type Rational = num::BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Shorthand for the fraction `n/d`. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient `C(n, k)` with the usual convention `0` for `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Euler's totient of `k >= 1` by trial division.
pub fn euler_phi(k: u32) -> u32 {
    let mut n = k;
    let mut phi = k;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}
