//! Exact arithmetic: arbitrary-precision integers and rationals, sparse
//! multivariate polynomials with a canonical term order, and integer
//! matrices with fraction-free determinants and Smith normal forms.
//!
//! Nothing in this module (or the crate) ever touches floating point;
//! every value is an exact integer, rational, or integer-coefficient
//! polynomial.

mod matrix;
mod parse;
mod poly;

pub use matrix::{IntMatrix, SmithNormalForm};
pub use poly::{Monomial, MultiPoly};

use num_integer::Integer;
use num_traits::{One, Zero};

/// Exact arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Exact arbitrary-precision rational, always stored reduced with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor for [`Int`] from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Exact quotient `a / b`, or an error if `b` does not divide `a`.
pub fn div_exact(a: &Int, b: &Int, context: &str) -> crate::Result<Int> {
    if b.is_zero() {
        return Err(crate::Error::NonExactDivision {
            context: format!("{context}: division by zero"),
        });
    }
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(crate::Error::NonExactDivision {
            context: context.to_string(),
        })
    }
}

/// Least non-negative residue of `a` modulo `m` (`m > 0`).
pub fn mod_floor(a: &Int, m: &Int) -> Int {
    a.mod_floor(m)
}

/// Deterministic primality test.
///
/// Uses Miller-Rabin with the witness set {2, 3, 5, 7, 11, 13, 17, 19,
/// 23, 29, 31, 37}, which is exact for all candidates below 3.3 * 10^24;
/// larger inputs (far beyond anything this engine reduces by) fall back
/// to the same witnesses as a strong probable-prime test.
pub fn is_prime(n: &Int) -> bool {
    let two = int(2);
    if n < &two {
        return false;
    }
    const WITNESSES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for w in WITNESSES {
        if n == &int(w) {
            return true;
        }
    }
    if n.is_even() {
        return false;
    }
    // Write n - 1 = d * 2^s with d odd.
    let n_minus_1 = n - Int::one();
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d /= &two;
        s += 1;
    }
    'witness: for w in WITNESSES {
        let a = int(w);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
