use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// gcd of all entries, non-negative; 0 for an all-zero (or empty) slice.
pub(crate) fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// `d | x` with the convention `0 | x` iff `x = 0`.
pub(crate) fn divides(d: &BigInt, x: &BigInt) -> bool {
    if d.is_zero() {
        x.is_zero()
    } else {
        (x % d).is_zero()
    }
}

pub(crate) fn sign(x: &BigInt) -> i64 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
