//! Exact comparison of products of unsigned integers.

use std::cmp::Ordering;

use num_bigint::BigUint;

fn checked_product(factors: &[u128]) -> Option<u128> {
    factors.iter().try_fold(1u128, |acc, &f| acc.checked_mul(f))
}

fn big_product(factors: &[u128]) -> BigUint {
    factors.iter().fold(BigUint::from(1u32), |acc, &f| acc * BigUint::from(f))
}

/// Compares `Π lhs` with `Π rhs` without overflow.
pub fn cmp_products(lhs: &[u128], rhs: &[u128]) -> Ordering {
    match (checked_product(lhs), checked_product(rhs)) {
        (Some(l), Some(r)) => l.cmp(&r),
        _ => big_product(lhs).cmp(&big_product(rhs)),
    }
}

pub fn product_le(lhs: &[u128], rhs: &[u128]) -> bool {
    cmp_products(lhs, rhs) != Ordering::Greater
}
