//! Small numeric helpers for exact counts.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Natural logarithm of a big integer; `-inf` for zero.
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit mantissa");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `a / b` as a float, accurate for operands far beyond the f64 range.
pub fn big_ratio(a: &BigUint, b: &BigUint) -> f64 {
    if b.is_zero() {
        return f64::NAN;
    }
    if a.is_zero() {
        return 0.0;
    }
    (ln_big(a) - ln_big(b)).exp()
}

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::one(); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row
}

/// `sum_{j=0}^{upto} C(n, j)`, with `upto` clamped to `n`.
pub fn binomial_prefix_sum(n: usize, upto: usize) -> BigUint {
    binomial_row(n)
        .into_iter()
        .take(upto.min(n) + 1)
        .fold(BigUint::zero(), |acc, c| acc + c)
}

pub fn pow2(k: usize) -> BigUint {
    BigUint::one() << k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_of_huge_values() {
        let x = pow2(5000);
        assert!((ln_big(&x) - 5000.0 * std::f64::consts::LN_2).abs() < 1e-9);
        assert_eq!(ln_big(&BigUint::zero()), f64::NEG_INFINITY);
        assert!((ln_big(&BigUint::from(5u32)) - 5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn binomial_sums() {
        assert_eq!(binomial_prefix_sum(4, 2), BigUint::from(11u32));
        assert_eq!(binomial_prefix_sum(9, 3), BigUint::from(130u32));
        assert_eq!(binomial_prefix_sum(3, 10), BigUint::from(8u32));
    }

    #[test]
    fn ratio_of_huge_values() {
        let r = big_ratio(&pow2(3000), &(pow2(3001)));
        assert!((r - 0.5).abs() < 1e-12);
    }
}
