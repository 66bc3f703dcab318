//! Stable textual forms for numbers in reports and JSON.

use num_bigint::BigUint;
use num_rational::Rational64;
use serde::Serializer;

/// Rounds to 12 significant digits so that printed reports are bit-stable.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(round12(*x))
    } else {
        s.collect_str(x)
    }
}

pub fn ser_f64_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|&x| Rounded(x)))
}

pub fn ser_big<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub fn ser_big_vec<S: Serializer>(xs: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

pub fn ser_ratio<S: Serializer>(x: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub fn ser_ratio_vec<S: Serializer>(xs: &[Rational64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

struct Rounded(f64);

impl serde::Serialize for Rounded {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_f64(&self.0, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(round12(0.536_479_304_144_700_1), 0.536479304145);
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
        assert!(round12(f64::NEG_INFINITY).is_infinite());
    }
}
