//! Conversions between unbounded rationals/integers and `f64`.
//!
//! `Ratio::to_f64` divides two independently converted floats, which turns
//! into `inf/inf = NaN` once numerator and denominator outgrow `f64`. The
//! expectations here routinely carry thousands of bits, so conversion keeps
//! the top 53 bits of each side exactly and tracks the binary exponent.

use num_bigint::{BigUint, Sign};
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Top-53-bit mantissa and the shift it absorbed: `x = mant * 2^exp`.
fn top_bits(x: &BigUint) -> (f64, i64) {
    let bits = x.bits();
    if bits <= 53 {
        (x.to_f64().expect("fits in 53 bits"), 0)
    } else {
        let shift = bits - 53;
        ((x >> shift).to_f64().expect("53 bits"), shift as i64)
    }
}

/// Accurate `f64` value of an unbounded rational (relative error ~2^-52).
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    let sign = match r.numer().sign() {
        Sign::Minus => -1.0,
        Sign::NoSign => return 0.0,
        Sign::Plus => 1.0,
    };
    let (mn, en) = top_bits(r.numer().magnitude());
    let (md, ed) = top_bits(r.denom().magnitude());
    sign * (mn / md) * 2f64.powi((en - ed).clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

/// Natural log of a positive unbounded integer.
pub fn big_ln(x: &BigUint) -> f64 {
    let (m, e) = top_bits(x);
    m.ln() + e as f64 * std::f64::consts::LN_2
}

/// Serde adapter storing a `BigRational` as its exact `num/den` string.
pub mod serde_ratio {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    #[test]
    fn handles_huge_ratios() {
        let big: BigInt = BigInt::one() << 5000;
        let r = BigRational::new(big.clone(), &big + 1);
        let v = ratio_to_f64(&r);
        assert!((v - 1.0).abs() < 1e-12, "got {v}");

        let half = BigRational::new(big.clone(), &big * 2);
        assert_eq!(ratio_to_f64(&half), 0.5);

        let neg = BigRational::new(-big.clone(), &big * 4);
        assert_eq!(ratio_to_f64(&neg), -0.25);
    }

    #[test]
    fn big_ln_matches_f64_ln() {
        let x = BigUint::from(12345u32);
        assert!((big_ln(&x) - 12345f64.ln()).abs() < 1e-12);
        let huge = BigUint::one() << 1000;
        assert!((big_ln(&huge) - 1000.0 * std::f64::consts::LN_2).abs() < 1e-9);
    }
}
