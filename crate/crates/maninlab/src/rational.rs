//! Exact rationals rendered as strings ("7/2", "3", "0.15") plus serde glue.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Parse "a/b", a decimal like "10.5", or a plain integer, exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".into());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let d: BigInt = den.trim().parse().map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_mag = whole.trim_start_matches(['-', '+']);
        let w: BigInt = if whole_mag.is_empty() {
            BigInt::zero()
        } else {
            whole_mag.parse().map_err(|e| format!("bad number {s:?}: {e}"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal {s:?}"));
        }
        let f: BigInt = frac.parse().map_err(|e| format!("bad decimal {s:?}: {e}"))?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let mag = BigRational::new(w * &den + f, den);
        return Ok(if negative { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|e| format!("bad integer {s:?}: {e}"))?;
    Ok(BigRational::from_integer(n))
}

/// Exact string form "n/d" (or "n" for integers).
pub fn to_string(r: &BigRational) -> String {
    r.to_string()
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("rational fits in f64 range")
}

pub mod serde_ratio {
    use super::*;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

pub mod serde_ratio_vec {
    use super::*;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(super::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings.iter().map(|s| parse_rational(s).map_err(D::Error::custom)).collect()
    }
}
