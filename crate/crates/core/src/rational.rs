//! Exact rational helpers and the `{"num": .., "den": ..}` wire form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Fractional part `{x}` in `[0, 1)`, using the mathematical floor.
pub fn frac(x: &Q) -> Q {
    x - x.floor()
}

/// Renders `p/q`, or `p` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::parse("rational", format!("cannot parse `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Converts to `i64` when the value is an integer in range.
pub fn to_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.numer()).ok()
}

pub fn pow_i(base: i64, exp: u32) -> Q {
    q(base).pow(exp as i32)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Serialized rational: stable keys, never a float.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalJson(pub Q);

#[derive(Serialize, Deserialize)]
struct Wire {
    num: serde_json::Value,
    den: serde_json::Value,
}

fn int_value(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => serde_json::Value::from(v),
        // out-of-range integers travel as decimal strings
        Err(_) => serde_json::Value::from(x.to_string()),
    }
}

fn value_int(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl Serialize for RationalJson {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            num: int_value(self.0.numer()),
            den: int_value(self.0.denom()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(d)?;
        let num = value_int(&w.num).ok_or_else(|| D::Error::custom("bad `num`"))?;
        let den = value_int(&w.den).ok_or_else(|| D::Error::custom("bad `den`"))?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(RationalJson(Q::new(num, den)))
    }
}

pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalJson(x.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        RationalJson::deserialize(d).map(|r| r.0)
    }
}

pub mod serde_q_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<RationalJson> = xs.iter().cloned().map(RationalJson).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        Vec::<RationalJson>::deserialize(d).map(|v| v.into_iter().map(|r| r.0).collect())
    }
}

pub(crate) fn sign_char(x: &Q) -> char {
    if x.is_negative() {
        '-'
    } else {
        '+'
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractional_part_of_negative() {
        assert_eq!(frac(&qf(-1, 5)), qf(4, 5));
        assert_eq!(frac(&qf(1, 1)), q(0));
        assert_eq!(frac(&qf(7, 5)), qf(2, 5));
    }

    #[test]
    fn json_form() {
        let s = serde_json::to_string(&RationalJson(qf(-5, 24))).unwrap();
        assert_eq!(s, r#"{"num":-5,"den":24}"#);
        let back: RationalJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.0, qf(-5, 24));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_q("1/24").unwrap(), qf(1, 24));
        assert_eq!(parse_q("-3").unwrap(), q(-3));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }
}
