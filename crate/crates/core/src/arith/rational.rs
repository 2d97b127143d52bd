//! Arbitrary-precision rationals.
//!
//! `BigRational` already keeps the fraction reduced with a positive
//! denominator, so it is used directly. Its `Display` prints `p/q`, or `p`
//! when the denominator is one, which is also the wire format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `p/q`; panics when `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    if let Some((p, q)) = trimmed.split_once('/') {
        let p: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("not a rational: {text:?}")))?;
        let q: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("not a rational: {text:?}")))?;
        if q.is_zero() {
            return Err(Error::InvalidSpec(format!("zero denominator in {text:?}")));
        }
        Ok(Rational::new(p, q))
    } else {
        let p: BigInt = trimmed
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("not a rational: {text:?}")))?;
        Ok(Rational::from_integer(p))
    }
}

/// Integer value of `x` if it has denominator one.
pub fn as_integer(x: &Rational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

/// True when `x` is one of -1, -2, -3, ...
pub fn is_negative_integer(x: &Rational) -> bool {
    x.is_integer() && x < &Rational::zero()
}

/// True when `x` is one of 1, 2, 3, ...
pub fn is_positive_integer(x: &Rational) -> bool {
    x.is_integer() && x > &Rational::zero()
}

/// Rising factorial x(x+1)...(x+r-1).
pub fn pochhammer(x: &Rational, r: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..r {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

pub fn factorial(r: usize) -> Rational {
    pochhammer(&Rational::one(), r)
}

/// Representative of the class of `x` in Q/Z, in [0, 1).
pub fn frac_part(x: &Rational) -> Rational {
    x - x.floor()
}

pub mod serde_rational {
    //! `#[serde(with = ...)]` helpers storing rationals as strings.
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::super::{parse_rational, Rational};
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(
            values: &[Rational],
            serializer: S,
        ) -> Result<S::Ok, S::Error> {
            let strings: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            strings.serialize(serializer)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            deserializer: D,
        ) -> Result<Vec<Rational>, D::Error> {
            let strings = Vec::<String>::deserialize(deserializer)?;
            strings
                .iter()
                .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}
