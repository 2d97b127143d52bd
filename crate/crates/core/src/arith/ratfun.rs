//! Rational functions in `u`, always kept in canonical form: coprime
//! numerator and denominator, denominator monic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRatFun")]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

#[derive(Deserialize)]
struct RawRatFun {
    num: Poly,
    den: Poly,
}

impl TryFrom<RawRatFun> for RatFun {
    type Error = Error;
    fn try_from(raw: RawRatFun) -> Result<Self> {
        RatFun::new(raw.num, raw.den)
    }
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFun::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        let lead = den.leading();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    /// `(u - a) / (u - b)`.
    pub fn linear_ratio(a: &Rational, b: &Rational) -> Self {
        RatFun::canonical(Poly::linear(a), Poly::linear(b))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &RatFun) -> Result<RatFun> {
        Ok(self * &rhs.inv()?)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleEvaluation(x.to_string()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `f(u + c)`.
    pub fn shift(&self, c: &Rational) -> RatFun {
        RatFun::canonical(self.num.shift(c), self.den.shift(c))
    }

    pub fn pow(&self, e: usize) -> RatFun {
        (0..e).fold(RatFun::one(), |acc, _| &acc * self)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RatFun::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        RatFun::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        &self + &rhs
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        &self - &rhs
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        &self * &rhs
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn product_cancels() {
        let a = RatFun::new(Poly::from_ints(&[1, 1]), Poly::u()).unwrap();
        let b = RatFun::new(Poly::u(), Poly::from_ints(&[1, 1])).unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn evaluation() {
        let a = RatFun::new(Poly::from_ints(&[1, 1]), Poly::u()).unwrap();
        assert_eq!(a.eval(&int(2)).unwrap(), rat(3, 2));
        assert!(matches!(a.eval(&int(0)), Err(Error::PoleEvaluation(_))));
    }

    #[test]
    fn canonicalization_reduces() {
        let f = RatFun::new(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(f, RatFun::from_poly(Poly::from_ints(&[1, 1])));
        let g = RatFun::new(Poly::from_ints(&[2]), Poly::from_ints(&[4, 2])).unwrap();
        assert_eq!(g.den(), &Poly::from_ints(&[2, 1]));
        assert_eq!(g.num(), &Poly::from_ints(&[1]));
    }

    #[test]
    fn division_errors() {
        assert_eq!(
            RatFun::new(Poly::one(), Poly::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(RatFun::one().div(&RatFun::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn json_shape() {
        let f = RatFun::linear_ratio(&int(-1), &rat(1, 2));
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"num":["1","1"],"den":["-1/2","1"]}"#);
        let back: RatFun = serde_json::from_str(r#"{"num":["2","2"],"den":["0","2"]}"#).unwrap();
        assert_eq!(back, RatFun::new(Poly::from_ints(&[1, 1]), Poly::u()).unwrap());
    }
}
