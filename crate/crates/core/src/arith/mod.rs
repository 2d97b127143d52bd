//! Exact scalar tower: rationals, polynomials in `u`, rational functions in `u`.

pub mod poly;
pub mod ratfun;
pub mod rational;

pub use poly::Poly;
pub use ratfun::RatFun;
pub use rational::{int, parse_rational, pochhammer, rat, Rational};
