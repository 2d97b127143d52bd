//! Exact computations with Yangian modules built on Grassmann algebras:
//! tensor products of evaluation modules, their intertwining operators,
//! Drinfeld polynomial data, and the dual isomorphism between polynomial
//! and signed realizations.

pub mod arith;
pub mod battery;
pub mod drinfeld;
pub mod dualiso;
pub mod error;
pub mod glm;
pub mod grassmann;
pub mod intertwiner;
pub mod linalg;
pub mod perm;
pub mod yangian;

pub use arith::{Poly, RatFun, Rational};
pub use error::{Error, Result};
