pub mod corpus;
pub mod deformation;
pub mod divisor_calc;
pub mod error;
pub mod exec;
pub mod factor;
pub mod groebner;
pub mod zerodim;
pub mod poly;

pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial, RationalFunction, Ring};
