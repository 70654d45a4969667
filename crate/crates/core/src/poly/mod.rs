//! Exact polynomial algebra over the rationals.

pub mod multipoly;
pub mod param;
pub mod parse;
pub mod quartic;
pub mod rational;
pub mod sturm;
pub mod unipoly;

pub use multipoly::MultiPoly;
pub use param::{ParamPoly, PseudoDivision};
pub use parse::parse_poly;
pub use quartic::{quartic_invariants, QuarticInvariants};
pub use rational::Rational;
pub use sturm::{distinct_real_roots, real_roots, RealRoot, SturmChain};
pub use unipoly::UniPoly;
