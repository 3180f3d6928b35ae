//! Exact arithmetic: rationals, polynomial rings and matrices over them.

pub mod cyclotomic;
pub mod laurent;
pub mod matrix;
pub mod rational;
pub mod ratfunc;
pub mod ratpoly;
pub mod ring;
pub mod smith;
pub mod solve;

pub use cyclotomic::{cyclotomic, cyclotomic_factor, cyclotomic_factor_ratio, CyclotomicFactorization, RatioFactorization};
pub use laurent::LaurentPoly;
pub use matrix::{Matrix, PolyMatrix};
pub use rational::Rational;
pub use ratfunc::RatFunc;
pub use ratpoly::RatPoly;
pub use ring::{ExactDiv, Ring};
pub use smith::{graded_smith_form, SmithForm};
pub use solve::{fraction_solve, graded_solve, laurent_solve};
