//! Exact Levine-Tristram signature calculus for knots given by Seifert
//! matrices, step-function arithmetic over exactly represented angles,
//! satellite/infection tower bookkeeping, and certificate generation for
//! concordance-order obstructions.

pub mod algebraic;
pub mod angle;
pub mod cyclotomic;
pub mod enclose;
pub mod error;
pub mod infection;
pub mod knot;
pub mod laurent;
pub mod obstruct;
pub mod planner;
pub mod poly;
pub mod seifert;
pub mod stepfn;

pub use error::{Error, Result};
