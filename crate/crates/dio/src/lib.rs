//! A compiler and verification toolkit for a small "Diophantine computer":
//! integer polynomial equations and computably-enumerable-set descriptions are
//! compiled into index programs `(A, B, C)` whose semantics are expressed
//! through well-formed sequences of naturals closed under exponentiation, and
//! the resulting formulas can be rendered, evaluated, and cross-checked against
//! brute-force oracles at desk scale with exact arithmetic throughout.

pub mod budget;
pub mod compiler;
pub mod index;
pub mod indicator;
pub mod poly;
pub mod render;
pub mod tower;
pub mod wf;

pub use compiler::{CeSetProgram, CompiledEquation};
pub use index::{Index, IndexClass};
pub use poly::{Monomial, Polynomial, VarIndex};
pub use tower::TowerValue;
pub use wf::WfAssignment;
