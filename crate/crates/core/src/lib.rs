//! Rota–Baxter operators on the dual quaternions `H_d`: the polynomial
//! system their matrices satisfy, Gröbner bases for it, and a classifier.

#![allow(clippy::needless_range_loop, clippy::large_enum_variant)]

pub mod algebra;
pub mod classify;
pub mod cli;
pub mod groebner;
pub mod matrix;
pub mod operator;
pub mod order;
pub mod poly;
pub mod scalar;
pub mod selftest;
pub mod system;

pub use algebra::{DualQuaternion, StructureTable};
pub use groebner::{buchberger, normal_form, GroebnerBasis, Limits};
pub use operator::{is_rota_baxter, rb_defect, OperatorMatrix};
pub use order::{OrderKind, TermOrder};
pub use poly::{Monomial, Polynomial};
pub use scalar::Scalar;
pub use system::{generate_system, PolySystem, WeightMode};
