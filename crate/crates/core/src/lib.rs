//! Exact finite models of generalized flags in a countable-dimensional space,
//! the invertible operators that move them, and the bookkeeping around both:
//! block splittings at cuts, degrees, the flag action, duality, and bilinear forms.
//!
//! Everything is computed over the rationals with no rounding. A flag is stored
//! as a finite window plus a chain of subspaces of the window; an operator as a
//! window matrix plus a translation of the remaining basis vectors.

pub mod action;
pub mod document;
pub mod error;
pub mod isotropic;
pub mod linalg;
pub mod operator;
pub mod point;
pub mod random;
pub mod rational;
pub mod scenarios;
pub mod schema;
pub mod verify;

pub use action::{act, act_direct, duality_map, in_stabilizer, Reversal};
pub use error::{Error, Result};
pub use isotropic::{is_isotropic_flag, preserves_form, reflection_condition, FormKind, GramWindow};
pub use linalg::{DenseMatrix, Subspace};
pub use operator::{CutSplitting, DegreeReport, DualOperator, SparseVector, StructuredOperator};
pub use point::{ChainMember, FlagPoint};
pub use rational::Rational;
pub use scenarios::Scenario;
pub use schema::{
    dual_schema, is_symmetric, shifted_schema, truncate_type, validate_schema, BlockType, CutFamily, CutId, FlagSchema,
    IndexKind, IndexSchema, TypeVector, Window,
};
