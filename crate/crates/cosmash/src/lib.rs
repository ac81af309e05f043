//! Commutator calculus on finite pointed groups and loops.
//!
//! The crate computes Higgins, Huq and Smith commutators, the ternary
//! commutator obstruction, and uses them to decide internal-category,
//! crossed-module, Beck-module and double-central-extension questions on
//! concrete finite algebras, including the order-eight hyperbolic
//! quaternion loop on which congruences fail to commute even though their
//! normalisations do:
//!
//! ```
//! use cosmash::algebra::subobject_generate;
//! use cosmash::catalog::builtin;
//! use cosmash::commutators::{higgins_binary, ternary_obstruction};
//!
//! let x = builtin("hyperbolic_quaternion_loop")?;
//! let j = x.element_by_name("j")?;
//! let minus_one = x.element_by_name("-1")?;
//!
//! // A = <j, -1> is abelian and normal, and [A,A] vanishes...
//! let a = subobject_generate(&x, &[j, minus_one]);
//! assert!(a.is_abelian() && a.is_normal());
//! assert!(higgins_binary(&x, &a, &a).is_trivial());
//!
//! // ...yet the ternary obstruction [A,A,X] does not.
//! let obstruction = ternary_obstruction(&x, &a, &a)?;
//! assert!(obstruction.contains(minus_one));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Start with the runnable examples (`cargo run --example counterexample_loop`)
//! or the [`catalog`] of built-in algebras.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod commutators;
pub mod oracle;
pub mod report;
pub mod structures;
pub mod words;

pub use algebra::{Alg, Congruence, Elem, FiniteAlgebra, Homomorphism, Kind, Subobject};
