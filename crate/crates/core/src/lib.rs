//! Exact operator algebra on neutral and charged free-fermion Fock spaces.
//!
//! The crate realises a neutral fermion, its bosonised Heisenberg and
//! Virasoro fields, the matching charged fermion system, and the explicit
//! isomorphism between the two Fock spaces. Every coefficient is an exact
//! rational number and every identity is checked by exact equality.

pub mod charged;
pub mod checks;
pub mod error;
pub mod expr;
pub mod fock;
pub mod grading;
pub mod harness;
pub mod heisenberg;
pub mod linalg;
pub mod modes;
pub mod operator;
pub mod qchar;
pub mod scalar;
pub mod state;
pub mod virasoro;
pub mod winf;

pub use num_rational::BigRational;

/// The default coefficient field.
pub type Rational = BigRational;
/// A neutral Fock state with rational coefficients.
pub type State = fock::FockState<Rational>;
