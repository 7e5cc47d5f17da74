//! Exact computations around `C_{p^n}`-equivariant Mahowald invariants.
//!
//! The crate is layered:
//!
//! * [`exactint`]: big-integer matrices, Hermite and Smith forms, lattices and
//!   integer kernels;
//! * [`repring`]: the representation ring `RU(C_{p^n}) = ℤ[L]/(L^{p^n} - 1)`,
//!   Adams operations, cyclotomic characters and the d-sequence of faithful
//!   characters;
//! * [`burnside`]: the Burnside ring `A(C_{p^m})` with marks, transfers,
//!   restrictions, geometric fixed points and norms;
//! * [`ktheory`]: spoke-graded K-theory classes, the fixed lattices of the
//!   Adams operations (by brute force and in closed form) and their quotients;
//! * [`mahowald`]: the `f`-tables, the filtration `Γ_k`, the Mahowald
//!   invariant engine and the presentation checker;
//! * [`verify`]: reusable verification suites shared by the command line and
//!   the acceptance tests.

pub mod burnside;
pub mod exactint;
pub mod ktheory;
pub mod mahowald;
pub mod repring;
pub mod verify;

mod json;
