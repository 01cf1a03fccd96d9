//! Linear codes over finite quotient rings `A = F_q[x]/<f(x)>`.
//!
//! An *A-code* of length `l` is an `A`-submodule of `A^l`. This crate computes
//! canonical generator matrices (CGMs), generator matrices of dual codes,
//! classifies self-dual and isodual codes of small length, and relates
//! `A`-duals to duals of the `F`-linear expansion of a code.
//!
//! Module map:
//! - [`field`]: GF(p) and GF(p^n) arithmetic.
//! - [`poly`]: polynomials over a field, gcds, squarefree decomposition,
//!   factor profiles, divisor enumeration and the text syntax.
//! - [`quotient`]: the ring `A` and its elements.
//! - [`amodule`]: codewords, generator matrices, bases of divisors, CGMs.
//! - [`dual`]: the recursive dual construction and a brute-force dual.
//! - [`selfdual`]: length-1/2 classification and self-duality tests.
//! - [`fexpand`]: companion-matrix expansion and `F`-duals.
//! - [`fmatrix`]: dense linear algebra over `F`.

pub mod amodule;
pub mod dual;
pub mod error;
pub mod fexpand;
pub mod field;
pub mod fmatrix;
pub mod poly;
pub mod quotient;
pub mod selfdual;

pub use amodule::{Code, CodeMatrix, CodeWord, DivisorBasisCheck, DivisorBasisInfo};
pub use dual::{dual_code, dual_oracle, gen_mat_dual, reverse_cgm, DualResult};
pub use error::{Error, ParseError, Result};
pub use field::{FieldCtx, FieldElem};
pub use fmatrix::{FCode, FMatrix};
pub use poly::{FactorClass, FactorProfile, Poly, SquarefreeDecomp};
pub use quotient::{QuotRing, RingElem};

/// Default cap on brute-force search spaces (number of candidates visited).
pub const DEFAULT_BUDGET: u128 = 1 << 22;
