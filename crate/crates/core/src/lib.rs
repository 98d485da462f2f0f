//! Exact-arithmetic toolkit for isospectrality at desk scale.
//!
//! The crate mechanizes the classical dictionary between spectra and
//! arithmetic in four small theaters where everything is finite and exactly
//! checkable:
//!
//! * [`groups`] — finite permutation groups, conjugacy classes, coset
//!   actions, and verification/search of Gassmann triples (a group with two
//!   non-conjugate subgroups meeting every conjugacy class equally).
//! * [`schreier`] — Schreier coset graphs built from a Gassmann triple,
//!   exact characteristic polynomials as isospectrality certificates, and
//!   the explicit transplantation intertwiner between the two quotients.
//! * [`lattices`] / [`qform`] — flat-torus spectra and theta series by exact
//!   short-vector enumeration, and a commensurability oracle deciding
//!   rational similarity of quadratic forms through Hilbert symbols and
//!   Hasse invariants.
//! * [`numberfields`] — prime-splitting censuses of number fields given by
//!   defining polynomials, detecting arithmetic equivalence (equal Dedekind
//!   zeta functions) at all unramified primes up to a bound.
//!
//! All arithmetic is exact: integers are [`Int`] (arbitrary precision) and
//! scalars are [`Rat`] (arbitrary-precision rationals). The linear-algebra
//! and polynomial kernels in [`matrix`] and [`poly`] are generic over the
//! scalar type via `num-traits` bounds; the concrete instantiations used
//! throughout are the aliases below. Nothing in the crate rounds.

pub mod arith;
pub mod error;
mod fincke;
pub mod fixtures;
pub mod gassmann;
pub mod groups;
pub mod io;
pub mod lattices;
pub mod matrix;
pub mod numberfields;
pub mod perm;
pub mod poly;
pub mod qform;
pub mod schreier;

/// Arbitrary-precision integer used everywhere a count or coefficient can grow.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational scalar; the field all exact linear algebra runs over.
pub type Rat = num_rational::BigRational;
/// Integer matrix (adjacency matrices, Gram numerators).
pub type IntMatrix = matrix::Matrix<Int>;
/// Rational matrix (intertwiners, Gram matrices, congruence transforms).
pub type RatMatrix = matrix::Matrix<Rat>;
/// Integer polynomial, constant coefficient first (characteristic and defining polynomials).
pub type IntPoly = poly::Poly<Int>;

pub use error::Error;
/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
