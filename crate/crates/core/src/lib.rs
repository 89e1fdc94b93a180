//! Exact-arithmetic classification of odd discriminants d by solvability of
//! the norm equations a² − d·b² = ±8 in the real quadratic order of
//! discriminant d, together with the full geometric certificate attached to
//! each solvable d: fundamental unit, class number, the square-±4 witness
//! h₁, the ample square-8 class H and its companions.
//!
//! A discriminant d ≡ 1 (mod 8) belongs to 𝒟₊ (resp. 𝒟₋) when
//! a² − d·b² = 8 (resp. −8) has an integral solution; these sets govern when
//! the double-plane K3 surface attached to a net of quadrics is isomorphic to
//! the intersection of the three quadrics at Picard rank 2. Everything here
//! is computed with arbitrary-precision integers and exact comparisons; no
//! floating point is used anywhere.
//!
//! Modules:
//! - [`arith`]: bigint square roots, Kronecker symbols, factorization,
//!   square-root residues modulo d.
//! - [`quadorder`]: the order Z + Z·(1+√d)/2, fundamental units via
//!   continued fractions.
//! - [`binforms`]: indefinite binary quadratic form reduction cycles and
//!   class numbers.
//! - [`pell`]: bounded solvers and a brute-force oracle for a² − d·b² = ±8,
//!   and the associated x² − d·y² = 16 machinery.
//! - [`lattice2`]: the rank-2 lattices N⁸_d and N²_d, membership
//!   congruences, the γ invariant, reflections and nef predicates.
//! - [`k3class`]: the classification pipeline, range scans and reports.

pub mod arith;
pub mod binforms;
pub mod k3class;
pub mod lattice2;
pub mod pell;
pub mod quadorder;

pub use num_bigint::BigInt;

/// The integer type used throughout the crate.
pub type Int = BigInt;

/// Precondition violations on public entry points.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("expected a positive integer, got {0}")]
    NotPositive(BigInt),
    #[error("{0} is a perfect square")]
    Square(BigInt),
    #[error("{0} is not congruent to 1 mod 4")]
    NotOneMod4(BigInt),
    #[error("{0} is not congruent to 1 mod 8")]
    NotOneMod8(BigInt),
    #[error("{0} must exceed 9")]
    TooSmall(BigInt),
}

pub(crate) fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
