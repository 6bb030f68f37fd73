//! Exact zeta and L-functions for finite quotients of the rank-two affine
//! apartments of types Ã₂ and C̃₂.
//!
//! A quotient is either a simplicial torus (Γ a lattice of coroot
//! translations) or a Klein bottle (Γ generated by a translation `t` and a
//! glide reflection `σ`). For each such quotient the crate computes, with exact
//! arithmetic,
//!
//! - the zeta functions of geodesic walks, semi-rational walks and geodesic
//!   galleries, by cycle decomposition of finite transfer systems,
//! - the L-polynomial recovered from closed-walk counts via the trace formula,
//! - brute-force census counts that serve as independent oracles,
//!
//! and checks the Ihara-type identities relating them (see [`verify`]).
//!
//! All zetas live in one formal variable `w` with `u = w²`, so half-integer
//! powers of `u` are odd powers of `w`.

pub mod algebra;
pub mod census;
pub mod corpus;
mod error;
pub mod quotient;
pub mod roots;
pub mod specfile;
pub mod verify;
pub mod zeta;

pub use algebra::{Poly, Rational, RationalFunctionW, Series};
pub use error::{Error, Result};
pub use quotient::{AffineMap, GroupSpec, QuotientGroup};
pub use roots::{HalfVector, LatticeVector, Rep, RootKind, RootSystem, WeylElement};

pub use verify::{verify, VerificationReport};
pub use zeta::{TransferSystem, ZetaBundle};
