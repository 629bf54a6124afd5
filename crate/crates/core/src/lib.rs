//! Finite commutative association schemes, their Bose–Mesner algebras and
//! primitive idempotents, surjective morphisms and the induced maps on
//! idempotents, Delsarte linear-programming bounds, and verification of
//! `(t,m,s)`-nets and `(t,s)`-sequence prefixes as designs in ordered
//! Hamming schemes.
//!
//! The crate is `no_std` and only needs `alloc`. Exact arithmetic uses
//! big rationals extended by roots of unity; a seeded floating path covers
//! schemes without a known character structure.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod arith;
pub mod construct;
pub mod delsarte;
pub mod error;
pub mod linalg;
pub mod morphism;
pub mod nets;
pub mod scheme;
pub mod tower;

pub use error::{AxiomViolation, Error, IntersectionWitness, Result};
pub use scheme::{verify_scheme, AbelianGroup, AlgebraElement, EigData, Scheme, SchemeId, SpectralMethod, Structure};
