//! Arcs in the finite projective plane PG(2,q).
//!
//! The crate layers field arithmetic ([`gf`]), plane incidence ([`plane`]),
//! ternary quadratic forms ([`conics`]), arc predicates and certificates
//! ([`arcs`]), exhaustive search ([`search`]) and closed-form size bounds
//! ([`bounds`]). The `genarc` binary drives them through [`cli`].

pub mod arcs;
pub mod bounds;
pub mod cli;
pub mod conics;
pub mod gf;
pub mod linalg;
pub mod plane;
pub mod search;
