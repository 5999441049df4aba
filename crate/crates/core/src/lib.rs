//! Exact computation with the double-quiver algebras Π^C and u_q^C and the
//! restricted quantum group u_q(C) at a root of unity: normal forms, Hopf
//! structure maps, and verification of their identities.

pub mod engine;
pub mod error;
pub mod hopf;
pub mod iso;
pub mod quiver;
pub mod report;
pub mod scalars;
pub mod suite;
pub mod syntax;

pub use error::{Error, Result};
