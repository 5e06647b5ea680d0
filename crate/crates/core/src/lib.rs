//! Specialized reduced Gassner representations of pure braid groups over
//! finite involutive algebras, and exact computation of their images.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`]: prime and extension fields, the algebra `E_q`, splitting data.
//! * [`linalg`]: dense matrices over a field or over `E_q`.
//! * [`braid`]: braid words and the specific words used by the proofs.
//! * [`gassner`]: the colored representation, invariant form, spinning,
//!   transvections.
//! * [`unitary`]: classical group orders, expected images, extension-matrix
//!   identities, the degenerate-subsequence search, unipotent radicals.
//! * [`group`]: closure enumeration and Schreier–Sims for matrix groups.
//! * [`verify`]: configuration, checks and reports used by the CLI.

pub mod arith;
pub mod braid;
pub mod error;
pub mod gassner;
pub mod group;
pub mod linalg;
pub(crate) mod serde_big;
pub mod unitary;
pub mod verify;

pub use error::{Error, Result};
