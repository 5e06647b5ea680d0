//! Exact arithmetic: prime fields, extension fields, the involutive algebra
//! `E_q`, and the splitting analysis that selects the unitary or linear case.

pub mod algebra;
pub mod cyclotomic;
pub mod gf;
pub mod poly;
pub mod prime;
pub mod splitting;

pub use algebra::{build_algebra, AlgElem, AlgebraDescriptor, InvolutiveAlgebra};
pub use cyclotomic::{classify_by_factorization, FactorizationSplitting};
pub use gf::{Fe, FieldDescriptor, GaloisField};
pub use prime::{is_prime, ord_mod, PrimeField};
pub use splitting::{splitting_data, Case, SplittingData};
