//! Exact counting of subspaces with a prescribed profile under a linear
//! endomorphism of `F_q^n`, through q-Whittaker and Hall-Littlewood symmetric
//! functions, with a brute-force finite-field oracle for every count.

pub mod cli;
pub mod error;
pub mod fforacle;
pub mod hlwhittaker;
pub mod linalg;
pub(crate) mod memo;
pub mod partitions;
pub mod profiles;
pub mod ratfunc;
pub mod symfunc;
pub mod tableaux;

pub use error::{Error, Result};
pub use partitions::{Partition, SkewPair, WeakComposition};
pub use ratfunc::{BigQ, PolyT, RatFunc};
pub use symfunc::{Basis, SymFunc};
pub use profiles::{ProfileTuple, SimilarityType};
pub use fforacle::{FpMatrix, Subspace};
