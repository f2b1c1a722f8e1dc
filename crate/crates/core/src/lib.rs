//! Exact computations with cocommutative Hopf algebras, pseudoalgebras over them and
//! Rota-Baxter-type operators (averaging, Nijenhuis, Reynolds, Rota-Baxter of weight λ).

pub mod annihilation;
pub mod catalog;
pub mod conformal;
pub mod error;
pub mod hopf;
pub mod linalg;
pub mod operators;
pub mod pseudo_tensor;
pub mod pseudoalgebra;
pub mod rank1;
pub mod rational;
pub mod report;
pub mod tensor;

pub use error::{Error, Result};
pub use hopf::{GroupSpec, HElem, HopfAlgebra, HopfKind, LieAlgebraSpec, Mono};
pub use rational::Q;
pub use report::Report;
pub use tensor::TensorElem;
