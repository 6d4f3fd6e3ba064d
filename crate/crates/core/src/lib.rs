//! Exact computations with finite-dimensional nonassociative algebras over the
//! rationals: Malcev identities, classical Yang–Baxter residuals, coalgebra
//! duals, Drinfeld doubles and the structure of the seven-dimensional simple
//! Malcev algebra.

pub mod algebra;
pub mod bialgebra;
pub mod error;
pub mod io;
pub mod linalg;
pub mod malcev7;
pub mod random;
pub mod rational;
pub mod report;
pub mod tensor;
pub mod yang_baxter;

pub use algebra::{Algebra, Element};
pub use bialgebra::{Comultiplication, DrinfeldDouble};
pub use error::{Error, Result};
pub use linalg::{Matrix, Subspace};
pub use rational::{q, Rational};
pub use tensor::{SlotFactor, Tensor2, Tensor3};
