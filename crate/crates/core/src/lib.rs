//! Exact rational computer algebra for associative, dendriform, quadri and
//! octo algebras given by structure constants.

pub mod bimodule;
pub mod bundle;
pub mod catalog;
pub mod cluster;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod operators;
pub mod report;
pub mod yang_baxter;

pub use bimodule::Bimodule;
pub use cluster::{ClusterAlgebra, Level, OpSet, Side};
pub use bundle::Bundle;
pub use error::{Error, Result};
pub use forms::{BilinearForm, FormClassification};
pub use linalg::{Matrix, Perm3, Rational, Tensor3};
pub use operators::InterMap;
pub use report::{Report, Violation};
pub use yang_baxter::{Parity, Tensor2};
