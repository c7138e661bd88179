//! Exact invariants of tensor codes over finite fields.

pub mod anticode;
pub mod budget;
pub mod code;
pub mod error;
pub mod gfq;
pub mod invariants;
pub mod json;
pub mod linalg;
pub mod moments;
pub mod qcomb;
pub mod roth;
pub mod subspace;
pub mod tensor;

pub use anticode::{Anticode, Family};
pub use budget::Budget;
pub use code::{CodeParameters, TensorCode};
pub use error::{Error, Result};
pub use gfq::{Field, FieldElement};
pub use subspace::Subspace;
pub use tensor::{Shape, SimpleDecomposition, Tensor};
