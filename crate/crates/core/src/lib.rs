//! Exact symbolic toolkit for Nijenhuis operators in two and more variables.

pub mod classify;
pub mod error;
pub mod jet;
pub mod linalg;
pub mod linearize;
pub mod lsa;
pub mod nij;
pub mod poly;
pub mod quad;

pub use classify::{classify, is_isomorphic, ClassificationResult, Label, NormalForm};
pub use error::{Error, Result};
pub use jet::{Jet, JetMap};
pub use linalg::Matrix;
pub use lsa::{Invariants, LieStructure, Lsa, Side};
pub use nij::{OperatorField, TorsionTensor};
pub use poly::{Monomial, Poly, Vars};
pub use quad::{Quad, Rat};
