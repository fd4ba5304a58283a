//! String algebras, their string and band modules, Hom spaces, and maximal
//! green sequences searched as complete forward hom-orthogonal brick sequences.

pub mod algebra;
pub mod band;
pub mod cli;
pub mod error;
pub mod mgs;
pub mod module;
pub mod occurrence;
pub mod oracle;
pub mod walk;

pub use algebra::{Algebra, ArrowId, AxiomReport, VertexId};
pub use error::{Error, Result};
pub use walk::{Letter, Walk};
