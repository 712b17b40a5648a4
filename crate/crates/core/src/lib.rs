pub mod error;
pub mod gf2;
pub mod graphs;
pub mod matroid;
pub mod polyring;
pub mod tutte;
pub mod interlace;
pub mod checks;

pub use error::{Error, Result};
pub use gf2::BitMatrix;
pub use graphs::LoopedGraph;
pub use matroid::{BinaryMatroid, ElementKind, GroundLabel};
pub use polyring::{MultiPoly, ParameterAssignment};
pub use interlace::{InterlaceResult, Method};
