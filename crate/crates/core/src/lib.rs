//! Exact computations on square-tiled surfaces: Veech groups, cylinder
//! decompositions, the Kontsevich–Zorich cocycle on zero-holonomy homology,
//! Galois certificates for simplicity of its spectrum, and Monte-Carlo
//! Lyapunov exponents.

pub mod criterion;
pub mod cylinders;
pub mod enumerate;
pub mod error;
pub mod galois;
pub mod homology;
pub mod linalg;
pub mod lyapunov;
pub mod origami;
pub mod perm;
pub mod poly;
pub mod report;
pub mod orbit;
pub mod sl2;

pub use error::{Error, ParseError, Result};
pub use origami::{BlockSystem, Origami, Stratum};
pub use perm::Permutation;
pub use sl2::{Letter, Sl2Matrix, Word};
pub use orbit::{CuspData, OrbitGraph, VeechData};
