//! Optimal homologous cycles over Z2, solved by dynamic programming over tree
//! decompositions of either the connectivity graph or one level of the Hasse
//! diagram.

pub mod bench;
pub mod complex;
pub mod dp;
pub mod error;
pub mod graphs;
pub mod instances;
pub mod io;
pub mod oracle;
pub mod treewidth;

pub use complex::{Chain, Simplex, SimplicialComplex};
pub use error::{Error, Result};
