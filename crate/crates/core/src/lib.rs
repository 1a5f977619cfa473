//! Exact and high-precision machinery for planar-algebra principal graph
//! obstructions: bigraph handling, spectral data, chirality equations,
//! obstruction checks and weed certificates.

pub mod bigraph;
pub mod catalog;
pub mod chirality;
pub mod obstructions;
pub mod qlaurent;
pub mod real;
pub mod spectra;
pub mod weedcert;
