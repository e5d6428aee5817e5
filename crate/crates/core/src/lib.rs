//! Construction, verification and classification of complex Hadamard
//! matrices of order 9 and the low-order matrices they are built from.
//!
//! * [`matrix`]: dense complex matrices and structured constructors
//! * [`orbits`]: the BCCB form, its `zeta` coordinate, suborbits and named matrices
//! * [`analysis`]: defect, Butson class, equivalence and reducibility
//! * [`scan`]: `zeta`-plane maps, the sixth-root census, Backelin loci
//! * [`mubs`]: the complete set of mutually unbiased bases in dimension 9
//! * [`cli`]: the `hforge` command line

pub mod analysis;
pub mod cli;
pub mod error;
pub mod io;
pub mod matrix;
pub mod mubs;
pub mod orbits;
pub mod scan;

pub use error::{Error, Result};
pub use matrix::{Matrix, UnimodularScalar};
