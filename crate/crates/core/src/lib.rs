//! Exact Fourier expansions of degree-two Siegel modular forms on the
//! non-split arithmetic group Γ(1,6), the six generators of their graded
//! ring, and machinery to check relations and dimensions against closed
//! formulas.

pub mod cli;
pub mod diffop;
pub mod dims;
pub mod eisenstein;
pub mod error;
pub mod exactnum;
pub mod fourier;
pub mod lattice;
pub mod ring;

pub use error::{Error, Result};
pub use exactnum::Rational;
pub use fourier::FourierSeries;
pub use lattice::{EtaIndex, QuadInvariants};
