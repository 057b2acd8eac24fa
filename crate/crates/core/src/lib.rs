//! Verification toolkit for the energy of bipartite bicyclic graphs.
//!
//! The crate is organised around five pieces:
//!
//! - [`graph`]: graph families (paths, cycles, tadpoles, the two-hexagon
//!   graph `P66(n)` and the bridged cycle pair `R(a,b)`), structural
//!   predicates, canonical forms and exhaustive enumeration of connected
//!   bipartite bicyclic graphs.
//! - [`poly`]: exact integer polynomials and characteristic polynomials,
//!   computed directly and through the classical recursions.
//! - [`closedform`]: high-precision evaluation of the closed forms of the
//!   family characteristic polynomials on the imaginary axis, and of the
//!   quantities `K(n,t,x)` and `f(t,x)` used to compare `P66(n)` with `R(a,b)`.
//! - [`energy`]: graph energy by certified root isolation, by the Coulson
//!   integral and by the pairwise Coulson difference integral.
//! - [`harness`]: the drivers behind the command line tool (scans, sign
//!   grids, extremal enumeration, identity verification).

pub mod closedform;
pub mod energy;
mod error;
pub mod graph;
pub mod harness;
pub mod hireal;
pub mod poly;

pub use closedform::{ClosedFormContext, FCoefficients};
pub use energy::{EnergyMethod, EnergyResult};
pub use error::{Error, Result};
pub use graph::{build, CanonicalForm, FamilySpec, Graph};
pub use harness::{ComparisonRecord, SignGridReport};
pub use hireal::{HiReal, Precision};
pub use poly::IntPoly;
