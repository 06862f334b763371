//! Multivariate Alexander modules and Alexander quandles of classical links.
//!
//! The crate computes, from combinatorial link diagram data:
//!
//! * exact presentations of the multivariate Alexander module over
//!   `Z[t1^{±1},…,tμ^{±1}]`, with Tietze-style simplification, cyclic
//!   decomposition, elementary ideals and the reduced (single-variable)
//!   invariants;
//! * the quandle operations `▷`, `▷⁻¹` carried by the module, quandle
//!   words, orbit partitions, and the quandle-based module presentation;
//! * finite prime-field specializations used for coloring counts,
//!   element comparison, and Reidemeister-invariance testing.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI
//! live in the companion `alexq` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod diagram;
pub mod laurent;
pub mod moves;
pub mod presentation;
pub mod quandle;
pub mod specialize;

pub use diagram::LinkDiagram;
pub use laurent::{LaurentPoly, MonomialUnit};
pub use presentation::{CyclicDecomposition, DiagonalForm, ModuleElement, ModulePresentation};
pub use quandle::{FiniteQuandle, QuandleWord};
pub use specialize::SpecializedModule;
