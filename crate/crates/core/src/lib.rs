//! Closed braid diagrams encoded as linking matrices of their laundry
//! surfaces.
//!
//! A closed braid diagram on `n` strands builds a disk-band surface: one
//! untwisted circle band per Seifert circle and one half-twisted band per
//! crossing. The double-pushoff linking numbers of the surface's cycle basis,
//! listed in laundry order, form the [`LinkingMatrix`]. This crate provides
//!
//! * braid words, their planar-isotopy normal form and the braid moves
//!   ([`braid`]);
//! * the bijection between diagrams and linking matrices ([`linking`]);
//! * the derived orientable-surface matrix, Gordon-Litherland form and
//!   Seifert matrix ([`forms`]);
//! * matrix moves mirroring the braid moves, with unimodular witnesses
//!   ([`moves`]);
//! * exact link invariants and an independent Burau oracle ([`invariants`]);
//! * circle-with-chords combinatorics and equivalence certificates
//!   ([`laundry_model`]).
//!
//! ```
//! use laundry::{BraidWord, ClosedBraidDiagram, linking};
//!
//! let word: BraidWord = "2: 1 1 1".parse().unwrap();
//! let diagram = ClosedBraidDiagram::new(word);
//! let m = linking::encode(&diagram);
//! assert_eq!(m.size(), 5);
//! assert_eq!(linking::decode(&m).unwrap(), diagram);
//! ```

pub mod braid;
pub mod cli;
mod error;
pub mod forms;
pub mod fuzz;
pub mod invariants;
pub mod laundry_model;
pub mod linking;
pub mod matrix;
pub mod moves;
pub mod poly;
pub mod random;

pub use braid::{BraidLetter, BraidMoveSpec, BraidWord, ClosedBraidDiagram, R3Direction, Sign};
pub use error::{Error, Result};
pub use linking::{CycleLabel, LaundryOrder, LinkingMatrix};
pub use matrix::IntMatrix;
pub use poly::LaurentPoly;
