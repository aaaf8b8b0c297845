//! Exact computation of average kernel sizes of modules of matrices over
//! finite quotients of DVRs, relation modules attached to partially coloured
//! grids, admissibility via column-deleting moves, and class counting for
//! small nilpotent groups.

pub mod error;
pub mod finring;
pub mod colouring;
pub mod boardgame;
pub mod modrep;
pub mod predict;
pub mod ask;
pub mod nilpotent;
pub mod gallery;

pub use error::{Error, Result};
pub use finring::{RingKind, RingMatrix, RingSpec};
