//! Exact finite-level computations around pro-p Sylow subgroups of
//! Kac-Moody groups over finite fields.
//!
//! The crate covers generalized Cartan matrices and their root systems, the
//! Serre-presented positive part of the Kac-Moody Lie algebra, a truncated
//! Baker-Campbell-Hausdorff model of the pro-p Sylow subgroup, the Iwahori
//! Sylow of `SL_m` over truncated power series, and a small black-box
//! finite-group engine used to compute Frattini quotients, derived subgroups,
//! filtration inclusions and Tits-system axioms.

pub mod affine;
pub mod bch;
pub mod campaign;
pub mod error;
pub mod field;
pub mod gcm;
pub mod group;
pub mod lie;
pub mod linalg;
pub mod roots;
pub mod unipotent;

pub use error::{Error, Result};
