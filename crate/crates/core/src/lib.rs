//! Computations inside finitely presented unitary 2-categories and their
//! Q-system completions.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: dense complex matrices, Hermitian eigensolver, orthogonal
//!   splitting of projections.
//! * [`twocat`]: skeletal presentations, 1-cell and 2-cell calculus,
//!   validation of pentagon and triangle.
//! * [`category`]: the [`TwoCategory`] interface shared by presentations and
//!   Q-system completions.
//! * [`qsystem`]: Q-systems, bimodules, relative tensor products and the
//!   completion `QSys(C)`.
//! * [`functoriality`]: 2-functors, transformations and modifications, and
//!   their transport through completion.

#![allow(clippy::too_many_arguments, clippy::type_complexity)]

pub mod category;
pub mod error;
pub mod functoriality;
pub mod linalg;
pub mod qsystem;
pub mod report;
pub mod twocat;

pub use category::TwoCategory;
pub use error::{Error, Result};
pub use linalg::{CMat, Tolerance, C64};
pub use report::{Check, Report};
pub use twocat::{OneCell, Presentation, PresentationData, Simple, TwoCell};
