//! Exact enumeration and q-series verification for partition identities of
//! Rogers–Ramanujan and Andrews–Gordon type.
//!
//! The crate is organised bottom-up: [`partition`] supplies the objects,
//! [`dissection`] cuts them into Durfee squares and rectangles, [`classes`]
//! defines the six partition families on top of those cuts, [`qseries`] and
//! [`bailey`] provide the analytic side, [`ideal`] the monomial side and
//! [`bijection`] the explicit maps between classes.

pub mod bailey;
pub mod bijection;
pub mod classes;
pub mod dissection;
pub mod error;
pub mod ideal;
pub mod partition;
pub mod qseries;

pub use classes::{ClassId, ClassKind};
pub use dissection::{BlockKind, Dissection, DissectionBlock};
pub use error::{Error, Result};
pub use partition::{partitions, Partition};
pub use qseries::TruncatedSeries;
