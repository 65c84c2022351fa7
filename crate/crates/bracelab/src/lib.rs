//! bracelab: a workbench for finite skew braces over dense Cayley tables.

pub mod action;
pub mod brace;
pub mod budget;
pub mod catalog;
pub mod census;
pub mod error;
pub mod graph;
pub mod group;
pub mod groups16;
pub mod io;
pub mod isoclinism;
pub mod perm;
pub mod verify;
pub mod ybe;

pub use crate::budget::Budget;
pub use crate::error::{Error, Result};
pub use crate::group::CayleyGroup;
