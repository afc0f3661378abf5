pub mod action;
pub mod checkers;
pub mod algebra;
mod closure;
pub mod complex;
pub mod error;
pub mod expr;
pub mod field;
pub mod homotopy;
pub mod io;
pub mod koszul;
pub mod linalg;
pub mod walg;
pub mod module;

pub use error::{Error, Result};
