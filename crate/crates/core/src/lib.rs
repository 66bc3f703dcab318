pub mod automaton;
pub mod bigmath;
pub mod error;
pub mod grids;
pub mod harness;
pub mod limits;
pub mod numfmt;
pub mod perron;
pub mod search;
pub mod shatter;
pub mod trees;
pub mod treeshifts;
pub mod words;

pub use error::{Result, ShiftError};
