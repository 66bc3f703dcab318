//! Compiles and runs the guide's listings as doc-tests.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}
#[doc = include_str!("../../../book/src/words.md")]
pub mod words {}
#[doc = include_str!("../../../book/src/shattering.md")]
pub mod shattering {}
#[doc = include_str!("../../../book/src/grids.md")]
pub mod grids {}
#[doc = include_str!("../../../book/src/trees.md")]
pub mod trees {}
#[doc = include_str!("../../../book/src/tree-shifts.md")]
pub mod tree_shifts {}
#[doc = include_str!("../../../book/src/harness.md")]
pub mod harness {}
