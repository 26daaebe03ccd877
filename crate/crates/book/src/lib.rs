//! Compiles the guide's code blocks as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/complexes.md")]
pub mod complexes {}
#[doc = include_str!("../../../book/src/hodge.md")]
pub mod hodge {}
#[doc = include_str!("../../../book/src/walks.md")]
pub mod walks {}
#[doc = include_str!("../../../book/src/encodings.md")]
pub mod encodings {}
#[doc = include_str!("../../../book/src/isotest.md")]
pub mod isotest {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
