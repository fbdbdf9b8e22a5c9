#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/quaternions.md")]
pub mod quaternions {}
#[doc = include_str!("../../../book/src/expressions.md")]
pub mod expressions {}
#[doc = include_str!("../../../book/src/fueter.md")]
pub mod fueter {}
#[doc = include_str!("../../../book/src/slice.md")]
pub mod slice {}
#[doc = include_str!("../../../book/src/structure.md")]
pub mod structure {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
