//! Compiles every listing of the guide in `book/src` as a doc-test.

#[doc = include_str!("../../../book/src/overview.md")]
pub mod overview {}
#[doc = include_str!("../../../book/src/precision.md")]
pub mod precision {}
#[doc = include_str!("../../../book/src/exact.md")]
pub mod exact {}
#[doc = include_str!("../../../book/src/saddles.md")]
pub mod saddles {}
#[doc = include_str!("../../../book/src/expansion.md")]
pub mod expansion {}
#[doc = include_str!("../../../book/src/uniform.md")]
pub mod uniform {}
#[doc = include_str!("../../../book/src/poincare.md")]
pub mod poincare {}
#[doc = include_str!("../../../book/src/contours.md")]
pub mod contours {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
