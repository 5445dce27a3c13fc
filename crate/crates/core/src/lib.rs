//! Touchard polynomials at large negative arguments.
//!
//! `T̂_{n−1}(−x)` with `x = n·e·ξ` is computed exactly from Stirling numbers
//! and approximated three ways: the double-saddle expansion at ξ = 1, a
//! two-term Airy form uniform in ξ, and the leading saddle-point term away
//! from ξ = 1.
//!
//! ```
//! use touchard::numkernel::mk_context;
//! use touchard::stirling::{build_triangle, scaled_at_xi};
//! use touchard::coalescence::theorem1_eval;
//!
//! let ctx = mk_context(60)?;
//! let tri = build_triangle(121)?;
//! let exact = scaled_at_xi(121, &1.into(), &tri, &ctx)?.value;
//! let approx = theorem1_eval(121, 6, &ctx)?;
//! assert!(approx.rel_err(&exact)?.to_f64() < 1e-5);
//! # Ok::<(), touchard::Error>(())
//! ```

pub mod airy;
pub mod coalescence;
pub mod contours;
pub mod error;
pub mod numkernel;
pub mod poincare;
pub mod report;
pub mod saddle;
pub mod stirling;
pub mod tables;
pub mod uniform;

pub use error::{Error, Result};
