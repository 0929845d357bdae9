//! Classification of nonnegative functions on `[0, ∞)` by radical-convexity
//! order, and numeric checks of the refined Jensen, Hermite–Hadamard,
//! superadditivity and Hardy-type inequalities that such functions satisfy.
//!
//! A function `f` with `f(0) = 0` is *p-radical convex* when
//! `u ↦ f(u^{1/p})` is convex. Larger orders give sharper bounds: every
//! 2-radical convex `f` obeys
//!
//! ```text
//! f((1-t)a + tb) + f(sqrt(t(1-t)) |a-b|) <= (1-t) f(a) + t f(b)
//! ```
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`funcspec`] | expression trees for candidate functions and their DSL |
//! | [`quadrature`] | adaptive Simpson integrator |
//! | [`radical`] | grid convexity test, order bisection, average-value screen |
//! | [`pointwise`] | pointwise inequalities and their reports |
//! | [`integral`] | integral inequalities and their reports |
//! | `oracle` | brute-force cross-checks (feature `oracle`) |
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]
#![deny(missing_debug_implementations)]

extern crate alloc;

mod error;
mod math;

pub mod funcspec;
pub mod integral;
pub mod pointwise;
pub mod quadrature;
pub mod radical;

#[cfg(any(test, feature = "oracle"))]
pub mod oracle;

pub use error::Error;
pub use funcspec::{Expr, FunctionSpec, ParseError};
pub use integral::{IntegralReport, IntegralTheorem};
pub use pointwise::{InequalityReport, Params, Term, TheoremId};
pub use quadrature::{QuadError, QuadResult};
pub use radical::{ConvexityVerdict, NecessaryCheck, Probe, RadicalProfile};
