//! Exact verification of p-adic Welch bounds over rational vectors in Q_p^d.
//!
//! All p-adic quantities are computed exactly: scalars are [`Rational`]s and
//! absolute values are kept as exponents of p ([`AbsValue`]). The crate
//! provides
//!
//! - valuations, absolute values and binomial valuations ([`valuation`], [`factorial`]),
//! - Gram matrices, frame operators and tightness ([`linalg`]),
//! - symmetric tensor powers in monomial coordinates ([`sym`]),
//! - the first- and higher-order bounds with Zauner and equiangular checks ([`welch`]),
//! - floating-point classical comparators ([`classical`]),
//! - exhaustive search over bounded-height rational grids ([`search`]),
//! - the JSON interchange format ([`format`]).

pub mod classical;
pub mod error;
pub mod factorial;
pub mod format;
pub mod generators;
pub mod linalg;
pub mod prime;
pub mod rational;
pub mod search;
pub mod sym;
pub mod valuation;
pub mod welch;

pub use error::{Error, Result};
pub use linalg::{FrameConfig, Matrix, TightnessReport, Vector};
pub use prime::Prime;
pub use rational::Rational;
pub use valuation::{AbsValue, Valuation};
