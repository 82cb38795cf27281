//! Rate-region toolkit for the two-user Gaussian interference channel whose
//! receivers cooperate over rate-limited, noiseless links.
//!
//! The crate computes, for a given channel scenario:
//!
//! * an achievable rate region built from superposition coding and
//!   quantize-binning / decode-forward cooperation ([`bounds::build_inner`]),
//! * a matching outer bound ([`bounds::build_outer`]), within a bounded
//!   number of bits of the inner region,
//! * the symmetric generalized degrees of freedom ([`gdof`]),
//! * linear-deterministic approximations with an exhaustive scheme search
//!   ([`ldc`]).
//!
//! Regions are polytopes in the nonnegative quadrant described by
//! halfspaces with nonnegative normals ([`region::RateRegion`]), and a small
//! Fourier–Motzkin engine ([`fm`]) projects rate-split systems onto the
//! `(R1, R2)` plane to cross-check the closed-form inner regions.

pub mod bounds;
pub mod channel;
pub mod fm;
pub mod gaussian;
pub mod gdof;
pub mod harness;
pub mod ldc;
pub mod mi;
pub mod region;

pub use bounds::{build_inner, build_outer, build_two_round, StrategyOrder};
pub use channel::{ChannelParams, PowerSplit, Regime, Scenario, User};
pub use mi::{eval_mi, MiId, MiTerm, QuantizerConfig};
pub use region::{HalfSpace, RateRegion};
