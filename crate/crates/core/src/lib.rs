// SPDX-License-Identifier: Apache-2.0

//! Distribution concept classes built from a DDH-based GGM keyed function,
//! together with the machinery needed to exercise them at desk scale:
//!
//! * [`numtheory`]: safe-prime quadratic-residue groups, the `f_p` bijection
//!   and classical discrete-log engines.
//! * [`prf`]: the length-doubling generator, the GGM keyed function and the
//!   classical oracles (MQ, PEX, RPEX) over keyed or lazily random functions.
//! * [`dist`]: bit strings, exact and empirical distribution tables, the
//!   KGEN/GEN generators, the SAMPLE oracle and KL/TV distances.
//! * [`learner`]: the tree-reversal key learner and the one-sample generator
//!   learner built on it.
//! * [`games`]: Monte-Carlo harnesses for distinguisher and inference games
//!   and the learner-to-inference reduction.
//! * [`booldist`]: distributions induced by Boolean functions and exhaustive
//!   checks of their exact-generator structure.
//!
//! The crate is `no_std` and only needs `alloc`. All randomness is supplied
//! by the caller; [`seed`] derives reproducible per-task streams from a
//! master seed.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bits;
pub mod booldist;
pub mod dist;
pub mod error;
pub mod games;
pub mod learner;
pub mod numtheory;
pub mod prf;
pub mod seed;

pub use bits::BitString;
pub use error::{Error, Result};
pub use numtheory::{GroupInstance, ZqElement};
pub use prf::PrfKey;
