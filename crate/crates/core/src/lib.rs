//! Minimisation of automata by duality.
//!
//! The crate covers Brzozowski-style double reversal for deterministic Moore
//! automata, minimisation of weighted automata over ℚ and ℤ, reversal and
//! minimisation of alternating automata through their dual DFA, and bisimulation
//! quotients of deterministic Kripke models computed from trace-definable subsets.

pub mod alternating;
pub mod automata;
pub mod brzozowski;
pub mod dkm;
pub mod error;
pub mod exec;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod random;
pub mod selftest;
pub mod semiring;
pub mod weighted;

pub use error::{Error, Result};

/// Default bound on the number of states a lazy construction may materialise.
pub const DEFAULT_MAX_STATES: usize = 1_000_000;
