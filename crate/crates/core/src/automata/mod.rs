//! Deterministic Moore automata, NFAs and state partitions.
//!
//! States are dense indices `0..n`; names only live in the serialised form.

mod alphabet;
mod moore;
mod nfa;
mod partition;

pub use alphabet::{Alphabet, Letter, Word};
pub use moore::{MooreAutomaton, DFA_OUTPUTS};
pub use nfa::{Nfa, StateSet};
pub use partition::Partition;

/// `w` read backwards.
pub fn reversed(word: &[Letter]) -> Word {
    word.iter().rev().copied().collect()
}
