//! Alternating finite automata and their reverse DFA on the powerset of states.
//!
//! A Boolean function `2^X → 2` is stored extensionally as the set of subsets it
//! maps to 1, as a bitset over all `2^|X|` subsets. Subsets of `X` are `u32` masks.
//!
//! Acceptance follows the computation tree: for `w = a·v`, the verdict vector is
//! `δ'_{av}(A)(s) = δ_a(s)(δ'_v(A))` with `δ'_ε(A) = A`, and `w` is accepted when
//! `ι(δ'_w(F))` holds. Currying the transitions gives maps `2^X → 2^X`, which form
//! a DFA on `2^X` that reads words backwards.

mod formula;

pub use formula::compile_formula;

use crate::automata::{Alphabet, Letter, MooreAutomaton};
use crate::brzozowski::dual_automaton_bounded;
use crate::error::{Error, Result};
use crate::DEFAULT_MAX_STATES;

/// Default bound on `|X|` for constructions that materialise `2^X`.
pub const DEFAULT_MAX_AFA_STATES: usize = 20;

/// Largest `|X|` the extensional representation accepts at all.
pub const HARD_MAX_AFA_STATES: usize = 24;

/// A Boolean function on subsets of an `n`-element state set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolFun {
    n: usize,
    bits: Vec<u64>,
}

impl BoolFun {
    fn check_n(n: usize) -> Result<()> {
        if n > HARD_MAX_AFA_STATES {
            return Err(Error::StateBound {
                what: format!("Boolean function over {n} states"),
                limit: HARD_MAX_AFA_STATES,
            });
        }
        Ok(())
    }

    fn words(n: usize) -> usize {
        (1usize << n).div_ceil(64)
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        Self::check_n(n)?;
        let mut bits = vec![0u64; Self::words(n)];
        for mask in 0..1u32 << n {
            if f(mask) {
                bits[mask as usize / 64] |= 1 << (mask % 64);
            }
        }
        Ok(BoolFun { n, bits })
    }

    /// The function true exactly on the listed subsets.
    pub fn from_sets(n: usize, sets: impl IntoIterator<Item = u32>) -> Result<Self> {
        Self::check_n(n)?;
        let mut bits = vec![0u64; Self::words(n)];
        for mask in sets {
            if (mask as u64) >> n != 0 {
                return Err(Error::Invalid(format!(
                    "subset mask {mask:#b} mentions states beyond {n}"
                )));
            }
            bits[mask as usize / 64] |= 1 << (mask % 64);
        }
        Ok(BoolFun { n, bits })
    }

    /// `A ↦ [s ∈ A]`.
    pub fn var(n: usize, s: usize) -> Result<Self> {
        Self::from_fn(n, |mask| mask >> s & 1 == 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, mask: u32) -> bool {
        self.bits[mask as usize / 64] >> (mask % 64) & 1 == 1
    }

    /// Satisfying subsets in increasing mask order.
    pub fn sets(&self) -> Vec<u32> {
        (0..1u32 << self.n).filter(|&m| self.eval(m)).collect()
    }
}

impl std::fmt::Debug for BoolFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set()
            .entries(
                self.sets()
                    .iter()
                    .map(|m| format!("{m:0w$b}", w = self.n.max(1))),
            )
            .finish()
    }
}

/// An alternating finite automaton `(X, δ, ι, F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingAutomaton {
    n: usize,
    alphabet: Alphabet,
    /// `delta[a][s]` is the Boolean function `δ_a(s)`.
    delta: Vec<Vec<BoolFun>>,
    iota: BoolFun,
    finals: u32,
}

impl AlternatingAutomaton {
    pub fn new(
        alphabet: Alphabet,
        n: usize,
        delta: Vec<Vec<BoolFun>>,
        iota: BoolFun,
        finals: u32,
    ) -> Result<Self> {
        BoolFun::check_n(n)?;
        if delta.len() != alphabet.len() {
            return Err(Error::dims(
                "transition letters",
                alphabet.len(),
                delta.len(),
            ));
        }
        for (a, row) in delta.iter().enumerate() {
            if row.len() != n {
                return Err(Error::dims(
                    format!("transitions on `{}`", alphabet.symbol(a)),
                    n,
                    row.len(),
                ));
            }
            if row.iter().any(|f| f.n != n) {
                return Err(Error::Invalid(
                    "transition condition over wrong state count".into(),
                ));
            }
        }
        if iota.n != n {
            return Err(Error::Invalid(
                "acceptance condition over wrong state count".into(),
            ));
        }
        if (finals as u64) >> n != 0 {
            return Err(Error::Invalid("final state out of range".into()));
        }
        Ok(AlternatingAutomaton {
            n,
            alphabet,
            delta,
            iota,
            finals,
        })
    }

    /// The AFA with `δ_a(s) = {A | t_a(s) ∈ A}`, `ι = {A | init ∈ A}` and the DFA's
    /// accepting states as `F`.
    pub fn from_dfa(dfa: &MooreAutomaton) -> Result<Self> {
        dfa.require_dfa("AFA embedding")?;
        let n = dfa.n();
        let delta = dfa
            .transitions()
            .iter()
            .map(|row| row.iter().map(|&t| BoolFun::var(n, t)).collect())
            .collect::<Result<_>>()?;
        let finals = dfa.accepting_states().iter().fold(0u32, |m, s| m | 1 << s);
        Self::new(
            dfa.alphabet().clone(),
            n,
            delta,
            BoolFun::var(n, dfa.init())?,
            finals,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn delta(&self, letter: Letter, state: usize) -> &BoolFun {
        &self.delta[letter][state]
    }

    pub fn iota(&self) -> &BoolFun {
        &self.iota
    }

    pub fn finals(&self) -> u32 {
        self.finals
    }

    /// `{s | δ_a(s)(A) = 1}`.
    pub fn transpose(&self, letter: Letter, mask: u32) -> u32 {
        self.delta[letter]
            .iter()
            .enumerate()
            .filter(|(_, f)| f.eval(mask))
            .fold(0, |m, (s, _)| m | 1 << s)
    }

    /// The verdict vector `δ'_w(F)`.
    pub fn verdicts(&self, word: &[Letter]) -> Result<u32> {
        self.alphabet.check_word(word)?;
        Ok(word
            .iter()
            .rev()
            .fold(self.finals, |mask, &a| self.transpose(a, mask)))
    }

    pub fn accepts(&self, word: &[Letter]) -> Result<bool> {
        Ok(self.iota.eval(self.verdicts(word)?))
    }

    fn guard(&self, limit: usize) -> Result<()> {
        if self.n > limit {
            return Err(Error::StateBound {
                what: format!("reverse DFA over 2^{} subsets", self.n),
                limit,
            });
        }
        Ok(())
    }

    /// The DFA on all `2^n` subsets (state `k` is mask `k`) with start `F`,
    /// transitions `A ↦ {s | δ_a(s)(A)}` and acceptance `ι`. It accepts exactly
    /// the reversed words of the AFA's language.
    pub fn reverse_dfa(&self, max_afa_states: usize) -> Result<MooreAutomaton> {
        self.guard(max_afa_states)?;
        let size = 1u32 << self.n;
        let trans = (0..self.alphabet.len())
            .map(|a| (0..size).map(|m| self.transpose(a, m) as usize).collect())
            .collect();
        let accepting: Vec<bool> = (0..size).map(|m| self.iota.eval(m)).collect();
        MooreAutomaton::dfa(
            self.alphabet.clone(),
            trans,
            self.finals as usize,
            &accepting,
        )
    }

    /// Minimal DFA for the AFA's language: the dual of the reachable part of the
    /// reverse DFA.
    pub fn minimal_dfa(&self, max_afa_states: usize) -> Result<MooreAutomaton> {
        self.minimal_dfa_bounded(max_afa_states, DEFAULT_MAX_STATES)
    }

    pub fn minimal_dfa_bounded(
        &self,
        max_afa_states: usize,
        max_states: usize,
    ) -> Result<MooreAutomaton> {
        let rev = self.reverse_dfa(max_afa_states)?.reach();
        Ok(dual_automaton_bounded(&rev, max_states)?.automaton)
    }
}
