use std::collections::HashMap;
use std::fmt;

use super::{Alphabet, Letter, MooreAutomaton};
use crate::error::{Error, Result};

/// A sorted, duplicate-free set of state indices.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet(Vec<usize>);

impl StateSet {
    pub fn contains(&self, s: usize) -> bool {
        self.0.binary_search(&s).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.iter().any(|s| other.contains(s))
    }

    /// Subset of `0..n` encoded by the bits of `mask`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        StateSet((0..n).filter(|&i| mask >> i & 1 == 1).collect())
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        StateSet(v)
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

/// A nondeterministic finite automaton with a set of initial states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    n: usize,
    /// `trans[a][s]` is the set of `a`-successors of `s`.
    trans: Vec<Vec<StateSet>>,
    inits: StateSet,
    finals: StateSet,
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        n: usize,
        trans: Vec<Vec<StateSet>>,
        inits: StateSet,
        finals: StateSet,
    ) -> Result<Self> {
        if trans.len() != alphabet.len() {
            return Err(Error::dims(
                "transition table letters",
                alphabet.len(),
                trans.len(),
            ));
        }
        let out_of_range = |set: &StateSet| set.max().is_some_and(|m| m >= n);
        for (a, row) in trans.iter().enumerate() {
            if row.len() != n {
                return Err(Error::dims(
                    format!("transitions on `{}`", alphabet.symbol(a)),
                    n,
                    row.len(),
                ));
            }
            if row.iter().any(out_of_range) {
                return Err(Error::Invalid("transition target out of range".into()));
            }
        }
        if out_of_range(&inits) || out_of_range(&finals) {
            return Err(Error::Invalid("initial or final state out of range".into()));
        }
        Ok(Nfa {
            alphabet,
            n,
            trans,
            inits,
            finals,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn inits(&self) -> &StateSet {
        &self.inits
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    pub fn successors(&self, letter: Letter, state: usize) -> &StateSet {
        &self.trans[letter][state]
    }

    pub fn transitions(&self) -> &[Vec<StateSet>] {
        &self.trans
    }

    pub fn post(&self, set: &StateSet, letter: Letter) -> StateSet {
        set.iter()
            .flat_map(|s| self.trans[letter][s].iter())
            .collect()
    }

    /// Acceptance by forward subset simulation.
    pub fn accepts(&self, word: &[Letter]) -> Result<bool> {
        self.alphabet.check_word(word)?;
        let last = word
            .iter()
            .fold(self.inits.clone(), |set, &a| self.post(&set, a));
        Ok(last.intersects(&self.finals))
    }

    /// Arcs flipped, initial and final sets swapped.
    pub fn reverse(&self) -> Nfa {
        let trans = self
            .trans
            .iter()
            .map(|row| {
                let mut back = vec![Vec::new(); self.n];
                for (s, targets) in row.iter().enumerate() {
                    for t in targets.iter() {
                        back[t].push(s);
                    }
                }
                back.into_iter().map(StateSet::from_iter).collect()
            })
            .collect();
        Nfa {
            alphabet: self.alphabet.clone(),
            n: self.n,
            trans,
            inits: self.finals.clone(),
            finals: self.inits.clone(),
        }
    }

    /// Subset construction restricted to subsets reachable from the initial set,
    /// numbered in breadth-first order. Also returns the subset behind every state.
    pub fn determinise_with_sets(&self) -> (MooreAutomaton, Vec<StateSet>) {
        self.determinise_bounded(usize::MAX)
            .expect("unbounded subset construction cannot hit the guard")
    }

    /// As [`Nfa::determinise_with_sets`], failing once more than `max_states`
    /// subsets have been discovered.
    pub fn determinise_bounded(
        &self,
        max_states: usize,
    ) -> Result<(MooreAutomaton, Vec<StateSet>)> {
        let mut index: HashMap<StateSet, usize> = HashMap::new();
        let mut sets = vec![self.inits.clone()];
        index.insert(self.inits.clone(), 0);
        let mut trans = vec![Vec::new(); self.alphabet.len()];
        let mut head = 0;
        while head < sets.len() {
            let cur = sets[head].clone();
            head += 1;
            for (a, row) in trans.iter_mut().enumerate() {
                let next = self.post(&cur, a);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        if id >= max_states {
                            return Err(Error::StateBound {
                                what: "subset construction".into(),
                                limit: max_states,
                            });
                        }
                        index.insert(next.clone(), id);
                        sets.push(next);
                        id
                    }
                };
                row.push(id);
            }
        }
        let accepting: Vec<bool> = sets.iter().map(|s| s.intersects(&self.finals)).collect();
        let dfa = MooreAutomaton::dfa(self.alphabet.clone(), trans, 0, &accepting)?;
        Ok((dfa, sets))
    }

    pub fn determinise(&self) -> MooreAutomaton {
        self.determinise_with_sets().0
    }

    /// The full powerset automaton over all `2^n` subsets; state `k` is the subset
    /// encoded by the bits of `k`.
    pub fn powerset_automaton(&self, max_states: usize) -> Result<(MooreAutomaton, Vec<StateSet>)> {
        if self.n >= usize::BITS as usize - 1 || 1usize << self.n > max_states {
            return Err(Error::StateBound {
                what: format!("powerset of {} states", self.n),
                limit: max_states,
            });
        }
        let sets: Vec<StateSet> = (0..1u64 << self.n)
            .map(|m| StateSet::from_mask(m, self.n))
            .collect();
        let mask = |s: &StateSet| s.iter().fold(0usize, |m, i| m | 1 << i);
        let trans = (0..self.alphabet.len())
            .map(|a| sets.iter().map(|s| mask(&self.post(s, a))).collect())
            .collect();
        let accepting: Vec<bool> = sets.iter().map(|s| s.intersects(&self.finals)).collect();
        let dfa = MooreAutomaton::dfa(self.alphabet.clone(), trans, mask(&self.inits), &accepting)?;
        Ok((dfa, sets))
    }
}
