use std::collections::{HashMap, VecDeque};

use super::{Alphabet, Letter, Nfa, Partition, StateSet};
use crate::error::{Error, Result};

/// Output labels of a DFA seen as a Moore automaton: index 1 accepts.
pub const DFA_OUTPUTS: [&str; 2] = ["reject", "accept"];

/// A finite deterministic automaton with an initial state and an output in a finite
/// ordered set `B` attached to every state. A DFA is the case `B = [reject, accept]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MooreAutomaton {
    alphabet: Alphabet,
    outputs: Vec<String>,
    /// `trans[a][s]` is the `a`-successor of `s`.
    trans: Vec<Vec<usize>>,
    init: usize,
    out: Vec<usize>,
}

/// A state of the product automaton.
type Pair = (usize, usize);

impl MooreAutomaton {
    pub fn new(
        alphabet: Alphabet,
        outputs: Vec<String>,
        trans: Vec<Vec<usize>>,
        init: usize,
        out: Vec<usize>,
    ) -> Result<Self> {
        let n = out.len();
        if n == 0 {
            return Err(Error::Invalid("automaton needs at least one state".into()));
        }
        if outputs.is_empty() {
            return Err(Error::Invalid("output set must not be empty".into()));
        }
        for (i, o) in outputs.iter().enumerate() {
            if outputs[..i].contains(o) {
                return Err(Error::Invalid(format!("duplicate output value `{o}`")));
            }
        }
        if trans.len() != alphabet.len() {
            return Err(Error::dims(
                "transition table letters",
                alphabet.len(),
                trans.len(),
            ));
        }
        for (a, row) in trans.iter().enumerate() {
            if row.len() != n {
                return Err(Error::dims(
                    format!("transitions on `{}`", alphabet.symbol(a)),
                    n,
                    row.len(),
                ));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::Invalid(format!(
                    "transition target {t} out of range"
                )));
            }
        }
        if init >= n {
            return Err(Error::Invalid(format!("initial state {init} out of range")));
        }
        if let Some(&o) = out.iter().find(|&&o| o >= outputs.len()) {
            return Err(Error::Invalid(format!("output index {o} out of range")));
        }
        Ok(MooreAutomaton {
            alphabet,
            outputs,
            trans,
            init,
            out,
        })
    }

    pub fn dfa(
        alphabet: Alphabet,
        trans: Vec<Vec<usize>>,
        init: usize,
        accepting: &[bool],
    ) -> Result<Self> {
        let outputs = DFA_OUTPUTS.iter().map(|s| s.to_string()).collect();
        let out = accepting.iter().map(|&b| usize::from(b)).collect();
        Self::new(alphabet, outputs, trans, init, out)
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.trans
    }

    pub fn init(&self) -> usize {
        self.init
    }

    pub fn output(&self, state: usize) -> usize {
        self.out[state]
    }

    pub fn output_map(&self) -> &[usize] {
        &self.out
    }

    pub fn step(&self, state: usize, letter: Letter) -> usize {
        self.trans[letter][state]
    }

    pub fn is_dfa(&self) -> bool {
        self.outputs.len() == 2 && self.outputs.iter().zip(DFA_OUTPUTS).all(|(o, d)| o == d)
    }

    pub(crate) fn require_dfa(&self, op: &'static str) -> Result<()> {
        if self.is_dfa() {
            Ok(())
        } else {
            Err(Error::NonBoolean {
                op,
                found: self.outputs.clone(),
            })
        }
    }

    /// Accepting states of a DFA (states whose output has index 1).
    pub fn accepting_states(&self) -> StateSet {
        StateSet::from_iter((0..self.n()).filter(|&s| self.out[s] == 1))
    }

    pub fn state_after(&self, from: usize, word: &[Letter]) -> Result<usize> {
        self.alphabet.check_word(word)?;
        Ok(word.iter().fold(from, |s, &a| self.trans[a][s]))
    }

    /// Output index of the state reached from the initial state by `word`.
    pub fn run(&self, word: &[Letter]) -> Result<usize> {
        Ok(self.out[self.state_after(self.init, word)?])
    }

    pub fn run_label(&self, word: &[Letter]) -> Result<&str> {
        Ok(&self.outputs[self.run(word)?])
    }

    pub fn accepts(&self, word: &[Letter]) -> Result<bool> {
        self.require_dfa("accepts")?;
        Ok(self.run(word)? == 1)
    }

    /// The same automaton with a different initial state.
    pub fn with_init(&self, init: usize) -> Self {
        assert!(init < self.n(), "initial state out of range");
        MooreAutomaton {
            init,
            ..self.clone()
        }
    }

    /// Restriction to the states reachable from the initial state, renumbered in
    /// breadth-first order with letters taken in alphabet order. The second component
    /// maps every new state to its old index.
    pub fn reach_with_map(&self) -> (Self, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n()];
        let mut order = vec![self.init];
        index[self.init] = 0;
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for row in &self.trans {
                let t = row[s];
                if index[t] == usize::MAX {
                    index[t] = order.len();
                    order.push(t);
                }
            }
        }
        let trans = self
            .trans
            .iter()
            .map(|row| order.iter().map(|&s| index[row[s]]).collect())
            .collect();
        let out = order.iter().map(|&s| self.out[s]).collect();
        let m = MooreAutomaton {
            alphabet: self.alphabet.clone(),
            outputs: self.outputs.clone(),
            trans,
            init: 0,
            out,
        };
        (m, order)
    }

    pub fn reach(&self) -> Self {
        self.reach_with_map().0
    }

    /// Classical reversal of a DFA: arcs flipped, accepting states become initial and
    /// the initial state becomes the only final state.
    pub fn reverse(&self) -> Result<Nfa> {
        self.require_dfa("reverse")?;
        let n = self.n();
        let trans = self
            .trans
            .iter()
            .map(|row| {
                let mut back = vec![Vec::new(); n];
                for (s, &t) in row.iter().enumerate() {
                    back[t].push(s);
                }
                back.into_iter().map(StateSet::from_iter).collect()
            })
            .collect();
        Nfa::new(
            self.alphabet.clone(),
            n,
            trans,
            self.accepting_states(),
            StateSet::from_iter([self.init]),
        )
    }

    /// Quotient by a partition that is assumed to be a congruence.
    fn quotient(&self, p: &Partition) -> Self {
        let reps = p.representatives();
        let trans = self
            .trans
            .iter()
            .map(|row| reps.iter().map(|&s| p.block_of(row[s])).collect())
            .collect();
        MooreAutomaton {
            alphabet: self.alphabet.clone(),
            outputs: self.outputs.clone(),
            trans,
            init: p.block_of(self.init),
            out: reps.iter().map(|&s| self.out[s]).collect(),
        }
    }

    /// Coarsest partition of the states by behaviour (Moore refinement starting
    /// from the output partition).
    pub fn behaviour_partition(&self) -> Partition {
        Partition::from_keys(self.out.iter().copied()).refine(&self.trans)
    }

    /// Minimal automaton by Moore partition refinement on the reachable part, in
    /// breadth-first canonical numbering.
    pub fn partition_refinement_minimise(&self) -> Self {
        let r = self.reach();
        r.quotient(&r.behaviour_partition()).reach()
    }

    /// Whether both automata have isomorphic reachable parts.
    pub fn iso_check(&self, other: &Self) -> bool {
        self.reach() == other.reach()
    }

    /// A shortest word on which the two automata produce different outputs.
    pub fn counterexample(&self, other: &Self) -> Result<Option<Vec<Letter>>> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(
                self.alphabet.symbols().to_vec(),
                other.alphabet.symbols().to_vec(),
            ));
        }
        if self.outputs != other.outputs {
            return Err(Error::OutputMismatch(
                self.outputs.clone(),
                other.outputs.clone(),
            ));
        }
        let start = (self.init, other.init);
        let mut parent: HashMap<Pair, Option<(Pair, Letter)>> = HashMap::new();
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some(pair @ (p, q)) = queue.pop_front() {
            if self.out[p] != other.out[q] {
                let mut word = Vec::new();
                let mut cur = pair;
                while let Some(Some((prev, a))) = parent.get(&cur) {
                    word.push(*a);
                    cur = *prev;
                }
                word.reverse();
                return Ok(Some(word));
            }
            for a in 0..self.alphabet.len() {
                let next = (self.trans[a][p], other.trans[a][q]);
                parent.entry(next).or_insert_with(|| {
                    queue.push_back(next);
                    Some((pair, a))
                });
            }
        }
        Ok(None)
    }

    /// Exact language equivalence via the reachable product.
    pub fn equiv_exact(&self, other: &Self) -> Result<bool> {
        Ok(self.counterexample(other)?.is_none())
    }
}
