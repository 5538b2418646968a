//! Deterministic Kripke models: trace formulas, trace-definable subsets and the
//! bisimulation quotient obtained from the atoms of the Boolean algebra they
//! generate.

use std::collections::{BTreeSet, HashSet};

use crate::automata::{Alphabet, Letter, MooreAutomaton, Partition, StateSet};
use crate::error::{Error, Result};

/// A deterministic transition system whose states carry sets of observations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dkm {
    alphabet: Alphabet,
    obs: Vec<String>,
    /// Observation indices holding at each state, sorted.
    gamma: Vec<Vec<usize>>,
    /// `delta[a][s]` is the `a`-successor of `s`.
    delta: Vec<Vec<usize>>,
    initial: Option<usize>,
}

/// `⟨a₁⟩…⟨a_k⟩ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceFormula {
    pub word: Vec<Letter>,
    pub obs: usize,
}

/// A deduplicated family of state subsets in canonical order.
pub type SubsetFamily = BTreeSet<StateSet>;

impl Dkm {
    pub fn new(
        alphabet: Alphabet,
        obs: Vec<String>,
        gamma: Vec<Vec<usize>>,
        delta: Vec<Vec<usize>>,
        initial: Option<usize>,
    ) -> Result<Self> {
        let n = gamma.len();
        for (i, o) in obs.iter().enumerate() {
            if obs[..i].contains(o) {
                return Err(Error::Invalid(format!("duplicate observation `{o}`")));
            }
        }
        if delta.len() != alphabet.len() {
            return Err(Error::dims(
                "transition table letters",
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
            if row.iter().any(|&t| t >= n) {
                return Err(Error::Invalid("transition target out of range".into()));
            }
        }
        let gamma = gamma
            .into_iter()
            .map(|mut g| {
                g.sort_unstable();
                g.dedup();
                if g.iter().any(|&o| o >= obs.len()) {
                    return Err(Error::Invalid("observation index out of range".into()));
                }
                Ok(g)
            })
            .collect::<Result<Vec<_>>>()?;
        if initial.is_some_and(|i| i >= n) {
            return Err(Error::Invalid("initial state out of range".into()));
        }
        Ok(Dkm {
            alphabet,
            obs,
            gamma,
            delta,
            initial,
        })
    }

    /// A DFA as a model with the single observation `obs` true at accepting states.
    pub fn from_dfa(dfa: &MooreAutomaton, obs: &str) -> Result<Self> {
        dfa.require_dfa("DFA to Kripke model")?;
        let gamma = (0..dfa.n())
            .map(|s| if dfa.output(s) == 1 { vec![0] } else { vec![] })
            .collect();
        Self::new(
            dfa.alphabet().clone(),
            vec![obs.to_string()],
            gamma,
            dfa.transitions().to_vec(),
            Some(dfa.init()),
        )
    }

    /// The DFA started at the initial state that accepts where `obs` holds.
    pub fn to_dfa(&self, obs: &str) -> Result<MooreAutomaton> {
        let p = self.obs_index(obs)?;
        let init = self
            .initial
            .ok_or_else(|| Error::Invalid("Kripke model has no initial state".into()))?;
        let accepting: Vec<bool> = self.gamma.iter().map(|g| g.contains(&p)).collect();
        MooreAutomaton::dfa(self.alphabet.clone(), self.delta.clone(), init, &accepting)
    }

    pub fn n(&self) -> usize {
        self.gamma.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn observations(&self) -> &[String] {
        &self.obs
    }

    pub fn gamma(&self, state: usize) -> &[usize] {
        &self.gamma[state]
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn initial(&self) -> Option<usize> {
        self.initial
    }

    pub fn obs_index(&self, name: &str) -> Result<usize> {
        self.obs
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObservation(name.to_string()))
    }

    /// Parses `<a><b>p`; whitespace is ignored and a bare `p` has no modalities.
    pub fn parse_formula(&self, text: &str) -> Result<TraceFormula> {
        let mut rest = text.trim();
        let mut word = Vec::new();
        while let Some(tail) = rest.strip_prefix('<') {
            let (letter, after) = tail
                .split_once('>')
                .ok_or_else(|| Error::Syntax(format!("unclosed `<` in formula `{text}`")))?;
            word.push(self.alphabet.index(letter.trim())?);
            rest = after.trim_start();
        }
        Ok(TraceFormula {
            word,
            obs: self.obs_index(rest.trim())?,
        })
    }

    pub fn render_formula(&self, phi: &TraceFormula) -> String {
        let mut s: String = phi
            .word
            .iter()
            .map(|&a| format!("<{}>", self.alphabet.symbol(a)))
            .collect();
        s.push_str(&self.obs[phi.obs]);
        s
    }

    fn holds(&self, obs: usize) -> StateSet {
        (0..self.n())
            .filter(|&s| self.gamma[s].binary_search(&obs).is_ok())
            .collect()
    }

    /// `δ_a⁻¹(A)`.
    pub fn preimage(&self, letter: Letter, set: &StateSet) -> StateSet {
        (0..self.n())
            .filter(|&s| set.contains(self.delta[letter][s]))
            .collect()
    }

    /// States satisfying the formula, evaluated from the observation outwards.
    pub fn eval_trace(&self, phi: &TraceFormula) -> Result<StateSet> {
        self.alphabet.check_word(&phi.word)?;
        if phi.obs >= self.obs.len() {
            return Err(Error::UnknownObservation(format!("#{}", phi.obs)));
        }
        Ok(phi
            .word
            .iter()
            .rev()
            .fold(self.holds(phi.obs), |set, &a| self.preimage(a, &set)))
    }

    /// All trace-definable subsets: the least family containing every `⟦ω⟧` and
    /// closed under `δ_a⁻¹`.
    pub fn definable_closure(&self) -> SubsetFamily {
        let mut seen: HashSet<StateSet> = HashSet::new();
        let mut pending: Vec<StateSet> = (0..self.obs.len()).map(|o| self.holds(o)).collect();
        while let Some(set) = pending.pop() {
            if !seen.insert(set.clone()) {
                continue;
            }
            for a in 0..self.alphabet.len() {
                let pre = self.preimage(a, &set);
                if !seen.contains(&pre) {
                    pending.push(pre);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Quotient by a partition, which must be a congruence.
    pub fn quotient(&self, p: &Partition) -> Result<Dkm> {
        if p.len() != self.n() {
            return Err(Error::dims("partition", self.n(), p.len()));
        }
        let reps = p.representatives();
        for s in 0..self.n() {
            let r = reps[p.block_of(s)];
            if self.gamma[s] != self.gamma[r] {
                return Err(Error::NotCongruence {
                    left: r,
                    right: s,
                    reason: "have different observations".into(),
                });
            }
            for (a, row) in self.delta.iter().enumerate() {
                if p.block_of(row[s]) != p.block_of(row[r]) {
                    return Err(Error::NotCongruence {
                        left: r,
                        right: s,
                        reason: format!(
                            "have `{}`-successors in different blocks",
                            self.alphabet.symbol(a)
                        ),
                    });
                }
            }
        }
        Ok(Dkm {
            alphabet: self.alphabet.clone(),
            obs: self.obs.clone(),
            gamma: reps.iter().map(|&r| self.gamma[r].clone()).collect(),
            delta: self
                .delta
                .iter()
                .map(|row| reps.iter().map(|&r| p.block_of(row[r])).collect())
                .collect(),
            initial: self.initial.map(|i| p.block_of(i)),
        })
    }

    /// Quotient by the atoms of the Boolean algebra generated by the definable subsets.
    pub fn minimise(&self) -> Dkm {
        let atoms = boolean_atoms(&self.definable_closure(), self.n());
        self.quotient(&atoms)
            .expect("atoms of the definable subsets form a congruence")
    }

    /// Coarsest partition refining equal observations and stable under every transition.
    pub fn bisimulation_oracle(&self) -> Partition {
        Partition::from_keys(self.gamma.iter()).refine(&self.delta)
    }

    /// Breadth-first renumbering from the initial state (or state 0), keeping
    /// unreachable states after the reachable ones in index order.
    pub fn canonical(&self) -> Dkm {
        let n = self.n();
        let mut index = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let roots = self.initial.into_iter().chain(0..n);
        for root in roots {
            if index[root] != usize::MAX {
                continue;
            }
            index[root] = order.len();
            order.push(root);
            let mut head = order.len() - 1;
            while head < order.len() {
                let s = order[head];
                head += 1;
                for row in &self.delta {
                    if index[row[s]] == usize::MAX {
                        index[row[s]] = order.len();
                        order.push(row[s]);
                    }
                }
            }
        }
        Dkm {
            alphabet: self.alphabet.clone(),
            obs: self.obs.clone(),
            gamma: order.iter().map(|&s| self.gamma[s].clone()).collect(),
            delta: self
                .delta
                .iter()
                .map(|row| order.iter().map(|&s| index[row[s]]).collect())
                .collect(),
            initial: self.initial.map(|i| index[i]),
        }
    }

    /// Isomorphism through breadth-first canonical forms.
    ///
    /// Exact for models where every state is reachable from the root; otherwise it
    /// may report false negatives.
    pub fn iso_check(&self, other: &Dkm) -> bool {
        self.canonical() == other.canonical()
    }
}

/// Partition of `0..n` by membership signature across the family; its blocks are
/// the atoms of the Boolean algebra the family generates.
pub fn boolean_atoms(family: &SubsetFamily, n: usize) -> Partition {
    Partition::from_keys(
        (0..n).map(|s| family.iter().map(|set| set.contains(s)).collect::<Vec<_>>()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    /// x=0, y=1, z=2 with p at {y,z}.
    fn ends_in_a() -> Dkm {
        Dkm::new(
            Alphabet::letters(2),
            vec!["p".into()],
            vec![vec![], vec![0], vec![0]],
            vec![vec![2, 1, 1], vec![0, 0, 0]],
            Some(0),
        )
        .unwrap()
    }

    fn set(xs: &[usize]) -> StateSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn trace_semantics() {
        let k = ends_in_a();
        let f = |s: &str| k.parse_formula(s).unwrap();
        assert_eq!(k.eval_trace(&f("p")).unwrap(), set(&[1, 2]));
        assert_eq!(k.eval_trace(&f("<a>p")).unwrap(), set(&[0, 1, 2]));
        assert_eq!(k.eval_trace(&f("<b>p")).unwrap(), set(&[]));
        assert_eq!(k.eval_trace(&f("<a> <b> p")).unwrap(), set(&[]));
        assert!(matches!(
            k.parse_formula("<c>p"),
            Err(Error::UnknownLetter(_))
        ));
        assert!(matches!(
            k.parse_formula("<a>q"),
            Err(Error::UnknownObservation(_))
        ));
        assert!(k.parse_formula("<a p").is_err());
        assert_eq!(k.render_formula(&f("<a><b>p")), "<a><b>p");
    }

    #[test]
    fn closure_and_atoms() {
        let k = ends_in_a();
        let fam = k.definable_closure();
        let expected: SubsetFamily = [set(&[]), set(&[1, 2]), set(&[0, 1, 2])]
            .into_iter()
            .collect();
        assert_eq!(fam, expected);
        let atoms = boolean_atoms(&fam, 3);
        assert_eq!(atoms.blocks(), vec![vec![0], vec![1, 2]]);
        assert_eq!(k.bisimulation_oracle(), atoms);
    }

    #[test]
    fn atoms_edge_cases() {
        assert_eq!(boolean_atoms(&SubsetFamily::new(), 3), Partition::single(3));
        let singletons: SubsetFamily = (0..3).map(|s| set(&[s])).collect();
        assert_eq!(boolean_atoms(&singletons, 3), Partition::discrete(3));
    }

    #[test]
    fn constant_gamma() {
        let k = Dkm::new(
            Alphabet::letters(1),
            vec!["p".into(), "q".into()],
            vec![vec![0], vec![0], vec![0]],
            vec![vec![1, 2, 0]],
            None,
        )
        .unwrap();
        let fam = k.definable_closure();
        let expected: SubsetFamily = [set(&[]), set(&[0, 1, 2])].into_iter().collect();
        assert_eq!(fam, expected);
        assert_eq!(k.bisimulation_oracle(), Partition::single(3));
        assert_eq!(k.minimise().n(), 1);
    }

    #[test]
    fn quotient_ends_in_a() {
        let k = ends_in_a();
        let p = Partition::from_assignment(&[0, 1, 1]);
        let q = k.quotient(&p).unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(q.gamma(0), &[] as &[usize]);
        assert_eq!(q.gamma(1), &[0]);
        assert_eq!(q.transitions(), &[vec![1, 1], vec![0, 0]]);
        assert_eq!(q.initial(), Some(0));
        assert_eq!(k.minimise(), q);
        assert!(k.quotient(&Partition::discrete(3)).unwrap().iso_check(&k));
    }

    #[test]
    fn non_congruence_is_reported() {
        let k = ends_in_a();
        let err = k
            .quotient(&Partition::from_assignment(&[0, 0, 1]))
            .unwrap_err();
        match err {
            Error::NotCongruence {
                left,
                right,
                reason,
            } => {
                assert_eq!((left, right), (0, 1));
                assert!(reason.contains("observations"));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn discrete_gamma() {
        let k = Dkm::new(
            Alphabet::letters(1),
            vec!["p".into(), "q".into(), "r".into()],
            vec![vec![0], vec![1], vec![2]],
            vec![vec![0, 1, 2]],
            None,
        )
        .unwrap();
        assert_eq!(k.bisimulation_oracle(), Partition::discrete(3));
    }

    #[test]
    fn minimise_is_idempotent() {
        let k = ends_in_a();
        let m = k.minimise();
        assert!(m.minimise().iso_check(&m));
    }

    #[test]
    fn dfa_round_trip() {
        let k = ends_in_a();
        let dfa = k.to_dfa("p").unwrap();
        assert_eq!(Dkm::from_dfa(&dfa, "p").unwrap(), k);
        assert!(matches!(k.to_dfa("q"), Err(Error::UnknownObservation(_))));
        let mut rootless = k.clone();
        rootless.initial = None;
        assert!(rootless.to_dfa("p").is_err());
    }
}
