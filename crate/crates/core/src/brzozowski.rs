//! Dual automata over a finite output set and double-reversal minimisation.
//!
//! For a Moore automaton `M = (X, t, i, f)` with outputs in `B`, the dual automaton
//! lives on functions `X → B`. It starts at the output map `f`, reads a letter `a`
//! by precomposition `φ ↦ φ ∘ t_a` and outputs `φ(i)`. Reading `w` in the dual is
//! reading `w` backwards in `M`. Only the functions reachable from `f` are ever
//! built, so the dual is reachable by construction; it is also observable, which
//! makes the dual of a reachable automaton minimal.

use std::collections::HashMap;

use crate::automata::{MooreAutomaton, StateSet};
use crate::error::{Error, Result};
use crate::DEFAULT_MAX_STATES;

/// A dual state: one output index per state of the source automaton.
pub type DualState = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualAutomaton {
    pub automaton: MooreAutomaton,
    /// `states[k]` is the function `X → B` behind state `k`.
    pub states: Vec<DualState>,
}

pub fn dual_automaton(m: &MooreAutomaton) -> Result<DualAutomaton> {
    dual_automaton_bounded(m, DEFAULT_MAX_STATES)
}

/// Builds the dual automaton breadth-first, failing once more than `max_states`
/// dual states have been discovered.
pub fn dual_automaton_bounded(m: &MooreAutomaton, max_states: usize) -> Result<DualAutomaton> {
    let letters = m.alphabet().len();
    let start: DualState = m.output_map().to_vec();
    let mut index: HashMap<DualState, usize> = HashMap::from([(start.clone(), 0)]);
    let mut states = vec![start];
    let mut trans = vec![Vec::new(); letters];
    let mut head = 0;
    while head < states.len() {
        for (a, row) in trans.iter_mut().enumerate() {
            let succ = &m.transitions()[a];
            let phi = &states[head];
            let next: DualState = succ.iter().map(|&t| phi[t]).collect();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = states.len();
                    if id >= max_states {
                        return Err(Error::StateBound {
                            what: "dual automaton".into(),
                            limit: max_states,
                        });
                    }
                    index.insert(next.clone(), id);
                    states.push(next);
                    id
                }
            };
            row.push(id);
        }
        head += 1;
    }
    let out = states.iter().map(|phi| phi[m.init()]).collect();
    let automaton = MooreAutomaton::new(m.alphabet().clone(), m.outputs().to_vec(), trans, 0, out)?;
    Ok(DualAutomaton { automaton, states })
}

/// Double reversal: the dual of the dual.
pub fn brzozowski_minimise(m: &MooreAutomaton) -> Result<MooreAutomaton> {
    brzozowski_minimise_bounded(m, DEFAULT_MAX_STATES)
}

pub fn brzozowski_minimise_bounded(
    m: &MooreAutomaton,
    max_states: usize,
) -> Result<MooreAutomaton> {
    let first = dual_automaton_bounded(m, max_states)?;
    Ok(dual_automaton_bounded(&first.automaton, max_states)?.automaton)
}

/// The dual states of a DFA read as subsets of its states (the states mapped to
/// `accept`), in the dual automaton's state order.
pub fn dual_state_sets(m: &MooreAutomaton) -> Result<Vec<StateSet>> {
    dual_state_sets_bounded(m, DEFAULT_MAX_STATES)
}

pub fn dual_state_sets_bounded(m: &MooreAutomaton, max_states: usize) -> Result<Vec<StateSet>> {
    m.require_dfa("dual_state_sets")?;
    let dual = dual_automaton_bounded(m, max_states)?;
    Ok(dual.states.iter().map(|phi| decode(phi)).collect())
}

fn decode(phi: &[usize]) -> StateSet {
    phi.iter()
        .enumerate()
        .filter(|&(_, &o)| o == 1)
        .map(|(s, _)| s)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{reversed, Alphabet};

    fn ends_in_a() -> MooreAutomaton {
        MooreAutomaton::dfa(
            Alphabet::letters(2),
            vec![vec![2, 1, 1], vec![0, 0, 0]],
            0,
            &[false, true, true],
        )
        .unwrap()
    }

    fn set(xs: &[usize]) -> StateSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn ends_in_a_dual() {
        let dual = dual_automaton(&ends_in_a()).unwrap();
        let d = &dual.automaton;
        assert_eq!(d.n(), 3);
        // init {y,z}; a -> {x,y,z}; b -> ∅; both of those loop
        assert_eq!(d.transitions(), &[vec![1, 1, 2], vec![2, 1, 2]]);
        // accepting iff the subset contains x
        assert_eq!(d.output_map(), &[0, 1, 0]);
        assert_eq!(
            dual_state_sets(&ends_in_a()).unwrap(),
            vec![set(&[1, 2]), set(&[0, 1, 2]), set(&[])]
        );
    }

    #[test]
    fn ends_in_a_brzozowski() {
        let min = brzozowski_minimise(&ends_in_a()).unwrap();
        // init rejecting, a -> accepting, accepting loops on a, b returns to init
        assert_eq!(min.n(), 2);
        assert_eq!(min.init(), 0);
        assert_eq!(min.output_map(), &[0, 1]);
        assert_eq!(min.transitions(), &[vec![1, 1], vec![0, 0]]);
        assert!(min.equiv_exact(&ends_in_a()).unwrap());
        assert!(min.iso_check(&ends_in_a().partition_refinement_minimise()));
    }

    #[test]
    fn one_state_dual() {
        let m = MooreAutomaton::new(
            Alphabet::letters(2),
            vec!["lo".into(), "hi".into(), "mid".into()],
            vec![vec![0], vec![0]],
            0,
            vec![2],
        )
        .unwrap();
        let dual = dual_automaton(&m).unwrap();
        assert_eq!(dual.automaton.n(), 1);
        assert_eq!(dual.automaton.output(0), 2);
    }

    #[test]
    fn reverses_language() {
        let m = ends_in_a();
        let d = dual_automaton(&m).unwrap().automaton;
        for w in m.alphabet().words_up_to(6) {
            assert_eq!(d.run(&w).unwrap(), m.run(&reversed(&w)).unwrap());
        }
    }

    #[test]
    fn matches_classical_pipeline() {
        let m = ends_in_a();
        let classical = m.reverse().unwrap().determinise().reach();
        assert!(dual_automaton(&m).unwrap().automaton.iso_check(&classical));
    }

    #[test]
    fn accept_nothing() {
        let m = MooreAutomaton::dfa(Alphabet::letters(1), vec![vec![1, 0]], 0, &[false, false])
            .unwrap();
        assert_eq!(dual_state_sets(&m).unwrap(), vec![set(&[])]);
    }

    #[test]
    fn guard_trips() {
        let err = dual_automaton_bounded(&ends_in_a(), 2).unwrap_err();
        assert!(matches!(err, Error::StateBound { limit: 2, .. }));
        assert!(dual_automaton_bounded(&ends_in_a(), 3).is_ok());
    }
}
