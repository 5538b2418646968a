//! Differential property suites over seeded random automata.
//!
//! Every case draws from its own RNG stream, so results do not depend on the
//! execution mode or on how cases are scheduled.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed};

use crate::alternating::DEFAULT_MAX_AFA_STATES;
use crate::automata::{reversed, Letter};
use crate::brzozowski::{brzozowski_minimise, dual_automaton, dual_state_sets};
use crate::dkm::{boolean_atoms, Dkm};
use crate::error::Result;
use crate::exec::{map_indexed, Execution};
use crate::linalg::{hnf, is_hnf, IntegerBasis, ModuleBasis};
use crate::oracle::{afa_forward_dfa, determinant};
use crate::random::{self, case_rng};
use crate::semiring::{mat_mul, Integer, Rational, Semiring};
use crate::weighted::{hankel_rank_oracle, minimise_wa, WeightedAutomaton};

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    /// One message per failing case.
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn collect(name: &'static str, outcomes: Vec<Result<(), String>>) -> Self {
        SuiteReport {
            name,
            cases: outcomes.len(),
            failures: outcomes.into_iter().filter_map(|r| r.err()).collect(),
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {:<20} {}/{} cases",
            self.name,
            self.cases - self.failures.len(),
            self.cases
        )
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>, case: usize) -> Result<T, String> {
    r.map_err(|e| format!("case {case}: {e}"))
}

/// Brzozowski against partition refinement on Moore automata
/// (n ≤ 8, |Σ| ≤ 3, |B| ≤ 3).
pub fn moore_differential(seed: u64, cases: usize, mode: Execution) -> SuiteReport {
    let outcomes = map_indexed(mode, cases, |case| {
        let m = random::moore(&mut case_rng(seed, case), 8, 3, 3);
        let brz = lift(brzozowski_minimise(&m), case)?;
        let refined = m.partition_refinement_minimise();
        check(brz.iso_check(&refined), || {
            format!(
                "case {case}: brzozowski {} states vs refinement {}",
                brz.n(),
                refined.n()
            )
        })?;
        check(lift(brz.equiv_exact(&m), case)?, || {
            format!("case {case}: brzozowski result not equivalent to input")
        })
    });
    SuiteReport::collect("moore-differential", outcomes)
}

/// The dual automaton reads words backwards, checked on all words up to `max_len`
/// on the same sample as [`moore_differential`].
pub fn language_reversal(seed: u64, cases: usize, max_len: usize, mode: Execution) -> SuiteReport {
    let outcomes = map_indexed(mode, cases, |case| {
        let m = random::moore(&mut case_rng(seed, case), 8, 3, 3);
        let dual = lift(dual_automaton(&m), case)?.automaton;
        for w in m.alphabet().words_up_to(max_len) {
            let lhs = lift(dual.run(&w), case)?;
            let rhs = lift(m.run(&reversed(&w)), case)?;
            check(lhs == rhs, || format!("case {case}: word {w:?} differs"))?;
        }
        Ok(())
    });
    SuiteReport::collect("language-reversal", outcomes)
}

fn series_agree<S: Semiring>(
    a: &WeightedAutomaton<S>,
    b: &WeightedAutomaton<S>,
    words: &[Vec<Letter>],
    case: usize,
) -> Result<(), String> {
    for w in words {
        let x = lift(a.eval_series(w), case)?;
        let y = lift(b.eval_series(w), case)?;
        check(x == y, || {
            format!("case {case}: series differ on {w:?}: {x} vs {y}")
        })?;
    }
    Ok(())
}

/// Over ℚ the minimal dimension equals the Hankel rank and the series is preserved
/// (n ≤ 4, entries in [-2, 2], |Σ| ≤ 2).
pub fn weighted_rational(seed: u64, cases: usize, mode: Execution) -> SuiteReport {
    let outcomes = map_indexed(mode, cases, |case| {
        let w = random::to_rational(&random::weighted_int(
            &mut case_rng(seed, case),
            4,
            2,
            -2,
            2,
        ));
        let min = lift(minimise_wa(&w), case)?;
        let rank = lift(hankel_rank_oracle(&w, 4), case)?;
        check(min.dim() == rank, || {
            format!(
                "case {case}: dimension {} but Hankel rank {rank}",
                min.dim()
            )
        })?;
        series_agree(&w, min.automaton(), &w.alphabet().words_up_to(6), case)
    });
    SuiteReport::collect("weighted-rational", outcomes)
}

/// Over ℤ: dimension bound, series preservation, idempotence and the ℚ-rank lower
/// bound (same sampling as [`weighted_rational`]).
pub fn weighted_integer(seed: u64, cases: usize, mode: Execution) -> SuiteReport {
    let outcomes = map_indexed(mode, cases, |case| {
        let w = random::weighted_int(&mut case_rng(seed, case), 4, 2, -2, 2);
        let min = lift(minimise_wa(&w), case)?;
        check(min.dim() <= w.dim(), || {
            format!(
                "case {case}: dimension grew from {} to {}",
                w.dim(),
                min.dim()
            )
        })?;
        series_agree(&w, min.automaton(), &w.alphabet().words_up_to(6), case)?;
        let again = lift(minimise_wa(min.automaton()), case)?;
        check(again.dim() == min.dim(), || {
            format!(
                "case {case}: not idempotent ({} then {})",
                min.dim(),
                again.dim()
            )
        })?;
        let rank = lift(hankel_rank_oracle(&w, w.dim()), case)?;
        check(rank <= min.dim(), || {
            format!(
                "case {case}: Hankel rank {rank} exceeds dimension {}",
                min.dim()
            )
        })
    });
    SuiteReport::collect("weighted-integer", outcomes)
}

/// HNF of random 4×4 matrices with entries in [-9, 9].
pub fn hnf_properties(seed: u64, cases: usize, mode: Execution) -> SuiteReport {
    let outcomes = map_indexed(mode, cases, |case| {
        let a = random::int_matrix(&mut case_rng(seed, case), 4, 4, -9, 9);
        let (h, u) = hnf(&a);
        check(lift(mat_mul(&u, &a), case)? == h, || {
            format!("case {case}: U·A != H")
        })?;
        check(determinant(&u).abs().is_one(), || {
            format!("case {case}: det U = {}", determinant(&u))
        })?;
        check(is_hnf(&h.row_vecs()), || {
            format!("case {case}: H not in canonical shape")
        })?;
        let basis = IntegerBasis::from_generators(&a);
        for r in 0..a.rows() {
            check(lift(basis.contains(a.row(r)), case)?, || {
                format!("case {case}: row {r} of A outside the lattice of H")
            })?;
        }
        Ok(())
    });
    SuiteReport::collect("hnf", outcomes)
}

/// Reverse DFA of random AFAs (n ≤ 3, |Σ| ≤ 2) reads words backwards, and the
/// minimal DFA matches partition refinement of the forward oracle DFA.
pub fn alternating(seed: u64, cases: usize, mode: Execution) -> SuiteReport {
    let outcomes = map_indexed(mode, cases, |case| {
        let afa = random::afa(&mut case_rng(seed, case), 3, 2);
        let rev = lift(afa.reverse_dfa(DEFAULT_MAX_AFA_STATES), case)?;
        for w in afa.alphabet().words_up_to(6) {
            let lhs = lift(rev.accepts(&w), case)?;
            let rhs = lift(afa.accepts(&reversed(&w)), case)?;
            check(lhs == rhs, || format!("case {case}: word {w:?} differs"))?;
        }
        let min = lift(afa.minimal_dfa(DEFAULT_MAX_AFA_STATES), case)?;
        let oracle = lift(afa_forward_dfa(&afa), case)?.partition_refinement_minimise();
        check(min.iso_check(&oracle), || {
            format!(
                "case {case}: minimal DFA {} states vs oracle {}",
                min.n(),
                oracle.n()
            )
        })
    });
    SuiteReport::collect("alternating", outcomes)
}

/// Atoms of the definable subsets against partition refinement on random models
/// (n ≤ 6, |Obs| ≤ 2, |Σ| ≤ 2), plus idempotence of the quotient.
pub fn dkm_quotient(seed: u64, cases: usize, mode: Execution) -> SuiteReport {
    let outcomes = map_indexed(mode, cases, |case| {
        let k = random::dkm(&mut case_rng(seed, case), 6, 2, 2);
        let atoms = boolean_atoms(&k.definable_closure(), k.n());
        check(atoms == k.bisimulation_oracle(), || {
            format!(
                "case {case}: atoms {:?} vs bisimulation {:?}",
                atoms.blocks(),
                k.bisimulation_oracle().blocks()
            )
        })?;
        let once = k.minimise();
        check(once.minimise().iso_check(&once), || {
            format!("case {case}: minimisation not idempotent")
        })
    });
    SuiteReport::collect("dkm-quotient", outcomes)
}

/// Definable subsets of a DFA seen as a one-observation model are the dual states.
pub fn coherence(seed: u64, cases: usize, mode: Execution) -> SuiteReport {
    let outcomes = map_indexed(mode, cases, |case| {
        let dfa = random::dfa(&mut case_rng(seed, case), 6, 2);
        let k = lift(Dkm::from_dfa(&dfa, "p"), case)?;
        let dual: BTreeSet<_> = lift(dual_state_sets(&dfa), case)?.into_iter().collect();
        check(k.definable_closure() == dual, || {
            format!("case {case}: definable closure differs from dual states")
        })
    });
    SuiteReport::collect("coherence", outcomes)
}

/// Every suite with `cases` cases each.
pub fn run_all(seed: u64, cases: usize, mode: Execution) -> Vec<SuiteReport> {
    vec![
        moore_differential(seed, cases, mode),
        language_reversal(seed, cases, 8, mode),
        weighted_rational(seed, cases, mode),
        weighted_integer(seed, cases, mode),
        hnf_properties(seed, cases, mode),
        alternating(seed, cases, mode),
        dkm_quotient(seed, cases, mode),
        coherence(seed, cases, mode),
        semiring_laws(seed, cases),
    ]
}

pub fn semiring_laws(seed: u64, samples: usize) -> SuiteReport {
    use crate::semiring::{check_semiring_laws, Boolean, Tropical};
    let reports = [
        check_semiring_laws::<Boolean>(samples, seed),
        check_semiring_laws::<Integer>(samples, seed),
        check_semiring_laws::<Rational>(samples, seed),
        check_semiring_laws::<Tropical>(samples, seed),
    ];
    SuiteReport {
        name: "semiring-laws",
        cases: samples * reports.len(),
        failures: reports
            .iter()
            .flat_map(|r| {
                r.violations
                    .iter()
                    .map(move |v| format!("{}: {} fails on {:?}", r.semiring, v.law, v.values))
            })
            .collect(),
    }
}
