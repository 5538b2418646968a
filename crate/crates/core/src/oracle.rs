//! Reference computations that deliberately avoid the main construction paths.
//! The differential suites compare the library against these.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::alternating::{AlternatingAutomaton, BoolFun};
use crate::automata::{Letter, MooreAutomaton, Nfa};
use crate::error::Result;
use crate::semiring::{Integer, Matrix};

/// Determinant of a square integer matrix by Bareiss fraction-free elimination.
pub fn determinant(m: &Matrix<Integer>) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|r| m.row(r).iter().map(|x| x.0.clone()).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// NFA acceptance by exhaustive enumeration of runs.
pub fn nfa_accepts_by_runs(nfa: &Nfa, word: &[Letter]) -> bool {
    fn go(nfa: &Nfa, state: usize, rest: &[Letter]) -> bool {
        match rest.split_first() {
            None => nfa.finals().contains(state),
            Some((&a, tail)) => nfa.successors(a, state).iter().any(|t| go(nfa, t, tail)),
        }
    }
    nfa.inits().iter().any(|s| go(nfa, s, word))
}

/// A forward DFA for the language of an AFA, built from its definition.
///
/// After a prefix `u` the remaining behaviour is the Boolean function
/// `h_u = ι ∘ δ'_u`; reading `a` gives `h_{ua}(A) = h_u({s | δ_a(s)(A)})`, and the
/// state accepts when `h_u(F)` holds. Only the functions reachable from `ι` are built.
pub fn afa_forward_dfa(afa: &AlternatingAutomaton) -> Result<MooreAutomaton> {
    let n = afa.n();
    let letters = afa.alphabet().len();
    let step = |mask: u32, a: Letter| -> u32 {
        (0..n)
            .filter(|&s| afa.delta(a, s).eval(mask))
            .fold(0, |m, s| m | 1 << s)
    };
    let mut index: HashMap<BoolFun, usize> = HashMap::new();
    let mut funs = vec![afa.iota().clone()];
    index.insert(afa.iota().clone(), 0);
    let mut trans = vec![Vec::new(); letters];
    let mut head = 0;
    while head < funs.len() {
        for (a, row) in trans.iter_mut().enumerate() {
            let h = &funs[head];
            let next = BoolFun::from_fn(n, |mask| h.eval(step(mask, a)))?;
            let id = *index.entry(next.clone()).or_insert_with(|| {
                funs.push(next);
                funs.len() - 1
            });
            row.push(id);
        }
        head += 1;
    }
    let accepting: Vec<bool> = funs.iter().map(|h| h.eval(afa.finals())).collect();
    MooreAutomaton::dfa(afa.alphabet().clone(), trans, 0, &accepting)
}
