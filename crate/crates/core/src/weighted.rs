//! Weighted automata over semirings.
//!
//! Matrices act on column vectors of state weights: `t_a[y][x]` is the weight of the
//! arc `x → y` on `a`, the initial vector `i` is a column and the final vector `f`
//! a row. The series value of `w = a₁…a_k` is `f · t_{a_k} ⋯ t_{a_1} · i`.
//!
//! Over ℚ and ℤ the minimal automaton is obtained by restricting to the reachable
//! submodule twice, with a transpose (reversal) before each restriction. Bases of
//! the reachable submodules are kept in canonical form (reduced echelon over ℚ,
//! Hermite normal form over ℤ).

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::automata::{Alphabet, Letter, Nfa, StateSet};
use crate::error::{Error, Result};
use crate::linalg::{ExactDomain, ModuleBasis};
use crate::semiring::{dot, mat_vec, Boolean, Matrix, Rational, Semiring, ToRational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedAutomaton<S: Semiring> {
    alphabet: Alphabet,
    trans: Vec<Matrix<S>>,
    initial: Vec<S>,
    final_: Vec<S>,
}

impl<S: Semiring> WeightedAutomaton<S> {
    pub fn new(
        alphabet: Alphabet,
        trans: Vec<Matrix<S>>,
        initial: Vec<S>,
        final_: Vec<S>,
    ) -> Result<Self> {
        let n = initial.len();
        if final_.len() != n {
            return Err(Error::dims("final vector", n, final_.len()));
        }
        if trans.len() != alphabet.len() {
            return Err(Error::dims(
                "transition matrices",
                alphabet.len(),
                trans.len(),
            ));
        }
        for (a, t) in trans.iter().enumerate() {
            if t.rows() != n || t.cols() != n {
                return Err(Error::dims(
                    format!("matrix for letter `{}`", alphabet.symbol(a)),
                    n,
                    if t.rows() != n { t.rows() } else { t.cols() },
                ));
            }
        }
        Ok(WeightedAutomaton {
            alphabet,
            trans,
            initial,
            final_,
        })
    }

    pub fn dim(&self) -> usize {
        self.initial.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn matrices(&self) -> &[Matrix<S>] {
        &self.trans
    }

    pub fn matrix(&self, letter: Letter) -> &Matrix<S> {
        &self.trans[letter]
    }

    pub fn initial(&self) -> &[S] {
        &self.initial
    }

    pub fn final_vector(&self) -> &[S] {
        &self.final_
    }

    /// State vector `t_{a_k} ⋯ t_{a_1} · i` after reading `word`.
    pub fn state_vector(&self, word: &[Letter]) -> Result<Vec<S>> {
        self.alphabet.check_word(word)?;
        word.iter()
            .try_fold(self.initial.clone(), |v, &a| mat_vec(&self.trans[a], &v))
    }

    /// Value of the recognised series at `word`.
    pub fn eval_series(&self, word: &[Letter]) -> Result<S> {
        dot(&self.final_, &self.state_vector(word)?)
    }

    /// Reversal by transposition: matrices transposed, initial and final swapped.
    /// The result computes the series at the reversed word.
    pub fn dual_wa(&self) -> Result<Self> {
        if !S::IS_RING {
            return Err(Error::UnsupportedSemiring {
                op: "dual_wa",
                semiring: S::NAME,
            });
        }
        Ok(WeightedAutomaton {
            alphabet: self.alphabet.clone(),
            trans: self.trans.iter().map(Matrix::transpose).collect(),
            initial: self.final_.clone(),
            final_: self.initial.clone(),
        })
    }
}

impl WeightedAutomaton<Boolean> {
    /// The NFA with an arc `x → y` wherever `t_a[y][x] = 1`.
    pub fn to_nfa(&self) -> Nfa {
        let n = self.dim();
        let trans = self
            .trans
            .iter()
            .map(|t| {
                (0..n)
                    .map(|x| (0..n).filter(|&y| t.get(y, x).0).collect())
                    .collect()
            })
            .collect();
        let support = |v: &[Boolean]| -> StateSet { (0..n).filter(|&s| v[s].0).collect() };
        Nfa::new(
            self.alphabet.clone(),
            n,
            trans,
            support(&self.initial),
            support(&self.final_),
        )
        .expect("well formed by construction")
    }

    pub fn from_nfa(nfa: &Nfa) -> Self {
        let n = nfa.n();
        let trans = nfa
            .transitions()
            .iter()
            .map(|row| {
                let mut m = Matrix::zeros(n, n);
                for (x, targets) in row.iter().enumerate() {
                    for y in targets.iter() {
                        m.set(y, x, Boolean(true));
                    }
                }
                m
            })
            .collect();
        let indicator = |set: &StateSet| (0..n).map(|s| Boolean(set.contains(s))).collect();
        WeightedAutomaton {
            alphabet: nfa.alphabet().clone(),
            trans,
            initial: indicator(nfa.inits()),
            final_: indicator(nfa.finals()),
        }
    }
}

/// A weighted automaton living on a submodule of another automaton's state space.
///
/// With `B` the matrix whose rows are `basis.rows()`, the restricted automaton
/// `(t', i', f')` satisfies `t_a · Bᵀ = Bᵀ · t'_a`, `i = Bᵀ · i'` and `f' = f · Bᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedWa<S: ExactDomain> {
    pub automaton: WeightedAutomaton<S>,
    pub basis: S::Basis,
}

/// Restriction to the submodule generated by the initial vector under all
/// transition matrices.
pub fn reach_restrict<S: ExactDomain>(w: &WeightedAutomaton<S>) -> Result<RestrictedWa<S>> {
    let n = w.dim();
    let mut basis = S::Basis::empty(n);
    let mut pending = vec![w.initial.clone()];
    // a generator already in the span needs no expansion: its images are combinations
    // of images of earlier generators
    while let Some(v) = pending.pop() {
        if basis.insert(&v)? {
            for t in &w.trans {
                pending.push(mat_vec(t, &v)?);
            }
        }
    }

    let coords = |v: &[S]| -> Vec<S> {
        basis
            .coordinates(v)
            .expect("dimensions agree")
            .expect("reachable submodule is closed under every transition")
    };
    let r = basis.rank();
    let mut trans = Vec::with_capacity(w.trans.len());
    for t in &w.trans {
        let mut m = Matrix::zeros(r, r);
        for (j, b) in basis.rows().iter().enumerate() {
            for (k, c) in coords(&mat_vec(t, b)?).into_iter().enumerate() {
                m.set(k, j, c);
            }
        }
        trans.push(m);
    }
    let initial = coords(&w.initial);
    let final_ = basis
        .rows()
        .iter()
        .map(|b| dot(&w.final_, b))
        .collect::<Result<Vec<_>>>()?;
    let automaton = WeightedAutomaton::new(w.alphabet.clone(), trans, initial, final_)?;
    Ok(RestrictedWa { automaton, basis })
}

/// Both restriction stages of a minimisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimisedWa<S: ExactDomain> {
    /// Restriction of the reversed input; its basis lives in the input's coordinates.
    pub observable: RestrictedWa<S>,
    /// Restriction of the reversed `observable` automaton; this is the result.
    pub reachable: RestrictedWa<S>,
}

impl<S: ExactDomain> MinimisedWa<S> {
    pub fn automaton(&self) -> &WeightedAutomaton<S> {
        &self.reachable.automaton
    }

    pub fn dim(&self) -> usize {
        self.reachable.automaton.dim()
    }
}

/// Reverse, restrict to the reachable submodule, reverse, restrict again.
pub fn minimise_wa<S: ExactDomain>(w: &WeightedAutomaton<S>) -> Result<MinimisedWa<S>> {
    let observable = reach_restrict(&w.dual_wa()?)?;
    let reachable = reach_restrict(&observable.automaton.dual_wa()?)?;
    Ok(MinimisedWa {
        observable,
        reachable,
    })
}

/// Rank over ℚ of the Hankel block `H[u][v] = series(u·v)` for all words with
/// `|u|, |v| ≤ max_len`.
pub fn hankel_rank_oracle<S: ToRational>(
    w: &WeightedAutomaton<S>,
    max_len: usize,
) -> Result<usize> {
    let words = w.alphabet.words_up_to(max_len);
    let mut block = Vec::with_capacity(words.len());
    for u in &words {
        let mut row = Vec::with_capacity(words.len());
        for v in &words {
            let uv: Vec<Letter> = u.iter().chain(v).copied().collect();
            row.push(w.eval_series(&uv)?.to_rational());
        }
        block.push(row);
    }
    Ok(rational_rank(&block))
}

/// Rank of a rational matrix by fraction-free elimination on integer rows.
pub(crate) fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &pivot_row[c] - &factor * y;
            }
            let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if g > BigInt::one() {
                for x in row.iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        rank += 1;
    }
    debug_assert!(m.iter().skip(rank).all(|r| r.iter().all(Zero::is_zero)));
    rank
}
