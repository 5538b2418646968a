//! Seeded generators for random automata used by the differential suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alternating::{AlternatingAutomaton, BoolFun};
use crate::automata::{Alphabet, MooreAutomaton};
use crate::dkm::Dkm;
use crate::semiring::{Integer, Matrix, Rational};
use crate::weighted::WeightedAutomaton;

/// Independent stream `case` of the generator seeded with `seed`.
pub fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng
}

fn table<R: Rng + ?Sized>(rng: &mut R, letters: usize, n: usize) -> Vec<Vec<usize>> {
    (0..letters)
        .map(|_| (0..n).map(|_| rng.gen_range(0..n)).collect())
        .collect()
}

/// Moore automaton with `1..=max_n` states, `1..=max_letters` letters and
/// `1..=max_outputs` output values labelled `o0, o1, …`.
pub fn moore<R: Rng + ?Sized>(
    rng: &mut R,
    max_n: usize,
    max_letters: usize,
    max_outputs: usize,
) -> MooreAutomaton {
    let n = rng.gen_range(1..=max_n);
    let letters = rng.gen_range(1..=max_letters);
    let outputs = rng.gen_range(1..=max_outputs);
    let trans = table(rng, letters, n);
    let out = (0..n).map(|_| rng.gen_range(0..outputs)).collect();
    let init = rng.gen_range(0..n);
    MooreAutomaton::new(
        Alphabet::letters(letters),
        (0..outputs).map(|k| format!("o{k}")).collect(),
        trans,
        init,
        out,
    )
    .expect("generated automaton is well formed")
}

pub fn dfa<R: Rng + ?Sized>(rng: &mut R, max_n: usize, max_letters: usize) -> MooreAutomaton {
    let n = rng.gen_range(1..=max_n);
    let letters = rng.gen_range(1..=max_letters);
    let trans = table(rng, letters, n);
    let accepting: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
    let init = rng.gen_range(0..n);
    MooreAutomaton::dfa(Alphabet::letters(letters), trans, init, &accepting)
        .expect("generated automaton is well formed")
}

pub fn int_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    lo: i64,
    hi: i64,
) -> Matrix<Integer> {
    let data = (0..rows * cols)
        .map(|_| Integer::from(rng.gen_range(lo..=hi)))
        .collect();
    Matrix::new(rows, cols, data).expect("sized by construction")
}

/// Integer weighted automaton with `1..=max_n` states and entries in `[lo, hi]`.
pub fn weighted_int<R: Rng + ?Sized>(
    rng: &mut R,
    max_n: usize,
    max_letters: usize,
    lo: i64,
    hi: i64,
) -> WeightedAutomaton<Integer> {
    let n = rng.gen_range(1..=max_n);
    let letters = rng.gen_range(1..=max_letters);
    // sparsify a little so that nontrivial reductions show up
    let entry = |rng: &mut R| {
        if rng.gen_bool(0.3) {
            Integer::from(0)
        } else {
            Integer::from(rng.gen_range(lo..=hi))
        }
    };
    let trans = (0..letters)
        .map(|_| {
            let data = (0..n * n).map(|_| entry(rng)).collect();
            Matrix::new(n, n, data).expect("sized by construction")
        })
        .collect();
    let initial = (0..n).map(|_| entry(rng)).collect();
    let final_ = (0..n).map(|_| entry(rng)).collect();
    WeightedAutomaton::new(Alphabet::letters(letters), trans, initial, final_)
        .expect("generated automaton is well formed")
}

pub fn to_rational(w: &WeightedAutomaton<Integer>) -> WeightedAutomaton<Rational> {
    let conv = |v: &[Integer]| v.iter().map(|x| Rational::from(x.clone())).collect();
    WeightedAutomaton::new(
        w.alphabet().clone(),
        w.matrices()
            .iter()
            .map(|m| m.map(|x| Rational::from(x.clone())))
            .collect(),
        conv(w.initial()),
        conv(w.final_vector()),
    )
    .expect("same shape")
}

/// AFA with `1..=max_n` states and uniformly random Boolean functions.
pub fn afa<R: Rng + ?Sized>(rng: &mut R, max_n: usize, max_letters: usize) -> AlternatingAutomaton {
    let n = rng.gen_range(1..=max_n);
    let letters = rng.gen_range(1..=max_letters);
    let fun = |rng: &mut R| BoolFun::from_fn(n, |_| rng.gen()).expect("small n");
    let delta = (0..letters)
        .map(|_| (0..n).map(|_| fun(rng)).collect())
        .collect();
    let iota = fun(rng);
    let finals = rng.gen_range(0..1u32 << n);
    AlternatingAutomaton::new(Alphabet::letters(letters), n, delta, iota, finals)
        .expect("generated automaton is well formed")
}

/// Kripke model with `1..=max_n` states, `1..=max_obs` observations and
/// `1..=max_letters` letters.
pub fn dkm<R: Rng + ?Sized>(rng: &mut R, max_n: usize, max_obs: usize, max_letters: usize) -> Dkm {
    let n = rng.gen_range(1..=max_n);
    let obs = rng.gen_range(1..=max_obs);
    let letters = rng.gen_range(1..=max_letters);
    let gamma = (0..n)
        .map(|_| (0..obs).filter(|_| rng.gen()).collect())
        .collect();
    let delta = table(rng, letters, n);
    let initial = Some(rng.gen_range(0..n));
    Dkm::new(
        Alphabet::letters(letters),
        (0..obs).map(|k| format!("p{k}")).collect(),
        gamma,
        delta,
        initial,
    )
    .expect("generated model is well formed")
}
