use std::collections::BTreeSet;

use num_traits::{One, Signed};
use proptest::collection::vec;
use proptest::prelude::*;

use dualmin::alternating::DEFAULT_MAX_AFA_STATES;
use dualmin::automata::{reversed, Alphabet, Letter, MooreAutomaton, Nfa, StateSet};
use dualmin::brzozowski::{brzozowski_minimise, dual_automaton};
use dualmin::dkm::{Dkm, TraceFormula};
use dualmin::io::{self, AnyWeighted, Automaton, Document};
use dualmin::linalg::{hnf, is_hnf, FieldBasis, IntegerBasis, ModuleBasis};
use dualmin::oracle::{determinant, nfa_accepts_by_runs};
use dualmin::random::{self, case_rng};
use dualmin::semiring::{
    check_semiring_laws, mat_mul, Boolean, Integer, Matrix, Rational, Tropical,
};
use dualmin::weighted::{reach_restrict, WeightedAutomaton};

fn int_matrix(
    max_rows: usize,
    max_cols: usize,
    bound: i64,
) -> impl Strategy<Value = Matrix<Integer>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        vec(-bound..=bound, r * c).prop_map(move |d| {
            Matrix::new(r, c, d.into_iter().map(Integer::from).collect()).unwrap()
        })
    })
}

fn square(n: usize, bound: i64) -> impl Strategy<Value = Matrix<Integer>> {
    vec(-bound..=bound, n * n)
        .prop_map(move |d| Matrix::new(n, n, d.into_iter().map(Integer::from).collect()).unwrap())
}

fn tropical_square(n: usize) -> impl Strategy<Value = Matrix<Tropical>> {
    vec(
        prop_oneof![1 => Just(None), 4 => (0u64..20).prop_map(Some)],
        n * n,
    )
    .prop_map(move |d| {
        let data = d
            .into_iter()
            .map(|x| x.map_or(Tropical::Infinity, Tropical::finite))
            .collect();
        Matrix::new(n, n, data).unwrap()
    })
}

/// Letters drawn from `0..8`, reduced modulo the alphabet size at use.
fn raw_word() -> impl Strategy<Value = Vec<usize>> {
    vec(0usize..8, 0..8)
}

fn fit(word: &[usize], letters: usize) -> Vec<Letter> {
    word.iter().map(|&a| a % letters).collect()
}

fn nfa() -> impl Strategy<Value = Nfa> {
    (1usize..=4, 1usize..=2).prop_flat_map(|(n, letters)| {
        let full = 1u64 << n;
        (vec(0..full, n * letters), 0..full, 0..full).prop_map(move |(succ, inits, finals)| {
            let trans = (0..letters)
                .map(|a| {
                    (0..n)
                        .map(|s| StateSet::from_mask(succ[a * n + s], n))
                        .collect()
                })
                .collect();
            Nfa::new(
                Alphabet::letters(letters),
                n,
                trans,
                StateSet::from_mask(inits, n),
                StateSet::from_mask(finals, n),
            )
            .unwrap()
        })
    })
}

fn permuted(m: &MooreAutomaton, perm: &[usize]) -> MooreAutomaton {
    let n = m.n();
    let mut inv = vec![0; n];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    let trans = m
        .transitions()
        .iter()
        .map(|row| (0..n).map(|new| perm[row[inv[new]]]).collect())
        .collect();
    let out = (0..n).map(|new| m.output(inv[new])).collect();
    MooreAutomaton::new(
        m.alphabet().clone(),
        m.outputs().to_vec(),
        trans,
        perm[m.init()],
        out,
    )
    .unwrap()
}

/// Every DFA with `k` states over `letters` letters, started in state 0.
fn all_dfas(k: usize, letters: usize) -> Vec<MooreAutomaton> {
    let cells = k * letters;
    let mut out = Vec::new();
    for code in 0..k.pow(cells as u32) {
        let mut c = code;
        let mut flat = Vec::with_capacity(cells);
        for _ in 0..cells {
            flat.push(c % k);
            c /= k;
        }
        let trans: Vec<Vec<usize>> = flat.chunks(k).map(<[usize]>::to_vec).collect();
        for fin in 0..1u32 << k {
            let accepting: Vec<bool> = (0..k).map(|s| fin >> s & 1 == 1).collect();
            out.push(
                MooreAutomaton::dfa(Alphabet::letters(letters), trans.clone(), 0, &accepting)
                    .unwrap(),
            );
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hnf_transform_shape_and_idempotence(a in int_matrix(5, 5, 20)) {
        let (h, u) = hnf(&a);
        prop_assert_eq!(mat_mul(&u, &a).unwrap(), h.clone());
        prop_assert!(determinant(&u).abs().is_one());
        prop_assert!(is_hnf(&h.row_vecs()));
        prop_assert_eq!(hnf(&h).0, h);
    }

    #[test]
    fn integer_coordinates_are_sound(a in int_matrix(4, 4, 9), coeffs in vec(-5i64..=5, 4), noise in vec(-3i64..=3, 4)) {
        let basis = IntegerBasis::from_generators(&a);
        let mut v = vec![Integer::from(0); a.cols()];
        for (r, c) in coeffs.iter().take(a.rows()).enumerate() {
            for (x, y) in v.iter_mut().zip(a.row(r)) {
                x.0 += &y.0 * c;
            }
        }
        let x = basis.coordinates(&v).unwrap();
        prop_assert!(x.is_some(), "lattice combination not found");
        prop_assert_eq!(basis.combine(&x.unwrap()), v.clone());
        let w: Vec<Integer> = v.iter().zip(&noise).map(|(x, &e)| Integer(x.0.clone() + e)).collect();
        if let Some(y) = basis.coordinates(&w).unwrap() {
            prop_assert_eq!(basis.combine(&y), w);
        }
    }

    #[test]
    fn field_coordinates_are_sound(a in int_matrix(4, 4, 5), target in vec(-5i64..=5, 4)) {
        let rows: Vec<Vec<Rational>> = a.row_vecs().iter()
            .map(|r| r.iter().map(|x| Rational::from(x.clone())).collect())
            .collect();
        let basis = FieldBasis::from_generators(a.cols(), rows.iter().map(Vec::as_slice)).unwrap();
        for r in &rows {
            prop_assert!(basis.contains(r).unwrap());
        }
        let t: Vec<Rational> = target.iter().take(a.cols()).map(|&x| Rational::from_integer(x)).collect();
        if let Some(c) = basis.coordinates(&t).unwrap() {
            prop_assert_eq!(basis.combine(&c), t);
        }
    }

    #[test]
    fn integer_mat_mul_associates((a, b, c) in (1usize..4).prop_flat_map(|n| (square(n, 7), square(n, 7), square(n, 7)))) {
        let left = mat_mul(&mat_mul(&a, &b).unwrap(), &c).unwrap();
        let right = mat_mul(&a, &mat_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn tropical_mat_mul_associates(a in tropical_square(3), b in tropical_square(3), c in tropical_square(3)) {
        let left = mat_mul(&mat_mul(&a, &b).unwrap(), &c).unwrap();
        let right = mat_mul(&a, &mat_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reach_preserves_runs(seed in any::<u64>(), w in raw_word()) {
        let m = random::moore(&mut case_rng(seed, 0), 8, 3, 3);
        let w = fit(&w, m.alphabet().len());
        let r = m.reach();
        prop_assert_eq!(r.run_label(&w).unwrap(), m.run_label(&w).unwrap());
    }

    #[test]
    fn determinise_agrees_with_runs(n in nfa(), w in raw_word()) {
        let w = fit(&w, n.alphabet().len());
        let d = n.determinise();
        prop_assert_eq!(d.accepts(&w).unwrap(), nfa_accepts_by_runs(&n, &w));
        prop_assert_eq!(n.accepts(&w).unwrap(), nfa_accepts_by_runs(&n, &w));
        let rev = n.reverse();
        prop_assert_eq!(rev.accepts(&reversed(&w)).unwrap(), nfa_accepts_by_runs(&n, &w));
    }

    #[test]
    fn boolean_weighted_matches_nfa(n in nfa(), w in raw_word()) {
        let w = fit(&w, n.alphabet().len());
        let wa = WeightedAutomaton::<Boolean>::from_nfa(&n);
        prop_assert_eq!(wa.eval_series(&w).unwrap().0, nfa_accepts_by_runs(&n, &w));
        prop_assert_eq!(wa.to_nfa(), n);
    }

    #[test]
    fn isomorphic_automata_are_equivalent(seed in any::<u64>(), shuffle in any::<u64>()) {
        let m = random::moore(&mut case_rng(seed, 0), 8, 3, 3);
        let mut perm: Vec<usize> = (0..m.n()).collect();
        let mut rng = case_rng(shuffle, 1);
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        let p = permuted(&m, &perm);
        prop_assert!(p.iso_check(&m));
        prop_assert!(p.equiv_exact(&m).unwrap());
        prop_assert!(brzozowski_minimise(&p).unwrap().iso_check(&brzozowski_minimise(&m).unwrap()));
    }

    #[test]
    fn brzozowski_is_minimal_exhaustively(seed in any::<u64>()) {
        let m = random::dfa(&mut case_rng(seed, 0), 3, 2);
        let min = brzozowski_minimise(&m).unwrap();
        prop_assert!(min.equiv_exact(&m).unwrap());
        for k in 1..min.n() {
            for candidate in all_dfas(k, m.alphabet().len()) {
                prop_assert!(!candidate.equiv_exact(&m).unwrap(), "{k}-state DFA is equivalent");
            }
        }
    }

    #[test]
    fn minimal_automata_are_observable_and_self_dual(seed in any::<u64>()) {
        let m = random::moore(&mut case_rng(seed, 0), 8, 3, 3);
        let min = brzozowski_minimise(&m).unwrap();
        prop_assert_eq!(min.behaviour_partition().block_count(), min.n());
        prop_assert_eq!(min.reach().n(), min.n());
        let twice = dual_automaton(&dual_automaton(&min).unwrap().automaton).unwrap().automaton;
        prop_assert!(twice.iso_check(&min));
    }

    #[test]
    fn definable_closure_is_closed(seed in any::<u64>()) {
        let k = random::dkm(&mut case_rng(seed, 0), 6, 2, 2);
        let family = k.definable_closure();
        for p in 0..k.observations().len() {
            let phi = TraceFormula { word: Vec::new(), obs: p };
            prop_assert!(family.contains(&k.eval_trace(&phi).unwrap()));
        }
        for set in &family {
            for a in 0..k.alphabet().len() {
                prop_assert!(family.contains(&k.preimage(a, set)));
            }
        }
        let min = k.minimise();
        prop_assert_eq!(min.n(), k.bisimulation_oracle().block_count());
    }

    #[test]
    fn trace_formulas_follow_runs(seed in any::<u64>(), w in raw_word()) {
        let m = random::dfa(&mut case_rng(seed, 0), 6, 2);
        let w = fit(&w, m.alphabet().len());
        let k = Dkm::from_dfa(&m, "p").unwrap();
        let got = k.eval_trace(&TraceFormula { word: w.clone(), obs: 0 }).unwrap();
        let expected: StateSet = (0..m.n())
            .filter(|&s| m.output(m.state_after(s, &w).unwrap()) == 1)
            .collect();
        prop_assert_eq!(got, expected);
        let text = k.render_formula(&TraceFormula { word: w.clone(), obs: 0 });
        prop_assert_eq!(k.parse_formula(&text).unwrap().word, w);
    }

    #[test]
    fn weighted_dual_reverses_words(seed in any::<u64>(), w in raw_word()) {
        let wa = random::weighted_int(&mut case_rng(seed, 0), 4, 2, -3, 3);
        let w = fit(&w, wa.alphabet().len());
        let d = wa.dual_wa().unwrap();
        prop_assert_eq!(d.eval_series(&w).unwrap(), wa.eval_series(&reversed(&w)).unwrap());
        prop_assert_eq!(d.dual_wa().unwrap(), wa);
    }

    #[test]
    fn reachable_restriction_preserves_series(seed in any::<u64>(), w in raw_word()) {
        let wa = random::weighted_int(&mut case_rng(seed, 0), 4, 2, -2, 2);
        let w = fit(&w, wa.alphabet().len());
        let r = reach_restrict(&wa).unwrap();
        prop_assert!(r.automaton.dim() <= wa.dim());
        prop_assert_eq!(r.automaton.eval_series(&w).unwrap(), wa.eval_series(&w).unwrap());
        let q = reach_restrict(&random::to_rational(&wa)).unwrap();
        prop_assert_eq!(q.automaton.dim(), r.automaton.dim());
    }

    #[test]
    fn alternating_reverse_dfa_reads_backwards(seed in any::<u64>(), w in raw_word()) {
        let a = random::afa(&mut case_rng(seed, 0), 4, 2);
        let w = fit(&w, a.alphabet().len());
        let rev = a.reverse_dfa(DEFAULT_MAX_AFA_STATES).unwrap();
        prop_assert_eq!(rev.accepts(&w).unwrap(), a.accepts(&reversed(&w)).unwrap());
        let min = a.minimal_dfa(DEFAULT_MAX_AFA_STATES).unwrap();
        prop_assert_eq!(min.accepts(&w).unwrap(), a.accepts(&w).unwrap());
    }

    #[test]
    fn files_round_trip(seed in any::<u64>()) {
        let rng = &mut case_rng(seed, 0);
        let wa = random::weighted_int(rng, 4, 2, -2, 2);
        let docs = [
            Automaton::Moore(random::moore(rng, 6, 3, 3)),
            Automaton::Moore(random::dfa(rng, 6, 3)),
            Automaton::Weighted(AnyWeighted::Rational(random::to_rational(&wa))),
            Automaton::Weighted(AnyWeighted::Int(wa)),
            Automaton::Afa(random::afa(rng, 3, 2)),
            Automaton::Dkm(random::dkm(rng, 5, 2, 2)),
        ];
        for a in docs {
            let doc = Document::new(a);
            prop_assert_eq!(io::parse(&io::emit(&doc)).unwrap(), doc);
        }
    }

    #[test]
    fn semiring_laws_hold(seed in any::<u64>()) {
        prop_assert!(check_semiring_laws::<Boolean>(16, seed).passed());
        prop_assert!(check_semiring_laws::<Integer>(16, seed).passed());
        prop_assert!(check_semiring_laws::<Rational>(16, seed).passed());
        prop_assert!(check_semiring_laws::<Tropical>(16, seed).passed());
    }
}

#[test]
fn dual_states_of_a_dfa_are_distinct_subsets() {
    for case in 0..50 {
        let m = random::dfa(&mut case_rng(11, case), 6, 2);
        let sets = dualmin::brzozowski::dual_state_sets(&m).unwrap();
        let distinct: BTreeSet<_> = sets.iter().cloned().collect();
        assert_eq!(distinct.len(), sets.len());
    }
}
