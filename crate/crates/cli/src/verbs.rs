use std::collections::VecDeque;
use std::fmt;
use std::path::{Path, PathBuf};

use serde_json::Value;

use dualmin::alternating::{AlternatingAutomaton, HARD_MAX_AFA_STATES};
use dualmin::automata::{Letter, MooreAutomaton, Nfa, Partition, StateSet, DFA_OUTPUTS};
use dualmin::brzozowski::{brzozowski_minimise_bounded, dual_automaton_bounded};
use dualmin::dkm::{boolean_atoms, Dkm};
use dualmin::exec::Execution;
use dualmin::io::{self, AnyWeighted, Automaton, Document};
use dualmin::linalg::ExactDomain;
use dualmin::oracle::afa_forward_dfa;
use dualmin::semiring::{Boolean, Integer, Rational, Semiring, SemiringKind, ToRational, Tropical};
use dualmin::weighted::{hankel_rank_oracle, minimise_wa, reach_restrict, WeightedAutomaton};
use dualmin::{selftest as suites, Error};

use crate::{Method, GUARD, INVALID};

pub struct Context {
    pub max_states: usize,
    pub semiring: Option<SemiringKind>,
}

pub enum Outcome {
    Output(String),
    Verdict { text: String, positive: bool },
}

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Read(PathBuf, std::io::Error),
    Usage(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::StateBound { .. }) => GUARD,
            _ => INVALID,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Read(path, e) => write!(f, "cannot read {}: {e}", path.display()),
            Failure::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type VerbResult = Result<Outcome, Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn unsupported<T>(op: &'static str, semiring: SemiringKind) -> Result<T, Failure> {
    Err(Error::UnsupportedSemiring {
        op,
        semiring: semiring.name(),
    }
    .into())
}

fn load(ctx: &Context, path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Read(path.to_path_buf(), e))?;
    Ok(io::parse_with(&text, ctx.semiring)?)
}

fn line(text: impl fmt::Display) -> Outcome {
    Outcome::Output(format!("{text}\n"))
}

fn emit(automaton: Automaton, states: Option<Vec<String>>) -> VerbResult {
    let doc = match states {
        Some(names) => Document::with_states(automaton, names)?,
        None => Document::new(automaton),
    };
    Ok(Outcome::Output(io::emit(&doc)))
}

fn set_name(states: &[String], set: impl IntoIterator<Item = usize>) -> String {
    let parts: Vec<&str> = set.into_iter().map(|s| states[s].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

fn mask_name(states: &[String], mask: usize) -> String {
    set_name(states, (0..states.len()).filter(|s| mask >> s & 1 == 1))
}

fn accept_label(accepted: bool) -> &'static str {
    DFA_OUTPUTS[usize::from(accepted)]
}

/// Weighted automata of the four semirings, rewrapped after a generic operation.
trait Wrap: Semiring + Sized {
    fn wrap(w: WeightedAutomaton<Self>) -> AnyWeighted;
}

impl Wrap for Boolean {
    fn wrap(w: WeightedAutomaton<Self>) -> AnyWeighted {
        AnyWeighted::Bool(w)
    }
}

impl Wrap for Integer {
    fn wrap(w: WeightedAutomaton<Self>) -> AnyWeighted {
        AnyWeighted::Int(w)
    }
}

impl Wrap for Rational {
    fn wrap(w: WeightedAutomaton<Self>) -> AnyWeighted {
        AnyWeighted::Rational(w)
    }
}

impl Wrap for Tropical {
    fn wrap(w: WeightedAutomaton<Self>) -> AnyWeighted {
        AnyWeighted::Tropical(w)
    }
}

fn weighted<S: Wrap>(w: WeightedAutomaton<S>) -> Automaton {
    Automaton::Weighted(S::wrap(w))
}

/// A Moore automaton as a Kripke model whose observations are the output labels.
fn moore_to_dkm(m: &MooreAutomaton) -> Result<Dkm, Failure> {
    let gamma = (0..m.n()).map(|s| vec![m.output(s)]).collect();
    Ok(Dkm::new(
        m.alphabet().clone(),
        m.outputs().to_vec(),
        gamma,
        m.transitions().to_vec(),
        Some(m.init()),
    )?)
}

fn dkm_to_moore(k: &Dkm) -> Result<MooreAutomaton, Failure> {
    let init = k
        .initial()
        .ok_or_else(|| Failure::Usage("Kripke model has no initial state".into()))?;
    let out = (0..k.n()).map(|s| k.gamma(s)[0]).collect();
    Ok(MooreAutomaton::new(
        k.alphabet().clone(),
        k.observations().to_vec(),
        k.transitions().to_vec(),
        init,
        out,
    )?)
}

/// Kripke model view used by the trace-logic verbs.
fn as_dkm(doc: &Document, verb: &str) -> Result<Dkm, Failure> {
    match &doc.automaton {
        Automaton::Dkm(k) => Ok(k.clone()),
        Automaton::Moore(m) => moore_to_dkm(m),
        other => usage(format!(
            "{verb} needs a Kripke model or Moore automaton, got {}",
            other.type_name()
        )),
    }
}

fn afa_guard(ctx: &Context, afa: &AlternatingAutomaton) -> Result<(), Failure> {
    let n = afa.n();
    if n > HARD_MAX_AFA_STATES || 1usize << n > ctx.max_states {
        return Err(Error::StateBound {
            what: format!("alternating automaton with {n} states (2^{n} subsets)"),
            limit: ctx.max_states,
        }
        .into());
    }
    Ok(())
}

fn afa_reverse(ctx: &Context, afa: &AlternatingAutomaton, states: &[String]) -> VerbResult {
    afa_guard(ctx, afa)?;
    let (rev, order) = afa.reverse_dfa(HARD_MAX_AFA_STATES)?.reach_with_map();
    let names = order.iter().map(|&m| mask_name(states, m)).collect();
    emit(Automaton::Moore(rev), Some(names))
}

fn moore_dual(ctx: &Context, m: &MooreAutomaton, states: &[String]) -> VerbResult {
    let dual = dual_automaton_bounded(m, ctx.max_states)?;
    let names = dual
        .states
        .iter()
        .map(|phi| {
            if m.is_dfa() {
                set_name(states, (0..phi.len()).filter(|&s| phi[s] == 1))
            } else {
                let labels: Vec<&str> = phi.iter().map(|&o| m.outputs()[o].as_str()).collect();
                format!("({})", labels.join(","))
            }
        })
        .collect();
    emit(Automaton::Moore(dual.automaton), Some(names))
}

fn nfa_of(w: &AnyWeighted) -> Option<Nfa> {
    match w {
        AnyWeighted::Bool(w) => Some(w.to_nfa()),
        _ => None,
    }
}

pub fn run(ctx: &Context, file: &Path, word: &str) -> VerbResult {
    let doc = load(ctx, file)?;
    let w = doc.automaton.alphabet().parse_word(word)?;
    let text = match &doc.automaton {
        Automaton::Moore(m) => m.run_label(&w)?.to_string(),
        Automaton::Nfa(n) => accept_label(n.accepts(&w)?).to_string(),
        Automaton::Weighted(aw) => match aw {
            AnyWeighted::Bool(x) => x.eval_series(&w)?.to_string(),
            AnyWeighted::Int(x) => x.eval_series(&w)?.to_string(),
            AnyWeighted::Rational(x) => x.eval_series(&w)?.to_string(),
            AnyWeighted::Tropical(x) => x.eval_series(&w)?.to_string(),
        },
        Automaton::Afa(a) => accept_label(a.accepts(&w)?).to_string(),
        Automaton::Dkm(k) => {
            let Some(init) = k.initial() else {
                return usage("run on a Kripke model needs an initial state");
            };
            let end = w.iter().fold(init, |s, &a| k.transitions()[a][s]);
            doc.states[end].clone()
        }
    };
    Ok(line(text))
}

fn reverse_weighted<S: Wrap>(w: &WeightedAutomaton<S>) -> Result<Automaton, Failure> {
    Ok(weighted(w.dual_wa()?))
}

/// Transposed weighted automaton; Boolean ones are reversed as NFAs.
fn reverse_any(aw: &AnyWeighted) -> Result<Automaton, Failure> {
    match aw {
        AnyWeighted::Bool(w) => Ok(weighted(WeightedAutomaton::from_nfa(&w.to_nfa().reverse()))),
        AnyWeighted::Int(w) => reverse_weighted(w),
        AnyWeighted::Rational(w) => reverse_weighted(w),
        AnyWeighted::Tropical(w) => reverse_weighted(w),
    }
}

pub fn reverse(ctx: &Context, file: &Path) -> VerbResult {
    let doc = load(ctx, file)?;
    let st = doc.states.clone();
    match &doc.automaton {
        Automaton::Moore(m) if m.is_dfa() => emit(Automaton::Nfa(m.reverse()?), Some(st)),
        Automaton::Moore(m) => moore_dual(ctx, m, &st),
        Automaton::Nfa(n) => emit(Automaton::Nfa(n.reverse()), Some(st)),
        Automaton::Weighted(aw) => emit(reverse_any(aw)?, Some(st)),
        Automaton::Afa(a) => afa_reverse(ctx, a, &st),
        Automaton::Dkm(_) => usage("reverse is not defined for Kripke models"),
    }
}

fn determinize_nfa(ctx: &Context, n: &Nfa, states: &[String]) -> VerbResult {
    let (dfa, sets) = n.determinise_bounded(ctx.max_states)?;
    let names = sets.iter().map(|s| set_name(states, s.iter())).collect();
    emit(Automaton::Moore(dfa), Some(names))
}

fn forward_dfa(ctx: &Context, a: &AlternatingAutomaton) -> Result<MooreAutomaton, Failure> {
    afa_guard(ctx, a)?;
    Ok(afa_forward_dfa(a)?)
}

pub fn determinize(ctx: &Context, file: &Path) -> VerbResult {
    let doc = load(ctx, file)?;
    match &doc.automaton {
        Automaton::Moore(_) => Ok(Outcome::Output(io::emit(&doc))),
        Automaton::Nfa(n) => determinize_nfa(ctx, n, &doc.states),
        Automaton::Weighted(aw) => match nfa_of(aw) {
            Some(n) => determinize_nfa(ctx, &n, &doc.states),
            None => unsupported("determinisation", aw.kind()),
        },
        Automaton::Afa(a) => emit(Automaton::Moore(forward_dfa(ctx, a)?), None),
        Automaton::Dkm(_) => usage("Kripke models are already deterministic"),
    }
}

fn reachable(
    n: usize,
    roots: impl IntoIterator<Item = usize>,
    succ: impl Fn(usize) -> Vec<usize>,
) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut order = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for r in roots {
        if !seen[r] {
            seen[r] = true;
            queue.push_back(r);
        }
    }
    while let Some(s) = queue.pop_front() {
        order.push(s);
        for t in succ(s) {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    order
}

fn renumber(order: &[usize], n: usize) -> Vec<usize> {
    let mut index = vec![usize::MAX; n];
    for (new, &old) in order.iter().enumerate() {
        index[old] = new;
    }
    index
}

fn reach_nfa(n: &Nfa, states: &[String]) -> VerbResult {
    let letters = n.alphabet().len();
    let order = reachable(n.n(), n.inits().iter(), |s| {
        (0..letters)
            .flat_map(|a| n.successors(a, s).iter())
            .collect()
    });
    let index = renumber(&order, n.n());
    let map = |set: &StateSet| set.iter().map(|s| index[s]).collect::<StateSet>();
    let trans = n
        .transitions()
        .iter()
        .map(|row| order.iter().map(|&s| map(&row[s])).collect())
        .collect();
    let finals = n
        .finals()
        .iter()
        .filter(|&s| index[s] != usize::MAX)
        .map(|s| index[s])
        .collect();
    let trimmed = Nfa::new(
        n.alphabet().clone(),
        order.len(),
        trans,
        map(n.inits()),
        finals,
    )?;
    let names = order.iter().map(|&s| states[s].clone()).collect();
    emit(Automaton::Nfa(trimmed), Some(names))
}

fn reach_dkm(k: &Dkm, states: &[String]) -> VerbResult {
    let Some(init) = k.initial() else {
        return usage("reach on a Kripke model needs an initial state");
    };
    let order = reachable(k.n(), [init], |s| {
        k.transitions().iter().map(|row| row[s]).collect()
    });
    let index = renumber(&order, k.n());
    let trimmed = Dkm::new(
        k.alphabet().clone(),
        k.observations().to_vec(),
        order.iter().map(|&s| k.gamma(s).to_vec()).collect(),
        k.transitions()
            .iter()
            .map(|row| order.iter().map(|&s| index[row[s]]).collect())
            .collect(),
        Some(0),
    )?;
    let names = order.iter().map(|&s| states[s].clone()).collect();
    emit(Automaton::Dkm(trimmed), Some(names))
}

fn restrict<S: ExactDomain + Wrap>(w: &WeightedAutomaton<S>) -> Result<Automaton, Failure> {
    Ok(weighted(reach_restrict(w)?.automaton))
}

pub fn reach(ctx: &Context, file: &Path) -> VerbResult {
    let doc = load(ctx, file)?;
    let st = &doc.states;
    match &doc.automaton {
        Automaton::Moore(m) => {
            let (r, order) = m.reach_with_map();
            emit(
                Automaton::Moore(r),
                Some(order.iter().map(|&s| st[s].clone()).collect()),
            )
        }
        Automaton::Nfa(n) => reach_nfa(n, st),
        Automaton::Weighted(aw) => match aw {
            AnyWeighted::Int(w) => emit(restrict(w)?, None),
            AnyWeighted::Rational(w) => emit(restrict(w)?, None),
            AnyWeighted::Bool(w) => reach_nfa(&w.to_nfa(), st),
            AnyWeighted::Tropical(_) => {
                unsupported("reachable restriction", SemiringKind::Tropical)
            }
        },
        Automaton::Afa(_) => {
            usage("reach is not defined for alternating automata; use determinize")
        }
        Automaton::Dkm(k) => reach_dkm(k, st),
    }
}

fn minimise_moore(
    ctx: &Context,
    m: &MooreAutomaton,
    method: Method,
) -> Result<MooreAutomaton, Failure> {
    Ok(match method {
        Method::Brzozowski => brzozowski_minimise_bounded(m, ctx.max_states)?,
        Method::Refine => m.partition_refinement_minimise(),
        Method::Duality => {
            let k = moore_to_dkm(m)?;
            let atoms = boolean_atoms(&k.definable_closure(), k.n());
            dkm_to_moore(&k.quotient(&atoms)?)?.reach()
        }
    })
}

fn minimise_weighted<S: ExactDomain + Wrap>(
    w: &WeightedAutomaton<S>,
) -> Result<Automaton, Failure> {
    Ok(weighted(minimise_wa(w)?.automaton().clone()))
}

fn block_names(p: &Partition, states: &[String]) -> Vec<String> {
    p.blocks()
        .into_iter()
        .map(|b| set_name(states, b))
        .collect()
}

pub fn minimize(ctx: &Context, file: &Path, method: Option<Method>) -> VerbResult {
    let doc = load(ctx, file)?;
    let st = &doc.states;
    let moore = |m: &MooreAutomaton| -> VerbResult {
        let min = minimise_moore(ctx, m, method.unwrap_or(Method::Brzozowski))?;
        emit(Automaton::Moore(min), None)
    };
    match &doc.automaton {
        Automaton::Moore(m) => moore(m),
        Automaton::Nfa(n) => moore(&n.determinise_bounded(ctx.max_states)?.0),
        Automaton::Weighted(aw) => {
            if matches!(method, Some(Method::Brzozowski | Method::Refine))
                && !matches!(aw, AnyWeighted::Bool(_))
            {
                return usage("weighted automata over rings are minimised with --method duality");
            }
            match aw {
                AnyWeighted::Int(w) => emit(minimise_weighted(w)?, None),
                AnyWeighted::Rational(w) => emit(minimise_weighted(w)?, None),
                AnyWeighted::Bool(w) => moore(&w.to_nfa().determinise_bounded(ctx.max_states)?.0),
                AnyWeighted::Tropical(_) => unsupported("minimisation", SemiringKind::Tropical),
            }
        }
        Automaton::Afa(a) => {
            let min = match method.unwrap_or(Method::Duality) {
                Method::Duality => {
                    afa_guard(ctx, a)?;
                    a.minimal_dfa_bounded(HARD_MAX_AFA_STATES, ctx.max_states)?
                }
                other => minimise_moore(ctx, &forward_dfa(ctx, a)?, other)?,
            };
            emit(Automaton::Moore(min), None)
        }
        Automaton::Dkm(k) => {
            let p = match method.unwrap_or(Method::Duality) {
                Method::Duality => boolean_atoms(&k.definable_closure(), k.n()),
                Method::Refine => k.bisimulation_oracle(),
                Method::Brzozowski => {
                    return usage("Kripke models are minimised with --method duality or refine")
                }
            };
            emit(Automaton::Dkm(k.quotient(&p)?), Some(block_names(&p, st)))
        }
    }
}

fn closure_json(k: &Dkm, states: &[String]) -> Value {
    Value::from(
        k.definable_closure()
            .iter()
            .map(|set| Value::from(set.iter().map(|s| states[s].clone()).collect::<Vec<_>>()))
            .collect::<Vec<_>>(),
    )
}

fn pretty(v: &Value) -> Outcome {
    line(serde_json::to_string_pretty(v).expect("JSON values always serialise"))
}

pub fn dual(ctx: &Context, file: &Path) -> VerbResult {
    let doc = load(ctx, file)?;
    let st = doc.states.clone();
    match &doc.automaton {
        Automaton::Moore(m) => moore_dual(ctx, m, &st),
        Automaton::Nfa(_) => usage("dual needs a deterministic automaton; determinize first"),
        Automaton::Weighted(aw) => emit(reverse_any(aw)?, Some(st)),
        Automaton::Afa(a) => afa_reverse(ctx, a, &st),
        Automaton::Dkm(k) => Ok(pretty(&closure_json(k, &st))),
    }
}

/// How a file's behaviour is compared.
enum Behaviour {
    /// Decided exactly on a deterministic automaton.
    Exact(MooreAutomaton),
    Accepts(AlternatingAutomaton),
    Series(AnyWeighted),
}

fn behaviour(ctx: &Context, doc: Document) -> Result<Behaviour, Failure> {
    Ok(match doc.automaton {
        Automaton::Moore(m) => Behaviour::Exact(m),
        Automaton::Nfa(n) => Behaviour::Exact(n.determinise_bounded(ctx.max_states)?.0),
        Automaton::Weighted(AnyWeighted::Bool(w)) => {
            Behaviour::Exact(w.to_nfa().determinise_bounded(ctx.max_states)?.0)
        }
        Automaton::Weighted(w) => Behaviour::Series(w),
        Automaton::Afa(a) => Behaviour::Accepts(a),
        Automaton::Dkm(k) => Behaviour::Exact(dkm_to_moore(&single_observation(&k)?)?),
    })
}

/// Kripke models compare as Moore automata when every state has exactly one observation.
fn single_observation(k: &Dkm) -> Result<Dkm, Failure> {
    if (0..k.n()).all(|s| k.gamma(s).len() == 1) {
        Ok(k.clone())
    } else {
        usage("equiv on Kripke models needs exactly one observation per state")
    }
}

impl Behaviour {
    fn label(&self, w: &[Letter]) -> Result<String, Failure> {
        Ok(match self {
            Behaviour::Exact(m) => m.run_label(w)?.to_string(),
            Behaviour::Accepts(a) => accept_label(a.accepts(w)?).to_string(),
            Behaviour::Series(aw) => match aw {
                AnyWeighted::Bool(x) => x.eval_series(w)?.to_string(),
                AnyWeighted::Int(x) => x.eval_series(w)?.to_string(),
                AnyWeighted::Rational(x) => x.eval_series(w)?.to_string(),
                AnyWeighted::Tropical(x) => x.eval_series(w)?.to_string(),
            },
        })
    }

    fn alphabet(&self) -> &[String] {
        match self {
            Behaviour::Exact(m) => m.alphabet().symbols(),
            Behaviour::Accepts(a) => a.alphabet().symbols(),
            Behaviour::Series(w) => w.alphabet().symbols(),
        }
    }

    fn weighted(&self) -> bool {
        matches!(self, Behaviour::Series(_))
    }
}

pub fn equiv(ctx: &Context, left: &Path, right: &Path, max_len: usize) -> VerbResult {
    let l = behaviour(ctx, load(ctx, left)?)?;
    let r = behaviour(ctx, load(ctx, right)?)?;
    if l.alphabet() != r.alphabet() {
        return Err(Error::AlphabetMismatch(l.alphabet().to_vec(), r.alphabet().to_vec()).into());
    }
    if l.weighted() != r.weighted() {
        return usage("cannot compare a weighted automaton with an unweighted one");
    }
    let render = |w: &[Letter], alphabet: &[String]| -> String {
        let single = alphabet.iter().all(|s| s.chars().count() == 1);
        let parts: Vec<&str> = w.iter().map(|&a| alphabet[a].as_str()).collect();
        parts.join(if single { "" } else { "," })
    };
    if let (Behaviour::Exact(a), Behaviour::Exact(b)) = (&l, &r) {
        return Ok(match a.counterexample(b)? {
            None => Outcome::Verdict {
                text: "equivalent\n".into(),
                positive: true,
            },
            Some(w) => Outcome::Verdict {
                text: format!(
                    "not equivalent: counterexample \"{}\" ({} vs {})\n",
                    render(&w, l.alphabet()),
                    a.run_label(&w)?,
                    b.run_label(&w)?
                ),
                positive: false,
            },
        });
    }
    let alphabet = dualmin::automata::Alphabet::new(l.alphabet().to_vec())?;
    for w in alphabet.words_up_to(max_len) {
        let (x, y) = (l.label(&w)?, r.label(&w)?);
        if x != y {
            return Ok(Outcome::Verdict {
                text: format!(
                    "not equivalent: counterexample \"{}\" ({x} vs {y})\n",
                    render(&w, l.alphabet())
                ),
                positive: false,
            });
        }
    }
    Ok(Outcome::Verdict {
        text: format!("equivalent up to length {max_len}\n"),
        positive: true,
    })
}

pub fn trace_eval(ctx: &Context, file: &Path, formula: &str) -> VerbResult {
    let doc = load(ctx, file)?;
    let k = as_dkm(&doc, "trace-eval")?;
    let phi = k.parse_formula(formula)?;
    let set = k.eval_trace(&phi)?;
    let names: Vec<String> = set.iter().map(|s| doc.states[s].clone()).collect();
    Ok(line(Value::from(names)))
}

pub fn closure(ctx: &Context, file: &Path) -> VerbResult {
    let doc = load(ctx, file)?;
    let k = as_dkm(&doc, "closure")?;
    Ok(pretty(&closure_json(&k, &doc.states)))
}

fn rank<S: ToRational>(w: &WeightedAutomaton<S>, max_len: usize) -> VerbResult {
    Ok(line(hankel_rank_oracle(w, max_len)?))
}

pub fn hankel(ctx: &Context, file: &Path, max_len: usize) -> VerbResult {
    let doc = load(ctx, file)?;
    let Automaton::Weighted(aw) = &doc.automaton else {
        return usage(format!(
            "hankel needs a weighted automaton, got {}",
            doc.automaton.type_name()
        ));
    };
    let words = aw.alphabet().len().checked_pow(max_len as u32);
    if words.is_none_or(|c| c > ctx.max_states) {
        return Err(Error::StateBound {
            what: format!("Hankel block over words of length {max_len}"),
            limit: ctx.max_states,
        }
        .into());
    }
    match aw {
        AnyWeighted::Int(w) => rank(w, max_len),
        AnyWeighted::Rational(w) => rank(w, max_len),
        other => unsupported("Hankel rank", other.kind()),
    }
}

fn weighted_stats<S: Semiring>(w: &WeightedAutomaton<S>, out: &mut Vec<String>) {
    out.push(format!("semiring: {}", S::NAME));
    let nonzero: usize = w
        .matrices()
        .iter()
        .map(|m| {
            (0..m.rows())
                .flat_map(|r| m.row(r))
                .filter(|x| !x.is_zero())
                .count()
        })
        .sum();
    out.push(format!("nonzero transition weights: {nonzero}"));
}

pub fn stats(ctx: &Context, file: &Path) -> VerbResult {
    let doc = load(ctx, file)?;
    let a = &doc.automaton;
    let mut out = vec![
        format!("type: {}", a.type_name()),
        format!("states: {}", a.n()),
        format!("alphabet: {}", a.alphabet().symbols().join(" ")),
    ];
    match a {
        Automaton::Moore(m) => {
            if !m.is_dfa() {
                out.push(format!("outputs: {}", m.outputs().join(" ")));
            } else {
                out.push(format!("accepting: {}", m.accepting_states().len()));
            }
            out.push(format!("reachable: {}", m.reach().n()));
            out.push(format!(
                "minimal: {}",
                m.partition_refinement_minimise().n()
            ));
        }
        Automaton::Nfa(n) => {
            let edges: usize = n.transitions().iter().flatten().map(StateSet::len).sum();
            out.push(format!("initial: {}", n.inits().len()));
            out.push(format!("accepting: {}", n.finals().len()));
            out.push(format!("transitions: {edges}"));
            if let Ok((d, _)) = n.determinise_bounded(ctx.max_states) {
                out.push(format!("determinised: {}", d.n()));
            }
        }
        Automaton::Weighted(aw) => match aw {
            AnyWeighted::Bool(w) => weighted_stats(w, &mut out),
            AnyWeighted::Int(w) => {
                weighted_stats(w, &mut out);
                if let Ok(m) = minimise_wa(w) {
                    out.push(format!("minimal dimension: {}", m.dim()));
                }
            }
            AnyWeighted::Rational(w) => {
                weighted_stats(w, &mut out);
                if let Ok(m) = minimise_wa(w) {
                    out.push(format!("minimal dimension: {}", m.dim()));
                }
            }
            AnyWeighted::Tropical(w) => weighted_stats(w, &mut out),
        },
        Automaton::Afa(afa) => {
            out.push(format!("final: {}", afa.finals().count_ones()));
            if afa_guard(ctx, afa).is_ok() {
                if let Ok(rev) = afa.reverse_dfa(HARD_MAX_AFA_STATES) {
                    out.push(format!("reverse DFA reachable: {}", rev.reach().n()));
                }
                if let Ok(min) = afa.minimal_dfa_bounded(HARD_MAX_AFA_STATES, ctx.max_states) {
                    out.push(format!("minimal DFA: {}", min.n()));
                }
            }
        }
        Automaton::Dkm(k) => {
            out.push(format!("observations: {}", k.observations().join(" ")));
            if let Some(i) = k.initial() {
                out.push(format!("initial: {}", doc.states[i]));
            }
            out.push(format!(
                "definable subsets: {}",
                k.definable_closure().len()
            ));
            out.push(format!(
                "bisimulation classes: {}",
                k.bisimulation_oracle().block_count()
            ));
        }
    }
    Ok(Outcome::Output(out.into_iter().map(|l| l + "\n").collect()))
}

pub fn selftest(seed: u64, cases: usize, mode: Execution) -> VerbResult {
    let reports = suites::run_all(seed, cases, mode);
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("{r}\n"));
        for f in r.failures.iter().take(5) {
            text.push_str(&format!("    {f}\n"));
        }
    }
    let positive = reports.iter().all(|r| r.passed());
    text.push_str(if positive {
        "all suites passed\n"
    } else {
        "some suites failed\n"
    });
    Ok(Outcome::Verdict { text, positive })
}
