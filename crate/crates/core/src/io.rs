//! JSON automaton files.
//!
//! Every file is an object with a `"type"` (`dfa`, `moore`, `nfa`, `weighted`,
//! `afa` or `dkm`), an `"alphabet"` and, except for weighted automata where it is
//! optional, a list of `"states"`. State order in that list fixes the state indices.
//! Emission is canonical: object keys are sorted and lists follow state order.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

use crate::alternating::{compile_formula, AlternatingAutomaton, BoolFun};
use crate::automata::{Alphabet, MooreAutomaton, Nfa, StateSet};
use crate::dkm::Dkm;
use crate::error::{Error, Result};
use crate::semiring::{Boolean, Integer, Matrix, Rational, Semiring, SemiringKind, Tropical};
use crate::weighted::WeightedAutomaton;

/// Largest magnitude emitted as a JSON number; larger integers become strings.
const MAX_SAFE_INTEGER: i64 = (1 << 53) - 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyWeighted {
    Bool(WeightedAutomaton<Boolean>),
    Int(WeightedAutomaton<Integer>),
    Rational(WeightedAutomaton<Rational>),
    Tropical(WeightedAutomaton<Tropical>),
}

impl AnyWeighted {
    pub fn kind(&self) -> SemiringKind {
        match self {
            AnyWeighted::Bool(_) => SemiringKind::Bool,
            AnyWeighted::Int(_) => SemiringKind::Int,
            AnyWeighted::Rational(_) => SemiringKind::Rational,
            AnyWeighted::Tropical(_) => SemiringKind::Tropical,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyWeighted::Bool(w) => w.dim(),
            AnyWeighted::Int(w) => w.dim(),
            AnyWeighted::Rational(w) => w.dim(),
            AnyWeighted::Tropical(w) => w.dim(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            AnyWeighted::Bool(w) => w.alphabet(),
            AnyWeighted::Int(w) => w.alphabet(),
            AnyWeighted::Rational(w) => w.alphabet(),
            AnyWeighted::Tropical(w) => w.alphabet(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automaton {
    /// DFAs are Moore automata with outputs `[reject, accept]`.
    Moore(MooreAutomaton),
    Nfa(Nfa),
    Weighted(AnyWeighted),
    Afa(AlternatingAutomaton),
    Dkm(Dkm),
}

impl Automaton {
    pub fn n(&self) -> usize {
        match self {
            Automaton::Moore(m) => m.n(),
            Automaton::Nfa(m) => m.n(),
            Automaton::Weighted(w) => w.dim(),
            Automaton::Afa(a) => a.n(),
            Automaton::Dkm(k) => k.n(),
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Automaton::Moore(m) if m.is_dfa() => "dfa",
            Automaton::Moore(_) => "moore",
            Automaton::Nfa(_) => "nfa",
            Automaton::Weighted(_) => "weighted",
            Automaton::Afa(_) => "afa",
            Automaton::Dkm(_) => "dkm",
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Automaton::Moore(m) => m.alphabet(),
            Automaton::Nfa(m) => m.alphabet(),
            Automaton::Weighted(w) => w.alphabet(),
            Automaton::Afa(a) => a.alphabet(),
            Automaton::Dkm(k) => k.alphabet(),
        }
    }
}

/// An automaton together with the names of its states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub automaton: Automaton,
    pub states: Vec<String>,
}

impl Document {
    /// Names states `q0, q1, …`.
    pub fn new(automaton: Automaton) -> Self {
        let states = (0..automaton.n()).map(|i| format!("q{i}")).collect();
        Document { automaton, states }
    }

    pub fn with_states(automaton: Automaton, states: Vec<String>) -> Result<Self> {
        if states.len() != automaton.n() {
            return Err(Error::dims("state names", automaton.n(), states.len()));
        }
        check_unique(&states, "$.states")?;
        Ok(Document { automaton, states })
    }
}

fn check_unique(names: &[String], path: &str) -> Result<()> {
    for (i, s) in names.iter().enumerate() {
        if names[..i].contains(s) {
            return Err(Error::schema(path, format!("duplicate name `{s}`")));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// parsing

struct Ctx<'a> {
    root: &'a Map<String, Value>,
    names: Vec<String>,
    index: HashMap<String, usize>,
}

fn field<'v>(obj: &'v Map<String, Value>, key: &str, path: &str) -> Result<&'v Value> {
    obj.get(key)
        .ok_or_else(|| Error::schema(path, format!("missing field `{key}`")))
}

fn as_object<'v>(v: &'v Value, path: &str) -> Result<&'v Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::schema(path, "expected an object"))
}

fn as_array<'v>(v: &'v Value, path: &str) -> Result<&'v Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::schema(path, "expected an array"))
}

fn as_str<'v>(v: &'v Value, path: &str) -> Result<&'v str> {
    v.as_str()
        .ok_or_else(|| Error::schema(path, "expected a string"))
}

fn str_list(v: &Value, path: &str) -> Result<Vec<String>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_str(x, &format!("{path}[{i}]")).map(str::to_string))
        .collect()
}

impl<'a> Ctx<'a> {
    fn new(root: &'a Map<String, Value>, names: Vec<String>) -> Result<Self> {
        check_unique(&names, "$.states")?;
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(Ctx { root, names, index })
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn state(&self, v: &Value, path: &str) -> Result<usize> {
        let name = as_str(v, path)?;
        self.lookup(name, path)
    }

    fn lookup(&self, name: &str, path: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::schema(path, format!("undeclared state `{name}`")))
    }

    fn state_set(&self, v: &Value, path: &str) -> Result<StateSet> {
        as_array(v, path)?
            .iter()
            .enumerate()
            .map(|(i, x)| self.state(x, &format!("{path}[{i}]")))
            .collect()
    }

    /// The per-letter object under `transitions`, with unknown letters rejected.
    fn letter_tables(&self, alphabet: &Alphabet) -> Result<Vec<&'a Value>> {
        let trans = as_object(field(self.root, "transitions", "$")?, "$.transitions")?;
        if let Some(extra) = trans.keys().find(|k| alphabet.index(k).is_err()) {
            return Err(Error::schema(
                format!("$.transitions.{extra}"),
                "letter not in alphabet",
            ));
        }
        alphabet
            .symbols()
            .iter()
            .map(|a| field(trans, a, "$.transitions"))
            .collect()
    }

    /// A total state → state table for one letter.
    fn function(&self, v: &Value, path: &str) -> Result<Vec<usize>> {
        let obj = as_object(v, path)?;
        if let Some(extra) = obj.keys().find(|k| !self.index.contains_key(*k)) {
            return Err(Error::schema(format!("{path}.{extra}"), "undeclared state"));
        }
        self.names
            .iter()
            .map(|s| {
                let p = format!("{path}.{s}");
                let target = obj
                    .get(s)
                    .ok_or_else(|| Error::schema(&p, "missing transition"))?;
                self.state(target, &p)
            })
            .collect()
    }

    fn check_keys(&self, obj: &Map<String, Value>, path: &str) -> Result<()> {
        match obj.keys().find(|k| !self.index.contains_key(*k)) {
            Some(extra) => Err(Error::schema(format!("{path}.{extra}"), "undeclared state")),
            None => Ok(()),
        }
    }
}

fn alphabet_of(root: &Map<String, Value>) -> Result<Alphabet> {
    let symbols = str_list(field(root, "alphabet", "$")?, "$.alphabet")?;
    Alphabet::new(symbols).map_err(|e| Error::schema("$.alphabet", e.to_string()))
}

fn state_names(root: &Map<String, Value>) -> Result<Vec<String>> {
    str_list(field(root, "states", "$")?, "$.states")
}

pub fn parse(text: &str) -> Result<Document> {
    parse_with(text, None)
}

/// Parses a file; `semiring` overrides the semiring named in a weighted file.
pub fn parse_with(text: &str, semiring: Option<SemiringKind>) -> Result<Document> {
    let value: Value = serde_json::from_str(text)?;
    parse_value(&value, semiring)
}

pub fn parse_value(value: &Value, semiring: Option<SemiringKind>) -> Result<Document> {
    let root = as_object(value, "$")?;
    let ty = as_str(field(root, "type", "$")?, "$.type")?;
    match ty {
        "dfa" | "moore" => parse_moore(root, ty == "dfa"),
        "nfa" => parse_nfa(root),
        "weighted" => parse_weighted(root, semiring),
        "afa" => parse_afa(root),
        "dkm" => parse_dkm(root),
        other => Err(Error::schema(
            "$.type",
            format!("unknown automaton type `{other}`"),
        )),
    }
}

fn parse_moore(root: &Map<String, Value>, dfa: bool) -> Result<Document> {
    let alphabet = alphabet_of(root)?;
    let cx = Ctx::new(root, state_names(root)?)?;
    if cx.n() == 0 {
        return Err(Error::schema("$.states", "at least one state is required"));
    }
    let trans = cx
        .letter_tables(&alphabet)?
        .into_iter()
        .zip(alphabet.symbols())
        .map(|(v, a)| cx.function(v, &format!("$.transitions.{a}")))
        .collect::<Result<Vec<_>>>()?;
    let init = cx.state(field(root, "initial", "$")?, "$.initial")?;
    let automaton = if dfa {
        let finals = cx.state_set(field(root, "finals", "$")?, "$.finals")?;
        let accepting: Vec<bool> = (0..cx.n()).map(|s| finals.contains(s)).collect();
        MooreAutomaton::dfa(alphabet, trans, init, &accepting)?
    } else {
        let outputs = str_list(field(root, "output_set", "$")?, "$.output_set")?;
        let map = as_object(field(root, "outputs", "$")?, "$.outputs")?;
        cx.check_keys(map, "$.outputs")?;
        let out = cx
            .names
            .iter()
            .map(|s| {
                let p = format!("$.outputs.{s}");
                let label = as_str(
                    map.get(s)
                        .ok_or_else(|| Error::schema(&p, "missing output"))?,
                    &p,
                )?;
                outputs
                    .iter()
                    .position(|o| o == label)
                    .ok_or_else(|| Error::schema(&p, format!("`{label}` not in output_set")))
            })
            .collect::<Result<Vec<_>>>()?;
        MooreAutomaton::new(alphabet, outputs, trans, init, out)?
    };
    Ok(Document {
        automaton: Automaton::Moore(automaton),
        states: cx.names,
    })
}

fn parse_nfa(root: &Map<String, Value>) -> Result<Document> {
    let alphabet = alphabet_of(root)?;
    let cx = Ctx::new(root, state_names(root)?)?;
    let trans = cx
        .letter_tables(&alphabet)?
        .into_iter()
        .zip(alphabet.symbols())
        .map(|(v, a)| {
            let path = format!("$.transitions.{a}");
            let obj = as_object(v, &path)?;
            cx.check_keys(obj, &path)?;
            cx.names
                .iter()
                .map(|s| match obj.get(s) {
                    Some(t) => cx.state_set(t, &format!("{path}.{s}")),
                    None => Ok(StateSet::default()),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let inits = cx.state_set(field(root, "initial", "$")?, "$.initial")?;
    let finals = cx.state_set(field(root, "finals", "$")?, "$.finals")?;
    let nfa = Nfa::new(alphabet, cx.n(), trans, inits, finals)?;
    Ok(Document {
        automaton: Automaton::Nfa(nfa),
        states: cx.names,
    })
}

/// Scalars as they appear in weighted files.
trait Scalar: Semiring {
    fn parse_json(v: &Value, path: &str) -> Result<Self>;
    fn to_json(&self) -> Value;
}

fn integer_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) if x.abs() <= MAX_SAFE_INTEGER => Value::from(x),
        _ => Value::from(v.to_string()),
    }
}

fn parse_bigint(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_i64() {
                Ok(BigInt::from(x))
            } else if let Some(x) = n.as_u64() {
                Ok(BigInt::from(x))
            } else {
                Err(Error::schema(path, format!("`{n}` is not an integer")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::schema(path, format!("`{s}` is not an integer"))),
        _ => Err(Error::schema(path, "expected an integer")),
    }
}

impl Scalar for Boolean {
    fn parse_json(v: &Value, path: &str) -> Result<Self> {
        match v {
            Value::Bool(b) => Ok(Boolean(*b)),
            _ => match parse_bigint(v, path)?.to_i8() {
                Some(0) => Ok(Boolean(false)),
                Some(1) => Ok(Boolean(true)),
                _ => Err(Error::schema(path, "Boolean weights must be 0 or 1")),
            },
        }
    }
    fn to_json(&self) -> Value {
        Value::from(u8::from(self.0))
    }
}

impl Scalar for Integer {
    fn parse_json(v: &Value, path: &str) -> Result<Self> {
        parse_bigint(v, path).map(Integer)
    }
    fn to_json(&self) -> Value {
        integer_json(&self.0)
    }
}

impl Scalar for Rational {
    fn parse_json(v: &Value, path: &str) -> Result<Self> {
        match v {
            Value::String(s) => Rational::parse(s)
                .ok_or_else(|| Error::schema(path, format!("`{s}` is not a rational literal"))),
            _ => parse_bigint(v, path).map(Rational::from_integer),
        }
    }
    fn to_json(&self) -> Value {
        Value::from(self.to_string())
    }
}

impl Scalar for Tropical {
    fn parse_json(v: &Value, path: &str) -> Result<Self> {
        if let Value::String(s) = v {
            if matches!(s.trim(), "inf" | "infinity" | "∞") {
                return Ok(Tropical::Infinity);
            }
        }
        let x = parse_bigint(v, path)?;
        x.to_biguint()
            .map(Tropical::Finite)
            .ok_or_else(|| Error::schema(path, "tropical weights must be nonnegative or \"inf\""))
    }
    fn to_json(&self) -> Value {
        match self {
            Tropical::Finite(x) => integer_json(&BigInt::from(x.clone())),
            Tropical::Infinity => Value::from("inf"),
        }
    }
}

fn parse_vector<S: Scalar>(v: &Value, n: usize, path: &str) -> Result<Vec<S>> {
    let arr = as_array(v, path)?;
    if arr.len() != n {
        return Err(Error::schema(
            path,
            format!("expected {n} entries, found {}", arr.len()),
        ));
    }
    arr.iter()
        .enumerate()
        .map(|(i, x)| S::parse_json(x, &format!("{path}[{i}]")))
        .collect()
}

fn parse_weighted_as<S: Scalar>(
    root: &Map<String, Value>,
    alphabet: Alphabet,
) -> Result<(WeightedAutomaton<S>, Vec<String>)> {
    let init_v = field(root, "initial", "$")?;
    let n = as_array(init_v, "$.initial")?.len();
    let names = match root.get("states") {
        Some(v) => {
            let names = str_list(v, "$.states")?;
            if names.len() != n {
                return Err(Error::schema(
                    "$.states",
                    format!(
                        "{} states declared but initial vector has {n} entries",
                        names.len()
                    ),
                ));
            }
            names
        }
        None => (0..n).map(|i| format!("q{i}")).collect(),
    };
    let cx = Ctx::new(root, names)?;
    let initial = parse_vector::<S>(init_v, n, "$.initial")?;
    let final_ = parse_vector::<S>(field(root, "final", "$")?, n, "$.final")?;
    let trans = cx
        .letter_tables(&alphabet)?
        .into_iter()
        .zip(alphabet.symbols())
        .map(|(v, a)| {
            let path = format!("$.transitions.{a}");
            let rows = as_array(v, &path)?;
            if rows.len() != n {
                return Err(Error::schema(
                    &path,
                    format!("matrix for letter `{a}` must be {n}x{n}, found {} rows", rows.len()),
                ));
            }
            let rows = rows
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    let p = format!("{path}[{r}]");
                    let len = as_array(row, &p)?.len();
                    if len != n {
                        return Err(Error::schema(
                            &p,
                            format!("matrix for letter `{a}` must be {n}x{n}, row {r} has {len} entries"),
                        ));
                    }
                    parse_vector::<S>(row, n, &p)
                })
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_rows(n, rows)
        })
        .collect::<Result<Vec<_>>>()?;
    let w = WeightedAutomaton::new(alphabet, trans, initial, final_)?;
    Ok((w, cx.names))
}

fn parse_weighted(root: &Map<String, Value>, semiring: Option<SemiringKind>) -> Result<Document> {
    let alphabet = alphabet_of(root)?;
    let kind = match semiring {
        Some(k) => k,
        None => {
            let name = as_str(field(root, "semiring", "$")?, "$.semiring")?;
            name.parse()
                .map_err(|e: Error| Error::schema("$.semiring", e.to_string()))?
        }
    };
    let (w, names) = match kind {
        SemiringKind::Bool => {
            let (w, n) = parse_weighted_as::<Boolean>(root, alphabet)?;
            (AnyWeighted::Bool(w), n)
        }
        SemiringKind::Int => {
            let (w, n) = parse_weighted_as::<Integer>(root, alphabet)?;
            (AnyWeighted::Int(w), n)
        }
        SemiringKind::Rational => {
            let (w, n) = parse_weighted_as::<Rational>(root, alphabet)?;
            (AnyWeighted::Rational(w), n)
        }
        SemiringKind::Tropical => {
            let (w, n) = parse_weighted_as::<Tropical>(root, alphabet)?;
            (AnyWeighted::Tropical(w), n)
        }
    };
    Ok(Document {
        automaton: Automaton::Weighted(w),
        states: names,
    })
}

fn parse_condition(cx: &Ctx<'_>, v: &Value, path: &str) -> Result<BoolFun> {
    match v {
        Value::String(s) => {
            compile_formula(s, &cx.names).map_err(|e| Error::schema(path, e.to_string()))
        }
        Value::Array(sets) => {
            let masks = sets
                .iter()
                .enumerate()
                .map(|(i, set)| {
                    Ok(cx
                        .state_set(set, &format!("{path}[{i}]"))?
                        .iter()
                        .fold(0u32, |m, s| m | 1 << s))
                })
                .collect::<Result<Vec<_>>>()?;
            BoolFun::from_sets(cx.n(), masks)
        }
        _ => Err(Error::schema(
            path,
            "expected a formula string or a list of subsets",
        )),
    }
}

fn parse_afa(root: &Map<String, Value>) -> Result<Document> {
    let alphabet = alphabet_of(root)?;
    let cx = Ctx::new(root, state_names(root)?)?;
    if cx.n() > crate::alternating::HARD_MAX_AFA_STATES {
        return Err(Error::StateBound {
            what: format!("alternating automaton with {} states", cx.n()),
            limit: crate::alternating::HARD_MAX_AFA_STATES,
        });
    }
    let delta = cx
        .letter_tables(&alphabet)?
        .into_iter()
        .zip(alphabet.symbols())
        .map(|(v, a)| {
            let path = format!("$.transitions.{a}");
            let obj = as_object(v, &path)?;
            cx.check_keys(obj, &path)?;
            cx.names
                .iter()
                .map(|s| {
                    let p = format!("{path}.{s}");
                    let cond = obj
                        .get(s)
                        .ok_or_else(|| Error::schema(&p, "missing transition condition"))?;
                    parse_condition(&cx, cond, &p)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let iota = parse_condition(&cx, field(root, "acceptance", "$")?, "$.acceptance")?;
    let finals = cx
        .state_set(field(root, "finals", "$")?, "$.finals")?
        .iter()
        .fold(0u32, |m, s| m | 1 << s);
    let afa = AlternatingAutomaton::new(alphabet, cx.n(), delta, iota, finals)?;
    Ok(Document {
        automaton: Automaton::Afa(afa),
        states: cx.names,
    })
}

fn parse_dkm(root: &Map<String, Value>) -> Result<Document> {
    let alphabet = alphabet_of(root)?;
    let cx = Ctx::new(root, state_names(root)?)?;
    let obs = str_list(field(root, "obs", "$")?, "$.obs")?;
    check_unique(&obs, "$.obs")?;
    let gamma_obj = as_object(field(root, "gamma", "$")?, "$.gamma")?;
    cx.check_keys(gamma_obj, "$.gamma")?;
    let gamma = cx
        .names
        .iter()
        .map(|s| {
            let p = format!("$.gamma.{s}");
            match gamma_obj.get(s) {
                None => Ok(Vec::new()),
                Some(v) => str_list(v, &p)?
                    .iter()
                    .map(|o| {
                        obs.iter().position(|x| x == o).ok_or_else(|| {
                            Error::schema(&p, format!("undeclared observation `{o}`"))
                        })
                    })
                    .collect(),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let delta = cx
        .letter_tables(&alphabet)?
        .into_iter()
        .zip(alphabet.symbols())
        .map(|(v, a)| cx.function(v, &format!("$.transitions.{a}")))
        .collect::<Result<Vec<_>>>()?;
    let initial = match root.get("initial") {
        None | Some(Value::Null) => None,
        Some(v) => Some(cx.state(v, "$.initial")?),
    };
    let k = Dkm::new(alphabet, obs, gamma, delta, initial)?;
    Ok(Document {
        automaton: Automaton::Dkm(k),
        states: cx.names,
    })
}

// ---------------------------------------------------------------------------
// emission

fn names_of(states: &[String], set: impl IntoIterator<Item = usize>) -> Value {
    Value::from(
        set.into_iter()
            .map(|s| Value::from(states[s].clone()))
            .collect::<Vec<_>>(),
    )
}

fn function_json(states: &[String], row: &[usize]) -> Value {
    let map: Map<String, Value> = row
        .iter()
        .enumerate()
        .map(|(s, &t)| (states[s].clone(), Value::from(states[t].clone())))
        .collect();
    Value::Object(map)
}

fn base(ty: &str, alphabet: &Alphabet, states: &[String]) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("type".into(), Value::from(ty));
    m.insert("alphabet".into(), Value::from(alphabet.symbols().to_vec()));
    m.insert("states".into(), Value::from(states.to_vec()));
    m
}

fn per_letter(alphabet: &Alphabet, mut f: impl FnMut(usize) -> Value) -> Value {
    Value::Object(
        alphabet
            .symbols()
            .iter()
            .enumerate()
            .map(|(a, sym)| (sym.clone(), f(a)))
            .collect(),
    )
}

fn weighted_json<S: Scalar>(w: &WeightedAutomaton<S>, states: &[String]) -> Map<String, Value> {
    let mut m = base("weighted", w.alphabet(), states);
    m.insert("semiring".into(), Value::from(S::NAME));
    let vec_json = |v: &[S]| Value::from(v.iter().map(Scalar::to_json).collect::<Vec<_>>());
    m.insert(
        "transitions".into(),
        per_letter(w.alphabet(), |a| {
            let t = w.matrix(a);
            Value::from(
                (0..t.rows())
                    .map(|r| vec_json(t.row(r)))
                    .collect::<Vec<_>>(),
            )
        }),
    );
    m.insert("initial".into(), vec_json(w.initial()));
    m.insert("final".into(), vec_json(w.final_vector()));
    m
}

fn condition_json(states: &[String], f: &BoolFun) -> Value {
    Value::from(
        f.sets()
            .into_iter()
            .map(|mask| names_of(states, (0..states.len()).filter(|&s| mask >> s & 1 == 1)))
            .collect::<Vec<_>>(),
    )
}

pub fn to_json(doc: &Document) -> Value {
    let st = &doc.states;
    let m = match &doc.automaton {
        Automaton::Moore(m) => {
            let mut o = base(doc.automaton.type_name(), m.alphabet(), st);
            o.insert("initial".into(), Value::from(st[m.init()].clone()));
            o.insert(
                "transitions".into(),
                per_letter(m.alphabet(), |a| function_json(st, &m.transitions()[a])),
            );
            if m.is_dfa() {
                o.insert("finals".into(), names_of(st, m.accepting_states().iter()));
            } else {
                o.insert("output_set".into(), Value::from(m.outputs().to_vec()));
                let outs: Map<String, Value> = (0..m.n())
                    .map(|s| (st[s].clone(), Value::from(m.outputs()[m.output(s)].clone())))
                    .collect();
                o.insert("outputs".into(), Value::Object(outs));
            }
            o
        }
        Automaton::Nfa(nfa) => {
            let mut o = base("nfa", nfa.alphabet(), st);
            o.insert("initial".into(), names_of(st, nfa.inits().iter()));
            o.insert("finals".into(), names_of(st, nfa.finals().iter()));
            o.insert(
                "transitions".into(),
                per_letter(nfa.alphabet(), |a| {
                    Value::Object(
                        (0..nfa.n())
                            .filter(|&s| !nfa.successors(a, s).is_empty())
                            .map(|s| (st[s].clone(), names_of(st, nfa.successors(a, s).iter())))
                            .collect(),
                    )
                }),
            );
            o
        }
        Automaton::Weighted(w) => match w {
            AnyWeighted::Bool(w) => weighted_json(w, st),
            AnyWeighted::Int(w) => weighted_json(w, st),
            AnyWeighted::Rational(w) => weighted_json(w, st),
            AnyWeighted::Tropical(w) => weighted_json(w, st),
        },
        Automaton::Afa(afa) => {
            let mut o = base("afa", afa.alphabet(), st);
            o.insert(
                "transitions".into(),
                per_letter(afa.alphabet(), |a| {
                    Value::Object(
                        (0..afa.n())
                            .map(|s| (st[s].clone(), condition_json(st, afa.delta(a, s))))
                            .collect(),
                    )
                }),
            );
            o.insert("acceptance".into(), condition_json(st, afa.iota()));
            o.insert(
                "finals".into(),
                names_of(st, (0..afa.n()).filter(|&s| afa.finals() >> s & 1 == 1)),
            );
            o
        }
        Automaton::Dkm(k) => {
            let mut o = base("dkm", k.alphabet(), st);
            o.insert("obs".into(), Value::from(k.observations().to_vec()));
            let gamma: Map<String, Value> = (0..k.n())
                .map(|s| {
                    let obs: Vec<Value> = k
                        .gamma(s)
                        .iter()
                        .map(|&o| Value::from(k.observations()[o].clone()))
                        .collect();
                    (st[s].clone(), Value::from(obs))
                })
                .collect();
            o.insert("gamma".into(), Value::Object(gamma));
            o.insert(
                "transitions".into(),
                per_letter(k.alphabet(), |a| function_json(st, &k.transitions()[a])),
            );
            if let Some(i) = k.initial() {
                o.insert("initial".into(), Value::from(st[i].clone()));
            }
            o
        }
    };
    Value::Object(m)
}

/// Pretty-printed canonical JSON with a trailing newline.
pub fn emit(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(&to_json(doc)).expect("JSON values always serialise");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const ENDS_IN_A: &str = r#"{
        "type": "dfa",
        "alphabet": ["a", "b"],
        "states": ["x", "y", "z"],
        "initial": "x",
        "transitions": {
            "a": {"x": "z", "y": "y", "z": "y"},
            "b": {"x": "x", "y": "x", "z": "x"}
        },
        "finals": ["y", "z"]
    }"#;

    #[test]
    fn parses_ends_in_a_dfa() {
        let doc = parse(ENDS_IN_A).unwrap();
        let Automaton::Moore(m) = &doc.automaton else {
            panic!("expected a DFA")
        };
        assert!(m.is_dfa());
        assert_eq!(m.n(), 3);
        assert_eq!(m.transitions(), &[vec![2, 1, 1], vec![0, 0, 0]]);
        assert_eq!(doc.states, vec!["x", "y", "z"]);
        assert_eq!(parse(&emit(&doc)).unwrap(), doc);
    }

    #[test]
    fn weighted_dimension_error_names_letter() {
        let text = r#"{"type": "weighted", "semiring": "int", "alphabet": ["a"],
            "initial": [1, 0], "final": [1, 1],
            "transitions": {"a": [[1, 0, 0], [0, 1, 0]]}}"#;
        let err = parse(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("$.transitions.a"), "{msg}");
        assert!(msg.contains("letter `a`"), "{msg}");
    }

    #[test]
    fn weighted_scalars() {
        let text = r#"{"type": "weighted", "semiring": "rational", "alphabet": ["a"],
            "initial": ["1/2", 3], "final": ["-4/6", "0"],
            "transitions": {"a": [[1, "123456789012345678901234567890"], [0, 1]]}}"#;
        let doc = parse(text).unwrap();
        let Automaton::Weighted(AnyWeighted::Rational(w)) = &doc.automaton else {
            panic!()
        };
        assert_eq!(w.final_vector()[0], Rational::new(-2, 3));
        assert_eq!(parse(&emit(&doc)).unwrap(), doc);
        let as_int = parse_with(
            r#"{"type": "weighted", "semiring": "rational", "alphabet": ["a"],
                "initial": [1], "final": [9007199254740993], "transitions": {"a": [[2]]}}"#,
            Some(SemiringKind::Int),
        )
        .unwrap();
        let json = emit(&as_int);
        assert!(json.contains("\"9007199254740993\""), "{json}");
        assert_eq!(parse(&json).unwrap(), as_int);
    }

    #[test]
    fn tropical_and_bool_scalars() {
        let text = r#"{"type": "weighted", "semiring": "tropical", "alphabet": ["a"],
            "initial": [0, "inf"], "final": [3, 0], "transitions": {"a": [["inf", 1], [2, "inf"]]}}"#;
        let doc = parse(text).unwrap();
        assert_eq!(parse(&emit(&doc)).unwrap(), doc);
        assert!(parse(&text.replace("[0, \"inf\"]", "[-1, 0]")).is_err());
        let b = parse_with(
            r#"{"type": "weighted", "semiring": "int", "alphabet": ["a"],
                "initial": [1, 0], "final": [true, 1], "transitions": {"a": [[0, 1], [1, 0]]}}"#,
            Some(SemiringKind::Bool),
        )
        .unwrap();
        assert_eq!(parse(&emit(&b)).unwrap(), b);
    }

    #[test]
    fn unknown_semiring() {
        let text = r#"{"type": "weighted", "semiring": "nat", "alphabet": ["a"],
            "initial": [1], "final": [1], "transitions": {"a": [[1]]}}"#;
        assert!(parse(text).unwrap_err().to_string().contains("$.semiring"));
    }

    #[test]
    fn schema_errors_carry_paths() {
        let cases = [
            (ENDS_IN_A.replace("\"y\": \"y\", ", ""), "$.transitions.a.y"),
            (
                ENDS_IN_A.replace("\"initial\": \"x\"", "\"initial\": \"w\""),
                "$.initial",
            ),
            (ENDS_IN_A.replace("\"dfa\"", "\"pda\""), "$.type"),
            (ENDS_IN_A.replace("\"b\": {", "\"c\": {"), "$.transitions.c"),
            (
                ENDS_IN_A.replace("\"finals\": [\"y\", \"z\"]", "\"finals\": [\"y\", 3]"),
                "$.finals[1]",
            ),
        ];
        for (text, path) in cases {
            let err = parse(&text).unwrap_err().to_string();
            assert!(err.contains(path), "{err} should mention {path}");
        }
        assert!(matches!(parse("{"), Err(Error::Json(_))));
    }

    #[test]
    fn moore_nfa_afa_dkm_round_trip() {
        let moore = r#"{"type": "moore", "alphabet": ["a"], "states": ["s", "t"], "initial": "t",
            "transitions": {"a": {"s": "t", "t": "s"}},
            "output_set": ["red", "green", "blue"], "outputs": {"s": "blue", "t": "red"}}"#;
        let nfa = r#"{"type": "nfa", "alphabet": ["a", "b"], "states": ["p", "q"],
            "initial": ["p"], "finals": ["q"],
            "transitions": {"a": {"p": ["p", "q"]}, "b": {"q": ["p"]}}}"#;
        let afa = r#"{"type": "afa", "alphabet": ["a"], "states": ["s0", "s1"],
            "transitions": {"a": {"s0": "s0 & s1", "s1": [["s1"], ["s0", "s1"]]}},
            "acceptance": "s0", "finals": ["s1"]}"#;
        let dkm = r#"{"type": "dkm", "alphabet": ["a"], "states": ["u", "v"], "obs": ["p", "q"],
            "gamma": {"u": ["q", "p"]}, "transitions": {"a": {"u": "v", "v": "v"}}}"#;
        for text in [moore, nfa, afa, dkm] {
            let doc = parse(text).unwrap();
            assert_eq!(parse(&emit(&doc)).unwrap(), doc, "{text}");
        }
        let Automaton::Afa(a) = parse(afa).unwrap().automaton else {
            panic!()
        };
        assert_eq!(a.delta(0, 0).sets(), vec![0b11]);
        assert_eq!(a.delta(0, 1).sets(), vec![0b10, 0b11]);
    }

    #[test]
    fn emission_is_sorted() {
        let doc = parse(ENDS_IN_A).unwrap();
        let text = emit(&doc);
        let alphabet = text.find("\"alphabet\"").unwrap();
        let transitions = text.find("\"transitions\"").unwrap();
        let ty = text.find("\"type\"").unwrap();
        assert!(alphabet < transitions && transitions < ty);
    }
}
