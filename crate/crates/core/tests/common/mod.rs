//! Shared helpers for the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use sqlp::domain::{Domain, Value};
use sqlp::semantics::{fixpoint_model, ModelTable};
use sqlp::similarity::SimilarityRelation;
use sqlp::solver::{solve, Answer, SolverOptions};
use sqlp::syntax::{parse_goal, parse_program, Atom, Name, Program, Term};
use sqlp::transform::{eliminate_with, TransformOptions, TransformedProgram};

pub const ANIMALS: &str = include_str!("../../testdata/animals.sqlp");

pub const ROUNDS: usize = 500;

/// Shape of generated programs.
#[derive(Debug, Clone)]
pub struct Shape {
    pub domain: Domain,
    /// Bodies only call predicates with a smaller index, predicates are never
    /// similar, and heads repeat a variable only when every constructor is a
    /// constant, so SLD trees of the transformed program are finite.
    pub acyclic: bool,
}

struct Symbols {
    constants: Vec<&'static str>,
    unary: Vec<&'static str>,
    binary: Vec<&'static str>,
    preds: Vec<(String, usize)>,
}

fn attenuations(domain: &Domain) -> &'static [&'static str] {
    match domain {
        Domain::W => &["0", "1", "2"],
        _ => &["1", "0.9", "0.8", "0.5"],
    }
}

fn degrees(domain: &Domain) -> &'static [&'static str] {
    match domain {
        Domain::W => &["1", "2", "3"],
        _ => &["0.9", "0.8", "0.6", "0.5"],
    }
}

fn pick_symbols(rng: &mut ChaCha8Rng) -> Symbols {
    let with_binary = rng.gen_bool(0.2);
    let (n_const, n_unary) = if with_binary {
        (2, rng.gen_range(0..=1))
    } else {
        (rng.gen_range(2..=3), rng.gen_range(0..=2))
    };
    let n_preds = rng.gen_range(1..=4);
    Symbols {
        constants: ["a", "b", "c"][..n_const].to_vec(),
        unary: ["f", "h"][..n_unary].to_vec(),
        binary: if with_binary { vec!["g"] } else { Vec::new() },
        preds: (0..n_preds)
            .map(|i| (format!("p{i}"), rng.gen_range(0..=2)))
            .collect(),
    }
}

fn term(rng: &mut ChaCha8Rng, syms: &Symbols, vars: &[&str], depth: usize) -> String {
    let roll: f64 = rng.gen();
    if !vars.is_empty() && roll < 0.45 {
        return vars.choose(rng).unwrap().to_string();
    }
    if depth > 1 && roll < 0.75 {
        if let Some(f) = syms.unary.choose(rng) {
            return format!("{f}({})", term(rng, syms, vars, depth - 1));
        }
        if let Some(g) = syms.binary.choose(rng) {
            return format!(
                "{g}({}, {})",
                term(rng, syms, vars, depth - 1),
                term(rng, syms, vars, depth - 1)
            );
        }
    }
    syms.constants.choose(rng).unwrap().to_string()
}

fn atom(
    rng: &mut ChaCha8Rng,
    syms: &Symbols,
    pred: &(String, usize),
    vars: &[&str],
    depth: usize,
) -> String {
    if pred.1 == 0 {
        return pred.0.clone();
    }
    let args: Vec<String> = (0..pred.1).map(|_| term(rng, syms, vars, depth)).collect();
    format!("{}({})", pred.0, args.join(", "))
}

/// An atom whose variables are pairwise distinct, drawn from `X` and `Y`.
fn linear_atom(rng: &mut ChaCha8Rng, syms: &Symbols, pred: &(String, usize)) -> String {
    let mut unused = vec!["Y", "X"];
    let args: Vec<String> = (0..pred.1)
        .map(|_| loop {
            let t = term(rng, syms, &unused, 2);
            let taken: Vec<&str> = unused.iter().copied().filter(|v| t.contains(v)).collect();
            if t.matches(['X', 'Y']).count() <= 1 {
                unused.retain(|v| !taken.contains(v));
                break t;
            }
        })
        .collect();
    if args.is_empty() {
        return pred.0.clone();
    }
    format!("{}({})", pred.0, args.join(", "))
}

/// A random program in concrete syntax: at most 5 constructors, 4 predicates,
/// 8 clauses and arity 2.
pub fn random_program(rng: &mut ChaCha8Rng, shape: Shape) -> String {
    let syms = pick_symbols(rng);
    let atts = attenuations(&shape.domain);
    let mut text = format!("#domain {}\n", shape.domain);
    let n_clauses = rng.gen_range(1..=8);
    for k in 0..n_clauses {
        // Seed every predicate with at least one clause when possible.
        let head_index = if k < syms.preds.len() {
            k
        } else {
            rng.gen_range(0..syms.preds.len())
        };
        let head_pred = &syms.preds[head_index];
        let compound = !syms.unary.is_empty() || !syms.binary.is_empty();
        let head = if shape.acyclic && compound {
            linear_atom(rng, &syms, head_pred)
        } else {
            let head_vars: &[&str] = if rng.gen_bool(0.3) {
                &["X"]
            } else {
                &["X", "Y"]
            };
            atom(rng, &syms, head_pred, head_vars, 2)
        };
        let callable: Vec<&(String, usize)> = if shape.acyclic {
            syms.preds[..head_index].iter().collect()
        } else {
            syms.preds.iter().collect()
        };
        let n_body = if callable.is_empty() {
            0
        } else {
            rng.gen_range(0..=2)
        };
        let body: Vec<String> = (0..n_body)
            .map(|_| {
                let p = callable.choose(rng).unwrap();
                atom(rng, &syms, p, &["X", "Y", "Z"], 1)
            })
            .collect();
        let d = atts.choose(rng).unwrap();
        if body.is_empty() {
            text.push_str(&format!("{head} <-{d}-.\n"));
        } else {
            text.push_str(&format!("{head} <-{d}- {}.\n", body.join(", ")));
        }
    }
    let program = parse_program(&text).expect("generated program parses");
    let sig = program.signature();
    let mut groups: Vec<Vec<&Name>> = Vec::new();
    // Predicate similarity lets a predicate inherit bodies, which can close a cycle.
    let pools = if shape.acyclic {
        vec![sig.constructors()]
    } else {
        vec![sig.constructors(), sig.predicates()]
    };
    for pool in pools {
        for arity in 0..=2 {
            groups.push(
                pool.iter()
                    .filter(|(_, &n)| n == arity)
                    .map(|(s, _)| s)
                    .collect(),
            );
        }
    }
    let degs = degrees(&shape.domain);
    for group in groups {
        for (i, x) in group.iter().enumerate() {
            for y in &group[i + 1..] {
                if rng.gen_bool(0.5) {
                    text.push_str(&format!("sim({x}, {y}) = {}.\n", degs.choose(rng).unwrap()));
                }
            }
        }
    }
    text
}

pub fn load(text: &str) -> (Program, SimilarityRelation) {
    let program = parse_program(text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    let rel = SimilarityRelation::from_program(&program).unwrap_or_else(|e| panic!("{e}\n{text}"));
    (program, rel)
}

pub fn model(program: &Program, rel: &SimilarityRelation, depth: usize) -> ModelTable {
    let table = fixpoint_model(program, rel, depth, ROUNDS);
    assert!(
        table.is_saturated(),
        "fixpoint not saturated for\n{program}"
    );
    table
}

pub fn identity(program: &Program) -> SimilarityRelation {
    SimilarityRelation::identity(program.domain.clone())
}

pub fn predicate_names(program: &Program) -> BTreeSet<Name> {
    program.signature().predicates().keys().cloned().collect()
}

/// Ground terms and ground-term depths used by term-pair sampling.
pub fn ground_terms(program: &Program, depth: usize) -> Vec<Term> {
    sqlp::semantics::ground_universe(program.signature().constructors(), depth)
}

/// A random value of `domain`, biased towards small denominators.
pub fn random_value(rng: &mut ChaCha8Rng, domain: &Domain) -> Value {
    match domain {
        Domain::B => Value::Bool(rng.gen()),
        Domain::U | Domain::Uq => {
            let den = rng.gen_range(1..=40);
            Value::certainty(rng.gen_range(0..=den), den)
        }
        Domain::W | Domain::Wq => {
            if rng.gen_bool(0.1) {
                Value::infinity()
            } else {
                Value::weight(rng.gen_range(0..=60), rng.gen_range(1..=6))
            }
        }
        Domain::Product(l, r) => {
            let (a, b) = (random_value(rng, l), random_value(rng, r));
            domain.pair(a, b).unwrap()
        }
    }
}

pub const EQUIVALENCE_DEPTH: usize = 3;
pub const PAIR_DEPTH: usize = 3;

/// Entries of `source` and `transformed` over the source's predicates that differ.
pub fn mismatches(text: &str, opts: TransformOptions) -> Vec<String> {
    let (program, rel) = load(text);
    let tp = eliminate_with(&program, &rel, opts).unwrap();
    let preds = predicate_names(&program);
    let source = model(&program, &rel, EQUIVALENCE_DEPTH).restricted_to(&preds);
    let target =
        model(&tp.program, &identity(&tp.program), EQUIVALENCE_DEPTH).restricted_to(&preds);
    let mut out = Vec::new();
    for atom in source.keys().chain(target.keys()) {
        let (s, t) = (source.get(atom), target.get(atom));
        if s != t {
            out.push(format!("{atom}: source {s:?}, transformed {t:?}"));
        }
    }
    out.dedup();
    out
}

/// Sampled term pairs and how many of them were related.
#[derive(Debug, Default)]
pub struct Tally {
    pub pairs: usize,
    pub related: usize,
}

/// The similarity predicate never exceeds the closed degree and reaches it
/// on `pairs` sampled ground pairs.
pub fn check_sim_predicate(text: &str, rng: &mut ChaCha8Rng, pairs: usize) -> Tally {
    let (program, rel) = load(text);
    let tp = eliminate_with(
        &program,
        &rel,
        TransformOptions {
            full_sim_clauses: true,
        },
    )
    .unwrap();
    let sim = tp
        .sim_predicate
        .clone()
        .expect("similarity clauses emitted");
    let table = model(&tp.program, &identity(&tp.program), PAIR_DEPTH);
    let domain = &program.domain;

    // Every derived entry is bounded by the closed degree.
    for (atom, values) in table.iter() {
        if atom.pred != sim {
            continue;
        }
        let closed = rel.sim_term(&atom.args[0], &atom.args[1]);
        for d in values {
            assert!(
                domain.leq(d, &closed).unwrap(),
                "{atom} # {d} exceeds {closed}\n{text}"
            );
        }
    }

    let universe = ground_terms(&program, PAIR_DEPTH);
    let mut tally = Tally::default();
    while tally.pairs < pairs {
        let t = universe.choose(rng).unwrap().clone();
        let s = if rng.gen_bool(0.5) {
            let similar = rel.similar_terms(&t);
            similar.choose(rng).unwrap().0.clone()
        } else {
            universe.choose(rng).unwrap().clone()
        };
        let closed = rel.sim_term(&t, &s);
        let atom = Atom::new(&sim, vec![t.clone(), s.clone()]);
        let derived = table.get(&atom);
        match &derived {
            Some(d) => assert!(
                domain.leq(d, &closed).unwrap(),
                "{atom} # {d} exceeds {closed}\n{text}"
            ),
            None => assert!(
                domain.is_bottom(&closed),
                "{atom} missing, degree {closed}\n{text}"
            ),
        }
        if !domain.is_bottom(&closed) {
            let d = derived.unwrap();
            assert!(
                domain.leq(&closed, &d).unwrap(),
                "{atom} # {d} below {closed}\n{text}"
            );
            tally.related += 1;
        }
        tally.pairs += 1;
    }
    tally
}

/// Four thresholds of increasing strength.
pub fn thresholds(domain: &Domain) -> Vec<Value> {
    let texts: &[&str] = match domain {
        Domain::W => &["4", "3", "2", "1"],
        _ => &["0.3", "0.5", "0.7", "0.9"],
    };
    texts
        .iter()
        .map(|t| domain.parse_value(t).unwrap())
        .collect()
}

pub fn answers(tp: &TransformedProgram, goal: &str, opts: &SolverOptions) -> Vec<Answer> {
    let goal = parse_goal(goal, &tp.program).unwrap_or_else(|e| panic!("{goal}: {e}"));
    let mut sols = solve(tp, &goal, opts).unwrap();
    let out: Vec<Answer> = sols.by_ref().collect();
    assert!(!sols.is_truncated(), "search truncated for {goal}");
    out
}

pub fn lines(answers: &[Answer]) -> Vec<String> {
    let mut out: Vec<String> = answers.iter().map(ToString::to_string).collect();
    out.sort();
    out
}

pub fn is_sub_multiset(small: &[String], large: &[String]) -> bool {
    let mut rest = large.to_vec();
    small
        .iter()
        .all(|s| match rest.iter().position(|l| l == s) {
            Some(i) => {
                rest.swap_remove(i);
                true
            }
            None => false,
        })
}

pub fn open_goal(pred: &str, arity: usize) -> String {
    if arity == 0 {
        return format!("{pred}#W");
    }
    let vars: Vec<String> = (0..arity).map(|i| format!("A{i}")).collect();
    format!("{pred}({})#W", vars.join(", "))
}

pub fn with_threshold(goal: &str, beta: &Value) -> String {
    format!("{goal} | W >= {beta}")
}

/// Prune-neutrality and threshold monotonicity for one open goal.
pub fn check_thresholds(tp: &TransformedProgram, goal: &str) {
    let domain = &tp.program.domain;
    let pruned = SolverOptions::default();
    let unpruned = SolverOptions {
        prune: false,
        ..SolverOptions::default()
    };
    let betas = thresholds(domain);
    let mut by_beta = Vec::new();
    for beta in &betas {
        let g = with_threshold(goal, beta);
        let on = lines(&answers(tp, &g, &pruned));
        let off = lines(&answers(tp, &g, &unpruned));
        assert_eq!(on, off, "prune changed answers of {g}\n{}", tp.program);
        by_beta.push((beta, on));
    }
    for (b1, a1) in &by_beta {
        for (b2, a2) in &by_beta {
            if domain.leq(b1, b2).unwrap() {
                assert!(
                    is_sub_multiset(a2, a1),
                    "{goal}: {b2} gives more than {b1}\n{}",
                    tp.program
                );
            }
        }
    }
}
