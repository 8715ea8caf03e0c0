//! Syntactic unification with occurs check, and one-way matching.

use std::collections::BTreeMap;

use super::{Atom, Name, Substitution, Term};

fn resolve<'a>(t: &'a Term, bound: &'a BTreeMap<Name, Term>) -> &'a Term {
    let mut t = t;
    while let Term::Var(v) = t {
        match bound.get(v) {
            Some(next) => t = next,
            None => break,
        }
    }
    t
}

fn occurs(var: &Name, t: &Term, bound: &BTreeMap<Name, Term>) -> bool {
    match resolve(t, bound) {
        Term::Var(w) => w == var,
        Term::App(_, args) => args.iter().any(|a| occurs(var, a, bound)),
    }
}

fn fully_apply(t: &Term, bound: &BTreeMap<Name, Term>) -> Term {
    match resolve(t, bound) {
        Term::Var(v) => Term::Var(v.clone()),
        Term::App(c, args) => Term::App(
            c.clone(),
            args.iter().map(|a| fully_apply(a, bound)).collect(),
        ),
    }
}

/// Most general unifier of two term lists, idempotent when present.
pub fn mgu_terms(left: &[Term], right: &[Term]) -> Option<Substitution> {
    if left.len() != right.len() {
        return None;
    }
    let mut bound: BTreeMap<Name, Term> = BTreeMap::new();
    let mut stack: Vec<(Term, Term)> = left
        .iter()
        .cloned()
        .zip(right.iter().cloned())
        .rev()
        .collect();
    while let Some((a, b)) = stack.pop() {
        let a = resolve(&a, &bound).clone();
        let b = resolve(&b, &bound).clone();
        match (a, b) {
            (Term::Var(x), Term::Var(y)) if x == y => {}
            (Term::Var(x), t) | (t, Term::Var(x)) => {
                if occurs(&x, &t, &bound) {
                    return None;
                }
                bound.insert(x, t);
            }
            (Term::App(f, fs), Term::App(g, gs)) => {
                if f != g || fs.len() != gs.len() {
                    return None;
                }
                stack.extend(fs.into_iter().zip(gs).rev());
            }
        }
    }
    Some(
        bound
            .keys()
            .map(|v| (v.clone(), fully_apply(&Term::Var(v.clone()), &bound)))
            .collect(),
    )
}

pub fn mgu(a: &Atom, b: &Atom) -> Option<Substitution> {
    if a.pred != b.pred {
        return None;
    }
    mgu_terms(&a.args, &b.args)
}

fn match_into(pattern: &Term, target: &Term, out: &mut BTreeMap<Name, Term>) -> bool {
    match (pattern, target) {
        (Term::Var(v), _) => match out.get(v) {
            Some(t) => t == target,
            None => {
                out.insert(v.clone(), target.clone());
                true
            }
        },
        (Term::App(f, fs), Term::App(g, gs)) => {
            f == g && fs.len() == gs.len() && fs.iter().zip(gs).all(|(p, t)| match_into(p, t, out))
        }
        _ => false,
    }
}

/// The substitution `θ` with `θ(pattern) = target`, if any.
pub fn match_term(pattern: &Term, target: &Term) -> Option<Substitution> {
    let mut out = BTreeMap::new();
    match_into(pattern, target, &mut out).then(|| out.into_iter().collect())
}

pub fn match_atom(pattern: &Atom, target: &Atom) -> Option<Substitution> {
    if pattern.pred != target.pred || pattern.args.len() != target.args.len() {
        return None;
    }
    let mut out = BTreeMap::new();
    pattern
        .args
        .iter()
        .zip(&target.args)
        .all(|(p, t)| match_into(p, t, &mut out))
        .then(|| out.into_iter().collect())
}
