//! Proof trees for the similarity-based qualified Horn logic, entailment
//! between qualified atoms, and a bounded bottom-up model oracle.
//!
//! With the identity relation every witness degree is top and the calculus
//! is plain qualified modus ponens, so the same checker and oracle serve
//! transformed programs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::domain::{Domain, DomainError, Value};
use crate::similarity::{SimilarityRelation, Witness};
use crate::syntax::{
    linearize_avoiding, match_atom, Atom, Clause, Linearization, Name, Program, Substitution, Term,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("clause index {index} out of range (program has {len} clauses)")]
    InvalidClause { index: usize, len: usize },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// `A#d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QualifiedAtom {
    pub atom: Atom,
    pub value: Value,
}

impl QualifiedAtom {
    pub fn new(atom: Atom, value: Value) -> Self {
        QualifiedAtom { atom, value }
    }
}

impl fmt::Display for QualifiedAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.atom, self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTree {
    pub conclusion: QualifiedAtom,
    pub clause_index: usize,
    pub witness: Witness,
    pub children: Vec<ProofTree>,
}

impl ProofTree {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ProofTree::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(ProofTree::height)
            .max()
            .unwrap_or(0)
    }
}

/// Linearization of a clause head whose fresh names avoid every clause variable.
pub fn linearize_head(clause: &Clause) -> Linearization {
    linearize_avoiding(&clause.head, &clause.vars())
}

/// Checks one inference node against its clause.
pub fn check_step(
    program: &Program,
    rel: &SimilarityRelation,
    node: &ProofTree,
) -> Result<bool, SemanticsError> {
    let domain = &program.domain;
    let clause = program
        .clauses()
        .get(node.clause_index)
        .ok_or(SemanticsError::InvalidClause {
            index: node.clause_index,
            len: program.clauses().len(),
        })?;
    if node.children.len() != clause.body.len() {
        return Ok(false);
    }
    let theta = &node.witness.substitution;
    if theta.apply_atom(&node.witness.head_variant) != node.conclusion.atom {
        return Ok(false);
    }
    for (child, b) in node.children.iter().zip(&clause.body) {
        if theta.apply_atom(b) != child.conclusion.atom {
            return Ok(false);
        }
    }
    let lin = linearize_head(clause);
    let mut delta = rel.sim_atom(&lin.linear_atom, &node.witness.head_variant);
    for (x, xi) in &lin.conditions {
        let tx = theta.apply_term(&Term::Var(x.clone()));
        let ti = theta.apply_term(&Term::Var(xi.clone()));
        delta = domain.glb(&delta, &rel.sim_term(&tx, &ti))?;
    }
    if domain.is_bottom(&delta) || delta != node.witness.degree {
        return Ok(false);
    }
    let inputs = std::iter::once(&delta).chain(node.children.iter().map(|c| &c.conclusion.value));
    let bound = domain.atten(&clause.attenuation, &domain.glb_set(inputs)?)?;
    let value = &node.conclusion.value;
    if !domain.contains(value) {
        return Err(DomainError::Mismatch {
            domain: domain.clone(),
            value: value.to_string(),
        }
        .into());
    }
    Ok(!domain.is_bottom(value) && domain.leq(value, &bound)?)
}

/// Checks every node of a tree.
pub fn check_tree(
    program: &Program,
    rel: &SimilarityRelation,
    tree: &ProofTree,
) -> Result<bool, SemanticsError> {
    if !check_step(program, rel, tree)? {
        return Ok(false);
    }
    for c in &tree.children {
        if !check_tree(program, rel, c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `from ≽ to`: some witness degree `δ` of `to.atom` against `from.atom`
/// satisfies `to.value ⊑ from.value ∘ δ`.
pub fn entails(
    rel: &SimilarityRelation,
    domain: &Domain,
    from: &QualifiedAtom,
    to: &QualifiedAtom,
) -> Result<bool, SemanticsError> {
    for delta in rel.witness_degrees(&from.atom, &to.atom) {
        if domain.leq(&to.value, &domain.atten(&from.value, &delta)?)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Ground terms of depth at most `depth` over the given constructors, by
/// increasing depth.
pub fn ground_universe(constructors: &BTreeMap<Name, usize>, depth: usize) -> Vec<Term> {
    let mut all: Vec<Term> = Vec::new();
    let mut seen: BTreeSet<Term> = BTreeSet::new();
    for _ in 0..depth {
        let prev = all.clone();
        for (c, &n) in constructors {
            for args in tuples(&prev, n) {
                let t = Term::App(c.clone(), args);
                if seen.insert(t.clone()) {
                    all.push(t);
                }
            }
        }
    }
    all
}

fn tuples(pool: &[Term], n: usize) -> Vec<Vec<Term>> {
    let mut acc: Vec<Vec<Term>> = vec![Vec::new()];
    for _ in 0..n {
        acc = acc
            .iter()
            .flat_map(|p| {
                pool.iter().map(move |t| {
                    let mut q = p.clone();
                    q.push(t.clone());
                    q
                })
            })
            .collect();
    }
    acc
}

#[derive(Debug, Clone)]
struct Justification {
    clause_index: usize,
    witness: Witness,
    premises: Vec<(Atom, Value)>,
}

/// Best derived values of ground atoms within a term-depth bound.
#[derive(Debug, Clone)]
pub struct ModelTable {
    domain: Domain,
    entries: BTreeMap<Name, BTreeMap<Atom, Vec<Value>>>,
    term_depth: usize,
    saturated: bool,
    rounds: usize,
    justifications: HashMap<(Atom, Value), Justification>,
}

impl ModelTable {
    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn term_depth(&self) -> usize {
        self.term_depth
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Maximal derived values of `atom`; a single value in linear domains.
    pub fn values(&self, atom: &Atom) -> &[Value] {
        self.entries
            .get(&atom.pred)
            .and_then(|m| m.get(atom))
            .map_or(&[], Vec::as_slice)
    }

    /// The best value of `atom`: the lub of its maximal values.
    pub fn get(&self, atom: &Atom) -> Option<Value> {
        let vals = self.values(atom);
        let first = vals.first()?.clone();
        Some(
            vals[1..]
                .iter()
                .fold(first, |a, b| self.domain.lub_unchecked(&a, b)),
        )
    }

    pub fn len(&self) -> usize {
        self.entries.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, &[Value])> {
        self.entries
            .values()
            .flat_map(|m| m.iter().map(|(a, v)| (a, v.as_slice())))
    }

    /// Entries whose predicate is in `preds`, as a comparable map.
    pub fn restricted_to(&self, preds: &BTreeSet<Name>) -> BTreeMap<Atom, BTreeSet<String>> {
        self.iter()
            .filter(|(a, _)| preds.contains(&a.pred))
            .map(|(a, vs)| (a.clone(), vs.iter().map(Value::to_string).collect()))
            .collect()
    }

    /// One `atom # value` line per entry, sorted.
    pub fn dump(&self) -> String {
        let mut lines: Vec<String> = self
            .iter()
            .flat_map(|(a, vs)| vs.iter().map(move |v| format!("{a} # {v}")))
            .collect();
        lines.sort();
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }

    /// Rebuilds the recorded derivation of `atom#value`.
    pub fn proof(&self, atom: &Atom, value: &Value) -> Option<ProofTree> {
        let j = self.justifications.get(&(atom.clone(), value.clone()))?;
        let children = j
            .premises
            .iter()
            .map(|(a, v)| self.proof(a, v))
            .collect::<Option<Vec<_>>>()?;
        Some(ProofTree {
            conclusion: QualifiedAtom::new(atom.clone(), value.clone()),
            clause_index: j.clause_index,
            witness: j.witness.clone(),
            children,
        })
    }

    fn covers(&self, atom: &Atom, value: &Value) -> bool {
        self.values(atom)
            .iter()
            .any(|u| self.domain.leq_unchecked(value, u))
    }

    /// Adds `value` unless dominated; drops values it dominates.
    fn insert(&mut self, atom: Atom, value: Value, why: Justification) -> bool {
        let slot = self
            .entries
            .entry(atom.pred.clone())
            .or_default()
            .entry(atom.clone())
            .or_default();
        if slot.iter().any(|u| self.domain.leq_unchecked(&value, u)) {
            return false;
        }
        slot.retain(|u| !self.domain.leq_unchecked(u, &value));
        slot.push(value.clone());
        self.justifications.entry((atom, value)).or_insert(why);
        true
    }
}

struct CompiledClause<'a> {
    index: usize,
    clause: &'a Clause,
    conditions: Vec<(Name, Name)>,
    variants: Vec<(Atom, Value)>,
    /// Original head variables, first occurrences only.
    head_vars: Vec<Name>,
    /// Deepest term a head variable may take without pushing the head past the bound.
    depth_limits: BTreeMap<Name, usize>,
}

fn collect_depth_limits(t: &Term, room: usize, out: &mut BTreeMap<Name, usize>) {
    match t {
        Term::Var(v) => {
            let limit = out.entry(v.clone()).or_insert(room);
            *limit = (*limit).min(room);
        }
        Term::App(_, args) => {
            for a in args {
                collect_depth_limits(a, room.saturating_sub(1), out);
            }
        }
    }
}

/// Iterates one-step consequences over ground atoms whose terms have depth at
/// most `term_depth`, until no entry improves or `max_rounds` is reached.
pub fn fixpoint_model(
    program: &Program,
    rel: &SimilarityRelation,
    term_depth: usize,
    max_rounds: usize,
) -> ModelTable {
    let domain = program.domain.clone();
    let universe = ground_universe(program.signature().constructors(), term_depth);
    let compiled: Vec<CompiledClause<'_>> = program
        .clauses()
        .iter()
        .enumerate()
        .map(|(index, clause)| {
            let lin = linearize_head(clause);
            let fresh: BTreeSet<&Name> = lin.conditions.iter().map(|(_, f)| f).collect();
            let mut seen = BTreeSet::new();
            let head_vars = lin
                .linear_atom
                .var_occurrences()
                .into_iter()
                .filter(|v| !fresh.contains(v) && seen.insert(v.clone()))
                .collect();
            let mut depth_limits = BTreeMap::new();
            for a in &lin.linear_atom.args {
                collect_depth_limits(a, term_depth, &mut depth_limits);
            }
            CompiledClause {
                index,
                clause,
                depth_limits,
                variants: rel.similar_atoms(&lin.linear_atom),
                conditions: lin.conditions,
                head_vars,
            }
        })
        .collect();
    let mut table = ModelTable {
        domain: domain.clone(),
        entries: BTreeMap::new(),
        term_depth,
        saturated: false,
        rounds: 0,
        justifications: HashMap::new(),
    };
    while table.rounds < max_rounds {
        table.rounds += 1;
        let mut candidates = Vec::new();
        for cc in &compiled {
            consequences(cc, &table, rel, &universe, term_depth, &mut candidates);
        }
        let mut changed = false;
        for (atom, value, why) in candidates {
            changed |= table.insert(atom, value, why);
        }
        if !changed {
            table.saturated = true;
            break;
        }
    }
    table
}

type Partial = (BTreeMap<Name, Term>, Vec<(Atom, Value)>);

fn consequences(
    cc: &CompiledClause<'_>,
    table: &ModelTable,
    rel: &SimilarityRelation,
    universe: &[Term],
    term_depth: usize,
    out: &mut Vec<(Atom, Value, Justification)>,
) {
    let domain = &table.domain;
    let mut partials: Vec<Partial> = vec![(BTreeMap::new(), Vec::new())];
    for b in &cc.clause.body {
        let Some(rows) = table.entries.get(&b.pred) else {
            return;
        };
        let mut next = Vec::new();
        for (sigma, prem) in &partials {
            let pattern: Substitution = sigma.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
            let pattern = pattern.apply_atom(b);
            let matches: Box<dyn Iterator<Item = (&Atom, &Vec<Value>)>> = if pattern.is_ground() {
                Box::new(rows.get_key_value(&pattern).into_iter())
            } else {
                Box::new(rows.iter())
            };
            for (ground, vals) in matches {
                let Some(ext) = match_atom(&pattern, ground) else {
                    continue;
                };
                let too_deep = ext.iter().any(|(k, t)| {
                    cc.depth_limits
                        .get(k)
                        .is_some_and(|&limit| t.depth() > limit)
                });
                if too_deep {
                    continue;
                }
                let mut s = sigma.clone();
                s.extend(ext.iter().map(|(k, v)| (k.clone(), v.clone())));
                for v in vals {
                    let mut p = prem.clone();
                    p.push((ground.clone(), v.clone()));
                    next.push((s.clone(), p));
                }
            }
        }
        partials = next;
        if partials.is_empty() {
            return;
        }
    }
    // Rows that agree on the head variables only matter through their best body values.
    let mut best: BTreeMap<Vec<Option<Term>>, Vec<(Value, Partial)>> = BTreeMap::new();
    for (sigma, prem) in partials {
        let body_glb = domain.glb_set_unchecked(prem.iter().map(|(_, v)| v));
        let key = cc.head_vars.iter().map(|v| sigma.get(v).cloned()).collect();
        let slot = best.entry(key).or_default();
        if slot.iter().any(|(u, _)| domain.leq_unchecked(&body_glb, u)) {
            continue;
        }
        slot.retain(|(u, _)| !domain.leq_unchecked(u, &body_glb));
        slot.push((body_glb, (sigma, prem)));
    }
    for (body_glb, (sigma, prem)) in best.into_values().flatten() {
        let unbound: Vec<&Name> = cc
            .head_vars
            .iter()
            .filter(|v| !sigma.contains_key(*v))
            .collect();
        for_each_assignment(&unbound, universe, &sigma, &mut |theta| {
            let mut choice: Vec<Vec<(Term, Value)>> = Vec::with_capacity(cc.conditions.len());
            for (x, _) in &cc.conditions {
                choice.push(rel.similar_terms(&theta[x]));
            }
            for_each_choice(&choice, &mut |picks| {
                let mut theta = theta.clone();
                let mut cond = domain.top();
                for ((_, fresh), (t, d)) in cc.conditions.iter().zip(picks) {
                    theta.insert(fresh.clone(), t.clone());
                    cond = domain.glb_unchecked(&cond, d);
                }
                let subst: Substitution =
                    theta.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
                for (variant, w) in &cc.variants {
                    let delta = domain.glb_unchecked(w, &cond);
                    if domain.is_bottom(&delta) {
                        continue;
                    }
                    let value = domain.atten_unchecked(
                        &cc.clause.attenuation,
                        &domain.glb_unchecked(&delta, &body_glb),
                    );
                    if domain.is_bottom(&value) {
                        continue;
                    }
                    let head = subst.apply_atom(variant);
                    if head.args.iter().any(|t| t.depth() > term_depth)
                        || table.covers(&head, &value)
                    {
                        continue;
                    }
                    out.push((
                        head,
                        value,
                        Justification {
                            clause_index: cc.index,
                            witness: Witness {
                                head_variant: variant.clone(),
                                substitution: subst.clone(),
                                degree: delta,
                            },
                            premises: prem.clone(),
                        },
                    ));
                }
            });
        });
    }
}

fn for_each_assignment(
    vars: &[&Name],
    universe: &[Term],
    base: &BTreeMap<Name, Term>,
    f: &mut impl FnMut(&BTreeMap<Name, Term>),
) {
    match vars.split_first() {
        None => f(base),
        Some((v, rest)) => {
            for t in universe {
                let mut b = base.clone();
                b.insert((*v).clone(), t.clone());
                for_each_assignment(rest, universe, &b, f);
            }
        }
    }
}

fn for_each_choice<'a>(
    options: &'a [Vec<(Term, Value)>],
    f: &mut impl FnMut(&[&'a (Term, Value)]),
) {
    fn go<'a>(
        options: &'a [Vec<(Term, Value)>],
        picked: &mut Vec<&'a (Term, Value)>,
        f: &mut impl FnMut(&[&'a (Term, Value)]),
    ) {
        match options.split_first() {
            None => f(picked),
            Some((first, rest)) => {
                for o in first {
                    picked.push(o);
                    go(rest, picked, f);
                    picked.pop();
                }
            }
        }
    }
    go(options, &mut Vec::new(), f)
}
