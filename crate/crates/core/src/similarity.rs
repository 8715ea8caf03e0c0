//! Domain-valued similarity relations over constructor and predicate symbols.
//!
//! A relation is built by closing a finite set of generators under symmetry
//! and glb-transitivity. Reflexive entries are implicit. The relation extends
//! to terms and atoms position by position, and drives the enumeration of
//! similar head variants and the computation of R-instance witnesses.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::domain::{Domain, DomainError, Value};
use crate::syntax::{
    linearize, Atom, Name, Program, Signature, SimDecl, Substitution, SymbolKind, Term,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimilarityError {
    #[error("similarity between `{left}` and `{right}`: unknown symbol `{missing}`")]
    UnknownSymbol {
        left: String,
        right: String,
        missing: String,
    },
    #[error("similarity between `{left}` and `{right}` relates a {left_kind} and a {right_kind}")]
    KindMismatch {
        left: String,
        right: String,
        left_kind: SymbolKind,
        right_kind: SymbolKind,
    },
    #[error(
        "similarity between `{left}` and `{right}` relates arities {left_arity} and {right_arity}"
    )]
    ArityMismatch {
        left: String,
        right: String,
        left_arity: usize,
        right_arity: usize,
    },
    #[error("similarity degree for `{left}`~`{right}` must not be bottom")]
    BottomDegree { left: String, right: String },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// An R-instance witness for one atom against another: the similar variant of
/// the linearized atom, the matching substitution, and the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub head_variant: Atom,
    pub substitution: Substitution,
    pub degree: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityRelation {
    domain: Domain,
    table: BTreeMap<(Name, Name), Value>,
    neighbours: BTreeMap<Name, Vec<(Name, Value)>>,
}

fn key(x: &Name, y: &Name) -> (Name, Name) {
    if x <= y {
        (x.clone(), y.clone())
    } else {
        (y.clone(), x.clone())
    }
}

impl SimilarityRelation {
    /// The identity relation: every symbol is similar only to itself.
    pub fn identity(domain: Domain) -> Self {
        SimilarityRelation {
            domain,
            table: BTreeMap::new(),
            neighbours: BTreeMap::new(),
        }
    }

    /// Least symmetric, transitive relation containing `generators`.
    pub fn close(
        generators: &[SimDecl],
        domain: &Domain,
        signature: &Signature,
    ) -> Result<Self, SimilarityError> {
        let mut table: BTreeMap<(Name, Name), Value> = BTreeMap::new();
        for g in generators {
            let (left, right) = (g.left.to_string(), g.right.to_string());
            let look = |n: &Name| {
                signature
                    .lookup(n)
                    .ok_or_else(|| SimilarityError::UnknownSymbol {
                        left: left.clone(),
                        right: right.clone(),
                        missing: n.to_string(),
                    })
            };
            let (lk, la) = look(&g.left)?;
            let (rk, ra) = look(&g.right)?;
            if lk != rk {
                return Err(SimilarityError::KindMismatch {
                    left,
                    right,
                    left_kind: lk,
                    right_kind: rk,
                });
            }
            if la != ra {
                return Err(SimilarityError::ArityMismatch {
                    left,
                    right,
                    left_arity: la,
                    right_arity: ra,
                });
            }
            if !domain.contains(&g.degree) {
                return Err(DomainError::Mismatch {
                    domain: domain.clone(),
                    value: g.degree.to_string(),
                }
                .into());
            }
            if domain.is_bottom(&g.degree) {
                return Err(SimilarityError::BottomDegree { left, right });
            }
            if g.left == g.right {
                continue;
            }
            let k = key(&g.left, &g.right);
            let merged = match table.get(&k) {
                Some(old) => domain.lub_unchecked(old, &g.degree),
                None => g.degree.clone(),
            };
            table.insert(k, merged);
        }
        Ok(Self::from_table(domain.clone(), close_table(domain, table)))
    }

    pub fn from_program(program: &Program) -> Result<Self, SimilarityError> {
        Self::close(program.similarities(), &program.domain, program.signature())
    }

    fn from_table(domain: Domain, table: BTreeMap<(Name, Name), Value>) -> Self {
        let mut neighbours: BTreeMap<Name, Vec<(Name, Value)>> = BTreeMap::new();
        for ((x, y), v) in &table {
            neighbours
                .entry(x.clone())
                .or_default()
                .push((y.clone(), v.clone()));
            neighbours
                .entry(y.clone())
                .or_default()
                .push((x.clone(), v.clone()));
        }
        SimilarityRelation {
            domain,
            table,
            neighbours,
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn is_identity(&self) -> bool {
        self.table.is_empty()
    }

    /// Stored entries `(x, y, degree)` with `x < y`.
    pub fn entries(&self) -> impl Iterator<Item = (&Name, &Name, &Value)> {
        self.table.iter().map(|((x, y), v)| (x, y, v))
    }

    /// Symbols related to something other than themselves.
    pub fn symbols(&self) -> BTreeSet<Name> {
        self.neighbours.keys().cloned().collect()
    }

    /// Degree between two symbols (or two variable names): top when equal,
    /// the table entry when present, bottom otherwise.
    pub fn degree(&self, x: &str, y: &str) -> Value {
        if x == y {
            return self.domain.top();
        }
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        self.table
            .get(&(Name::from(a), Name::from(b)))
            .cloned()
            .unwrap_or_else(|| self.domain.bottom())
    }

    /// Symbols similar to `x`, itself first at top.
    pub fn similar_symbols(&self, x: &Name) -> Vec<(Name, Value)> {
        let mut out = vec![(x.clone(), self.domain.top())];
        if let Some(ns) = self.neighbours.get(x) {
            out.extend(ns.iter().cloned());
        }
        out
    }

    pub fn sim_term(&self, t: &Term, s: &Term) -> Value {
        let mut acc = self.domain.top();
        if self.accumulate(t, s, &mut acc) {
            acc
        } else {
            self.domain.bottom()
        }
    }

    fn accumulate(&self, t: &Term, s: &Term, acc: &mut Value) -> bool {
        match (t, s) {
            (Term::Var(x), Term::Var(y)) => x == y,
            (Term::App(c, ts), Term::App(d, ss)) => {
                if ts.len() != ss.len() {
                    return false;
                }
                if c != d {
                    let deg = self.degree(c, d);
                    if self.domain.is_bottom(&deg) {
                        return false;
                    }
                    *acc = self.domain.glb_unchecked(acc, &deg);
                }
                ts.iter().zip(ss).all(|(a, b)| self.accumulate(a, b, acc))
            }
            _ => false,
        }
    }

    pub fn sim_atom(&self, a: &Atom, b: &Atom) -> Value {
        if a.args.len() != b.args.len() {
            return self.domain.bottom();
        }
        let mut acc = self.degree(&a.pred, &b.pred);
        if self.domain.is_bottom(&acc) {
            return acc;
        }
        let ok = a
            .args
            .iter()
            .zip(&b.args)
            .all(|(x, y)| self.accumulate(x, y, &mut acc));
        if ok {
            acc
        } else {
            self.domain.bottom()
        }
    }

    /// All terms obtained from `t` by replacing constructor occurrences with
    /// similar ones, with their degrees; `(t, top)` comes first.
    pub fn similar_terms(&self, t: &Term) -> Vec<(Term, Value)> {
        match t {
            Term::Var(_) => vec![(t.clone(), self.domain.top())],
            Term::App(c, args) => {
                let heads = self.similar_symbols(c);
                let tails = self.similar_lists(args);
                let mut out = Vec::with_capacity(heads.len() * tails.len());
                for (h, hv) in &heads {
                    for (ts, tv) in &tails {
                        let v = self.domain.glb_unchecked(hv, tv);
                        if !self.domain.is_bottom(&v) {
                            out.push((Term::App(h.clone(), ts.clone()), v));
                        }
                    }
                }
                out
            }
        }
    }

    fn similar_lists(&self, args: &[Term]) -> Vec<(Vec<Term>, Value)> {
        let mut acc: Vec<(Vec<Term>, Value)> = vec![(Vec::new(), self.domain.top())];
        for a in args {
            let options = self.similar_terms(a);
            let mut next = Vec::with_capacity(acc.len() * options.len());
            for (prefix, pv) in &acc {
                for (t, tv) in &options {
                    let v = self.domain.glb_unchecked(pv, tv);
                    if self.domain.is_bottom(&v) {
                        continue;
                    }
                    let mut p = prefix.clone();
                    p.push(t.clone());
                    next.push((p, v));
                }
            }
            acc = next;
        }
        acc
    }

    /// All atoms similar to `a` by symbol replacement, with their degrees;
    /// `(a, top)` comes first.
    pub fn similar_atoms(&self, a: &Atom) -> Vec<(Atom, Value)> {
        let preds = self.similar_symbols(&a.pred);
        let tails = self.similar_lists(&a.args);
        let mut out = Vec::with_capacity(preds.len() * tails.len());
        for (p, pv) in &preds {
            for (ts, tv) in &tails {
                let v = self.domain.glb_unchecked(pv, tv);
                if !self.domain.is_bottom(&v) {
                    out.push((
                        Atom {
                            pred: p.clone(),
                            args: ts.clone(),
                        },
                        v,
                    ));
                }
            }
        }
        out
    }

    /// Every way `target` is an R-instance of `a`. Because the linearized atom
    /// is linear and its symbols are fixed by the target, there is at most one.
    pub fn witnesses(&self, a: &Atom, target: &Atom) -> Vec<Witness> {
        let lin = linearize(a);
        self.witness_for_linear(&lin.linear_atom, &lin.conditions, target)
            .into_iter()
            .collect()
    }

    /// Witness of `target` against an already linearized atom.
    pub fn witness_for_linear(
        &self,
        linear: &Atom,
        conditions: &[(Name, Name)],
        target: &Atom,
    ) -> Option<Witness> {
        if linear.args.len() != target.args.len() {
            return None;
        }
        let mut degree = self.degree(&linear.pred, &target.pred);
        if self.domain.is_bottom(&degree) {
            return None;
        }
        let mut binding: BTreeMap<Name, Term> = BTreeMap::new();
        let mut variant_args = Vec::with_capacity(linear.args.len());
        for (p, t) in linear.args.iter().zip(&target.args) {
            variant_args.push(self.variant_walk(p, t, &mut degree, &mut binding)?);
        }
        for (x, xi) in conditions {
            let (Some(tx), Some(ti)) = (binding.get(x), binding.get(xi)) else {
                return None;
            };
            let d = self.sim_term(tx, ti);
            if self.domain.is_bottom(&d) {
                return None;
            }
            degree = self.domain.glb_unchecked(&degree, &d);
        }
        if self.domain.is_bottom(&degree) {
            return None;
        }
        Some(Witness {
            head_variant: Atom {
                pred: target.pred.clone(),
                args: variant_args,
            },
            substitution: binding.into_iter().collect(),
            degree,
        })
    }

    fn variant_walk(
        &self,
        pattern: &Term,
        target: &Term,
        degree: &mut Value,
        binding: &mut BTreeMap<Name, Term>,
    ) -> Option<Term> {
        match (pattern, target) {
            (Term::Var(v), t) => {
                match binding.get(v) {
                    Some(old) if old != t => return None,
                    _ => {
                        binding.insert(v.clone(), t.clone());
                    }
                }
                Some(pattern.clone())
            }
            (Term::App(c, ps), Term::App(d, ts)) => {
                if ps.len() != ts.len() {
                    return None;
                }
                if c != d {
                    let deg = self.degree(c, d);
                    if self.domain.is_bottom(&deg) {
                        return None;
                    }
                    *degree = self.domain.glb_unchecked(degree, &deg);
                }
                let args = ps
                    .iter()
                    .zip(ts)
                    .map(|(p, t)| self.variant_walk(p, t, degree, binding))
                    .collect::<Option<Vec<_>>>()?;
                Some(Term::App(d.clone(), args))
            }
            _ => None,
        }
    }

    /// Degrees with which `target` is an R-instance of `a`.
    pub fn witness_degrees(&self, a: &Atom, target: &Atom) -> Vec<Value> {
        self.witnesses(a, target)
            .into_iter()
            .map(|w| w.degree)
            .collect()
    }
}

/// All-pairs glb/lub relaxation, repeated until nothing changes.
fn close_table(
    domain: &Domain,
    mut table: BTreeMap<(Name, Name), Value>,
) -> BTreeMap<(Name, Name), Value> {
    let symbols: Vec<Name> = table
        .keys()
        .flat_map(|(x, y)| [x.clone(), y.clone()])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let get = |t: &BTreeMap<(Name, Name), Value>, x: &Name, y: &Name| -> Value {
        if x == y {
            domain.top()
        } else {
            t.get(&key(x, y))
                .cloned()
                .unwrap_or_else(|| domain.bottom())
        }
    };
    loop {
        let mut changed = false;
        for k in &symbols {
            for i in &symbols {
                if i == k {
                    continue;
                }
                let ik = get(&table, i, k);
                if domain.is_bottom(&ik) {
                    continue;
                }
                for j in &symbols {
                    if j <= i || j == k {
                        continue;
                    }
                    let via = domain.glb_unchecked(&ik, &get(&table, k, j));
                    if domain.is_bottom(&via) {
                        continue;
                    }
                    let old = get(&table, i, j);
                    let new = domain.lub_unchecked(&old, &via);
                    if new != old {
                        table.insert(key(i, j), new);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return table;
        }
    }
}
