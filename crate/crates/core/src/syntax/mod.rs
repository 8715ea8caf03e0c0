//! Terms, atoms, attenuated clauses, programs and goals.

mod lexer;
mod parse;
mod print;
mod unify;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::domain::{Domain, DomainError, Value};

pub use parse::{parse_goal, parse_program, ParseError};
pub use print::{is_plain_symbol, quote_symbol};
pub use unify::{match_atom, match_term, mgu, mgu_terms};

/// Interned-by-refcount name of a symbol or variable.
pub type Name = Arc<str>;

/// A first-order term: a variable or a constructor applied to arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Name),
    App(Name, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: &str) -> Self {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Self {
        Term::App(name.into(), args)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Nesting depth: constants and variables have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn collect_vars(&self, out: &mut Vec<Name>) {
        match self {
            Term::Var(v) => out.push(v.clone()),
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn occurs(&self, var: &str) -> bool {
        match self {
            Term::Var(v) => &**v == var,
            Term::App(_, args) => args.iter().any(|a| a.occurs(var)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub pred: Name,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: &str, args: Vec<Term>) -> Self {
        Atom {
            pred: pred.into(),
            args,
        }
    }

    /// Variable occurrences in left-to-right order, repeats included.
    pub fn var_occurrences(&self) -> Vec<Name> {
        let mut out = Vec::new();
        self.args.iter().for_each(|a| a.collect_vars(&mut out));
        out
    }

    pub fn vars(&self) -> BTreeSet<Name> {
        self.var_occurrences().into_iter().collect()
    }

    /// No variable occurs twice.
    pub fn is_linear(&self) -> bool {
        let occ = self.var_occurrences();
        let set: BTreeSet<&Name> = occ.iter().collect();
        set.len() == occ.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

/// `head <-d- body`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    pub head: Atom,
    pub attenuation: Value,
    pub body: Vec<Atom>,
}

impl Clause {
    pub fn vars(&self) -> BTreeSet<Name> {
        let mut v = self.head.vars();
        for b in &self.body {
            v.extend(b.vars());
        }
        v
    }
}

/// Symbol kind in a signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Constructor,
    Predicate,
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolKind::Constructor => "constructor",
            SymbolKind::Predicate => "predicate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("{kind} `{name}` used with arity {found}, previously {expected}")]
    ArityConflict {
        kind: SymbolKind,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("`{0}` is used both as a constructor and as a predicate")]
    KindConflict(String),
    #[error("similarity between `{left}` and `{right}` relates symbols of different {what}")]
    IncompatibleSimilarity {
        left: String,
        right: String,
        what: &'static str,
    },
    #[error("clause attenuation must not be bottom")]
    BottomAttenuation,
    #[error("similarity degree for `{left}`~`{right}` must not be bottom")]
    BottomDegree { left: String, right: String },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Constructor and predicate symbols with their arities, inferred from use.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    constructors: BTreeMap<Name, usize>,
    predicates: BTreeMap<Name, usize>,
}

impl Signature {
    pub fn constructors(&self) -> &BTreeMap<Name, usize> {
        &self.constructors
    }

    pub fn predicates(&self) -> &BTreeMap<Name, usize> {
        &self.predicates
    }

    pub fn lookup(&self, name: &str) -> Option<(SymbolKind, usize)> {
        if let Some(&n) = self.constructors.get(name) {
            return Some((SymbolKind::Constructor, n));
        }
        self.predicates
            .get(name)
            .map(|&n| (SymbolKind::Predicate, n))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.lookup(name).is_some()
    }

    /// Records a symbol, checking arity and kind consistency.
    pub fn declare(
        &mut self,
        kind: SymbolKind,
        name: &Name,
        arity: usize,
    ) -> Result<(), ProgramError> {
        let (mine, other) = match kind {
            SymbolKind::Constructor => (&mut self.constructors, &self.predicates),
            SymbolKind::Predicate => (&mut self.predicates, &self.constructors),
        };
        if other.contains_key(name) {
            return Err(ProgramError::KindConflict(name.to_string()));
        }
        match mine.get(name) {
            Some(&n) if n != arity => Err(ProgramError::ArityConflict {
                kind,
                name: name.to_string(),
                expected: n,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                mine.insert(name.clone(), arity);
                Ok(())
            }
        }
    }

    pub fn declare_term(&mut self, t: &Term) -> Result<(), ProgramError> {
        if let Term::App(c, args) = t {
            self.declare(SymbolKind::Constructor, c, args.len())?;
            for a in args {
                self.declare_term(a)?;
            }
        }
        Ok(())
    }

    pub fn declare_atom(&mut self, a: &Atom) -> Result<(), ProgramError> {
        self.declare(SymbolKind::Predicate, &a.pred, a.args.len())?;
        a.args.iter().try_for_each(|t| self.declare_term(t))
    }
}

/// A user-supplied similarity generator `sim(left, right) = degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimDecl {
    pub left: Name,
    pub right: Name,
    pub degree: Value,
}

/// A program over a qualification domain: clauses in source order plus
/// similarity generators.
#[derive(Debug, Clone)]
pub struct Program {
    pub domain: Domain,
    signature: Signature,
    clauses: Vec<Clause>,
    similarities: Vec<SimDecl>,
    /// Source line of each clause, when parsed from text.
    clause_lines: Vec<Option<usize>>,
}

impl PartialEq for Program {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain
            && self.signature == other.signature
            && self.clauses == other.clauses
            && self.similarities == other.similarities
    }
}

impl Eq for Program {}

impl Program {
    pub fn new(domain: Domain) -> Self {
        Program {
            domain,
            signature: Signature::default(),
            clauses: Vec::new(),
            similarities: Vec::new(),
            clause_lines: Vec::new(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn similarities(&self) -> &[SimDecl] {
        &self.similarities
    }

    pub fn clause_line(&self, index: usize) -> Option<usize> {
        self.clause_lines.get(index).copied().flatten()
    }

    pub fn add_clause(&mut self, clause: Clause) -> Result<(), ProgramError> {
        self.add_clause_at(clause, None)
    }

    pub(crate) fn add_clause_at(
        &mut self,
        clause: Clause,
        line: Option<usize>,
    ) -> Result<(), ProgramError> {
        if !self.domain.contains(&clause.attenuation) {
            return Err(DomainError::Mismatch {
                domain: self.domain.clone(),
                value: clause.attenuation.to_string(),
            }
            .into());
        }
        if self.domain.is_bottom(&clause.attenuation) {
            return Err(ProgramError::BottomAttenuation);
        }
        let mut sig = self.signature.clone();
        sig.declare_atom(&clause.head)?;
        for b in &clause.body {
            sig.declare_atom(b)?;
        }
        self.signature = sig;
        self.clauses.push(clause);
        self.clause_lines.push(line);
        Ok(())
    }

    /// Adds a similarity generator. A symbol not yet in the signature takes
    /// the kind and arity of the other one; two unknown symbols are constants.
    pub fn add_similarity(&mut self, decl: SimDecl) -> Result<(), ProgramError> {
        let (left, right) = (decl.left.to_string(), decl.right.to_string());
        if !self.domain.contains(&decl.degree) {
            return Err(DomainError::Mismatch {
                domain: self.domain.clone(),
                value: decl.degree.to_string(),
            }
            .into());
        }
        if self.domain.is_bottom(&decl.degree) {
            return Err(ProgramError::BottomDegree { left, right });
        }
        match (
            self.signature.lookup(&decl.left),
            self.signature.lookup(&decl.right),
        ) {
            (None, None) => {
                self.signature
                    .declare(SymbolKind::Constructor, &decl.left, 0)?;
                self.signature
                    .declare(SymbolKind::Constructor, &decl.right, 0)?;
            }
            (Some((k, n)), None) => self.signature.declare(k, &decl.right, n)?,
            (None, Some((k, n))) => self.signature.declare(k, &decl.left, n)?,
            (Some((k1, n1)), Some((k2, n2))) => {
                if k1 != k2 {
                    return Err(ProgramError::IncompatibleSimilarity {
                        left,
                        right,
                        what: "kinds",
                    });
                }
                if n1 != n2 {
                    return Err(ProgramError::IncompatibleSimilarity {
                        left,
                        right,
                        what: "arities",
                    });
                }
            }
        }
        self.similarities.push(decl);
        Ok(())
    }

    /// Whether every clause head is linear.
    pub fn is_left_linear(&self) -> bool {
        self.clauses.iter().all(|c| c.head.is_linear())
    }
}

/// An open annotated atom `A#W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedAtom {
    pub atom: Atom,
    pub qvar: Name,
}

/// A goal `A1#W1, ..., An#Wn | Wi >= βi, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Goal {
    pub atoms: Vec<AnnotatedAtom>,
    pub thresholds: BTreeMap<Name, Value>,
}

impl Goal {
    /// Term variables of the goal in order of first occurrence.
    pub fn vars(&self) -> Vec<Name> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for a in &self.atoms {
            for v in a.atom.var_occurrences() {
                if seen.insert(v.clone()) {
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn threshold(&self, qvar: &str) -> Option<&Value> {
        self.thresholds.get(qvar)
    }
}

/// A finite map from variables to terms, applied simultaneously.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution {
    map: BTreeMap<Name, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, var: Name, term: Term) {
        self.map.insert(var, term);
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.map.get(var)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Term)> {
        self.map.iter()
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => self.map.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(c, args) => {
                Term::App(c.clone(), args.iter().map(|a| self.apply_term(a)).collect())
            }
        }
    }

    pub fn apply_atom(&self, a: &Atom) -> Atom {
        Atom {
            pred: a.pred.clone(),
            args: a.args.iter().map(|t| self.apply_term(t)).collect(),
        }
    }

    /// The substitution `self` followed by `other`: applying the result equals
    /// applying `self` and then `other`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut map: BTreeMap<Name, Term> = self
            .map
            .iter()
            .map(|(v, t)| (v.clone(), other.apply_term(t)))
            .filter(|(v, t)| !matches!(t, Term::Var(w) if w == v))
            .collect();
        for (v, t) in &other.map {
            map.entry(v.clone()).or_insert_with(|| t.clone());
        }
        Substitution { map }
    }
}

impl FromIterator<(Name, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Name, Term)>>(iter: I) -> Self {
        Substitution {
            map: iter.into_iter().collect(),
        }
    }
}

/// `lin(A) = (A^l, S^l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linearization {
    pub linear_atom: Atom,
    /// `(X, X_i)` pairs: the fresh `X_i` must be similar to `X`.
    pub conditions: Vec<(Name, Name)>,
}

impl Linearization {
    /// The substitution mapping every fresh variable back to its original.
    pub fn collapse(&self) -> Substitution {
        self.conditions
            .iter()
            .map(|(orig, fresh)| (fresh.clone(), Term::Var(orig.clone())))
            .collect()
    }
}

/// Linearizes `atom`, choosing fresh names that avoid the atom's own variables.
pub fn linearize(atom: &Atom) -> Linearization {
    linearize_avoiding(atom, &atom.vars())
}

/// Linearizes `atom`: the first occurrence of each variable is kept and every
/// later occurrence of `X` becomes a fresh `X_k`, with `k` the smallest index
/// not in `avoid` or already generated.
pub fn linearize_avoiding(atom: &Atom, avoid: &BTreeSet<Name>) -> Linearization {
    let mut seen: BTreeSet<Name> = BTreeSet::new();
    let mut taken: BTreeSet<Name> = avoid.clone();
    taken.extend(atom.vars());
    let mut fresh_of: Vec<(Name, Name)> = Vec::new();

    fn walk(
        t: &Term,
        seen: &mut BTreeSet<Name>,
        taken: &mut BTreeSet<Name>,
        fresh_of: &mut Vec<(Name, Name)>,
    ) -> Term {
        match t {
            Term::Var(v) => {
                if seen.insert(v.clone()) {
                    return t.clone();
                }
                let mut k = 1;
                let name: Name = loop {
                    let cand = format!("{v}_{k}");
                    if !taken.contains(cand.as_str()) {
                        break cand.into();
                    }
                    k += 1;
                };
                taken.insert(name.clone());
                fresh_of.push((v.clone(), name.clone()));
                Term::Var(name)
            }
            Term::App(c, args) => Term::App(
                c.clone(),
                args.iter()
                    .map(|a| walk(a, seen, taken, fresh_of))
                    .collect(),
            ),
        }
    }

    let args = atom
        .args
        .iter()
        .map(|a| walk(a, &mut seen, &mut taken, &mut fresh_of))
        .collect();

    // group conditions by first occurrence of the repeated variable
    let order: Vec<Name> = {
        let mut firsts = Vec::new();
        let mut s = BTreeSet::new();
        for v in atom.var_occurrences() {
            if s.insert(v.clone()) {
                firsts.push(v);
            }
        }
        firsts
    };
    let mut conditions = Vec::with_capacity(fresh_of.len());
    for v in &order {
        conditions.extend(fresh_of.iter().filter(|(o, _)| o == v).cloned());
    }
    Linearization {
        linear_atom: Atom {
            pred: atom.pred.clone(),
            args,
        },
        conditions,
    }
}
