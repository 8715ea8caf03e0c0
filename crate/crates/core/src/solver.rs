//! Qualified SLD resolution over programs with the identity similarity.
//!
//! The search is depth-first with leftmost selection and clauses tried in
//! program order. Terms live in a heap of cells with a trail for undoing
//! bindings; the pending goals form a persistent list so choice points can
//! share suffixes. Each clause use opens a frame that accumulates the glb of
//! its body values; when the body is done the frame's value `d ∘ glb` flows
//! into its parent.
//!
//! Pruning keeps, per goal, the composition `b` of the attenuations of all
//! enclosing clause uses. Any value the root goal can still receive is below
//! `b ∘ v` for the value `v` of a finished frame, and below `b ∘ d` when a
//! clause with attenuation `d` is selected, so a branch is dropped as soon as
//! the threshold is no longer below that bound.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use indexmap::IndexMap;
use thiserror::Error;

use crate::domain::{Domain, DomainError, Value};
use crate::similarity::{SimilarityError, SimilarityRelation};
use crate::syntax::{Goal, Name, Program, Term};
use crate::transform::{eliminate, TransformError, TransformedProgram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("max depth must be at least 1")]
    ZeroDepth,
    #[error("threshold for `{qvar}`: {source}")]
    Threshold { qvar: String, source: DomainError },
    #[error(transparent)]
    Similarity(#[from] SimilarityError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverOptions {
    /// Resolution steps allowed per derivation.
    pub max_depth: usize,
    pub max_answers: Option<usize>,
    pub prune: bool,
    /// Re-run the search with growing step limits up to `max_depth`.
    pub iterative_deepening: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_depth: 512,
            max_answers: None,
            prune: true,
            iterative_deepening: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Answer {
    /// Goal variables in order of first occurrence.
    pub bindings: IndexMap<Name, Term>,
    /// One value per annotated goal atom.
    pub values: IndexMap<Name, Value>,
    /// Resolution steps of the derivation.
    pub steps: usize,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (v, t) in &self.bindings {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{v} -> {t}")?;
        }
        for (w, d) in &self.values {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{w} -> {d}")?;
        }
        f.write_str("}")
    }
}

/// How a search ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    pub answers: usize,
    /// Some branch hit the step limit.
    pub truncated: bool,
    pub max_depth: usize,
    /// The search stopped early at the answer limit.
    pub answer_limit: bool,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.answer_limit {
            write!(f, "{} answers (stopped at answer limit)", self.answers)
        } else if self.truncated {
            write!(
                f,
                "{} answers (search truncated at depth {})",
                self.answers, self.max_depth
            )
        } else {
            write!(f, "{} answers (complete)", self.answers)
        }
    }
}

#[derive(Debug, Clone)]
enum Pattern {
    Var(usize),
    App(u32, Vec<Pattern>),
}

#[derive(Debug)]
struct CompiledClause {
    head: Vec<Pattern>,
    body: Vec<(u32, Vec<Pattern>)>,
    vars: usize,
    attenuation: Value,
}

#[derive(Debug, Default)]
struct Symbols {
    ids: HashMap<Name, u32>,
    names: Vec<Name>,
}

impl Symbols {
    fn intern(&mut self, n: &Name) -> u32 {
        if let Some(&i) = self.ids.get(n) {
            return i;
        }
        let i = self.names.len() as u32;
        self.ids.insert(n.clone(), i);
        self.names.push(n.clone());
        i
    }
}

#[derive(Debug)]
struct Compiled {
    domain: Domain,
    symbols: Symbols,
    clauses: Vec<CompiledClause>,
    by_pred: HashMap<(u32, usize), Vec<usize>>,
}

fn compile_term(t: &Term, syms: &mut Symbols, vars: &mut HashMap<Name, usize>) -> Pattern {
    match t {
        Term::Var(v) => {
            let n = vars.len();
            Pattern::Var(*vars.entry(v.clone()).or_insert(n))
        }
        Term::App(c, args) => Pattern::App(
            syms.intern(c),
            args.iter().map(|a| compile_term(a, syms, vars)).collect(),
        ),
    }
}

impl Compiled {
    fn new(program: &Program) -> Self {
        let mut symbols = Symbols::default();
        let mut clauses = Vec::new();
        let mut by_pred: HashMap<(u32, usize), Vec<usize>> = HashMap::new();
        for (i, c) in program.clauses().iter().enumerate() {
            let mut vars = HashMap::new();
            let pred = symbols.intern(&c.head.pred);
            let head = c
                .head
                .args
                .iter()
                .map(|t| compile_term(t, &mut symbols, &mut vars))
                .collect();
            let body = c
                .body
                .iter()
                .map(|b| {
                    let p = symbols.intern(&b.pred);
                    (
                        p,
                        b.args
                            .iter()
                            .map(|t| compile_term(t, &mut symbols, &mut vars))
                            .collect(),
                    )
                })
                .collect();
            clauses.push(CompiledClause {
                head,
                body,
                vars: vars.len(),
                attenuation: c.attenuation.clone(),
            });
            by_pred
                .entry((pred, c.head.args.len()))
                .or_default()
                .push(i);
        }
        Compiled {
            domain: program.domain.clone(),
            symbols,
            clauses,
            by_pred,
        }
    }
}

type CellId = u32;

#[derive(Debug, Clone)]
enum Cell {
    Var(Option<CellId>),
    App { sym: u32, start: u32, arity: u32 },
}

#[derive(Debug, Clone, Copy)]
enum Parent {
    Frame(usize),
    Root(usize),
}

#[derive(Debug, Clone)]
struct Frame {
    attenuation: Value,
    acc: Value,
    parent: Parent,
    /// Composition of the enclosing attenuations.
    outer: Value,
    root: usize,
}

#[derive(Debug, Clone)]
struct Call {
    pred: u32,
    args: Rc<[CellId]>,
    parent: Parent,
    bound: Value,
    root: usize,
}

#[derive(Debug)]
enum Item {
    Call(Call),
    Combine(usize),
}

#[derive(Debug)]
struct Node {
    item: Item,
    next: Goals,
}

type Goals = Option<Rc<Node>>;

fn cons(item: Item, next: Goals) -> Goals {
    Some(Rc::new(Node { item, next }))
}

#[derive(Debug)]
enum Undo {
    Bind(CellId),
    Acc(usize, Value),
    Slot(usize, Option<Value>),
}

#[derive(Debug)]
struct Choice {
    call: Call,
    rest: Goals,
    candidates: Rc<[usize]>,
    next: usize,
    cells: usize,
    args: usize,
    trail: usize,
    frames: usize,
    steps: usize,
}

struct Machine {
    program: Rc<Compiled>,
    cells: Vec<Cell>,
    args: Vec<CellId>,
    trail: Vec<Undo>,
    frames: Vec<Frame>,
    slots: Vec<Option<Value>>,
    thresholds: Vec<Option<Value>>,
    choices: Vec<Choice>,
    goals: Goals,
    steps: usize,
    max_depth: usize,
    prune: bool,
    truncated: bool,
    resume_pending: bool,
    goal_vars: Vec<(Name, CellId)>,
    qvars: Vec<Name>,
    /// Goal constructors unknown to the program, numbered after its symbols.
    extra_symbols: Vec<Name>,
}

impl Machine {
    fn new(program: Rc<Compiled>, goal: &Goal, max_depth: usize, prune: bool) -> Self {
        let mut m = Machine {
            program,
            cells: Vec::new(),
            args: Vec::new(),
            trail: Vec::new(),
            frames: Vec::new(),
            slots: vec![None; goal.atoms.len()],
            thresholds: goal
                .atoms
                .iter()
                .map(|a| goal.threshold(&a.qvar).cloned())
                .collect(),
            choices: Vec::new(),
            goals: None,
            steps: 0,
            max_depth,
            prune,
            truncated: false,
            resume_pending: false,
            goal_vars: Vec::new(),
            qvars: goal.atoms.iter().map(|a| a.qvar.clone()).collect(),
            extra_symbols: Vec::new(),
        };
        let mut vars: HashMap<Name, CellId> = HashMap::new();
        let mut calls = Vec::new();
        for (i, a) in goal.atoms.iter().enumerate() {
            let args: Vec<CellId> = a
                .atom
                .args
                .iter()
                .map(|t| m.build_term(t, &mut vars))
                .collect();
            // unknown predicates get a symbol that has no clauses
            let pred = m
                .program
                .symbols
                .ids
                .get(&a.atom.pred)
                .copied()
                .unwrap_or(u32::MAX);
            calls.push(Call {
                pred,
                args: args.into(),
                parent: Parent::Root(i),
                bound: m.program.domain.top(),
                root: i,
            });
        }
        m.goal_vars = goal
            .vars()
            .into_iter()
            .map(|v| (v.clone(), vars[&v]))
            .collect();
        for c in calls.into_iter().rev() {
            m.goals = cons(Item::Call(c), m.goals.take());
        }
        m
    }

    fn new_cell(&mut self, c: Cell) -> CellId {
        self.cells.push(c);
        (self.cells.len() - 1) as CellId
    }

    fn build_term(&mut self, t: &Term, vars: &mut HashMap<Name, CellId>) -> CellId {
        match t {
            Term::Var(v) => {
                if let Some(&c) = vars.get(v) {
                    return c;
                }
                let c = self.new_cell(Cell::Var(None));
                vars.insert(v.clone(), c);
                c
            }
            Term::App(f, sub) => {
                let sym = self.symbol_id(f);
                let ids: Vec<CellId> = sub.iter().map(|s| self.build_term(s, vars)).collect();
                self.app(sym, &ids)
            }
        }
    }

    fn symbol_id(&mut self, f: &Name) -> u32 {
        if let Some(&i) = self.program.symbols.ids.get(f) {
            return i;
        }
        let base = self.program.symbols.names.len();
        let k = match self.extra_symbols.iter().position(|n| n == f) {
            Some(k) => k,
            None => {
                self.extra_symbols.push(f.clone());
                self.extra_symbols.len() - 1
            }
        };
        (base + k) as u32
    }

    fn symbol_name(&self, sym: u32) -> &Name {
        let names = &self.program.symbols.names;
        names
            .get(sym as usize)
            .unwrap_or_else(|| &self.extra_symbols[sym as usize - names.len()])
    }

    fn app(&mut self, sym: u32, ids: &[CellId]) -> CellId {
        let start = self.args.len() as u32;
        self.args.extend_from_slice(ids);
        self.new_cell(Cell::App {
            sym,
            start,
            arity: ids.len() as u32,
        })
    }

    fn build_pattern(&mut self, p: &Pattern, locals: &mut [Option<CellId>]) -> CellId {
        match p {
            Pattern::Var(i) => match locals[*i] {
                Some(c) => c,
                None => {
                    let c = self.new_cell(Cell::Var(None));
                    locals[*i] = Some(c);
                    c
                }
            },
            Pattern::App(sym, sub) => {
                let ids: Vec<CellId> = sub.iter().map(|s| self.build_pattern(s, locals)).collect();
                self.app(*sym, &ids)
            }
        }
    }

    fn deref(&self, mut c: CellId) -> CellId {
        while let Cell::Var(Some(next)) = self.cells[c as usize] {
            c = next;
        }
        c
    }

    fn bind(&mut self, var: CellId, to: CellId) {
        self.cells[var as usize] = Cell::Var(Some(to));
        self.trail.push(Undo::Bind(var));
    }

    fn occurs(&self, var: CellId, t: CellId) -> bool {
        let mut stack = vec![t];
        while let Some(c) = stack.pop() {
            let c = self.deref(c);
            match self.cells[c as usize] {
                Cell::Var(_) => {
                    if c == var {
                        return true;
                    }
                }
                Cell::App { start, arity, .. } => {
                    stack.extend_from_slice(&self.args[start as usize..(start + arity) as usize]);
                }
            }
        }
        false
    }

    fn unify(&mut self, a: CellId, b: CellId) -> bool {
        let mut stack = vec![(a, b)];
        while let Some((a, b)) = stack.pop() {
            let a = self.deref(a);
            let b = self.deref(b);
            if a == b {
                continue;
            }
            match (
                self.cells[a as usize].clone(),
                self.cells[b as usize].clone(),
            ) {
                (Cell::Var(_), Cell::Var(_)) => {
                    let (young, old) = if a > b { (a, b) } else { (b, a) };
                    self.bind(young, old);
                }
                (Cell::Var(_), Cell::App { .. }) => {
                    if self.occurs(a, b) {
                        return false;
                    }
                    self.bind(a, b);
                }
                (Cell::App { .. }, Cell::Var(_)) => {
                    if self.occurs(b, a) {
                        return false;
                    }
                    self.bind(b, a);
                }
                (
                    Cell::App {
                        sym: f,
                        start: s1,
                        arity: n1,
                    },
                    Cell::App {
                        sym: g,
                        start: s2,
                        arity: n2,
                    },
                ) => {
                    if f != g || n1 != n2 {
                        return false;
                    }
                    for k in 0..n1 {
                        stack.push((self.args[(s1 + k) as usize], self.args[(s2 + k) as usize]));
                    }
                }
            }
        }
        true
    }

    /// Unifies a clause-head pattern against a heap term, binding locals.
    fn unify_pattern(&mut self, p: &Pattern, t: CellId, locals: &mut [Option<CellId>]) -> bool {
        match p {
            Pattern::Var(i) => match locals[*i] {
                None => {
                    locals[*i] = Some(t);
                    true
                }
                Some(c) => self.unify(c, t),
            },
            Pattern::App(sym, sub) => {
                let t = self.deref(t);
                match self.cells[t as usize].clone() {
                    Cell::Var(_) => {
                        let built = self.build_pattern(p, locals);
                        if self.occurs(t, built) {
                            return false;
                        }
                        self.bind(t, built);
                        true
                    }
                    Cell::App {
                        sym: g,
                        start,
                        arity,
                    } => {
                        if *sym != g || sub.len() != arity as usize {
                            return false;
                        }
                        for (k, sp) in sub.iter().enumerate() {
                            let arg = self.args[start as usize + k];
                            if !self.unify_pattern(sp, arg, locals) {
                                return false;
                            }
                        }
                        true
                    }
                }
            }
        }
    }

    fn restore(&mut self, cells: usize, args: usize, trail: usize, frames: usize) {
        while self.trail.len() > trail {
            match self.trail.pop().expect("trail entry") {
                Undo::Bind(v) => self.cells[v as usize] = Cell::Var(None),
                Undo::Acc(f, old) => self.frames[f].acc = old,
                Undo::Slot(i, old) => self.slots[i] = old,
            }
        }
        self.cells.truncate(cells);
        self.args.truncate(args);
        self.frames.truncate(frames);
    }

    fn threshold(&self, root: usize) -> Option<&Value> {
        self.thresholds[root].as_ref()
    }

    /// Runs until the next answer; false when the search space is exhausted.
    fn next_answer(&mut self) -> bool {
        if self.resume_pending {
            self.resume_pending = false;
            if !self.backtrack() {
                return false;
            }
        }
        loop {
            let Some(node) = self.goals.take() else {
                self.resume_pending = true;
                return true;
            };
            self.goals = node.next.clone();
            let ok = match &node.item {
                Item::Combine(f) => self.combine(*f),
                Item::Call(c) => self.call(c.clone()),
            };
            if !ok && !self.backtrack() {
                return false;
            }
        }
    }

    fn call(&mut self, call: Call) -> bool {
        let key = (call.pred, call.args.len());
        let Some(cands) = self.program.by_pred.get(&key) else {
            return false;
        };
        let candidates: Rc<[usize]> = cands.as_slice().into();
        self.choices.push(Choice {
            rest: self.goals.take(),
            call,
            candidates,
            next: 0,
            cells: self.cells.len(),
            args: self.args.len(),
            trail: self.trail.len(),
            frames: self.frames.len(),
            steps: self.steps,
        });
        self.resume()
    }

    fn backtrack(&mut self) -> bool {
        while !self.choices.is_empty() {
            if self.resume() {
                return true;
            }
        }
        false
    }

    /// Tries the remaining alternatives of the newest choice point.
    fn resume(&mut self) -> bool {
        let program = Rc::clone(&self.program);
        let domain = &program.domain;
        let top = self.choices.len() - 1;
        let (cells, args, trail, frames, steps) = {
            let ch = &self.choices[top];
            (ch.cells, ch.args, ch.trail, ch.frames, ch.steps)
        };
        let call = self.choices[top].call.clone();
        let candidates = Rc::clone(&self.choices[top].candidates);
        let beta = if self.prune {
            self.threshold(call.root).cloned()
        } else {
            None
        };
        for k in self.choices[top].next..candidates.len() {
            self.restore(cells, args, trail, frames);
            self.steps = steps;
            let clause = &program.clauses[candidates[k]];
            let bound = domain.atten_unchecked(&call.bound, &clause.attenuation);
            if let Some(b) = &beta {
                if !domain.leq_unchecked(b, &bound) {
                    continue;
                }
            }
            let mut locals = vec![None; clause.vars];
            let unified = clause
                .head
                .iter()
                .zip(call.args.iter())
                .all(|(p, &t)| self.unify_pattern(p, t, &mut locals));
            if !unified {
                continue;
            }
            if steps + 1 > self.max_depth {
                self.truncated = true;
                continue;
            }
            self.steps = steps + 1;
            let rest = self.choices[top].rest.clone();
            if k + 1 < candidates.len() {
                self.choices[top].next = k + 1;
            } else {
                self.choices.pop();
            }
            let f = self.frames.len();
            self.frames.push(Frame {
                attenuation: clause.attenuation.clone(),
                acc: domain.top(),
                parent: call.parent,
                outer: call.bound.clone(),
                root: call.root,
            });
            let mut goals = cons(Item::Combine(f), rest);
            for (pred, pats) in clause.body.iter().rev() {
                let args: Vec<CellId> = pats
                    .iter()
                    .map(|p| self.build_pattern(p, &mut locals))
                    .collect();
                goals = cons(
                    Item::Call(Call {
                        pred: *pred,
                        args: args.into(),
                        parent: Parent::Frame(f),
                        bound: bound.clone(),
                        root: call.root,
                    }),
                    goals,
                );
            }
            self.goals = goals;
            return true;
        }
        self.restore(cells, args, trail, frames);
        self.choices.pop();
        false
    }

    fn combine(&mut self, f: usize) -> bool {
        let program = Rc::clone(&self.program);
        let domain = &program.domain;
        let frame = self.frames[f].clone();
        let value = domain.atten_unchecked(&frame.attenuation, &frame.acc);
        if domain.is_bottom(&value) {
            return false;
        }
        if self.prune {
            if let Some(b) = self.threshold(frame.root) {
                if !domain.leq_unchecked(b, &domain.atten_unchecked(&frame.outer, &value)) {
                    return false;
                }
            }
        }
        match frame.parent {
            Parent::Frame(p) => {
                let old = self.frames[p].acc.clone();
                self.frames[p].acc = domain.glb_unchecked(&old, &value);
                self.trail.push(Undo::Acc(p, old));
            }
            Parent::Root(i) => {
                if let Some(b) = self.threshold(i) {
                    if !domain.leq_unchecked(b, &value) {
                        return false;
                    }
                }
                let old = self.slots[i].replace(value);
                self.trail.push(Undo::Slot(i, old));
            }
        }
        true
    }

    fn to_term(&self, c: CellId, fresh: &mut HashMap<CellId, Name>) -> Term {
        let c = self.deref(c);
        match self.cells[c as usize] {
            Cell::Var(_) => {
                let n = fresh.len() + 1;
                Term::Var(
                    fresh
                        .entry(c)
                        .or_insert_with(|| format!("_{n}").into())
                        .clone(),
                )
            }
            Cell::App { sym, start, arity } => Term::App(
                self.symbol_name(sym).clone(),
                (start..start + arity)
                    .map(|k| self.to_term(self.args[k as usize], fresh))
                    .collect(),
            ),
        }
    }

    fn answer(&self) -> Answer {
        let mut fresh = HashMap::new();
        Answer {
            bindings: self
                .goal_vars
                .iter()
                .map(|(v, c)| (v.clone(), self.to_term(*c, &mut fresh)))
                .collect(),
            values: self
                .qvars
                .iter()
                .zip(&self.slots)
                .map(|(w, v)| (w.clone(), v.clone().expect("every goal atom has a value")))
                .collect(),
            steps: self.steps,
        }
    }
}

/// A lazily explored stream of answers.
pub struct Solutions {
    program: Rc<Compiled>,
    goal: Goal,
    opts: SolverOptions,
    machine: Machine,
    /// Step limit of the current round and of the previous one.
    limit: usize,
    previous: usize,
    emitted: usize,
    truncated: bool,
    answer_limit: bool,
    done: bool,
}

const FIRST_ROUND: usize = 8;

impl Solutions {
    fn new(program: Rc<Compiled>, goal: Goal, opts: SolverOptions) -> Self {
        let limit = if opts.iterative_deepening {
            FIRST_ROUND.min(opts.max_depth)
        } else {
            opts.max_depth
        };
        let machine = Machine::new(Rc::clone(&program), &goal, limit, opts.prune);
        Solutions {
            program,
            goal,
            opts,
            machine,
            limit,
            previous: 0,
            emitted: 0,
            truncated: false,
            answer_limit: false,
            done: false,
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.program.domain
    }

    /// The state of the search so far; final once the iterator is exhausted.
    pub fn summary(&self) -> Summary {
        Summary {
            answers: self.emitted,
            truncated: self.truncated || self.machine.truncated,
            max_depth: self.opts.max_depth,
            answer_limit: self.answer_limit,
        }
    }

    pub fn is_truncated(&self) -> bool {
        self.summary().truncated
    }
}

impl Iterator for Solutions {
    type Item = Answer;

    fn next(&mut self) -> Option<Answer> {
        if self.done {
            return None;
        }
        if self.opts.max_answers.is_some_and(|n| self.emitted >= n) {
            self.answer_limit = true;
            self.done = true;
            return None;
        }
        loop {
            if self.machine.next_answer() {
                let a = self.machine.answer();
                if a.steps > self.previous {
                    self.emitted += 1;
                    return Some(a);
                }
                continue;
            }
            let more = self.opts.iterative_deepening
                && self.machine.truncated
                && self.limit < self.opts.max_depth;
            if !more {
                self.truncated = self.machine.truncated;
                self.done = true;
                return None;
            }
            self.previous = self.limit;
            self.limit = (self.limit * 2).min(self.opts.max_depth);
            self.machine = Machine::new(
                Rc::clone(&self.program),
                &self.goal,
                self.limit,
                self.opts.prune,
            );
        }
    }
}

fn check_goal(domain: &Domain, goal: &Goal, opts: &SolverOptions) -> Result<(), SolveError> {
    if opts.max_depth == 0 {
        return Err(SolveError::ZeroDepth);
    }
    for (w, beta) in &goal.thresholds {
        if !domain.contains(beta) {
            return Err(SolveError::Threshold {
                qvar: w.to_string(),
                source: DomainError::Mismatch {
                    domain: domain.clone(),
                    value: beta.to_string(),
                },
            });
        }
    }
    Ok(())
}

/// Solves `goal` against a transformed program.
pub fn solve(
    tp: &TransformedProgram,
    goal: &Goal,
    opts: &SolverOptions,
) -> Result<Solutions, SolveError> {
    solve_qualified(&tp.program, goal, opts)
}

/// Solves `goal` against a program read with the identity similarity.
pub fn solve_qualified(
    program: &Program,
    goal: &Goal,
    opts: &SolverOptions,
) -> Result<Solutions, SolveError> {
    check_goal(&program.domain, goal, opts)?;
    Ok(Solutions::new(
        Rc::new(Compiled::new(program)),
        goal.clone(),
        opts.clone(),
    ))
}

/// Eliminates `rel` from `program` and solves `goal` against the result.
pub fn solve_program(
    program: &Program,
    rel: &SimilarityRelation,
    goal: &Goal,
    opts: &SolverOptions,
) -> Result<Solutions, SolveError> {
    let tp = eliminate(program, rel)?;
    solve(&tp, goal, opts)
}

/// Like [`solve_program`], with the relation closed from the program's own
/// similarity declarations.
pub fn solve_source(
    program: &Program,
    goal: &Goal,
    opts: &SolverOptions,
) -> Result<Solutions, SolveError> {
    let rel = SimilarityRelation::from_program(program)?;
    solve_program(program, &rel, goal, opts)
}
