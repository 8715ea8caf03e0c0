//! Recursive-descent parser for `.sqlp` programs and goals.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::lexer::Cursor;
use super::{
    AnnotatedAtom, Atom, Clause, Goal, Name, Program, ProgramError, SimDecl, SymbolKind, Term,
};
use crate::domain::{Domain, DomainError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("missing `#domain` directive")]
    MissingDomain,
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("qualification variable `{0}` {1}")]
    QualificationVariable(String, &'static str),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Program(#[from] ProgramError),
}

/// Parses a whole program. The `#domain` directive must come first.
pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let mut cur = Cursor::new(text);
    cur.skip_trivia();
    if !cur.eat("#domain") {
        return Err(cur.error(ParseErrorKind::MissingDomain));
    }
    let (line, col) = cur.position();
    let name = cur.rest_of_line();
    let domain: Domain = name.parse().map_err(|e: DomainError| ParseError {
        line,
        column: col,
        kind: e.into(),
    })?;
    let mut program = Program::new(domain);
    let mut sims = Vec::new();
    while !cur.at_end() {
        let (line, col) = cur.position();
        let at = |kind: ParseErrorKind| ParseError {
            line,
            column: col,
            kind,
        };
        let head = atom(&mut cur)?;
        if &*head.pred == "sim" && head.args.len() == 2 && cur.looking_at("=") {
            sims.push((sim_decl(&mut cur, &program.domain, head)?, line, col));
            continue;
        }
        cur.expect("<-")?;
        let (vl, vc) = cur.position();
        let raw = cur.raw_value(|c, _| c == '-')?;
        let attenuation = program.domain.parse_value(&raw).map_err(|e| ParseError {
            line: vl,
            column: vc,
            kind: e.into(),
        })?;
        cur.expect("-")?;
        let mut body = Vec::new();
        if !cur.eat(".") {
            loop {
                body.push(atom(&mut cur)?);
                if cur.eat(".") {
                    break;
                }
                cur.expect(",")?;
            }
        }
        program
            .add_clause_at(
                Clause {
                    head,
                    attenuation,
                    body,
                },
                Some(line),
            )
            .map_err(|e| at(e.into()))?;
    }
    // Declarations go last so symbol kinds come from the clauses.
    for (decl, line, column) in sims {
        program.add_similarity(decl).map_err(|e| ParseError {
            line,
            column,
            kind: e.into(),
        })?;
    }
    Ok(program)
}

fn sim_decl(cur: &mut Cursor<'_>, domain: &Domain, head: Atom) -> Result<SimDecl, ParseError> {
    let sym = |t: &Term| match t {
        Term::App(s, args) if args.is_empty() => Some(s.clone()),
        _ => None,
    };
    let (Some(left), Some(right)) = (sym(&head.args[0]), sym(&head.args[1])) else {
        return Err(cur.syntax("similarity declarations relate two symbol names"));
    };
    cur.expect("=")?;
    let (vl, vc) = cur.position();
    let raw = cur.raw_value(|c, next| c == '.' && !next.is_some_and(|n| n.is_ascii_digit()))?;
    let degree = domain.parse_value(&raw).map_err(|e| ParseError {
        line: vl,
        column: vc,
        kind: e.into(),
    })?;
    cur.expect(".")?;
    Ok(SimDecl {
        left,
        right,
        degree,
    })
}

fn atom(cur: &mut Cursor<'_>) -> Result<Atom, ParseError> {
    let Some(pred) = cur.symbol()? else {
        return Err(cur.syntax("expected a predicate symbol"));
    };
    Ok(Atom {
        pred: pred.into(),
        args: args(cur)?,
    })
}

fn args(cur: &mut Cursor<'_>) -> Result<Vec<Term>, ParseError> {
    let mut out = Vec::new();
    if cur.eat("(") {
        loop {
            out.push(term(cur)?);
            if cur.eat(")") {
                break;
            }
            cur.expect(",")?;
        }
    }
    Ok(out)
}

fn term(cur: &mut Cursor<'_>) -> Result<Term, ParseError> {
    if let Some(v) = cur.variable() {
        return Ok(Term::Var(v.into()));
    }
    match cur.symbol()? {
        Some(c) => Ok(Term::App(c.into(), args(cur)?)),
        None => Err(cur.syntax("expected a term")),
    }
}

/// Parses a goal `A1#W1, ..., An#Wn | Wi >= v, ...` against a loaded program.
/// An optional trailing `.` is accepted.
pub fn parse_goal(text: &str, program: &Program) -> Result<Goal, ParseError> {
    let mut cur = Cursor::new(text);
    let mut atoms: Vec<AnnotatedAtom> = Vec::new();
    let mut qvars: BTreeSet<Name> = BTreeSet::new();
    loop {
        let (line, col) = cur.position();
        let a = atom(&mut cur)?;
        match program.signature().lookup(&a.pred) {
            Some((SymbolKind::Predicate, n)) if n != a.arity() => {
                return Err(ParseError {
                    line,
                    column: col,
                    kind: ProgramError::ArityConflict {
                        kind: SymbolKind::Predicate,
                        name: a.pred.to_string(),
                        expected: n,
                        found: a.arity(),
                    }
                    .into(),
                })
            }
            Some((SymbolKind::Predicate, _)) => {}
            _ => {
                return Err(ParseError {
                    line,
                    column: col,
                    kind: ParseErrorKind::UnknownPredicate(a.pred.to_string()),
                })
            }
        }
        check_constructors(&a.args, program).map_err(|e| ParseError {
            line,
            column: col,
            kind: e.into(),
        })?;
        cur.expect("#")?;
        let Some(w) = cur.variable() else {
            return Err(cur.syntax("expected a qualification variable after `#`"));
        };
        let w: Name = w.into();
        if !qvars.insert(w.clone()) {
            return Err(cur.error(ParseErrorKind::QualificationVariable(
                w.to_string(),
                "annotates more than one atom",
            )));
        }
        atoms.push(AnnotatedAtom { atom: a, qvar: w });
        if !cur.eat(",") {
            break;
        }
    }
    let term_vars: BTreeSet<Name> = atoms.iter().flat_map(|a| a.atom.vars()).collect();
    if let Some(w) = qvars.iter().find(|w| term_vars.contains(*w)) {
        return Err(cur.error(ParseErrorKind::QualificationVariable(
            w.to_string(),
            "is also used as a term variable",
        )));
    }
    let mut thresholds = BTreeMap::new();
    if cur.eat("|") {
        loop {
            let Some(w) = cur.variable() else {
                return Err(cur.syntax("expected a qualification variable"));
            };
            if !qvars.contains(w.as_str()) {
                return Err(cur.error(ParseErrorKind::QualificationVariable(
                    w,
                    "does not annotate any atom",
                )));
            }
            cur.expect(">=")?;
            let (vl, vc) = cur.position();
            let raw = cur.raw_value(|c, next| {
                c == ',' || (c == '.' && !next.is_some_and(|n| n.is_ascii_digit()))
            })?;
            let beta = program.domain.parse_value(&raw).map_err(|e| ParseError {
                line: vl,
                column: vc,
                kind: e.into(),
            })?;
            thresholds.insert(Name::from(w), beta);
            if !cur.eat(",") {
                break;
            }
        }
    }
    cur.eat(".");
    if !cur.at_end() {
        return Err(cur.syntax("unexpected input after goal"));
    }
    Ok(Goal { atoms, thresholds })
}

fn check_constructors(args: &[Term], program: &Program) -> Result<(), ProgramError> {
    for t in args {
        if let Term::App(c, sub) = t {
            match program.signature().lookup(c) {
                Some((SymbolKind::Predicate, _)) => {
                    return Err(ProgramError::KindConflict(c.to_string()))
                }
                Some((SymbolKind::Constructor, n)) if n != sub.len() => {
                    return Err(ProgramError::ArityConflict {
                        kind: SymbolKind::Constructor,
                        name: c.to_string(),
                        expected: n,
                        found: sub.len(),
                    })
                }
                _ => {}
            }
            check_constructors(sub, program)?;
        }
    }
    Ok(())
}
