//! Elimination of similarity: compiles a program and a similarity relation
//! into an equivalent program over the identity relation.
//!
//! Every clause is copied once per similar variant of its linearized head.
//! Each copy pays for the variant's degree through a nullary `pay` atom and
//! checks repeated head variables with a binary similarity predicate, whose
//! defining clauses are only emitted when some head needs them.

use std::fmt::Write as _;

use indexmap::IndexMap;
use thiserror::Error;

use crate::domain::{Domain, Value};
use crate::semantics::linearize_head;
use crate::similarity::SimilarityRelation;
use crate::syntax::{quote_symbol, Atom, Clause, Name, Program, ProgramError, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("similarity relation over {relation} does not match program domain {program}")]
    DomainMismatch { program: Domain, relation: Domain },
    #[error(transparent)]
    Program(#[from] ProgramError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TransformOptions {
    /// Emit the similarity clauses even for left-linear sources, including
    /// reflexive pairs of constants.
    pub full_sim_clauses: bool,
}

/// Where a transformed clause comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Source {
        clause: usize,
        line: Option<usize>,
        variant_degree: Value,
    },
    SimReflexive,
    SimConstructor {
        left: Name,
        right: Name,
        degree: Value,
    },
    Pay(Value),
}

#[derive(Debug, Clone)]
pub struct TransformedProgram {
    pub program: Program,
    /// Pay predicate per charged value, in order of first use.
    pub pay_registry: IndexMap<Value, Name>,
    /// The similarity predicate, when its clauses were emitted.
    pub sim_predicate: Option<Name>,
    /// One entry per clause of `program`.
    pub provenance: Vec<Provenance>,
    /// Generated names moved off a name already used by the source.
    pub renames: Vec<(String, String)>,
    /// The domain is a quasi domain.
    pub quasi_domain: bool,
}

/// `pay_` followed by the canonical rendering of `value`.
pub fn pay_symbol(domain: &Domain, value: &Value) -> Name {
    format!("pay_{}", domain.render(value)).into()
}

pub fn eliminate(
    program: &Program,
    rel: &SimilarityRelation,
) -> Result<TransformedProgram, TransformError> {
    eliminate_with(program, rel, TransformOptions::default())
}

pub fn eliminate_with(
    program: &Program,
    rel: &SimilarityRelation,
    opts: TransformOptions,
) -> Result<TransformedProgram, TransformError> {
    let domain = &program.domain;
    if rel.domain() != domain {
        return Err(TransformError::DomainMismatch {
            program: domain.clone(),
            relation: rel.domain().clone(),
        });
    }
    let sig = program.signature();
    let mut renames = Vec::new();
    let mut sim_name = String::from("sim2");
    if sig.contains(&sim_name) {
        sim_name = "$sim".into();
        while sig.contains(&sim_name) {
            sim_name.insert(0, '$');
        }
        renames.push(("sim2".to_string(), sim_name.clone()));
    }
    let sim_name: Name = sim_name.into();
    let clashes = |prefix: &str| {
        sig.constructors()
            .keys()
            .chain(sig.predicates().keys())
            .any(|n| n.starts_with(prefix))
    };
    let mut pay_prefix = String::from("pay_");
    while clashes(&pay_prefix) {
        pay_prefix.insert(0, '$');
    }
    if pay_prefix != "pay_" {
        renames.push(("pay_".into(), pay_prefix.clone()));
    }

    let mut pay_registry: IndexMap<Value, Name> = IndexMap::new();
    let mut pay = |v: &Value| -> Atom {
        let name = pay_registry
            .entry(v.clone())
            .or_insert_with(|| format!("{pay_prefix}{}", domain.render(v)).into())
            .clone();
        Atom {
            pred: name,
            args: Vec::new(),
        }
    };
    let sim_atom = |l: Term, r: Term| Atom {
        pred: sim_name.clone(),
        args: vec![l, r],
    };

    let mut clauses: Vec<(Clause, Provenance)> = Vec::new();
    for (i, clause) in program.clauses().iter().enumerate() {
        let lin = linearize_head(clause);
        for (variant, w) in rel.similar_atoms(&lin.linear_atom) {
            let mut body = vec![pay(&w)];
            body.extend(
                lin.conditions
                    .iter()
                    .map(|(x, xi)| sim_atom(Term::Var(x.clone()), Term::Var(xi.clone()))),
            );
            body.extend(clause.body.iter().cloned());
            clauses.push((
                Clause {
                    head: variant,
                    attenuation: clause.attenuation.clone(),
                    body,
                },
                Provenance::Source {
                    clause: i,
                    line: program.clause_line(i),
                    variant_degree: w,
                },
            ));
        }
    }

    let needs_sim = opts.full_sim_clauses || !program.is_left_linear();
    if needs_sim {
        let x = Term::var("X");
        clauses.push((
            Clause {
                head: sim_atom(x.clone(), x),
                attenuation: domain.top(),
                body: Vec::new(),
            },
            Provenance::SimReflexive,
        ));
        for (c, &n) in sig.constructors() {
            for (c2, deg) in rel.similar_symbols(c) {
                if n == 0 && &c2 == c && !opts.full_sim_clauses {
                    continue;
                }
                let xs: Vec<Term> = (1..=n).map(|k| Term::Var(format!("X{k}").into())).collect();
                let ys: Vec<Term> = (1..=n).map(|k| Term::Var(format!("Y{k}").into())).collect();
                let mut body = vec![pay(&deg)];
                body.extend(
                    xs.iter()
                        .zip(&ys)
                        .map(|(a, b)| sim_atom(a.clone(), b.clone())),
                );
                clauses.push((
                    Clause {
                        head: sim_atom(Term::App(c.clone(), xs), Term::App(c2.clone(), ys)),
                        attenuation: domain.top(),
                        body,
                    },
                    Provenance::SimConstructor {
                        left: c.clone(),
                        right: c2,
                        degree: deg,
                    },
                ));
            }
        }
    }

    for (v, name) in &pay_registry {
        clauses.push((
            Clause {
                head: Atom {
                    pred: name.clone(),
                    args: Vec::new(),
                },
                attenuation: v.clone(),
                body: Vec::new(),
            },
            Provenance::Pay(v.clone()),
        ));
    }

    let mut out = Program::new(domain.clone());
    let mut provenance = Vec::with_capacity(clauses.len());
    for (c, p) in clauses {
        out.add_clause(c)?;
        provenance.push(p);
    }
    Ok(TransformedProgram {
        program: out,
        pay_registry,
        sim_predicate: needs_sim.then_some(sim_name),
        provenance,
        renames,
        quasi_domain: !domain.is_strict(),
    })
}

impl TransformedProgram {
    /// The program in `.sqlp` syntax, optionally with one provenance comment
    /// per clause.
    pub fn render(&self, with_provenance: bool) -> String {
        let domain = &self.program.domain;
        let mut out = format!("#domain {domain}\n");
        if self.quasi_domain {
            out.push_str("% note: quasi qualification domain\n");
        }
        for (c, p) in self.program.clauses().iter().zip(&self.provenance) {
            out.push_str(&c.to_string());
            if with_provenance {
                let note = match p {
                    Provenance::Source {
                        clause,
                        line,
                        variant_degree,
                    } => {
                        let at = line.map_or_else(
                            || format!("clause {}", clause + 1),
                            |l| format!("line {l}"),
                        );
                        format!(
                            "source {at}, head variant degree {}",
                            domain.render(variant_degree)
                        )
                    }
                    Provenance::SimReflexive => "similarity, reflexive".to_string(),
                    Provenance::SimConstructor {
                        left,
                        right,
                        degree,
                    } => format!(
                        "similarity {} ~ {} at {}",
                        quote_symbol(left),
                        quote_symbol(right),
                        domain.render(degree)
                    ),
                    Provenance::Pay(v) => format!("pay fact for {}", domain.render(v)),
                };
                let _ = write!(out, "  % {note}");
            }
            out.push('\n');
        }
        out
    }
}
