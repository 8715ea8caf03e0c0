//! Closure, admissibility and R-instance laws of similarity relations.

mod common;

use std::collections::BTreeSet;

use common::{ground_terms, load, random_program, Shape};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sqlp::domain::{Domain, Value};
use sqlp::similarity::SimilarityRelation;
use sqlp::syntax::{linearize, match_atom, Atom, Program, SimDecl, Substitution, Term};

const PROGRAMS: usize = 40;

fn programs(seed: u64) -> Vec<(Program, SimilarityRelation, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..PROGRAMS)
        .map(|i| {
            let domain = if i % 2 == 0 { Domain::U } else { Domain::W };
            let text = random_program(
                &mut rng,
                Shape {
                    domain,
                    acyclic: false,
                },
            );
            let (p, r) = load(&text);
            (p, r, text)
        })
        .collect()
}

fn all_symbols(program: &Program) -> Vec<String> {
    let sig = program.signature();
    sig.constructors()
        .keys()
        .chain(sig.predicates().keys())
        .map(|s| s.to_string())
        .collect()
}

#[test]
fn closure_is_idempotent_and_admissible() {
    for (program, rel, text) in programs(0x51a0) {
        let decls: Vec<SimDecl> = rel
            .entries()
            .map(|(x, y, v)| SimDecl {
                left: x.clone(),
                right: y.clone(),
                degree: v.clone(),
            })
            .collect();
        let again =
            SimilarityRelation::close(&decls, &program.domain, program.signature()).unwrap();
        assert_eq!(
            again.entries().collect::<Vec<_>>(),
            rel.entries().collect::<Vec<_>>(),
            "{text}"
        );

        let d = &program.domain;
        let syms = all_symbols(&program);
        for x in &syms {
            assert_eq!(rel.degree(x, x), d.top());
            for y in &syms {
                let xy = rel.degree(x, y);
                assert_eq!(xy, rel.degree(y, x));
                if x != y && !d.is_bottom(&xy) {
                    assert_eq!(
                        program.signature().lookup(x),
                        program.signature().lookup(y),
                        "{x} ~ {y}\n{text}"
                    );
                }
                for z in &syms {
                    let via = d.glb(&xy, &rel.degree(y, z)).unwrap();
                    assert!(
                        d.leq(&via, &rel.degree(x, z)).unwrap(),
                        "{x} {y} {z}\n{text}"
                    );
                }
            }
        }
    }
}

#[test]
fn term_similarity_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51a1);
    for (program, rel, text) in programs(0x51a2) {
        let universe = ground_terms(&program, 3);
        if universe.is_empty() {
            continue;
        }
        let d = &program.domain;
        let identity = SimilarityRelation::identity(d.clone());
        for _ in 0..200 {
            let pick = |rng: &mut ChaCha8Rng| -> Term {
                let t = universe.choose(rng).unwrap();
                if rng.gen_bool(0.5) {
                    rel.similar_terms(t).choose(rng).unwrap().0.clone()
                } else {
                    t.clone()
                }
            };
            let (t, s, r) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            assert_eq!(rel.sim_term(&t, &t), d.top());
            assert_eq!(rel.sim_term(&t, &s), rel.sim_term(&s, &t));
            let via = d.glb(&rel.sim_term(&t, &s), &rel.sim_term(&s, &r)).unwrap();
            assert!(
                d.leq(&via, &rel.sim_term(&t, &r)).unwrap(),
                "{t} {s} {r}\n{text}"
            );
            let expected = if t == s { d.top() } else { d.bottom() };
            assert_eq!(identity.sim_term(&t, &s), expected);
        }
    }
}

fn random_atom(rng: &mut ChaCha8Rng, program: &Program, universe: &[Term]) -> Option<Atom> {
    let preds: Vec<(&sqlp::syntax::Name, &usize)> =
        program.signature().predicates().iter().collect();
    let (p, &n) = *preds.choose(rng)?;
    let vars = ["X", "Y"];
    let args = (0..n)
        .map(|_| {
            if universe.is_empty() || rng.gen_bool(0.5) {
                Some(Term::var(vars.choose(rng).unwrap()))
            } else {
                universe.choose(rng).cloned()
            }
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Atom::new(p, args))
}

/// The witness degrees of `target` against `a`, found by matching every
/// similar variant of the linearized atom.
fn witness_oracle(
    rel: &SimilarityRelation,
    domain: &Domain,
    a: &Atom,
    target: &Atom,
) -> BTreeSet<String> {
    let lin = linearize(a);
    let mut out = BTreeSet::new();
    for (variant, delta) in rel.similar_atoms(&lin.linear_atom) {
        let Some(theta) = match_atom(&variant, target) else {
            continue;
        };
        let mut degree = delta;
        for (x, fresh) in &lin.conditions {
            let bound = |v: &str| theta.get(v).cloned().unwrap_or_else(|| Term::var(v));
            degree = domain
                .glb(&degree, &rel.sim_term(&bound(x), &bound(fresh)))
                .unwrap();
        }
        if !domain.is_bottom(&degree) {
            out.insert(domain.render(&degree));
        }
    }
    out
}

#[test]
fn witnesses_agree_with_variant_matching() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51a3);
    let mut nonempty = 0;
    for (program, rel, text) in programs(0x51a4) {
        let universe = ground_terms(&program, 2);
        let d = &program.domain;
        for _ in 0..100 {
            let Some(a) = random_atom(&mut rng, &program, &universe) else {
                break;
            };
            let ground: Substitution = a
                .vars()
                .into_iter()
                .filter_map(|v| universe.choose(&mut rng).map(|t| (v, t.clone())))
                .collect();
            let instance = ground.apply_atom(&a);
            let variants = rel.similar_atoms(&instance);
            let target = variants.choose(&mut rng).unwrap().0.clone();
            let direct: BTreeSet<String> = rel
                .witness_degrees(&a, &target)
                .iter()
                .map(|v| d.render(v))
                .collect();
            assert_eq!(
                direct,
                witness_oracle(&rel, d, &a, &target),
                "{a} vs {target}\n{text}"
            );
            nonempty += usize::from(!direct.is_empty());
            for w in rel.witnesses(&a, &target) {
                assert_eq!(w.substitution.apply_atom(&w.head_variant), target);
            }
            assert!(
                rel.witness_degrees(&a, &instance).contains(&d.top()),
                "{a} vs {instance}"
            );
        }
    }
    assert!(nonempty > PROGRAMS * 50);
}

#[test]
fn similar_atom_degrees_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51a5);
    for (program, rel, _) in programs(0x51a6) {
        let universe = ground_terms(&program, 2);
        for _ in 0..50 {
            let Some(a) = random_atom(&mut rng, &program, &universe) else {
                break;
            };
            let variants = rel.similar_atoms(&a);
            assert_eq!(variants[0], (a.clone(), program.domain.top()));
            for (h, delta) in variants {
                assert_eq!(rel.sim_atom(&a, &h), delta);
                assert!(!program.domain.is_bottom(&delta));
            }
        }
    }
}

#[test]
fn non_linear_patterns_need_similar_arguments() {
    let (_, rel) = load("#domain U\np(c, d) <-1-.\np(c, e) <-1-.\nsim(c, d) = 0.8.\n");
    let a = Atom::new("p", vec![Term::var("X"), Term::var("X")]);
    let related = Atom::new("p", vec![Term::constant("c"), Term::constant("d")]);
    let unrelated = Atom::new("p", vec![Term::constant("c"), Term::constant("e")]);
    assert_eq!(
        rel.witness_degrees(&a, &related),
        vec![Value::certainty(4, 5)]
    );
    assert!(rel.witness_degrees(&a, &unrelated).is_empty());
}
