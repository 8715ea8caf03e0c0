//! Qualification domain laws, checked through `check_axioms` and directly.

mod common;

use common::random_value;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sqlp::domain::{check_axioms, check_axioms_with, sample_grid, Axiom, AxiomSet, Domain, Value};

const TRIPLES: usize = 1000;

fn strict_domains() -> Vec<Domain> {
    vec![
        Domain::B,
        Domain::U,
        Domain::W,
        Domain::product(Domain::U, Domain::W),
    ]
}

#[test]
fn strict_domains_pass_on_grids() {
    for d in strict_domains() {
        let violations = check_axioms(&d, &sample_grid(&d)).unwrap();
        assert!(violations.is_empty(), "{d}: {violations:?}");
    }
}

#[test]
fn strict_domains_pass_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0);
    for d in strict_domains() {
        for _ in 0..TRIPLES {
            let triple: Vec<Value> = (0..3).map(|_| random_value(&mut rng, &d)).collect();
            let violations = check_axioms(&d, &triple).unwrap();
            assert!(violations.is_empty(), "{d}: {violations:?}");
        }
    }
}

#[test]
fn quasi_domains_pass_relaxed_and_fail_strict() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1);
    for d in [Domain::Uq, Domain::Wq] {
        assert!(!d.is_strict());
        let grid = sample_grid(&d);
        assert!(
            check_axioms_with(&d, &grid, AxiomSet::Relaxed)
                .unwrap()
                .is_empty(),
            "{d}"
        );
        for _ in 0..TRIPLES {
            let triple: Vec<Value> = (0..3).map(|_| random_value(&mut rng, &d)).collect();
            assert!(check_axioms(&d, &triple).unwrap().is_empty(), "{d}");
        }
        let strict = check_axioms_with(&d, &grid, AxiomSet::Strict).unwrap();
        assert!(!strict.is_empty(), "{d}");
        assert!(
            strict.iter().all(|v| v.axiom == Axiom::StrictDecrease),
            "{d}: {strict:?}"
        );
        let witness = &strict[0].witness;
        assert_eq!(witness.len(), 2);
        let (x, y) = (&witness[0], &witness[1]);
        assert!(!d.lt(&d.atten(x, y).unwrap(), y).unwrap());
    }
}

fn any_domain() -> impl Strategy<Value = Domain> {
    prop_oneof![
        Just(Domain::B),
        Just(Domain::U),
        Just(Domain::W),
        Just(Domain::Uq),
        Just(Domain::Wq),
        Just(Domain::product(Domain::U, Domain::W)),
        Just(Domain::product(
            Domain::B,
            Domain::product(Domain::U, Domain::W)
        )),
    ]
}

fn values_in(domain: Domain, n: usize) -> impl Strategy<Value = (Domain, Vec<Value>)> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vs = (0..n).map(|_| random_value(&mut rng, &domain)).collect();
        (domain.clone(), vs)
    })
}

fn domain_and_values(n: usize) -> impl Strategy<Value = (Domain, Vec<Value>)> {
    any_domain().prop_flat_map(move |d| values_in(d, n))
}

proptest! {
    #[test]
    fn attenuation_laws((d, v) in domain_and_values(3)) {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let at = |a: &Value, b: &Value| d.atten(a, b).unwrap();
        prop_assert_eq!(at(&at(x, y), z), at(x, &at(y, z)));
        prop_assert_eq!(at(x, y), at(y, x));
        if d.leq(x, y).unwrap() {
            prop_assert!(d.leq(&at(x, z), &at(y, z)).unwrap());
        }
        prop_assert_eq!(&at(x, &d.top()), x);
        prop_assert_eq!(at(x, &d.bottom()), d.bottom());
        prop_assert_eq!(at(x, &d.glb(y, z).unwrap()), d.glb(&at(x, y), &at(x, z)).unwrap());
        prop_assert!(d.leq(&at(x, y), y).unwrap());
    }

    #[test]
    fn strict_decrease_on_interior((d, v) in domain_and_values(2)) {
        let (x, y) = (&v[0], &v[1]);
        let interior = |a: &Value| !d.is_bottom(a) && a != &d.top();
        if d.is_strict() && interior(x) && interior(y) {
            prop_assert!(d.lt(&d.atten(x, y).unwrap(), y).unwrap());
        }
    }

    #[test]
    fn lattice_laws((d, v) in domain_and_values(3)) {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        prop_assert!(d.leq(x, x).unwrap());
        if d.leq(x, y).unwrap() && d.leq(y, x).unwrap() {
            prop_assert_eq!(x, y);
        }
        if d.leq(x, y).unwrap() && d.leq(y, z).unwrap() {
            prop_assert!(d.leq(x, z).unwrap());
        }
        let meet = d.glb(x, y).unwrap();
        let join = d.lub(x, y).unwrap();
        prop_assert!(d.leq(&meet, x).unwrap() && d.leq(&meet, y).unwrap());
        prop_assert!(d.leq(x, &join).unwrap() && d.leq(y, &join).unwrap());
        if d.leq(z, x).unwrap() && d.leq(z, y).unwrap() {
            prop_assert!(d.leq(z, &meet).unwrap());
        }
        if d.leq(x, z).unwrap() && d.leq(y, z).unwrap() {
            prop_assert!(d.leq(&join, z).unwrap());
        }
        prop_assert!(d.leq(&d.bottom(), x).unwrap() && d.leq(x, &d.top()).unwrap());
    }

    #[test]
    fn glb_set_folds_and_distributes((d, v) in domain_and_values(4)) {
        let (rest, last) = v.split_at(3);
        let whole = d.glb_set(v.iter()).unwrap();
        prop_assert_eq!(&whole, &d.glb(&d.glb_set(rest.iter()).unwrap(), &last[0]).unwrap());
        let scaled: Vec<Value> = v[1..].iter().map(|e| d.atten(&v[0], e).unwrap()).collect();
        prop_assert_eq!(d.atten(&v[0], &d.glb_set(v[1..].iter()).unwrap()).unwrap(), d.glb_set(scaled.iter()).unwrap());
        prop_assert_eq!(d.glb_set(std::iter::empty()).unwrap(), d.top());
    }

    #[test]
    fn values_render_and_parse_back((d, v) in domain_and_values(1)) {
        let text = d.render(&v[0]);
        prop_assert_eq!(d.parse_value(&text).unwrap(), v[0].clone());
    }
}
