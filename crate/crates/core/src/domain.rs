//! Qualification domains.
//!
//! A qualification domain is a bounded lattice `(D, ⊑, ⊥, ⊤)` together with an
//! attenuation operation `∘` that is associative, commutative, monotone, has
//! `⊤` as identity, `⊥` as absorbing element, strictly decreases interior
//! elements and distributes over `⊓`.
//!
//! The supported instances are selected at runtime through [`Domain`]:
//!
//! | name | carrier        | order     | `∘`      |
//! |------|----------------|-----------|----------|
//! | `B`  | `{0, 1}`       | `≤`       | `∧`      |
//! | `U`  | `[0, 1]`       | `≤`       | `×`      |
//! | `W`  | `[0, ∞]`       | `≥`       | `+`      |
//! | `Uq` | `[0, 1]`       | `≤`       | `min`    |
//! | `Wq` | `[0, ∞]`       | `≥`       | `max`    |
//! | `D1xD2` | pairs       | componentwise | componentwise |
//!
//! `Uq` and `Wq` are quasi domains: strict decrease only holds in the relaxed
//! form `d ∘ e ⊑ e`.
//!
//! Products use the strict (smash) carrier: a pair with a bottom component is
//! identified with the bottom pair. On the plain cartesian carrier, elements
//! such as `(1, inf)` in `UxW` are idempotent under `∘` and break strict decrease.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Errors raised by domain operations and value parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("value `{value}` does not belong to domain {domain}")]
    Mismatch { domain: Domain, value: String },
    #[error("literal `{literal}` is outside the carrier of domain {domain}")]
    OutOfCarrier { domain: Domain, literal: String },
    #[error("malformed value literal `{0}`")]
    BadLiteral(String),
    #[error("unknown domain `{0}`")]
    UnknownDomain(String),
}

/// Selects one of the supported qualification domains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Domain {
    B,
    U,
    W,
    Uq,
    Wq,
    Product(Box<Domain>, Box<Domain>),
}

/// An element of a weighted-proof-depth carrier: a nonnegative rational or infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Weight {
    Finite(BigRational),
    Infinite,
}

/// A carrier element of some [`Domain`].
///
/// Values do not carry their domain; every operation is performed through the
/// `Domain` that owns them, which also checks the payload shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Bool(bool),
    Certainty(BigRational),
    Weight(Weight),
    Pair(Box<Value>, Box<Value>),
}

pub(crate) fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Value {
    /// Certainty value `num/den`.
    pub fn certainty(num: i64, den: i64) -> Self {
        Value::Certainty(ratio(num, den))
    }

    /// Finite weight `num/den`.
    pub fn weight(num: i64, den: i64) -> Self {
        Value::Weight(Weight::Finite(ratio(num, den)))
    }

    pub fn infinity() -> Self {
        Value::Weight(Weight::Infinite)
    }

    /// Numeric reading of a certainty or weight value, for display and tolerance checks.
    pub fn to_f64(&self) -> Option<f64> {
        match self {
            Value::Bool(b) => Some(if *b { 1.0 } else { 0.0 }),
            Value::Certainty(q) | Value::Weight(Weight::Finite(q)) => q.to_f64(),
            Value::Weight(Weight::Infinite) => Some(f64::INFINITY),
            Value::Pair(..) => None,
        }
    }
}

impl Domain {
    pub fn product(left: Domain, right: Domain) -> Self {
        Domain::Product(Box::new(left), Box::new(right))
    }

    /// True for full qualification domains, false for quasi domains and any
    /// product containing one.
    pub fn is_strict(&self) -> bool {
        match self {
            Domain::B | Domain::U | Domain::W => true,
            Domain::Uq | Domain::Wq => false,
            Domain::Product(l, r) => l.is_strict() && r.is_strict(),
        }
    }

    pub fn bottom(&self) -> Value {
        match self {
            Domain::B => Value::Bool(false),
            Domain::U | Domain::Uq => Value::Certainty(BigRational::zero()),
            Domain::W | Domain::Wq => Value::Weight(Weight::Infinite),
            Domain::Product(l, r) => Value::Pair(Box::new(l.bottom()), Box::new(r.bottom())),
        }
    }

    pub fn top(&self) -> Value {
        match self {
            Domain::B => Value::Bool(true),
            Domain::U | Domain::Uq => Value::Certainty(BigRational::one()),
            Domain::W | Domain::Wq => Value::Weight(Weight::Finite(BigRational::zero())),
            Domain::Product(l, r) => Value::Pair(Box::new(l.top()), Box::new(r.top())),
        }
    }

    pub fn is_bottom(&self, v: &Value) -> bool {
        *v == self.bottom()
    }

    pub fn is_top(&self, v: &Value) -> bool {
        *v == self.top()
    }

    /// Whether `v` is a (normalized) element of this domain's carrier.
    pub fn contains(&self, v: &Value) -> bool {
        match (self, v) {
            (Domain::B, Value::Bool(_)) => true,
            (Domain::U | Domain::Uq, Value::Certainty(q)) => {
                !q.is_negative() && *q <= BigRational::one()
            }
            (Domain::W | Domain::Wq, Value::Weight(Weight::Infinite)) => true,
            (Domain::W | Domain::Wq, Value::Weight(Weight::Finite(q))) => !q.is_negative(),
            (Domain::Product(dl, dr), Value::Pair(l, r)) => {
                dl.contains(l) && dr.contains(r) && (dl.is_bottom(l) == dr.is_bottom(r))
            }
            _ => false,
        }
    }

    fn check(&self, v: &Value) -> Result<(), DomainError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(DomainError::Mismatch {
                domain: self.clone(),
                value: format!("{v:?}"),
            })
        }
    }

    /// Builds a pair, collapsing it to bottom when either component is bottom.
    pub fn pair(&self, left: Value, right: Value) -> Result<Value, DomainError> {
        let Domain::Product(dl, dr) = self else {
            return Err(DomainError::Mismatch {
                domain: self.clone(),
                value: format!("({left:?}, {right:?})"),
            });
        };
        dl.check(&left)?;
        dr.check(&right)?;
        Ok(self.smash(left, right))
    }

    fn smash(&self, left: Value, right: Value) -> Value {
        match self {
            Domain::Product(dl, dr) if dl.is_bottom(&left) || dr.is_bottom(&right) => self.bottom(),
            _ => Value::Pair(Box::new(left), Box::new(right)),
        }
    }

    /// `d ⊑ e` in this domain's order.
    pub fn leq(&self, d: &Value, e: &Value) -> Result<bool, DomainError> {
        self.check(d)?;
        self.check(e)?;
        Ok(self.leq_unchecked(d, e))
    }

    /// `d ⊏ e`.
    pub fn lt(&self, d: &Value, e: &Value) -> Result<bool, DomainError> {
        Ok(self.leq(d, e)? && d != e)
    }

    pub(crate) fn leq_unchecked(&self, d: &Value, e: &Value) -> bool {
        match (self, d, e) {
            (Domain::B, Value::Bool(a), Value::Bool(b)) => !a | b,
            (Domain::U | Domain::Uq, Value::Certainty(a), Value::Certainty(b)) => a <= b,
            (Domain::W | Domain::Wq, Value::Weight(a), Value::Weight(b)) => match (a, b) {
                (Weight::Infinite, _) => true,
                (Weight::Finite(_), Weight::Infinite) => false,
                (Weight::Finite(x), Weight::Finite(y)) => x >= y,
            },
            (Domain::Product(dl, dr), Value::Pair(a1, a2), Value::Pair(b1, b2)) => {
                dl.leq_unchecked(a1, b1) && dr.leq_unchecked(a2, b2)
            }
            _ => false,
        }
    }

    /// Greatest lower bound.
    pub fn glb(&self, d: &Value, e: &Value) -> Result<Value, DomainError> {
        self.check(d)?;
        self.check(e)?;
        Ok(self.glb_unchecked(d, e))
    }

    pub(crate) fn glb_unchecked(&self, d: &Value, e: &Value) -> Value {
        match (self, d, e) {
            (Domain::B, Value::Bool(a), Value::Bool(b)) => Value::Bool(*a && *b),
            (Domain::Product(dl, dr), Value::Pair(a1, a2), Value::Pair(b1, b2)) => {
                self.smash(dl.glb_unchecked(a1, b1), dr.glb_unchecked(a2, b2))
            }
            _ => {
                if self.leq_unchecked(d, e) {
                    d.clone()
                } else {
                    e.clone()
                }
            }
        }
    }

    /// Least upper bound.
    pub fn lub(&self, d: &Value, e: &Value) -> Result<Value, DomainError> {
        self.check(d)?;
        self.check(e)?;
        Ok(self.lub_unchecked(d, e))
    }

    pub(crate) fn lub_unchecked(&self, d: &Value, e: &Value) -> Value {
        match (self, d, e) {
            (Domain::B, Value::Bool(a), Value::Bool(b)) => Value::Bool(*a || *b),
            (Domain::Product(dl, dr), Value::Pair(a1, a2), Value::Pair(b1, b2)) => {
                self.smash(dl.lub_unchecked(a1, b1), dr.lub_unchecked(a2, b2))
            }
            _ => {
                if self.leq_unchecked(d, e) {
                    e.clone()
                } else {
                    d.clone()
                }
            }
        }
    }

    /// Folds `glb` over `values`; the empty sequence yields `⊤`.
    pub fn glb_set<'a, I>(&self, values: I) -> Result<Value, DomainError>
    where
        I: IntoIterator<Item = &'a Value>,
    {
        let mut acc = self.top();
        for v in values {
            self.check(v)?;
            acc = self.glb_unchecked(&acc, v);
        }
        Ok(acc)
    }

    pub(crate) fn glb_set_unchecked<'a, I>(&self, values: I) -> Value
    where
        I: IntoIterator<Item = &'a Value>,
    {
        values
            .into_iter()
            .fold(self.top(), |acc, v| self.glb_unchecked(&acc, v))
    }

    /// The attenuation operation `d ∘ e`.
    pub fn atten(&self, d: &Value, e: &Value) -> Result<Value, DomainError> {
        self.check(d)?;
        self.check(e)?;
        Ok(self.atten_unchecked(d, e))
    }

    pub(crate) fn atten_unchecked(&self, d: &Value, e: &Value) -> Value {
        match (self, d, e) {
            (Domain::B, Value::Bool(a), Value::Bool(b)) => Value::Bool(*a && *b),
            (Domain::U, Value::Certainty(a), Value::Certainty(b)) => Value::Certainty(a * b),
            (Domain::W, Value::Weight(a), Value::Weight(b)) => match (a, b) {
                (Weight::Finite(x), Weight::Finite(y)) => Value::Weight(Weight::Finite(x + y)),
                _ => Value::Weight(Weight::Infinite),
            },
            (Domain::Uq | Domain::Wq, _, _) => self.glb_unchecked(d, e),
            (Domain::Product(dl, dr), Value::Pair(a1, a2), Value::Pair(b1, b2)) => {
                self.smash(dl.atten_unchecked(a1, b1), dr.atten_unchecked(a2, b2))
            }
            _ => unreachable!("shape checked by caller"),
        }
    }

    /// Parses a value literal: `0`/`1` for `B`, decimals or `p/q` for the
    /// numeric domains, `inf` for the weight domains, `(v1,v2)` for products.
    pub fn parse_value(&self, text: &str) -> Result<Value, DomainError> {
        let text = text.trim();
        match self {
            Domain::B => match text {
                "0" => Ok(Value::Bool(false)),
                "1" => Ok(Value::Bool(true)),
                _ => {
                    parse_rational(text)?;
                    Err(self.out_of_carrier(text))
                }
            },
            Domain::U | Domain::Uq => {
                let q = parse_rational(text)?;
                let v = Value::Certainty(q);
                if self.contains(&v) {
                    Ok(v)
                } else {
                    Err(self.out_of_carrier(text))
                }
            }
            Domain::W | Domain::Wq => {
                if text == "inf" {
                    return Ok(Value::Weight(Weight::Infinite));
                }
                let q = parse_rational(text)?;
                if q.is_negative() {
                    return Err(self.out_of_carrier(text));
                }
                Ok(Value::Weight(Weight::Finite(q)))
            }
            Domain::Product(dl, dr) => {
                let inner = text
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| DomainError::BadLiteral(text.to_string()))?;
                let split = top_level_comma(inner)
                    .ok_or_else(|| DomainError::BadLiteral(text.to_string()))?;
                let left = dl.parse_value(&inner[..split])?;
                let right = dr.parse_value(&inner[split + 1..])?;
                Ok(self.smash(left, right))
            }
        }
    }

    fn out_of_carrier(&self, text: &str) -> DomainError {
        DomainError::OutOfCarrier {
            domain: self.clone(),
            literal: text.to_string(),
        }
    }

    /// Canonical rendering of `v`, the inverse of [`Domain::parse_value`].
    pub fn render(&self, v: &Value) -> String {
        render_value(v)
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// Parses `123`, `0.50`, `.5` or `3/4` into an exact rational.
pub(crate) fn parse_rational(text: &str) -> Result<BigRational, DomainError> {
    let bad = || DomainError::BadLiteral(text.to_string());
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = digits(n).ok_or_else(bad)?;
        let d: BigInt = digits(d).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let int_part: BigInt = if int.is_empty() {
        BigInt::zero()
    } else {
        digits(int).ok_or_else(bad)?
    };
    if text.contains('.') && frac.is_empty() {
        return Err(bad());
    }
    let mut q = BigRational::from_integer(int_part);
    if !frac.is_empty() {
        let f: BigInt = digits(frac).ok_or_else(bad)?;
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        q += BigRational::new(f, scale);
    }
    Ok(q)
}

fn digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Terminating decimal when the denominator is `2^a·5^b`, else `p/q`.
fn render_rational(q: &BigRational, min_fraction_digits: usize) -> String {
    let mut den = q.denom().clone();
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", q.numer(), q.denom());
    }
    let places = twos.max(fives);
    let scaled = q * BigRational::from_integer(num_traits::pow(BigInt::from(10u32), places));
    let digits = scaled.to_integer().to_string();
    let (int, frac) = if places == 0 {
        (digits, String::new())
    } else {
        let padded = format!("{:0>width$}", digits, width = places + 1);
        let (i, f) = padded.split_at(padded.len() - places);
        (i.to_string(), f.to_string())
    };
    let mut frac = frac;
    while frac.len() < min_fraction_digits {
        frac.push('0');
    }
    if frac.is_empty() {
        int
    } else {
        format!("{int}.{frac}")
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::Bool(b) => if *b { "1" } else { "0" }.to_string(),
        Value::Certainty(q) => render_rational(q, 1),
        Value::Weight(Weight::Finite(q)) => render_rational(q, 0),
        Value::Weight(Weight::Infinite) => "inf".to_string(),
        Value::Pair(l, r) => format!("({},{})", render_value(l), render_value(r)),
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_value(self))
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::B => f.write_str("B"),
            Domain::U => f.write_str("U"),
            Domain::W => f.write_str("W"),
            Domain::Uq => f.write_str("Uq"),
            Domain::Wq => f.write_str("Wq"),
            Domain::Product(l, r) => {
                let side = |d: &Domain| match d {
                    Domain::Product(..) => format!("({d})"),
                    _ => d.to_string(),
                };
                write!(f, "{}x{}", side(l), side(r))
            }
        }
    }
}

impl FromStr for Domain {
    type Err = DomainError;

    /// Accepts `B`, `U`, `W`, `Uq`, `Wq` and products `D1xD2`, with
    /// parentheses for nesting (`x` groups to the left without them).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || DomainError::UnknownDomain(s.to_string());
        let s = s.trim();
        let mut depth = 0usize;
        let mut split = None;
        for (i, c) in s.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth = depth.checked_sub(1).ok_or_else(unknown)?,
                'x' if depth == 0 => split = Some(i),
                _ => {}
            }
        }
        if let Some(i) = split {
            let left: Domain = s[..i].parse().map_err(|_| unknown())?;
            let right: Domain = s[i + 1..].parse().map_err(|_| unknown())?;
            return Ok(Domain::product(left, right));
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            return inner.parse().map_err(|_| unknown());
        }
        match s {
            "B" => Ok(Domain::B),
            "U" => Ok(Domain::U),
            "W" => Ok(Domain::W),
            "Uq" => Ok(Domain::Uq),
            "Wq" => Ok(Domain::Wq),
            _ => Err(unknown()),
        }
    }
}

/// The axioms checked by [`check_axioms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `⊑` is reflexive, antisymmetric and transitive.
    PartialOrder,
    /// `glb`/`lub` are the meet and join of `⊑`, and `⊥ ⊑ d ⊑ ⊤`.
    Lattice,
    /// Associativity of `∘`.
    Associative,
    /// Commutativity of `∘`.
    Commutative,
    /// Monotonicity: `d ⊑ e` implies `d ∘ f ⊑ e ∘ f`.
    Monotone,
    /// Identity: `d ∘ ⊤ = d`.
    TopIdentity,
    /// Absorption: `d ∘ ⊥ = ⊥`.
    BottomAbsorbing,
    /// Strict decrease: `d ∘ e ⊏ e` for `d, e ∉ {⊥, ⊤}`.
    StrictDecrease,
    /// Relaxed decrease: `d ∘ e ⊑ e`.
    RelaxedDecrease,
    /// Distribution over `⊓`: `d ∘ (e1 ⊓ e2) = d ∘ e1 ⊓ d ∘ e2`.
    Distributive,
}

/// Which form of the decrease axiom to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomSet {
    Strict,
    Relaxed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Value>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.witness.iter().map(ToString::to_string).collect();
        write!(f, "{:?} violated at [{}]", self.axiom, w.join(", "))
    }
}

/// Checks the domain axioms on every tuple drawn from `samples`, using the
/// strict decrease for strict domains and the relaxed form otherwise.
pub fn check_axioms(domain: &Domain, samples: &[Value]) -> Result<Vec<Violation>, DomainError> {
    let set = if domain.is_strict() {
        AxiomSet::Strict
    } else {
        AxiomSet::Relaxed
    };
    check_axioms_with(domain, samples, set)
}

/// Like [`check_axioms`] with an explicit choice of decrease axiom.
pub fn check_axioms_with(
    domain: &Domain,
    samples: &[Value],
    set: AxiomSet,
) -> Result<Vec<Violation>, DomainError> {
    for s in samples {
        domain.check(s)?;
    }
    let d = domain;
    let (bot, top) = (d.bottom(), d.top());
    let mut out = Vec::new();
    let mut fail = |axiom, witness: &[&Value]| {
        out.push(Violation {
            axiom,
            witness: witness.iter().map(|v| (*v).clone()).collect(),
        })
    };
    let leq = |a: &Value, b: &Value| d.leq_unchecked(a, b);
    let at = |a: &Value, b: &Value| d.atten_unchecked(a, b);

    for x in samples {
        if !leq(x, x) {
            fail(Axiom::PartialOrder, &[x]);
        }
        if !leq(&bot, x) || !leq(x, &top) {
            fail(Axiom::Lattice, &[x]);
        }
        if at(x, &top) != *x {
            fail(Axiom::TopIdentity, &[x]);
        }
        if at(x, &bot) != bot {
            fail(Axiom::BottomAbsorbing, &[x]);
        }
        for y in samples {
            if leq(x, y) && leq(y, x) && x != y {
                fail(Axiom::PartialOrder, &[x, y]);
            }
            if at(x, y) != at(y, x) {
                fail(Axiom::Commutative, &[x, y]);
            }
            let (m, j) = (d.glb_unchecked(x, y), d.lub_unchecked(x, y));
            if !(leq(&m, x) && leq(&m, y) && leq(x, &j) && leq(y, &j)) {
                fail(Axiom::Lattice, &[x, y]);
            }
            let interior = |v: &Value| *v != bot && *v != top;
            let xy = at(x, y);
            match set {
                AxiomSet::Strict => {
                    if interior(x) && interior(y) && !(leq(&xy, y) && xy != *y) {
                        fail(Axiom::StrictDecrease, &[x, y]);
                    }
                }
                AxiomSet::Relaxed => {
                    if !leq(&xy, y) {
                        fail(Axiom::RelaxedDecrease, &[x, y]);
                    }
                }
            }
            for z in samples {
                if leq(x, y) && leq(y, z) && !leq(x, z) {
                    fail(Axiom::PartialOrder, &[x, y, z]);
                }
                // meet/join are the greatest/least bounds among samples
                if leq(z, x) && leq(z, y) && !leq(z, &m) {
                    fail(Axiom::Lattice, &[x, y, z]);
                }
                if leq(x, z) && leq(y, z) && !leq(&j, z) {
                    fail(Axiom::Lattice, &[x, y, z]);
                }
                if at(&at(x, y), z) != at(x, &at(y, z)) {
                    fail(Axiom::Associative, &[x, y, z]);
                }
                if leq(x, y) && !leq(&at(x, z), &at(y, z)) {
                    fail(Axiom::Monotone, &[x, y, z]);
                }
                if at(x, &d.glb_unchecked(y, z)) != d.glb_unchecked(&at(x, y), &at(x, z)) {
                    fail(Axiom::Distributive, &[x, y, z]);
                }
            }
        }
    }
    Ok(out)
}

/// A small sample grid of the domain's carrier, always including `⊥` and `⊤`.
pub fn sample_grid(domain: &Domain) -> Vec<Value> {
    match domain {
        Domain::B => vec![Value::Bool(false), Value::Bool(true)],
        Domain::U | Domain::Uq => [(0, 1), (3, 10), (1, 2), (4, 5), (1, 1)]
            .iter()
            .map(|&(n, d)| Value::certainty(n, d))
            .collect(),
        Domain::W | Domain::Wq => {
            let mut v: Vec<Value> = [(0, 1), (1, 1), (5, 2), (2, 1)]
                .iter()
                .map(|&(n, d)| Value::weight(n, d))
                .collect();
            v.push(Value::infinity());
            v
        }
        Domain::Product(l, r) => {
            let mut out: Vec<Value> = Vec::new();
            for a in sample_grid(l) {
                for b in sample_grid(r) {
                    let p = domain.smash(a.clone(), b);
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
            out
        }
    }
}
