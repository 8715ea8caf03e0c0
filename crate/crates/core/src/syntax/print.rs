//! Printing in the concrete `.sqlp` syntax accepted by the parser.

use std::fmt;

use super::{AnnotatedAtom, Atom, Clause, Goal, Program, SimDecl, Term};

/// Whether `name` can be written without quotes: a lowercase letter followed
/// by alphanumerics, `_`, or `.` between two digits.
pub fn is_plain_symbol(name: &str) -> bool {
    let chars: Vec<char> = name.chars().collect();
    let Some(first) = chars.first() else {
        return false;
    };
    if !first.is_ascii_lowercase() {
        return false;
    }
    chars.iter().enumerate().all(|(i, &c)| {
        c.is_ascii_alphanumeric()
            || c == '_'
            || (c == '.'
                && i + 1 < chars.len()
                && chars[i - 1].is_ascii_digit()
                && chars[i + 1].is_ascii_digit())
    })
}

pub fn quote_symbol(name: &str) -> String {
    if is_plain_symbol(name) {
        name.to_string()
    } else {
        format!("'{}'", name.replace('\'', "''"))
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    if args.is_empty() {
        return Ok(());
    }
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(c, args) => {
                f.write_str(&quote_symbol(c))?;
                write_args(f, args)
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&quote_symbol(&self.pred))?;
        write_args(f, &self.args)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <-{}-", self.head, self.attenuation)?;
        for (i, b) in self.body.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{b}")?;
        }
        f.write_str(".")
    }
}

impl fmt::Display for SimDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sim({}, {}) = {}.",
            quote_symbol(&self.left),
            quote_symbol(&self.right),
            self.degree
        )
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "#domain {}", self.domain)?;
        for c in self.clauses() {
            writeln!(f, "{c}")?;
        }
        for s in self.similarities() {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Display for AnnotatedAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.atom, self.qvar)
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        for (i, (w, beta)) in self.thresholds.iter().enumerate() {
            f.write_str(if i == 0 { " | " } else { ", " })?;
            write!(f, "{w} >= {beta}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_goal, parse_program};

    #[test]
    fn quoting() {
        assert!(is_plain_symbol("pay_0.8"));
        assert!(!is_plain_symbol("pay_0."));
        assert!(!is_plain_symbol("$sim"));
        assert!(!is_plain_symbol("Cat"));
        assert_eq!(quote_symbol("it's"), "'it''s'");
        assert_eq!(quote_symbol("pay_(0.5,2)"), "'pay_(0.5,2)'");
    }

    #[test]
    fn clause_layout() {
        let p =
            parse_program("#domain U\nwild(lynx)<-0.9-.\npet(A)<-1- pacific(A),intelligent(A).")
                .unwrap();
        assert_eq!(
            p.to_string(),
            "#domain U\nwild(lynx) <-0.9-.\npet(A) <-1.0- pacific(A), intelligent(A).\n"
        );
    }

    #[test]
    fn program_round_trip() {
        let src = "#domain UxW\n'q x'(f(X, a), Y) <-(0.5,2)- pay_0.5, r(Y).\nr(b) <-(1.0,0)-.\nsim(a, b) = (0.8,1).\n";
        let p = parse_program(src).unwrap();
        assert_eq!(p.to_string(), src);
        assert_eq!(parse_program(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn goal_round_trip() {
        let p = parse_program("#domain U\np(a) <-1-.\nq(a) <-1-.\n").unwrap();
        let g = parse_goal("p(X)#W1,q(f(X))#W2|W2>=0.5,W1>=0.25", &p).unwrap();
        let text = g.to_string();
        assert_eq!(text, "p(X)#W1, q(f(X))#W2 | W1 >= 0.25, W2 >= 0.5");
        assert_eq!(parse_goal(&text, &p).unwrap(), g);
    }
}
