use std::fmt;

use super::ast::{Formula, Term};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Elem(d) => write!(f, "{d}"),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                write_args(f, args)?;
                write!(f, ")")
            }
        }
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

// Binding strength used to decide where parentheses are needed.
const QUANT: u8 = 0;
const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const NOT: u8 = 5;
const ATOM: u8 = 6;

fn strength(f: &Formula) -> u8 {
    match f {
        Formula::Forall(..) | Formula::Exists(..) => QUANT,
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::Not(inner) if matches!(**inner, Formula::Eq(..)) => ATOM,
        Formula::Not(..) => NOT,
        _ => ATOM,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom(r, args) => {
                write!(f, "{r}(")?;
                write_args(f, args)?;
                write!(f, ")")
            }
            Formula::Eq(l, r) => write!(f, "{l} = {r}"),
            Formula::Not(inner) => match &**inner {
                Formula::Eq(l, r) => write!(f, "{l} != {r}"),
                g => {
                    write!(f, "!")?;
                    write_child(f, g, strength(g) < NOT)
                }
            },
            Formula::And(l, r) => binary(f, l, r, "&", AND, false),
            Formula::Or(l, r) => binary(f, l, r, "|", OR, false),
            Formula::Implies(l, r) => binary(f, l, r, "->", IMP, true),
            Formula::Iff(l, r) => binary(f, l, r, "<->", IFF, false),
            Formula::Forall(v, body) => write!(f, "forall {v}. {body}"),
            Formula::Exists(v, body) => write!(f, "exists {v}. {body}"),
        }
    }
}

fn binary(
    f: &mut fmt::Formatter<'_>,
    l: &Formula,
    r: &Formula,
    op: &str,
    level: u8,
    right_assoc: bool,
) -> fmt::Result {
    let (sl, sr) = (strength(l), strength(r));
    let left_parens = if right_assoc { sl <= level } else { sl < level };
    let right_parens = if right_assoc { sr < level } else { sr <= level };
    write_child(f, l, left_parens || sl == QUANT)?;
    write!(f, " {op} ")?;
    write_child(f, r, right_parens || sr == QUANT)
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_formula_raw;
    use super::super::signature::Signature;

    #[test]
    fn renders_with_minimal_parentheses() {
        let sig = Signature::with_relations([("u", 2), ("a", 0)]);
        for src in [
            "forall x. exists y. y != x & u(x, y)",
            "a() -> a() -> a()",
            "(a() -> a()) -> a()",
            "a() & (a() | a())",
            "!(a() & a())",
            "(forall x. u(x, x)) & a()",
            "a() & (forall x. u(x, x))",
            "!!a()",
            "x = y <-> (a() <-> a())",
        ] {
            let f = parse_formula_raw(src, &sig).unwrap();
            assert_eq!(f.to_string(), src);
        }
    }
}
