//! Canonical surface syntax. Output is deterministic and re-parses to the
//! same AST (abbreviation nodes excepted: the parser expands `==[T]` and
//! `~~[T]` on the spot).

use super::formula::{Bound, EqMode, Formula, Quant};
use super::term::Term;

pub fn print_term(t: &Term) -> String {
    if let Some(n) = t.as_num() {
        return n.to_string();
    }
    let list = |ts: &[&Term]| ts.iter().map(|t| print_term(t)).collect::<Vec<_>>().join(",");
    match t {
        Term::Var(v) => v.name.clone(),
        Term::Zero => "0".into(),
        Term::Succ(x) => format!("S({})", print_term(x)),
        Term::App(..) => {
            let mut args = Vec::new();
            let mut head = t;
            while let Term::App(h, a) = head {
                args.push(&**a);
                head = h;
            }
            args.push(head);
            args.reverse();
            format!("app({})", list(&args))
        }
        Term::Pair(a, b) => format!("<{},{}>", print_term(a), print_term(b)),
        Term::Proj1(x) => format!("fst({})", print_term(x)),
        Term::Proj2(x) => format!("snd({})", print_term(x)),
        Term::SeqLit(ty, items) if items.is_empty() => format!("[:{}]", ty),
        Term::SeqLit(_, items) => format!("[{}]", list(&items.iter().collect::<Vec<_>>())),
        Term::Len(x) => format!("len({})", print_term(x)),
        Term::Idx(s, i) => format!("idx({},{})", print_term(s), print_term(i)),
        Term::Max0(x) => format!("max0({})", print_term(x)),
        Term::FunSym(n, args) => format!("{}({})", n, list(&args.iter().collect::<Vec<_>>())),
    }
}

pub fn print_formula(f: &Formula) -> String {
    render(f, 0, true)
}

const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn quant_prefix(f: &Formula) -> Option<(String, &Formula)> {
    let bound = |b: Bound| if b == Bound::Forall { "!" } else { "?" };
    match f {
        Formula::Quant(q, v, body) => {
            let sym = match q {
                Quant::Forall => "!",
                Quant::Exists => "?",
                Quant::ForallSt => "!st ",
                Quant::ExistsSt => "?st ",
            };
            Some((format!("{}{}:{}. ", sym, v.name, v.ty), body))
        }
        Formula::Bounded(b, n, t, body) => {
            Some((format!("{}{} <= {}. ", bound(*b), n, print_term(t)), body))
        }
        Formula::Member(b, v, t, body) => {
            Some((format!("{}{} in {}. ", bound(*b), v.name, print_term(t)), body))
        }
        _ => None,
    }
}

/// `ctx` is the binding strength demanded by the parent; `rightmost` tells
/// whether nothing follows this subformula in the enclosing text, which is
/// when a quantifier can be printed without parentheses.
fn render(f: &Formula, ctx: u8, rightmost: bool) -> String {
    if let Some((prefix, body)) = quant_prefix(f) {
        return if rightmost {
            format!("{}{}", prefix, render(body, 0, true))
        } else {
            format!("({}{})", prefix, render(body, 0, true))
        };
    }
    let (prec, text) = match f {
        Formula::True => (UNARY, "true".to_string()),
        Formula::False => (UNARY, "false".to_string()),
        Formula::Eq(a, b) => (UNARY, format!("{} = {}", print_term(a), print_term(b))),
        Formula::Le(a, b) => (UNARY, format!("{} <= {}", print_term(a), print_term(b))),
        Formula::Pred(n, args) => (
            UNARY,
            format!(
                "{}({})",
                n,
                args.iter().map(print_term).collect::<Vec<_>>().join(",")
            ),
        ),
        Formula::St(t) => (UNARY, format!("st({})", print_term(t))),
        Formula::StdExt(t) => (UNARY, format!("stdext({})", print_term(t))),
        Formula::HigherEq(a, b, ty, mode) => {
            let op = if *mode == EqMode::Exact { "==" } else { "~~" };
            (
                UNARY,
                format!("{} {}[{}] {}", print_term(a), op, ty, print_term(b)),
            )
        }
        Formula::Not(inner) => match &**inner {
            Formula::Eq(a, b) => (UNARY, format!("{} != {}", print_term(a), print_term(b))),
            _ => {
                let paren = ctx > UNARY;
                let rm = paren || rightmost;
                (UNARY, format!("~{}", render(inner, UNARY, rm)))
            }
        },
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            let (prec, op, lp, rp) = match f {
                Formula::And(..) => (AND, "&", AND, UNARY),
                Formula::Or(..) => (OR, "|", OR, AND),
                _ => (IMPLIES, "->", OR, IMPLIES),
            };
            let paren = ctx > prec;
            let rm = paren || rightmost;
            (
                prec,
                format!("{} {} {}", render(a, lp, false), op, render(b, rp, rm)),
            )
        }
        Formula::Quant(..) | Formula::Bounded(..) | Formula::Member(..) => unreachable!(),
    };
    if ctx > prec {
        format!("({})", text)
    } else {
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{FinType, Var};

    #[test]
    fn implication_with_quantified_operands() {
        let f = Var::new("f", FinType::pure(1));
        let n = Var::new("n", FinType::Base);
        let m = Var::new("m", FinType::Base);
        let phi = Formula::quant(
            Quant::ForallSt,
            f.clone(),
            Formula::implies(
                Formula::quant(
                    Quant::Exists,
                    n.clone(),
                    Formula::Eq(Term::app(f.term(), n.term()), Term::Zero),
                ),
                Formula::quant(
                    Quant::ExistsSt,
                    m.clone(),
                    Formula::Eq(Term::app(f.term(), m.term()), Term::Zero),
                ),
            ),
        );
        assert_eq!(
            print_formula(&phi),
            "!st f:1. (?n:0. app(f,n) = 0) -> ?st m:0. app(f,m) = 0"
        );
    }

    #[test]
    fn precedence_parentheses() {
        let p = |n: &str| Formula::Pred(n.into(), vec![]);
        let f = Formula::and(Formula::or(p("a"), p("b")), Formula::implies(p("c"), p("d")));
        assert_eq!(print_formula(&f), "(a() | b()) & (c() -> d())");
        let g = Formula::implies(Formula::implies(p("a"), p("b")), p("c"));
        assert_eq!(print_formula(&g), "(a() -> b()) -> c()");
    }
}
