//! Alpha-equivalence: equality up to consistent renaming of bound variables.

use super::formula::Formula;
use super::term::Term;

type Env = Vec<(String, String)>;

fn var_eq(a: &str, b: &str, env: &Env) -> bool {
    let ia = env.iter().rposition(|(l, _)| l == a);
    let ib = env.iter().rposition(|(_, r)| r == b);
    match (ia, ib) {
        (None, None) => a == b,
        (Some(i), Some(j)) => i == j,
        _ => false,
    }
}

fn term_eq(a: &Term, b: &Term, env: &Env) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => x.ty == y.ty && var_eq(&x.name, &y.name, env),
        (Term::Zero, Term::Zero) => true,
        (Term::Succ(x), Term::Succ(y))
        | (Term::Proj1(x), Term::Proj1(y))
        | (Term::Proj2(x), Term::Proj2(y))
        | (Term::Len(x), Term::Len(y))
        | (Term::Max0(x), Term::Max0(y)) => term_eq(x, y, env),
        (Term::App(x1, x2), Term::App(y1, y2))
        | (Term::Pair(x1, x2), Term::Pair(y1, y2))
        | (Term::Idx(x1, x2), Term::Idx(y1, y2)) => term_eq(x1, y1, env) && term_eq(x2, y2, env),
        (Term::SeqLit(t1, xs), Term::SeqLit(t2, ys)) => t1 == t2 && terms_eq(xs, ys, env),
        (Term::FunSym(n1, xs), Term::FunSym(n2, ys)) => n1 == n2 && terms_eq(xs, ys, env),
        _ => false,
    }
}

fn terms_eq(xs: &[Term], ys: &[Term], env: &Env) -> bool {
    xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, env))
}

fn under(a: &str, b: &str, env: &Env, fa: &Formula, fb: &Formula) -> bool {
    let mut env2 = env.clone();
    env2.push((a.to_string(), b.to_string()));
    go(fa, fb, &env2)
}

fn go(a: &Formula, b: &Formula, env: &Env) -> bool {
    use Formula as F;
    match (a, b) {
        (F::True, F::True) | (F::False, F::False) => true,
        (F::Eq(x1, x2), F::Eq(y1, y2)) | (F::Le(x1, x2), F::Le(y1, y2)) => {
            term_eq(x1, y1, env) && term_eq(x2, y2, env)
        }
        (F::Pred(n1, xs), F::Pred(n2, ys)) => n1 == n2 && terms_eq(xs, ys, env),
        (F::St(x), F::St(y)) | (F::StdExt(x), F::StdExt(y)) => term_eq(x, y, env),
        (F::HigherEq(x1, x2, t1, m1), F::HigherEq(y1, y2, t2, m2)) => {
            t1 == t2 && m1 == m2 && term_eq(x1, y1, env) && term_eq(x2, y2, env)
        }
        (F::Not(x), F::Not(y)) => go(x, y, env),
        (F::And(x1, x2), F::And(y1, y2))
        | (F::Or(x1, x2), F::Or(y1, y2))
        | (F::Implies(x1, x2), F::Implies(y1, y2)) => go(x1, y1, env) && go(x2, y2, env),
        (F::Quant(q1, v1, x), F::Quant(q2, v2, y)) => {
            q1 == q2 && v1.ty == v2.ty && under(&v1.name, &v2.name, env, x, y)
        }
        (F::Bounded(k1, n1, t1, x), F::Bounded(k2, n2, t2, y)) => {
            k1 == k2 && term_eq(t1, t2, env) && under(n1, n2, env, x, y)
        }
        (F::Member(k1, v1, t1, x), F::Member(k2, v2, t2, y)) => {
            k1 == k2 && v1.ty == v2.ty && term_eq(t1, t2, env) && under(&v1.name, &v2.name, env, x, y)
        }
        _ => false,
    }
}

pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    go(a, b, &Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, Signature};

    fn p(s: &str) -> Formula {
        let mut sig = Signature::new();
        sig.declare_rel("P", vec![super::super::FinType::Base; 2]);
        parse_formula(s, &sig).unwrap()
    }

    #[test]
    fn renaming_bound_variables() {
        assert!(alpha_eq(&p("!x:0. ?y:0. P(x,y)"), &p("!a:0. ?b:0. P(a,b)")));
        assert!(!alpha_eq(&p("!x:0. ?y:0. P(x,y)"), &p("!a:0. ?b:0. P(b,a)")));
        assert!(!alpha_eq(&p("!x:0. x = 0"), &p("!x:1. app(x,0) = 0")));
        assert!(alpha_eq(&p("!i <= 3. ?x:0. P(i,x)"), &p("!j <= 3. ?x:0. P(j,x)")));
    }

    #[test]
    fn shadowing() {
        assert!(alpha_eq(&p("!x:0. !x:0. x = 0"), &p("!y:0. !z:0. z = 0")));
        assert!(!alpha_eq(&p("!x:0. !x:0. x = 0"), &p("!y:0. !z:0. y = 0")));
    }
}
