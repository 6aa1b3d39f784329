//! Capture-avoiding substitution.

use std::collections::BTreeSet;

use super::formula::Formula;
use super::print::print_term;
use super::signature::Signature;
use super::term::{Term, Var};
use super::typecheck::{typecheck, Context};
use crate::error::{Error, Result};

/// `base` itself if unused, otherwise `base` with enough primes appended.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut name = base.to_string();
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

/// `φ[var := t]`, checking that `t` has the declared type of `var`. Free
/// variables of `t` are typed by their annotations; symbols by `sig`.
pub fn substitute(phi: &Formula, var: &Var, t: &Term, sig: &Signature) -> Result<Formula> {
    let mut ctx = Context::new(sig);
    for v in t.free_vars() {
        ctx = ctx.with(&v.name, v.ty.clone());
    }
    let ty = typecheck(t, &ctx)?;
    if ty != var.ty {
        return Err(Error::type_err(
            print_term(t),
            format!("substituted for `{}` of type {}, but has type {}", var.name, var.ty, ty),
        ));
    }
    Ok(subst(phi, &var.name, t))
}

/// Unchecked capture-avoiding substitution of `t` for the variable `name`.
pub fn subst(phi: &Formula, name: &str, t: &Term) -> Formula {
    let tfree: BTreeSet<String> = t.free_vars().into_iter().map(|v| v.name).collect();
    go(phi, name, t, &tfree)
}

/// Simultaneous-looking sequence of substitutions, applied left to right.
pub fn subst_all(phi: &Formula, pairs: &[(String, Term)]) -> Formula {
    pairs.iter().fold(phi.clone(), |acc, (n, t)| subst(&acc, n, t))
}

/// Renames a binder if it would capture a free variable of the substituted
/// term; returns the (possibly new) binder and the adjusted body.
fn guard(
    binder: &Var,
    body: &Formula,
    name: &str,
    tfree: &BTreeSet<String>,
) -> (Var, Formula) {
    if !tfree.contains(&binder.name) || !body.is_free(name) {
        return (binder.clone(), body.clone());
    }
    let mut avoid = body.all_names();
    avoid.extend(tfree.iter().cloned());
    avoid.insert(name.to_string());
    let fresh = Var::new(fresh_name(&binder.name, &avoid), binder.ty.clone());
    let renamed = subst(body, &binder.name, &fresh.term());
    (fresh, renamed)
}

fn go(phi: &Formula, name: &str, t: &Term, tfree: &BTreeSet<String>) -> Formula {
    let rt = |x: &Term| x.replace_var(name, t);
    let rec = |x: &Formula| Box::new(go(x, name, t, tfree));
    match phi {
        Formula::Quant(q, v, body) => {
            if v.name == name {
                return phi.clone();
            }
            let (v2, body2) = guard(v, body, name, tfree);
            Formula::Quant(*q, v2, rec(&body2))
        }
        Formula::Member(k, v, seq, body) => {
            if v.name == name {
                return Formula::Member(*k, v.clone(), rt(seq), body.clone());
            }
            let (v2, body2) = guard(v, body, name, tfree);
            Formula::Member(*k, v2, rt(seq), rec(&body2))
        }
        Formula::Bounded(k, n, bound, body) => {
            if n == name {
                return Formula::Bounded(*k, n.clone(), rt(bound), body.clone());
            }
            let v = Var::new(n.clone(), super::types::FinType::Base);
            let (v2, body2) = guard(&v, body, name, tfree);
            Formula::Bounded(*k, v2.name, rt(bound), rec(&body2))
        }
        Formula::Not(a) => Formula::Not(rec(a)),
        Formula::And(a, b) => Formula::And(rec(a), rec(b)),
        Formula::Or(a, b) => Formula::Or(rec(a), rec(b)),
        Formula::Implies(a, b) => Formula::Implies(rec(a), rec(b)),
        _ => phi.map_terms(&mut |x| rt(x)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, print_formula, FinType};

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.declare_rel("P", vec![FinType::Base, FinType::Base]);
        s.declare_var("m", FinType::Base);
        s.declare_var("n", FinType::Base);
        s.declare_var("f", FinType::pure(1));
        s
    }

    #[test]
    fn replaces_free_occurrences() {
        let s = sig();
        let phi = parse_formula("?n:0. app(f,n) = 0", &s).unwrap();
        let g = Var::new("g", FinType::pure(1));
        let out = substitute(&phi, &Var::new("f", FinType::pure(1)), &g.term(), &s).unwrap();
        assert_eq!(print_formula(&out), "?n:0. app(g,n) = 0");
    }

    #[test]
    fn renames_capturing_binder() {
        let s = sig();
        let phi = parse_formula("!n:0. P(n,m)", &s).unwrap();
        let n = Var::new("n", FinType::Base);
        let out = substitute(&phi, &Var::new("m", FinType::Base), &n.term(), &s).unwrap();
        assert_eq!(print_formula(&out), "!n':0. P(n',n)");
    }

    #[test]
    fn rejects_ill_typed_replacement() {
        let s = sig();
        let phi = parse_formula("P(m,m)", &s).unwrap();
        let f = Var::new("f", FinType::pure(1));
        assert!(substitute(&phi, &Var::new("m", FinType::Base), &f.term(), &s).is_err());
    }
}
