//! Higher-type equality, st-relativization and the internal/external split.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::formula::{EqMode, Formula, Quant};
use super::print::print_formula;
use super::subst::fresh_name;
use super::term::{Term, Var};
use super::types::FinType;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Internality {
    Internal,
    External,
}

pub fn classify_internal(f: &Formula) -> Internality {
    if f.is_internal() {
        Internality::Internal
    } else {
        Internality::External
    }
}

/// Expands `lhs =_τ rhs` (or `≈_τ` for `Approx`) into quantifiers over the
/// arguments and equalities at type 0. Product domains are passed as tuples
/// of fresh variables; product codomains split into a conjunction.
pub fn expand_equality(lhs: &Term, rhs: &Term, ty: &FinType, mode: EqMode) -> Result<Formula> {
    let mut avoid: BTreeSet<String> = lhs.free_vars().into_iter().map(|v| v.name).collect();
    avoid.extend(rhs.free_vars().into_iter().map(|v| v.name));
    expand(lhs.clone(), rhs.clone(), ty, mode, &mut avoid)
}

fn expand(
    lhs: Term,
    rhs: Term,
    ty: &FinType,
    mode: EqMode,
    avoid: &mut BTreeSet<String>,
) -> Result<Formula> {
    match ty {
        FinType::Base => Ok(Formula::Eq(lhs, rhs)),
        FinType::Prod(..) => {
            let comps = ty.components();
            let n = comps.len();
            let parts = comps
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    expand(
                        Term::component(lhs.clone(), i, n),
                        Term::component(rhs.clone(), i, n),
                        c,
                        mode,
                        avoid,
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Formula::conj(parts))
        }
        FinType::Arrow(dom, cod) => {
            let vars: Vec<Var> = dom
                .components()
                .into_iter()
                .map(|c| {
                    let name = fresh_name("n", avoid);
                    avoid.insert(name.clone());
                    Var::new(name, c)
                })
                .collect();
            if vars.iter().any(|v| matches!(v.ty, FinType::Seq(_))) {
                return Err(Error::NotGroundReturning(ty.clone()));
            }
            let arg = Term::tuple(vars.iter().map(Var::term).collect()).expect("nonempty");
            let body = expand(
                Term::app(lhs, arg.clone()),
                Term::app(rhs, arg),
                cod,
                mode,
                avoid,
            )?;
            let q = if mode == EqMode::Exact {
                Quant::Forall
            } else {
                Quant::ForallSt
            };
            Ok(Formula::quants(q, &vars, body))
        }
        FinType::Seq(_) => Err(Error::NotGroundReturning(ty.clone())),
    }
}

/// Appends `st` to every unbounded quantifier; bounded number quantifiers
/// and sequence-membership quantifiers are left alone.
pub fn relativize_st(f: &Formula) -> Result<Formula> {
    if !f.is_internal() {
        return Err(Error::NotInternal(print_formula(f)));
    }
    Ok(relativize(f))
}

fn relativize(f: &Formula) -> Formula {
    let r = |x: &Formula| Box::new(relativize(x));
    match f {
        Formula::Quant(q, v, b) => Formula::Quant(q.relativized(), v.clone(), r(b)),
        Formula::Bounded(k, n, t, b) => Formula::Bounded(*k, n.clone(), t.clone(), r(b)),
        Formula::Member(k, v, t, b) => Formula::Member(*k, v.clone(), t.clone(), r(b)),
        Formula::Not(a) => Formula::Not(r(a)),
        Formula::And(a, b) => Formula::And(r(a), r(b)),
        Formula::Or(a, b) => Formula::Or(r(a), r(b)),
        Formula::Implies(a, b) => Formula::Implies(r(a), r(b)),
        _ => f.clone(),
    }
}

/// Removes `st` from every quantifier (and turns `≈` abbreviations into `=`).
pub fn erase_st(f: &Formula) -> Formula {
    let r = |x: &Formula| Box::new(erase_st(x));
    match f {
        Formula::Quant(q, v, b) => Formula::Quant(q.internal(), v.clone(), r(b)),
        Formula::Bounded(k, n, t, b) => Formula::Bounded(*k, n.clone(), t.clone(), r(b)),
        Formula::Member(k, v, t, b) => Formula::Member(*k, v.clone(), t.clone(), r(b)),
        Formula::Not(a) => Formula::Not(r(a)),
        Formula::And(a, b) => Formula::And(r(a), r(b)),
        Formula::Or(a, b) => Formula::Or(r(a), r(b)),
        Formula::Implies(a, b) => Formula::Implies(r(a), r(b)),
        Formula::HigherEq(a, b, t, _) => Formula::HigherEq(a.clone(), b.clone(), t.clone(), EqMode::Exact),
        _ => f.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, print_formula, Signature};

    #[test]
    fn approx_at_type_one() {
        let x = Term::var("x", FinType::pure(1));
        let y = Term::var("y", FinType::pure(1));
        let f = expand_equality(&x, &y, &FinType::pure(1), EqMode::Approx).unwrap();
        assert_eq!(print_formula(&f), "!st n:0. app(x,n) = app(y,n)");
    }

    #[test]
    fn base_case_is_bare_atom() {
        let x = Term::var("x", FinType::Base);
        let y = Term::var("y", FinType::Base);
        for mode in [EqMode::Exact, EqMode::Approx] {
            assert_eq!(
                expand_equality(&x, &y, &FinType::Base, mode).unwrap(),
                Formula::Eq(x.clone(), y.clone())
            );
        }
    }

    #[test]
    fn product_codomain_splits() {
        let one = FinType::pure(1);
        let pair = FinType::prod(one.clone(), one.clone());
        let phi = Term::var("Phi", FinType::arrow(pair.clone(), pair.clone()));
        let f = Term::var("f", one.clone());
        let g = Term::var("g", one.clone());
        let u = Term::var("u", one.clone());
        let v = Term::var("v", one);
        let lhs = Term::app(phi.clone(), Term::pair(f, g));
        let rhs = Term::app(phi, Term::pair(u, v));
        let out = expand_equality(&lhs, &rhs, &pair, EqMode::Approx).unwrap();
        assert_eq!(
            print_formula(&out),
            "(!st n:0. app(fst(app(Phi,<f,g>)),n) = app(fst(app(Phi,<u,v>)),n)) \
             & !st n':0. app(snd(app(Phi,<f,g>)),n') = app(snd(app(Phi,<u,v>)),n')"
        );
    }

    #[test]
    fn sequences_rejected() {
        let s = Term::var("s", FinType::seq(FinType::Base));
        assert!(expand_equality(&s, &s, &FinType::seq(FinType::Base), EqMode::Exact).is_err());
    }

    #[test]
    fn relativization_keeps_bounded_quantifiers() {
        let mut sig = Signature::new();
        sig.declare_rel("P", vec![FinType::pure(1); 2]);
        sig.declare_var("f", FinType::pure(1));
        sig.declare_var("m", FinType::Base);
        let f = parse_formula("!x:1. ?y:1. P(x,y)", &sig).unwrap();
        assert_eq!(
            print_formula(&relativize_st(&f).unwrap()),
            "!st x:1. ?st y:1. P(x,y)"
        );
        let g = parse_formula("?i <= m. app(f,i) = 0", &sig).unwrap();
        assert_eq!(relativize_st(&g).unwrap(), g);
        let h = parse_formula("!st x:0. x = x", &sig).unwrap();
        assert!(relativize_st(&h).is_err());
        assert_eq!(classify_internal(&relativize_st(&f).unwrap()), Internality::External);
    }
}
