//! Standard extensionality of a functional, written out as a statement
//! ready for normalization: for all standard inputs and standard precision
//! there is a standard agreement length `N` such that inputs agreeing up to
//! `N` have images agreeing up to the precision.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::syntax::{fresh_name, Bound, FinType, Formula, Quant, Term, Var};

/// Agreement of two type-0 or type-1 objects; type-1 objects agree on all
/// arguments `<= bound`.
fn agree(a: &Term, b: &Term, ty: &FinType, bound: &Term, var: &str) -> Result<Formula> {
    match ty.as_pure() {
        Some(0) => Ok(Formula::Eq(a.clone(), b.clone())),
        Some(1) => {
            let j = Term::var(var, FinType::Base);
            Ok(Formula::bounded(
                Bound::Forall,
                var,
                bound.clone(),
                Formula::Eq(Term::app(a.clone(), j.clone()), Term::app(b.clone(), j)),
            ))
        }
        _ => Err(Error::type_err(
            ty,
            "extensionality inputs must have type 0 or 1",
        )),
    }
}

fn input_names(n: usize) -> (Vec<String>, Vec<String>) {
    match n {
        1 => (vec!["f".into()], vec!["g".into()]),
        2 => (vec!["f".into(), "g".into()], vec!["u".into(), "v".into()]),
        _ => (
            (1..=n).map(|i| format!("a{}", i)).collect(),
            (1..=n).map(|i| format!("b{}", i)).collect(),
        ),
    }
}

/// Standard extensionality of the variable `name : dom -> cod`.
pub fn expand_standard_extensionality(name: &str, dom: &FinType, cod: &FinType) -> Result<Formula> {
    let phi = Term::var(name, FinType::arrow(dom.clone(), cod.clone()));
    expand_standard_extensionality_term(&phi, dom, cod)
}

pub fn expand_standard_extensionality_term(
    phi: &Term,
    dom: &FinType,
    cod: &FinType,
) -> Result<Formula> {
    if *cod == FinType::Base {
        return Ok(Formula::True);
    }
    let mut avoid: BTreeSet<String> = phi.free_vars().into_iter().map(|v| v.name).collect();
    let fresh = |base: &str, avoid: &mut BTreeSet<String>| {
        let n = fresh_name(base, avoid);
        avoid.insert(n.clone());
        n
    };
    let dom_types = dom.components();
    let (left, right) = input_names(dom_types.len());
    let lvars: Vec<Var> = left
        .iter()
        .zip(&dom_types)
        .map(|(n, t)| Var::new(fresh(n, &mut avoid), t.clone()))
        .collect();
    let rvars: Vec<Var> = right
        .iter()
        .zip(&dom_types)
        .map(|(n, t)| Var::new(fresh(n, &mut avoid), t.clone()))
        .collect();
    let n_var = Var::new(fresh("N", &mut avoid), FinType::Base);
    let k_var = Var::new(fresh("k", &mut avoid), FinType::Base);
    let j = fresh("j", &mut avoid);

    let inputs = lvars
        .iter()
        .zip(&rvars)
        .map(|(a, b)| agree(&a.term(), &b.term(), &a.ty, &n_var.term(), &j))
        .collect::<Result<Vec<_>>>()?;
    let lhs = Term::app(phi.clone(), Term::tuple(lvars.iter().map(Var::term).collect()).unwrap());
    let rhs = Term::app(phi.clone(), Term::tuple(rvars.iter().map(Var::term).collect()).unwrap());

    let mut universals: Vec<Var> = lvars.iter().chain(&rvars).cloned().collect();
    let mut uses_k = false;
    let mut guard = None;
    let one = FinType::pure(1);
    let outputs = if *cod == FinType::prod(one.clone(), one.clone()) {
        // identical type-1 components: a single st index i <= 1 selects one
        let i_var = Var::new(fresh("i", &mut avoid), FinType::Base);
        let out = agree(
            &Term::sym("sel", vec![lhs, i_var.term()]),
            &Term::sym("sel", vec![rhs, i_var.term()]),
            &one,
            &k_var.term(),
            &j,
        )?;
        guard = Some(Formula::Le(i_var.term(), Term::num(1)));
        universals.push(k_var.clone());
        universals.push(i_var);
        out
    } else {
        let comps = cod.components();
        let count = comps.len();
        let mut precision = Vec::new();
        let mut parts = Vec::new();
        for (ci, c) in comps.iter().enumerate() {
            let l = Term::component(lhs.clone(), ci, count);
            let r = Term::component(rhs.clone(), ci, count);
            match c.as_pure() {
                Some(0) => parts.push(Formula::Eq(l, r)),
                Some(1) => {
                    uses_k = true;
                    parts.push(agree(&l, &r, c, &k_var.term(), &j)?);
                }
                _ => {
                    let (args, ret) = c.uncurry();
                    if ret != FinType::Base || matches!(c, FinType::Seq(_) | FinType::Prod(..)) {
                        return Err(Error::NotGroundReturning(c.clone()));
                    }
                    if let FinType::Arrow(d, _) = c {
                        if d.components().len() != 1 {
                            return Err(Error::NotGroundReturning(c.clone()));
                        }
                    }
                    let ps: Vec<Var> = args
                        .iter()
                        .map(|t| Var::new(fresh("w", &mut avoid), t.clone()))
                        .collect();
                    parts.push(Formula::Eq(
                        Term::apps(l, ps.iter().map(Var::term)),
                        Term::apps(r, ps.iter().map(Var::term)),
                    ));
                    precision.extend(ps);
                }
            }
        }
        if uses_k {
            universals.push(k_var.clone());
        }
        universals.extend(precision);
        Formula::conj(parts)
    };
    let mut matrix = Formula::implies(Formula::conj(inputs), outputs);
    if let Some(g) = guard {
        matrix = Formula::implies(g, matrix);
    }
    let body = Formula::quant(Quant::ExistsSt, n_var, matrix);
    Ok(Formula::quants(Quant::ForallSt, &universals, body))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::print_formula;

    #[test]
    fn pair_to_pair_functional() {
        let one = FinType::pure(1);
        let pair = FinType::prod(one.clone(), one);
        let f = expand_standard_extensionality("Phi", &pair, &pair).unwrap();
        assert_eq!(
            print_formula(&f),
            "!st f:1. !st g:1. !st u:1. !st v:1. !st k:0. !st i:0. ?st N:0. i <= 1 -> \
             (!j <= N. app(f,j) = app(u,j)) & (!j <= N. app(g,j) = app(v,j)) -> \
             !j <= k. app(sel(app(Phi,<f,g>),i),j) = app(sel(app(Phi,<u,v>),i),j)"
        );
    }

    #[test]
    fn type_one_to_type_one() {
        let one = FinType::pure(1);
        let f = expand_standard_extensionality("Psi", &one, &one).unwrap();
        assert_eq!(
            print_formula(&f),
            "!st f:1. !st g:1. !st k:0. ?st N:0. (!j <= N. app(f,j) = app(g,j)) -> \
             !j <= k. app(Psi,f,j) = app(Psi,g,j)"
        );
    }

    #[test]
    fn ground_codomain_is_trivial() {
        let f = expand_standard_extensionality("h", &FinType::Base, &FinType::Base).unwrap();
        assert_eq!(f, Formula::True);
    }

    #[test]
    fn mixed_codomain_uses_precision_arguments() {
        let one = FinType::pure(1);
        let cod = FinType::prod(one.clone(), FinType::pure(2));
        let f = expand_standard_extensionality("Phi", &one, &cod).unwrap();
        assert_eq!(
            print_formula(&f),
            "!st f:1. !st g:1. !st k:0. !st w:1. ?st N:0. (!j <= N. app(f,j) = app(g,j)) -> \
             (!j <= k. app(fst(app(Phi,f)),j) = app(fst(app(Phi,g)),j)) \
             & app(snd(app(Phi,f)),w) = app(snd(app(Phi,g)),w)"
        );
    }

    #[test]
    fn sequence_codomain_rejected() {
        let one = FinType::pure(1);
        assert!(expand_standard_extensionality("Phi", &one, &FinType::seq(one.clone())).is_err());
    }
}
