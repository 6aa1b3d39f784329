//! Witness terms for the existentials of a normal form, the internal
//! sentence they satisfy, and the max-collapse of monotone number witnesses.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::normalform::{monotone_in, NormalForm, RuleName, RuleTrace};
use crate::syntax::{
    alpha_eq, print_formula, print_term, subst, typecheck, Bound, Context, FinType, Formula,
    Quant, Signature, Term, Var,
};

/// Where an existential of the normal form came from.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    /// Present in the input formula and carried through the prenex steps.
    PassThrough,
    /// Introduced as a fresh Herbrand sequence or choice functional.
    Introduced { step: usize, rule: RuleName },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub var: Var,
    /// `t_y(x1,...,xn)`, a finite sequence of candidates for `y`.
    pub term: Term,
    pub recipe: Recipe,
    /// The existential does not occur in the matrix.
    pub vacuous: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtractionResult {
    pub universals: Vec<Var>,
    pub witnesses: Vec<Witness>,
    /// Declares the witness symbols `t_y`.
    pub signature: Signature,
    pub matrix: Formula,
    pub internal_sentence: Formula,
    pub collapsed: Option<Formula>,
}

pub fn witness_symbol(var: &Var) -> String {
    format!("t_{}", var.name.replace('\'', "_"))
}

fn strip_primes(name: &str) -> &str {
    name.trim_end_matches('\'')
}

fn recipe_for(v: &Var, trace: &RuleTrace) -> Result<Recipe> {
    if let Some((step, _)) = trace.introduced().find(|(_, f)| f.name == v.name) {
        return Ok(Recipe::Introduced {
            step: step.index,
            rule: step.rule,
        });
    }
    let initial = trace.initial.all_names();
    if initial.contains(&v.name) || initial.contains(strip_primes(&v.name)) {
        return Ok(Recipe::PassThrough);
    }
    Err(Error::Orphan(v.name.clone()))
}

/// `!x. ?y1 in t1(x). ... ?yk in tk(x). matrix`, with the standard universals
/// of `nf` demoted to plain universals.
pub fn extract(nf: &NormalForm, trace: &RuleTrace) -> Result<ExtractionResult> {
    let replayed = trace.replay()?;
    if !alpha_eq(&replayed, &nf.to_formula()) {
        return Err(Error::Trace(
            "trace does not replay to the given normal form".into(),
        ));
    }
    let mut signature = Signature::new();
    let arg_types: Vec<FinType> = nf.st_universals.iter().map(|x| x.ty.clone()).collect();
    let mut witnesses = Vec::new();
    for y in &nf.st_existentials {
        let recipe = recipe_for(y, trace)?;
        let sym = witness_symbol(y);
        signature.declare_fun(&sym, arg_types.clone(), FinType::seq(y.ty.clone()));
        witnesses.push(Witness {
            var: y.clone(),
            term: Term::sym(&sym, nf.st_universals.iter().map(Var::term).collect()),
            recipe,
            vacuous: !nf.matrix.is_free(&y.name),
        });
    }
    let mut ctx = Context::new(&signature);
    for x in &nf.st_universals {
        ctx = ctx.with(&x.name, x.ty.clone());
    }
    for w in &witnesses {
        let ty = typecheck(&w.term, &ctx)?;
        if ty != FinType::seq(w.var.ty.clone()) {
            return Err(Error::type_err(print_term(&w.term), "witness has the wrong type"));
        }
    }
    let body = witnesses.iter().rev().fold(nf.matrix.clone(), |acc, w| {
        Formula::member(Bound::Exists, w.var.clone(), w.term.clone(), acc)
    });
    let internal_sentence = Formula::quants(Quant::Forall, &nf.st_universals, body);
    debug_assert!(internal_sentence.is_internal());
    Ok(ExtractionResult {
        universals: nf.st_universals.clone(),
        witnesses,
        signature,
        matrix: nf.matrix.clone(),
        internal_sentence,
        collapsed: None,
    })
}

/// Replaces `?m in t(x). phi` by `phi[m := max0(t(x))]` for every named
/// type-0 witness `m` in which the matrix is upward monotone.
pub fn collapse_monotone(result: &ExtractionResult, names: &[&str]) -> Result<Formula> {
    for name in names {
        let w = result
            .witnesses
            .iter()
            .find(|w| w.var.name == *name)
            .ok_or_else(|| Error::Monotonicity(format!("`{}` is not an extracted existential", name)))?;
        if w.var.ty != FinType::Base {
            return Err(Error::Monotonicity(format!(
                "`{}` has type {}, not 0",
                name, w.var.ty
            )));
        }
        if !monotone_in(&result.matrix, name) {
            return Err(Error::Monotonicity(format!(
                "`{}` is not used monotonically in {}",
                name,
                print_formula(&result.matrix)
            )));
        }
    }
    let mut body = result.matrix.clone();
    for w in result.witnesses.iter().rev() {
        if names.contains(&w.var.name.as_str()) {
            body = subst(&body, &w.var.name, &simplify_max0(&Term::max0(w.term.clone())));
        } else {
            body = Formula::member(Bound::Exists, w.var.clone(), w.term.clone(), body);
        }
    }
    Ok(Formula::quants(Quant::Forall, &result.universals, body))
}

/// Collapses every type-0 witness that passes the monotonicity check.
pub fn collapse_all(result: &mut ExtractionResult) -> Result<Option<Formula>> {
    let names: Vec<String> = result
        .witnesses
        .iter()
        .filter(|w| w.var.ty == FinType::Base && monotone_in(&result.matrix, &w.var.name))
        .map(|w| w.var.name.clone())
        .collect();
    if names.is_empty() {
        return Ok(None);
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let collapsed = collapse_monotone(result, &refs)?;
    result.collapsed = Some(collapsed.clone());
    Ok(Some(collapsed))
}

/// `max0` of a literal sequence: the empty sequence gives 0 and a singleton
/// gives its entry.
pub fn simplify_max0(t: &Term) -> Term {
    match t {
        Term::Max0(inner) => match &**inner {
            Term::SeqLit(_, items) if items.is_empty() => Term::Zero,
            Term::SeqLit(_, items) if items.len() == 1 => items[0].clone(),
            _ => t.clone(),
        },
        _ => t.clone(),
    }
}
