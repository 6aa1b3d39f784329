//! Herbrandisation of `UT+ -> T` (with `T` a transfer-style consequent) and
//! its meta-reversal.
//!
//! The premise families range over components of one symbol
//! `i(Phi,Xi,x)`: component 0 holds the coded arguments of the functional's
//! standard extensionality, every further component the inputs of one type
//! of the uniform clause. The conclusion's witness is bounded by `o(Phi,Xi,x)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::normalform::{rewrite, FreshSupply, Logic, NormalForm, RuleName};
use crate::syntax::{
    alpha_eq, fresh_name, subst, Bound, FinType, Formula, Quant, Signature, Term, Var,
};

pub const I_SYMBOL: &str = "i";
pub const O_SYMBOL: &str = "o";

#[derive(Clone, Debug, PartialEq)]
pub struct Herbrandisation {
    /// The uniform functional `Phi`.
    pub functional: Var,
    /// The Skolem functional of `Phi`'s extensionality, if it has one.
    pub skolem: Option<Var>,
    /// `Phi`, the Skolem functional, then the consequent's universals.
    pub universals: Vec<Var>,
    pub i_term: Term,
    pub o_term: Term,
    /// Number of components of `i(...)`.
    pub i_components: usize,
    /// Declares `i` and `o`.
    pub signature: Signature,
    /// The consequent had no existential; `o` does not occur in the body.
    pub vacuous: bool,
    pub body: Formula,
}

fn shape(msg: impl Into<String>) -> Error {
    Error::Shape(msg.into())
}

/// `?st Phi. ((!st X. A) & stdext(Phi))`, split into its parts.
fn split_plus(ut: &Formula) -> Result<(Var, Vec<Var>, Formula)> {
    let Formula::Quant(Quant::ExistsSt, phi, inner) = ut else {
        return Err(shape("antecedent must start with a standard functional"));
    };
    let Formula::And(a, ext) = &**inner else {
        return Err(shape("antecedent must be a uniform clause and an extensionality clause"));
    };
    match &**ext {
        Formula::StdExt(Term::Var(v)) if v.name == phi.name => {}
        _ => return Err(shape("second clause must be the functional's extensionality")),
    }
    let (xs, body) = a.strip_quants(Quant::ForallSt);
    if xs.is_empty() || !body.is_internal() {
        return Err(shape("uniform clause must be !st X. A with A internal"));
    }
    Ok((phi.clone(), xs, body.clone()))
}

/// The extensionality clause of `ut` as `?st Xi. !st Z. B`, following the
/// same expansion, coding and Skolem steps as the normaliser.
fn extensionality_family(ut: &Formula, fresh: &mut FreshSupply) -> Result<Option<(Var, Var, Formula)>> {
    let Formula::Quant(_, _, inner) = ut else { unreachable!("checked by split_plus") };
    let Formula::And(_, ext) = &**inner else { unreachable!("checked by split_plus") };
    let mut root = Formula::implies((**ext).clone(), Formula::False);
    root = rewrite(RuleName::ExpandStdExt, &root, &[0], Logic::Classical, fresh)?.formula;
    let Formula::Implies(e, _) = &root else { unreachable!() };
    if **e == Formula::True {
        return Ok(None);
    }
    if let Ok(rw) = rewrite(RuleName::CodeTuple, &root, &[0], Logic::Classical, fresh) {
        root = rw.formula;
    }
    root = rewrite(RuleName::SkolemAntecedent, &root, &[0], Logic::Classical, fresh)?.formula;
    let Formula::Implies(e, _) = root else { unreachable!() };
    match *e {
        Formula::Quant(Quant::ExistsSt, xi, b) => match *b {
            Formula::Quant(Quant::ForallSt, z, body) if body.is_internal() => Ok(Some((xi, z, *body))),
            _ => Err(shape("extensionality does not code into a single standard universal")),
        },
        _ => Err(shape("extensionality did not Skolemise")),
    }
}

/// The Skolemised extensionality clause `?st Xi. !st Z. B` of a plus
/// version, as `(Xi, Z, B)`; `None` if the functional is type-0 valued.
pub fn extensionality_clause(ut: &Formula) -> Result<Option<(Var, Var, Formula)>> {
    split_plus(ut)?;
    extensionality_family(ut, &mut FreshSupply::for_formula(ut))
}

/// Groups inputs by type, in order of first appearance.
fn input_groups(xs: &[Var]) -> Vec<FinType> {
    let mut tys: Vec<FinType> = Vec::new();
    for x in xs {
        if !tys.contains(&x.ty) {
            tys.push(x.ty.clone());
        }
    }
    tys
}

pub fn herbrandise(antecedent: &Formula, consequent: &NormalForm) -> Result<Herbrandisation> {
    let (phi, xs, a_body) = split_plus(antecedent)?;
    let whole = Formula::implies(antecedent.clone(), consequent.to_formula());
    let mut fresh = FreshSupply::for_formula(&whole);
    let ext = extensionality_family(antecedent, &mut fresh)?;

    if consequent.st_existentials.len() > 1 {
        return Err(shape("consequent must have at most one standard existential"));
    }
    let witness = consequent.st_existentials.first();
    if let Some(m) = witness {
        if m.ty != FinType::Base {
            return Err(shape(format!("consequent witness `{}` is not of type 0", m.name)));
        }
    }
    let mut universals = vec![phi.clone()];
    if let Some((xi, _, _)) = &ext {
        universals.push(xi.clone());
    }
    for u in &consequent.st_universals {
        if universals.iter().any(|v| v.name == u.name) {
            return Err(shape(format!("consequent universal `{}` clashes", u.name)));
        }
        universals.push(u.clone());
    }

    let groups = input_groups(&xs);
    let count = groups.len() + 1;
    let args: Vec<FinType> = universals.iter().map(|v| v.ty.clone()).collect();
    let z_ty = ext.as_ref().map(|(_, z, _)| z.ty.clone()).unwrap_or(FinType::pure(1));
    let i_ty = FinType::tuple(
        std::iter::once(FinType::seq(z_ty))
            .chain(groups.iter().map(|t| FinType::seq(t.clone())))
            .collect(),
    )
    .expect("non-empty");
    let mut signature = Signature::new();
    signature.declare_fun(I_SYMBOL, args.clone(), i_ty);
    signature.declare_fun(O_SYMBOL, args, FinType::Base);
    let arg_terms: Vec<Term> = universals.iter().map(Var::term).collect();
    let i_term = Term::sym(I_SYMBOL, arg_terms.clone());
    let o_term = Term::sym(O_SYMBOL, arg_terms);

    // inputs are renamed away from everything in scope so that no selector
    // term is captured by an inner binder
    let mut avoid: BTreeSet<String> = consequent.to_formula().all_names();
    avoid.extend(universals.iter().map(|v| v.name.clone()));
    if let Some((_, z, _)) = &ext {
        avoid.insert(z.name.clone());
    }
    let mut a = a_body;
    let mut inputs = Vec::new();
    for x in &xs {
        let name = fresh_name(&x.name, &avoid);
        avoid.insert(name.clone());
        let v = Var::new(name, x.ty.clone());
        a = subst(&a, &x.name, &v.term());
        inputs.push(v);
    }
    let a_family = inputs.iter().rev().fold(a, |acc, v| {
        let idx = 1 + groups.iter().position(|t| *t == v.ty).expect("grouped");
        Formula::member(Bound::Forall, v.clone(), Term::component(i_term.clone(), idx, count), acc)
    });
    let premise = match &ext {
        Some((_, z, b)) => Formula::and(
            Formula::member(Bound::Forall, z.clone(), Term::component(i_term.clone(), 0, count), b.clone()),
            a_family,
        ),
        None => a_family,
    };
    let conclusion = match witness {
        Some(m) => subst(&consequent.matrix, &m.name, &o_term),
        None => consequent.matrix.clone(),
    };
    let body = Formula::quants(Quant::Forall, &universals, Formula::implies(premise, conclusion));
    debug_assert!(body.is_internal());
    Ok(Herbrandisation {
        functional: phi,
        skolem: ext.map(|(xi, _, _)| xi),
        universals,
        i_term,
        o_term,
        i_components: count,
        signature,
        vacuous: witness.is_none(),
        body,
    })
}

/// `?i <= o. phi` becomes `?st i. phi`; any other use of `o` is an error.
fn reabstract(f: &Formula, o: &Term) -> Result<Formula> {
    Ok(match f {
        Formula::Bounded(Bound::Exists, name, bound, body) if bound == o => {
            Formula::quant(Quant::ExistsSt, Var::new(name.clone(), FinType::Base), reabstract(body, o)?)
        }
        Formula::Not(a) => Formula::not(reabstract(a, o)?),
        Formula::And(a, b) => Formula::and(reabstract(a, o)?, reabstract(b, o)?),
        Formula::Or(a, b) => Formula::or(reabstract(a, o)?, reabstract(b, o)?),
        Formula::Implies(a, b) => Formula::implies(reabstract(a, o)?, reabstract(b, o)?),
        Formula::Quant(q, v, b) => Formula::quant(*q, v.clone(), reabstract(b, o)?),
        Formula::Bounded(k, n, t, b) if !t.mentions_term(o) => {
            Formula::bounded(*k, n, t.clone(), reabstract(b, o)?)
        }
        Formula::Member(k, v, t, b) if !t.mentions_term(o) => {
            Formula::member(*k, v.clone(), t.clone(), reabstract(b, o)?)
        }
        other => {
            if other.own_terms().iter().any(|t| t.mentions_term(o)) {
                return Err(shape("the conclusion bound is used outside a bounded search"));
            }
            other.clone()
        }
    })
}

fn selector_index(t: &Term, i: &Term, count: usize) -> Option<usize> {
    (0..count).find(|&k| Term::component(i.clone(), k, count) == *t)
}

/// Rebuilds `UT+ -> T` from a Herbrandisation: the functional and the
/// consequent's universals become standard again, the premises become the
/// uniform clause plus extensionality, and the bounded search over `o`
/// becomes a standard existential.
pub fn meta_reverse(h: &Herbrandisation) -> Result<Formula> {
    let mut rest = &h.body;
    for u in &h.universals {
        match rest {
            Formula::Quant(Quant::Forall, v, b) if v == u => rest = b,
            _ => return Err(shape("body does not quantify over the recorded universals")),
        }
    }
    let Formula::Implies(premise, conclusion) = rest else {
        return Err(shape("body is not an implication"));
    };
    let (b_family, a_family) = match (&h.skolem, &**premise) {
        (Some(_), Formula::And(b, a)) => (Some(&**b), &**a),
        (None, a) => (None, a),
        _ => return Err(shape("premise does not have two families")),
    };

    let mut inputs = Vec::new();
    let mut a = a_family;
    while let Formula::Member(Bound::Forall, v, seq, b) = a {
        match selector_index(seq, &h.i_term, h.i_components) {
            Some(k) if k >= 1 => inputs.push(v.clone()),
            _ => return Err(shape("malformed component selector in the uniform family")),
        }
        a = b;
    }
    if inputs.is_empty() {
        return Err(shape("uniform family binds no inputs"));
    }
    let antecedent = Formula::quant(
        Quant::ExistsSt,
        h.functional.clone(),
        Formula::and(
            Formula::quants(Quant::ForallSt, &inputs, a.clone()),
            Formula::StdExt(h.functional.term()),
        ),
    );

    // the extensionality family must be the one the functional determines
    let mut fresh = FreshSupply::for_formula(&h.body);
    let expected = extensionality_family(&antecedent, &mut fresh)?;
    match (b_family, expected) {
        (None, None) => {}
        (Some(Formula::Member(Bound::Forall, z, seq, b)), Some((xi, z2, b2))) => {
            if selector_index(seq, &h.i_term, h.i_components) != Some(0) {
                return Err(shape("malformed component selector in the extensionality family"));
            }
            let skolem = h.skolem.as_ref().expect("matched above");
            let b2 = subst(&b2, &xi.name, &skolem.term());
            let lhs = Formula::quant(Quant::Forall, z.clone(), (**b).clone());
            let rhs = Formula::quant(Quant::Forall, z2, b2);
            if !alpha_eq(&lhs, &rhs) {
                return Err(shape("extensionality family does not match the functional"));
            }
        }
        _ => return Err(shape("extensionality family missing or unexpected")),
    }

    let conclusion = if h.vacuous {
        (**conclusion).clone()
    } else {
        reabstract(conclusion, &h.o_term)?
    };
    let skip = 1 + usize::from(h.skolem.is_some());
    let consequent = Formula::quants(Quant::ForallSt, &h.universals[skip..], conclusion);
    Ok(Formula::implies(antecedent, consequent))
}
