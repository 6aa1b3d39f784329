//! Shapes of the explicit implications obtained from a uniform principle:
//! the two-term equivalence with the search operator, and the single-term
//! version obtained in the intuitionistic setting.
//!
//! The terms `s`, `u` and `t` are emitted as uninterpreted symbols; only the
//! direction from the uniform principle to the search operator is backed by
//! an actual extraction.

use super::principles::{Kind, Principle};
use crate::error::{Error, Result};
use crate::extraction::extensionality_clause;
use crate::syntax::{subst, FinType, Formula, Quant, Signature, Term, Var};

/// `(?n. f(n) = 0) -> f(x) = 0`.
pub fn search_point(f: &Term, x: Term) -> Formula {
    Formula::implies(
        Formula::quant(
            Quant::Exists,
            Var::new("n", FinType::Base),
            Formula::Eq(Term::app(f.clone(), Term::var("n", FinType::Base)), Term::Zero),
        ),
        Formula::Eq(Term::app(f.clone(), x), Term::Zero),
    )
}

/// `!f. (?n. f(n) = 0) -> f(mu(f)) = 0`.
pub fn search_operator(mu: &Term) -> Formula {
    let f = Var::new("f", FinType::pure(1));
    Formula::quant(
        Quant::Forall,
        f.clone(),
        search_point(&f.term(), Term::app(mu.clone(), f.term())),
    )
}

/// The uniform statement without its leading functional, with the
/// functional replaced by `t`.
fn instance(u: &Principle, t: &Term) -> Result<Formula> {
    let (Kind::Uniform, Some(phi)) = (u.kind, &u.functional) else {
        return Err(Error::Shape(format!("{} is not a uniform principle", u.name)));
    };
    match &u.statement {
        Formula::Quant(Quant::Exists, v, body) if v == phi => Ok(subst(body, &phi.name, t)),
        _ => Err(Error::Shape("expected a leading existential functional".into())),
    }
}

fn parts(u: &Principle, plus: &Principle) -> Result<(Var, Var)> {
    let phi = u
        .functional
        .clone()
        .ok_or_else(|| Error::Shape(format!("{} has no realising functional", u.name)))?;
    let xi = extensionality_clause(&plus.statement)?
        .map(|(xi, _, _)| xi)
        .ok_or_else(|| Error::Shape("the functional has no extensionality functional".into()))?;
    Ok((phi, xi))
}

/// `(!mu. MU(mu) -> UT(s(mu))) & (!Phi. !Xi. UT(Phi) -> MU(u(Phi,Xi)))`.
pub fn explicit_equivalence(u: &Principle, plus: &Principle) -> Result<(Signature, Formula)> {
    let mu = Var::new("mu", FinType::pure(2));
    let (phi, xi) = parts(u, plus)?;
    let mut sig = u.signature.clone();
    sig.declare_fun("s", vec![mu.ty.clone()], phi.ty.clone());
    sig.declare_fun("u", vec![phi.ty.clone(), xi.ty.clone()], FinType::pure(2));
    let forward = Formula::quant(
        Quant::Forall,
        mu.clone(),
        Formula::implies(
            search_operator(&mu.term()),
            instance(u, &Term::sym("s", vec![mu.term()]))?,
        ),
    );
    let backward = Formula::quants(
        Quant::Forall,
        &[phi.clone(), xi.clone()],
        Formula::implies(
            instance(u, &phi.term())?,
            search_operator(&Term::sym("u", vec![phi.term(), xi.term()])),
        ),
    );
    Ok((sig, Formula::and(forward, backward)))
}

/// `!Phi. !Xi. !f. UT(Phi) -> MUP(f, t(Phi,Xi,f))`.
pub fn explicit_search_term(u: &Principle, plus: &Principle) -> Result<(Signature, Formula)> {
    let (phi, xi) = parts(u, plus)?;
    let f = Var::new("f", FinType::pure(1));
    let mut sig = u.signature.clone();
    sig.declare_fun("t", vec![phi.ty.clone(), xi.ty.clone(), f.ty.clone()], FinType::Base);
    let t = Term::sym("t", vec![phi.term(), xi.term(), f.term()]);
    let body = Formula::implies(instance(u, &phi.term())?, search_point(&f.term(), t));
    Ok((sig, Formula::quants(Quant::Forall, &[phi, xi, f], body)))
}
