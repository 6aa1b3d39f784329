//! The rewrite rules. Each rule is applied at a position (a path into the
//! formula) and either rewrites the node there or reports why it does not
//! apply.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::fresh::FreshSupply;
use super::stdext::expand_standard_extensionality_term;
use crate::error::{Error, Result};

use crate::syntax::{
    expand_equality, format_path, fresh_name, polarity, print_formula, subst, subst_all, Bound, EqMode, FinType,
    Formula, Quant, Term, Var,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleName {
    PrenexAndSt,
    PrenexOrSt,
    PrenexImpliesSt,
    DoubleNegSt,
    Idealisation,
    HACint,
    HGMPst,
    HIPforallst,
    ExpandApprox,
    ExpandExactEq,
    ExpandStdExt,
    DropStAntecedent,
    MarkovSt,
    BoundedSearchSt,
    CodeTuple,
    SkolemAntecedent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Logic {
    Classical,
    Intuitionistic,
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Logic::Classical => "classical",
            Logic::Intuitionistic => "intuitionistic",
        })
    }
}

impl FromStr for Logic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Logic> {
        match s {
            "classical" => Ok(Logic::Classical),
            "intuitionistic" => Ok(Logic::Intuitionistic),
            _ => Err(Error::Shape(format!("unknown logic `{}`", s))),
        }
    }
}

/// How the rewritten formula relates to the original.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// Provably equivalent (definitional unfolding included).
    Equivalence,
    /// Instance of an axiom: the original implies the result.
    Axiom,
    /// Strengthens a premise; used only in negative positions.
    Strengthening,
}

impl RuleName {
    pub const ALL: [RuleName; 16] = [
        RuleName::PrenexAndSt,
        RuleName::PrenexOrSt,
        RuleName::PrenexImpliesSt,
        RuleName::DoubleNegSt,
        RuleName::Idealisation,
        RuleName::HACint,
        RuleName::HGMPst,
        RuleName::HIPforallst,
        RuleName::ExpandApprox,
        RuleName::ExpandExactEq,
        RuleName::ExpandStdExt,
        RuleName::DropStAntecedent,
        RuleName::MarkovSt,
        RuleName::BoundedSearchSt,
        RuleName::CodeTuple,
        RuleName::SkolemAntecedent,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleName::PrenexAndSt => "PrenexAndSt",
            RuleName::PrenexOrSt => "PrenexOrSt",
            RuleName::PrenexImpliesSt => "PrenexImpliesSt",
            RuleName::DoubleNegSt => "DoubleNegSt",
            RuleName::Idealisation => "Idealisation",
            RuleName::HACint => "HACint",
            RuleName::HGMPst => "HGMPst",
            RuleName::HIPforallst => "HIPforallst",
            RuleName::ExpandApprox => "ExpandApprox",
            RuleName::ExpandExactEq => "ExpandExactEq",
            RuleName::ExpandStdExt => "ExpandStdExt",
            RuleName::DropStAntecedent => "DropStAntecedent",
            RuleName::MarkovSt => "MarkovSt",
            RuleName::BoundedSearchSt => "BoundedSearchSt",
            RuleName::CodeTuple => "CodeTuple",
            RuleName::SkolemAntecedent => "SkolemAntecedent",
        }
    }

    /// Rules valid only under classical logic.
    pub fn classical_only(self) -> bool {
        matches!(
            self,
            RuleName::DoubleNegSt | RuleName::MarkovSt | RuleName::DropStAntecedent
        )
    }

    pub fn direction(self) -> Direction {
        match self {
            RuleName::Idealisation | RuleName::HACint | RuleName::HGMPst | RuleName::HIPforallst => {
                Direction::Axiom
            }
            RuleName::DropStAntecedent | RuleName::CodeTuple | RuleName::SkolemAntecedent => {
                Direction::Strengthening
            }
            _ => Direction::Equivalence,
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleName {
    type Err = Error;
    fn from_str(s: &str) -> Result<RuleName> {
        RuleName::ALL
            .iter()
            .copied()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Shape(format!("unknown rule `{}`", s)))
    }
}

/// Result of one rule application.
#[derive(Clone, Debug, PartialEq)]
pub struct Rewrite {
    pub formula: Formula,
    /// Fresh variables introduced by the step, in order.
    pub fresh: Vec<Var>,
}

struct Site<'a> {
    rule: RuleName,
    path: &'a [usize],
    node: &'a Formula,
    parent: Option<&'a Formula>,
    positive: bool,
    logic: Logic,
}

impl Site<'_> {
    fn no<T>(&self, reason: impl Into<String>) -> Result<T> {
        Err(Error::Inapplicable {
            rule: self.rule.to_string(),
            path: format_path(self.path),
            reason: reason.into(),
        })
    }

    /// Node heads a maximal block of `q` quantifiers.
    fn block_head(&self, q: Quant) -> bool {
        matches!(self.node, Formula::Quant(q2, _, _) if *q2 == q)
            && !matches!(self.parent, Some(Formula::Quant(q2, _, _)) if *q2 == q)
    }
}

pub fn replace_at(root: &Formula, path: &[usize], new: Formula) -> Formula {
    let mut out = root.clone();
    if let Some(slot) = out.at_mut(path) {
        *slot = new;
    }
    out
}

/// Applies `rule` at `path` with a fresh-name supply derived from `phi`.
/// Classical logic is assumed, so every rule is available.
pub fn apply_rule(rule: RuleName, phi: &Formula, path: &[usize]) -> Result<Formula> {
    let mut fresh = FreshSupply::for_formula(phi);
    rewrite(rule, phi, path, Logic::Classical, &mut fresh).map(|r| r.formula)
}

pub fn rewrite(
    rule: RuleName,
    root: &Formula,
    path: &[usize],
    logic: Logic,
    fresh: &mut FreshSupply,
) -> Result<Rewrite> {
    let node = root.at(path).ok_or_else(|| Error::Inapplicable {
        rule: rule.to_string(),
        path: format_path(path),
        reason: "no such position".into(),
    })?;
    let site = Site {
        rule,
        path,
        node,
        parent: path.split_last().and_then(|(_, p)| root.at(p)),
        positive: polarity(root, path),
        logic,
    };
    if rule.classical_only() && logic == Logic::Intuitionistic {
        return site.no("rule is classical-only");
    }
    let (new, vars) = match rule {
        RuleName::PrenexAndSt | RuleName::PrenexOrSt => (prenex_junction(&site)?, vec![]),
        RuleName::PrenexImpliesSt => (prenex_implies(&site)?, vec![]),
        RuleName::DoubleNegSt => (double_neg(&site)?, vec![]),
        RuleName::MarkovSt => (markov(&site)?, vec![]),
        RuleName::Idealisation => (idealisation(&site)?, vec![]),
        RuleName::HACint => hac_int(&site, fresh)?,
        RuleName::HGMPst => hgmp(&site, fresh)?,
        RuleName::HIPforallst => hip(&site, fresh)?,
        RuleName::ExpandApprox | RuleName::ExpandExactEq => (expand_eq(&site)?, vec![]),
        RuleName::ExpandStdExt => (expand_stdext(&site)?, vec![]),
        RuleName::DropStAntecedent => (drop_st(&site)?, vec![]),
        RuleName::BoundedSearchSt => (bounded_search(&site)?, vec![]),
        RuleName::CodeTuple => code_tuple(&site, fresh)?,
        RuleName::SkolemAntecedent => skolem(&site, fresh)?,
    };
    let formula = replace_at(root, path, new);
    fresh.reserve(formula.all_names());
    Ok(Rewrite {
        formula,
        fresh: vars,
    })
}

/// Moves the quantifier `q v` over `other`, renaming `v` if it would
/// capture a free variable of `other` or clash with its leading st-binders.
fn pull(
    q: Quant,
    v: &Var,
    body: &Formula,
    other: &Formula,
    build: impl Fn(Formula, Formula) -> Formula,
) -> Formula {
    if !other.is_free(&v.name) && !other.st_prefix_binds(&v.name) {
        return Formula::quant(q, v.clone(), build(body.clone(), other.clone()));
    }
    let mut avoid = body.all_names();
    avoid.extend(other.all_names());
    let renamed = Var::new(fresh_name(&v.name, &avoid), v.ty.clone());
    let body = subst(body, &v.name, &renamed.term());
    Formula::quant(q, renamed, build(body, other.clone()))
}

fn prenex_junction(site: &Site) -> Result<Formula> {
    let (a, b, is_and) = match (site.rule, site.node) {
        (RuleName::PrenexAndSt, Formula::And(a, b)) => (a, b, true),
        (RuleName::PrenexOrSt, Formula::Or(a, b)) => (a, b, false),
        _ => return site.no("node is not the matching connective"),
    };
    let join = move |x: Formula, y: Formula| {
        if is_and {
            Formula::and(x, y)
        } else {
            Formula::or(x, y)
        }
    };
    // st-universals only move outward in positive positions, so that
    // universal premise blocks stay intact for the premise rules.
    let movable = |f: &Formula| match f {
        Formula::Quant(q, _, _) if *q == Quant::ExistsSt => true,
        Formula::Quant(q, _, _) if *q == Quant::ForallSt => site.positive,
        _ => false,
    };
    // a universal goes first: pulling an existential past it would leave an
    // st-existential in front of an st-universal
    let universal = |f: &Formula| matches!(f, Formula::Quant(Quant::ForallSt, _, _));
    let right_first = movable(b) && universal(b) && !(movable(a) && universal(a));
    if movable(a) && !right_first {
        if let Formula::Quant(q, v, body) = &**a {
            return Ok(pull(*q, v, body, b, join));
        }
    }
    if movable(b) {
        if let Formula::Quant(q, v, body) = &**b {
            return Ok(pull(*q, v, body, a, move |x, y| join(y, x)));
        }
    }
    site.no("no movable st-quantifier directly below")
}

fn prenex_implies(site: &Site) -> Result<Formula> {
    let (a, b) = match site.node {
        Formula::Implies(a, b) => (a, b),
        _ => return site.no("node is not an implication"),
    };
    let classical = site.logic == Logic::Classical;
    let premise = |x: Formula, y: Formula| Formula::implies(x, y);
    let conclusion = |x: Formula, y: Formula| Formula::implies(y, x);
    if let Formula::Quant(Quant::ExistsSt, v, body) = &**a {
        return Ok(pull(Quant::ForallSt, v, body, b, premise));
    }
    if let Formula::Quant(Quant::ForallSt, v, body) = &**b {
        return Ok(pull(Quant::ForallSt, v, body, a, conclusion));
    }
    if classical {
        if let Formula::Quant(Quant::ForallSt, v, body) = &**a {
            return Ok(pull(Quant::ExistsSt, v, body, b, premise));
        }
        // independence of premises
        if let Formula::Quant(Quant::ExistsSt, v, body) = &**b {
            return Ok(pull(Quant::ExistsSt, v, body, a, conclusion));
        }
    }
    site.no("no st-quantifier that can cross the implication")
}

fn double_neg(site: &Site) -> Result<Formula> {
    match site.node {
        Formula::Not(inner) => match &**inner {
            Formula::Not(a) if !a.is_internal() => Ok((**a).clone()),
            _ => site.no("not a double negation of an external formula"),
        },
        _ => site.no("not a negation"),
    }
}

fn markov(site: &Site) -> Result<Formula> {
    match site.node {
        Formula::Not(inner) => match &**inner {
            Formula::Quant(q, v, a) if q.is_st() => {
                Ok(Formula::quant(q.dual(), v.clone(), Formula::not((**a).clone())))
            }
            _ => site.no("negation is not over an st-quantifier"),
        },
        _ => site.no("not a negation"),
    }
}

fn idealisation(site: &Site) -> Result<Formula> {
    let shape = || -> Option<(&Var, &Var, &Var, &Formula)> {
        let Formula::Quant(Quant::ForallSt, x, r1) = site.node else { return None };
        let Formula::Quant(Quant::Exists, y, r2) = &**r1 else { return None };
        let Formula::Member(Bound::Forall, z, seq, body) = &**r2 else { return None };
        let ok = *seq == x.term() && x.ty == FinType::seq(z.ty.clone());
        ok.then_some((x, y, z, &**body))
    };
    let Some((x, y, z, body)) = shape() else {
        return site.no("expected !st x:S^*. ?y. !z in x. phi");
    };
    if !body.is_internal() {
        return site.no("matrix is not internal");
    }
    if body.is_free(&x.name) || z.name == y.name {
        return site.no("sequence variable escapes the membership guard");
    }
    Ok(Formula::quant(
        Quant::Exists,
        y.clone(),
        Formula::quant(Quant::ForallSt, z.clone(), body.clone()),
    ))
}

fn hac_int(site: &Site, fresh: &mut FreshSupply) -> Result<(Formula, Vec<Var>)> {
    if !site.block_head(Quant::ForallSt) {
        return site.no("not the head of an st-universal block");
    }
    if !site.positive {
        return site.no("negative position");
    }
    let (xs, rest) = site.node.strip_quants(Quant::ForallSt);
    let (ys, matrix) = rest.strip_quants(Quant::ExistsSt);
    if ys.is_empty() || !matrix.is_internal() {
        return site.no("expected !st x. ?st y. phi with internal phi");
    }
    let arg_types: Vec<FinType> = xs.iter().map(|x| x.ty.clone()).collect();
    let fs: Vec<Var> = ys
        .iter()
        .map(|y| {
            Var::new(
                fresh.next("F"),
                FinType::curried(&arg_types, FinType::seq(y.ty.clone())),
            )
        })
        .collect();
    let mut body = matrix.clone();
    for (y, f) in ys.iter().zip(&fs).rev() {
        let witnesses = Term::apps(f.term(), xs.iter().map(Var::term));
        body = Formula::member(Bound::Exists, y.clone(), witnesses, body);
    }
    let out = Formula::quants(
        Quant::ExistsSt,
        &fs,
        Formula::quants(Quant::ForallSt, &xs, body),
    );
    Ok((out, fs))
}

/// Premise clauses of an implication: a conjunction whose leaves are
/// internal formulas or st-universal blocks with internal bodies.
fn premise_ok(f: &Formula) -> bool {
    match f {
        Formula::And(a, b) => premise_ok(a) && premise_ok(b),
        Formula::Quant(Quant::ForallSt, _, _) => f.strip_quants(Quant::ForallSt).1.is_internal(),
        _ => f.is_internal(),
    }
}

fn map_blocks(f: &Formula, g: &mut impl FnMut(&[Var], &Formula) -> Formula) -> Formula {
    match f {
        Formula::And(a, b) => {
            let a2 = map_blocks(a, g);
            Formula::and(a2, map_blocks(b, g))
        }
        Formula::Quant(Quant::ForallSt, _, _) => {
            let (xs, body) = f.strip_quants(Quant::ForallSt);
            g(&xs, body)
        }
        _ => f.clone(),
    }
}

const SEQUENCE_LETTERS: [&str; 6] = ["W", "V", "U", "T", "R", "Q"];

fn hgmp(site: &Site, fresh: &mut FreshSupply) -> Result<(Formula, Vec<Var>)> {
    let Formula::Implies(ant, conclusion) = site.node else {
        return site.no("not an implication");
    };
    if !site.positive {
        return site.no("negative position");
    }
    if !conclusion.is_internal() {
        return site.no("conclusion is not internal");
    }
    if ant.is_internal() || !premise_ok(ant) {
        return site.no("premise is not a conjunction of st-universal blocks over internal formulas");
    }
    let mut seqs: Vec<Var> = Vec::new();
    let new_ant = map_blocks(ant, &mut |xs, body| {
        // one sequence per distinct variable type in the block
        let mut per_type: Vec<(FinType, Var)> = Vec::new();
        for x in xs {
            if !per_type.iter().any(|(t, _)| *t == x.ty) {
                let letter = SEQUENCE_LETTERS[seqs.len() % SEQUENCE_LETTERS.len()];
                let s = Var::new(fresh.next(letter), FinType::seq(x.ty.clone()));
                seqs.push(s.clone());
                per_type.push((x.ty.clone(), s));
            }
        }
        xs.iter().rev().fold(body.clone(), |acc, x| {
            let s = &per_type.iter().find(|(t, _)| *t == x.ty).unwrap().1;
            Formula::member(Bound::Forall, x.clone(), s.term(), acc)
        })
    });
    let out = Formula::quants(
        Quant::ExistsSt,
        &seqs,
        Formula::implies(new_ant, (**conclusion).clone()),
    );
    Ok((out, seqs))
}

fn hip(site: &Site, fresh: &mut FreshSupply) -> Result<(Formula, Vec<Var>)> {
    let Formula::Implies(ant, conclusion) = site.node else {
        return site.no("not an implication");
    };
    if !site.positive {
        return site.no("negative position");
    }
    if !premise_ok(ant) {
        return site.no("premise is not a conjunction of st-universal blocks over internal formulas");
    }
    let (ys, psi) = conclusion.strip_quants(Quant::ExistsSt);
    if ys.is_empty() {
        return site.no("conclusion is not st-existential");
    }
    // Internal premise and a single monotone number witness: the maximum of
    // the candidate sequence is itself a witness, so no sequence is needed.
    if ant.is_internal()
        && ys.len() == 1
        && ys[0].ty == FinType::Base
        && psi.is_internal()
        && monotone_in(psi, &ys[0].name)
    {
        let out = pull(Quant::ExistsSt, &ys[0], psi, ant, |x, y| Formula::implies(y, x));
        return Ok((out, vec![]));
    }
    let seqs: Vec<Var> = ys
        .iter()
        .map(|y| Var::new(fresh.next("sigma"), FinType::seq(y.ty.clone())))
        .collect();
    let mut body = psi.clone();
    for (y, s) in ys.iter().zip(&seqs).rev() {
        body = Formula::member(Bound::Exists, y.clone(), s.term(), body);
    }
    let out = Formula::quants(
        Quant::ExistsSt,
        &seqs,
        Formula::implies((**ant).clone(), body),
    );
    Ok((out, seqs))
}

fn expand_eq(site: &Site) -> Result<Formula> {
    let want = if site.rule == RuleName::ExpandApprox {
        EqMode::Approx
    } else {
        EqMode::Exact
    };
    match site.node {
        Formula::HigherEq(a, b, ty, mode) if *mode == want => expand_equality(a, b, ty, *mode),
        _ => site.no("no matching equality abbreviation"),
    }
}

fn expand_stdext(site: &Site) -> Result<Formula> {
    match site.node {
        Formula::StdExt(t) => match t {
            Term::Var(Var {
                ty: FinType::Arrow(dom, cod),
                ..
            }) => expand_standard_extensionality_term(t, dom, cod),
            _ => site.no("standard extensionality needs a functional variable"),
        },
        _ => site.no("not a standard-extensionality atom"),
    }
}

fn drop_st(site: &Site) -> Result<Formula> {
    if !site.block_head(Quant::ForallSt) {
        return site.no("not the head of an st-universal block");
    }
    if site.positive {
        return site.no("positive position");
    }
    let (xs, body) = site.node.strip_quants(Quant::ForallSt);
    if !body.is_internal() {
        return site.no("block body is not internal");
    }
    Ok(Formula::quants(Quant::Forall, &xs, body.clone()))
}

/// The variable of a positive `?st m:0. P(m)` with internal `P` in which `m`
/// is used other than as the bound of a bounded quantifier.
pub fn bounded_search_candidate(root: &Formula, path: &[usize]) -> Option<Var> {
    let Some(Formula::Quant(Quant::ExistsSt, m, body)) = root.at(path) else {
        return None;
    };
    let eligible = m.ty == FinType::Base
        && body.is_internal()
        && polarity(root, path)
        && occurs_outside_bounds(body, &m.name);
    eligible.then(|| m.clone())
}

fn occurs_outside_bounds(f: &Formula, name: &str) -> bool {
    match f {
        Formula::Quant(_, v, b) => v.name != name && occurs_outside_bounds(b, name),
        Formula::Member(_, v, t, b) => {
            t.mentions(name) || (v.name != name && occurs_outside_bounds(b, name))
        }
        Formula::Bounded(_, i, t, b) => {
            let bound_use = matches!(t, Term::Var(v) if v.name == name);
            (!bound_use && t.mentions(name)) || (i != name && occurs_outside_bounds(b, name))
        }
        _ => {
            f.own_terms().iter().any(|t| t.mentions(name))
                || f.children().iter().any(|c| occurs_outside_bounds(c, name))
        }
    }
}

/// Syntactic certificate that `f` is upward monotone in the number variable
/// `name`: it occurs only as the bound of bounded existentials (or bounded
/// universals in negative position) or on the right of `<=` in positive
/// position.
pub fn monotone_in(f: &Formula, name: &str) -> bool {
    fn go(f: &Formula, name: &str, pos: bool) -> bool {
        let is_var = |t: &Term| matches!(t, Term::Var(v) if v.name == name);
        match f {
            Formula::Not(a) => go(a, name, !pos),
            Formula::Implies(a, b) => go(a, name, !pos) && go(b, name, pos),
            Formula::And(a, b) | Formula::Or(a, b) => go(a, name, pos) && go(b, name, pos),
            Formula::Quant(_, v, b) => v.name == name || go(b, name, pos),
            Formula::Member(_, v, t, b) => !t.mentions(name) && (v.name == name || go(b, name, pos)),
            Formula::Bounded(k, i, t, b) => {
                let bound_ok = !t.mentions(name)
                    || (is_var(t) && ((*k == Bound::Exists) == pos));
                bound_ok && (i == name || go(b, name, pos))
            }
            Formula::Le(a, b) => !a.mentions(name) && (!b.mentions(name) || (is_var(b) && pos)),
            _ => f.own_terms().iter().all(|t| !t.mentions(name)),
        }
    }
    go(f, name, true)
}

fn bounded_search(site: &Site) -> Result<Formula> {
    let Some(m) = bounded_search_candidate_at(site) else {
        return site.no("not a positive st-existential number search with internal body");
    };
    let Formula::Quant(_, _, body) = site.node else { unreachable!() };
    let mut avoid: BTreeSet<String> = body.all_names();
    avoid.insert(m.name.clone());
    let i = fresh_name("i", &avoid);
    let inner = subst(body, &m.name, &Term::var(&i, FinType::Base));
    Ok(Formula::quant(
        Quant::ExistsSt,
        m.clone(),
        Formula::bounded(Bound::Exists, &i, m.term(), inner),
    ))
}

fn bounded_search_candidate_at(site: &Site) -> Option<Var> {
    let Formula::Quant(Quant::ExistsSt, m, body) = site.node else {
        return None;
    };
    let eligible = m.ty == FinType::Base
        && body.is_internal()
        && site.positive
        && occurs_outside_bounds(body, &m.name);
    eligible.then(|| m.clone())
}

fn code_tuple(site: &Site, fresh: &mut FreshSupply) -> Result<(Formula, Vec<Var>)> {
    if !site.block_head(Quant::ForallSt) {
        return site.no("not the head of an st-universal block");
    }
    if site.positive {
        return site.no("positive position");
    }
    let (xs, rest) = site.node.strip_quants(Quant::ForallSt);
    if xs.len() < 2 || !matches!(rest, Formula::Quant(Quant::ExistsSt, _, _)) {
        return site.no("expected a block of two or more st-universals before an st-existential");
    }
    if xs.iter().any(|x| !matches!(x.ty.as_pure(), Some(0) | Some(1))) {
        return site.no("only type-0 and type-1 variables can be coded");
    }
    let z = Var::new(fresh.next("Z"), FinType::pure(1));
    let pairs: Vec<(String, Term)> = xs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let dec = if x.ty == FinType::Base { "dec0" } else { "dec1" };
            (x.name.clone(), Term::sym(dec, vec![z.term(), Term::num(i as u32)]))
        })
        .collect();
    let body = subst_all(rest, &pairs);
    Ok((Formula::quant(Quant::ForallSt, z.clone(), body), vec![z]))
}

fn skolem(site: &Site, fresh: &mut FreshSupply) -> Result<(Formula, Vec<Var>)> {
    if !site.block_head(Quant::ForallSt) {
        return site.no("not the head of an st-universal block");
    }
    if site.positive {
        return site.no("positive position");
    }
    let (xs, rest) = site.node.strip_quants(Quant::ForallSt);
    let Formula::Quant(Quant::ExistsSt, y, body) = rest else {
        return site.no("block is not followed by an st-existential");
    };
    let arg_types: Vec<FinType> = xs.iter().map(|x| x.ty.clone()).collect();
    let xi = Var::new(fresh.next("Xi"), FinType::curried(&arg_types, y.ty.clone()));
    let value = Term::apps(xi.term(), xs.iter().map(Var::term));
    let body = subst(body, &y.name, &value);
    let out = Formula::quant(
        Quant::ExistsSt,
        xi.clone(),
        Formula::quants(Quant::ForallSt, &xs, body),
    );
    Ok((out, vec![xi]))
}

/// Printable description of a node, for error reports.
pub fn describe_node(f: &Formula) -> String {
    let text = print_formula(f);
    if text.len() > 120 {
        format!("{}...", &text[..text.char_indices().nth(117).map(|(i, _)| i).unwrap_or(text.len())])
    } else {
        text
    }
}
