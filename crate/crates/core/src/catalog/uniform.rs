//! Uniform versions (existentials realised by one functional) and their
//! plus versions (functional standard and standard extensional).

use super::principles::{Kind, Principle};
use crate::error::{Error, Result};
use crate::syntax::{subst, FinType, Formula, Path, Quant, Term, Var};

/// Where a realised existential used to sit in the uniform statement.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessSite {
    pub var: Var,
    pub term: Term,
    /// Position, relative to the matrix under the universal block, of the
    /// subformula that was the existential's body.
    pub path: Path,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Uniformization {
    pub principle: Principle,
    /// The universal block realised over (the functional's arguments).
    pub inputs: Vec<Var>,
    pub sites: Vec<WitnessSite>,
}

fn shape(msg: impl Into<String>) -> Error {
    Error::Shape(msg.into())
}

/// Existentials of the positive skeleton (through `!`, `&`, `|` and the
/// consequent of `->`) named in `wanted`, with the universals above them.
fn collect(f: &Formula, wanted: &[String], univ: &mut Vec<Var>, out: &mut Vec<(Var, Vec<Var>)>) {
    match f {
        Formula::Quant(Quant::Forall, v, b) => {
            univ.push(v.clone());
            collect(b, wanted, univ, out);
            univ.pop();
        }
        Formula::Quant(Quant::Exists, v, b) if wanted.contains(&v.name) => {
            out.push((v.clone(), univ.clone()));
            collect(b, wanted, univ, out);
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            collect(a, wanted, univ, out);
            collect(b, wanted, univ, out);
        }
        Formula::Implies(_, b) => collect(b, wanted, univ, out),
        _ => {}
    }
}

struct Realiser<'a> {
    terms: &'a [(String, Term)],
    sites: Vec<WitnessSite>,
}

impl Realiser<'_> {
    fn walk(&mut self, f: &Formula, path: &mut Path) -> Formula {
        let descend = |me: &mut Self, i: usize, g: &Formula, path: &mut Path| {
            path.push(i);
            let out = me.walk(g, path);
            path.pop();
            out
        };
        match f {
            Formula::Quant(Quant::Forall, v, b) => {
                Formula::quant(Quant::Forall, v.clone(), descend(self, 0, b, path))
            }
            Formula::Quant(Quant::Exists, v, b) => {
                match self.terms.iter().find(|(n, _)| *n == v.name) {
                    Some((_, t)) => {
                        self.sites.push(WitnessSite {
                            var: v.clone(),
                            term: t.clone(),
                            path: path.clone(),
                        });
                        let body = subst(b, &v.name, t);
                        self.walk(&body, path)
                    }
                    None => f.clone(),
                }
            }
            Formula::And(a, b) => {
                let a2 = descend(self, 0, a, path);
                Formula::and(a2, descend(self, 1, b, path))
            }
            Formula::Or(a, b) => {
                let a2 = descend(self, 0, a, path);
                Formula::or(a2, descend(self, 1, b, path))
            }
            Formula::Implies(a, b) => {
                Formula::implies((**a).clone(), descend(self, 1, b, path))
            }
            _ => f.clone(),
        }
    }
}

/// `!X. ?Y. phi` becomes `?Phi. !X. phi[Y := Phi(X)(j), n := Phi(X)(j)(u)]`,
/// realising every listed witness by one component of `Phi`.
pub fn uniformize_detailed(p: &Principle, functional: &str) -> Result<Uniformization> {
    if p.kind != Kind::Zoo {
        return Err(shape(format!("{} is not a zoo principle", p.name)));
    }
    let (xs, rest) = p.statement.strip_quants(Quant::Forall);
    if xs.is_empty() || !rest.is_internal() {
        return Err(shape("expected !X. ?Y. phi with internal phi"));
    }
    let mut found = Vec::new();
    collect(rest, &p.witnesses, &mut Vec::new(), &mut found);
    let mut ordered = Vec::new();
    for w in &p.witnesses {
        match found.iter().find(|(v, _)| v.name == *w) {
            Some(hit) => ordered.push(hit.clone()),
            None => return Err(shape(format!("witness `{}` not found", w))),
        }
    }
    let count = ordered.len();
    let dom = FinType::tuple(xs.iter().map(|x| x.ty.clone()).collect()).expect("non-empty");
    let cod = FinType::tuple(
        ordered
            .iter()
            .map(|(v, univ)| {
                let args: Vec<FinType> = univ.iter().map(|u| u.ty.clone()).collect();
                FinType::curried(&args, v.ty.clone())
            })
            .collect(),
    )
    .ok_or_else(|| shape("no witnesses"))?;
    let phi = Var::new(functional, FinType::arrow(dom, cod));
    if p.statement.all_names().contains(functional) {
        return Err(shape(format!("`{}` already occurs", functional)));
    }
    let image = Term::app(
        phi.term(),
        Term::tuple(xs.iter().map(Var::term).collect()).expect("non-empty"),
    );
    let terms: Vec<(String, Term)> = ordered
        .iter()
        .enumerate()
        .map(|(j, (v, univ))| {
            let comp = Term::component(image.clone(), j, count);
            (v.name.clone(), Term::apps(comp, univ.iter().map(Var::term)))
        })
        .collect();
    let mut realiser = Realiser {
        terms: &terms,
        sites: Vec::new(),
    };
    let body = realiser.walk(rest, &mut Vec::new());
    let statement = Formula::quant(
        Quant::Exists,
        phi.clone(),
        Formula::quants(Quant::Forall, &xs, body),
    );
    let xs = xs.clone();
    Ok(Uniformization {
        principle: Principle {
            name: format!("U{}", p.name),
            kind: Kind::Uniform,
            signature: p.signature.clone(),
            statement,
            witnesses: Vec::new(),
            functional: Some(phi),
        },
        inputs: xs,
        sites: realiser.sites,
    })
}

pub fn uniformize(p: &Principle, functional: &str) -> Result<Principle> {
    uniformize_detailed(p, functional).map(|u| u.principle)
}

/// Undoes [`uniformize_detailed`]: drops the functional and re-introduces an
/// existential at every site, replacing the realising term by the variable.
pub fn erase_functional(u: &Uniformization) -> Result<Formula> {
    let Formula::Quant(Quant::Exists, _, inner) = &u.principle.statement else {
        return Err(shape("expected a leading existential functional"));
    };
    let mut body = (**inner).clone();
    for _ in &u.inputs {
        body = match body {
            Formula::Quant(Quant::Forall, _, b) => *b,
            _ => return Err(shape("universal block shorter than the inputs")),
        };
    }
    // reverse pre-order: a site is never an ancestor of a later one
    for site in u.sites.iter().rev() {
        let node = body
            .at(&site.path)
            .ok_or_else(|| shape("stale witness site"))?
            .map_terms(&mut |t| t.replace_term(&site.term, &site.var.term()));
        let slot = body.at_mut(&site.path).expect("checked above");
        *slot = Formula::quant(Quant::Exists, site.var.clone(), node);
    }
    Ok(Formula::quants(Quant::Forall, &u.inputs, body))
}

/// `?Phi. !X. A` becomes `?st Phi. ((!st X. A) & stdext(Phi))`.
pub fn plus_version(u: &Principle) -> Result<Principle> {
    match u.kind {
        Kind::Uniform => {}
        Kind::UniformPlus => return Err(shape(format!("{} is already a plus version", u.name))),
        _ => return Err(shape(format!("{} is not a uniform principle", u.name))),
    }
    let Formula::Quant(Quant::Exists, phi, inner) = &u.statement else {
        return Err(shape("expected a leading existential functional"));
    };
    let FinType::Arrow(dom, _) = &phi.ty else {
        return Err(shape("the functional must have an arrow type"));
    };
    // the block over the functional's arguments, not the inner universals
    let mut xs = Vec::new();
    let mut body = &**inner;
    for _ in 0..dom.components().len() {
        match body {
            Formula::Quant(Quant::Forall, x, b) => {
                xs.push(x.clone());
                body = b;
            }
            _ => return Err(shape("universal block shorter than the functional's arguments")),
        }
    }
    if !body.is_internal() {
        return Err(shape("matrix under the universal block is not internal"));
    }
    let statement = Formula::quant(
        Quant::ExistsSt,
        phi.clone(),
        Formula::and(
            Formula::quants(Quant::ForallSt, &xs, body.clone()),
            Formula::StdExt(phi.term()),
        ),
    );
    Ok(Principle {
        name: format!("{}+", u.name),
        kind: Kind::UniformPlus,
        signature: u.signature.clone(),
        statement,
        witnesses: Vec::new(),
        functional: Some(phi.clone()),
    })
}
