use std::collections::BTreeMap;

use super::formula::Formula;
use super::print::print_term;
use super::signature::Signature;
use super::term::Term;
use super::types::FinType;
use crate::error::{Error, Result};

/// Typing context: a signature plus the types of free variables.
#[derive(Clone, Debug)]
pub struct Context<'a> {
    pub signature: &'a Signature,
    vars: BTreeMap<String, FinType>,
}

impl<'a> Context<'a> {
    pub fn new(signature: &'a Signature) -> Context<'a> {
        Context {
            signature,
            vars: signature.vars.clone(),
        }
    }

    pub fn with(mut self, name: &str, ty: FinType) -> Context<'a> {
        self.vars.insert(name.to_string(), ty);
        self
    }

    pub fn bind(&self, name: &str, ty: FinType) -> Context<'a> {
        self.clone().with(name, ty)
    }

    pub fn lookup(&self, name: &str) -> Option<&FinType> {
        self.vars.get(name)
    }
}

fn expect(term: &Term, got: &FinType, want: &FinType) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(Error::type_err(
            print_term(term),
            format!("expected type {}, found {}", want, got),
        ))
    }
}

/// Computes the unique type of `term`.
pub fn typecheck(term: &Term, ctx: &Context) -> Result<FinType> {
    match term {
        Term::Var(v) => match ctx.lookup(&v.name) {
            None => Err(Error::Unbound(v.name.clone())),
            Some(ty) => {
                expect(term, &v.ty, ty)?;
                Ok(ty.clone())
            }
        },
        Term::Zero => Ok(FinType::Base),
        Term::Succ(t) => {
            expect(t, &typecheck(t, ctx)?, &FinType::Base)?;
            Ok(FinType::Base)
        }
        Term::App(h, a) => {
            let ht = typecheck(h, ctx)?;
            let at = typecheck(a, ctx)?;
            match ht {
                FinType::Arrow(dom, cod) => {
                    expect(a, &at, &dom)?;
                    Ok(*cod)
                }
                other => Err(Error::type_err(
                    print_term(term),
                    format!("head has type {}, which is not an arrow", other),
                )),
            }
        }
        Term::Pair(a, b) => Ok(FinType::prod(typecheck(a, ctx)?, typecheck(b, ctx)?)),
        Term::Proj1(t) | Term::Proj2(t) => match typecheck(t, ctx)? {
            FinType::Prod(l, r) => Ok(if matches!(term, Term::Proj1(_)) { *l } else { *r }),
            other => Err(Error::type_err(
                print_term(term),
                format!("projection from non-product type {}", other),
            )),
        },
        Term::SeqLit(elem, items) => {
            for it in items {
                expect(it, &typecheck(it, ctx)?, elem)?;
            }
            Ok(FinType::seq(elem.clone()))
        }
        Term::Len(t) => match typecheck(t, ctx)? {
            FinType::Seq(_) => Ok(FinType::Base),
            other => Err(Error::type_err(print_term(term), format!("len of {}", other))),
        },
        Term::Idx(s, i) => {
            expect(i, &typecheck(i, ctx)?, &FinType::Base)?;
            match typecheck(s, ctx)? {
                FinType::Seq(e) => Ok(*e),
                other => Err(Error::type_err(print_term(term), format!("index into {}", other))),
            }
        }
        Term::Max0(t) => {
            expect(t, &typecheck(t, ctx)?, &FinType::seq(FinType::Base))?;
            Ok(FinType::Base)
        }
        Term::FunSym(name, args) => {
            let decl = ctx
                .signature
                .funs
                .get(name)
                .ok_or_else(|| Error::Undeclared(name.clone()))?;
            if decl.args.len() != args.len() {
                return Err(Error::type_err(
                    print_term(term),
                    format!("`{}` expects {} arguments", name, decl.args.len()),
                ));
            }
            for (a, want) in args.iter().zip(&decl.args) {
                expect(a, &typecheck(a, ctx)?, want)?;
            }
            Ok(decl.ret.clone())
        }
    }
}

fn expect_base(t: &Term, ctx: &Context) -> Result<()> {
    expect(t, &typecheck(t, ctx)?, &FinType::Base)
}

/// Checks that every term in `formula` is well typed.
pub fn typecheck_formula(formula: &Formula, ctx: &Context) -> Result<()> {
    match formula {
        Formula::True | Formula::False => Ok(()),
        Formula::Eq(a, b) | Formula::Le(a, b) => {
            expect_base(a, ctx)?;
            expect_base(b, ctx)
        }
        Formula::Pred(name, args) => {
            let decl = ctx
                .signature
                .rels
                .get(name)
                .ok_or_else(|| Error::Undeclared(name.clone()))?;
            if decl.len() != args.len() {
                return Err(Error::type_err(
                    name,
                    format!("relation expects {} arguments", decl.len()),
                ));
            }
            for (a, want) in args.iter().zip(decl) {
                expect(a, &typecheck(a, ctx)?, want)?;
            }
            Ok(())
        }
        Formula::St(t) => typecheck(t, ctx).map(|_| ()),
        Formula::StdExt(t) => match typecheck(t, ctx)? {
            FinType::Arrow(..) => Ok(()),
            other => Err(Error::type_err(print_term(t), format!("not a functional: {}", other))),
        },
        Formula::HigherEq(a, b, ty, _) => {
            expect(a, &typecheck(a, ctx)?, ty)?;
            expect(b, &typecheck(b, ctx)?, ty)
        }
        Formula::Not(a) => typecheck_formula(a, ctx),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            typecheck_formula(a, ctx)?;
            typecheck_formula(b, ctx)
        }
        Formula::Quant(_, v, body) => typecheck_formula(body, &ctx.bind(&v.name, v.ty.clone())),
        Formula::Bounded(_, n, bound, body) => {
            expect_base(bound, ctx)?;
            typecheck_formula(body, &ctx.bind(n, FinType::Base))
        }
        Formula::Member(_, v, seq, body) => {
            expect(seq, &typecheck(seq, ctx)?, &FinType::seq(v.ty.clone()))?;
            typecheck_formula(body, &ctx.bind(&v.name, v.ty.clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrow_elimination() {
        let sig = Signature::new();
        let ctx = Context::new(&sig)
            .with("f", FinType::pure(1))
            .with("n", FinType::Base);
        let t = Term::app(Term::var("f", FinType::pure(1)), Term::var("n", FinType::Base));
        assert_eq!(typecheck(&t, &ctx).unwrap(), FinType::Base);
    }

    #[test]
    fn max_of_sequence() {
        let sig = Signature::new();
        let one = FinType::pure(1);
        let ctx = Context::new(&sig).with("f", one.clone());
        let f = Term::var("f", one);
        let seq = Term::SeqLit(
            FinType::Base,
            vec![Term::app(f.clone(), Term::num(0)), Term::app(f, Term::num(1))],
        );
        assert_eq!(typecheck(&Term::max0(seq), &ctx).unwrap(), FinType::Base);
    }

    #[test]
    fn pair_of_type_one_objects() {
        let sig = Signature::new();
        let one = FinType::pure(1);
        let ctx = Context::new(&sig).with("f", one.clone()).with("g", one.clone());
        let t = Term::pair(Term::var("f", one.clone()), Term::var("g", one.clone()));
        assert_eq!(typecheck(&t, &ctx).unwrap(), FinType::prod(one.clone(), one));
    }

    #[test]
    fn base_is_not_an_arrow() {
        let sig = Signature::new();
        let ctx = Context::new(&sig).with("x", FinType::Base).with("y", FinType::Base);
        let t = Term::app(Term::var("x", FinType::Base), Term::var("y", FinType::Base));
        assert!(matches!(typecheck(&t, &ctx), Err(Error::Type { .. })));
    }

    #[test]
    fn unbound_variable() {
        let sig = Signature::new();
        let ctx = Context::new(&sig);
        assert_eq!(
            typecheck(&Term::var("z", FinType::Base), &ctx),
            Err(Error::Unbound("z".into()))
        );
    }
}
