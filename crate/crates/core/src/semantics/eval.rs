//! Evaluation of terms and formulas in a finite two-level model.

use super::model::TwoLevelModel;
use super::value::Value;
use crate::error::{Error, Result};
use crate::syntax::{expand_equality, print_term, Bound, FinType, Formula, Term, Var};

/// Values of variables, innermost binding last.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Env {
    bindings: Vec<(String, Value)>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn with(mut self, name: &str, v: Value) -> Env {
        self.bindings.push((name.to_string(), v));
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.bindings.iter().rev().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn bindings(&self) -> &[(String, Value)] {
        &self.bindings
    }

    fn push(&mut self, name: &str, v: Value) {
        self.bindings.push((name.to_string(), v));
    }

    fn pop(&mut self) {
        self.bindings.pop();
    }
}

/// Type of a term, read off its variables and the model's signature.
pub fn term_type(t: &Term, m: &TwoLevelModel) -> Result<FinType> {
    Ok(match t {
        Term::Var(v) => v.ty.clone(),
        Term::Zero | Term::Succ(_) | Term::Len(_) | Term::Max0(_) => FinType::Base,
        Term::App(h, _) => match term_type(h, m)? {
            FinType::Arrow(_, c) => *c,
            other => return Err(Error::type_err(print_term(t), format!("head of type {}", other))),
        },
        Term::Pair(a, b) => FinType::prod(term_type(a, m)?, term_type(b, m)?),
        Term::Proj1(p) | Term::Proj2(p) => match term_type(p, m)? {
            FinType::Prod(l, r) => {
                if matches!(t, Term::Proj1(_)) {
                    *l
                } else {
                    *r
                }
            }
            other => return Err(Error::type_err(print_term(t), format!("projection from {}", other))),
        },
        Term::SeqLit(e, _) => FinType::seq(e.clone()),
        Term::Idx(s, _) => match term_type(s, m)? {
            FinType::Seq(e) => *e,
            other => return Err(Error::type_err(print_term(t), format!("index into {}", other))),
        },
        Term::FunSym(name, _) => m
            .signature
            .funs
            .get(name)
            .map(|d| d.ret.clone())
            .ok_or_else(|| Error::Undeclared(name.clone()))?,
    })
}

fn num(v: &Value, t: &Term) -> Result<u32> {
    v.as_num()
        .ok_or_else(|| Error::type_err(print_term(t), "expected a number"))
}

pub fn eval_term(t: &Term, m: &TwoLevelModel, env: &Env) -> Result<Value> {
    Ok(match t {
        Term::Var(v) => env
            .get(&v.name)
            .cloned()
            .ok_or_else(|| Error::Unbound(v.name.clone()))?,
        Term::Zero => Value::Num(0),
        // arithmetic saturates at the top of the domain
        Term::Succ(a) => Value::Num((num(&eval_term(a, m, env)?, a)? + 1).min(m.size() - 1)),
        Term::App(h, a) => {
            let dom = match term_type(h, m)? {
                FinType::Arrow(d, _) => *d,
                other => return Err(Error::type_err(print_term(t), format!("head of type {}", other))),
            };
            m.apply(&eval_term(h, m, env)?, &dom, &eval_term(a, m, env)?)?
        }
        Term::Pair(a, b) => Value::pair(eval_term(a, m, env)?, eval_term(b, m, env)?),
        Term::Proj1(p) | Term::Proj2(p) => match eval_term(p, m, env)? {
            Value::Pair(pair) => {
                if matches!(t, Term::Proj1(_)) {
                    pair.0.clone()
                } else {
                    pair.1.clone()
                }
            }
            _ => return Err(Error::type_err(print_term(t), "projection from a non-pair")),
        },
        Term::SeqLit(_, items) => Value::seq(
            items
                .iter()
                .map(|x| eval_term(x, m, env))
                .collect::<Result<_>>()?,
        ),
        Term::Len(s) => {
            let v = eval_term(s, m, env)?;
            let items = v.as_seq().ok_or_else(|| Error::type_err(print_term(t), "length of a non-sequence"))?;
            Value::Num((items.len() as u32).min(m.size() - 1))
        }
        Term::Idx(s, i) => {
            let v = eval_term(s, m, env)?;
            let k = num(&eval_term(i, m, env)?, i)? as usize;
            let items = v.as_seq().ok_or_else(|| Error::type_err(print_term(t), "index into a non-sequence"))?;
            match items.get(k) {
                Some(x) => x.clone(),
                None => m.default_value(&term_type(t, m)?),
            }
        }
        Term::Max0(s) => {
            let v = eval_term(s, m, env)?;
            let items = v.as_seq().ok_or_else(|| Error::type_err(print_term(t), "maximum of a non-sequence"))?;
            Value::Num(items.iter().filter_map(Value::as_num).max().unwrap_or(0))
        }
        Term::FunSym(name, args) => {
            let vals = args
                .iter()
                .map(|a| eval_term(a, m, env))
                .collect::<Result<Vec<_>>>()?;
            m.call(name, &vals)?
        }
    })
}

/// Truth of a closed formula.
pub fn eval_closed(f: &Formula, m: &TwoLevelModel) -> Result<bool> {
    eval(f, m, &Env::new())
}

pub fn eval(f: &Formula, m: &TwoLevelModel, env: &Env) -> Result<bool> {
    let mut env = env.clone();
    eval_in(f, m, &mut env)
}

fn eval_in(f: &Formula, m: &TwoLevelModel, env: &mut Env) -> Result<bool> {
    Ok(match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Eq(a, b) => eval_term(a, m, env)? == eval_term(b, m, env)?,
        Formula::Le(a, b) => num(&eval_term(a, m, env)?, a)? <= num(&eval_term(b, m, env)?, b)?,
        Formula::Pred(name, args) => {
            let vals = args
                .iter()
                .map(|a| eval_term(a, m, env))
                .collect::<Result<Vec<_>>>()?;
            m.holds(name, &vals)?
        }
        Formula::St(t) => m.is_standard(&eval_term(t, m, env)?, &term_type(t, m)?),
        Formula::Not(a) => !eval_in(a, m, env)?,
        Formula::And(a, b) => eval_in(a, m, env)? && eval_in(b, m, env)?,
        Formula::Or(a, b) => eval_in(a, m, env)? || eval_in(b, m, env)?,
        Formula::Implies(a, b) => !eval_in(a, m, env)? || eval_in(b, m, env)?,
        Formula::Quant(q, v, body) => {
            m.check_level(&v.ty)?;
            let dom = if q.is_st() { m.standard(&v.ty) } else { m.universe(&v.ty) };
            let want = !q.is_universal();
            for x in &dom.items {
                env.push(&v.name, x.clone());
                let r = eval_in(body, m, env);
                env.pop();
                if r? == want {
                    return Ok(want);
                }
            }
            !want
        }
        Formula::Bounded(b, name, bound, body) => {
            let top = num(&eval_term(bound, m, env)?, bound)?;
            let want = *b == Bound::Exists;
            for i in 0..=top.min(m.size() - 1) {
                env.push(name, Value::Num(i));
                let r = eval_in(body, m, env);
                env.pop();
                if r? == want {
                    return Ok(want);
                }
            }
            !want
        }
        Formula::Member(b, v, s, body) => {
            let seq = eval_term(s, m, env)?;
            let items = seq
                .as_seq()
                .ok_or_else(|| Error::type_err(print_term(s), "membership in a non-sequence"))?;
            let want = *b == Bound::Exists;
            for x in items {
                env.push(&v.name, x.clone());
                let r = eval_in(body, m, env);
                env.pop();
                if r? == want {
                    return Ok(want);
                }
            }
            !want
        }
        Formula::HigherEq(a, b, ty, mode) => eval_in(&expand_equality(a, b, ty, *mode)?, m, env)?,
        Formula::StdExt(t) => match term_type(t, m)? {
            FinType::Arrow(d, c) => {
                let ext = crate::normalform::expand_standard_extensionality_term(t, &d, &c)?;
                eval_in(&ext, m, env)?
            }
            other => return Err(Error::type_err(print_term(t), format!("extensionality of type {}", other))),
        },
    })
}

/// Every assignment of universe elements to `vars`, in lexicographic order.
pub fn assignments(m: &TwoLevelModel, vars: &[Var], standard: bool) -> Result<Vec<Env>> {
    let mut out = vec![Env::new()];
    for v in vars {
        m.check_level(&v.ty)?;
        let dom = if standard { m.standard(&v.ty) } else { m.universe(&v.ty) };
        out = out
            .into_iter()
            .flat_map(|e| dom.items.iter().map(move |x| e.clone().with(&v.name, x.clone())))
            .collect();
    }
    Ok(out)
}
