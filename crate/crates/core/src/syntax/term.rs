use std::collections::BTreeSet;

use super::types::FinType;

/// A typed variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: String,
    pub ty: FinType,
}

impl Var {
    pub fn new(name: impl Into<String>, ty: FinType) -> Var {
        Var {
            name: name.into(),
            ty,
        }
    }

    pub fn term(&self) -> Term {
        Term::Var(self.clone())
    }
}

/// Terms of the object language. There is no lambda abstraction; functionals
/// are either variables or signature symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Zero,
    Succ(Box<Term>),
    App(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Proj1(Box<Term>),
    Proj2(Box<Term>),
    /// Sequence literal; the element type is kept so that `[]` is typed.
    SeqLit(FinType, Vec<Term>),
    Len(Box<Term>),
    Idx(Box<Term>, Box<Term>),
    /// Maximum of a `0^*` sequence (0 for the empty sequence).
    Max0(Box<Term>),
    FunSym(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str, ty: FinType) -> Term {
        Term::Var(Var::new(name, ty))
    }

    pub fn num(n: u32) -> Term {
        (0..n).fold(Term::Zero, |t, _| Term::Succ(Box::new(t)))
    }

    pub fn as_num(&self) -> Option<u32> {
        match self {
            Term::Zero => Some(0),
            Term::Succ(t) => t.as_num().map(|n| n + 1),
            _ => None,
        }
    }

    pub fn app(head: Term, arg: Term) -> Term {
        Term::App(Box::new(head), Box::new(arg))
    }

    /// Left-nested application `head a1 ... an`.
    pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    pub fn pair(l: Term, r: Term) -> Term {
        Term::Pair(Box::new(l), Box::new(r))
    }

    pub fn fst(t: Term) -> Term {
        Term::Proj1(Box::new(t))
    }

    pub fn snd(t: Term) -> Term {
        Term::Proj2(Box::new(t))
    }

    pub fn max0(t: Term) -> Term {
        Term::Max0(Box::new(t))
    }

    pub fn sym(name: &str, args: Vec<Term>) -> Term {
        Term::FunSym(name.to_string(), args)
    }

    /// Right-nested tuple of the given terms.
    pub fn tuple(mut items: Vec<Term>) -> Option<Term> {
        let mut acc = items.pop()?;
        while let Some(t) = items.pop() {
            acc = Term::pair(t, acc);
        }
        Some(acc)
    }

    /// Component `index` (0-based) of a right-nested tuple with `count`
    /// components.
    pub fn component(t: Term, index: usize, count: usize) -> Term {
        let mut cur = t;
        for _ in 0..index {
            cur = Term::snd(cur);
        }
        if index + 1 < count {
            Term::fst(cur)
        } else {
            cur
        }
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) | Term::Zero => vec![],
            Term::Succ(t) | Term::Proj1(t) | Term::Proj2(t) | Term::Len(t) | Term::Max0(t) => {
                vec![t]
            }
            Term::App(a, b) | Term::Pair(a, b) | Term::Idx(a, b) => vec![a, b],
            Term::SeqLit(_, ts) | Term::FunSym(_, ts) => ts.iter().collect(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        if let Term::Var(v) = self {
            out.insert(v.clone());
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    pub fn mentions(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v.name == name,
            _ => self.children().iter().any(|c| c.mentions(name)),
        }
    }

    /// Replaces every occurrence of the variable `name` by `replacement`.
    /// Terms have no binders, so this is plain structural replacement.
    /// `t` occurs as a subterm.
    pub fn mentions_term(&self, t: &Term) -> bool {
        self == t || self.children().iter().any(|c| c.mentions_term(t))
    }

    pub fn replace_var(&self, name: &str, replacement: &Term) -> Term {
        self.map(&mut |t| match t {
            Term::Var(v) if v.name == name => Some(replacement.clone()),
            _ => None,
        })
    }

    /// Replaces every subterm equal to `target`.
    pub fn replace_term(&self, target: &Term, replacement: &Term) -> Term {
        self.map(&mut |t| (t == target).then(|| replacement.clone()))
    }

    /// Top-down rewrite: `f` may replace a node, otherwise children are
    /// visited.
    pub fn map(&self, f: &mut impl FnMut(&Term) -> Option<Term>) -> Term {
        if let Some(t) = f(self) {
            return t;
        }
        let b = |t: &Term, f: &mut dyn FnMut(&Term) -> Option<Term>| Box::new(map_dyn(t, f));
        match self {
            Term::Var(_) | Term::Zero => self.clone(),
            Term::Succ(t) => Term::Succ(b(t, f)),
            Term::Proj1(t) => Term::Proj1(b(t, f)),
            Term::Proj2(t) => Term::Proj2(b(t, f)),
            Term::Len(t) => Term::Len(b(t, f)),
            Term::Max0(t) => Term::Max0(b(t, f)),
            Term::App(x, y) => Term::App(b(x, f), b(y, f)),
            Term::Pair(x, y) => Term::Pair(b(x, f), b(y, f)),
            Term::Idx(x, y) => Term::Idx(b(x, f), b(y, f)),
            Term::SeqLit(ty, ts) => {
                Term::SeqLit(ty.clone(), ts.iter().map(|t| map_dyn(t, f)).collect())
            }
            Term::FunSym(n, ts) => Term::FunSym(n.clone(), ts.iter().map(|t| map_dyn(t, f)).collect()),
        }
    }

    pub fn symbols(&self, out: &mut BTreeSet<String>) {
        if let Term::FunSym(n, _) = self {
            out.insert(n.clone());
        }
        for c in self.children() {
            c.symbols(out);
        }
    }
}

fn map_dyn(t: &Term, f: &mut dyn FnMut(&Term) -> Option<Term>) -> Term {
    t.map(&mut |x| f(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerals() {
        assert_eq!(Term::num(3).as_num(), Some(3));
        assert_eq!(Term::var("x", FinType::Base).as_num(), None);
    }

    #[test]
    fn tuple_components() {
        let ts: Vec<Term> = ["a", "b", "c"]
            .iter()
            .map(|n| Term::var(n, FinType::Base))
            .collect();
        let tup = Term::tuple(ts).unwrap();
        assert_eq!(
            Term::component(tup.clone(), 1, 3),
            Term::fst(Term::snd(tup.clone()))
        );
        assert_eq!(Term::component(tup.clone(), 2, 3), Term::snd(Term::snd(tup)));
    }
}
