use std::collections::BTreeSet;

use super::term::{Term, Var};
use super::types::FinType;

/// Unbounded quantifier flavours. The `St` variants range over standard
/// objects only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quant {
    Forall,
    Exists,
    ForallSt,
    ExistsSt,
}

impl Quant {
    pub fn is_st(self) -> bool {
        matches!(self, Quant::ForallSt | Quant::ExistsSt)
    }

    pub fn is_universal(self) -> bool {
        matches!(self, Quant::Forall | Quant::ForallSt)
    }

    pub fn relativized(self) -> Quant {
        match self {
            Quant::Forall => Quant::ForallSt,
            Quant::Exists => Quant::ExistsSt,
            q => q,
        }
    }

    pub fn internal(self) -> Quant {
        match self {
            Quant::ForallSt => Quant::Forall,
            Quant::ExistsSt => Quant::Exists,
            q => q,
        }
    }

    pub fn dual(self) -> Quant {
        match self {
            Quant::Forall => Quant::Exists,
            Quant::Exists => Quant::Forall,
            Quant::ForallSt => Quant::ExistsSt,
            Quant::ExistsSt => Quant::ForallSt,
        }
    }
}

/// Universal or existential flavour of a bounded quantifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Forall,
    Exists,
}

/// `Exact` is `=_τ`, `Approx` is `≈_τ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EqMode {
    Exact,
    Approx,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    /// Equality at type 0.
    Eq(Term, Term),
    Le(Term, Term),
    /// Uninterpreted decidable relation.
    Pred(String, Vec<Term>),
    St(Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Quant(Quant, Var, Box<Formula>),
    /// `!i <= t. φ` / `?i <= t. φ` over type-0 `i`.
    Bounded(Bound, String, Term, Box<Formula>),
    /// `!x in t. φ` / `?x in t. φ` over the entries of a sequence `t`.
    Member(Bound, Var, Term, Box<Formula>),
    /// Unexpanded higher-type equality; removed by the expansion rules.
    HigherEq(Term, Term, FinType, EqMode),
    /// Unexpanded "the functional is standard extensional".
    StdExt(Term),
}

pub type Path = Vec<usize>;

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn quant(q: Quant, v: Var, body: Formula) -> Formula {
        Formula::Quant(q, v, Box::new(body))
    }

    /// Wraps `body` in one quantifier per variable, outermost first.
    pub fn quants(q: Quant, vars: &[Var], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::quant(q, v.clone(), acc))
    }

    pub fn bounded(b: Bound, name: &str, bound: Term, body: Formula) -> Formula {
        Formula::Bounded(b, name.to_string(), bound, Box::new(body))
    }

    pub fn member(b: Bound, v: Var, seq: Term, body: Formula) -> Formula {
        Formula::Member(b, v, seq, Box::new(body))
    }

    pub fn conj(items: Vec<Formula>) -> Formula {
        let mut it = items.into_iter().rev();
        match it.next() {
            None => Formula::True,
            Some(last) => it.fold(last, |acc, f| Formula::and(f, acc)),
        }
    }

    /// Immediate subformulas, in path order.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Not(a)
            | Formula::Quant(_, _, a)
            | Formula::Bounded(_, _, _, a)
            | Formula::Member(_, _, _, a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => vec![a, b],
            _ => vec![],
        }
    }

    pub fn children_mut(&mut self) -> Vec<&mut Formula> {
        match self {
            Formula::Not(a)
            | Formula::Quant(_, _, a)
            | Formula::Bounded(_, _, _, a)
            | Formula::Member(_, _, _, a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => vec![a, b],
            _ => vec![],
        }
    }

    /// Terms occurring directly at this node (not inside subformulas).
    pub fn own_terms(&self) -> Vec<&Term> {
        match self {
            Formula::Eq(a, b) | Formula::Le(a, b) | Formula::HigherEq(a, b, _, _) => vec![a, b],
            Formula::Pred(_, ts) => ts.iter().collect(),
            Formula::St(t) | Formula::StdExt(t) => vec![t],
            Formula::Bounded(_, _, t, _) | Formula::Member(_, _, t, _) => vec![t],
            _ => vec![],
        }
    }

    pub fn at(&self, path: &[usize]) -> Option<&Formula> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => self.children().get(*i)?.at(rest),
        }
    }

    pub fn at_mut(&mut self, path: &[usize]) -> Option<&mut Formula> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => {
                let mut ch = self.children_mut();
                if *i >= ch.len() {
                    return None;
                }
                ch.swap_remove(*i).at_mut(rest)
            }
        }
    }

    /// Internal iff no `st` occurs (abbreviations of `≈` and standard
    /// extensionality count as external).
    pub fn is_internal(&self) -> bool {
        match self {
            Formula::St(_) | Formula::StdExt(_) => false,
            Formula::HigherEq(_, _, _, EqMode::Approx) => false,
            Formula::Quant(q, _, b) => !q.is_st() && b.is_internal(),
            _ => self.children().iter().all(|c| c.is_internal()),
        }
    }

    pub fn has_abbreviation(&self) -> bool {
        matches!(self, Formula::HigherEq(..) | Formula::StdExt(_))
            || self.children().iter().any(|c| c.has_abbreviation())
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for t in self.own_terms() {
            // the bound/sequence term of a bounded quantifier is outside its scope
            out.extend(t.free_vars());
        }
        match self {
            Formula::Quant(_, v, b) | Formula::Member(_, v, _, b) => {
                let mut inner = b.free_vars();
                inner.retain(|x| x.name != v.name);
                out.extend(inner);
            }
            Formula::Bounded(_, n, _, b) => {
                let mut inner = b.free_vars();
                inner.retain(|x| &x.name != n);
                out.extend(inner);
            }
            _ => {
                for c in self.children() {
                    out.extend(c.free_vars());
                }
            }
        }
        out
    }

    pub fn free_names(&self) -> BTreeSet<String> {
        self.free_vars().into_iter().map(|v| v.name).collect()
    }

    pub fn is_free(&self, name: &str) -> bool {
        self.free_vars().iter().any(|v| v.name == name)
    }

    /// Whether the leading block of standard quantifiers binds `name`.
    pub fn st_prefix_binds(&self, name: &str) -> bool {
        let mut cur = self;
        while let Formula::Quant(q, v, b) = cur {
            if !q.is_st() {
                break;
            }
            if v.name == name {
                return true;
            }
            cur = b;
        }
        false
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        for t in self.own_terms() {
            out.extend(t.free_vars().into_iter().map(|v| v.name));
        }
        match self {
            Formula::Quant(_, v, _) | Formula::Member(_, v, _, _) => {
                out.insert(v.name.clone());
            }
            Formula::Bounded(_, n, _, _) => {
                out.insert(n.clone());
            }
            _ => {}
        }
        for c in self.children() {
            c.collect_names(out);
        }
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        if let Formula::Pred(name, _) = self {
            out.insert(name.clone());
        }
        for t in self.own_terms() {
            t.symbols(out);
        }
        for c in self.children() {
            c.collect_symbols(out);
        }
    }

    /// Number of formula nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Strips a leading block of quantifiers of flavour `q`.
    pub fn strip_quants(&self, q: Quant) -> (Vec<Var>, &Formula) {
        let mut vars = Vec::new();
        let mut cur = self;
        while let Formula::Quant(q2, v, b) = cur {
            if *q2 != q {
                break;
            }
            vars.push(v.clone());
            cur = b;
        }
        (vars, cur)
    }

    /// Applies `f` to every term in the formula, without regard to binders.
    pub fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> Formula {
        let mut g = |t: &Term| f(t);
        self.map_terms_dyn(&mut g)
    }

    fn map_terms_dyn(&self, f: &mut dyn FnMut(&Term) -> Term) -> Formula {
        let rec = |x: &Formula, f: &mut dyn FnMut(&Term) -> Term| Box::new(x.map_terms_dyn(f));
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Eq(a, b) => Formula::Eq(f(a), f(b)),
            Formula::Le(a, b) => Formula::Le(f(a), f(b)),
            Formula::Pred(n, ts) => Formula::Pred(n.clone(), ts.iter().map(|t| f(t)).collect()),
            Formula::St(t) => Formula::St(f(t)),
            Formula::StdExt(t) => Formula::StdExt(f(t)),
            Formula::HigherEq(a, b, ty, m) => Formula::HigherEq(f(a), f(b), ty.clone(), *m),
            Formula::Not(a) => Formula::Not(rec(a, f)),
            Formula::And(a, b) => Formula::And(rec(a, f), rec(b, f)),
            Formula::Or(a, b) => Formula::Or(rec(a, f), rec(b, f)),
            Formula::Implies(a, b) => Formula::Implies(rec(a, f), rec(b, f)),
            Formula::Quant(q, v, b) => Formula::Quant(*q, v.clone(), rec(b, f)),
            Formula::Bounded(k, n, t, b) => Formula::Bounded(*k, n.clone(), f(t), rec(b, f)),
            Formula::Member(k, v, t, b) => Formula::Member(*k, v.clone(), f(t), rec(b, f)),
        }
    }
}

/// Polarity of the node at `path` (true = positive).
pub fn polarity(root: &Formula, path: &[usize]) -> bool {
    let mut pos = true;
    let mut cur = root;
    for &i in path {
        match cur {
            Formula::Not(_) => pos = !pos,
            Formula::Implies(..) if i == 0 => pos = !pos,
            _ => {}
        }
        cur = match cur.children().get(i) {
            Some(c) => c,
            None => break,
        };
    }
    pos
}

/// Number of propositional connectives strictly above `path`.
pub fn connective_depth(root: &Formula, path: &[usize]) -> usize {
    let mut depth = 0;
    let mut cur = root;
    for &i in path {
        if matches!(
            cur,
            Formula::Not(_) | Formula::And(..) | Formula::Or(..) | Formula::Implies(..)
        ) {
            depth += 1;
        }
        cur = match cur.children().get(i) {
            Some(c) => c,
            None => break,
        };
    }
    depth
}

/// All node paths in post-order (children before parents, left to right).
pub fn post_order_paths(root: &Formula) -> Vec<Path> {
    fn go(f: &Formula, prefix: &mut Path, out: &mut Vec<Path>) {
        for (i, c) in f.children().into_iter().enumerate() {
            prefix.push(i);
            go(c, prefix, out);
            prefix.pop();
        }
        out.push(prefix.clone());
    }
    let mut out = Vec::new();
    go(root, &mut Vec::new(), &mut out);
    out
}

pub fn format_path(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        path.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

pub fn parse_path(text: &str) -> Option<Path> {
    if text == "root" {
        return Some(vec![]);
    }
    text.split('.').map(|s| s.parse().ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: &str) -> Formula {
        Formula::Pred(n.into(), vec![])
    }

    #[test]
    fn polarity_flips_under_antecedent_and_negation() {
        let f = Formula::implies(Formula::not(p("a")), p("b"));
        assert!(!polarity(&f, &[0]));
        assert!(polarity(&f, &[0, 0]));
        assert!(polarity(&f, &[1]));
    }

    #[test]
    fn bounded_quantifier_scopes() {
        let x = Var::new("x", FinType::Base);
        let f = Formula::bounded(
            Bound::Forall,
            "x",
            x.term(),
            Formula::Eq(x.term(), Term::Zero),
        );
        // the bound `x` is free, the body's `x` is bound
        assert_eq!(f.free_names().into_iter().collect::<Vec<_>>(), vec!["x"]);
    }

    #[test]
    fn path_format_round_trip() {
        assert_eq!(parse_path(&format_path(&[0, 1, 0])), Some(vec![0, 1, 0]));
        assert_eq!(parse_path("root"), Some(vec![]));
    }
}
