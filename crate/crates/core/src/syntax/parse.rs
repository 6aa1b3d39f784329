//! Recursive-descent parser for the surface syntax.
//!
//! A document is a sequence of header lines (`sym`, `rel`, `var`), comment
//! lines starting with `#`, and a single formula which may span several
//! lines.

use super::equality::expand_equality;
use super::formula::{Bound, EqMode, Formula, Quant};
use super::signature::Signature;
use super::term::{Term, Var};
use super::typecheck::{typecheck, typecheck_formula, Context};
use super::types::FinType;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(u32),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

// Longest first, so that `->` wins over `-` and `<=` over `<`.
const SYMBOLS: [&str; 25] = [
    "==[", "~~[", "^*", "->", "!=", "<=", ">=", "!", "?", ".", ":", "(", ")", ",", "<", ">", "[",
    "]", "~", "&", "|", "=", "*", "-", "#",
];

fn lex(text: &str, line0: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = line0 + ln;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s.parse().map_err(|_| Error::Syntax {
                    line: line_no,
                    col,
                    msg: format!("numeral `{}` too large", s),
                })?;
                out.push(Token { tok: Tok::Num(n), line: line_no, col });
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                while i < chars.len() && chars[i] == '\'' {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Ident(s), line: line_no, col });
                continue;
            }
            let rest: String = chars[i..].iter().take(3).collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) if *s != "#" && *s != "-" => {
                    i += s.chars().count();
                    out.push(Token { tok: Tok::Sym(s), line: line_no, col });
                }
                _ => {
                    return Err(Error::Syntax {
                        line: line_no,
                        col,
                        msg: format!("unexpected character `{}`", c),
                    })
                }
            }
        }
    }
    let (line, col) = out.last().map(|t| (t.line, t.col + 1)).unwrap_or((line0, 1));
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

const KEYWORDS: [&str; 14] = [
    "app", "S", "fst", "snd", "len", "idx", "max0", "st", "stdext", "true", "false", "in", "sym",
    "rel",
];

struct Parser<'s> {
    toks: Vec<Token>,
    pos: usize,
    sig: &'s Signature,
    scope: Vec<(String, FinType)>,
}

impl<'s> Parser<'s> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{}`, found {}", s, describe(self.peek())))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => self.err(format!("expected identifier, found {}", describe(&other))),
        }
    }

    fn binder_name(&mut self) -> Result<String> {
        let name = self.ident()?;
        if KEYWORDS.contains(&name.as_str()) {
            return self.err(format!("`{}` is reserved", name));
        }
        Ok(name)
    }

    // ---- types ----

    fn ty(&mut self) -> Result<FinType> {
        let mut base = match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                FinType::pure(n as usize)
            }
            Tok::Sym("(") => {
                self.bump();
                let left = self.ty()?;
                let t = if self.eat("->") {
                    FinType::arrow(left, self.ty()?)
                } else if self.eat("*") {
                    FinType::prod(left, self.ty()?)
                } else {
                    left
                };
                self.expect(")")?;
                t
            }
            other => return self.err(format!("expected a type, found {}", describe(&other))),
        };
        while self.eat("^*") {
            base = FinType::seq(base);
        }
        Ok(base)
    }

    // ---- terms ----

    fn lookup(&self, name: &str) -> Option<FinType> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t.clone())
            .or_else(|| self.sig.vars.get(name).cloned())
    }

    fn type_of(&self, t: &Term) -> Result<FinType> {
        let mut ctx = Context::new(self.sig);
        for (n, ty) in &self.scope {
            ctx = ctx.with(n, ty.clone());
        }
        typecheck(t, &ctx)
    }

    fn args(&mut self) -> Result<Vec<Term>> {
        self.expect("(")?;
        let mut out = Vec::new();
        if self.eat(")") {
            return Ok(out);
        }
        loop {
            out.push(self.term()?);
            if self.eat(")") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn fixed_args(&mut self, name: &str, n: usize) -> Result<Vec<Term>> {
        let args = self.args()?;
        if args.len() != n {
            return self.err(format!("`{}` takes {} argument(s), got {}", name, n, args.len()));
        }
        Ok(args)
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Term::num(n))
            }
            Tok::Sym("<") => {
                self.bump();
                let a = self.term()?;
                self.expect(",")?;
                let b = self.term()?;
                self.expect(">")?;
                Ok(Term::pair(a, b))
            }
            Tok::Sym("[") => {
                self.bump();
                if self.eat(":") {
                    let ty = self.ty()?;
                    self.expect("]")?;
                    return Ok(Term::SeqLit(ty, vec![]));
                }
                let mut items = vec![self.term()?];
                while self.eat(",") {
                    items.push(self.term()?);
                }
                self.expect("]")?;
                let ty = self.type_of(&items[0])?;
                Ok(Term::SeqLit(ty, items))
            }
            Tok::Ident(name) => {
                self.bump();
                if !self.is_sym("(") {
                    return match self.lookup(&name) {
                        Some(ty) => Ok(Term::var(&name, ty)),
                        None => Err(Error::Unbound(name)),
                    };
                }
                let mut args = match name.as_str() {
                    "S" | "fst" | "snd" | "len" | "max0" => self.fixed_args(&name, 1)?,
                    "idx" => self.fixed_args(&name, 2)?,
                    _ => self.args()?,
                };
                let one = |a: &mut Vec<Term>| Box::new(a.remove(0));
                Ok(match name.as_str() {
                    "S" => Term::Succ(one(&mut args)),
                    "fst" => Term::Proj1(one(&mut args)),
                    "snd" => Term::Proj2(one(&mut args)),
                    "len" => Term::Len(one(&mut args)),
                    "max0" => Term::Max0(one(&mut args)),
                    "idx" => {
                        let s = one(&mut args);
                        Term::Idx(s, one(&mut args))
                    }
                    "app" => {
                        if args.len() < 2 {
                            return self.err("`app` needs a head and at least one argument");
                        }
                        let head = args.remove(0);
                        Term::apps(head, args)
                    }
                    _ => {
                        if !self.sig.funs.contains_key(&name) {
                            return Err(Error::Undeclared(name));
                        }
                        Term::FunSym(name, args)
                    }
                })
            }
            other => self.err(format!("expected a term, found {}", describe(&other))),
        }
    }

    // ---- formulas ----

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat("->") {
            Ok(Formula::implies(lhs, self.formula()?))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut acc = self.conjunction()?;
        while self.eat("|") {
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        while self.eat("&") {
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat("~") {
            return Ok(Formula::not(self.unary()?));
        }
        if self.eat("(") {
            let f = self.formula()?;
            self.expect(")")?;
            return Ok(f);
        }
        if self.is_sym("!") || self.is_sym("?") {
            return self.quantified();
        }
        self.atom()
    }

    fn quantified(&mut self) -> Result<Formula> {
        let universal = self.bump() == Tok::Sym("!");
        let st = matches!(self.peek(), Tok::Ident(s) if s == "st")
            && matches!(self.peek_at(1), Tok::Ident(_));
        if st {
            self.bump();
        }
        let name = self.binder_name()?;
        let bound = if universal { Bound::Forall } else { Bound::Exists };
        if !st && self.eat("<=") {
            let limit = self.term()?;
            self.expect(".")?;
            let body = self.scoped(&name, FinType::Base)?;
            return Ok(Formula::bounded(bound, &name, limit, body));
        }
        if !st && matches!(self.peek(), Tok::Ident(s) if s == "in") {
            self.bump();
            let seq = self.term()?;
            let elem = match self.type_of(&seq)? {
                FinType::Seq(e) => *e,
                other => {
                    return Err(Error::type_err(
                        super::print::print_term(&seq),
                        format!("membership in non-sequence type {}", other),
                    ))
                }
            };
            self.expect(".")?;
            let body = self.scoped(&name, elem.clone())?;
            return Ok(Formula::member(bound, Var::new(name, elem), seq, body));
        }
        self.expect(":")?;
        let ty = self.ty()?;
        self.expect(".")?;
        let body = self.scoped(&name, ty.clone())?;
        let q = match (universal, st) {
            (true, false) => Quant::Forall,
            (false, false) => Quant::Exists,
            (true, true) => Quant::ForallSt,
            (false, true) => Quant::ExistsSt,
        };
        Ok(Formula::quant(q, Var::new(name, ty), body))
    }

    fn scoped(&mut self, name: &str, ty: FinType) -> Result<Formula> {
        self.scope.push((name.to_string(), ty));
        let body = self.formula();
        self.scope.pop();
        body
    }

    fn atom(&mut self) -> Result<Formula> {
        if let Tok::Ident(name) = self.peek().clone() {
            let call = matches!(self.peek_at(1), Tok::Sym("("));
            match name.as_str() {
                "true" => {
                    self.bump();
                    return Ok(Formula::True);
                }
                "false" => {
                    self.bump();
                    return Ok(Formula::False);
                }
                "st" if call => {
                    self.bump();
                    let mut a = self.fixed_args("st", 1)?;
                    return Ok(Formula::St(a.remove(0)));
                }
                "stdext" if call => {
                    self.bump();
                    let mut a = self.fixed_args("stdext", 1)?;
                    return Ok(Formula::StdExt(a.remove(0)));
                }
                _ if call && self.sig.rels.contains_key(&name) => {
                    self.bump();
                    let args = self.args()?;
                    return Ok(Formula::Pred(name, args));
                }
                _ => {}
            }
        }
        let lhs = self.term()?;
        let op = match self.peek().clone() {
            Tok::Sym(s) => s,
            other => return self.err(format!("expected a relation, found {}", describe(&other))),
        };
        self.bump();
        match op {
            "==[" | "~~[" => {
                let ty = self.ty()?;
                self.expect("]")?;
                let rhs = self.term()?;
                let mode = if op == "==[" { EqMode::Exact } else { EqMode::Approx };
                expand_equality(&lhs, &rhs, &ty, mode)
            }
            "=" => Ok(Formula::Eq(lhs, self.term()?)),
            "!=" => Ok(Formula::not(Formula::Eq(lhs, self.term()?))),
            "<=" => Ok(Formula::Le(lhs, self.term()?)),
            "<" => Ok(Formula::Le(Term::Succ(Box::new(lhs)), self.term()?)),
            ">=" => Ok(Formula::Le(self.term()?, lhs)),
            ">" => Ok(Formula::Le(Term::Succ(Box::new(self.term()?)), lhs)),
            _ => {
                self.pos -= 1;
                self.err(format!("expected a relation, found `{}`", op))
            }
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{}`", s),
        Tok::Num(n) => format!("`{}`", n),
        Tok::Sym(s) => format!("`{}`", s),
        Tok::Eof => "end of input".into(),
    }
}

fn parser<'s>(text: &str, line0: usize, sig: &'s Signature) -> Result<Parser<'s>> {
    Ok(Parser {
        toks: lex(text, line0)?,
        pos: 0,
        sig,
        scope: Vec::new(),
    })
}

/// Parses a standalone type such as `((1 * 1) -> 1)`.
pub fn parse_type(text: &str) -> Result<FinType> {
    let sig = Signature::default();
    let mut p = parser(text, 1, &sig)?;
    let ty = p.ty()?;
    if *p.peek() != Tok::Eof {
        return p.err("trailing input after type");
    }
    Ok(ty)
}

fn header(line: &str, line_no: usize, sig: &mut Signature) -> Result<()> {
    let snapshot = sig.clone();
    let mut p = parser(line, line_no, &snapshot)?;
    let kind = p.ident()?;
    let name = p.ident()?;
    p.expect(":")?;
    let mut args = Vec::new();
    let arrow_now = |p: &Parser| p.is_sym("->") || *p.peek() == Tok::Eof;
    if !arrow_now(&p) {
        args.push(p.ty()?);
        while matches!(p.peek(), Tok::Ident(s) if s == "x") {
            p.bump();
            args.push(p.ty()?);
        }
    }
    match kind.as_str() {
        "sym" => {
            p.expect("->")?;
            let ret = p.ty()?;
            sig.declare_fun(&name, args, ret);
        }
        "rel" => {
            sig.declare_rel(&name, args);
        }
        "var" => {
            if args.len() != 1 {
                return p.err("a variable declaration takes exactly one type");
            }
            sig.declare_var(&name, args.remove(0));
        }
        _ => unreachable!(),
    }
    if *p.peek() != Tok::Eof {
        return p.err("trailing input in header");
    }
    Ok(())
}

/// Parses a document (headers plus one formula) against `base`, returning
/// the extended signature and the typechecked formula.
pub fn parse_document(text: &str, base: &Signature) -> Result<(Signature, Formula)> {
    let mut sig = base.clone();
    let mut body = String::new();
    let mut body_line = None;
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        let first = trimmed.split_whitespace().next().unwrap_or("");
        if trimmed.is_empty() || trimmed.starts_with('#') {
            body.push('\n');
            continue;
        }
        if body_line.is_none() && matches!(first, "sym" | "rel" | "var") {
            header(line, i + 1, &mut sig)?;
            body.push('\n');
            continue;
        }
        body_line.get_or_insert(i + 1);
        body.push_str(line);
        body.push('\n');
    }
    let mut p = parser(&body, 1, &sig)?;
    if *p.peek() == Tok::Eof {
        return p.err("no formula found");
    }
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {}", describe(p.peek())));
    }
    typecheck_formula(&f, &Context::new(&sig))?;
    Ok((sig, f))
}

/// Parses a formula (headers allowed) against `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula> {
    parse_document(text, sig).map(|(_, f)| f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::print::print_formula;

    fn round_trip(src: &str) {
        let (sig, f) = parse_document(src, &Signature::new()).unwrap();
        let printed = print_formula(&f);
        let g = parse_formula(&printed, &sig).unwrap();
        assert_eq!(f, g, "{}", printed);
    }

    #[test]
    fn canonical_example_prints_identically() {
        let src = "!st f:1. (?n:0. app(f,n) = 0) -> ?st m:0. app(f,m) = 0";
        let f = parse_formula(src, &Signature::new()).unwrap();
        assert_eq!(print_formula(&f), src);
    }

    #[test]
    fn sugar_and_headers() {
        round_trip("rel P : 0 x 1\n!x:0. !f:1. P(x,f) | x != 0 & x < 3");
        round_trip("sym h : 1 x 0 -> 0\n!st f:1. ?st m:0. !i <= m. h(f,i) >= 2");
        round_trip("!st s:0^*. ?x in s. x = len(s) -> ?y in [1,2,x]. y = max0(s)");
        round_trip("!p:(1 * 1). app(fst(p),1) = app(snd(p),2) -> ~~(app(fst(p),0) = 0)");
        round_trip("!Phi:((1 * 1) -> (1 * 1)). !f:1. app(snd(app(Phi,<f,f>)),3) = 0");
        round_trip("var n' : 0\nrel R : \nR() & n' = 0");
    }

    #[test]
    fn higher_equality_expands() {
        let f = parse_formula("!f:1. !g:1. f ==[1] g", &Signature::new()).unwrap();
        assert_eq!(print_formula(&f), "!f:1. !g:1. !n:0. app(f,n) = app(g,n)");
    }

    #[test]
    fn errors_carry_positions() {
        let sig = Signature::new();
        match parse_formula("!x:0.\n  x = ", &sig) {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{:?}", other),
        }
        assert!(matches!(
            parse_formula("!x:0. app(x,x) = 0", &sig),
            Err(Error::Type { .. })
        ));
        assert_eq!(
            parse_formula("y = 0", &sig),
            Err(Error::Unbound("y".into()))
        );
        assert_eq!(
            parse_formula("!x:0. foo(x) = 0", &sig),
            Err(Error::Undeclared("foo".into()))
        );
    }

    #[test]
    fn types_parse() {
        assert_eq!(parse_type("((1 * 1) -> 1)").unwrap().to_string(), "((1 * 1) -> 1)");
        assert_eq!(parse_type("(0^*)^*").unwrap(), FinType::seq(FinType::seq(FinType::Base)));
        assert_eq!(parse_type("(1 -> 0)").unwrap(), FinType::pure(2));
    }
}
