use std::collections::BTreeMap;
use std::fmt;

use super::formula::Formula;
use super::types::FinType;

/// A declared function symbol `name : a1 x ... x an -> ret`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymDecl {
    pub args: Vec<FinType>,
    pub ret: FinType,
}

/// Uninterpreted function and relation symbols, plus declared free variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub funs: BTreeMap<String, SymDecl>,
    pub rels: BTreeMap<String, Vec<FinType>>,
    pub vars: BTreeMap<String, FinType>,
}

/// Symbols every signature carries: the component selector for pairs of
/// type-1 objects and the two decoders of type-1 tuple codes.
pub const BUILTIN_SYMBOLS: [&str; 3] = ["sel", "dec0", "dec1"];

impl Signature {
    pub fn new() -> Signature {
        let mut sig = Signature::default();
        let one = FinType::pure(1);
        sig.declare_fun(
            "sel",
            vec![FinType::prod(one.clone(), one.clone()), FinType::Base],
            one.clone(),
        );
        sig.declare_fun("dec0", vec![one.clone(), FinType::Base], FinType::Base);
        sig.declare_fun("dec1", vec![one.clone(), FinType::Base], one);
        sig
    }

    pub fn declare_fun(&mut self, name: &str, args: Vec<FinType>, ret: FinType) -> &mut Self {
        self.funs.insert(name.to_string(), SymDecl { args, ret });
        self
    }

    pub fn declare_rel(&mut self, name: &str, args: Vec<FinType>) -> &mut Self {
        self.rels.insert(name.to_string(), args);
        self
    }

    pub fn declare_var(&mut self, name: &str, ty: FinType) -> &mut Self {
        self.vars.insert(name.to_string(), ty);
        self
    }

    /// Union of both signatures; entries of `other` win on conflicts.
    pub fn merged(&self, other: &Signature) -> Signature {
        let mut out = self.clone();
        out.funs
            .extend(other.funs.iter().map(|(k, v)| (k.clone(), v.clone())));
        out.rels
            .extend(other.rels.iter().map(|(k, v)| (k.clone(), v.clone())));
        out.vars
            .extend(other.vars.iter().map(|(k, v)| (k.clone(), v.clone())));
        out
    }

    /// Only the symbols `f` uses, with its free variables declared.
    pub fn restricted_to(&self, f: &Formula) -> Signature {
        let used = f.symbols();
        let mut out = Signature::new();
        for (k, v) in &self.funs {
            if used.contains(k) {
                out.funs.insert(k.clone(), v.clone());
            }
        }
        for (k, v) in &self.rels {
            if used.contains(k) {
                out.rels.insert(k.clone(), v.clone());
            }
        }
        for v in f.free_vars() {
            out.vars.insert(v.name, v.ty);
        }
        out
    }

    /// Header lines in surface syntax, builtins omitted.
    pub fn header(&self) -> String {
        self.to_string()
    }
}

fn arg_list(args: &[FinType]) -> String {
    args.iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(" x ")
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, decl) in &self.funs {
            if BUILTIN_SYMBOLS.contains(&name.as_str()) {
                continue;
            }
            writeln!(f, "sym {} : {} -> {}", name, arg_list(&decl.args), decl.ret)?;
        }
        for (name, args) in &self.rels {
            writeln!(f, "rel {} : {}", name, arg_list(args))?;
        }
        for (name, ty) in &self.vars {
            writeln!(f, "var {} : {}", name, ty)?;
        }
        Ok(())
    }
}
