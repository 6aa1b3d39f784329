//! Surface-syntax encodings of the principles. Uniform versions are not
//! written by hand: they are computed from the zoo statements by
//! [`uniformize`](super::uniformize).

use serde::{Deserialize, Serialize};

use super::uniform::uniformize;
use crate::error::{Error, Result};
use crate::syntax::{parse_document, print_formula, Formula, Signature, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    Zoo,
    Uniform,
    UniformPlus,
    Comprehension,
    Transfer,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Principle {
    pub name: String,
    pub kind: Kind,
    pub signature: Signature,
    pub statement: Formula,
    /// Zoo principles: the existentials that the uniform version realises
    /// by components of its functional, in component order.
    pub witnesses: Vec<String>,
    /// Uniform principles: the realising functional.
    pub functional: Option<Var>,
}

impl Principle {
    pub fn text(&self) -> String {
        format!("{}{}\n", self.signature, print_formula(&self.statement))
    }
}

struct Entry {
    name: &'static str,
    kind: Kind,
    witnesses: &'static [&'static str],
    /// Name of the functional in the uniform version.
    functional: &'static str,
    text: &'static str,
}

const KLEENE: &str = "rel T : 0 x 0 x 1 x 0 x 0\n";

const ENTRIES: &[Entry] = &[
    Entry {
        name: "DNR",
        kind: Kind::Zoo,
        witnesses: &["f"],
        functional: "Psi",
        text: "!A:1. ?f:1. !e:0. !s:0. !m:0. T(e,s,A,e,m) -> app(f,e) != m",
    },
    Entry {
        name: "Pi01G",
        kind: Kind::Zoo,
        witnesses: &["G", "s"],
        functional: "Phi",
        text: "sym code : 0 x 0 -> 0\n\
               sym code3 : 0 x 0 x 0 -> 0\n\
               rel Bin : 0\n\
               rel Ext : 0 x 0\n\
               rel Init : 0 x 1\n\
               !f:1. !g:1. ?G:1. \
               (!i:0. !tau:0. Bin(tau) -> Ext(app(g,code(i,tau)),tau) \
               & !k:0. app(f,code3(k,i,app(g,code(i,tau)))) != 0) \
               -> !i:0. ?s:0. Init(s,G) & !k:0. app(f,code3(k,i,s)) != 0",
    },
    Entry {
        name: "1GEN",
        kind: Kind::Zoo,
        witnesses: &["Y", "n", "m"],
        functional: "Phi",
        text: "sym code3 : 0 x 0 x 0 -> 0\n\
               sym seg : 1 x 0 -> 0\n\
               sym lh : 0 -> 0\n\
               rel Ext : 0 x 0\n\
               !X:1. ?Y:1. !f:1. \
               (?n:0. ?t:0. app(f,code3(seg(Y,n),t,seg(X,lh(t)))) = 0) \
               | ?m:0. !s:0. Ext(s,seg(Y,m)) -> ~(?t:0. app(f,code3(s,t,seg(X,lh(t)))) = 0)",
    },
    Entry {
        name: "HYP",
        kind: Kind::Zoo,
        witnesses: &["g", "n"],
        functional: "Phi",
        text: "!f:1. ?g:1. !e:0. !k:0. ?n:0. k <= n & !m:0. !s:0. T(e,s,f,n,m) -> m < app(g,n)",
    },
    Entry {
        name: "NCS",
        kind: Kind::Zoo,
        witnesses: &["g", "n"],
        functional: "Phi",
        text: "!f:1. ?g:1. !e:0. ?n:0. !s:0. !m:0. T(e,s,f,n,m) -> app(g,n) != m",
    },
    Entry {
        name: "KPT",
        kind: Kind::Zoo,
        witnesses: &["g", "h"],
        functional: "Phi",
        text: "rel TRed : 1 x 1 x 1\n\
               rel TInc : 1 x 1\n\
               !f:1. ?g:1. ?h:1. TRed(f,g,h) & TInc(g,h)",
    },
    Entry {
        name: "PI01-TRANS",
        kind: Kind::Transfer,
        witnesses: &[],
        functional: "",
        text: "!st f:1. (?n:0. app(f,n) = 0) -> ?st m:0. app(f,m) = 0",
    },
    Entry {
        name: "MU2",
        kind: Kind::Comprehension,
        witnesses: &[],
        functional: "",
        text: "?mu:2. !f:1. (?n:0. app(f,n) = 0) -> app(f,app(mu,f)) = 0",
    },
    Entry {
        name: "E2",
        kind: Kind::Comprehension,
        witnesses: &[],
        functional: "",
        text: "?phi:2. !f:1. (app(phi,f) = 0 -> ?n:0. app(f,n) != 0) \
               & ((?n:0. app(f,n) != 0) -> app(phi,f) = 0)",
    },
];

/// Names accepted by [`get_principle`], aliases excluded.
pub const PRINCIPLE_NAMES: [&str; 15] = [
    "DNR", "UDNR", "Pi01G", "UPi01G", "1GEN", "U1G", "HYP", "UHYP", "NCS", "UNCS", "KPT",
    "UKPT", "PI01-TRANS", "MU2", "E2",
];

/// Principles whose uniform versions have no displayed encoding of their
/// own and are represented by an equivalent uniform principle.
pub const ALIASES: [(&str, &str); 4] = [
    ("OPT", "UHYP"),
    ("AMT", "UHYP"),
    ("SADS", "UHYP"),
    ("AST", "UNCS"),
];

/// The zoo principles run through the full pipeline.
pub const PIPELINE_PRINCIPLES: [&str; 9] = [
    "Pi01G", "1GEN", "OPT", "AMT", "SADS", "AST", "NCS", "KPT", "DNR",
];

fn entry(name: &str) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.name == name)
}

fn load(e: &Entry) -> Result<Principle> {
    let source = if e.name == "DNR" || e.name == "HYP" || e.name == "NCS" {
        format!("{}{}", KLEENE, e.text)
    } else {
        e.text.to_string()
    };
    let (signature, statement) = parse_document(&source, &Signature::new())?;
    Ok(Principle {
        name: e.name.to_string(),
        kind: e.kind,
        signature,
        statement,
        witnesses: e.witnesses.iter().map(|w| w.to_string()).collect(),
        functional: None,
    })
}

pub fn resolve_alias(name: &str) -> &str {
    ALIASES
        .iter()
        .find(|(a, _)| *a == name)
        .map(|(_, target)| *target)
        .unwrap_or(name)
}

pub fn get_principle(name: &str) -> Result<Principle> {
    if name == "FIP" {
        return Err(Error::NotEncoded(
            "FIP".into(),
            "its uniform version is only reduced to arithmetical comprehension in prose; \
             no statement is available to encode"
                .into(),
        ));
    }
    let name = resolve_alias(name);
    if let Some(e) = entry(name) {
        return load(e);
    }
    if let Some(e) = zoo_of(name).and_then(entry) {
        let mut u = uniformize(&load(e)?, e.functional)?;
        u.name = name.to_string();
        return Ok(u);
    }
    Err(Error::UnknownPrinciple(name.to_string()))
}

/// The zoo principle a uniform name derives from, if any.
pub fn zoo_of(name: &str) -> Option<&'static str> {
    let name = resolve_alias(name);
    UNIFORM_OF
        .iter()
        .find(|(_, u)| *u == name)
        .map(|(z, _)| *z)
}

/// Uniform version of a zoo principle, by name.
pub fn uniform_name(zoo: &str) -> Option<&'static str> {
    UNIFORM_OF.iter().find(|(z, _)| *z == zoo).map(|(_, u)| *u)
}

const UNIFORM_OF: [(&str, &str); 6] = [
    ("DNR", "UDNR"),
    ("Pi01G", "UPi01G"),
    ("1GEN", "U1G"),
    ("HYP", "UHYP"),
    ("NCS", "UNCS"),
    ("KPT", "UKPT"),
];

/// Preferred name of the realising functional of a zoo principle.
pub fn functional_name(zoo: &str) -> &'static str {
    entry(zoo).map(|e| e.functional).unwrap_or("Phi")
}
