//! Reference texts of the displayed formulas, compared up to renaming of
//! bound variables. Each file carries its own declaration header.

use std::path::Path;

use crate::error::{Error, Result};
use crate::syntax::{alpha_eq, parse_document, Formula, Signature};

pub const GOLDEN_NAMES: [&str; 11] = [
    "curk", "frok", "fras", "finkal", "tokamak", "structure", "bling", "HIO", "frood", "frood2",
    "froodke",
];

const BUILTIN: [(&str, &str); 11] = [
    ("curk", include_str!("../../golden/curk.txt")),
    ("frok", include_str!("../../golden/frok.txt")),
    ("fras", include_str!("../../golden/fras.txt")),
    ("finkal", include_str!("../../golden/finkal.txt")),
    ("tokamak", include_str!("../../golden/tokamak.txt")),
    ("structure", include_str!("../../golden/structure.txt")),
    ("bling", include_str!("../../golden/bling.txt")),
    ("HIO", include_str!("../../golden/HIO.txt")),
    ("frood", include_str!("../../golden/frood.txt")),
    ("frood2", include_str!("../../golden/frood2.txt")),
    ("froodke", include_str!("../../golden/froodke.txt")),
];

/// The reference text shipped with the library.
pub fn builtin_golden(name: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Reads `<dir>/<name>.txt`, or the shipped text when no directory is given.
pub fn read_golden(name: &str, dir: Option<&Path>) -> Result<String> {
    match dir {
        Some(d) => {
            let path = d.join(format!("{}.txt", name));
            std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {}", path.display(), e)))
        }
        None => builtin_golden(name)
            .map(str::to_string)
            .ok_or_else(|| Error::Io(format!("no reference text named `{}`", name))),
    }
}

pub fn parse_golden(text: &str) -> Result<(Signature, Formula)> {
    parse_document(text, &Signature::new())
}

/// Does `formula` agree with the reference text up to bound renaming?
pub fn golden_matches(name: &str, formula: &Formula, dir: Option<&Path>) -> Result<bool> {
    let (_, expected) = parse_golden(&read_golden(name, dir)?)?;
    Ok(alpha_eq(formula, &expected))
}

/// Header plus formula, in the format of the reference files.
pub fn golden_text(signature: &Signature, formula: &Formula) -> String {
    format!(
        "{}{}\n",
        signature.restricted_to(formula),
        crate::syntax::print_formula(formula)
    )
}
