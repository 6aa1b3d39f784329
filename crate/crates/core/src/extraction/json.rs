use serde::Serialize;
use serde_json::Value;

use super::extract::{ExtractionResult, Recipe};
use super::herbrand::Herbrandisation;
use crate::syntax::{print_formula, print_term};

#[derive(Serialize)]
struct WitnessJson<'a> {
    var: &'a str,
    ty: String,
    term: String,
    recipe: &'a Recipe,
    vacuous: bool,
}

#[derive(Serialize)]
struct ExtractionJson<'a> {
    witnesses: Vec<WitnessJson<'a>>,
    internal_sentence: String,
    collapsed: Option<String>,
}

#[derive(Serialize)]
struct HerbrandJson {
    i: String,
    o: String,
    body: String,
    vacuous: bool,
}

impl ExtractionResult {
    pub fn to_json(&self) -> Value {
        let doc = ExtractionJson {
            witnesses: self
                .witnesses
                .iter()
                .map(|w| WitnessJson {
                    var: &w.var.name,
                    ty: w.var.ty.to_string(),
                    term: print_term(&w.term),
                    recipe: &w.recipe,
                    vacuous: w.vacuous,
                })
                .collect(),
            internal_sentence: print_formula(&self.internal_sentence),
            collapsed: self.collapsed.as_ref().map(print_formula),
        };
        serde_json::to_value(doc).expect("extraction serialises")
    }
}

impl Herbrandisation {
    pub fn to_json(&self) -> Value {
        let doc = HerbrandJson {
            i: print_term(&self.i_term),
            o: print_term(&self.o_term),
            body: print_formula(&self.body),
            vacuous: self.vacuous,
        };
        serde_json::to_value(doc).expect("herbrandisation serialises")
    }
}
