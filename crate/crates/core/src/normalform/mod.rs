//! Rewriting of external formulas into the normal form
//! `!st x. ?st y. phi` with `phi` internal.

pub mod engine;
pub mod fresh;
pub mod measure;
pub mod rules;
pub mod stdext;
pub mod trace;

pub use engine::{is_normal_form, normalize, normalize_implication, NormalForm, MAX_STEPS};
pub use fresh::FreshSupply;
pub use measure::{measure, Measure};
pub use rules::{apply_rule, monotone_in, rewrite, Direction, Logic, Rewrite, RuleName};
pub use stdext::{expand_standard_extensionality, expand_standard_extensionality_term};
pub use trace::{RuleTrace, TraceStep};

#[cfg(test)]
mod tests;
