//! Explicit witnesses from normal forms, the max-collapse of monotone number
//! witnesses, and Herbrandisations with their meta-reversal.

mod extract;
mod herbrand;
mod json;

pub use extract::{
    collapse_all, collapse_monotone, extract, simplify_max0, witness_symbol, ExtractionResult,
    Recipe, Witness,
};
pub use herbrand::{extensionality_clause, herbrandise, meta_reverse, Herbrandisation, I_SYMBOL, O_SYMBOL};
