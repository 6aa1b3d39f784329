//! Finite two-level models, evaluation, and the checks built on them:
//! soundness of the rewrite rules and validity of extracted terms.

mod check;
mod enumerate;
mod eval;
mod model;
mod soundness;
mod value;

pub use eval::{assignments, eval, eval_closed, eval_term, term_type, Env};
pub use model::{
    Interp, ModelConfig, NativeFn, TwoLevelModel, Universe, FULL_UNIVERSE, MAX_LEVEL, MAX_SIZE,
    SAMPLED_UNIVERSE,
};
pub use value::Value;
pub use check::{check_extraction, exhaustive_realiser, least_zero_realiser, truncated_realiser, ExtractionCheck};
pub use enumerate::{enumerate_models, Enumeration};
pub use soundness::{
    check_rule_soundness, Counterexample, SoundnessConfig, SoundnessReport, SOUND_RULES,
};

#[cfg(test)]
mod tests;
