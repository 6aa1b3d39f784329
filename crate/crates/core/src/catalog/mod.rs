//! Encodings of the principles, the uniform and plus-version constructors,
//! and the end-to-end pipeline.

pub mod explicit;
pub mod golden;
pub mod pipeline;
pub mod principles;
pub mod uniform;

pub use explicit::{explicit_equivalence, explicit_search_term, search_operator, search_point};
pub use golden::{
    builtin_golden, golden_matches, golden_text, parse_golden, read_golden, GOLDEN_NAMES,
};
pub use pipeline::{
    pipeline, pipeline_with, soundness_verdict, Artifacts, PipelineError, PipelineOptions, Report,
    StageEntry, Status, Verdict, CONSEQUENT,
};

pub use principles::{
    functional_name, get_principle, resolve_alias, uniform_name, zoo_of, Kind, Principle,
    ALIASES, PIPELINE_PRINCIPLES, PRINCIPLE_NAMES,
};
pub use uniform::{erase_functional, plus_version, uniformize, uniformize_detailed, Uniformization, WitnessSite};

#[cfg(test)]
mod tests;
