//! Terms, formulas and types of nonstandard higher-order arithmetic, with a
//! parser and canonical printer for the surface syntax.

pub mod alpha;
pub mod equality;
pub mod formula;
pub mod parse;
pub mod print;
pub mod signature;
pub mod subst;
pub mod term;
pub mod typecheck;
pub mod types;

pub use alpha::alpha_eq;
pub use equality::{classify_internal, erase_st, expand_equality, relativize_st, Internality};
pub use formula::{format_path, parse_path, polarity, post_order_paths, Bound, EqMode, Formula, Path, Quant};
pub use parse::{parse_document, parse_formula, parse_type};
pub use print::{print_formula, print_term};
pub use signature::{Signature, SymDecl};
pub use subst::{fresh_name, subst, subst_all, substitute};
pub use term::{Term, Var};
pub use typecheck::{typecheck, typecheck_formula, Context};
pub use types::FinType;
