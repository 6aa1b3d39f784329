//! Enumeration of the small models of a signature.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::{Interp, ModelConfig, TwoLevelModel, MAX_SIZE};
use super::value::Value;
use crate::error::{Error, Result};
use crate::syntax::signature::BUILTIN_SYMBOLS;
use crate::syntax::Signature;

/// Parameters of a model enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub max_size: u32,
    pub level: usize,
    pub seq_len: usize,
    /// Models per (size, cutoff) pair beyond which interpretations are
    /// sampled instead of enumerated.
    pub budget: usize,
    pub seed: u64,
}

impl Default for Enumeration {
    fn default() -> Enumeration {
        Enumeration {
            max_size: 3,
            level: 1,
            seq_len: 2,
            budget: 64,
            seed: 0,
        }
    }
}

/// The possible tables of one symbol: for each argument tuple, its
/// admissible values. Standard arguments only map to standard values.
fn table_choices(m: &TwoLevelModel, name: &str) -> Option<Vec<(Vec<Value>, Vec<Value>)>> {
    let decl = &m.signature.funs[name];
    let mut tuples: Vec<Vec<Value>> = vec![vec![]];
    for a in &decl.args {
        let u = m.universe(a);
        if tuples.len() * u.len() > 4096 {
            return None;
        }
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                u.items.iter().map(move |x| {
                    let mut t = t.clone();
                    t.push(x.clone());
                    t
                })
            })
            .collect();
    }
    Some(
        tuples
            .into_iter()
            .map(|t| {
                let std_args = t.iter().zip(&decl.args).all(|(x, ty)| m.is_standard(x, ty));
                let pool = if std_args { m.standard(&decl.ret) } else { m.universe(&decl.ret) };
                (t, pool.items.clone())
            })
            .collect(),
    )
}

/// Every table described by `choices`, or `None` if there are more than
/// `limit`.
fn all_tables(
    choices: &[(Vec<Value>, Vec<Value>)],
    limit: usize,
) -> Option<Vec<BTreeMap<Vec<Value>, Value>>> {
    let mut count = 1usize;
    for (_, vals) in choices {
        count = count.checked_mul(vals.len())?;
        if count > limit {
            return None;
        }
    }
    let mut out = vec![BTreeMap::new()];
    for (args, vals) in choices {
        out = out
            .into_iter()
            .flat_map(|t| {
                vals.iter().map(move |v| {
                    let mut t = t.clone();
                    t.insert(args.clone(), v.clone());
                    t
                })
            })
            .collect();
    }
    Some(out)
}

/// All models of the signature up to `max_size`, with every standard
/// cutoff. Interpretations are enumerated exhaustively when there are at
/// most `budget` of them for a given size and cutoff, and sampled
/// otherwise.
pub fn enumerate_models(signature: &Signature, e: &Enumeration) -> Result<Vec<TwoLevelModel>> {
    if e.max_size > MAX_SIZE {
        return Err(Error::Bounds(format!(
            "domain size {} above {}",
            e.max_size, MAX_SIZE
        )));
    }
    let symbols: Vec<&String> = signature
        .funs
        .keys()
        .filter(|k| !BUILTIN_SYMBOLS.contains(&k.as_str()))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(e.seed);
    let mut out = Vec::new();
    for size in 1..=e.max_size {
        for cutoff in 1..=size {
            let config = ModelConfig::new(size, cutoff).level(e.level).seq_len(e.seq_len).seed(e.seed);
            let base = TwoLevelModel::new(config, signature)?;
            if symbols.is_empty() && signature.rels.is_empty() {
                out.push(base);
                continue;
            }
            match exhaustive(&base, &symbols, e.budget) {
                Some(models) if signature.rels.is_empty() => out.extend(models),
                _ => {
                    for _ in 0..e.budget {
                        let seed: u64 = rng.gen();
                        out.push(TwoLevelModel::new(config.seed(seed), signature)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn exhaustive(base: &TwoLevelModel, symbols: &[&String], budget: usize) -> Option<Vec<TwoLevelModel>> {
    let mut models = vec![base.clone()];
    for name in symbols {
        let choices = table_choices(base, name)?;
        let tables = all_tables(&choices, budget)?;
        if models.len() * tables.len() > budget {
            return None;
        }
        models = models
            .into_iter()
            .flat_map(|m| {
                tables
                    .iter()
                    .map(move |t| m.clone().with_interp(name, Interp::Table(t.clone())))
            })
            .collect();
    }
    Some(models)
}
