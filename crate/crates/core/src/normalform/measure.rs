//! Lexicographic termination measure; every rewrite step must decrease it.

use serde::Serialize;

use crate::syntax::{Formula, Quant};

use super::rules::bounded_search_candidate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Measure {
    /// Unexpanded `==[T]`, `~~[T]` and `stdext` nodes.
    pub abbreviations: usize,
    /// Sum over st-quantifiers of (propositional connectives above + 1).
    pub st_depth: usize,
    /// Pairs (st-universal, st-existential below it).
    pub alternations: usize,
    /// st-existentials still awaiting a bounded search.
    pub unbounded_searches: usize,
    pub size: usize,
}

pub fn measure(f: &Formula) -> Measure {
    let mut m = Measure {
        abbreviations: 0,
        st_depth: 0,
        alternations: 0,
        unbounded_searches: 0,
        size: f.size(),
    };
    walk(f, f, &mut Vec::new(), 0, 0, &mut m);
    m
}

fn walk(
    root: &Formula,
    f: &Formula,
    path: &mut Vec<usize>,
    connectives: usize,
    universals_above: usize,
    m: &mut Measure,
) {
    let mut connectives_below = connectives;
    let mut universals = universals_above;
    match f {
        Formula::HigherEq(..) | Formula::StdExt(_) => m.abbreviations += 1,
        Formula::Quant(q, _, _) if q.is_st() => {
            m.st_depth += connectives + 1;
            if *q == Quant::ExistsSt {
                m.alternations += universals_above;
                if bounded_search_candidate(root, path).is_some() {
                    m.unbounded_searches += 1;
                }
            } else {
                universals += 1;
            }
        }
        Formula::Not(_) | Formula::And(..) | Formula::Or(..) | Formula::Implies(..) => {
            connectives_below += 1
        }
        _ => {}
    }
    for (i, c) in f.children().into_iter().enumerate() {
        path.push(i);
        walk(root, c, path, connectives_below, universals, m);
        path.pop();
    }
}
