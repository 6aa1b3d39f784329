use std::collections::{BTreeMap, BTreeSet};

use crate::syntax::Formula;

/// Deterministic supply of globally unique names (`Xi1`, `sigma1`, `W1`, ...).
/// Seeded from the initial formula so that replaying a trace reproduces
/// the same names.
#[derive(Clone, Debug, Default)]
pub struct FreshSupply {
    used: BTreeSet<String>,
    counters: BTreeMap<String, usize>,
}

impl FreshSupply {
    pub fn for_formula(f: &Formula) -> FreshSupply {
        let mut used = f.all_names();
        used.extend(f.symbols());
        FreshSupply {
            used,
            counters: BTreeMap::new(),
        }
    }

    pub fn next(&mut self, base: &str) -> String {
        let counter = self.counters.entry(base.to_string()).or_insert(0);
        loop {
            *counter += 1;
            let name = format!("{}{}", base, counter);
            if self.used.insert(name.clone()) {
                return name;
            }
        }
    }

    /// Marks names as taken (e.g. after a bound variable was renamed).
    pub fn reserve(&mut self, names: impl IntoIterator<Item = String>) {
        self.used.extend(names);
    }

    pub fn used(&self) -> &BTreeSet<String> {
        &self.used
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skips_taken_names() {
        let f = Formula::Pred("Xi1".into(), vec![]);
        let mut s = FreshSupply::for_formula(&f);
        assert_eq!(s.next("Xi"), "Xi2");
        assert_eq!(s.next("Xi"), "Xi3");
        assert_eq!(s.next("W"), "W1");
    }
}
