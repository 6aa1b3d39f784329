//! Seeded soundness checks of the rewrite rules over small models.
//!
//! For each rule a schema produces random instances with internal
//! matrices; the rule is applied by the rewrite engine itself and the
//! result is compared with the original in every sampled model: an
//! equivalence must preserve truth both ways, any other rule must not turn
//! a true formula into a false one.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::eval::{eval, Env};
use super::model::{ModelConfig, TwoLevelModel};
use crate::error::{Error, Result};
use crate::normalform::{rewrite, Direction, FreshSupply, Logic, RuleName};
use crate::syntax::{print_formula, Bound, FinType, Formula, Quant, Signature, Term, Var};

/// Rules the default suite must find sound.
pub const SOUND_RULES: [RuleName; 11] = [
    RuleName::HGMPst,
    RuleName::HIPforallst,
    RuleName::HACint,
    RuleName::PrenexAndSt,
    RuleName::PrenexOrSt,
    RuleName::PrenexImpliesSt,
    RuleName::MarkovSt,
    RuleName::DropStAntecedent,
    RuleName::DoubleNegSt,
    RuleName::BoundedSearchSt,
    RuleName::SkolemAntecedent,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SoundnessConfig {
    /// Number of (model, instance) pairs to check.
    pub pairs: usize,
    pub max_size: u32,
    pub level: usize,
    pub seed: u64,
}

impl Default for SoundnessConfig {
    fn default() -> SoundnessConfig {
        SoundnessConfig {
            pairs: 1000,
            max_size: 3,
            level: 1,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub model: String,
    pub before: String,
    pub after: String,
    pub assignment: Vec<(String, String)>,
    pub before_holds: bool,
    pub after_holds: bool,
}

impl Counterexample {
    /// Human-readable dump.
    pub fn to_text(&self) -> String {
        let mut out = format!("model: {}", self.model);
        if !out.ends_with('\n') {
            out.push('\n');
        }
        out.push_str(&format!("before ({}): {}\n", self.before_holds, self.before));
        out.push_str(&format!("after  ({}): {}\n", self.after_holds, self.after));
        for (n, v) in &self.assignment {
            out.push_str(&format!("  {} = {}\n", n, v));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SoundnessReport {
    pub rule: RuleName,
    pub pairs: usize,
    /// Generated instances the rule declined; they are regenerated.
    pub skipped: usize,
    pub violations: usize,
    /// The first few violations, smallest domains first.
    pub counterexamples: Vec<Counterexample>,
    pub pass: bool,
}

const KEPT_COUNTEREXAMPLES: usize = 3;

fn seed_for(seed: u64, rule: RuleName) -> u64 {
    let mut h = DefaultHasher::new();
    (seed, rule.as_str()).hash(&mut h);
    h.finish()
}

/// Model shapes visited in turn: every size and cutoff, with sequence
/// bounds 1 and 2.
fn configs(c: &SoundnessConfig) -> Vec<ModelConfig> {
    let mut out = Vec::new();
    for size in 1..=c.max_size {
        for cutoff in 1..=size {
            for seq_len in [1, 2] {
                out.push(ModelConfig::new(size, cutoff).level(c.level).seq_len(seq_len).seed(c.seed));
            }
        }
    }
    out
}

pub fn check_rule_soundness(rule: RuleName, config: &SoundnessConfig) -> Result<SoundnessReport> {
    if !has_schema(rule) {
        return Err(Error::Shape(format!("no instance schema for rule {}", rule)));
    }
    let sig = Signature::new();
    let models = configs(config)
        .into_iter()
        .map(|c| TwoLevelModel::new(c, &sig))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(config.seed, rule));
    let mut report = SoundnessReport {
        rule,
        pairs: 0,
        skipped: 0,
        violations: 0,
        counterexamples: Vec::new(),
        pass: true,
    };
    let both_ways = rule.direction() == Direction::Equivalence;
    let mut found: Vec<(u32, Counterexample)> = Vec::new();
    while report.pairs < config.pairs {
        let (before, path) = instance(rule, &mut rng);
        let mut fresh = FreshSupply::for_formula(&before);
        let after = match rewrite(rule, &before, &path, Logic::Classical, &mut fresh) {
            Ok(r) => r.formula,
            Err(Error::Inapplicable { .. }) => {
                report.skipped += 1;
                if report.skipped > 20 * config.pairs.max(1) {
                    return Err(Error::Budget(format!("rule {} declines its own schema", rule)));
                }
                continue;
            }
            Err(e) => return Err(e),
        };
        let model = &models[report.pairs % models.len()];
        let env = random_env(&before, model, &mut rng)?;
        let b = eval(&before, model, &env)?;
        let a = eval(&after, model, &env)?;
        report.pairs += 1;
        if (b && !a) || (both_ways && a && !b) {
            report.violations += 1;
            found.push((
                model.size(),
                Counterexample {
                    model: model.to_string(),
                    before: print_formula(&before),
                    after: print_formula(&after),
                    assignment: env
                        .bindings()
                        .iter()
                        .map(|(n, v)| (n.clone(), v.to_string()))
                        .collect(),
                    before_holds: b,
                    after_holds: a,
                },
            ));
        }
    }
    found.sort_by_key(|(size, _)| *size);
    report.counterexamples = found
        .into_iter()
        .take(KEPT_COUNTEREXAMPLES)
        .map(|(_, c)| c)
        .collect();
    report.pass = report.violations == 0;
    Ok(report)
}

fn random_env(f: &Formula, m: &TwoLevelModel, rng: &mut ChaCha8Rng) -> Result<Env> {
    let mut env = Env::new();
    for v in f.free_vars() {
        m.check_level(&v.ty)?;
        let u = m.universe(&v.ty);
        env = env.with(&v.name, u.items[rng.gen_range(0..u.len())].clone());
    }
    Ok(env)
}

fn has_schema(rule: RuleName) -> bool {
    SOUND_RULES.contains(&rule) || rule == RuleName::Idealisation
}

/// Random generator of internal formulas over given variables.
struct Gen<'a> {
    rng: &'a mut ChaCha8Rng,
    counter: usize,
}

fn params() -> Vec<Var> {
    vec![Var::new("a", FinType::Base), Var::new("h", FinType::pure(1))]
}

impl Gen<'_> {
    fn term0(&mut self, vars: &[Var], depth: usize) -> Term {
        let zeros: Vec<&Var> = vars.iter().filter(|v| v.ty == FinType::Base).collect();
        let ones: Vec<&Var> = vars.iter().filter(|v| v.ty == FinType::pure(1)).collect();
        match self.rng.gen_range(0..7) {
            0 => Term::Zero,
            1 => Term::num(1),
            4 if depth > 0 && !ones.is_empty() => {
                let h = ones.choose(self.rng).unwrap().term();
                Term::app(h, self.term0(vars, depth - 1))
            }
            5 if depth > 0 => Term::Succ(Box::new(self.term0(vars, depth - 1))),
            _ if !zeros.is_empty() => zeros.choose(self.rng).unwrap().term(),
            _ => Term::Zero,
        }
    }

    fn compare(&mut self, l: Term, r: Term) -> Formula {
        match self.rng.gen_range(0..4) {
            0 => Formula::Eq(l, r),
            1 => Formula::Le(l, r),
            2 => Formula::Le(r, l),
            _ => Formula::not(Formula::Eq(l, r)),
        }
    }

    fn atom(&mut self, vars: &[Var]) -> Formula {
        let l = self.term0(vars, 1);
        let r = self.term0(vars, 1);
        self.compare(l, r)
    }

    /// An atom that mentions `v`.
    fn atom_with(&mut self, v: &Var, vars: &[Var]) -> Formula {
        let l = if v.ty == FinType::Base {
            v.term()
        } else {
            Term::app(v.term(), self.term0(vars, 0))
        };
        let r = self.term0(vars, 1);
        if self.rng.gen_bool(0.5) {
            self.compare(l, r)
        } else {
            self.compare(r, l)
        }
    }

    fn internal(&mut self, vars: &[Var], depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return self.atom(vars);
        }
        match self.rng.gen_range(0..6) {
            0 => Formula::not(self.internal(vars, depth - 1)),
            1 => Formula::and(self.internal(vars, depth - 1), self.internal(vars, depth - 1)),
            2 => Formula::or(self.internal(vars, depth - 1), self.internal(vars, depth - 1)),
            3 => Formula::implies(self.internal(vars, depth - 1), self.internal(vars, depth - 1)),
            k => {
                self.counter += 1;
                let i = Var::new(format!("i{}", self.counter), FinType::Base);
                let bound = self.term0(vars, 1);
                let mut inner = vars.to_vec();
                inner.push(i.clone());
                let body = self.internal(&inner, depth - 1);
                let b = if k == 4 { Bound::Exists } else { Bound::Forall };
                Formula::bounded(b, &i.name, bound, body)
            }
        }
    }

    /// An internal formula in which every variable of `must` occurs free.
    fn about(&mut self, must: &[Var], extra: &[Var]) -> Formula {
        let vars: Vec<Var> = must.iter().chain(extra).cloned().collect();
        let mut f = self.internal(&vars, 2);
        for v in must {
            if !f.is_free(&v.name) {
                let a = self.atom_with(v, &vars);
                f = match self.rng.gen_range(0..3) {
                    0 => Formula::and(f, a),
                    1 => Formula::or(a, f),
                    _ => Formula::implies(f, a),
                };
            }
        }
        f
    }

    fn low_type(&mut self) -> FinType {
        if self.rng.gen_bool(0.5) {
            FinType::Base
        } else {
            FinType::pure(1)
        }
    }

    fn st_quant(&mut self) -> Quant {
        if self.rng.gen_bool(0.5) {
            Quant::ForallSt
        } else {
            Quant::ExistsSt
        }
    }
}

/// A random instance of the rule's redex and the position to rewrite at.
fn instance(rule: RuleName, rng: &mut ChaCha8Rng) -> (Formula, Vec<usize>) {
    let mut g = Gen { rng, counter: 0 };
    let p = params();
    let zero = |n: &str| Var::new(n, FinType::Base);
    match rule {
        RuleName::PrenexAndSt | RuleName::PrenexOrSt | RuleName::PrenexImpliesSt => {
            let x = Var::new("x", g.low_type());
            let q = g.st_quant();
            let qf = Formula::quant(q, x.clone(), g.about(std::slice::from_ref(&x), &p));
            // the side formula may mention a free `x` of its own
            let mut side_vars = p.clone();
            if g.rng.gen_bool(0.3) {
                side_vars.push(zero("x"));
            }
            let side = g.internal(&side_vars, 2);
            let left = g.rng.gen_bool(0.5);
            let (l, r) = if left { (qf, side) } else { (side, qf) };
            let node = match rule {
                RuleName::PrenexAndSt => Formula::and(l, r),
                RuleName::PrenexOrSt => Formula::or(l, r),
                _ => Formula::implies(l, r),
            };
            if rule != RuleName::PrenexImpliesSt && g.rng.gen_bool(0.3) {
                // negative position: only st-existentials may move
                let fixed = if q == Quant::ExistsSt {
                    node
                } else {
                    let x2 = Var::new("x", x.ty.clone());
                    let qf = Formula::quant(Quant::ExistsSt, x2.clone(), g.about(&[x2], &p));
                    let side = g.internal(&p, 1);
                    if rule == RuleName::PrenexAndSt {
                        Formula::and(qf, side)
                    } else {
                        Formula::or(qf, side)
                    }
                };
                let concl = g.internal(&p, 1);
                return (Formula::implies(fixed, concl), vec![0]);
            }
            (node, vec![])
        }
        RuleName::MarkovSt | RuleName::DoubleNegSt => {
            let x = Var::new("x", g.low_type());
            let q = g.st_quant();
            let inner = Formula::quant(q, x.clone(), g.about(&[x], &p));
            let node = if rule == RuleName::MarkovSt {
                Formula::not(inner)
            } else {
                Formula::not(Formula::not(inner))
            };
            (node, vec![])
        }
        RuleName::DropStAntecedent => {
            let x = Var::new("x", g.low_type());
            let ant = Formula::quant(Quant::ForallSt, x.clone(), g.about(&[x], &p));
            let concl = g.internal(&p, 2);
            (Formula::implies(ant, concl), vec![0])
        }
        RuleName::HGMPst => {
            let x = zero("x");
            let ant = Formula::quant(Quant::ForallSt, x.clone(), g.about(&[x], &p));
            let concl = g.internal(&p, 2);
            (Formula::implies(ant, concl), vec![])
        }
        RuleName::HIPforallst => {
            let y = zero("y");
            let ant = if g.rng.gen_bool(0.7) {
                let x = zero("x");
                Formula::quant(Quant::ForallSt, x.clone(), g.about(&[x], &p))
            } else {
                g.internal(&p, 2)
            };
            let concl = Formula::quant(Quant::ExistsSt, y.clone(), g.about(&[y], &p));
            (Formula::implies(ant, concl), vec![])
        }
        RuleName::HACint => {
            let (x, y) = (zero("x"), zero("y"));
            let body = g.about(&[x.clone(), y.clone()], &p);
            (
                Formula::quant(Quant::ForallSt, x, Formula::quant(Quant::ExistsSt, y, body)),
                vec![],
            )
        }
        RuleName::Idealisation => {
            let s = Var::new("s", FinType::seq(FinType::Base));
            let (y, z) = (zero("y"), zero("z"));
            let body = g.about(&[z.clone(), y.clone()], &p[..1]);
            let f = Formula::quant(
                Quant::ForallSt,
                s.clone(),
                Formula::quant(
                    Quant::Exists,
                    y,
                    Formula::member(Bound::Forall, z, s.term(), body),
                ),
            );
            (f, vec![])
        }
        RuleName::BoundedSearchSt => {
            let m = zero("m");
            let body = g.about(std::slice::from_ref(&m), &p);
            (Formula::quant(Quant::ExistsSt, m, body), vec![])
        }
        RuleName::SkolemAntecedent => {
            let (x, y) = (zero("x"), zero("y"));
            let body = g.about(&[x.clone(), y.clone()], &p);
            let ant = Formula::quant(Quant::ForallSt, x, Formula::quant(Quant::ExistsSt, y, body));
            let concl = g.internal(&p, 2);
            (Formula::implies(ant, concl), vec![0])
        }
        _ => unreachable!("rules without a schema are rejected earlier"),
    }
}
