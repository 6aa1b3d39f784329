//! Finite two-level models: every type is interpreted over a bounded
//! universe with a distinguished standard part.
//!
//! The base type is `{0, ..., size-1}` with standard part `{0, ..., cutoff-1}`.
//! Functions are full tables when there are few of them and a seeded sample
//! otherwise; a function is standard when it maps standard arguments to
//! standard values. Sequences have length at most `seq_len`.

use std::cell::RefCell;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::value::Value;
use crate::error::{Error, Result};
use crate::syntax::{FinType, Signature};

/// Largest base domain a model may have.
pub const MAX_SIZE: u32 = 4;
/// Highest type level a model may interpret.
pub const MAX_LEVEL: usize = 2;
/// Universes up to this many elements are enumerated in full.
pub const FULL_UNIVERSE: usize = 4096;
/// Size of a sampled universe.
pub const SAMPLED_UNIVERSE: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelConfig {
    pub size: u32,
    pub cutoff: u32,
    pub level: usize,
    pub seq_len: usize,
    pub seed: u64,
}

impl ModelConfig {
    pub fn new(size: u32, cutoff: u32) -> ModelConfig {
        ModelConfig {
            size,
            cutoff,
            level: 1,
            seq_len: 2,
            seed: 0,
        }
    }

    pub fn level(mut self, level: usize) -> ModelConfig {
        self.level = level;
        self
    }

    pub fn seq_len(mut self, seq_len: usize) -> ModelConfig {
        self.seq_len = seq_len;
        self
    }

    pub fn seed(mut self, seed: u64) -> ModelConfig {
        self.seed = seed;
        self
    }
}

/// The elements of one type, in a fixed order.
#[derive(Debug)]
pub struct Universe {
    pub items: Vec<Value>,
    index: HashMap<Value, usize>,
    /// Every element of the type is present.
    pub complete: bool,
}

impl Universe {
    fn new(items: Vec<Value>, complete: bool) -> Universe {
        let index = items.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Universe {
            items,
            index,
            complete,
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn position(&self, v: &Value) -> Option<usize> {
        self.index.get(v).copied()
    }
}

pub type NativeFn = Rc<dyn Fn(&TwoLevelModel, &[Value]) -> Result<Value>>;

/// How a function symbol is interpreted.
#[derive(Clone)]
pub enum Interp {
    /// A deterministic pseudo-random function that keeps standard
    /// arguments standard.
    Hashed(u64),
    /// An explicit finite table; missing entries fall back to hashing.
    Table(BTreeMap<Vec<Value>, Value>),
    Native(NativeFn),
}

impl fmt::Debug for Interp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interp::Hashed(salt) => write!(f, "Hashed({})", salt),
            Interp::Table(t) => write!(f, "Table({} entries)", t.len()),
            Interp::Native(_) => f.write_str("Native"),
        }
    }
}

/// A finite model of the two-level language.
#[derive(Clone, Debug)]
pub struct TwoLevelModel {
    pub config: ModelConfig,
    pub signature: Signature,
    funs: BTreeMap<String, Interp>,
    rels: BTreeMap<String, u64>,
    universes: RefCell<HashMap<FinType, Rc<Universe>>>,
    standard: RefCell<HashMap<FinType, Rc<Universe>>>,
}

fn hash_of(parts: impl Hash) -> u64 {
    let mut h = DefaultHasher::new();
    parts.hash(&mut h);
    h.finish()
}

impl TwoLevelModel {
    /// A model whose symbols are all interpreted by hashing with `seed`.
    pub fn new(config: ModelConfig, signature: &Signature) -> Result<TwoLevelModel> {
        if config.size == 0 || config.size > MAX_SIZE {
            return Err(Error::Bounds(format!(
                "domain size {} outside 1..={}",
                config.size, MAX_SIZE
            )));
        }
        if config.cutoff == 0 || config.cutoff > config.size {
            return Err(Error::Bounds(format!(
                "standard cutoff {} outside 1..={}",
                config.cutoff, config.size
            )));
        }
        if config.level > MAX_LEVEL {
            return Err(Error::Bounds(format!(
                "type level {} above {}",
                config.level, MAX_LEVEL
            )));
        }
        let funs = signature
            .funs
            .keys()
            .map(|k| (k.clone(), Interp::Hashed(hash_of((config.seed, k)))))
            .collect();
        let rels = signature
            .rels
            .keys()
            .map(|k| (k.clone(), hash_of((config.seed, "rel", k))))
            .collect();
        Ok(TwoLevelModel {
            config,
            signature: signature.clone(),
            funs,
            rels,
            universes: RefCell::default(),
            standard: RefCell::default(),
        })
    }

    pub fn size(&self) -> u32 {
        self.config.size
    }

    pub fn cutoff(&self) -> u32 {
        self.config.cutoff
    }

    pub fn with_interp(mut self, name: &str, interp: Interp) -> TwoLevelModel {
        self.funs.insert(name.to_string(), interp);
        self
    }

    pub fn interp(&self, name: &str) -> Option<&Interp> {
        self.funs.get(name)
    }

    pub fn check_level(&self, ty: &FinType) -> Result<()> {
        if ty.level() > self.config.level {
            return Err(Error::Bounds(format!(
                "type {} has level {}, the model interprets up to {}",
                ty,
                ty.level(),
                self.config.level
            )));
        }
        Ok(())
    }

    fn rng_for(&self, ty: &FinType) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(hash_of((self.config.seed, ty.to_string())))
    }

    /// All (or a sample of the) elements of `ty`.
    pub fn universe(&self, ty: &FinType) -> Rc<Universe> {
        if let Some(u) = self.universes.borrow().get(ty) {
            return u.clone();
        }
        let u = Rc::new(self.build_universe(ty));
        self.universes.borrow_mut().insert(ty.clone(), u.clone());
        u
    }

    /// The standard elements of the universe of `ty`.
    pub fn standard(&self, ty: &FinType) -> Rc<Universe> {
        if let Some(u) = self.standard.borrow().get(ty) {
            return u.clone();
        }
        let all = self.universe(ty);
        let items: Vec<Value> = all
            .items
            .iter()
            .filter(|v| self.is_standard(v, ty))
            .cloned()
            .collect();
        let u = Rc::new(Universe::new(items, all.complete));
        self.standard.borrow_mut().insert(ty.clone(), u.clone());
        u
    }

    pub fn is_standard(&self, v: &Value, ty: &FinType) -> bool {
        match (v, ty) {
            (Value::Num(n), FinType::Base) => *n < self.config.cutoff,
            (Value::Pair(p), FinType::Prod(l, r)) => {
                self.is_standard(&p.0, l) && self.is_standard(&p.1, r)
            }
            (Value::Seq(items), FinType::Seq(e)) => items.iter().all(|x| self.is_standard(x, e)),
            (Value::Fun(table), FinType::Arrow(d, c)) => {
                let dom = self.universe(d);
                dom.items
                    .iter()
                    .zip(table.iter())
                    .all(|(x, y)| !self.is_standard(x, d) || self.is_standard(y, c))
            }
            _ => false,
        }
    }

    /// A canonical standard element of `ty`.
    pub fn default_value(&self, ty: &FinType) -> Value {
        match ty {
            FinType::Base => Value::Num(0),
            FinType::Prod(l, r) => Value::pair(self.default_value(l), self.default_value(r)),
            FinType::Seq(_) => Value::seq(vec![]),
            FinType::Arrow(d, c) => {
                Value::fun(vec![self.default_value(c); self.universe(d).len()])
            }
        }
    }

    /// Applies a function value of type `dom -> cod`.
    pub fn apply(&self, f: &Value, dom: &FinType, x: &Value) -> Result<Value> {
        let Value::Fun(table) = f else {
            return Err(Error::type_err(f, "applied value is not a function"));
        };
        let pos = self.universe(dom).position(x).ok_or_else(|| {
            Error::Bounds(format!("argument {} lies outside the sampled universe of {}", x, dom))
        })?;
        Ok(table[pos].clone())
    }

    /// Builds a function value of type `dom -> cod` from its behaviour.
    pub fn tabulate(&self, dom: &FinType, f: impl Fn(&Value) -> Value) -> Value {
        Value::fun(self.universe(dom).items.iter().map(f).collect())
    }

    /// Picks an element of `ty` from a hash, standard when `standard` holds.
    pub fn pick(&self, ty: &FinType, h: u64, standard: bool) -> Value {
        let u = if standard { self.standard(ty) } else { self.universe(ty) };
        if u.is_empty() {
            return self.default_value(ty);
        }
        u.items[(h % u.len() as u64) as usize].clone()
    }

    /// Value of a function symbol on arguments.
    pub fn call(&self, name: &str, args: &[Value]) -> Result<Value> {
        match name {
            "sel" => return Ok(builtin_sel(args)),
            "dec0" => return self.builtin_dec0(args),
            "dec1" => return self.builtin_dec1(args),
            _ => {}
        }
        let decl = self
            .signature
            .funs
            .get(name)
            .ok_or_else(|| Error::Undeclared(name.to_string()))?;
        let std_args = args.iter().zip(&decl.args).all(|(a, t)| self.is_standard(a, t));
        match self.funs.get(name) {
            Some(Interp::Native(f)) => f(self, args),
            Some(Interp::Table(t)) => Ok(t.get(args).cloned().unwrap_or_else(|| {
                self.pick(&decl.ret, hash_of((name, args)), std_args)
            })),
            Some(Interp::Hashed(salt)) => Ok(self.pick(&decl.ret, hash_of((salt, args)), std_args)),
            None => Ok(self.pick(&decl.ret, hash_of((self.config.seed, name, args)), std_args)),
        }
    }

    /// Truth value of a relation symbol.
    pub fn holds(&self, name: &str, args: &[Value]) -> Result<bool> {
        let salt = self
            .rels
            .get(name)
            .ok_or_else(|| Error::Undeclared(name.to_string()))?;
        Ok(hash_of((salt, args)) & 1 == 1)
    }

    fn clamp(&self, n: u32) -> u32 {
        n.min(self.config.size - 1)
    }

    fn builtin_dec0(&self, args: &[Value]) -> Result<Value> {
        let k = args[1].as_num().unwrap_or(0);
        self.apply(&args[0], &FinType::Base, &Value::Num(self.clamp(k)))
    }

    /// Component `k` of a coded tuple, read as the shifted function.
    fn builtin_dec1(&self, args: &[Value]) -> Result<Value> {
        let Value::Fun(z) = &args[0] else {
            return Err(Error::type_err(&args[0], "decoder applied to a non-function"));
        };
        let k = args[1].as_num().unwrap_or(0) as usize;
        let n = z.len();
        Ok(Value::fun((0..n).map(|j| z[(j + k) % n].clone()).collect()))
    }

    fn build_universe(&self, ty: &FinType) -> Universe {
        match ty {
            FinType::Base => Universe::new((0..self.config.size).map(Value::Num).collect(), true),
            FinType::Prod(l, r) => {
                let (ul, ur) = (self.universe(l), self.universe(r));
                if ul.len() * ur.len() <= FULL_UNIVERSE {
                    let items = ul
                        .items
                        .iter()
                        .flat_map(|a| ur.items.iter().map(move |b| Value::pair(a.clone(), b.clone())))
                        .collect();
                    Universe::new(items, ul.complete && ur.complete)
                } else {
                    let mut rng = self.rng_for(ty);
                    let items = sample_distinct(&mut rng, |rng| {
                        Value::pair(
                            ul.items[rng.gen_range(0..ul.len())].clone(),
                            ur.items[rng.gen_range(0..ur.len())].clone(),
                        )
                    });
                    Universe::new(items, false)
                }
            }
            FinType::Seq(e) => {
                let ue = self.universe(e);
                let count: f64 = (0..=self.config.seq_len)
                    .map(|l| (ue.len() as f64).powi(l as i32))
                    .sum();
                if count <= FULL_UNIVERSE as f64 {
                    let mut items = vec![Value::seq(vec![])];
                    let mut layer: Vec<Vec<Value>> = vec![vec![]];
                    for _ in 0..self.config.seq_len {
                        let mut next = Vec::new();
                        for prefix in &layer {
                            for x in &ue.items {
                                let mut s = prefix.clone();
                                s.push(x.clone());
                                items.push(Value::seq(s.clone()));
                                next.push(s);
                            }
                        }
                        layer = next;
                    }
                    Universe::new(items, ue.complete)
                } else {
                    let mut rng = self.rng_for(ty);
                    let max = self.config.seq_len;
                    let mut items = vec![Value::seq(vec![])];
                    items.extend(sample_distinct(&mut rng, |rng| {
                        let l = rng.gen_range(0..=max);
                        Value::seq((0..l).map(|_| ue.items[rng.gen_range(0..ue.len())].clone()).collect())
                    }));
                    Universe::new(dedup(items), false)
                }
            }
            FinType::Arrow(d, c) => {
                let (ud, uc) = (self.universe(d), self.universe(c));
                let count = (uc.len() as f64).powi(ud.len() as i32);
                if count <= FULL_UNIVERSE as f64 {
                    let mut items = Vec::new();
                    let mut digits = vec![0usize; ud.len()];
                    loop {
                        items.push(Value::fun(digits.iter().map(|&i| uc.items[i].clone()).collect()));
                        let mut pos = 0;
                        while pos < digits.len() && digits[pos] + 1 == uc.len() {
                            digits[pos] = 0;
                            pos += 1;
                        }
                        if pos == digits.len() {
                            break;
                        }
                        digits[pos] += 1;
                    }
                    Universe::new(items, ud.complete && uc.complete)
                } else {
                    // random tables, plus as many that respect the standard part
                    let mut rng = self.rng_for(ty);
                    let sc = self.standard(c);
                    let std_dom: Vec<bool> = ud.items.iter().map(|x| self.is_standard(x, d)).collect();
                    let mut items = vec![self.default_value(ty)];
                    for k in 0..SAMPLED_UNIVERSE {
                        let closed = k % 2 == 0;
                        items.push(Value::fun(
                            std_dom
                                .iter()
                                .map(|&s| {
                                    let pool = if closed && s { &sc } else { &uc };
                                    pool.items[rng.gen_range(0..pool.len())].clone()
                                })
                                .collect(),
                        ));
                    }
                    Universe::new(dedup(items), false)
                }
            }
        }
    }
}

fn builtin_sel(args: &[Value]) -> Value {
    match (&args[0], args[1].as_num()) {
        (Value::Pair(p), Some(0)) => p.0.clone(),
        (Value::Pair(p), _) => p.1.clone(),
        (other, _) => other.clone(),
    }
}

fn sample_distinct(rng: &mut ChaCha8Rng, mut gen: impl FnMut(&mut ChaCha8Rng) -> Value) -> Vec<Value> {
    dedup((0..SAMPLED_UNIVERSE).map(|_| gen(rng)).collect())
}

/// Removes repeated elements, keeping first occurrences.
fn dedup(items: Vec<Value>) -> Vec<Value> {
    let mut seen = std::collections::HashSet::new();
    items.into_iter().filter(|v| seen.insert(v.clone())).collect()
}

impl fmt::Display for TwoLevelModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(
            f,
            "domain {{0..{}}}, standard {{0..{}}}, sequences up to length {}, level {}, seed {}",
            c.size - 1,
            c.cutoff - 1,
            c.seq_len,
            c.level,
            c.seed
        )?;
        for (name, interp) in &self.funs {
            if !crate::syntax::signature::BUILTIN_SYMBOLS.contains(&name.as_str()) {
                writeln!(f, "  {} = {:?}", name, interp)?;
            }
        }
        for name in self.rels.keys() {
            writeln!(f, "  rel {} hashed", name)?;
        }
        Ok(())
    }
}
