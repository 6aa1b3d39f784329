//! Finite types of higher-order arithmetic.

use std::fmt;

/// A finite type: `0`, `σ -> τ`, `σ * τ` or `σ^*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FinType {
    Base,
    Arrow(Box<FinType>, Box<FinType>),
    Prod(Box<FinType>, Box<FinType>),
    Seq(Box<FinType>),
}

impl FinType {
    pub fn arrow(dom: FinType, cod: FinType) -> FinType {
        FinType::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn prod(left: FinType, right: FinType) -> FinType {
        FinType::Prod(Box::new(left), Box::new(right))
    }

    pub fn seq(elem: FinType) -> FinType {
        FinType::Seq(Box::new(elem))
    }

    /// The pure type `n`: `0`, then `n -> 0` for `n + 1`.
    pub fn pure(n: usize) -> FinType {
        let mut ty = FinType::Base;
        for _ in 0..n {
            ty = FinType::arrow(ty, FinType::Base);
        }
        ty
    }

    /// Inverse of [`FinType::pure`].
    pub fn as_pure(&self) -> Option<usize> {
        match self {
            FinType::Base => Some(0),
            FinType::Arrow(dom, cod) if **cod == FinType::Base => dom.as_pure().map(|n| n + 1),
            _ => None,
        }
    }

    /// Right-nested product of the given components; `None` for an empty list.
    pub fn tuple(mut components: Vec<FinType>) -> Option<FinType> {
        let mut acc = components.pop()?;
        while let Some(c) = components.pop() {
            acc = FinType::prod(c, acc);
        }
        Some(acc)
    }

    /// Curried arrow `a1 -> ... -> an -> cod`.
    pub fn curried(args: &[FinType], cod: FinType) -> FinType {
        args.iter()
            .rev()
            .fold(cod, |acc, a| FinType::arrow(a.clone(), acc))
    }

    /// Splits a right-nested product into its components (a non-product is a
    /// single component).
    pub fn components(&self) -> Vec<FinType> {
        match self {
            FinType::Prod(l, r) => {
                let mut out = vec![(**l).clone()];
                out.extend(r.components());
                out
            }
            other => vec![other.clone()],
        }
    }

    /// Type level: `0` has level 0, `σ -> τ` has `max(level σ + 1, level τ)`.
    pub fn level(&self) -> usize {
        match self {
            FinType::Base => 0,
            FinType::Arrow(d, c) => (d.level() + 1).max(c.level()),
            FinType::Prod(l, r) => l.level().max(r.level()),
            FinType::Seq(e) => e.level(),
        }
    }

    /// Uncurries the type into argument types (with product domains split)
    /// and a final result type that is not an arrow.
    pub fn uncurry(&self) -> (Vec<FinType>, FinType) {
        let mut args = Vec::new();
        let mut cur = self.clone();
        while let FinType::Arrow(d, c) = cur {
            args.extend(d.components());
            cur = *c;
        }
        (args, cur)
    }

    fn is_atomic_print(&self) -> bool {
        matches!(self, FinType::Base) || self.as_pure().is_some()
    }
}

impl fmt::Display for FinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_pure() {
            return write!(f, "{}", n);
        }
        match self {
            FinType::Base => write!(f, "0"),
            FinType::Arrow(d, c) => write!(f, "({} -> {})", d, c),
            FinType::Prod(l, r) => write!(f, "({} * {})", l, r),
            FinType::Seq(e) => {
                if e.is_atomic_print() || matches!(**e, FinType::Arrow(..) | FinType::Prod(..)) {
                    write!(f, "{}^*", e)
                } else {
                    write!(f, "({})^*", e)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_shorthand_round_trips() {
        for n in 0..6 {
            assert_eq!(FinType::pure(n).as_pure(), Some(n));
        }
        assert_eq!(FinType::pure(2).to_string(), "2");
        assert_eq!(
            FinType::arrow(FinType::pure(1), FinType::pure(1)).to_string(),
            "(1 -> 1)"
        );
    }

    #[test]
    fn levels() {
        assert_eq!(FinType::Base.level(), 0);
        assert_eq!(FinType::pure(2).level(), 2);
        assert_eq!(FinType::arrow(FinType::Base, FinType::seq(FinType::Base)).level(), 1);
    }

    #[test]
    fn uncurry_splits_product_domains() {
        let one = FinType::pure(1);
        let ty = FinType::arrow(FinType::prod(one.clone(), one.clone()), FinType::Base);
        let (args, res) = ty.uncurry();
        assert_eq!(args, vec![one.clone(), one]);
        assert_eq!(res, FinType::Base);
    }

    #[test]
    fn seq_printing() {
        assert_eq!(FinType::seq(FinType::Base).to_string(), "0^*");
        assert_eq!(FinType::seq(FinType::pure(1)).to_string(), "1^*");
        assert_eq!(
            FinType::seq(FinType::seq(FinType::Base)).to_string(),
            "(0^*)^*"
        );
    }
}
