use std::fmt;
use std::rc::Rc;

/// An element of a finite interpretation of some type.
///
/// Functions are stored as their graph over the universe of the domain
/// type, in universe order, so a function value is only meaningful
/// together with the model it came from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Num(u32),
    Pair(Rc<(Value, Value)>),
    Seq(Rc<Vec<Value>>),
    Fun(Rc<Vec<Value>>),
}

impl Value {
    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Rc::new((a, b)))
    }

    pub fn seq(items: Vec<Value>) -> Value {
        Value::Seq(Rc::new(items))
    }

    pub fn fun(table: Vec<Value>) -> Value {
        Value::Fun(Rc::new(table))
    }

    pub fn as_num(&self) -> Option<u32> {
        match self {
            Value::Num(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_seq(&self) -> Option<&[Value]> {
        match self {
            Value::Seq(items) => Some(items),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, items: &[Value], open: &str, close: &str| {
            f.write_str(open)?;
            for (i, v) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", v)?;
            }
            f.write_str(close)
        };
        match self {
            Value::Num(n) => write!(f, "{}", n),
            Value::Pair(p) => write!(f, "<{},{}>", p.0, p.1),
            Value::Seq(items) => list(f, items, "[", "]"),
            Value::Fun(table) => list(f, table, "{", "}"),
        }
    }
}
