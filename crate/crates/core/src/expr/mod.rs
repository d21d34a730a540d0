//! Expression language for finite nested sums.

mod ast;
mod eval;
mod parse;

pub use ast::{BinOp, Builtin, Expr, ExprKind, Span};
pub use eval::{eval, eval_with, EvalError, EvalErrorKind, MAX_INDEX};
pub use parse::{parse, ParseError};

impl serde::Serialize for Expr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Expr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let src = String::deserialize(d)?;
        parse(&src).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
