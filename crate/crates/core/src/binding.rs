use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expr::{parse, Expr};
use crate::rational::Rational;

/// A one-argument function supplied to an identity, e.g. `f(x) = x^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionDef {
    pub param: String,
    pub body: Expr,
}

impl FunctionDef {
    pub fn new(param: &str, body: &str) -> Result<Self, crate::expr::ParseError> {
        Ok(FunctionDef {
            param: param.to_string(),
            body: parse(body)?,
        })
    }
}

impl fmt::Display for FunctionDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.param, self.body)
    }
}

/// Values for the free names of an expression: scalars, finite sequences
/// (`a(k)` reads element `k`, zero based) and one-argument functions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamBinding {
    #[serde(default)]
    pub values: BTreeMap<String, Rational>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sequences: BTreeMap<String, Vec<Rational>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functions: BTreeMap<String, FunctionDef>,
}

impl ParamBinding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: Rational) -> Self {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn with_sequence(mut self, name: &str, seq: Vec<Rational>) -> Self {
        self.sequences.insert(name.to_string(), seq);
        self
    }

    pub fn set(&mut self, name: &str, value: Rational) {
        self.values.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.values.get(name)
    }

    /// Whether `name` resolves to anything in this binding.
    pub fn binds(&self, name: &str) -> bool {
        self.values.contains_key(name)
            || self.sequences.contains_key(name)
            || self.functions.contains_key(name)
    }
}

impl fmt::Display for ParamBinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .values
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        for (k, seq) in &self.sequences {
            let shown: Vec<String> = seq.iter().take(6).map(|v| v.to_string()).collect();
            let more = if seq.len() > 6 { ", ..." } else { "" };
            parts.push(format!("{k}=[{}{more}]", shown.join(", ")));
        }
        for (k, func) in &self.functions {
            parts.push(format!("{k}({})={}", func.param, func.body));
        }
        if parts.is_empty() {
            write!(f, "{{}}")
        } else {
            write!(f, "{{{}}}", parts.join(", "))
        }
    }
}
