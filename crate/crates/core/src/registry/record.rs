use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::binding::{FunctionDef, ParamBinding};
use crate::expr::{eval, parse, BinOp, Expr, ParseError};
use crate::rational::Rational;
use crate::transform::binomial_transform;

/// Random draws per `n` for records with random parameters.
pub const DRAWS_PER_N: usize = 16;

const MAX_REDRAWS: usize = 64;

/// The domain of one free parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParamSpec {
    /// A finite sample set.
    Scalar { name: String, values: Vec<Rational> },
    /// Several parameters sampled together, one row at a time.
    Joint {
        names: Vec<String>,
        rows: Vec<Vec<Rational>>,
    },
    /// A seeded random rational.
    RandomRational { name: String },
    /// A seeded random sequence with indices `0..=n + extra`.
    RandomSequence { name: String, extra: usize },
    /// The binomial transform of another (random) sequence.
    TransformOf { name: String, source: String },
    /// A one-argument function chosen from a sample set of bodies.
    Function {
        name: String,
        var: String,
        bodies: Vec<Expr>,
    },
}

impl ParamSpec {
    pub fn scalar(name: &str, values: &[&str]) -> Self {
        ParamSpec::Scalar {
            name: name.into(),
            values: values.iter().map(|v| v.parse().expect("sample value")).collect(),
        }
    }

    pub fn joint(names: &[&str], rows: &[&[&str]]) -> Self {
        ParamSpec::Joint {
            names: names.iter().map(|s| s.to_string()).collect(),
            rows: rows
                .iter()
                .map(|r| r.iter().map(|v| v.parse().expect("sample value")).collect())
                .collect(),
        }
    }

    pub fn random_sequence(name: &str, extra: usize) -> Self {
        ParamSpec::RandomSequence {
            name: name.into(),
            extra,
        }
    }

    pub fn transform_of(name: &str, source: &str) -> Self {
        ParamSpec::TransformOf {
            name: name.into(),
            source: source.into(),
        }
    }

    pub fn function(name: &str, var: &str, bodies: &[&str]) -> Self {
        ParamSpec::Function {
            name: name.into(),
            var: var.into(),
            bodies: bodies.iter().map(|b| parse(b).expect("function body")).collect(),
        }
    }

    pub fn names(&self) -> Vec<&str> {
        match self {
            ParamSpec::Scalar { name, .. }
            | ParamSpec::RandomRational { name }
            | ParamSpec::RandomSequence { name, .. }
            | ParamSpec::TransformOf { name, .. }
            | ParamSpec::Function { name, .. } => vec![name.as_str()],
            ParamSpec::Joint { names, .. } => names.iter().map(String::as_str).collect(),
        }
    }

    fn is_random(&self) -> bool {
        matches!(
            self,
            ParamSpec::RandomRational { .. } | ParamSpec::RandomSequence { .. }
        )
    }

    /// Number of deterministic choices this spec contributes.
    fn choices(&self) -> usize {
        match self {
            ParamSpec::Scalar { values, .. } => values.len(),
            ParamSpec::Joint { rows, .. } => rows.len(),
            ParamSpec::Function { bodies, .. } => bodies.len(),
            _ => 1,
        }
    }

    fn apply_choice(&self, i: usize, b: &mut ParamBinding) {
        match self {
            ParamSpec::Scalar { name, values } => b.set(name, values[i].clone()),
            ParamSpec::Joint { names, rows } => {
                for (name, v) in names.iter().zip(&rows[i]) {
                    b.set(name, v.clone());
                }
            }
            ParamSpec::Function { name, var, bodies } => {
                b.functions.insert(
                    name.clone(),
                    FunctionDef {
                        param: var.clone(),
                        body: bodies[i].clone(),
                    },
                );
            }
            _ => {}
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Ne,
}

impl CmpOp {
    const ALL: [(&'static str, CmpOp); 5] = [
        ("<=", CmpOp::Le),
        (">=", CmpOp::Ge),
        ("!=", CmpOp::Ne),
        ("<", CmpOp::Lt),
        (">", CmpOp::Gt),
    ];

    fn symbol(self) -> &'static str {
        Self::ALL.iter().find(|(_, op)| *op == self).expect("listed").0
    }

    fn holds(self, a: &Rational, b: &Rational) -> bool {
        match self {
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
            CmpOp::Ne => a != b,
        }
    }
}

/// A side condition on a binding such as `r < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub lhs: Expr,
    pub op: CmpOp,
    pub rhs: Expr,
}

impl Constraint {
    /// Whether the constraint holds; a constraint that cannot be evaluated
    /// counts as violated.
    pub fn holds(&self, b: &ParamBinding) -> bool {
        match (eval(&self.lhs, b), eval(&self.rhs, b)) {
            (Ok(x), Ok(y)) => self.op.holds(&x, &y),
            _ => false,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.op.symbol(), self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstraintParseError {
    #[error("no comparison operator in `{0}`")]
    MissingOperator(String),
    #[error(transparent)]
    Expr(#[from] ParseError),
}

impl FromStr for Constraint {
    type Err = ConstraintParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        for (sym, op) in CmpOp::ALL {
            if let Some(at) = s.find(sym) {
                return Ok(Constraint {
                    lhs: parse(&s[..at])?,
                    op,
                    rhs: parse(&s[at + sym.len()..])?,
                });
            }
        }
        Err(ConstraintParseError::MissingOperator(s.to_string()))
    }
}

impl Serialize for Constraint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Constraint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// One identity `lhs = rhs`, with the domain it is claimed on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub id: String,
    pub title: String,
    pub lhs: Expr,
    pub rhs: Expr,
    pub params: Vec<ParamSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<Constraint>,
    pub min_n: u32,
    pub max_n_default: u32,
    pub anchor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityRecord {
    /// A copy whose right-hand side is off by one.
    pub fn mutated(&self) -> IdentityRecord {
        let mut out = self.clone();
        out.rhs = Expr::binary(BinOp::Add, self.rhs.clone(), Expr::lit(Rational::one()));
        out
    }

    pub fn param_names(&self) -> Vec<&str> {
        self.params.iter().flat_map(ParamSpec::names).collect()
    }

    pub fn has_random_params(&self) -> bool {
        self.params.iter().any(ParamSpec::is_random)
    }

    /// All bindings checked at size `n`, in a fixed order. Each binding
    /// includes `n` itself. Deterministic sample combinations that violate a
    /// constraint are dropped; random draws that violate one are redrawn.
    pub fn bindings(&self, n: u32, seed: u64) -> Vec<ParamBinding> {
        let counts: Vec<usize> = self.params.iter().map(ParamSpec::choices).collect();
        let combos: usize = counts.iter().product();
        let draws = if self.has_random_params() { DRAWS_PER_N } else { 1 };
        let mut out = Vec::new();
        for combo in 0..combos {
            let mut base = ParamBinding::new().with("n", Rational::from(n as i64));
            let mut rest = combo;
            for (spec, &count) in self.params.iter().zip(&counts) {
                spec.apply_choice(rest % count, &mut base);
                rest /= count;
            }
            for draw in 0..draws {
                let stream = (combo * draws + draw) as u64;
                let mut rng = ChaCha8Rng::from_seed(seed_bytes(seed, &self.id, n, stream));
                for _ in 0..MAX_REDRAWS {
                    let mut b = base.clone();
                    self.fill_random(&mut b, n, &mut rng);
                    if self.constraints.iter().all(|c| c.holds(&b)) {
                        out.push(b);
                        break;
                    }
                    if !self.has_random_params() {
                        break;
                    }
                }
            }
        }
        out
    }

    fn fill_random(&self, b: &mut ParamBinding, n: u32, rng: &mut ChaCha8Rng) {
        for spec in &self.params {
            match spec {
                ParamSpec::RandomRational { name } => b.set(name, random_rational(rng)),
                ParamSpec::RandomSequence { name, extra } => {
                    let len = n as usize + extra + 1;
                    let seq = (0..len).map(|_| random_rational(rng)).collect();
                    b.sequences.insert(name.clone(), seq);
                }
                _ => {}
            }
        }
        for spec in &self.params {
            if let ParamSpec::TransformOf { name, source } = spec {
                let seq = binomial_transform(&b.sequences[source]);
                b.sequences.insert(name.clone(), seq);
            }
        }
    }
}

/// Numerator in `[-99, 99]`, denominator in `[1, 20]`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let p = rng.random_range(-99i64..=99);
    let q = rng.random_range(1i64..=20);
    Rational::ratio(p, q).expect("q >= 1")
}

/// ChaCha seed from the run seed, record id, `n` and the draw stream.
pub fn seed_bytes(seed: u64, id: &str, n: u32, stream: u64) -> [u8; 32] {
    // FNV-1a over the id keeps seeds stable across platforms and releases
    let id_hash = id.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    });
    let mut out = [0u8; 32];
    out[..8].copy_from_slice(&seed.to_le_bytes());
    out[8..16].copy_from_slice(&id_hash.to_le_bytes());
    out[16..24].copy_from_slice(&(n as u64).to_le_bytes());
    out[24..].copy_from_slice(&stream.to_le_bytes());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(params: Vec<ParamSpec>, constraints: &[&str]) -> IdentityRecord {
        IdentityRecord {
            id: "T-1".into(),
            title: "test".into(),
            lhs: parse("0").unwrap(),
            rhs: parse("0").unwrap(),
            params,
            constraints: constraints.iter().map(|c| c.parse().unwrap()).collect(),
            min_n: 0,
            max_n_default: 3,
            anchor: String::new(),
            note: None,
        }
    }

    #[test]
    fn cartesian_product_of_samples() {
        let r = record(
            vec![
                ParamSpec::scalar("x", &["1", "2", "1/2"]),
                ParamSpec::joint(&["p", "q"], &[&["0", "1"], &["2", "3"]]),
            ],
            &[],
        );
        let bs = r.bindings(4, 42);
        assert_eq!(bs.len(), 6);
        assert!(bs.iter().all(|b| b.get("n") == Some(&Rational::from(4))));
        assert_eq!(bs[2].get("x"), Some(&Rational::ratio(1, 2).unwrap()));
    }

    #[test]
    fn constraints_filter_samples() {
        let r = record(vec![ParamSpec::scalar("r", &["0", "1", "2", "3"])], &["r < n"]);
        assert_eq!(r.bindings(2, 1).len(), 2);
        assert_eq!(r.bindings(0, 1).len(), 0);
    }

    #[test]
    fn random_draws_are_seeded() {
        let r = record(
            vec![
                ParamSpec::random_sequence("s", 2),
                ParamSpec::transform_of("sigma", "s"),
            ],
            &[],
        );
        let a = r.bindings(5, 7);
        assert_eq!(a.len(), DRAWS_PER_N);
        assert_eq!(a, r.bindings(5, 7));
        assert_ne!(a, r.bindings(5, 8));
        let s = &a[0].sequences["s"];
        assert_eq!(s.len(), 8);
        assert_eq!(binomial_transform(&a[0].sequences["sigma"]), *s);
        for v in s {
            assert!(v.denom() <= 20.into() && v.numer().magnitude() <= &99u32.into());
        }
    }

    #[test]
    fn constraint_round_trip() {
        let c: Constraint = "2*r + 1 <= n".parse().unwrap();
        assert_eq!(c.to_string(), "2 * r + 1 <= n");
        assert_eq!(c.to_string().parse::<Constraint>().unwrap(), c);
        assert!("r n".parse::<Constraint>().is_err());
    }

    #[test]
    fn mutation_adds_one() {
        let r = record(vec![], &[]).mutated();
        assert_eq!(r.rhs.to_string(), "0 + 1");
    }
}
