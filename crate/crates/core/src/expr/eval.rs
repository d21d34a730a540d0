use std::fmt;

use thiserror::Error;

use super::ast::{BinOp, Builtin, Expr, ExprKind};
use crate::binding::ParamBinding;
use crate::kernels::{self, KernelCache, KernelError};
use crate::rational::{Rational, RationalError};

/// Largest index accepted by a kernel or sequence lookup.
pub const MAX_INDEX: i64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalErrorKind {
    DivByZero,
    SingularShift(String),
    UnboundVar(String),
    NonIntegerExponent(Rational),
    NegativeKernelIndex(i64),
    NonIntegerArgument(Rational),
    NonIntegerBinomial(String),
    NonIntegerBound(Rational),
    SequenceIndex { name: String, index: i64, len: usize },
    IndexTooLarge(String),
    BadOrder(i64),
}

impl fmt::Display for EvalErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalErrorKind::DivByZero => write!(f, "division by zero"),
            EvalErrorKind::SingularShift(msg) => write!(f, "singular shift: {msg}"),
            EvalErrorKind::UnboundVar(name) => write!(f, "unbound name `{name}`"),
            EvalErrorKind::NonIntegerExponent(v) => write!(f, "non-integer exponent {v}"),
            EvalErrorKind::NegativeKernelIndex(i) => write!(f, "negative kernel index {i}"),
            EvalErrorKind::NonIntegerArgument(v) => write!(f, "non-integer argument {v}"),
            EvalErrorKind::NonIntegerBinomial(msg) => write!(f, "{msg}"),
            EvalErrorKind::NonIntegerBound(v) => write!(f, "non-integer sum bound {v}"),
            EvalErrorKind::SequenceIndex { name, index, len } => {
                write!(f, "index {index} outside sequence `{name}` of length {len}")
            }
            EvalErrorKind::IndexTooLarge(msg) => write!(f, "too large: {msg}"),
            EvalErrorKind::BadOrder(s) => write!(f, "harmonic order must be positive, got {s}"),
        }
    }
}

/// An evaluation failure, with the offending subexpression and the values of
/// the enclosing summation indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub expr: String,
    pub indices: Vec<(String, Rational)>,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in `{}`", self.kind, self.expr)?;
        if !self.indices.is_empty() {
            let shown: Vec<String> = self
                .indices
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            write!(f, " at {}", shown.join(", "))?;
        }
        Ok(())
    }
}

/// Evaluate `e` under `binding`, using the process-wide kernel cache.
pub fn eval(e: &Expr, binding: &ParamBinding) -> Result<Rational, EvalError> {
    eval_with(e, binding, KernelCache::global())
}

pub fn eval_with(
    e: &Expr,
    binding: &ParamBinding,
    cache: &KernelCache,
) -> Result<Rational, EvalError> {
    let mut ev = Evaluator {
        binding,
        cache,
        stack: Vec::new(),
    };
    ev.eval(e)
}

struct Evaluator<'a> {
    binding: &'a ParamBinding,
    cache: &'a KernelCache,
    stack: Vec<(&'a str, Rational)>,
}

impl<'a> Evaluator<'a> {
    fn fail(&self, e: &Expr, kind: EvalErrorKind) -> EvalError {
        EvalError {
            kind,
            expr: e.to_string(),
            indices: self
                .stack
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        }
    }

    fn lookup(&self, name: &str) -> Option<&Rational> {
        self.stack
            .iter()
            .rev()
            .find(|(k, _)| *k == name)
            .map(|(_, v)| v)
            .or_else(|| self.binding.values.get(name))
    }

    fn arith(&self, e: &Expr, err: RationalError) -> EvalError {
        let kind = match err {
            RationalError::DivByZero => EvalErrorKind::DivByZero,
            other => EvalErrorKind::IndexTooLarge(other.to_string()),
        };
        self.fail(e, kind)
    }

    fn eval(&mut self, e: &'a Expr) -> Result<Rational, EvalError> {
        match &e.kind {
            ExprKind::Lit(v) => Ok(v.clone()),
            ExprKind::Var(name) => self
                .lookup(name)
                .cloned()
                .ok_or_else(|| self.fail(e, EvalErrorKind::UnboundVar(name.clone()))),
            ExprKind::Neg(inner) => Ok(-self.eval(inner)?),
            ExprKind::Binary(op, a, b) => {
                let x = self.eval(a)?;
                let y = self.eval(b)?;
                match op {
                    BinOp::Add => Ok(x + y),
                    BinOp::Sub => Ok(x - y),
                    BinOp::Mul => Ok(x * y),
                    BinOp::Div => x.checked_div(&y).map_err(|err| self.arith(e, err)),
                }
            }
            ExprKind::Pow(base, exp) => {
                let b = self.eval(base)?;
                let x = self.eval(exp)?;
                let k = self.integer(e, &x, EvalErrorKind::NonIntegerExponent(x.clone()))?;
                b.pow(k).map_err(|err| self.arith(e, err))
            }
            ExprKind::Floor(inner) => Ok(self.eval(inner)?.floor()),
            ExprKind::Kernel(builtin, args) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.eval(a)?);
                }
                self.kernel(e, *builtin, &vals)
            }
            ExprKind::Apply(name, args) => self.apply(e, name, args),
            ExprKind::Sum {
                index,
                lo,
                hi,
                body,
            } => {
                let lo_v = self.eval(lo)?;
                let hi_v = self.eval(hi)?;
                let lo_i = self.integer(e, &lo_v, EvalErrorKind::NonIntegerBound(lo_v.clone()))?;
                let hi_i = self.integer(e, &hi_v, EvalErrorKind::NonIntegerBound(hi_v.clone()))?;
                let mut acc = Rational::zero();
                for i in lo_i..=hi_i {
                    self.stack.push((index.as_str(), Rational::from(i)));
                    let term = self.eval(body);
                    self.stack.pop();
                    acc += term?;
                }
                Ok(acc)
            }
        }
    }

    fn integer(&self, e: &Expr, v: &Rational, kind: EvalErrorKind) -> Result<i64, EvalError> {
        if !v.is_integer() {
            return Err(self.fail(e, kind));
        }
        v.to_i64()
            .filter(|i| i.abs() <= MAX_INDEX * 16)
            .ok_or_else(|| self.fail(e, EvalErrorKind::IndexTooLarge(v.to_string())))
    }

    fn index(&self, e: &Expr, v: &Rational) -> Result<usize, EvalError> {
        let i = self.integer(e, v, EvalErrorKind::NonIntegerArgument(v.clone()))?;
        if i < 0 {
            return Err(self.fail(e, EvalErrorKind::NegativeKernelIndex(i)));
        }
        if i > MAX_INDEX {
            return Err(self.fail(e, EvalErrorKind::IndexTooLarge(i.to_string())));
        }
        Ok(i as usize)
    }

    fn order(&self, e: &Expr, v: Option<&Rational>) -> Result<u32, EvalError> {
        let Some(v) = v else { return Ok(1) };
        let s = self.integer(e, v, EvalErrorKind::NonIntegerArgument(v.clone()))?;
        if !(1..=64).contains(&s) {
            return Err(self.fail(e, EvalErrorKind::BadOrder(s)));
        }
        Ok(s as u32)
    }

    fn kernel(&self, e: &Expr, b: Builtin, v: &[Rational]) -> Result<Rational, EvalError> {
        let c = self.cache;
        let kerr = |err: KernelError| {
            let kind = match err {
                KernelError::SingularShift { .. } => EvalErrorKind::SingularShift(err.to_string()),
                KernelError::NonIntegerBinomial { .. } => {
                    EvalErrorKind::NonIntegerBinomial(err.to_string())
                }
                KernelError::BadOrder(s) => EvalErrorKind::BadOrder(s),
                KernelError::Arith(a) => return self.arith(e, a),
            };
            self.fail(e, kind)
        };
        Ok(match b {
            Builtin::Harmonic => c.harmonic(self.index(e, &v[0])?, self.order(e, v.get(1))?),
            Builtin::OddHarmonic => {
                c.odd_harmonic(self.index(e, &v[0])?, self.order(e, v.get(1))?)
            }
            Builtin::ShiftedHarmonicDiff => c
                .shifted_harmonic_diff(self.index(e, &v[0])?, &v[1])
                .map_err(kerr)?,
            Builtin::Bernoulli => c.bernoulli(self.index(e, &v[0])?),
            Builtin::Fibonacci => c.fibonacci(self.index(e, &v[0])?),
            Builtin::Lucas => c.lucas(self.index(e, &v[0])?),
            Builtin::Gibonacci => c.gibonacci(self.index(e, &v[0])?, &v[1], &v[2]),
            Builtin::Stirling2 => c.stirling2(self.index(e, &v[0])?, self.index(e, &v[1])?),
            Builtin::Catalan => c.catalan(self.index(e, &v[0])?),
            Builtin::Factorial => c.factorial(self.index(e, &v[0])?),
            Builtin::Binom => {
                if let Some(k) = v[1].to_i64() {
                    if k > MAX_INDEX {
                        return Err(self.fail(e, EvalErrorKind::IndexTooLarge(k.to_string())));
                    }
                }
                kernels::binom_general(&v[0], &v[1]).map_err(kerr)?
            }
            Builtin::FallingFactorial => {
                kernels::falling_factorial(&v[0], self.index(e, &v[1])? as u64)
            }
        })
    }

    fn apply(&mut self, e: &'a Expr, name: &str, args: &'a [Expr]) -> Result<Rational, EvalError> {
        let binding = self.binding;
        if let Some(seq) = binding.sequences.get(name) {
            if args.len() != 1 {
                return Err(self.fail(e, EvalErrorKind::UnboundVar(format!("{name}/{}", args.len()))));
            }
            let v = self.eval(&args[0])?;
            let i = self.integer(e, &v, EvalErrorKind::NonIntegerArgument(v.clone()))?;
            return usize::try_from(i)
                .ok()
                .and_then(|u| seq.get(u))
                .cloned()
                .ok_or_else(|| {
                    self.fail(
                        e,
                        EvalErrorKind::SequenceIndex {
                            name: name.to_string(),
                            index: i,
                            len: seq.len(),
                        },
                    )
                });
        }
        if let Some(func) = binding.functions.get(name) {
            if args.len() != 1 {
                return Err(self.fail(e, EvalErrorKind::UnboundVar(format!("{name}/{}", args.len()))));
            }
            let v = self.eval(&args[0])?;
            // the body sees only its own parameter and the scalar binding
            let saved = std::mem::replace(&mut self.stack, vec![(func.param.as_str(), v)]);
            let out = self.eval(&func.body);
            self.stack = saved;
            return out;
        }
        Err(self.fail(e, EvalErrorKind::UnboundVar(name.to_string())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn q(p: i64, d: i64) -> Rational {
        Rational::ratio(p, d).unwrap()
    }

    fn ev(src: &str, n: i64) -> Result<Rational, EvalError> {
        eval(&parse(src).unwrap(), &ParamBinding::new().with("n", n.into()))
    }

    #[test]
    fn spec_examples() {
        assert_eq!(ev("sum(k,1,n, 1/k)", 3).unwrap(), q(11, 6));
        assert_eq!(ev("floor((n-1)/2)", 4).unwrap(), q(1, 1));
        assert_eq!(
            ev("sum(k,1,n, sum(j,0,k-1, (-1)^j * binom(n,j)^3 / (n-j)))", 2).unwrap(),
            q(-7, 1)
        );
    }

    #[test]
    fn floor_of_negative() {
        assert_eq!(ev("floor((n-1)/2)", 0).unwrap(), q(-1, 1));
    }

    #[test]
    fn empty_sum_skips_body() {
        assert_eq!(ev("sum(k,1,n, 1/(k-k))", 0).unwrap(), Rational::zero());
        assert_eq!(ev("sum(k,5,2, 1/0)", 0).unwrap(), Rational::zero());
    }

    #[test]
    fn errors_carry_context() {
        let err = ev("sum(k,0,n, 1/(k-2))", 3).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::DivByZero);
        assert_eq!(err.expr, "1 / (k - 2)");
        assert_eq!(err.indices, vec![("k".to_string(), q(2, 1))]);

        let err = ev("x + 1", 1).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::UnboundVar("x".into()));

        let err = ev("2^(1/2)", 1).unwrap_err();
        assert!(matches!(err.kind, EvalErrorKind::NonIntegerExponent(_)));

        let err = ev("H(n - 3)", 1).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::NegativeKernelIndex(-2));

        let err = ev("sum(k,1,n, Hdiff(k, -2))", 3).unwrap_err();
        assert!(matches!(err.kind, EvalErrorKind::SingularShift(_)));
        assert_eq!(err.indices, vec![("k".to_string(), q(2, 1))]);

        let err = ev("0^(-1)", 1).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::DivByZero);
    }

    #[test]
    fn kernels_dispatch() {
        assert_eq!(ev("H(n) + H(n, 2)", 2).unwrap(), q(3, 2) + q(5, 4));
        assert_eq!(ev("O(n)", 3).unwrap(), q(23, 15));
        assert_eq!(ev("Hdiff(2, -1/2)", 0).unwrap(), q(8, 3));
        assert_eq!(ev("B(12)", 0).unwrap(), q(-691, 2730));
        assert_eq!(ev("F(10) + L(0) + G(5, 1, 1)", 0).unwrap(), q(62, 1));
        assert_eq!(ev("S2(4, 2) + Cat(5) + fact(4)", 0).unwrap(), q(73, 1));
        assert_eq!(ev("binom(1/2, 2)", 0).unwrap(), q(-1, 8));
        assert_eq!(ev("binom(n, -1)", 3).unwrap(), Rational::zero());
        assert_eq!(ev("binom(-1/2, 1/2)", 0).unwrap(), Rational::zero());
        assert_eq!(ev("ff(1/2, 2)", 0).unwrap(), q(-1, 4));
    }

    #[test]
    fn sequences_and_functions() {
        let mut b = ParamBinding::new()
            .with("n", 3.into())
            .with_sequence("a", vec![0.into(), 1.into(), 4.into(), 9.into()]);
        b.functions.insert(
            "f".into(),
            crate::binding::FunctionDef::new("x", "x^2 + 1").unwrap(),
        );
        let v = eval(&parse("sum(k,1,n, a(k)) + f(n)").unwrap(), &b).unwrap();
        assert_eq!(v, q(24, 1));
        let err = eval(&parse("a(n + 1)").unwrap(), &b).unwrap_err();
        assert!(matches!(err.kind, EvalErrorKind::SequenceIndex { index: 4, .. }));
        // sum indices do not leak into function bodies
        b.functions.insert(
            "g".into(),
            crate::binding::FunctionDef::new("x", "x + k").unwrap(),
        );
        let err = eval(&parse("sum(k,1,2, g(k))").unwrap(), &b).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::UnboundVar("k".into()));
    }
}
