use std::fmt;

use crate::rational::Rational;

/// Source location of a node. Ignored by equality.
#[derive(Debug, Clone, Copy, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

/// Built-in sequence kernels callable from expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `H(n)`, `H(n, s)`
    Harmonic,
    /// `O(n)`, `O(n, s)`
    OddHarmonic,
    /// `Hdiff(n, r)` = H_{n+r} - H_r
    ShiftedHarmonicDiff,
    /// `B(n)`
    Bernoulli,
    /// `F(n)`
    Fibonacci,
    /// `L(n)`
    Lucas,
    /// `G(n, g1, g2)`
    Gibonacci,
    /// `S2(n, k)`
    Stirling2,
    /// `Cat(n)`
    Catalan,
    /// `binom(x, k)`
    Binom,
    /// `fact(n)`
    Factorial,
    /// `ff(x, k)`
    FallingFactorial,
}

impl Builtin {
    pub const ALL: [Builtin; 12] = [
        Builtin::Harmonic,
        Builtin::OddHarmonic,
        Builtin::ShiftedHarmonicDiff,
        Builtin::Bernoulli,
        Builtin::Fibonacci,
        Builtin::Lucas,
        Builtin::Gibonacci,
        Builtin::Stirling2,
        Builtin::Catalan,
        Builtin::Binom,
        Builtin::Factorial,
        Builtin::FallingFactorial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Harmonic => "H",
            Builtin::OddHarmonic => "O",
            Builtin::ShiftedHarmonicDiff => "Hdiff",
            Builtin::Bernoulli => "B",
            Builtin::Fibonacci => "F",
            Builtin::Lucas => "L",
            Builtin::Gibonacci => "G",
            Builtin::Stirling2 => "S2",
            Builtin::Catalan => "Cat",
            Builtin::Binom => "binom",
            Builtin::Factorial => "fact",
            Builtin::FallingFactorial => "ff",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    /// Accepted argument counts, inclusive.
    pub fn arity(self) -> (usize, usize) {
        match self {
            Builtin::Harmonic | Builtin::OddHarmonic => (1, 2),
            Builtin::Bernoulli | Builtin::Fibonacci | Builtin::Lucas => (1, 1),
            Builtin::Catalan | Builtin::Factorial => (1, 1),
            Builtin::Gibonacci => (3, 3),
            Builtin::ShiftedHarmonicDiff
            | Builtin::Stirling2
            | Builtin::Binom
            | Builtin::FallingFactorial => (2, 2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Lit(Rational),
    Var(String),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    /// Integer power; the exponent must evaluate to an integer.
    Pow(Box<Expr>, Box<Expr>),
    Floor(Box<Expr>),
    Kernel(Builtin, Vec<Expr>),
    /// A sequence or function supplied by the parameter binding.
    Apply(String, Vec<Expr>),
    Sum {
        index: String,
        lo: Box<Expr>,
        hi: Box<Expr>,
        body: Box<Expr>,
    },
}

impl Expr {
    pub fn new(kind: ExprKind) -> Self {
        Expr {
            kind,
            span: Span::default(),
        }
    }

    pub fn lit(value: Rational) -> Self {
        Expr::new(ExprKind::Lit(value))
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Self {
        Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)))
    }

    /// Free variables: names not bound by an enclosing `sum`, plus the names
    /// of applied sequences/functions.
    pub fn free_names(&self) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(
        &self,
        bound: &mut Vec<String>,
        out: &mut std::collections::BTreeSet<String>,
    ) {
        match &self.kind {
            ExprKind::Lit(_) => {}
            ExprKind::Var(name) => {
                if !bound.contains(name) {
                    out.insert(name.clone());
                }
            }
            ExprKind::Neg(e) | ExprKind::Floor(e) => e.collect_free(bound, out),
            ExprKind::Binary(_, a, b) | ExprKind::Pow(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            ExprKind::Kernel(_, args) => {
                for a in args {
                    a.collect_free(bound, out);
                }
            }
            ExprKind::Apply(name, args) => {
                out.insert(name.clone());
                for a in args {
                    a.collect_free(bound, out);
                }
            }
            ExprKind::Sum { index, lo, hi, body } => {
                lo.collect_free(bound, out);
                hi.collect_free(bound, out);
                bound.push(index.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Binary(op, _, _) => op.precedence(),
            ExprKind::Neg(_) => 3,
            ExprKind::Pow(_, _) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match &self.kind {
            // only non-negative integers come out of the parser as literals
            ExprKind::Lit(v) if v.is_integer() && !v.is_negative() => write!(f, "{v}"),
            ExprKind::Lit(v) => write!(f, "({v})"),
            ExprKind::Var(name) => write!(f, "{name}"),
            ExprKind::Neg(e) => {
                write!(f, "-")?;
                e.write_at(f, 3)
            }
            ExprKind::Binary(op, a, b) => {
                let p = op.precedence();
                a.write_at(f, p)?;
                write!(f, " {} ", op.symbol())?;
                // left associative: an equal-precedence right operand needs parens
                b.write_at(f, p + 1)
            }
            ExprKind::Pow(base, exp) => {
                base.write_at(f, 5)?;
                write!(f, "^")?;
                exp.write_at(f, 5)
            }
            ExprKind::Floor(e) => {
                write!(f, "floor(")?;
                e.write_at(f, 0)?;
                write!(f, ")")
            }
            ExprKind::Kernel(b, args) => write_call(f, b.name(), args),
            ExprKind::Apply(name, args) => write_call(f, name, args),
            ExprKind::Sum { index, lo, hi, body } => {
                write!(f, "sum({index}, ")?;
                lo.write_at(f, 0)?;
                write!(f, ", ")?;
                hi.write_at(f, 0)?;
                write!(f, ", ")?;
                body.write_at(f, 0)?;
                write!(f, ")")
            }
        }
    }
}

fn write_call(f: &mut fmt::Formatter<'_>, name: &str, args: &[Expr]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        a.write_at(f, 0)?;
    }
    write!(f, ")")
}

/// Canonical, minimally parenthesized source form.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
