//! Exact verification of finite double-sum identities.
//!
//! Values are exact [`Rational`]s. Identities are stored as pairs of
//! expressions in a small sum language ([`expr`]), collected in a catalog
//! ([`registry`]) and swept over `n` and their parameter domains by the
//! [`verifier`].

pub mod binding;
pub mod expr;
pub mod kernels;
pub mod rational;
pub mod registry;
pub mod transform;
pub mod verifier;

pub use binding::{FunctionDef, ParamBinding};
pub use expr::{eval, parse, EvalError, Expr, ParseError};
pub use kernels::{KernelCache, KernelError, SequenceKernelId};
pub use rational::{Rational, RationalError};
pub use registry::{builtin_catalog, IdentityRecord, ParamSpec};
pub use verifier::{check_identity, run_suite, Status, VerificationReport, VerifyError};
