//! Exact kernels for the named sequences: harmonic and odd harmonic numbers,
//! shifted harmonic differences, Bernoulli, Fibonacci/Lucas/gibonacci,
//! Stirling numbers of the second kind, Catalan numbers, factorials and
//! (generalized) binomial coefficients.
//!
//! Prefix-computable sequences are memoized in a [`KernelCache`]. The cache is
//! shared behind a read/write lock; entries are only ever appended with fully
//! computed values, so concurrent readers never observe partial state.

use std::collections::HashMap;
use std::sync::{LazyLock, PoisonError, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{Rational, RationalError};

/// Identifies one kernel, including the parameters that select a memo table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SequenceKernelId {
    Harmonic(u32),
    OddHarmonic(u32),
    ShiftedHarmonicDiff(Rational),
    Bernoulli,
    Fibonacci,
    Lucas,
    Gibonacci(Rational, Rational),
    Stirling2,
    Catalan,
    Factorial,
    BinomInt,
    BinomRat,
    FallingFactorial,
    Power,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("H(n + r) - H(r) is singular for n = {n}, r = {r}")]
    SingularShift { n: usize, r: Rational },
    #[error("binom({x}, {k}) is not rational")]
    NonIntegerBinomial { x: Rational, k: Rational },
    #[error("harmonic order must be a positive integer, got {0}")]
    BadOrder(i64),
    #[error(transparent)]
    Arith(#[from] RationalError),
}

/// Memo tables for the prefix-computable kernels.
#[derive(Default)]
pub struct KernelCache {
    seqs: RwLock<HashMap<SequenceKernelId, Vec<Rational>>>,
    stirling: RwLock<Vec<Vec<BigInt>>>,
}

static GLOBAL: LazyLock<KernelCache> = LazyLock::new(KernelCache::default);

impl KernelCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide cache used by the free functions in this module.
    pub fn global() -> &'static KernelCache {
        &GLOBAL
    }

    /// Number of memoized entries for `id`.
    pub fn memo_len(&self, id: &SequenceKernelId) -> usize {
        let map = self.seqs.read().unwrap_or_else(PoisonError::into_inner);
        map.get(id).map_or(0, Vec::len)
    }

    fn memo<F>(&self, id: SequenceKernelId, n: usize, step: F) -> Result<Rational, KernelError>
    where
        F: Fn(&[Rational], usize) -> Result<Rational, KernelError>,
    {
        {
            let map = self.seqs.read().unwrap_or_else(PoisonError::into_inner);
            if let Some(v) = map.get(&id).and_then(|v| v.get(n)) {
                return Ok(v.clone());
            }
        }
        let mut map = self.seqs.write().unwrap_or_else(PoisonError::into_inner);
        let values = map.entry(id).or_default();
        while values.len() <= n {
            let next = step(values, values.len())?;
            values.push(next);
        }
        Ok(values[n].clone())
    }

    /// `H_n^{(s)} = sum_{k=1}^n 1/k^s`.
    pub fn harmonic(&self, n: usize, s: u32) -> Rational {
        self.memo(SequenceKernelId::Harmonic(s), n, |prev, i| {
            if i == 0 {
                return Ok(Rational::zero());
            }
            let term = Rational::from(i).pow(-(s as i64))?;
            Ok(&prev[i - 1] + &term)
        })
        .expect("harmonic terms are never singular")
    }

    /// `O_n^{(s)} = sum_{k=1}^n 1/(2k-1)^s`.
    pub fn odd_harmonic(&self, n: usize, s: u32) -> Rational {
        self.memo(SequenceKernelId::OddHarmonic(s), n, |prev, i| {
            if i == 0 {
                return Ok(Rational::zero());
            }
            let term = Rational::from(2 * i - 1).pow(-(s as i64))?;
            Ok(&prev[i - 1] + &term)
        })
        .expect("odd harmonic terms are never singular")
    }

    /// `H_{n+r} - H_r = sum_{k=1}^n 1/(k+r)`.
    pub fn shifted_harmonic_diff(&self, n: usize, r: &Rational) -> Result<Rational, KernelError> {
        if r.is_zero() {
            return Ok(self.harmonic(n, 1));
        }
        let id = SequenceKernelId::ShiftedHarmonicDiff(r.clone());
        self.memo(id, n, |prev, i| {
            if i == 0 {
                return Ok(Rational::zero());
            }
            let shifted = Rational::from(i) + r;
            let term = shifted
                .recip()
                .map_err(|_| KernelError::SingularShift { n, r: r.clone() })?;
            Ok(&prev[i - 1] + &term)
        })
    }

    /// Bernoulli numbers with `B_1 = -1/2`, from
    /// `sum_{k=0}^{m} binom(m+1, k) B_k = 0`.
    pub fn bernoulli(&self, n: usize) -> Rational {
        self.memo(SequenceKernelId::Bernoulli, n, |prev, m| {
            if m == 0 {
                return Ok(Rational::one());
            }
            if m > 1 && m % 2 == 1 {
                return Ok(Rational::zero());
            }
            let mut coeff = BigInt::one();
            let mut acc = Rational::zero();
            for (k, b) in prev.iter().enumerate() {
                if !b.is_zero() {
                    acc += &(Rational::from(coeff.clone()) * b);
                }
                coeff = coeff * (m + 1 - k) / (k + 1);
            }
            Ok(-acc.checked_div(&Rational::from(m + 1))?)
        })
        .expect("bernoulli recurrence divides by m + 1 > 0")
    }

    pub fn fibonacci(&self, n: usize) -> Rational {
        self.linear_recurrence(SequenceKernelId::Fibonacci, n, Rational::zero(), Rational::one())
    }

    pub fn lucas(&self, n: usize) -> Rational {
        self.linear_recurrence(SequenceKernelId::Lucas, n, Rational::from(2), Rational::one())
    }

    /// Gibonacci numbers seeded by `G_1 = g1`, `G_2 = g2`; `G_0 = g2 - g1`.
    pub fn gibonacci(&self, n: usize, g1: &Rational, g2: &Rational) -> Rational {
        let id = SequenceKernelId::Gibonacci(g1.clone(), g2.clone());
        self.linear_recurrence(id, n, g2 - g1, g1.clone())
    }

    fn linear_recurrence(
        &self,
        id: SequenceKernelId,
        n: usize,
        first: Rational,
        second: Rational,
    ) -> Rational {
        self.memo(id, n, |prev, i| {
            Ok(match i {
                0 => first.clone(),
                1 => second.clone(),
                _ => &prev[i - 1] + &prev[i - 2],
            })
        })
        .expect("additive recurrences cannot fail")
    }

    pub fn catalan(&self, n: usize) -> Rational {
        self.memo(SequenceKernelId::Catalan, n, |prev, i| {
            if i == 0 {
                return Ok(Rational::one());
            }
            let ratio = Rational::ratio(2 * (2 * i as i64 - 1), i as i64 + 1)?;
            Ok(&prev[i - 1] * &ratio)
        })
        .expect("catalan ratio has a positive denominator")
    }

    pub fn factorial(&self, n: usize) -> Rational {
        self.memo(SequenceKernelId::Factorial, n, |prev, i| {
            Ok(if i == 0 {
                Rational::one()
            } else {
                &prev[i - 1] * &Rational::from(i)
            })
        })
        .expect("factorial cannot fail")
    }

    /// Stirling numbers of the second kind from the triangle recurrence.
    pub fn stirling2(&self, n: usize, k: usize) -> Rational {
        if k > n {
            return Rational::zero();
        }
        {
            let rows = self.stirling.read().unwrap_or_else(PoisonError::into_inner);
            if let Some(row) = rows.get(n) {
                return Rational::from(row[k].clone());
            }
        }
        let mut rows = self.stirling.write().unwrap_or_else(PoisonError::into_inner);
        while rows.len() <= n {
            let m = rows.len();
            let row = if m == 0 {
                vec![BigInt::one()]
            } else {
                let prev = &rows[m - 1];
                (0..=m)
                    .map(|j| {
                        let stay = if j < m { &prev[j] * j } else { BigInt::zero() };
                        let new_block = if j > 0 { prev[j - 1].clone() } else { BigInt::zero() };
                        stay + new_block
                    })
                    .collect()
            };
            rows.push(row);
        }
        Rational::from(rows[n][k].clone())
    }
}

/// `binom(m, k)` for non-negative integers.
pub fn binom_int(m: u64, k: u64) -> Rational {
    if k > m {
        return Rational::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (m - i) / (i + 1);
    }
    Rational::from(acc)
}

/// Generalized binomial `x (x-1) ... (x-k+1) / k!`; zero for `k < 0`.
pub fn binom_rat(x: &Rational, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    if let Some(m) = x.to_i64().and_then(|m| u64::try_from(m).ok()) {
        return binom_int(m, k as u64);
    }
    let mut acc = Rational::one();
    for i in 0..k {
        let factor = (x - &Rational::from(i))
            .checked_div(&Rational::from(i + 1))
            .expect("i + 1 > 0");
        acc *= &factor;
    }
    acc
}

/// Binomial coefficient with rational top and rational bottom, defined
/// through the Gamma function wherever the result is rational:
/// integer bottoms use [`binom_rat`]; otherwise the reflection
/// `binom(x, y) = binom(x, x - y)` is applied when `x - y` is an integer.
pub fn binom_general(x: &Rational, y: &Rational) -> Result<Rational, KernelError> {
    if let Some(k) = y.to_i64() {
        return Ok(binom_rat(x, k));
    }
    let d = x - y;
    match d.to_i64() {
        Some(k) => Ok(binom_rat(x, k)),
        None => Err(KernelError::NonIntegerBinomial {
            x: x.clone(),
            k: y.clone(),
        }),
    }
}

/// `x (x-1) ... (x-k+1)`.
pub fn falling_factorial(x: &Rational, k: u64) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * (x - &Rational::from(i)))
}

pub fn harmonic(n: usize, s: u32) -> Rational {
    GLOBAL.harmonic(n, s)
}

pub fn odd_harmonic(n: usize, s: u32) -> Rational {
    GLOBAL.odd_harmonic(n, s)
}

pub fn shifted_harmonic_diff(n: usize, r: &Rational) -> Result<Rational, KernelError> {
    GLOBAL.shifted_harmonic_diff(n, r)
}

pub fn bernoulli(n: usize) -> Rational {
    GLOBAL.bernoulli(n)
}

pub fn fibonacci(n: usize) -> Rational {
    GLOBAL.fibonacci(n)
}

pub fn lucas(n: usize) -> Rational {
    GLOBAL.lucas(n)
}

pub fn gibonacci(n: usize, g1: &Rational, g2: &Rational) -> Rational {
    GLOBAL.gibonacci(n, g1, g2)
}

pub fn stirling2(n: usize, k: usize) -> Rational {
    GLOBAL.stirling2(n, k)
}

pub fn catalan(n: usize) -> Rational {
    GLOBAL.catalan(n)
}

pub fn factorial(n: usize) -> Rational {
    GLOBAL.factorial(n)
}

/// Independent Bernoulli routes used to cross-check [`bernoulli`].
pub mod bernoulli_alt {
    use super::*;

    /// Akiyama–Tanigawa transform. It natively yields `B_1 = +1/2`; the sign
    /// is flipped to match the `B_1 = -1/2` convention used everywhere else.
    pub fn akiyama_tanigawa(n: usize) -> Rational {
        let mut row: Vec<Rational> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            row.push(Rational::ratio(1, m as i64 + 1).expect("m + 1 > 0"));
            for j in (1..=m).rev() {
                let diff = &row[j - 1] - &row[j];
                row[j - 1] = diff * Rational::from(j);
            }
        }
        if n == 1 {
            -&row[0]
        } else {
            row[0].clone()
        }
    }

    /// `sum_{k=0}^{n} (-1)^k k!/(k+1) S(n, k)`; the `k = 0` term supplies
    /// `B_0 = 1` and vanishes for `n >= 1`.
    pub fn stirling_sum(n: usize) -> Rational {
        let cache = KernelCache::global();
        (0..=n)
            .map(|k| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let weight = cache.factorial(k) * Rational::ratio(sign, k as i64 + 1).unwrap();
                weight * cache.stirling2(n, k)
            })
            .sum()
    }
}
