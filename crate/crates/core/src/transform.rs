//! Binomial transform `sigma_n = sum_{k=0}^n binom(n,k) (-1)^k s_k`.
//!
//! The map is an involution, so the inverse is the same function.

use crate::kernels::binom_int;
use crate::rational::Rational;

pub fn binomial_transform(s: &[Rational]) -> Vec<Rational> {
    (0..s.len())
        .map(|n| {
            let mut acc = Rational::zero();
            for (k, v) in s.iter().enumerate().take(n + 1) {
                let c = binom_int(n as u64, k as u64);
                if k % 2 == 0 {
                    acc += &(c * v);
                } else {
                    acc -= &(c * v);
                }
            }
            acc
        })
        .collect()
}

pub fn inverse_binomial_transform(sigma: &[Rational]) -> Vec<Rational> {
    binomial_transform(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{bernoulli, fibonacci};

    fn signed(v: Rational, n: usize) -> Rational {
        if n.is_multiple_of(2) {
            v
        } else {
            -v
        }
    }

    #[test]
    fn fibonacci_pair() {
        let s: Vec<Rational> = (0..=10).map(|n| signed(fibonacci(n), n)).collect();
        let expected: Vec<Rational> = (0..=10).map(|n| fibonacci(2 * n)).collect();
        assert_eq!(binomial_transform(&s), expected);
    }

    #[test]
    fn bernoulli_is_self_paired() {
        let s: Vec<Rational> = (0..=12).map(|n| signed(bernoulli(n), n)).collect();
        assert_eq!(binomial_transform(&s), s);
    }

    #[test]
    fn involution_on_small_input() {
        let s: Vec<Rational> = [3, -1, 4, 1, -5, 9].into_iter().map(Rational::from).collect();
        assert_eq!(inverse_binomial_transform(&binomial_transform(&s)), s);
        assert!(binomial_transform(&[]).is_empty());
    }
}
