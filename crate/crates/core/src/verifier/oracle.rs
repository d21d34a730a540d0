//! Independent raw-loop evaluations used to cross-check catalog entries.

use crate::kernels::{binom_int, harmonic, odd_harmonic};
use crate::rational::Rational;

/// The two double sums of the master identities and their common value,
/// each by its own nested loop. Sequences are indexed from 1; index 0 is
/// ignored.
pub fn brute_force_double_sum(a: &[Rational], b: &[Rational], n: usize) -> (Rational, Rational, Rational) {
    let mut shifted = Rational::zero();
    for p in 0..n {
        for k in 1..=n - p {
            shifted += &(&a[p + k] * &b[k]);
        }
    }
    let mut reversed = Rational::zero();
    for k in 1..=n {
        for j in 0..k {
            reversed += &(&a[n - j] * &b[k - j]);
        }
    }
    let mut common = Rational::zero();
    for k in 1..=n {
        let mut inner = Rational::zero();
        for bj in &b[1..=k] {
            inner += bj;
        }
        common += &(&a[k] * &inner);
    }
    (shifted, reversed, common)
}

/// Both sides of the central binomial O/H double sum equality.
pub fn central_binomial_oh(n: usize) -> (Rational, Rational) {
    let mut lhs = Rational::zero();
    let mut rhs = Rational::zero();
    for k in 1..=n {
        for j in 0..k {
            let m = n - j;
            let weight = Rational::from(4).pow(j as i64).unwrap() * binom_int(2 * m as u64, m as u64);
            let d = (k - j) as i64;
            lhs += &(&weight * &odd_harmonic(m, 1) * Rational::ratio(1, d).unwrap());
            rhs += &(&weight * &harmonic(m, 1) * Rational::ratio(1, 2 * d - 1).unwrap());
        }
    }
    (lhs, rhs)
}

/// `sum_{m<=r} sum_{q<m} sum_{k<q} sum_{j<k} 1/((k-j)(q-j)(q-j+1))` by plain loops.
pub fn quadruple_sum(r: usize) -> Rational {
    let mut total = Rational::zero();
    for m in 1..=r {
        for q in 1..m {
            for k in 1..q {
                for j in 0..k {
                    let d = ((k - j) * (q - j) * (q - j + 1)) as i64;
                    total += &Rational::ratio(1, d).unwrap();
                }
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequences() {
        let ones = vec![Rational::one(); 8];
        let (x, y, z) = brute_force_double_sum(&ones, &ones, 7);
        assert_eq!(x, Rational::from(28));
        assert_eq!(y, x);
        assert_eq!(z, x);
        let (x, y, z) = brute_force_double_sum(&ones, &ones, 0);
        assert!(x.is_zero() && y.is_zero() && z.is_zero());
    }

    #[test]
    fn central_binomial_sides_agree() {
        for n in 0..=12 {
            let (l, r) = central_binomial_oh(n);
            assert_eq!(l, r, "n = {n}");
        }
    }

    #[test]
    fn quadruple_small_values() {
        assert!(quadruple_sum(2).is_zero());
        assert_eq!(quadruple_sum(3), Rational::ratio(1, 6).unwrap());
        assert_eq!(quadruple_sum(4), Rational::ratio(5, 8).unwrap());
    }
}
