//! Exact binomial combinatorics of cone decompositions of `T_{>=D}`.
//!
//! A term with `k` multiplicative variables generates `C(d+k-1, k-1)` terms of
//! degree `D+d`. Summing over a slice with `a_k` such terms must reproduce
//! `|T_{D+d}| = C(D+d+n-1, n-1)` for every `d`; the only profile that does so
//! is `a_k = C(D+n-1-k, n-k)`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

/// Exact `C(top, bottom)`.
pub fn binomial(top: u64, bottom: u64) -> BigUint {
    if bottom > top {
        return BigUint::from(0u32);
    }
    let bottom = bottom.min(top - bottom);
    let mut acc = BigUint::one();
    for i in 0..bottom {
        acc *= top - i;
        acc /= i + 1;
    }
    acc
}

/// `|T_D| = C(n+D-1, n-1)`.
pub fn slice_size(n: usize, degree: u32) -> usize {
    binomial(n as u64 + degree as u64 - 1, n as u64 - 1)
        .to_usize()
        .expect("slice size fits in usize")
}

/// The forced profile `(a_1, .., a_n)` with `a_k = C(D+n-1-k, n-k)`.
///
/// For `D = 0` the only term is `1`, which carries every variable, so the
/// profile is `(0, .., 0, 1)`.
pub fn sigma_expected(n: usize, degree: u32) -> Vec<usize> {
    if degree == 0 {
        let mut v = vec![0; n];
        if n > 0 {
            v[n - 1] = 1;
        }
        return v;
    }
    let (n64, d64) = (n as u64, degree as u64);
    (1..=n64)
        .map(|k| {
            binomial(d64 + n64 - 1 - k, n64 - k)
                .to_usize()
                .expect("profile entry fits in usize")
        })
        .collect()
}

/// Checks `C(D+d+n-1, n-1) = sum_k C(D+n-1-k, n-k) * C(d+k-1, k-1)` for every
/// `0 <= d <= d_max`, in exact arithmetic.
pub fn vandermonde_identity_check(n: usize, degree: u32, d_max: u32) -> bool {
    if n == 0 || degree == 0 {
        return false;
    }
    let (n64, big_d) = (n as u64, degree as u64);
    (0..=d_max as u64).all(|d| {
        let lhs = binomial(big_d + d + n64 - 1, n64 - 1);
        let rhs: BigUint = (1..=n64)
            .map(|k| binomial(big_d + n64 - 1 - k, n64 - k) * binomial(d + k - 1, k - 1))
            .sum();
        lhs == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::enumerate_terms;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 4), BigUint::from(0u32));
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_expected(3, 2), vec![3, 2, 1]);
        assert_eq!(sigma_expected(1, 7), vec![1]);
        assert_eq!(sigma_expected(4, 3), vec![10, 6, 3, 1]);
        assert_eq!(sigma_expected(4, 3).iter().sum::<usize>(), 20);
        assert_eq!(sigma_expected(3, 0), vec![0, 0, 1]);
    }

    #[test]
    fn sigma_counts_min_variable() {
        // a_k equals the number of terms whose smallest variable is x_k
        for n in 1..=5 {
            for d in 1..=5 {
                let mut counts = vec![0; n];
                for t in enumerate_terms(n, d) {
                    counts[t.min_var().unwrap()] += 1;
                }
                assert_eq!(sigma_expected(n, d), counts, "n={n} D={d}");
            }
        }
    }

    #[test]
    fn identity_examples() {
        assert!(vandermonde_identity_check(3, 2, 10));
        assert!(vandermonde_identity_check(1, 1, 0));
        assert!(vandermonde_identity_check(6, 6, 12));
    }
}
