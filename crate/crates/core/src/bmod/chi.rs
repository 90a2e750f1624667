//! Integer arithmetic behind the cardinality invariant `χ(M) = |M|` on
//! finitely generated projective Boolean semimodules.

use crate::par::{self, Exec};

/// Primes up to `bound`, by trial division.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// Exponent vector of `n` over `primes`, or `None` if `n` has another
/// prime factor.
pub fn factor_over(mut n: u128, primes: &[u64]) -> Option<Vec<u32>> {
    if n == 0 {
        return None;
    }
    let mut exps = vec![0; primes.len()];
    for (e, &p) in exps.iter_mut().zip(primes) {
        while n.is_multiple_of(p as u128) {
            n /= p as u128;
            *e += 1;
        }
    }
    (n == 1).then_some(exps)
}

/// Outcome of the prime-independence sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    pub primes: Vec<u64>,
    pub multisets: usize,
    /// First exponent vector whose product fails to factor back to itself.
    pub failure: Option<Vec<u32>>,
}

/// Checks that distinct multisets of primes `<= prime_bound`, each prime
/// used at most `max_exp` times, have distinct products: every product is
/// factored again and must give back its exponent vector.
pub fn prime_independence(prime_bound: u64, max_exp: u32, exec: Exec) -> IndependenceReport {
    let primes = primes_up_to(prime_bound);
    let base = max_exp as usize + 1;
    let total = base.pow(primes.len() as u32);
    let decode = |mut idx: usize| {
        let mut e = vec![0u32; primes.len()];
        for slot in e.iter_mut() {
            *slot = (idx % base) as u32;
            idx /= base;
        }
        e
    };
    let failure = par::find_first(exec, total, |idx| {
        let e = decode(idx);
        let product = primes.iter().zip(&e).fold(1u128, |acc, (&p, &k)| acc * (p as u128).pow(k));
        (factor_over(product, &primes).as_ref() != Some(&e)).then_some(e)
    })
    .map(|(_, e)| e);
    IndependenceReport { primes, multisets: total, failure }
}

/// All `(n, m)` with `n, m <= bound` and `3 · 2^n = 2^m`.
pub fn three_times_power_of_two_solutions(bound: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for n in 0..=bound {
        for m in 0..=bound {
            if 3u128 << n == 1u128 << m {
                out.push((n, m));
            }
        }
    }
    out
}

fn pow_mod(base: u64, exp: u32, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    let mut b = base % modulus;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % modulus;
        }
        b = b * b % modulus;
        e >>= 1;
    }
    acc
}

/// The smallest prime `p <= prime_bound` dividing none of `c^1, ..., c^max_exp`.
pub fn prime_avoiding_powers(c: u64, prime_bound: u64, max_exp: u32) -> Option<u64> {
    primes_up_to(prime_bound).into_iter().find(|&p| (1..=max_exp).all(|m| pow_mod(c, m, p) != 0))
}

/// First `c` in `1..=c_bound` for which every prime `<= prime_bound` divides
/// some `c^m` with `m <= max_exp`; `None` when no such `c` exists, which is
/// the arithmetic shape of "no finite `Q_c` is an order unit".
pub fn order_unit_obstruction(c_bound: u64, prime_bound: u64, max_exp: u32, exec: Exec) -> Option<u64> {
    let primes = primes_up_to(prime_bound);
    par::find_first(exec, c_bound as usize, |i| {
        let c = i as u64 + 1;
        let avoided = primes.iter().any(|&p| (1..=max_exp).all(|m| pow_mod(c, m, p) != 0));
        (!avoided).then_some(c)
    })
    .map(|(_, c)| c)
}
