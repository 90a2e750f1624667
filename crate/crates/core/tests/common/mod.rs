//! Generators and independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semik::bratteli::{BratteliPresentation, IntertwiningWitness};
use semik::semiring::{Element, Kernel, SemiMatrix, Trop};
use semik::trop::{TropSpan, TropVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub type Bits = Vec<Vec<u8>>;

/// Boolean product with plain loops.
pub fn bool_product(a: &Bits, b: &Bits) -> Bits {
    let (n, m, k) = (a.len(), b[0].len(), b.len());
    (0..n).map(|i| (0..m).map(|j| u8::from((0..k).any(|t| a[i][t] == 1 && b[t][j] == 1))).collect()).collect()
}

pub fn bits_to_matrix(a: &Bits) -> SemiMatrix {
    let rows: Vec<&[u8]> = a.iter().map(Vec::as_slice).collect();
    SemiMatrix::boolean(&rows).unwrap()
}

/// A random preorder (reflexive, transitive relation) on `n` points; as a
/// Boolean matrix it is idempotent.
pub fn random_preorder(rng: &mut ChaCha8Rng, n: usize) -> Bits {
    let mut r: Bits = (0..n).map(|i| (0..n).map(|j| u8::from(i == j || rng.gen_bool(0.3))).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] == 1 && r[k][j] == 1 {
                    r[i][j] = 1;
                }
            }
        }
    }
    r
}

/// A Boolean idempotent of size `1..=max_n`: a preorder, or the
/// stabilised power of a random matrix.
pub fn random_bool_idempotent(rng: &mut ChaCha8Rng, max_n: usize) -> Bits {
    let n = rng.gen_range(1..=max_n);
    if rng.gen_bool(0.5) {
        return random_preorder(rng, n);
    }
    let a: Bits = (0..n).map(|_| (0..n).map(|_| u8::from(rng.gen_bool(0.35))).collect()).collect();
    let mut p = a.clone();
    loop {
        if bool_product(&p, &p) == p {
            return p;
        }
        p = bool_product(&p, &a);
    }
}

/// Tropical scalars scaled by 12 so that denominators up to 4 become
/// integers; `None` is `-inf`.
pub type Scaled = Option<i64>;

pub fn scaled(t: &Trop) -> Scaled {
    t.value().map(|r| {
        let s = r * BigRational::from_integer(BigInt::from(12));
        assert!(s.is_integer(), "denominator does not divide 12");
        i64::try_from(s.to_integer()).unwrap()
    })
}

pub fn random_trop(rng: &mut ChaCha8Rng) -> Trop {
    if rng.gen_bool(0.25) {
        Trop::NEG_INF
    } else {
        Trop::ratio(rng.gen_range(-8..=8), rng.gen_range(1..=4))
    }
}

pub fn random_span(rng: &mut ChaCha8Rng, max_ambient: usize, max_gens: usize) -> TropSpan {
    let ambient = rng.gen_range(1..=max_ambient);
    let count = rng.gen_range(1..=max_gens);
    let gens = (0..count).map(|_| (0..ambient).map(|_| random_trop(rng)).collect()).collect();
    TropSpan::new(ambient, gens).unwrap()
}

/// Max-plus evaluation of `⊕ λ_j g_j` in scaled integers.
pub fn oracle_combine(ambient: usize, gens: &[Vec<Scaled>], lambda: &[Scaled]) -> Vec<Scaled> {
    (0..ambient).map(|i| gens.iter().zip(lambda).filter_map(|(g, l)| Some(g[i]? + (*l)?)).max()).collect()
}

/// Membership of `x` in the span of `gens`, decided with the principal
/// coefficient vector in scaled integers.
pub fn oracle_member(gens: &[Vec<Scaled>], x: &[Scaled]) -> bool {
    let lambda: Vec<Scaled> = gens
        .iter()
        .map(|g| {
            let mut best: Option<Option<i64>> = None;
            for (a, xi) in g.iter().zip(x) {
                if let Some(a) = a {
                    let cand = xi.map(|v| v - a);
                    best = Some(match best {
                        None => cand,
                        Some(b) => match (b, cand) {
                            (None, _) | (_, None) => None,
                            (Some(p), Some(q)) => Some(p.min(q)),
                        },
                    });
                }
            }
            best.flatten()
        })
        .collect();
    oracle_combine(x.len(), gens, &lambda) == x
}

pub fn scaled_span(sp: &TropSpan) -> Vec<Vec<Scaled>> {
    sp.generators().iter().map(|g| g.iter().map(scaled).collect()).collect()
}

/// Smallest number of input generators whose span contains all of them.
pub fn brute_force_min_generators(sp: &TropSpan) -> usize {
    let gens = scaled_span(sp);
    let k = gens.len();
    (0..=k)
        .find(|&size| {
            (0u32..1 << k).filter(|m| m.count_ones() as usize == size).any(|mask| {
                let chosen: Vec<Vec<Scaled>> = (0..k).filter(|j| mask >> j & 1 == 1).map(|j| gens[j].clone()).collect();
                gens.iter().all(|g| oracle_member(&chosen, g))
            })
        })
        .unwrap()
}

pub fn trop_matrix(rows: &[Vec<Trop>]) -> SemiMatrix {
    let (r, c) = (rows.len(), rows[0].len());
    SemiMatrix::new(Kernel::Trop, r, c, rows.iter().flatten().cloned().map(Element::Trop).collect()).unwrap()
}

pub fn tv(xs: &[i64]) -> TropVector {
    xs.iter().map(|&x| Trop::int(x)).collect()
}

/// Distinct OR-combinations of the columns, zero included.
pub fn oracle_bool_span(cols: &[u32]) -> BTreeSet<u32> {
    let mut span = BTreeSet::from([0u32]);
    for &c in cols {
        let next: Vec<u32> = span.iter().map(|&s| s | c).collect();
        span.extend(next);
    }
    span
}

/// Elements of a finite join-semilattice that are not the join of the
/// elements strictly below them.
pub fn oracle_join_irreducibles(span: &BTreeSet<u32>) -> usize {
    span.iter()
        .filter(|&&x| {
            let below = span.iter().filter(|&&y| y != x && y & !x == 0).fold(0, |acc, &y| acc | y);
            x != 0 && below != x
        })
        .count()
}

pub fn columns_as_masks(a: &Bits) -> Vec<u32> {
    let n = a.len();
    (0..a[0].len()).map(|j| (0..n).fold(0, |acc, i| acc | (u32::from(a[i][j]) << i))).collect()
}

pub fn compose_u64(after: &[Vec<u64>], before: &[Vec<u64>]) -> Vec<Vec<u64>> {
    (0..after.len())
        .map(|i| (0..before[0].len()).map(|j| (0..before.len()).map(|k| after[i][k] * before[k][j]).sum()).collect())
        .collect()
}

/// Product of the stage maps from `from` to `from + steps`, periodic tail
/// unrolled by hand.
pub fn oracle_stage_map(p: &BratteliPresentation, from: usize, steps: usize) -> Vec<Vec<u64>> {
    let rank = p.levels()[from.min(p.levels().len() - 1)].len();
    let mut acc: Vec<Vec<u64>> = (0..rank).map(|i| (0..rank).map(|j| u64::from(i == j)).collect()).collect();
    for k in from..from + steps {
        let step = match p.steps().get(k) {
            Some(s) => s.matrix().to_vec(),
            None if p.steps().is_empty() => acc.clone(),
            None => {
                let period = p.period().unwrap_or(1);
                let n = p.steps().len();
                let idx = n - period + (k - n) % period;
                p.steps()[idx].matrix().to_vec()
            }
        };
        acc = if p.steps().is_empty() { acc } else { compose_u64(&step, &acc) };
    }
    acc
}

pub fn oracle_intertwines(a: &BratteliPresentation, b: &BratteliPresentation, w: &IntertwiningWitness) -> bool {
    compose_u64(&w.beta, &w.alpha) == oracle_stage_map(a, w.left_stage, w.left_shift)
        && compose_u64(&w.alpha, &w.beta) == oracle_stage_map(b, w.right_stage, w.right_shift)
}
