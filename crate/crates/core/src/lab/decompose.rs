use std::collections::BTreeSet;

use serde::Serialize;

use super::congruence::{is_congruence_simple_with, SemimoduleCarrier};
use super::table::FiniteSemiringTable;
use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Default order cap for the exhaustive decisions on tables.
pub const DEFAULT_ORDER_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabOptions {
    pub order_limit: usize,
    pub exec: Exec,
}

impl Default for LabOptions {
    fn default() -> Self {
        LabOptions { order_limit: DEFAULT_ORDER_LIMIT, exec: Exec::default() }
    }
}

/// `S = e_1 S ⊕ .. ⊕ e_k S` with each summand congruence-simple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub idempotents: Vec<usize>,
    /// Size of each right ideal `e_i S`.
    pub summand_sizes: Vec<usize>,
}

pub(crate) fn checked(t: &FiniteSemiringTable, opts: &LabOptions) -> Result<()> {
    if t.order() > opts.order_limit {
        return Err(Error::OrderTooLarge { order: t.order(), limit: opts.order_limit });
    }
    t.validate().map_err(|v| Error::InvalidTable(v.to_string()))
}

/// Whether `s ↦ (e_1 s, .., e_k s)` is a bijection onto `Π e_i S`.
pub fn evaluation_is_bijective(t: &FiniteSemiringTable, idempotents: &[usize]) -> bool {
    let images: BTreeSet<Vec<usize>> =
        (0..t.order()).map(|s| idempotents.iter().map(|&e| t.mul(e, s)).collect()).collect();
    let injective = images.len() == t.order();
    let product: usize = idempotents.iter().map(|&e| SemimoduleCarrier::right_ideal(t, e).size()).product();
    injective && product == t.order()
}

/// `Σ e_i = 1` in the table.
pub fn sums_to_one(t: &FiniteSemiringTable, elems: &[usize]) -> bool {
    elems.iter().fold(t.zero(), |acc, &e| t.add(acc, e)) == t.one()
}

/// Strictly increasing `k`-subsets of `items`, lexicographic.
pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Searches tuples of distinct nonzero idempotents summing to 1 whose right
/// ideals form a direct decomposition into congruence-simple summands.
/// Tuples are tried by increasing size, then lexicographically.
pub fn congruence_semisimple_decompose(t: &FiniteSemiringTable) -> Result<Option<Decomposition>> {
    congruence_semisimple_decompose_with(t, &LabOptions::default())
}

pub fn congruence_semisimple_decompose_with(
    t: &FiniteSemiringTable,
    opts: &LabOptions,
) -> Result<Option<Decomposition>> {
    checked(t, opts)?;
    let n = t.order();
    let nonzero: Vec<usize> = t.idempotents().into_iter().filter(|&e| e != t.zero()).collect();
    let simple: Vec<bool> = par::map(opts.exec, nonzero.len(), |i| {
        let m = SemimoduleCarrier::right_ideal(t, nonzero[i]);
        is_congruence_simple_with(&m, Exec::Sequential).unwrap_or(false)
    });
    let candidates: Vec<usize> = nonzero.iter().zip(&simple).filter(|(_, &s)| s).map(|(&e, _)| e).collect();
    // each summand has at least two elements, so 2^k <= n
    let max_k = usize::BITS as usize - 1 - n.leading_zeros() as usize;
    for k in 0..=max_k.min(candidates.len()) {
        let tuples = combinations(&candidates, k);
        let hit = par::find_first_in(opts.exec, &tuples, |tuple| {
            (sums_to_one(t, tuple) && evaluation_is_bijective(t, tuple)).then(|| tuple.clone())
        });
        if let Some((_, idempotents)) = hit {
            let summand_sizes = idempotents.iter().map(|&e| SemimoduleCarrier::right_ideal(t, e).size()).collect();
            return Ok(Some(Decomposition { idempotents, summand_sizes }));
        }
    }
    Ok(None)
}

/// Nonzero idempotent not expressible as `f + g` with `f, g` nonzero,
/// orthogonal idempotents.
pub fn is_primitive_idempotent(t: &FiniteSemiringTable, e: usize) -> bool {
    if e == t.zero() || !t.is_idempotent(e) {
        return false;
    }
    let z = t.zero();
    let idem: Vec<usize> = t.idempotents().into_iter().filter(|&f| f != z).collect();
    !idem.iter().any(|&f| idem.iter().any(|&g| t.mul(f, g) == z && t.mul(g, f) == z && t.add(f, g) == e))
}

/// A set of pairwise orthogonal primitive idempotents summing to 1, smallest
/// size first and lexicographic within a size.
pub fn primitive_orthogonal_units(t: &FiniteSemiringTable) -> Result<Option<Vec<usize>>> {
    primitive_orthogonal_units_with(t, &LabOptions::default())
}

pub fn primitive_orthogonal_units_with(t: &FiniteSemiringTable, opts: &LabOptions) -> Result<Option<Vec<usize>>> {
    checked(t, opts)?;
    let z = t.zero();
    let prims: Vec<usize> = (0..t.order()).filter(|&e| is_primitive_idempotent(t, e)).collect();
    let orth = |a: usize, b: usize| t.mul(a, b) == z && t.mul(b, a) == z;
    if t.one() == z {
        return Ok(Some(Vec::new()));
    }
    for k in 1..=prims.len() {
        let tuples = combinations(&prims, k);
        let hit = par::find_first_in(opts.exec, &tuples, |tuple| {
            let pairwise = tuple.iter().enumerate().all(|(i, &a)| tuple[i + 1..].iter().all(|&b| orth(a, b)));
            (pairwise && sums_to_one(t, tuple)).then(|| tuple.clone())
        });
        if let Some((_, set)) = hit {
            return Ok(Some(set));
        }
    }
    Ok(None)
}
