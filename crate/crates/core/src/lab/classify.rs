use std::fmt;

use serde::Serialize;

use super::decompose::{
    checked, congruence_semisimple_decompose_with, primitive_orthogonal_units_with, Decomposition, LabOptions,
};
use super::table::{prime_power, FiniteSemiringTable};
use crate::error::Result;
use crate::par;
use crate::semiring::KernelFlags;

/// One factor of a congruence-semisimple semiring: `M_n(B)` or `M_m(GF(q))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum Factor {
    #[serde(rename = "BOOL")]
    Bool { n: usize },
    #[serde(rename = "FIELD")]
    Field { q: usize, m: usize },
}

impl Factor {
    pub fn order(&self) -> u128 {
        let (base, n) = match *self {
            Factor::Bool { n } => (2u128, n),
            Factor::Field { q, m } => (q as u128, m),
        };
        base.checked_pow((n * n) as u32).unwrap_or(u128::MAX)
    }

    pub fn table(&self) -> Result<FiniteSemiringTable> {
        match *self {
            Factor::Bool { n } => FiniteSemiringTable::boolean().matrix_semiring(n),
            Factor::Field { q, m } => FiniteSemiringTable::gf(q)?.matrix_semiring(m),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Bool { n } => write!(f, "M{n}(B)"),
            Factor::Field { q, m } => write!(f, "M{m}(GF{q})"),
        }
    }
}

/// Every factor whose order divides `order`, in canonical order.
fn factor_catalogue(order: usize) -> Vec<Factor> {
    let mut out = Vec::new();
    for n in 1.. {
        let f = Factor::Bool { n };
        if f.order() > order as u128 {
            break;
        }
        if (order as u128).is_multiple_of(f.order()) {
            out.push(f);
        }
    }
    for q in 2..=order {
        if prime_power(q).is_none() {
            continue;
        }
        for m in 1.. {
            let f = Factor::Field { q, m };
            if f.order() > order as u128 {
                break;
            }
            if (order as u128).is_multiple_of(f.order()) {
                out.push(f);
            }
        }
    }
    out
}

/// Non-decreasing factor lists (in catalogue order) with product `order`.
fn candidate_products(order: usize) -> Vec<Vec<Factor>> {
    fn rec(cat: &[Factor], start: usize, rest: u128, cur: &mut Vec<Factor>, out: &mut Vec<Vec<Factor>>) {
        if rest == 1 {
            out.push(cur.clone());
            return;
        }
        for i in start..cat.len() {
            let o = cat[i].order();
            if rest.is_multiple_of(o) {
                cur.push(cat[i]);
                rec(cat, i, rest / o, cur, out);
                cur.pop();
            }
        }
    }
    let cat = factor_catalogue(order);
    let mut out = Vec::new();
    rec(&cat, 0, order as u128, &mut Vec::new(), &mut out);
    out
}

pub fn product_table(factors: &[Factor]) -> Result<FiniteSemiringTable> {
    let mut acc = FiniteSemiringTable::zmod(1).with_name("0");
    for (i, f) in factors.iter().enumerate() {
        let t = f.table()?;
        acc = if i == 0 { t } else { acc.product(&t)? };
    }
    Ok(acc)
}

/// Invariants preserved by semiring isomorphisms, used to prune the search.
fn signature(t: &FiniteSemiringTable, x: usize) -> [usize; 9] {
    let n = t.order();
    let z = t.zero();
    let mut add_order = 1;
    let mut acc = x;
    while acc != z && add_order <= n {
        acc = t.add(acc, x);
        add_order += 1;
    }
    [
        usize::from(x == z),
        usize::from(x == t.one()),
        usize::from(t.add(x, x) == x),
        usize::from(t.mul(x, x) == x),
        add_order,
        (0..n).filter(|&y| t.add(x, y) == x).count(),
        (0..n).filter(|&y| t.mul(x, y) == z).count(),
        (0..n).filter(|&y| t.mul(y, x) == z).count(),
        (0..n).filter(|&y| t.mul(x, y) == y).count(),
    ]
}

/// A semiring isomorphism `s -> t` as an index map, if one exists.
pub fn find_isomorphism(s: &FiniteSemiringTable, t: &FiniteSemiringTable) -> Option<Vec<usize>> {
    let n = s.order();
    if n != t.order() {
        return None;
    }
    let sig_s: Vec<_> = (0..n).map(|x| signature(s, x)).collect();
    let sig_t: Vec<_> = (0..n).map(|x| signature(t, x)).collect();
    let (mut a, mut b) = (sig_s.clone(), sig_t.clone());
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    // rarest signature classes first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (sig_t.iter().filter(|g| **g == sig_s[x]).count(), x));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !assign(s, t, &sig_s, &sig_t, &mut map, &mut used, s.zero(), t.zero())
        || !assign(s, t, &sig_s, &sig_t, &mut map, &mut used, s.one(), t.one())
    {
        return None;
    }
    search(s, t, &sig_s, &sig_t, &order, map, used)
}

#[allow(clippy::too_many_arguments)]
fn assign(
    s: &FiniteSemiringTable,
    t: &FiniteSemiringTable,
    sig_s: &[[usize; 9]],
    sig_t: &[[usize; 9]],
    map: &mut [usize],
    used: &mut [bool],
    x: usize,
    y: usize,
) -> bool {
    let n = s.order();
    let mut work = vec![(x, y)];
    while let Some((x, y)) = work.pop() {
        if map[x] != usize::MAX {
            if map[x] != y {
                return false;
            }
            continue;
        }
        if used[y] || sig_s[x] != sig_t[y] {
            return false;
        }
        map[x] = y;
        used[y] = true;
        for z in 0..n {
            let w = map[z];
            if w == usize::MAX {
                continue;
            }
            work.push((s.add(x, z), t.add(y, w)));
            work.push((s.mul(x, z), t.mul(y, w)));
            work.push((s.mul(z, x), t.mul(w, y)));
        }
    }
    true
}

fn search(
    s: &FiniteSemiringTable,
    t: &FiniteSemiringTable,
    sig_s: &[[usize; 9]],
    sig_t: &[[usize; 9]],
    order: &[usize],
    map: Vec<usize>,
    used: Vec<bool>,
) -> Option<Vec<usize>> {
    let Some(&x) = order.iter().find(|&&x| map[x] == usize::MAX) else {
        return Some(map);
    };
    for y in 0..t.order() {
        if used[y] || sig_s[x] != sig_t[y] {
            continue;
        }
        let (mut m, mut u) = (map.clone(), used.clone());
        if assign(s, t, sig_s, sig_t, &mut m, &mut u, x, y) {
            if let Some(done) = search(s, t, sig_s, sig_t, order, m, u) {
                return Some(done);
            }
        }
    }
    None
}

/// Independent check that `map` is a semiring isomorphism `s -> t`.
pub fn is_isomorphism(s: &FiniteSemiringTable, t: &FiniteSemiringTable, map: &[usize]) -> bool {
    let n = s.order();
    if map.len() != n || t.order() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    map[s.zero()] == t.zero()
        && map[s.one()] == t.one()
        && (0..n).all(|a| {
            (0..n).all(|b| map[s.add(a, b)] == t.add(map[a], map[b]) && map[s.mul(a, b)] == t.mul(map[a], map[b]))
        })
}

/// Finds a product of matrix semirings over `B` and finite fields isomorphic
/// to `t`. Candidate factor lists are tried in canonical order.
pub fn classify_factors(t: &FiniteSemiringTable) -> Result<Option<Vec<Factor>>> {
    classify_factors_with(t, &LabOptions::default())
}

pub fn classify_factors_with(t: &FiniteSemiringTable, opts: &LabOptions) -> Result<Option<Vec<Factor>>> {
    checked(t, opts)?;
    let candidates = candidate_products(t.order());
    let hit = par::find_first_in(opts.exec, &candidates, |factors| {
        let p = product_table(factors).ok()?;
        find_isomorphism(t, &p).map(|_| factors.clone())
    });
    Ok(hit.map(|(_, f)| f))
}

/// Everything the lab knows about one table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiringReport {
    pub order: usize,
    pub flags: KernelFlags,
    pub decomposition: Option<Decomposition>,
    pub factors: Option<Vec<Factor>>,
    pub primitive_orthogonal_units: Option<Vec<usize>>,
    pub congruence_semisimple: bool,
    /// Decomposition search and factor classification agree.
    pub procedures_agree: bool,
    /// The opposite table yields the same verdict.
    pub opposite_agrees: bool,
}

pub fn analyze_table(t: &FiniteSemiringTable, opts: &LabOptions) -> Result<SemiringReport> {
    checked(t, opts)?;
    let decomposition = congruence_semisimple_decompose_with(t, opts)?;
    let factors = classify_factors_with(t, opts)?;
    let opposite = congruence_semisimple_decompose_with(&t.opposite(), opts)?;
    Ok(SemiringReport {
        order: t.order(),
        flags: t.flags(),
        primitive_orthogonal_units: primitive_orthogonal_units_with(t, opts)?,
        congruence_semisimple: decomposition.is_some(),
        procedures_agree: decomposition.is_some() == factors.is_some(),
        opposite_agrees: decomposition.is_some() == opposite.is_some(),
        decomposition,
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_for_sixteen() {
        let c = candidate_products(16);
        assert!(c.contains(&vec![Factor::Bool { n: 2 }]));
        assert!(c.contains(&vec![Factor::Field { q: 2, m: 2 }]));
        assert!(c.contains(&vec![Factor::Field { q: 16, m: 1 }]));
        assert!(c.contains(&vec![Factor::Bool { n: 1 }; 4]));
    }

    #[test]
    fn m2b_classifies_as_single_factor() {
        let t = FiniteSemiringTable::boolean().matrix_semiring(2).unwrap();
        assert_eq!(classify_factors(&t).unwrap(), Some(vec![Factor::Bool { n: 2 }]));
    }

    #[test]
    fn b_times_gf2() {
        let t = FiniteSemiringTable::boolean().product(&FiniteSemiringTable::gf(2).unwrap()).unwrap();
        assert_eq!(classify_factors(&t).unwrap(), Some(vec![Factor::Bool { n: 1 }, Factor::Field { q: 2, m: 1 }]));
    }

    #[test]
    fn z4_is_rejected() {
        assert_eq!(classify_factors(&FiniteSemiringTable::zmod(4)).unwrap(), None);
    }

    #[test]
    fn isomorphism_search_is_verified() {
        let z6 = FiniteSemiringTable::zmod(6);
        let p = product_table(&[Factor::Field { q: 2, m: 1 }, Factor::Field { q: 3, m: 1 }]).unwrap();
        let map = find_isomorphism(&z6, &p).unwrap();
        assert!(is_isomorphism(&z6, &p, &map));
        assert!(find_isomorphism(&FiniteSemiringTable::zmod(4), &FiniteSemiringTable::gf(4).unwrap()).is_none());
    }
}
