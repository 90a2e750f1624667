use std::collections::{BTreeMap, BTreeSet};

use super::lattice::BoolSemimodule;
use crate::error::{Error, Result};

/// Largest carrier accepted by [`are_isomorphic`].
pub const ISO_LIMIT: usize = 256;

struct Shape {
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    initial: Vec<Vec<usize>>,
}

impl Shape {
    fn of(m: &BoolSemimodule) -> Self {
        let n = m.len();
        let heights = m.heights();
        let lower = m.lower_covers();
        let mut upper = vec![Vec::new(); n];
        for (x, cs) in lower.iter().enumerate() {
            for &y in cs {
                upper[y].push(x);
            }
        }
        let mut indeg = vec![0usize; n];
        for a in 0..n {
            for b in 0..n {
                indeg[m.join(a, b)] += 1;
            }
        }
        let initial = (0..n)
            .map(|x| vec![usize::from(x == m.bottom()), heights[x], (0..n).filter(|&y| m.leq(y, x)).count(), indeg[x]])
            .collect();
        Shape { lower, upper, initial }
    }
}

/// Replaces raw signatures of both carriers by ids from one shared table.
fn relabel(raw: [Vec<Vec<usize>>; 2]) -> [Vec<usize>; 2] {
    let ids: BTreeMap<&Vec<usize>, usize> =
        raw.iter().flatten().collect::<BTreeSet<_>>().into_iter().zip(0..).collect();
    [0, 1].map(|k| raw[k].iter().map(|c| ids[c]).collect())
}

/// Joint stable colouring of two carriers: starts from (height, downset
/// size, number of pairs joining to the element) and refines by the colours
/// of lower and upper covers until no class splits.
fn colourings(m: &BoolSemimodule, n: &BoolSemimodule) -> [Vec<usize>; 2] {
    let shapes = [Shape::of(m), Shape::of(n)];
    let mut colour = relabel([shapes[0].initial.clone(), shapes[1].initial.clone()]);
    let mut classes = colour.iter().flatten().collect::<BTreeSet<_>>().len();
    loop {
        let raw = [0, 1].map(|k| {
            let (s, c) = (&shapes[k], &colour[k]);
            (0..c.len())
                .map(|x| {
                    let mut down: Vec<usize> = s.lower[x].iter().map(|&y| c[y]).collect();
                    let mut up: Vec<usize> = s.upper[x].iter().map(|&y| c[y]).collect();
                    down.sort_unstable();
                    up.sort_unstable();
                    let mut sig = vec![c[x], down.len()];
                    sig.extend(down);
                    sig.extend(up);
                    sig
                })
                .collect()
        });
        let next = relabel(raw);
        let k = next.iter().flatten().collect::<BTreeSet<_>>().len();
        colour = next;
        if k == classes {
            return colour;
        }
        classes = k;
    }
}

/// A join- and bottom-preserving bijection `m -> n` given as `map[x]`, or
/// `None` when the modules are not isomorphic. The search order is fixed,
/// so the same inputs always give the same bijection.
pub fn are_isomorphic(m: &BoolSemimodule, n: &BoolSemimodule) -> Result<Option<Vec<usize>>> {
    for x in [m, n] {
        if x.len() > ISO_LIMIT {
            return Err(Error::CarrierTooLarge { size: x.len(), limit: ISO_LIMIT });
        }
    }
    let size = m.len();
    if size != n.len() {
        return Ok(None);
    }
    let [cm, cn] = colourings(m, n);
    let (mut sm, mut sn) = (cm.clone(), cn.clone());
    sm.sort();
    sn.sort();
    if sm != sn {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by_key(|&x| (cn.iter().filter(|c| **c == cm[x]).count(), x));
    let mut map = vec![usize::MAX; size];
    let mut used = vec![false; size];
    if !assign(m, n, &cm, &cn, &mut map, &mut used, m.bottom(), n.bottom()) {
        return Ok(None);
    }
    Ok(search(m, n, &cm, &cn, &order, map, used))
}

#[allow(clippy::too_many_arguments)]
fn assign(
    m: &BoolSemimodule,
    n: &BoolSemimodule,
    cm: &[usize],
    cn: &[usize],
    map: &mut [usize],
    used: &mut [bool],
    x: usize,
    y: usize,
) -> bool {
    let mut work = vec![(x, y)];
    while let Some((x, y)) = work.pop() {
        if map[x] != usize::MAX {
            if map[x] != y {
                return false;
            }
            continue;
        }
        if used[y] || cm[x] != cn[y] {
            return false;
        }
        map[x] = y;
        used[y] = true;
        for z in 0..m.len() {
            if map[z] != usize::MAX {
                work.push((m.join(x, z), n.join(y, map[z])));
            }
        }
    }
    true
}

fn search(
    m: &BoolSemimodule,
    n: &BoolSemimodule,
    cm: &[usize],
    cn: &[usize],
    order: &[usize],
    map: Vec<usize>,
    used: Vec<bool>,
) -> Option<Vec<usize>> {
    let Some(&x) = order.iter().find(|&&x| map[x] == usize::MAX) else {
        return Some(map);
    };
    for y in 0..n.len() {
        if used[y] || cm[x] != cn[y] {
            continue;
        }
        let (mut mm, mut uu) = (map.clone(), used.clone());
        if assign(m, n, cm, cn, &mut mm, &mut uu, x, y) {
            if let Some(done) = search(m, n, cm, cn, order, mm, uu) {
                return Some(done);
            }
        }
    }
    None
}

/// Independent check that `map` is a bijection preserving joins and bottom.
pub fn is_isomorphism(m: &BoolSemimodule, n: &BoolSemimodule, map: &[usize]) -> bool {
    let k = m.len();
    if n.len() != k || map.len() != k {
        return false;
    }
    let mut hit = vec![false; k];
    for &y in map {
        if y >= k || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    map[m.bottom()] == n.bottom() && (0..k).all(|a| (0..k).all(|b| map[m.join(a, b)] == n.join(map[a], map[b])))
}
