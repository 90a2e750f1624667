use std::collections::BTreeSet;

use super::table::FiniteSemiringTable;
use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Default cap on carriers whose full congruence lattice is enumerated.
pub const DEFAULT_CONGRUENCE_LIMIT: usize = 8;
/// Cap on carriers for the simplicity test, which only needs principal
/// congruences.
pub const SIMPLICITY_LIMIT: usize = 64;

/// A finite right semimodule over a table semiring, with elements indexed
/// locally as `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemimoduleCarrier {
    /// Ambient labels of the elements (e.g. their index in `S`).
    labels: Vec<usize>,
    add: Vec<usize>,
    act: Vec<usize>,
    zero: usize,
    scalars: usize,
}

impl SemimoduleCarrier {
    /// Builds a carrier from local tables: `add[x][y]` and `act[x][s]`.
    /// Checks closure (indices in range) and the right-action axioms.
    pub fn new(
        labels: Vec<usize>,
        add: Vec<Vec<usize>>,
        act: Vec<Vec<usize>>,
        zero: usize,
        scalars: &FiniteSemiringTable,
    ) -> Result<Self> {
        let n = labels.len();
        let q = scalars.order();
        let malformed = |m: &str| Error::Malformed(format!("semimodule carrier: {m}"));
        if n == 0 || zero >= n {
            return Err(malformed("empty carrier or zero out of range"));
        }
        if add.len() != n || act.len() != n || add.iter().any(|r| r.len() != n) || act.iter().any(|r| r.len() != q) {
            return Err(malformed("table shapes"));
        }
        let add: Vec<usize> = add.into_iter().flatten().collect();
        let act: Vec<usize> = act.into_iter().flatten().collect();
        if add.iter().chain(&act).any(|&x| x >= n) {
            return Err(malformed("not closed"));
        }
        let m = SemimoduleCarrier { labels, add, act, zero, scalars: q };
        for x in 0..n {
            if m.add(m.zero, x) != x || m.act(x, scalars.one()) != x || m.act(x, scalars.zero()) != m.zero {
                return Err(malformed("identity axioms"));
            }
            for s in 0..q {
                for t in 0..q {
                    if m.act(x, scalars.mul(s, t)) != m.act(m.act(x, s), t)
                        || m.act(x, scalars.add(s, t)) != m.add(m.act(x, s), m.act(x, t))
                    {
                        return Err(malformed("action axioms"));
                    }
                }
                for y in 0..n {
                    if m.act(m.add(x, y), s) != m.add(m.act(x, s), m.act(y, s)) {
                        return Err(malformed("action does not distribute"));
                    }
                }
            }
        }
        Ok(m)
    }

    /// The right ideal `eS` as a right `S`-semimodule.
    pub fn right_ideal(t: &FiniteSemiringTable, e: usize) -> Self {
        let labels: Vec<usize> = (0..t.order()).map(|s| t.mul(e, s)).collect::<BTreeSet<_>>().into_iter().collect();
        Self::sub_carrier(t, labels)
    }

    /// `S_S`, the regular right semimodule.
    pub fn regular(t: &FiniteSemiringTable) -> Self {
        Self::sub_carrier(t, (0..t.order()).collect())
    }

    fn sub_carrier(t: &FiniteSemiringTable, labels: Vec<usize>) -> Self {
        let pos = |x: usize| labels.binary_search(&x).expect("right ideals are closed");
        let n = labels.len();
        let q = t.order();
        let mut add = Vec::with_capacity(n * n);
        for &x in &labels {
            for &y in &labels {
                add.push(pos(t.add(x, y)));
            }
        }
        let mut act = Vec::with_capacity(n * q);
        for &x in &labels {
            for s in 0..q {
                act.push(pos(t.mul(x, s)));
            }
        }
        let zero = pos(t.zero());
        SemimoduleCarrier { labels, add, act, zero, scalars: q }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.size() + y]
    }

    #[inline]
    pub fn act(&self, x: usize, s: usize) -> usize {
        self.act[x * self.scalars + s]
    }

    /// Smallest congruence containing the given pairs.
    pub fn generated_congruence(&self, pairs: &[(usize, usize)]) -> CongruencePartition {
        let n = self.size();
        let mut uf = UnionFind::new(n);
        let mut work: Vec<(usize, usize)> = pairs.to_vec();
        while let Some((a, b)) = work.pop() {
            if !uf.union(a, b) {
                continue;
            }
            for z in 0..n {
                work.push((self.add(a, z), self.add(b, z)));
            }
            for s in 0..self.scalars {
                work.push((self.act(a, s), self.act(b, s)));
            }
        }
        CongruencePartition::from_labels((0..n).map(|x| uf.find(x)).collect())
    }

    /// Independent compatibility check of a partition against the operations.
    pub fn is_congruence(&self, p: &CongruencePartition) -> bool {
        let n = self.size();
        if p.labels.len() != n {
            return false;
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if p.labels[x] != p.labels[y] {
                    continue;
                }
                if (0..n).any(|z| p.labels[self.add(x, z)] != p.labels[self.add(y, z)]) {
                    return false;
                }
                if (0..self.scalars).any(|s| p.labels[self.act(x, s)] != p.labels[self.act(y, s)]) {
                    return false;
                }
            }
        }
        true
    }
}

/// A partition of a carrier, stored as canonical block labels: block ids are
/// assigned in order of first appearance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CongruencePartition {
    labels: Vec<usize>,
}

impl CongruencePartition {
    pub fn from_labels(raw: Vec<usize>) -> Self {
        let mut map = std::collections::HashMap::new();
        let labels = raw
            .into_iter()
            .map(|r| {
                let next = map.len();
                *map.entry(r).or_insert(next)
            })
            .collect();
        CongruencePartition { labels }
    }

    pub fn identity(n: usize) -> Self {
        CongruencePartition { labels: (0..n).collect() }
    }

    pub fn universal(n: usize) -> Self {
        CongruencePartition { labels: vec![0; n] }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.labels.iter().enumerate() {
            blocks[b].push(x);
        }
        blocks
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.labels.len()
    }

    pub fn is_universal(&self) -> bool {
        self.block_count() <= 1
    }

    /// Join in the partition lattice.
    pub fn join(&self, other: &Self) -> Self {
        let n = self.labels.len();
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            for y in (x + 1)..n {
                if self.labels[x] == self.labels[y] || other.labels[x] == other.labels[y] {
                    uf.union(x, y);
                }
            }
        }
        Self::from_labels((0..n).map(|x| uf.find(x)).collect())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// All congruences of `m`, as joins of principal congruences (the identity
/// is the empty join). Sorted canonically.
pub fn semimodule_congruences(m: &SemimoduleCarrier, limit: usize) -> Result<Vec<CongruencePartition>> {
    let n = m.size();
    if n > limit {
        return Err(Error::CarrierTooLarge { size: n, limit });
    }
    let principal: BTreeSet<CongruencePartition> = (0..n)
        .flat_map(|x| ((x + 1)..n).map(move |y| (x, y)))
        .map(|(x, y)| m.generated_congruence(&[(x, y)]))
        .collect();
    let mut all: BTreeSet<CongruencePartition> = BTreeSet::new();
    let mut frontier = vec![CongruencePartition::identity(n)];
    all.insert(CongruencePartition::identity(n));
    while let Some(c) = frontier.pop() {
        for p in &principal {
            let j = c.join(p);
            if all.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    Ok(all.into_iter().collect())
}

/// Nonzero with exactly the two trivial congruences. Decided through
/// principal congruences: every `Θ(x, y)` with `x != y` must be universal.
pub fn is_congruence_simple(m: &SemimoduleCarrier) -> Result<bool> {
    is_congruence_simple_with(m, Exec::default())
}

pub fn is_congruence_simple_with(m: &SemimoduleCarrier, exec: Exec) -> Result<bool> {
    let n = m.size();
    if n > SIMPLICITY_LIMIT {
        return Err(Error::CarrierTooLarge { size: n, limit: SIMPLICITY_LIMIT });
    }
    if n < 2 {
        return Ok(false);
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| ((x + 1)..n).map(move |y| (x, y))).collect();
    let failure = par::first_failure(exec, pairs.len(), |i| m.generated_congruence(&[pairs[i]]).is_universal());
    Ok(failure.is_none())
}
