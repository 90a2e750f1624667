//! Simplicial ordered groups `(Z^r, (Z+)^r, u)`, positive morphisms between
//! them, and direct limits of sequences of such morphisms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Default number of stages explored past the starting stage.
pub const DEFAULT_DEPTH: usize = 32;

/// `Z^r` with the standard cone and order unit `unit`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SimplicialOrderedGroup {
    unit: Vec<u64>,
}

impl SimplicialOrderedGroup {
    pub fn new(unit: Vec<u64>) -> Result<Self> {
        if unit.is_empty() {
            return Err(Error::ArgumentTooSmall { value: 0, min: 1 });
        }
        Ok(SimplicialOrderedGroup { unit })
    }

    pub fn rank(&self) -> usize {
        self.unit.len()
    }

    pub fn unit(&self) -> &[u64] {
        &self.unit
    }
}

/// A nonnegative integer matrix, read as a map `Z^cols -> Z^rows`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PositiveMorphism {
    matrix: Vec<Vec<u64>>,
}

impl PositiveMorphism {
    pub fn new(matrix: Vec<Vec<u64>>) -> Result<Self> {
        let cols = matrix.first().map_or(0, Vec::len);
        if matrix.is_empty() || cols == 0 {
            return Err(Error::ShapeMismatch("a morphism matrix must be non-empty".into()));
        }
        if let Some(r) = matrix.iter().position(|row| row.len() != cols) {
            return Err(Error::ShapeMismatch(format!("row {r} has {} entries, expected {cols}", matrix[r].len())));
        }
        Ok(PositiveMorphism { matrix })
    }

    pub fn identity(r: usize) -> Self {
        PositiveMorphism { matrix: (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect() }
    }

    pub fn scalar(k: u64) -> Self {
        PositiveMorphism { matrix: vec![vec![k]] }
    }

    /// Rank of the target group.
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    /// Rank of the source group.
    pub fn cols(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows())
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.iter().map(|row| row.iter().zip(v).map(|(&m, x)| BigInt::from(m) * x).sum()).collect()
    }

    pub fn apply_u64(&self, v: &[u64]) -> Vec<u128> {
        self.matrix.iter().map(|row| row.iter().zip(v).map(|(&m, &x)| m as u128 * x as u128).sum()).collect()
    }

    /// Rank over the rationals.
    pub fn rational_rank(&self) -> usize {
        let mut m: Vec<Vec<BigRational>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
            .collect();
        let (rows, cols) = (self.rows(), self.cols());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            for r in 0..rows {
                if r != rank && !m[r][c].is_zero() {
                    let f = &m[r][c] / &m[rank][c];
                    for k in c..cols {
                        let d = &f * &m[rank][k];
                        m[r][k] -= d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_injective(&self) -> bool {
        self.rational_rank() == self.cols()
    }
}

/// `after ∘ before`, i.e. the matrix product `after · before`.
pub fn morphism_compose(after: &PositiveMorphism, before: &PositiveMorphism) -> Result<PositiveMorphism> {
    if after.cols() != before.rows() {
        return Err(Error::ShapeMismatch(format!(
            "cannot compose a map from Z^{} after a map into Z^{}",
            after.cols(),
            before.rows()
        )));
    }
    let matrix = (0..after.rows())
        .map(|i| {
            (0..before.cols())
                .map(|j| (0..after.cols()).map(|k| after.matrix[i][k] * before.matrix[k][j]).sum())
                .collect()
        })
        .collect();
    Ok(PositiveMorphism { matrix })
}

/// `m · u_src = u_dst`.
pub fn is_unital(m: &PositiveMorphism, src: &[u64], dst: &[u64]) -> Result<bool> {
    if m.cols() != src.len() || m.rows() != dst.len() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} matrix between units of length {} and {}",
            m.rows(),
            m.cols(),
            src.len(),
            dst.len()
        )));
    }
    Ok(m.apply_u64(src).iter().zip(dst).all(|(&a, &b)| a == b as u128))
}

/// `G_0 -> G_1 -> ...` given by declared stages and maps.
///
/// With `period = Some(p)` the last `p` maps repeat forever and later stage
/// units are the images of earlier ones. Without a period the system is
/// stationary after its last stage: every later map is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectLimitSystem {
    groups: Vec<SimplicialOrderedGroup>,
    maps: Vec<PositiveMorphism>,
    period: Option<usize>,
    tail_start: usize,
}

impl DirectLimitSystem {
    pub fn new(
        groups: Vec<SimplicialOrderedGroup>,
        maps: Vec<PositiveMorphism>,
        period: Option<usize>,
    ) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::Malformed("a direct system needs at least one stage".into()));
        }
        if maps.len() + 1 != groups.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} stages need {} maps, got {}",
                groups.len(),
                groups.len() - 1,
                maps.len()
            )));
        }
        for (k, m) in maps.iter().enumerate() {
            if !is_unital(m, groups[k].unit(), groups[k + 1].unit())? {
                return Err(Error::UnitalityViolation(k));
            }
        }
        let tail_start = match period {
            None => maps.len(),
            Some(p) => {
                if p == 0 || p > maps.len() {
                    return Err(Error::Malformed(format!("period {p} must lie in 1..={}", maps.len())));
                }
                let first = &maps[maps.len() - p];
                if maps[maps.len() - 1].rows() != first.cols() {
                    return Err(Error::ShapeMismatch("the periodic block does not close up".into()));
                }
                let mut s = maps.len() - p;
                while s > 0 && maps[s - 1] == maps[s - 1 + p] {
                    s -= 1;
                }
                s
            }
        };
        Ok(DirectLimitSystem { groups, maps, period, tail_start })
    }

    pub fn stationary(group: SimplicialOrderedGroup) -> Self {
        DirectLimitSystem { groups: vec![group], maps: Vec::new(), period: None, tail_start: 0 }
    }

    pub fn groups(&self) -> &[SimplicialOrderedGroup] {
        &self.groups
    }

    pub fn maps(&self) -> &[PositiveMorphism] {
        &self.maps
    }

    pub fn period(&self) -> Option<usize> {
        self.period
    }

    /// First stage from which the maps repeat (or become identities).
    pub fn tail_start(&self) -> usize {
        self.tail_start
    }

    /// Length of the repeating block of maps; an identity tail counts as 1.
    pub fn tail_period(&self) -> usize {
        self.period.unwrap_or(1)
    }

    /// Number of explicitly declared stages.
    pub fn declared_stages(&self) -> usize {
        self.groups.len()
    }

    /// The map `G_k -> G_{k+1}`, `None` meaning the identity.
    pub fn map_at(&self, k: usize) -> Option<&PositiveMorphism> {
        if k < self.maps.len() {
            return Some(&self.maps[k]);
        }
        let p = self.period?;
        let first = self.maps.len() - p;
        Some(&self.maps[first + (k - first) % p])
    }

    pub fn rank_at(&self, k: usize) -> usize {
        if k < self.groups.len() {
            return self.groups[k].rank();
        }
        self.map_at(k - 1).map_or(self.groups[self.groups.len() - 1].rank(), PositiveMorphism::rows)
    }

    /// The order unit at stage `k`.
    pub fn unit_at(&self, k: usize) -> Vec<BigInt> {
        let last = self.groups.len() - 1;
        let base: Vec<BigInt> = self.groups[k.min(last)].unit().iter().map(|&x| BigInt::from(x)).collect();
        self.push(base, k.min(last), k)
    }

    /// Image of `v` under the maps from stage `from` to stage `to >= from`.
    pub fn push(&self, mut v: Vec<BigInt>, from: usize, to: usize) -> Vec<BigInt> {
        for k in from..to {
            match self.map_at(k) {
                Some(m) => v = m.apply(&v),
                None => break,
            }
        }
        v
    }

    /// Every map from stage `k` on is injective; one period of the tail is
    /// representative of all later maps.
    pub fn injective_from(&self, k: usize) -> bool {
        let end = k.max(self.tail_start) + self.tail_period();
        (k..end).all(|s| self.map_at(s).is_none_or(PositiveMorphism::is_injective))
    }

    /// The system has no maps left at stage `k` (a stationary end).
    fn frozen_at(&self, k: usize) -> bool {
        self.period.is_none() && k >= self.maps.len()
    }

    fn check(&self, e: &LimitElement) -> Result<()> {
        if self.period.is_none() && e.stage >= self.groups.len() {
            return Err(Error::StageOutOfRange { stage: e.stage, available: self.groups.len() });
        }
        let r = self.rank_at(e.stage);
        if e.vector.len() != r {
            return Err(Error::DimensionMismatch { expected: r, found: e.vector.len() });
        }
        Ok(())
    }
}

/// The class of `vector ∈ G_stage` in the direct limit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LimitElement {
    pub stage: usize,
    pub vector: Vec<BigInt>,
}

impl LimitElement {
    pub fn new(stage: usize, vector: Vec<BigInt>) -> Self {
        LimitElement { stage, vector }
    }

    pub fn from_ints(stage: usize, vector: &[i64]) -> Self {
        LimitElement { stage, vector: vector.iter().map(|&x| BigInt::from(x)).collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Equality {
    /// Images agree at `stage`.
    Equal {
        stage: usize,
    },
    /// Images differ at `stage` and every later map is injective.
    Distinct {
        stage: usize,
    },
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Positivity {
    /// The image at `stage` is componentwise nonnegative.
    Positive {
        stage: usize,
    },
    /// From `certified_at` on the image is nonzero, nonpositive and all later
    /// maps are injective (or absent), so it never becomes nonnegative.
    NotWithinDepth {
        certified_at: usize,
    },
    Unknown,
}

/// Compares two limit classes by pushing both to their common stage and
/// then up to `depth` stages further.
pub fn limit_equal(sys: &DirectLimitSystem, a: &LimitElement, b: &LimitElement, depth: usize) -> Result<Equality> {
    sys.check(a)?;
    sys.check(b)?;
    let start = a.stage.max(b.stage);
    let mut x = sys.push(a.vector.clone(), a.stage, start);
    let mut y = sys.push(b.vector.clone(), b.stage, start);
    for k in start..=start + depth {
        if x == y {
            return Ok(Equality::Equal { stage: k });
        }
        if sys.injective_from(k) {
            return Ok(Equality::Distinct { stage: k });
        }
        x = sys.push(x, k, k + 1);
        y = sys.push(y, k, k + 1);
    }
    Ok(Equality::Unknown)
}

/// Looks for a stage where the class of `e` has a nonnegative representative.
pub fn limit_positive(sys: &DirectLimitSystem, e: &LimitElement, depth: usize) -> Result<Positivity> {
    sys.check(e)?;
    let mut v = e.vector.clone();
    for k in e.stage..=e.stage + depth {
        if v.iter().all(|x| !x.is_negative()) {
            return Ok(Positivity::Positive { stage: k });
        }
        let nonpositive = v.iter().all(|x| !x.is_positive());
        if sys.frozen_at(k) || (nonpositive && sys.injective_from(k)) {
            return Ok(Positivity::NotWithinDepth { certified_at: k });
        }
        v = sys.push(v, k, k + 1);
    }
    Ok(Positivity::Unknown)
}

/// Smallest `n <= max_multiple` such that `n·u - x` is positive in the limit,
/// where `u` is the order unit; returns `(n, stage)`.
pub fn order_unit_multiple(
    sys: &DirectLimitSystem,
    x: &LimitElement,
    max_multiple: u64,
    depth: usize,
) -> Result<Option<(u64, usize)>> {
    sys.check(x)?;
    let u = sys.unit_at(x.stage);
    for n in 0..=max_multiple {
        let diff: Vec<BigInt> = u.iter().zip(&x.vector).map(|(a, b)| BigInt::from(n) * a - b).collect();
        if let Positivity::Positive { stage } = limit_positive(sys, &LimitElement::new(x.stage, diff), depth)? {
            return Ok(Some((n, stage)));
        }
    }
    Ok(None)
}
