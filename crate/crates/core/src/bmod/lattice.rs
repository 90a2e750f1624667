use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::semiring::{Element, Kernel, SemiMatrix};

/// A finite join-semilattice with bottom, i.e. a finite idempotent
/// semimodule over the Boolean semifield.
///
/// Elements are the indices `0..n`. When `coords` is present, element `i` is
/// the 0/1 vector `coords[i]` and the join is the coordinatewise `or`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolSemimodule {
    n: usize,
    join: Vec<usize>,
    bottom: usize,
    coords: Option<Vec<Vec<u8>>>,
}

/// The first axiom failure found by [`BoolSemimodule::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    IndexOutOfRange { i: usize, j: usize },
    NotIdempotent(usize),
    NotCommutative(usize, usize),
    NotAssociative(usize, usize, usize),
    BottomNotNeutral(usize),
    CoordsDisagree(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IndexOutOfRange { i, j } => write!(f, "join({i}, {j}) is not an element"),
            Violation::NotIdempotent(i) => write!(f, "join({i}, {i}) != {i}"),
            Violation::NotCommutative(i, j) => write!(f, "join({i}, {j}) != join({j}, {i})"),
            Violation::NotAssociative(i, j, k) => write!(f, "join is not associative on ({i}, {j}, {k})"),
            Violation::BottomNotNeutral(i) => write!(f, "join(bottom, {i}) != {i}"),
            Violation::CoordsDisagree(i, j) => write!(f, "coordinatewise or of {i} and {j} disagrees with the table"),
        }
    }
}

impl BoolSemimodule {
    /// Builds a module from a square join table. Only the shape is checked
    /// here; see [`validate`](Self::validate) for the axioms.
    pub fn new(join: Vec<Vec<usize>>, bottom: usize) -> Result<Self> {
        let n = join.len();
        if n == 0 {
            return Err(Error::Malformed("a semimodule needs at least its bottom element".into()));
        }
        if bottom >= n {
            return Err(Error::Malformed(format!("bottom {bottom} is not an element of a {n}-element carrier")));
        }
        if let Some(row) = join.iter().position(|r| r.len() != n) {
            return Err(Error::Malformed(format!("join row {row} has {} entries, expected {n}", join[row].len())));
        }
        Ok(BoolSemimodule { n, join: join.into_iter().flatten().collect(), bottom, coords: None })
    }

    /// The sub-join-semilattice of `{0,1}^d` generated by `vectors` together
    /// with the zero vector. Elements are sorted lexicographically, so the
    /// zero vector is element 0.
    pub fn from_coords(vectors: &[Vec<u8>]) -> Result<Self> {
        let d = vectors.first().map_or(0, Vec::len);
        if let Some(bad) = vectors.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: bad.len() });
        }
        if vectors.iter().flatten().any(|&b| b > 1) {
            return Err(Error::Malformed("coordinates must be 0 or 1".into()));
        }
        let mut closed: BTreeSet<Vec<u8>> = BTreeSet::new();
        closed.insert(vec![0; d]);
        let mut frontier: Vec<Vec<u8>> = vectors.to_vec();
        while let Some(v) = frontier.pop() {
            if !closed.insert(v.clone()) {
                continue;
            }
            for w in &closed {
                let j = or(&v, w);
                if !closed.contains(&j) {
                    frontier.push(j);
                }
            }
        }
        let coords: Vec<Vec<u8>> = closed.into_iter().collect();
        let index: HashMap<&[u8], usize> = coords.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
        let n = coords.len();
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = index[or(&coords[a], &coords[b]).as_slice()];
            }
        }
        Ok(BoolSemimodule { n, join, bottom: 0, coords: Some(coords) })
    }

    /// The one-element module.
    pub fn trivial() -> Self {
        BoolSemimodule { n: 1, join: vec![0], bottom: 0, coords: Some(vec![vec![]]) }
    }

    /// `B^d`, the free module of rank `d`.
    pub fn free(d: usize) -> Self {
        let units: Vec<Vec<u8>> = (0..d).map(|i| (0..d).map(|j| u8::from(i == j)).collect()).collect();
        Self::from_coords(&units).expect("unit vectors are well formed")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    pub fn join_table(&self) -> Vec<Vec<usize>> {
        self.join.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn coords(&self) -> Option<&[Vec<u8>]> {
        self.coords.as_deref()
    }

    /// `a <= b` in the semilattice order, i.e. `a ∨ b = b`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.join(a, b) == b
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                if self.join(i, j) >= n {
                    return Err(Violation::IndexOutOfRange { i, j });
                }
            }
        }
        for i in 0..n {
            if self.join(i, i) != i {
                return Err(Violation::NotIdempotent(i));
            }
            if self.join(self.bottom, i) != i {
                return Err(Violation::BottomNotNeutral(i));
            }
            for j in 0..i {
                if self.join(i, j) != self.join(j, i) {
                    return Err(Violation::NotCommutative(j, i));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.join(i, j);
                for k in 0..n {
                    if self.join(ij, k) != self.join(i, self.join(j, k)) {
                        return Err(Violation::NotAssociative(i, j, k));
                    }
                }
            }
        }
        if let Some(c) = &self.coords {
            if c.len() != n {
                return Err(Violation::CoordsDisagree(0, 0));
            }
            for i in 0..n {
                for j in 0..n {
                    if or(&c[i], &c[j]) != c[self.join(i, j)] {
                        return Err(Violation::CoordsDisagree(i, j));
                    }
                }
            }
        }
        Ok(())
    }

    /// Carrier `M × N` with componentwise join; `(i, j)` has index `i·|N| + j`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (m, k) = (self.n, other.n);
        let n = m * k;
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = self.join(a / k, b / k) * k + other.join(a % k, b % k);
            }
        }
        let coords = match (&self.coords, &other.coords) {
            (Some(x), Some(y)) => Some((0..n).map(|a| [x[a / k].as_slice(), y[a % k].as_slice()].concat()).collect()),
            _ => None,
        };
        BoolSemimodule { n, join, bottom: self.bottom * k + other.bottom, coords }
    }

    /// `meet[a][b]`: the join of all common lower bounds, which exists in any
    /// finite join-semilattice with bottom.
    pub fn meet_table(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut meet = vec![vec![self.bottom; n]; n];
        for a in 0..n {
            for b in a..n {
                let mut m = self.bottom;
                for z in 0..n {
                    if self.leq(z, a) && self.leq(z, b) {
                        m = self.join(m, z);
                    }
                }
                meet[a][b] = m;
                meet[b][a] = m;
            }
        }
        meet
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        self.lower_covers().iter().enumerate().filter(|(_, c)| c.as_slice() == [self.bottom]).map(|(i, _)| i).collect()
    }

    /// For each element, the elements it covers.
    pub fn lower_covers(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        (0..n)
            .map(|x| {
                let below: Vec<usize> = (0..n).filter(|&y| y != x && self.leq(y, x)).collect();
                below.iter().copied().filter(|&y| !below.iter().any(|&z| z != y && self.leq(y, z))).collect()
            })
            .collect()
    }

    /// Non-bottom elements that are not the join of elements strictly below
    /// them; these form the unique minimal generating set.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        self.lower_covers()
            .iter()
            .enumerate()
            .filter(|(x, c)| *x != self.bottom && c.len() == 1)
            .map(|(x, _)| x)
            .collect()
    }

    /// Size of a smallest generating family.
    pub fn weak_dimension(&self) -> usize {
        self.join_irreducibles().len()
    }

    /// Length of the longest chain from the bottom to each element.
    pub fn heights(&self) -> Vec<usize> {
        let covers = self.lower_covers();
        let mut by_size: Vec<usize> = (0..self.n).collect();
        let downset = |x: usize| (0..self.n).filter(|&y| self.leq(y, x)).count();
        by_size.sort_by_key(|&x| downset(x));
        let mut h = vec![0; self.n];
        for x in by_size {
            h[x] = covers[x].iter().map(|&y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }
}

fn or(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(x, y)| x | y).collect()
}

/// A finite join-semilattice is a projective Boolean semimodule exactly when
/// it is a distributive lattice.
pub fn is_projective(m: &BoolSemimodule) -> bool {
    is_projective_with(m, Exec::default())
}

pub fn is_projective_with(m: &BoolSemimodule, exec: Exec) -> bool {
    distributivity_failure(m, exec).is_none()
}

/// First `(x, y, z)` with `x ∧ (y ∨ z) != (x ∧ y) ∨ (x ∧ z)`.
pub fn distributivity_failure(m: &BoolSemimodule, exec: Exec) -> Option<(usize, usize, usize)> {
    let n = m.len();
    let meet = m.meet_table();
    par::first_failure(exec, n * n * n, |t| {
        let (x, y, z) = (t / (n * n), (t / n) % n, t % n);
        meet[x][m.join(y, z)] == m.join(meet[x][y], meet[x][z])
    })
    .map(|t| (t / (n * n), (t / n) % n, t % n))
}

/// The rank `d` when `m ≅ B^d`, i.e. when joins of distinct atom subsets
/// are distinct and exhaust the carrier.
pub fn is_free_bool(m: &BoolSemimodule) -> Option<usize> {
    let atoms = m.atoms();
    let d = atoms.len();
    if d >= usize::BITS as usize - 1 || m.len() != 1usize << d {
        return None;
    }
    let mut seen = vec![false; m.len()];
    for mask in 0usize..1 << d {
        let x = (0..d).filter(|i| mask >> i & 1 == 1).fold(m.bottom(), |acc, i| m.join(acc, atoms[i]));
        if std::mem::replace(&mut seen[x], true) {
            return None;
        }
    }
    Some(d)
}

fn boolean_columns(a: &SemiMatrix) -> Result<Vec<Vec<u8>>> {
    if *a.kernel() != Kernel::Bool {
        return Err(Error::KernelMismatch { left: a.kernel().name(), right: "BOOL".into() });
    }
    Ok((0..a.cols()).map(|j| (0..a.rows()).map(|i| u8::from(*a.get(i, j) == Element::Bool(true))).collect()).collect())
}

/// The semimodule generated by the columns of a Boolean matrix.
pub fn column_span_bool(a: &SemiMatrix) -> Result<BoolSemimodule> {
    BoolSemimodule::from_coords(&boolean_columns(a)?)
}

/// Indices of the columns of `a` that form the minimal generating family of
/// its span: the first copy of each nonzero column that is not the join of
/// the other columns below it.
pub fn extremal_columns_bool(a: &SemiMatrix) -> Result<Vec<usize>> {
    let cols = boolean_columns(a)?;
    let mut keep = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if c.iter().all(|&b| b == 0) || cols[..j].contains(c) {
            continue;
        }
        let mut below = vec![0u8; c.len()];
        for d in cols.iter().filter(|d| *d != c && d.iter().zip(c).all(|(x, y)| x <= y)) {
            below = or(&below, d);
        }
        if below != *c {
            keep.push(j);
        }
    }
    Ok(keep)
}

/// The chain `0 < 1 < ... < p-1` with join `max`, realised by threshold
/// vectors in `{0,1}^(p-1)`.
pub fn q_chain(p: usize) -> Result<BoolSemimodule> {
    if p < 2 {
        return Err(Error::ArgumentTooSmall { value: p, min: 2 });
    }
    let steps: Vec<Vec<u8>> = (1..p).map(|i| (0..p - 1).map(|j| u8::from(j < i)).collect()).collect();
    BoolSemimodule::from_coords(&steps)
}

/// The multiplicative invariant `|M|`.
pub fn cardinality_class(m: &BoolSemimodule) -> usize {
    m.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K0Comparison {
    /// The classes differ in `K0(B)`.
    Distinct,
    /// Cardinalities agree; stable isomorphism is not decided.
    Inconclusive,
}

pub fn k0_distinct_by_cardinality(p: &BoolSemimodule, q: &BoolSemimodule) -> K0Comparison {
    if cardinality_class(p) != cardinality_class(q) {
        K0Comparison::Distinct
    } else {
        K0Comparison::Inconclusive
    }
}

/// The idempotent power `A^m` of a square Boolean matrix, with `m` the
/// smallest exponent for which `A^m` is idempotent.
pub fn idempotent_power(a: &SemiMatrix) -> Result<SemiMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let mut p = a.clone();
    let limit = 1usize << 16;
    for _ in 0..=limit {
        if p.is_idempotent()? {
            return Ok(p);
        }
        p = p.mat_mul(a)?;
    }
    Err(Error::SearchLimitExceeded { size: limit as u128 + 1, limit: limit as u128 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> BoolSemimodule {
        // bottom 0, atoms 1 2 3, top 4
        let join = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| {
                        if i == 0 {
                            j
                        } else if j == 0 || i == j {
                            i
                        } else {
                            4
                        }
                    })
                    .collect()
            })
            .collect();
        BoolSemimodule::new(join, 0).unwrap()
    }

    fn example_p() -> BoolSemimodule {
        BoolSemimodule::from_coords(&[vec![0, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn constructions_validate() {
        assert_eq!(q_chain(2).unwrap().validate(), Ok(()));
        assert_eq!(BoolSemimodule::free(2).validate(), Ok(()));
        assert_eq!(diamond().validate(), Ok(()));
        assert_eq!(q_chain(4).unwrap().direct_sum(&q_chain(3).unwrap()).validate(), Ok(()));
    }

    #[test]
    fn broken_associativity_is_reported() {
        let mut t = q_chain(4).unwrap().join_table();
        t[1][3] = 2;
        t[3][1] = 2;
        let m = BoolSemimodule::new(t, 0).unwrap();
        assert!(matches!(m.validate(), Err(Violation::NotAssociative(..))));
    }

    #[test]
    fn projectivity() {
        assert!(is_projective(&example_p()));
        assert!(is_projective(&BoolSemimodule::free(3)));
        assert!(is_projective(&q_chain(5).unwrap()));
        assert_eq!(distributivity_failure(&diamond(), Exec::Sequential), Some((1, 2, 3)));
    }

    #[test]
    fn freeness() {
        assert_eq!(is_free_bool(&BoolSemimodule::free(3)), Some(3));
        assert_eq!(is_free_bool(&example_p()), None);
        assert_eq!(is_free_bool(&q_chain(3).unwrap()), None);
        assert_eq!(is_free_bool(&q_chain(2).unwrap()), Some(1));
        assert_eq!(is_free_bool(&BoolSemimodule::trivial()), Some(0));
    }

    #[test]
    fn column_spans() {
        let a = SemiMatrix::boolean(&[&[1, 0], &[1, 1]]).unwrap();
        let span = column_span_bool(&a).unwrap();
        assert_eq!(span.coords().unwrap(), &[vec![0, 0], vec![0, 1], vec![1, 1]]);
        let z = SemiMatrix::boolean(&[&[0, 0], &[0, 0]]).unwrap();
        assert_eq!(column_span_bool(&z).unwrap().len(), 1);
    }

    #[test]
    fn grid_sum_sizes_multiply() {
        let g = q_chain(2).unwrap().direct_sum(&q_chain(3).unwrap());
        assert_eq!(g.len(), 6);
        assert_eq!(g.join(1, 3), 4);
        assert_eq!(cardinality_class(&g), 6);
    }

    #[test]
    fn generators_of_spans() {
        let a = SemiMatrix::boolean(&[&[1, 0, 1, 1, 0], &[0, 1, 1, 1, 0], &[0, 0, 0, 0, 0]]).unwrap();
        assert_eq!(extremal_columns_bool(&a).unwrap(), vec![0, 1]);
        assert_eq!(column_span_bool(&a).unwrap().weak_dimension(), 2);
        assert_eq!(q_chain(5).unwrap().weak_dimension(), 4);
        assert_eq!(diamond().weak_dimension(), 3);
    }

    #[test]
    fn cardinality_comparison() {
        let q2 = q_chain(2).unwrap();
        assert_eq!(k0_distinct_by_cardinality(&q2, &q_chain(3).unwrap()), K0Comparison::Distinct);
        assert_eq!(
            k0_distinct_by_cardinality(&BoolSemimodule::free(2), &q2.direct_sum(&q2)),
            K0Comparison::Inconclusive
        );
    }

    #[test]
    fn q_chain_needs_two_elements() {
        assert_eq!(q_chain(1), Err(Error::ArgumentTooSmall { value: 1, min: 2 }));
    }

    #[test]
    fn idempotent_powers() {
        let cyc = SemiMatrix::boolean(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(idempotent_power(&cyc).unwrap(), SemiMatrix::identity(Kernel::Bool, 2).unwrap());
        let e = SemiMatrix::boolean(&[&[1, 0], &[1, 1]]).unwrap();
        assert_eq!(idempotent_power(&e).unwrap(), e);
    }
}
