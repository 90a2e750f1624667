use std::fmt;

use crate::error::{Error, Result};
use crate::semiring::Trop;

pub type TropVector = Vec<Trop>;

/// A finitely generated subsemimodule of `T^n`, given by generator columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropSpan {
    ambient: usize,
    generators: Vec<TropVector>,
}

impl TropSpan {
    pub fn new(ambient: usize, generators: Vec<TropVector>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Malformed("a span needs at least one generator".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: g.len() });
        }
        Ok(TropSpan { ambient, generators })
    }

    /// Integer generators, `None` standing for `-inf`.
    pub fn from_ints(generators: &[&[Option<i64>]]) -> Result<Self> {
        let ambient = generators.first().map_or(0, |g| g.len());
        let gens = generators.iter().map(|g| g.iter().map(|x| x.map_or(Trop::NEG_INF, Trop::int)).collect()).collect();
        Self::new(ambient, gens)
    }

    /// Columns `0` on the diagonal and `-inf` elsewhere.
    pub fn standard(n: usize) -> Self {
        let gens = (0..n).map(|j| (0..n).map(|i| if i == j { Trop::one() } else { Trop::zero() }).collect()).collect();
        TropSpan { ambient: n, generators: gens }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[TropVector] {
        &self.generators
    }

    fn subfamily(&self, keep: &[usize]) -> Vec<TropVector> {
        keep.iter().map(|&j| self.generators[j].clone()).collect()
    }

    /// Generators of `self` padded with `-inf` below, then generators of
    /// `other` padded above: the span of the block direct sum.
    pub fn block_sum(&self, other: &TropSpan) -> TropSpan {
        let pad = |n: usize| std::iter::repeat_n(Trop::NEG_INF, n);
        let mut gens: Vec<TropVector> =
            self.generators.iter().map(|g| g.iter().cloned().chain(pad(other.ambient)).collect()).collect();
        gens.extend(other.generators.iter().map(|g| pad(self.ambient).chain(g.iter().cloned()).collect()));
        TropSpan { ambient: self.ambient + other.ambient, generators: gens }
    }
}

impl fmt::Display for TropSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("({})", g.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// `⊕_j λ_j ⊗ g_j`, computed entrywise.
pub fn combine(generators: &[TropVector], lambda: &[Trop]) -> TropVector {
    let n = generators.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| generators.iter().zip(lambda).fold(Trop::NEG_INF, |acc, (g, l)| acc.oplus(&g[i].otimes(l))))
        .collect()
}

/// The greatest `λ` with `A ⊙ λ <= x`: `λ_j = min_i (x_i - a_ij)` over rows
/// where `a_ij` is finite, and `-inf` for an all-`-inf` column.
pub fn principal_solution(generators: &[TropVector], x: &[Trop]) -> TropVector {
    generators
        .iter()
        .map(|g| g.iter().zip(x).filter_map(|(a, xi)| xi.residual(a)).min().unwrap_or(Trop::NEG_INF))
        .collect()
}

fn solve(generators: &[TropVector], x: &[Trop]) -> Option<TropVector> {
    let lambda = principal_solution(generators, x);
    (combine(generators, &lambda) == x).then_some(lambda)
}

/// Coefficients expressing `x` over the generators of `sp`, or `None` when
/// `x` is outside the span. When a solution exists the principal one works,
/// so `None` is exact.
pub fn trop_membership(x: &[Trop], sp: &TropSpan) -> Result<Option<TropVector>> {
    if x.len() != sp.ambient {
        return Err(Error::DimensionMismatch { expected: sp.ambient, found: x.len() });
    }
    Ok(solve(&sp.generators, x))
}

fn is_zero(v: &[Trop]) -> bool {
    v.iter().all(Trop::is_neg_inf)
}

/// Same support and a constant difference on it.
fn proportional(a: &[Trop], b: &[Trop]) -> bool {
    let mut shift: Option<Trop> = None;
    for (x, y) in a.iter().zip(b) {
        match (x.is_neg_inf(), y.is_neg_inf()) {
            (true, true) => {}
            (false, false) => {
                let d = x.residual(y);
                if shift.is_some() && shift != d {
                    return false;
                }
                shift = d;
            }
            _ => return false,
        }
    }
    true
}

/// Indices of the extremal generators: zero vectors are dropped, a
/// generator proportional to an earlier one is dropped, and of the rest
/// exactly those outside the span of the others are kept.
pub fn extremal_indices(sp: &TropSpan) -> Vec<usize> {
    let g = &sp.generators;
    let mut reps: Vec<usize> = Vec::new();
    for j in 0..g.len() {
        if !is_zero(&g[j]) && !reps.iter().any(|&r| proportional(&g[r], &g[j])) {
            reps.push(j);
        }
    }
    reps.iter()
        .copied()
        .filter(|&j| {
            let others: Vec<TropVector> = reps.iter().filter(|&&k| k != j).map(|&k| g[k].clone()).collect();
            solve(&others, &g[j]).is_none()
        })
        .collect()
}

/// The subfamily of extremal generators; it spans the same set. A span of
/// zero vectors yields the single zero generator.
pub fn extremal_generators(sp: &TropSpan) -> TropSpan {
    let keep = extremal_indices(sp);
    if keep.is_empty() {
        return TropSpan { ambient: sp.ambient, generators: vec![vec![Trop::NEG_INF; sp.ambient]] };
    }
    TropSpan { ambient: sp.ambient, generators: sp.subfamily(&keep) }
}

/// Size of a minimal generating family, i.e. the number of extremal rays.
pub fn weak_dimension(sp: &TropSpan) -> usize {
    extremal_indices(sp).len()
}

/// No member lies in the span of the others.
pub fn is_weakly_independent(family: &[TropVector]) -> Result<bool> {
    let d = family.first().map_or(0, Vec::len);
    if let Some(v) = family.iter().find(|v| v.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: v.len() });
    }
    Ok((0..family.len()).all(|j| {
        let others: Vec<TropVector> =
            family.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect();
        if others.is_empty() {
            return !is_zero(&family[j]);
        }
        solve(&others, &family[j]).is_none()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    const NI: Option<i64> = None;

    fn v(xs: &[Option<i64>]) -> TropVector {
        xs.iter().map(|x| x.map_or(Trop::NEG_INF, Trop::int)).collect()
    }

    #[test]
    fn membership_by_residuation() {
        let sp = TropSpan::from_ints(&[&[Some(0), Some(0)], &[Some(-1), Some(0)]]).unwrap();
        assert_eq!(trop_membership(&v(&[Some(0), Some(-2)]), &sp).unwrap(), None);
        assert_eq!(principal_solution(sp.generators(), &v(&[Some(0), Some(-2)])), v(&[Some(-2), Some(-2)]));
        let lambda = trop_membership(&v(&[Some(-1), Some(0)]), &sp).unwrap().unwrap();
        assert_eq!(combine(sp.generators(), &lambda), v(&[Some(-1), Some(0)]));
        let single = TropSpan::from_ints(&[&[Some(0), Some(0)]]).unwrap();
        assert_eq!(trop_membership(&v(&[Some(-1), Some(-1)]), &single).unwrap(), Some(v(&[Some(-1)])));
        assert!(trop_membership(&v(&[Some(0)]), &single).is_err());
    }

    #[test]
    fn extremals() {
        let sp = TropSpan::from_ints(&[&[Some(0), Some(0)], &[Some(-1), Some(-1)]]).unwrap();
        assert_eq!(extremal_generators(&sp).generators(), &[v(&[Some(0), Some(0)])]);
        assert_eq!(weak_dimension(&sp), 1);
        assert_eq!(weak_dimension(&TropSpan::standard(3)), 3);
        let both = TropSpan::from_ints(&[&[Some(0), Some(0)], &[Some(-1), Some(0)]]).unwrap();
        assert_eq!(weak_dimension(&both), 2);
    }

    #[test]
    fn redundant_join_is_dropped() {
        let sp = TropSpan::from_ints(&[&[Some(0), NI], &[NI, Some(0)], &[Some(-2), Some(3)], &[NI, NI]]).unwrap();
        assert_eq!(extremal_indices(&sp), vec![0, 1]);
    }

    #[test]
    fn independence() {
        assert!(is_weakly_independent(&[v(&[Some(0), Some(0)])]).unwrap());
        assert!(!is_weakly_independent(&[v(&[Some(0), Some(0)]), v(&[Some(-1), Some(-1)])]).unwrap());
        assert!(is_weakly_independent(&[v(&[Some(0), NI]), v(&[NI, Some(0)])]).unwrap());
        assert!(!is_weakly_independent(&[v(&[NI, NI])]).unwrap());
    }

    #[test]
    fn block_sums_pad_with_neg_inf() {
        let p = TropSpan::from_ints(&[&[Some(1)]]).unwrap();
        let q = TropSpan::standard(2);
        let s = p.block_sum(&q);
        assert_eq!(s.ambient(), 3);
        assert_eq!(s.generators()[0], v(&[Some(1), NI, NI]));
        assert_eq!(s.generators()[2], v(&[NI, NI, Some(0)]));
    }

    #[test]
    fn display() {
        let sp = TropSpan::new(2, vec![vec![Trop::ratio(-1, 2), Trop::NEG_INF]]).unwrap();
        assert_eq!(sp.to_string(), "<(-1/2, -inf)>");
    }
}
