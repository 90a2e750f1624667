use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::presentation::{sk0_ultramatricial, BratteliPresentation};
use crate::kflow::DirectLimitSystem;
use crate::par::{self, Exec};

/// Default number of levels and periods explored by the intertwining search.
pub const DEFAULT_ISO_DEPTH: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoOptions {
    pub depth: usize,
    /// Cap on intertwining matrix entries; `None` uses the square of the
    /// largest declared level entry.
    pub entry_bound: Option<u64>,
    pub exec: Exec,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions { depth: DEFAULT_ISO_DEPTH, entry_bound: None, exec: Exec::default() }
    }
}

/// A formal product `∏ p^e` with `e ∈ Z+ ∪ {∞}`; `None` stands for `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Supernatural(pub BTreeMap<u64, Option<u32>>);

impl fmt::Display for Supernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(p, e)| match e {
                None => format!("{p}^inf"),
                Some(1) => p.to_string(),
                Some(k) => format!("{p}^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

impl Serialize for Supernatural {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NotIsoCertificate {
    /// Ranks of the limit groups tensored with `Q` differ.
    RankMismatch { left: usize, right: usize },
    /// Both limits are reached at a finite stage, `(Z^r, u)` with these
    /// sorted units, and the units differ.
    StationaryUnits { left: Vec<u64>, right: Vec<u64> },
    /// Rank-one tails whose order units give different supernatural numbers.
    Supernatural { left: Supernatural, right: Supernatural },
}

/// A commuting zigzag `α: A_i -> B_j`, `β: B_j -> A_{i+s}` with
/// `β α = (A_i -> A_{i+s})` and `α β = (B_j -> B_{j+t})`, where `s` and `t`
/// are whole numbers of tail periods. Periodicity repeats it forever.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntertwiningWitness {
    pub left_stage: usize,
    pub right_stage: usize,
    pub left_shift: usize,
    pub right_shift: usize,
    pub alpha: Vec<Vec<u64>>,
    pub beta: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IsoVerdict {
    Iso { witness: IntertwiningWitness },
    NotIso { certificate: NotIsoCertificate },
    Unknown,
}

impl IsoVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Iso { .. } => "ISO",
            IsoVerdict::NotIso { .. } => "NOT_ISO",
            IsoVerdict::Unknown => "UNKNOWN",
        }
    }
}

type Mat = Vec<Vec<u64>>;

fn identity(r: usize) -> Mat {
    (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect()
}

fn mul(a: &Mat, b: &Mat) -> Option<Mat> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).try_fold(0u64, |acc, k| acc.checked_add(row[k].checked_mul(b[k][j])?)))
                .collect()
        })
        .collect()
}

/// The composite map `G_from -> G_to`, `None` on overflow.
fn composite(sys: &DirectLimitSystem, from: usize, to: usize) -> Option<Mat> {
    let mut acc = identity(sys.rank_at(from));
    for k in from..to {
        if let Some(m) = sys.map_at(k) {
            acc = mul(&m.matrix().to_vec(), &acc)?;
        }
    }
    Some(acc)
}

fn unit_u64(sys: &DirectLimitSystem, k: usize) -> Option<Vec<u64>> {
    sys.unit_at(k).iter().map(ToPrimitive::to_u64).collect()
}

fn rank_big(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for k in c..cols {
                    let d = &f * &a[rank][k];
                    a[r][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The cycle `G_s -> G_{s+p}` starting at the tail, with big entries.
fn tail_cycle(sys: &DirectLimitSystem) -> Vec<Vec<BigInt>> {
    let s = sys.tail_start();
    let r = sys.rank_at(s);
    let mut acc: Vec<Vec<BigInt>> = (0..r).map(|i| (0..r).map(|j| BigInt::from(u8::from(i == j))).collect()).collect();
    for k in s..s + sys.tail_period() {
        if let Some(m) = sys.map_at(k) {
            acc = m
                .matrix()
                .iter()
                .map(|row| {
                    (0..r).map(|j| row.iter().zip(&acc).map(|(&x, col)| BigInt::from(x) * &col[j]).sum()).collect()
                })
                .collect();
        }
    }
    acc
}

/// Rank over `Q` of the limit group: the stable rank of the tail cycle.
pub fn eventual_rank(sys: &DirectLimitSystem) -> usize {
    let t = tail_cycle(sys);
    let r = t.len();
    let mut power = t.clone();
    for _ in 1..r {
        power = t
            .iter()
            .map(|row| (0..r).map(|j| row.iter().zip(&power).map(|(x, col)| x * &col[j]).sum()).collect())
            .collect();
    }
    rank_big(&power)
}

/// The limit is attained at the tail stage: the cycle is the identity.
fn stationary_unit(sys: &DirectLimitSystem) -> Option<Vec<u64>> {
    let t = tail_cycle(sys);
    let id = (0..t.len()).all(|i| (0..t.len()).all(|j| t[i][j] == BigInt::from(u8::from(i == j))));
    let mut u = unit_u64(sys, sys.tail_start())?;
    u.sort_unstable();
    id.then_some(u)
}

fn factor(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// For a tail of rank-one stages: the supernatural number `u · m^∞`, with
/// `u` the tail unit and `m` the product of the multipliers in one period.
pub fn supernatural_of(sys: &DirectLimitSystem) -> Option<Supernatural> {
    let s = sys.tail_start();
    if (s..=s + sys.tail_period()).any(|k| sys.rank_at(k) != 1) {
        return None;
    }
    let u = unit_u64(sys, s)?[0];
    let t = tail_cycle(sys)[0][0].to_u64()?;
    let mut sn: BTreeMap<u64, Option<u32>> = factor(u).into_iter().map(|(p, e)| (p, Some(e))).collect();
    if t > 1 {
        for p in factor(t).into_keys() {
            sn.insert(p, None);
        }
    }
    Some(Supernatural(sn))
}

fn certificate(a: &DirectLimitSystem, b: &DirectLimitSystem) -> Option<NotIsoCertificate> {
    let (ra, rb) = (eventual_rank(a), eventual_rank(b));
    if ra != rb {
        return Some(NotIsoCertificate::RankMismatch { left: ra, right: rb });
    }
    if let (Some(ua), Some(ub)) = (stationary_unit(a), stationary_unit(b)) {
        if ua != ub {
            return Some(NotIsoCertificate::StationaryUnits { left: ua, right: ub });
        }
    }
    if let (Some(sa), Some(sb)) = (supernatural_of(a), supernatural_of(b)) {
        if sa != sb {
            return Some(NotIsoCertificate::Supernatural { left: sa, right: sb });
        }
    }
    None
}

/// All `x ∈ N^w.len()` with `x · w = target` and entries `<= bound`, in
/// lexicographic order.
fn knapsack(w: &[u64], target: u64, bound: u64) -> Vec<Vec<u64>> {
    fn rec(w: &[u64], rest: u64, bound: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let k = cur.len();
        if k == w.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=bound.min(rest / w[k]) {
            cur.push(x);
            rec(w, rest - x * w[k], bound, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(w, target, bound, &mut Vec::new(), &mut out);
    out
}

fn cartesian<T: Clone>(choices: &[Vec<T>], limit: usize) -> Option<Vec<Vec<T>>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for x in c {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
            }
        }
        if next.len() > limit {
            return None;
        }
        out = next;
    }
    Some(out)
}

const CANDIDATE_LIMIT: usize = 1 << 20;

#[derive(Clone, Copy, Debug)]
struct Probe {
    i: usize,
    j: usize,
    a: usize,
    b: usize,
}

fn try_probe(sa: &DirectLimitSystem, sb: &DirectLimitSystem, pr: Probe, bound: u64) -> Option<IntertwiningWitness> {
    let (s, t) = (pr.a * sa.tail_period(), pr.b * sb.tail_period());
    let ua = unit_u64(sa, pr.i)?;
    let ua_next = unit_u64(sa, pr.i + s)?;
    let vb = unit_u64(sb, pr.j)?;
    let f = composite(sa, pr.i, pr.i + s)?;
    let g = composite(sb, pr.j, pr.j + t)?;
    if ua.contains(&0) || vb.contains(&0) || ua_next.len() != ua.len() {
        return None;
    }
    let alpha_rows: Vec<Vec<Vec<u64>>> = vb.iter().map(|&v| knapsack(&ua, v, bound)).collect();
    for alpha in cartesian(&alpha_rows, CANDIDATE_LIMIT)? {
        // rows y of β satisfy y · v = u'_s and y · α = f_s
        let beta_rows: Vec<Vec<Vec<u64>>> = ua_next
            .iter()
            .zip(&f)
            .map(|(&target, frow)| {
                knapsack(&vb, target, bound)
                    .into_iter()
                    .filter(|y| mul(&vec![y.clone()], &alpha).as_ref().map(|r| &r[0]) == Some(frow))
                    .collect()
            })
            .collect();
        if beta_rows.iter().any(Vec::is_empty) {
            continue;
        }
        let Some(betas) = cartesian(&beta_rows, CANDIDATE_LIMIT) else { continue };
        for beta in betas {
            if mul(&alpha, &beta).as_ref() == Some(&g) {
                return Some(IntertwiningWitness {
                    left_stage: pr.i,
                    right_stage: pr.j,
                    left_shift: s,
                    right_shift: t,
                    alpha,
                    beta,
                });
            }
        }
    }
    None
}

fn default_bound(a: &BratteliPresentation, b: &BratteliPresentation) -> u64 {
    let m = a.levels().iter().chain(b.levels()).flatten().copied().max().unwrap_or(1);
    m.saturating_mul(m)
}

/// Decides isomorphism of the ordered limit groups with order unit.
///
/// Invariant certificates are tried first; then start stages `(i, j)` and
/// period counts `(a, b)`, all below `depth`, are scanned in the order
/// `(i + j, i, a, b)` for a commuting intertwining. The scan is split over
/// worker threads but the first witness in that order is always returned.
pub fn iso_ultramatricial(a: &BratteliPresentation, b: &BratteliPresentation, opts: &IsoOptions) -> IsoVerdict {
    let (sa, sb) = (sk0_ultramatricial(a), sk0_ultramatricial(b));
    if let Some(c) = certificate(&sa, &sb) {
        return IsoVerdict::NotIso { certificate: c };
    }
    let bound = opts.entry_bound.unwrap_or_else(|| default_bound(a, b));
    let d = opts.depth;
    let mut probes = Vec::new();
    for i in sa.tail_start()..sa.tail_start() + d {
        for j in sb.tail_start()..sb.tail_start() + d {
            for x in 1..=d {
                for y in 1..=d {
                    probes.push(Probe { i, j, a: x, b: y });
                }
            }
        }
    }
    probes.sort_by_key(|p| (p.i + p.j, p.i, p.a, p.b));
    match par::find_first_in(opts.exec, &probes, |&p| try_probe(&sa, &sb, p, bound)) {
        Some((_, w)) => IsoVerdict::Iso { witness: w },
        None => IsoVerdict::Unknown,
    }
}

/// Independent re-check of a witness: shapes, unitality of `α` and `β`,
/// both composition identities, and that the shifts are whole periods
/// inside the tails.
pub fn verify_witness(a: &BratteliPresentation, b: &BratteliPresentation, w: &IntertwiningWitness) -> bool {
    let (sa, sb) = (sk0_ultramatricial(a), sk0_ultramatricial(b));
    let whole = |sys: &DirectLimitSystem, stage: usize, shift: usize| {
        stage >= sys.tail_start() && shift > 0 && shift.is_multiple_of(sys.tail_period())
    };
    if !whole(&sa, w.left_stage, w.left_shift) || !whole(&sb, w.right_stage, w.right_shift) {
        return false;
    }
    let (ra, rb) = (sa.rank_at(w.left_stage), sb.rank_at(w.right_stage));
    let shaped = |m: &Mat, r: usize, c: usize| m.len() == r && m.iter().all(|row| row.len() == c);
    if !shaped(&w.alpha, rb, ra) || !shaped(&w.beta, ra, rb) {
        return false;
    }
    let apply = |m: &Mat, v: &[BigInt]| -> Vec<BigInt> {
        m.iter().map(|row| row.iter().zip(v).map(|(&x, y)| BigInt::from(x) * y).sum()).collect()
    };
    let ua = sa.unit_at(w.left_stage);
    let vb = sb.unit_at(w.right_stage);
    let ua_next = sa.unit_at(w.left_stage + w.left_shift);
    let (Some(f), Some(g)) = (
        composite(&sa, w.left_stage, w.left_stage + w.left_shift),
        composite(&sb, w.right_stage, w.right_stage + w.right_shift),
    ) else {
        return false;
    };
    apply(&w.alpha, &ua) == vb
        && apply(&w.beta, &vb) == ua_next
        && mul(&w.beta, &w.alpha) == Some(f)
        && mul(&w.alpha, &w.beta) == Some(g)
}
