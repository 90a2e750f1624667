use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::span::{combine, extremal_indices, principal_solution, TropSpan, TropVector};
use crate::par::{self, Exec};
use crate::semiring::Trop;

/// Default depth `k` of the probe grid `{0, -1, ..., -k, -inf}`.
pub const DEFAULT_PROBE_DEPTH: u32 = 6;

/// Default cap on the number of probe-grid points.
pub const PROBE_GRID_LIMIT: u128 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreenessOptions {
    pub probe_depth: u32,
    /// Construct a witness directly when the probe grid has none.
    pub analytic_fallback: bool,
    /// Grids with more points than this are skipped.
    pub grid_limit: u128,
    pub exec: Exec,
}

impl Default for FreenessOptions {
    fn default() -> Self {
        FreenessOptions {
            probe_depth: DEFAULT_PROBE_DEPTH,
            analytic_fallback: true,
            grid_limit: PROBE_GRID_LIMIT,
            exec: Exec::default(),
        }
    }
}

/// Two distinct coefficient vectors over the extremal generators with the
/// same image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseWitness {
    /// Positions of the extremal generators in the input family.
    pub generators: Vec<usize>,
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub image: Vec<String>,
    #[serde(skip)]
    pub(crate) raw: [TropVector; 3],
}

impl CollapseWitness {
    pub fn left(&self) -> &[Trop] {
        &self.raw[0]
    }

    pub fn right(&self) -> &[Trop] {
        &self.raw[1]
    }

    pub fn image(&self) -> &[Trop] {
        &self.raw[2]
    }

    fn new(generators: Vec<usize>, left: TropVector, right: TropVector, image: TropVector) -> Self {
        let show = |v: &TropVector| v.iter().map(ToString::to_string).collect();
        CollapseWitness {
            generators,
            left: show(&left),
            right: show(&right),
            image: show(&image),
            raw: [left, right, image],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Freeness {
    Free { rank: usize },
    NotFree { witness: CollapseWitness },
    Unknown,
}

impl Freeness {
    pub fn label(&self) -> &'static str {
        match self {
            Freeness::Free { .. } => "FREE",
            Freeness::NotFree { .. } => "NOT_FREE",
            Freeness::Unknown => "UNKNOWN",
        }
    }
}

/// A row in which `j` is the only generator with a finite entry.
fn has_private_row(gens: &[TropVector], j: usize) -> bool {
    (0..gens[j].len())
        .any(|i| !gens[j][i].is_neg_inf() && gens.iter().enumerate().all(|(k, g)| k == j || g[i].is_neg_inf()))
}

fn grid_value(slot: usize, depth: u32) -> Trop {
    if slot as u32 > depth {
        Trop::NEG_INF
    } else {
        Trop::int(-(slot as i64))
    }
}

/// Decides whether the span is free on its extremal generators.
///
/// The span is free exactly when `λ ↦ E ⊙ λ` is injective, which happens
/// iff every extremal generator owns a row where all others are `-inf`.
/// `FREE` is reported from that criterion. Otherwise a collapse witness is
/// sought on the probe grid, scanning coefficient vectors in lexicographic
/// order (`0 > -1 > ... > -k > -inf` per slot) for one whose principal
/// solution differs from itself; the first hit wins. If the grid has none,
/// the witness is built directly from a generator without a private row.
pub fn is_free_trop(sp: &TropSpan) -> Freeness {
    is_free_trop_with(sp, &FreenessOptions::default())
}

pub fn is_free_trop_with(sp: &TropSpan, opts: &FreenessOptions) -> Freeness {
    let keep = extremal_indices(sp);
    let gens: Vec<TropVector> = keep.iter().map(|&j| sp.generators()[j].clone()).collect();
    let e = gens.len();
    let Some(lonely) = (0..e).find(|&j| !has_private_row(&gens, j)) else {
        return Freeness::Free { rank: e };
    };

    let base = opts.probe_depth as u128 + 2;
    let size = base.checked_pow(e as u32).unwrap_or(u128::MAX);
    if size <= opts.grid_limit {
        let decode = |mut idx: usize| {
            let mut lambda = vec![Trop::NEG_INF; e];
            for slot in lambda.iter_mut().rev() {
                *slot = grid_value(idx % base as usize, opts.probe_depth);
                idx /= base as usize;
            }
            lambda
        };
        let hit = par::find_first(opts.exec, size as usize, |idx| {
            let lambda = decode(idx);
            let image = combine(&gens, &lambda);
            let principal = principal_solution(&gens, &image);
            (principal != lambda).then_some((lambda, principal, image))
        });
        if let Some((_, (lambda, principal, image))) = hit {
            return Freeness::NotFree { witness: CollapseWitness::new(keep, lambda, principal, image) };
        }
    }
    if !opts.analytic_fallback {
        return Freeness::Unknown;
    }
    // generator `lonely` is dominated in every row once the others are
    // scaled above the spread of all finite entries
    let finite: Vec<&BigRational> = gens.iter().flatten().filter_map(Trop::value).collect();
    let hi = finite.iter().copied().max().cloned().unwrap_or_default();
    let lo = finite.iter().copied().min().cloned().unwrap_or_default();
    let big = Trop::finite(hi - lo + BigRational::one());
    let lambda: TropVector = (0..e).map(|j| if j == lonely { Trop::one() } else { big.clone() }).collect();
    let mut other = lambda.clone();
    other[lonely] = Trop::NEG_INF;
    let image = combine(&gens, &lambda);
    debug_assert_eq!(image, combine(&gens, &other));
    Freeness::NotFree { witness: CollapseWitness::new(keep, lambda, other, image) }
}

/// Independent check of a collapse witness against the input span.
pub fn verify_witness(sp: &TropSpan, w: &CollapseWitness) -> bool {
    let Some(gens) = w.generators.iter().map(|&j| sp.generators().get(j).cloned()).collect::<Option<Vec<_>>>() else {
        return false;
    };
    w.left() != w.right()
        && w.left().len() == gens.len()
        && w.right().len() == gens.len()
        && combine(&gens, w.left()) == combine(&gens, w.right())
        && combine(&gens, w.left()) == w.image()
}
