use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// One copy of a source factor placed on the diagonal of a target factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockPlacement {
    pub source: usize,
    pub copy: u64,
    pub offset: u64,
    pub size: u64,
}

/// The block-diagonal embedding `∏ M_{src_j} -> ∏ M_{dst_i}` in which source
/// factor `j` appears `m[i][j]` times down the diagonal of target factor `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingPlan {
    pub src: Vec<u64>,
    pub dst: Vec<u64>,
    pub multiplicities: Vec<Vec<u64>>,
    /// Placements for each target factor, top-left to bottom-right.
    pub blocks: Vec<Vec<BlockPlacement>>,
    pub description: Vec<String>,
}

/// Builds the embedding realising `m`, which must be a `dst × src`
/// nonnegative matrix with `m · src = dst`.
pub fn realize_morphism(src: &[u64], dst: &[u64], m: &[Vec<i64>]) -> Result<EmbeddingPlan> {
    if m.len() != dst.len() || m.iter().any(|row| row.len() != src.len()) {
        return Err(Error::ShapeMismatch(format!("expected a {}x{} multiplicity matrix", dst.len(), src.len())));
    }
    for (row, r) in m.iter().enumerate() {
        if let Some(col) = r.iter().position(|&x| x < 0) {
            return Err(Error::NegativeEntry { row, col });
        }
    }
    let multiplicities: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect();
    for (i, row) in multiplicities.iter().enumerate() {
        let total: u128 = row.iter().zip(src).map(|(&k, &n)| k as u128 * n as u128).sum();
        if total != dst[i] as u128 {
            return Err(Error::NotUnital);
        }
    }
    let mut blocks = Vec::with_capacity(dst.len());
    let mut description = Vec::with_capacity(dst.len());
    for (i, row) in multiplicities.iter().enumerate() {
        let mut offset = 0;
        let mut placed = Vec::new();
        let mut parts = Vec::new();
        for (j, &k) in row.iter().enumerate() {
            for copy in 0..k {
                placed.push(BlockPlacement { source: j, copy, offset, size: src[j] });
                offset += src[j];
            }
            if k > 0 {
                parts.push(format!("{k} x M{} (source factor {j})", src[j]));
            }
        }
        blocks.push(placed);
        description.push(format!("target factor {i} = M{}: {}", dst[i], parts.join(" + ")));
    }
    Ok(EmbeddingPlan { src: src.to_vec(), dst: dst.to_vec(), multiplicities, blocks, description })
}

impl EmbeddingPlan {
    /// The image of the matrix unit `e_{ab}` of source factor `j`, as the set
    /// of target matrix units `(factor, row, col)` whose sum it is.
    pub fn image_of_unit(&self, j: usize, a: u64, b: u64) -> BTreeSet<(usize, u64, u64)> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(i, placed)| {
                placed.iter().filter(move |p| p.source == j).map(move |p| (i, p.offset + a, p.offset + b))
            })
            .collect()
    }
}
