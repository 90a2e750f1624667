use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kflow::{is_unital, DirectLimitSystem, PositiveMorphism, SimplicialOrderedGroup};

/// The ground semifield of a matricial algebra. It is carried for reporting
/// only; no invariant computed here depends on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum FieldTag {
    #[default]
    Bool,
    Trop,
    Field(u64),
    Other(String),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Bool => f.write_str("BOOL"),
            FieldTag::Trop => f.write_str("TROP"),
            FieldTag::Field(q) => write!(f, "FIELD({q})"),
            FieldTag::Other(s) => f.write_str(s),
        }
    }
}

impl FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "BOOL" => FieldTag::Bool,
            "TROP" => FieldTag::Trop,
            _ => match s.strip_prefix("FIELD(").and_then(|r| r.strip_suffix(')')) {
                Some(q) => {
                    FieldTag::Field(q.parse().map_err(|_| Error::Malformed(format!("bad field order in {s:?}")))?)
                }
                None => FieldTag::Other(s.to_owned()),
            },
        })
    }
}

impl Serialize for FieldTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldTag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `M_{n_1}(F) × ... × M_{n_r}(F)`, recorded by its sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatricialAlgebra {
    pub field: FieldTag,
    sizes: Vec<u64>,
}

impl MatricialAlgebra {
    pub fn new(field: FieldTag, sizes: Vec<u64>) -> Result<Self> {
        check_sizes(&sizes)?;
        Ok(MatricialAlgebra { field, sizes })
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }
}

fn check_sizes(sizes: &[u64]) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::ArgumentTooSmall { value: 0, min: 1 });
    }
    if sizes.contains(&0) {
        return Err(Error::Malformed("matrix sizes must be positive".into()));
    }
    Ok(())
}

/// `(SK0(A), [A]) = (Z^r, (n_1, ..., n_r))`.
pub fn sk0_matricial(a: &MatricialAlgebra) -> SimplicialOrderedGroup {
    SimplicialOrderedGroup::new(a.sizes.clone()).expect("sizes are non-empty")
}

/// A sequence of matricial algebras joined by unital embeddings, recorded as
/// size vectors and multiplicity matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BratteliPresentation {
    pub field: FieldTag,
    levels: Vec<Vec<u64>>,
    steps: Vec<PositiveMorphism>,
    period: Option<usize>,
}

impl BratteliPresentation {
    /// Checks shapes and that `levels[k+1] = steps[k] · levels[k]` for every
    /// step; a failure at step `k` is reported as `UnitalityViolation(k)`.
    pub fn new(
        field: FieldTag,
        levels: Vec<Vec<u64>>,
        steps: Vec<PositiveMorphism>,
        period: Option<usize>,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Malformed("a presentation needs at least one level".into()));
        }
        for l in &levels {
            check_sizes(l)?;
        }
        if steps.len() + 1 != levels.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} levels need {} steps, got {}",
                levels.len(),
                levels.len() - 1,
                steps.len()
            )));
        }
        for (k, s) in steps.iter().enumerate() {
            match is_unital(s, &levels[k], &levels[k + 1]) {
                Ok(true) => {}
                Ok(false) => return Err(Error::UnitalityViolation(k)),
                Err(e) => return Err(e),
            }
        }
        let p = BratteliPresentation { field, levels, steps, period };
        p.to_system()?;
        Ok(p)
    }

    /// A single level, i.e. a matricial algebra viewed as a constant sequence.
    pub fn constant(field: FieldTag, sizes: Vec<u64>) -> Result<Self> {
        Self::new(field, vec![sizes], Vec::new(), None)
    }

    /// Levels `(1), (k), (k^2), ...` joined by the step `[k]`, declared
    /// through `stages` levels with period one.
    pub fn rank_one_stationary(field: FieldTag, k: u64, stages: usize) -> Result<Self> {
        let stages = stages.max(2);
        let levels = (0..stages).map(|i| vec![k.pow(i as u32)]).collect();
        let steps = vec![PositiveMorphism::scalar(k); stages - 1];
        Self::new(field, levels, steps, Some(1))
    }

    pub fn levels(&self) -> &[Vec<u64>] {
        &self.levels
    }

    pub fn steps(&self) -> &[PositiveMorphism] {
        &self.steps
    }

    pub fn period(&self) -> Option<usize> {
        self.period
    }

    fn to_system(&self) -> Result<DirectLimitSystem> {
        let groups = self.levels.iter().map(|l| SimplicialOrderedGroup::new(l.clone())).collect::<Result<_>>()?;
        DirectLimitSystem::new(groups, self.steps.clone(), self.period)
    }
}

/// The direct system of stage groups `SK0(A_k)` under the step matrices.
pub fn sk0_ultramatricial(b: &BratteliPresentation) -> DirectLimitSystem {
    b.to_system().expect("validated on construction")
}

/// Sorted size multiset; two finite products of matrix semirings over `B`
/// are isomorphic exactly when these agree.
pub fn congsemisimple_invariant(sizes: &[u64]) -> Vec<u64> {
    let mut s = sizes.to_vec();
    s.sort_unstable();
    s
}

pub fn congsemisimple_isomorphic(a: &[u64], b: &[u64]) -> bool {
    congsemisimple_invariant(a) == congsemisimple_invariant(b)
}
