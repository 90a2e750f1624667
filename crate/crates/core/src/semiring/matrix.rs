use super::kernel::{Element, Kernel};
use crate::error::{Error, Result};

/// Cap on the number of complement candidates enumerated for finite kernels.
pub const COMPLEMENT_SEARCH_LIMIT: u128 = 1 << 24;

/// A dense matrix over one [`Kernel`], stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemiMatrix {
    kernel: Kernel,
    rows: usize,
    cols: usize,
    entries: Vec<Element>,
}

impl SemiMatrix {
    pub fn new(kernel: Kernel, rows: usize, cols: usize, entries: Vec<Element>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(format!("matrix must be non-empty, got {rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        for e in &entries {
            kernel.check(e)?;
        }
        Ok(SemiMatrix { kernel, rows, cols, entries })
    }

    pub fn from_fn(
        kernel: Kernel,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Element,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(kernel, rows, cols, entries)
    }

    pub fn identity(kernel: Kernel, n: usize) -> Result<Self> {
        let (zero, one) = (kernel.zero(), kernel.one());
        Self::from_fn(kernel, n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn zeros(kernel: Kernel, rows: usize, cols: usize) -> Result<Self> {
        let zero = kernel.zero();
        Self::from_fn(kernel, rows, cols, |_, _| zero.clone())
    }

    /// Boolean matrix from 0/1 rows.
    pub fn boolean(rows: &[&[u8]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let entries = rows.iter().flat_map(|row| row.iter().map(|&x| Element::Bool(x != 0))).collect();
        Self::new(Kernel::Bool, r, c, entries)
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn same_kernel(&self, other: &SemiMatrix) -> Result<()> {
        if self.kernel != other.kernel {
            return Err(Error::KernelMismatch { left: self.kernel.name(), right: other.kernel.name() });
        }
        Ok(())
    }

    /// Sum-of-products matrix multiplication using the kernel operations.
    pub fn mat_mul(&self, other: &SemiMatrix) -> Result<SemiMatrix> {
        self.same_kernel(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let k = &self.kernel;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = k.zero();
                for l in 0..self.cols {
                    let p = k.mul_unchecked(self.get(i, l), other.get(l, j));
                    acc = k.add_unchecked(&acc, &p);
                }
                entries.push(acc);
            }
        }
        Ok(SemiMatrix { kernel: k.clone(), rows: self.rows, cols: other.cols, entries })
    }

    /// Entrywise sum.
    pub fn mat_add(&self, other: &SemiMatrix) -> Result<SemiMatrix> {
        self.same_kernel(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| self.kernel.add_unchecked(a, b)).collect();
        Ok(SemiMatrix { kernel: self.kernel.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn is_zero(&self) -> bool {
        let z = self.kernel.zero();
        self.entries.iter().all(|e| *e == z)
    }

    /// `A·A = A`.
    pub fn is_idempotent(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.mat_mul(self)? == *self)
    }

    /// Checks the four identities making `f` a strong complement of `self`:
    /// `f` idempotent, `self + f = I`, `self·f = 0 = f·self`.
    pub fn is_strong_complement(&self, f: &SemiMatrix) -> Result<bool> {
        let n = self.rows;
        let id = SemiMatrix::identity(self.kernel.clone(), n)?;
        Ok(f.is_idempotent()? && self.mat_add(f)? == id && self.mat_mul(f)?.is_zero() && f.mat_mul(self)?.is_zero())
    }

    /// Searches for an idempotent `F` with `A + F = I` and `AF = FA = 0`.
    ///
    /// Each entry of `F` is restricted to the values `x` with
    /// `a_ij + x = I_ij`:
    ///
    /// * BOOL/TROP: the kernels are zerosumfree and entire, so off-diagonal
    ///   `a_ij` must be zero (forcing `f_ij = 0`), and on the diagonal
    ///   `f_ii = 1` when `a_ii = 0`, `f_ii = 0` when `a_ii = 1`; any other
    ///   diagonal value is infeasible. An empty candidate set is a
    ///   certificate that no complement exists.
    /// * NAT: `f_ij <= I_ij`, so every entry is 0 or 1.
    /// * TABLE: every table element satisfying the entry equation.
    ///
    /// The candidates are enumerated in row-major lexicographic order and
    /// the first one passing all identities is returned.
    pub fn strong_idempotent_complement(&self) -> Result<Option<SemiMatrix>> {
        if !self.is_idempotent()? {
            return Err(Error::NotIdempotent);
        }
        let n = self.rows;
        let k = &self.kernel;
        let (zero, one) = (k.zero(), k.one());
        let mut candidates: Vec<Vec<Element>> = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { &one } else { &zero };
                let a = self.get(i, j);
                let cands: Vec<Element> = match k {
                    Kernel::Bool | Kernel::Trop => {
                        if i != j {
                            if *a == zero {
                                vec![zero.clone()]
                            } else {
                                vec![]
                            }
                        } else if *a == zero {
                            vec![one.clone()]
                        } else if *a == one {
                            vec![zero.clone()]
                        } else {
                            vec![]
                        }
                    }
                    Kernel::Nat => [zero.clone(), one.clone()]
                        .into_iter()
                        .filter(|x| (i == j || *x == zero) && k.add_unchecked(a, x) == *target)
                        .collect(),
                    Kernel::Table(_) => {
                        k.elements().expect("finite").into_iter().filter(|x| k.add_unchecked(a, x) == *target).collect()
                    }
                };
                if cands.is_empty() {
                    return Ok(None);
                }
                candidates.push(cands);
            }
        }
        let size = candidates.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
        if size > COMPLEMENT_SEARCH_LIMIT {
            return Err(Error::SearchLimitExceeded { size, limit: COMPLEMENT_SEARCH_LIMIT });
        }
        let mut choice = vec![0usize; n * n];
        loop {
            let entries = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c].clone()).collect();
            let f = SemiMatrix { kernel: k.clone(), rows: n, cols: n, entries };
            if self.is_strong_complement(&f)? {
                return Ok(Some(f));
            }
            // odometer, last entry fastest
            let mut pos = n * n;
            loop {
                if pos == 0 {
                    return Ok(None);
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < candidates[pos].len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn block_diag(&self, other: &SemiMatrix) -> Result<SemiMatrix> {
        self.same_kernel(other)?;
        let zero = self.kernel.zero();
        let (r1, c1) = (self.rows, self.cols);
        SemiMatrix::from_fn(self.kernel.clone(), r1 + other.rows, c1 + other.cols, |i, j| {
            if i < r1 && j < c1 {
                self.get(i, j).clone()
            } else if i >= r1 && j >= c1 {
                other.get(i - r1, j - c1).clone()
            } else {
                zero.clone()
            }
        })
    }
}
