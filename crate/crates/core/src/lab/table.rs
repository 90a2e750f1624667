use std::fmt;

use crate::error::{Error, Result};
use crate::semiring::KernelFlags;

/// Largest order accepted for a table kernel.
pub const MAX_TABLE_ORDER: usize = 64;

/// A finite semiring given by its addition and multiplication tables over
/// the carrier `{0, .., order-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSemiringTable {
    name: String,
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
}

/// First axiom violation found by [`FiniteSemiringTable::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableViolation {
    AdditionNotCommutative(usize, usize),
    AdditionNotAssociative(usize, usize, usize),
    ZeroNotAdditiveIdentity(usize),
    MultiplicationNotAssociative(usize, usize, usize),
    OneNotMultiplicativeIdentity(usize),
    LeftDistributivity(usize, usize, usize),
    RightDistributivity(usize, usize, usize),
    ZeroNotAbsorbing(usize),
}

impl fmt::Display for TableViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TableViolation::*;
        match self {
            AdditionNotCommutative(a, b) => write!(f, "{a}+{b} != {b}+{a}"),
            AdditionNotAssociative(a, b, c) => write!(f, "({a}+{b})+{c} != {a}+({b}+{c})"),
            ZeroNotAdditiveIdentity(a) => write!(f, "0+{a} != {a}"),
            MultiplicationNotAssociative(a, b, c) => write!(f, "({a}*{b})*{c} != {a}*({b}*{c})"),
            OneNotMultiplicativeIdentity(a) => write!(f, "1 is not neutral for {a}"),
            LeftDistributivity(a, b, c) => write!(f, "{a}*({b}+{c}) != {a}*{b}+{a}*{c}"),
            RightDistributivity(a, b, c) => write!(f, "({a}+{b})*{c} != {a}*{c}+{b}*{c}"),
            ZeroNotAbsorbing(a) => write!(f, "0 does not absorb {a}"),
        }
    }
}

impl FiniteSemiringTable {
    /// Builds a table after checking shapes and index ranges. Axioms are
    /// checked separately by [`validate`](Self::validate).
    pub fn new(
        name: impl Into<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let order = add.len();
        if order == 0 || order > MAX_TABLE_ORDER {
            return Err(Error::InvalidTable(format!("order {order} outside 1..={MAX_TABLE_ORDER}")));
        }
        if mul.len() != order || add.iter().chain(&mul).any(|row| row.len() != order) {
            return Err(Error::InvalidTable("tables must both be order x order".into()));
        }
        if zero >= order || one >= order {
            return Err(Error::InvalidTable("zero/one index out of range".into()));
        }
        let add: Vec<usize> = add.into_iter().flatten().collect();
        let mul: Vec<usize> = mul.into_iter().flatten().collect();
        if let Some(bad) = add.iter().chain(&mul).find(|&&x| x >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        Ok(FiniteSemiringTable { name: name.into(), order, add, mul, zero, one })
    }

    fn from_fns(
        name: impl Into<String>,
        order: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let add = (0..order).map(|a| (0..order).map(|b| add(a, b)).collect()).collect();
        let mul = (0..order).map(|a| (0..order).map(|b| mul(a, b)).collect()).collect();
        Self::new(name, add, mul, zero, one)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// Checks the semiring axioms by exhaustive scan and reports the first
    /// violation in the order: additive monoid, multiplicative monoid,
    /// distributivity, absorption.
    pub fn validate(&self) -> std::result::Result<(), TableViolation> {
        use TableViolation::*;
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(AdditionNotCommutative(a, b));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(AdditionNotAssociative(a, b, c));
                    }
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| self.add(self.zero, a) != a) {
            return Err(ZeroNotAdditiveIdentity(a));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(MultiplicationNotAssociative(a, b, c));
                    }
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| self.mul(self.one, a) != a || self.mul(a, self.one) != a) {
            return Err(OneNotMultiplicativeIdentity(a));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(LeftDistributivity(a, b, c));
                    }
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return Err(RightDistributivity(a, b, c));
                    }
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| self.mul(self.zero, a) != self.zero || self.mul(a, self.zero) != self.zero) {
            return Err(ZeroNotAbsorbing(a));
        }
        Ok(())
    }

    /// Structural flags by exhaustive scan. Assumes the table is valid.
    pub fn flags(&self) -> KernelFlags {
        let n = self.order;
        let z = self.zero;
        let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
        let commutative = pairs().all(|(a, b)| self.mul(a, b) == self.mul(b, a));
        let additively_idempotent = (0..n).all(|a| self.add(a, a) == a);
        let zerosumfree = pairs().all(|(a, b)| self.add(a, b) != z || (a == z && b == z));
        let entire = pairs().all(|(a, b)| self.mul(a, b) != z || a == z || b == z);
        let division = z != self.one
            && (0..n)
                .filter(|&a| a != z)
                .all(|a| (0..n).any(|b| self.mul(a, b) == self.one && self.mul(b, a) == self.one));
        KernelFlags { commutative, additively_idempotent, zerosumfree, entire, division }
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order).filter(|&e| self.is_idempotent(e)).collect()
    }

    /// The opposite semiring (multiplication reversed).
    pub fn opposite(&self) -> Self {
        Self::from_fns(
            format!("{}^op", self.name),
            self.order,
            |a, b| self.add(a, b),
            |a, b| self.mul(b, a),
            self.zero,
            self.one,
        )
        .expect("opposite of a well-formed table is well-formed")
    }

    /// The Boolean semifield: `0 = false`, `1 = true`.
    pub fn boolean() -> Self {
        Self::from_fns("B", 2, |a, b| a.max(b), |a, b| a.min(b), 0, 1).expect("static table")
    }

    /// `Z/n` with `n >= 1`.
    pub fn zmod(n: usize) -> Self {
        assert!((1..=MAX_TABLE_ORDER).contains(&n), "Z/{n} is outside the table range");
        Self::from_fns(format!("Z{n}"), n, |a, b| (a + b) % n, |a, b| (a * b) % n, 0, 1 % n).expect("static table")
    }

    /// The finite field with `q` elements, `q` a prime power in the table range.
    ///
    /// Elements are polynomials over `F_p` of degree `< k` encoded in base `p`
    /// (constant coefficient least significant); multiplication reduces
    /// modulo the lexicographically first monic irreducible of degree `k`.
    pub fn gf(q: usize) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::InvalidTable(format!("{q} is not a prime power")))?;
        if q > MAX_TABLE_ORDER {
            return Err(Error::InvalidTable(format!("GF({q}) exceeds the table range")));
        }
        let modulus = first_irreducible(p, k);
        let digits = |x: usize| -> Vec<usize> {
            let mut v = Vec::with_capacity(k);
            let mut x = x;
            for _ in 0..k {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let encode = |v: &[usize]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
        let add = |a: usize, b: usize| {
            let (x, y) = (digits(a), digits(b));
            encode(&x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect::<Vec<_>>())
        };
        let mul = |a: usize, b: usize| {
            let (x, y) = (digits(a), digits(b));
            let mut prod = vec![0usize; 2 * k];
            for (i, u) in x.iter().enumerate() {
                for (j, v) in y.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + u * v) % p;
                }
            }
            // reduce by the monic modulus, highest degree first
            for d in (k..2 * k).rev() {
                let c = prod[d];
                if c != 0 {
                    for (i, m) in modulus.iter().enumerate().take(k) {
                        let idx = d - k + i;
                        prod[idx] = (prod[idx] + (p - c) * m % p) % p;
                    }
                    prod[d] = 0;
                }
            }
            encode(&prod[..k])
        };
        Self::from_fns(format!("GF{q}"), q, add, mul, 0, 1)
    }

    /// Direct product with componentwise operations; `(x, y)` is stored at
    /// index `x * other.order + y`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let m = other.order;
        Self::from_fns(
            format!("{}x{}", self.name, other.name),
            self.order * m,
            |a, b| self.add(a / m, b / m) * m + other.add(a % m, b % m),
            |a, b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m),
            self.zero * m + other.zero,
            self.one * m + other.one,
        )
    }

    /// The matrix semiring `M_n(self)`; a matrix is stored at the index whose
    /// base-`order` digits are its entries in row-major order, first entry most
    /// significant.
    pub fn matrix_semiring(&self, n: usize) -> Result<Self> {
        let q = self.order;
        let cells = n * n;
        let size = (q as u128).checked_pow(cells as u32).unwrap_or(u128::MAX);
        if n == 0 || size > MAX_TABLE_ORDER as u128 {
            return Err(Error::InvalidTable(format!("M_{n} over an order-{q} table exceeds the table range")));
        }
        let order = size as usize;
        let decode = |x: usize| -> Vec<usize> {
            let mut v = vec![0; cells];
            let mut x = x;
            for slot in v.iter_mut().rev() {
                *slot = x % q;
                x /= q;
            }
            v
        };
        let encode = |v: &[usize]| v.iter().fold(0, |acc, &d| acc * q + d);
        let add = |a: usize, b: usize| {
            let (x, y) = (decode(a), decode(b));
            encode(&x.iter().zip(&y).map(|(&u, &v)| self.add(u, v)).collect::<Vec<_>>())
        };
        let mul = |a: usize, b: usize| {
            let (x, y) = (decode(a), decode(b));
            let mut out = vec![self.zero; cells];
            for i in 0..n {
                for j in 0..n {
                    let mut acc = self.zero;
                    for l in 0..n {
                        acc = self.add(acc, self.mul(x[i * n + l], y[l * n + j]));
                    }
                    out[i * n + j] = acc;
                }
            }
            encode(&out)
        };
        let zero = encode(&vec![self.zero; cells]);
        let one = encode(&(0..cells).map(|c| if c / n == c % n { self.one } else { self.zero }).collect::<Vec<_>>());
        Self::from_fns(format!("M{n}({})", self.name), order, add, mul, zero, one)
    }

    /// Index of the matrix unit `e_ij` in a table produced by
    /// [`matrix_semiring`](Self::matrix_semiring) over `base`.
    pub fn matrix_unit_index(base: &Self, n: usize, i: usize, j: usize) -> usize {
        let q = base.order;
        (0..n * n).fold(0, |acc, c| acc * q + if c == i * n + j { base.one } else { base.zero })
    }
}

/// `q = p^k` with `p` prime, `k >= 1`.
pub(crate) fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Coefficients `c_0..c_{k-1}` of the first monic irreducible
/// `x^k + c_{k-1} x^{k-1} + .. + c_0` over `F_p`, by root/factor search.
fn first_irreducible(p: usize, k: usize) -> Vec<usize> {
    if k == 1 {
        return vec![0];
    }
    let total = p.pow(k as u32);
    (0..total)
        .map(|code| {
            let mut c = Vec::with_capacity(k);
            let mut x = code;
            for _ in 0..k {
                c.push(x % p);
                x /= p;
            }
            c
        })
        .find(|c| is_irreducible(p, c))
        .expect("irreducible polynomials exist in every degree")
}

fn is_irreducible(p: usize, low: &[usize]) -> bool {
    let k = low.len();
    let mut f = low.to_vec();
    f.push(1);
    // try every monic divisor of degree 1..=k/2
    for d in 1..=k / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = code;
            for _ in 0..d {
                g.push(x % p);
                x /= p;
            }
            g.push(1);
            if poly_rem(p, &f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(p: usize, f: &[usize], g: &[usize]) -> Vec<usize> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().expect("nonempty");
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gc) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * gc % p) % p;
            }
        }
        r.pop();
    }
    r
}
