use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use super::scalar::Trop;
use crate::error::{Error, Result};
use crate::lab::FiniteSemiringTable;

/// The scalar semirings the workbench computes over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kernel {
    /// The Boolean semifield `({0,1}, max, min)`.
    Bool,
    /// The tropical semifield `(Q ∪ {-inf}, max, +)`.
    Trop,
    /// The natural numbers `Z+` with ordinary arithmetic.
    Nat,
    /// A finite semiring given by its Cayley tables.
    Table(Arc<FiniteSemiringTable>),
}

/// A scalar tagged with the shape of its kernel.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Bool(bool),
    Trop(Trop),
    Nat(BigUint),
    Table(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Bool(b) => write!(f, "{}", u8::from(*b)),
            Element::Trop(t) => write!(f, "{t}"),
            Element::Nat(n) => write!(f, "{n}"),
            Element::Table(i) => write!(f, "#{i}"),
        }
    }
}

/// Structural properties of a kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KernelFlags {
    pub commutative: bool,
    pub additively_idempotent: bool,
    pub zerosumfree: bool,
    pub entire: bool,
    pub division: bool,
}

/// Outcome of the weak-cancellativity test `a + a = a + b => a = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakCancellation {
    pub cancellative: bool,
    /// A pair `(a, b)` with `a != b` and `a + a = a + b`.
    pub witness: Option<(Element, Element)>,
}

impl Kernel {
    pub fn table(t: FiniteSemiringTable) -> Self {
        Kernel::Table(Arc::new(t))
    }

    pub fn name(&self) -> String {
        match self {
            Kernel::Bool => "BOOL".into(),
            Kernel::Trop => "TROP".into(),
            Kernel::Nat => "NAT".into(),
            Kernel::Table(t) => format!("TABLE:{}", t.name()),
        }
    }

    pub fn zero(&self) -> Element {
        match self {
            Kernel::Bool => Element::Bool(false),
            Kernel::Trop => Element::Trop(Trop::zero()),
            Kernel::Nat => Element::Nat(BigUint::zero()),
            Kernel::Table(t) => Element::Table(t.zero()),
        }
    }

    pub fn one(&self) -> Element {
        match self {
            Kernel::Bool => Element::Bool(true),
            Kernel::Trop => Element::Trop(Trop::one()),
            Kernel::Nat => Element::Nat(BigUint::one()),
            Kernel::Table(t) => Element::Table(t.one()),
        }
    }

    /// Checks that `e` is a valid payload for this kernel.
    pub fn check(&self, e: &Element) -> Result<()> {
        let ok = match (self, e) {
            (Kernel::Bool, Element::Bool(_)) | (Kernel::Trop, Element::Trop(_)) | (Kernel::Nat, Element::Nat(_)) => {
                true
            }
            (Kernel::Table(t), Element::Table(i)) => *i < t.order(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidElement { kernel: self.name(), detail: format!("{e:?}") })
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (Kernel::Bool, Element::Bool(x), Element::Bool(y)) => Element::Bool(*x || *y),
            (Kernel::Trop, Element::Trop(x), Element::Trop(y)) => Element::Trop(x.oplus(y)),
            (Kernel::Nat, Element::Nat(x), Element::Nat(y)) => Element::Nat(x + y),
            (Kernel::Table(t), Element::Table(x), Element::Table(y)) => Element::Table(t.add(*x, *y)),
            _ => unreachable!("operands were validated against the kernel"),
        }
    }

    pub(crate) fn mul_unchecked(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (Kernel::Bool, Element::Bool(x), Element::Bool(y)) => Element::Bool(*x && *y),
            (Kernel::Trop, Element::Trop(x), Element::Trop(y)) => Element::Trop(x.otimes(y)),
            (Kernel::Nat, Element::Nat(x), Element::Nat(y)) => Element::Nat(x * y),
            (Kernel::Table(t), Element::Table(x), Element::Table(y)) => Element::Table(t.mul(*x, *y)),
            _ => unreachable!("operands were validated against the kernel"),
        }
    }

    /// All elements, for the finite kernels.
    pub fn elements(&self) -> Option<Vec<Element>> {
        match self {
            Kernel::Bool => Some(vec![Element::Bool(false), Element::Bool(true)]),
            Kernel::Table(t) => Some((0..t.order()).map(Element::Table).collect()),
            Kernel::Trop | Kernel::Nat => None,
        }
    }

    /// Structural flags. Infinite kernels use their known values; tables are
    /// scanned exhaustively after axiom validation.
    pub fn flags(&self) -> Result<KernelFlags> {
        Ok(match self {
            Kernel::Bool | Kernel::Trop => KernelFlags {
                commutative: true,
                additively_idempotent: true,
                zerosumfree: true,
                entire: true,
                division: true,
            },
            Kernel::Nat => KernelFlags {
                commutative: true,
                additively_idempotent: false,
                zerosumfree: true,
                entire: true,
                division: false,
            },
            Kernel::Table(t) => {
                t.validate().map_err(|v| Error::InvalidTable(v.to_string()))?;
                t.flags()
            }
        })
    }

    pub fn weak_cancellation(&self) -> WeakCancellation {
        match self {
            Kernel::Nat => WeakCancellation { cancellative: true, witness: None },
            // 0 ⊕ 0 = 0 = 0 ⊕ (-1): the unit against a finite element below it.
            Kernel::Trop => WeakCancellation {
                cancellative: false,
                witness: Some((Element::Trop(Trop::one()), Element::Trop(Trop::int(-1)))),
            },
            Kernel::Bool | Kernel::Table(_) => {
                let elems = self.elements().expect("finite kernel");
                let witness = elems.iter().find_map(|a| {
                    let aa = self.add_unchecked(a, a);
                    elems.iter().find(|b| *b != a && self.add_unchecked(a, b) == aa).map(|b| (a.clone(), b.clone()))
                });
                WeakCancellation { cancellative: witness.is_none(), witness }
            }
        }
    }
}
