use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{domain, Result};

/// An exact code-family size `coefficient × 2^(n - offset)` for symbolic `n`.
///
/// Equality and ordering compare the denoted values, so `2 × 2^(n-4)` equals
/// `4 × 2^(n-5)`. Use [`coefficient`](Self::coefficient) and
/// [`offset`](Self::offset) when the literal representation matters.
#[derive(Clone, Debug)]
pub struct SymbolicSize {
    coefficient: BigUint,
    offset: u32,
}

impl SymbolicSize {
    pub fn new(coefficient: impl Into<BigUint>, offset: u32) -> Self {
        Self { coefficient: coefficient.into(), offset }
    }

    pub fn coefficient(&self) -> &BigUint {
        &self.coefficient
    }

    pub fn offset(&self) -> u32 {
        self.offset
    }

    /// Exact size at a concrete length `n >= offset`.
    pub fn at(&self, n: u32) -> Result<BigUint> {
        if n < self.offset {
            return Err(domain(format!(
                "cannot evaluate × 2^(n-{}) at n = {n}",
                self.offset
            )));
        }
        Ok(&self.coefficient << (n - self.offset) as usize)
    }

    /// The same value written against a different offset, when that is exact.
    pub fn rebased(&self, offset: u32) -> Option<Self> {
        if offset >= self.offset {
            return Some(Self::new(&self.coefficient << (offset - self.offset) as usize, offset));
        }
        let drop = (self.offset - offset) as u64;
        if self.coefficient.is_zero() || self.coefficient.trailing_zeros()? >= drop {
            Some(Self::new(&self.coefficient >> drop as usize, offset))
        } else {
            None
        }
    }
}

impl PartialEq for SymbolicSize {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for SymbolicSize {}

impl PartialOrd for SymbolicSize {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SymbolicSize {
    // a1 × 2^(n-c1) vs a2 × 2^(n-c2)  <=>  a1 × 2^c2 vs a2 × 2^c1; shift only the
    // side with the smaller offset.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.offset.cmp(&other.offset) {
            Ordering::Equal => self.coefficient.cmp(&other.coefficient),
            Ordering::Less => {
                let lhs = &self.coefficient << (other.offset - self.offset) as usize;
                lhs.cmp(&other.coefficient)
            }
            Ordering::Greater => {
                let rhs = &other.coefficient << (self.offset - other.offset) as usize;
                self.coefficient.cmp(&rhs)
            }
        }
    }
}

impl fmt::Display for SymbolicSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} × 2^(n-{})", self.coefficient, self.offset)
    }
}
