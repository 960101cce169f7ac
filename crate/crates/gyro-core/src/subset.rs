use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A set of elements of one gyrogroup carrier, with bit-set semantics.
///
/// Every subset remembers the size of its universe so that set algebra
/// between subsets of different gyrogroups is rejected early.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    universe: usize,
    blocks: Vec<u64>,
}

fn block_count(n: usize) -> usize {
    n.div_ceil(64)
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        Subset {
            universe,
            blocks: vec![0; block_count(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Subset::empty(universe);
        for x in 0..universe {
            s.insert(x);
        }
        s
    }

    pub fn singleton(universe: usize, x: usize) -> Self {
        let mut s = Subset::empty(universe);
        s.insert(x);
        s
    }

    pub fn from_elements(universe: usize, elems: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Subset::empty(universe);
        for x in elems {
            if x >= universe {
                return Err(Error::ElementOutOfRange {
                    element: x,
                    order: universe,
                });
            }
            s.insert(x);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, x: usize) {
        debug_assert!(x < self.universe);
        self.blocks[x / 64] |= 1 << (x % 64);
    }

    pub fn remove(&mut self, x: usize) {
        debug_assert!(x < self.universe);
        self.blocks[x / 64] &= !(1 << (x % 64));
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.blocks[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&x| self.contains(x))
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.universe == other.universe
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        assert_eq!(self.universe, other.universe);
        Subset {
            universe: self.universe,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        assert_eq!(self.universe, other.universe);
        Subset {
            universe: self.universe,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Image of the set under an elementwise map into the same universe.
    pub fn map(&self, mut f: impl FnMut(usize) -> usize) -> Subset {
        let mut out = Subset::empty(self.universe);
        for x in self.iter() {
            out.insert(f(x));
        }
        out
    }
}

/// Canonical order: size first, then the sorted element sequences
/// lexicographically.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    /// Comma-separated sorted element list, e.g. `0,2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = Subset::empty(100);
        s.insert(0);
        s.insert(64);
        s.insert(99);
        assert_eq!(s.len(), 3);
        assert!(s.contains(64));
        assert!(!s.contains(63));
        s.remove(64);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 99]);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(Subset::from_elements(4, [0, 4]).is_err());
        assert!(Subset::from_elements(4, [0, 3]).is_ok());
    }

    #[test]
    fn canonical_order_is_size_then_elements() {
        let a = Subset::from_elements(8, [0, 3]).unwrap();
        let b = Subset::from_elements(8, [1, 2]).unwrap();
        let c = Subset::from_elements(8, [5]).unwrap();
        assert!(c < a, "smaller sets come first");
        assert!(a < b, "0,3 precedes 1,2");
        let mut v = vec![b.clone(), a.clone(), c.clone()];
        v.sort();
        assert_eq!(v, vec![c, a, b]);
    }

    #[test]
    fn display_is_comma_separated() {
        let s = Subset::from_elements(8, [2, 0]).unwrap();
        assert_eq!(s.to_string(), "0,2");
        assert_eq!(Subset::empty(3).to_string(), "");
    }
}
