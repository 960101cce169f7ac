use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A bijection on `{0, …, n-1}`, stored as its image sequence:
/// `images[i]` is where `i` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u16).collect(),
        }
    }

    /// Validates that `images` is a bijection on `{0, …, len-1}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(Error::ElementOutOfRange {
                    element: v,
                    order: n,
                });
            }
            if seen[v] {
                return Err(Error::NotABijection { value: v });
            }
            seen[v] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|v| v as u16).collect(),
        })
    }

    pub(crate) fn from_raw(images: Vec<u16>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| v as usize == i)
        });
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i)
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&v| v as usize)
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.images
    }

    /// `self` after `other`: `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycle decomposition, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                cycle.push(j);
                seen[j] = true;
                j = self.apply(j);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, e.g. `(4,5)(6,7)`; the identity prints as `id`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
        assert!(Permutation::from_images(vec![0, 2, 1]).is_ok());
    }

    #[test]
    fn compose_and_inverse() {
        let a = Permutation::from_images(vec![0, 1, 2, 3, 5, 4, 7, 6]).unwrap();
        assert!(a.compose(&a).is_identity());
        assert_eq!(a.inverse(), a);
        let b = Permutation::from_images(vec![1, 2, 0]).unwrap();
        assert!(b.compose(&b.inverse()).is_identity());
        assert!(b.inverse().compose(&b).is_identity());
    }

    #[test]
    fn cycle_notation() {
        let a = Permutation::from_images(vec![0, 1, 2, 3, 5, 4, 7, 6]).unwrap();
        assert_eq!(a.to_string(), "(4,5)(6,7)");
        assert_eq!(Permutation::identity(4).to_string(), "id");
        let c = Permutation::from_images(vec![0, 1, 2, 3, 5, 4, 6, 7]).unwrap();
        assert_eq!(c.to_string(), "(4,5)");
    }
}
