use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A declared gyration table: a pool of named permutations plus an n×n grid
/// of pool indices, `grid[a*n + b]` naming gyr[a,b].
///
/// The pool is normalized at construction (deduplicated, sorted by name) so
/// that equality and rendering are canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeclaredGyr {
    perms: Vec<(String, Permutation)>,
    grid: Vec<u32>,
}

impl DeclaredGyr {
    /// `perms` are the named permutations, `grid` gives for each cell the
    /// index into `perms`. Names must be unique and every grid entry in range.
    pub fn new(order: usize, perms: Vec<(String, Permutation)>, grid: Vec<u32>) -> Result<Self> {
        if grid.len() != order * order {
            return Err(Error::Internal(format!(
                "gyration grid has {} cells, expected {}",
                grid.len(),
                order * order
            )));
        }
        for (name, p) in &perms {
            if p.len() != order {
                return Err(Error::PermutationLength {
                    len: p.len(),
                    expected: order,
                });
            }
            if perms.iter().filter(|(n, _)| n == name).count() > 1 {
                return Err(Error::Internal(format!(
                    "duplicate permutation name {name:?}"
                )));
            }
        }
        for &ix in &grid {
            if ix as usize >= perms.len() {
                return Err(Error::Internal(format!(
                    "gyration grid references permutation {ix}"
                )));
            }
        }
        // normalize: sort the pool by name, remap the grid
        let mut order_ix: Vec<usize> = (0..perms.len()).collect();
        order_ix.sort_by(|&a, &b| perms[a].0.cmp(&perms[b].0));
        let mut remap = vec![0u32; perms.len()];
        for (new, &old) in order_ix.iter().enumerate() {
            remap[old] = new as u32;
        }
        let mut sorted = Vec::with_capacity(perms.len());
        for &old in &order_ix {
            sorted.push(perms[old].clone());
        }
        let grid = grid.into_iter().map(|ix| remap[ix as usize]).collect();
        Ok(DeclaredGyr {
            perms: sorted,
            grid,
        })
    }

    pub fn perms(&self) -> &[(String, Permutation)] {
        &self.perms
    }

    pub fn grid(&self) -> &[u32] {
        &self.grid
    }

    pub fn entry(&self, order: usize, a: usize, b: usize) -> &Permutation {
        &self.perms[self.grid[a * order + b] as usize].1
    }

    pub fn entry_name(&self, order: usize, a: usize, b: usize) -> &str {
        &self.perms[self.grid[a * order + b] as usize].0
    }
}

/// A finite gyrogroup candidate given by its Cayley table.
///
/// Construction enforces what every gyrogroup satisfies structurally:
/// element 0 is a left identity (row 0 is the identity row) and the table is
/// a Latin square. The full axioms (gyration automorphism, gyroassociativity,
/// left loop) are the verifier's job; see [`crate::axioms::verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGyrogroup {
    order: usize,
    cayley: Vec<u16>,
    /// left (= right) inverse of each element, precomputed from the table
    inv: Vec<u16>,
    declared_gyr: Option<DeclaredGyr>,
    name: Option<String>,
}

impl FiniteGyrogroup {
    /// Builds a gyrogroup table from rows, checking squareness, range,
    /// the identity row and the Latin property.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        let mut cayley = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: r,
                    len: row.len(),
                    expected: n,
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::EntryOutOfRange {
                        row: r,
                        col: c,
                        value: v,
                        order: n,
                    });
                }
                cayley.push(v as u16);
            }
        }
        Self::from_flat(n, cayley)
    }

    pub(crate) fn from_flat(n: usize, cayley: Vec<u16>) -> Result<Self> {
        debug_assert_eq!(cayley.len(), n * n);
        for (b, &v) in cayley[..n].iter().enumerate() {
            if v as usize != b {
                return Err(Error::NotLeftIdentity {
                    col: b,
                    value: v as usize,
                });
            }
        }
        let mut seen = vec![false; n];
        for r in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for c in 0..n {
                let v = cayley[r * n + c] as usize;
                if seen[v] {
                    return Err(Error::DuplicateInRow { row: r, value: v });
                }
                seen[v] = true;
            }
        }
        let mut inv = vec![u16::MAX; n];
        for c in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for r in 0..n {
                let v = cayley[r * n + c] as usize;
                if seen[v] {
                    return Err(Error::DuplicateInColumn { col: c, value: v });
                }
                seen[v] = true;
                if v == 0 {
                    inv[c] = r as u16;
                }
            }
        }
        Ok(FiniteGyrogroup {
            order: n,
            cayley,
            inv,
            declared_gyr: None,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_declared_gyr(mut self, gyr: DeclaredGyr) -> Result<Self> {
        for (_, p) in gyr.perms() {
            if p.len() != self.order {
                return Err(Error::PermutationLength {
                    len: p.len(),
                    expected: self.order,
                });
            }
        }
        if gyr.grid().len() != self.order * self.order {
            return Err(Error::Internal("gyration grid size mismatch".into()));
        }
        self.declared_gyr = Some(gyr);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: Option<String>) {
        self.name = name;
    }

    pub fn declared_gyr(&self) -> Option<&DeclaredGyr> {
        self.declared_gyr.as_ref()
    }

    /// a ⊕ b, by table lookup. Panics if an element is out of range.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        assert!(a < self.order && b < self.order, "element out of range");
        self.cayley[a * self.order + b] as usize
    }

    #[inline]
    pub(crate) fn op_fast(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b] as usize
    }

    /// ⊖a: the unique b with b ⊕ a = 0. Total because the table is Latin.
    #[inline]
    pub fn left_inverse(&self, a: usize) -> usize {
        assert!(a < self.order, "element out of range");
        self.inv[a] as usize
    }

    /// Precomputed left inverses for all elements: `op(inv[a], a) = 0`.
    pub fn inverse_table(&self) -> Vec<usize> {
        self.inv.iter().map(|&v| v as usize).collect()
    }

    /// The derived gyration gyr[a,b]: c ↦ ⊖(a⊕b) ⊕ (a ⊕ (b ⊕ c)).
    ///
    /// On a Latin table this is always a permutation (a composition of row
    /// maps); whether it is an automorphism is checked by the verifier.
    pub fn derive_gyr(&self, a: usize, b: usize) -> Permutation {
        let n = self.order;
        let v = self.op(a, b);
        let iv = self.inv[v] as usize;
        let images = (0..n)
            .map(|c| {
                self.cayley[iv * n + self.cayley[a * n + self.cayley[b * n + c] as usize] as usize]
            })
            .collect();
        Permutation::from_raw(images)
    }

    /// gyr[a,b] applied to a single element, without building the permutation.
    #[inline]
    pub fn gyr_apply(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.order;
        let v = self.cayley[a * n + b] as usize;
        let iv = self.inv[v] as usize;
        self.cayley[iv * n + self.cayley[a * n + self.cayley[b * n + c] as usize] as usize] as usize
    }

    /// All derived gyrations, deduplicated into a pool with an n×n grid of
    /// pool indices. Pool entries are ordered by first occurrence in
    /// row-major scan order, so the identity (gyr[0,0]) is always entry 0.
    pub fn derived_gyrations(&self) -> GyrationPool {
        let n = self.order;
        let mut pool: Vec<Permutation> = Vec::new();
        let mut index: HashMap<Vec<u16>, u32> = HashMap::new();
        let mut grid = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let p = self.derive_gyr(a, b);
                let id = *index.entry(p.raw().to_vec()).or_insert_with(|| {
                    pool.push(p.clone());
                    (pool.len() - 1) as u32
                });
                grid[a * n + b] = id;
            }
        }
        GyrationPool {
            order: n,
            perms: pool,
            grid,
        }
    }

    pub(crate) fn cells(&self) -> &[u16] {
        &self.cayley
    }

    /// Cell-for-cell comparison of the Cayley tables, ignoring names and
    /// declared gyration data.
    pub fn same_table(&self, other: &FiniteGyrogroup) -> bool {
        self.order == other.order && self.cayley == other.cayley
    }

    /// Relabel the carrier by a permutation fixing 0: the table
    /// t'(x,y) = p(t(p⁻¹x, p⁻¹y)). Produces an isomorphic gyrogroup.
    pub fn relabel(&self, p: &Permutation) -> Result<FiniteGyrogroup> {
        if p.len() != self.order {
            return Err(Error::PermutationLength {
                len: p.len(),
                expected: self.order,
            });
        }
        if p.apply(0) != 0 {
            return Err(Error::Internal("relabeling must fix the identity".into()));
        }
        let n = self.order;
        let inv = p.inverse();
        let rows = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| p.apply(self.op_fast(inv.apply(x), inv.apply(y))))
                    .collect()
            })
            .collect();
        FiniteGyrogroup::from_rows(rows)
    }
}

/// Deduplicated derived gyrations of one table.
#[derive(Debug, Clone)]
pub struct GyrationPool {
    order: usize,
    perms: Vec<Permutation>,
    grid: Vec<u32>,
}

impl GyrationPool {
    pub fn distinct(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn grid(&self) -> &[u32] {
        &self.grid
    }

    pub fn gyr(&self, a: usize, b: usize) -> &Permutation {
        &self.perms[self.grid[a * self.order + b] as usize]
    }

    pub fn pool_index(&self, a: usize, b: usize) -> u32 {
        self.grid[a * self.order + b]
    }

    pub fn all_identity(&self) -> bool {
        self.perms.len() == 1 && self.perms[0].is_identity()
    }
}
