//! Isomorphism and automorphism computation by backtracking over Cayley
//! tables.
//!
//! The identity must map to the identity (f(0) = f(0⊕0) = f(0)⊕f(0)), so 0
//! is the root of the search. Candidates are pruned by the element-order
//! profile: the least k ≥ 1 with the k-fold left sum of a equal to 0, well
//! defined by left cancellation. Products of already-mapped elements force
//! further assignments, so the search mostly behaves like a search over
//! generator images.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gyrogroup::FiniteGyrogroup;
use crate::perm::Permutation;

/// Default cap on the order for automorphism enumeration.
pub const AUTOMORPHISM_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoResult {
    pub isomorphic: bool,
    /// The lexicographically least operation-preserving bijection, when one
    /// exists. Always maps 0 to 0.
    pub map: Option<Permutation>,
}

/// Least k ≥ 1 such that the k-fold left sum a ⊕ (a ⊕ (… ⊕ a)) is 0.
fn element_orders(g: &FiniteGyrogroup) -> Vec<usize> {
    let n = g.order();
    (0..n)
        .map(|a| {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = g.op_fast(a, x);
                k += 1;
                debug_assert!(k <= n, "left-sum orbit must reach 0 in a gyrogroup");
            }
            k
        })
        .collect()
}

struct Search<'a> {
    g1: &'a FiniteGyrogroup,
    g2: &'a FiniteGyrogroup,
    orders1: Vec<usize>,
    orders2: Vec<usize>,
    f: Vec<Option<u16>>,
    used: Vec<bool>,
    assigned: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(g1: &'a FiniteGyrogroup, g2: &'a FiniteGyrogroup) -> Self {
        let n = g1.order();
        Search {
            g1,
            g2,
            orders1: element_orders(g1),
            orders2: element_orders(g2),
            f: vec![None; n],
            used: vec![false; n],
            assigned: Vec::with_capacity(n),
        }
    }

    fn assign(&mut self, x: usize, w: usize, trail: &mut Vec<usize>) -> bool {
        if self.orders1[x] != self.orders2[w] || self.used[w] {
            return false;
        }
        self.f[x] = Some(w as u16);
        self.used[w] = true;
        self.assigned.push(x);
        trail.push(x);
        true
    }

    fn undo(&mut self, trail: &[usize]) {
        for &x in trail.iter().rev() {
            let w = self.f[x].take().expect("trail entries are assigned");
            self.used[w as usize] = false;
            let popped = self.assigned.pop();
            debug_assert_eq!(popped, Some(x));
        }
    }

    /// Forces images of products of assigned elements; false on conflict.
    fn propagate(&mut self, from: usize, trail: &mut Vec<usize>) -> bool {
        let mut i = from;
        while i < self.assigned.len() {
            let x = self.assigned[i];
            let fx = self.f[x].expect("assigned") as usize;
            for j in 0..self.assigned.len() {
                let y = self.assigned[j];
                let fy = self.f[y].expect("assigned") as usize;
                for (c, fc) in [
                    (self.g1.op_fast(x, y), self.g2.op_fast(fx, fy)),
                    (self.g1.op_fast(y, x), self.g2.op_fast(fy, fx)),
                ] {
                    match self.f[c] {
                        Some(existing) => {
                            if existing as usize != fc {
                                return false;
                            }
                        }
                        None => {
                            if !self.assign(c, fc, trail) {
                                return false;
                            }
                        }
                    }
                }
            }
            i += 1;
        }
        true
    }

    /// DFS over unassigned elements in increasing order, candidate images in
    /// increasing order; `emit` returns true to stop after the first hit.
    fn dfs(&mut self, emit: &mut impl FnMut(&[Option<u16>]) -> bool) -> bool {
        let next = (0..self.f.len()).find(|&x| self.f[x].is_none());
        let Some(x) = next else {
            return emit(&self.f);
        };
        for w in 0..self.f.len() {
            let mut trail = Vec::new();
            let checkpoint = self.assigned.len();
            if self.assign(x, w, &mut trail)
                && self.propagate(checkpoint, &mut trail)
                && self.dfs(emit)
            {
                return true;
            }
            self.undo(&trail);
        }
        false
    }
}

fn complete_map(f: &[Option<u16>]) -> Permutation {
    Permutation::from_raw(f.iter().map(|v| v.expect("complete")).collect())
}

fn preserves_op(g1: &FiniteGyrogroup, g2: &FiniteGyrogroup, map: &Permutation) -> bool {
    let n = g1.order();
    (0..n).all(|a| {
        (0..n).all(|b| map.apply(g1.op_fast(a, b)) == g2.op_fast(map.apply(a), map.apply(b)))
    })
}

/// Complete backtracking search for an operation-preserving bijection.
/// Deterministic: the lexicographically least map wins.
pub fn isomorphism(g1: &FiniteGyrogroup, g2: &FiniteGyrogroup) -> IsoResult {
    if g1.order() != g2.order() {
        return IsoResult {
            isomorphic: false,
            map: None,
        };
    }
    let mut search = Search::new(g1, g2);
    let mut profile1 = search.orders1.clone();
    let mut profile2 = search.orders2.clone();
    profile1.sort_unstable();
    profile2.sort_unstable();
    if profile1 != profile2 {
        return IsoResult {
            isomorphic: false,
            map: None,
        };
    }
    let mut found = None;
    search.dfs(&mut |f| {
        found = Some(complete_map(f));
        true
    });
    match found {
        Some(map) => {
            assert!(
                preserves_op(g1, g2, &map),
                "search produced a non-homomorphism"
            );
            IsoResult {
                isomorphic: true,
                map: Some(map),
            }
        }
        None => IsoResult {
            isomorphic: false,
            map: None,
        },
    }
}

/// All operation-preserving bijections of g onto itself, sorted
/// lexicographically by image sequence.
pub fn automorphisms(g: &FiniteGyrogroup) -> Result<Vec<Permutation>> {
    automorphisms_with_cap(g, AUTOMORPHISM_CAP)
}

pub fn automorphisms_with_cap(g: &FiniteGyrogroup, cap: usize) -> Result<Vec<Permutation>> {
    if g.order() > cap {
        return Err(Error::OrderCapExceeded {
            order: g.order(),
            cap,
        });
    }
    let mut out = Vec::new();
    let mut search = Search::new(g, g);
    search.dfs(&mut |f| {
        out.push(complete_map(f));
        false
    });
    for map in &out {
        assert!(
            preserves_op(g, g, map),
            "search produced a non-homomorphism"
        );
    }
    out.sort();
    Ok(out)
}
