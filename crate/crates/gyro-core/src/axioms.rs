//! Full gyrogroup-axiom verification of candidate Cayley tables.
//!
//! The verifier accepts any square table with in-range entries, so it can
//! report axiom failures on tables that are not even Latin squares. The
//! checks run in a fixed order (identity, inverses, gyration automorphism,
//! gyroassociativity, left loop) and each failure carries the first
//! violating tuple in lexicographic scan order, so reports are reproducible.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gyrogroup::FiniteGyrogroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    LeftIdentity,
    LeftInverse,
    GyrationAutomorphism,
    GyroAssociativity,
    LeftLoop,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::LeftIdentity => "left-identity",
            Axiom::LeftInverse => "left-inverse",
            Axiom::GyrationAutomorphism => "gyration-automorphism",
            Axiom::GyroAssociativity => "gyroassociativity",
            Axiom::LeftLoop => "left-loop",
        }
    }
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One axiom check: pass/fail plus the first violating tuple of elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
}

/// Properties that the left axioms imply; reported as derived facts,
/// not axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RightCounterparts {
    pub two_sided_identity: bool,
    pub two_sided_inverse: bool,
    pub right_loop: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<AxiomCheck>,
    pub is_gyrogroup: bool,
    /// All gyrations are the identity, i.e. the table is a group.
    pub is_degenerate: bool,
    pub is_gyrocommutative: bool,
    /// Present only when the table is a gyrogroup.
    pub right_counterparts: Option<RightCounterparts>,
}

impl VerificationReport {
    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks
            .iter()
            .find(|c| c.axiom == axiom)
            .expect("all five checks present")
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Verifies a candidate table given as rows. Squareness and entry range are
/// input errors; everything else is reported as axiom pass/fail.
pub fn verify_rows(rows: &[Vec<usize>]) -> Result<VerificationReport> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    let mut cells = Vec::with_capacity(n * n);
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
            cells.push(v as u16);
        }
    }
    Ok(verify_cells(n, &cells))
}

/// Verifies an already-constructed table.
pub fn verify(g: &FiniteGyrogroup) -> VerificationReport {
    verify_cells(g.order(), g.cells())
}

const NO_PERM: u32 = u32::MAX;

struct DerivedPool {
    /// distinct derived image vectors, in first-occurrence order
    perms: Vec<Vec<u16>>,
    /// n*n pool indices; NO_PERM where the derivation needs a missing inverse
    grid: Vec<u32>,
}

fn derive_pool(n: usize, t: &[u16], inv: &[Option<u16>]) -> DerivedPool {
    let mut perms: Vec<Vec<u16>> = Vec::new();
    let mut index: HashMap<Vec<u16>, u32> = HashMap::new();
    let mut grid = vec![NO_PERM; n * n];
    // image vectors for one row of pairs at a time; insertion stays in
    // row-major order so pool ids are deterministic
    let mut row_imgs: Vec<Option<Vec<u16>>> = Vec::new();
    for a in 0..n {
        (0..n)
            .into_par_iter()
            .map(|b| {
                let v = t[a * n + b] as usize;
                let iv = inv[v]? as usize;
                Some(
                    (0..n)
                        .map(|c| t[iv * n + t[a * n + t[b * n + c] as usize] as usize])
                        .collect::<Vec<u16>>(),
                )
            })
            .collect_into_vec(&mut row_imgs);
        for (b, img) in row_imgs.drain(..).enumerate() {
            if let Some(img) = img {
                let id = *index.entry(img.clone()).or_insert_with(|| {
                    perms.push(img);
                    (perms.len() - 1) as u32
                });
                grid[a * n + b] = id;
            }
        }
    }
    DerivedPool { perms, grid }
}

fn verify_cells(n: usize, t: &[u16]) -> VerificationReport {
    // 1. left identity row
    let identity_witness = (0..n).find(|&b| t[b] as usize != b).map(|b| vec![b]);

    // 2. left inverse existence; keep the first (least) inverse for later
    // checks even when uniqueness is not yet known
    let mut inv: Vec<Option<u16>> = vec![None; n];
    for a in 0..n {
        inv[a] = (0..n).find(|&r| t[r * n + a] == 0).map(|r| r as u16);
    }
    let inverse_witness = (0..n).find(|&a| inv[a].is_none()).map(|a| vec![a]);

    let pool = derive_pool(n, t, &inv);

    // 3. every derived gyration is a bijection and a homomorphism
    #[derive(Clone)]
    enum PermFault {
        Bijection(usize, usize),
        Homomorphism(usize, usize),
    }
    let faults: Vec<Option<PermFault>> = pool
        .perms
        .par_iter()
        .map(|img| {
            let mut first = vec![usize::MAX; n];
            for (c, &v) in img.iter().enumerate() {
                if first[v as usize] != usize::MAX {
                    return Some(PermFault::Bijection(first[v as usize], c));
                }
                first[v as usize] = c;
            }
            for x in 0..n {
                for y in 0..n {
                    let lhs = img[t[x * n + y] as usize];
                    let rhs = t[img[x] as usize * n + img[y] as usize];
                    if lhs != rhs {
                        return Some(PermFault::Homomorphism(x, y));
                    }
                }
            }
            None
        })
        .collect();
    let mut automorphism_witness = None;
    'outer: for a in 0..n {
        for b in 0..n {
            let id = pool.grid[a * n + b];
            if id == NO_PERM {
                automorphism_witness = Some(vec![a, b]);
                break 'outer;
            }
            match &faults[id as usize] {
                None => {}
                Some(PermFault::Bijection(c1, c2)) => {
                    automorphism_witness = Some(vec![a, b, *c1, *c2]);
                    break 'outer;
                }
                Some(PermFault::Homomorphism(x, y)) => {
                    automorphism_witness = Some(vec![a, b, *x, *y]);
                    break 'outer;
                }
            }
        }
    }

    // 4. gyroassociativity with the derived gyration
    let gyroassoc_witness = (0..n)
        .into_par_iter()
        .filter_map(|a| {
            for b in 0..n {
                let id = pool.grid[a * n + b];
                if id == NO_PERM {
                    return Some(vec![a, b, 0]);
                }
                let img = &pool.perms[id as usize];
                let v = t[a * n + b] as usize;
                for c in 0..n {
                    if t[v * n + img[c] as usize] != t[a * n + t[b * n + c] as usize] {
                        return Some(vec![a, b, c]);
                    }
                }
            }
            None
        })
        .min();

    // 5. left loop property: gyr[a⊕b, b] = gyr[a, b]
    let mut loop_witness = None;
    'leftloop: for a in 0..n {
        for b in 0..n {
            let id1 = pool.grid[a * n + b];
            let id2 = pool.grid[t[a * n + b] as usize * n + b];
            if id1 == NO_PERM || id2 == NO_PERM {
                loop_witness = Some(vec![a, b, 0]);
                break 'leftloop;
            }
            if id1 != id2 {
                let p1 = &pool.perms[id1 as usize];
                let p2 = &pool.perms[id2 as usize];
                let c = (0..n)
                    .find(|&c| p1[c] != p2[c])
                    .expect("distinct pool entries differ");
                loop_witness = Some(vec![a, b, c]);
                break 'leftloop;
            }
        }
    }

    let checks = vec![
        AxiomCheck {
            axiom: Axiom::LeftIdentity,
            passed: identity_witness.is_none(),
            witness: identity_witness,
        },
        AxiomCheck {
            axiom: Axiom::LeftInverse,
            passed: inverse_witness.is_none(),
            witness: inverse_witness,
        },
        AxiomCheck {
            axiom: Axiom::GyrationAutomorphism,
            passed: automorphism_witness.is_none(),
            witness: automorphism_witness,
        },
        AxiomCheck {
            axiom: Axiom::GyroAssociativity,
            passed: gyroassoc_witness.is_none(),
            witness: gyroassoc_witness,
        },
        AxiomCheck {
            axiom: Axiom::LeftLoop,
            passed: loop_witness.is_none(),
            witness: loop_witness,
        },
    ];
    let is_gyrogroup = checks.iter().all(|c| c.passed);
    let is_degenerate = is_gyrogroup
        && pool.perms.len() == 1
        && pool.perms[0]
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i);
    let is_gyrocommutative = is_gyrogroup
        && (0..n).into_par_iter().all(|a| {
            (0..n).all(|b| {
                let img = &pool.perms[pool.grid[a * n + b] as usize];
                t[a * n + b] == img[t[b * n + a] as usize]
            })
        });
    let right_counterparts = is_gyrogroup.then(|| RightCounterparts {
        two_sided_identity: (0..n).all(|a| t[a * n] as usize == a),
        two_sided_inverse: (0..n).all(|a| t[a * n + inv[a].unwrap() as usize] == 0),
        right_loop: (0..n).all(|a| {
            (0..n).all(|b| pool.grid[a * n + t[b * n + a] as usize] == pool.grid[a * n + b])
        }),
    });
    VerificationReport {
        checks,
        is_gyrogroup,
        is_degenerate,
        is_gyrocommutative,
        right_counterparts,
    }
}

/// a⊕b = gyr[a,b](b⊕a) for all a, b. Assumes a verified gyrogroup.
pub fn is_gyrocommutative(g: &FiniteGyrogroup) -> bool {
    gyrocommutativity_witness(g).is_none()
}

/// First pair violating gyrocommutativity in lexicographic order, or `None`.
pub fn gyrocommutativity_witness(g: &FiniteGyrogroup) -> Option<(usize, usize)> {
    let n = g.order();
    for a in 0..n {
        for b in 0..n {
            if g.op(a, b) != g.gyr_apply(a, b, g.op(b, a)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Whether the declared gyration table matches the derived gyrations on
/// every pair. Errors if no gyration table is declared.
pub fn check_gyration_table(g: &FiniteGyrogroup) -> Result<bool> {
    Ok(gyration_table_mismatch(g)?.is_none())
}

/// First pair where the declared gyration differs from the derived one.
pub fn gyration_table_mismatch(g: &FiniteGyrogroup) -> Result<Option<(usize, usize)>> {
    let declared = g.declared_gyr().ok_or(Error::MissingGyrationTable)?;
    let n = g.order();
    for a in 0..n {
        for b in 0..n {
            let derived = g.derive_gyr(a, b);
            if &derived != declared.entry(n, a, b) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// True iff the table is associative (equivalently, for a gyrogroup, all
/// gyrations are the identity).
pub fn is_associative(g: &FiniteGyrogroup) -> bool {
    let n = g.order();
    (0..n).into_par_iter().all(|a| {
        (0..n).all(|b| {
            let v = g.op_fast(a, b);
            (0..n).all(|c| g.op_fast(v, c) == g.op_fast(a, g.op_fast(b, c)))
        })
    })
}
