//! Doubling construction: from a gyrogroup H⁺ of order n, build the
//! gyrogroup G = H⁺ ∪ H⁻ of order 2n.
//!
//! Element x of H⁺ keeps index x; its mirror x⁻ = φ(x) gets index x + n.
//! Products follow the sign rule (equal signs land in H⁺, mixed signs in
//! H⁻, the underlying value always being the H⁺ product), and gyrations are
//! lifted sign-neutrally from H⁺.

use rayon::prelude::*;

use crate::axioms;
use crate::error::{Error, Result};
use crate::gyrogroup::{DeclaredGyr, FiniteGyrogroup, GyrationPool};
use crate::perm::Permutation;
use crate::subset::Subset;

/// Default cap on the order of a doubled gyrogroup.
pub const DOUBLING_CAP: usize = 4096;

/// A doubling `result` of order 2n together with its `base` of order n.
#[derive(Debug, Clone)]
pub struct DoubledGyrogroup {
    base: FiniteGyrogroup,
    result: FiniteGyrogroup,
}

impl DoubledGyrogroup {
    pub fn base(&self) -> &FiniteGyrogroup {
        &self.base
    }

    pub fn result(&self) -> &FiniteGyrogroup {
        &self.result
    }

    pub fn into_result(self) -> FiniteGyrogroup {
        self.result
    }

    /// φ: H⁺ → H⁻, fixed as x ↦ x + n.
    pub fn phi(&self, x: usize) -> usize {
        debug_assert!(x < self.base.order());
        x + self.base.order()
    }

    pub fn phi_inv(&self, x: usize) -> usize {
        debug_assert!(x >= self.base.order() && x < self.result.order());
        x - self.base.order()
    }

    /// The subset {0, …, n-1} of the result.
    pub fn h_plus(&self) -> Subset {
        Subset::from_elements(self.result.order(), 0..self.base.order()).expect("in range")
    }

    /// The subset {n, …, 2n-1} of the result.
    pub fn h_minus(&self) -> Subset {
        Subset::from_elements(self.result.order(), self.base.order()..self.result.order())
            .expect("in range")
    }

    pub fn is_positive(&self, x: usize) -> bool {
        x < self.base.order()
    }
}

fn bump_name(name: Option<&str>) -> Option<String> {
    let name = name?;
    if let Some(pos) = name.rfind("-D") {
        if let Ok(k) = name[pos + 2..].parse::<u64>() {
            return Some(format!("{}-D{}", &name[..pos], k + 1));
        }
    }
    Some(format!("{name}-D1"))
}

/// Lift a permutation of {0,…,n-1} to {0,…,2n-1}, acting the same way on
/// both signs.
fn lift_perm(p: &Permutation, n: usize) -> Permutation {
    let images = (0..2 * n)
        .map(|t| {
            if t < n {
                p.apply(t)
            } else {
                p.apply(t - n) + n
            }
        })
        .collect();
    Permutation::from_images(images).expect("lift of a bijection is a bijection")
}

fn declared_for_double(base: &FiniteGyrogroup, pool: &GyrationPool) -> DeclaredGyr {
    let n = base.order();
    // reuse names from the base's declared table where the images agree;
    // otherwise I / G1 / G2 / … in pool order
    let mut names: Vec<String> = Vec::with_capacity(pool.distinct().len());
    let mut fresh = 0usize;
    for p in pool.distinct() {
        let reused = base
            .declared_gyr()
            .and_then(|d| d.perms().iter().find(|(_, q)| q == p))
            .map(|(name, _)| name.clone())
            .filter(|name| !names.contains(name));
        let name = reused.unwrap_or_else(|| {
            if p.is_identity() && !names.iter().any(|n| n == "I") {
                "I".to_string()
            } else {
                loop {
                    fresh += 1;
                    let candidate = format!("G{fresh}");
                    if !names.contains(&candidate) {
                        break candidate;
                    }
                }
            }
        });
        names.push(name);
    }
    let perms = names
        .into_iter()
        .zip(pool.distinct())
        .map(|(name, p)| (name, lift_perm(p, n)))
        .collect();
    let mut grid = Vec::with_capacity(4 * n * n);
    for a in 0..2 * n {
        for b in 0..2 * n {
            grid.push(pool.pool_index(a % n, b % n));
        }
    }
    DeclaredGyr::new(2 * n, perms, grid).expect("lifted gyration table is well formed")
}

/// Doubles a verified gyrogroup. The result carries the lifted gyration
/// table, which is cross-checked against the gyrations derived from the new
/// Cayley table; a mismatch is an internal error.
pub fn double(h: &FiniteGyrogroup) -> Result<DoubledGyrogroup> {
    let report = axioms::verify(h);
    if !report.is_gyrogroup {
        let fail = report
            .first_failure()
            .expect("not a gyrogroup implies a failed check");
        return Err(Error::NotAGyrogroup {
            axiom: fail.axiom.name(),
            witness: match &fail.witness {
                Some(w) => format!(
                    " at ({})",
                    w.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ),
                None => String::new(),
            },
        });
    }
    double_verified(h)
}

pub(crate) fn double_verified(h: &FiniteGyrogroup) -> Result<DoubledGyrogroup> {
    let n = h.order();
    let m = 2 * n;
    let mut cells = vec![0u16; m * m];
    for a in 0..m {
        for b in 0..m {
            let v = h.op_fast(a % n, b % n);
            cells[a * m + b] = if (a < n) == (b < n) {
                v as u16
            } else {
                (v + n) as u16
            };
        }
    }
    let pool = h.derived_gyrations();
    let declared = declared_for_double(h, &pool);
    let mut result = FiniteGyrogroup::from_flat(m, cells)
        .map_err(|e| Error::Internal(format!("doubled table is not Latin: {e}")))?
        .with_declared_gyr(declared)?;
    if let Some(name) = bump_name(h.name()) {
        result = result.with_name(name);
    }

    // the lifted gyration table must agree with the gyrations the new table
    // itself derives, on every pair and every argument
    let mismatch = (0..m).into_par_iter().find_map_first(|a| {
        for b in 0..m {
            let expected = pool.gyr(a % n, b % n);
            for t in 0..m {
                let want = if t < n {
                    expected.apply(t)
                } else {
                    expected.apply(t - n) + n
                };
                if result.gyr_apply(a, b, t) != want {
                    return Some((a, b, t));
                }
            }
        }
        None
    });
    if let Some((a, b, t)) = mismatch {
        return Err(Error::Internal(format!(
            "doubled gyration disagrees with the lifted one at gyr[{a},{b}]({t})"
        )));
    }
    Ok(DoubledGyrogroup {
        base: h.clone(),
        result,
    })
}

/// k-fold doubling, verifying every intermediate table.
pub fn double_iterated(h: &FiniteGyrogroup, k: u32) -> Result<FiniteGyrogroup> {
    double_iterated_with_cap(h, k, DOUBLING_CAP)
}

pub fn double_iterated_with_cap(
    h: &FiniteGyrogroup,
    k: u32,
    cap: usize,
) -> Result<FiniteGyrogroup> {
    let target = if k < 64 {
        (h.order() as u128) << k
    } else {
        u128::MAX
    };
    if target > cap as u128 {
        return Err(Error::OrderCapExceeded {
            order: usize::try_from(target).unwrap_or(usize::MAX),
            cap,
        });
    }
    let report = axioms::verify(h);
    if !report.is_gyrogroup {
        let fail = report.first_failure().expect("failed check present");
        return Err(Error::NotAGyrogroup {
            axiom: fail.axiom.name(),
            witness: String::new(),
        });
    }
    let mut current = h.clone();
    for _ in 0..k {
        let doubled = double_verified(&current)?;
        let result = doubled.into_result();
        if !axioms::verify(&result).is_gyrogroup {
            return Err(Error::Internal(format!(
                "doubling a verified gyrogroup of order {} produced a non-gyrogroup",
                current.order()
            )));
        }
        current = result;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn sign_rule_spot_value() {
        let k1 = catalog::get("K1").unwrap().gyrogroup;
        let d = double(&k1).unwrap();
        assert_eq!(d.result().order(), 16);
        // 4⁺ ⊗ 4⁻ = (4 ⊕ 4)⁻ = 0⁻
        assert_eq!(d.result().op(4, 12), 8);
    }

    #[test]
    fn sign_rule_everywhere() {
        let k1 = catalog::get("K1").unwrap().gyrogroup;
        let d = double(&k1).unwrap();
        let (g, n) = (d.result(), 8);
        for a in 0..16 {
            for b in 0..16 {
                let v = k1.op(a % n, b % n);
                let expect = if (a < n) == (b < n) { v } else { v + n };
                assert_eq!(g.op(a, b), expect);
            }
        }
    }

    #[test]
    fn double_of_trivial_is_cyclic_two() {
        let d = double(&catalog::cyclic(1)).unwrap();
        assert!(d.result().same_table(&catalog::cyclic(2)));
    }

    #[test]
    fn double_of_cyclic_two_is_klein_four() {
        let d = double(&catalog::cyclic(2)).unwrap();
        assert!(d.result().same_table(&catalog::klein4()));
        // every element is its own inverse
        for a in 0..4 {
            assert_eq!(d.result().op(a, a), 0);
        }
    }

    #[test]
    fn degeneracy_is_preserved() {
        for seed in [catalog::cyclic(3), catalog::klein4()] {
            let d = double(&seed).unwrap();
            assert!(axioms::verify(d.result()).is_degenerate);
        }
    }

    #[test]
    fn mirror_set_is_translate_of_h_plus() {
        // 0⁻ ⊗ H⁺ = H⁻
        for name in catalog::order8_names() {
            let base = catalog::get(name).unwrap().gyrogroup;
            let d = double(&base).unwrap();
            let zero_minus = d.phi(0);
            let image = d.h_plus().map(|h| d.result().op(zero_minus, h));
            assert_eq!(image, d.h_minus(), "{name}");
        }
    }

    #[test]
    fn gyrations_are_sign_neutral() {
        let k1 = catalog::get("K1").unwrap().gyrogroup;
        let d = double(&k1).unwrap();
        let g = d.result();
        for a in 0..8 {
            for b in 0..8 {
                let p = g.derive_gyr(a, b);
                assert_eq!(p, g.derive_gyr(a + 8, b));
                assert_eq!(p, g.derive_gyr(a, b + 8));
                assert_eq!(p, g.derive_gyr(a + 8, b + 8));
                // H⁺ and H⁻ are preserved setwise
                for t in 0..8 {
                    assert!(p.apply(t) < 8);
                    assert!(p.apply(t + 8) >= 8);
                    assert_eq!(p.apply(t + 8), p.apply(t) + 8);
                }
            }
        }
    }

    #[test]
    fn doubled_declared_table_reuses_base_names() {
        let k1 = catalog::get("K1").unwrap().gyrogroup;
        let d = double(&k1).unwrap();
        let declared = d.result().declared_gyr().unwrap();
        let names: Vec<&str> = declared.perms().iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["A", "I"]);
        assert!(axioms::check_gyration_table(d.result()).unwrap());
    }

    #[test]
    fn gyrocommutativity_carries_over() {
        // frozen: holds in both directions on every catalog entry
        for entry in catalog::entries() {
            let base = &entry.gyrogroup;
            let d = double(base).unwrap();
            assert_eq!(
                axioms::is_gyrocommutative(base),
                axioms::is_gyrocommutative(d.result()),
                "{}",
                entry.name
            );
        }
    }

    #[test]
    fn names_chain() {
        let k1 = catalog::get("K1").unwrap().gyrogroup;
        let d1 = double(&k1).unwrap();
        assert_eq!(d1.result().name(), Some("K1-D1"));
        let d2 = double(d1.result()).unwrap();
        assert_eq!(d2.result().name(), Some("K1-D2"));
        let anon = FiniteGyrogroup::from_rows(vec![vec![0]]).unwrap();
        assert_eq!(double(&anon).unwrap().result().name(), None);
    }

    #[test]
    fn iterated_doubling() {
        let k1 = catalog::get("K1").unwrap().gyrogroup;
        assert!(double_iterated(&k1, 0).unwrap().same_table(&k1));
        let d1 = double_iterated(&k1, 1).unwrap();
        assert_eq!(d1.order(), 16);
        assert_eq!(d1.name(), Some("K1-D1"));
    }

    #[test]
    fn cap_guard() {
        let k1 = catalog::get("K1").unwrap().gyrogroup;
        let err = double_iterated_with_cap(&k1, 3, 32).unwrap_err();
        assert!(matches!(
            err,
            Error::OrderCapExceeded { order: 64, cap: 32 }
        ));
        let err = double_iterated_with_cap(&k1, 80, DOUBLING_CAP).unwrap_err();
        assert!(matches!(err, Error::OrderCapExceeded { .. }));
    }

    #[test]
    fn rejects_non_gyrogroup_input() {
        // a Latin square with identity row that is not a gyrogroup:
        // take Z5 and swap rows 3 and 4 (columns stay permutations)
        let z5 = catalog::cyclic(5);
        let mut rows: Vec<Vec<usize>> = (0..5)
            .map(|a| (0..5).map(|b| z5.op(a, b)).collect())
            .collect();
        rows.swap(3, 4);
        let loopy = FiniteGyrogroup::from_rows(rows).unwrap();
        assert!(!axioms::verify(&loopy).is_gyrogroup);
        assert!(matches!(double(&loopy), Err(Error::NotAGyrogroup { .. })));
        assert!(matches!(
            double_iterated(&loopy, 1),
            Err(Error::NotAGyrogroup { .. })
        ));
    }
}
