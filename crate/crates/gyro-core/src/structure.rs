//! Subgyrogroup machinery: closure and generation, enumeration of all
//! subgyrogroups, cosets, normality, L-subgyrogroups, coaddition,
//! conjugation, commutators, the derived subgyrogroup, and the three-shape
//! classification of subgyrogroups of a doubled gyrogroup.
//!
//! Operations taking elements assume a verified gyrogroup (construction
//! already guarantees a Latin table with identity row, which makes them
//! total); predicates taking a subset validate it against the carrier.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::doubling::DoubledGyrogroup;
use crate::error::{Error, Result};
use crate::gyrogroup::FiniteGyrogroup;
use crate::subset::Subset;

/// Default cap on the order for exhaustive subgyrogroup enumeration.
pub const ENUMERATION_CAP: usize = 64;

fn check_universe(g: &FiniteGyrogroup, s: &Subset) -> Result<()> {
    if s.universe() != g.order() {
        return Err(Error::UniverseMismatch {
            expected: g.order(),
            got: s.universe(),
        });
    }
    Ok(())
}

/// First pair of elements of `s` whose product escapes `s`.
fn closure_violation(g: &FiniteGyrogroup, s: &Subset) -> Option<(usize, usize, usize)> {
    for a in s.iter() {
        for b in s.iter() {
            let p = g.op_fast(a, b);
            if !s.contains(p) {
                return Some((a, b, p));
            }
        }
    }
    None
}

fn require_subgyrogroup(g: &FiniteGyrogroup, s: &Subset) -> Result<()> {
    check_universe(g, s)?;
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some((a, b, p)) = closure_violation(g, s) {
        return Err(Error::NotClosed { a, b, product: p });
    }
    Ok(())
}

/// A nonempty finite subset closed under the operation is a subgyrogroup;
/// closure then forces it to contain 0 and all inverses.
pub fn is_subgyrogroup(g: &FiniteGyrogroup, s: &Subset) -> Result<bool> {
    check_universe(g, s)?;
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    Ok(closure_violation(g, s).is_none())
}

/// Smallest op-closed superset of `gens ∪ {0}`.
pub fn generate(g: &FiniteGyrogroup, gens: &Subset) -> Result<Subset> {
    check_universe(g, gens)?;
    let mut set = gens.clone();
    set.insert(0);
    let mut members: Vec<usize> = set.iter().collect();
    let mut fresh = members.clone();
    while !fresh.is_empty() {
        let mut next = Vec::new();
        for &a in &fresh {
            for &b in &members {
                for v in [g.op_fast(a, b), g.op_fast(b, a)] {
                    if !set.contains(v) {
                        set.insert(v);
                        next.push(v);
                    }
                }
            }
        }
        members.extend(next.iter().copied());
        fresh = next;
    }
    Ok(set)
}

/// Complete, duplicate-free list of subgyrogroups, via bottom-up closure
/// extension: extend each known subgyrogroup by one outside element, close,
/// repeat. Sorted canonically (size, then elements).
pub fn all_subgyrogroups(g: &FiniteGyrogroup) -> Result<Vec<Subset>> {
    all_subgyrogroups_with_cap(g, ENUMERATION_CAP)
}

pub fn all_subgyrogroups_with_cap(g: &FiniteGyrogroup, cap: usize) -> Result<Vec<Subset>> {
    let n = g.order();
    if n > cap {
        return Err(Error::OrderCapExceeded { order: n, cap });
    }
    let bottom = generate(g, &Subset::empty(n))?;
    let mut found: HashSet<Subset> = HashSet::new();
    let mut frontier = vec![bottom.clone()];
    found.insert(bottom);
    while let Some(s) = frontier.pop() {
        for x in 0..n {
            if s.contains(x) {
                continue;
            }
            let mut seed = s.clone();
            seed.insert(x);
            let closed = generate(g, &seed)?;
            if found.insert(closed.clone()) {
                frontier.push(closed);
            }
        }
    }
    let mut out: Vec<Subset> = found.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Coaddition a ⊞ b = a ⊕ gyr[a, ⊖b]b.
pub fn coadd(g: &FiniteGyrogroup, a: usize, b: usize) -> usize {
    g.op(a, g.gyr_apply(a, g.left_inverse(b), b))
}

/// Co-subtraction a ⊟ b = a ⊞ (⊖b).
pub fn cosub(g: &FiniteGyrogroup, a: usize, b: usize) -> usize {
    coadd(g, a, g.left_inverse(b))
}

/// conj_a(b) = (a ⊕ b) ⊟ a.
pub fn conj(g: &FiniteGyrogroup, a: usize, b: usize) -> usize {
    cosub(g, g.op(a, b), a)
}

/// Elementwise conjugate of a subset: {conj_a(b) | b ∈ s}.
pub fn conj_set(g: &FiniteGyrogroup, a: usize, s: &Subset) -> Result<Subset> {
    check_universe(g, s)?;
    Ok(s.map(|b| conj(g, a, b)))
}

/// {a ⊕ x | x ∈ s}, with no closure requirement on `s`.
pub fn set_op_left(g: &FiniteGyrogroup, a: usize, s: &Subset) -> Result<Subset> {
    check_universe(g, s)?;
    Ok(s.map(|x| g.op(a, x)))
}

/// {x ⊕ a | x ∈ s}, with no closure requirement on `s`.
pub fn set_op_right(g: &FiniteGyrogroup, s: &Subset, a: usize) -> Result<Subset> {
    check_universe(g, s)?;
    Ok(s.map(|x| g.op(x, a)))
}

/// Left coset a ⊕ H of a subgyrogroup.
pub fn left_coset(g: &FiniteGyrogroup, a: usize, h: &Subset) -> Result<Subset> {
    require_subgyrogroup(g, h)?;
    set_op_left(g, a, h)
}

/// Right coset H ⊕ a of a subgyrogroup.
pub fn right_coset(g: &FiniteGyrogroup, a: usize, h: &Subset) -> Result<Subset> {
    require_subgyrogroup(g, h)?;
    set_op_right(g, h, a)
}

/// H is normal iff the coset operation (a⊕H) ⊕ (b⊕H) = (a⊕b)⊕H is well
/// defined over equality classes of the map a ↦ a⊕H.
///
/// Left cosets of a non-normal subgyrogroup need not partition the carrier,
/// so classes are formed by coset *set* equality, never by membership.
pub fn is_normal(g: &FiniteGyrogroup, h: &Subset) -> Result<bool> {
    Ok(normality_witness(g, h)?.is_none())
}

/// On failure returns (a, a′, b, b′) with a,a′ in one coset class and b,b′
/// in one coset class but (a⊕b)⊕H ≠ (a′⊕b′)⊕H; first such tuple in scan
/// order.
pub fn normality_witness(g: &FiniteGyrogroup, h: &Subset) -> Result<Option<[usize; 4]>> {
    require_subgyrogroup(g, h)?;
    let n = g.order();
    let cosets: Vec<Subset> = (0..n)
        .map(|a| set_op_left(g, a, h).expect("checked"))
        .collect();
    let mut rep: HashMap<&Subset, usize> = HashMap::new();
    let mut class = vec![0usize; n];
    for a in 0..n {
        let r = *rep.entry(&cosets[a]).or_insert(a);
        class[a] = r;
    }
    let mut seen: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let key = (class[a], class[b]);
            match seen.get(&key) {
                None => {
                    seen.insert(key, (a, b));
                }
                Some(&(a0, b0)) => {
                    if cosets[g.op_fast(a0, b0)] != cosets[g.op_fast(a, b)] {
                        return Ok(Some([a0, a, b0, b]));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The three sufficient conditions for normality; their conjunction
/// implies `is_normal`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SufficientConditions {
    /// gyr[h, a] = id for all h ∈ H, a ∈ G
    pub gyr_left_identity: bool,
    /// gyr[a, b](H) ⊆ H for all a, b ∈ G
    pub gyr_stabilizes: bool,
    /// a ⊕ H = H ⊕ a for all a ∈ G
    pub cosets_commute: bool,
}

impl SufficientConditions {
    pub fn all(&self) -> bool {
        self.gyr_left_identity && self.gyr_stabilizes && self.cosets_commute
    }
}

pub fn normality_sufficient_conditions(
    g: &FiniteGyrogroup,
    h: &Subset,
) -> Result<SufficientConditions> {
    require_subgyrogroup(g, h)?;
    let n = g.order();
    let gyr_left_identity = h
        .iter()
        .all(|x| (0..n).all(|a| (0..n).all(|c| g.gyr_apply(x, a, c) == c)));
    let gyr_stabilizes =
        (0..n).all(|a| (0..n).all(|b| h.iter().all(|x| h.contains(g.gyr_apply(a, b, x)))));
    let cosets_commute = (0..n)
        .all(|a| set_op_left(g, a, h).expect("checked") == set_op_right(g, h, a).expect("checked"));
    Ok(SufficientConditions {
        gyr_left_identity,
        gyr_stabilizes,
        cosets_commute,
    })
}

/// H is an L-subgyrogroup iff gyr[a,h](H) = H for all a ∈ G and h ∈ H.
pub fn is_l_subgyrogroup(g: &FiniteGyrogroup, h: &Subset) -> Result<bool> {
    require_subgyrogroup(g, h)?;
    let n = g.order();
    for a in 0..n {
        for x in h.iter() {
            let image = h.map(|y| g.gyr_apply(a, x, y));
            if image != *h {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The commutator [a,b] = ⊖(a ⊕ b) ⊕ gyr[a,b](b ⊕ a).
pub fn commutator(g: &FiniteGyrogroup, a: usize, b: usize) -> usize {
    g.op(g.left_inverse(g.op(a, b)), g.gyr_apply(a, b, g.op(b, a)))
}

/// The subgyrogroup generated by all commutators. No normal-closure step is
/// taken.
pub fn derived_subgyrogroup(g: &FiniteGyrogroup) -> Subset {
    let n = g.order();
    let mut comms = Subset::empty(n);
    for a in 0..n {
        for b in 0..n {
            comms.insert(commutator(g, a, b));
        }
    }
    generate(g, &comms).expect("same universe")
}

/// The full coaddition table b[a][b] = a ⊞ b as a table of its own.
pub fn coaddition_table(g: &FiniteGyrogroup) -> Result<FiniteGyrogroup> {
    let n = g.order();
    let rows = (0..n)
        .map(|a| (0..n).map(|b| coadd(g, a, b)).collect())
        .collect();
    let mut t = FiniteGyrogroup::from_rows(rows)?;
    if let Some(name) = g.name() {
        t = t.with_name(format!("{name}-coadd"));
    }
    Ok(t)
}

/// The shape of a subgyrogroup of a doubled gyrogroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Shape {
    /// B ⊆ H⁺
    InsideHPlus,
    /// B = A⁺ ∪ L⁻ with A⁺ ∩ L⁺ = ∅ and A⁺ ∪ L⁺ ≤ H⁺
    SplitDisjoint,
    /// B = A⁺ ∪ φ(A⁺)
    Mirror,
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Shape::InsideHPlus => "INSIDE_H_PLUS",
            Shape::SplitDisjoint => "SPLIT_DISJOINT",
            Shape::Mirror => "MIRROR",
        })
    }
}

/// Decomposition of a subgyrogroup B of a doubled gyrogroup into its
/// positive part A⁺ = B ∩ H⁺ and negative part L⁻ = B ∩ H⁻ (both as
/// subsets of the doubled carrier).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgyroClassification {
    pub shape: Shape,
    pub a_plus: Subset,
    pub l_minus: Subset,
}

/// Classifies a subgyrogroup of `d.result()` into its unique shape and
/// verifies the shape's side conditions. A subgyrogroup that fits no shape
/// or breaks a side condition is an internal error.
pub fn classify_subgyrogroup(d: &DoubledGyrogroup, b: &Subset) -> Result<SubgyroClassification> {
    let g = d.result();
    require_subgyrogroup(g, b)?;
    let n = d.base().order();
    let a_plus = b.intersection(&d.h_plus());
    let l_minus = b.intersection(&d.h_minus());

    if l_minus.is_empty() {
        return Ok(SubgyroClassification {
            shape: Shape::InsideHPlus,
            a_plus,
            l_minus,
        });
    }
    if a_plus.is_empty() {
        // impossible: two negatives multiply into H⁺, so closure forces
        // a positive element
        return Err(Error::Internal(
            "subgyrogroup contained in the mirror half".into(),
        ));
    }

    let l_plus = l_minus.map(|x| x - n);
    let shape = if l_plus == a_plus {
        Shape::Mirror
    } else if a_plus.intersection(&l_plus).is_empty() {
        Shape::SplitDisjoint
    } else {
        return Err(Error::Internal(format!(
            "subgyrogroup {{{b}}} fits no shape: A+ and L+ overlap without being equal"
        )));
    };

    // side conditions; all are consequences of closure, so a violation
    // indicates a bug
    let in_base = |s: &Subset| {
        Subset::from_elements(n, s.iter().filter(|&x| x < n)).expect("members below n")
    };
    let a_base = in_base(&a_plus);
    if closure_violation(d.base(), &a_base).is_some() {
        return Err(Error::Internal(
            "A+ is not a subgyrogroup of the base".into(),
        ));
    }
    if a_plus.len() != l_minus.len() {
        return Err(Error::Internal("|A+| differs from |L-|".into()));
    }
    let union_base = in_base(&a_plus.union(&l_plus));
    if closure_violation(d.base(), &union_base).is_some() {
        return Err(Error::Internal(
            "A+ ∪ L+ is not a subgyrogroup of the base".into(),
        ));
    }
    if shape == Shape::SplitDisjoint {
        for x in l_minus.iter() {
            for y in l_minus.iter() {
                if !a_plus.contains(g.op_fast(x, y)) {
                    return Err(Error::Internal("L- products escape A+".into()));
                }
            }
        }
    }
    Ok(SubgyroClassification {
        shape,
        a_plus,
        l_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms;
    use crate::catalog;
    use crate::doubling::double;

    fn k1() -> FiniteGyrogroup {
        catalog::get("K1").unwrap().gyrogroup
    }

    fn sub(g: &FiniteGyrogroup, elems: &[usize]) -> Subset {
        Subset::from_elements(g.order(), elems.iter().copied()).unwrap()
    }

    #[test]
    fn closure_predicate() {
        let g = k1();
        assert!(is_subgyrogroup(&g, &sub(&g, &[0, 2])).unwrap());
        assert!(is_subgyrogroup(&g, &sub(&g, &[0])).unwrap());
        assert!(!is_subgyrogroup(&g, &sub(&g, &[0, 4, 5, 6])).unwrap());
        assert!(matches!(
            is_subgyrogroup(&g, &Subset::empty(8)),
            Err(Error::EmptySubset)
        ));
        assert!(matches!(
            is_subgyrogroup(&g, &Subset::singleton(4, 0)),
            Err(Error::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn closed_subsets_contain_identity_and_inverses() {
        let g = k1();
        for s in all_subgyrogroups(&g).unwrap() {
            assert!(s.contains(0), "{s}");
            for x in s.iter() {
                assert!(s.contains(g.left_inverse(x)), "{s}");
            }
        }
    }

    #[test]
    fn generation() {
        let g = k1();
        assert_eq!(generate(&g, &sub(&g, &[2])).unwrap(), sub(&g, &[0, 2]));
        assert_eq!(generate(&g, &sub(&g, &[4])).unwrap(), sub(&g, &[0, 4]));
        assert_eq!(generate(&g, &sub(&g, &[0])).unwrap(), sub(&g, &[0]));
        assert_eq!(
            generate(&g, &sub(&g, &[6])).unwrap(),
            sub(&g, &[0, 1, 6, 7])
        );
    }

    #[test]
    fn subgyrogroups_of_small_carriers() {
        let trivial = catalog::cyclic(1);
        assert_eq!(
            all_subgyrogroups(&trivial).unwrap(),
            vec![sub(&trivial, &[0])]
        );

        let z4 = catalog::cyclic(4);
        let subs = all_subgyrogroups(&z4).unwrap();
        assert_eq!(
            subs,
            vec![sub(&z4, &[0]), sub(&z4, &[0, 2]), sub(&z4, &[0, 1, 2, 3])]
        );
    }

    #[test]
    fn subgyrogroups_of_k1() {
        // frozen from exhaustive closure checks over the table
        let g = k1();
        let subs = all_subgyrogroups(&g).unwrap();
        let expected: Vec<Subset> = [
            vec![0],
            vec![0, 1],
            vec![0, 2],
            vec![0, 3],
            vec![0, 4],
            vec![0, 5],
            vec![0, 1, 2, 3],
            vec![0, 1, 4, 5],
            vec![0, 1, 6, 7],
            vec![0, 1, 2, 3, 4, 5, 6, 7],
        ]
        .iter()
        .map(|e| sub(&g, e))
        .collect();
        assert_eq!(subs, expected);
    }

    #[test]
    fn enumeration_cap() {
        let g = k1();
        assert!(matches!(
            all_subgyrogroups_with_cap(&g, 4),
            Err(Error::OrderCapExceeded { order: 8, cap: 4 })
        ));
    }

    #[test]
    fn coaddition_values() {
        let g = k1();
        assert_eq!(coadd(&g, 2, 3), 1);
        assert_eq!(coadd(&g, 4, 6), 3);
        for b in 0..8 {
            assert_eq!(coadd(&g, 0, b), b);
        }
    }

    #[test]
    fn cosubtraction_values() {
        let g = k1();
        assert_eq!(cosub(&g, 7, 5), 2);
        for name in catalog::names() {
            let g = catalog::get(name).unwrap().gyrogroup;
            for a in 0..g.order() {
                assert_eq!(cosub(&g, a, a), 0, "{name}");
                assert_eq!(cosub(&g, a, 0), a, "{name}");
            }
        }
    }

    #[test]
    fn conjugation_values() {
        let g = k1();
        assert_eq!(conj(&g, 5, 2), 2);
        for b in 0..8 {
            assert_eq!(conj(&g, 0, b), b);
        }
        for a in 0..8 {
            assert_eq!(conj(&g, a, 0), 0);
        }
        let full = Subset::full(8);
        assert_eq!(conj_set(&g, 5, &full).unwrap(), full);
        let s = sub(&g, &[1, 4, 6]);
        assert_eq!(conj_set(&g, 0, &s).unwrap(), s);
    }

    #[test]
    fn example_e1_conjugation_invariance() {
        let g = k1();
        let p = sub(&g, &[0, 2]);
        for a in 0..8 {
            assert_eq!(conj_set(&g, a, &p).unwrap(), p);
        }
    }

    #[test]
    fn cosets() {
        let g = k1();
        let p = sub(&g, &[0, 2]);
        assert_eq!(left_coset(&g, 5, &p).unwrap(), sub(&g, &[5, 7]));
        assert_eq!(left_coset(&g, 0, &p).unwrap(), p);
        // (5 ⊕ P) ⊕ 6 elementwise
        let lhs = set_op_right(&g, &left_coset(&g, 5, &p).unwrap(), 6).unwrap();
        assert_eq!(lhs, sub(&g, &[0, 3]));
        // (5 ⊕ 6) ⊕ P
        assert_eq!(left_coset(&g, g.op(5, 6), &p).unwrap(), sub(&g, &[1, 3]));
        // non-closed subsets are rejected
        assert!(matches!(
            left_coset(&g, 1, &sub(&g, &[0, 4, 5, 6])),
            Err(Error::NotClosed { .. })
        ));
    }

    #[test]
    fn normality_of_p_fails_with_frozen_witness() {
        let g = k1();
        let p = sub(&g, &[0, 2]);
        assert!(!is_normal(&g, &p).unwrap());
        assert_eq!(normality_witness(&g, &p).unwrap(), Some([4, 6, 4, 4]));
    }

    #[test]
    fn trivial_and_full_are_normal() {
        for name in catalog::names() {
            let g = catalog::get(name).unwrap().gyrogroup;
            let n = g.order();
            assert!(is_normal(&g, &Subset::singleton(n, 0)).unwrap(), "{name}");
            assert!(is_normal(&g, &Subset::full(n)).unwrap(), "{name}");
        }
    }

    #[test]
    fn h_plus_is_normal_in_double() {
        let d = double(&k1()).unwrap();
        assert!(is_normal(d.result(), &d.h_plus()).unwrap());
        let cond = normality_sufficient_conditions(d.result(), &d.h_plus()).unwrap();
        assert!(cond.gyr_stabilizes);
        assert!(cond.cosets_commute);
    }

    #[test]
    fn sufficient_conditions_for_p() {
        // frozen: (a) fails, (b) and (c) hold, yet P is not normal —
        // all three together are required
        let g = k1();
        let p = sub(&g, &[0, 2]);
        let cond = normality_sufficient_conditions(&g, &p).unwrap();
        assert!(!cond.gyr_left_identity);
        assert!(cond.gyr_stabilizes);
        assert!(cond.cosets_commute);
        assert!(!cond.all());
    }

    #[test]
    fn sufficient_conditions_imply_normality_across_catalog() {
        for name in catalog::names() {
            let g = catalog::get(name).unwrap().gyrogroup;
            for s in all_subgyrogroups(&g).unwrap() {
                let cond = normality_sufficient_conditions(&g, &s).unwrap();
                if cond.all() {
                    assert!(is_normal(&g, &s).unwrap(), "{name} {s}");
                }
                // normal ⇒ conjugation-invariant
                if is_normal(&g, &s).unwrap() {
                    for a in 0..g.order() {
                        assert_eq!(conj_set(&g, a, &s).unwrap(), s, "{name} {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn l_subgyrogroups() {
        let g = k1();
        assert!(is_l_subgyrogroup(&g, &sub(&g, &[0, 1])).unwrap());
        assert!(is_l_subgyrogroup(&g, &sub(&g, &[0])).unwrap());
        assert!(is_l_subgyrogroup(&g, &sub(&g, &[0, 2])).unwrap());
    }

    #[test]
    fn commutators() {
        let g = k1();
        assert_eq!(commutator(&g, 5, 6), 1);
        for a in 0..8 {
            assert_eq!(commutator(&g, a, 0), 0);
            assert_eq!(commutator(&g, 0, a), 0);
        }
        let v4 = catalog::klein4();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(commutator(&v4, a, b), 0);
            }
        }
    }

    #[test]
    fn derived_subgyrogroups_of_catalog() {
        // frozen from exhaustive commutator evaluation plus closure
        let expected = [
            ("K1", vec![0, 1]),
            ("L1", vec![0]),
            ("M1", vec![0]),
            ("N1", vec![0, 1]),
            ("O1", vec![0]),
        ];
        for (name, elems) in expected {
            let g = catalog::get(name).unwrap().gyrogroup;
            assert_eq!(derived_subgyrogroup(&g), sub(&g, &elems), "{name}");
        }
        let z4 = catalog::cyclic(4);
        assert_eq!(derived_subgyrogroup(&z4), Subset::singleton(4, 0));
    }

    #[test]
    fn derived_subgyrogroup_is_preserved_by_doubling() {
        let g = k1();
        let d = double(&g).unwrap();
        let derived_base = derived_subgyrogroup(&g);
        let derived_double = derived_subgyrogroup(d.result());
        assert_eq!(
            derived_double.iter().collect::<Vec<_>>(),
            derived_base.iter().collect::<Vec<_>>()
        );
    }

    #[test]
    fn coaddition_table_of_k1_is_a_loop_but_not_a_gyrogroup() {
        let g = k1();
        let ct = coaddition_table(&g).unwrap();
        assert_eq!(ct.name(), Some("K1-coadd"));
        // frozen row: 2 ⊞ b over b = 0..8
        let row2: Vec<usize> = (0..8).map(|b| ct.op(2, b)).collect();
        assert_eq!(row2, vec![2, 3, 0, 1, 7, 6, 5, 4]);
        // two-sided identity; construction already guarantees Latin
        for a in 0..8 {
            assert_eq!(ct.op(a, 0), a);
            assert_eq!(ct.op(0, a), a);
        }
        // left cancellation fails for the coaddition, so this is not a
        // gyrogroup: ⊖'4 = 4 yet 4 ⊞ (4 ⊞ 2) ≠ 2
        assert_eq!(ct.op(4, 4), 0);
        assert_eq!(ct.op(4, ct.op(4, 2)), 3);
        assert!(!axioms::verify(&ct).is_gyrogroup);
    }

    #[test]
    fn coaddition_table_of_groups_is_the_group() {
        for name in ["Z1", "Z2", "Z3", "Z4", "V4"] {
            let g = catalog::get(name).unwrap().gyrogroup;
            let ct = coaddition_table(&g).unwrap();
            assert!(ct.same_table(&g), "{name}");
            assert!(axioms::verify(&ct).is_gyrogroup, "{name}");
        }
    }

    #[test]
    fn cosub_sign_rule_on_doubles() {
        let g = k1();
        let d = double(&g).unwrap();
        let n = 8;
        for a in 0..16 {
            for b in 0..16 {
                let base_val = cosub(&g, a % n, b % n);
                let want = if (a < n) == (b < n) {
                    base_val
                } else {
                    base_val + n
                };
                assert_eq!(cosub(d.result(), a, b), want);
            }
        }
    }

    #[test]
    fn classification_examples() {
        let d = double(&k1()).unwrap();
        let g = d.result();

        let b = Subset::from_elements(16, [0, 2]).unwrap();
        let c = classify_subgyrogroup(&d, &b).unwrap();
        assert_eq!(c.shape, Shape::InsideHPlus);
        assert_eq!(c.a_plus, b);
        assert!(c.l_minus.is_empty());

        let b = Subset::from_elements(16, [0, 8]).unwrap();
        let c = classify_subgyrogroup(&d, &b).unwrap();
        assert_eq!(c.shape, Shape::Mirror);
        assert_eq!(c.a_plus, Subset::from_elements(16, [0]).unwrap());
        assert_eq!(c.l_minus, Subset::from_elements(16, [8]).unwrap());

        let b = Subset::from_elements(16, [0, 1, 10, 11]).unwrap();
        let c = classify_subgyrogroup(&d, &b).unwrap();
        assert_eq!(c.shape, Shape::SplitDisjoint);
        assert_eq!(c.a_plus, Subset::from_elements(16, [0, 1]).unwrap());
        assert_eq!(c.l_minus, Subset::from_elements(16, [10, 11]).unwrap());

        // {0, 9} is closed as well: A+ = {0}, L- = {9}, L+ = {1}
        let b = Subset::from_elements(16, [0, 9]).unwrap();
        let c = classify_subgyrogroup(&d, &b).unwrap();
        assert_eq!(c.shape, Shape::SplitDisjoint);

        // not closed → input error
        let b = Subset::from_elements(16, [0, 1, 2]).unwrap();
        assert!(matches!(
            classify_subgyrogroup(&d, &b),
            Err(Error::NotClosed { .. })
        ));
        assert!(g.same_table(d.result()));
    }

    #[test]
    fn double_k1_subgyrogroup_census() {
        // frozen counts: 35 subgyrogroups, 10 inside H+, 15 split, 10 mirror
        let d = double(&k1()).unwrap();
        let subs = all_subgyrogroups(d.result()).unwrap();
        assert_eq!(subs.len(), 35);
        let mut counts = [0usize; 3];
        for s in &subs {
            let c = classify_subgyrogroup(&d, s).unwrap();
            counts[match c.shape {
                Shape::InsideHPlus => 0,
                Shape::SplitDisjoint => 1,
                Shape::Mirror => 2,
            }] += 1;
            if c.shape != Shape::InsideHPlus {
                assert_eq!(c.a_plus.len(), c.l_minus.len(), "{s}");
            }
        }
        assert_eq!(counts, [10, 15, 10]);
    }

    #[test]
    fn shape_soundness_converse() {
        // subsets built to satisfy shape 2 or 3 conditions are subgyrogroups
        let d = double(&k1()).unwrap();
        let g = d.base().clone();
        for a_plus in all_subgyrogroups(&g).unwrap() {
            // mirror: A+ ∪ φ(A+)
            let mirror =
                Subset::from_elements(16, a_plus.iter().chain(a_plus.iter().map(|x| x + 8)))
                    .unwrap();
            assert!(
                is_subgyrogroup(d.result(), &mirror).unwrap(),
                "mirror over {a_plus}"
            );
        }
        // split: A+ = {0,1}, L+ = {2,3} inside the subgyrogroup {0,1,2,3}
        let split = Subset::from_elements(16, [0, 1, 10, 11]).unwrap();
        assert!(is_subgyrogroup(d.result(), &split).unwrap());
    }
}
