//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `--nocapture` to see them) and enforcing its time budget.

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use gyro_core::{axioms, catalog, doubling, format, iso, search, structure};
use gyro_core::{FiniteGyrogroup, Subset};

fn run_criterion(number: &str, name: &str, budget: Option<Duration>, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) => {
            println!(
                "criterion {number} {name}: PASS ({} ms)",
                elapsed.as_millis()
            );
            if let Some(budget) = budget {
                assert!(
                    elapsed <= budget,
                    "criterion {number} exceeded its {budget:?} budget: took {elapsed:?}"
                );
            }
        }
        Err(payload) => {
            println!(
                "criterion {number} {name}: FAIL ({} ms)",
                elapsed.as_millis()
            );
            resume_unwind(payload);
        }
    }
}

fn order8_entries() -> Vec<catalog::CatalogEntry> {
    catalog::order8_names()
        .iter()
        .map(|n| catalog::get(n).unwrap())
        .collect()
}

#[test]
fn criterion_01_catalog_verification() {
    run_criterion(
        "01",
        "catalog verification",
        Some(Duration::from_secs(1)),
        || {
            for entry in order8_entries() {
                let report = axioms::verify(&entry.gyrogroup);
                assert!(
                    report.is_gyrogroup,
                    "{}: {:?}",
                    entry.name,
                    report.first_failure()
                );
                assert!(
                    !report.is_degenerate,
                    "{} must be nondegenerate",
                    entry.name
                );
                assert_eq!(
                    axioms::gyration_table_mismatch(&entry.gyrogroup).unwrap(),
                    None,
                    "{}: declared gyration table must match derived gyrations on all 64 pairs",
                    entry.name
                );
            }
        },
    );
}

#[test]
fn criterion_02_example_conjugation_vs_normality() {
    run_criterion(
        "02",
        "conjugation-invariant but not normal",
        Some(Duration::from_secs(1)),
        || {
            let k1 = catalog::get("K1").unwrap().gyrogroup;
            let p = Subset::from_elements(8, [0, 2]).unwrap();
            for a in 0..8 {
                assert_eq!(
                    structure::conj_set(&k1, a, &p).unwrap(),
                    p,
                    "conj_{a}(P) = P"
                );
            }
            assert!(!structure::is_normal(&k1, &p).unwrap());
            // witness cosets: (5 ⊕ 6) ⊕ P = {3,1} vs (5 ⊕ P) ⊕ 6 = {3,0}
            let lhs = structure::left_coset(&k1, k1.op(5, 6), &p).unwrap();
            assert_eq!(lhs, Subset::from_elements(8, [3, 1]).unwrap());
            let rhs = structure::set_op_right(&k1, &structure::left_coset(&k1, 5, &p).unwrap(), 6)
                .unwrap();
            assert_eq!(rhs, Subset::from_elements(8, [3, 0]).unwrap());
            assert_ne!(lhs, rhs);
        },
    );
}

#[test]
fn criterion_03_doubling_structure() {
    run_criterion(
        "03",
        "doubling structure properties",
        Some(Duration::from_secs(5)),
        || {
            for entry in order8_entries() {
                let name = entry.name;
                let base = &entry.gyrogroup;
                let d = doubling::double(base).unwrap();
                let g = d.result();
                let n = base.order();

                let report = axioms::verify(g);
                assert!(report.is_gyrogroup, "{name}: double must verify");

                // H+ is a normal subgyrogroup
                assert!(structure::is_normal(g, &d.h_plus()).unwrap(), "{name}");

                // derived subgyrogroup is preserved under the embedding
                let derived_base: Vec<usize> =
                    structure::derived_subgyrogroup(base).iter().collect();
                let derived_double: Vec<usize> =
                    structure::derived_subgyrogroup(g).iter().collect();
                assert_eq!(derived_base, derived_double, "{name}");

                // conjugate-set equalities and the cardinality law, for every a
                let full_g = Subset::full(2 * n);
                let full_base = Subset::full(n);
                for a in 0..n {
                    let conj_plus = structure::conj_set(g, a, &full_g).unwrap();
                    let conj_minus = structure::conj_set(g, a + n, &full_g).unwrap();
                    let conj_base = structure::conj_set(base, a, &full_base).unwrap();
                    let mut expected = Subset::empty(2 * n);
                    for x in conj_base.iter() {
                        expected.insert(x);
                        expected.insert(x + n);
                    }
                    assert_eq!(conj_plus, expected, "{name}, a = {a}");
                    assert_eq!(conj_minus, expected, "{name}, a = {a}");
                    assert_eq!(conj_plus.len(), 2 * conj_base.len(), "{name}, a = {a}");
                }

                // 0⁻ ⊗ H⁺ = H⁻
                let image = d.h_plus().map(|h| g.op(d.phi(0), h));
                assert_eq!(image, d.h_minus(), "{name}");
            }
        },
    );
}

#[test]
fn criterion_04_subgyrogroup_classification() {
    run_criterion(
        "04",
        "three-shape classification",
        Some(Duration::from_secs(30)),
        || {
            for entry in order8_entries() {
                let name = entry.name;
                let d = doubling::double(&entry.gyrogroup).unwrap();
                let n = entry.gyrogroup.order();
                let subs = structure::all_subgyrogroups(d.result()).unwrap();
                assert!(!subs.is_empty(), "{name}");
                for b in &subs {
                    let classified = structure::classify_subgyrogroup(&d, b).unwrap();
                    // shape predicates computed independently of the classifier
                    let a_plus: Vec<usize> = b.iter().filter(|&x| x < n).collect();
                    let l_minus: Vec<usize> = b.iter().filter(|&x| x >= n).collect();
                    let l_plus: Vec<usize> = l_minus.iter().map(|&x| x - n).collect();
                    let inside = l_minus.is_empty();
                    let mirror = !l_minus.is_empty() && a_plus == l_plus;
                    let split = !l_minus.is_empty()
                        && !a_plus.is_empty()
                        && a_plus.iter().all(|x| !l_plus.contains(x));
                    let shapes_holding = [inside, mirror, split].iter().filter(|&&s| s).count();
                    assert_eq!(shapes_holding, 1, "{name} {b}: exactly one shape must hold");
                    match classified.shape {
                        structure::Shape::InsideHPlus => assert!(inside, "{name} {b}"),
                        structure::Shape::Mirror => assert!(mirror, "{name} {b}"),
                        structure::Shape::SplitDisjoint => assert!(split, "{name} {b}"),
                    }
                    if !inside {
                        // both halves nonempty, |A+| = |L-|, and A+ ∪ L+ is a
                        // subgyrogroup of H+
                        assert!(!a_plus.is_empty() && !l_minus.is_empty(), "{name} {b}");
                        assert_eq!(a_plus.len(), l_minus.len(), "{name} {b}");
                        let union =
                            Subset::from_elements(n, a_plus.iter().chain(l_plus.iter()).copied())
                                .unwrap();
                        assert!(
                            structure::is_subgyrogroup(&entry.gyrogroup, &union).unwrap(),
                            "{name} {b}"
                        );
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_05_catalog_non_isomorphism() {
    run_criterion(
        "05",
        "pairwise non-isomorphism",
        Some(Duration::from_secs(10)),
        || {
            let entries = order8_entries();
            for i in 0..entries.len() {
                for j in i + 1..entries.len() {
                    let r = iso::isomorphism(&entries[i].gyrogroup, &entries[j].gyrogroup);
                    assert!(!r.isomorphic, "{} ≅ {}", entries[i].name, entries[j].name);
                }
            }
        },
    );
}

/// Independent brute-force group enumerator: all associative Latin squares
/// with two-sided identity 0, collapsed by explicit relabeling. Built for
/// this test only; shares nothing with the search or iso modules.
#[allow(clippy::needless_range_loop)]
mod group_oracle {
    pub fn groups_up_to_iso(n: usize) -> Vec<Vec<Vec<usize>>> {
        let mut table = vec![vec![usize::MAX; n]; n];
        for i in 0..n {
            table[0][i] = i;
            table[i][0] = i;
        }
        let mut out = Vec::new();
        fill(&mut table, n, 1, 1, &mut out);
        let mut reps: Vec<Vec<Vec<usize>>> = Vec::new();
        'next: for t in out {
            for rep in &reps {
                if related_by_relabeling(&t, rep, n) {
                    continue 'next;
                }
            }
            reps.push(t);
        }
        reps
    }

    fn fill(
        table: &mut Vec<Vec<usize>>,
        n: usize,
        row: usize,
        col: usize,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if row == n {
            if is_associative(table, n) {
                out.push(table.clone());
            }
            return;
        }
        let (next_row, next_col) = if col + 1 == n {
            (row + 1, 1)
        } else {
            (row, col + 1)
        };
        'values: for v in 0..n {
            for c in 0..n {
                if table[row][c] == v {
                    continue 'values;
                }
            }
            for r in 0..n {
                if table[r][col] == v {
                    continue 'values;
                }
            }
            table[row][col] = v;
            fill(table, n, next_row, next_col, out);
            table[row][col] = usize::MAX;
        }
    }

    fn is_associative(t: &[Vec<usize>], n: usize) -> bool {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn related_by_relabeling(t1: &[Vec<usize>], t2: &[Vec<usize>], n: usize) -> bool {
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 1, t1, t2, n)
    }

    fn permute(
        perm: &mut Vec<usize>,
        k: usize,
        t1: &[Vec<usize>],
        t2: &[Vec<usize>],
        n: usize,
    ) -> bool {
        if k == n {
            return (0..n).all(|a| (0..n).all(|b| perm[t1[a][b]] == t2[perm[a]][perm[b]]));
        }
        for i in k..n {
            perm.swap(k, i);
            if permute(perm, k + 1, t1, t2, n) {
                perm.swap(k, i);
                return true;
            }
            perm.swap(k, i);
        }
        false
    }
}

#[test]
fn criterion_06_small_order_census() {
    run_criterion(
        "06",
        "small-order census",
        Some(Duration::from_secs(300)),
        || {
            let expected_counts = [1usize, 1, 1, 2, 1, 2];
            for (ix, &expected) in expected_counts.iter().enumerate() {
                let order = ix + 1;
                let cfg = search::SearchConfig {
                    up_to_iso: true,
                    ..search::SearchConfig::new(order)
                };
                let result = search::enumerate(&cfg).unwrap();
                assert_eq!(result.tables.len(), expected, "order {order}");
                for t in &result.tables {
                    assert!(
                        axioms::verify(t).is_degenerate,
                        "order {order}: only degenerate gyrogroups exist"
                    );
                }
                // cross-check against the independent group enumerator
                let groups = group_oracle::groups_up_to_iso(order);
                assert_eq!(groups.len(), expected, "order {order} group count");

                // nondegenerate-only runs are empty at these orders
                let cfg = search::SearchConfig {
                    nondegenerate_only: true,
                    ..search::SearchConfig::new(order)
                };
                assert!(
                    search::enumerate(&cfg).unwrap().tables.is_empty(),
                    "order {order}"
                );
            }
        },
    );
}

/// Long-running order-7 exhaustion; not pinned by CI. Run explicitly with
/// `cargo test -p gyro-core --test acceptance -- --ignored --nocapture`.
#[test]
#[ignore]
fn census_order_seven_behind_flag() {
    run_criterion("06b", "order-7 exhaustion (flagged)", None, || {
        let cfg = search::SearchConfig {
            up_to_iso: true,
            node_budget: Some(u64::MAX),
            ..search::SearchConfig::new(7)
        };
        let result = search::enumerate(&cfg).unwrap();
        assert_eq!(result.tables.len(), 1, "only the cyclic group of order 7");
        assert!(axioms::verify(&result.tables[0]).is_degenerate);
    });
}

#[test]
fn criterion_07_cogyrogroup_property() {
    run_criterion(
        "07",
        "coaddition tables verify",
        Some(Duration::from_secs(1)),
        || {
            for entry in catalog::entries() {
                let coadd = structure::coaddition_table(&entry.gyrogroup).unwrap();
                let report = axioms::verify(&coadd);
                assert!(
                    report.is_gyrogroup,
                    "{}: coaddition table fails verification; first failure {:?} — \
                 the coaddition of this gyrogroup violates left cancellation \
                 (e.g. for K1: 4⊞4 = 0 yet 4⊞(4⊞2) = 3 ≠ 2), so (G,⊞) is not a gyrogroup",
                    entry.name,
                    report.first_failure(),
                );
            }
        },
    );
}

#[test]
fn criterion_08_gyrocommutativity_preservation() {
    run_criterion("08", "doubles of abelian seeds", None, || {
        for name in ["Z2", "Z3", "Z4", "V4"] {
            let seed = catalog::get(name).unwrap().gyrogroup;
            assert!(axioms::is_gyrocommutative(&seed), "{name}");
            let d = doubling::double(&seed).unwrap();
            let report = axioms::verify(d.result());
            assert!(report.is_gyrogroup, "{name}");
            assert!(report.is_degenerate, "double({name}) is a group");
            assert!(
                report.is_gyrocommutative,
                "double({name}) stays gyrocommutative"
            );
        }
    });
}

#[test]
fn criterion_09_iterated_doubling() {
    run_criterion(
        "09",
        "triple doubling of K1",
        Some(Duration::from_secs(60)),
        || {
            let k1 = catalog::get("K1").unwrap().gyrogroup;
            let g = doubling::double_iterated(&k1, 3).unwrap();
            assert_eq!(g.order(), 64);
            let report = axioms::verify(&g);
            assert!(report.is_gyrogroup);
            assert!(!report.is_degenerate);
            assert_eq!(g.name(), Some("K1-D3"));
        },
    );
}

#[test]
fn criterion_10_derived_subgyrogroup_of_k1() {
    run_criterion("10", "derived subgyrogroup of K1", None, || {
        let k1 = catalog::get("K1").unwrap().gyrogroup;
        // brute force: every commutator, then closure
        let mut commutators = Subset::empty(8);
        for a in 0..8 {
            for b in 0..8 {
                commutators.insert(structure::commutator(&k1, a, b));
            }
        }
        assert_eq!(structure::commutator(&k1, 5, 6), 1);
        assert!(commutators.contains(1));
        let derived = structure::derived_subgyrogroup(&k1);
        assert!(derived.contains(1));
        // the computed derived subgyrogroup is {0,1}: strictly larger than
        // the trivial subgyrogroup, since [5,6] = 1
        assert_eq!(derived, Subset::from_elements(8, [0, 1]).unwrap());
        assert_ne!(derived, Subset::singleton(8, 0));
    });
}

#[test]
fn criterion_11_round_trip_and_determinism() {
    run_criterion("11", "round-trip and thread determinism", None, || {
        // parse ∘ render identity on catalog and doubled tables
        for entry in catalog::entries() {
            let g = &entry.gyrogroup;
            let text = format::render(g);
            let back = format::parse_gyrogroup(&text).unwrap();
            assert_eq!(&back, g, "{}", entry.name);
            assert_eq!(format::render(&back), text, "{}", entry.name);

            let d = doubling::double(g).unwrap();
            let text = format::render(d.result());
            let back = format::parse_gyrogroup(&text).unwrap();
            assert_eq!(&back, d.result(), "double({})", entry.name);
            assert_eq!(format::render(&back), text, "double({})", entry.name);
        }

        // enumerate output identical on 1-thread and N-thread pools
        let run = |threads: usize| -> Vec<FiniteGyrogroup> {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let cfg = search::SearchConfig {
                up_to_iso: true,
                ..search::SearchConfig::new(5)
            };
            pool.install(|| search::enumerate(&cfg).unwrap().tables)
        };
        let single = run(1);
        let multi = run(4);
        assert_eq!(single.len(), multi.len());
        for (a, b) in single.iter().zip(&multi) {
            assert!(a.same_table(b));
        }
    });
}
