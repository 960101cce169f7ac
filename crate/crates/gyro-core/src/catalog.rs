//! Built-in gyrogroup data: the five nondegenerate gyrogroups of order 8
//! (K1, L1, M1, N1, O1) with their gyration tables, plus small group seeds
//! used by doubling and gyrocommutativity tests.
//!
//! Table data is embedded in source so the test suite has no runtime data
//! dependency; the interchange format can regenerate files from it.

use crate::error::{Error, Result};
use crate::gyrogroup::{DeclaredGyr, FiniteGyrogroup};
use crate::perm::Permutation;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub gyrogroup: FiniteGyrogroup,
    /// The non-identity gyration, where the entry has one.
    pub special_perm: Option<Permutation>,
}

const K1: [[usize; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 3, 0, 1, 6, 7, 4, 5],
    [3, 2, 1, 0, 7, 6, 5, 4],
    [4, 5, 6, 7, 0, 1, 2, 3],
    [5, 4, 7, 6, 1, 0, 3, 2],
    [6, 7, 4, 5, 3, 2, 1, 0],
    [7, 6, 5, 4, 2, 3, 0, 1],
];

const L1: [[usize; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 3, 0, 1, 6, 7, 4, 5],
    [3, 2, 1, 0, 7, 6, 5, 4],
    [4, 5, 6, 7, 0, 1, 2, 3],
    [5, 4, 7, 6, 1, 0, 3, 2],
    [6, 7, 5, 4, 3, 2, 0, 1],
    [7, 6, 4, 5, 2, 3, 1, 0],
];

const M1: [[usize; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 3, 0, 1, 6, 7, 4, 5],
    [3, 2, 1, 0, 7, 6, 5, 4],
    [4, 5, 6, 7, 1, 0, 3, 2],
    [5, 4, 7, 6, 0, 1, 2, 3],
    [6, 7, 5, 4, 2, 3, 1, 0],
    [7, 6, 4, 5, 3, 2, 0, 1],
];

const N1: [[usize; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 3, 0, 1, 6, 7, 4, 5],
    [3, 2, 1, 0, 7, 6, 5, 4],
    [4, 5, 6, 7, 1, 0, 3, 2],
    [5, 4, 7, 6, 0, 1, 2, 3],
    [6, 7, 5, 4, 3, 2, 0, 1],
    [7, 6, 4, 5, 2, 3, 1, 0],
];

const O1: [[usize; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 3, 0, 1, 6, 7, 4, 5],
    [3, 2, 1, 0, 7, 6, 5, 4],
    [4, 5, 7, 6, 1, 0, 2, 3],
    [5, 4, 6, 7, 0, 1, 3, 2],
    [6, 7, 5, 4, 2, 3, 1, 0],
    [7, 6, 4, 5, 3, 2, 0, 1],
];

// The non-identity gyration of each order-8 entry, as cycle data.
// M1's gyration is (2,3)(4,5): this is the value the table itself forces
// (gyrations are derived from the Cayley table and cross-checked).
const SPECIALS: [(&str, &str, [usize; 8]); 5] = [
    ("K1", "A", [0, 1, 2, 3, 5, 4, 7, 6]),
    ("L1", "B", [0, 1, 3, 2, 5, 4, 6, 7]),
    ("M1", "C", [0, 1, 3, 2, 5, 4, 6, 7]),
    ("N1", "D", [0, 1, 3, 2, 4, 5, 7, 6]),
    ("O1", "E", [0, 1, 2, 3, 5, 4, 7, 6]),
];

/// gyr[a,b] is the identity when a or b lies in {0,1} or when a and b share
/// a pair block {2,3}, {4,5}, {6,7}; otherwise it is the special perm.
fn gyration_is_identity(a: usize, b: usize) -> bool {
    a < 2 || b < 2 || a / 2 == b / 2
}

fn order8_entry(name: &'static str, rows: &[[usize; 8]; 8]) -> CatalogEntry {
    let (_, special_name, special_images) = SPECIALS
        .iter()
        .find(|(n, _, _)| *n == name)
        .expect("special perm defined");
    let special = Permutation::from_images(special_images.to_vec()).expect("valid special perm");
    let perms = vec![
        ("I".to_string(), Permutation::identity(8)),
        (special_name.to_string(), special.clone()),
    ];
    let mut grid = Vec::with_capacity(64);
    for a in 0..8 {
        for b in 0..8 {
            grid.push(if gyration_is_identity(a, b) { 0 } else { 1 });
        }
    }
    let declared = DeclaredGyr::new(8, perms, grid).expect("valid gyration table");
    let gyrogroup = FiniteGyrogroup::from_rows(rows.iter().map(|r| r.to_vec()).collect())
        .expect("catalog table is Latin with identity row")
        .with_name(name)
        .with_declared_gyr(declared)
        .expect("gyration table fits");
    CatalogEntry {
        name,
        gyrogroup,
        special_perm: Some(special),
    }
}

/// The cyclic group of order n as a gyrogroup table.
pub fn cyclic(n: usize) -> FiniteGyrogroup {
    assert!(n >= 1);
    let rows = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    FiniteGyrogroup::from_rows(rows).expect("cyclic table is valid")
}

/// The Klein four-group (XOR on {0,1,2,3}).
pub fn klein4() -> FiniteGyrogroup {
    let rows = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    FiniteGyrogroup::from_rows(rows).expect("Klein table is valid")
}

pub const NAMES: [&str; 10] = ["K1", "L1", "M1", "N1", "O1", "Z1", "Z2", "Z3", "Z4", "V4"];

pub fn names() -> &'static [&'static str] {
    &NAMES
}

/// The five nondegenerate order-8 entries.
pub fn order8_names() -> &'static [&'static str] {
    &NAMES[..5]
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    let entry = match name {
        "K1" => order8_entry("K1", &K1),
        "L1" => order8_entry("L1", &L1),
        "M1" => order8_entry("M1", &M1),
        "N1" => order8_entry("N1", &N1),
        "O1" => order8_entry("O1", &O1),
        "Z1" => CatalogEntry {
            name: "Z1",
            gyrogroup: cyclic(1).with_name("Z1"),
            special_perm: None,
        },
        "Z2" => CatalogEntry {
            name: "Z2",
            gyrogroup: cyclic(2).with_name("Z2"),
            special_perm: None,
        },
        "Z3" => CatalogEntry {
            name: "Z3",
            gyrogroup: cyclic(3).with_name("Z3"),
            special_perm: None,
        },
        "Z4" => CatalogEntry {
            name: "Z4",
            gyrogroup: cyclic(4).with_name("Z4"),
            special_perm: None,
        },
        "V4" => CatalogEntry {
            name: "V4",
            gyrogroup: klein4().with_name("V4"),
            special_perm: None,
        },
        _ => {
            return Err(Error::UnknownCatalogName {
                name: name.to_string(),
                available: NAMES.join(", "),
            })
        }
    };
    Ok(entry)
}

pub fn entries() -> Vec<CatalogEntry> {
    NAMES
        .iter()
        .map(|n| get(n).expect("catalog entry"))
        .collect()
}
