//! Exhaustive enumeration of gyrogroups of a given small order by
//! backtracking over Cayley tables.
//!
//! Row 0 is fixed to the identity, column 0 is propagated to the identity
//! (a two-sided identity is a theorem of the axioms), Latin-square state is
//! kept as row/column bitmasks, and gyroassociativity is checked
//! incrementally: a triple (a,b,c) is validated as soon as every table
//! entry its evaluation touches is assigned. Every completed table still
//! passes the full verifier before it is emitted.
//!
//! Unbudgeted runs fan out over the value choices of the first free cell
//! and merge subtree results in canonical order, so output is identical
//! across thread counts. Runs with a node/time budget or a stop flag are
//! sequential, which keeps the resumption state well defined.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::axioms;
use crate::error::{Error, Result};
use crate::gyrogroup::FiniteGyrogroup;
use crate::iso;

/// Hard cap on the search order; the masks are 32 bits wide and anything
/// near this size is far out of reach anyway.
pub const SEARCH_ORDER_CAP: usize = 16;

#[derive(Debug, Clone, Default)]
pub struct SearchConfig {
    pub order: usize,
    pub up_to_iso: bool,
    pub nondegenerate_only: bool,
    /// Maximum number of search nodes to enter before interrupting.
    pub node_budget: Option<u64>,
    /// Wall-clock limit, checked periodically.
    pub time_budget: Option<Duration>,
    /// Cooperative stop flag (e.g. set from a signal handler).
    pub stop: Option<Arc<AtomicBool>>,
    /// Continue a previously interrupted run from its resumption state.
    pub resume: Option<ResumeState>,
}

impl SearchConfig {
    pub fn new(order: usize) -> Self {
        SearchConfig {
            order,
            ..Default::default()
        }
    }

    fn budgeted(&self) -> bool {
        self.node_budget.is_some() || self.time_budget.is_some()
    }

    fn sequential(&self) -> bool {
        self.budgeted() || self.stop.is_some() || self.resume.is_some()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// search nodes entered
    pub nodes: u64,
    /// completed Latin squares reaching the final verifier
    pub completed: u64,
    /// completed tables that failed full verification
    pub failed_verify: u64,
    /// verified gyrogroups before filtering and isomorph rejection
    pub found: u64,
    /// tables dropped because they are degenerate
    pub degenerate_skipped: u64,
    /// tables dropped as isomorphic to an earlier representative
    pub iso_rejected: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.completed += other.completed;
        self.failed_verify += other.failed_verify;
        self.found += other.found;
        self.degenerate_skipped += other.degenerate_skipped;
        self.iso_rejected += other.iso_rejected;
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub tables: Vec<FiniteGyrogroup>,
    pub stats: SearchStats,
}

/// Where an interrupted run stopped: the values of the free cells, in fill
/// order, at the deepest node whose subtree is entirely unexplored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResumeState {
    pub order: usize,
    pub prefix: Vec<u16>,
}

impl ResumeState {
    /// Round-trips through the CLI as a comma-separated value list.
    pub fn encode(&self) -> String {
        self.prefix
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn decode(order: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let mut prefix = Vec::new();
        if !text.is_empty() {
            for part in text.split(',') {
                let v: u16 = part.trim().parse().map_err(|_| Error::Parse {
                    line: 1,
                    col: 1,
                    message: format!("invalid resume value {part:?}"),
                })?;
                prefix.push(v);
            }
        }
        Ok(ResumeState { order, prefix })
    }
}

/// Partial results of a run that hit its budget or stop flag.
#[derive(Debug)]
pub struct Interrupted {
    pub results: Vec<FiniteGyrogroup>,
    pub stats: SearchStats,
    pub resume: ResumeState,
}

/// A partially specified Cayley table used to seed the search.
#[derive(Debug, Clone)]
pub struct PartialTable {
    order: usize,
    cells: Vec<Option<u16>>,
}

impl PartialTable {
    pub fn new(order: usize) -> Self {
        PartialTable {
            order,
            cells: vec![None; order * order],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn set(&mut self, row: usize, col: usize, value: usize) -> Result<()> {
        if row >= self.order || col >= self.order {
            return Err(Error::ElementOutOfRange {
                element: row.max(col),
                order: self.order,
            });
        }
        if value >= self.order {
            return Err(Error::EntryOutOfRange {
                row,
                col,
                value,
                order: self.order,
            });
        }
        self.cells[row * self.order + col] = Some(value as u16);
        Ok(())
    }

    pub fn get(&self, row: usize, col: usize) -> Option<usize> {
        self.cells[row * self.order + col].map(|v| v as usize)
    }

    pub fn assigned(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    /// Copies the first `rows` rows of an existing table.
    pub fn from_table_rows(g: &FiniteGyrogroup, rows: usize) -> Self {
        let mut p = PartialTable::new(g.order());
        for r in 0..rows.min(g.order()) {
            for c in 0..g.order() {
                p.set(r, c, g.op(r, c)).expect("in range");
            }
        }
        p
    }
}

const UNSET: u16 = u16::MAX;

enum Eval {
    Unknown,
    Pass,
    Fail,
}

struct Engine<'a> {
    n: usize,
    cells: Vec<u16>,
    row_mask: Vec<u32>,
    col_mask: Vec<u32>,
    /// row holding the 0 of each column, UNSET if not assigned yet
    zero_col: Vec<u16>,
    free: Vec<(u16, u16)>,
    validated: Vec<bool>,
    cfg: &'a SearchConfig,
    prefix: &'a [u16],
    started: Instant,
    stats: SearchStats,
    tables: Vec<FiniteGyrogroup>,
    cut: Option<Vec<u16>>,
}

impl<'a> Engine<'a> {
    /// Returns `None` when the fragment plus forced cells admit no
    /// completion at all.
    fn setup(
        cfg: &'a SearchConfig,
        fragment: &PartialTable,
        prefix: &'a [u16],
    ) -> Result<Option<Engine<'a>>> {
        let n = cfg.order;
        let mut cells = vec![UNSET; n * n];
        let mut row_mask = vec![0u32; n];
        let mut col_mask = vec![0u32; n];
        let mut zero_col = vec![UNSET; n];

        // row 0 is the identity by convention
        for c in 0..n {
            if let Some(v) = fragment.get(0, c) {
                if v != c {
                    return Err(Error::FragmentConflict {
                        row: 0,
                        col: c,
                        detail: format!("row 0 must be the identity, found {v}"),
                    });
                }
            }
            cells[c] = c as u16;
            row_mask[0] |= 1 << c;
            col_mask[c] |= 1 << c;
        }
        zero_col[0] = 0;

        // place the fragment, detecting the first Latin conflict
        for r in 1..n {
            for c in 0..n {
                let Some(v) = fragment.get(r, c) else {
                    continue;
                };
                let bit = 1u32 << v;
                if row_mask[r] & bit != 0 {
                    return Err(Error::FragmentConflict {
                        row: r,
                        col: c,
                        detail: format!("value {v} repeats in row {r}"),
                    });
                }
                if col_mask[c] & bit != 0 {
                    return Err(Error::FragmentConflict {
                        row: r,
                        col: c,
                        detail: format!("value {v} repeats in column {c}"),
                    });
                }
                cells[r * n + c] = v as u16;
                row_mask[r] |= bit;
                col_mask[c] |= bit;
                if v == 0 {
                    zero_col[c] = r as u16;
                }
            }
        }

        // propagate column 0 to the identity where the fragment leaves it open
        for r in 1..n {
            if cells[r * n] == UNSET {
                let bit = 1u32 << r;
                if row_mask[r] & bit != 0 || col_mask[0] & bit != 0 {
                    return Ok(None);
                }
                cells[r * n] = r as u16;
                row_mask[r] |= bit;
                col_mask[0] |= bit;
            } else if cells[r * n] as usize != r {
                // the fragment pins a⊕0 ≠ a; no gyrogroup extends it, and the
                // final verifier would reject every completion anyway
                return Ok(None);
            }
        }

        let mut free = Vec::new();
        for r in 1..n {
            for c in 1..n {
                if cells[r * n + c] == UNSET {
                    free.push((r as u16, c as u16));
                }
            }
        }
        Ok(Some(Engine {
            n,
            cells,
            row_mask,
            col_mask,
            zero_col,
            free,
            validated: vec![false; n * n * n],
            cfg,
            prefix,
            started: Instant::now(),
            stats: SearchStats::default(),
            tables: Vec::new(),
            cut: None,
        }))
    }

    #[inline]
    fn get(&self, r: usize, c: usize) -> u16 {
        self.cells[r * self.n + c]
    }

    fn eval_triple(&self, a: usize, b: usize, c: usize) -> Eval {
        let u = self.get(b, c);
        if u == UNSET {
            return Eval::Unknown;
        }
        let x = self.get(a, u as usize);
        if x == UNSET {
            return Eval::Unknown;
        }
        let v = self.get(a, b);
        if v == UNSET {
            return Eval::Unknown;
        }
        let iv = self.zero_col[v as usize];
        if iv == UNSET {
            return Eval::Unknown;
        }
        let w = self.get(iv as usize, x as usize);
        if w == UNSET {
            return Eval::Unknown;
        }
        let y = self.get(v as usize, w as usize);
        if y == UNSET {
            return Eval::Unknown;
        }
        if y == x {
            Eval::Pass
        } else {
            Eval::Fail
        }
    }

    /// Validates every currently checkable triple; on a violation unmarks
    /// what it just marked and reports failure.
    fn check_triples(&mut self, marked: &mut Vec<u32>) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let id = (a * n + b) * n + c;
                    if self.validated[id] {
                        continue;
                    }
                    match self.eval_triple(a, b, c) {
                        Eval::Unknown => {}
                        Eval::Pass => {
                            self.validated[id] = true;
                            marked.push(id as u32);
                        }
                        Eval::Fail => {
                            for &m in marked.iter() {
                                self.validated[m as usize] = false;
                            }
                            marked.clear();
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn budget_hit(&self) -> bool {
        if let Some(limit) = self.cfg.node_budget {
            if self.stats.nodes >= limit {
                return true;
            }
        }
        if let Some(stop) = &self.cfg.stop {
            if stop.load(Ordering::Relaxed) {
                return true;
            }
        }
        if let Some(limit) = self.cfg.time_budget {
            if self.stats.nodes.is_multiple_of(256) && self.started.elapsed() >= limit {
                return true;
            }
        }
        false
    }

    fn complete(&mut self) {
        self.stats.completed += 1;
        let table = FiniteGyrogroup::from_flat(self.n, self.cells.clone())
            .expect("completed assignment is Latin with identity row");
        let report = axioms::verify(&table);
        if !report.is_gyrogroup {
            self.stats.failed_verify += 1;
            return;
        }
        self.stats.found += 1;
        if self.cfg.nondegenerate_only && report.is_degenerate {
            self.stats.degenerate_skipped += 1;
            return;
        }
        self.tables.push(table);
    }

    fn dfs(&mut self, depth: usize, on_prefix: bool) {
        if self.cut.is_some() {
            return;
        }
        // nodes replayed while re-walking a resume prefix are exempt from
        // budgets, so every resumed slice makes progress past its prefix
        let replay = on_prefix && depth < self.prefix.len();
        if !replay {
            if self.budget_hit() {
                self.cut = Some(
                    self.free[..depth]
                        .iter()
                        .map(|&(r, c)| self.get(r as usize, c as usize))
                        .collect(),
                );
                return;
            }
            self.stats.nodes += 1;
        }
        if depth == self.free.len() {
            self.complete();
            return;
        }
        let (r, c) = self.free[depth];
        let (r, c) = (r as usize, c as usize);
        let start = if on_prefix && depth < self.prefix.len() {
            self.prefix[depth]
        } else {
            0
        };
        for v in start..self.n as u16 {
            let bit = 1u32 << v;
            if self.row_mask[r] & bit != 0 || self.col_mask[c] & bit != 0 {
                continue;
            }
            self.cells[r * self.n + c] = v;
            self.row_mask[r] |= bit;
            self.col_mask[c] |= bit;
            if v == 0 {
                self.zero_col[c] = r as u16;
            }
            let mut marked = Vec::new();
            if self.check_triples(&mut marked) {
                let child_on_prefix =
                    on_prefix && depth < self.prefix.len() && v == self.prefix[depth];
                self.dfs(depth + 1, child_on_prefix);
            }
            for &m in &marked {
                self.validated[m as usize] = false;
            }
            self.cells[r * self.n + c] = UNSET;
            self.row_mask[r] &= !bit;
            self.col_mask[c] &= !bit;
            if v == 0 {
                self.zero_col[c] = UNSET;
            }
            if self.cut.is_some() {
                return;
            }
        }
    }
}

fn filter_up_to_iso(tables: Vec<FiniteGyrogroup>, stats: &mut SearchStats) -> Vec<FiniteGyrogroup> {
    let mut reps: Vec<FiniteGyrogroup> = Vec::new();
    for t in tables {
        if reps.iter().any(|r| iso::isomorphism(r, &t).isomorphic) {
            stats.iso_rejected += 1;
        } else {
            reps.push(t);
        }
    }
    reps
}

fn validate(cfg: &SearchConfig, fragment: &PartialTable) -> Result<()> {
    if cfg.order == 0 {
        return Err(Error::EmptyTable);
    }
    if cfg.order > SEARCH_ORDER_CAP {
        return Err(Error::OrderCapExceeded {
            order: cfg.order,
            cap: SEARCH_ORDER_CAP,
        });
    }
    if fragment.order() != cfg.order {
        return Err(Error::UniverseMismatch {
            expected: cfg.order,
            got: fragment.order(),
        });
    }
    // blind enumeration beyond order 6 is long-running; require an explicit
    // budget so it is a deliberate choice
    if cfg.order >= 7 && fragment.assigned() == 0 && !cfg.budgeted() {
        return Err(Error::BudgetRequired { order: cfg.order });
    }
    if let Some(resume) = &cfg.resume {
        if resume.order != cfg.order {
            return Err(Error::UniverseMismatch {
                expected: cfg.order,
                got: resume.order,
            });
        }
    }
    Ok(())
}

/// Enumerates all gyrogroups of `cfg.order` (tables with identity element 0).
pub fn enumerate(cfg: &SearchConfig) -> Result<SearchResult> {
    find_containing(cfg, &PartialTable::new(cfg.order))
}

/// Enumerates all gyrogroups extending a consistent partial table.
pub fn find_containing(cfg: &SearchConfig, fragment: &PartialTable) -> Result<SearchResult> {
    validate(cfg, fragment)?;
    let empty_prefix: Vec<u16> = Vec::new();
    let prefix = cfg
        .resume
        .as_ref()
        .map(|r| r.prefix.clone())
        .unwrap_or(empty_prefix);

    if cfg.sequential() {
        return run_sequential(cfg, fragment, &prefix);
    }

    // parallel: fan out over the first free cell, merge in value order
    let Some(probe) = Engine::setup(cfg, fragment, &prefix)? else {
        return Ok(SearchResult {
            tables: Vec::new(),
            stats: SearchStats::default(),
        });
    };
    if probe.free.is_empty() {
        return run_sequential(cfg, fragment, &prefix);
    }
    let (r0, c0) = probe.free[0];
    let n = cfg.order;
    let branches: Vec<u16> = (0..n as u16)
        .filter(|&v| {
            let bit = 1u32 << v;
            probe.row_mask[r0 as usize] & bit == 0 && probe.col_mask[c0 as usize] & bit == 0
        })
        .collect();
    drop(probe);

    let sub: Vec<Result<(Vec<FiniteGyrogroup>, SearchStats)>> = branches
        .par_iter()
        .map(|&v| {
            let mut frag = fragment.clone();
            frag.set(r0 as usize, c0 as usize, v as usize)?;
            let Some(mut engine) = Engine::setup(cfg, &frag, &[])? else {
                return Ok((Vec::new(), SearchStats::default()));
            };
            engine.dfs(0, false);
            debug_assert!(engine.cut.is_none(), "unbudgeted subtree cannot be cut");
            Ok((engine.tables, engine.stats))
        })
        .collect();

    let mut tables = Vec::new();
    let mut stats = SearchStats::default();
    stats.nodes += 1; // the shared root
    for piece in sub {
        let (sub_tables, sub_stats) = piece?;
        tables.extend(sub_tables);
        stats.absorb(&sub_stats);
    }
    if cfg.up_to_iso {
        tables = filter_up_to_iso(tables, &mut stats);
    }
    Ok(SearchResult { tables, stats })
}

fn run_sequential(
    cfg: &SearchConfig,
    fragment: &PartialTable,
    prefix: &[u16],
) -> Result<SearchResult> {
    let Some(mut engine) = Engine::setup(cfg, fragment, prefix)? else {
        return Ok(SearchResult {
            tables: Vec::new(),
            stats: SearchStats::default(),
        });
    };
    if prefix.len() > engine.free.len() {
        return Err(Error::Input(format!(
            "resume state has {} entries but the search has only {} free cells",
            prefix.len(),
            engine.free.len()
        )));
    }
    engine.dfs(0, !prefix.is_empty());
    let mut stats = engine.stats;
    let mut tables = engine.tables;
    if cfg.up_to_iso {
        tables = filter_up_to_iso(tables, &mut stats);
    }
    match engine.cut {
        None => Ok(SearchResult { tables, stats }),
        Some(prefix) => Err(Error::SearchInterrupted(Box::new(Interrupted {
            results: tables,
            stats,
            resume: ResumeState {
                order: cfg.order,
                prefix,
            },
        }))),
    }
}
