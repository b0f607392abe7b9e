//! Avoidance search: is there an r-coloring of a box with no monochromatic
//! target structure?

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::coloring::Coloring;
use crate::domain::{CellIndex, SearchBox};
use crate::error::{Error, Result};
use crate::oracle::candidates::{CandidateTable, DEFAULT_CANDIDATE_CAP};
use crate::oracle::spec::StructureSpec;
use crate::oracle::witness::find_witness_in;

/// Search limits. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub wall: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Budget {
        Budget {
            max_nodes: Some(max_nodes),
            wall: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Split the DFS at this depth and explore subtrees on the rayon pool.
    pub parallel_split_depth: Option<usize>,
    pub candidate_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Budget::unlimited(),
            parallel_split_depth: None,
            candidate_cap: DEFAULT_CANDIDATE_CAP,
        }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: Budget) -> SearchOptions {
        SearchOptions {
            budget,
            ..SearchOptions::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Avoidance {
    /// The lexicographically first canonical avoiding coloring.
    Avoiding(Coloring),
    Unavoidable,
    BudgetExceeded {
        nodes: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidanceReport {
    pub outcome: Avoidance,
    pub nodes: u64,
}

pub fn exists_avoiding_coloring(
    bounds: &SearchBox,
    r: u32,
    spec: &StructureSpec,
    budget: Budget,
) -> Result<AvoidanceReport> {
    exists_avoiding_coloring_with(bounds, r, spec, &SearchOptions::with_budget(budget))
}

pub fn exists_avoiding_coloring_with(
    bounds: &SearchBox,
    r: u32,
    spec: &StructureSpec,
    options: &SearchOptions,
) -> Result<AvoidanceReport> {
    if r == 0 {
        return Err(Error::InvalidSpec("at least one color is required".into()));
    }
    let index = Arc::new(CellIndex::new(*bounds)?);
    let table = CandidateTable::build(index, spec, options.candidate_cap)?;
    Ok(search_table(&table, r, options))
}

/// DFS over canonical colorings of the table's box, pruning as soon as a
/// fully colored target is monochromatic.
pub fn search_table(table: &CandidateTable, r: u32, options: &SearchOptions) -> AvoidanceReport {
    let dfs = Dfs::new(table, r);
    let deadline = options.budget.wall.map(|w| Instant::now() + w);
    let limits = Limits {
        max_nodes: options.budget.max_nodes,
        flush_every: options
            .budget
            .max_nodes
            .map_or(FLUSH_EVERY, |m| m.clamp(1, FLUSH_EVERY)),
        deadline,
        nodes: AtomicU64::new(0),
        best: AtomicUsize::new(usize::MAX),
    };
    let depth = options
        .parallel_split_depth
        .unwrap_or(0)
        .min(dfs.n.saturating_sub(1));
    if depth == 0 {
        let outcome = dfs.run(&[], 0, &limits);
        return dfs.report(outcome, &limits);
    }
    let prefixes = canonical_prefixes(depth, r);
    let results: Vec<SubtreeResult> = prefixes
        .par_iter()
        .enumerate()
        .map(|(i, p)| dfs.run(p, i, &limits))
        .collect();
    // the first non-exhausted subtree in prefix order decides
    let merged = results
        .into_iter()
        .find(|res| !matches!(res, SubtreeResult::Exhausted))
        .unwrap_or(SubtreeResult::Exhausted);
    dfs.report(merged, &limits)
}

/// All restricted-growth strings of the given length over `r` colors, in
/// lexicographic order.
fn canonical_prefixes(len: usize, r: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                let top = p.iter().copied().max().map_or(0, |m| m + 1).min(r - 1);
                (0..=top).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

struct Limits {
    max_nodes: Option<u64>,
    flush_every: u64,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    // smallest subtree index that found an avoiding coloring
    best: AtomicUsize,
}

enum SubtreeResult {
    Found(Vec<u32>),
    Exhausted,
    /// Budget exhausted, or pre-empted by an earlier subtree.
    Aborted,
}

struct Dfs<'a> {
    table: &'a CandidateTable,
    r: u32,
    n: usize,
    sides: usize,
    // cell -> (side, candidate) pairs completed by that cell
    triggers: Vec<Vec<(usize, usize)>>,
}

const FLUSH_EVERY: u64 = 1024;

impl<'a> Dfs<'a> {
    fn new(table: &'a CandidateTable, r: u32) -> Dfs<'a> {
        let n = table.index().len();
        let mut triggers = vec![Vec::new(); n];
        for (s, side) in table.sides().iter().enumerate() {
            for (ci, cand) in side.candidates.iter().enumerate() {
                triggers[cand.trigger()].push((s, ci));
            }
        }
        Dfs {
            table,
            r,
            n,
            sides: table.sides().len(),
            triggers,
        }
    }

    fn report(&self, res: SubtreeResult, limits: &Limits) -> AvoidanceReport {
        let nodes = limits.nodes.load(Ordering::Relaxed);
        let outcome = match res {
            SubtreeResult::Found(colors) => Avoidance::Avoiding(
                Coloring::new(self.table.index().clone(), self.r, colors)
                    .expect("search assigns every cell a color below r"),
            ),
            SubtreeResult::Exhausted => Avoidance::Unavoidable,
            SubtreeResult::Aborted => Avoidance::BudgetExceeded { nodes },
        };
        AvoidanceReport { outcome, nodes }
    }

    /// Assigns `col` to `pos`; returns the sides whose monochromatic count
    /// went up, or `None` (with nothing changed) if the assignment completes a
    /// monochromatic target.
    fn apply(
        &self,
        colors: &[u32],
        mono: &mut [u32],
        log: &mut Vec<usize>,
        pos: usize,
        col: u32,
    ) -> bool {
        let r = self.r as usize;
        let start = log.len();
        for &(s, ci) in &self.triggers[pos] {
            let cand = &self.table.sides()[s].candidates[ci];
            let mono_here = cand.cells.iter().all(|&c| c == pos || colors[c] == col);
            if mono_here {
                mono[s * r + col as usize] += 1;
                log.push(s);
            }
        }
        let conflict = (0..self.sides).all(|s| mono[s * r + col as usize] > 0);
        if conflict {
            self.undo(mono, log, start, col);
        }
        !conflict
    }

    fn undo(&self, mono: &mut [u32], log: &mut Vec<usize>, start: usize, col: u32) {
        let r = self.r as usize;
        for s in log.drain(start..) {
            mono[s * r + col as usize] -= 1;
        }
    }

    fn run(&self, prefix: &[u32], subtree: usize, limits: &Limits) -> SubtreeResult {
        let n = self.n;
        let r = self.r;
        let mut colors = vec![u32::MAX; n];
        let mut mono = vec![0u32; self.sides * r as usize];
        let mut log: Vec<usize> = Vec::new();
        let mut log_start = vec![0usize; n + 1];
        // used[p] = number of distinct colors used by cells 0..p
        let mut used = vec![0u32; n + 1];
        let mut next_try = vec![0u32; n + 1];
        let mut local_nodes = 0u64;

        for (pos, &col) in prefix.iter().enumerate() {
            log_start[pos] = log.len();
            if !self.apply(&colors, &mut mono, &mut log, pos, col) {
                return SubtreeResult::Exhausted;
            }
            colors[pos] = col;
            used[pos + 1] = used[pos].max(col + 1);
        }
        let floor = prefix.len();
        if floor == n {
            return SubtreeResult::Found(colors);
        }
        let mut pos = floor;
        next_try[pos] = 0;
        loop {
            let limit = used[pos].min(r - 1);
            let mut placed = false;
            while next_try[pos] <= limit {
                let col = next_try[pos];
                next_try[pos] += 1;
                local_nodes += 1;
                if local_nodes == limits.flush_every {
                    local_nodes = 0;
                    if self.over_budget(limits, subtree, limits.flush_every) {
                        return SubtreeResult::Aborted;
                    }
                }
                log_start[pos] = log.len();
                if self.apply(&colors, &mut mono, &mut log, pos, col) {
                    colors[pos] = col;
                    used[pos + 1] = used[pos].max(col + 1);
                    placed = true;
                    break;
                }
            }
            if placed {
                pos += 1;
                if pos == n {
                    limits.nodes.fetch_add(local_nodes, Ordering::Relaxed);
                    limits.best.fetch_min(subtree, Ordering::Relaxed);
                    return SubtreeResult::Found(colors);
                }
                next_try[pos] = 0;
            } else {
                if pos == floor {
                    limits.nodes.fetch_add(local_nodes, Ordering::Relaxed);
                    return SubtreeResult::Exhausted;
                }
                pos -= 1;
                let col = colors[pos];
                self.undo(&mut mono, &mut log, log_start[pos], col);
                colors[pos] = u32::MAX;
            }
        }
    }

    fn over_budget(&self, limits: &Limits, subtree: usize, add: u64) -> bool {
        let total = limits.nodes.fetch_add(add, Ordering::Relaxed) + add;
        if limits.best.load(Ordering::Relaxed) < subtree {
            return true;
        }
        if limits.max_nodes.is_some_and(|m| total > m) {
            return true;
        }
        limits.deadline.is_some_and(|d| Instant::now() > d)
    }
}

/// Reference search: every one of the `r^cells` colorings in lexicographic
/// order, each checked with [`find_witness_in`]. Returns the first avoiding
/// coloring. Refuses boxes with more than `max_colorings` colorings.
pub fn naive_avoiding_coloring(
    bounds: &SearchBox,
    r: u32,
    spec: &StructureSpec,
    max_colorings: u64,
) -> Result<Option<Coloring>> {
    let index = Arc::new(CellIndex::new(*bounds)?);
    let table = CandidateTable::build(index.clone(), spec, DEFAULT_CANDIDATE_CAP)?;
    let n = index.len();
    let total = (r as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > max_colorings as u128 {
        return Err(Error::CandidateExplosion {
            count: total.min(usize::MAX as u128) as usize,
            cap: max_colorings as usize,
        });
    }
    let mut colors = vec![0u32; n];
    loop {
        let c = Coloring::new(index.clone(), r, colors.clone())?;
        if find_witness_in(&c, &table).is_none() {
            return Ok(Some(c));
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            if colors[pos] + 1 < r {
                colors[pos] += 1;
                break;
            }
            colors[pos] = 0;
        }
    }
}
