//! Exact existence search for distinguishing colorings of small hypercubes.
//!
//! Two complete backtracking engines live here: one branches on edge colors
//! in [`EdgeIndex`](crate::EdgeIndex) order and serves every `(mode, k)`;
//! the other assigns a permutation palette to each vertex and decides the
//! proper `k = n` case. A plain enumerator ([`brute_force_oracle`]) checks
//! both on instances small enough to list every coloring.
//!
//! `Infeasible` is only ever reported after the search space has been
//! exhausted. Running out of nodes or time yields `Unknown`.

mod edges;
mod oracle;
mod permutation;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{range, Result};
use crate::hypercube::{Color, Coloring, Hypercube, Mode};
use crate::verify::{distinguishes, is_proper};

pub use oracle::brute_force_oracle;
pub use permutation::{permutation_csp, permutation_search_with_filter, PaletteFilter};

/// Largest dimension the edge-branching engine accepts.
pub const MAX_SEARCH_DIMENSION: u32 = 10;
/// Largest color count any search accepts.
pub const MAX_SEARCH_COLORS: Color = 32;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub budget: Budget,
    /// First-use color order for edge branching, identity palette at
    /// vertex 0 for the permutation engine.
    pub symmetry_breaking: bool,
    /// Cap each (dimension, color) class at two edges in the `n = k = 4`
    /// permutation search.
    pub r2_pruning: bool,
    /// Return the first witness in sequential search order even when
    /// running on several threads.
    pub deterministic_witness: bool,
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Budget::unlimited(),
            symmetry_breaking: true,
            r2_pruning: true,
            deterministic_witness: false,
            threads: 1,
        }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: Budget) -> Self {
        SearchOptions {
            budget,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Feasible,
    Infeasible,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Feasible => "Feasible",
            Status::Infeasible => "Infeasible",
            Status::Unknown => "Unknown",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome<W = Coloring> {
    pub status: Status,
    pub witness: Option<W>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub budget: Budget,
}

/// Shared node counter and budget state for one search.
pub(crate) struct Control {
    started: Instant,
    nodes: AtomicU64,
    budget: Budget,
    exhausted: AtomicBool,
}

impl Control {
    pub(crate) fn new(budget: Budget) -> Self {
        Control {
            started: Instant::now(),
            nodes: AtomicU64::new(0),
            budget,
            exhausted: AtomicBool::new(false),
        }
    }

    /// Count one node; false once the budget is spent.
    #[inline]
    pub(crate) fn tick(&self) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.budget.max_nodes.is_some_and(|m| count > m);
        let over_time = count.is_multiple_of(1024)
            && self
                .budget
                .max_time
                .is_some_and(|t| self.started.elapsed() > t);
        if over_nodes || over_time {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub(crate) fn outcome<W>(&self, witness: Option<W>) -> SearchOutcome<W> {
        let status = match (&witness, self.exhausted.load(Ordering::Relaxed)) {
            (Some(_), _) => Status::Feasible,
            (None, true) => Status::Unknown,
            (None, false) => Status::Infeasible,
        };
        SearchOutcome {
            status,
            witness,
            // the budget-breaking tick is not an explored node
            nodes_explored: self
                .nodes
                .load(Ordering::Relaxed)
                .min(self.budget.max_nodes.unwrap_or(u64::MAX)),
            elapsed: self.started.elapsed(),
            budget: self.budget,
        }
    }
}

pub(crate) enum Step<W> {
    Found(W),
    Continue,
    Abort,
}

/// States cut off at a fixed depth so their subtrees can be run in parallel.
pub(crate) struct Frontier<S> {
    pub(crate) depth: usize,
    pub(crate) states: Vec<S>,
}

impl<S: Clone> Frontier<S> {
    /// Park a clone of `state` if `pos` is the cut depth.
    #[inline]
    pub(crate) fn park(frontier: &mut Option<Frontier<S>>, pos: usize, state: &S) -> bool {
        match frontier {
            Some(fr) if fr.depth == pos => {
                fr.states.push(state.clone());
                true
            }
            _ => false,
        }
    }
}

pub(crate) trait Backtrack: Clone + Send {
    type Witness: Send;

    fn split_depth(&self) -> usize;

    fn dfs(
        &mut self,
        pos: usize,
        ctl: &Control,
        frontier: &mut Option<Frontier<Self>>,
    ) -> Step<Self::Witness>;
}

/// Run a search to completion, splitting into parallel subtrees when more
/// than one thread is requested. Node totals do not depend on the split.
pub(crate) fn run<S: Backtrack>(
    mut root: S,
    ctl: &Control,
    opts: &SearchOptions,
) -> Option<S::Witness> {
    if opts.threads <= 1 {
        return match root.dfs(0, ctl, &mut None) {
            Step::Found(w) => Some(w),
            _ => None,
        };
    }
    let depth = root.split_depth();
    let mut frontier = Some(Frontier {
        depth,
        states: Vec::new(),
    });
    match root.dfs(0, ctl, &mut frontier) {
        Step::Found(w) => return Some(w),
        Step::Abort => return None,
        Step::Continue => {}
    }
    let states = frontier.map(|f| f.states).unwrap_or_default();
    let solve = |mut s: S| match s.dfs(depth, ctl, &mut None) {
        Step::Found(w) => Some(w),
        _ => None,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .expect("thread pool");
    pool.install(|| {
        if opts.deterministic_witness {
            states.into_par_iter().find_map_first(solve)
        } else {
            states.into_par_iter().find_map_any(solve)
        }
    })
}

fn check_instance(n: u32, k: Color) -> Result<Hypercube> {
    if !(2..=MAX_SEARCH_DIMENSION).contains(&n) {
        return range(format!(
            "search needs 2 <= n <= {MAX_SEARCH_DIMENSION}, got {n}"
        ));
    }
    if !(1..=MAX_SEARCH_COLORS).contains(&k) {
        return range(format!(
            "search needs 1 <= k <= {MAX_SEARCH_COLORS}, got {k}"
        ));
    }
    Hypercube::new(n)
}

/// Accepts exactly the witnesses a search may return.
pub(crate) fn witness_ok(c: &Coloring, mode: Mode) -> bool {
    distinguishes(c).ok() && (mode == Mode::General || is_proper(c).ok())
}

/// Does `H_n` admit a distinguishing coloring with `k` colors in `mode`?
pub fn feasible(n: u32, mode: Mode, k: Color, opts: &SearchOptions) -> Result<SearchOutcome> {
    let cube = check_instance(n, k)?;
    if mode == Mode::Proper && (k as u32) < n {
        // an n-regular graph has no proper coloring with fewer than n colors
        return Ok(Control::new(opts.budget).outcome(None));
    }
    let outcome = if mode == Mode::Proper && k as u32 == n && n <= permutation::MAX_N {
        permutation_csp(n, opts)?
    } else {
        let ctl = Control::new(opts.budget);
        let root = edges::EdgeSearch::new(cube, mode, k, opts.symmetry_breaking);
        let w = run(root, &ctl, opts);
        ctl.outcome(w)
    };
    if let Some(w) = &outcome.witness {
        assert!(witness_ok(w, mode), "search produced an invalid witness");
    }
    Ok(outcome)
}

#[derive(Debug, Clone)]
pub struct MinColors {
    /// `None` when some probe ran out of budget or no `k <= k_max` worked.
    pub k_min: Option<Color>,
    pub witness: Option<Coloring>,
    pub probes: Vec<(Color, SearchOutcome)>,
}

/// Lowest `k` worth probing: two for general colorings, `n` (the chromatic
/// index) for proper ones.
pub fn color_floor(n: u32, mode: Mode) -> Color {
    match mode {
        Mode::General => 2,
        Mode::Proper => n as Color,
    }
}

pub fn min_colors(n: u32, mode: Mode, k_max: Color, opts: &SearchOptions) -> Result<MinColors> {
    check_instance(n, k_max)?;
    let mut probes = Vec::new();
    for k in color_floor(n, mode)..=k_max {
        let out = feasible(n, mode, k, opts)?;
        let status = out.status;
        let witness = out.witness.clone();
        probes.push((k, out));
        match status {
            Status::Feasible => {
                return Ok(MinColors {
                    k_min: Some(k),
                    witness,
                    probes,
                })
            }
            Status::Unknown => break,
            Status::Infeasible => {}
        }
    }
    Ok(MinColors {
        k_min: None,
        witness: None,
        probes,
    })
}
