//! Proper colorings with exactly `n` colors, searched as palette
//! assignments.
//!
//! With `k = n` every palette of a proper coloring is a permutation of
//! `1..=n`, so the problem becomes: give each vertex a different
//! permutation such that the two ends of every dimension-`i` edge agree in
//! position `i`. Vertices are taken in breadth-first order from vertex 0
//! and candidate permutations in lexicographic order.

use std::collections::VecDeque;
use std::sync::Arc;

use itertools::Itertools;

use super::{run, Backtrack, Control, Frontier, SearchOptions, SearchOutcome, Step};
use crate::error::{range, Result};
use crate::hypercube::{Color, Coloring, Hypercube, Mode};

pub(crate) const MAX_N: u32 = 6;
const UNASSIGNED: u16 = u16::MAX;

/// Extra admissibility test on candidate palettes.
pub type PaletteFilter = Arc<dyn Fn(&[Color]) -> bool + Send + Sync>;

fn bfs_order(n: u32) -> Vec<u32> {
    let count = 1usize << n;
    let mut seen = vec![false; count];
    let mut order = Vec::with_capacity(count);
    let mut queue = VecDeque::from([0u32]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for b in 0..n {
            let w = v ^ (1 << b);
            if !std::mem::replace(&mut seen[w as usize], true) {
                queue.push_back(w);
            }
        }
    }
    order
}

#[derive(Clone)]
struct PermutationSearch {
    n: u32,
    perms: Arc<Vec<Vec<Color>>>,
    order: Arc<Vec<u32>>,
    filter: Option<PaletteFilter>,
    symmetry: bool,
    r2: bool,
    assigned: Vec<u16>,
    used: Vec<bool>,
    /// Edges per (dimension, color), indexed `d * n + (c - 1)`.
    class_count: Vec<u8>,
}

impl PermutationSearch {
    fn new(n: u32, symmetry: bool, r2: bool, filter: Option<PaletteFilter>) -> Self {
        let perms: Vec<Vec<Color>> = (1..=n as Color).permutations(n as usize).collect();
        let used = vec![false; perms.len()];
        PermutationSearch {
            n,
            perms: Arc::new(perms),
            order: Arc::new(bfs_order(n)),
            filter,
            symmetry,
            r2,
            assigned: vec![UNASSIGNED; 1 << n],
            used,
            class_count: vec![0; (n * n) as usize],
        }
    }

    fn witness(&self) -> Coloring {
        let cube = Hypercube::new(self.n).expect("small n");
        Coloring::from_fn(cube, self.n as Color, Mode::Proper, |e| {
            self.perms[self.assigned[e.vertex.index()] as usize][e.dimension as usize - 1]
        })
        .expect("permutation palettes use colors 1..=n")
    }
}

impl Backtrack for PermutationSearch {
    type Witness = Coloring;

    fn split_depth(&self) -> usize {
        self.order.len().min(3)
    }

    fn dfs(
        &mut self,
        pos: usize,
        ctl: &Control,
        frontier: &mut Option<Frontier<Self>>,
    ) -> Step<Coloring> {
        if pos == self.order.len() {
            return Step::Found(self.witness());
        }
        if Frontier::park(frontier, pos, self) {
            return Step::Continue;
        }
        let n = self.n as usize;
        let v = self.order[pos];
        let mut fixed: Vec<Option<Color>> = vec![None; n];
        for (d, slot) in fixed.iter_mut().enumerate() {
            let a = self.assigned[(v ^ (1 << d)) as usize];
            if a != UNASSIGNED {
                *slot = Some(self.perms[a as usize][d]);
            }
        }
        let candidates = if pos == 0 && self.symmetry {
            // relabeling colors maps any solution to one with the identity here
            0..1
        } else {
            0..self.perms.len()
        };
        let perms = Arc::clone(&self.perms);
        for idx in candidates {
            if self.used[idx] {
                continue;
            }
            let p = &perms[idx];
            if fixed.iter().zip(p).any(|(f, &c)| f.is_some_and(|f| f != c)) {
                continue;
            }
            if let Some(filter) = &self.filter {
                if !filter(p) {
                    continue;
                }
            }
            if !ctl.tick() {
                return Step::Abort;
            }
            self.assigned[v as usize] = idx as u16;
            self.used[idx] = true;
            // edges seen for the first time get counted in their class
            let mut ok = true;
            let mut bumped = Vec::new();
            if self.r2 {
                for d in 0..n {
                    if fixed[d].is_none() {
                        let slot = d * n + (p[d] as usize - 1);
                        self.class_count[slot] += 1;
                        bumped.push(slot);
                        if self.class_count[slot] > 2 {
                            ok = false;
                        }
                    }
                }
            }
            if ok {
                match self.dfs(pos + 1, ctl, frontier) {
                    Step::Continue => {}
                    other => return other,
                }
            }
            for slot in bumped {
                self.class_count[slot] -= 1;
            }
            self.used[idx] = false;
            self.assigned[v as usize] = UNASSIGNED;
        }
        Step::Continue
    }
}

fn check_n(n: u32) -> Result<()> {
    if !(2..=MAX_N).contains(&n) {
        return range(format!(
            "permutation search needs 2 <= n <= {MAX_N}, got {n}"
        ));
    }
    Ok(())
}

/// Decide whether `H_n` has a proper distinguishing coloring with exactly
/// `n` colors.
pub fn permutation_csp(n: u32, opts: &SearchOptions) -> Result<SearchOutcome> {
    check_n(n)?;
    // the two-per-class rule is only valid for n = k = 4
    let r2 = opts.r2_pruning && n == 4;
    let ctl = Control::new(opts.budget);
    let root = PermutationSearch::new(n, opts.symmetry_breaking, r2, None);
    let w = run(root, &ctl, opts);
    Ok(ctl.outcome(w))
}

/// Permutation search restricted to palettes accepted by `filter`. Vertex 0
/// is not pinned unless `opts.symmetry_breaking` is set, which is only
/// sound when the filter is invariant under color relabeling.
pub fn permutation_search_with_filter(
    n: u32,
    filter: PaletteFilter,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    check_n(n)?;
    let ctl = Control::new(opts.budget);
    let root = PermutationSearch::new(n, opts.symmetry_breaking, false, Some(filter));
    let w = run(root, &ctl, opts);
    Ok(ctl.outcome(w))
}
