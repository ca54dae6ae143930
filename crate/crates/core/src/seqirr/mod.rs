//! Sequence-distinguishing colorings of arbitrary small graphs.
//!
//! Here a vertex's palette lists the colors of its incident edges by
//! increasing global edge index. The module computes the counting lower
//! bound `M_G`, decides feasibility for a fixed ordering, and finds the
//! smallest `k` that works for some ordering (specific strength) or for
//! every ordering (general strength) by enumerating orderings.

mod graph;

use std::collections::HashSet;

use itertools::Itertools;
use rayon::prelude::*;

pub use graph::{format_edge_list, hypercube_ordering, parse_edge_list, EdgeOrderedGraph};

use crate::error::{domain, range, Result};
use crate::hypercube::Color;
use crate::search::{Budget, Control, SearchOutcome, Status};

/// Most edges [`feasible_for_ordering`] will take.
pub const MAX_ORDERED_EDGES: usize = 20;
/// Most edges the strength searches will enumerate orderings for.
pub const MAX_STRENGTH_EDGES: usize = 8;

pub fn global_palette(g: &EdgeOrderedGraph, colors: &[Color], v: usize) -> Vec<Color> {
    g.incident(v).into_iter().map(|e| colors[e]).collect()
}

/// `counts[i]` is the number of vertices of degree `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub counts: Vec<usize>,
}

impl DegreeProfile {
    pub fn of(g: &EdgeOrderedGraph) -> Self {
        let mut counts = vec![0; g.max_degree() + 1];
        for v in 0..g.num_vertices() {
            counts[g.degree(v)] += 1;
        }
        DegreeProfile { counts }
    }

    pub fn max_degree(&self) -> usize {
        self.counts.len() - 1
    }
}

/// Smallest `k` with `k^i >= count`, by binary search on exact powers.
fn integer_root_ceil(count: u64, i: u32) -> u64 {
    let pow_at_least = |k: u64| {
        let mut acc: u64 = 1;
        for _ in 0..i {
            acc = acc.saturating_mul(k);
            if acc >= count {
                return true;
            }
        }
        acc >= count
    };
    let (mut lo, mut hi) = (0u64, count.max(1));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pow_at_least(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Counting lower bound: the largest, over degrees `i` present, of the
/// least `k` with `k^i >= n_i`.
pub fn mg_bound(g: &EdgeOrderedGraph) -> Result<u32> {
    if g.num_vertices() == 0 {
        return domain("empty graph");
    }
    let isolated = g.isolated_vertices();
    if !isolated.is_empty() {
        return domain(format!(
            "isolated vertices {isolated:?} have empty palettes"
        ));
    }
    let profile = DegreeProfile::of(g);
    Ok(profile
        .counts
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| integer_root_ceil(c as u64, i as u32) as u32)
        .max()
        .unwrap_or(0))
}

struct OrderedSearch<'a> {
    g: &'a EdgeOrderedGraph,
    k: Color,
    sequence: Vec<usize>,
    remaining: Vec<usize>,
    palettes: Vec<Vec<Color>>,
    colors: Vec<Color>,
    finished: HashSet<Vec<Color>>,
    max_used: Color,
}

impl OrderedSearch<'_> {
    fn finish(&mut self, v: usize) -> bool {
        self.remaining[v] -= 1;
        if self.remaining[v] == 0 {
            return self.finished.insert(self.palettes[v].clone());
        }
        true
    }

    fn unfinish(&mut self, v: usize) {
        if self.remaining[v] == 0 {
            self.finished.remove(&self.palettes[v]);
        }
        self.remaining[v] += 1;
    }

    fn dfs(&mut self, pos: usize, ctl: &Control) -> Option<bool> {
        if pos == self.sequence.len() {
            return Some(true);
        }
        let e = self.sequence[pos];
        let (u, v) = self.g.edges()[e];
        // colors are interchangeable, so introduce them in order
        for c in 1..=self.k.min(self.max_used + 1) {
            if !ctl.tick() {
                return None;
            }
            self.colors[e] = c;
            let prev_max = self.max_used;
            self.max_used = self.max_used.max(c);
            self.palettes[u].push(c);
            self.palettes[v].push(c);
            let ok_u = self.finish(u);
            let ok_v = ok_u && self.finish(v);
            if ok_v {
                match self.dfs(pos + 1, ctl) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            // a rejected insert left the set untouched, so only restore the count
            if ok_u {
                if ok_v {
                    self.unfinish(v);
                } else {
                    self.remaining[v] += 1;
                }
                self.unfinish(u);
            } else {
                self.remaining[u] += 1;
            }
            self.palettes[u].pop();
            self.palettes[v].pop();
            self.max_used = prev_max;
            self.colors[e] = 0;
        }
        Some(false)
    }
}

fn palettes_distinct(g: &EdgeOrderedGraph, colors: &[Color]) -> bool {
    let mut seen = HashSet::new();
    (0..g.num_vertices()).all(|v| seen.insert(global_palette(g, colors, v)))
}

/// Is there a `k`-coloring of `g` under its ordering with all palettes
/// distinct? The witness lists one color per edge position.
pub fn feasible_for_ordering(
    g: &EdgeOrderedGraph,
    k: Color,
    budget: Budget,
) -> Result<SearchOutcome<Vec<Color>>> {
    let m = g.edges().len();
    if m > MAX_ORDERED_EDGES {
        return range(format!("{m} edges exceed the limit of {MAX_ORDERED_EDGES}"));
    }
    if k == 0 {
        return range("need at least one color");
    }
    let ctl = Control::new(budget);
    let mut search = OrderedSearch {
        g,
        k,
        sequence: g.order_sequence(),
        remaining: (0..g.num_vertices()).map(|v| g.degree(v)).collect(),
        palettes: vec![Vec::new(); g.num_vertices()],
        colors: vec![0; m],
        finished: HashSet::new(),
        max_used: 0,
    };
    // vertices with no edges are finished from the start
    let mut ok = true;
    for v in 0..g.num_vertices() {
        if search.remaining[v] == 0 && !search.finished.insert(Vec::new()) {
            ok = false;
        }
    }
    let witness = if ok {
        match search.dfs(0, &ctl) {
            Some(true) => Some(search.colors.clone()),
            _ => None,
        }
    } else {
        None
    };
    if let Some(w) = &witness {
        assert!(
            palettes_distinct(g, w),
            "ordered search produced an invalid witness"
        );
    }
    Ok(ctl.outcome(witness))
}

#[derive(Debug, Clone)]
pub struct StrengthOptions {
    pub k_max: Color,
    /// Applied to each single-ordering feasibility check.
    pub budget: Budget,
    /// Vertex permutations known to be automorphisms of the graph; only
    /// orderings that are lexicographically minimal under them are tried.
    pub automorphisms: Option<Vec<Vec<usize>>>,
    pub threads: usize,
}

impl Default for StrengthOptions {
    fn default() -> Self {
        StrengthOptions {
            k_max: 6,
            budget: Budget::unlimited(),
            automorphisms: None,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedWitness {
    /// Edge positions by increasing global index.
    pub ordering: Vec<usize>,
    pub colors: Vec<Color>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrengthReport {
    /// `None` when undecided: a check ran out of budget or `k_max` was
    /// reached.
    pub value: Option<Color>,
    pub orderings_considered: usize,
    /// Specific strength: an ordering and coloring achieving the value.
    pub witness: Option<OrderedWitness>,
    /// General strength: an ordering with no distinguishing coloring at
    /// `value - 1` colors.
    pub blocking_ordering: Option<Vec<usize>>,
}

fn edge_permutations(g: &EdgeOrderedGraph, autos: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    autos
        .iter()
        .map(|sigma| {
            if sigma.len() != g.num_vertices() {
                return domain("automorphism has the wrong length");
            }
            g.edges()
                .iter()
                .map(|&(u, v)| {
                    g.find_edge(sigma[u], sigma[v]).ok_or_else(|| {
                        crate::Error::Domain(format!("{sigma:?} is not an automorphism"))
                    })
                })
                .collect()
        })
        .collect()
}

/// Every vertex permutation preserving adjacency, for graphs with at most
/// eight vertices.
pub fn brute_force_automorphisms(g: &EdgeOrderedGraph) -> Result<Vec<Vec<usize>>> {
    let nv = g.num_vertices();
    if nv > 8 {
        return range("automorphism enumeration is limited to 8 vertices");
    }
    Ok((0..nv)
        .permutations(nv)
        .filter(|sigma| {
            g.edges()
                .iter()
                .all(|&(u, v)| g.find_edge(sigma[u], sigma[v]).is_some())
        })
        .collect())
}

fn check_strength_input(g: &EdgeOrderedGraph) -> Result<()> {
    if let Some(e) = g.k2_component() {
        let (u, v) = g.edges()[e];
        return domain(format!(
            "edge {u}-{v} is a K2 component; its ends can never be told apart"
        ));
    }
    let isolated = g.isolated_vertices();
    if !isolated.is_empty() {
        return domain(format!(
            "isolated vertices {isolated:?} have empty palettes"
        ));
    }
    if g.edges().len() > MAX_STRENGTH_EDGES {
        return range(format!(
            "{} edges exceed the ordering enumeration limit of {MAX_STRENGTH_EDGES}",
            g.edges().len()
        ));
    }
    Ok(())
}

fn candidate_orderings(g: &EdgeOrderedGraph, opts: &StrengthOptions) -> Result<Vec<Vec<usize>>> {
    let m = g.edges().len();
    let perms = match &opts.automorphisms {
        Some(a) => edge_permutations(g, a)?,
        None => Vec::new(),
    };
    Ok((0..m)
        .permutations(m)
        .filter(|seq| {
            perms.iter().all(|p| {
                let image: Vec<usize> = seq.iter().map(|&e| p[e]).collect();
                *seq <= image
            })
        })
        .collect())
}

fn outcomes_at(
    g: &EdgeOrderedGraph,
    orderings: &[Vec<usize>],
    k: Color,
    opts: &StrengthOptions,
) -> Result<Vec<SearchOutcome<Vec<Color>>>> {
    let run = |seq: &Vec<usize>| {
        let h = g.clone().with_order(seq)?;
        feasible_for_ordering(&h, k, opts.budget)
    };
    if opts.threads <= 1 {
        return orderings.iter().map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .expect("thread pool");
    pool.install(|| orderings.par_iter().map(run).collect())
}

/// Smallest `k <= k_max` for which some ordering admits a distinguishing
/// `k`-coloring.
pub fn specific_strength(g: &EdgeOrderedGraph, opts: &StrengthOptions) -> Result<StrengthReport> {
    check_strength_input(g)?;
    let orderings = candidate_orderings(g, opts)?;
    for k in 1..=opts.k_max {
        let outcomes = outcomes_at(g, &orderings, k, opts)?;
        if let Some((seq, out)) = orderings
            .iter()
            .zip(&outcomes)
            .find(|(_, o)| o.status == Status::Feasible)
        {
            return Ok(StrengthReport {
                value: Some(k),
                orderings_considered: orderings.len(),
                witness: Some(OrderedWitness {
                    ordering: seq.clone(),
                    colors: out.witness.clone().expect("feasible has a witness"),
                }),
                blocking_ordering: None,
            });
        }
        if outcomes.iter().any(|o| o.status == Status::Unknown) {
            break;
        }
    }
    Ok(StrengthReport {
        value: None,
        orderings_considered: orderings.len(),
        witness: None,
        blocking_ordering: None,
    })
}

/// Smallest `k <= k_max` for which every ordering admits a distinguishing
/// `k`-coloring.
pub fn general_strength(g: &EdgeOrderedGraph, opts: &StrengthOptions) -> Result<StrengthReport> {
    check_strength_input(g)?;
    let orderings = candidate_orderings(g, opts)?;
    let mut blocking = None;
    for k in 1..=opts.k_max {
        let outcomes = outcomes_at(g, &orderings, k, opts)?;
        if let Some(i) = outcomes.iter().position(|o| o.status == Status::Infeasible) {
            blocking = Some(orderings[i].clone());
            continue;
        }
        let value = outcomes
            .iter()
            .all(|o| o.status == Status::Feasible)
            .then_some(k);
        return Ok(StrengthReport {
            value,
            orderings_considered: orderings.len(),
            witness: None,
            blocking_ordering: if value.is_some() { blocking } else { None },
        });
    }
    Ok(StrengthReport {
        value: None,
        orderings_considered: orderings.len(),
        witness: None,
        blocking_ordering: None,
    })
}

/// `H_2` with vertices labeled by coordinates (coordinate 1 in bit 0) and
/// edges in the order `00-01`, `00-10`, `10-11`, `01-11`.
pub fn h2_claim_graph() -> EdgeOrderedGraph {
    // "00" = 0, "10" = 1, "01" = 2, "11" = 3
    EdgeOrderedGraph::new(4, vec![(0, 2), (0, 1), (1, 3), (2, 3)]).expect("valid graph")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H2Check {
    /// Feasible when some two-coloring distinguishes every vertex.
    pub status: Status,
    pub colorings_checked: usize,
    pub distinguishing: Vec<Vec<Color>>,
    /// True when the enumeration confirms that no such two-coloring exists.
    pub agrees_with_claim: bool,
}

/// Enumerate all sixteen two-colorings of [`h2_claim_graph`].
pub fn h2_claim_check() -> H2Check {
    let g = h2_claim_graph();
    let m = g.edges().len();
    let mut distinguishing = Vec::new();
    let mut checked = 0;
    for code in 0..1u32 << m {
        let colors: Vec<Color> = (0..m).map(|e| (code >> e & 1) as Color + 1).collect();
        checked += 1;
        if palettes_distinct(&g, &colors) {
            distinguishing.push(colors);
        }
    }
    let status = if distinguishing.is_empty() {
        Status::Infeasible
    } else {
        Status::Feasible
    };
    H2Check {
        status,
        colorings_checked: checked,
        agrees_with_claim: status == Status::Infeasible,
        distinguishing,
    }
}
