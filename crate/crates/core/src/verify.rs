//! Property checks for hypercube colorings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{domain, Result};
use crate::hypercube::{Color, Coloring, EdgeRef, Hypercube, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// Two vertices with equal palettes.
    Vertices(VertexId, VertexId),
    /// Two edges sharing an endpoint with equal colors.
    Edges(EdgeRef, EdgeRef),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Vertices(u, v) => write!(f, "({u}, {v})"),
            Witness::Edges(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

/// `ok` exactly when there is no witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }

    fn pass() -> Self {
        Verdict { witness: None }
    }

    fn fail(w: Witness) -> Self {
        Verdict { witness: Some(w) }
    }
}

/// First pair of equal-colored edges met when scanning vertices in
/// increasing order and dimension pairs `i < j` lexicographically.
pub fn is_proper(c: &Coloring) -> Verdict {
    let cube = c.cube();
    let n = c.n();
    for v in cube.vertices() {
        for i in 1..=n {
            let ci = c.color_at(v, i);
            for j in i + 1..=n {
                if ci == c.color_at(v, j) {
                    let e = |d| cube.edge(v, d).expect("in range");
                    return Verdict::fail(Witness::Edges(e(i), e(j)));
                }
            }
        }
    }
    Verdict::pass()
}

/// Vertex ids sorted by (palette, id); equal palettes end up adjacent.
fn sorted_by_palette(c: &Coloring) -> (Vec<Color>, Vec<u32>) {
    let n = c.n() as usize;
    let table = c.palette_table();
    let mut order: Vec<u32> = (0..c.cube().vertex_count() as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        let pa = &table[a as usize * n..(a as usize + 1) * n];
        let pb = &table[b as usize * n..(b as usize + 1) * n];
        pa.cmp(pb).then(a.cmp(&b))
    });
    (table, order)
}

/// Groups of two or more vertices sharing a palette, each sorted, groups
/// ordered by their smallest member.
pub fn palette_collisions(c: &Coloring) -> Vec<Vec<VertexId>> {
    let n = c.n() as usize;
    let (table, order) = sorted_by_palette(c);
    let row = |v: u32| &table[v as usize * n..(v as usize + 1) * n];
    let mut groups: Vec<Vec<VertexId>> = order
        .chunk_by(|&a, &b| row(a) == row(b))
        .filter(|g| g.len() > 1)
        .map(|g| g.iter().map(|&v| VertexId(v)).collect())
        .collect();
    groups.sort();
    groups
}

/// On failure the witness is the lexicographically smallest colliding pair.
pub fn distinguishes(c: &Coloring) -> Verdict {
    let n = c.n() as usize;
    let (table, order) = sorted_by_palette(c);
    let row = |v: u32| &table[v as usize * n..(v as usize + 1) * n];
    let best = order
        .windows(2)
        .filter(|w| row(w[0]) == row(w[1]))
        .map(|w| (w[0], w[1]))
        // inside a run of equal palettes ids ascend, so the first window of
        // each run holds that run's smallest pair
        .min();
    match best {
        Some((u, v)) => Verdict::fail(Witness::Vertices(VertexId(u), VertexId(v))),
        None => Verdict::pass(),
    }
}

/// Every improper pair of edges, for verbose reports.
pub fn improper_pairs(c: &Coloring) -> Vec<(EdgeRef, EdgeRef)> {
    let cube = c.cube();
    let n = c.n();
    let mut out = Vec::new();
    for v in cube.vertices() {
        for i in 1..=n {
            for j in i + 1..=n {
                if c.color_at(v, i) == c.color_at(v, j) {
                    out.push((cube.edge(v, i).unwrap(), cube.edge(v, j).unwrap()));
                }
            }
        }
    }
    out
}

pub fn color_dimension_profile(c: &Coloring) -> BTreeMap<Color, BTreeSet<u32>> {
    let mut profile: BTreeMap<Color, BTreeSet<u32>> = BTreeMap::new();
    let half = c.cube().half();
    for (idx, &color) in c.colors().iter().enumerate() {
        profile
            .entry(color)
            .or_default()
            .insert((idx / half) as u32 + 1);
    }
    profile
}

/// Count of edges per `(dimension, color)`.
pub fn parallel_color_multiplicity(c: &Coloring) -> BTreeMap<(u32, Color), usize> {
    let mut counts = BTreeMap::new();
    let half = c.cube().half();
    for (idx, &color) in c.colors().iter().enumerate() {
        *counts.entry(((idx / half) as u32 + 1, color)).or_insert(0) += 1;
    }
    counts
}

/// True when every palette is a permutation of `1..=n`. Needs `k == n`.
pub fn palette_permutation_check(c: &Coloring) -> Result<bool> {
    if c.k() as u32 != c.n() {
        return domain(format!(
            "permutation check needs k = n, got k = {} and n = {}",
            c.k(),
            c.n()
        ));
    }
    let full: u64 = (1u64 << c.n()) - 1;
    Ok(c.cube().vertices().all(|v| {
        let mask = c.palette(v).iter().fold(0u64, |m, &x| m | 1 << (x - 1));
        mask == full
    }))
}

/// `min(dist(x, x'), dist(x, y'))` for parallel edges `xy` and `x'y'`.
pub fn parallel_edge_distance(cube: Hypercube, e1: EdgeRef, e2: EdgeRef) -> Result<u32> {
    if e1.dimension != e2.dimension {
        return domain(format!(
            "edges have dimensions {} and {}",
            e1.dimension, e2.dimension
        ));
    }
    let a = cube.edge(e1.vertex, e1.dimension)?;
    let b = cube.edge(e2.vertex, e2.dimension)?;
    if a == b {
        return domain("distance needs two different edges");
    }
    let (x, _) = a.endpoints();
    let (x2, y2) = b.endpoints();
    Ok((x.0 ^ x2.0).count_ones().min((x.0 ^ y2.0).count_ones()))
}
