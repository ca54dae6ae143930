use std::collections::HashSet;

use crate::error::{domain, range, Error, Result};
use crate::hypercube::Hypercube;

/// A simple graph whose edges carry a global order `1..=|E|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrderedGraph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    /// `rank[e]` is the global index of edge `e`, starting at 1.
    rank: Vec<usize>,
}

impl EdgeOrderedGraph {
    /// Edges are ordered as listed.
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for &(u, v) in &edges {
            if u >= num_vertices || v >= num_vertices {
                return domain(format!(
                    "edge {u}-{v} uses a vertex outside 0..{num_vertices}"
                ));
            }
            if u == v {
                return domain(format!("loop at vertex {u}"));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return domain(format!("edge {u}-{v} appears twice"));
            }
        }
        let rank = (1..=edges.len()).collect();
        Ok(EdgeOrderedGraph {
            num_vertices,
            edges,
            rank,
        })
    }

    /// Reorder so that `sequence[j]` (an edge position) gets global index
    /// `j + 1`.
    pub fn with_order(mut self, sequence: &[usize]) -> Result<Self> {
        let m = self.edges.len();
        if sequence.len() != m {
            return domain(format!(
                "ordering lists {} edges, graph has {m}",
                sequence.len()
            ));
        }
        let mut rank = vec![0; m];
        for (j, &e) in sequence.iter().enumerate() {
            if e >= m || rank[e] != 0 {
                return domain(format!(
                    "ordering {sequence:?} is not a permutation of 0..{m}"
                ));
            }
            rank[e] = j + 1;
        }
        self.rank = rank;
        Ok(self)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn rank(&self, e: usize) -> usize {
        self.rank[e]
    }

    /// Edge positions listed by increasing global index.
    pub fn order_sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; self.edges.len()];
        for (e, &r) in self.rank.iter().enumerate() {
            seq[r - 1] = e;
        }
        seq
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.num_vertices)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    /// Incident edges of `v` by increasing global index.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        let mut es: Vec<usize> = (0..self.edges.len())
            .filter(|&e| self.edges[e].0 == v || self.edges[e].1 == v)
            .collect();
        es.sort_by_key(|&e| self.rank[e]);
        es
    }

    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices)
            .filter(|&v| self.degree(v) == 0)
            .collect()
    }

    /// An edge both of whose ends have degree one, if any.
    pub fn k2_component(&self) -> Option<usize> {
        (0..self.edges.len()).find(|&e| {
            let (u, v) = self.edges[e];
            self.degree(u) == 1 && self.degree(v) == 1
        })
    }
}

/// `H_n` with edges numbered block by block: every dimension-1 edge first,
/// then dimension 2, and so on, each block in [`EdgeIndex`] order.
///
/// [`EdgeIndex`]: crate::EdgeIndex
pub fn hypercube_ordering(n: u32) -> Result<EdgeOrderedGraph> {
    if !(1..=10).contains(&n) {
        return range(format!(
            "explicit hypercube graphs need 1 <= n <= 10, got {n}"
        ));
    }
    let cube = Hypercube::new(n)?;
    let edges = cube
        .edge_refs()
        .map(|e| {
            let (u, v) = e.endpoints();
            (u.index(), v.index())
        })
        .collect();
    EdgeOrderedGraph::new(cube.vertex_count(), edges)
}

/// Parse the edge-list format.
///
/// ```text
/// # comment
/// 0 1
/// 1 2
/// order: 1 0
/// ```
///
/// Each data line is a pair of 0-based vertex ids. The optional `order:`
/// line lists edge positions (0-based, in file order) by increasing global
/// index; without it edges are ordered as listed. The vertex count is one
/// more than the largest id.
pub fn parse_edge_list(text: &str) -> Result<EdgeOrderedGraph> {
    let mut edges = Vec::new();
    let mut order: Option<Vec<usize>> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| Error::Format(format!("line {}: {what}: {raw:?}", lineno + 1));
        if let Some(rest) = line.strip_prefix("order:") {
            if order.is_some() {
                return Err(bad("second order line"));
            }
            let seq = rest
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| bad("bad edge position")))
                .collect::<Result<Vec<_>>>()?;
            order = Some(seq);
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| bad("expected two vertex ids"))
            })
            .collect::<Result<Vec<_>>>()?;
        match nums[..] {
            [u, v] => edges.push((u, v)),
            _ => return Err(bad("expected two vertex ids")),
        }
    }
    if edges.is_empty() {
        return Err(Error::Format("graph file has no edges".into()));
    }
    let num_vertices = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0) + 1;
    let g = EdgeOrderedGraph::new(num_vertices, edges)?;
    match order {
        Some(seq) => g.with_order(&seq),
        None => Ok(g),
    }
}

/// Inverse of [`parse_edge_list`].
pub fn format_edge_list(g: &EdgeOrderedGraph) -> String {
    let mut out = String::new();
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    let seq: Vec<String> = g.order_sequence().iter().map(|e| e.to_string()).collect();
    out.push_str(&format!("order: {}\n", seq.join(" ")));
    out
}
