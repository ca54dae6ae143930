//! Proper distinguishing colorings: fixed tables for `n <= 4`, the
//! five-color coloring of `H_5`, and the induction to every `n >= 5`.

use std::collections::VecDeque;
use std::sync::{Arc, OnceLock};

use crate::error::{domain, range, Result};
use crate::hypercube::{Color, Coloring, Hypercube, Mode, VertexId, MAX_DIMENSION};
use crate::search::{permutation_search_with_filter, SearchOptions};

/// Build a coloring from `(u, v, color)` triples covering every edge once.
fn from_edges(n: u32, k: Color, edges: &[(u32, u32, Color)]) -> Coloring {
    let cube = Hypercube::new(n).expect("small n");
    let mut colors = vec![0; cube.edge_count()];
    for &(u, v, c) in edges {
        let diff = u ^ v;
        assert_eq!(diff.count_ones(), 1, "{u}-{v} is not an edge");
        let idx = cube
            .edge_index(VertexId(u), diff.trailing_zeros() + 1)
            .expect("in range");
        assert_eq!(colors[idx.0], 0, "edge {u}-{v} listed twice");
        colors[idx.0] = c;
    }
    Coloring::new(cube, k, Mode::Proper, colors).expect("table covers every edge")
}

// Square drawings of H_3: outer corners x1..x4 counter-clockwise from the
// bottom left, inner corners y1..y4 likewise. Horizontal edges are
// dimension 1, vertical dimension 2, diagonals dimension 3.
const X1: u32 = 0;
const X2: u32 = 1;
const X3: u32 = 3;
const X4: u32 = 2;
const Y1: u32 = 4;
const Y2: u32 = 5;
const Y3: u32 = 7;
const Y4: u32 = 6;

/// The twelve cube edges in a fixed order: bottom, top, left, right of the
/// outer square, the same for the inner square, then the four diagonals
/// x1y1, x2y2, x3y3, x4y4.
const CUBE_EDGES: [(u32, u32); 12] = [
    (X1, X2),
    (X4, X3),
    (X1, X4),
    (X2, X3),
    (Y1, Y2),
    (Y4, Y3),
    (Y1, Y4),
    (Y2, Y3),
    (X1, Y1),
    (X2, Y2),
    (X3, Y3),
    (X4, Y4),
];

fn drawn_cube(offset: u32, colors: [Color; 12]) -> impl Iterator<Item = (u32, u32, Color)> {
    CUBE_EDGES
        .into_iter()
        .zip(colors)
        .map(move |((u, v), c)| (u + offset, v + offset, c))
}

fn table_h2() -> Coloring {
    // dimension-1 edges take colors 3 and 4, dimension-2 edges 1 and 2
    from_edges(2, 4, &[(0, 1, 3), (2, 3, 4), (0, 2, 1), (1, 3, 2)])
}

fn table_h3() -> Coloring {
    let edges: Vec<_> = drawn_cube(0, [1, 1, 3, 2, 3, 4, 1, 2, 4, 4, 3, 2]).collect();
    from_edges(3, 4, &edges)
}

fn table_h4() -> Coloring {
    let mut edges: Vec<_> = drawn_cube(0, [3, 1, 4, 2, 4, 2, 1, 3, 2, 1, 4, 3])
        .chain(drawn_cube(8, [2, 4, 3, 1, 3, 1, 4, 2, 1, 4, 3, 2]))
        .collect();
    edges.extend((0..8).map(|v| (v, v + 8, 5)));
    from_edges(4, 5, &edges)
}

/// Proper distinguishing colorings for the small cubes: four colors for
/// `n = 2, 3`, five for `n = 4`.
pub fn proper_table(n: u32) -> Result<Coloring> {
    match n {
        2 => Ok(table_h2()),
        3 => Ok(table_h3()),
        4 => Ok(table_h4()),
        _ => range(format!("proper tables exist for n = 2, 3, 4; got {n}")),
    }
}

/// The 32 palettes of the five-color coloring of `H_5`, position `i` being
/// the color of the dimension-`i` edge.
pub const H5_PALETTES: [&str; 32] = [
    "45321", "35421", "54321", "53421", "43521", "35124", "54231", "52134", //
    "24351", "23451", "42351", "32451", "24531", "25134", "43251", "32154", //
    "54123", "43125", "52143", "32145", "54132", "45231", "53142", "32541", //
    "25143", "35142", "24153", "43152", "23145", "35241", "24135", "42531",
];

/// How [`h5_base`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H5Provenance {
    /// The listed palettes were placed on vertices consistently.
    Reconstructed,
    /// No consistent placement exists; a searched coloring with the same
    /// color-1 structure is used instead.
    Searched,
}

/// Place the given palettes on the vertices of `H_n` so that both ends of
/// every dimension-`i` edge agree in position `i`. Vertex 0 receives the
/// first palette; vertices are filled in breadth-first order and candidates
/// tried in list order.
pub fn reconstruct_from_palettes(n: u32, palettes: &[Vec<Color>]) -> Option<Coloring> {
    let cube = Hypercube::new(n).ok()?;
    let count = cube.vertex_count();
    if palettes.len() != count || palettes.iter().any(|p| p.len() != n as usize) {
        return None;
    }
    let k = palettes.iter().flatten().copied().max()?;

    let mut order = Vec::with_capacity(count);
    let mut seen = vec![false; count];
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

    fn place(
        pos: usize,
        n: u32,
        order: &[u32],
        palettes: &[Vec<Color>],
        at: &mut [Option<usize>],
        taken: &mut [bool],
    ) -> bool {
        let Some(&v) = order.get(pos) else {
            return true;
        };
        let choices = if pos == 0 { 0..1 } else { 0..palettes.len() };
        for j in choices {
            if taken[j] {
                continue;
            }
            let fits = (0..n as usize).all(|d| match at[(v ^ (1 << d)) as usize] {
                Some(w) => palettes[w][d] == palettes[j][d],
                None => true,
            });
            if !fits {
                continue;
            }
            at[v as usize] = Some(j);
            taken[j] = true;
            if place(pos + 1, n, order, palettes, at, taken) {
                return true;
            }
            taken[j] = false;
            at[v as usize] = None;
        }
        false
    }

    let mut at = vec![None; count];
    let mut taken = vec![false; count];
    if !place(0, n, &order, palettes, &mut at, &mut taken) {
        return None;
    }
    let mode = Mode::Proper;
    Coloring::from_fn(cube, k, mode, |e| {
        palettes[at[e.vertex.index()].expect("all placed")][e.dimension as usize - 1]
    })
    .ok()
}

fn parse_palettes(list: &[&str]) -> Vec<Vec<Color>> {
    list.iter()
        .map(|s| s.bytes().map(|b| b - b'0').collect())
        .collect()
}

/// Any proper five-coloring of `H_5` whose palettes carry color 1 at
/// position 3 or 5, found by permutation search.
pub fn search_h5_substitute() -> Option<Coloring> {
    let filter = Arc::new(|p: &[Color]| p[2] == 1 || p[4] == 1);
    let opts = SearchOptions {
        symmetry_breaking: false,
        ..Default::default()
    };
    permutation_search_with_filter(5, filter, &opts)
        .ok()?
        .witness
}

fn h5_cached() -> &'static (Coloring, H5Provenance) {
    static H5: OnceLock<(Coloring, H5Provenance)> = OnceLock::new();
    H5.get_or_init(
        || match reconstruct_from_palettes(5, &parse_palettes(&H5_PALETTES)) {
            Some(c) => (c, H5Provenance::Reconstructed),
            None => (
                search_h5_substitute().expect("a P1-P4 coloring of H_5 exists"),
                H5Provenance::Searched,
            ),
        },
    )
}

/// Proper five-coloring of `H_5` with distinct palettes in which color 1
/// occurs only on dimensions 3 and 5, once at every vertex.
pub fn h5_base() -> Coloring {
    h5_cached().0.clone()
}

pub fn h5_provenance() -> H5Provenance {
    h5_cached().1
}

/// Move every edge of dimension `i` to dimension `perm[i - 1]`, carrying
/// vertex coordinates along the same map.
pub fn dimension_permuted(c: &Coloring, perm: &[u32]) -> Result<Coloring> {
    let n = c.n();
    if perm.len() != n as usize {
        return domain(format!("permutation of 1..={n} must have {n} entries"));
    }
    let mut seen = vec![false; n as usize];
    for &p in perm {
        if p == 0 || p > n || std::mem::replace(&mut seen[p as usize - 1], true) {
            return domain(format!("{perm:?} is not a permutation of 1..={n}"));
        }
    }
    let cube = c.cube();
    let map_vertex = |v: u32| {
        (0..n).fold(0u32, |acc, i| {
            acc | ((v >> i) & 1) << (perm[i as usize] - 1)
        })
    };
    let mut colors = vec![0; cube.edge_count()];
    for (idx, e) in cube.edge_refs().enumerate() {
        let target =
            cube.edge_index_unchecked(map_vertex(e.vertex.0), perm[e.dimension as usize - 1]);
        colors[target.0] = c.colors()[idx];
    }
    Coloring::new(cube, c.k(), c.mode(), colors)
}

/// Exchange colors `a` and `b` everywhere.
pub fn color_swapped(c: &Coloring, a: Color, b: Color) -> Result<Coloring> {
    for x in [a, b] {
        if x == 0 || x > c.k() {
            return domain(format!("color {x} not in 1..={}", c.k()));
        }
    }
    let colors = c
        .colors()
        .iter()
        .map(|&x| {
            if x == a {
                b
            } else if x == b {
                a
            } else {
                x
            }
        })
        .collect();
    Coloring::new(c.cube(), c.k(), c.mode(), colors)
}

/// Join two colorings of `H_{n-1}` along a new dimension whose edges all
/// get `matching_color`.
fn stack(lower: &Coloring, upper: &Coloring, matching_color: Color) -> Result<Coloring> {
    let cube = Hypercube::new(lower.n() + 1)?;
    let half_prev = lower.cube().half();
    let mut colors = Vec::with_capacity(cube.edge_count());
    for (lo, up) in lower
        .colors()
        .chunks_exact(half_prev)
        .zip(upper.colors().chunks_exact(half_prev))
    {
        colors.extend_from_slice(lo);
        colors.extend_from_slice(up);
    }
    colors.resize(cube.edge_count(), matching_color);
    Coloring::new(cube, matching_color, Mode::Proper, colors)
}

/// Proper distinguishing coloring of `H_n` with exactly `n` colors,
/// `5 <= n <= 24`.
pub fn proper_n_coloring(n: u32) -> Result<Coloring> {
    if !(5..=MAX_DIMENSION).contains(&n) {
        return range(format!(
            "proper n-coloring needs 5 <= n <= {MAX_DIMENSION}, got {n} (use proper_table below 5)"
        ));
    }
    let base = h5_base();
    if n == 5 {
        return Ok(base);
    }
    let shifted = dimension_permuted(&base, &[2, 3, 4, 5, 1])?;
    let mut c = stack(&base, &shifted, 6)?;
    for m in 7..=n {
        let prev_top = (m - 1) as Color;
        let upper = color_swapped(&c, prev_top, prev_top - 1)?;
        c = stack(&c, &upper, m as Color)?;
    }
    Ok(c)
}
