use std::collections::{HashMap, HashSet};

use super::{Backtrack, Control, Frontier, Step};
use crate::hypercube::{Color, Coloring, Hypercube, Mode};

/// Branches on edge colors in dimension-major order.
///
/// Vertices become complete while the last dimension block is colored; a
/// completed palette that repeats an earlier one fails immediately. After
/// each earlier block the vertices are grouped by palette prefix, and a
/// group larger than the number of possible suffixes fails too.
#[derive(Clone)]
pub(crate) struct EdgeSearch {
    cube: Hypercube,
    mode: Mode,
    k: Color,
    symmetry: bool,
    colors: Vec<Color>,
    /// Colors present at each vertex (proper mode).
    used: Vec<u64>,
    max_used: Color,
    finished: HashSet<u64>,
}

impl EdgeSearch {
    pub(crate) fn new(cube: Hypercube, mode: Mode, k: Color, symmetry: bool) -> Self {
        EdgeSearch {
            cube,
            mode,
            k,
            symmetry,
            colors: vec![0; cube.edge_count()],
            used: vec![0; cube.vertex_count()],
            max_used: 0,
            finished: HashSet::new(),
        }
    }

    /// Palette of `v` restricted to dimensions `1..=dims`, packed six bits
    /// per entry.
    fn code(&self, v: u32, dims: u32) -> u64 {
        (1..=dims).fold(0u64, |acc, d| {
            acc << 6 | self.colors[self.cube.edge_index_unchecked(v, d).0] as u64
        })
    }

    /// How many completions a vertex with a fixed `dims`-long prefix has.
    fn suffix_capacity(&self, dims: u32) -> u64 {
        let rest = self.cube.n() - dims;
        let k = self.k as u64;
        match self.mode {
            Mode::General => (0..rest).fold(1u64, |acc, _| acc.saturating_mul(k)),
            Mode::Proper => (0..rest as u64).fold(1u64, |acc, i| {
                acc.saturating_mul(k.saturating_sub(dims as u64 + i))
            }),
        }
    }

    fn prefixes_fit(&self, dims: u32) -> bool {
        let cap = self.suffix_capacity(dims);
        if cap >= self.cube.vertex_count() as u64 {
            return true;
        }
        let mut groups: HashMap<u64, u64> = HashMap::new();
        for v in 0..self.cube.vertex_count() as u32 {
            let g = groups.entry(self.code(v, dims)).or_insert(0);
            *g += 1;
            if *g > cap {
                return false;
            }
        }
        true
    }
}

impl Backtrack for EdgeSearch {
    type Witness = Coloring;

    fn split_depth(&self) -> usize {
        self.colors.len().min(8)
    }

    fn dfs(
        &mut self,
        pos: usize,
        ctl: &Control,
        frontier: &mut Option<Frontier<Self>>,
    ) -> Step<Coloring> {
        if pos == self.colors.len() {
            let c = Coloring::new(self.cube, self.k, self.mode, self.colors.clone())
                .expect("complete assignment");
            return Step::Found(c);
        }
        if Frontier::park(frontier, pos, self) {
            return Step::Continue;
        }
        let n = self.cube.n();
        let half = self.cube.half();
        let edge = self.cube.edge_from_index_unchecked(pos);
        let (u, w) = edge.endpoints();
        let (u, w) = (u.0, w.0);
        let top = if self.symmetry {
            self.k.min(self.max_used + 1)
        } else {
            self.k
        };
        for c in 1..=top {
            let bit = 1u64 << (c - 1);
            if self.mode == Mode::Proper
                && (self.used[u as usize] | self.used[w as usize]) & bit != 0
            {
                continue;
            }
            if !ctl.tick() {
                return Step::Abort;
            }
            self.colors[pos] = c;
            let proper = self.mode == Mode::Proper;
            if proper {
                self.used[u as usize] |= bit;
                self.used[w as usize] |= bit;
            }
            let prev_max = self.max_used;
            self.max_used = self.max_used.max(c);

            let mut ok = true;
            let mut inserted = Vec::with_capacity(2);
            if edge.dimension == n {
                for v in [u, w] {
                    let code = self.code(v, n);
                    if self.finished.insert(code) {
                        inserted.push(code);
                    } else {
                        ok = false;
                        break;
                    }
                }
            } else if (pos + 1).is_multiple_of(half) {
                ok = self.prefixes_fit(edge.dimension);
            }

            if ok {
                match self.dfs(pos + 1, ctl, frontier) {
                    Step::Continue => {}
                    other => return other,
                }
            }

            for code in inserted {
                self.finished.remove(&code);
            }
            self.max_used = prev_max;
            if proper {
                self.used[u as usize] &= !bit;
                self.used[w as usize] &= !bit;
            }
            self.colors[pos] = 0;
        }
        Step::Continue
    }
}
