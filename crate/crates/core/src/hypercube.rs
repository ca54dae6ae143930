//! Bit-level model of the hypercube `H_n`.
//!
//! A vertex is an `n`-bit integer; coordinate `i` (1-based) lives in bit
//! `i - 1`. An edge of dimension `i` joins two vertices that differ only in
//! that bit, and is named canonically by its endpoint with the bit cleared.
//! Edges are laid out dimension-major: all `2^(n-1)` edges of dimension 1,
//! then those of dimension 2, and so on.

use std::fmt;
use std::ops::Deref;

use crate::error::{domain, range, Result};

/// Colors are `1..=k`.
pub type Color = u8;

/// Largest dimension the library will materialize.
pub const MAX_DIMENSION: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hypercube {
    n: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Value of coordinate `i` (1-based).
    pub fn coordinate(self, i: u32) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An edge named by its canonical endpoint (the one with bit `dimension - 1`
/// cleared) and its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub vertex: VertexId,
    pub dimension: u32,
}

impl EdgeRef {
    pub fn endpoints(self) -> (VertexId, VertexId) {
        (
            self.vertex,
            VertexId(self.vertex.0 ^ (1 << (self.dimension - 1))),
        )
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (u, v) = self.endpoints();
        write!(f, "{u}-{v} (dim {})", self.dimension)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeIndex(pub usize);

/// Drop bit `dim - 1` of `v` and shift the higher bits down by one.
#[inline]
pub(crate) fn squeeze(v: u32, dim: u32) -> u32 {
    let low = v & ((1 << (dim - 1)) - 1);
    let high = v >> dim;
    low | (high << (dim - 1))
}

/// Inverse of [`squeeze`], re-inserting a zero bit at position `dim - 1`.
#[inline]
pub(crate) fn unsqueeze(s: u32, dim: u32) -> u32 {
    let low = s & ((1 << (dim - 1)) - 1);
    let high = s >> (dim - 1);
    low | (high << dim)
}

impl Hypercube {
    pub fn new(n: u32) -> Result<Self> {
        if !(1..=MAX_DIMENSION).contains(&n) {
            return range(format!("dimension {n} not in 1..={MAX_DIMENSION}"));
        }
        Ok(Hypercube { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        1usize << self.n
    }

    pub fn edge_count(&self) -> usize {
        self.n as usize * self.half()
    }

    /// Number of edges in one dimension class, `2^(n-1)`.
    pub fn half(&self) -> usize {
        1usize << (self.n - 1)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count() as u32).map(VertexId)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() >= self.vertex_count() {
            return range(format!("vertex {v} not in H_{}", self.n));
        }
        Ok(())
    }

    pub fn check_dimension(&self, dim: u32) -> Result<()> {
        if !(1..=self.n).contains(&dim) {
            return range(format!("dimension index {dim} not in 1..={}", self.n));
        }
        Ok(())
    }

    /// Canonical reference to the dimension-`dim` edge at `v`; `v` may be
    /// either endpoint.
    pub fn edge(&self, v: VertexId, dim: u32) -> Result<EdgeRef> {
        self.check_vertex(v)?;
        self.check_dimension(dim)?;
        Ok(EdgeRef {
            vertex: VertexId(v.0 & !(1 << (dim - 1))),
            dimension: dim,
        })
    }

    pub fn edge_index(&self, v: VertexId, dim: u32) -> Result<EdgeIndex> {
        self.check_vertex(v)?;
        self.check_dimension(dim)?;
        Ok(self.edge_index_unchecked(v.0, dim))
    }

    #[inline]
    pub(crate) fn edge_index_unchecked(&self, v: u32, dim: u32) -> EdgeIndex {
        EdgeIndex((dim as usize - 1) * self.half() + squeeze(v, dim) as usize)
    }

    pub fn edge_from_index(&self, idx: EdgeIndex) -> Result<EdgeRef> {
        if idx.0 >= self.edge_count() {
            return range(format!(
                "edge index {} not below {}",
                idx.0,
                self.edge_count()
            ));
        }
        Ok(self.edge_from_index_unchecked(idx.0))
    }

    #[inline]
    pub(crate) fn edge_from_index_unchecked(&self, idx: usize) -> EdgeRef {
        let dim = (idx / self.half()) as u32 + 1;
        let s = (idx % self.half()) as u32;
        EdgeRef {
            vertex: VertexId(unsqueeze(s, dim)),
            dimension: dim,
        }
    }

    pub fn edge_refs(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        (0..self.edge_count()).map(|i| self.edge_from_index_unchecked(i))
    }

    /// Entry `i - 1` is the neighbor across dimension `i`.
    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>> {
        self.check_vertex(v)?;
        Ok((0..self.n).map(|b| VertexId(v.0 ^ (1 << b))).collect())
    }
}

pub fn make_hypercube(n: u32) -> Result<Hypercube> {
    Hypercube::new(n)
}

/// The colors seen from a vertex, ordered by edge dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Palette(Vec<Color>);

impl Palette {
    pub fn new(entries: Vec<Color>) -> Self {
        Palette(entries)
    }

    pub fn entries(&self) -> &[Color] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Color> {
        self.0
    }
}

impl Deref for Palette {
    type Target = [Color];

    fn deref(&self) -> &[Color] {
        &self.0
    }
}

impl From<Vec<Color>> for Palette {
    fn from(v: Vec<Color>) -> Self {
        Palette(v)
    }
}

impl fmt::Display for Palette {
    /// Single-digit colors print as a bare digit string (`45321`), larger
    /// ones comma separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&c| c < 10) {
            for c in &self.0 {
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            write!(f, "(")?;
            for (i, c) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    }
}

/// Whether a coloring is only required to distinguish, or also claims to
/// be proper.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    General,
    Proper,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::General => "general",
            Mode::Proper => "proper",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Mode::General),
            "proper" => Ok(Mode::Proper),
            other => domain(format!("unknown mode {other:?}")),
        }
    }
}

/// A complete edge coloring of `H_n` with colors in `1..=k`, stored by
/// [`EdgeIndex`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    cube: Hypercube,
    k: Color,
    mode: Mode,
    colors: Vec<Color>,
}

impl Coloring {
    pub fn new(cube: Hypercube, k: Color, mode: Mode, colors: Vec<Color>) -> Result<Self> {
        if k == 0 {
            return domain("a coloring needs at least one color");
        }
        if colors.len() != cube.edge_count() {
            return domain(format!(
                "H_{} has {} edges, got {} colors",
                cube.n(),
                cube.edge_count(),
                colors.len()
            ));
        }
        if let Some((i, &c)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > k) {
            return domain(format!("edge {i} has color {c} outside 1..={k}"));
        }
        Ok(Coloring {
            cube,
            k,
            mode,
            colors,
        })
    }

    pub fn from_fn(
        cube: Hypercube,
        k: Color,
        mode: Mode,
        mut f: impl FnMut(EdgeRef) -> Color,
    ) -> Result<Self> {
        let colors = cube.edge_refs().map(&mut f).collect();
        Coloring::new(cube, k, mode, colors)
    }

    pub fn monochromatic(cube: Hypercube, color: Color) -> Self {
        Coloring {
            cube,
            k: color.max(1),
            mode: Mode::General,
            colors: vec![color.max(1); cube.edge_count()],
        }
    }

    pub fn cube(&self) -> Hypercube {
        self.cube
    }

    pub fn n(&self) -> u32 {
        self.cube.n()
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn into_colors(self) -> Vec<Color> {
        self.colors
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    /// Raise the declared color count; existing colors are untouched.
    pub fn with_k(mut self, k: Color) -> Result<Self> {
        if k < self.colors.iter().copied().max().unwrap_or(1) {
            return domain(format!("k = {k} is below a color in use"));
        }
        self.k = k;
        Ok(self)
    }

    pub fn color(&self, idx: EdgeIndex) -> Color {
        self.colors[idx.0]
    }

    pub fn color_at(&self, v: VertexId, dim: u32) -> Color {
        self.colors[self.cube.edge_index_unchecked(v.0, dim).0]
    }

    pub fn palette(&self, v: VertexId) -> Palette {
        Palette(self.palette_iter(v.0).collect())
    }

    pub(crate) fn palette_iter(&self, v: u32) -> impl Iterator<Item = Color> + '_ {
        (1..=self.n()).map(move |d| self.colors[self.cube.edge_index_unchecked(v, d).0])
    }

    /// All palettes, indexed by vertex.
    pub fn palettes(&self) -> Vec<Palette> {
        self.cube.vertices().map(|v| self.palette(v)).collect()
    }

    /// Palettes packed row-major into one buffer of `2^n * n` colors.
    pub(crate) fn palette_table(&self) -> Vec<Color> {
        let n = self.n() as usize;
        let mut table = vec![0; self.cube.vertex_count() * n];
        for (v, row) in table.chunks_exact_mut(n).enumerate() {
            for (slot, c) in row.iter_mut().zip(self.palette_iter(v as u32)) {
                *slot = c;
            }
        }
        table
    }

    /// Apply a color bijection given as `sigma[c - 1] = image of c`.
    pub fn relabeled(&self, sigma: &[Color]) -> Result<Coloring> {
        let k = self.k as usize;
        if sigma.len() != k {
            return domain(format!("relabeling must list {k} images"));
        }
        let mut seen = vec![false; k];
        for &c in sigma {
            if c == 0 || c as usize > k || std::mem::replace(&mut seen[c as usize - 1], true) {
                return domain("relabeling is not a bijection on 1..=k");
            }
        }
        Ok(Coloring {
            colors: self.colors.iter().map(|&c| sigma[c as usize - 1]).collect(),
            ..self.clone()
        })
    }
}

pub fn palette(c: &Coloring, v: VertexId) -> Palette {
    c.palette(v)
}

pub fn all_palettes(c: &Coloring) -> Vec<Palette> {
    c.palettes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h2_two_coloring() -> Coloring {
        Coloring::new(
            Hypercube::new(2).unwrap(),
            2,
            Mode::General,
            vec![1, 2, 1, 2],
        )
        .unwrap()
    }

    #[test]
    fn descriptor_counts() {
        let h2 = make_hypercube(2).unwrap();
        assert_eq!((h2.vertex_count(), h2.edge_count()), (4, 4));
        let h5 = make_hypercube(5).unwrap();
        assert_eq!((h5.vertex_count(), h5.edge_count()), (32, 80));
        assert!(matches!(make_hypercube(25), Err(crate::Error::Range(_))));
        assert!(make_hypercube(0).is_err());
        assert!(make_hypercube(24).is_ok());
    }

    #[test]
    fn edge_index_examples() {
        let h2 = Hypercube::new(2).unwrap();
        let h3 = Hypercube::new(3).unwrap();
        assert_eq!(h2.edge_index(VertexId(0), 1).unwrap(), EdgeIndex(0));
        assert_eq!(h2.edge_index(VertexId(1), 2).unwrap(), EdgeIndex(3));
        assert_eq!(h3.edge_index(VertexId(5), 2).unwrap(), EdgeIndex(7));
        // the other endpoint names the same edge
        assert_eq!(h3.edge_index(VertexId(7), 2).unwrap(), EdgeIndex(7));
        assert!(h2.edge_index(VertexId(0), 3).is_err());
        assert!(h2.edge_index(VertexId(0), 0).is_err());
        assert!(h2.edge_index(VertexId(4), 1).is_err());
    }

    #[test]
    fn edge_from_index_examples() {
        let h2 = Hypercube::new(2).unwrap();
        let h3 = Hypercube::new(3).unwrap();
        let e = |v, d| EdgeRef {
            vertex: VertexId(v),
            dimension: d,
        };
        assert_eq!(h2.edge_from_index(EdgeIndex(0)).unwrap(), e(0, 1));
        assert_eq!(h2.edge_from_index(EdgeIndex(3)).unwrap(), e(1, 2));
        assert_eq!(h3.edge_from_index(EdgeIndex(7)).unwrap(), e(5, 2));
        assert!(h2.edge_from_index(EdgeIndex(4)).is_err());
    }

    #[test]
    fn index_bijection_exhaustive() {
        for n in 1..=10 {
            let cube = Hypercube::new(n).unwrap();
            let mut hit = vec![false; cube.edge_count()];
            for v in cube.vertices() {
                for d in 1..=n {
                    if v.coordinate(d) {
                        continue;
                    }
                    let idx = cube.edge_index(v, d).unwrap();
                    assert!(!std::mem::replace(&mut hit[idx.0], true));
                    let back = cube.edge_from_index(idx).unwrap();
                    assert_eq!(
                        back,
                        EdgeRef {
                            vertex: v,
                            dimension: d
                        }
                    );
                }
            }
            assert!(hit.into_iter().all(|h| h));
        }
    }

    #[test]
    fn neighbor_examples() {
        let h2 = Hypercube::new(2).unwrap();
        let h3 = Hypercube::new(3).unwrap();
        let ids = |v: Vec<VertexId>| v.into_iter().map(|x| x.0).collect::<Vec<_>>();
        assert_eq!(ids(h2.neighbors(VertexId(0)).unwrap()), [1, 2]);
        assert_eq!(ids(h3.neighbors(VertexId(7)).unwrap()), [6, 5, 3]);
        assert_eq!(ids(h2.neighbors(VertexId(3)).unwrap()), [2, 1]);
    }

    #[test]
    fn degree_exhaustive() {
        for n in 1..=10 {
            let cube = Hypercube::new(n).unwrap();
            for v in cube.vertices() {
                let mut nb = cube.neighbors(v).unwrap();
                assert_eq!(nb.len(), n as usize);
                assert!(nb.iter().all(|w| (w.0 ^ v.0).count_ones() == 1));
                nb.sort();
                nb.dedup();
                assert_eq!(nb.len(), n as usize);
            }
        }
    }

    #[test]
    fn h2_two_coloring_palettes() {
        let c = h2_two_coloring();
        assert_eq!(palette(&c, VertexId(0)).entries(), [1, 1]);
        assert_eq!(palette(&c, VertexId(2)).entries(), [2, 1]);
        let mut all: Vec<Vec<Color>> = all_palettes(&c)
            .into_iter()
            .map(Palette::into_inner)
            .collect();
        all.sort();
        assert_eq!(all, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
    }

    #[test]
    fn monochromatic_palettes() {
        let c = Coloring::monochromatic(Hypercube::new(3).unwrap(), 1);
        assert!(c.palettes().iter().all(|p| p.entries() == [1, 1, 1]));
        let c = Coloring::monochromatic(Hypercube::new(2).unwrap(), 1);
        let ps = c.palettes();
        assert_eq!(ps.len(), 4);
        assert!(ps.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn coloring_validation() {
        let h2 = Hypercube::new(2).unwrap();
        assert!(Coloring::new(h2, 2, Mode::General, vec![1, 2, 1]).is_err());
        assert!(Coloring::new(h2, 2, Mode::General, vec![1, 2, 3, 1]).is_err());
        assert!(Coloring::new(h2, 2, Mode::General, vec![0, 2, 1, 1]).is_err());
        assert!(Coloring::new(h2, 0, Mode::General, vec![]).is_err());
    }

    #[test]
    fn palette_display() {
        assert_eq!(Palette::new(vec![4, 5, 3, 2, 1]).to_string(), "45321");
        assert_eq!(Palette::new(vec![10, 2]).to_string(), "(10,2)");
    }

    fn random_coloring() -> impl Strategy<Value = Coloring> {
        (1u32..=6, 1u8..=5).prop_flat_map(|(n, k)| {
            let cube = Hypercube::new(n).unwrap();
            proptest::collection::vec(1..=k, cube.edge_count())
                .prop_map(move |colors| Coloring::new(cube, k, Mode::General, colors).unwrap())
        })
    }

    proptest! {
        #[test]
        fn edge_consistency(c in random_coloring()) {
            let cube = c.cube();
            for e in cube.edge_refs() {
                let (u, v) = e.endpoints();
                let color = c.color(cube.edge_index(u, e.dimension).unwrap());
                let d = e.dimension as usize - 1;
                prop_assert_eq!(c.palette(u)[d], color);
                prop_assert_eq!(c.palette(v)[d], color);
            }
        }

        #[test]
        fn relabel_equivariance(c in random_coloring(), seed in any::<u64>()) {
            let k = c.k() as usize;
            let mut sigma: Vec<Color> = (1..=k as Color).collect();
            // deterministic shuffle from the seed
            let mut s = seed;
            for i in (1..k).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                sigma.swap(i, (s >> 33) as usize % (i + 1));
            }
            let r = c.relabeled(&sigma).unwrap();
            for v in c.cube().vertices() {
                let mapped: Vec<Color> = c.palette(v).iter().map(|&x| sigma[x as usize - 1]).collect();
                prop_assert_eq!(r.palette(v).into_inner(), mapped);
            }
        }
    }
}
