//! Inductive two-color construction.
//!
//! `H_n` is two copies of `H_{n-1}` joined by the dimension-`n` matching.
//! The lower copy keeps the previous coloring, the upper copy gets it with
//! colors 1 and 2 exchanged. Lower vertices are then paired with the lower
//! vertex whose palette is the entrywise complement of theirs; the two
//! matching edges of each pair get different colors.

use crate::error::{domain, range, Result};
use crate::hypercube::{Color, Coloring, Hypercube, Mode, Palette, VertexId, MAX_DIMENSION};

/// Entrywise `1 <-> 2` flip of a two-color palette.
pub fn complement_palette(p: &Palette) -> Result<Palette> {
    p.iter()
        .map(|&c| match c {
            1 => Ok(2),
            2 => Ok(1),
            other => domain(format!("color {other} is not in {{1, 2}}")),
        })
        .collect::<Result<Vec<Color>>>()
        .map(Palette::new)
}

/// Pairing chosen while extending a coloring of `H_{n-1}` to `H_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralStepTrace {
    /// `(v, partner)` with `v < partner`, in the order they were matched.
    pub pairs: Vec<(VertexId, VertexId)>,
    /// Dimension-`n` colors given to `v` and `partner` respectively.
    pub matching_colors: Vec<(Color, Color)>,
}

fn h2_two_coloring() -> Coloring {
    Coloring::new(
        Hypercube::new(2).expect("n = 2"),
        2,
        Mode::General,
        vec![1, 2, 1, 2],
    )
    .expect("valid table")
}

/// One induction step; `prev` must distinguish with colors `{1, 2}`.
fn extend(prev: &Coloring) -> Result<(Coloring, GeneralStepTrace)> {
    let m = prev.n();
    let cube = Hypercube::new(m + 1)?;
    let lower = prev.cube().vertex_count();

    // palette code -> vertex, to find complement partners directly
    let code = |p: &[Color]| p.iter().fold(0usize, |acc, &c| acc << 1 | (c as usize - 1));
    let table = prev.palette_table();
    let mut by_code = vec![u32::MAX; lower];
    for v in 0..lower {
        let row = &table[v * m as usize..(v + 1) * m as usize];
        by_code[code(row)] = v as u32;
    }
    let mask = lower - 1;

    let mut matching: Vec<Color> = vec![0; lower];
    let mut trace = GeneralStepTrace {
        pairs: Vec::with_capacity(lower / 2),
        matching_colors: Vec::with_capacity(lower / 2),
    };
    for v in 0..lower {
        if matching[v] != 0 {
            continue;
        }
        let row = &table[v * m as usize..(v + 1) * m as usize];
        let partner = by_code[!code(row) & mask];
        if partner == u32::MAX || partner as usize == v || matching[partner as usize] != 0 {
            return domain("base coloring does not realize every two-color palette");
        }
        matching[v] = 1;
        matching[partner as usize] = 2;
        trace.pairs.push((VertexId(v as u32), VertexId(partner)));
        trace.matching_colors.push((1, 2));
    }

    // dimension-major layout: each lower block of dimension i is followed
    // by the matching upper block, and the new dimension comes last
    let half_prev = prev.cube().half();
    let mut colors = Vec::with_capacity(cube.edge_count());
    for block in prev.colors().chunks_exact(half_prev) {
        colors.extend_from_slice(block);
        colors.extend(block.iter().map(|&c| 3 - c));
    }
    colors.extend_from_slice(&matching);
    Ok((Coloring::new(cube, 2, Mode::General, colors)?, trace))
}

/// Two-coloring of `H_n` (`n >= 2`) whose palettes are pairwise distinct.
pub fn general_two_coloring(n: u32) -> Result<Coloring> {
    if !(2..=MAX_DIMENSION).contains(&n) {
        return range(format!(
            "general construction needs 2 <= n <= {MAX_DIMENSION}, got {n}"
        ));
    }
    let mut c = h2_two_coloring();
    for _ in 3..=n {
        c = extend(&c)?.0;
    }
    Ok(c)
}

/// The pairing used in the last step of [`general_two_coloring`]`(n)`.
pub fn general_step_trace(n: u32) -> Result<GeneralStepTrace> {
    if !(3..=MAX_DIMENSION).contains(&n) {
        return range(format!(
            "a step trace needs 3 <= n <= {MAX_DIMENSION}, got {n}"
        ));
    }
    let prev = general_two_coloring(n - 1)?;
    Ok(extend(&prev)?.1)
}
