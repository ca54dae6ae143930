//! Plain enumeration of every coloring, with no pruning or symmetry
//! reduction. Shares nothing with the backtracking engines beyond the
//! edge layout.

use std::time::Instant;

use super::{Budget, SearchOutcome, Status};
use crate::error::{range, Result};
use crate::hypercube::{Color, Coloring, Hypercube, Mode};

/// Upper bound on `k^|E|`.
pub const ORACLE_CAP: u64 = 1 << 28;

fn palettes_ok(cube: Hypercube, colors: &[Color], mode: Mode) -> bool {
    let n = cube.n();
    let mut rows: Vec<Vec<Color>> = Vec::with_capacity(cube.vertex_count());
    for v in 0..cube.vertex_count() as u32 {
        let row: Vec<Color> = (1..=n)
            .map(|d| colors[cube.edge_index_unchecked(v, d).0])
            .collect();
        if mode == Mode::Proper {
            for i in 0..row.len() {
                if row[i + 1..].contains(&row[i]) {
                    return false;
                }
            }
        }
        rows.push(row);
    }
    rows.sort_unstable();
    rows.windows(2).all(|w| w[0] != w[1])
}

pub fn brute_force_oracle(n: u32, mode: Mode, k: Color) -> Result<SearchOutcome> {
    let cube = Hypercube::new(n)?;
    if k == 0 {
        return range("oracle needs k >= 1");
    }
    let m = cube.edge_count() as u32;
    let total = (k as u64)
        .checked_pow(m)
        .filter(|&t| t <= ORACLE_CAP)
        .ok_or_else(|| {
            crate::Error::Range(format!("{k}^{m} colorings exceed the oracle cap of 2^28"))
        })?;
    let started = Instant::now();
    let mut colors = vec![1 as Color; m as usize];
    let mut nodes = 0u64;
    let mut witness = None;
    for _ in 0..total {
        nodes += 1;
        if palettes_ok(cube, &colors, mode) {
            witness = Some(Coloring::new(cube, k, mode, colors.clone())?);
            break;
        }
        // odometer, least significant digit first
        for slot in colors.iter_mut() {
            if *slot < k {
                *slot += 1;
                break;
            }
            *slot = 1;
        }
    }
    Ok(SearchOutcome {
        status: if witness.is_some() {
            Status::Feasible
        } else {
            Status::Infeasible
        },
        witness,
        nodes_explored: nodes,
        elapsed: started.elapsed(),
        budget: Budget::unlimited(),
    })
}
