//! Explicit colorings: the two-color construction for every `n >= 2` and
//! the proper constructions (`n + 2` colors below five dimensions, `n`
//! colors from five on).

mod general;
mod proper;

pub use general::{complement_palette, general_step_trace, general_two_coloring, GeneralStepTrace};
pub use proper::{
    color_swapped, dimension_permuted, h5_base, h5_provenance, proper_n_coloring, proper_table,
    reconstruct_from_palettes, search_h5_substitute, H5Provenance, H5_PALETTES,
};

use crate::error::{range, Result};
use crate::hypercube::{Coloring, Mode};

/// The construction the CLI uses for `(mode, n)`.
pub fn construct(mode: Mode, n: u32) -> Result<Coloring> {
    match mode {
        Mode::General => general_two_coloring(n),
        Mode::Proper if (2..=4).contains(&n) => proper_table(n),
        Mode::Proper if n >= 5 => proper_n_coloring(n),
        Mode::Proper => range(format!("no proper construction for n = {n}")),
    }
}
