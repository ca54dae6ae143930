//! Edge colorings of hypercubes that tell every vertex apart by the
//! sequence of colors on its edges, read in dimension order.
//!
//! The crate builds such colorings ([`constructions`]), checks them
//! ([`verify`]), decides small existence questions exactly ([`search`]),
//! and handles the same question on arbitrary small graphs under a global
//! edge ordering ([`seqirr`]).

pub mod cli;
pub mod constructions;
pub mod document;
mod error;
pub mod hypercube;
pub mod search;
pub mod seqirr;
pub mod verify;

pub use error::{Error, Result};
pub use hypercube::{
    all_palettes, make_hypercube, palette, Color, Coloring, EdgeIndex, EdgeRef, Hypercube, Mode,
    Palette, VertexId,
};
