//! On-disk form of a coloring (JSON) and a Graphviz view of it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercube::{Color, Coloring, Hypercube, Mode};

pub const SCHEMA_VERSION: &str = "cube-palette/1";

/// Fields are serialized in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringDocument {
    pub schema_version: String,
    pub n: u32,
    pub k: Color,
    pub mode: String,
    /// Indexed by [`EdgeIndex`](crate::EdgeIndex).
    pub colors: Vec<Color>,
    pub provenance: String,
}

impl ColoringDocument {
    pub fn from_coloring(c: &Coloring, provenance: impl Into<String>) -> Self {
        ColoringDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            n: c.n(),
            k: c.k(),
            mode: c.mode().as_str().to_string(),
            colors: c.colors().to_vec(),
            provenance: provenance.into(),
        }
    }

    /// Validate and convert. Every problem with the document is a format
    /// error, including out-of-range dimensions and colors.
    pub fn to_coloring(&self) -> Result<Coloring> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Format(format!(
                "unsupported schema_version {:?}",
                self.schema_version
            )));
        }
        let mode: Mode = self
            .mode
            .parse()
            .map_err(|_| Error::Format(format!("unknown mode {:?}", self.mode)))?;
        let cube = Hypercube::new(self.n).map_err(|e| Error::Format(e.to_string()))?;
        Coloring::new(cube, self.k, mode, self.colors.clone())
            .map_err(|e| Error::Format(e.to_string()))
    }

    /// Compact JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

/// Parse and validate in one step.
pub fn load_coloring(text: &str) -> Result<(Coloring, ColoringDocument)> {
    let doc = ColoringDocument::from_json(text)?;
    Ok((doc.to_coloring()?, doc))
}

const DOT_PALETTE: [&str; 12] = [
    "black",
    "red",
    "blue",
    "darkgreen",
    "orange",
    "purple",
    "brown",
    "magenta",
    "cyan",
    "gold",
    "gray",
    "navy",
];

/// Undirected graph with one `u -- v` line per edge, in `EdgeIndex` order.
pub fn to_dot(c: &Coloring) -> String {
    let mut out = format!("graph H{} {{\n", c.n());
    for (e, &color) in c.cube().edge_refs().zip(c.colors()) {
        let (u, v) = e.endpoints();
        let name = DOT_PALETTE[(color as usize - 1) % DOT_PALETTE.len()];
        out.push_str(&format!(
            "  {} -- {} [label=\"{color}\", color=\"{name}\"];\n",
            u.0, v.0
        ));
    }
    out.push_str("}\n");
    out
}
