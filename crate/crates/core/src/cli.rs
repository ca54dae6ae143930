//! Command-line front end.
//!
//! Exit codes: 0 decisive answer or verified, 1 verification failed, 2
//! invalid request, 3 I/O or format problem, 4 undecided within budget.
//!
//! Graph files for `bound` and `seqirr` use this grammar:
//!
//! ```text
//! file   := line*
//! line   := blank | comment | edge | order
//! comment:= '#' any*
//! edge   := uint ws uint            0-based vertex ids, one edge per line
//! order  := 'order:' (ws uint)*     at most once
//! ```
//!
//! The `order:` line lists 0-based edge positions (the n-th edge line is
//! position n) from first to last in the global order; edges are ordered
//! as listed when it is absent. The vertex count is the largest id plus
//! one, so ids must leave no gaps.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constructions::{construct, h5_provenance, H5Provenance};
use crate::document::{load_coloring, to_dot, ColoringDocument};
use crate::error::Error;
use crate::hypercube::{Color, Coloring, Mode};
use crate::search::{
    color_floor, feasible, min_colors, Budget, SearchOptions, SearchOutcome, Status,
};
use crate::seqirr::{
    brute_force_automorphisms, feasible_for_ordering, general_strength, global_palette,
    h2_claim_check, h2_claim_graph, mg_bound, parse_edge_list, specific_strength, DegreeProfile,
    EdgeOrderedGraph, StrengthOptions,
};
use crate::verify::{distinguishes, is_proper};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_UNKNOWN: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "cube-palette",
    version,
    about = "Palette-distinguishing edge colorings of hypercubes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    General,
    Proper,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::General => Mode::General,
            ModeArg::Proper => Mode::Proper,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Stop after this many search nodes.
    #[arg(long)]
    pub max_nodes: Option<u64>,
    /// Stop after this many milliseconds.
    #[arg(long)]
    pub max_time_ms: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.max_nodes,
            max_time: self.max_time_ms.map(Duration::from_millis),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a coloring and write it as JSON.
    Construct {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        n: u32,
        /// Output file; the document goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a coloring document distinguishes every vertex.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also require a proper coloring (always checked for proper-mode documents).
        #[arg(long)]
        require_proper: bool,
        /// List every palette.
        #[arg(long)]
        verbose: bool,
    },
    /// Decide existence of a distinguishing coloring by exhaustive search.
    Search {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        n: u32,
        /// Number of colors to test.
        #[arg(long, required_unless_present = "min", conflicts_with = "min")]
        k: Option<Color>,
        /// Find the least number of colors instead.
        #[arg(long)]
        min: bool,
        /// Largest k tried by --min (default: the floor plus two).
        #[arg(long, requires = "min")]
        k_max: Option<Color>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Report the same witness regardless of thread count.
        #[arg(long)]
        deterministic_witness: bool,
        #[arg(long)]
        no_symmetry_breaking: bool,
        #[arg(long)]
        no_r2: bool,
        /// Where to write a witness; printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the counting lower bound M_G for a graph file.
    Bound {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Sequence-distinguishing colorings of a graph under edge orderings.
    Seqirr {
        #[arg(long, required_unless_present = "paper_h2_check")]
        graph: Option<PathBuf>,
        /// Decide feasibility for the file's ordering with k colors.
        #[arg(long)]
        k: Option<Color>,
        /// Least k that works for some ordering.
        #[arg(long)]
        specific: bool,
        /// Least k that works for every ordering.
        #[arg(long)]
        general: bool,
        #[arg(long, default_value_t = 6)]
        k_max: Color,
        /// Only try orderings that are minimal under the graph's automorphisms.
        #[arg(long)]
        automorphisms: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Enumerate all two-colorings of H_2 under the ordering
        /// 00-01, 00-10, 10-11, 01-11.
        #[arg(long, conflicts_with_all = ["graph", "k", "specific", "general"])]
        paper_h2_check: bool,
    },
    /// Convert a coloring document to DOT or canonical JSON.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Range(_) | Error::Domain(_) => EXIT_INVALID,
            Error::Format(_) => EXIT_IO,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_failure(path, e))
}

fn load_graph(path: &Path) -> Result<EdgeOrderedGraph, Failure> {
    Ok(parse_edge_list(&read(path)?)?)
}

type Out<'a> = &'a mut dyn Write;

/// Parse `args` (including the program name) and run, returning the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
pub fn run_from<I, T>(args: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INVALID
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            }
        }
    }
}

pub fn run(cli: Cli, out: Out, err: Out) -> i32 {
    let result = match cli.command {
        Command::Construct { mode, n, out: path } => {
            cmd_construct(mode.into(), n, path.as_deref(), out, err)
        }
        Command::Verify {
            input,
            require_proper,
            verbose,
        } => cmd_verify(&input, require_proper, verbose, out),
        Command::Search {
            mode,
            n,
            k,
            min,
            k_max,
            budget,
            threads,
            deterministic_witness,
            no_symmetry_breaking,
            no_r2,
            out: path,
        } => {
            let opts = SearchOptions {
                budget: budget.budget(),
                symmetry_breaking: !no_symmetry_breaking,
                r2_pruning: !no_r2,
                deterministic_witness,
                threads: threads.max(1),
            };
            let mode = mode.into();
            match (k, min) {
                (Some(k), _) => cmd_search(mode, n, k, &opts, path.as_deref(), out, err),
                (None, _) => {
                    let k_max = k_max.unwrap_or(color_floor(n, mode).saturating_add(2));
                    cmd_min(mode, n, k_max, &opts, path.as_deref(), out, err)
                }
            }
        }
        Command::Bound { graph } => cmd_bound(&graph, out),
        Command::Seqirr {
            paper_h2_check: true,
            ..
        } => cmd_h2_check(out),
        Command::Seqirr {
            graph,
            k,
            specific,
            general,
            k_max,
            automorphisms,
            budget,
            threads,
            paper_h2_check: false,
        } => {
            let graph = graph.expect("clap requires --graph");
            cmd_seqirr(
                &graph,
                k,
                specific,
                general,
                k_max,
                automorphisms,
                budget.budget(),
                threads,
                out,
            )
        }
        Command::Export {
            input,
            format,
            out: path,
        } => cmd_export(&input, format, path.as_deref(), out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

type CmdResult = Result<i32, Failure>;

fn provenance(mode: Mode, n: u32) -> String {
    match (mode, n) {
        (Mode::General, _) => format!("construct general n={n}: inductive two-coloring"),
        (Mode::Proper, 2..=4) => {
            format!("construct proper n={n}: fixed table with {} colors", n + 2)
        }
        (Mode::Proper, _) => {
            let base = match h5_provenance() {
                H5Provenance::Reconstructed => "reconstructed from the listed palettes",
                H5Provenance::Searched => "found by search",
            };
            format!("construct proper n={n}: n-color doubling from the H_5 base ({base})")
        }
    }
}

fn palette_stats(c: &Coloring) -> String {
    let mut per_color: BTreeMap<Color, usize> = BTreeMap::new();
    for &col in c.colors() {
        *per_color.entry(col).or_default() += 1;
    }
    let counts: Vec<String> = per_color.iter().map(|(c, m)| format!("{c}:{m}")).collect();
    let distinct: std::collections::HashSet<_> = c.palettes().into_iter().collect();
    format!(
        "H_{} {} coloring: k = {}, {} edges, color counts {}, {} of {} palettes distinct",
        c.n(),
        c.mode(),
        c.k(),
        c.colors().len(),
        counts.join(" "),
        distinct.len(),
        c.cube().vertex_count()
    )
}

fn cmd_construct(mode: Mode, n: u32, path: Option<&Path>, out: Out, err: Out) -> CmdResult {
    let c = construct(mode, n)?;
    let ok = distinguishes(&c).ok() && (mode == Mode::General || is_proper(&c).ok());
    let doc = ColoringDocument::from_coloring(&c, provenance(mode, n));
    let stats = palette_stats(&c);
    match path {
        Some(p) => {
            write(p, &doc.to_json())?;
            let _ = writeln!(out, "{stats}");
            let _ = writeln!(out, "wrote {}", p.display());
        }
        None => {
            let _ = write!(out, "{}", doc.to_json());
            let _ = writeln!(err, "{stats}");
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_verify(input: &Path, require_proper: bool, verbose: bool, out: Out) -> CmdResult {
    let (c, _) = load_coloring(&read(input)?)?;
    if verbose {
        for v in c.cube().vertices() {
            let _ = writeln!(out, "{:>8}  {}", v.0, c.palette(v));
        }
    }
    if let Some(w) = distinguishes(&c).witness {
        let _ = writeln!(out, "FAIL: vertices share a palette: {w}");
        return Ok(EXIT_VERIFY_FAILED);
    }
    if require_proper || c.mode() == Mode::Proper {
        if let Some(w) = is_proper(&c).witness {
            let _ = writeln!(out, "FAIL: adjacent edges share a color: {w}");
            return Ok(EXIT_VERIFY_FAILED);
        }
    }
    let _ = writeln!(out, "OK: all {} palettes distinct", c.cube().vertex_count());
    Ok(EXIT_OK)
}

fn status_code(s: Status) -> i32 {
    match s {
        Status::Unknown => EXIT_UNKNOWN,
        _ => EXIT_OK,
    }
}

fn report_outcome(out: Out, err: Out, o: &SearchOutcome) {
    let _ = writeln!(out, "{}", o.status);
    let _ = writeln!(out, "nodes explored: {}", o.nodes_explored);
    let _ = writeln!(err, "elapsed: {} ms", o.elapsed.as_millis());
}

fn emit_witness(c: &Coloring, path: Option<&Path>, out: Out) -> Result<(), Failure> {
    let json =
        ColoringDocument::from_coloring(c, format!("search {} n={} k={}", c.mode(), c.n(), c.k()))
            .to_json();
    match path {
        Some(p) => {
            write(p, &json)?;
            let _ = writeln!(out, "witness written to {}", p.display());
        }
        None => {
            let _ = write!(out, "{json}");
        }
    }
    Ok(())
}

fn cmd_search(
    mode: Mode,
    n: u32,
    k: Color,
    opts: &SearchOptions,
    path: Option<&Path>,
    out: Out,
    err: Out,
) -> CmdResult {
    let o = feasible(n, mode, k, opts)?;
    report_outcome(out, err, &o);
    if let Some(w) = &o.witness {
        emit_witness(w, path, out)?;
    }
    Ok(status_code(o.status))
}

fn cmd_min(
    mode: Mode,
    n: u32,
    k_max: Color,
    opts: &SearchOptions,
    path: Option<&Path>,
    out: Out,
    err: Out,
) -> CmdResult {
    let floor = color_floor(n, mode);
    if mode == Mode::Proper && floor > 1 {
        let _ = writeln!(
            out,
            "k < {floor}: Infeasible (fewer colors than the degree)"
        );
    }
    let r = min_colors(n, mode, k_max, opts)?;
    let mut elapsed = Duration::ZERO;
    for (k, o) in &r.probes {
        let _ = writeln!(out, "k = {k}: {} ({} nodes)", o.status, o.nodes_explored);
        elapsed += o.elapsed;
    }
    let _ = writeln!(err, "elapsed: {} ms", elapsed.as_millis());
    match r.k_min {
        Some(k) => {
            let _ = writeln!(out, "k_min = {k}");
            if let Some(w) = &r.witness {
                emit_witness(w, path, out)?;
            }
            Ok(EXIT_OK)
        }
        None if r.probes.iter().any(|(_, o)| o.status == Status::Unknown) => {
            let _ = writeln!(out, "k_min = Unknown");
            Ok(EXIT_UNKNOWN)
        }
        None => {
            let _ = writeln!(out, "k_min > {k_max}");
            Ok(EXIT_OK)
        }
    }
}

fn cmd_bound(graph: &Path, out: Out) -> CmdResult {
    let g = load_graph(graph)?;
    let bound = mg_bound(&g)?;
    let profile = DegreeProfile::of(&g);
    let parts: Vec<String> = profile
        .counts
        .iter()
        .enumerate()
        .filter(|&(i, &c)| i > 0 && c > 0)
        .map(|(i, c)| format!("n_{i} = {c}"))
        .collect();
    let _ = writeln!(out, "degrees: {}", parts.join(", "));
    let _ = writeln!(out, "M_G = {bound}");
    Ok(EXIT_OK)
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn show_palettes(g: &EdgeOrderedGraph, colors: &[Color], out: Out) {
    for v in 0..g.num_vertices() {
        let _ = writeln!(
            out,
            "  vertex {v}: ({})",
            join(&global_palette(g, colors, v), ", ")
        );
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_seqirr(
    graph: &Path,
    k: Option<Color>,
    specific: bool,
    general: bool,
    k_max: Color,
    automorphisms: bool,
    budget: Budget,
    threads: usize,
    out: Out,
) -> CmdResult {
    let g = load_graph(graph)?;
    let mut code = EXIT_OK;
    if let Some(k) = k {
        let o = feasible_for_ordering(&g, k, budget)?;
        let _ = writeln!(
            out,
            "ordering {}: {} with k = {k} ({} nodes)",
            join(&g.order_sequence(), " "),
            o.status,
            o.nodes_explored
        );
        if let Some(w) = &o.witness {
            let _ = writeln!(out, "colors: {}", join(w, " "));
            show_palettes(&g, w, out);
        }
        code = code.max(status_code(o.status));
    }
    let (specific, general) = if k.is_none() && !specific && !general {
        (true, true)
    } else {
        (specific, general)
    };
    let opts = StrengthOptions {
        k_max,
        budget,
        automorphisms: if automorphisms {
            Some(brute_force_automorphisms(&g)?)
        } else {
            None
        },
        threads: threads.max(1),
    };
    if specific {
        let r = specific_strength(&g, &opts)?;
        match (r.value, &r.witness) {
            (Some(v), Some(w)) => {
                let _ = writeln!(out, "specific strength = {v}");
                let _ = writeln!(out, "  ordering: {}", join(&w.ordering, " "));
                let _ = writeln!(out, "  colors: {}", join(&w.colors, " "));
            }
            _ => {
                let _ = writeln!(
                    out,
                    "specific strength = Unknown (undecided up to k = {k_max})"
                );
                code = code.max(EXIT_UNKNOWN);
            }
        }
        let _ = writeln!(out, "  orderings considered: {}", r.orderings_considered);
    }
    if general {
        let r = general_strength(&g, &opts)?;
        match r.value {
            Some(v) => {
                let _ = writeln!(out, "general strength = {v}");
                if let Some(b) = &r.blocking_ordering {
                    let _ = writeln!(
                        out,
                        "  ordering with no {}-coloring: {}",
                        v - 1,
                        join(b, " ")
                    );
                }
            }
            None => {
                let _ = writeln!(
                    out,
                    "general strength = Unknown (undecided up to k = {k_max})"
                );
                code = code.max(EXIT_UNKNOWN);
            }
        }
        let _ = writeln!(out, "  orderings considered: {}", r.orderings_considered);
    }
    Ok(code)
}

fn coordinates(v: usize, n: usize) -> String {
    (0..n)
        .map(|i| if v >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn cmd_h2_check(out: Out) -> CmdResult {
    let g = h2_claim_graph();
    let check = h2_claim_check();
    let edges: Vec<String> = g
        .order_sequence()
        .iter()
        .enumerate()
        .map(|(j, &e)| {
            let (u, v) = g.edges()[e];
            format!("e{} = {}-{}", j + 1, coordinates(u, 2), coordinates(v, 2))
        })
        .collect();
    let _ = writeln!(out, "H_2 ordering: {}", edges.join(", "));
    let _ = writeln!(out, "two-colorings checked: {}", check.colorings_checked);
    let _ = writeln!(
        out,
        "distinguishing two-colorings: {}",
        check.distinguishing.len()
    );
    for colors in &check.distinguishing {
        let palettes: Vec<String> = (0..g.num_vertices())
            .map(|v| {
                format!(
                    "{}:({})",
                    coordinates(v, 2),
                    join(&global_palette(&g, colors, v), ",")
                )
            })
            .collect();
        let _ = writeln!(
            out,
            "  colors ({}) -> {}",
            join(colors, ", "),
            palettes.join(" ")
        );
    }
    let _ = writeln!(out, "verdict: {}", check.status);
    let _ = writeln!(
        out,
        "claim under test: no distinguishing two-coloring exists"
    );
    let flag = if check.agrees_with_claim {
        "AGREES"
    } else {
        "DISAGREES"
    };
    let _ = writeln!(out, "{flag} with paper");
    Ok(EXIT_OK)
}

fn cmd_export(input: &Path, format: ExportFormat, path: Option<&Path>, out: Out) -> CmdResult {
    let (c, doc) = load_coloring(&read(input)?)?;
    let text = match format {
        ExportFormat::Dot => to_dot(&c),
        ExportFormat::Json => doc.to_json(),
    };
    match path {
        Some(p) => write(p, &text)?,
        None => {
            let _ = write!(out, "{text}");
        }
    }
    Ok(EXIT_OK)
}
