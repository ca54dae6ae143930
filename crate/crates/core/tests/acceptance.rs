//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use cube_palette::constructions::{
    color_swapped, dimension_permuted, general_two_coloring, h5_base, h5_provenance,
    proper_n_coloring, proper_table, H5Provenance, H5_PALETTES,
};
use cube_palette::search::{brute_force_oracle, feasible, permutation_csp, SearchOptions, Status};
use cube_palette::seqirr::{
    feasible_for_ordering, general_strength, global_palette, hypercube_ordering, mg_bound,
    specific_strength, EdgeOrderedGraph, StrengthOptions,
};
use cube_palette::verify::{color_dimension_profile, distinguishes, is_proper};
use cube_palette::{Color, Coloring, Hypercube, Mode, VertexId};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const LIMIT_TWO_COLOR_CLI: Duration = Duration::from_secs(10);
const LIMIT_MIN_SEARCH_EACH: Duration = Duration::from_secs(10);
const LIMIT_PERMUTATION_CSP: Duration = Duration::from_secs(60);
const LIMIT_N_COLOR_TOTAL: Duration = Duration::from_secs(30);
const LIMIT_ORACLE: Duration = Duration::from_secs(60);
const LIMIT_H2_CHECK: Duration = Duration::from_secs(1);

/// Nodes explored by `permutation_csp(4)` with default options.
const PERMUTATION_CSP_4_NODES: u64 = 1459;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn cli(args: &[&str]) -> (Option<i32>, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_cube-palette"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        o.status.code(),
        String::from_utf8_lossy(&o.stdout).into_owned(),
    )
}

fn two_color_cli() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let start = Instant::now();
    for n in 2..=16u32 {
        let path = dir.path().join(format!("g{n}.json"));
        let p = path.to_str().unwrap();
        let ns = n.to_string();
        let (code, _) = cli(&["construct", "--mode", "general", "--n", &ns, "--out", p]);
        ensure(code == Some(0), || {
            format!("construct n={n} exited {code:?}")
        })?;
        let (code, out) = cli(&["verify", "--in", p]);
        ensure(code == Some(0), || {
            format!("verify n={n} exited {code:?}: {out}")
        })?;
        let expected = format!("OK: all {} palettes distinct", 1u64 << n);
        ensure(out.contains(&expected), || format!("n={n}: {out}"))?;
        let doc = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        ensure(doc.contains("\"k\":2,"), || {
            format!("n={n} document is not a 2-coloring")
        })?;
    }
    let t = within(start, LIMIT_TWO_COLOR_CLI, "n = 2..16")?;
    Ok(format!("n = 2..16 constructed and verified in {t:.2?}"))
}

fn min_search_cli() -> Check {
    let mut details = Vec::new();
    for n in [2u32, 3] {
        let start = Instant::now();
        let ns = n.to_string();
        let (code, out) = cli(&["search", "--mode", "proper", "--n", &ns, "--min"]);
        let t = within(start, LIMIT_MIN_SEARCH_EACH, &format!("n={n} --min"))?;
        ensure(code == Some(0), || format!("n={n} exited {code:?}"))?;
        ensure(out.contains("k_min = 4\n"), || format!("n={n}: {out}"))?;
        // every k below 4 must be reported Infeasible
        ensure(out.contains(&format!("k < {n}: Infeasible")), || {
            format!("n={n}: {out}")
        })?;
        for k in n..4 {
            let line = format!("k = {k}: Infeasible");
            ensure(out.contains(&line), || {
                format!("n={n} missing {line:?}: {out}")
            })?;
        }
        details.push(format!("n={n} in {t:.2?}"));
    }
    let factorial_3 = (1..=3u64).product::<u64>();
    let vertices_3 = 1u64 << 3;
    ensure(vertices_3 > factorial_3, || "counting check".into())?;
    Ok(format!(
        "k_min = 4 ({}); {vertices_3} vertices > {factorial_3} palettes for n = k = 3",
        details.join(", ")
    ))
}

fn permutation_csp_four() -> Check {
    let start = Instant::now();
    let out = permutation_csp(4, &SearchOptions::default()).map_err(|e| e.to_string())?;
    let t = within(start, LIMIT_PERMUTATION_CSP, "permutation_csp(4)")?;
    ensure(out.status == Status::Infeasible, || {
        format!("status {}", out.status)
    })?;
    ensure(out.nodes_explored == PERMUTATION_CSP_4_NODES, || {
        format!(
            "node count {} differs from recorded {PERMUTATION_CSP_4_NODES}",
            out.nodes_explored
        )
    })?;
    Ok(format!(
        "Infeasible after {} nodes in {t:.2?}",
        out.nodes_explored
    ))
}

fn table_four() -> Check {
    let c = proper_table(4).map_err(|e| e.to_string())?;
    ensure(c.k() == 5, || format!("k = {}", c.k()))?;
    ensure(is_proper(&c).ok(), || "not proper".into())?;
    ensure(distinguishes(&c).ok(), || "palettes collide".into())?;
    Ok("proper, 16 distinct palettes, k = 5".into())
}

fn color_one_dims(c: &Coloring, upper: bool) -> BTreeSet<u32> {
    let top = c.n();
    c.cube()
        .edge_refs()
        .filter(|e| e.dimension != top)
        .filter(|e| e.vertex.coordinate(top) == upper)
        .filter(|e| c.color_at(e.vertex, e.dimension) == 1)
        .map(|e| e.dimension)
        .collect()
}

fn n_color_family() -> Check {
    let start = Instant::now();
    for n in 5..=12u32 {
        let c = proper_n_coloring(n).map_err(|e| e.to_string())?;
        ensure(c.k() as u32 == n, || format!("n={n}: k = {}", c.k()))?;
        ensure(is_proper(&c).ok(), || format!("n={n}: not proper"))?;
        ensure(distinguishes(&c).ok(), || {
            format!("n={n}: palettes collide")
        })?;
        if n >= 6 {
            let profile = color_dimension_profile(&c);
            let want: BTreeSet<u32> = [n].into();
            ensure(profile.get(&(n as Color)) == Some(&want), || {
                format!(
                    "n={n}: color {n} is on dimensions {:?}",
                    profile.get(&(n as Color))
                )
            })?;
            ensure(
                c.cube()
                    .edge_refs()
                    .filter(|e| e.dimension == n)
                    .all(|e| c.color_at(e.vertex, n) == n as Color),
                || format!("n={n}: dimension {n} is not monochrome"),
            )?;
        }
        if n == 6 {
            let lower = color_one_dims(&c, false);
            let upper = color_one_dims(&c, true);
            ensure(lower == [3, 5].into(), || {
                format!("lower color-1 dims {lower:?}")
            })?;
            ensure(upper == [1, 4].into(), || {
                format!("upper color-1 dims {upper:?}")
            })?;
        }
    }
    let t = within(start, LIMIT_N_COLOR_TOTAL, "n = 5..12")?;
    Ok(format!(
        "n = 5..12 proper and distinguishing with k = n, structure holds, {t:.2?}"
    ))
}

fn h5_properties() -> Check {
    let c = h5_base();
    ensure(c.n() == 5 && c.k() == 5, || {
        "not a 5-coloring of H_5".into()
    })?;
    ensure(is_proper(&c).ok(), || "P1: not proper".into())?;
    ensure(distinguishes(&c).ok(), || "P2: palettes collide".into())?;
    let profile = color_dimension_profile(&c);
    ensure(profile.get(&1) == Some(&[3, 5].into()), || {
        format!("P3: color 1 on dimensions {:?}", profile.get(&1))
    })?;
    for v in c.cube().vertices() {
        let ones = c.palette(v).iter().filter(|&&x| x == 1).count();
        ensure(ones == 1, || {
            format!("P4: vertex {} has {ones} color-1 edges", v.0)
        })?;
    }
    let mut got: Vec<Vec<Color>> = c.palettes().into_iter().map(|p| p.into_inner()).collect();
    got.sort();
    let mut listed: Vec<Vec<Color>> = H5_PALETTES
        .iter()
        .map(|s| s.bytes().map(|b| b - b'0').collect())
        .collect();
    listed.sort();
    match h5_provenance() {
        H5Provenance::Reconstructed => {
            ensure(got == listed, || {
                "palette multiset differs from the listed 32".into()
            })?;
            Ok("P1-P4 hold; palettes equal the listed 32 (reconstructed)".into())
        }
        H5Provenance::Searched => {
            Ok("P1-P4 hold (search-found base, list not reconstructible)".into())
        }
    }
}

fn oracle_agreement() -> Check {
    let start = Instant::now();
    let mut instances = Vec::new();
    for mode in [Mode::General, Mode::Proper] {
        for k in 1..=4 {
            instances.push((2, mode, k));
        }
    }
    for k in 1..=3 {
        instances.push((3, Mode::General, k));
    }
    for k in 1..=4 {
        instances.push((3, Mode::Proper, k));
    }
    for &(n, mode, k) in &instances {
        let fast = feasible(n, mode, k, &SearchOptions::default()).map_err(|e| e.to_string())?;
        let slow = brute_force_oracle(n, mode, k).map_err(|e| e.to_string())?;
        ensure(fast.status == slow.status, || {
            format!(
                "n={n} {mode} k={k}: search {} vs oracle {}",
                fast.status, slow.status
            )
        })?;
        ensure(fast.status != Status::Unknown, || {
            format!("n={n} {mode} k={k} undecided")
        })?;
    }
    let t = within(start, LIMIT_ORACLE, "oracle comparison")?;
    Ok(format!("{} instances agree in {t:.2?}", instances.len()))
}

fn star() -> EdgeOrderedGraph {
    EdgeOrderedGraph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap()
}

fn counting_bound() -> Check {
    for n in 2..=6 {
        let g = hypercube_ordering(n).map_err(|e| e.to_string())?;
        let b = mg_bound(&g).map_err(|e| e.to_string())?;
        ensure(b == 2, || format!("H_{n}: M_G = {b}"))?;
    }
    let b = mg_bound(&star()).map_err(|e| e.to_string())?;
    ensure(b == 3, || format!("K_1,3: M_G = {b}"))?;
    Ok("M_G(H_n) = 2 for n = 2..6, M_G(K_1,3) = 3".into())
}

fn h2_check_cli() -> Check {
    let start = Instant::now();
    let (code, out) = cli(&["seqirr", "--paper-h2-check"]);
    let t = within(start, LIMIT_H2_CHECK, "H_2 check")?;
    ensure(code == Some(0), || format!("exited {code:?}"))?;
    ensure(out.contains("two-colorings checked: 16"), || out.clone())?;
    let verdict = out
        .lines()
        .find_map(|l| l.strip_prefix("verdict: "))
        .ok_or_else(|| "no verdict line".to_string())?;
    ensure(verdict == "Feasible" || verdict == "Infeasible", || {
        format!("verdict {verdict}")
    })?;
    let flag = out
        .lines()
        .find(|l| l.ends_with("with paper"))
        .ok_or_else(|| "no agreement flag".to_string())?;
    Ok(format!("verdict {verdict}, {flag}, {t:.2?}"))
}

// Property checks for the last criterion.

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: 128,
        failure_persistence: None,
        ..Config::default()
    })
}

fn random_coloring(max_n: u32, max_k: Color) -> impl Strategy<Value = Coloring> {
    (1..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
        let cube = Hypercube::new(n).unwrap();
        proptest::collection::vec(1..=k, cube.edge_count())
            .prop_map(move |colors| Coloring::new(cube, k, Mode::General, colors).unwrap())
    })
}

fn prop(name: &str, r: Result<(), impl std::fmt::Display>) -> Result<(), String> {
    r.map_err(|e| format!("{name}: {e}"))
}

fn tiny_graphs() -> Vec<EdgeOrderedGraph> {
    let g = |nv, e: &[(usize, usize)]| EdgeOrderedGraph::new(nv, e.to_vec()).unwrap();
    vec![
        g(3, &[(0, 1), (1, 2)]),
        g(3, &[(0, 1), (1, 2), (0, 2)]),
        star(),
        hypercube_ordering(2).unwrap(),
        g(4, &[(0, 1), (1, 2), (2, 3)]),
        g(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]),
        g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
    ]
}

fn property_suites() -> Check {
    let mut done = Vec::new();

    prop(
        "palette edge consistency",
        runner().run(&random_coloring(8, 5), |c| {
            for e in c.cube().edge_refs() {
                let (u, v) = e.endpoints();
                let col = c.color_at(e.vertex, e.dimension);
                let i = e.dimension as usize - 1;
                prop_assert_eq!(c.palette(u)[i], col);
                prop_assert_eq!(c.palette(v)[i], col);
            }
            Ok(())
        }),
    )?;
    done.push("edge consistency");

    for n in 1..=10 {
        let cube = Hypercube::new(n).unwrap();
        let mut seen = HashSet::new();
        for v in cube.vertices() {
            let nb = cube.neighbors(v).unwrap();
            ensure(
                nb.len() == n as usize && nb.iter().collect::<HashSet<_>>().len() == nb.len(),
                || format!("degree at H_{n} vertex {}", v.0),
            )?;
            for d in 1..=n {
                if v.coordinate(d) {
                    continue;
                }
                let idx = cube.edge_index(v, d).unwrap();
                let e = cube.edge_from_index(idx).unwrap();
                ensure(
                    e.vertex == v && e.dimension == d && seen.insert(idx),
                    || format!("index bijection at H_{n} ({}, {d})", v.0),
                )?;
            }
        }
        ensure(seen.len() == cube.edge_count(), || {
            format!("H_{n} index range")
        })?;
    }
    done.push("index bijection");

    prop(
        "relabel and dimension invariance",
        runner().run(&(random_coloring(8, 4), any::<u64>()), |(c, seed)| {
            let before = distinguishes(&c).ok();
            let k = c.k();
            let sigma: Vec<Color> = (0..k)
                .map(|i| (i + (seed % k as u64) as Color) % k + 1)
                .collect();
            let r = c.relabeled(&sigma).unwrap();
            for v in c.cube().vertices() {
                let mapped: Vec<Color> = c
                    .palette(v)
                    .iter()
                    .map(|&x| sigma[x as usize - 1])
                    .collect();
                prop_assert_eq!(r.palette(v).into_inner(), mapped);
            }
            prop_assert_eq!(distinguishes(&r).ok(), before);
            let n = c.n();
            let perm: Vec<u32> = (1..=n).rev().collect();
            prop_assert_eq!(
                distinguishes(&dimension_permuted(&c, &perm).unwrap()).ok(),
                before
            );
            prop_assert_eq!(
                distinguishes(&color_swapped(&c, 1, k).unwrap()).ok(),
                before
            );
            Ok(())
        }),
    )?;
    done.push("relabel invariance");

    prop(
        "properness cross-check",
        runner().run(&random_coloring(4, 4), |c| {
            let rows_distinct = c.cube().vertices().all(|v| {
                let p = c.palette(v).into_inner();
                p.iter().collect::<HashSet<_>>().len() == p.len()
            });
            prop_assert_eq!(is_proper(&c).ok(), rows_distinct);
            Ok(())
        }),
    )?;
    done.push("properness");

    for n in 3..=12u32 {
        let c = general_two_coloring(n).unwrap();
        let half = 1u32 << (n - 1);
        for v in 0..half {
            let a = c.palette(VertexId(v)).into_inner();
            let b = c.palette(VertexId(v + half)).into_inner();
            let prefix_ok = a[..n as usize - 1].iter().zip(&b).all(|(x, y)| x + y == 3);
            ensure(prefix_ok, || format!("mirror prefix at n={n}, v={v}"))?;
        }
    }
    done.push("two-color mirror");

    let opts = SearchOptions::default();
    let off = SearchOptions {
        symmetry_breaking: false,
        ..SearchOptions::default()
    };
    for n in 2..=3 {
        for mode in [Mode::General, Mode::Proper] {
            let mut was_feasible = false;
            for k in 1..=(n as Color + 2) {
                let a = feasible(n, mode, k, &opts).unwrap();
                let b = feasible(n, mode, k, &off).unwrap();
                ensure(a.status == b.status, || {
                    format!("symmetry breaking n={n} {mode} k={k}")
                })?;
                ensure(!was_feasible || a.status == Status::Feasible, || {
                    format!("monotonicity n={n} {mode} k={k}")
                })?;
                was_feasible |= a.status == Status::Feasible;
            }
        }
    }
    done.push("symmetry breaking");
    done.push("monotonicity");

    let no_r2 = SearchOptions {
        r2_pruning: false,
        ..SearchOptions::default()
    };
    ensure(
        permutation_csp(4, &no_r2).unwrap().status == Status::Infeasible,
        || "R2 off changes the verdict".into(),
    )?;
    done.push("R2 soundness");

    let sopts = StrengthOptions::default();
    for g in tiny_graphs() {
        let s = specific_strength(&g, &sopts).unwrap().value;
        let t = general_strength(&g, &sopts).unwrap().value;
        ensure(matches!((s, t), (Some(a), Some(b)) if a <= b), || {
            format!("strengths {s:?} {t:?} on {:?}", g.edges())
        })?;
        let mg = mg_bound(&g).unwrap() as Color;
        for k in 1..mg {
            let out = feasible_for_ordering(&g, k, Default::default()).unwrap();
            ensure(out.status == Status::Infeasible, || {
                format!("M_G soundness on {:?}", g.edges())
            })?;
        }
    }
    done.push("strength inequality");
    done.push("M_G soundness");

    prop(
        "consistency bridge",
        runner().run(&random_coloring(6, 4), |c| {
            let g = hypercube_ordering(c.n()).unwrap();
            for v in c.cube().vertices() {
                prop_assert_eq!(
                    global_palette(&g, c.colors(), v.index()),
                    c.palette(v).into_inner()
                );
            }
            Ok(())
        }),
    )?;
    done.push("consistency bridge");

    Ok(done.join(", "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("two-color construction via CLI, n = 2..16", two_color_cli),
        ("minimum colors for proper H_2, H_3 via CLI", min_search_cli),
        (
            "permutation search proves proper n = k = 4 impossible",
            permutation_csp_four,
        ),
        ("five-color table for H_4", table_four),
        ("n-color proper family, n = 5..12", n_color_family),
        ("H_5 base properties", h5_properties),
        ("search agrees with brute-force oracle", oracle_agreement),
        ("counting lower bound M_G", counting_bound),
        ("H_2 two-coloring adjudication via CLI", h2_check_cli),
        ("property suites", property_suites),
    ];
    let mut failures = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        match result {
            Ok(detail) => println!("PASS {:>2}  {title}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2}  {title}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
