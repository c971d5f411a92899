//! Command line parsing and dispatch. Every command except `serve` renders to a string.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use bispan::bispanning::{
    connectivity_class, decompose_2vconn, find_bispanning_subgraph, is_atomic, MAX_PARTITION_VERTICES,
};
use bispan::catalog;
use bispan::compose::{composite_report, deg3_report, verify_eta_join, ComposeReport};
use bispan::enumerate::{enumerate_bispanning, Kind};
use bispan::exchange::{self, build_tau, Form, Variant, NU_CONVENTION};
use bispan::format::{self, EdgeList};
use bispan::graph::{to_vec, vbits};
use bispan::ordering::{build_cbo, find_uecbo, verify_cbo, verify_uecbo, SwapSequence};
use bispan::{find_two_trees, MultiGraph, TreePair};

/// Failure classes, mapped to exit codes 1, 2 and 3.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Violation(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Violation(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "bispan", version, about = "Bispanning graphs, exchange graphs and the flip game")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormArg {
    D,
    U,
    S,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Is the graph bispanning, and which trees were found.
    Check { file: PathBuf },
    /// Colored edge list of two disjoint spanning trees.
    Trees { file: PathBuf },
    /// Atomic or composite, and the connectivity class.
    Classify { file: PathBuf },
    /// Exchange graph statistics or export.
    Tau {
        file: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=4))]
        variant: u8,
        #[arg(long, value_enum, default_value_t = FormArg::U)]
        form: FormArg,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Difficulty: fewest unique-exchange paths to the inverse pair.
    Nu { file: PathBuf },
    /// A cyclic base ordering for the file's pair.
    Cbo {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// A unique exchange cyclic base ordering for the file's pair.
    Uecbo {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check one of the exchange graph composition results on this graph.
    VerifyCompose {
        file: PathBuf,
        #[arg(long, group = "which")]
        sub: bool,
        #[arg(long = "2sum", group = "which")]
        two_sum: bool,
        #[arg(long, group = "which", value_name = "V")]
        deg3: Option<usize>,
    },
    /// Non-isomorphic bispanning graphs on N vertices.
    Enumerate {
        n: usize,
        #[arg(long, default_value = "general")]
        kind: String,
        /// Print every graph as an edge list.
        #[arg(long)]
        list: bool,
    },
    /// A catalog graph with its drawn coloring; lists names without an argument.
    Named { name: Option<String> },
    /// HTTP game service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

/// Reads an edge-list file. `-` is stdin and `named:NAME` a catalog entry.
pub fn load(path: &PathBuf) -> Result<EdgeList, CliError> {
    let s = path.to_string_lossy();
    if let Some(name) = s.strip_prefix("named:") {
        let (g, tp) = catalog::named_graph(name).map_err(|e| CliError::Parse(e.to_string()))?;
        return Ok(EdgeList::with_pair(g, tp));
    }
    let text = if s == "-" { std::io::read_to_string(std::io::stdin()) } else { std::fs::read_to_string(path) }
        .map_err(|e| CliError::Parse(format!("{s}: {e}")))?;
    format::parse_edge_list(&text).map_err(|e| CliError::Parse(format!("{s}: {e}")))
}

/// The file's coloring if it is a tree pair, otherwise one found around it.
fn pair_of(list: &EdgeList) -> Result<TreePair, CliError> {
    if list.is_fully_colored() {
        if let Ok(tp) = TreePair::from_coloring(&list.graph, &list.colors) {
            return Ok(tp);
        }
    }
    find_two_trees(&list.graph, &list.colors).ok_or_else(|| CliError::Violation("not bispanning".into()))
}

fn ids(s: u128) -> String {
    let v: Vec<String> = to_vec(s).iter().map(|e| e.to_string()).collect();
    format!("[{}]", v.join(","))
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn violation(e: impl std::fmt::Display) -> CliError {
    CliError::Violation(e.to_string())
}

pub fn execute(cmd: &Command) -> Result<String, CliError> {
    let mut out = String::new();
    match cmd {
        Command::Check { file } => {
            let list = load(file)?;
            let tp = pair_of(&list)?;
            if !tp.is_valid(&list.graph) {
                return Err(internal("tree search returned an invalid pair"));
            }
            let _ = writeln!(out, "bispanning: yes");
            let _ = writeln!(out, "S = {}", ids(tp.s));
            let _ = writeln!(out, "T = {}", ids(tp.t));
            let given = list.is_fully_colored() && TreePair::from_coloring(&list.graph, &list.colors).is_ok();
            let _ = writeln!(out, "file coloring is a tree pair: {}", if given { "yes" } else { "no" });
        }
        Command::Trees { file } => {
            let list = load(file)?;
            let tp = pair_of(&list)?;
            out = format::write_edge_list(&EdgeList::with_pair(list.graph, tp));
        }
        Command::Classify { file } => {
            let g = load(file)?.graph;
            let (vc, ec) = connectivity_class(&g).map_err(violation)?;
            let _ = writeln!(out, "connectivity: vertex {vc}, edge {ec}");
            if g.n() > MAX_PARTITION_VERTICES {
                let _ = writeln!(out, "atomic: unknown (more than {MAX_PARTITION_VERTICES} vertices)");
            } else if is_atomic(&g).map_err(violation)? {
                let _ = writeln!(out, "atomic");
            } else {
                let sub = find_bispanning_subgraph(&g)
                    .map_err(violation)?
                    .ok_or_else(|| internal("composite without a bispanning subgraph"))?;
                let vs: Vec<String> = vbits(sub).map(|v| v.to_string()).collect();
                let _ = writeln!(out, "composite, bispanning subgraph on {{{}}}", vs.join(","));
            }
        }
        Command::Tau { file, variant, form, dot, json: as_json } => {
            let g = load(file)?.graph;
            let variant = match variant {
                2 => Variant::Tau2,
                3 => Variant::Tau3,
                _ => Variant::Tau4,
            };
            let form = match form {
                FormArg::D => Form::Directed,
                FormArg::U => Form::Undirected,
                FormArg::S => Form::Simple,
            };
            let x = build_tau(&g, variant, form).map_err(violation)?;
            if *dot {
                out = format::exchange_dot(&x);
            } else if *as_json {
                out = json(&format::exchange_json(&x));
            } else {
                let (lo, hi) = x.degree_range();
                let conn = match (form, x.is_connected(), x.is_strongly_connected()) {
                    (Form::Directed, _, true) => "strongly connected",
                    (_, true, _) => "connected",
                    _ => "disconnected",
                };
                let _ = writeln!(out, "{} vertices, {} edges, min-deg {lo}, {conn}", x.vertex_count(), x.edge_count());
                let _ = writeln!(out, "max-deg {hi}");
            }
        }
        Command::Nu { file } => {
            let list = load(file)?;
            let tp = pair_of(&list)?;
            let counts =
                exchange::path_counts(&list.graph, NU_CONVENTION, bispan::Exec::default()).map_err(violation)?;
            let nu = exchange::nu(&list.graph).map_err(violation)?;
            let _ = writeln!(out, "{}", nu.count);
            let _ = writeln!(out, "minimum at S = {}", ids(nu.pair.s));
            if let Some((_, c)) = counts.iter().find(|(p, _)| *p == tp) {
                let _ = writeln!(out, "paths from file pair S = {}: {c}", ids(tp.s));
            }
        }
        Command::Cbo { file, json: as_json } => {
            let list = load(file)?;
            let tp = pair_of(&list)?;
            let seq = build_cbo(&list.graph, tp).map_err(violation)?;
            if !verify_cbo(&list.graph, &seq).map_err(internal)? {
                return Err(internal(format!("ordering {seq} fails the window test")));
            }
            out = render_sequence(&seq, *as_json);
        }
        Command::Uecbo { file, json: as_json } => {
            let list = load(file)?;
            let tp = pair_of(&list)?;
            let seq = find_uecbo(&list.graph, tp)
                .map_err(violation)?
                .ok_or_else(|| CliError::Violation(format!("no unique exchange ordering from S = {}", ids(tp.s))))?;
            if !verify_uecbo(&list.graph, &seq) {
                return Err(internal(format!("search returned {seq}, which does not verify")));
            }
            out = render_sequence(&seq, *as_json);
        }
        Command::VerifyCompose { file, sub, two_sum, deg3 } => {
            let name = file.to_string_lossy().into_owned();
            let g = load(file)?.graph;
            let reports = compose_reports(&name, &g, *sub, *two_sum, *deg3)?;
            let mut failed = None;
            for r in &reports {
                let _ = writeln!(out, "{}", serde_json::to_string(r).expect("plain data"));
                if !r.ok() {
                    failed.get_or_insert(r.status.clone());
                }
            }
            if let Some(status) = failed {
                // The checks themselves compare two constructions; a mismatch is our bug.
                return Err(CliError::Internal(format!("{out}{status}")));
            }
        }
        Command::Enumerate { n, kind, list } => {
            let kind: Kind =
                kind.parse().map_err(|e: bispan::enumerate::EnumerateError| CliError::Parse(e.to_string()))?;
            let all = enumerate_bispanning(*n, kind).map_err(violation)?;
            let _ = writeln!(out, "{} {kind} bispanning graphs on {n} vertices", all.len());
            if *list {
                for x in all {
                    out.push('\n');
                    out.push_str(&format::write_edge_list(&EdgeList::with_pair(x.graph, x.pair)));
                }
            }
        }
        Command::Named { name: None } => {
            for n in catalog::names() {
                let _ = writeln!(out, "{n}");
            }
        }
        Command::Named { name: Some(name) } => {
            let (g, tp) = catalog::named_graph(name).map_err(|e| CliError::Parse(e.to_string()))?;
            out = format::write_edge_list(&EdgeList::with_pair(g, tp));
        }
        Command::Serve { .. } => return Err(internal("serve runs through the async entry point")),
    }
    Ok(out)
}

fn render_sequence(seq: &SwapSequence, as_json: bool) -> String {
    if as_json {
        format!("{}\n", format::sequence_to_json(seq))
    } else {
        format!("{seq}\n")
    }
}

fn compose_reports(
    name: &str,
    g: &MultiGraph,
    sub: bool,
    two_sum: bool,
    deg3: Option<usize>,
) -> Result<Vec<ComposeReport>, CliError> {
    if let Some(v) = deg3 {
        if v >= g.n() {
            return Err(CliError::Parse(format!("no vertex {v}")));
        }
        if g.degree(v) != 3 {
            return Err(CliError::Violation(format!("vertex {v} has degree {}", g.degree(v))));
        }
        if !is_atomic(g).map_err(violation)? {
            return Err(CliError::Violation("degree-3 composition needs an atomic graph".into()));
        }
        return Ok(vec![deg3_at(name, g, v)]);
    }
    let pick_all = !sub && !two_sum;
    let mut reports = Vec::new();
    let atomic = is_atomic(g).map_err(violation)?;
    if sub || (pick_all && !atomic) {
        let s = find_bispanning_subgraph(g)
            .map_err(violation)?
            .ok_or_else(|| CliError::Violation("graph is atomic; no bispanning subgraph".into()))?;
        reports.push(composite_report(name, g, s));
    }
    if two_sum || (pick_all && atomic && g.connectivity().map_err(internal)?.0 == 2) {
        reports.push(two_sum_report(name, g)?);
    }
    if pick_all && atomic {
        for v in (0..g.n()).filter(|&v| g.degree(v) == 3) {
            reports.push(deg3_at(name, g, v));
        }
    }
    if reports.is_empty() {
        return Err(CliError::Violation("no composition applies to this graph".into()));
    }
    Ok(reports)
}

fn deg3_at(name: &str, g: &MultiGraph, v: usize) -> ComposeReport {
    let mut r = deg3_report(name, g, v);
    r.counts.insert("vertex".into(), v);
    r
}

fn two_sum_report(name: &str, g: &MultiGraph) -> Result<ComposeReport, CliError> {
    let parts = decompose_2vconn(g).map_err(violation)?;
    let code = g.canonical_code().map_err(internal)?;
    let mut counts = std::collections::BTreeMap::new();
    counts.insert("cut_u".to_string(), parts.cut.0);
    counts.insert("cut_v".to_string(), parts.cut.1);
    let mut status = "no orientation of the parts reproduces the graph".to_string();
    for orientation in [false, true] {
        match verify_eta_join(&parts.g1, parts.d1, &parts.g2, parts.d2, orientation) {
            Ok((sum, joined)) if sum.graph.canonical_code().ok() == Some(code.clone()) => {
                counts.insert("vertices".into(), joined.vertex_count());
                counts.insert("arcs".into(), joined.edge_count());
                status = "ok".into();
                break;
            }
            Ok(_) => {}
            Err(e) => {
                status = e.to_string();
                break;
            }
        }
    }
    Ok(ComposeReport { theorem: "2-clique-sum".into(), graph: name.into(), status, counts })
}
