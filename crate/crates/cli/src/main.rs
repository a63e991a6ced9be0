use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use vsplit::drawing::{ingest_geometric, validate, TopologicalDrawing};
use vsplit::evd::{minimize_evd, selectors, solve_evd_with};
use vsplit::io::{parse_gdraw, parse_ssre, parse_tdraw, write_gdraw, write_ssre, write_tdraw};
use vsplit::oracle::{
    oracle_evd, oracle_face_cover, oracle_single_split, oracle_splitting_number, oracle_ssre, witness_hash,
    OracleBudget,
};
use vsplit::graph::Graph;
use vsplit::scd::{build_scd, validate_scd, write_scd};
use vsplit::singlesplit::{searches, split_single_vertex_with};
use vsplit::ssre_dp::{dp_strategies, solve_ssre, DpOptions};
use vsplit::ssre_prep::{enumerate_copy_branches, enumerate_edge_branches, reduce, SsreInstance};
use vsplit::toolkit::{export_svg, gen_fc, gen_random, gen_vc, GenKind, Generated, GeneratorSpec, SvgMarks};
use vsplit::{Error, Result};

#[derive(Parser)]
#[command(name = "vsplit", version, about = "Planarize topological drawings by vertex splitting")]
struct Cli {
    /// Seed for generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for oracles and entry budget for DP tables.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Print a JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Planarize a geometric drawing into the tdraw format.
    Planarize(IoArgs),
    /// Split one vertex into at most k copies with fewest crossings.
    SplitOne {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "exhaustive")]
        search: String,
        /// Report format; `json` prints the assignment as JSON.
        #[arg(long)]
        report: Option<String>,
    },
    /// Find a set of real vertices whose deletion removes every crossing.
    DeleteSet {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, conflicts_with = "minimize", required_unless_present = "minimize")]
        k: Option<usize>,
        #[arg(long)]
        minimize: bool,
        #[arg(long, default_value = "max-incident")]
        selector: String,
    },
    /// Decide split set re-embedding.
    Ssre {
        #[command(flatten)]
        io: IoArgs,
        /// Overrides the budget stored in the instance file.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "projected")]
        strategy: String,
        #[arg(long)]
        root_edge: Option<usize>,
        /// List the split hypotheses that are enumerated.
        #[arg(long)]
        trace_branches: bool,
        /// Check nesting-graph invariants on every table entry.
        #[arg(long)]
        check_nesting: bool,
    },
    /// Brute-force ground truth.
    Oracle {
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Vertex to split for `single`.
        #[arg(long)]
        vertex: Option<usize>,
        /// Target vertices for `facecover`; all vertices when absent.
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<usize>>,
    },
    /// Vertex cover to embedded vertex deletion.
    GenVc(IoArgs),
    /// Face cover to split set re-embedding.
    GenFc {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<usize>>,
        #[arg(long)]
        k: usize,
        /// Accept inputs that are not 3-connected.
        #[arg(long)]
        assume_unique: bool,
    },
    /// Random instance from a seed.
    GenRandom {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        extra: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// For geometric kinds, write the gdraw instead of its planarization.
        #[arg(long)]
        geometric: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a drawing, or its sphere-cut decomposition with --scd.
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        scd: bool,
        /// Write the decomposition dump here.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Render a drawing, or the solution of an SSRE instance, as SVG.
    ExportSvg {
        #[command(flatten)]
        io: IoArgs,
        /// Solve the SSRE instance and draw the witness.
        #[arg(long)]
        solve: bool,
    },
}

#[derive(Args)]
struct IoArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Split,
    Ssre,
    Evd,
    Single,
    Facecover,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    VcReduction,
    FcReduction,
    RandomConvex,
    RandomPerturbed,
    RandomSsre,
}

/// What a subcommand produced.
struct Outcome {
    /// `Some` for decision subcommands.
    answer: Option<bool>,
    /// Primary document: written to --output or stdout.
    doc: Option<String>,
    /// Human summary lines.
    text: Vec<String>,
    report: Value,
}

impl Outcome {
    fn new(report: Value) -> Self {
        Outcome { answer: None, doc: None, text: Vec::new(), report }
    }
}

fn read(p: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(p)?)
}

/// Reads a tdraw, or planarizes a gdraw.
fn load_drawing(p: &Path) -> Result<TopologicalDrawing> {
    let text = read(p)?;
    if text.trim_start().starts_with("gdraw") {
        ingest_geometric(&parse_gdraw(&text)?)
    } else {
        parse_tdraw(&text)
    }
}

fn load_ssre(p: &Path, k: Option<usize>) -> Result<SsreInstance> {
    let f = parse_ssre(&read(p)?)?;
    if k.is_none() && f.k.is_none() {
        return Err(Error::InvalidK("no budget given in file or with --k".into()));
    }
    SsreInstance::from_file(f, k)
}

fn budget(cli: &Cli) -> OracleBudget {
    match cli.budget {
        Some(n) => OracleBudget::with_nodes(n),
        None => OracleBudget::default(),
    }
}

fn need_k(k: Option<usize>) -> Result<usize> {
    k.ok_or_else(|| Error::InvalidK("--k is required".into()))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.cmd {
        Cmd::Planarize(io) => {
            let d = load_drawing(&io.input)?;
            let mut o = Outcome::new(json!({
                "vertices": d.real_vertices().count(),
                "crossings": d.crossing_count(),
                "faces": d.num_faces(),
            }));
            o.doc = Some(write_tdraw(&d));
            Ok(o)
        }
        Cmd::SplitOne { io, vertex, k, search, report } => {
            let reg = searches();
            let r = split_single_vertex_with(&load_drawing(&io.input)?, *vertex, *k, reg.get(search)?)?;
            let mut o = Outcome::new(json!({
                "faces": r.faces,
                "copies": r.copies,
                "crossings": r.total_crossings,
                "assignment": r.assignment,
            }));
            o.text.push(format!("copies {} crossings {}", r.faces.len(), r.total_crossings));
            if report.as_deref() == Some("json") {
                o.text = vec![o.report.to_string()];
            }
            o.doc = Some(write_tdraw(&r.drawing));
            Ok(o)
        }
        Cmd::DeleteSet { input, k, minimize, selector } => {
            let d = load_drawing(input)?;
            let mut o;
            if *minimize {
                let w = minimize_evd(&d);
                o = Outcome::new(json!({ "size": w.len(), "witness": w }));
                o.text.push(format!("minimum {} deletion {:?}", w.len(), w));
            } else {
                let reg = selectors();
                let r = solve_evd_with(&d, k.unwrap(), reg.get(selector)?);
                o = Outcome::new(serde_json::to_value(&r).unwrap());
                o.answer = Some(r.feasible);
                o.text.push(format!("{} deletion {:?} nodes {}", yes_no(r.feasible), r.witness, r.nodes));
            }
            Ok(o)
        }
        Cmd::Ssre { io, k, strategy, root_edge, trace_branches, check_nesting } => {
            let inst = load_ssre(&io.input, *k)?;
            dp_strategies().get(strategy)?;
            let mut opts = DpOptions {
                strategy: strategy.clone(),
                root_edge: *root_edge,
                check_nesting: *check_nesting,
                ..DpOptions::default()
            };
            if let Some(b) = cli.budget {
                opts.max_entries = b as usize;
            }
            let out = solve_ssre(&inst, &opts)?;
            let mut report = json!({
                "feasible": out.feasible,
                "trace": out.trace,
            });
            let mut o = Outcome::new(Value::Null);
            o.text.push(yes_no(out.feasible).to_string());
            if *trace_branches && inst.k >= inst.s() {
                let edges = inst.candidate_edges();
                let mut list = Vec::new();
                for h in enumerate_copy_branches(inst.s(), inst.k)? {
                    let n = enumerate_edge_branches(&h, &edges).len();
                    o.text.push(format!("branch counts {:?} edge branches {}", h.counts, n));
                    list.push(json!({ "counts": h.counts, "edge_branches": n }));
                }
                report["branches"] = Value::Array(list);
            }
            if let Some(sol) = &out.solution {
                report["copies"] = json!(sol
                    .copy_ids
                    .iter()
                    .zip(&sol.orig)
                    .zip(&sol.neighborhoods)
                    .map(|((id, c), n)| json!({ "id": id, "of": inst.candidates[*c], "neighbors": n }))
                    .collect::<Vec<_>>());
                o.doc = Some(write_tdraw(&sol.drawing));
            }
            o.report = report;
            o.answer = Some(out.feasible);
            Ok(o)
        }
        Cmd::Oracle { problem, input, k, vertex, targets } => oracle(cli, *problem, input, *k, *vertex, targets),
        Cmd::GenVc(io) => {
            let d = load_drawing(&io.input)?;
            let (g, ids) = real_graph(&d);
            let rot = if d.crossing_count() == 0 { Some(planar_rotation(&d, &ids)) } else { None };
            let out = gen_vc(&g, rot.as_ref())?;
            let mut o = Outcome::new(json!({ "vertices": out.real_vertices().count(), "crossings": out.crossing_count() }));
            o.doc = Some(write_tdraw(&out));
            Ok(o)
        }
        Cmd::GenFc { io, targets, k, assume_unique } => {
            let d = load_drawing(&io.input)?;
            let (g, ids) = real_graph(&d);
            let inst = gen_fc(&g, &positions(&ids, targets)?, *k, *assume_unique)?;
            let mut o = Outcome::new(json!({ "candidate": inst.candidates[0], "k": inst.k }));
            o.doc = Some(write_ssre(&inst.to_file()));
            Ok(o)
        }
        Cmd::GenRandom { kind, n, density, s, extra, k, geometric, output: _ } => {
            let mut spec = GeneratorSpec::new(gen_kind(*kind), *n, cli.seed);
            spec.density = *density;
            spec.s = *s;
            spec.extra = *extra;
            spec.k = *k;
            let doc = match gen_random(&spec)? {
                Generated::Drawing(d) => write_tdraw(&d),
                Generated::Geometric(g, _) if *geometric => write_gdraw(&g),
                Generated::Geometric(_, d) => write_tdraw(&d),
                Generated::Ssre(i) => write_ssre(&i.to_file()),
            };
            let mut o = Outcome::new(serde_json::to_value(&spec).unwrap());
            o.doc = Some(doc);
            Ok(o)
        }
        Cmd::Validate { input, scd, dump } => validate_cmd(input, *scd, dump.as_deref()),
        Cmd::ExportSvg { io, solve } => {
            let text = read(&io.input)?;
            let doc = if text.contains("\nS:") {
                let inst = load_ssre(&io.input, None)?;
                let pistils_of = |d: &TopologicalDrawing| -> Vec<usize> {
                    inst.pistils().iter().filter_map(|&p| d.index_of(inst.drawing.vertex(p).id)).collect()
                };
                if *solve {
                    let out = solve_ssre(&inst, &DpOptions::default())?;
                    let sol = out.solution.ok_or_else(|| Error::InvalidInstance("instance has no solution".into()))?;
                    let copies = sol.copy_ids.iter().filter_map(|&c| sol.drawing.index_of(c)).collect();
                    export_svg(&sol.drawing, &SvgMarks { pistils: pistils_of(&sol.drawing), copies })
                } else {
                    export_svg(&inst.drawing, &SvgMarks { pistils: pistils_of(&inst.drawing), copies: Vec::new() })
                }
            } else {
                export_svg(&load_drawing(&io.input)?, &SvgMarks::default())
            };
            let mut o = Outcome::new(json!({ "bytes": doc.len() }));
            o.doc = Some(doc);
            Ok(o)
        }
    }
}

/// The drawn graph on real vertices, renumbered by ascending id, and the
/// sorted ids.
fn real_graph(d: &TopologicalDrawing) -> (Graph, Vec<usize>) {
    let mut ids: Vec<usize> = d.real_vertices().map(|v| d.vertex(v).id).collect();
    ids.sort_unstable();
    let pos = |v: usize| ids.binary_search(&d.vertex(v).id).unwrap();
    let mut g = Graph::new(ids.len());
    for e in d.original_edges().values() {
        g.add_edge(pos(e.ends.0), pos(e.ends.1));
    }
    (g, ids)
}

/// Rotation of a crossing-free drawing in the numbering of [`real_graph`].
fn planar_rotation(d: &TopologicalDrawing, ids: &[usize]) -> Vec<Vec<usize>> {
    let pos = |v: usize| ids.binary_search(&d.vertex(v).id).unwrap();
    let mut rot = vec![Vec::new(); ids.len()];
    for v in d.real_vertices() {
        rot[pos(v)] = d.rotation(v).iter().map(|&h| pos(d.head(h))).collect();
    }
    rot
}

fn positions(ids: &[usize], targets: &Option<Vec<usize>>) -> Result<Vec<usize>> {
    match targets {
        None => Ok((0..ids.len()).collect()),
        Some(t) => t.iter().map(|&x| ids.binary_search(&x).map_err(|_| Error::UnknownVertex(x))).collect(),
    }
}

fn gen_kind(k: Kind) -> GenKind {
    match k {
        Kind::VcReduction => GenKind::VcReduction,
        Kind::FcReduction => GenKind::FcReduction,
        Kind::RandomConvex => GenKind::RandomConvex,
        Kind::RandomPerturbed => GenKind::RandomPerturbed,
        Kind::RandomSsre => GenKind::RandomSsre,
    }
}

fn oracle(
    cli: &Cli,
    problem: Problem,
    input: &Path,
    k: Option<usize>,
    vertex: Option<usize>,
    targets: &Option<Vec<usize>>,
) -> Result<Outcome> {
    let b = budget(cli);
    let (answer, witness): (Option<bool>, Value) = match problem {
        Problem::Split => {
            let (g, _) = real_graph(&load_drawing(input)?);
            (Some(oracle_splitting_number(&g, need_k(k)?, &b)?), Value::Null)
        }
        Problem::Ssre => {
            let w = oracle_ssre(&load_ssre(input, k)?, &b)?;
            (Some(w.is_some()), serde_json::to_value(&w).unwrap())
        }
        Problem::Evd => {
            let w = oracle_evd(&load_drawing(input)?, need_k(k)?, &b)?;
            (Some(w.is_some()), json!(w))
        }
        Problem::Single => {
            let v = vertex.ok_or_else(|| Error::InvalidInstance("--vertex is required".into()))?;
            let c = oracle_single_split(&load_drawing(input)?, v, need_k(k)?, &b)?;
            (None, json!(c))
        }
        Problem::Facecover => {
            let (g, ids) = real_graph(&load_drawing(input)?);
            let w = oracle_face_cover(&g, &positions(&ids, targets)?, need_k(k)?, &b)?;
            (Some(w.is_some()), json!(w))
        }
    };
    let wtext = witness.to_string();
    let answer_text = match answer {
        Some(a) => yes_no(a).to_string(),
        None => wtext.clone(),
    };
    let mut o = Outcome::new(json!({
        "answer": answer_text,
        "witness": witness,
        "witness-hash": witness_hash(&wtext),
    }));
    o.text.push(answer_text);
    o.answer = answer;
    Ok(o)
}

fn validate_cmd(input: &Path, scd: bool, dump: Option<&Path>) -> Result<Outcome> {
    let text = read(input)?;
    let d = if text.contains("\nS:") {
        let inst = SsreInstance::from_file(parse_ssre(&text)?, Some(usize::MAX))?;
        if scd {
            reduce(&inst)?.bl
        } else {
            inst.drawing
        }
    } else {
        match parse_tdraw(&text) {
            Ok(d) => d,
            Err(e @ (Error::InvalidDrawing(_) | Error::InvalidRotationSystem(_))) => {
                let mut o = Outcome::new(json!({ "valid": false, "error": e.to_string() }));
                o.text.push(format!("invalid: {e}"));
                o.answer = Some(false);
                return Ok(o);
            }
            Err(e) => return Err(e),
        }
    };
    let report = validate(&d);
    let mut o = Outcome::new(json!({ "valid": report.is_empty(), "violations": report.violations }));
    let mut ok = report.is_empty();
    if scd && ok {
        let d = if d.crossing_count() == 0 { vsplit::ssre_prep::double_bridges(&d)?.0 } else { d };
        let s = build_scd(&d)?;
        let bad = validate_scd(&d, &s);
        ok = bad.is_empty();
        o.report["scd"] = json!({ "width": s.width(), "violations": bad });
        o.text.push(format!("scd width {} violations {}", s.width(), bad.len()));
        if let Some(p) = dump {
            std::fs::write(p, write_scd(&d, &s))?;
        }
    }
    o.text.insert(0, if ok { "valid".into() } else { "invalid".into() });
    for v in &report.violations {
        o.text.push(format!("{v:?}"));
    }
    o.answer = Some(ok);
    Ok(o)
}

fn output_path(cmd: &Cmd) -> Option<&Path> {
    match cmd {
        Cmd::Planarize(io) | Cmd::GenVc(io) => io.output.as_deref(),
        Cmd::SplitOne { io, .. } | Cmd::Ssre { io, .. } | Cmd::GenFc { io, .. } | Cmd::ExportSvg { io, .. } => {
            io.output.as_deref()
        }
        Cmd::GenRandom { output, .. } => output.as_deref(),
        _ => None,
    }
}

/// Subcommands whose main product is the document.
fn emits_doc(cmd: &Cmd) -> bool {
    matches!(
        cmd,
        Cmd::Planarize(_) | Cmd::GenVc(_) | Cmd::GenFc { .. } | Cmd::GenRandom { .. } | Cmd::ExportSvg { .. }
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            let out = output_path(&cli.cmd);
            if let (Some(doc), Some(p)) = (&o.doc, out) {
                if let Err(e) = std::fs::write(p, doc) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if cli.json {
                let mut r = o.report;
                if let Some(a) = o.answer {
                    if let Value::Object(m) = &mut r {
                        m.entry("answer").or_insert(json!(yes_no(a)));
                    }
                }
                println!("{r}");
            } else {
                for l in &o.text {
                    println!("{l}");
                }
                if out.is_none() && emits_doc(&cli.cmd) {
                    if let Some(doc) = &o.doc {
                        print!("{doc}");
                    }
                }
            }
            match o.answer {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
