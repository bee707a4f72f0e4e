//! Command-line front end: reads JSON inputs, runs one library operation and
//! renders a JSON report.
//!
//! Exit codes: 0 when every check passes, 1 when some check fails, 2 on an
//! input error (diagnostic only, no report).

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::ehrhart::{
    cumulative_pruned_count, em_reciprocity_check, inner_pruned_count, normal_fan_of,
    pio_reciprocity_check, FanJson, FullDimFan, HPolytope,
};
use crate::error::{Error, Result};
use crate::exact::{format_vec, rat_vec};
use crate::hypergraph::{Hypergraph, HypergraphJson};
use crate::permutahedron::{count_to_rat, GPerm};
use crate::report::Report;
use crate::setfn::SetFn;
use crate::verify::verify_all;

#[derive(Debug, Parser)]
#[command(name = "gperm", version, about = "Exact reciprocity checks for generalized permutahedra and hypergraphs")]
pub struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
#[command(rename_all = "kebab-case")]
pub enum Command {
    /// Face-count polynomial chi_{d,k} of a generalized permutahedron and its reciprocity.
    Chi(ChiArgs),
    /// Vertices and face lattice of a generalized permutahedron.
    Faces(SetFnArgs),
    /// Chromatic polynomial of a hypergraph.
    HgChromatic(HgChromaticArgs),
    /// Acyclic headings and their in-degree vectors.
    HgHeadings(HgArgs),
    /// Reciprocity between chromatic polynomial, compatible pairs and vertex counts.
    HgReciprocity(HgReciprocityArgs),
    /// Ehrhart quasipolynomial of a rational polytope and Ehrhart-Macdonald reciprocity.
    Ehrhart(EhrhartArgs),
    /// Inner and cumulative pruned counts and their reciprocity.
    Pruned(PrunedArgs),
    /// Seeded random run of every check in the library.
    VerifyAll(VerifyArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct SetFnArgs {
    /// Set function JSON: {"d": 3, "values": ["0", ...]}.
    #[arg(long)]
    pub setfn: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct ChiArgs {
    #[arg(long)]
    pub setfn: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    /// Also report chi_{d,k}(m) at this m.
    #[arg(long)]
    pub m: Option<i64>,
    #[arg(long, default_value_t = 3)]
    pub m_max: i64,
}

#[derive(Debug, Args, Serialize)]
pub struct HgArgs {
    /// Hypergraph JSON: {"nodes": [...], "edges": [[...], ...]}.
    #[arg(long)]
    pub hg: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct HgChromaticArgs {
    #[arg(long)]
    pub hg: PathBuf,
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Debug, Args, Serialize)]
pub struct HgReciprocityArgs {
    #[arg(long)]
    pub hg: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub m_max: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct EhrhartArgs {
    /// H-polytope JSON: {"d": 2, "rows": [...], "bbox": [[0, 1], [0, 1]]}.
    #[arg(long)]
    pub poly: PathBuf,
    /// Dimension of the polytope (default: ambient dimension).
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub period: u32,
    #[arg(long, default_value_t = 4)]
    pub t_max: i64,
}

#[derive(Debug, Args, Serialize)]
pub struct PrunedArgs {
    #[arg(long)]
    pub poly: PathBuf,
    /// Fan JSON: {"cones": [{"d": 2, "rows": [...]}, ...]}.
    #[arg(long, conflicts_with = "setfn", required_unless_present = "setfn")]
    pub fan: Option<PathBuf>,
    /// Use the normal fan of this set function's polytope.
    #[arg(long)]
    pub setfn: Option<PathBuf>,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub period: u32,
    #[arg(long, default_value_t = 4)]
    pub t_max: i64,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
}

/// Result of one invocation: exit code, report on stdout, diagnostic on stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    match with_jobs(cli.jobs, || dispatch(&cli.command)) {
        Ok(mut report) => {
            report.command = serde_json::to_value(&cli.command).expect("serializable arguments");
            report.timing_ms = Some(start.elapsed().as_millis() as u64);
            let code = if report.all_pass() { 0 } else { 1 };
            let stdout = serde_json::to_string_pretty(&report).expect("serializable report") + "\n";
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[cfg(feature = "parallel")]
fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match jobs {
        None => f(),
        Some(0) => Err(Error::InvalidArgument("--jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(f),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<T>(jobs: Option<usize>, f: impl FnOnce() -> Result<T>) -> Result<T> {
    if jobs.is_some_and(|n| n > 1) {
        log::warn!("built without parallel support; --jobs ignored");
    }
    f()
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_setfn(path: &Path) -> Result<SetFn> {
    let z: SetFn = read_json(path)?;
    if !z.is_submodular() {
        return Err(Error::NotSubmodular);
    }
    Ok(z)
}

fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    Hypergraph::try_from(read_json::<HypergraphJson>(path)?)
}

fn read_polytope(path: &Path) -> Result<HPolytope> {
    let q: HPolytope = read_json(path)?;
    q.validate()?;
    Ok(q)
}

fn dispatch(command: &Command) -> Result<Report> {
    match command {
        Command::Chi(a) => chi(a),
        Command::Faces(a) => faces(a),
        Command::HgChromatic(a) => hg_chromatic(a),
        Command::HgHeadings(a) => hg_headings(a),
        Command::HgReciprocity(a) => hg_reciprocity(a),
        Command::Ehrhart(a) => ehrhart(a),
        Command::Pruned(a) => pruned(a),
        Command::VerifyAll(a) => verify_all(a.seed, a.trials),
    }
}

fn chi(a: &ChiArgs) -> Result<Report> {
    let p = GPerm::new(read_setfn(&a.setfn)?)?;
    let mut report = p.verify_reciprocity(a.k, a.m_max)?;
    report.set_result("d", p.d());
    report.set_result("k", a.k);
    if let Some(m) = a.m {
        report.set_result("count", p.chi_dk(a.k, m)?);
    }
    Ok(report)
}

fn faces(a: &SetFnArgs) -> Result<Report> {
    let p = GPerm::new(read_setfn(&a.setfn)?)?;
    let mut report = Report::new();
    let json = p.to_json()?;
    let faces = p.face_lattice()?;
    // Each face's longest composition has d - dim F blocks.
    for (f, comps) in faces.iter().zip(p.compositions_by_face()?) {
        let blocks = comps.iter().map(|c| c.len()).max().unwrap_or(0);
        report.check(
            format!("face {:?}: max blocks = d - dim", f.vertex_ids),
            blocks,
            p.d() - f.dim,
        );
    }
    for key in ["d", "vertices", "faces"] {
        report.set_result(key, &json[key]);
    }
    Ok(report)
}

fn hg_chromatic(a: &HgChromaticArgs) -> Result<Report> {
    let h = read_hypergraph(&a.hg)?;
    let chi = h.chromatic_polynomial()?;
    let mut report = Report::new();
    report.set_result("nodes", h.names());
    report.set_result("polynomial", chi.to_strings());
    if let Some(m) = a.m {
        let count = h.chromatic_count(m)?;
        report.check(format!("chi({m}) = proper colorings"), chi.eval_int(m as i64), count_to_rat(count));
        report.set_result("count", count);
    }
    Ok(report)
}

fn hg_headings(a: &HgArgs) -> Result<Report> {
    let h = read_hypergraph(&a.hg)?;
    let headings = h.acyclic_headings()?;
    let names = h.names();
    let heads: Vec<Vec<&str>> = headings
        .iter()
        .map(|s| s.heads.iter().map(|&i| names[i].as_str()).collect())
        .collect();
    let vertices = h.vertices_via_headings()?;
    let by_greedy = crate::permutahedron::vertices(&h.setfn())?;
    let mut report = Report::new();
    let as_rat: Vec<_> = vertices.iter().map(|v| rat_vec(v)).collect();
    report.check("in-degree vectors = greedy vertices", as_rat == by_greedy, true);
    let chi = h.chromatic_polynomial()?;
    let sign = if h.d() % 2 == 0 { 1 } else { -1 };
    report.check(
        "(-1)^d chi(-1) = acyclic headings",
        chi.eval_int(-1) * crate::exact::rat(sign),
        count_to_rat(headings.len() as u64),
    );
    report.set_result("nodes", names);
    report.set_result("count", headings.len());
    report.set_result("headings", heads);
    report.set_result("vertices", by_greedy.iter().map(|v| format_vec(v)).collect::<Vec<_>>());
    Ok(report)
}

fn hg_reciprocity(a: &HgReciprocityArgs) -> Result<Report> {
    let h = read_hypergraph(&a.hg)?;
    let chi = h.chromatic_polynomial()?;
    let gp = GPerm::new(h.setfn())?;
    let sign = crate::exact::rat(if h.d() % 2 == 0 { 1 } else { -1 });
    let mut report = Report::new();
    let mut pairs = Vec::new();
    for m in 1..=a.m_max {
        let compatible = h.compatible_pairs_count(m)?;
        let lhs = &sign * chi.eval_int(-(m as i64));
        report.check(format!("(-1)^d chi(-{m}) = compatible pairs"), lhs.clone(), count_to_rat(compatible));
        let vertex_sum = gp.reciprocity_rhs(0, m as i64)?;
        report.check(format!("(-1)^d chi(-{m}) = sum of vertex counts"), lhs, count_to_rat(vertex_sum));
        report.check(
            format!("chi({m}) = chi_d,0({m})"),
            h.chromatic_count(m)?,
            gp.chi_dk(0, m as i64)?,
        );
        pairs.push(compatible);
    }
    report.check(
        "(-1)^d chi(-1) = acyclic headings",
        &sign * chi.eval_int(-1),
        count_to_rat(h.acyclic_headings()?.len() as u64),
    );
    report.set_result("nodes", h.names());
    report.set_result("polynomial", chi.to_strings());
    report.set_result("compatible_pairs", pairs);
    Ok(report)
}

fn ehrhart(a: &EhrhartArgs) -> Result<Report> {
    let q = read_polytope(&a.poly)?;
    let degree = a.degree.unwrap_or(q.d);
    let mut report = em_reciprocity_check(&q, degree, a.period, a.t_max)?;
    let counts = (1..=a.t_max).map(|t| q.count_lattice(t)).collect::<Result<Vec<_>>>()?;
    let open = q.interior();
    let interior = (1..=a.t_max).map(|t| open.count_lattice(t)).collect::<Result<Vec<_>>>()?;
    report.set_result("counts", counts);
    report.set_result("interior_counts", interior);
    Ok(report)
}

fn pruned(a: &PrunedArgs) -> Result<Report> {
    let q = read_polytope(&a.poly)?;
    let fan = match (&a.fan, &a.setfn) {
        (Some(path), _) => FullDimFan::try_from(read_json::<FanJson>(path)?)?,
        (None, Some(path)) => normal_fan_of(&GPerm::new(read_setfn(path)?)?),
        (None, None) => return Err(Error::InvalidArgument("--fan or --setfn is required".into())),
    };
    let degree = a.degree.unwrap_or(q.d);
    let mut report = pio_reciprocity_check(&q, &fan, degree, a.period, a.t_max)?;
    let open = q.interior();
    let inner = (1..=a.t_max).map(|t| inner_pruned_count(&open, &fan, t)).collect::<Result<Vec<_>>>()?;
    let cumulative = (1..=a.t_max)
        .map(|t| cumulative_pruned_count(&q, &fan, t))
        .collect::<Result<Vec<_>>>()?;
    report.set_result("inner_counts", inner);
    report.set_result("cumulative_counts", cumulative);
    Ok(report)
}
