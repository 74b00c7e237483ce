//! Command-line front end: argument parsing, input loading and report
//! output. `main` is a thin wrapper around [`run`].

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use qldpc_absorb::alist::{parse_alist, write_alist};
use qldpc_absorb::css::{css_valid, hypergraph_product};
use qldpc_absorb::decoder::{
    classify_outcome, compute_syndrome, convergence_report, status_line, ErrorPattern, GallagerB,
    Syndrome, DEFAULT_MAX_ITERS,
};
use qldpc_absorb::families::{edge_text, fixture_by_name, generate, FamilySpec, ThetaVariant};
use qldpc_absorb::gf2::{BitMatrix, BitVector};
use qldpc_absorb::report::{
    census_payload, sha256_hex, trace_payload, value_of, AnalysisReport, InputDescriptor,
    InputSource,
};
use qldpc_absorb::structures::{
    census_absorbing_with, census_failure_inducing_with, certify_with, CensusConfig, CertifyConfig,
    Parallelism,
};
use qldpc_absorb::tanner::{format_nodes, TannerGraph, VarSubset};

#[derive(Parser, Debug)]
#[command(name = "qldpc", version, about = "Gallager-B decoding and absorbing-set analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decode an error pattern or a syndrome and print the trace.
    Decode(DecodeArgs),
    /// Enumerate failure-inducing sets and/or absorbing sets.
    Census(CensusArgs),
    /// Check which failure results hold for a set and its companions.
    Certify(CertifyArgs),
    /// Hypergraph product of two parity-check matrices.
    Hgp(HgpArgs),
    /// Write a family member or fixture as an alist file.
    Generate(GenerateArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Named fixture: fig1, fig2a, fig3a, fig5, fig6, ex7_H.
    #[arg(long)]
    fixture: Option<String>,
    /// Parity-check matrix in alist format.
    #[arg(long)]
    alist: Option<PathBuf>,
    /// Family member: path:A, cycle:A, theta:A,B,C,variables|checks,
    /// dumbbell:A1,A2,B.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DecodeArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Error support ("v1,v4") or bit string of length n.
    #[arg(long, conflicts_with = "syndrome", required_unless_present = "syndrome")]
    error: Option<String>,
    /// Syndrome bit string of length m.
    #[arg(long)]
    syndrome: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
    max_iters: usize,
    /// Stabilizer matrix (fixture name or alist file); defaults to H.
    #[arg(long)]
    stabilizers: Option<String>,
    /// Include per-iteration edge messages.
    #[arg(long)]
    trace: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Decode every error pattern up to this weight.
    #[arg(long, required_unless_present = "abs_size")]
    fis_weight: Option<usize>,
    /// List absorbing sets up to this size.
    #[arg(long)]
    abs_size: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
    max_iters: usize,
    /// Evaluate on one thread.
    #[arg(long)]
    sequential: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[command(flatten)]
    source: GraphSource,
    /// The set put in error, e.g. "v1,v2,v5".
    #[arg(long)]
    a1: String,
    /// Further absorbing sets (repeatable).
    #[arg(long = "with")]
    others: Vec<String>,
    #[arg(long, default_value_t = 20)]
    max_connector_nodes: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct HgpArgs {
    /// Fixture name or alist file.
    #[arg(long)]
    h1: String,
    /// Fixture name or alist file.
    #[arg(long)]
    h2: String,
    /// Also write H_X and H_Z as alist files with this path prefix.
    #[arg(long)]
    write_prefix: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Destination alist file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failures, split by exit status.
#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl From<qldpc_absorb::Error> for Failure {
    fn from(e: qldpc_absorb::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn input<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Input(msg.into()))
}

/// Runs one command line (including the program name). Human output goes to
/// `stdout`, diagnostics to `stderr`; the return value is the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let command: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let result = match &cli.command {
        Command::Decode(a) => decode(a, command),
        Command::Census(a) => census(a, command),
        Command::Certify(a) => certify(a, command),
        Command::Hgp(a) => hgp(a, command),
        Command::Generate(a) => generate_cmd(a),
    };
    match result.and_then(|(text, report, out)| emit(stdout, &text, report, out)) {
        Ok(()) => 0,
        Err(Failure::Input(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            2
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(stderr, "internal error: {m}");
            1
        }
    }
}

/// Human text, optional report, and where the report goes.
type Emitted = (String, Option<AnalysisReport>, Option<PathBuf>);

fn emit(stdout: &mut dyn Write, text: &str, report: Option<AnalysisReport>, out: Option<PathBuf>) -> Outcome<()> {
    if let (Some(report), Some(path)) = (report, out) {
        write_file(&path, &report.to_json())?;
    }
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Failure::Input(format!("writing output: {e}")))
}

fn write_file(path: &Path, text: &str) -> Outcome<()> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_file(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

struct Loaded {
    graph: TannerGraph,
    descriptor: InputDescriptor,
}

fn load_graph(src: &GraphSource) -> Outcome<Loaded> {
    if let Some(name) = &src.fixture {
        let f = fixture_by_name(name)?;
        return Ok(Loaded {
            descriptor: InputDescriptor {
                source: InputSource::Fixture,
                name: f.name.to_string(),
                sha256: f.checksum(),
            },
            graph: f.graph,
        });
    }
    if let Some(path) = &src.alist {
        let text = read_file(path)?;
        let h = parse_alist(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        return Ok(Loaded {
            graph: TannerGraph::from_biadjacency(&h),
            descriptor: InputDescriptor {
                source: InputSource::File,
                name: path.display().to_string(),
                sha256: sha256_hex(text.as_bytes()),
            },
        });
    }
    let spec_text = src.family.as_deref().unwrap_or_default();
    let spec = parse_family(spec_text)?;
    let graph = generate(&spec)?;
    Ok(Loaded {
        descriptor: InputDescriptor {
            source: InputSource::Family,
            name: spec_text.to_string(),
            sha256: sha256_hex(edge_text(&graph).as_bytes()),
        },
        graph,
    })
}

/// A matrix given as a fixture name or an alist path.
fn load_matrix(source: &str) -> Outcome<(BitMatrix, InputDescriptor)> {
    if let Ok(f) = fixture_by_name(source) {
        let d = InputDescriptor {
            source: InputSource::Fixture,
            name: f.name.to_string(),
            sha256: f.checksum(),
        };
        return Ok((f.graph.to_biadjacency(), d));
    }
    let path = Path::new(source);
    if !path.exists() {
        return input(format!("{source:?} is neither a fixture name nor a readable file"));
    }
    let text = read_file(path)?;
    let h = parse_alist(&text).map_err(|e| Failure::Input(format!("{source}: {e}")))?;
    let d = InputDescriptor {
        source: InputSource::File,
        name: source.to_string(),
        sha256: sha256_hex(text.as_bytes()),
    };
    Ok((h, d))
}

fn parse_family(text: &str) -> Outcome<FamilySpec> {
    let Some((kind, params)) = text.split_once(':') else {
        return input(format!("family {text:?}: expected KIND:PARAMS, e.g. cycle:6"));
    };
    let fields: Vec<&str> = params.split(',').map(str::trim).collect();
    let num = |i: usize| -> Outcome<usize> {
        fields
            .get(i)
            .and_then(|f| f.parse().ok())
            .ok_or_else(|| Failure::Input(format!("family {text:?}: parameter {} is not a number", i + 1)))
    };
    let arity = |n: usize| -> Outcome<()> {
        if fields.len() == n {
            Ok(())
        } else {
            input(format!("family {text:?}: {kind} takes {n} parameters"))
        }
    };
    Ok(match kind {
        "path" => {
            arity(1)?;
            FamilySpec::Path { a: num(0)? }
        }
        "cycle" => {
            arity(1)?;
            FamilySpec::Cycle { a: num(0)? }
        }
        "theta" => {
            arity(4)?;
            let variant = match fields[3] {
                "variables" => ThetaVariant::JunctionsAreVariables,
                "checks" => ThetaVariant::JunctionsAreChecks,
                v => return input(format!("family {text:?}: theta junctions must be 'variables' or 'checks', not {v:?}")),
            };
            FamilySpec::Theta { a: num(0)?, b: num(1)?, c: num(2)?, variant }
        }
        "dumbbell" => {
            arity(3)?;
            FamilySpec::Dumbbell { a1: num(0)?, a2: num(1)?, b: num(2)? }
        }
        other => return input(format!("unknown family {other:?}; use path, cycle, theta or dumbbell")),
    })
}

/// `"v1,v4"` (the `v` is optional) as zero-based indices.
fn parse_support(text: &str, n: usize) -> Outcome<Vec<usize>> {
    let mut out = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let digits = tok.strip_prefix('v').unwrap_or(tok);
        let label: usize = digits
            .parse()
            .map_err(|_| Failure::Input(format!("{tok:?} is not a variable label like v3")))?;
        if label == 0 || label > n {
            return input(format!("variable {tok} outside v1..v{n}"));
        }
        if out.contains(&(label - 1)) {
            return input(format!("variable {tok} listed twice"));
        }
        out.push(label - 1);
    }
    out.sort_unstable();
    Ok(out)
}

fn parse_subset(text: &str, n: usize) -> Outcome<VarSubset> {
    Ok(VarSubset::new(n, parse_support(text, n)?)?)
}

/// An error pattern as a support list, or as a bit string of length `n`.
fn parse_error(text: &str, n: usize) -> Outcome<ErrorPattern> {
    let is_bits = !text.is_empty() && text.chars().all(|c| c == '0' || c == '1') && text.len() == n;
    if is_bits {
        return Ok(ErrorPattern::new(BitVector::parse_bits(text)?));
    }
    Ok(ErrorPattern::from_support(n, parse_support(text, n)?))
}

fn parse_bits_exact(text: &str, len: usize, what: &str) -> Outcome<BitVector> {
    let v = BitVector::parse_bits(text)?;
    if v.len() != len {
        return input(format!("{what} has {} bits, expected {len}", v.len()));
    }
    Ok(v)
}

fn decode(a: &DecodeArgs, command: Vec<String>) -> Outcome<Emitted> {
    let Loaded { graph, descriptor } = load_graph(&a.source)?;
    let mut inputs = vec![descriptor];
    let n = graph.num_vars();
    let stabilizers = match &a.stabilizers {
        Some(src) => {
            let (h, d) = load_matrix(src)?;
            inputs.push(d);
            h
        }
        None => graph.to_biadjacency(),
    };
    if stabilizers.num_cols() != n {
        return input(format!("stabilizer matrix has {} columns, graph has {n} variables", stabilizers.num_cols()));
    }
    let error = a.error.as_deref().map(|t| parse_error(t, n)).transpose()?;
    let syndrome = match (&error, &a.syndrome) {
        (Some(e), _) => compute_syndrome(&graph, e)?,
        (None, Some(s)) => Syndrome::new(parse_bits_exact(s, graph.num_checks(), "syndrome")?),
        (None, None) => return input("give --error or --syndrome"),
    };
    let trace = GallagerB::new(&graph).with_max_iters(a.max_iters).decode(&syndrome)?;
    let outcome = error.as_ref().map(|e| classify_outcome(e, &trace, &stabilizers)).transpose()?;
    let report_e = error.clone().unwrap_or_else(|| ErrorPattern::zeros(n));
    let conv = convergence_report(&trace, &report_e, &syndrome);

    let mut text = String::new();
    if let Some(e) = &error {
        let _ = writeln!(text, "error      {}  {}", e.bits(), format_nodes('v', &e.support()));
    }
    let _ = writeln!(text, "syndrome   {}", syndrome.bits());
    text.push_str(&trace.render(a.trace));
    let _ = writeln!(text, "terminal window:");
    for r in trace.terminal_window() {
        let _ = writeln!(
            text,
            "  iter {:>3}  syn_hat={}  e_hat={}",
            r.iteration,
            r.estimated_syndrome,
            format_nodes('v', &r.estimated_error.support())
        );
    }
    if let Some(o) = outcome {
        let _ = writeln!(text, "outcome: {}", value_of(o).as_str().unwrap_or_default());
    }
    let _ = writeln!(
        text,
        "variables not converged: {}\nchecks not matched: {}",
        format_nodes('v', &conv.vars_not_converged),
        format_nodes('c', &conv.checks_not_matched)
    );

    let payload = trace_payload(&trace, error.as_ref(), outcome, &conv, a.trace);
    let report = AnalysisReport::new(command, inputs, payload)
        .with_parameter("max_iters", a.max_iters)
        .with_parameter("messages", a.trace)
        .with_parameter("status", status_line(&trace.status));
    Ok((text, Some(report), a.output.out.clone()))
}

fn census(a: &CensusArgs, command: Vec<String>) -> Outcome<Emitted> {
    let Loaded { graph, descriptor } = load_graph(&a.source)?;
    let parallelism = if a.sequential { Parallelism::Sequential } else { Parallelism::default() };
    let mut text = String::new();
    let mut result = serde_json::Map::new();
    if let Some(w) = a.fis_weight {
        let config = CensusConfig { parallelism, max_iters: a.max_iters };
        let c = census_failure_inducing_with(&graph, &graph.to_biadjacency(), w, &config)?;
        let _ = writeln!(text, "failure-inducing sets up to weight {w} ({} patterns decoded)", c.patterns_tested);
        if c.failure_inducing_sets.is_empty() {
            let _ = writeln!(text, "  no failure-inducing sets <= {w}");
        }
        for f in &c.failure_inducing_sets {
            let _ = writeln!(
                text,
                "  {:<16} {:<30} vars not converged {:<16} checks not matched {}",
                f.subset.to_string(),
                value_of(f.outcome).as_str().unwrap_or_default(),
                format_nodes('v', &f.report.vars_not_converged),
                format_nodes('c', &f.report.checks_not_matched)
            );
        }
        let _ = writeln!(text, "critical number: {}\nstrength: {}", c.critical_number, c.strength);
        result.insert("failure_inducing".into(), census_payload(&c));
    }
    if let Some(size) = a.abs_size {
        let sets = census_absorbing_with(&graph, size, parallelism)?;
        let _ = writeln!(text, "absorbing sets up to size {size}: {}", sets.len());
        for (s, (aa, bb)) in &sets {
            let _ = writeln!(text, "  {s:<24} ({aa},{bb})");
        }
        let listed: Vec<_> = sets
            .iter()
            .map(|(s, (aa, bb))| json!({"subset": s.to_string(), "a": aa, "b": bb}))
            .collect();
        result.insert("absorbing".into(), json!({"size_bound": size, "count": sets.len(), "sets": listed}));
    }
    let report = AnalysisReport::new(command, vec![descriptor], result.into())
        .with_parameter("fis_weight", a.fis_weight)
        .with_parameter("abs_size", a.abs_size)
        .with_parameter("max_iters", a.max_iters);
    Ok((text, Some(report), a.output.out.clone()))
}

fn certify(a: &CertifyArgs, command: Vec<String>) -> Outcome<Emitted> {
    let Loaded { graph, descriptor } = load_graph(&a.source)?;
    let n = graph.num_vars();
    let a1 = parse_subset(&a.a1, n)?;
    let others = a.others.iter().map(|t| parse_subset(t, n)).collect::<Outcome<Vec<_>>>()?;
    let config = CertifyConfig { max_connector_nodes: a.max_connector_nodes, ..CertifyConfig::default() };
    let r = certify_with(&graph, &a1, &others, &config)?;
    let mut text = format!("A1 = {a1}\n");
    for o in &others {
        let _ = writeln!(text, "with {o}");
    }
    if r.certificates.is_empty() {
        text.push_str("no certificate applies\n");
    }
    for c in &r.certificates {
        let _ = writeln!(text, "{c}");
    }
    for (kind, why) in &r.unsatisfied {
        let _ = writeln!(text, "  not {kind}: {why}");
    }
    let report = AnalysisReport::new(command, vec![descriptor], value_of(&r))
        .with_parameter("a1", a1.to_string())
        .with_parameter("with", others.iter().map(|s| s.to_string()).collect::<Vec<_>>())
        .with_parameter("max_connector_nodes", a.max_connector_nodes);
    Ok((text, Some(report), a.output.out.clone()))
}

fn hgp(a: &HgpArgs, command: Vec<String>) -> Outcome<Emitted> {
    let (h1, d1) = load_matrix(&a.h1)?;
    let (h2, d2) = load_matrix(&a.h2)?;
    let code = hypergraph_product(&h1, &h2)?;
    let valid = css_valid(&code)?;
    let shape = code.shape();
    let mut text = format!(
        "H1 {}x{}, H2 {}x{}\nH_X {}x{}\nH_Z {}x{}\nqubits {}\ncss_valid {valid}\n",
        h1.num_rows(),
        h1.num_cols(),
        h2.num_rows(),
        h2.num_cols(),
        shape.h_x.0,
        shape.h_x.1,
        shape.h_z.0,
        shape.h_z.1,
        shape.n
    );
    let mut files = Vec::new();
    if let Some(prefix) = &a.write_prefix {
        for (suffix, m) in [("hx", &code.h_x), ("hz", &code.h_z)] {
            let path = PathBuf::from(format!("{}_{suffix}.alist", prefix.display()));
            let body = write_alist(m);
            write_file(&path, &body)?;
            let _ = writeln!(text, "wrote {}", path.display());
            files.push(json!({"path": path.display().to_string(), "sha256": sha256_hex(body.as_bytes())}));
        }
    }
    let result = json!({
        "shape": value_of(shape),
        "css_valid": valid,
        "h_x_column_weights": distinct_column_weights(&code.h_x),
        "files": files,
    });
    let report = AnalysisReport::new(command, vec![d1, d2], result);
    Ok((text, Some(report), a.output.out.clone()))
}

/// Distinct column weights of `m`, ascending.
fn distinct_column_weights(m: &BitMatrix) -> Vec<usize> {
    let mut w = m.column_weights();
    w.sort_unstable();
    w.dedup();
    w
}

fn generate_cmd(a: &GenerateArgs) -> Outcome<Emitted> {
    let Loaded { graph, .. } = load_graph(&a.source)?;
    let body = write_alist(&graph.to_biadjacency());
    match &a.out {
        Some(path) => {
            write_file(path, &body)?;
            Ok((format!("wrote {} ({} variables, {} checks)\n", path.display(), graph.num_vars(), graph.num_checks()), None, None))
        }
        None => Ok((body, None, None)),
    }
}
