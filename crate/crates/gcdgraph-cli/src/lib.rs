//! Command-line surface for the gcd-graph library: construction, spectra,
//! structural checks, wreath decomposition, embeddings, and exhaustive
//! agreement sweeps, all emitting deterministic documents (sorted JSON keys,
//! canonically ordered arrays) so that identical configs produce identical
//! bytes.
//!
//! The testable core is [`run`]: it takes a parsed [`JobConfig`] and a byte
//! sink and returns the process exit status (0 success, 1 domain error with
//! a machine-readable error object, 2 usage error). The binary is a thin
//! wrapper that parses argv and forwards to [`run`].

use clap::{Args, Parser, Subcommand, ValueEnum};
use gcdgraph::gcdgraph::{
    gcd_graph, predicate_bipartite, predicate_connected, realize_bipartition, BipartitionRule,
    ConnectednessReason, GcdGraphSpec,
};
use gcdgraph::gf::Field;
use gcdgraph::graphcore::Graph;
use gcdgraph::polyring::Poly;
use gcdgraph::spectrum::{
    certified_spectrum, ramanujan_bruteforce, ramanujan_formula, spectrum, SpectrumTable,
};
use gcdgraph::structure::{classify_perfect, is_prime_graph, wreath_decompose, Perfection};
use gcdgraph::sweep::{sweep_predicates, sweep_ramanujan};
use serde_json::{json, Value};
use std::io::Write;

/// Rings larger than this are rejected by the CLI spectrum command even
/// though the closed form could price them; the eigenvalue table itself
/// would become unwieldy.
pub const MAX_CLI_SPECTRUM_RING: u128 = 1 << 20;
/// Full certification (brute-force cross-check plus moment verification)
/// runs when the ring is at most this large.
pub const MAX_CERTIFY_RING: u128 = 2048;
/// Bipartition sides are re-verified as independent sets up to this ring.
pub const MAX_SIDE_VERIFY_RING: u128 = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Dot,
    Csv,
}

impl OutputFormat {
    fn name(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Dot => "dot",
            OutputFormat::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Connected,
    Bipartite,
    Prime,
    Perfect,
    Anticonnected,
}

impl CheckKind {
    fn name(self) -> &'static str {
        match self {
            CheckKind::Connected => "connected",
            CheckKind::Bipartite => "bipartite",
            CheckKind::Prime => "prime",
            CheckKind::Perfect => "perfect",
            CheckKind::Anticonnected => "anticonnected",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Build,
    Spectrum,
    Check(CheckKind),
    Decompose,
    Embed,
    Sweep,
    Ramanujan,
}

/// Fully resolved job description. Optional fields are present only when
/// the corresponding flag was given; each command validates what it needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub command: Command,
    /// Field spec: "p", "p^m", or "p^m:c0,c1,...,cm" (modulus low to high).
    pub field: String,
    pub f: Option<String>,
    /// Divisor list, ";"-separated polynomial strings.
    pub d: Option<String>,
    pub g: Option<String>,
    /// Path to a target graph JSON file (embed).
    pub target: Option<String>,
    /// Number of divisor classes for unitary-style embeddings.
    pub k: Option<usize>,
    /// Forced extension degree for prescribed-divisor embeddings.
    pub m: Option<u32>,
    /// Degree bound for sweeps.
    pub max_deg: Option<usize>,
    /// Odd-hole search bound (perfection).
    pub hole_bound: u32,
    /// Moment order for spectrum certification.
    pub moment_order: u32,
    pub format: OutputFormat,
    pub output: Option<String>,
    /// Recorded in reports; every computation is deterministic.
    pub seed: u64,
}

// --- argv parsing ---

#[derive(Parser, Debug)]
#[command(
    name = "gcdgraph",
    version,
    about = "gcd-graphs over F_q[x]/(f): exact spectra, structure, embeddings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: CliCmd,
    /// Output format (dot: build only; csv: build and spectrum)
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write the document to this path instead of stdout
    #[arg(long, global = true)]
    pub output: Option<String>,
    /// Odd-hole search bound for perfection checks
    #[arg(long = "L", global = true, default_value_t = 9)]
    pub hole_bound: u32,
    /// Moment order for spectrum certification
    #[arg(long = "K", global = true, default_value_t = 4)]
    pub moment_order: u32,
    /// Seed recorded in reports (all computations are deterministic)
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

/// Shared field/modulus/divisor-set flags.
#[derive(Args, Debug)]
pub struct SpecArgs {
    /// Field spec: "p", "p^m", or "p^m:c0,...,cm"
    #[arg(long)]
    pub field: String,
    /// Modulus polynomial, e.g. "x^2+x"
    #[arg(long = "f")]
    pub f: String,
    /// Divisor set, ";"-separated, e.g. "x;x+1" (omitted or "" = empty set)
    #[arg(long = "D")]
    pub d: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum CliCmd {
    /// Build the gcd-graph and export it (json, dot, or csv edge list)
    Build(SpecArgs),
    /// Exact integral spectrum, certified against brute force when small
    Spectrum(SpecArgs),
    /// Decide a structural predicate and emit its certificate
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Wreath decomposition over a homogeneous ideal (g)
    Decompose {
        #[command(flatten)]
        spec: SpecArgs,
        /// Ideal generator, a proper nonconstant divisor of f
        #[arg(long = "g")]
        g: String,
    },
    /// Embed a target graph as an induced subgraph of a gcd-graph
    Embed {
        /// Base field spec
        #[arg(long)]
        field: String,
        /// Path to the target graph JSON ({"n": ..., "edges": [[u,v], ...]})
        #[arg(long)]
        target: String,
        /// Number of divisor classes in the host divisor set
        #[arg(long = "k")]
        k: Option<usize>,
        /// Prescribed divisors (";"-separated); host modulus is built around them
        #[arg(long = "D")]
        d: Option<String>,
        /// Forced extension degree for prescribed-divisor embeddings
        #[arg(long = "m")]
        m: Option<u32>,
    },
    /// Formula-vs-oracle and predicate-vs-oracle sweeps over all (f, D)
    Sweep {
        /// Field spec
        #[arg(long)]
        field: String,
        /// Sweep all monic moduli of degree 1..=max-deg (0 = empty sweep)
        #[arg(long = "max-deg")]
        max_deg: usize,
    },
    /// One Ramanujan sum: closed form and character-sum oracle side by side
    Ramanujan {
        /// Field spec
        #[arg(long)]
        field: String,
        /// Modulus polynomial
        #[arg(long = "f")]
        f: String,
        /// Residue argument
        #[arg(long = "g")]
        g: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// Connectedness, decided in closed form with a reason
    Connected(SpecArgs),
    /// Bipartiteness, with the realized bipartition rule
    Bipartite(SpecArgs),
    /// Primeness under modular decomposition
    Prime(SpecArgs),
    /// Perfection via the strong perfect graph theorem and closed forms
    Perfect(SpecArgs),
    /// Connectedness of the complement
    Anticonnected(SpecArgs),
}

impl JobConfig {
    /// Parses a full argv (including the program name). Clap errors keep
    /// their usual semantics: usage errors exit 2, help/version exit 0.
    pub fn from_cli(cli: Cli) -> JobConfig {
        let (command, field, f, d, g, target, k, m, max_deg) = match cli.cmd {
            CliCmd::Build(s) => (Command::Build, s.field, Some(s.f), s.d, None, None, None, None, None),
            CliCmd::Spectrum(s) => {
                (Command::Spectrum, s.field, Some(s.f), s.d, None, None, None, None, None)
            }
            CliCmd::Check { what } => {
                let (kind, s) = match what {
                    CheckCmd::Connected(s) => (CheckKind::Connected, s),
                    CheckCmd::Bipartite(s) => (CheckKind::Bipartite, s),
                    CheckCmd::Prime(s) => (CheckKind::Prime, s),
                    CheckCmd::Perfect(s) => (CheckKind::Perfect, s),
                    CheckCmd::Anticonnected(s) => (CheckKind::Anticonnected, s),
                };
                (Command::Check(kind), s.field, Some(s.f), s.d, None, None, None, None, None)
            }
            CliCmd::Decompose { spec, g } => (
                Command::Decompose,
                spec.field,
                Some(spec.f),
                spec.d,
                Some(g),
                None,
                None,
                None,
                None,
            ),
            CliCmd::Embed {
                field,
                target,
                k,
                d,
                m,
            } => (Command::Embed, field, None, d, None, Some(target), k, m, None),
            CliCmd::Sweep { field, max_deg } => (
                Command::Sweep,
                field,
                None,
                None,
                None,
                None,
                None,
                None,
                Some(max_deg),
            ),
            CliCmd::Ramanujan { field, f, g } => (
                Command::Ramanujan,
                field,
                Some(f),
                None,
                Some(g),
                None,
                None,
                None,
                None,
            ),
        };
        JobConfig {
            command,
            field,
            f,
            d,
            g,
            target,
            k,
            m,
            max_deg,
            hole_bound: cli.hole_bound,
            moment_order: cli.moment_order,
            format: cli.format,
            output: cli.output,
            seed: cli.seed,
        }
    }

    pub fn parse_args<I, T>(args: I) -> Result<JobConfig, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        Ok(JobConfig::from_cli(Cli::try_parse_from(args)?))
    }

    /// Canonical argv (program name excluded): subcommand words first, then
    /// flags in a fixed order with defaults spelled out. Parsing these args
    /// reproduces the config exactly.
    pub fn to_canonical_args(&self) -> Vec<String> {
        let mut args: Vec<String> = Vec::new();
        match self.command {
            Command::Build => args.push("build".into()),
            Command::Spectrum => args.push("spectrum".into()),
            Command::Check(kind) => {
                args.push("check".into());
                args.push(kind.name().into());
            }
            Command::Decompose => args.push("decompose".into()),
            Command::Embed => args.push("embed".into()),
            Command::Sweep => args.push("sweep".into()),
            Command::Ramanujan => args.push("ramanujan".into()),
        }
        args.push("--field".into());
        args.push(self.field.clone());
        let mut push_opt = |flag: &str, v: &Option<String>| {
            if let Some(v) = v {
                args.push(flag.into());
                args.push(v.clone());
            }
        };
        push_opt("--f", &self.f);
        push_opt("--D", &self.d);
        push_opt("--g", &self.g);
        push_opt("--target", &self.target);
        if let Some(k) = self.k {
            args.push("--k".into());
            args.push(k.to_string());
        }
        if let Some(m) = self.m {
            args.push("--m".into());
            args.push(m.to_string());
        }
        if let Some(b) = self.max_deg {
            args.push("--max-deg".into());
            args.push(b.to_string());
        }
        args.push("--L".into());
        args.push(self.hole_bound.to_string());
        args.push("--K".into());
        args.push(self.moment_order.to_string());
        args.push("--format".into());
        args.push(self.format.name().into());
        if let Some(o) = &self.output {
            args.push("--output".into());
            args.push(o.clone());
        }
        args.push("--seed".into());
        args.push(self.seed.to_string());
        args
    }

    /// Canonical single-line rendering of the config.
    pub fn to_canonical_string(&self) -> String {
        self.to_canonical_args()
            .iter()
            .map(|a| {
                if a.is_empty() || a.contains(' ') || a.contains(';') {
                    format!("{a:?}")
                } else {
                    a.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

// --- execution ---

enum RunError {
    Domain { code: String, message: String },
    Usage(String),
}

impl From<gcdgraph::Error> for RunError {
    fn from(e: gcdgraph::Error) -> Self {
        RunError::Domain {
            code: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

type RunResult<T> = Result<T, RunError>;

fn usage(msg: impl Into<String>) -> RunError {
    RunError::Usage(msg.into())
}

fn render_json(v: &Value) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(v).expect("JSON rendering is infallible");
    bytes.push(b'\n');
    bytes
}

fn error_doc(code: &str, message: &str) -> Vec<u8> {
    render_json(&json!({ "error": { "code": code, "message": message } }))
}

/// Executes the job and writes one document to `out` (or to `config.output`
/// when set). Returns the process exit status.
pub fn run(config: &JobConfig, out: &mut dyn Write) -> i32 {
    let (bytes, status) = match execute(config) {
        Ok(bytes) => (bytes, 0),
        Err(RunError::Domain { code, message }) => (error_doc(&code, &message), 1),
        Err(RunError::Usage(message)) => (error_doc("usage", &message), 2),
    };
    if status == 0 {
        if let Some(path) = &config.output {
            return match std::fs::write(path, &bytes) {
                Ok(()) => 0,
                Err(e) => {
                    let _ = out.write_all(&error_doc("io_error", &e.to_string()));
                    1
                }
            };
        }
    }
    let _ = out.write_all(&bytes);
    status
}

fn execute(config: &JobConfig) -> RunResult<Vec<u8>> {
    match config.command {
        Command::Build => cmd_build(config),
        Command::Spectrum => cmd_spectrum(config),
        Command::Check(kind) => cmd_check(config, kind),
        Command::Decompose => cmd_decompose(config),
        Command::Embed => cmd_embed(config),
        Command::Sweep => cmd_sweep(config),
        Command::Ramanujan => cmd_ramanujan(config),
    }
}

fn require<'a>(opt: &'a Option<String>, flag: &str) -> RunResult<&'a str> {
    opt.as_deref()
        .ok_or_else(|| usage(format!("missing required flag {flag}")))
}

fn json_only(config: &JobConfig) -> RunResult<()> {
    if config.format != OutputFormat::Json {
        return Err(usage(format!(
            "format {} is not supported by this command",
            config.format.name()
        )));
    }
    Ok(())
}

fn parse_field(config: &JobConfig) -> RunResult<Field> {
    Ok(Field::parse_spec(&config.field)?)
}

/// Splits a ";"-separated divisor list. Empty input means the empty set;
/// an empty item between separators is a parse error.
fn parse_divisors(field: &Field, raw: Option<&str>) -> RunResult<Vec<Poly>> {
    let raw = match raw {
        None => return Ok(Vec::new()),
        Some(s) => s.trim(),
    };
    if raw.is_empty() {
        return Ok(Vec::new());
    }
    raw.split(';')
        .map(|part| Ok(Poly::parse(field, part)?))
        .collect()
}

fn parse_spec(config: &JobConfig) -> RunResult<(Field, GcdGraphSpec)> {
    let field = parse_field(config)?;
    let f = Poly::parse(&field, require(&config.f, "--f")?)?;
    let d = parse_divisors(&field, config.d.as_deref())?;
    let spec = GcdGraphSpec::new(&field, &f, &d)?;
    Ok((field, spec))
}

fn json_u128(v: u128) -> Value {
    const SAFE: u128 = (1 << 53) - 1;
    if v <= SAFE {
        json!(v as u64)
    } else {
        json!(v.to_string())
    }
}

fn spec_header(spec: &GcdGraphSpec, config: &JobConfig) -> Vec<(String, Value)> {
    vec![
        ("field".into(), json!(spec.field().spec_string())),
        ("f".into(), json!(spec.f().to_string())),
        (
            "D".into(),
            json!(spec.d().iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        ),
        ("seed".into(), json!(config.seed)),
    ]
}

fn doc(entries: Vec<(String, Value)>) -> Value {
    let mut map = serde_json::Map::new();
    for (k, v) in entries {
        map.insert(k, v);
    }
    Value::Object(map)
}

// --- build ---

fn cmd_build(config: &JobConfig) -> RunResult<Vec<u8>> {
    let (_, spec) = parse_spec(config)?;
    let graph = gcd_graph(&spec)?;
    let conn = predicate_connected(&spec)?;
    let degree = if graph.n() > 0 { graph.degree(0) } else { 0 };
    match config.format {
        OutputFormat::Json => {
            let mut entries = spec_header(&spec, config);
            entries.push(("n".into(), json!(graph.n())));
            entries.push(("regular_degree".into(), json!(degree)));
            entries.push(("edge_count".into(), json!(graph.edge_count())));
            entries.push(("connected".into(), json!(conn.connected)));
            entries.push(("components".into(), json_u128(conn.components)));
            entries.push((
                "edges".into(),
                json!(graph.edges().iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>()),
            ));
            Ok(render_json(&doc(entries)))
        }
        OutputFormat::Dot => {
            let en = spec.enumeration()?;
            let labels: Vec<String> = (0..en.size()).map(|i| en.residue(i).to_string()).collect();
            let labeled = graph.with_labels(labels)?;
            Ok(labeled.to_dot().into_bytes())
        }
        OutputFormat::Csv => {
            let mut text = String::from("u,v\n");
            for (u, v) in graph.edges() {
                text.push_str(&format!("{u},{v}\n"));
            }
            Ok(text.into_bytes())
        }
    }
}

// --- spectrum ---

fn cmd_spectrum(config: &JobConfig) -> RunResult<Vec<u8>> {
    if config.format == OutputFormat::Dot {
        return Err(usage("format dot is not supported by this command"));
    }
    let (_, spec) = parse_spec(config)?;
    let n = spec.ring_size();
    if n > MAX_CLI_SPECTRUM_RING {
        return Err(gcdgraph::Error::TooLarge(format!(
            "spectrum over {n} residues exceeds the CLI bound {MAX_CLI_SPECTRUM_RING}"
        ))
        .into());
    }
    let certified = n <= MAX_CERTIFY_RING;
    let table: SpectrumTable = if certified {
        certified_spectrum(&spec, config.moment_order)?
    } else {
        spectrum(&spec)?
    };
    match config.format {
        OutputFormat::Json => {
            let mut entries = spec_header(&spec, config);
            entries.push(("n".into(), json_u128(n)));
            entries.push(("degree".into(), json!(table.degree)));
            entries.push(("certified".into(), json!(certified)));
            entries.push(("moment_order".into(), json!(config.moment_order)));
            entries.push((
                "class_values".into(),
                json!(table
                    .class_values
                    .iter()
                    .map(|(g, v)| json!([g.to_string(), v]))
                    .collect::<Vec<_>>()),
            ));
            entries.push((
                "multiset".into(),
                json!(table
                    .multiset()
                    .iter()
                    .map(|&(v, m)| json!([v, m]))
                    .collect::<Vec<_>>()),
            ));
            entries.push(("eigenvalues".into(), json!(table.eigenvalues)));
            Ok(render_json(&doc(entries)))
        }
        OutputFormat::Csv => {
            let mut text = String::from("eigenvalue,multiplicity\n");
            for (v, m) in table.multiset() {
                text.push_str(&format!("{v},{m}\n"));
            }
            Ok(text.into_bytes())
        }
        OutputFormat::Dot => unreachable!(),
    }
}

// --- check ---

fn reason_json(reason: &ConnectednessReason) -> Value {
    match reason {
        ConnectednessReason::GcdOne => json!({ "kind": "gcd_one" }),
        ConnectednessReason::EmptyConnection => json!({ "kind": "empty_connection" }),
        ConnectednessReason::CommonDivisor(p) => {
            json!({ "kind": "common_divisor", "divisor": p.to_string() })
        }
        ConnectednessReason::BinaryProjection(ds) => json!({
            "kind": "binary_projection",
            "projected": ds.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        }),
        ConnectednessReason::BinaryProjectionSpans(ds) => json!({
            "kind": "binary_projection_spans",
            "projected": ds.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        }),
    }
}

fn rule_json(rule: &BipartitionRule) -> Value {
    match rule {
        BipartitionRule::MultiplesOf(c) => {
            json!({ "kind": "multiples_of", "divisor": c.to_string() })
        }
        BipartitionRule::EqualValues => json!({ "kind": "equal_values" }),
        BipartitionRule::Explicit(colors) => json!({ "kind": "explicit", "colors": colors }),
    }
}

fn cmd_check(config: &JobConfig, kind: CheckKind) -> RunResult<Vec<u8>> {
    json_only(config)?;
    let (_, spec) = parse_spec(config)?;
    let mut entries = spec_header(&spec, config);
    entries.push(("check".into(), json!(kind.name())));
    match kind {
        CheckKind::Connected => {
            let v = predicate_connected(&spec)?;
            entries.push((
                "verdict".into(),
                json!(if v.connected { "connected" } else { "disconnected" }),
            ));
            entries.push(("components".into(), json_u128(v.components)));
            entries.push(("reason".into(), reason_json(&v.reason)));
        }
        CheckKind::Anticonnected => {
            let v = predicate_connected(&spec.complement()?)?;
            entries.push((
                "verdict".into(),
                json!(if v.connected {
                    "anticonnected"
                } else {
                    "not_anticonnected"
                }),
            ));
            entries.push(("components".into(), json_u128(v.components)));
            entries.push(("reason".into(), reason_json(&v.reason)));
        }
        CheckKind::Bipartite => {
            let v = predicate_bipartite(&spec)?;
            entries.push((
                "verdict".into(),
                json!(if v.bipartite { "bipartite" } else { "not_bipartite" }),
            ));
            entries.push(("oracle_only".into(), json!(v.oracle_only)));
            match &v.rule {
                None => entries.push(("rule".into(), Value::Null)),
                Some(rule) => {
                    entries.push(("rule".into(), rule_json(rule)));
                    if spec.ring_size() <= MAX_SIDE_VERIFY_RING {
                        let (s0, s1) = realize_bipartition(&spec, rule)?;
                        let graph = gcd_graph(&spec)?;
                        let independent = |side: &[u64]| {
                            side.iter().enumerate().all(|(i, &a)| {
                                side[i + 1..]
                                    .iter()
                                    .all(|&b| !graph.has_edge(a as usize, b as usize))
                            })
                        };
                        entries.push(("sides".into(), json!([s0.len(), s1.len()])));
                        entries.push((
                            "sides_verified".into(),
                            json!(independent(&s0) && independent(&s1)),
                        ));
                    } else {
                        entries.push(("sides".into(), Value::Null));
                        entries.push(("sides_verified".into(), Value::Null));
                    }
                }
            }
        }
        CheckKind::Prime => {
            let v = is_prime_graph(&spec)?;
            entries.push((
                "verdict".into(),
                json!(if v.prime { "prime" } else { "not_prime" }),
            ));
            entries.push(("detail".into(), v.to_json()));
        }
        CheckKind::Perfect => {
            let v = classify_perfect(&spec, config.hole_bound)?;
            entries.push((
                "verdict".into(),
                json!(match v.verdict {
                    Perfection::Perfect => "perfect",
                    Perfection::NotPerfect => "not_perfect",
                    Perfection::UnknownUpTo(_) => "unknown_up_to",
                }),
            ));
            entries.push(("detail".into(), v.to_json()));
        }
    }
    Ok(render_json(&doc(entries)))
}

// --- decompose ---

fn cmd_decompose(config: &JobConfig) -> RunResult<Vec<u8>> {
    json_only(config)?;
    let (field, spec) = parse_spec(config)?;
    let g = Poly::parse(&field, require(&config.g, "--g")?)?;
    let w = wreath_decompose(&spec, &g)?;
    let mut entries = spec_header(&spec, config);
    entries.push(("g".into(), json!(g.to_string())));
    entries.push(("decomposition".into(), w.to_json()));
    Ok(render_json(&doc(entries)))
}

// --- embed ---

fn load_target(path: &str) -> RunResult<Graph> {
    let text = std::fs::read_to_string(path).map_err(|e| RunError::Domain {
        code: "io_error".into(),
        message: format!("cannot read {path}: {e}"),
    })?;
    let v: Value = serde_json::from_str(&text).map_err(|e| RunError::Domain {
        code: "parse_error".into(),
        message: format!("target file {path} is not valid JSON: {e}"),
    })?;
    Ok(Graph::from_json(&v)?)
}

fn embedding_transcript(spec: &GcdGraphSpec, target: &Graph, map: &[u64]) -> RunResult<Value> {
    let en = spec.enumeration()?;
    let mut rows = Vec::new();
    for a in 0..target.n() {
        for b in a + 1..target.n() {
            let diff = &en.residue(map[a]) - &en.residue(map[b]);
            let g = gcdgraph::polyring::gcd_monic(&diff, spec.f())?;
            let host = spec.d().binary_search(&g).is_ok();
            let want = target.has_edge(a, b);
            rows.push(json!({
                "pair": [a, b],
                "target": want,
                "host": host,
                "gcd": g.to_string(),
                "match": want == host,
            }));
        }
    }
    Ok(Value::Array(rows))
}

fn cmd_embed(config: &JobConfig) -> RunResult<Vec<u8>> {
    json_only(config)?;
    let field = parse_field(config)?;
    let target = load_target(require(&config.target, "--target")?)?;
    let prescribed = parse_divisors(&field, config.d.as_deref())?;

    let (m, spec, emb) = if prescribed.is_empty() {
        if config.m.is_some() {
            return Err(usage("--m only applies together with --D"));
        }
        let k = config
            .k
            .ok_or_else(|| usage("missing required flag --k (or pass --D)"))?;
        let (spec, emb) = gcdgraph::embed::embed_into_gcdgraph(&target, &field, k)?;
        (None, spec, emb)
    } else {
        let (m, spec, emb) =
            gcdgraph::embed::embed_with_prescribed_divisors(&target, &field, &prescribed, config.m)?;
        (Some(m), spec, emb)
    };

    let transcript = embedding_transcript(&spec, &target, &emb.vertex_map)?;
    let mut entries = spec_header(&spec, config);
    entries.push(("base_field".into(), json!(field.spec_string())));
    entries.push((
        "extension_degree".into(),
        match m {
            Some(m) => json!(m),
            None => Value::Null,
        },
    ));
    entries.push(("target_n".into(), json!(target.n())));
    entries.push(("vertex_map".into(), json!(emb.vertex_map)));
    entries.push(("verified".into(), json!(emb.verified)));
    entries.push(("transcript".into(), transcript));
    Ok(render_json(&doc(entries)))
}

// --- sweep ---

fn cmd_sweep(config: &JobConfig) -> RunResult<Vec<u8>> {
    json_only(config)?;
    let field = parse_field(config)?;
    let max_deg = config
        .max_deg
        .ok_or_else(|| usage("missing required flag --max-deg"))?;
    let ramanujan = sweep_ramanujan(&field, max_deg)?;
    let predicates = sweep_predicates(&field, max_deg)?;
    let all_agree = ramanujan.all_agree() && predicates.all_agree();
    let entries = vec![
        ("field".into(), json!(field.spec_string())),
        ("max_deg".into(), json!(max_deg)),
        ("seed".into(), json!(config.seed)),
        ("ramanujan".into(), ramanujan.to_json()),
        ("predicates".into(), predicates.to_json()),
        ("all_agree".into(), json!(all_agree)),
    ];
    Ok(render_json(&doc(entries)))
}

// --- ramanujan ---

fn cmd_ramanujan(config: &JobConfig) -> RunResult<Vec<u8>> {
    json_only(config)?;
    let field = parse_field(config)?;
    let f = Poly::parse(&field, require(&config.f, "--f")?)?;
    let g = Poly::parse(&field, require(&config.g, "--g")?)?;
    let value = ramanujan_formula(&g, &f)?;
    let oracle = ramanujan_bruteforce(&g, &f)?.as_i64()?;
    let entries = vec![
        ("field".into(), json!(field.spec_string())),
        ("f".into(), json!(f.to_string())),
        ("g".into(), json!(g.to_string())),
        ("seed".into(), json!(config.seed)),
        ("value".into(), json!(value)),
        ("oracle".into(), json!(oracle)),
        ("agree".into(), json!(value == oracle)),
    ];
    Ok(render_json(&doc(entries)))
}
