//! Command-line front end. [`run_command`] takes argv plus the three
//! standard streams and returns the process exit code, so it can be driven
//! in-process by tests.

mod document;
mod dot;
mod enumerate;
mod graph_file;

pub use document::{CertificateDocument, DocumentError, FORMAT_VERSION};
pub use dot::export_dot;
pub use enumerate::{enumerate, graph_classes, EnumerationReport, ReportLine, MAX_ENUMERATION_ORDER};
pub use graph_file::{parse_graph_file, serialize_graph, ParseError, ParseErrorKind};

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::classifier::{verify_certificate, EngineConfig, Session, Verdict, Verification};
use crate::families::{gamma, FamilySpec};
use crate::graph::Graph;
use crate::rules::{build_partition, check_sass, EdgeFamily, SassViolation, SylowConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_OCCURS: i32 = 10;
pub const EXIT_UNKNOWN: i32 = 20;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INVALID_CERTIFICATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "chardeg", version, about = "Decide whether graphs can be prime character degree graphs of solvable groups")]
struct Cli {
    /// Largest number of Sylow branches generated per (graph, prime).
    #[arg(long, global = true, default_value_t = 1 << 20)]
    max_branches: u64,
    /// Nested Sylow applications allowed in one refutation chain.
    #[arg(long, global = true, default_value_t = 3)]
    sylow_depth: usize,
    /// Only drop edges with both endpoints adjacent to the deleted prime.
    #[arg(long, global = true)]
    narrow_sylow_edges: bool,
    /// Certificate documents (single or JSON array) to verify and preload.
    #[arg(long, global = true, value_name = "PATH")]
    seed_kb: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print Γ(K,T) as a graph file.
    Gamma { k: usize, t: usize },
    /// Classify a graph file (`-` or nothing reads standard input).
    Classify {
        file: Option<PathBuf>,
        /// Write the certificate document here.
        #[arg(long, value_name = "OUT")]
        cert: Option<PathBuf>,
        /// Print the certificate document instead of the text report.
        #[arg(long)]
        json: bool,
    },
    /// Check a certificate document, optionally against a graph file.
    Verify {
        #[arg(num_args = 1..=2, required = true, value_name = "FILE")]
        files: Vec<PathBuf>,
    },
    /// Show the distance-layer partition around a base vertex.
    Partition { file: PathBuf, base: String },
    /// Classify every Pálfy-passing graph on N vertices.
    Enumerate {
        n: usize,
        /// Write the full report here; standard output then gets the summary.
        #[arg(long, value_name = "OUT")]
        report: Option<PathBuf>,
        /// Spread classes over worker threads.
        #[arg(long)]
        parallel: bool,
    },
    /// Print a graph file as DOT.
    ExportDot { file: Option<PathBuf> },
}

struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type Outcome = Result<i32, Failure>;

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn out(&mut self, text: &str) -> Result<(), Failure> {
        self.stdout
            .write_all(text.as_bytes())
            .map_err(|e| input_error(format!("cannot write output: {e}")))
    }

    fn read_text(&mut self, path: Option<&Path>) -> Result<String, Failure> {
        match path {
            None => self.read_stdin(),
            Some(p) if p == Path::new("-") => self.read_stdin(),
            Some(p) => std::fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display()))),
        }
    }

    fn read_stdin(&mut self) -> Result<String, Failure> {
        let mut s = String::new();
        self.stdin
            .read_to_string(&mut s)
            .map_err(|e| input_error(format!("standard input: {e}")))?;
        Ok(s)
    }

    fn read_graph(&mut self, path: Option<&Path>) -> Result<Graph, Failure> {
        let text = self.read_text(path)?;
        let origin = path.map_or("<stdin>".to_string(), |p| p.display().to_string());
        parse_graph_file(&text).map_err(|e| input_error(format!("{origin}: {e}")))
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

/// Runs one command line. `args` includes the program name.
pub fn run_command<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let mut io = Io { stdin, stdout };
    match dispatch(cli, &mut io) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn engine_config(cli: &Cli) -> EngineConfig {
    EngineConfig {
        sylow: SylowConfig {
            max_branches: cli.max_branches,
            max_depth: cli.sylow_depth,
            edge_family: if cli.narrow_sylow_edges {
                EdgeFamily::Narrow
            } else {
                EdgeFamily::Broad
            },
        },
        ..EngineConfig::default()
    }
}

fn session(cli: &Cli, io: &mut Io) -> Result<Session, Failure> {
    let mut session = Session::new(engine_config(cli));
    for path in &cli.seed_kb {
        let text = io.read_text(Some(path))?;
        let docs = CertificateDocument::many_from_json(&text)
            .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        for (i, doc) in docs.iter().enumerate() {
            let at = || format!("{} entry {}", path.display(), i + 1);
            let verdict = doc.verdict().map_err(|e| input_error(format!("{}: {e}", at())))?;
            if let Verification::Invalid(reason) = verify_certificate(&doc.graph, &verdict) {
                return Err(input_error(format!("{}: certificate rejected: {reason}", at())));
            }
            session
                .seed_verified(&doc.graph, &verdict)
                .map_err(|e| input_error(format!("{}: {e}", at())))?;
        }
    }
    Ok(session)
}

fn verdict_exit(v: &Verdict) -> i32 {
    match v {
        Verdict::Occurs(_) => EXIT_OK,
        Verdict::NotOccurs(_) => EXIT_NOT_OCCURS,
        Verdict::Unknown(_) => EXIT_UNKNOWN,
    }
}

fn verdict_report(g: &Graph, v: &Verdict) -> String {
    let mut out = String::new();
    writeln!(out, "graph: {} vertices, {} edges", g.order(), g.edge_count()).unwrap();
    writeln!(out, "class: {}", g.canonical_key()).unwrap();
    match v {
        Verdict::Occurs(w) => {
            writeln!(out, "verdict: Occurs").unwrap();
            writeln!(out, "witness: {w}").unwrap();
        }
        Verdict::NotOccurs(p) => {
            writeln!(out, "verdict: NotOccurs").unwrap();
            writeln!(out, "rule: {}", p.certificate.rule()).unwrap();
            if !p.lemmas.is_empty() {
                writeln!(out, "lemmas: {}", p.lemmas.len()).unwrap();
            }
        }
        Verdict::Unknown(r) => {
            writeln!(out, "verdict: Unknown").unwrap();
            writeln!(out, "reason: {r}").unwrap();
        }
    }
    out
}

fn sass_text(v: &SassViolation) -> String {
    match v {
        SassViolation::Rho3TooSmall { rho3 } => format!("rho3_too_small(rho3={rho3})"),
        SassViolation::LeftExceedsRight { left, right } => format!("left_exceeds_right(left={left}, right={right})"),
        SassViolation::PowerBound { left, right } => format!("power_bound(left={left}, right={right})"),
    }
}

fn dispatch(cli: Cli, io: &mut Io) -> Outcome {
    match &cli.command {
        Command::Gamma { k, t } => {
            let spec = FamilySpec::new(*k, *t).map_err(|e| input_error(e.to_string()))?;
            io.out(&serialize_graph(&gamma(spec)))?;
            Ok(EXIT_OK)
        }
        Command::Classify { file, cert, json } => {
            let g = io.read_graph(file.as_deref())?;
            let mut session = session(&cli, io)?;
            let verdict = session.classify(&g).map_err(|e| input_error(e.to_string()))?;
            let doc = CertificateDocument::new(&g, &verdict).to_json();
            if let Some(path) = cert {
                write_file(path, &doc)?;
            }
            if *json {
                io.out(&doc)?;
            } else {
                io.out(&verdict_report(&g, &verdict))?;
            }
            Ok(verdict_exit(&verdict))
        }
        Command::Verify { files } => {
            let (graph_path, cert_path) = match files.as_slice() {
                [c] => (None, c),
                [g, c] => (Some(g), c),
                _ => unreachable!("clap bounds the count"),
            };
            let text = io.read_text(Some(cert_path))?;
            let doc = CertificateDocument::from_json(&text)
                .map_err(|e| input_error(format!("{}: {e}", cert_path.display())))?;
            let verdict = doc
                .verdict()
                .map_err(|e| input_error(format!("{}: {e}", cert_path.display())))?;
            let mut result = verify_certificate(&doc.graph, &verdict);
            if let Some(path) = graph_path {
                let g = io.read_graph(Some(path))?;
                if !same_labeled_graph(&g, &doc.graph) {
                    result = Verification::Invalid("certificate is for a different graph".into());
                }
            }
            match result {
                Verification::Valid => {
                    io.out(&format!("valid {}\n", verdict.tag()))?;
                    Ok(EXIT_OK)
                }
                Verification::Invalid(reason) => {
                    io.out(&format!("invalid: {reason}\n"))?;
                    Ok(EXIT_INVALID_CERTIFICATE)
                }
            }
        }
        Command::Partition { file, base } => {
            let g = io.read_graph(Some(file))?;
            let p = build_partition(&g, base).map_err(|e| input_error(e.to_string()))?;
            let mut out = String::new();
            writeln!(out, "base {}", p.base).unwrap();
            for (label, set) in [("rho1", &p.rho1), ("rho2", &p.rho2), ("rho3", &p.rho3), ("rho4", &p.rho4)] {
                let names: Vec<&str> = set.iter().map(String::as_str).collect();
                writeln!(out, "{label} {}", names.join(" ")).unwrap();
            }
            writeln!(out, "left {}", p.left()).unwrap();
            writeln!(out, "right {}", p.right()).unwrap();
            let violations: Vec<String> = check_sass(&p).iter().map(sass_text).collect();
            if violations.is_empty() {
                writeln!(out, "violations none").unwrap();
            } else {
                writeln!(out, "violations {}", violations.join(" ")).unwrap();
            }
            io.out(&out)?;
            Ok(EXIT_OK)
        }
        Command::Enumerate { n, report, parallel } => {
            if !(1..=MAX_ENUMERATION_ORDER).contains(n) {
                return Err(input_error(format!("N must be in 1..={MAX_ENUMERATION_ORDER}")));
            }
            let r = enumerate(*n, engine_config(&cli), *parallel).map_err(|e| input_error(e.to_string()))?;
            match report {
                Some(path) => {
                    write_file(path, &r.to_string())?;
                    io.out(&r.summary())?;
                }
                None => io.out(&r.to_string())?,
            }
            Ok(EXIT_OK)
        }
        Command::ExportDot { file } => {
            let g = io.read_graph(file.as_deref())?;
            io.out(&export_dot(&g))?;
            Ok(EXIT_OK)
        }
    }
}

fn same_labeled_graph(a: &Graph, b: &Graph) -> bool {
    let mut x = a.names().to_vec();
    let mut y = b.names().to_vec();
    x.sort();
    y.sort();
    x == y && a.edge_names() == b.edge_names()
}
