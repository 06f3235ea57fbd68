//! Command-line front end. Exit status: 0 all checks pass, 1 violation or
//! frame disagreement (a witness bundle is written), 2 usage or input error,
//! 3 sampling or genericity exhaustion.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::combinatorics::{k331_graph, Cycle, DisjointCyclePair};
use crate::geometry::diagram::gauss_diagram;
use crate::geometry::embedding::{moment_curve_embedding, moment_curve_points, validate_embedding, SpatialEmbedding};
use crate::geometry::frame::DEFAULT_FRAME_RETRIES;
use crate::geometry::io::{embedding_from_json, embedding_to_json, embedding_to_value};
use crate::geometry::sampling::{
    random_k331_embedding, random_polyline_embedding, random_rectilinear_embedding, SamplingError,
};
use crate::invariants::{a2_gauss_formula, conway_skein_oracle, linking_number, InvariantError};
use crate::theorems::checks::FrameInfo;
use crate::theorems::{census, r_n, verify, AnalysisOptions, Analyzer, CheckId, TheoremError, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

/// Environment variable supplying the default worker count.
pub const THREADS_ENV: &str = "SPATIALCG_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "spatialcg",
    version,
    about = "Exact verification of Conway-Gordon type identities on spatial graphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Seed for embeddings and projection frames.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Non-generic frames tolerated before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_FRAME_RETRIES)]
    pub frame_retries: usize,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add a generation time to JSON output.
    #[arg(long, global = true)]
    pub timestamps: bool,
    /// Permit Hamiltonian sums above n = 10.
    #[arg(long, global = true)]
    pub allow_large: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EmbedKind {
    Moment,
    Random,
    Polyline,
    K331Random,
    K331Moment,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an embedding file.
    Embed {
        #[arg(long, value_enum)]
        kind: EmbedKind,
        /// Number of vertices of K_n.
        #[arg(long)]
        n: Option<usize>,
        /// Coordinates are drawn from [-range, range].
        #[arg(long, default_value_t = 1000)]
        range: i64,
        /// Most interior points per edge for polyline embeddings.
        #[arg(long, default_value_t = 2)]
        max_bends: usize,
    },
    /// Run every check applicable to the embedding.
    Verify {
        file: PathBuf,
        /// Comma-separated check ids; default is all applicable.
        #[arg(long, value_delimiter = ',')]
        identities: Vec<CheckId>,
        /// Where to write the witness bundle on failure.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Count nontrivial Hamiltonian knots and Hopf links.
    Census {
        file: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Print r_7 through r_{n-max}.
    RnTable {
        #[arg(long, default_value_t = 15)]
        n_max: u64,
    },
    /// Invariant of one cycle (`1-2-3`) or pair (`1-2-3:4-5-6`).
    Invariant {
        file: PathBuf,
        #[arg(long)]
        key: String,
    },
}

enum Failure {
    Usage(String),
    Exhausted(String),
    /// Already reported, including its witness bundle.
    Violation(String),
}

impl From<SamplingError> for Failure {
    fn from(e: SamplingError) -> Self {
        match e {
            SamplingError::SamplingExhausted { .. } => Failure::Exhausted(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Io<'a> {
    config: &'a RunConfig,
    stdout: &'a mut (dyn Write + Send),
    stderr: &'a mut (dyn Write + Send),
}

impl Io<'_> {
    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        match &self.config.out {
            Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Usage(format!("cannot write output: {e}"))),
        }
    }

    fn emit_json(&mut self, value: Value) -> Result<(), Failure> {
        let text = json_text(stamp(value, self.config.timestamps));
        self.emit(&text)
    }

    fn note(&mut self, line: &str) {
        let _ = writeln!(self.stderr, "{line}");
    }
}

fn json_text(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn stamp(mut value: Value, timestamps: bool) -> Value {
    if timestamps {
        if let Value::Object(m) = &mut value {
            let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
            m.insert("generated_unix".into(), json!(secs));
        }
    }
    value
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.config.threads {
        if t == 0 {
            let _ = writeln!(stderr, "error: --threads must be positive");
            return EXIT_USAGE;
        }
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot start worker pool: {e}");
            return EXIT_USAGE;
        }
    };
    let mut io = Io {
        config: &cli.config,
        stdout,
        stderr,
    };
    let result = pool.install(|| dispatch(&cli.command, &mut io));
    match result {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            io.note(&format!("error: {m}"));
            EXIT_USAGE
        }
        Err(Failure::Exhausted(m)) => {
            io.note(&format!("error: {m}"));
            EXIT_EXHAUSTED
        }
        Err(Failure::Violation(m)) => {
            io.note(&format!("violation: {m}"));
            EXIT_VIOLATION
        }
    }
}

fn dispatch(command: &Command, io: &mut Io) -> Result<i32, Failure> {
    match command {
        Command::Embed {
            kind,
            n,
            range,
            max_bends,
        } => cmd_embed(io, *kind, *n, *range, *max_bends),
        Command::Verify {
            file,
            identities,
            witness,
        } => cmd_verify(io, file, identities, witness.as_deref()),
        Command::Census { file, witness } => cmd_census(io, file, witness.as_deref()),
        Command::RnTable { n_max } => cmd_rn_table(io, *n_max),
        Command::Invariant { file, key } => cmd_invariant(io, file, key),
    }
}

fn cmd_embed(io: &mut Io, kind: EmbedKind, n: Option<usize>, range: i64, max_bends: usize) -> Result<i32, Failure> {
    let seed = io.config.seed;
    let need_n = || n.ok_or_else(|| Failure::Usage("--n is required for this kind".into()));
    if matches!(kind, EmbedKind::K331Random | EmbedKind::K331Moment) && n.is_some_and(|n| n != 7) {
        return Err(Failure::Usage("K_{3,3,1} has 7 vertices".into()));
    }
    let e = match kind {
        EmbedKind::Moment => moment_curve_embedding(need_n()?).map_err(|e| Failure::Usage(e.to_string()))?,
        EmbedKind::Random => random_rectilinear_embedding(need_n()?, seed, range)?,
        EmbedKind::Polyline => random_polyline_embedding(need_n()?, seed, range, max_bends)?,
        EmbedKind::K331Random => random_k331_embedding(seed, range)?,
        EmbedKind::K331Moment => SpatialEmbedding::rectilinear(k331_graph(), moment_curve_points(7))
            .map_err(|e| Failure::Usage(e.to_string()))?,
    };
    let cert = validate_embedding(&e).map_err(|v| Failure::Usage(format!("generated embedding is invalid: {v}")))?;
    io.emit(&embedding_to_json(&e))?;
    io.note(&format!(
        "valid embedding: {} vertices, {} segments, {} segment pairs checked, {}",
        cert.vertices,
        cert.segments,
        cert.segment_pairs_checked,
        if cert.rectilinear { "rectilinear" } else { "polyline" }
    ));
    Ok(EXIT_OK)
}

fn load(path: &Path) -> Result<SpatialEmbedding, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let e = embedding_from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    validate_embedding(&e).map_err(|v| Failure::Usage(format!("{}: not an embedding: {v}", path.display())))?;
    Ok(e)
}

fn analyzer(io: &Io, e: SpatialEmbedding) -> Result<Analyzer, Failure> {
    let opts = AnalysisOptions {
        seed: io.config.seed,
        frame_retries: io.config.frame_retries,
    };
    Analyzer::new(e, opts).map_err(|e| match e {
        TheoremError::FramesExhausted { .. } => Failure::Exhausted(e.to_string()),
        other => Failure::Usage(other.to_string()),
    })
}

fn witness_path(io: &Io, explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    match &io.config.out {
        Some(out) => {
            let mut s = out.clone().into_os_string();
            s.push(".witness.json");
            PathBuf::from(s)
        }
        None => PathBuf::from("spatialcg-witness.json"),
    }
}

fn write_bundle(io: &mut Io, an: &Analyzer, path: &Path, details: Value) -> Result<(), Failure> {
    let frames: Vec<FrameInfo> = an.frames().iter().map(FrameInfo::from).collect();
    let mut bundle = json!({
        "embedding": embedding_to_value(an.embedding()),
        "frames": to_value(&frames),
        "seed": io.config.seed,
    });
    if let (Value::Object(b), Value::Object(d)) = (&mut bundle, details) {
        b.extend(d);
    }
    fs::write(path, json_text(bundle))
        .map_err(|e| Failure::Usage(format!("cannot write witness bundle {}: {e}", path.display())))?;
    io.note(&format!("witness bundle written to {}", path.display()));
    Ok(())
}

/// Maps analysis errors, writing a bundle for frame disagreements.
fn analysis_failure(io: &mut Io, an: &Analyzer, witness: &Path, e: TheoremError) -> Failure {
    match e {
        TheoremError::FrameDisagreement {
            ref subject,
            primary,
            check,
        } => {
            let details = json!({
                "kind": "frame-disagreement",
                "subject": subject,
                "primary": primary,
                "check": check,
            });
            if let Err(f) = write_bundle(io, an, witness, details) {
                return f;
            }
            Failure::Violation(e.to_string())
        }
        TheoremError::FramesExhausted { .. } => Failure::Exhausted(e.to_string()),
        other => Failure::Usage(other.to_string()),
    }
}

fn verify_csv(r: &VerifyReport) -> String {
    let opt = |q: &Option<num_rational::BigRational>| q.as_ref().map_or(String::new(), |q| q.to_string());
    let mut out = String::from("kind,id,n,value,lower,upper,pass\n");
    for i in &r.identities {
        out.push_str(&format!(
            "identity,{},{},{},{},{},{}\n",
            i.identity_id, i.n, i.lhs, i.rhs, i.rhs, i.pass
        ));
    }
    for c in &r.congruences {
        out.push_str(&format!(
            "congruence,{},{},{},{},{},{}\n",
            c.id, c.n, c.residue, c.expected, c.expected, c.pass
        ));
    }
    for b in &r.bounds {
        out.push_str(&format!(
            "bound,{},{},{},{},{},{}\n",
            b.id,
            b.n,
            b.value,
            opt(&b.lower),
            opt(&b.upper),
            b.pass
        ));
    }
    out
}

fn cmd_verify(io: &mut Io, file: &Path, identities: &[CheckId], witness: Option<&Path>) -> Result<i32, Failure> {
    let an = analyzer(io, load(file)?)?;
    let witness = witness_path(io, witness);
    let selection = (!identities.is_empty()).then_some(identities);
    let report = match verify(&an, selection, io.config.allow_large) {
        Ok(r) => r,
        Err(e) => return Err(analysis_failure(io, &an, &witness, e)),
    };
    match io.config.format {
        Format::Json => io.emit_json(to_value(&report))?,
        Format::Csv => io.emit(&verify_csv(&report))?,
    }
    if report.pass {
        return Ok(EXIT_OK);
    }
    let failures = report.failures();
    let details = json!({
        "kind": "check-failure",
        "failures": failures,
        "report": to_value(&report),
    });
    write_bundle(io, &an, &witness, details)?;
    Err(Failure::Violation(format!("failed checks: {}", failures.join(", "))))
}

fn cmd_census(io: &mut Io, file: &Path, witness: Option<&Path>) -> Result<i32, Failure> {
    let an = analyzer(io, load(file)?)?;
    let witness = witness_path(io, witness);
    let report = match census(&an, io.config.allow_large) {
        Ok(r) => r,
        Err(e) => return Err(analysis_failure(io, &an, &witness, e)),
    };
    match io.config.format {
        Format::Json => io.emit_json(to_value(&report))?,
        Format::Csv => io.emit(&report.histogram_csv())?,
    }
    if report.pass {
        return Ok(EXIT_OK);
    }
    let failures: Vec<&str> = report
        .bounds
        .iter()
        .filter(|b| !b.pass)
        .map(|b| b.id.as_str())
        .collect();
    let details = json!({
        "kind": "check-failure",
        "failures": failures,
        "report": to_value(&report),
    });
    write_bundle(io, &an, &witness, details)?;
    Err(Failure::Violation(format!("failed bounds: {}", failures.join(", "))))
}

fn cmd_rn_table(io: &mut Io, n_max: u64) -> Result<i32, Failure> {
    if n_max < 7 {
        return Err(Failure::Usage(format!("--n-max must be at least 7, got {n_max}")));
    }
    let rows: Vec<(u64, String)> = (7..=n_max).map(|n| (n, r_n(n).to_string())).collect();
    match io.config.format {
        Format::Json => {
            let rows: Vec<Value> = rows.iter().map(|(n, r)| json!({"n": n, "r_n": r})).collect();
            io.emit_json(json!({ "rows": rows }))?;
        }
        Format::Csv => {
            let mut out = String::from("n,r_n\n");
            for (n, r) in rows {
                out.push_str(&format!("{n},{r}\n"));
            }
            io.emit(&out)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_invariant(io: &mut Io, file: &Path, key: &str) -> Result<i32, Failure> {
    let an = analyzer(io, load(file)?)?;
    let g = an.graph();
    let bad_key = |e: crate::combinatorics::GraphError| Failure::Usage(format!("bad key {key:?}: {e}"));
    let (diagrams, kind, subject) = if key.contains([':', '|']) {
        let p = DisjointCyclePair::parse_key(key).map_err(bad_key)?;
        for c in [p.first(), p.second()] {
            Cycle::in_graph(c.vertices(), g).map_err(bad_key)?;
        }
        ([an.link_diagram(&p, 0), an.link_diagram(&p, 1)], "link", p.to_string())
    } else {
        let c = Cycle::parse_key(key).map_err(bad_key)?;
        let c = Cycle::in_graph(c.vertices(), g).map_err(bad_key)?;
        ([an.knot_diagram(&c, 0), an.knot_diagram(&c, 1)], "knot", c.to_string())
    };
    let value_of = |d: &crate::geometry::diagram::LinkDiagram| -> i64 {
        if kind == "link" {
            linking_number(d).expect("pair diagrams have two components")
        } else {
            a2_gauss_formula(&gauss_diagram(d).expect("cycle diagrams have one component"))
        }
    };
    let values = [value_of(&diagrams[0]), value_of(&diagrams[1])];
    let conway = match conway_skein_oracle(&diagrams[0]) {
        Ok(p) => Some(p.to_string()),
        Err(InvariantError::OracleLimitExceeded { .. }) => None,
        Err(e) => return Err(Failure::Usage(e.to_string())),
    };
    let frames: Vec<Value> = an
        .frames()
        .iter()
        .zip(&values)
        .zip(&diagrams)
        .map(|((f, v), d)| json!({"index": f.index, "value": v, "crossing_count": d.crossing_count()}))
        .collect();
    let invariant = if kind == "link" { "lk" } else { "a2" };
    match io.config.format {
        Format::Json => io.emit_json(json!({
            "subject": subject,
            "kind": kind,
            "invariant": invariant,
            "value": values[0],
            "frames": frames,
            "conway": conway,
        }))?,
        Format::Csv => io.emit(&format!(
            "subject,kind,invariant,value,crossing_count,conway\n{subject},{kind},{invariant},{},{},{}\n",
            values[0],
            diagrams[0].crossing_count(),
            conway.unwrap_or_default()
        ))?,
    }
    if values[0] != values[1] {
        let witness = witness_path(io, None);
        let details = json!({
            "kind": "frame-disagreement",
            "subject": subject,
            "primary": values[0],
            "check": values[1],
        });
        write_bundle(io, &an, &witness, details)?;
        return Err(Failure::Violation(format!("frames disagree on {subject}")));
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("spatialcg").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn rn_table_csv() {
        let (code, out, _) = run_args(&["rn-table", "--n-max", "9", "--format", "csv"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "n,r_n\n7,1\n8,2\n9,12\n");
    }

    #[test]
    fn rn_table_rejects_small_n() {
        assert_eq!(run_args(&["rn-table", "--n-max", "6"]).0, EXIT_USAGE);
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        assert_eq!(run_args(&["embed", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["embed", "--kind", "moment"]).0, EXIT_USAGE);
    }

    #[test]
    fn embed_is_deterministic() {
        let a = run_args(&["embed", "--kind", "random", "--n", "7", "--seed", "1"]);
        let b = run_args(&["embed", "--kind", "random", "--n", "7", "--seed", "1"]);
        assert_eq!(a.0, EXIT_OK);
        assert_eq!(a.1, b.1);
        assert!(a.2.contains("valid embedding: 7 vertices"));
    }

    #[test]
    fn tiny_range_exhausts_sampling() {
        assert_eq!(
            run_args(&["embed", "--kind", "random", "--n", "9", "--range", "1"]).0,
            EXIT_EXHAUSTED
        );
    }
}
