//! `symstab analyze | equiv | sample`.
//!
//! Exit codes: 0 success, 1 malformed input or invalid flags, 2 numeric
//! failure, 3 qubit-count mismatch between the two `equiv` inputs.

use crate::error::Error;
use crate::experiments::{self, SampleMode};
use crate::majorana::{self, degeneracy_configuration};
use crate::mat2::{Mat2, C64};
use crate::model::{SymmetricState, Tolerances, CERTIFICATE_TOL, EPS_DEGREE, TAU_POINT};
use crate::oracle::DENSE_LIMIT;
use crate::par::Schedule;
use crate::slocc::{self, ConversionReport};
use crate::stabilizer::{self, config_precheck, PairVerdict, StabilizerVerdict};
use crate::statefile::{complex_json, read_state_file, state_json, LoadedState, Source};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "symstab", version, about = "Stabilizers and SLOCC equivalence of symmetric multiqubit states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct TolArgs {
    /// Point coincidence threshold on the normalized cross-determinant.
    #[arg(long, default_value_t = TAU_POINT)]
    pub tol_point: f64,
    /// Relative cutoff for vanishing polynomial coefficients.
    #[arg(long, default_value_t = EPS_DEGREE)]
    pub tol_degree: f64,
    /// Dense residual a stabilizer certificate must meet.
    #[arg(long, default_value_t = CERTIFICATE_TOL)]
    pub tol_cert: f64,
}

impl TolArgs {
    fn tolerances(&self) -> std::result::Result<Tolerances, String> {
        for (name, v) in [("--tol-point", self.tol_point), ("--tol-degree", self.tol_degree), ("--tol-cert", self.tol_cert)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("{name} must be a positive number, got {v}"));
            }
        }
        Ok(Tolerances {
            point: self.tol_point,
            degree: self.tol_degree,
            certificate: self.tol_cert,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Amp,
    Points,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Majorana points, stabilizer verdict, invariants and criticality of a state.
    Analyze {
        path: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
        /// Emit a JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// SLOCC equivalence, connecting operator and conversion probabilities.
    Equiv {
        path_a: PathBuf,
        path_b: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo fraction of states with trivial stabilizer, as CSV.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Number of distinct Majorana points (points mode only).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }

    fn numeric(e: Error) -> Self {
        Failure { code: EXIT_NUMERIC, message: e.to_string() }
    }
}

fn load(path: &Path) -> std::result::Result<LoadedState, Failure> {
    read_state_file(path).map_err(|e| match e {
        Error::Format(_) => Failure::input(e.to_string()),
        other => Failure::numeric(other),
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Analyze { path, tol, json } => cmd_analyze(path, tol, *json, out),
        Command::Equiv { path_a, path_b, tol, json } => cmd_equiv(path_a, path_b, tol, *json, out),
        Command::Sample { n, mode, m, trials, seed, out: dest } => {
            cmd_sample(*n, *mode, *m, *trials, *seed, dest.as_deref(), out)
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn fmt_c(z: C64) -> String {
    format!("{:.9}{:+.9}i", z.re, z.im)
}

fn fmt_mat(m: &Mat2) -> String {
    format!(
        "[[{}, {}], [{}, {}]]",
        fmt_c(m.m[0][0]),
        fmt_c(m.m[0][1]),
        fmt_c(m.m[1][0]),
        fmt_c(m.m[1][1])
    )
}

fn mat_json(m: &Mat2) -> Value {
    json!(m.m.iter().map(|row| row.iter().map(|&z| complex_json(z)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn verdict_json(v: &StabilizerVerdict) -> Value {
    let certificate = v.certificate.as_ref().map(|c| {
        json!({
            "g": mat_json(c.g.matrix()),
            "permutation": c.permutation,
            "lambdas": c.lambdas.iter().map(|&l| complex_json(l)).collect::<Vec<_>>(),
            "residual": c.residual,
        })
    });
    json!({
        "trivial": v.trivial,
        "method": v.method.tag(),
        "dense_verified": v.dense_verified,
        "certificate": certificate,
    })
}

fn pair_json(p: &PairVerdict) -> Value {
    json!({
        "a": mat_json(p.certificate.a.matrix()),
        "b": mat_json(p.certificate.b.matrix()),
        "residual": p.certificate.residual,
        "solution_dimension": p.certificate.solution_dimension,
    })
}

fn cmd_analyze(path: &Path, tol: &TolArgs, as_json: bool, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let tolerances = tol.tolerances().map_err(Failure::input)?;
    let loaded = load(path)?;
    let state = &loaded.state;
    let n = state.n();
    let points = majorana::majorana_decompose_with(state, &tolerances).map_err(Failure::numeric)?;
    let config = degeneracy_configuration(&points);
    let precheck = config_precheck(&config);
    let verdict = stabilizer::decide_for_points(state, &points, &tolerances, Schedule::default())
        .map_err(Failure::numeric)?;
    let pair = if n == 2 {
        Some(stabilizer::two_qubit_stabilizer(state).map_err(Failure::numeric)?)
    } else {
        None
    };
    let f2 = stabilizer::f2(state);
    let f4 = if n >= 2 { Some(stabilizer::f4(state).map_err(Failure::numeric)?) } else { None };
    let critical = stabilizer::is_critical(state);

    let io = |e: std::io::Error| Failure::input(e.to_string());
    if as_json {
        let mut value = state_json(state);
        let clusters: Vec<Value> = points
            .clusters()
            .iter()
            .map(|c| {
                json!({
                    "z": c.point.plane().map_or(json!("inf"), complex_json),
                    "a": complex_json(c.point.a()),
                    "b": complex_json(c.point.b()),
                    "mult": c.multiplicity,
                })
            })
            .collect();
        let extra = json!({
            "renormalized_on_load": loaded.renormalized,
            "composed_from_majorana": loaded.source == Source::Majorana,
            "clusters": clusters,
            "configuration": config.multiplicities,
            "diversity": config.diversity,
            "partition": config.partition,
            "precheck": precheck.tag(),
            "stabilizer": verdict_json(&verdict),
            "two_qubit_pair": pair.as_ref().map(pair_json),
            "f2": complex_json(f2),
            "f4": f4.map(complex_json),
            "critical": critical,
        });
        if let (Value::Object(base), Value::Object(more)) = (&mut value, extra) {
            base.extend(more);
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json")).map_err(io)?;
        return Ok(());
    }

    let mut text = String::new();
    let mut line = |s: String| {
        text.push_str(&s);
        text.push('\n');
    };
    line(format!("n: {n}"));
    if loaded.renormalized {
        line("note: amplitudes were not normalized; normalized on load".into());
    }
    if loaded.source == Source::Majorana {
        line("note: state composed from Majorana points".into());
    }
    line("dicke amplitudes:".into());
    for (k, &x) in state.amplitudes().iter().enumerate() {
        line(format!("  x_{k} = {}", fmt_c(x)));
    }
    line("majorana clusters:".into());
    for c in points.clusters() {
        line(format!("  z = {}  mult {}", c.point, c.multiplicity));
    }
    line(format!("configuration: {config}"));
    line(format!("diversity: {}", config.diversity));
    let partition: Vec<String> = config.partition.iter().map(|p| p.to_string()).collect();
    line(format!("partition: {{{}}}", partition.join(",")));
    line(format!("precheck: {}", precheck.tag()));
    let kind = if verdict.trivial { "trivial" } else { "nontrivial" };
    line(format!("stabilizer: {kind} ({})", verdict.method.tag()));
    if let Some(c) = &verdict.certificate {
        line(format!("certificate g: {}", fmt_mat(c.g.matrix())));
        match c.residual {
            Some(r) => line(format!("  oracle residual: {r:.3e}")),
            None => line(format!("  oracle residual: not computed (n > {DENSE_LIMIT}, unverified-dense)")),
        }
    } else if !verdict.dense_verified {
        line("  (unverified-dense)".into());
    }
    if let Some(p) = &pair {
        line(format!("two-qubit pair A: {}", fmt_mat(p.certificate.a.matrix())));
        line(format!("two-qubit pair B: {}", fmt_mat(p.certificate.b.matrix())));
        line(format!("  oracle residual: {:.3e}", p.certificate.residual));
    }
    line(format!("f2: {}", fmt_c(f2)));
    match f4 {
        Some(v) => line(format!("f4: {}", fmt_c(v))),
        None => line("f4: undefined for n = 1".into()),
    }
    line(format!("critical: {}", if critical { "yes" } else { "no" }));
    write!(out, "{text}").map_err(io)
}

fn connection_json(c: &slocc::Connection, p: f64) -> Value {
    json!({
        "g": mat_json(c.g.matrix()),
        "phase": complex_json(c.phase),
        "overlap": c.overlap,
        "dense_verified": c.dense_verified,
        "p_max": p,
    })
}

fn cmd_equiv(
    path_a: &Path,
    path_b: &Path,
    tol: &TolArgs,
    as_json: bool,
    out: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    let tolerances = tol.tolerances().map_err(Failure::input)?;
    let a = load(path_a)?;
    let b = load(path_b)?;
    if a.state.n() != b.state.n() {
        return Err(Failure {
            code: EXIT_MISMATCH,
            message: format!("qubit counts differ: {} vs {}", a.state.n(), b.state.n()),
        });
    }
    let report = slocc::conversion_report(&a.state, &b.state, &tolerances).map_err(Failure::numeric)?;
    let io = |e: std::io::Error| Failure::input(e.to_string());
    let Some(report) = report else {
        if as_json {
            writeln!(out, "{}", json!({"equivalent": false})).map_err(io)?;
        } else {
            writeln!(out, "inequivalent").map_err(io)?;
        }
        return Ok(());
    };
    let source_trivial = |s: &SymmetricState| -> std::result::Result<bool, Failure> {
        Ok(stabilizer::decide_stabilizer_with(s, &tolerances, Schedule::default())
            .map_err(Failure::numeric)?
            .trivial)
    };
    let (a_trivial, b_trivial) = (source_trivial(&a.state)?, source_trivial(&b.state)?);
    let ConversionReport { witness, permutation, forward, backward, p_forward, p_backward, witnesses_considered } = &report;
    let lu = report.lu_equivalent();

    if as_json {
        let value = json!({
            "equivalent": true,
            "witness": mat_json(witness.matrix()),
            "permutation": permutation,
            "witnesses_considered": witnesses_considered,
            "forward": connection_json(forward, *p_forward),
            "backward": connection_json(backward, *p_backward),
            "source_stabilizer_trivial": {"a": a_trivial, "b": b_trivial},
            "lu_equivalent": lu,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json")).map_err(io)?;
        return Ok(());
    }
    let hypothesis = |trivial: bool| {
        if trivial {
            "source stabilizer trivial"
        } else {
            "source stabilizer nontrivial: value is for this operator, optimality not guaranteed"
        }
    };
    let [ca, cb, cc, cd] = witness.coefficients();
    let mut text = format!("equivalent\nwitness: f(z) = ({} z + {}) / ({} z + {})\n", fmt_c(ca), fmt_c(cb), fmt_c(cc), fmt_c(cd));
    text += &format!("cluster map: {permutation:?}\n");
    if *witnesses_considered > 1 {
        text += &format!("witnesses compared: {witnesses_considered} (best p_max kept per direction)\n");
    }
    text += &format!("connecting operator A->B: {}\n", fmt_mat(forward.g.matrix()));
    text += &format!("  global phase: {}  overlap: {:.12}\n", fmt_c(forward.phase), forward.overlap);
    text += &format!("connecting operator B->A: {}\n", fmt_mat(backward.g.matrix()));
    text += &format!("p_max A->B: {p_forward:.12} ({})\n", hypothesis(a_trivial));
    text += &format!("p_max B->A: {p_backward:.12} ({})\n", hypothesis(b_trivial));
    if lu {
        text += "states are LU-equivalent: deterministic conversion possible\n";
    }
    write!(out, "{text}").map_err(io)
}

fn cmd_sample(
    n: usize,
    mode: ModeArg,
    m: Option<usize>,
    trials: u64,
    seed: u64,
    dest: Option<&Path>,
    out: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    let mode = match (mode, m) {
        (ModeArg::Amp, None) => SampleMode::ByAmplitudes,
        (ModeArg::Amp, Some(_)) => return Err(Failure::input("--m is only valid with --mode points")),
        (ModeArg::Points, Some(m)) => SampleMode::ByPoints { m },
        (ModeArg::Points, None) => return Err(Failure::input("--mode points requires --m")),
    };
    if n == 0 || trials == 0 {
        return Err(Failure::input("--n and --trials must be at least 1"));
    }
    if let SampleMode::ByPoints { m } = mode {
        if m == 0 || m > n {
            return Err(Failure::input(format!("--m must satisfy 1 <= m <= n, got m = {m}, n = {n}")));
        }
    }
    let row = experiments::trivial_fraction(n, mode, trials, seed).map_err(Failure::numeric)?;
    let io = |e: std::io::Error| Failure::input(e.to_string());
    match dest {
        Some(path) => {
            let mut buf = Vec::new();
            experiments::write_csv(&mut buf, std::slice::from_ref(&row)).map_err(io)?;
            std::fs::write(path, buf).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            writeln!(
                out,
                "n={} mode={} trials={} trivial={} fraction={:.6} (empirical){}",
                row.n,
                row.mode,
                row.trials,
                row.trivial,
                row.fraction(),
                if row.dense_verified { "" } else { " unverified-dense" }
            )
            .map_err(io)
        }
        None => experiments::write_csv(out, std::slice::from_ref(&row)).map_err(io),
    }
}

/// Library-level entry used by `main`.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
