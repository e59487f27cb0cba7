//! Command-line front end.
//!
//! Every command prints one report on stdout, JSON by default:
//!
//! ```json
//! {"command": "cube", "inputs": {"d": 3}, "outputs": {"vector": ["8", "12", "6"]}, "status": "ok"}
//! ```
//!
//! Big integers and rationals are always decimal strings (`"p/q"` for
//! non-integers). `--format csv` prints a flat table with a header row
//! instead.
//!
//! Exit codes: 0 on success, 1 on invalid input or any library error, 2 when
//! the thing asked for does not exist (`witness` and `counterexample` found
//! nothing, `refute` found a feasible pattern, `selftest` had a failing
//! check).

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::constructions::{apply_caps, ncp_f_vector, NcpParams};
use crate::cubecore::{
    build_transform_matrix, cube_f_vector, f_to_h, h_to_f, h_to_f_rational, partial_unimodality_check,
    validate_adin, FaceVector, ShortHVector,
};
use crate::decimal::{ints_to_strings, parse_int, parse_rational, rationals_to_strings};
use crate::error::{invalid, Error, Result};
use crate::feasibility::{find_h_witness, refute_dimension, FeasibilityOutcome};
use crate::search::{find_counterexample, minimal_vertex_exponent, verify_paper_counterexample};
use crate::{selftest, seqkit};

#[derive(Debug, Parser)]
#[command(name = "cubical", version, about = "Exact face-vector toolkit for cubical polytopes")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Face vector of the d-cube.
    Cube {
        #[arg(short)]
        d: usize,
    },
    /// The d x d transform matrix H(i, j) = 2^-j C(d-i-1, d-j-1).
    Hmatrix {
        #[arg(short)]
        d: usize,
    },
    /// Short cubical h-vector of a face vector.
    F2h {
        /// Comma separated entries; read from stdin when absent.
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
    },
    /// Face vector h * H of a short cubical h-vector.
    H2f {
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
        /// Print fractional entries instead of rejecting them.
        #[arg(long)]
        allow_rational: bool,
    },
    /// Face vector of a neighborly cubical d-polytope with 2^n vertices.
    Ncp {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        n: usize,
    },
    /// Apply c capping operations to a face vector.
    Cap {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
    },
    /// Unimodality and partial-unimodality report.
    Analyze {
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
    },
    /// Decide every dip pattern in dimension d.
    Refute {
        #[arg(short)]
        d: usize,
        /// Write the certificate bundle here; `-` embeds it in the report.
        #[arg(long)]
        certificates: Option<PathBuf>,
    },
    /// Integral h-vector that passes every h-level test yet dips under H.
    Witness {
        #[arg(short)]
        d: usize,
    },
    /// Smallest cap count that makes the (d, n) NCP dip.
    Counterexample {
        #[arg(short)]
        d: usize,
        #[arg(short)]
        n: usize,
        /// Scan n from d up to this value and use the first that works.
        #[arg(long)]
        minimize_n: Option<usize>,
    },
    /// Rebuild the published 12-dimensional counterexample.
    VerifyPaper,
    /// Bounded checks of the structural lemmas and transforms.
    Selftest,
}

/// Output of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub status: Status,
    /// Flat form for `--format csv`: header, then rows.
    pub table: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Refuted,
    CounterexampleFound,
    Absent,
    Failed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Refuted => "refuted",
            Status::CounterexampleFound => "counterexample-found",
            Status::Absent => "absent",
            Status::Failed => "failed",
        }
    }
}

impl Report {
    fn new(command: &str, inputs: Value, outputs: Value, status: Status, table: Vec<Vec<String>>) -> Self {
        Self { command: command.to_string(), inputs, outputs, status, table }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "status": self.status.as_str(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.table {
            let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

fn vector_table<T: ToString>(v: &[T]) -> Vec<Vec<String>> {
    let mut t = vec![vec!["index".to_string(), "value".to_string()]];
    t.extend(v.iter().enumerate().map(|(i, x)| vec![i.to_string(), x.to_string()]));
    t
}

/// Parses a vector given as a JSON array, a JSON report carrying
/// `outputs.vector`, `index,value` CSV, or comma/whitespace separated text.
pub fn parse_vector_text(text: &str) -> Result<Vec<BigRational>> {
    let t = text.trim();
    if t.is_empty() {
        return Err(invalid("no vector given"));
    }
    if t.starts_with('[') || t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| invalid(format!("malformed JSON vector: {e}")))?;
        let arr = match &v {
            Value::Array(a) => a,
            Value::Object(_) => v["outputs"]["vector"]
                .as_array()
                .ok_or_else(|| invalid("JSON object has no outputs.vector array"))?,
            _ => unreachable!(),
        };
        return arr
            .iter()
            .map(|x| match x {
                Value::String(s) => parse_rational(s),
                Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
                other => Err(invalid(format!("vector entry {other} is not an exact number"))),
            })
            .collect();
    }
    let mut lines = t.lines().peekable();
    if lines.peek().is_some_and(|l| l.trim() == "index,value") {
        lines.next();
        return lines
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                let (_, value) = l.split_once(',').ok_or_else(|| invalid(format!("bad CSV row `{l}`")))?;
                parse_rational(value)
            })
            .collect();
    }
    t.split(|ch: char| ch == ',' || ch.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(parse_rational)
        .collect()
}

fn face_vector_from(v: Vec<BigRational>) -> Result<FaceVector> {
    let mut out = Vec::with_capacity(v.len());
    for (k, x) in v.into_iter().enumerate() {
        if !x.is_integer() {
            return Err(invalid(format!("face counts must be integers, f_{k} = {x}")));
        }
        if x.is_negative() {
            return Err(invalid(format!("face counts must be nonnegative, f_{k} = {x}")));
        }
        out.push(x.to_integer());
    }
    FaceVector::new(out)
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn vector(&mut self, flag: &Option<String>) -> Result<Vec<BigRational>> {
        match flag {
            Some(s) => parse_vector_text(s),
            None => {
                let mut buf = String::new();
                self.stdin
                    .read_to_string(&mut buf)
                    .map_err(|e| invalid(format!("cannot read stdin: {e}")))?;
                parse_vector_text(&buf)
            }
        }
    }
}

/// Runs the command line `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    let mut io = Io { stdin, stdout };
    let report = match execute(&cli.command, &mut io) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 1;
        }
    };
    let written = match cli.format {
        Format::Json => writeln!(io.stdout, "{}", report.to_json()),
        Format::Csv => write!(io.stdout, "{}", report.to_csv()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write report: {e}");
        return 1;
    }
    match report.status {
        Status::Ok | Status::Refuted | Status::CounterexampleFound => {
            if report.command == "refute" && report.status != Status::Refuted {
                2
            } else {
                0
            }
        }
        Status::Absent | Status::Failed => 2,
    }
}

fn execute(cmd: &Command, io: &mut Io<'_>) -> Result<Report> {
    match cmd {
        Command::Cube { d } => {
            let f = cube_f_vector(*d)?;
            Ok(Report::new(
                "cube",
                json!({ "d": d }),
                json!({ "vector": ints_to_strings(f.entries()) }),
                Status::Ok,
                vector_table(f.entries()),
            ))
        }
        Command::Hmatrix { d } => {
            let m = build_transform_matrix(*d)?;
            let rows: Vec<Vec<String>> = m.rows().iter().map(|r| rationals_to_strings(r)).collect();
            let mut table = vec![std::iter::once("row".to_string()).chain((0..*d).map(|j| format!("col{j}"))).collect()];
            table.extend(rows.iter().enumerate().map(|(i, r)| std::iter::once(i.to_string()).chain(r.iter().cloned()).collect()));
            Ok(Report::new("hmatrix", json!({ "d": d }), json!({ "matrix": rows }), Status::Ok, table))
        }
        Command::F2h { vector } => {
            let f = face_vector_from(io.vector(vector)?)?;
            let h = f_to_h(&f)?;
            let v = validate_adin(&h);
            Ok(Report::new(
                "f2h",
                json!({ "vector": ints_to_strings(f.entries()) }),
                json!({ "vector": rationals_to_strings(h.entries()), "validation": v }),
                Status::Ok,
                vector_table(h.entries()),
            ))
        }
        Command::H2f { vector, allow_rational } => {
            let h = ShortHVector::new(io.vector(vector)?)?;
            let f: Vec<String> = if *allow_rational {
                rationals_to_strings(&h_to_f_rational(&h)?)
            } else {
                ints_to_strings(h_to_f(&h)?.entries())
            };
            Ok(Report::new(
                "h2f",
                json!({ "vector": rationals_to_strings(h.entries()), "allow_rational": allow_rational }),
                json!({ "vector": f }),
                Status::Ok,
                vector_table(&f),
            ))
        }
        Command::Ncp { d, n } => {
            let f = ncp_f_vector(NcpParams::new(*d, *n)?)?;
            Ok(Report::new(
                "ncp",
                json!({ "d": d, "n": n }),
                json!({ "vector": ints_to_strings(f.entries()) }),
                Status::Ok,
                vector_table(f.entries()),
            ))
        }
        Command::Cap { d, c, vector } => {
            let caps = parse_int(c)?;
            let f = face_vector_from(io.vector(vector)?)?;
            if f.dim() != *d {
                return Err(invalid(format!("vector has length {}, expected d = {d}", f.dim())));
            }
            let capped = apply_caps(&f, &caps)?;
            Ok(Report::new(
                "cap",
                json!({ "d": d, "c": caps.to_string(), "vector": ints_to_strings(f.entries()) }),
                json!({ "vector": ints_to_strings(capped.entries()) }),
                Status::Ok,
                vector_table(capped.entries()),
            ))
        }
        Command::Analyze { vector } => {
            let v = io.vector(vector)?;
            let r = seqkit::unimodality_report(&v)?;
            let partial = if v.len() >= 2 { Some(partial_unimodality_check(&v)?) } else { None };
            let mut table = vec![vec!["index".into(), "value".into(), "peak".into(), "dip".into()]];
            table.extend(v.iter().enumerate().map(|(i, x)| {
                vec![
                    i.to_string(),
                    x.to_string(),
                    r.peak_indices.contains(&i).to_string(),
                    r.dip_indices.contains(&i).to_string(),
                ]
            }));
            Ok(Report::new(
                "analyze",
                json!({ "vector": rationals_to_strings(&v) }),
                json!({ "unimodality": r, "symmetric": seqkit::is_symmetric(&v), "partial_unimodality": partial }),
                Status::Ok,
                table,
            ))
        }
        Command::Refute { d, certificates } => refute_command(*d, certificates.as_ref()),
        Command::Witness { d } => {
            let inputs = json!({ "d": d });
            let mut table = vec![vec!["index".into(), "h".into(), "f".into()]];
            match find_h_witness(*d)? {
                Some(w) => {
                    table.extend((0..*d).map(|i| vec![i.to_string(), w.h.entries()[i].to_string(), w.f[i].to_string()]));
                    Ok(Report::new(
                        "witness",
                        inputs,
                        json!({
                            "vector": rationals_to_strings(w.h.entries()),
                            "f_vector": ints_to_strings(&w.f),
                            "pattern": [w.pattern.j, w.pattern.i, w.pattern.k],
                            "dip_indices": w.dip_indices,
                            "validation": validate_adin(&w.h),
                            "realizable": "unknown",
                        }),
                        Status::CounterexampleFound,
                        table,
                    ))
                }
                None => Ok(Report::new("witness", inputs, json!({ "vector": null }), Status::Absent, table)),
            }
        }
        Command::Counterexample { d, n, minimize_n } => {
            let n_used = match minimize_n {
                Some(max) => minimal_vertex_exponent(*d, *max)?,
                None => Some(*n),
            };
            let found = match n_used {
                Some(n) => find_counterexample(*d, n)?,
                None => None,
            };
            let inputs = json!({ "d": d, "n": n, "minimize_n": minimize_n });
            let mut table = vec![vec![
                "d".into(),
                "n".into(),
                "c".into(),
                "j".into(),
                "i".into(),
                "k".into(),
                "interval".into(),
            ]];
            match found {
                Some(spec) => {
                    table.push(vec![
                        spec.d.to_string(),
                        spec.n.to_string(),
                        spec.c.to_string(),
                        spec.pattern.j.to_string(),
                        spec.pattern.i.to_string(),
                        spec.pattern.k.to_string(),
                        spec.interval.to_string(),
                    ]);
                    let outputs = serde_json::to_value(&spec).map_err(|e| Error::InternalConsistency(e.to_string()))?;
                    Ok(Report::new("counterexample", inputs, outputs, Status::CounterexampleFound, table))
                }
                None => Ok(Report::new("counterexample", inputs, json!({ "n": n_used }), Status::Absent, table)),
            }
        }
        Command::VerifyPaper => {
            let r = verify_paper_counterexample()?;
            if !r.ok() {
                return Err(Error::InternalConsistency(format!("published counterexample does not verify: {r:?}")));
            }
            let table = vector_table(&r.f);
            let mut outputs = serde_json::to_value(&r).map_err(|e| Error::InternalConsistency(e.to_string()))?;
            outputs["vector"] = outputs["f"].clone();
            Ok(Report::new("verify-paper", json!({}), outputs, Status::Ok, table))
        }
        Command::Selftest => {
            let checks = selftest::run_all();
            let all = checks.iter().all(|c| c.passed);
            let mut table = vec![vec!["check".into(), "passed".into(), "detail".into()]];
            table.extend(checks.iter().map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()]));
            Ok(Report::new(
                "selftest",
                json!({}),
                json!({ "checks": checks }),
                if all { Status::Ok } else { Status::Failed },
                table,
            ))
        }
    }
}

fn refute_command(d: usize, certificates: Option<&PathBuf>) -> Result<Report> {
    let r = refute_dimension(d)?;
    r.replay_all()?;
    let mut table = vec![vec!["j".into(), "i".into(), "k".into(), "outcome".into()]];
    let mut patterns = Vec::new();
    for o in &r.outcomes {
        let outcome = match &o.outcome {
            FeasibilityOutcome::Infeasible(_) => "infeasible",
            FeasibilityOutcome::Feasible(_) => "feasible",
        };
        let p = o.pattern;
        table.push(vec![p.j.to_string(), p.i.to_string(), p.k.to_string(), outcome.into()]);
        let mut entry = json!({ "pattern": [p.j, p.i, p.k], "outcome": outcome });
        if let Some(w) = o.outcome.witness() {
            entry["witness"] = rationals_to_strings(w).into();
        }
        patterns.push(entry);
    }
    let infeasible = r.outcomes.iter().filter(|o| !o.outcome.is_feasible()).count();
    let mut outputs = json!({
        "patterns": patterns,
        "pattern_count": r.outcomes.len(),
        "infeasible_count": infeasible,
        "certificates": infeasible,
        "certificates_replayed": true,
    });
    match certificates {
        Some(p) if p.as_os_str() == "-" => outputs["certificate_bundle"] = r.certificate_bundle(),
        Some(p) => {
            let text = serde_json::to_string_pretty(&r.certificate_bundle()).expect("bundle serializes");
            std::fs::write(p, text).map_err(|e| invalid(format!("cannot write {}: {e}", p.display())))?;
            outputs["certificates_path"] = p.display().to_string().into();
        }
        None => {}
    }
    let status = if r.refuted() { Status::Refuted } else { Status::CounterexampleFound };
    Ok(Report::new("refute", json!({ "d": d }), outputs, status, table))
}
