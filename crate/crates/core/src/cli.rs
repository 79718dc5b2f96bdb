//! Command-line front end. Every command is a thin wrapper over the library.
//!
//! Exit codes: 0 on success, 1 on a negative verdict (inequivalent codes,
//! failed verification), 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::buildup::{self, BuildOutput, Method};
use crate::classify::{self, ClassRecord, TableFixture};
use crate::code::ECode;
use crate::equivalence::{binary_equivalent, e_equivalent};
use crate::error::Error;
use crate::gf2::{BitMatrix, BitVector};
use crate::oracle;
use crate::ring::EMatrix;

#[derive(Parser, Debug)]
#[command(name = "ering", version, about = "Linear codes over the ring E of order 4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CodeArgs {
    /// Matrix file: `E r c` generator matrix, or `GF2 r c` residue matrix of a free code.
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DualSide {
    Left,
    Right,
    TwoSided,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Left, right and two-sided hulls.
    Hull(CodeArgs),
    /// Left, right and two-sided duals, or one of them.
    Dual {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum)]
        side: Option<DualSide>,
    },
    /// Residue code as a binary matrix.
    Residue(CodeArgs),
    /// Torsion code as a binary matrix.
    Torsion(CodeArgs),
    /// Minimum distance.
    Distance(CodeArgs),
    /// Length, rank, minimum distance, hull-rank and freeness.
    Summary(CodeArgs),
    /// Build-up construction from a free code.
    Construct {
        #[arg(long)]
        method: String,
        /// Binary vector of the code's length.
        #[arg(long)]
        u: String,
        #[arg(long, conflicts_with = "file")]
        code: Option<PathBuf>,
        file: Option<PathBuf>,
        /// Construction III with the first `v` entry repeated down the column.
        #[arg(long)]
        third_construction_literal: bool,
        #[arg(long)]
        json: bool,
    },
    /// Permutation equivalence of two codes (binary or free E-codes).
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Optimal free codes with a given hull-rank, up to equivalence.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "hull-rank")]
        hull_rank: usize,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Check the transcribed optimal-code tables.
    VerifyTables {
        /// Defaults to the fixture shipped with the crate.
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Cross-check closed forms against exhaustive scans on random codes.
    Verify {
        #[arg(long, required = true)]
        oracle: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long = "max-n", default_value_t = 6)]
        max_n: usize,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path, e: Error) -> Failure {
    match e {
        Error::Parse { line, column, message } => {
            Failure::Usage(format!("{}:{line}:{column}: {message}", path.display()))
        }
        other => Failure::Input(other),
    }
}

enum Matrix {
    Binary(BitMatrix),
    Ring(EMatrix),
}

fn read_matrix(path: &Path) -> std::result::Result<Matrix, Failure> {
    let text = read(path)?;
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let parsed = if header.starts_with("GF2") {
        BitMatrix::parse_text(&text).map(Matrix::Binary)
    } else {
        EMatrix::parse_text(&text).map(Matrix::Ring)
    };
    parsed.map_err(|e| with_path(path, e))
}

fn read_code(path: &Path) -> std::result::Result<ECode, Failure> {
    let code = match read_matrix(path)? {
        Matrix::Binary(g) => ECode::free_from_residue(&g),
        Matrix::Ring(g) => ECode::from_generators(&g),
    };
    code.map_err(Failure::Input)
}

fn emit_json(out: &mut dyn Write, v: &impl Serialize) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "{text}").map_err(io)
}

fn binary_rows(m: &BitMatrix) -> Vec<String> {
    m.row_vectors().map(|r| r.to_string()).collect()
}

fn code_json(c: &ECode) -> Value {
    let s = c.summarize();
    json!({
        "n": s.n,
        "k": s.k,
        "d": s.d,
        "hull_rank": s.hull_rank,
        "free": s.free,
        "generator": c.generator_matrix(),
    })
}

fn print_code(out: &mut dyn Write, name: &str, c: &ECode) -> std::result::Result<(), Failure> {
    writeln!(out, "{name}: {}", c.summarize()).map_err(io)?;
    write!(out, "{}", c.generator_matrix()).map_err(io)
}

fn print_three(out: &mut dyn Write, json: bool, items: [(&str, ECode); 3]) -> Outcome {
    if json {
        let map: serde_json::Map<String, Value> =
            items.iter().map(|(name, c)| (name.to_string(), code_json(c))).collect();
        emit_json(out, &map)?;
    } else {
        for (name, c) in &items {
            print_code(out, name, c)?;
        }
    }
    Ok(0)
}

fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> std::result::Result<T, Failure> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(Failure::Usage("--workers must be at least 1".into())),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Hull(a) => {
            let c = read_code(&a.file)?;
            print_three(
                out,
                a.json,
                [("lhull", c.lhull()), ("rhull", c.rhull()), ("hull", c.hull())],
            )
        }
        Command::Dual { code: a, side } => {
            let c = read_code(&a.file)?;
            match side {
                None => print_three(
                    out,
                    a.json,
                    [
                        ("left_dual", c.left_dual()),
                        ("right_dual", c.right_dual()),
                        ("dual", c.dual()),
                    ],
                ),
                Some(s) => {
                    let d = match s {
                        DualSide::Left => c.left_dual(),
                        DualSide::Right => c.right_dual(),
                        DualSide::TwoSided => c.dual(),
                    };
                    if a.json {
                        emit_json(out, &code_json(&d))?;
                    } else {
                        print_code(out, "dual", &d)?;
                    }
                    Ok(0)
                }
            }
        }
        Command::Residue(a) => plane(out, &a, "residue", ECode::residue),
        Command::Torsion(a) => plane(out, &a, "torsion", ECode::torsion),
        Command::Distance(a) => {
            let c = read_code(&a.file)?;
            let d = c.min_distance()?;
            if a.json {
                emit_json(out, &json!({ "d": d }))?;
            } else {
                writeln!(out, "{d}").map_err(io)?;
            }
            Ok(0)
        }
        Command::Summary(a) => {
            let c = read_code(&a.file)?;
            if a.json {
                emit_json(out, &c.summarize())?;
            } else {
                writeln!(out, "{}", c.summarize()).map_err(io)?;
            }
            Ok(0)
        }
        Command::Construct {
            method,
            u,
            code,
            file,
            third_construction_literal,
            json,
        } => {
            let path = code
                .or(file)
                .ok_or_else(|| Failure::Usage("construct needs a code file".into()))?;
            let c = read_code(&path)?;
            let method: Method = method.parse()?;
            let u: BitVector = u
                .parse()
                .map_err(|_| Failure::Usage(format!("--u must be a binary string, got {u:?}")))?;
            let built = if third_construction_literal {
                if method != Method::III {
                    return Err(Failure::Usage(
                        "--third-construction-literal only applies to method III".into(),
                    ));
                }
                buildup::construct_iii_literal(&c, &u)?
            } else {
                buildup::construct(method, &c, &u)?
            };
            print_build(out, &built, json)?;
            Ok(0)
        }
        Command::Equiv { a, b, json } => equiv(out, &a, &b, json),
        Command::Classify {
            n,
            k,
            hull_rank,
            json,
            csv,
            workers,
        } => {
            let rec = with_workers(workers, || classify::classify(n, k, hull_rank))??;
            if json {
                emit_json(out, &rec)?;
            } else if csv {
                write_csv(out, &rec)?;
            } else {
                write!(out, "{rec}").map_err(io)?;
            }
            Ok(0)
        }
        Command::VerifyTables { fixture, json, workers } => {
            let fx = match fixture {
                Some(p) => TableFixture::parse(&read(&p)?).map_err(|e| with_path(&p, e))?,
                None => TableFixture::embedded(),
            };
            let report = with_workers(workers, || classify::verify_tables(&fx))?;
            if json {
                emit_json(
                    out,
                    &json!({
                        "pass": report.count(classify::Status::Pass),
                        "warn": report.count(classify::Status::Warn),
                        "fail": report.count(classify::Status::Fail),
                        "findings": report.findings,
                    }),
                )?;
            } else {
                writeln!(out, "{report}").map_err(io)?;
            }
            Ok(if report.is_clean() { 0 } else { 1 })
        }
        Command::Verify {
            oracle: _,
            seed,
            count,
            max_n,
            json,
        } => {
            let rep = oracle::sweep(seed, count, max_n)?;
            if json {
                emit_json(out, &rep)?;
            } else {
                for m in &rep.mismatches {
                    writeln!(out, "MISMATCH {m}").map_err(io)?;
                }
                writeln!(
                    out,
                    "seed {}: {} codes checked ({} free), {} mismatches",
                    rep.seed,
                    rep.checked,
                    rep.free,
                    rep.mismatches.len()
                )
                .map_err(io)?;
            }
            Ok(if rep.mismatches.is_empty() { 0 } else { 1 })
        }
    }
}

fn plane(out: &mut dyn Write, a: &CodeArgs, name: &str, f: fn(&ECode) -> BitMatrix) -> Outcome {
    let c = read_code(&a.file)?;
    let m = f(&c);
    if a.json {
        emit_json(out, &json!({ name: binary_rows(&m), "n": c.len(), "dim": m.rows() }))?;
    } else {
        write!(out, "{m}").map_err(io)?;
    }
    Ok(0)
}

fn print_build(out: &mut dyn Write, b: &BuildOutput, json: bool) -> std::result::Result<(), Failure> {
    let s = b.summary();
    if json {
        return emit_json(
            out,
            &json!({
                "summary": s,
                "generator": b.generator,
                "parity_check": b.parity_check,
            }),
        );
    }
    let bits = |xs: &[u8]| xs.iter().map(|x| x.to_string()).collect::<String>();
    writeln!(
        out,
        "Construction {}: [{}, {}, {}] hull-rank {} -> {} (predicted {:?})",
        s.method,
        s.n,
        s.k,
        s.d.map_or("-".into(), |d| d.to_string()),
        s.input_hull_rank,
        s.hull_rank,
        s.predicted_hull_ranks
    )
    .map_err(io)?;
    writeln!(out, "v = {}", bits(&s.v)).map_err(io)?;
    writeln!(out, "w = {}", bits(&s.w)).map_err(io)?;
    writeln!(out, "# generator").map_err(io)?;
    write!(out, "{}", b.generator).map_err(io)?;
    writeln!(
        out,
        "# parity check ({})",
        if s.parity_check_valid { "valid" } else { "INVALID" }
    )
    .map_err(io)?;
    write!(out, "{}", b.parity_check).map_err(io)
}

fn equiv(out: &mut dyn Write, a: &Path, b: &Path, json: bool) -> Outcome {
    let witness = match (read_matrix(a)?, read_matrix(b)?) {
        (Matrix::Binary(x), Matrix::Binary(y)) => {
            if x.cols() != y.cols() {
                None
            } else if x.cols() > 64 {
                return Err(Failure::Usage("binary equivalence supports at most 64 columns".into()));
            } else {
                binary_equivalent(&x, &y)
            }
        }
        (x, y) => {
            let as_code = |m: Matrix| match m {
                Matrix::Binary(g) => ECode::free_from_residue(&g),
                Matrix::Ring(g) => ECode::from_generators(&g),
            };
            e_equivalent(&as_code(x)?, &as_code(y)?)?
        }
    };
    if json {
        emit_json(
            out,
            &json!({
                "equivalent": witness.is_some(),
                "witness": witness.as_ref().map(|w| w.to_string()),
                "mapping": witness.as_ref().map(|w| w.mapping().to_vec()),
            }),
        )?;
    } else {
        match &witness {
            Some(w) => writeln!(out, "equivalent {w}").map_err(io)?,
            None => writeln!(out, "inequivalent").map_err(io)?,
        }
    }
    Ok(if witness.is_some() { 0 } else { 1 })
}

fn write_csv(out: &mut dyn Write, rec: &ClassRecord) -> std::result::Result<(), Failure> {
    writeln!(out, "n,k,l,d,representative,generator").map_err(io)?;
    let d = rec.optimal_d.map_or(String::new(), |d| d.to_string());
    for (i, g) in rec.representatives.iter().enumerate() {
        let rows: Vec<String> = g.row_vectors().map(|r| r.to_string()).collect();
        writeln!(
            out,
            "{},{},{},{d},{},{}",
            rec.n,
            rec.k,
            rec.hull_rank,
            i + 1,
            rows.join(" ")
        )
        .map_err(io)?;
    }
    Ok(())
}
