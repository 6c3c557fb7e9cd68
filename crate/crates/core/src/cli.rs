//! The `grasscode` command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 numerical-health failure,
//! 3 size limit.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::analysis::{
    angle_classes, check_scheme, coarse_relations, design_strength, inner_product_set, is_one_design, is_two_design,
    scheme_idempotents, twothree_audit,
};
use crate::bounds::{
    absolute_code_bound, bound_table, design_absolute_bound, one_distance_bound, simplex_orthoplex, simplex_size_for,
    two_distance_bound, Regime,
};
use crate::constructions::{extraspecial_code, mub_code, pauli_code};
use crate::error::{Error, ErrorCategory, Result};
use crate::linalg::format::{read_code, to_json, write_code, LoadOptions};
use crate::linalg::{haar_subspace_with, seeded_rng, Code, DEFAULT_TOL};
use crate::sympoly::{dim_h, dim_hk, fmt_rational, parse_rational, partitions_up_to, Rational};

#[derive(Parser, Debug)]
#[command(name = "grasscode", version, about = "Codes, designs and bounds in complex Grassmannians")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Floating-point tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Random seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads (0 uses all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code and write it in grasscode-v1 format.
    #[command(subcommand)]
    Construct(Construct),
    /// Principal-angle classes of a code.
    Angles(FileArg),
    /// Gram matrix of trace inner products.
    Gram(FileArg),
    /// Evaluate a bound.
    #[command(subcommand)]
    Bound(Bound),
    /// The table of code bounds for G(m, n).
    Table {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Emit CSV instead of aligned text.
        #[arg(long)]
        csv: bool,
    },
    /// Dimensions of the pieces H_mu(n) with |mu| <= k.
    Dims {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Test the design strength of a code.
    VerifyDesign {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: u32,
    },
    /// Test whether the relations of a code form an association scheme.
    CheckScheme {
        file: PathBuf,
        /// Use trace inner products instead of principal angles.
        #[arg(long)]
        coarse: bool,
        /// Also test zonal idempotents up to this degree.
        #[arg(long)]
        t: Option<u32>,
    },
    /// Summary of a code file.
    Info {
        file: PathBuf,
        /// Level for the distance/design/size audit.
        #[arg(long, default_value_t = 1)]
        t: u32,
    },
}

#[derive(Args, Debug)]
struct FileArg {
    file: PathBuf,
}

#[derive(Args, Debug)]
struct Output {
    /// Output file; the code is printed to stdout when omitted.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Eigenspaces of the Pauli words on k qubits.
    Pauli {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Joint eigenspaces of isotropic subgroups of the extraspecial group.
    Extraspecial {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// A complete set of mutually unbiased bases of C^p.
    Mub {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Haar-random subspaces.
    Haar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum Bound {
    /// Relative bound for {alpha}-codes.
    OneDistance {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        alpha: Rational,
    },
    /// Relative bound for {alpha, beta}-codes.
    TwoDistance {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        alpha: Rational,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        beta: Rational,
    },
    /// Absolute bounds for codes with k distances.
    Absolute {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
    },
    /// Simplex and orthoplex thresholds for a code of the given size, or
    /// the size at which the simplex threshold equals alpha.
    Simplex {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        size: Option<u64>,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        alpha: Option<Rational>,
    },
    /// Lower bound on the size of a t-design.
    Design {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u32,
    },
}

fn rational_arg(text: &str) -> std::result::Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

/// Output of one command: human-readable text and its JSON counterpart.
struct Report {
    text: String,
    json: Value,
}

fn load(path: &Path, tol: f64) -> Result<Code> {
    read_code(
        path,
        LoadOptions {
            tol,
            ..LoadOptions::default()
        },
    )
}

fn emit_code(code: &Code, out: &Output, what: &str) -> Result<Report> {
    let summary = json!({"construction": what, "n": code.n(), "m": code.m(), "size": code.len()});
    match &out.output {
        Some(path) => {
            write_code(code, path)?;
            Ok(Report {
                text: format!(
                    "wrote {} subspaces of G({}, {}) to {}\n",
                    code.len(),
                    code.m(),
                    code.n(),
                    path.display()
                ),
                json: json!({"written": path.display().to_string(), "code": summary}),
            })
        }
        None => {
            let body = to_json(code);
            Ok(Report {
                text: format!("{body}\n"),
                json: serde_json::from_str(&body)?,
            })
        }
    }
}

fn construct(cmd: &Construct, seed: u64) -> Result<Report> {
    match cmd {
        Construct::Pauli { k, out } => emit_code(&pauli_code(*k)?, out, "pauli"),
        Construct::Extraspecial { p, n, k, out } => emit_code(&extraspecial_code(*p, *n, *k)?, out, "extraspecial"),
        Construct::Mub { p, out } => emit_code(&mub_code(*p)?, out, "mub"),
        Construct::Haar { n, m, size, out } => {
            let mut rng = seeded_rng(seed);
            let members = (0..*size).map(|_| haar_subspace_with(&mut rng, *n, *m)).collect::<Result<Vec<_>>>()?;
            emit_code(&Code::new(*n, *m, members)?, out, "haar")
        }
    }
}

fn bound(cmd: &Bound) -> Result<Report> {
    match cmd {
        Bound::OneDistance { m, n, alpha } => {
            let b = one_distance_bound(alpha, *m, *n);
            Ok(Report {
                text: b.to_string(),
                json: b.to_json(),
            })
        }
        Bound::TwoDistance { m, n, alpha, beta } => {
            let b = two_distance_bound(alpha, beta, *m, *n)?;
            Ok(Report {
                text: b.to_string(),
                json: b.to_json(),
            })
        }
        Bound::Absolute { m, n, k } => {
            let (hom, h) = absolute_code_bound(*k, *m, *n)?;
            Ok(Report {
                text: format!("|A| = {k}: |S| <= {hom} (homogeneous polynomials), |S| <= {h} (dim H_{k})\n"),
                json: json!({"k": k, "hom_bound": hom.to_string(), "h_bound": h.to_string()}),
            })
        }
        Bound::Simplex { m, n, size, alpha } => {
            let mut text = String::new();
            let mut out = json!({});
            if let Some(size) = size {
                let s = simplex_orthoplex(*size, *m, *n)?;
                let regime = match s.regime {
                    Regime::Simplex => "simplex",
                    Regime::Orthoplex => "orthoplex",
                };
                let _ = writeln!(
                    text,
                    "{size} points: simplex alpha = {}, orthoplex beta = {}, regime {regime} (orthoplex equality needs |S| <= {})",
                    fmt_rational(&s.simplex_alpha),
                    fmt_rational(&s.orthoplex_beta),
                    s.orthoplex_max_size
                );
                out["simplex_alpha"] = json!(fmt_rational(&s.simplex_alpha));
                out["orthoplex_beta"] = json!(fmt_rational(&s.orthoplex_beta));
                out["regime"] = json!(regime);
            }
            if let Some(alpha) = alpha {
                let size = simplex_size_for(alpha, *m, *n);
                match &size {
                    Some(v) => {
                        let _ = writeln!(text, "simplex threshold equals {} at |S| = {}", fmt_rational(alpha), fmt_rational(v));
                    }
                    None => {
                        let _ = writeln!(text, "simplex threshold never equals {}", fmt_rational(alpha));
                    }
                }
                out["size_for_alpha"] = json!(size.as_ref().map(fmt_rational));
            }
            if size.is_none() && alpha.is_none() {
                return Err(Error::OutOfRange("give --size or --alpha".into()));
            }
            Ok(Report { text, json: out })
        }
        Bound::Design { m, n, t } => {
            let v = design_absolute_bound(*t, *m, *n)?;
            Ok(Report {
                text: format!("a {t}-design in G({m}, {n}) has |S| >= {v}\n"),
                json: json!({"t": t, "lower_bound": v.to_string()}),
            })
        }
    }
}

fn gram(code: &Code) -> Report {
    let g = code.gram_matrix();
    let rows: Vec<Vec<f64>> = (0..g.nrows()).map(|i| g.row(i).iter().cloned().collect()).collect();
    let text = rows
        .iter()
        .map(|r| r.iter().map(|v| format!("{v:.12}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
        + "\n";
    Report {
        text,
        json: json!({"gram": rows}),
    }
}

fn dims(m: usize, n: usize, k: u32) -> Result<Report> {
    let mut text = String::new();
    let mut rows = Vec::new();
    for mu in partitions_up_to(k, m) {
        let d = dim_h(&mu, n)?;
        let _ = writeln!(text, "dim H{mu} = {d}");
        rows.push(json!({"partition": mu.to_string(), "dim": d.to_string()}));
    }
    let total = dim_hk(k, m, n)?;
    let _ = writeln!(text, "dim H_{k}({m}, {n}) = {total}");
    Ok(Report {
        text,
        json: json!({"pieces": rows, "total": total.to_string()}),
    })
}

fn verify_design(code: &Code, t: u32, tol: f64) -> Result<Report> {
    let mut text = String::new();
    let one = is_one_design(code, tol)?;
    let _ = writeln!(text, "1-design: {}, residual {:.3e}", one.holds, one.residual);
    let mut out = json!({"one_design": {"holds": one.holds, "residual": one.residual}});
    let mut ok = one.holds;
    if t >= 2 {
        let two = is_two_design(code, tol)?;
        let _ = writeln!(text, "2-design: {}, residual {:.3e}", two.holds, two.residual);
        out["two_design"] = json!({"holds": two.holds, "residual": two.residual});
        ok &= two.holds;
    }
    if 2 * code.m() <= code.n() {
        let s = design_strength(code, t.min(crate::zonal::STABLE_DEGREE), tol)?;
        let _ = writeln!(text, "zonal design strength: {} (tested up to {})", s.strength, s.t_max);
        out["strength"] = s.to_json();
        ok &= s.strength >= t.min(s.t_max);
    }
    out["is_design"] = json!(ok);
    let _ = writeln!(text, "{t}-design: {ok}");
    Ok(Report { text, json: out })
}

fn check_scheme_cmd(code: &Code, coarse: bool, t: Option<u32>, tol: f64) -> Result<Report> {
    let r = if coarse { coarse_relations(code, tol)? } else { angle_classes(code, tol)? };
    let report = check_scheme(&r, tol)?;
    let mut text = format!("{r}{report}");
    let mut out = json!({"relations": r.to_json(), "scheme": report.to_json()});
    if let Some(t) = t {
        let idem = scheme_idempotents(code, &r, t, tol)?;
        text.push_str(&idem.to_string());
        out["idempotents"] = idem.to_json();
    }
    Ok(Report { text, json: out })
}

fn info(code: &Code, t: u32, tol: f64) -> Result<Report> {
    let mut text = format!("{} subspaces of G({}, {})\n", code.len(), code.m(), code.n());
    let mut out = json!({"n": code.n(), "m": code.m(), "size": code.len()});
    if code.len() >= 2 {
        let ips = inner_product_set(code, tol)?;
        let _ = writeln!(text, "inner products: {ips:?}");
        out["inner_products"] = json!(ips);
    }
    if 2 * code.m() <= code.n() {
        let audit = twothree_audit(code, t, tol)?;
        text.push_str(&audit.to_string());
        out["audit"] = audit.to_json();
        if !audit.consistent {
            return Err(Error::NumericalHealth(audit.warning.unwrap_or_default()));
        }
    }
    Ok(Report { text, json: out })
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let tol = cli.tol;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::OutOfRange(format!("tolerance must be positive, got {tol}")));
    }
    match &cli.command {
        Command::Construct(c) => construct(c, cli.seed),
        Command::Angles(f) => {
            let code = load(&f.file, tol)?;
            let r = angle_classes(&code, tol)?;
            Ok(Report {
                text: r.to_string(),
                json: r.to_json(),
            })
        }
        Command::Gram(f) => Ok(gram(&load(&f.file, tol)?)),
        Command::Bound(b) => bound(b),
        Command::Table { m, n, csv } => {
            let table = bound_table(*m, *n)?;
            Ok(Report {
                text: if *csv { table.to_csv() } else { table.to_text() },
                json: table.to_json(),
            })
        }
        Command::Dims { m, n, k } => dims(*m, *n, *k),
        Command::VerifyDesign { file, t } => verify_design(&load(file, tol)?, *t, tol),
        Command::CheckScheme { file, coarse, t } => check_scheme_cmd(&load(file, tol)?, *coarse, *t, tol),
        Command::Info { file, t } => info(&load(file, tol)?, *t, tol),
    }
}

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err.category() {
        ErrorCategory::Validation => 1,
        ErrorCategory::Numerical => 2,
        ErrorCategory::SizeLimit => 3,
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    if cli.threads > 0 {
        // Fails only if a global pool already exists, in which case it is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    match dispatch(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.json);
            } else {
                print!("{}", report.text);
            }
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}
