use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use serde_json::{json, Value};

use suncs::fundamental::{build_group_element, coherent_state_fund, decompose, phase_fixed_state};
use suncs::generators::lambda_set;
use suncs::io::{complex_to_value, matrix_to_value, parse_angles, parse_matrix};
use suncs::linalg::max_abs_diff;
use suncs::quadrature::{
    build_grid, coset_volume, exact_coset_volume, resolution_of_unity, unity_orders, volume_orders,
};
use suncs::symrep::{basis, coherent_state, direct_overlap, overlap_closed};
use suncs::verify::{run_suite, Tolerances, VerifyConfig};
use suncs::Angles;

/// Environment variable naming the directory that receives reports when `--out` is absent.
const OUT_DIR_ENV: &str = "SUNCS_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "suncs",
    version,
    about = "SU(n) coherent states: states, decompositions, quadrature checks"
)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Coherent state amplitudes for the given angles.
    State(StateArgs),
    /// Factor an SU(n) matrix into its L·M·R tree.
    Decompose(DecomposeArgs),
    /// Overlap of two coherent states, closed form against the direct inner product.
    Overlap(OverlapArgs),
    /// Coset volume by quadrature.
    Volume(VolumeArgs),
    /// Resolution of unity on the symmetric representation.
    UnityCheck(UnityArgs),
    /// Generator matrices.
    Generators {
        #[command(subcommand)]
        action: GeneratorAction,
    },
    /// Run the full invariant suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct StateArgs {
    #[arg(long)]
    n: usize,
    /// Angles as inline JSON `{"xi": [...], "phi": [...]}`, a file path, or `-` for stdin.
    #[arg(long)]
    angles: String,
    /// Remove the global phase (fundamental representation only).
    #[arg(long)]
    phase_fixed: bool,
    /// Symmetric representation size N; the fundamental representation when absent.
    #[arg(long = "rep", alias = "N")]
    rep: Option<usize>,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Matrix as inline JSON, a file path, or `-` for stdin.
    #[arg(long)]
    matrix: String,
    #[arg(long, default_value_t = suncs::fundamental::DEFAULT_DECOMPOSE_TOL)]
    tol: f64,
}

#[derive(Args)]
struct OverlapArgs {
    #[arg(long)]
    n: usize,
    #[arg(long = "N")]
    size: usize,
    #[arg(long = "anglesA", alias = "angles-a")]
    angles_a: String,
    #[arg(long = "anglesB", alias = "angles-b")]
    angles_b: String,
}

#[derive(Args)]
struct VolumeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    polar_order: Option<usize>,
    #[arg(long)]
    phase_order: Option<usize>,
}

#[derive(Args)]
struct UnityArgs {
    #[arg(long)]
    n: usize,
    #[arg(long = "N")]
    size: usize,
    #[arg(long)]
    polar_order: Option<usize>,
    #[arg(long)]
    phase_order: Option<usize>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Subcommand)]
enum GeneratorAction {
    /// Print every λ-matrix with its label.
    Dump {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long = "N")]
    size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol_reconstruction: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol_unity: f64,
    #[arg(long, default_value_t = 1e-12)]
    tol_algebraic: f64,
    #[arg(long, default_value_t = 1e-5)]
    tol_fd: f64,
}

enum Outcome {
    Pass,
    Fail,
}

struct Report {
    name: &'static str,
    json: Value,
    csv: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let (report, outcome) = match &cli.command {
        Command::State(a) => (state(a)?, Outcome::Pass),
        Command::Decompose(a) => (decompose_cmd(a)?, Outcome::Pass),
        Command::Overlap(a) => (overlap(a)?, Outcome::Pass),
        Command::Volume(a) => (volume(a)?, Outcome::Pass),
        Command::UnityCheck(a) => unity(a)?,
        Command::Generators {
            action: GeneratorAction::Dump { n },
        } => (generators(*n)?, Outcome::Pass),
        Command::Verify(a) => verify(a)?,
    };
    emit(cli, &report)?;
    Ok(outcome)
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report.json)? + "\n",
        Format::Csv => match &report.csv {
            Some(csv) => csv.clone(),
            None => bail!("{} has no CSV form; use --format json", report.name),
        },
    };
    let ext = if cli.format == Format::Json {
        "json"
    } else {
        "csv"
    };
    let path = match (&cli.out, std::env::var_os(OUT_DIR_ENV)) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(PathBuf::from(dir).join(format!("{}.{ext}", report.name))),
        (None, None) => None,
    };
    match path {
        Some(p) => {
            std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
            eprintln!("wrote {}", p.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// `-` reads stdin, text starting with `{` or `[` is inline JSON, anything else is a path.
fn read_input(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        return Ok(s);
    }
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
}

fn load_angles(arg: &str, n: usize) -> Result<Angles> {
    let angles = parse_angles(&read_input(arg)?)?;
    if angles.n() != n {
        bail!("angles describe n = {}, but --n {n} was given", angles.n());
    }
    Ok(angles)
}

fn cvalues(v: &[Complex<f64>]) -> Value {
    Value::Array(v.iter().map(|z| complex_to_value(*z)).collect())
}

fn state(a: &StateArgs) -> Result<Report> {
    let angles = load_angles(&a.angles, a.n)?;
    let mut csv = String::from("index,occupation,re,im\n");
    let json = match a.rep {
        None => {
            let (amps, extra) = if a.phase_fixed {
                let f = phase_fixed_state(&angles);
                let extra = json!({
                    "pivot": f.pivot,
                    "pivot_moved": f.pivot_moved,
                    "theta_prime": f.theta_prime,
                });
                (f.state.amplitudes, extra)
            } else {
                (coherent_state_fund(&angles).amplitudes, Value::Null)
            };
            for (i, z) in amps.iter().enumerate() {
                let occ: Vec<String> = (0..a.n).map(|k| usize::from(k == i).to_string()).collect();
                writeln!(csv, "{i},{},{:e},{:e}", occ.join(" "), z.re, z.im)?;
            }
            let mut out = json!({
                "n": a.n,
                "representation": "fundamental",
                "angles": angles,
                "amplitudes": cvalues(&amps),
            });
            if !extra.is_null() {
                out["phase_fixed"] = extra;
            }
            out
        }
        Some(size) => {
            if a.phase_fixed {
                bail!("--phase-fixed applies to the fundamental representation only");
            }
            let b = basis(a.n, size)?;
            let s = coherent_state(size, &angles);
            for (i, (occ, z)) in b.states().iter().zip(&s.amplitudes).enumerate() {
                let occ: Vec<String> = occ.as_slice().iter().map(|m| m.to_string()).collect();
                writeln!(csv, "{i},{},{:e},{:e}", occ.join(" "), z.re, z.im)?;
            }
            json!({
                "n": a.n,
                "N": size,
                "representation": "symmetric",
                "angles": angles,
                "basis": b.states(),
                "amplitudes": cvalues(&s.amplitudes),
            })
        }
    };
    Ok(Report {
        name: "state",
        json,
        csv: Some(csv),
    })
}

fn decompose_cmd(a: &DecomposeArgs) -> Result<Report> {
    let u = parse_matrix(&read_input(&a.matrix)?)?;
    let tree = decompose(&u, a.tol)?;
    let rebuilt = build_group_element(&tree)?;
    let json = json!({
        "n": u.nrows(),
        "tree": tree,
        "coset_angles": tree.coset_angles(),
        "reconstruction_error": max_abs_diff(&rebuilt, &u),
    });
    Ok(Report {
        name: "decompose",
        json,
        csv: None,
    })
}

fn overlap(a: &OverlapArgs) -> Result<Report> {
    let x = load_angles(&a.angles_a, a.n)?;
    let y = load_angles(&a.angles_b, a.n)?;
    let closed = overlap_closed(&x, &y, a.size)?;
    let direct = direct_overlap(&x, &y, a.size)?;
    let delta = (closed - direct).norm();
    let csv = format!(
        "closed_re,closed_im,direct_re,direct_im,delta\n{:e},{:e},{:e},{:e},{:e}\n",
        closed.re, closed.im, direct.re, direct.im, delta
    );
    let json = json!({
        "n": a.n,
        "N": a.size,
        "closed_form": complex_to_value(closed),
        "direct": complex_to_value(direct),
        "delta": delta,
    });
    Ok(Report {
        name: "overlap",
        json,
        csv: Some(csv),
    })
}

fn volume(a: &VolumeArgs) -> Result<Report> {
    let (p0, q0) = volume_orders(a.n);
    let (p, q) = (a.polar_order.unwrap_or(p0), a.phase_order.unwrap_or(q0));
    let grid = build_grid::<f64>(a.n, p, q)?;
    let value = coset_volume(&grid);
    let exact = exact_coset_volume::<f64>(a.n);
    let deviation = (value - exact).abs();
    let csv = format!(
        "n,polar_order,phase_order,points,volume,exact,deviation\n{},{p},{q},{},{:e},{:e},{:e}\n",
        a.n,
        grid.point_count(),
        value,
        exact,
        deviation
    );
    let json = json!({
        "n": a.n,
        "polar_order": p,
        "phase_order": q,
        "points": grid.point_count(),
        "volume": value,
        "exact": exact,
        "deviation": deviation,
    });
    Ok(Report {
        name: "volume",
        json,
        csv: Some(csv),
    })
}

fn unity(a: &UnityArgs) -> Result<(Report, Outcome)> {
    let (p0, q0) = unity_orders(a.n, a.size);
    let (p, q) = (a.polar_order.unwrap_or(p0), a.phase_order.unwrap_or(q0));
    let grid = build_grid::<f64>(a.n, p, q)?;
    let r = resolution_of_unity(a.size, &grid);
    if !r.exact {
        eprintln!(
            "warning: grid (P = {p}, Q = {q}) is below the exactness threshold for n = {}, N = {}; residual {:e}",
            a.n, a.size, r.max_abs_deviation
        );
    }
    let csv = format!(
        "n,N,polar_order,phase_order,dim,prefactor,max_abs_deviation,exact\n{},{},{p},{q},{},{:e},{:e},{}\n",
        a.n, a.size, r.dim, r.prefactor, r.max_abs_deviation, r.exact
    );
    let json = json!({
        "n": a.n,
        "N": a.size,
        "polar_order": p,
        "phase_order": q,
        "max_abs_deviation": r.max_abs_deviation,
        "max_off_diagonal": r.max_off_diagonal,
        "dim": r.dim,
        "prefactor": r.prefactor,
        "exact": r.exact,
    });
    let outcome = if r.max_abs_deviation <= a.tol {
        Outcome::Pass
    } else {
        Outcome::Fail
    };
    Ok((
        Report {
            name: "unity-check",
            json,
            csv: Some(csv),
        },
        outcome,
    ))
}

fn generators(n: usize) -> Result<Report> {
    let set = lambda_set::<f64>(n)?;
    let mut csv = String::from("index,label,row,col,re,im\n");
    let mut entries = Vec::with_capacity(set.len());
    for (k, (label, m)) in set.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                let z = m[(r, c)];
                writeln!(csv, "{},{label},{r},{c},{:e},{:e}", k + 1, z.re, z.im)?;
            }
        }
        entries.push(json!({
            "index": k + 1,
            "label": label.to_string(),
            "matrix": matrix_to_value(m),
        }));
    }
    Ok(Report {
        name: "generators",
        json: Value::Array(entries),
        csv: Some(csv),
    })
}

fn verify(a: &VerifyArgs) -> Result<(Report, Outcome)> {
    let tolerances = Tolerances {
        reconstruction: a.tol_reconstruction,
        unity: a.tol_unity,
        algebraic: a.tol_algebraic,
        finite_difference: a.tol_fd,
    };
    for (name, t) in [
        ("tol-reconstruction", tolerances.reconstruction),
        ("tol-unity", tolerances.unity),
        ("tol-algebraic", tolerances.algebraic),
        ("tol-fd", tolerances.finite_difference),
    ] {
        if t <= 0.0 || t.is_nan() {
            bail!("--{name} must be positive, got {t}");
        }
    }
    if a.n < 2 {
        bail!("--n must be at least 2");
    }
    let cfg = VerifyConfig {
        n: a.n,
        size: a.size,
        seed: a.seed,
        samples: a.samples,
        tolerances,
    };
    let report = run_suite(&cfg)?;
    let mut csv = String::from("name,deviation,tolerance,passed\n");
    for c in &report.checks {
        writeln!(
            csv,
            "{},{:e},{:e},{}",
            c.name, c.deviation, c.tolerance, c.passed
        )?;
    }
    for c in report.failures() {
        eprintln!("FAIL {}: {:e} > {:e}", c.name, c.deviation, c.tolerance);
    }
    let outcome = if report.passed {
        Outcome::Pass
    } else {
        Outcome::Fail
    };
    Ok((
        Report {
            name: "verify",
            json: serde_json::to_value(&report)?,
            csv: Some(csv),
        },
        outcome,
    ))
}
