//! Batch front door: lattice sector tables, the verification suite, and
//! symmetric-function classification.
//!
//! Exit codes: 0 all requested checks pass, 1 verification failure, 2 input
//! error (bad flags, unparseable files, domain errors).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use latnet_core::config::{InnerSpec, RunConfig};
use latnet_core::exact::Rat;
use latnet_core::inner::holder_check;
use latnet_core::lattice::Lattice;
use latnet_core::roots::roots;
use latnet_core::verify;

const EXIT_CHECK_FAILURE: u8 = 1;
const EXIT_INPUT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "latnet",
    version,
    about = "Even-lattice sector data and boundary-model verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print gram data, discriminant sectors with spins, and the root count.
    Lattice {
        /// ADE label: An (n >= 1), Dn (n >= 4), E6, E7, E8.
        #[arg(long, value_name = "LABEL", conflicts_with = "gram_file")]
        dynkin: Option<String>,
        /// File with an integer gram matrix, one whitespace-separated row
        /// per line; `#` starts a comment.
        #[arg(long, value_name = "PATH")]
        gram_file: Option<PathBuf>,
        /// Directory to receive `sectors.csv`.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Run verification checks and print the report.
    Verify {
        /// Flat `key = value` config file (n, x, k, seed, tolerance.<id>).
        #[arg(long, value_name = "PATH")]
        config: Option<PathBuf>,
        /// Override the rng seed.
        #[arg(long, value_name = "N")]
        seed: Option<u64>,
        /// Override one tolerance, as `check=value`; repeatable.
        #[arg(long = "tolerance", value_name = "CHECK=VAL")]
        tolerance: Vec<String>,
        /// Run only the named checks; repeatable. Defaults to every check.
        #[arg(long = "check", value_name = "ID")]
        check: Vec<String>,
        /// Directory to receive `report.txt` and `report.csv`.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Classify a symmetric scalar function: symmetry, modulus, boundary
    /// regularity.
    Inner {
        /// Spec file: `zeros = [a+bi, ...]`, `t = <real>`, `sign = +1|-1`.
        spec: PathBuf,
        /// Directory to receive `samples.csv`.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
        /// Number of sampled values written to the CSV.
        #[arg(long, default_value_t = 129)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Lattice {
            dynkin,
            gram_file,
            out,
        } => cmd_lattice(dynkin.as_deref(), gram_file.as_deref(), out.as_deref()),
        Command::Verify {
            config,
            seed,
            tolerance,
            check,
            out,
        } => cmd_verify(config.as_deref(), seed, &tolerance, &check, out.as_deref()),
        Command::Inner { spec, out, samples } => cmd_inner(&spec, out.as_deref(), samples),
    }
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT_ERROR)
}

// ---------------------------------------------------------------------------
// lattice

fn cmd_lattice(dynkin: Option<&str>, gram_file: Option<&Path>, out: Option<&Path>) -> ExitCode {
    let lattice = match (dynkin, gram_file) {
        (Some(label), None) => match Lattice::dynkin(label) {
            Ok(l) => l,
            Err(e) => return input_error(e),
        },
        (None, Some(path)) => {
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return input_error(format!("{}: {e}", path.display())),
            };
            let rows = match parse_gram_rows(&text) {
                Ok(r) => r,
                Err(e) => return input_error(format!("{}: {e}", path.display())),
            };
            match Lattice::from_i64_rows(&rows) {
                Ok(l) => l,
                Err(e) => return input_error(e),
            }
        }
        _ => return input_error("provide exactly one of --dynkin or --gram-file"),
    };

    let mut text = String::new();
    let rank = lattice.rank();
    text.push_str(&format!("rank: {rank}\n"));
    text.push_str("gram:\n");
    let entries: Vec<Vec<String>> = lattice
        .gram_i64()
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect())
        .collect();
    let width = entries
        .iter()
        .flatten()
        .map(String::len)
        .max()
        .unwrap_or(1);
    for row in &entries {
        text.push_str("  ");
        for (j, e) in row.iter().enumerate() {
            if j > 0 {
                text.push(' ');
            }
            text.push_str(&format!("{e:>width$}"));
        }
        text.push('\n');
    }
    text.push_str("even: yes\n");
    text.push_str(&format!("determinant: {}\n", lattice.det()));

    let disc = lattice.discriminant();
    text.push_str(&format!("mu-index: {}\n", disc.order()));
    let factors: Vec<String> = disc
        .cyclic_factors()
        .iter()
        .map(|d| d.to_string())
        .collect();
    if factors.is_empty() {
        text.push_str("discriminant group: trivial\n");
    } else {
        text.push_str(&format!("discriminant group: Z{}\n", factors.join(" x Z")));
    }

    let mut csv = String::from("class,order,spin_exponent,spin\n");
    let sector_cap = 256u64;
    let table_ok = u64::try_from(&disc.order()).map(|o| o <= sector_cap) == Ok(true);
    if table_ok {
        text.push_str("sectors (class | order | spin):\n");
        for class in disc.enumerate() {
            let label: Vec<String> = class.iter().map(|c| c.to_string()).collect();
            let label = label.join(",");
            let order = disc.sector_order(&class);
            let exponent = disc.spin_exponent(&class);
            let spin = format_spin(&exponent);
            text.push_str(&format!("  [{label}] | {order} | {spin}\n"));
            csv.push_str(&format!("\"{label}\",{order},{exponent},{spin}\n"));
        }
    } else {
        text.push_str(&format!(
            "sectors: table omitted (order exceeds {sector_cap})\n"
        ));
    }

    text.push_str(&format!("roots (norm 2): {}\n", roots(&lattice).len()));
    print!("{text}");

    if let Some(dir) = out {
        if let Err(e) = write_out(dir, &[("sectors.csv", &csv)]) {
            return input_error(e);
        }
    }
    ExitCode::SUCCESS
}

/// Spins of even-lattice sectors are 2d-th roots of unity; print the small
/// ones exactly and the rest as a rational angle.
fn format_spin(exponent: &Rat) -> String {
    let (n, d) = (exponent.numer(), exponent.denom());
    match (n.to_string().as_str(), d.to_string().as_str()) {
        ("0", _) => "1".to_string(),
        ("1", "1") => "-1".to_string(),
        ("1", "2") => "i".to_string(),
        ("3", "2") => "-i".to_string(),
        _ => format!("exp(i pi {exponent})"),
    }
}

fn parse_gram_rows(text: &str) -> Result<Vec<Vec<i64>>, String> {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for tok in line.split_whitespace() {
            match tok.parse::<i64>() {
                Ok(v) => row.push(v),
                Err(_) => return Err(format!("line {}: bad integer {tok:?}", idx + 1)),
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err("no matrix rows found".to_string());
    }
    let n = rows.len();
    if let Some(bad) = rows.iter().position(|r| r.len() != n) {
        return Err(format!(
            "row {} has {} entries, expected {n}",
            bad + 1,
            rows[bad].len()
        ));
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// verify

fn cmd_verify(
    config: Option<&Path>,
    seed: Option<u64>,
    tolerances: &[String],
    checks: &[String],
    out: Option<&Path>,
) -> ExitCode {
    let mut cfg = match config {
        Some(path) => {
            let text = match fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return input_error(format!("{}: {e}", path.display())),
            };
            match RunConfig::parse(&text) {
                Ok(c) => c,
                Err(e) => return input_error(format!("{}: {e}", path.display())),
            }
        }
        None => RunConfig::default(),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    for spec in tolerances {
        if let Err(e) = cfg.override_tolerance(spec) {
            return input_error(e);
        }
    }
    if let Err(e) = cfg.validate() {
        return input_error(e);
    }

    let report = if checks.is_empty() {
        verify::run_all(&cfg)
    } else {
        match verify::run_checks(checks, &cfg) {
            Ok(r) => r,
            Err(e) => return input_error(e),
        }
    };

    let text = report.render_text();
    print!("{text}");
    if let Some(dir) = out {
        let csv = report.render_csv();
        if let Err(e) = write_out(dir, &[("report.txt", &text), ("report.csv", &csv)]) {
            return input_error(e);
        }
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILURE)
    }
}

// ---------------------------------------------------------------------------
// inner

fn cmd_inner(spec_path: &Path, out: Option<&Path>, samples: usize) -> ExitCode {
    let text = match fs::read_to_string(spec_path) {
        Ok(t) => t,
        Err(e) => return input_error(format!("{}: {e}", spec_path.display())),
    };
    let spec = match InnerSpec::parse(&text) {
        Ok(s) => s,
        Err(e) => return input_error(format!("{}: {e}", spec_path.display())),
    };
    let phi = match spec.build() {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };

    // Symmetry phi(-p) = conj(phi(p)) and unit modulus, sampled away from the
    // origin; boundary regularity from the dyadic refinement test at p = 0.
    let mut symmetry = 0.0f64;
    let mut modulus = 0.0f64;
    for j in 1..=400 {
        let p = 0.05 * j as f64;
        for q in [p, 1.0 / p] {
            let v = phi.eval_real(q);
            symmetry = symmetry.max((phi.eval_real(-q) - v.conj()).norm());
            modulus = modulus.max((v.norm() - 1.0).abs());
        }
    }
    let holder = holder_check(|p: f64| phi.eval_real(p));

    let sym_pass = symmetry < 1e-10;
    let mod_pass = modulus < 1e-10;
    println!(
        "symmetry:            {}  (defect {symmetry:.3e})",
        verdict(sym_pass)
    );
    println!(
        "unit-modulus:        {}  (defect {modulus:.3e})",
        verdict(mod_pass)
    );
    println!(
        "boundary-regularity: {}  (integral estimate {:.6e})",
        verdict(holder.pass),
        holder.estimate
    );

    if let Some(dir) = out {
        let mut csv = String::from("p,re,im\n");
        let n = samples.max(2);
        for j in 0..n {
            // symmetric grid over [-8, 8]
            let p = -8.0 + 16.0 * j as f64 / (n - 1) as f64;
            let v = phi.eval_real(p);
            csv.push_str(&format!("{p:.6},{:.12e},{:.12e}\n", v.re, v.im));
        }
        if let Err(e) = write_out(dir, &[("samples.csv", &csv)]) {
            return input_error(e);
        }
    }

    if sym_pass && mod_pass && holder.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILURE)
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn write_out(dir: &Path, files: &[(&str, &str)]) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    for (name, content) in files {
        let path = dir.join(name);
        fs::write(&path, content).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}
