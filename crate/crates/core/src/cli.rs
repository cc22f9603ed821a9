//! Command-line front end: parse family specs, build states, run statistics
//! and the verification suites, and export JSON/CSV tables.
//!
//! Exit codes: 0 success; 1 when a `verify` run has a failing (non-skipped)
//! report; 2 usage errors (unknown flags, malformed family specs); 3 for
//! numeric failures, which are emitted as structured JSON error records on
//! stderr.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::duality::{dual_generalized_gk_state, generalized_gk_state, GKLabel};
use crate::error::{Error, Result};
use crate::families::{Dimension, FamilySpec};
use crate::fock::{build_state, overlap, photon_statistics, FockExpansion, StateJson, TruncationPolicy};
use crate::opspace::{
    conjugate_ladder, deformed_ladder, diagonal_transform, displacement, exp_shift, hamiltonian,
    jaynes_cummings_h, ladder_matrices, DiagonalKind, DisplacementKind, HamiltonianVariant,
    ShiftKind, TruncatedOperator,
};
use crate::verify::{
    spectrum_diagnostics, verify_action_identity, verify_algebra, verify_duality,
    verify_eigenstate, verify_moments, verify_published_f, verify_temporal_stability, VerifyReport,
    WeightFunction,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "nlcs",
    version,
    about = "Generalized coherent states on truncated Fock spaces",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a coherent state |z,alpha> and emit it
    State {
        /// Family spec, e.g. poschl_teller(nu=3) or dual(bg(kappa=1.5))
        #[arg(long)]
        family: String,
        /// Label z as re[,im]
        #[arg(long)]
        z: String,
        /// Stabilization parameter (phases e^{-i alpha e_n})
        #[arg(long)]
        alpha: Option<f64>,
        /// Tail-mass tolerance of the truncation
        #[arg(long, default_value_t = 1e-12)]
        trunc_tol: f64,
        /// Hard cap on the Fock index
        #[arg(long, default_value_t = 512)]
        n_max: usize,
    },
    /// Photon statistics of a state: P(n), mean, variance, Mandel Q
    Stats {
        #[arg(long)]
        family: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 1e-15)]
        trunc_tol: f64,
        #[arg(long, default_value_t = 512)]
        n_max: usize,
    },
    /// Overlap <s1|s2> between two states of one family (or two)
    Overlap {
        #[arg(long)]
        family: String,
        /// Family of the second state (defaults to --family)
        #[arg(long)]
        family2: Option<String>,
        #[arg(long)]
        z: String,
        #[arg(long)]
        z2: String,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        alpha2: Option<f64>,
        #[arg(long, default_value_t = 1e-15)]
        trunc_tol: f64,
    },
    /// Emit an operator matrix on the truncated space
    Op {
        /// ladder|deformed|b|hamiltonian|displacement|t|s|jc|shift
        #[arg(long)]
        kind: String,
        #[arg(long)]
        family: String,
        /// Truncation index N (dimension N+1)
        #[arg(long, default_value_t = 16)]
        dim: usize,
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        alpha: Option<f64>,
        /// Hamiltonian variant: normal|manko
        #[arg(long, default_value = "normal")]
        variant: String,
        /// For displacement: build D-tilde instead of D
        #[arg(long, default_value_t = false)]
        tilde: bool,
        /// For t: build the inverse transform
        #[arg(long, default_value_t = false)]
        inverse: bool,
        /// Jaynes-Cummings coupling constant
        #[arg(long, default_value_t = 1.0)]
        g: f64,
        /// For shift: raising amplitude lambda of e^{lambda a^dag}
        #[arg(long)]
        raise: Option<f64>,
        /// For shift: lowering amplitude mu of e^{mu a}
        #[arg(long)]
        lower: Option<f64>,
    },
    /// Run a verification suite; exits 1 if any non-skipped report fails
    Verify {
        /// moments|algebra|eigenstate|action|temporal|duality|spectrum|all
        #[arg(long)]
        suite: String,
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 50)]
        n_max: usize,
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long = "J")]
        j: Option<f64>,
        /// Truncation index for the operator-algebra checks
        #[arg(long, default_value_t = 64)]
        dim: usize,
    },
    /// Tabulate rho, mu, e_n, eps_n and f for a family and its dual
    Dual {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Build the time-evolved state |J,theta,t> (generalized GK state)
    Evolve {
        #[arg(long)]
        family: String,
        #[arg(long = "J")]
        j: f64,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        /// Build the dual of the generalized GK state instead
        #[arg(long, default_value_t = false)]
        dual: bool,
        #[arg(long, default_value_t = 1e-12)]
        trunc_tol: f64,
        #[arg(long, default_value_t = 512)]
        n_max: usize,
    },
    /// List the registered families and their parameter domains
    Catalog,
}

/// Entry point used by the `nlcs` binary. Returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap uses exit code 2 for usage errors and 0 for --help/--version
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(Error::Parse(message)) => {
            eprintln!("error: {message}");
            2
        }
        Err(e) => {
            let kind = match &e {
                Error::Parse(_) => unreachable!(),
                Error::Domain(_) => "domain",
                Error::Divergence(_) => "divergence",
                Error::Truncation { .. } => "truncation",
                Error::Singularity { .. } => "singularity",
                Error::Degenerate(_) => "degenerate",
                Error::DimensionMismatch(_) => "dimension_mismatch",
            };
            let record = serde_json::json!({ "error": { "kind": kind, "message": e.to_string() } });
            eprintln!("{record}");
            3
        }
    }
}

fn parse_z(text: &str) -> Result<Complex64> {
    let mut parts = text.split(',');
    let re = parts
        .next()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .ok_or_else(|| Error::parse(format!("invalid complex label `{text}`, expected re[,im]")))?;
    let im = match parts.next() {
        None => 0.0,
        Some(s) => s
            .trim()
            .parse::<f64>()
            .map_err(|_| Error::parse(format!("invalid imaginary part in `{text}`")))?,
    };
    if parts.next().is_some() {
        return Err(Error::parse(format!("too many components in `{text}`")));
    }
    Ok(Complex64::new(re, im))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    let mut content = content.to_string();
    if !content.ends_with('\n') {
        content.push('\n');
    }
    match out {
        None => {
            print!("{content}");
            std::io::stdout().flush().ok();
            Ok(())
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display()))),
    }
}

fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::State { family, z, alpha, trunc_tol, n_max } => {
            let family = FamilySpec::parse(family)?;
            let z = parse_z(z)?;
            let trunc = TruncationPolicy { tolerance: *trunc_tol, max_n: *n_max };
            let state = build_state(&family, z, *alpha, &trunc)?;
            emit(&cli.out, &render_state(&state, None, cli.format)?)?;
            Ok(0)
        }
        Command::Stats { family, z, alpha, trunc_tol, n_max } => {
            let family = FamilySpec::parse(family)?;
            let z = parse_z(z)?;
            let trunc = TruncationPolicy { tolerance: *trunc_tol, max_n: *n_max };
            let state = build_state(&family, z, *alpha, &trunc)?;
            let stats = photon_statistics(&state);
            let text = match cli.format {
                Format::Json => {
                    let value = serde_json::json!({
                        "family": family.to_string(),
                        "z": [z.re, z.im],
                        "alpha": alpha,
                        "mean_n": stats.mean_n,
                        "variance_n": stats.variance_n,
                        "mandel_q": stats.mandel_q,
                        "tail_mass": state.tail_mass(),
                        "distribution": stats.distribution,
                    });
                    serde_json::to_string_pretty(&value).expect("stats serialize")
                }
                Format::Csv => {
                    let mut text = String::from("n,p\n");
                    for (n, p) in stats.distribution.iter().enumerate() {
                        text.push_str(&format!("{n},{p:.17e}\n"));
                    }
                    text
                }
                Format::Table => {
                    let mut text = format!(
                        "family {family}\nmean_n {:.12e}\nvariance_n {:.12e}\nmandel_q {:.12e}\n\n{:>4} {:>24}\n",
                        stats.mean_n, stats.variance_n, stats.mandel_q, "n", "P(n)"
                    );
                    for (n, p) in stats.distribution.iter().enumerate() {
                        text.push_str(&format!("{n:>4} {p:>24.16e}\n"));
                    }
                    text
                }
            };
            emit(&cli.out, &text)?;
            Ok(0)
        }
        Command::Overlap { family, family2, z, z2, alpha, alpha2, trunc_tol } => {
            let f1 = FamilySpec::parse(family)?;
            let f2 = match family2 {
                Some(t) => FamilySpec::parse(t)?,
                None => f1.clone(),
            };
            if f1.dimension() != f2.dimension() {
                return Err(Error::DimensionMismatch(format!(
                    "overlap requires a common Fock basis: {f1} vs {f2}"
                )));
            }
            let trunc = TruncationPolicy { tolerance: *trunc_tol, max_n: 512 };
            let s1 = build_state(&f1, parse_z(z)?, *alpha, &trunc)?;
            let s2 = build_state(&f2, parse_z(z2)?, *alpha2, &trunc)?;
            let value = overlap(&s1, &s2);
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "re": value.re, "im": value.im, "modulus": value.norm(),
                }))
                .expect("overlap serialize"),
                Format::Csv => format!("re,im,modulus\n{:.17e},{:.17e},{:.17e}\n", value.re, value.im, value.norm()),
                Format::Table => format!(
                    "overlap re {:.16e}\noverlap im {:.16e}\nmodulus    {:.16e}\n",
                    value.re, value.im, value.norm()
                ),
            };
            emit(&cli.out, &text)?;
            Ok(0)
        }
        Command::Op { kind, family, dim, z, alpha, variant, tilde, inverse, g, raise, lower } => {
            let family = FamilySpec::parse(family)?;
            let op = build_operator(
                kind, &family, *dim, z.as_deref(), *alpha, variant, *tilde, *inverse, *g, *raise, *lower,
            )?;
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&op.to_json_value()).expect("op serialize"),
                Format::Csv => {
                    let mut text = String::from("row,col,re,im\n");
                    for i in 0..op.dim() {
                        for j in 0..op.dim() {
                            let e = op.entries[(i, j)];
                            if e.norm() > 0.0 {
                                text.push_str(&format!("{i},{j},{:.17e},{:.17e}\n", e.re, e.im));
                            }
                        }
                    }
                    text
                }
                Format::Table => op.to_column_text(),
            };
            emit(&cli.out, &text)?;
            Ok(0)
        }
        Command::Verify { suite, family, n_max, z, alpha, t, j, dim } => {
            let family = FamilySpec::parse(family)?;
            let z = match z {
                Some(text) => Some(parse_z(text)?),
                None => None,
            };
            let reports = run_suites(suite, &family, *n_max, z, *alpha, *t, *j, *dim)?;
            let text = render_reports(&reports, cli.format);
            emit(&cli.out, &text)?;
            Ok(verify_exit_code(&reports))
        }
        Command::Dual { family, n_max } => {
            let family = FamilySpec::parse(family)?;
            let text = render_dual_table(&family, *n_max, cli.format)?;
            emit(&cli.out, &text)?;
            Ok(0)
        }
        Command::Evolve { family, j, theta, t, omega, dual, trunc_tol, n_max } => {
            let family = FamilySpec::parse(family)?;
            let label = GKLabel { j: *j, theta: *theta, t: *t, omega: *omega };
            let trunc = TruncationPolicy { tolerance: *trunc_tol, max_n: *n_max };
            let state = if *dual {
                dual_generalized_gk_state(&family, &label, &trunc)?
            } else {
                generalized_gk_state(&family, &label, &trunc)?
            };
            emit(&cli.out, &render_state(&state, Some(&label), cli.format)?)?;
            Ok(0)
        }
        Command::Catalog => {
            emit(&cli.out, &render_catalog(cli.format))?;
            Ok(0)
        }
    }
}

fn render_state(state: &FockExpansion, label: Option<&GKLabel>, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut value: StateJson = state.to_json_value()?;
            if let Some(l) = label {
                value.j = Some(l.j);
                value.theta = Some(l.theta);
                value.t = Some(l.t);
                value.omega = Some(l.omega);
            }
            serde_json::to_string_pretty(&value).map_err(|e| Error::parse(e.to_string()))
        }
        Format::Csv => {
            let mut text = String::from("n,re,im\n");
            for (n, c) in state.coefficients().iter().enumerate() {
                text.push_str(&format!("{n},{:.17e},{:.17e}\n", c.re, c.im));
            }
            Ok(text)
        }
        Format::Table => {
            let mut text = format!(
                "family {}\nz {:.16e} {:+.16e}i\nalpha {:?}\ntail_mass {:.3e}\n\n{:>4} {:>24} {:>24} {:>24}\n",
                state.family(),
                state.label_z().re,
                state.label_z().im,
                state.stabilization_alpha(),
                state.tail_mass(),
                "n",
                "re",
                "im",
                "P(n)"
            );
            for (n, c) in state.coefficients().iter().enumerate() {
                text.push_str(&format!(
                    "{n:>4} {:>24.16e} {:>24.16e} {:>24.16e}\n",
                    c.re,
                    c.im,
                    c.norm_sqr()
                ));
            }
            Ok(text)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn build_operator(
    kind: &str,
    family: &FamilySpec,
    dim: usize,
    z: Option<&str>,
    alpha: Option<f64>,
    variant: &str,
    tilde: bool,
    inverse: bool,
    g: f64,
    raise: Option<f64>,
    lower: Option<f64>,
) -> Result<TruncatedOperator> {
    match kind {
        "ladder" => {
            let (a, _, _) = ladder_matrices(dim)?;
            Ok(a)
        }
        "deformed" => Ok(deformed_ladder(family, dim, alpha)?.0),
        "b" => Ok(conjugate_ladder(family, dim, alpha)?.0),
        "hamiltonian" => {
            let variant = match variant {
                "normal" => HamiltonianVariant::NormalOrdered,
                "manko" => HamiltonianVariant::Manko,
                other => return Err(Error::parse(format!("unknown hamiltonian variant `{other}`"))),
            };
            hamiltonian(family, dim, variant)
        }
        "displacement" => {
            let z = z.ok_or_else(|| Error::parse("displacement requires --z"))?;
            let kind = if tilde { DisplacementKind::DTilde } else { DisplacementKind::D };
            displacement(family, parse_z(z)?, dim, kind, alpha)
        }
        "t" => {
            let kind = if inverse { DiagonalKind::TInverse } else { DiagonalKind::T };
            diagonal_transform(family, dim, kind)
        }
        "s" => {
            let alpha = alpha.ok_or_else(|| Error::parse("s requires --alpha"))?;
            diagonal_transform(family, dim, DiagonalKind::S { alpha })
        }
        "jc" => jaynes_cummings_h(family, g, dim),
        "shift" => match (raise, lower) {
            (Some(lambda), None) => exp_shift(dim, ShiftKind::Raise { lambda }),
            (None, Some(mu)) => exp_shift(dim, ShiftKind::Lower { mu }),
            _ => Err(Error::parse("shift requires exactly one of --raise or --lower")),
        },
        other => Err(Error::parse(format!(
            "unknown operator kind `{other}` (ladder|deformed|b|hamiltonian|displacement|t|s|jc|shift)"
        ))),
    }
}

/// The registered closed-form weight for a family's moment problem, per
/// the physical examples: the PT and IW weights verify the dual moments.
fn moment_setup(family: &FamilySpec) -> Result<(WeightFunction, FamilySpec)> {
    match family {
        FamilySpec::Canonical => Ok((WeightFunction::Canonical, FamilySpec::Canonical)),
        FamilySpec::PoschlTeller { nu } => {
            Ok((WeightFunction::PoschlTeller { nu: *nu }, family.dual()))
        }
        FamilySpec::InfiniteWell => Ok((WeightFunction::InfiniteWell, family.dual())),
        FamilySpec::DualOf(inner) => match &**inner {
            FamilySpec::PoschlTeller { nu } => {
                Ok((WeightFunction::PoschlTeller { nu: *nu }, family.clone()))
            }
            FamilySpec::InfiniteWell => Ok((WeightFunction::InfiniteWell, family.clone())),
            _ => Err(Error::domain(format!(
                "no registered closed-form weight for {family}; moments are available for canonical, poschl_teller, infinite_well and their duals"
            ))),
        },
        _ => Err(Error::domain(format!(
            "no registered closed-form weight for {family}; moments are available for canonical, poschl_teller, infinite_well and their duals"
        ))),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_suites(
    suite: &str,
    family: &FamilySpec,
    n_max: usize,
    z: Option<Complex64>,
    alpha: Option<f64>,
    t: Option<f64>,
    j: Option<f64>,
    dim: usize,
) -> Result<Vec<VerifyReport>> {
    let mut reports = Vec::new();
    let all = suite == "all";
    let mut matched = all;

    let default_z = || -> Complex64 {
        let radius = family.convergence_radius().value;
        let r = if radius.is_finite() { 0.3 * radius } else { 0.3 };
        z.unwrap_or(Complex64::new(r, 0.0))
    };

    if suite == "moments" || all {
        matched = true;
        match moment_setup(family) {
            Ok((weight, target_family)) => {
                let depth = if suite == "moments" { n_max } else { n_max.min(10) };
                reports.extend(verify_moments(&weight, &target_family, depth, 1e-8)?);
            }
            Err(e) => {
                if all {
                    reports.push(skipped_report("moments", e.to_string()));
                } else {
                    return Err(e);
                }
            }
        }
    }
    if suite == "algebra" || all {
        matched = true;
        reports.extend(verify_algebra(family, dim)?);
    }
    if suite == "eigenstate" || all {
        matched = true;
        if matches!(family.dimension(), Dimension::Finite(_)) {
            reports.push(skipped_report(
                "eigenstate",
                format!("{family} is finite-dimensional: no ladder eigenstates"),
            ));
        } else {
            reports.push(verify_eigenstate(family, default_z(), alpha, 256)?);
        }
    }
    if suite == "action" || all {
        matched = true;
        let radius = family.convergence_radius().value;
        let default_j = 0.25 * if radius.is_finite() { radius * radius } else { 16.0 };
        let j_val = j.unwrap_or(default_j.min(4.0));
        reports.push(verify_action_identity(family, j_val, 1e-8)?);
    }
    if suite == "temporal" || all {
        matched = true;
        reports.push(verify_temporal_stability(
            family,
            default_z(),
            alpha.unwrap_or(0.5),
            t.unwrap_or(0.7),
        )?);
    }
    if suite == "duality" || all {
        matched = true;
        reports.extend(verify_duality(family, n_max)?);
    }
    if suite == "spectrum" || all {
        matched = true;
        reports.extend(spectrum_diagnostics(family, n_max)?);
        reports.extend(verify_published_f(family, n_max)?);
    }
    if !matched {
        return Err(Error::parse(format!(
            "unknown suite `{suite}` (moments|algebra|eigenstate|action|temporal|duality|spectrum|all)"
        )));
    }
    Ok(reports)
}

/// Exit-code contract of `verify`: 1 if any non-skipped report fails.
fn verify_exit_code(reports: &[VerifyReport]) -> i32 {
    if reports.iter().any(|r| !r.skipped && !r.passed) {
        1
    } else {
        0
    }
}

fn skipped_report(name: &str, notes: String) -> VerifyReport {
    VerifyReport {
        check_name: name.to_string(),
        target: 0.0,
        computed: 0.0,
        abs_residual: 0.0,
        rel_residual: 0.0,
        tolerance: 0.0,
        passed: true,
        skipped: true,
        notes,
    }
}

fn render_reports(reports: &[VerifyReport], format: Format) -> String {
    match format {
        Format::Json => {
            let mut text = String::new();
            for r in reports {
                text.push_str(&r.to_json_line());
                text.push('\n');
            }
            text
        }
        Format::Csv => {
            let mut text = String::from("check,target,computed,abs_residual,rel_residual,tolerance,passed,skipped,notes\n");
            for r in reports {
                text.push_str(&format!(
                    "{},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{},{},\"{}\"\n",
                    r.check_name,
                    r.target,
                    r.computed,
                    r.abs_residual,
                    r.rel_residual,
                    r.tolerance,
                    r.passed,
                    r.skipped,
                    r.notes
                ));
            }
            text
        }
        Format::Table => {
            let mut text = VerifyReport::table_header();
            text.push('\n');
            for r in reports {
                text.push_str(&r.table_row());
                text.push('\n');
            }
            let failed = reports.iter().filter(|r| !r.skipped && !r.passed).count();
            let skipped = reports.iter().filter(|r| r.skipped).count();
            text.push_str(&format!(
                "\n{} checks, {} failed, {} skipped\n",
                reports.len(),
                failed,
                skipped
            ));
            text
        }
    }
}

fn render_dual_table(family: &FamilySpec, n_max: usize, format: Format) -> Result<String> {
    let dual = family.dual();
    let top = family.dimension().min_with(n_max + 1) - 1;
    let mut rows = Vec::new();
    for n in 0..=top {
        let rho = family.weight(n)?;
        let mu = dual.weight(n)?;
        let e = family.spectrum_value(n)?;
        let eps = dual.spectrum_value(n)?;
        let f = if n >= 1 { family.nonlinearity_value(n)? } else { f64::NAN };
        rows.push((n, rho, mu, e, eps, f));
    }
    match format {
        Format::Json => {
            let values: Vec<serde_json::Value> = rows
                .iter()
                .map(|(n, rho, mu, e, eps, f)| {
                    serde_json::json!({
                        "n": n, "rho": rho, "mu": mu, "e": e, "eps": eps,
                        "f": if n >= &1 { Some(f) } else { None },
                    })
                })
                .collect();
            let value = serde_json::json!({
                "family": family.to_string(),
                "dual": dual.to_string(),
                "rows": values,
            });
            serde_json::to_string_pretty(&value).map_err(|e| Error::parse(e.to_string()))
        }
        Format::Csv => {
            let mut text = String::from("n,rho,mu,e,eps,f\n");
            for (n, rho, mu, e, eps, f) in &rows {
                text.push_str(&format!(
                    "{n},{rho:.17e},{mu:.17e},{e:.17e},{eps:.17e},{f:.17e}\n"
                ));
            }
            Ok(text)
        }
        Format::Table => {
            let mut text = format!(
                "family {family}\ndual   {dual}\n\n{:>4} {:>22} {:>22} {:>22} {:>22} {:>22}\n",
                "n", "rho(n)", "mu(n)", "e_n", "eps_n", "f(n)"
            );
            for (n, rho, mu, e, eps, f) in &rows {
                text.push_str(&format!(
                    "{n:>4} {rho:>22.14e} {mu:>22.14e} {e:>22.14e} {eps:>22.14e} {f:>22.14e}\n"
                ));
            }
            Ok(text)
        }
    }
}

fn render_catalog(format: Format) -> String {
    // (name, parameters, radius, dimension)
    let entries: &[(&str, &str, &str, &str)] = &[
        ("canonical", "none", "inf", "inf"),
        ("ml(alpha,beta)", "alpha > 0, beta > 0", "inf", "inf"),
        ("hg(alphas,betas)", "positive lists, q-1 <= p <= q+1", "1 if p = q+1 else inf", "inf"),
        ("tc1(p)", "p > 0", "inf", "inf"),
        ("tc2(lambda,beta)", "beta > 0", "inf", "inf"),
        ("ps(q)", "0 < q <= 1", "inf", "inf"),
        ("bg(kappa)", "kappa in {1, 1.5, 2, ...}", "inf", "inf"),
        ("gp(kappa)", "kappa in {1, 1.5, 2, ...}", "1", "inf"),
        ("ll(m,alpha)", "integer m >= 0, alpha > -1", "inf", "inf"),
        ("gk(en=0:e1:...)", "0 = e_0, e_n > 0", "inf (finite table)", "table length"),
        ("poschl_teller(nu)", "nu > 2", "inf", "inf"),
        ("infinite_well", "none", "inf", "inf"),
        ("hydrogen", "none", "1", "inf"),
        ("morse(m)", "integer M >= 1", "inf (finite)", "M+1"),
        ("dual(<family>)", "inner family valid", "lim n^2/e_n", "inner dimension"),
    ];
    match format {
        Format::Json => {
            let values: Vec<serde_json::Value> = entries
                .iter()
                .map(|(name, params, radius, dim)| {
                    serde_json::json!({
                        "name": name, "parameters": params, "radius": radius, "dimension": dim,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&values).expect("catalog serialize")
        }
        Format::Csv => {
            let mut text = String::from("name,parameters,radius,dimension\n");
            for (name, params, radius, dim) in entries {
                text.push_str(&format!("{name},\"{params}\",{radius},{dim}\n"));
            }
            text
        }
        Format::Table => {
            let mut text = format!(
                "{:<22} {:<36} {:<22} {}\n",
                "family", "parameters", "radius", "dimension"
            );
            for (name, params, radius, dim) in entries {
                text.push_str(&format!("{name:<22} {params:<36} {radius:<22} {dim}\n"));
            }
            text
        }
    }
}
