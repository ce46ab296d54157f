//! Command-line front end: build the configured systems, run verification
//! suites, and emit spectra and concurrence records.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails, 2 on
//! configuration or usage errors. Data goes to stdout, diagnostics to
//! stderr. JSON and CSV output is deterministic for a fixed configuration
//! (including the seed) up to the `wall_time_ms` field.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use susy_modular::entanglement::{
    concurrence_via_modular, concurrence_wootters, entanglement_of_formation, supermultiplet_state,
};
use susy_modular::models::{
    dirac_hamiltonian, interior_block_eigenvalues, jaynes_cummings, jc_susy_spectrum,
    verify_jc_mapping, verify_nonlinear_susy, JcVariant, Valley,
};
use susy_modular::modular::{modular_conjugation, verify_modular, ModularData};
use susy_modular::report::{format_float_17, RunConfig, VerificationReport};
use susy_modular::susy::{build_system, landau_spectrum, verify_superalgebra, Side};
use susy_modular::LinearOp;

const EXIT_SUITE_FAILURE: i32 = 1;
const EXIT_CONFIG_ERROR: i32 = 2;

#[derive(Parser)]
#[command(
    name = "susy-modular",
    version,
    about = "Supersymmetric Landau levels, modular operators, and concurrence: residual verification and closed-form spectra"
)]
struct Cli {
    #[command(flatten)]
    opts: CommonOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Set both truncation cutoffs at once
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// Mode-a truncation cutoff (overrides --nmax)
    #[arg(long, global = true)]
    na: Option<usize>,
    /// Mode-b truncation cutoff (overrides --nmax)
    #[arg(long, global = true)]
    nb: Option<usize>,
    /// Inverse-temperature parameter of the modular data
    #[arg(long, global = true, default_value_t = 1.0)]
    beta: f64,
    /// Oscillator quantum of the Jaynes-Cummings pair
    #[arg(long, global = true, default_value_t = 1.0)]
    omega: f64,
    /// Jaynes-Cummings coupling strength
    #[arg(long, global = true, default_value_t = 0.1)]
    g: f64,
    /// Dirac energy scale
    #[arg(long = "omega-d", global = true, default_value_t = 1.0)]
    omega_d: f64,
    /// Interior margin for projected identity checks
    #[arg(long, global = true, default_value_t = 2)]
    margin: usize,
    /// Base residual tolerance
    #[arg(long, global = true, default_value_t = 1e-10)]
    tolerance: f64,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Output encoding
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit its report
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Emit closed-form and numerically diagonalized spectra side by side
    Spectrum {
        #[arg(long, value_enum)]
        model: Model,
        /// Number of levels above the ground level
        #[arg(long, default_value_t = 8)]
        levels: usize,
    },
    /// Evaluate the concurrence of an entangled doublet state
    Concurrence {
        /// Level index of the doublet
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long = "alpha-re", default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
        alpha_re: f64,
        #[arg(long = "alpha-im", default_value_t = 0.0)]
        alpha_im: f64,
        #[arg(long = "beta-re", default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
        beta_re: f64,
        #[arg(long = "beta-im", default_value_t = 0.0)]
        beta_im: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Superalgebra,
    Modular,
    NonlinearSusy,
    JcMapping,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    LandauA,
    LandauB,
    Dirac,
    Jc,
    Ajc,
}

fn main() {
    let cli = Cli::parse();
    let config = RunConfig {
        na_cut: cli.opts.na.or(cli.opts.nmax).unwrap_or(16),
        nb_cut: cli.opts.nb.or(cli.opts.nmax).unwrap_or(16),
        beta: cli.opts.beta,
        omega: cli.opts.omega,
        g: cli.opts.g,
        omega_d: cli.opts.omega_d,
        margin: cli.opts.margin,
        tolerance: cli.opts.tolerance,
        seed: cli.opts.seed,
    };
    if let Err(err) = config.validate() {
        eprintln!("configuration error: {err}");
        std::process::exit(EXIT_CONFIG_ERROR);
    }
    let code = match cli.command {
        Command::Verify { suite } => cmd_verify(&config, suite, cli.opts.format),
        Command::Spectrum { model, levels } => {
            cmd_spectrum(&config, model, levels, cli.opts.format)
        }
        Command::Concurrence {
            k,
            alpha_re,
            alpha_im,
            beta_re,
            beta_im,
        } => cmd_concurrence(
            &config,
            k,
            Complex64::new(alpha_re, alpha_im),
            Complex64::new(beta_re, beta_im),
            cli.opts.format,
        ),
    };
    std::process::exit(code);
}

fn config_error(err: impl std::fmt::Display) -> i32 {
    eprintln!("configuration error: {err}");
    EXIT_CONFIG_ERROR
}

/// Write the aggregated output in one shot. A consumer that closes the
/// pipe early (e.g. `| head`) ends the program quietly.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let result = out.write_all(text.as_bytes()).and_then(|_| out.flush());
    if let Err(err) = result {
        if err.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error writing output: {err}");
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------

fn run_suites(config: &RunConfig, suite: Suite) -> susy_modular::Result<Vec<VerificationReport>> {
    let spec = config.spec()?;
    let mut reports = Vec::new();
    let wants = |s: Suite| suite == s || suite == Suite::All;
    if wants(Suite::Superalgebra) || wants(Suite::Modular) {
        let sys_a = build_system(spec, Side::A);
        let sys_b = build_system(spec, Side::B);
        if wants(Suite::Superalgebra) {
            reports.push(verify_superalgebra(&sys_a, &sys_b, config)?);
        }
        if wants(Suite::Modular) {
            let data = ModularData::new(spec, config.beta)?;
            reports.push(verify_modular(&data, &sys_a, &sys_b, config)?);
        }
    }
    if wants(Suite::NonlinearSusy) {
        reports.push(verify_nonlinear_susy(spec, config)?);
    }
    if wants(Suite::JcMapping) {
        reports.push(verify_jc_mapping(spec, config)?);
    }
    Ok(reports)
}

fn cmd_verify(config: &RunConfig, suite: Suite, format: Format) -> i32 {
    let reports = match run_suites(config, suite) {
        Ok(reports) => reports,
        Err(err) => return config_error(err),
    };
    let mut output = String::new();
    match format {
        Format::Json => {
            if reports.len() == 1 {
                output.push_str(&reports[0].to_json_string());
            } else {
                let joined: Vec<String> = reports.iter().map(|r| r.to_json_string()).collect();
                output.push('[');
                output.push_str(&joined.join(","));
                output.push(']');
            }
            output.push('\n');
        }
        Format::Csv => {
            // one header, then every suite's rows
            output.push_str("suite,check_id,paper_anchor,residual,tolerance,pass\n");
            for report in &reports {
                let body = report.to_csv_string();
                for line in body.lines().skip(1) {
                    output.push_str(line);
                    output.push('\n');
                }
            }
        }
        Format::Table => {
            for report in &reports {
                output.push_str(&report.to_table_string());
                output.push('\n');
            }
        }
    }
    emit(&output);
    if reports.iter().all(|r| r.overall_pass) {
        0
    } else {
        for report in &reports {
            for entry in report.failing() {
                eprintln!(
                    "suite {}: check {} failed (residual {:.3e} > tolerance {:.3e})",
                    report.suite, entry.check_id, entry.residual, entry.tolerance
                );
            }
        }
        EXIT_SUITE_FAILURE
    }
}

// ---------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------

struct SpectrumRow {
    label: String,
    closed_form: f64,
    numeric: f64,
    degeneracy: Option<String>,
}

/// Eigenvalues of the Hamiltonian block with the spectator mode frozen at
/// occupation 0 and the active occupation restricted to the interior.
fn block_eigenvalues(
    config: &RunConfig,
    hamiltonian: &LinearOp,
    active: Side,
) -> susy_modular::Result<Vec<f64>> {
    interior_block_eigenvalues(hamiltonian, active, 0, config.margin)
}

fn nearest(computed: &[f64], target: f64) -> f64 {
    computed
        .iter()
        .copied()
        .min_by(|a, b| (a - target).abs().partial_cmp(&(b - target).abs()).unwrap())
        .unwrap_or(f64::NAN)
}

fn cmd_spectrum(config: &RunConfig, model: Model, levels: usize, format: Format) -> i32 {
    if levels == 0 {
        return config_error("--levels must be at least 1");
    }
    let spec = match config.spec() {
        Ok(s) => s,
        Err(e) => return config_error(e),
    };
    let interior_top = spec.min_cut() - config.margin - 1;
    if levels > interior_top {
        return config_error(format!(
            "--levels {levels} exceeds the interior range {interior_top} for cutoffs ({}, {}) at margin {}",
            spec.na_cut(),
            spec.nb_cut(),
            config.margin
        ));
    }

    let rows = match build_spectrum_rows(config, model, levels) {
        Ok(rows) => rows,
        Err(e) => return config_error(e),
    };
    let model_name = match model {
        Model::LandauA => "landau-a",
        Model::LandauB => "landau-b",
        Model::Dirac => "dirac",
        Model::Jc => "jc",
        Model::Ajc => "ajc",
    };
    emit_spectrum(model_name, config, &rows, format);
    0
}

fn build_spectrum_rows(
    config: &RunConfig,
    model: Model,
    levels: usize,
) -> susy_modular::Result<Vec<SpectrumRow>> {
    let spec = config.spec()?;
    let mut rows = Vec::new();
    match model {
        Model::LandauA | Model::LandauB => {
            let side = if model == Model::LandauA {
                Side::A
            } else {
                Side::B
            };
            let sys = build_system(spec, side);
            let computed = block_eigenvalues(config, sys.hamiltonian(), side)?;
            for entry in landau_spectrum(side, levels) {
                let degeneracy = entry
                    .labels
                    .iter()
                    .map(|l| format!("{} {}", l.occupation, l.spin))
                    .collect::<Vec<_>>()
                    .join(" | ");
                rows.push(SpectrumRow {
                    label: format!("k={}", entry.energy as usize),
                    closed_form: entry.energy,
                    numeric: nearest(&computed, entry.energy),
                    degeneracy: Some(format!("{degeneracy}; spectator free")),
                });
            }
        }
        Model::Dirac => {
            let dirac = dirac_hamiltonian(spec, Valley::Plus, Side::A, config.omega_d)?;
            let computed = block_eigenvalues(config, dirac.hamiltonian(), Side::A)?;
            rows.push(SpectrumRow {
                label: "n=0".to_string(),
                closed_form: 0.0,
                numeric: nearest(&computed, 0.0),
                degeneracy: Some("zero mode, spectator free".to_string()),
            });
            for n in 1..=levels {
                let energy = config.omega_d * (n as f64).sqrt();
                for (sign, tag) in [(-1.0, '-'), (1.0, '+')] {
                    rows.push(SpectrumRow {
                        label: format!("n={n},{tag}"),
                        closed_form: sign * energy,
                        numeric: nearest(&computed, sign * energy),
                        degeneracy: None,
                    });
                }
            }
        }
        Model::Jc | Model::Ajc => {
            let (variant, active) = if model == Model::Jc {
                (JcVariant::JcB, Side::B)
            } else {
                (JcVariant::AjcA, Side::A)
            };
            let jc = jaynes_cummings(spec, variant, config.omega, config.g)?;
            let computed = block_eigenvalues(config, jc.hamiltonian(), active)?;
            for level in jc_susy_spectrum(levels, config.omega, config.g) {
                if level.level == 0 {
                    rows.push(SpectrumRow {
                        label: "l=0".to_string(),
                        closed_form: level.e_minus,
                        numeric: nearest(&computed, level.e_minus),
                        degeneracy: None,
                    });
                } else {
                    for (energy, tag) in [(level.e_minus, '-'), (level.e_plus, '+')] {
                        rows.push(SpectrumRow {
                            label: format!("l={},{tag}", level.level),
                            closed_form: energy,
                            numeric: nearest(&computed, energy),
                            degeneracy: None,
                        });
                    }
                }
            }
        }
    }
    Ok(rows)
}

fn emit_spectrum(model: &str, config: &RunConfig, rows: &[SpectrumRow], format: Format) {
    let mut out = String::new();
    match format {
        Format::Json => {
            out.push_str(&format!("{{\"model\":\"{model}\",\"config\":"));
            out.push_str(&config_json(config));
            out.push_str(",\"rows\":[");
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&format!(
                    "{{\"label\":\"{}\",\"closed_form\":{},\"numeric\":{},\"abs_diff\":{},\"degeneracy\":{}}}",
                    row.label,
                    format_float_17(row.closed_form),
                    format_float_17(row.numeric),
                    format_float_17((row.closed_form - row.numeric).abs()),
                    match &row.degeneracy {
                        Some(d) => format!("\"{d}\""),
                        None => "null".to_string(),
                    }
                ));
            }
            out.push_str("]}\n");
        }
        Format::Csv => {
            out.push_str("model,label,closed_form,numeric,abs_diff,degeneracy\n");
            for row in rows {
                out.push_str(&format!(
                    "\"{}\",\"{}\",{},{},{},\"{}\"\n",
                    model,
                    row.label,
                    format_float_17(row.closed_form),
                    format_float_17(row.numeric),
                    format_float_17((row.closed_form - row.numeric).abs()),
                    row.degeneracy.as_deref().unwrap_or("")
                ));
            }
        }
        Format::Table => {
            out.push_str(&format!("model: {model}\n"));
            out.push_str(&format!(
                "{:<10} {:>18} {:>18} {:>12}  {}\n",
                "level", "closed form", "numeric", "abs diff", "degeneracy"
            ));
            for row in rows {
                out.push_str(&format!(
                    "{:<10} {:>18.12} {:>18.12} {:>12.3e}  {}\n",
                    row.label,
                    row.closed_form,
                    row.numeric,
                    (row.closed_form - row.numeric).abs(),
                    row.degeneracy.as_deref().unwrap_or("")
                ));
            }
        }
    }
    emit(&out);
}

// ---------------------------------------------------------------------
// concurrence
// ---------------------------------------------------------------------

fn cmd_concurrence(
    config: &RunConfig,
    k: usize,
    alpha: Complex64,
    beta: Complex64,
    format: Format,
) -> i32 {
    let spec = match config.spec() {
        Ok(s) => s,
        Err(e) => return config_error(e),
    };
    let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return config_error(format!(
            "amplitudes have norm {norm:.12}, expected 1 within 1e-9"
        ));
    }
    // exact renormalization absorbs the allowed 1e-9 slack
    let alpha = alpha / norm;
    let beta = beta / norm;
    let j = match modular_conjugation(spec) {
        Ok(j) => j,
        Err(e) => return config_error(e),
    };
    let phi = match supermultiplet_state(spec, k, alpha, beta) {
        Ok(phi) => phi,
        Err(e) => return config_error(e),
    };
    let modular = match concurrence_via_modular(&j, phi.state()) {
        Ok(v) => v,
        Err(e) => return config_error(e),
    };
    let wootters = concurrence_wootters(phi.state());
    let formation = match entanglement_of_formation(modular.min(1.0)) {
        Ok(v) => v,
        Err(e) => return config_error(e),
    };
    let agreement = (modular - wootters).abs() < 1e-10;

    let mut out = String::new();
    match format {
        Format::Json => {
            out.push_str(&format!(
                "{{\"config\":{},\"k\":{},\"alpha_re\":{},\"alpha_im\":{},\"beta_re\":{},\"beta_im\":{},\"concurrence_modular\":{},\"concurrence_wootters\":{},\"formation_entropy\":{},\"agreement\":{}}}\n",
                config_json(config),
                k,
                format_float_17(alpha.re),
                format_float_17(alpha.im),
                format_float_17(beta.re),
                format_float_17(beta.im),
                format_float_17(modular),
                format_float_17(wootters),
                format_float_17(formation),
                agreement
            ));
        }
        Format::Csv => {
            out.push_str(
                "k,alpha_re,alpha_im,beta_re,beta_im,concurrence_modular,concurrence_wootters,formation_entropy,agreement\n",
            );
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                k,
                format_float_17(alpha.re),
                format_float_17(alpha.im),
                format_float_17(beta.re),
                format_float_17(beta.im),
                format_float_17(modular),
                format_float_17(wootters),
                format_float_17(formation),
                agreement
            ));
        }
        Format::Table => {
            out.push_str(&format!("entangled doublet k = {k}\n"));
            out.push_str(&format!(
                "  alpha                = {:.12} + {:.12}i\n",
                alpha.re, alpha.im
            ));
            out.push_str(&format!(
                "  beta                 = {:.12} + {:.12}i\n",
                beta.re, beta.im
            ));
            out.push_str(&format!("  concurrence (via J)  = {modular:.12}\n"));
            out.push_str(&format!("  concurrence (trace)  = {wootters:.12}\n"));
            out.push_str(&format!("  formation entropy    = {formation:.12}\n"));
            out.push_str(&format!("  routes agree         = {agreement}\n"));
        }
    }
    emit(&out);
    0
}

fn config_json(c: &RunConfig) -> String {
    format!(
        "{{\"na_cut\":{},\"nb_cut\":{},\"beta\":{},\"omega\":{},\"g\":{},\"omega_d\":{},\"margin\":{},\"tolerance\":{},\"seed\":{}}}",
        c.na_cut,
        c.nb_cut,
        format_float_17(c.beta),
        format_float_17(c.omega),
        format_float_17(c.g),
        format_float_17(c.omega_d),
        c.margin,
        format_float_17(c.tolerance),
        c.seed
    )
}
