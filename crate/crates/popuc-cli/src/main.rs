use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use popuc_cli::campaign::{run_campaign, CampaignConfig};
use popuc_cli::demo::run_demo;
use popuc_cli::input::{emit_json, parse_input};
use popuc_cli::report::{verdict_str, zeros_csv, Formats, OutputDir};
use popuc_cli::svg::{render_svg, Annotations};
use popuc_cli::CliError;
use popuc_core::interlace::{
    interlace_check, spectrum_set, verify_consecutive_interlacing, verify_refined_interlacing,
    verify_rotation_interlacing,
};
use popuc_core::tol::Tolerances;
use popuc_core::{build_cmv, zeros, CircularPointSet, ParameterArray};

/// Paraorthogonal polynomials on the unit circle: CMV matrix construction,
/// zero localization, and interlacing verification.
#[derive(Parser)]
#[command(name = "popuc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON input file: {"alphas": [[re,im],...], "b": [re,im]} or {"cases": [...]}
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Split index m.
    #[arg(long, global = true)]
    m: Option<usize>,

    /// Unimodular rotation, written RE,IM.
    #[arg(long, global = true, value_parser = parse_complex)]
    beta: Option<Complex64>,

    /// Unimodular split parameter b_m (or b_{n-1} for `corollary`), RE,IM.
    #[arg(long, global = true, value_parser = parse_complex)]
    bm: Option<Complex64>,

    /// Base seed for randomized campaigns.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of randomized trials.
    #[arg(long, global = true)]
    trials: Option<usize>,

    /// Largest parameter count n drawn in campaigns.
    #[arg(long, global = true, value_name = "N", default_value_t = 16)]
    n_max: usize,

    /// Sampling radius for the disk parameters.
    #[arg(long, global = true, default_value_t = 0.95)]
    alpha_radius: f64,

    /// Output directory for artifacts; nothing is written without it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Comma-separated artifact formats: json,csv,svg.
    #[arg(long, global = true, default_value = "json")]
    format: String,

    /// Tolerance overrides KEY=VAL (repeatable); see README for keys.
    #[arg(long = "tol", global = true, value_name = "KEY=VAL")]
    tol: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the CMV matrix and report unitarity and sparsity.
    Build,
    /// Locate all zeros on the unit circle, with eigenvector residuals.
    Zeros,
    /// Decide interlacing of the zero sets of two arrays (input `cases`).
    Interlace,
    /// Verify strict interlacing under a tail rotation by β at index m.
    Theorem1,
    /// Verify the refined common-eigenvalue interlacing report at split m.
    Theorem2,
    /// Verify the consecutive-degree dichotomy with previous parameter b_m.
    Corollary,
    /// Run the rank-one perturbation lemma suite on seeded random instances.
    Lemmas,
    /// Reproduce the roots-of-unity showcase end to end.
    Demo,
    /// Seeded randomized campaign: theorem1|theorem2|corollary|lemmas|structure|oracle|all.
    Campaign {
        #[arg(value_name = "TARGET")]
        target: String,
    },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected RE,IM but got '{s}'"));
    }
    let re: f64 = parts[0].trim().parse().map_err(|e| format!("bad real part: {e}"))?;
    let im: f64 = parts[1].trim().parse().map_err(|e| format!("bad imaginary part: {e}"))?;
    Ok(Complex64::new(re, im))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("popuc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let formats = Formats::parse(&cli.format)?;
    let out = OutputDir::new(cli.out.clone())?;
    let mut tolerances = Tolerances::default();
    for spec in &cli.tol {
        let (key, value) = spec
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("--tol expects KEY=VAL, got '{spec}'")))?;
        let value: f64 = value
            .parse()
            .map_err(|e| CliError::Input(format!("--tol {key}: bad value: {e}")))?;
        tolerances.set(key, value).map_err(CliError::Input)?;
    }

    match &cli.command {
        Command::Build => cmd_build(&cli, &out, formats),
        Command::Zeros => cmd_zeros(&cli, &out, formats),
        Command::Interlace => cmd_interlace(&cli, &out, formats),
        Command::Theorem1 => cmd_theorem1(&cli),
        Command::Theorem2 => cmd_theorem2(&cli, &out, formats),
        Command::Corollary => cmd_corollary(&cli),
        Command::Lemmas => {
            let cfg = campaign_config(&cli, tolerances, 100);
            let summaries = run_campaign("lemmas", &cfg, &out, formats)?;
            finish_campaign(summaries)
        }
        Command::Demo => run_demo(&out, formats),
        Command::Campaign { target } => {
            let cfg = campaign_config(&cli, tolerances, 200);
            let summaries = run_campaign(target, &cfg, &out, formats)?;
            finish_campaign(summaries)
        }
    }
}

fn campaign_config(cli: &Cli, tolerances: Tolerances, default_trials: usize) -> CampaignConfig {
    CampaignConfig {
        seed: cli.seed,
        trials: cli.trials.unwrap_or(default_trials),
        n_max: cli.n_max.clamp(1, 64),
        alpha_radius: cli.alpha_radius.clamp(0.0, 0.999),
        tolerances,
    }
}

fn finish_campaign(summaries: Vec<popuc_cli::report::CampaignSummary>) -> Result<(), CliError> {
    let failed: usize = summaries.iter().map(|s| s.failed).sum();
    if failed > 0 {
        Err(CliError::Verification(format!("{failed} trial(s) failed")))
    } else {
        Ok(())
    }
}

fn single_input(cli: &Cli) -> Result<ParameterArray, CliError> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| CliError::Input("--input is required for this command".into()))?;
    let mut cases = parse_input(path)?;
    if cases.len() != 1 {
        return Err(CliError::Input(format!(
            "expected exactly one parameter array, found {}",
            cases.len()
        )));
    }
    Ok(cases.remove(0))
}

fn cmd_build(cli: &Cli, out: &OutputDir, formats: Formats) -> Result<(), CliError> {
    let p = single_input(cli)?;
    let cmv = build_cmv(&p);
    println!(
        "CMV matrix of order {} (n = {}): unitarity residual {:.3e}, staircase sparsity {}",
        cmv.order(),
        p.n(),
        cmv.unitarity_error(),
        if cmv.sparsity_ok() { "exact" } else { "VIOLATED" }
    );
    for i in 0..cmv.order() {
        let row: Vec<String> = (0..cmv.order())
            .map(|j| {
                let z = cmv.matrix()[(i, j)];
                format!("{:>7.3}{:+.3}i", z.re, z.im)
            })
            .collect();
        println!("  [{}]", row.join("  "));
    }
    if !cmv.sparsity_ok() || cmv.unitarity_error() > popuc_core::tol::EPS_UNITARY {
        return Err(CliError::Verification("construction invariants violated".into()));
    }
    if formats.json {
        let entries: Vec<Vec<[f64; 2]>> = (0..cmv.order())
            .map(|i| {
                (0..cmv.order())
                    .map(|j| {
                        let z = cmv.matrix()[(i, j)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        let payload = serde_json::json!({
            "order": cmv.order(),
            "unitarity_error": cmv.unitarity_error(),
            "sparsity_ok": cmv.sparsity_ok(),
            "parameters": serde_json::from_str::<serde_json::Value>(&emit_json(&p)).unwrap(),
            "matrix": entries,
        });
        if let Some(path) = out.write("cmv.json", &serde_json::to_string_pretty(&payload).unwrap())? {
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn cmd_zeros(cli: &Cli, out: &OutputDir, formats: Formats) -> Result<(), CliError> {
    let p = single_input(cli)?;
    let dec = zeros(&p)?;
    for note in &dec.diagnostics {
        eprintln!("note: {note}");
    }
    println!(
        "{} zeros on the unit circle (min angular gap {:.3e}{})",
        dec.eigenvalues.len(),
        dec.min_angular_gap(),
        if dec.used_fallback { "; dense fallback used" } else { "" }
    );
    println!("index  angle_radians         value");
    for (i, pt) in dec.eigenvalues.iter().enumerate() {
        let z = pt.to_complex();
        println!(
            "{i:>5}  {:<20.15}  {:+.15}{:+.15}i",
            pt.angle(),
            z.re,
            z.im
        );
    }
    if formats.csv {
        if let Some(path) = out.write("zeros.csv", &zeros_csv(&dec))? {
            println!("wrote {}", path.display());
        }
    }
    if formats.json {
        let payload = serde_json::json!({
            "angles": dec.angles(),
            "residuals": dec.residuals,
            "used_fallback": dec.used_fallback,
        });
        if let Some(path) = out.write("zeros.json", &serde_json::to_string_pretty(&payload).unwrap())? {
            println!("wrote {}", path.display());
        }
    }
    if formats.svg {
        let set = spectrum_set(&dec, "zeros");
        let svg = render_svg(&[&set], &Annotations::default());
        if let Some(path) = out.write("zeros.svg", &svg)? {
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn cmd_interlace(cli: &Cli, out: &OutputDir, formats: Formats) -> Result<(), CliError> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| CliError::Input("--input is required for this command".into()))?;
    let cases = parse_input(path)?;
    if cases.len() != 2 {
        return Err(CliError::Input(format!(
            "interlace expects exactly two arrays under \"cases\", found {}",
            cases.len()
        )));
    }
    let dec_a = zeros(&cases[0])?;
    let dec_b = zeros(&cases[1])?;
    let set_a = CircularPointSet::new(dec_a.eigenvalues.clone(), "zeros(first)");
    let set_b = CircularPointSet::new(dec_b.eigenvalues.clone(), "zeros(second)");
    let (small, large) = if set_a.len() <= set_b.len() {
        (&set_a, &set_b)
    } else {
        (&set_b, &set_a)
    };
    let verdict = interlace_check(small, large, true)?;
    println!(
        "interlacing of {} zeros vs {}: {}",
        small.len(),
        large.len(),
        verdict_str(verdict.verdict)
    );
    if let Some((a, b)) = &verdict.violation {
        println!("  offending arc: ({:.12}, {:.12})", a.angle(), b.angle());
    }
    if !verdict.padding.is_empty() {
        let angles: Vec<String> = verdict.padding.iter().map(|p| format!("{:.6}", p.angle())).collect();
        println!("  padding witness: [{}]", angles.join(", "));
    }
    if formats.svg {
        let ann = Annotations {
            common: vec![],
            padding: verdict.padding.clone(),
        };
        let svg = render_svg(&[large, small], &ann);
        if let Some(path) = out.write("interlace.svg", &svg)? {
            println!("wrote {}", path.display());
        }
    }
    if formats.json {
        let payload = serde_json::to_string_pretty(&verdict).unwrap();
        if let Some(path) = out.write("interlace.json", &payload)? {
            println!("wrote {}", path.display());
        }
    }
    match verdict.verdict {
        popuc_core::interlace::Verdict::Fail => {
            Err(CliError::Verification("sets do not interlace".into()))
        }
        _ => Ok(()),
    }
}

fn cmd_theorem1(cli: &Cli) -> Result<(), CliError> {
    let p = single_input(cli)?;
    let m = cli.m.ok_or_else(|| CliError::Input("--m is required".into()))?;
    let beta = cli
        .beta
        .ok_or_else(|| CliError::Input("--beta RE,IM is required".into()))?;
    let verdict = verify_rotation_interlacing(&p, m, beta)?;
    println!(
        "tail rotation at m = {m} by beta = {beta}: {}",
        verdict_str(verdict.verdict)
    );
    if verdict.is_strict() {
        Ok(())
    } else {
        Err(CliError::Verification("expected strict interlacing".into()))
    }
}

fn cmd_theorem2(cli: &Cli, out: &OutputDir, formats: Formats) -> Result<(), CliError> {
    let p = single_input(cli)?;
    let m = cli.m.ok_or_else(|| CliError::Input("--m is required".into()))?;
    let b_m = cli
        .bm
        .ok_or_else(|| CliError::Input("--bm RE,IM is required".into()))?;
    let report = verify_refined_interlacing(&p, m, b_m)?;
    println!(
        "refined interlacing at m = {m}: |A| = {} (bound min{{m+1, n-m}} = {}), B has {} points",
        report.set_a.len(),
        (m + 1).min(p.n() - m),
        report.set_b.len()
    );
    println!(
        "  common-eigenvalue agreement: {}; alternative expression: {}; cardinality: {}; interlacing: {}",
        report.common_agrees,
        report.alt_expression_agrees,
        report.cardinality_ok,
        verdict_str(report.interlacing.verdict)
    );
    if formats.svg {
        let ann = Annotations {
            common: report.set_a.points().to_vec(),
            padding: vec![],
        };
        let svg = render_svg(
            &[&report.spectrum_full, &report.spectrum_head, &report.set_b],
            &ann,
        );
        if let Some(path) = out.write("theorem2.svg", &svg)? {
            println!("wrote {}", path.display());
        }
    }
    if formats.json {
        if let Some(path) = out.write("theorem2.json", &crate_json(&report))? {
            println!("wrote {}", path.display());
        }
    }
    if report.all_ok() {
        Ok(())
    } else {
        Err(CliError::Verification("refined interlacing report has failures".into()))
    }
}

fn crate_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn cmd_corollary(cli: &Cli) -> Result<(), CliError> {
    let p = single_input(cli)?;
    let b_prev = cli
        .bm
        .ok_or_else(|| CliError::Input("--bm RE,IM is required (previous-level parameter)".into()))?;
    let report = verify_consecutive_interlacing(&p, b_prev)?;
    let branch = match report.branch {
        popuc_core::interlace::ConsecutiveBranch::SharedPoint => {
            "unique common eigenvalue conj(b)·gamma"
        }
        popuc_core::interlace::ConsecutiveBranch::Disjoint => {
            "disjoint spectra, conj(b)·gamma in neither"
        }
    };
    println!(
        "consecutive-degree dichotomy: {branch}; zeta* angle {:.12}; interlacing {}",
        report.zeta_star.angle(),
        verdict_str(report.interlacing.verdict)
    );
    if report.all_ok() {
        Ok(())
    } else {
        Err(CliError::Verification("dichotomy assertions failed".into()))
    }
}
