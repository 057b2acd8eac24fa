//! `bienergy`: command line front end to `bienergy-core`.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical violation was found,
//! 2 usage or parameter error, 3 quadrature failed to converge.

mod args;
mod output;

use std::path::Path;
use std::process::ExitCode;

use bienergy_core::closedform::DEFAULT_GRID_DENSITY;
use bienergy_core::energy::{compare_families, energy_coulson_explicit, energy_eigen};
use bienergy_core::graph::{build, parse_edge_list, Graph};
use bienergy_core::harness::{
    extremal, scan, scan_passes, signgrid, verify_identities, SignGridConfig, VerifyConfig, DEFAULT_SCAN_CAP,
};
use bienergy_core::poly::{charpoly_by_recursion, charpoly_direct};
use bienergy_core::{Error, IntPoly, Precision, Result};
use clap::Parser;

use args::{Cli, Command, GraphArgs, Method};
use output::{sig12, Emitter};

/// Outcome of a command that ran to completion.
enum Verdict {
    Pass,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot configure {jobs} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Convergence { .. } => 3,
        Error::NonRealSpectrum { .. } => 1,
        Error::Domain(_) | Error::Capacity { .. } | Error::Usage(_) | Error::Parse { .. } | Error::InvalidGraph(_) => 2,
    }
}

fn precision(cli: &Cli) -> Precision {
    cli.precision_digits.map_or_else(Precision::default, Precision::from_digits)
}

fn density(cli: &Cli) -> usize {
    cli.grid_density.unwrap_or(DEFAULT_GRID_DENSITY)
}

/// The graph and its characteristic polynomial, with a label for output.
fn resolve(g: &GraphArgs) -> Result<(String, Graph, IntPoly)> {
    if let Some(path) = &g.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        let graph = parse_edge_list(&text)?;
        let poly = charpoly_direct(&graph);
        let label = Path::new(path).file_name().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        return Ok((label, graph, poly));
    }
    let spec = g.spec()?;
    let graph = build(&spec)?;
    let poly = charpoly_by_recursion(&spec)?;
    Ok((spec.to_string(), graph, poly))
}

fn run(cli: &Cli) -> Result<Verdict> {
    let out = Emitter::new(cli.json);
    match &cli.command {
        Command::Charpoly(g) => {
            let (label, _, poly) = resolve(g)?;
            if cli.json {
                out.json_records(&[serde_json::json!({ "graph": label, "polynomial": poly.to_string() })])?;
            } else {
                println!("{poly}");
            }
            Ok(Verdict::Pass)
        }
        Command::Energy { graph, method } => {
            let (label, g, poly) = resolve(graph)?;
            let mut results = Vec::new();
            if matches!(method, Method::Eigen | Method::Both) {
                results.push(energy_eigen(&poly)?);
            }
            if matches!(method, Method::Coulson | Method::Both) {
                results.push(energy_coulson_explicit(&poly)?);
            }
            let mut ok = true;
            if let [a, b] = &results[..] {
                ok = (a.value - b.value).abs() < 1e-8;
            }
            if let Some(e) = results.first().filter(|e| e.eigenvalues.is_some()) {
                ok &= e.trace_identities_hold(g.size());
            }
            out.energies(&label, &results)?;
            Ok(if ok { Verdict::Pass } else { Verdict::Violation })
        }
        Command::Compare { n, t } => {
            let rec = compare_families(*n, *t)?;
            let ok = scan_passes(std::slice::from_ref(&rec));
            out.comparisons(&[rec])?;
            Ok(if ok { Verdict::Pass } else { Verdict::Violation })
        }
        Command::Scan { max_sum } => {
            let cap = cli.max_n.unwrap_or(DEFAULT_SCAN_CAP);
            let records = scan(*max_sum, cap)?;
            out.comparisons(&records)?;
            Ok(if scan_passes(&records) { Verdict::Pass } else { Verdict::Violation })
        }
        Command::Signgrid { quantity, t_list } => {
            let mut config = SignGridConfig {
                density: density(cli),
                precision: precision(cli),
                ..SignGridConfig::default()
            };
            if let Some(t) = t_list {
                config.t_list = t.clone();
            }
            if let Some(n) = cli.max_n {
                config.n_max = n;
            }
            let report = signgrid(*quantity, &config)?;
            out.signgrid(&report)?;
            Ok(if report.passed() { Verdict::Pass } else { Verdict::Violation })
        }
        Command::Extremal { n } => {
            let report = extremal(*n, cli.allow_large)?;
            out.extremal(&report)?;
            Ok(if report.passed() { Verdict::Pass } else { Verdict::Violation })
        }
        Command::Verify => {
            let mut config = VerifyConfig {
                density: density(cli),
                precision: precision(cli),
                ..VerifyConfig::default()
            };
            if let Some(n) = cli.max_n {
                config.family_max_n = n;
            }
            let report = verify_identities(&config)?;
            out.verify(&report)?;
            Ok(if report.passed() { Verdict::Pass } else { Verdict::Violation })
        }
        Command::UpdateFixtures { dir } => {
            update_fixtures(dir)?;
            Ok(Verdict::Pass)
        }
    }
}

/// Regenerate the golden files read by the integration tests.
fn update_fixtures(dir: &Path) -> Result<()> {
    use bienergy_core::FamilySpec;
    let io = |e: std::io::Error| Error::Usage(format!("cannot write fixtures to {}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let write = |name: &str, body: String| std::fs::write(dir.join(name), body).map_err(io);
    for n in [12, 13] {
        let p = charpoly_by_recursion(&FamilySpec::P66(n))?;
        write(&format!("p66_{n}.poly"), format!("{p}\n"))?;
    }
    let e = energy_eigen(&charpoly_by_recursion(&FamilySpec::P66(12))?)?;
    write("energy_p66_12.txt", format!("{}\n", sig12(e.value)))?;
    let records = scan(50, DEFAULT_SCAN_CAP)?;
    write("scan_50.csv", output::comparisons_csv(&records)?)?;
    eprintln!("fixtures written to {}", dir.display());
    Ok(())
}
