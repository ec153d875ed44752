//! `polycal` command line: check instance files, fuzz rules with seeded
//! random instances, and inspect instances in both constraint and
//! generator form.
//!
//! Exit codes: 0 when every check passed, 1 when any identity was violated
//! (a genuine finding), 2 on input errors. No environment variables are
//! required.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use polycal_cli::gen::{generate, GenConfig};
use polycal_cli::instance::{Instance, Kind, Payload};
use polycal_cli::report::{Report, Summary, Verdict};
use polycal_cli::run::{run_check, run_instance};
use polycal_cli::{HarnessError, Result};

#[derive(Parser)]
#[command(name = "polycal", version, about = "Exact polyhedral convex-calculus checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of one instance file and report pass/fail/skip.
    Check {
        /// Instance JSON file.
        file: PathBuf,
        /// Write the full JSON-lines report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Generate and check seeded random instances of one rule.
    Fuzz {
        /// Rule kind, e.g. conjugate_sum or cod_chain.
        #[arg(long)]
        kind: Kind,
        /// Random seed; identical seeds give byte-identical reports.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of instances.
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Ambient dimension range, e.g. 1..3 (inclusive).
        #[arg(long, default_value = "1..3", value_parser = parse_dims)]
        dims: (usize, usize),
        /// Extra constraint rows per generated set.
        #[arg(long, default_value_t = 3)]
        budget: usize,
        /// Write the full JSON-lines report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the sets and functions of an instance in H- and V-form.
    Show {
        /// Instance JSON file.
        file: PathBuf,
    },
}

fn parse_dims(s: &str) -> std::result::Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| "expected a range like 1..3".to_string())?;
    let lo: usize = lo.trim().parse().map_err(|_| "bad lower bound")?;
    let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| "bad upper bound")?;
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Check { file, report } => {
            let r = run_check(&file)?;
            println!("{}", r.summary_line());
            if let Some(path) = report {
                write_reports(&path, std::slice::from_ref(&r))?;
            }
            Ok(r.verdict != Verdict::Fail)
        }
        Command::Fuzz {
            kind,
            seed,
            count,
            dims,
            budget,
            report,
        } => {
            let cfg = GenConfig { dims, budget };
            cfg.validate()?;
            let (reports, summary) = fuzz(kind, seed, count, &cfg)?;
            for r in &reports {
                if r.verdict == Verdict::Fail {
                    println!("{}", r.summary_line());
                }
            }
            println!("{} {} (seed {}): {}", kind.as_str(), count, seed, summary);
            if let Some(path) = report {
                write_reports(&path, &reports)?;
            }
            Ok(summary.all_passed())
        }
        Command::Show { file } => {
            let instance = Instance::load(&file)?;
            print!("{}", render(&instance)?);
            Ok(true)
        }
    }
}

/// Generates and checks `count` instances; instances are independent and
/// evaluated in parallel, aggregated in index order for determinism.
pub fn fuzz(kind: Kind, seed: u64, count: u64, cfg: &GenConfig) -> Result<(Vec<Report>, Summary)> {
    let indices: Vec<u64> = (0..count).collect();
    let reports: Vec<Report> = indices
        .par_iter()
        .map(|&i| -> Result<Report> {
            let instance = generate(kind, seed, i, cfg)?;
            run_instance(&instance)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut summary = Summary::default();
    for r in &reports {
        summary.absorb(r);
    }
    Ok((reports, summary))
}

fn write_reports(path: &PathBuf, reports: &[Report]) -> Result<()> {
    let mut out = std::fs::File::create(path)?;
    for r in reports {
        writeln!(out, "{}", r.to_json_line())?;
    }
    Ok(())
}

fn render_poly(name: &str, p: &polycal::HPolyhedron) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = writeln!(s, "{name}: dim {}", p.dim());
    for (a, b) in p.ineq() {
        let _ = writeln!(s, "  {} <= {}", render_row(a), b);
    }
    for (e, c) in p.eq() {
        let _ = writeln!(s, "  {} = {}", render_row(e), c);
    }
    match p.h_to_v() {
        Ok(g) => {
            let _ = writeln!(
                s,
                "  vertices: {:?}",
                g.vertices.iter().map(render_point).collect::<Vec<_>>()
            );
            if !g.rays.is_empty() {
                let _ = writeln!(
                    s,
                    "  rays: {:?}",
                    g.rays.iter().map(render_point).collect::<Vec<_>>()
                );
            }
            if !g.lineality.is_empty() {
                let _ = writeln!(
                    s,
                    "  lineality: {:?}",
                    g.lineality.iter().map(render_point).collect::<Vec<_>>()
                );
            }
        }
        Err(_) => {
            let _ = writeln!(s, "  (empty set)");
        }
    }
    s
}

fn render_row(a: &[polycal::Q]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in a.iter().enumerate() {
        if !c.is_zero() {
            parts.push(format!("{c} x{i}"));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn render_point(v: &Vec<polycal::Q>) -> String {
    let inner: Vec<String> = v.iter().map(|q| q.to_string()).collect();
    format!("({})", inner.join(", "))
}

fn render_function(name: &str, f: &polycal::PLFunction) -> Result<String> {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = writeln!(s, "{name}: function on Q^{}", f.dim());
    s.push_str(&render_poly(&format!("{name}.epi"), f.epigraph()));
    let dom = f.domain().map_err(HarnessError::Domain)?;
    s.push_str(&render_poly(&format!("{name}.dom"), &dom));
    Ok(s)
}

fn render(instance: &Instance) -> Result<String> {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "instance {} kind {}",
        instance.display_id(),
        instance.kind.as_str()
    );
    match instance.parse_payload()? {
        Payload::Sets(p) => {
            s.push_str(&render_poly("omega1", &p.omega1));
            s.push_str(&render_poly("omega2", &p.omega2));
        }
        Payload::Functions(p) => {
            s.push_str(&render_function("f", &p.f)?);
            s.push_str(&render_function("g", &p.g)?);
        }
        Payload::Composition(p) => {
            s.push_str(&render_function("g", &p.g)?);
            let _ = writeln!(s, "a: {} x {} matrix", p.a.out_dim(), p.a.in_dim());
        }
        Payload::Marginal(p) => {
            s.push_str(&render_function("phi", &p.phi)?);
            s.push_str(&render_poly("gph F", p.constraint.graph()));
            let dom = p.constraint.domain().map_err(HarnessError::Domain)?;
            s.push_str(&render_poly("dom F", &dom));
        }
        Payload::Ordered(p) => {
            s.push_str(&render_poly("Yplus", &p.yplus));
            s.push_str(&render_function("phi", &p.phi)?);
            let _ = writeln!(s, "f: {} x {} affine map", p.f.out_dim(), p.f.in_dim());
        }
        Payload::MapPair(p) => {
            s.push_str(&render_poly("gph F1", p.f1.graph()));
            s.push_str(&render_poly("gph F2", p.f2.graph()));
        }
        Payload::MapChain(p) => {
            s.push_str(&render_poly("gph F", p.f.graph()));
            s.push_str(&render_poly("gph G", p.g.graph()));
        }
        Payload::Function(p) => {
            s.push_str(&render_function("f", &p.f)?);
        }
    }
    if let Some(probes) = &instance.probe_points {
        let _ = writeln!(s, "probes: {probes}");
    }
    Ok(s)
}
