use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use cellball::certify::{certify_ball, cross_check_small, Certificate};
use cellball::hcalc::boundary_h;
use cellball::realizer::{realize, RealizeError};
use cellball::{check_ball, check_sphere, HVector, SimplicialPoset};

/// h-vectors of simplicial cell balls and spheres.
///
/// Exit codes: 0 success or admissible, 1 negative result, 2 input error.
#[derive(Debug, Parser)]
#[command(name = "cellball", version)]
struct Cli {
    /// Print only the essential result line.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the ball conditions (1)-(7), or the sphere conditions (1)-(3).
    Check {
        /// Comma-separated h-vector, e.g. 1,0,0,1,0
        h: String,
        #[arg(long)]
        sphere: bool,
    },
    /// Build a simplicial cell ball with the given h-vector.
    Realize {
        h: String,
        /// Where to write the canonical poset file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the construction trace.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Certify a poset file and trace as a ball with the claimed h-vector.
    Verify {
        poset: PathBuf,
        trace: PathBuf,
        h: String,
    },
    /// Print f- and h-vectors and boundary data of a poset file.
    Info { poset: PathBuf },
    /// Check, realize and certify every small h-vector.
    Sweep {
        /// Largest d.
        #[arg(long = "d", default_value_t = 4)]
        d_max: usize,
        /// Largest sum of h.
        #[arg(long = "facets", default_value_t = 8)]
        facet_max: i64,
        /// Write the table here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A domain-level outcome: success or a negative answer.
enum Outcome {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let quiet = cli.quiet;
    match &cli.command {
        Command::Check { h, sphere } => {
            let h = parse_h(h)?;
            let report = if *sphere {
                check_sphere(&h)
            } else {
                check_ball(&h)
            };
            if quiet {
                println!("{}", verdict_line(report.is_admissible()));
            } else {
                println!("h = ({h})");
                println!("{report}");
            }
            Ok(outcome(report.is_admissible()))
        }
        Command::Realize { h, out, trace } => {
            let h = parse_h(h)?;
            distinct(out.as_deref(), trace.as_deref())?;
            let r = match realize(&h) {
                Ok(r) => r,
                Err(RealizeError::Inadmissible(report)) => {
                    println!("refused: h = ({h}) is not the h-vector of a ball");
                    if !quiet {
                        println!("{report}");
                    }
                    return Ok(Outcome::No);
                }
                Err(e) => bail!("realization failed: {e}"),
            };
            if let Some(path) = out {
                write(path, &r.poset.to_text())?;
            }
            if let Some(path) = trace {
                write(path, &r.trace.to_text())?;
            }
            if quiet {
                println!("{}", r.case);
            } else {
                println!("h = ({h})");
                println!("case: {}", r.case);
                if let Some(c) = &r.case3 {
                    println!(
                        "n = {}, m = {}, s = ({}), gamma = ({}), delta bar = ({}), h' = ({}), h'' = ({})",
                        c.n,
                        c.m,
                        join(&c.s),
                        c.gamma,
                        c.delta_bar,
                        c.h_prime,
                        c.h_double_prime
                    );
                }
                println!("facets: {}", r.poset.facet_count());
                println!("elements: {}", r.poset.len());
                println!("f = ({})", join(&r.poset.f_vector()));
                println!("gluings: {}", r.trace.glue_count());
                for (label, path) in [("poset", out), ("trace", trace)] {
                    if let Some(p) = path {
                        println!("wrote {label} to {}", p.display());
                    }
                }
            }
            Ok(Outcome::Yes)
        }
        Command::Verify { poset, trace, h } => {
            let h = parse_h(h)?;
            distinct(Some(poset), Some(trace))?;
            let cert = Certificate::load(poset, trace, h)?;
            let report = certify_ball(&cert);
            if quiet {
                let line = if report.passed() {
                    "certified"
                } else {
                    "not certified"
                };
                println!("{line}");
            } else {
                println!("{report}");
            }
            Ok(outcome(report.passed()))
        }
        Command::Info { poset } => {
            let text = read(poset)?;
            let p = SimplicialPoset::from_text(&text)
                .with_context(|| format!("cannot parse {}", poset.display()))?;
            info(&p, quiet)
        }
        Command::Sweep {
            d_max,
            facet_max,
            out,
        } => {
            if *d_max == 0 || *facet_max <= 0 {
                bail!("sweep bounds must be positive");
            }
            let report = cross_check_small(*d_max, *facet_max);
            let tsv = report.to_tsv();
            match out {
                Some(path) => write(path, &tsv)?,
                None if !quiet => print!("{tsv}"),
                None => {}
            }
            println!(
                "{} vectors, {} admissible, {} certified{}",
                report.rows.len(),
                report.admissible(),
                report.certified(),
                if report.all_certified() {
                    ""
                } else {
                    ", FAILURES"
                }
            );
            Ok(outcome(report.all_certified()))
        }
    }
}

fn info(p: &SimplicialPoset, quiet: bool) -> Result<Outcome> {
    if let Err(e) = p.validate() {
        println!("invalid simplicial poset: {e}");
        return Ok(Outcome::No);
    }
    let h = p.h_vector();
    println!("d = {}", p.d());
    println!("f = ({})", join(&p.f_vector()));
    println!("h = ({h})");
    if quiet {
        return Ok(Outcome::Yes);
    }
    println!("boundary of h = ({})", join(&boundary_h(&h)));
    println!("elements: {}", p.len());
    println!("facets: {}", p.facet_count());
    if !p.is_pure_pseudomanifold() {
        println!("pseudomanifold: no");
        return Ok(Outcome::Yes);
    }
    println!("pseudomanifold: yes");
    let boundary = p.boundary().context("boundary")?;
    let (view, _) = boundary.to_poset();
    if boundary.is_empty() {
        println!("boundary: empty");
    } else {
        println!("boundary f = ({})", join(&view.f_vector()));
        println!("boundary h = ({})", view.h_vector());
    }
    Ok(Outcome::Yes)
}

fn parse_h(s: &str) -> Result<HVector> {
    s.parse::<HVector>()
        .with_context(|| format!("invalid h-vector `{s}`"))
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Yes
    } else {
        Outcome::No
    }
}

fn verdict_line(admissible: bool) -> &'static str {
    if admissible {
        "admissible"
    } else {
        "inadmissible"
    }
}

fn distinct(a: Option<&Path>, b: Option<&Path>) -> Result<()> {
    if let (Some(a), Some(b)) = (a, b) {
        if a == b {
            bail!("the two paths must differ, both are {}", a.display());
        }
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
