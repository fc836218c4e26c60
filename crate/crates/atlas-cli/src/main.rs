use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use atlas_cli::{
    catalog_dump, coverage_csv, coverage_svg, default_p, paper_audit_text, parse_pi1, report, PlanDocument,
};
use atlas_core::realizer::{audit_region, plan_point};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "atlas", about = "Realize, verify and audit lattice points of 4-manifolds with cyclic fundamental group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Build a plan for one point, write it, and report on it.
    Realize {
        #[arg(long, allow_hyphen_values = true)]
        c1sq: i64,
        #[arg(long)]
        chih: i64,
        /// `z` or `zp:P` (`zp` alone uses ATLAS_DEFAULT_P, default 3)
        #[arg(long, default_value = "zp")]
        pi1: String,
        /// Where to write the plan document.
        #[arg(long, short, default_value = "plan.json")]
        output: PathBuf,
    },
    /// Evaluate a plan document.
    Verify { path: PathBuf },
    /// Coverage table or chart for 1 <= chi_h <= N.
    Atlas {
        #[arg(long)]
        chi_max: i64,
        #[arg(long, default_value = "zp")]
        pi1: String,
        #[arg(long, value_enum, default_value = "csv")]
        out: Format,
        /// Output file; standard output if omitted.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Numbers recorded for the blocks and constructions that disagree.
    PaperAudit,
    /// Dump the catalog.
    Catalog,
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Realize { c1sq, chih, pi1, output } => {
            let pi1 = parse_pi1(&pi1, default_p())?;
            let plan = match plan_point(c1sq, chih, pi1) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(1);
                }
            };
            std::fs::write(&output, PlanDocument::from_plan(&plan).render())
                .with_context(|| format!("writing {}", output.display()))?;
            let r = report(&plan);
            print!("plan: {}\n{}", output.display(), r.text);
            Ok(r.exit_code as u8)
        }
        Command::Verify { path } => {
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let plan = PlanDocument::parse(&text)?.to_plan()?;
            let r = report(&plan);
            print!("{}", r.text);
            Ok(r.exit_code as u8)
        }
        Command::Atlas { chi_max, pi1, out, file } => {
            anyhow::ensure!(chi_max >= 1, "--chi-max must be at least 1");
            let pi1 = parse_pi1(&pi1, default_p())?;
            let r = audit_region(chi_max, pi1);
            let body = match out {
                Format::Csv => coverage_csv(&r)?,
                Format::Svg => coverage_svg(&r),
            };
            match file {
                Some(f) => std::fs::write(&f, body).with_context(|| format!("writing {}", f.display()))?,
                None => print!("{body}"),
            }
            Ok(0)
        }
        Command::PaperAudit => {
            print!("{}", paper_audit_text());
            Ok(0)
        }
        Command::Catalog => {
            print!("{}", catalog_dump());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
