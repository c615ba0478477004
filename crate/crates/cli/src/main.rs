use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quasihopf::linalg::Field;
use quasihopf_cli::commands::{self, DecomposeArgs};
use quasihopf_cli::report::RunReport;
use quasihopf_cli::EXIT_MALFORMED;

/// Exact verification and decomposition of finite-dimensional quasi-Hopf
/// algebras given by structure constants.
#[derive(Parser)]
#[command(name = "qhopf", version)]
struct Cli {
    /// Work over this field ("rational" or "gf:<p>") instead of the field
    /// named in the input files.
    #[arg(long, global = true, env = "QHOPF_FIELD")]
    field: Option<String>,
    /// Also write the report as JSON to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Include wall-clock timings in the JSON report.
    #[arg(long, global = true)]
    timings: bool,
    /// Print the JSON report on stdout instead of the human summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check that applies to the file's kind.
    Verify {
        file: PathBuf,
        /// Quasi-Hopf algebra for module/comodule algebras that do not embed one.
        #[arg(short = 'H', long = "hopf")]
        hopf: Option<PathBuf>,
    },
    /// Build A#H; writes smash.json and j.json into OUT.
    Smash {
        #[arg(short = 'a')]
        a: PathBuf,
        #[arg(short = 'H', long = "hopf")]
        hopf: PathBuf,
        #[arg(short = 'o')]
        out: PathBuf,
    },
    /// Decompose B along v; writes A.json, psi.json, theta.json, report.json into OUT.
    Decompose {
        #[arg(short = 'B')]
        b: PathBuf,
        #[arg(short = 'H', long = "hopf")]
        hopf: PathBuf,
        #[arg(short = 'v')]
        v: PathBuf,
        #[arg(short = 'o')]
        out: PathBuf,
        /// Module algebra A₀ with B = A₀#H; checks a ↦ a#1 is an isomorphism onto A.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Smash A with H, decompose again, and compare with A.
    Roundtrip {
        #[arg(short = 'a')]
        a: PathBuf,
        #[arg(short = 'H', long = "hopf")]
        hopf: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_MALFORMED } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    let field = match cli.field.as_deref().map(str::parse::<Field>).transpose() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("qhopf: --field: {e}");
            return ExitCode::from(EXIT_MALFORMED as u8);
        }
    };
    let report: RunReport = match &cli.command {
        Command::Verify { file, hopf } => commands::verify(file, hopf.as_deref(), field),
        Command::Smash { a, hopf, out } => commands::smash(a, hopf, out, field),
        Command::Decompose { b, hopf, v, out, expect } => {
            let args = DecomposeArgs {
                b: b.clone(),
                h: hopf.clone(),
                v: v.clone(),
                out: out.clone(),
                expect: expect.clone(),
            };
            commands::decompose(&args, field, cli.timings)
        }
        Command::Roundtrip { a, hopf } => commands::roundtrip(a, hopf, field),
    };
    if cli.json {
        print!("{}", report.to_json_string(cli.timings));
    } else {
        print!("{}", report.human());
    }
    let mut code = report.exit_code();
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, report.to_json_string(cli.timings)) {
            eprintln!("qhopf: {}: {e}", path.display());
            code = EXIT_MALFORMED;
        }
    }
    ExitCode::from(code as u8)
}
