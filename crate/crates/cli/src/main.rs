use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use trispec_cli::{
    emit_triangular, load_algebra, run_job, Emit, FieldChoice, InputKind, JobSpec, Report,
};
use trispec_core::hochcomplex::DEFAULT_ORACLE_BUDGET;

/// Hochschild cohomology of triangular algebras, page by page.
#[derive(Parser, Debug)]
#[command(name = "trispec", version)]
struct Args {
    /// Quiver, triangular or simplicial input file; `-` reads stdin.
    input: PathBuf,

    /// Input format; detected from the first keyword when omitted.
    #[arg(long)]
    kind: Option<InputKind>,

    /// `rat` or `fp:<p>`.
    #[arg(long, default_value = "rat")]
    field: FieldChoice,

    /// Report HH^0 .. HH^{L-1}.
    #[arg(long, default_value_t = 4)]
    max_degree: usize,

    /// Comma-separated: pages, hochschild, e1-structure, oracle-check,
    /// degeneration-check.
    #[arg(long, value_delimiter = ',', default_value = "hochschild")]
    report: Vec<Report>,

    /// `table` or `tsv`.
    #[arg(long, default_value = "table")]
    emit: Emit,

    /// Largest number of matrix entries the bar oracle may store.
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
    oracle_budget: u64,

    /// Print the input as an explicit triangular file and exit.
    #[arg(long)]
    print_algebra: bool,
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return ExitCode::from(1);
        }
    };
    if args.print_algebra {
        return match load_algebra(args.kind, &text) {
            Ok(t) => {
                print!("{}", emit_triangular(&t));
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code())
            }
        };
    }
    let spec = JobSpec {
        kind: args.kind,
        field: args.field,
        max_degree: args.max_degree,
        reports: args.report,
        emit: args.emit,
        oracle_budget: args.oracle_budget,
    };
    match run_job(&spec, &text) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
