use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gcstack_cli::{
    exit_code, load_conventions, load_report, render, run_path, Format, RunOptions, SceneError, TaskKind,
    EXIT_MALFORMED, EXIT_PASS,
};

#[derive(Parser)]
#[command(name = "gcstack", version, about = "Exact checks for generalized complex and stacky structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Shared {
    /// Scene file (JSON).
    scene: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Sample points for fiberwise certifications (default 5).
    #[arg(long)]
    samples: Option<usize>,
    /// Also write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// JSON file overriding `nr_scale` and `delta_twist`.
    #[arg(long)]
    convention: Option<PathBuf>,
    /// Format printed on stdout.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a scene.
    Run(Shared),
    /// Generalized complex structure checks on constant or polynomial data.
    CheckGc(Shared),
    /// Lie algebroid axioms and the Chevalley–Eilenberg square.
    CheckAlgebroid(Shared),
    /// Closure and nondegeneracy of shifted two-forms.
    CheckShifted(Shared),
    /// Lagrangian structure on the atlas of a quotient stack.
    CheckLagrangian(Shared),
    /// Homotopy holomorphic structure equations by bidegree.
    CheckHhs(Shared),
    /// Holomorphic foliation candidates against an hhs structure.
    CheckFoliation(Shared),
    /// Coisotropic brane on a torus and its Lagrangian lift to the double.
    LiftBrane(Shared),
    /// Derived intersection of two linear Lagrangians.
    Intersect(Shared),
    /// Re-render a saved JSON report.
    Render {
        report: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn write_out(bytes: &[u8]) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(bytes);
}

fn execute(shared: Shared, only: Option<TaskKind>) -> i32 {
    let conventions = match shared.convention.as_deref().map(load_conventions).transpose() {
        Ok(c) => c,
        Err(e) => return malformed(&e),
    };
    let options = RunOptions { seed: shared.seed, samples: shared.samples, conventions, only };
    let result = run_path(&shared.scene, &options);
    match &result {
        Ok(report) => {
            write_out(&render(report, shared.format));
            if let Some(path) = &shared.json {
                if let Err(e) = std::fs::write(path, render(report, Format::Json)) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return EXIT_MALFORMED;
                }
            }
        }
        Err(e) => return malformed(e),
    }
    exit_code(&result)
}

fn malformed(e: &SceneError) -> i32 {
    eprintln!("error: {e}");
    EXIT_MALFORMED
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run(s) => execute(s, None),
        Command::CheckGc(s) => execute(s, Some(TaskKind::CheckGc)),
        Command::CheckAlgebroid(s) => execute(s, Some(TaskKind::CheckAlgebroid)),
        Command::CheckShifted(s) => execute(s, Some(TaskKind::CheckShifted)),
        Command::CheckLagrangian(s) => execute(s, Some(TaskKind::CheckLagrangian)),
        Command::CheckHhs(s) => execute(s, Some(TaskKind::CheckHhs)),
        Command::CheckFoliation(s) => execute(s, Some(TaskKind::CheckFoliation)),
        Command::LiftBrane(s) => execute(s, Some(TaskKind::LiftBrane)),
        Command::Intersect(s) => execute(s, Some(TaskKind::Intersect)),
        Command::Render { report, format } => match load_report(&report) {
            Ok(r) => {
                write_out(&render(&r, format));
                EXIT_PASS
            }
            Err(e) => malformed(&e),
        },
    };
    ExitCode::from(code as u8)
}
