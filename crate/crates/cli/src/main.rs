mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::json;

use crate::config::ToleranceConfig;

#[derive(Parser)]
#[command(
    name = "milnor",
    version,
    about = "Euler classes of surface group representations in PSL(2,R)"
)]
struct Cli {
    /// JSON file with tolerances, jorgensen_depth and seed.
    #[arg(long, global = true, env = "MILNOR_CONFIG")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euler class and parity of a representation file.
    Euler { rep: PathBuf },
    /// Sign of the SL(2,R) commutator product.
    Parity { rep: PathBuf },
    /// Exact invariants of a signature such as "0;2,3,7".
    Siginfo {
        signature: String,
        /// Multiplier for the genus bounds.
        #[arg(long, default_value_t = 1)]
        n: u64,
    },
    /// All cocompact signatures with 0 < e <= K.
    Enumerate {
        #[arg(long)]
        euler_max: u64,
    },
    /// Order of the central lift generator in the abelianized lifted group.
    OracleZ { signature: String },
    /// Whether the SL(2,R) lift generator dies in the abelianization.
    OracleH { signature: String },
    /// Explicit generators of a Fuchsian group with the given signature.
    Realize {
        signature: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Representation of genus g with Euler class k.
    Construct(ConstructArgs),
    /// Deform a representation along its first handle.
    Perturb(PerturbArgs),
    /// Relation residual, Euler class, parity consistency and Jørgensen scan.
    Verify {
        rep: PathBuf,
        #[arg(long)]
        jorgensen_depth: Option<usize>,
    },
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    genus: usize,
    #[arg(long, allow_negative_numbers = true)]
    euler: i64,
    /// Make the images of a1 and b1 elliptic (requires |k| <= 2g-3).
    #[arg(long)]
    elliptic_first: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["snap", "t"])))]
struct PerturbArgs {
    rep: PathBuf,
    /// Snap a1 to the nearest finite-order rotation.
    #[arg(long)]
    snap: bool,
    /// Deformation parameter when not snapping.
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    #[arg(long, default_value_t = 64)]
    qmax: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Where to write the witness word of a snap.
    #[arg(long)]
    witness: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.render().to_string();
            return commands::fail("Usage", message.trim(), commands::EXIT_INVALID);
        }
    };
    let config = match &cli.config {
        Some(path) => match ToleranceConfig::load(path) {
            Ok(c) => c,
            Err(e) => return commands::fail_with(&e),
        },
        None => ToleranceConfig::default(),
    };
    let outcome = commands::run(&cli.command, &config);
    match outcome {
        Ok(report) => {
            let mut body = json!({ "version": milnor::VERSION, "config": config });
            let status = report.status;
            if let (Some(target), serde_json::Value::Object(fields)) =
                (body.as_object_mut(), report.body)
            {
                target.extend(fields);
            }
            let text = serde_json::to_string_pretty(&body).expect("report serializes");
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(status)
        }
        Err(f) => commands::fail_failure(&f),
    }
}
