use clap::{Args, Parser, Subcommand};
use halo2d::survey::{run, Command, Config};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "halo2d", version, about = "Three-boson bound states in two dimensions")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args)]
struct Common {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Worker threads (results do not depend on it).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Sub {
    /// Scattering length and pair energies.
    TwoBody(Common),
    /// Hyperangular eigenvalues along ρ.
    AngularScan(Common),
    /// Zero-range eigenvalues λₙ(ρ/a).
    ZeroRangeLambda(Common),
    /// Lowest three-dimensional zero-range eigenvalue.
    Efimov3d(Common),
    /// Effective potential and the two zero-range wave functions.
    Fig1(Common),
    /// Three-body levels of one potential.
    Spectrum(Common),
    /// Energy ratios along a strength sweep.
    Fig2Sweep(Common),
    /// Label (S1, S2) cells as bound, Borromean or unbound.
    BorromeanScan(Common),
    /// Count zero-energy nodes out to large ρ.
    NoThirdState(Common),
}

fn split(sub: Sub) -> (Command, Common) {
    match sub {
        Sub::TwoBody(c) => (Command::TwoBody, c),
        Sub::AngularScan(c) => (Command::AngularScan, c),
        Sub::ZeroRangeLambda(c) => (Command::ZeroRangeLambda, c),
        Sub::Efimov3d(c) => (Command::Efimov3d, c),
        Sub::Fig1(c) => (Command::Fig1, c),
        Sub::Spectrum(c) => (Command::Spectrum, c),
        Sub::Fig2Sweep(c) => (Command::Fig2Sweep, c),
        Sub::BorromeanScan(c) => (Command::BorromeanScan, c),
        Sub::NoThirdState(c) => (Command::NoThirdState, c),
    }
}

fn diagnostics(out: &Path, command: Command, sha: &str, err: &halo2d::Error) {
    let body = serde_json::json!({
        "command": command.name(),
        "config_sha256": sha,
        "error": err.to_string(),
        "debug": format!("{err:?}"),
        "exit_code": err.exit_code(),
    });
    let path = out.join("diagnostics.json");
    if let Err(e) = std::fs::create_dir_all(out).and_then(|_| std::fs::write(&path, format!("{body:#}\n"))) {
        eprintln!("halo2d: cannot write {}: {e}", path.display());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = split(cli.command);
    let fail = |e: &halo2d::Error| {
        eprintln!("halo2d {}: {e}", command.name());
        ExitCode::from(e.exit_code() as u8)
    };
    if let Some(n) = common.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("halo2d: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let cfg = match Config::from_file(&common.config) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    match run(command, &cfg) {
        Ok(files) => {
            if let Err(e) = std::fs::create_dir_all(&common.out) {
                return fail(&e.into());
            }
            for f in files {
                let path = common.out.join(&f.name);
                if let Err(e) = std::fs::write(&path, &f.contents) {
                    return fail(&e.into());
                }
                println!("{}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if e.exit_code() == 3 {
                diagnostics(&common.out, command, cfg.sha256(), &e);
            }
            fail(&e)
        }
    }
}
