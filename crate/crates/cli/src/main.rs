mod config;
mod error;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cnnw_core::parallel::ExecMode;
use cnnw_core::solver::{convergence_table, run_case, RunSpec};
use cnnw_core::spectral::{audit_theorem, dispersion_dissipation_curves, SpectralScheme};

use config::{Artifact, ConfigFile};
use error::CliError;

/// Environment variable that overrides the configured output directory.
const OUTPUT_DIR_ENV: &str = "CNNW_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "cnnw", version, about = "CPR/CNNW solver and spectral analysis")]
struct Cli {
    /// Worker threads for the data-parallel sweeps.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Deterministic single-threaded reference mode.
    #[arg(long, global = true)]
    reference: bool,

    /// Directory for written artifacts (beats the config and the environment).
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one case and dump its fields and reports.
    Run(ConfigArg),
    /// Refinement study on a case with a reference solution.
    Convergence {
        #[command(flatten)]
        config: ConfigArg,
        /// Cell counts per direction, coarse to fine.
        #[arg(long, value_delimiter = ',', required = true)]
        cells: Vec<usize>,
    },
    /// Dispersion and dissipation curves of a linear scheme.
    Spectra(SpectralArgs),
    /// Check the block-circulant eigenvalue structure.
    Audit {
        #[command(flatten)]
        spectral: SpectralArgs,
        /// Also eigensolve the assembled global matrix.
        #[arg(long)]
        dense: bool,
    },
}

#[derive(Debug, Args)]
struct ConfigArg {
    #[arg(long)]
    config: PathBuf,
}

#[derive(Debug, Args)]
struct SpectralArgs {
    /// CPR5, C5NNW5, C2NNW5, C2NNW2, WCNS3 or WCNS5.
    #[arg(long, default_value = "C5NNW5")]
    scheme: String,
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Number of cells `M`.
    #[arg(long, default_value_t = 40)]
    cells: usize,
}

impl Cli {
    fn exec(&self) -> ExecMode {
        if self.reference {
            ExecMode::Sequential
        } else {
            ExecMode::Parallel
        }
    }

    fn output_dir(&self, configured: Option<&Path>) -> PathBuf {
        self.output_dir
            .clone()
            .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
            .or_else(|| configured.map(Path::to_path_buf))
            .unwrap_or_else(|| PathBuf::from("output"))
    }
}

fn configure_threads(cli: &Cli) -> Result<(), CliError> {
    let Some(n) = cli.threads else { return Ok(()) };
    if n == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot set up the thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    eprintln!("cnnw: built without the parallel feature, ignoring --threads");
    Ok(())
}

fn prepare_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(CliError::io(dir))
}

fn write_effective(dir: &Path, spec: &RunSpec, cfg: &ConfigFile) -> Result<(), CliError> {
    let eff = ConfigFile::effective(spec, &cfg.output);
    let text = toml::to_string(&eff).map_err(|e| CliError::Usage(format!("cannot serialise configuration: {e}")))?;
    let path = dir.join("effective.toml");
    std::fs::write(&path, text).map_err(CliError::io(path))
}

fn cmd_run(cli: &Cli, path: &Path) -> Result<(), CliError> {
    let cfg = ConfigFile::load(path)?;
    let spec = cfg.to_spec(cli.exec())?;
    let dir = cli.output_dir(cfg.output.directory.as_deref());
    prepare_dir(&dir)?;
    write_effective(&dir, &spec, &cfg)?;

    let out = run_case(&spec)?;
    let dump = cfg.output.dump.clone().unwrap_or_else(|| Artifact::ALL.to_vec());
    for artifact in dump {
        match artifact {
            Artifact::Field => output::write_field(&dir.join("field.csv"), &out)?,
            Artifact::Norms => {
                output::write_norms(&dir.join("norms.csv"), &out)?;
            }
            Artifact::Conservation => {
                output::write_conservation(&dir.join("conservation.csv"), &out)?;
            }
            Artifact::Troubled => output::write_troubled(&dir.join("troubled.csv"), &out)?,
        }
    }

    println!(
        "{} {}: t = {} after {} steps, {} troubled cells",
        spec.case.name(),
        spec.scheme.label(spec.k),
        output::num(out.t),
        out.steps,
        out.final_troubled()
    );
    if let Some(e) = out.errors {
        println!("L1 {} L2 {} Linf {}", output::num(e.l1), output::num(e.l2), output::num(e.linf));
    }
    if let Some(c) = out.conservation.max_abs() {
        println!("max |<rho>| {}", output::num(c));
    }
    println!("artifacts in {}", dir.display());
    Ok(())
}

fn cmd_convergence(cli: &Cli, path: &Path, cells: &[usize]) -> Result<(), CliError> {
    let cfg = ConfigFile::load(path)?;
    let base = cfg.to_spec(cli.exec())?;
    if !base.case.has_reference() {
        return Err(CliError::Usage(format!(
            "case {} has no reference solution for a convergence study",
            base.case.name()
        )));
    }
    let dir = cli.output_dir(cfg.output.directory.as_deref());
    prepare_dir(&dir)?;
    write_effective(&dir, &base, &cfg)?;

    let mut levels = Vec::with_capacity(cells.len());
    for &n in cells {
        let mut spec = base.clone();
        spec.cells = (n, if base.case.dim() == 2 { n } else { 1 });
        let out = run_case(&spec)?;
        let dofs = n * (spec.k + 1);
        levels.push((dofs, out.errors.expect("case has a reference")));
    }
    let rows = convergence_table(&levels);
    output::write_convergence(&dir.join("convergence.csv"), &rows)?;
    println!("dofs,l2,linf,order_l2,order_linf");
    for r in &rows {
        println!("{}", output::convergence_record(r).join(","));
    }
    Ok(())
}

fn cmd_spectra(cli: &Cli, args: &SpectralArgs) -> Result<(), CliError> {
    let scheme = SpectralScheme::parse(&args.scheme)?;
    let curve = dispersion_dissipation_curves(scheme, args.k, args.cells, cli.exec())?;
    let dir = cli.output_dir(None);
    prepare_dir(&dir)?;
    let path = dir.join("spectra.csv");
    output::write_spectra(&path, &curve)?;
    println!(
        "{} with M = {}: {} samples, max Re {} -> {}",
        curve.scheme,
        curve.cells,
        curve.samples.len(),
        output::num(curve.max_real()),
        path.display()
    );
    Ok(())
}

fn cmd_audit(cli: &Cli, args: &SpectralArgs, dense: bool) -> Result<(), CliError> {
    let scheme = SpectralScheme::parse(&args.scheme)?;
    let audit = audit_theorem(scheme, args.k, args.cells, dense, cli.exec())?;
    let text = toml::to_string(&audit).map_err(|e| CliError::Usage(format!("cannot serialise audit: {e}")))?;
    print!("{text}");
    if audit.holds() {
        Ok(())
    } else {
        Err(CliError::Audit(format!("{} with M = {}", audit.scheme, audit.cells)))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads(&cli).and_then(|()| match &cli.command {
        Command::Run(c) => cmd_run(&cli, &c.config),
        Command::Convergence { config, cells } => cmd_convergence(&cli, &config.config, cells),
        Command::Spectra(args) => cmd_spectra(&cli, args),
        Command::Audit { spectral, dense } => cmd_audit(&cli, spectral, *dense),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cnnw: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
