use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use hminus_cli::{
    compare_optimizers, reference_table, render_comparison, run_preset, run_vqe, write_outputs, CliError,
    ExperimentConfig, PresetRun, Result,
};
use hminus_core::fermion::encode;
use hminus_core::hminus::fermion_hamiltonian;
use hminus_core::optimize::SpsaPerturbation;
use hminus_core::{Encoding, FermionOperator, Method, SignConvention, TwoBodySign};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EncodingArg {
    Jw,
    Bk,
    Parity,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SignsArg {
    Paper,
    Physical,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TwoBodyArg {
    Eq16,
    Eq18,
}

/// Variational ground-state search for the two-orbital H⁻ Hamiltonian.
#[derive(Debug, Parser)]
#[command(name = "hminus-vqe", version)]
struct Args {
    #[arg(long, value_enum, default_value = "jw")]
    encoding: EncodingArg,
    /// One-body integral signs: as printed (+0.5) or bound-state (−0.5).
    #[arg(long, value_enum, default_value = "physical")]
    signs: SignsArg,
    /// Sign of the Z0Z1 correlator: eq16 (+, from n0·n1) or eq18 (−).
    #[arg(long, value_enum, default_value = "eq16")]
    two_body_sign: TwoBodyArg,
    /// nelder-mead, powell or spsa.
    #[arg(long, default_value = "nelder-mead")]
    optimizer: String,
    /// Shots per energy evaluation; 0 evaluates exactly.
    #[arg(long, default_value_t = hminus_core::vqe::DEFAULT_SHOTS)]
    shots: u64,
    #[arg(long, default_value_t = 1)]
    depth: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    restarts: usize,
    /// Worker threads for restarts (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    max_iterations: Option<usize>,
    #[arg(long)]
    f_tolerance: Option<f64>,
    #[arg(long)]
    x_tolerance: Option<f64>,
    /// SPSA with the fixed ±π/2 shift instead of the decaying gain.
    #[arg(long)]
    spsa_half_pi: bool,
    /// Evaluate a fixed-angle preset instead of optimizing.
    #[arg(long)]
    preset: Option<String>,
    /// Comma-separated methods to run side by side.
    #[arg(long, value_delimiter = ',')]
    compare: Option<Vec<String>>,
    /// Print the qubit Hamiltonian and exit.
    #[arg(long)]
    dump_hamiltonian: bool,
    /// Print the fermionic Hamiltonian and exit.
    #[arg(long)]
    dump_fermion: bool,
    /// Encode a fermion operator read from a file and print it.
    #[arg(long, value_name = "FILE")]
    encode_file: Option<PathBuf>,
    /// Directory for trace.csv, summary.json and the plot.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write convergence.svg (needs --out).
    #[arg(long)]
    plot: bool,
    /// Published table drawn on the plot: nelder-mead or cobyla-ibmqx2.
    #[arg(long)]
    overlay: Option<String>,
}

impl Args {
    fn config(&self) -> Result<ExperimentConfig> {
        let method: Method = self.optimizer.parse()?;
        let mut cfg = ExperimentConfig {
            encoding: match self.encoding {
                EncodingArg::Jw => Encoding::JordanWigner,
                EncodingArg::Bk => Encoding::BravyiKitaev,
                EncodingArg::Parity => Encoding::Parity,
            },
            sign_convention: match self.signs {
                SignsArg::Paper => SignConvention::PaperLiteral,
                SignsArg::Physical => SignConvention::Physical,
            },
            two_body_sign: match self.two_body_sign {
                TwoBodyArg::Eq16 => TwoBodySign::Plus,
                TwoBodyArg::Eq18 => TwoBodySign::Minus,
            },
            shots: self.shots,
            depth: self.depth,
            seed: self.seed,
            restarts: self.restarts,
            jobs: self.jobs,
            ..ExperimentConfig::default()
        };
        cfg.optimizer.method = method;
        if let Some(n) = self.max_iterations {
            cfg.optimizer.max_iterations = n;
        }
        if let Some(t) = self.f_tolerance {
            cfg.optimizer.f_tolerance = t;
        }
        if let Some(t) = self.x_tolerance {
            cfg.optimizer.x_tolerance = t;
        }
        if self.spsa_half_pi {
            cfg.optimizer.spsa.perturbation = SpsaPerturbation::HalfPiShift;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(args: &Args) -> Result<()> {
    let cfg = args.config()?;
    if args.plot && args.out.is_none() {
        return Err(CliError::Usage("--plot needs --out".into()));
    }

    if args.dump_hamiltonian {
        print!("{}", cfg.hamiltonian()?);
        return Ok(());
    }
    if args.dump_fermion {
        print!("{}", fermion_hamiltonian(&cfg.spec().integrals, cfg.two_body_sign));
        return Ok(());
    }
    if let Some(path) = &args.encode_file {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
        let op: FermionOperator = text.parse()?;
        print!("{}", encode(&op, cfg.encoding)?);
        return Ok(());
    }
    if let Some(name) = &args.preset {
        let report = run_preset(&PresetRun::find(name)?, &cfg)?;
        print!("{}", report.render());
        if let Some(dir) = &args.out {
            fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display().to_string(), e))?;
            let path = dir.join("preset.json");
            fs::write(&path, serde_json::to_string_pretty(&report)? + "\n")
                .map_err(|e| CliError::io(path.display().to_string(), e))?;
        }
        return Ok(());
    }
    if let Some(names) = &args.compare {
        let methods = names.iter().map(|n| n.trim().parse::<Method>()).collect::<Result<Vec<_>, _>>()?;
        let rows = compare_optimizers(&cfg, &methods)?;
        let table = render_comparison(&rows, cfg.hamiltonian()?.min_eigenvalue()?)?;
        print!("{table}");
        if let Some(dir) = &args.out {
            fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display().to_string(), e))?;
            let path = dir.join("comparison.csv");
            fs::write(&path, table).map_err(|e| CliError::io(path.display().to_string(), e))?;
        }
        return Ok(());
    }

    let overlay = args.overlay.as_deref().map(reference_table).transpose()?;
    let outcome = run_vqe(&cfg)?;
    if let Some(dir) = &args.out {
        write_outputs(dir, &outcome, args.plot, overlay.as_ref())?;
    }
    println!("{}", serde_json::to_string_pretty(&outcome.summary)?);
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
