use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use nematic_core::suite::{self, SuitePreset};
use nematic_core::{
    check_energy, check_gronwall, check_uniqueness, config_hash, parse_config, run_twin, simulate,
    write_trace, EntropyTrace, Error, ExperimentConfig, RunManifest, Workers,
};

const TRACE_FILE: &str = "trace.csv";
const MANIFEST_FILE: &str = "manifest.json";

/// Compressible nematic flow simulations and relative-entropy verification.
#[derive(Parser)]
#[command(name = "nematic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// JSON experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Directory receiving trace.csv and manifest.json.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the candidate trajectory alone.
    Simulate(RunArgs),
    /// Evolve reference and candidate and record the entropy trace.
    Twin(RunArgs),
    /// Twin run followed by the Gronwall bound check.
    Gronwall(RunArgs),
    /// Entropy collapse under grid refinement.
    Uniqueness {
        #[command(flatten)]
        run: RunArgs,
        /// Candidate node counts, coarse to fine.
        #[arg(long, value_delimiter = ',', default_value = "65,129,257")]
        levels: Vec<usize>,
    },
    /// Twin run followed by the discrete energy inequality check.
    Energy(RunArgs),
    /// Built-in acceptance battery.
    Suite {
        #[arg(long, default_value = "gl-smoke")]
        preset: String,
        /// Directory receiving manifest.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    if e.is_solver_abort() {
        3
    } else {
        2
    }
}

fn load(path: &Path) -> Result<(ExperimentConfig, String), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config("<file>", format!("cannot read {}: {e}", path.display())))?;
    let cfg = parse_config(&text)?;
    let hash = config_hash(&cfg);
    Ok((cfg, hash))
}

struct Output {
    dir: PathBuf,
    manifest: RunManifest,
    started: Instant,
}

impl Output {
    fn new(dir: &Path, hash: String) -> Result<Self, Error> {
        std::fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            manifest: RunManifest::new(hash),
            started: Instant::now(),
        })
    }

    fn trace(&mut self, trace: &EntropyTrace) -> Result<(), Error> {
        let path = self.dir.join(TRACE_FILE);
        write_trace(trace, &path)?;
        self.manifest.outputs.push(path.display().to_string());
        println!("trace: {}", path.display());
        Ok(())
    }

    fn check(&mut self, name: &str, passes: bool) {
        self.manifest.checks.insert(name.to_string(), passes);
        println!("{}: {}", name, if passes { "PASS" } else { "FAIL" });
    }

    fn finish(mut self) -> Result<u8, Error> {
        self.manifest.wall_clock_seconds = self.started.elapsed().as_secs_f64();
        let path = self.dir.join(MANIFEST_FILE);
        self.manifest.outputs.push(path.display().to_string());
        self.manifest.write(&path)?;
        Ok(if self.manifest.all_pass() { 0 } else { 1 })
    }
}

fn summary(trace: &EntropyTrace) {
    if let (Some(first), Some(last)) = (trace.samples.first(), trace.samples.last()) {
        println!(
            "samples {}  t_end {}  energy {} -> {}",
            trace.samples.len(),
            last.t,
            first.energy_candidate,
            last.energy_candidate
        );
    }
    if let Some(sup) = trace.sup_entropy() {
        println!("sup entropy {sup:e}");
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Simulate(args) => {
            let (cfg, hash) = load(&args.config)?;
            let mut out = Output::new(&args.out, hash)?;
            let trace = simulate(&cfg)?;
            summary(&trace);
            out.trace(&trace)?;
            out.finish()
        }
        Command::Twin(args) => {
            let (cfg, hash) = load(&args.config)?;
            let mut out = Output::new(&args.out, hash)?;
            let trace = run_twin(&cfg)?;
            summary(&trace);
            out.trace(&trace)?;
            out.finish()
        }
        Command::Gronwall(args) => {
            let (cfg, hash) = load(&args.config)?;
            let mut out = Output::new(&args.out, hash)?;
            let trace = run_twin(&cfg)?;
            summary(&trace);
            out.trace(&trace)?;
            let r = check_gronwall(&trace, &cfg.gronwall)?;
            println!(
                "minimal c_h {}  worst t {}  c_h {:?}",
                r.minimal_c_h, r.worst_time, r.c_h
            );
            out.check("gronwall", r.passes);
            out.finish()
        }
        Command::Energy(args) => {
            let (cfg, hash) = load(&args.config)?;
            let mut out = Output::new(&args.out, hash)?;
            let trace = run_twin(&cfg)?;
            summary(&trace);
            out.trace(&trace)?;
            let r = check_energy(&trace, nematic_core::verifier::ENERGY_TOLERANCE)?;
            println!(
                "max excess {:e}  relative {:e}",
                r.max_excess, r.relative_excess
            );
            if let Some(v) = &r.first_violation {
                println!(
                    "first violation: {} trajectory, sample {} (t = {})",
                    v.trajectory, v.index, v.t
                );
            }
            out.check("energy", r.passes);
            out.finish()
        }
        Command::Uniqueness { run, levels } => {
            let (cfg, hash) = load(&run.config)?;
            let mut out = Output::new(&run.out, hash)?;
            let r = check_uniqueness(&cfg, &levels, Workers::from_env())?;
            for l in &r.levels {
                println!(
                    "n {:>6}  dx {:e}  dt {:e}  sup entropy {:e}",
                    l.n, l.dx, l.dt, l.sup_entropy
                );
            }
            if r.exact {
                println!("entropy at round-off on every level");
            } else {
                println!("orders {:?}", r.orders);
            }
            out.check("uniqueness", r.passes);
            out.finish()
        }
        Command::Suite { preset, out } => {
            let preset = SuitePreset::parse(&preset)?;
            let started = Instant::now();
            let report = suite::run(preset, Workers::from_env());
            for o in &report.outcomes {
                println!(
                    "{} {}: {}",
                    if o.passes { "PASS" } else { "FAIL" },
                    o.name,
                    o.detail
                );
            }
            for e in &report.errors {
                println!("ERROR {} ({:?}): {}", e.name, e.kind, e.message);
            }
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir)?;
                let mut m = RunManifest::new(format!("suite:{}", preset.name()));
                m.wall_clock_seconds = started.elapsed().as_secs_f64();
                for o in &report.outcomes {
                    m.checks.insert(o.name.clone(), o.passes);
                }
                for e in &report.errors {
                    m.checks.insert(e.name.clone(), false);
                }
                let path = dir.join(MANIFEST_FILE);
                m.outputs.push(path.display().to_string());
                m.write(&path)?;
            }
            Ok(report.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
