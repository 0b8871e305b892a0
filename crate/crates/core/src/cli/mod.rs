//! `vqc` command-line pipeline: prep → train → eval / kernel → report.
//!
//! Every stage reads the same JSON run config and writes into its output
//! directory. Files are never overwritten unless `--force` is given.

mod artifacts;
mod commands;
mod config;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use artifacts::{
    OutputDir, CONFIG_ECHO, KERNEL_TEST, KERNEL_TRAIN, LOSS_HISTORY, METRICS, MODEL, PREDICTIONS,
    PREP, REPORT, SCATTER, SPLIT,
};
pub use commands::{
    load_prepared, read_loss_history, run_eval, run_kernel, run_prep, run_report, run_train,
    ModelArtifact, PreparedData, ReportSummary, SplitManifest, TrainingSummary,
};
pub use config::{ClassifierConfig, DataConfig, PrepConfig, RunConfig};

use crate::error::{Error, Result};
use crate::synth;

#[derive(Debug, Parser)]
#[command(
    name = "vqc",
    version,
    about = "Variational quantum classifier pipeline"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct StageArgs {
    /// Run config (JSON).
    #[arg(short, long)]
    pub config: PathBuf,
    /// Overwrite existing artifacts.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit encoding, split, PCA and min-max; writes prep.json and split.json.
    Prep(StageArgs),
    /// Train the classifier with SPSA; writes model.json and loss_history.csv.
    Train(StageArgs),
    /// Score the held-out split; writes metrics.json, predictions.csv, scatter2d.csv.
    Eval(StageArgs),
    /// Export train×train and test×train fidelity kernels.
    Kernel(StageArgs),
    /// Run any missing stage, then write config.json and report.json.
    Report(StageArgs),
    /// Print or write a run config with default settings.
    Template {
        #[arg(long)]
        data: String,
        #[arg(long, default_value = "class")]
        label: String,
        #[arg(long, default_value = "P")]
        positive: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Write a seeded synthetic CSV.
    #[command(subcommand)]
    Synth(SynthCommand),
}

#[derive(Debug, Subcommand)]
pub enum SynthCommand {
    /// Two Gaussian blobs; label column `label` with values AD / NON_AD.
    Blobs {
        #[arg(long, default_value_t = 40)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        dim: usize,
        #[arg(long, default_value_t = 3.0)]
        separation: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        force: bool,
    },
    /// Table with the handwriting dataset's layout; class column `class` with P / H.
    Handwriting {
        #[arg(long, default_value_t = 89)]
        patients: usize,
        #[arg(long, default_value_t = 85)]
        healthy: usize,
        #[arg(long, default_value_t = 1.0)]
        effect: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        force: bool,
    },
}

/// Parses `std::env::args`, runs the command and returns the exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn stage(args: &StageArgs) -> Result<(RunConfig, OutputDir)> {
    let cfg = RunConfig::load(&args.config)?;
    let out = OutputDir::new(cfg.output_path(), args.force);
    Ok((cfg, out))
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Prep(a) => {
            let (cfg, out) = stage(&a)?;
            let m = run_prep(&cfg, &out)?;
            println!(
                "prep: {} rows, {} train / {} test -> {}",
                m.n_rows,
                m.train_indices.len(),
                m.test_indices.len(),
                out.root().display()
            );
        }
        Command::Train(a) => {
            let (cfg, out) = stage(&a)?;
            let run = run_train(&cfg, &out)?;
            match run.loss_history.last() {
                Some(l) => println!(
                    "train: {} iterations, final loss {l:.6}",
                    run.loss_history.len()
                ),
                None => println!("train: 0 iterations"),
            }
        }
        Command::Eval(a) => {
            let (cfg, out) = stage(&a)?;
            let r = run_eval(&cfg, &out)?;
            println!(
                "eval: {} samples, accuracy {:.4}",
                r.n_samples, r.ad.accuracy
            );
        }
        Command::Kernel(a) => {
            let (cfg, out) = stage(&a)?;
            run_kernel(&cfg, &out)?;
            println!("kernel: wrote {KERNEL_TRAIN} and {KERNEL_TEST}");
        }
        Command::Report(a) => {
            let (cfg, out) = stage(&a)?;
            let s = run_report(&cfg, &out, a.force)?;
            println!(
                "report: accuracy {:.4} -> {}",
                s.test_accuracy,
                out.root().display()
            );
        }
        Command::Template {
            data,
            label,
            positive,
            out,
            force,
        } => {
            let cfg = RunConfig::template(&data, &label, &positive);
            let text = serde_json::to_string_pretty(&cfg)
                .map_err(|e| Error::json("<template>", e))?
                + "\n";
            match out {
                Some(p) => write_file(&p, text.as_bytes(), force)?,
                None => print!("{text}"),
            }
        }
        Command::Synth(SynthCommand::Blobs {
            n,
            dim,
            separation,
            seed,
            out,
            force,
        }) => {
            let ds = synth::gaussian_blobs(n, dim, separation, seed)?;
            write_file(
                &out,
                synth::dataset_to_csv(&ds, "AD", "NON_AD").as_bytes(),
                force,
            )?;
        }
        Command::Synth(SynthCommand::Handwriting {
            patients,
            healthy,
            effect,
            seed,
            out,
            force,
        }) => {
            write_file(
                &out,
                synth::handwriting_like_csv(patients, healthy, effect, seed).as_bytes(),
                force,
            )?;
        }
    }
    Ok(())
}

fn write_file(path: &Path, bytes: &[u8], force: bool) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| Error::Config(format!("{} is not a file path", path.display())))?;
    OutputDir::new(dir, force).write(name, bytes)
}
