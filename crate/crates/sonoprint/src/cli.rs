use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands;
use crate::config::{ExperimentConfig, FeatureChoice};
use crate::error::{AppError, AppResult};

#[derive(Parser, Debug)]
#[command(name = "sonoprint", version, about = "Fingerprint audio devices from their recordings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Config file plus `key=value` overrides, applied in order.
#[derive(Args, Debug)]
struct ConfigArgs {
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Override one config key, e.g. `--set classifier=knn`.
    #[arg(short = 's', long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Output directory.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

impl ConfigArgs {
    fn resolve(&self) -> AppResult<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        for o in &self.overrides {
            cfg.apply_override(o)?;
        }
        if let Some(out) = &self.out {
            cfg.out = out.clone();
        }
        Ok(cfg)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Extract features from WAV files into CSV.
    Extract {
        inputs: Vec<PathBuf>,
        /// Codes 1-15, comma separated, or `all`.
        #[arg(short, long, default_value = "all")]
        features: String,
        #[arg(long, conflicts_with = "label_from_dir")]
        label: Option<String>,
        /// Use each file's directory name as its label.
        #[arg(long)]
        label_from_dir: bool,
        /// CSV destination; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Render a corpus through virtual devices.
    Simulate(ConfigArgs),
    /// Split, train, test and write a report.
    Evaluate(ConfigArgs),
    /// Run forward feature selection.
    Select(ConfigArgs),
    /// Train one model on the whole corpus.
    Train {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(short, long)]
        model: PathBuf,
    },
    /// Predict the device behind a clip or a feature CSV.
    Classify {
        #[arg(short, long)]
        model: PathBuf,
        input: PathBuf,
    },
    /// Summarize reports along one config key.
    Report {
        inputs: Vec<PathBuf>,
        /// Config key on the x axis, e.g. `train_per_class`.
        #[arg(short, long)]
        axis: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also write an SVG chart here.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
}

fn sink(path: Option<&PathBuf>) -> AppResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| AppError::io(p, e))?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn run<I, T>(args: I) -> AppResult<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return Ok(());
        }
        Err(e) => return Err(AppError::usage(e.render().to_string().trim_end().to_string())),
    };
    match cli.command {
        Command::Extract {
            inputs,
            features,
            label,
            label_from_dir,
            out,
        } => {
            let features = FeatureChoice::parse(&features)?;
            let mut w = sink(out.as_ref())?;
            commands::cmd_extract(&inputs, &features, label.as_deref(), label_from_dir, &mut w)?;
            w.flush().map_err(|e| AppError::io("<output>", e))?;
        }
        Command::Simulate(args) => {
            let rows = commands::cmd_simulate(&args.resolve()?)?;
            eprintln!("wrote {} clips", rows.len());
        }
        Command::Evaluate(args) => {
            let doc = commands::cmd_evaluate(&args.resolve()?)?;
            let e = &doc.evaluation;
            println!(
                "avg_pr {:.4}  avg_re {:.4}  avg_f1 {:.4}  (best {} = {})",
                e.avg_pr,
                e.avg_re,
                e.avg_f1,
                if e.spec.classifier.name() == "knn" { "k" } else { "components" },
                e.best_parameter
            );
        }
        Command::Select(args) => {
            let result = commands::cmd_select(&args.resolve()?)?;
            let codes: Vec<String> = result.chosen.iter().map(|f| f.code().to_string()).collect();
            println!("selected [{}]  f1 {:.4}", codes.join(","), result.final_score);
        }
        Command::Train { config, model } => {
            commands::cmd_train(&config.resolve()?, &model)?;
        }
        Command::Classify { model, input } => {
            for label in commands::cmd_classify(&model, &input)? {
                println!("{label}");
            }
        }
        Command::Report { inputs, axis, out, plot } => {
            let mut w = sink(out.as_ref())?;
            commands::cmd_report(&inputs, &axis, &mut w, plot.as_deref())?;
            w.flush().map_err(|e| AppError::io("<output>", e))?;
        }
    }
    Ok(())
}
