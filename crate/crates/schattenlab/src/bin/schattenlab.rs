//! Thin command-line front end over the experiment runner. All computation
//! lives in the library; this binary only parses arguments, fans out specs,
//! and maps verdicts to exit codes (0 pass/info, 1 fail, 2 error).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use schattenlab::runner::{self, EmitFormat, ExperimentSpec, Verdict, ALL_KINDS};

#[derive(Parser)]
#[command(name = "schattenlab", version, about = "Tensor-norm experiment runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunOptions {
    /// Output root for result directories.
    #[arg(long, env = "SCHATTENLAB_OUT", default_value = "results")]
    out: PathBuf,
    /// Overrides the seed in the spec file(s).
    #[arg(long)]
    seed: Option<u64>,
    /// Number of specs run concurrently.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output format; repeat for several (csv, json, table, plot).
    #[arg(long = "format", value_parser = parse_format)]
    formats: Vec<EmitFormat>,
}

fn parse_format(s: &str) -> Result<EmitFormat, String> {
    EmitFormat::parse(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment spec file.
    Run {
        spec_file: PathBuf,
        #[command(flatten)]
        options: RunOptions,
    },
    /// Run every *.exp spec in a directory, in sorted order.
    Suite {
        dir: PathBuf,
        #[command(flatten)]
        options: RunOptions,
    },
    /// List the available experiment kinds and their required keys.
    ListKinds,
    /// Parse and validate a spec file without running it.
    Validate { spec_file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(worst) => match worst {
            Verdict::Pass | Verdict::Info => ExitCode::from(0),
            Verdict::Fail => ExitCode::from(1),
        },
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> schattenlab::Result<Verdict> {
    match cli.command {
        Command::Run { spec_file, options } => {
            let spec = load_spec(&spec_file, options.seed)?;
            run_specs(vec![spec], &options)
        }
        Command::Suite { dir, options } => {
            let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "exp"))
                .collect();
            paths.sort();
            if paths.is_empty() {
                return Err(schattenlab::Error::Validation(format!(
                    "no *.exp specs found in {}",
                    dir.display()
                )));
            }
            let specs = paths
                .iter()
                .map(|p| load_spec(p, options.seed))
                .collect::<schattenlab::Result<Vec<_>>>()?;
            run_specs(specs, &options)
        }
        Command::ListKinds => {
            for kind in ALL_KINDS {
                println!("{:<22} keys: {}", kind.name(), kind.required_keys().join(", "));
            }
            Ok(Verdict::Info)
        }
        Command::Validate { spec_file } => {
            let spec = ExperimentSpec::parse_file(&spec_file)?;
            println!("ok: {} (kind {}, seed {})", spec.name, spec.kind.name(), spec.seed);
            Ok(Verdict::Info)
        }
    }
}

fn load_spec(path: &PathBuf, seed_override: Option<u64>) -> schattenlab::Result<ExperimentSpec> {
    let mut spec = ExperimentSpec::parse_file(path)?;
    if let Some(seed) = seed_override {
        spec.seed = seed;
    }
    Ok(spec)
}

fn run_specs(specs: Vec<ExperimentSpec>, options: &RunOptions) -> schattenlab::Result<Verdict> {
    let formats = if options.formats.is_empty() {
        vec![EmitFormat::Csv, EmitFormat::Json]
    } else {
        options.formats.clone()
    };
    let jobs = options.jobs.max(1);
    let mut results = Vec::with_capacity(specs.len());
    // Fixed-size chunks keep emission order deterministic regardless of
    // thread scheduling.
    for chunk in specs.chunks(jobs) {
        let handles: Vec<_> = chunk
            .iter()
            .cloned()
            .map(|spec| std::thread::spawn(move || runner::run(&spec)))
            .collect();
        for handle in handles {
            results.push(handle.join().expect("runner thread panicked")?);
        }
    }
    let mut worst = Verdict::Info;
    for result in &results {
        let dir = runner::emit_to_dir(result, &options.out, &formats)?;
        println!(
            "{:<24} {:<6} ({} rows, {:.3}s) -> {}",
            result.spec.name,
            result.verdict.name(),
            result.rows.len(),
            result.wall_time,
            dir.display()
        );
        worst = match (worst, result.verdict) {
            (_, Verdict::Fail) | (Verdict::Fail, _) => Verdict::Fail,
            (_, Verdict::Pass) | (Verdict::Pass, _) => Verdict::Pass,
            _ => Verdict::Info,
        };
    }
    Ok(worst)
}
