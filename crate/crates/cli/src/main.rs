use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gramkit_cli::{run_file, RunOptions};

/// Separated partitions and finite-section spectral profiles of Gramians.
#[derive(Debug, Parser)]
#[command(name = "gramkit", version)]
struct Args {
    /// JSON run configuration.
    config: PathBuf,

    /// Write outputs here instead of the directory named in the config.
    #[arg(long)]
    out_dir: Option<PathBuf>,

    /// Seed for `random_vectors` spaces.
    #[arg(long)]
    seed: Option<u64>,

    /// Suppress the summary on stdout.
    #[arg(long, short)]
    quiet: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let options = RunOptions {
        out_dir: args.out_dir,
        seed: args.seed,
    };
    match run_file(&args.config, &options) {
        Ok(out) => {
            let doc = &out.document;
            for w in &doc.warnings {
                eprintln!("warning: {}", w.message);
            }
            if !args.quiet {
                println!("space      {}", doc.space);
                println!("N          {}", doc.n);
                println!("gamma      {}", doc.separation.gamma);
                println!("classes    {}", doc.partition.class_count);
                println!("max degree {} (bound {})", doc.enemy_graph.max_degree, doc.degree_bound);
                println!("C (schur)  {}", doc.bessel.schur);
                for s in &doc.profile {
                    println!("N = {:<6} lambda_min = {:<24e} lambda_max = {:e}", s.n, s.lambda_min, s.lambda_max);
                }
                println!("wrote {}", out.dir.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
