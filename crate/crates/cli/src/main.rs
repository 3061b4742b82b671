//! Command line front end: classify germs, compute normal forms, plot the
//! singular value set and run batch sweeps.

mod batch;
mod document;
mod error;
mod plot;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use corank2::num::set_float_tolerance;

use crate::batch::{run_batch, BatchConfig};
use crate::document::parse_document;
use crate::error::CliError;
use crate::plot::{plot_singular_image, PlotConfig};
use crate::report::{classify_exact, classify_float, normal_form_report, Format};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Machine => Format::Machine,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "corank2",
    about = "Recognition of sharksfin and deltoid singularities of planar map germs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a germ, umbrella or motion document.
    Classify {
        file: PathBuf,
        /// Truncation order of the jet computation.
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Arithmetic for the verdict path.
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Zero-test tolerance for floating arithmetic.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Compute the SO(2) normal form and its cusp invariants.
    NormalForm {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Plot the image of the singular set as SVG plus a polyline file.
    Plot {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Half-width of the source window.
        #[arg(long, default_value_t = 0.5)]
        window: f64,
        /// Grid cells per side.
        #[arg(long, default_value_t = 400)]
        resolution: usize,
        /// Output SVG path; the polyline file uses the same stem with .txt.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every .germ document in a directory.
    Batch {
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify {
            file,
            order,
            mode,
            tolerance,
            format,
        } => {
            if let Some(tol) = tolerance {
                set_float_tolerance(tol);
            }
            let name = file_name(&file);
            let text = std::fs::read_to_string(&file)?;
            let doc = parse_document(&text)?;
            let report = match mode {
                ModeArg::Exact => classify_exact(&doc, &name, order)?,
                ModeArg::Float => classify_float(&doc, &name, order)?,
            };
            print!("{}", report.render(format.into()));
            Ok(())
        }
        Command::NormalForm {
            file,
            order,
            tolerance,
            format,
        } => {
            if let Some(tol) = tolerance {
                set_float_tolerance(tol);
            }
            let name = file_name(&file);
            let text = std::fs::read_to_string(&file)?;
            let doc = parse_document(&text)?;
            let report = normal_form_report(&doc, &name, order)?;
            print!("{}", report.render(format.into()));
            Ok(())
        }
        Command::Plot {
            file,
            order,
            window,
            resolution,
            out,
        } => {
            let text = std::fs::read_to_string(&file)?;
            let doc = parse_document(&text)?;
            let svg_path = out.unwrap_or_else(|| file.with_extension("svg"));
            let txt_path = svg_path.with_extension("txt");
            let cfg = PlotConfig {
                window,
                resolution,
                order,
            };
            let summary = plot_singular_image(&doc, &cfg, &svg_path, &txt_path)?;
            println!(
                "verdict {}; wrote {} ({} arcs, {} points) and {}",
                summary.verdict,
                svg_path.display(),
                summary.polylines,
                summary.points,
                txt_path.display()
            );
            Ok(())
        }
        Command::Batch {
            dir,
            workers,
            order,
            format,
        } => {
            let cfg = BatchConfig {
                workers,
                order,
                format: format.into(),
            };
            let out = run_batch(&dir, &cfg)?;
            print!("{}", out);
            Ok(())
        }
    }
}

fn file_name(path: &PathBuf) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::FAILURE
        }
    }
}
