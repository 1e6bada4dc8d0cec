use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use cellcollapse::VertexId;
use cellcollapse_cli::commands::{self, BasePoint, Outcome, Settings};
use cellcollapse_cli::io::write_text;
use cellcollapse_cli::{CliError, Result};
use clap::{ArgGroup, Args, Parser, Subcommand};

/// Collapses, non-evasiveness and discrete Morse matchings on simplicial and
/// cubical complexes.
#[derive(Parser, Debug)]
#[command(name = "cellcollapse", version)]
struct Cli {
    /// Seed for randomized choices.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for backtracking searches.
    #[arg(long, global = true, default_value_t = 200_000)]
    budget: usize,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Complex file; stdin when absent.
    #[arg(short, long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Output {
    /// Where to write the produced file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a gallery complex.
    Gallery {
        name: String,
        /// Parameters as key=value.
        #[arg(long = "param", num_args = 1.., value_parser = parse_kv)]
        params: Vec<(String, i64)>,
        #[command(flatten)]
        out: Output,
    },
    /// Print the f-vector and Euler characteristic.
    Fvector {
        #[command(flatten)]
        input: Input,
    },
    /// Iterated derived subdivision.
    Sd {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Search for a non-evasiveness certificate.
    Ne {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Search for a collapse onto a point or a subcomplex file.
    Collapse {
        #[arg(long, default_value = "point")]
        target: String,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Gradient matching of the distance to a base point.
    #[command(group(ArgGroup::new("base").required(true).args(["from_vertex", "from_point"])))]
    Morse {
        #[arg(long)]
        from_vertex: Option<VertexId>,
        /// Coordinates as "p/q,p/q,...".
        #[arg(long)]
        from_point: Option<String>,
        /// Compare the critical faces with the predicted pairs.
        #[arg(long)]
        check_bijection: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Collapse a CAT(0) cube complex onto a vertex.
    Cat0Collapse {
        /// Accepted for symmetry; the input must be cubical.
        #[arg(long)]
        cubical: bool,
        #[arg(long)]
        root: VertexId,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Non-evasiveness of sd^(d-2) of a star-shaped ball.
    StarCollapse {
        /// Star-center as "p/q,p/q,...".
        #[arg(long)]
        center: String,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Collapse the derived subdivision of a convex triangulation.
    ConvexCollapse {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Transfer a collapse of the input to the derived subdivision of a subdivision.
    Hudson {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        subdivision: PathBuf,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Replay a certificate.
    Verify {
        /// Complex file; the embedded complex when absent.
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Certificate file; stdin when absent.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
}

fn parse_kv(s: &str) -> std::result::Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got {s:?}"))?;
    let v = v.trim().parse::<i64>().map_err(|e| format!("{k}: {e}"))?;
    Ok((k.trim().to_string(), v))
}

fn run(cli: &Cli) -> Result<(Outcome, Option<&PathBuf>)> {
    let set = Settings { seed: cli.seed, budget: cli.budget };
    let inp = |i: &Input| i.input.clone();
    Ok(match &cli.command {
        Command::Gallery { name, params, out } => (commands::gallery(name, params)?, out.output.as_ref()),
        Command::Fvector { input } => (commands::fvector(inp(input).as_deref())?, None),
        Command::Sd { m, input, out } => (commands::sd(inp(input).as_deref(), *m)?, out.output.as_ref()),
        Command::Ne { input, out } => (commands::ne(inp(input).as_deref(), set)?, out.output.as_ref()),
        Command::Collapse { target, input, out } => {
            (commands::collapse(inp(input).as_deref(), target, set)?, out.output.as_ref())
        }
        Command::Morse { from_vertex, from_point, check_bijection, input } => {
            let base = match (from_vertex, from_point) {
                (Some(v), _) => BasePoint::Vertex(*v),
                (None, Some(p)) => BasePoint::Point(p.clone()),
                (None, None) => return Err(CliError::input("a base point is required")),
            };
            (commands::morse(inp(input).as_deref(), base, *check_bijection)?, None)
        }
        Command::Cat0Collapse { root, input, out, .. } => {
            (commands::cat0_collapse(inp(input).as_deref(), *root)?, out.output.as_ref())
        }
        Command::StarCollapse { center, input, out } => {
            (commands::star_collapse(inp(input).as_deref(), center, set)?, out.output.as_ref())
        }
        Command::ConvexCollapse { input, out } => {
            (commands::convex_collapse(inp(input).as_deref(), set)?, out.output.as_ref())
        }
        Command::Hudson { cert, subdivision, input, out } => {
            (commands::hudson(inp(input).as_deref(), cert, subdivision, set)?, out.output.as_ref())
        }
        Command::Verify { complex, cert } => (commands::verify(complex.as_ref(), cert.as_ref())?, None),
    })
}

fn emit_report(to_stdout: bool, text: &str) {
    if to_stdout {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((outcome, path)) => {
            // The report shares stdout only when no file goes there.
            let mut report_on_stdout = true;
            if let Some(doc) = &outcome.file {
                match path {
                    Some(p) => {
                        if let Err(e) = write_text(p, doc) {
                            eprintln!("error: {e}");
                            return ExitCode::from(3);
                        }
                    }
                    None => {
                        let mut out = std::io::stdout().lock();
                        let _ = writeln!(out, "{doc}");
                        report_on_stdout = false;
                    }
                }
            }
            if cli.json {
                emit_report(report_on_stdout, &outcome.report.to_string());
            } else {
                for line in &outcome.lines {
                    emit_report(report_on_stdout, line);
                }
            }
            ExitCode::from(if outcome.negative { 1 } else { 0 })
        }
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::json!({"ok": false, "error": e.kind(), "message": e.to_string()}));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
