use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polybinom::report::{self, Caps};
use polybinom::{cmd_survey, Error, SurveyConfig, SurveyKind, SurveyMode};
use serde::Serialize;

/// Chromatic, flow and order polynomials in binomial-coefficient bases.
///
/// Exit codes: 0 all checks hold, 1 counterexample, 2 input rejected,
/// 3 cap exceeded.
#[derive(Parser)]
#[command(name = "polybinom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the inequality audit rows as CSV.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Largest vertex or element count.
    #[arg(long, global = true, value_name = "N")]
    max_size: Option<usize>,
    /// Largest edge count for orientation enumeration.
    #[arg(long, global = true, value_name = "M", default_value_t = 24)]
    cap_edges: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Chromatic polynomial, its star vector and split, of a graph file.
    Chromatic {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Modular and integral flow polynomials of a graph file.
    Flow {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Order polynomial and order-polytope checks of a poset file.
    Order {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Verify every check over a family of graphs or posets.
    Survey {
        #[arg(value_enum)]
        kind: Kind,
        /// Instance files to use instead of the generated family.
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random instances in sample mode.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Largest cyclomatic number for flow surveys.
        #[arg(long, default_value_t = 5)]
        max_xi: usize,
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Monomial-basis forms of the mirrored partial-sum inequalities, d = 5..7.
    Table1 {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Graphs,
    Posets,
    Flows,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Serialize)]
struct Rejection {
    schema: u32,
    error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<polybinom::SkipReason>,
    exit_code: i32,
}

fn fail(e: Error, json: bool) -> ExitCode {
    let code = e.exit_code();
    if json {
        let r = Rejection { schema: 1, error: e.to_string(), reason: e.skip_reason(), exit_code: code };
        println!("{}", serde_json::to_string_pretty(&r).expect("serializes"));
    }
    eprintln!("error: {e}");
    ExitCode::from(code as u8)
}

fn write_csv(path: &Option<PathBuf>, contents: impl FnOnce() -> polybinom::Result<String>) -> polybinom::Result<()> {
    if let Some(p) = path {
        std::fs::write(p, contents()?)?;
    }
    Ok(())
}

fn single<T: Serialize>(
    out: &Output,
    file: &Path,
    run: impl FnOnce(&Path, &Caps) -> polybinom::Result<report::Envelope<T>>,
    audits: impl FnOnce(&T) -> &[polybinom::stapledon::AuditReport],
    render: impl FnOnce(&T) -> String,
    default_size: usize,
) -> ExitCode {
    let caps = Caps { max_size: out.max_size.unwrap_or(default_size), edges: out.cap_edges };
    let env = match run(file, &caps) {
        Ok(env) => env,
        Err(e) => return fail(e, out.json),
    };
    let name = file.display().to_string();
    if let Err(e) = write_csv(&out.csv, || report::audits_csv(&name, audits(&env.result))) {
        return fail(e, out.json);
    }
    if out.json {
        println!("{}", env.to_json());
    } else {
        print!("{}", render(&env.result));
    }
    ExitCode::from(env.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Chromatic { file, out } => single(
            &out,
            &file,
            report::cmd_chromatic,
            |r| &r.audits,
            report::render_chromatic,
            polybinom::chromatic::DEFAULT_VERTEX_CAP,
        ),
        Command::Flow { file, out } => single(
            &out,
            &file,
            report::cmd_flow,
            |r| &r.audits,
            report::render_flow,
            polybinom::graph::MAX_VERTICES,
        ),
        Command::Order { file, out } => single(
            &out,
            &file,
            report::cmd_order,
            |r| &r.audits,
            report::render_order,
            polybinom::order::DEFAULT_POSET_CAP,
        ),
        Command::Survey { kind, files, mode, seed, samples, max_xi, threads, out } => {
            let kind = match kind {
                Kind::Graphs => SurveyKind::Graphs,
                Kind::Posets => SurveyKind::Posets,
                Kind::Flows => SurveyKind::Flows,
            };
            let mut config = SurveyConfig::new(kind, out.max_size.unwrap_or(5));
            config.mode = match mode {
                ModeArg::Exhaustive => SurveyMode::Exhaustive,
                ModeArg::Sample => SurveyMode::Sample,
            };
            config.seed = seed;
            config.samples = samples;
            config.max_xi = max_xi;
            config.cap_edges = out.cap_edges;
            config.threads = threads;
            config.files = files;
            let rep = match cmd_survey(&config) {
                Ok(r) => r,
                Err(e) => return fail(e, out.json),
            };
            if let Some(path) = &out.csv {
                let written = std::fs::File::create(path)
                    .map_err(Error::from)
                    .and_then(|f| rep.write_audit_csv(f));
                if let Err(e) = written {
                    return fail(e, out.json);
                }
            }
            if out.json {
                println!("{}", serde_json::to_string_pretty(&rep).expect("serializes"));
            } else {
                let t = &rep.totals;
                println!(
                    "{} instances: {} passed, {} failed, {} skipped",
                    t.instances, t.passed, t.failed, t.skipped
                );
                for (reason, n) in &t.skipped_by_reason {
                    println!("  skipped ({reason}): {n}");
                }
                for id in &rep.counterexamples {
                    println!("counterexample: {id}");
                }
                println!("report digest {}", rep.digest());
            }
            ExitCode::from(rep.exit_code() as u8)
        }
        Command::Table1 { json } => match report::cmd_table1() {
            Ok(r) => {
                if json {
                    println!("{}", serde_json::to_string_pretty(&r).expect("serializes"));
                } else {
                    print!("{}", report::render_table1(&r));
                }
                ExitCode::from(if r.all_matched { 0 } else { 1 })
            }
            Err(e) => fail(e, json),
        },
    }
}
