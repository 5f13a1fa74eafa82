mod cli;
mod commands;
mod stream;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use critlab_core::lemmas::PruneOptions;
use critlab_core::sampling::SampleSpec;
use critlab_core::{corpus, ExactReal, Graph};

use cli::{Cli, Command, GraphJob};
use commands::BoundFlags;
use stream::{graph_record, RecordWriter, Status};

const SEED_VAR: &str = "CRITLAB_SEED";

fn seed() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().with_context(|| format!("{SEED_VAR} must be an unsigned integer, got `{s}`")),
        Err(_) => Ok(0),
    }
}

/// Runs a per-graph command and writes one record per input line.
fn records(
    job: &GraphJob,
    columns: &[&str],
    command: impl Fn(&Graph) -> stream::Outcome + Sync,
) -> Result<Status> {
    let mut out = RecordWriter::new(job.format, columns, job.timing)?;
    let status = stream::run(job, |line| graph_record(line, job.timing, &command), |r| out.write(&r))?;
    out.finish()?;
    Ok(status)
}

fn sample_spec(samples: usize) -> Result<SampleSpec> {
    Ok(SampleSpec { samples, seed: seed()?, ..SampleSpec::default() })
}

fn execute(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Chi(job) => {
            let budget = stream::budget(&job)?;
            records(&job, commands::CHI_COLUMNS, |g| commands::chi(g, &budget))
        }
        Command::Critical { job, witness } => {
            let budget = stream::budget(&job)?;
            records(&job, commands::CRITICAL_COLUMNS, |g| commands::critical(g, &budget, witness))
        }
        Command::Filter { job, critical, class_two } => {
            if !critical && !class_two {
                anyhow::bail!("choose at least one of --critical, --class-two");
            }
            let budget = stream::budget(&job)?;
            let mut out = std::io::BufWriter::new(std::io::stdout());
            let status = stream::run(
                &job,
                |line| match Graph::from_graph6(&line.text) {
                    Ok(g) => match commands::filter(&g, &budget, critical, class_two) {
                        Ok(keep) => (keep.then(|| g.to_graph6()), Status::Ok),
                        Err(e) => {
                            eprintln!("line {}: {e}", line.index + 1);
                            (None, Status::BudgetExhausted)
                        }
                    },
                    Err(e) => {
                        eprintln!("line {}: invalid graph6: {e}", line.index + 1);
                        (None, Status::InputError)
                    }
                },
                |kept| match kept {
                    Some(s) => writeln!(out, "{s}"),
                    None => Ok(()),
                },
            )?;
            out.flush()?;
            Ok(status)
        }
        Command::Lemmas { job, which, q } => {
            records(&job, commands::LEMMA_COLUMNS, |g| commands::lemmas(g, &which, &q.q))
        }
        Command::Prune { job, probes, claim4, no_lemfact } => {
            let claim4_q = claim4
                .map(|s| s.parse::<ExactReal>())
                .transpose()
                .context("--claim4 expects an exact rational")?;
            let options = PruneOptions {
                samples: sample_spec(probes.samples)?,
                budget: stream::budget(&job)?,
                lemfact: !no_lemfact,
                claim4_q,
            };
            records(&job, commands::PRUNE_COLUMNS, |g| commands::prune_graph(g, &options))
        }
        Command::Fans { job, probes, trace } => {
            let spec = sample_spec(probes.samples)?;
            let budget = stream::budget(&job)?;
            records(&job, commands::FAN_COLUMNS, |g| commands::fans(g, &spec, &budget, trace))
        }
        Command::Discharge { job, q, c, transfers } => {
            if c <= 0 {
                anyhow::bail!("--c must be positive");
            }
            records(&job, commands::DISCHARGE_COLUMNS, |g| commands::discharge(g, &q.q, c, transfers))
        }
        Command::Bound { delta, chain, table, c, n, digits, format } => {
            let (lo, hi) = commands::parse_delta_range(&delta).map_err(anyhow::Error::msg)?;
            let c: ExactReal = c.parse().context("--c expects an exact rational")?;
            let flags = BoundFlags { chain, table, c, n, digits };
            let columns = commands::bound_columns(&flags);
            let mut out = RecordWriter::plain(format, &columns)?;
            let mut worst = Status::Ok;
            for d in lo..=hi {
                let (record, status) = commands::bound_row(d, &flags);
                worst = worst.max(status);
                out.write(&record)?;
            }
            out.finish()?;
            Ok(worst)
        }
        Command::Corpus { max_n, min_n, connected } => {
            if max_n > corpus::MAX_CANONICAL_ORDER {
                anyhow::bail!("--max-n is limited to {}", corpus::MAX_CANONICAL_ORDER);
            }
            let graphs = if connected { corpus::connected_graphs_up_to(max_n)? } else { corpus::graphs_up_to(max_n)? };
            let mut out = std::io::BufWriter::new(std::io::stdout());
            for g in graphs.iter().filter(|g| g.vertex_count() >= min_n) {
                writeln!(out, "{}", g.to_graph6())?;
            }
            out.flush()?;
            Ok(Status::Ok)
        }
        Command::Woodall { delta, k } => {
            println!("{}", Graph::woodall_example(delta, k)?.to_graph6());
            Ok(Status::Ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("critlab: {e:#}");
            ExitCode::from(Status::InputError.exit_code())
        }
    }
}
