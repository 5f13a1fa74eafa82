//! Input reading, the ordered parallel map, and record output.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use critlab_core::{Graph, GraphError, SolveBudget};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::cli::{Format, GraphJob};

/// Per-graph outcome, ordered by exit-code precedence.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    /// A certificate or lemma violation was found.
    Violation,
    BudgetExhausted,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::InputError => 2,
            Status::BudgetExhausted => 3,
        }
    }
}

pub type Record = Map<String, Value>;

/// What a command reports for one graph.
pub struct Outcome {
    pub fields: Record,
    pub status: Status,
}

impl Outcome {
    pub fn ok(fields: Record) -> Self {
        Outcome { fields, status: Status::Ok }
    }

    pub fn error(message: impl ToString, status: Status) -> Self {
        let mut fields = Record::new();
        fields.insert("error".into(), Value::String(message.to_string()));
        Outcome { fields, status }
    }
}

pub struct Line {
    pub index: usize,
    pub text: String,
}

fn open(job: &GraphJob) -> Result<Box<dyn BufRead>> {
    Ok(match &job.input {
        Some(path) if path.as_os_str() != "-" => Box::new(BufReader::new(
            File::open(path).with_context(|| format!("cannot open {}", path.display()))?,
        )),
        _ => Box::new(BufReader::new(io::stdin())),
    })
}

pub fn budget(job: &GraphJob) -> Result<SolveBudget> {
    let wall_limit = match job.budget_secs {
        Some(s) if s.is_finite() && s > 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => anyhow::bail!("--budget-secs must be positive, got {s}"),
        None => None,
    };
    if job.budget_nodes == Some(0) {
        anyhow::bail!("--budget-nodes must be positive");
    }
    Ok(SolveBudget { node_limit: job.budget_nodes, wall_limit })
}

/// Maps `work` over the non-blank input lines on `job.jobs` threads and
/// hands results to `emit` in input order. Lines are processed in batches
/// so memory stays bounded.
pub fn run<R: Send>(
    job: &GraphJob,
    work: impl Fn(&Line) -> (R, Status) + Sync,
    mut emit: impl FnMut(R) -> io::Result<()>,
) -> Result<Status> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(job.jobs as usize).build()?;
    let batch = 64 * job.jobs as usize;
    let mut reader = open(job)?;
    let mut worst = Status::Ok;
    let mut index = 0;
    loop {
        let mut lines = Vec::with_capacity(batch);
        let mut buf = String::new();
        while lines.len() < batch {
            buf.clear();
            if reader.read_line(&mut buf)? == 0 {
                break;
            }
            let text = buf.trim();
            if text.is_empty() {
                continue;
            }
            lines.push(Line { index, text: text.to_string() });
            index += 1;
        }
        if lines.is_empty() {
            break;
        }
        let results: Vec<(R, Status)> = pool.install(|| lines.par_iter().map(&work).collect());
        for (r, status) in results {
            worst = worst.max(status);
            emit(r)?;
        }
    }
    Ok(worst)
}

/// The common record shape: input index, graph6, command fields, then the
/// optional timing.
pub fn graph_record(
    line: &Line,
    timing: bool,
    command: impl FnOnce(&Graph) -> Outcome,
) -> (Record, Status) {
    let start = Instant::now();
    let mut record = Record::new();
    record.insert("index".into(), line.index.into());
    let outcome = match Graph::from_graph6(&line.text) {
        Ok(g) => {
            record.insert("graph6".into(), g.to_graph6().into());
            command(&g)
        }
        Err(e) => {
            record.insert("graph6".into(), line.text.clone().into());
            Outcome::error(input_error(e), Status::InputError)
        }
    };
    record.extend(outcome.fields);
    if timing {
        record.insert("elapsed_ms".into(), (start.elapsed().as_millis() as u64).into());
    }
    (record, outcome.status)
}

fn input_error(e: GraphError) -> String {
    format!("invalid graph6: {e}")
}

/// Writes records as JSON lines or as CSV with a fixed column list. Nested
/// values go into CSV cells as compact JSON.
pub struct RecordWriter {
    out: io::BufWriter<io::Stdout>,
    csv: Option<Vec<String>>,
}

impl RecordWriter {
    pub fn new(format: Format, columns: &[&str], timing: bool) -> io::Result<Self> {
        let mut w = RecordWriter { out: io::BufWriter::new(io::stdout()), csv: None };
        if format == Format::Csv {
            let mut cols: Vec<String> = ["index", "graph6"].iter().chain(columns).map(|s| s.to_string()).collect();
            if timing {
                cols.push("elapsed_ms".into());
            }
            cols.push("error".into());
            w.csv_row(&cols)?;
            w.csv = Some(cols);
        }
        Ok(w)
    }

    /// A writer for records without the index/graph6 prefix.
    pub fn plain(format: Format, columns: &[&str]) -> io::Result<Self> {
        let mut w = RecordWriter { out: io::BufWriter::new(io::stdout()), csv: None };
        if format == Format::Csv {
            let cols: Vec<String> = columns.iter().map(|s| s.to_string()).collect();
            w.csv_row(&cols)?;
            w.csv = Some(cols);
        }
        Ok(w)
    }

    fn csv_row(&mut self, cells: &[String]) -> io::Result<()> {
        let mut row = csv::WriterBuilder::new().from_writer(Vec::new());
        row.write_record(cells).map_err(io::Error::other)?;
        let bytes = row.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
        self.out.write_all(&bytes)
    }

    pub fn write(&mut self, record: &Record) -> io::Result<()> {
        match self.csv.clone() {
            None => {
                serde_json::to_writer(&mut self.out, record)?;
                self.out.write_all(b"\n")
            }
            Some(cols) => {
                let cells: Vec<String> = cols.iter().map(|c| cell(record.get(c))).collect();
                self.csv_row(&cells)
            }
        }
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(Value::Bool(b)) => b.to_string(),
        Some(Value::Number(n)) => n.to_string(),
        Some(other) => other.to_string(),
    }
}
