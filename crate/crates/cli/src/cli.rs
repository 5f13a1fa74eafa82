use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "critlab", version, about = "Edge-chromatic-critical graph experiments over graph6 streams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Chromatic index of each graph.
    Chi(GraphJob),
    /// Edge-Δ-criticality verdict for each graph.
    Critical {
        #[command(flatten)]
        job: GraphJob,
        /// Include the witness (colorings or the non-critical edge).
        #[arg(long)]
        witness: bool,
    },
    /// Print the graph6 lines that pass the chosen filter.
    Filter {
        #[command(flatten)]
        job: GraphJob,
        /// Keep edge-Δ-critical graphs.
        #[arg(long)]
        critical: bool,
        /// Keep class two graphs.
        #[arg(long)]
        class_two: bool,
    },
    /// Coloring-free adjacency lemma checks.
    Lemmas {
        #[command(flatten)]
        job: GraphJob,
        /// Comma-separated subset of val,w22,w23,ppp,pp.
        #[arg(long, default_value = "val,w22,w23", value_delimiter = ',')]
        which: Vec<LemmaName>,
        #[command(flatten)]
        q: QArg,
    },
    /// Search for a non-criticality certificate.
    Prune {
        #[command(flatten)]
        job: GraphJob,
        #[command(flatten)]
        probes: ProbeArgs,
        /// Also probe the Y² count at this threshold (only when Δ >= 6).
        #[arg(long, value_name = "Q")]
        claim4: Option<String>,
        /// Skip the Z-set inequalities.
        #[arg(long)]
        no_lemfact: bool,
    },
    /// Fan, Kierstead path, broom and Tashkinov tree checks over sampled colorings.
    Fans {
        #[command(flatten)]
        job: GraphJob,
        #[command(flatten)]
        probes: ProbeArgs,
        /// Include the fan and Tashkinov tree of the first coloring of every edge.
        #[arg(long)]
        trace: bool,
    },
    /// Charge ledger, degree partition and claims.
    Discharge {
        #[command(flatten)]
        job: GraphJob,
        #[command(flatten)]
        q: QArg,
        #[arg(long, default_value_t = 18)]
        c: i64,
        /// Include every individual transfer.
        #[arg(long)]
        transfers: bool,
    },
    /// Average-degree bounds over a range of Δ.
    Bound {
        /// Inclusive range `A..B`, or a single value.
        #[arg(long)]
        delta: String,
        /// Add the intermediate quantities of the derivation.
        #[arg(long)]
        chain: bool,
        /// Add every historical bound.
        #[arg(long)]
        table: bool,
        #[arg(long, default_value = "18")]
        c: String,
        /// Vertex count for the conjectured bound in the table.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 10)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Print every graph on up to N vertices (one per isomorphism class) as graph6.
    Corpus {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long)]
        connected: bool,
    },
    /// Print the degree-4 / degree-Δ example graph as graph6.
    Woodall {
        #[arg(long, default_value_t = 6)]
        delta: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GraphJob {
    /// graph6 file, one graph per line; stdin when absent or `-`.
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Search-node limit per graph.
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    /// Wall-clock limit per graph, in seconds.
    #[arg(long)]
    pub budget_secs: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    /// Add elapsed_ms to every record.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct QArg {
    /// `auto` for the Δ-dependent choice (Δ >= 56), or an exact `p/q` or decimal.
    #[arg(long, default_value = "auto")]
    pub q: String,
}

#[derive(Args, Debug, Clone)]
pub struct ProbeArgs {
    /// Colorings of G - e per edge when not enumerating exhaustively.
    #[arg(long, default_value_t = 32)]
    pub samples: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Jsonl,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaName {
    Val,
    W22,
    W23,
    Ppp,
    Pp,
}
