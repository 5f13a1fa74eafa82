//! Edge-chromatic critical graphs: exact chromatic-index search, Kempe-chain
//! and fan machinery, adjacency-lemma oracles with a non-criticality pruner,
//! and the discharging bound on average degree.

pub mod coloring;
pub mod corpus;
pub mod discharging;
pub mod exact;
pub mod fans;
pub mod graph;
pub mod lemmas;
pub mod sampling;
pub mod solver;

pub use coloring::{Color, ColorSet, ColoringError, PartialEdgeColoring};
pub use exact::ExactReal;
pub use graph::{EdgeId, Graph, GraphError, VertexId};
pub use solver::{SolveBudget, SolveError};
