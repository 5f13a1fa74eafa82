//! Colorings of `G - e` to probe coloring-dependent lemmas with.
//!
//! Small cases are enumerated exhaustively up to color permutation (every
//! lemma about a coloring is invariant under renaming colors). Otherwise
//! solver restarts with shuffled color order are mixed with random Kempe
//! flips.

use std::collections::HashSet;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coloring::{kempe_chain, PartialEdgeColoring};
use crate::graph::{EdgeId, Graph};
use crate::solver::{enumerate_colorings, random_coloring, Meter, SolveError};

#[derive(Clone, Debug)]
pub struct SampleSpec {
    /// Target number of distinct colorings when not enumerating.
    pub samples: usize,
    pub exhaustive_max_delta: usize,
    pub exhaustive_max_order: usize,
    /// Stop an exhaustive enumeration after this many colorings.
    pub exhaustive_cap: usize,
    pub seed: u64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            samples: 32,
            exhaustive_max_delta: 4,
            exhaustive_max_order: 8,
            exhaustive_cap: 100_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ColoringSample {
    /// Colorings of `G` with `e` uncolored and palette `Δ(G)`.
    pub colorings: Vec<PartialEdgeColoring>,
    /// Every coloring up to permutation was produced.
    pub exhaustive: bool,
}

fn seed_for(spec: &SampleSpec, e: EdgeId) -> u64 {
    spec.seed ^ (e.0 as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Proper `Δ(G)`-colorings of `G - e`, lifted to partial colorings of `G`.
/// An empty sample means `G - e` is not `Δ`-colorable.
pub fn colorings_without_edge(
    g: &Arc<Graph>,
    e: EdgeId,
    spec: &SampleSpec,
    meter: &mut Meter,
) -> Result<ColoringSample, SolveError> {
    let k = g.max_degree();
    let h = g
        .delete_edge(e)
        .map_err(|err| SolveError::Unsupported(err.to_string()))?;
    let lift = |assignment: &[(EdgeId, u8)]| {
        PartialEdgeColoring::from_assignment(g.clone(), k, assignment.iter().copied())
            .expect("colorings of G - e are proper on G")
    };
    if k <= spec.exhaustive_max_delta && g.vertex_count() <= spec.exhaustive_max_order {
        let mut colorings = Vec::new();
        let seen = enumerate_colorings(&h, k, spec.exhaustive_cap, |a| {
            colorings.push(lift(a));
            true
        })?;
        return Ok(ColoringSample { colorings, exhaustive: seen < spec.exhaustive_cap });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(spec, e));
    let mut seen = HashSet::new();
    let mut colorings = Vec::new();
    let mut keep = |phi: PartialEdgeColoring, colorings: &mut Vec<PartialEdgeColoring>| {
        if seen.insert(phi.assignment()) {
            colorings.push(phi);
        }
    };
    let restarts = spec.samples.div_ceil(4).max(1);
    let mut bases = Vec::new();
    for _ in 0..restarts {
        match random_coloring(&h, k, &mut rng, meter)? {
            Some(a) => {
                let phi = lift(&a);
                bases.push(phi.clone());
                keep(phi, &mut colorings);
            }
            None => return Ok(ColoringSample { colorings: Vec::new(), exhaustive: true }),
        }
    }
    let n = g.vertex_count();
    let mut attempts = 0;
    while colorings.len() < spec.samples && attempts < spec.samples * 20 {
        attempts += 1;
        let mut phi = bases[rng.gen_range(0..bases.len())].clone();
        for _ in 0..rng.gen_range(1..=4) {
            let v = rng.gen_range(0..n);
            let a = rng.gen_range(1..=k as u8);
            let b = rng.gen_range(1..=k as u8);
            if a == b {
                continue;
            }
            let chain = kempe_chain(&phi, v, a, b).expect("distinct colors in palette");
            phi.kempe_flip(&chain).expect("fresh chain");
        }
        bases.push(phi.clone());
        keep(phi, &mut colorings);
    }
    Ok(ColoringSample { colorings, exhaustive: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::SolveBudget;

    #[test]
    fn exhaustive_on_small_cycle() {
        let g = Arc::new(Graph::cycle(5).unwrap());
        let mut meter = SolveBudget::unlimited().meter();
        let s = colorings_without_edge(&g, EdgeId(0), &SampleSpec::default(), &mut meter).unwrap();
        assert!(s.exhaustive);
        // P5 with 2 colors: forced up to swapping
        assert_eq!(s.colorings.len(), 1);
        for phi in &s.colorings {
            phi.validate().unwrap();
            assert_eq!(phi.uncolored_edges(), vec![EdgeId(0)]);
        }
    }

    #[test]
    fn sampled_colorings_are_proper_and_distinct() {
        let g = Arc::new(Graph::woodall_example(6, 3).unwrap());
        let spec = SampleSpec { exhaustive_max_delta: 0, samples: 40, ..SampleSpec::default() };
        let mut meter = SolveBudget::unlimited().meter();
        let s = colorings_without_edge(&g, EdgeId(3), &spec, &mut meter).unwrap();
        assert!(!s.exhaustive);
        assert!(!s.colorings.is_empty());
        let distinct: HashSet<_> = s.colorings.iter().map(|p| p.assignment()).collect();
        assert_eq!(distinct.len(), s.colorings.len());
        for phi in &s.colorings {
            phi.validate().unwrap();
            assert_eq!(phi.uncolored_edges(), vec![EdgeId(3)]);
            assert_eq!(phi.palette(), 6);
        }
    }

    #[test]
    fn non_colorable_remainder_gives_empty_sample() {
        // K5 - e still needs 5 colors
        let g = Arc::new(Graph::complete(5).unwrap());
        let mut meter = SolveBudget::unlimited().meter();
        let spec = SampleSpec { exhaustive_max_delta: 0, ..SampleSpec::default() };
        let s = colorings_without_edge(&g, EdgeId(0), &spec, &mut meter).unwrap();
        assert!(s.colorings.is_empty());
    }
}
