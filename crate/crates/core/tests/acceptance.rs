//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs as a plain binary (`harness = false`).

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use critlab_core::coloring::{kempe_chain, ChainKind, Color, PartialEdgeColoring};
use critlab_core::corpus;
use critlab_core::discharging::{bound_chain, bound_theorem1, discharge, q_of, QBranch, DEFAULT_C};
use critlab_core::discharging::{claim4_pairs, claim4_y_sets};
use critlab_core::fans::{
    build_vizing_fan, check_broom, check_p4, enumerate_kierstead_paths, enumerate_simple_brooms,
};
use critlab_core::lemmas::{check_lemfact, check_val, check_w22, check_w23, probe_coloring, prune};
use critlab_core::lemmas::{PruneOptions, PruneStage};
use critlab_core::sampling::{colorings_without_edge, SampleSpec};
use critlab_core::solver::{chromatic_index, is_edge_delta_critical, is_k_edge_colorable, vizing_color, Decision};
use critlab_core::{ExactReal, Graph, SolveBudget};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut pairs = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &pairs).unwrap()
}

/// Properness checked without the coloring's own bookkeeping.
fn proper_by_scan(phi: &PartialEdgeColoring) -> bool {
    let g = phi.graph();
    (0..g.vertex_count()).all(|v| {
        let mut seen = Vec::new();
        g.incident(v).iter().filter_map(|&(_, e)| phi.color(e)).all(|c| {
            let fresh = !seen.contains(&c) && c as usize <= phi.palette();
            seen.push(c);
            fresh
        })
    })
}

fn solver_oracle() -> Outcome {
    let graphs: Vec<Graph> = corpus::graphs_up_to(7).unwrap().into_iter().filter(|g| g.vertex_count() >= 1).collect();
    ensure(graphs.len() == 1252, || format!("corpus has {} graphs, expected 1252", graphs.len()))?;
    let start = Instant::now();
    let values: Vec<usize> = graphs
        .iter()
        .map(|g| chromatic_index(g, &SolveBudget::unlimited()).unwrap().value)
        .collect();
    let solve_time = start.elapsed();
    let oracle = common::par_map(&graphs, common::line_graph_chromatic_index);
    for ((g, got), want) in graphs.iter().zip(&values).zip(&oracle) {
        ensure(got == want, || format!("{}: solver {got}, oracle {want}", g.to_graph6()))?;
    }
    ensure(solve_time < Duration::from_secs(60), || format!("solver took {}", secs(solve_time)))?;
    let class_two = values.iter().zip(&graphs).filter(|(v, g)| **v > g.max_degree()).count();
    Ok(format!("1252 graphs agree ({class_two} class two), solver {} single-threaded", secs(solve_time)))
}

fn known_values() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("K4", Graph::complete(4).unwrap(), 3),
        ("K5", Graph::complete(5).unwrap(), 5),
        ("C5", Graph::cycle(5).unwrap(), 3),
        ("C6", Graph::cycle(6).unwrap(), 2),
        ("Petersen", Graph::petersen(), 4),
    ];
    for (name, g, want) in &cases {
        let chi = chromatic_index(g, &SolveBudget::unlimited()).unwrap();
        ensure(chi.value == *want, || format!("χ'({name}) = {}, expected {want}", chi.value))?;
        let phi = &chi.coloring;
        ensure(phi.is_total() && phi.validate().is_ok() && proper_by_scan(phi) && phi.palette() == *want, || {
            format!("{name}: certificate does not re-validate")
        })?;
        if chi.value > chi.delta {
            let no = is_k_edge_colorable(g, chi.delta, &SolveBudget::unlimited()).unwrap();
            ensure(no == Decision::No, || format!("{name}: Δ-colorability not refuted"))?;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {}", secs(t)))?;
    Ok(format!("K4=3 K5=5 C5=3 C6=2 Petersen=4, certificates re-validated, {}", secs(t)))
}

fn critical_corpus(critical: &[Graph], scan_time: Duration, scanned: usize) -> Outcome {
    let codes: Vec<String> = critical.iter().map(|g| g.to_graph6()).collect();
    for n in [3, 5, 7] {
        let c = corpus::canonical_form(&Graph::cycle(n).unwrap()).unwrap().to_graph6();
        ensure(codes.contains(&c), || format!("C{n} not flagged critical"))?;
    }
    for g in critical {
        let s = g.to_graph6();
        ensure(common::brute_force_critical(g), || format!("{s} fails the brute-force definition"))?;
        for v in [check_val(g), check_w22(g), check_w23(g)] {
            ensure(v.holds, || format!("{s}: {:?} fails at {:?}", v.lemma, v.failure))?;
        }
        let n = g.vertex_count() as i64;
        let target = Rational64::from_integer(g.max_degree() as i64 - 1) + Rational64::new(3, n);
        ensure(g.average_degree() >= target, || format!("{s}: average degree below Δ - 1 + 3/n"))?;
    }
    ensure(scan_time < Duration::from_secs(1800), || format!("scan took {}", secs(scan_time)))?;
    Ok(format!(
        "{scanned} connected graphs scanned, {} critical (C3, C5, C7 included), lemmas and d̄ >= Δ-1+3/n hold, {}",
        critical.len(),
        secs(scan_time)
    ))
}

#[derive(Default)]
struct SuiteCounts {
    colorings: usize,
    fans: usize,
    paths: usize,
    brooms: usize,
    lemfact: usize,
    short_samples: usize,
}

fn elementarity_suites(critical: &[Graph]) -> Outcome {
    let per_graph = common::par_map(critical, |g| -> Result<SuiteCounts, String> {
        let g = Arc::new(g.clone());
        let s = g.to_graph6();
        let delta = g.max_degree();
        let spec = SampleSpec::default();
        let mut meter = SolveBudget::unlimited().meter();
        let mut n = SuiteCounts::default();
        for (e, [x, y]) in g.edges() {
            let sample = colorings_without_edge(&g, e, &spec, &mut meter).unwrap();
            let exhaustive_expected = delta <= 4 && g.vertex_count() <= 8;
            ensure(sample.exhaustive == exhaustive_expected, || format!("{s}: wrong sampling mode"))?;
            if !sample.exhaustive && sample.colorings.len() < 32 {
                n.short_samples += 1;
            }
            ensure(!sample.colorings.is_empty(), || format!("{s}: no coloring of G - {x}{y}"))?;
            for phi in &sample.colorings {
                n.colorings += 1;
                for (a, b) in [(x, y), (y, x)] {
                    let fan = build_vizing_fan(phi, e, a).unwrap();
                    ensure(fan.is_elementary(phi), || format!("{s}: fan {:?} not elementary", fan.vertices))?;
                    n.fans += 1;
                    for path in enumerate_kierstead_paths(phi, e, a, 3).unwrap() {
                        if path.len() != 4 {
                            continue;
                        }
                        n.paths += 1;
                        for v in check_p4(phi, &path).unwrap() {
                            ensure(!v.violated(), || format!("{s}: path {:?} item {}", path.vertices, v.item))?;
                        }
                    }
                    for broom in enumerate_simple_brooms(phi, e, a, g.vertex_count()).unwrap() {
                        if broom.len() < 3 {
                            continue;
                        }
                        let v = check_broom(phi, &broom).unwrap();
                        if v.applies {
                            n.brooms += 1;
                        }
                        ensure(!v.violated(), || format!("{s}: broom {:?} not elementary", broom.vertices))?;
                    }
                    for q in g.degree(a) + 1..delta {
                        for v in check_lemfact(phi, a, b, &ExactReal::from(q)).unwrap() {
                            ensure(v.holds, || format!("{s}: {:?} fails at {:?}", v.lemma, v.failure))?;
                        }
                        n.lemfact += 1;
                    }
                }
            }
        }
        Ok(n)
    });
    let mut total = SuiteCounts::default();
    for r in per_graph {
        let n = r?;
        total.colorings += n.colorings;
        total.fans += n.fans;
        total.paths += n.paths;
        total.brooms += n.brooms;
        total.lemfact += n.lemfact;
        total.short_samples += n.short_samples;
    }
    ensure(total.short_samples == 0, || format!("{} sampled edges got fewer than 32 colorings", total.short_samples))?;
    Ok(format!(
        "{} colorings: {} fans, {} 4-vertex paths, {} brooms under hypotheses, {} (x,y,q) triples, zero violations",
        total.colorings, total.fans, total.paths, total.brooms, total.lemfact
    ))
}

fn kempe_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b656d7065);
    let mut trials = 0;
    let mut nontrivial = 0;
    while trials < 10_000 {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.2..0.9);
        let g = random_graph(&mut rng, n, p);
        if g.edge_count() == 0 {
            continue;
        }
        let phi = vizing_color(&g);
        let k = phi.palette() as Color;
        for _ in 0..10 {
            let v = rng.gen_range(0..n);
            let a = rng.gen_range(1..=k);
            let b = rng.gen_range(1..=k);
            if a == b {
                continue;
            }
            trials += 1;
            let chain = kempe_chain(&phi, v, a, b).unwrap();
            let before: Vec<_> = chain.endpoints.iter().map(|&u| common::missing(&phi, u)).collect();
            let flipped = phi.flipped(&chain).unwrap();
            ensure(proper_by_scan(&flipped), || format!("flip broke properness on {}", g.to_graph6()))?;
            if chain.kind == ChainKind::Path && !chain.edges.is_empty() {
                nontrivial += 1;
                for (u, was) in chain.endpoints.iter().zip(&before) {
                    let now = common::missing(&flipped, *u);
                    let swapped = (was.contains(&a) == now.contains(&b)) && (was.contains(&b) == now.contains(&a));
                    ensure(swapped, || format!("endpoint {u} did not exchange {a}/{b} on {}", g.to_graph6()))?;
                }
            }
            let again = kempe_chain(&flipped, v, a, b).unwrap();
            let back = flipped.flipped(&again).unwrap();
            ensure(back.assignment() == phi.assignment(), || format!("flip is not an involution on {}", g.to_graph6()))?;
        }
    }
    Ok(format!("{trials} trials ({nontrivial} nontrivial paths), zero failures"))
}

fn discharge_conservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6368617267);
    for i in 0..10_000 {
        let n = rng.gen_range(1..=16);
        let p = rng.gen_range(0.05..0.95);
        let g = random_graph(&mut rng, n, p);
        let q = ExactReal::from_ratio(rng.gen_range(1..=80), rng.gen_range(1..=8));
        let ledger = discharge(&g, &q);
        ensure(ledger.total() == ExactReal::from(2 * g.edge_count()), || format!("run {i}: Σ M' != 2m"))?;
    }
    let star = discharge(&Graph::star(3), &ExactReal::from_integer(2));
    let third = ExactReal::from_ratio(4, 3);
    let want = vec![ExactReal::from_integer(2), third.clone(), third.clone(), third];
    ensure(star.charge == want, || format!("K1,3 gave {:?}", star.charge))?;
    Ok("10000 random graphs conserve Σ M' = 2m exactly; K1,3 with q = 2 gives (2, 4/3, 4/3, 4/3)".into())
}

fn theorem_arithmetic() -> Outcome {
    let start = Instant::now();
    for (delta, published) in [(66, "45.54248"), (65, "44.89838"), (56, "38.67351")] {
        let v = bound_theorem1(delta).unwrap().value;
        let p: ExactReal = published.parse().unwrap();
        let diff = (&v - &p).abs();
        ensure(diff <= ExactReal::from_ratio(1, 100_000), || format!("Δ={delta}: {} vs {published}", v.to_decimal(6)))?;
    }
    ensure(q_of(65).unwrap().branch == QBranch::ThreeQuarters, || "q branch at Δ=65".into())?;
    ensure(q_of(66).unwrap().branch == QBranch::Sqrt2, || "q branch at Δ=66".into())?;
    for delta in 56..=10_000 {
        ensure(bound_theorem1(delta).unwrap().beats_two_thirds, || format!("below 2(Δ+2)/3 at Δ={delta}"))?;
    }
    let tol = ExactReal::from_ratio(1, 1000);
    let c = ExactReal::from_integer(DEFAULT_C);
    let mut widest = (0.0f64, 0usize);
    let mut two_sided = Vec::new();
    for delta in 56..=70 {
        let chain = bound_chain(delta, &c).unwrap().bound;
        let line = bound_theorem1(delta).unwrap().value;
        ensure(chain >= &line - &tol, || {
            format!("Δ={delta}: chain {} below line {} - 0.001", chain.to_decimal(6), line.to_decimal(6))
        })?;
        let gap = (&chain - &line).to_f64();
        if (&chain - &line).abs() <= tol {
            two_sided.push(delta.to_string());
        }
        if gap > widest.0 {
            widest = (gap, delta);
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), || format!("took {}", secs(t)))?;
    Ok(format!(
        "published values to 1e-5, branch flips at 65/66, >= 2(Δ+2)/3 up to 10^4, chain >= line - 1e-3 on 56..70 \
         (chain exceeds line by up to {:.5} at Δ={}; |chain - line| <= 1e-3 only at Δ in {{{}}}), {}",
        widest.0,
        widest.1,
        two_sided.join(","),
        secs(t)
    ))
}

fn woodall_example() -> Outcome {
    let g = Arc::new(Graph::woodall_example(6, 3).unwrap());
    let avg = g.average_degree();
    ensure(avg == Rational64::new(16, 3), || format!("average degree {avg}"))?;
    ensure(avg == Rational64::new(2 * (6 + 2), 3), || "not 2(Δ+2)/3".into())?;
    for v in [check_val(&g), check_w22(&g), check_w23(&g)] {
        ensure(v.holds, || format!("{:?} fails at {:?}", v.lemma, v.failure))?;
    }
    let start = Instant::now();
    let verdict = is_edge_delta_critical(&g, &SolveBudget::unlimited()).unwrap();
    let solve = start.elapsed();
    ensure(!verdict.is_critical, || "reported critical".into())?;
    ensure(solve < Duration::from_secs(300), || format!("exact solve took {}", secs(solve)))?;
    let report = prune(&g, &PruneOptions::default()).unwrap();
    let cert = report.certificate.ok_or("prune found no certificate")?;
    ensure(report.stage == Some(PruneStage::Colorings), || format!("certificate from stage {:?}", report.stage))?;
    ensure(cert.is_coloring_dependent(), || format!("{} is not coloring-dependent", cert.reason()))?;
    ensure(cert.verify(&g), || "certificate does not re-verify".into())?;
    // the Y² count on the degree-4 vertices, with a q putting them in X1
    let q = ExactReal::from_ratio(16, 3);
    let mut meter = SolveBudget::unlimited().meter();
    let mut y2_failures = 0;
    for (x, y) in claim4_pairs(&g, &q) {
        let e = g.edge_between(x, y).unwrap();
        for phi in colorings_without_edge(&g, e, &SampleSpec::default(), &mut meter).unwrap().colorings {
            if !claim4_y_sets(&phi, x, y, &q).unwrap().holds {
                y2_failures += 1;
            }
        }
    }
    ensure(y2_failures > 0, || "no Y² shortfall found".into())?;
    Ok(format!(
        "d̄ = 16/3, VAL/W22/W23 hold, χ' = {} so not critical (solve {}), prune: {} at coloring stage after {} colorings, \
         {y2_failures} Y² shortfalls at q = 16/3",
        verdict.chi_prime,
        secs(solve),
        cert.reason(),
        report.colorings_checked
    ))
}

fn pruner_soundness(critical: &[Graph]) -> Outcome {
    let reports = common::par_map(critical, |g| prune(&Arc::new(g.clone()), &PruneOptions::default()).unwrap());
    let mut checked = 0;
    for (g, r) in critical.iter().zip(&reports) {
        ensure(r.certificate.is_none(), || format!("false positive on {}: {:?}", g.to_graph6(), r.certificate))?;
        ensure(!r.budget_exhausted, || format!("budget exhausted on {}", g.to_graph6()))?;
        checked += r.colorings_checked;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7072756e65);
    let options = PruneOptions::default();
    let spec = SampleSpec { samples: 4, exhaustive_max_delta: 0, ..SampleSpec::default() };
    let mut meter = SolveBudget::unlimited().meter();
    let mut perturbed = 0;
    while perturbed < 10_000 {
        let g = Arc::new(critical[rng.gen_range(0..critical.len())].clone());
        let edges: Vec<_> = g.edges().collect();
        let (e, [x, y]) = edges[rng.gen_range(0..edges.len())];
        let spec = SampleSpec { seed: rng.gen(), ..spec.clone() };
        let sample = colorings_without_edge(&g, e, &spec, &mut meter).unwrap();
        let k = g.max_degree() as Color;
        for base in sample.colorings {
            let mut phi = base;
            for _ in 0..rng.gen_range(1..=6) {
                let (a, b) = (rng.gen_range(1..=k), rng.gen_range(1..=k));
                if a != b {
                    let chain = kempe_chain(&phi, rng.gen_range(0..g.vertex_count()), a, b).unwrap();
                    phi.kempe_flip(&chain).unwrap();
                }
            }
            perturbed += 1;
            let cert = probe_coloring(&phi, x, y, &options).unwrap();
            ensure(cert.is_none(), || format!("false positive on {}: {:?}", g.to_graph6(), cert))?;
        }
    }
    Ok(format!(
        "no certificate on {} critical graphs ({checked} colorings) or on {perturbed} perturbed colorings",
        critical.len()
    ))
}

fn run(number: usize, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    let t = secs(start.elapsed());
    match outcome {
        Ok(detail) => {
            println!("criterion {number} PASS [{t}] {detail}");
            true
        }
        Err(why) => {
            println!("criterion {number} FAIL [{t}] {why}");
            false
        }
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let connected = corpus::connected_graphs_up_to(8).unwrap();
    let verdicts = common::par_map(&connected, |g| {
        g.edge_count() > 0 && is_edge_delta_critical(g, &SolveBudget::unlimited()).unwrap().is_critical
    });
    let critical: Vec<Graph> = connected.iter().zip(verdicts).filter(|(_, c)| *c).map(|(g, _)| g.clone()).collect();
    let scan_time = start.elapsed();

    let results = [
        run(1, solver_oracle),
        run(2, known_values),
        run(3, || critical_corpus(&critical, scan_time, connected.len())),
        run(4, || elementarity_suites(&critical)),
        run(5, kempe_properties),
        run(6, discharge_conservation),
        run(7, theorem_arithmetic),
        run(8, woodall_example),
        run(9, || pruner_soundness(&critical)),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
