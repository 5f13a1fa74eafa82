//! Charge redistribution, the degree partition it induces, the claims made
//! about critical graphs under it, and the resulting average-degree bounds.
//! Everything is exact in `Q[√2]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::coloring::{ColoringError, PartialEdgeColoring};
use crate::exact::ExactReal;
use crate::graph::{Graph, VertexId};

/// Smallest `Δ` the bound derivation covers.
pub const MIN_DELTA: usize = 56;

/// Default `c` in the partition and bound chain.
pub const DEFAULT_C: i64 = 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("Δ = {0} is below {MIN_DELTA}")]
    DeltaTooSmall(usize),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("division by zero in {0}")]
    Division(&'static str),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

fn er(n: i64) -> ExactReal {
    ExactReal::from_integer(n)
}

fn eu(n: usize) -> ExactReal {
    ExactReal::from(n)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QBranch {
    /// `(2√2(Δ-1) - 2) / (2√2 + 1)`
    Sqrt2,
    /// `3Δ/4 - 2`
    ThreeQuarters,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QChoice {
    pub q: ExactReal,
    pub branch: QBranch,
}

/// `q = min{(2√2(Δ-1) - 2)/(2√2 + 1), 3Δ/4 - 2}`, with the winning term.
pub fn q_of(delta: usize) -> Result<QChoice, DischargeError> {
    if delta < MIN_DELTA {
        return Err(DischargeError::DeltaTooSmall(delta));
    }
    let s = ExactReal::sqrt2();
    let first = (&s * 2 * (delta as i64 - 1) - 2) / (&s * 2 + 1);
    let second = ExactReal::from_ratio(3 * delta as i64, 4) - 2;
    Ok(if first < second {
        QChoice { q: first, branch: QBranch::Sqrt2 }
    } else {
        QChoice { q: second, branch: QBranch::ThreeQuarters }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub donor: VertexId,
    pub recipient: VertexId,
    pub amount: ExactReal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChargeLedger {
    pub q: ExactReal,
    /// `M(x) = d(x)`
    pub initial: Vec<usize>,
    /// `M'(x)`
    pub charge: Vec<ExactReal>,
    pub transfers: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn total(&self) -> ExactReal {
        self.charge.iter().fold(ExactReal::zero(), |acc, c| &acc + c)
    }

    pub fn is_conserved(&self) -> bool {
        self.total() == eu(self.initial.iter().sum())
    }
}

/// Each vertex of degree above `q` splits `d(y) - q` equally among its
/// neighbors of degree below `q`; without such neighbors it keeps it.
pub fn discharge(g: &Graph, q: &ExactReal) -> ChargeLedger {
    let n = g.vertex_count();
    let initial = g.degrees();
    let mut charge: Vec<ExactReal> = initial.iter().map(|&d| eu(d)).collect();
    let mut transfers = Vec::new();
    let below = |v: VertexId| eu(g.degree(v)) < *q;
    for y in 0..n {
        let dy = eu(g.degree(y));
        if dy <= *q {
            continue;
        }
        let recipients: Vec<VertexId> = g.neighbors(y).filter(|&v| below(v)).collect();
        if recipients.is_empty() {
            continue;
        }
        let share = (&dy - q) / eu(recipients.len());
        for x in recipients {
            charge[y] = &charge[y] - &share;
            charge[x] = &charge[x] + &share;
            transfers.push(Transfer { donor: y, recipient: x, amount: share.clone() });
        }
    }
    ChargeLedger { q: q.clone(), initial, charge, transfers }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub q: ExactReal,
    pub c: i64,
    /// `d(x) <= 3q - 2Δ`
    pub x1: Vec<VertexId>,
    /// Union of the neighborhoods of `x1`; may meet `x1`.
    pub nx1: Vec<VertexId>,
    /// Outside `x1 ∪ nx1` with `d >= Δ - c`.
    pub z1: Vec<VertexId>,
    /// Outside `x1 ∪ nx1` with `d < Δ - c`.
    pub z2: Vec<VertexId>,
    pub b1: ExactReal,
    pub b2: ExactReal,
}

pub fn x1_threshold(delta: usize, q: &ExactReal) -> ExactReal {
    q * 3 - eu(2 * delta)
}

pub fn partition(g: &Graph, q: &ExactReal, c: i64) -> PartitionReport {
    let n = g.vertex_count();
    let delta = g.max_degree();
    let limit = x1_threshold(delta, q);
    let x1: Vec<VertexId> = (0..n).filter(|&v| eu(g.degree(v)) <= limit).collect();
    let mut in_nx1 = vec![false; n];
    for &x in &x1 {
        for y in g.neighbors(x) {
            in_nx1[y] = true;
        }
    }
    let nx1: Vec<VertexId> = (0..n).filter(|&v| in_nx1[v]).collect();
    let rest = (0..n).filter(|&v| !in_nx1[v] && !x1.contains(&v));
    let (z1, z2): (Vec<VertexId>, Vec<VertexId>) =
        rest.partition(|&v| g.degree(v) as i64 >= delta as i64 - c);
    let base = er(2) + (eu(delta) - q) * 2;
    let b1 = &base * eu(x1.len())
        + q * eu(nx1.len())
        + er(delta as i64 - c) * eu(z1.len())
        + &limit * eu(z2.len());
    let b2 = &base * eu(x1.len()) + eu(n - x1.len()) * q;
    PartitionReport { q: q.clone(), c, x1, nx1, z1, z2, b1, b2 }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimVerdict {
    pub claim: u8,
    pub holds: bool,
    /// Vertex at which a per-vertex claim fails.
    pub vertex: Option<VertexId>,
    pub have: Option<ExactReal>,
    pub need: Option<ExactReal>,
}

impl ClaimVerdict {
    fn ok(claim: u8) -> Self {
        ClaimVerdict { claim, holds: true, vertex: None, have: None, need: None }
    }

    fn fail(claim: u8, vertex: Option<VertexId>, have: ExactReal, need: ExactReal) -> Self {
        ClaimVerdict { claim, holds: false, vertex, have: Some(have), need: Some(need) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimsReport {
    pub ledger: ChargeLedger,
    pub partition: PartitionReport,
    pub claims: [ClaimVerdict; 4],
}

impl ClaimsReport {
    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }
}

/// `((5c+2)Δ - (6c+3)q + 3c + 2) / (cΔ)`
pub fn claim5_ratio(delta: usize, q: &ExactReal, c: i64) -> Result<ExactReal, DischargeError> {
    let d = eu(delta);
    let num = er(5 * c + 2) * &d - er(6 * c + 3) * q + er(3 * c + 2);
    num.checked_div(&(er(c) * &d)).ok_or(DischargeError::Division("claim 5 ratio"))
}

/// Evaluates Claims 1, 2, 3 and 5 on `g` with threshold `q` and parameter `c`.
pub fn verify_claims(g: &Graph, q: &ExactReal, c: i64) -> Result<ClaimsReport, DischargeError> {
    if c <= 0 {
        return Err(DischargeError::Parameter(format!("c must be positive, got {c}")));
    }
    let ledger = discharge(g, q);
    let part = partition(g, q, c);
    let delta = eu(g.max_degree());

    // Claim 1: d(x) <= Δ - q + 2  =>  M'(x) >= d(x) + 2(Δ - q)
    let small = &delta - q + 2;
    let mut claim1 = ClaimVerdict::ok(1);
    for x in 0..g.vertex_count() {
        let d = eu(g.degree(x));
        if d > small {
            continue;
        }
        let need = &d + (&delta - q) * 2;
        if ledger.charge[x] < need {
            claim1 = ClaimVerdict::fail(1, Some(x), ledger.charge[x].clone(), need);
            break;
        }
    }

    // Claim 2: M'(x) >= q outside X1
    let mut claim2 = ClaimVerdict::ok(2);
    for x in 0..g.vertex_count() {
        if part.x1.contains(&x) {
            continue;
        }
        if ledger.charge[x] < *q {
            claim2 = ClaimVerdict::fail(2, Some(x), ledger.charge[x].clone(), q.clone());
            break;
        }
    }

    // Claim 3: d(y) > q on N(X1), and |N(X1)| >= 2|X1|
    let mut claim3 = ClaimVerdict::ok(3);
    if let Some(&y) = part.nx1.iter().find(|&&y| eu(g.degree(y)) <= *q) {
        claim3 = ClaimVerdict::fail(3, Some(y), eu(g.degree(y)), q.clone());
    } else if part.nx1.len() < 2 * part.x1.len() {
        claim3 = ClaimVerdict::fail(3, None, eu(part.nx1.len()), eu(2 * part.x1.len()));
    }

    // Claim 5
    let need = claim5_ratio(g.max_degree(), q, c)? * eu(part.nx1.len());
    let have = eu(part.z1.len());
    let claim5 = if have >= need { ClaimVerdict::ok(5) } else { ClaimVerdict::fail(5, None, have, need) };

    Ok(ClaimsReport { ledger, partition: part, claims: [claim1, claim2, claim3, claim5] })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim4Report {
    pub x: VertexId,
    pub y: VertexId,
    /// Neighbors `w != x` of `y` with `φ(yw)` missing at `x`.
    pub y_set: Vec<VertexId>,
    /// `y_set ∩ N(X1)`
    pub y1: Vec<VertexId>,
    /// `y_set - (X1 ∪ N(X1))`
    pub y2: Vec<VertexId>,
    /// Whether `|y_set| = Δ - d(x) + 1`.
    pub size_identity: bool,
    /// `Δ - 2d(x) + 3`
    pub need: i64,
    pub holds: bool,
}

/// The sets `Y`, `Y¹`, `Y²` for `φ ∈ C^Δ(G - xy)` and the inequality
/// `|Y²| >= Δ - 2d(x) + 3`. `q` fixes `X1`.
pub fn claim4_y_sets(
    phi: &PartialEdgeColoring,
    x: VertexId,
    y: VertexId,
    q: &ExactReal,
) -> Result<Claim4Report, DischargeError> {
    let g = phi.graph();
    let delta = g.max_degree();
    let e = g
        .edge_between(x, y)
        .ok_or_else(|| DischargeError::Parameter(format!("{x} and {y} are not adjacent")))?;
    if phi.palette() != delta {
        return Err(ColoringError::Precondition(format!("palette {} is not Δ = {delta}", phi.palette())).into());
    }
    if phi.uncolored_edges() != vec![e] {
        return Err(ColoringError::Precondition(format!("expected only {x}{y} uncolored")).into());
    }
    phi.validate()?;
    let part = partition(g, q, DEFAULT_C);
    let missing_x = phi.missing_colors(x);
    let y_set: Vec<VertexId> = g
        .incident(y)
        .iter()
        .filter(|&&(w, f)| w != x && phi.color(f).is_some_and(|c| missing_x.contains(c)))
        .map(|&(w, _)| w)
        .collect();
    let y1: Vec<VertexId> = y_set.iter().copied().filter(|w| part.nx1.contains(w)).collect();
    let y2: Vec<VertexId> = y_set
        .iter()
        .copied()
        .filter(|w| !part.nx1.contains(w) && !part.x1.contains(w))
        .collect();
    let dx = g.degree(x) as i64;
    let need = delta as i64 - 2 * dx + 3;
    Ok(Claim4Report {
        x,
        y,
        size_identity: y_set.len() as i64 == delta as i64 - dx + 1,
        holds: y2.len() as i64 >= need,
        y_set,
        y1,
        y2,
        need,
    })
}

/// Pairs `(x, y)` with `x ∈ X1` and `y ∈ N(x)`: where Claim 4 is stated.
pub fn claim4_pairs(g: &Graph, q: &ExactReal) -> Vec<(VertexId, VertexId)> {
    let part = partition(g, q, DEFAULT_C);
    let mut out = Vec::new();
    for &x in &part.x1 {
        for y in g.neighbors(x) {
            out.push((x, y));
        }
    }
    out
}

fn dec(s: &str) -> BigRational {
    s.parse::<ExactReal>().expect("valid decimal literal").rational_part().clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Bound {
    pub delta: usize,
    /// Exact value of the published linear expression.
    pub value: ExactReal,
    /// `value >= 2(Δ + 2)/3`
    pub beats_two_thirds: bool,
}

/// The piecewise-linear lower bound on the average degree of an
/// edge-`Δ`-critical graph, `Δ >= 56`.
pub fn bound_theorem1(delta: usize) -> Result<Theorem1Bound, DischargeError> {
    if delta < MIN_DELTA {
        return Err(DischargeError::DeltaTooSmall(delta));
    }
    let (slope, offset) = match delta {
        66.. => ("0.69241", "-0.15658"),
        65 => ("0.69392", "-0.20642"),
        _ => ("0.68706", "0.19815"),
    };
    let value = dec(slope) * BigRational::from_integer(BigInt::from(delta)) + dec(offset);
    let value = ExactReal::from_rational(value);
    let two_thirds = ExactReal::from_ratio(2 * (delta as i64 + 2), 3);
    Ok(Theorem1Bound { delta, beats_two_thirds: value >= two_thirds, value })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainRoute {
    /// `Δ - q - c > 0`: `q + (2 + 2Δ - 3q)/(3 + f(c))`
    Balanced,
    /// `Δ - q - c <= 0`: `q - (3q - 2Δ - 2)/(3 + f'(c))`
    SmallSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub delta: usize,
    pub c: ExactReal,
    pub q: ExactReal,
    pub branch: QBranch,
    pub q_star: ExactReal,
    pub a: ExactReal,
    /// `Δ - q - c`
    pub gap: ExactReal,
    pub route: ChainRoute,
    pub f: Option<ExactReal>,
    pub f_prime: Option<ExactReal>,
    pub f1: Option<ExactReal>,
    pub f2: Option<ExactReal>,
    pub bound: ExactReal,
    /// Balanced route with the `f_2` term dropped from the denominator:
    /// `q + f_1 Δ + (2cΔ + 3caΔ - f_2 f_1 Δ)/((18c+6)Δ - (18c+9)q*)`.
    pub relaxed: Option<ExactReal>,
}

/// Recomputes the bound derivation at `Δ` with parameter `c`.
pub fn bound_chain(delta: usize, c: &ExactReal) -> Result<ChainReport, DischargeError> {
    let QChoice { q, branch } = q_of(delta)?;
    if !c.is_positive() {
        return Err(DischargeError::Parameter("c must be positive".into()));
    }
    let d = eu(delta);
    let s = ExactReal::sqrt2();
    let (q_star, a) = match branch {
        QBranch::Sqrt2 => {
            let den = &s * 2 + 1;
            (&s * 2 * &d / &den, ExactReal::one() + ExactReal::one() / &den)
        }
        QBranch::ThreeQuarters => (&d * 3 / er(4), er(2)),
    };
    let slack = &d - &q;
    let gap = &slack - c;
    // (5c+2)Δ - (6c+3)q + 3c + 2
    let core = (c * 5 + 2) * &d - (c * 6 + 3) * &q + c * 3 + 2;
    let c_delta = c * &d;
    let div = |num: ExactReal, den: &ExactReal, what| num.checked_div(den).ok_or(DischargeError::Division(what));

    if gap.is_positive() {
        let f = (er(3) - div(c.clone(), &slack, "c/(Δ - q)")?) * div(core.clone(), &c_delta, "f(c)")?;
        let bound = &q + div(er(2) + &d * 2 - &q * 3, &(er(3) + &f), "3 + f(c)")?;
        let f1_den = (c * 18 + 6) * &d - (c * 18 + 9) * &q_star;
        let f1 = div(c * 2 * &d - c * 3 * &q_star, &f1_den, "f1")?;
        let f2_tail = (c * c * 5 + c * 2) * &d - (c * c * 6 + c * 3) * &q + c * c * 3 + c * 2;
        let f2 = c * 9 + 6 + (c * 18 + 9) * &a - div(f2_tail, &slack, "f2")?;
        let relaxed_num = c * 2 * &d + c * 3 * &a * &d - &f2 * &f1 * &d;
        let relaxed = &q + &f1 * &d + div(relaxed_num, &f1_den, "relaxed bound")?;
        Ok(ChainReport {
            delta,
            c: c.clone(),
            q,
            branch,
            q_star,
            a,
            gap,
            route: ChainRoute::Balanced,
            f: Some(f),
            f_prime: None,
            f1: Some(f1),
            f2: Some(f2),
            bound,
            relaxed: Some(relaxed),
        })
    } else {
        let f_prime = div(core * 2, &c_delta, "f'(c)")?;
        let bound = &q - div(&q * 3 - &d * 2 - 2, &(er(3) + &f_prime), "3 + f'(c)")?;
        Ok(ChainReport {
            delta,
            c: c.clone(),
            q,
            branch,
            q_star,
            a,
            gap,
            route: ChainRoute::SmallSet,
            f: None,
            f_prime: Some(f_prime),
            f1: None,
            f2: None,
            bound,
            relaxed: None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BoundValue {
    Exact(ExactReal),
    /// Ten-digit decimal, for values outside `Q[√2]`.
    Decimal(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub name: &'static str,
    pub value: BoundValue,
    pub approx: f64,
}

/// `√n` to `digits` places, rounded half-even.
fn sqrt_decimal(n: u64, digits: u32) -> (String, f64) {
    let extra = 4;
    let scale = BigInt::from(10u32).pow(2 * (digits + extra));
    let root = (BigInt::from(n) * scale).sqrt();
    let r = ExactReal::from_rational(BigRational::new(root, BigInt::from(10u32).pow(digits + extra)));
    (r.to_decimal(digits), (n as f64).sqrt())
}

fn isqrt_exact(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r * r == n).then_some(r)
}

fn exact_row(name: &'static str, v: ExactReal) -> BoundRow {
    BoundRow { name, approx: v.to_f64(), value: BoundValue::Exact(v) }
}

/// `(a + √n)/b` as a row; exact only when `√n` lies in `Q[√2]`.
fn surd_row(name: &'static str, a: i64, n: u64, b: i64) -> BoundRow {
    if let Some(r) = isqrt_exact(n) {
        return exact_row(name, ExactReal::from_ratio(a + r as i64, b));
    }
    if n.is_multiple_of(2) {
        if let Some(r) = isqrt_exact(n / 2) {
            return exact_row(name, (ExactReal::sqrt2() * r as i64 + a) / er(b));
        }
    }
    let (root, approx) = sqrt_decimal(n, 20);
    let root: BigRational = dec(&root);
    let v = (root + BigRational::from_integer(a.into())) / BigRational::from_integer(b.into());
    let v = ExactReal::from_rational(v);
    BoundRow { name, value: BoundValue::Decimal(v.to_decimal(10)), approx: (a as f64 + approx) / b as f64 }
}

/// Known lower bounds on the average degree of edge-`Δ`-critical graphs at
/// `Δ`, oldest first; rows appear only where their formula is stated. The
/// conjectured bound `Δ - 1 + 3/n` is added when `n` is given.
pub fn bound_table(delta: usize, n: Option<usize>) -> Result<Vec<BoundRow>, DischargeError> {
    if delta < 2 {
        return Err(DischargeError::Parameter(format!("Δ must be at least 2, got {delta}")));
    }
    let d = delta as i64;
    let mut rows = Vec::new();
    rows.push(exact_row(
        "fiorini",
        if d % 2 == 1 { ExactReal::from_ratio(d + 1, 2) } else { ExactReal::from_ratio(d + 2, 2) },
    ));
    match delta {
        9 | 11 | 13 => rows.push(exact_row("haile", ExactReal::from_ratio(3 * (d + 2), 5))),
        15 => rows.push(surd_row("haile", 15, 29, 2)),
        _ if d >= 10 && d % 2 == 0 => {
            rows.push(exact_row("haile", ExactReal::from_ratio(d + 6, 2) - ExactReal::from_ratio(12, d + 4)))
        }
        _ if d >= 17 && d % 2 == 1 => {
            rows.push(exact_row("haile", ExactReal::from_ratio(d + 7, 2) - ExactReal::from_ratio(16, d + 5)))
        }
        _ => {}
    }
    rows.push(surd_row("sanders-zhao", d, 2 * delta as u64 - 1, 2));
    let mut t = 0i64;
    while 2 * t * t < d {
        t += 1;
    }
    rows.push(exact_row("woodall-sqrt", ExactReal::from_ratio(t * (d + t - 1), 2 * t - 1)));
    rows.push(exact_row("woodall-2/3(Δ+1)", ExactReal::from_ratio(2 * (d + 1), 3)));
    if d >= 8 {
        rows.push(exact_row("woodall-2Δ/3+1", ExactReal::from_ratio(2 * d + 3, 3)));
    }
    if d >= 15 {
        rows.push(exact_row("woodall-2/3(Δ+2)", ExactReal::from_ratio(2 * (d + 2), 3)));
    }
    if delta >= MIN_DELTA {
        rows.push(exact_row("theorem-1", bound_theorem1(delta)?.value));
    }
    if let Some(n) = n.filter(|&n| n > 0) {
        rows.push(exact_row("conjecture", er(d - 1) + ExactReal::from_ratio(3, n as i64)));
    }
    Ok(rows)
}

/// Absolute difference as an `f64`, for tolerance checks.
pub fn abs_diff(a: &ExactReal, b: &ExactReal) -> f64 {
    (a - b).abs().to_f64()
}

/// Exact rational from a decimal or `p/q` literal.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let v: ExactReal = text.parse().ok()?;
    v.is_rational().then(|| v.rational_part().clone())
}

/// `Σ M'` lower bound implied by Claims 1 and 2 holding:
/// `q·n + (2 + 2Δ - 3q)|X1|`.
pub fn claims_charge_floor(n: usize, delta: usize, q: &ExactReal, x1: usize) -> ExactReal {
    q * eu(n) + (er(2) + eu(2 * delta) - q * 3) * eu(x1)
}

impl ChargeLedger {
    /// Recomputes each final charge from the transfer list.
    pub fn replay(&self) -> Vec<ExactReal> {
        let mut out: Vec<ExactReal> = self.initial.iter().map(|&d| eu(d)).collect();
        for t in &self.transfers {
            out[t.donor] = &out[t.donor] - &t.amount;
            out[t.recipient] = &out[t.recipient] + &t.amount;
        }
        out
    }
}

impl PartitionReport {
    pub fn covers(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for &v in self.x1.iter().chain(&self.nx1).chain(&self.z1).chain(&self.z2) {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }
}
