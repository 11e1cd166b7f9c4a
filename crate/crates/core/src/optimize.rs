//! Exhaustive optimisation and equilibrium enumeration, the
//! equilibrium-from-optimum pipelines, and closed-form bound evaluators.
//!
//! Enumeration runs on an integer-scaled copy of the game: every cost table
//! is multiplied by the least common denominator, so comparisons stay exact
//! while the inner loop avoids big-rational arithmetic.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::costs::{anchored_social_cost, deviation_contribution, social_cost};
use crate::dynamics::{
    anchored_descent, best_responses, potential_descent, two_phase_schedule, Picker, Trace,
};
use crate::error::{Error, Result};
use crate::instance::{AnchoredInstance, Instance, StrategyVector};
use crate::rational::{ceil, floor_sqrt, format_rational, int, odds, rat, Rational};

pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// A price ratio; `Infinite` when a positive cost is compared with a zero optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ratio {
    Finite(Rational),
    Infinite,
}

impl Ratio {
    /// `numer / denom` with `0/0 = 1`.
    pub fn of(numer: &Rational, denom: &Rational) -> Ratio {
        if denom.is_zero() {
            if numer.is_zero() {
                Ratio::Finite(Rational::one())
            } else {
                Ratio::Infinite
            }
        } else {
            Ratio::Finite(numer / denom)
        }
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Ratio::Finite(r) => Some(r),
            Ratio::Infinite => None,
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ratio::Finite(r) => f.write_str(&format_rational(r)),
            Ratio::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn ser_rational<S: serde::Serializer>(value: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(value))
}

// ---------------------------------------------------------------------------
// Integer kernel
// ---------------------------------------------------------------------------

trait Score: Clone + Ord + Zero + AddAssign + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    fn from_big(value: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Score for i64 {
    fn from_big(value: &BigInt) -> Self {
        value.to_i64().expect("checked to fit")
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Score for BigInt {
    fn from_big(value: &BigInt) -> Self {
        value.clone()
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Game in "preference table + edge table" form. Both the discrete game
/// (`pref[i][s] = α d(s_i, s)`, `edge = (1-α) d`) and the anchored game
/// (`pref[i][s] = Σ_{fixed j∈N(i)} d(s, s_j)`, `edge = d`) fit it:
/// player cost `pref[i][z_i] + Σ_{j∈N(i)} edge[z_i][z_j]`,
/// social cost `Σ pref + 2 Σ_E edge`, potential `Σ pref + Σ_E edge`.
struct Tables {
    strategies: usize,
    pref: Vec<Vec<Rational>>,
    edge: Vec<Vec<Rational>>,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Tables {
    fn discrete(inst: &Instance) -> Self {
        let metric = inst.metric();
        let l = inst.strategy_count();
        let alpha = inst.alpha();
        let beta = Rational::one() - alpha;
        let pref = inst
            .preferred()
            .iter()
            .map(|&si| (0..l).map(|s| alpha * metric.d(si, s)).collect())
            .collect();
        let edge = (0..l)
            .map(|a| (0..l).map(|b| &beta * metric.d(a, b)).collect())
            .collect();
        let graph = inst.graph();
        Tables {
            strategies: l,
            pref,
            edge,
            adjacency: (0..graph.node_count()).map(|i| graph.neighbors(i).to_vec()).collect(),
            edges: graph.edges().to_vec(),
        }
    }

    fn anchored(inst: &AnchoredInstance) -> Self {
        let metric = inst.metric();
        let l = inst.strategy_count();
        let pref = inst
            .strategic()
            .iter()
            .map(|&node| {
                let anchors = inst.fixed_neighbor_prefs(node);
                (0..l)
                    .map(|s| anchors.iter().fold(Rational::zero(), |acc, &p| acc + metric.d(s, p)))
                    .collect()
            })
            .collect();
        let edge = (0..l).map(|a| (0..l).map(|b| metric.d(a, b).clone()).collect()).collect();
        let adjacency: Vec<Vec<usize>> = inst
            .strategic()
            .iter()
            .map(|&node| {
                inst.strategic_neighbors(node)
                    .into_iter()
                    .map(|j| inst.slot(j).expect("strategic"))
                    .collect()
            })
            .collect();
        let edges = adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        Tables {
            strategies: l,
            pref,
            edge,
            adjacency,
            edges,
        }
    }

    fn players(&self) -> usize {
        self.pref.len()
    }

    fn check_budget(&self, budget: u64) -> Result<()> {
        let size = BigUint::from(self.strategies).pow(self.players() as u32);
        if size > BigUint::from(budget) {
            return Err(Error::search_too_large(&size, budget));
        }
        Ok(())
    }

    fn denominator(&self) -> BigInt {
        self.pref
            .iter()
            .chain(&self.edge)
            .flatten()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
    }
}

struct Kernel<T> {
    strategies: usize,
    pref: Vec<Vec<T>>,
    edge: Vec<Vec<T>>,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    scale: BigInt,
}

impl<T: Score> Kernel<T> {
    fn new(tables: &Tables, scale: BigInt) -> Self {
        let lift = |r: &Rational| T::from_big(&(r.numer() * (&scale / r.denom())));
        Kernel {
            strategies: tables.strategies,
            pref: tables.pref.iter().map(|row| row.iter().map(lift).collect()).collect(),
            edge: tables.edge.iter().map(|row| row.iter().map(lift).collect()).collect(),
            adjacency: tables.adjacency.clone(),
            edges: tables.edges.clone(),
            scale,
        }
    }

    fn to_rational(&self, value: &T) -> Rational {
        Rational::new(value.to_big(), self.scale.clone())
    }

    fn player_cost(&self, z: &[usize], i: usize, s: usize) -> T {
        let mut total = self.pref[i][s].clone();
        for &j in &self.adjacency[i] {
            total += self.edge[s][z[j]].clone();
        }
        total
    }

    fn is_equilibrium(&self, z: &[usize]) -> bool {
        (0..z.len()).all(|i| {
            let here = self.player_cost(z, i, z[i]);
            (0..self.strategies).all(|s| s == z[i] || self.player_cost(z, i, s) >= here)
        })
    }

    fn totals(&self, z: &[usize]) -> (T, T) {
        let mut pref = T::zero();
        for (i, &s) in z.iter().enumerate() {
            pref += self.pref[i][s].clone();
        }
        let mut edges = T::zero();
        for &(u, v) in &self.edges {
            edges += self.edge[z[u]][z[v]].clone();
        }
        (pref.clone() + edges.clone() + edges.clone(), pref + edges)
    }

    /// Visits every vector in lexicographic order with its social cost and
    /// potential, both maintained incrementally.
    fn scan(&self, mut visit: impl FnMut(&[usize], &T, &T)) {
        let n = self.pref.len();
        let mut z = vec![0usize; n];
        let (mut social, mut phi) = self.totals(&z);
        loop {
            visit(&z, &social, &phi);
            // odometer step, last coordinate fastest
            let mut pos = n;
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                let old = z[pos];
                let new = if old + 1 < self.strategies { old + 1 } else { 0 };
                let mut edge_delta = T::zero();
                let mut edge_undo = T::zero();
                for &j in &self.adjacency[pos] {
                    edge_delta += self.edge[new][z[j]].clone();
                    edge_undo += self.edge[old][z[j]].clone();
                }
                let pref_delta = self.pref[pos][new].clone() - self.pref[pos][old].clone();
                let edge_change = edge_delta - edge_undo;
                social = social + pref_delta.clone() + edge_change.clone() + edge_change.clone();
                phi = phi + pref_delta + edge_change;
                z[pos] = new;
                if new != 0 {
                    break;
                }
            }
        }
    }
}

/// Everything one exhaustive pass learns about a game.
#[derive(Debug, Clone)]
struct Sweep {
    opt_cost: Rational,
    optima: Vec<StrategyVector>,
    opt_vector: StrategyVector,
    best_eq_cost: Rational,
    best_eq_vector: StrategyVector,
    worst_eq_cost: Rational,
    worst_eq_vector: StrategyVector,
    num_equilibria: u64,
}

/// Optimum cost, all optimal vectors, least potential among them and its vector.
type OptAcc<T> = (T, Vec<Vec<usize>>, T, Vec<usize>);

struct Acc<T> {
    opt: Option<OptAcc<T>>,
    best_eq: Option<(T, Vec<usize>)>,
    worst_eq: Option<(T, Vec<usize>)>,
    equilibria: u64,
}

fn sweep_with<T: Score>(tables: &Tables, scale: BigInt, with_equilibria: bool) -> Sweep {
    let kernel = Kernel::<T>::new(tables, scale);
    let mut acc: Acc<T> = Acc {
        opt: None,
        best_eq: None,
        worst_eq: None,
        equilibria: 0,
    };
    kernel.scan(|z, social, phi| {
        match &mut acc.opt {
            None => acc.opt = Some((social.clone(), vec![z.to_vec()], phi.clone(), z.to_vec())),
            Some((cost, all, best_phi, best)) => {
                if social < cost {
                    *cost = social.clone();
                    *all = vec![z.to_vec()];
                    *best_phi = phi.clone();
                    *best = z.to_vec();
                } else if social == cost {
                    all.push(z.to_vec());
                    if phi < best_phi {
                        *best_phi = phi.clone();
                        *best = z.to_vec();
                    }
                }
            }
        }
        if with_equilibria && kernel.is_equilibrium(z) {
            acc.equilibria += 1;
            if acc.best_eq.as_ref().is_none_or(|(c, _)| social < c) {
                acc.best_eq = Some((social.clone(), z.to_vec()));
            }
            if acc.worst_eq.as_ref().is_none_or(|(c, _)| social > c) {
                acc.worst_eq = Some((social.clone(), z.to_vec()));
            }
        }
    });
    let (opt, optima, _, opt_vector) = acc.opt.expect("non-empty space");
    let sv = StrategyVector::new;
    let (best_cost, best_vec) = acc.best_eq.unwrap_or_else(|| (opt.clone(), opt_vector.clone()));
    let (worst_cost, worst_vec) = acc.worst_eq.unwrap_or_else(|| (opt.clone(), opt_vector.clone()));
    Sweep {
        opt_cost: kernel.to_rational(&opt),
        optima: optima.into_iter().map(sv).collect(),
        opt_vector: sv(opt_vector),
        best_eq_cost: kernel.to_rational(&best_cost),
        best_eq_vector: sv(best_vec),
        worst_eq_cost: kernel.to_rational(&worst_cost),
        worst_eq_vector: sv(worst_vec),
        num_equilibria: acc.equilibria,
    }
}

fn run_sweep(tables: &Tables, budget: u64, with_equilibria: bool) -> Result<Sweep> {
    tables.check_budget(budget)?;
    let scale = tables.denominator();
    let max_entry = tables
        .pref
        .iter()
        .chain(&tables.edge)
        .flatten()
        .map(|r| (r.numer() * (&scale / r.denom())).abs())
        .max()
        .unwrap_or_default();
    let terms = tables.players() + 2 * tables.edges.len() + 4;
    let headroom = max_entry * BigInt::from(terms);
    let sweep = if headroom < BigInt::from(i64::MAX / 4) {
        sweep_with::<i64>(tables, scale, with_equilibria)
    } else {
        sweep_with::<BigInt>(tables, scale, with_equilibria)
    };
    if with_equilibria && sweep.num_equilibria == 0 {
        return Err(Error::BoundViolated("no pure equilibrium found".into()));
    }
    Ok(sweep)
}

// ---------------------------------------------------------------------------
// Optimum and equilibria
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub cost: Rational,
    /// All optimal vectors in lexicographic order.
    pub vectors: Vec<StrategyVector>,
}

/// Global minimum of the social cost by enumerating all `|L|^n` vectors.
pub fn brute_force_optimum(inst: &Instance, budget: u64) -> Result<Optimum> {
    let sweep = run_sweep(&Tables::discrete(inst), budget, false)?;
    Ok(Optimum {
        cost: sweep.opt_cost,
        vectors: sweep.optima,
    })
}

/// The optimum of least potential; lexicographically first among ties.
pub fn potential_min_optimum(inst: &Instance, budget: u64) -> Result<StrategyVector> {
    Ok(run_sweep(&Tables::discrete(inst), budget, false)?.opt_vector)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumSummary {
    pub best_cost: Rational,
    pub best_vector: StrategyVector,
    pub worst_cost: Rational,
    pub worst_vector: StrategyVector,
    pub count: u64,
}

/// Best and worst pure Nash equilibria by social cost (first in
/// lexicographic order among ties).
pub fn enumerate_equilibria(inst: &Instance, budget: u64) -> Result<EquilibriumSummary> {
    let s = run_sweep(&Tables::discrete(inst), budget, true)?;
    Ok(EquilibriumSummary {
        best_cost: s.best_eq_cost,
        best_vector: s.best_eq_vector,
        worst_cost: s.worst_eq_cost,
        worst_vector: s.worst_eq_vector,
        count: s.num_equilibria,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    #[serde(serialize_with = "ser_rational")]
    pub opt_cost: Rational,
    /// Potential-minimal optimum.
    pub opt_vector: StrategyVector,
    #[serde(serialize_with = "ser_rational")]
    pub best_eq_cost: Rational,
    pub best_eq_vector: StrategyVector,
    #[serde(serialize_with = "ser_rational")]
    pub worst_eq_cost: Rational,
    pub worst_eq_vector: StrategyVector,
    pub pos: Ratio,
    pub poa: Ratio,
    pub num_optima: u64,
    pub num_equilibria: u64,
}

impl AnalysisReport {
    fn from_sweep(s: Sweep) -> Result<Self> {
        let pos = Ratio::of(&s.best_eq_cost, &s.opt_cost);
        let poa = Ratio::of(&s.worst_eq_cost, &s.opt_cost);
        let report = AnalysisReport {
            pos,
            poa,
            num_optima: s.optima.len() as u64,
            num_equilibria: s.num_equilibria,
            opt_cost: s.opt_cost,
            opt_vector: s.opt_vector,
            best_eq_cost: s.best_eq_cost,
            best_eq_vector: s.best_eq_vector,
            worst_eq_cost: s.worst_eq_cost,
            worst_eq_vector: s.worst_eq_vector,
        };
        report.check()?;
        Ok(report)
    }

    /// Ordering of the three costs and the factor-2 stability bound.
    fn check(&self) -> Result<()> {
        if !(self.opt_cost <= self.best_eq_cost && self.best_eq_cost <= self.worst_eq_cost) {
            return Err(Error::BoundViolated("opt <= best eq <= worst eq".into()));
        }
        match self.pos.finite() {
            Some(p) if *p <= int(2) => Ok(()),
            _ => Err(Error::BoundViolated(format!("price of stability {} exceeds 2", self.pos))),
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "opt: {}\nbest_eq: {}\nworst_eq: {}\npos: {}\npoa: {}\noptima: {}\nequilibria: {}",
            format_rational(&self.opt_cost),
            format_rational(&self.best_eq_cost),
            format_rational(&self.worst_eq_cost),
            self.pos,
            self.poa,
            self.num_optima,
            self.num_equilibria
        )
    }
}

pub fn analyze(inst: &Instance, budget: u64) -> Result<AnalysisReport> {
    AnalysisReport::from_sweep(run_sweep(&Tables::discrete(inst), budget, true)?)
}

/// Same report for an anchored game; vectors index strategic slots.
pub fn analyze_anchored(inst: &AnchoredInstance, budget: u64) -> Result<AnalysisReport> {
    AnalysisReport::from_sweep(run_sweep(&Tables::anchored(inst), budget, true)?)
}

pub fn anchored_optimum(inst: &AnchoredInstance, budget: u64) -> Result<Optimum> {
    let sweep = run_sweep(&Tables::anchored(inst), budget, false)?;
    Ok(Optimum {
        cost: sweep.opt_cost,
        vectors: sweep.optima,
    })
}

// ---------------------------------------------------------------------------
// Equilibrium-from-optimum pipelines
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pipeline {
    pub optimum: StrategyVector,
    pub opt_cost: Rational,
    pub trace: Trace,
    pub eq_cost: Rational,
    pub ratio: Ratio,
}

impl Pipeline {
    pub fn equilibrium(&self) -> &StrategyVector {
        &self.trace.end
    }
}

/// Two-phase schedule started from the potential-minimal optimum.
pub fn equilibrium_from_optimum_two(inst: &Instance, budget: u64) -> Result<Pipeline> {
    if inst.strategy_count() != 2 {
        return Err(Error::NotTwoStrategies(inst.strategy_count()));
    }
    let optimum = potential_min_optimum(inst, budget)?;
    let opt_cost = social_cost(inst, &optimum)?;
    let trace = two_phase_schedule(inst, &optimum)?;
    let eq_cost = social_cost(inst, &trace.end)?;
    let ratio = Ratio::of(&eq_cost, &opt_cost);
    let half = rat(1, 2);
    let alpha = inst.alpha();
    if *alpha > half && *alpha < Rational::one() {
        let bound = pos_upper_bound_two(alpha)?;
        if ratio.finite().is_none_or(|r| *r > bound) {
            return Err(Error::BoundViolated(format!("two-phase ratio {ratio} above {}", format_rational(&bound))));
        }
    }
    Ok(Pipeline {
        optimum,
        opt_cost,
        trace,
        eq_cost,
        ratio,
    })
}

/// Coherent-response descent from the lexicographically first optimum. Each
/// step moves a player to a strategy that is both a best response and a
/// social-cost minimiser, so the social cost never changes while the
/// potential strictly drops. Needs a tree metric and `α ≤ 1/2`.
pub fn equilibrium_from_optimum_tree(inst: &Instance, budget: u64) -> Result<Pipeline> {
    if !inst.metric().is_tree_metric() {
        return Err(Error::NotTreeMetric);
    }
    if *inst.alpha() > rat(1, 2) {
        return Err(Error::OutOfRange("tree pipeline needs alpha <= 1/2".into()));
    }
    let opt = brute_force_optimum(inst, budget)?;
    let optimum = opt.vectors[0].clone();
    let trace = potential_descent(inst, &optimum, Picker::CoherentTree)?;
    let mut z = optimum.clone();
    for mv in &trace.moves {
        z[mv.player] = mv.to;
        if social_cost(inst, &z)? != opt.cost {
            return Err(Error::BoundViolated(format!("coherent move of player {} changed the social cost", mv.player)));
        }
    }
    let eq_cost = social_cost(inst, &trace.end)?;
    Ok(Pipeline {
        ratio: Ratio::of(&eq_cost, &opt.cost),
        optimum,
        opt_cost: opt.cost,
        trace,
        eq_cost,
    })
}

/// Anchored analogue of [`equilibrium_from_optimum_tree`] for `k ≤ 2`.
pub fn anchored_equilibrium_from_optimum(inst: &AnchoredInstance, budget: u64) -> Result<Pipeline> {
    if !inst.metric().is_tree_metric() {
        return Err(Error::NotTreeMetric);
    }
    let opt = anchored_optimum(inst, budget)?;
    let optimum = opt.vectors[0].clone();
    let trace = anchored_descent(inst, &optimum, Picker::CoherentTree)?;
    let mut z = optimum.clone();
    for mv in &trace.moves {
        z[inst.slot(mv.player).expect("strategic")] = mv.to;
        if anchored_social_cost(inst, &z)? != opt.cost {
            return Err(Error::BoundViolated(format!("coherent move of node {} changed the social cost", mv.player)));
        }
    }
    let eq_cost = anchored_social_cost(inst, &trace.end)?;
    Ok(Pipeline {
        ratio: Ratio::of(&eq_cost, &opt.cost),
        optimum,
        opt_cost: opt.cost,
        trace,
        eq_cost,
    })
}

// ---------------------------------------------------------------------------
// Single-player deviation from an optimum
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleDeviation {
    /// Lowest-indexed best response of the deviating player.
    pub response: usize,
    /// `SC_i(x_i, y_-i) / SC_i(y)`.
    pub ratio: Rational,
    /// `2 / (2 - α)`.
    pub bound: Rational,
    /// `d(s_i, x_i) > d(s_i, y_i) - Σ_{j∈N(i)} d(y_i, y_j)`.
    pub preference_gap_holds: bool,
}

/// Contribution ratio when player `i` leaves the optimum `y` for a best
/// response. `y` is assumed optimal; `i` must strictly improve.
pub fn single_deviation_ratio(inst: &Instance, y: &StrategyVector, i: usize) -> Result<SingleDeviation> {
    if *inst.alpha() > rat(1, 2) {
        return Err(Error::OutOfRange("single-deviation bound needs alpha <= 1/2".into()));
    }
    let responses = best_responses(inst, y, i)?;
    let response = responses[0];
    if responses.contains(&y[i]) {
        return Err(Error::NotImproving(i));
    }
    let before = deviation_contribution(inst, y, i, y[i]);
    let after = deviation_contribution(inst, y, i, response);
    let metric = inst.metric();
    let pref = inst.preferred()[i];
    let spread = inst
        .graph()
        .neighbors(i)
        .iter()
        .fold(Rational::zero(), |acc, &j| acc + metric.d(y[i], y[j]));
    Ok(SingleDeviation {
        response,
        ratio: after / before,
        bound: single_deviation_bound(inst.alpha()),
        preference_gap_holds: metric.d(pref, response) > &(metric.d(pref, y[i]) - spread),
    })
}

pub fn single_deviation_bound(alpha: &Rational) -> Rational {
    int(2) / (int(2) - alpha)
}

// ---------------------------------------------------------------------------
// Closed-form bounds
// ---------------------------------------------------------------------------

/// `2⌈α/(1-α) - 1⌉ (1-α)/α` for `1/2 < α < 1`.
pub fn pos_upper_bound_two(alpha: &Rational) -> Result<Rational> {
    if *alpha <= rat(1, 2) || *alpha >= Rational::one() {
        return Err(Error::OutOfRange(format!(
            "two-strategy bound needs 1/2 < alpha < 1, got {}",
            format_rational(alpha)
        )));
    }
    let steps = Rational::from_integer(ceil(&(odds(alpha) - Rational::one())));
    Ok(int(2) * steps * (Rational::one() - alpha) / alpha)
}

/// Price-of-stability bound for anchored games on tree metrics whose
/// strategic nodes have at most `k` fixed neighbours.
pub fn anchored_pos_bound(k: usize) -> Result<Rational> {
    match k {
        0 => Err(Error::OutOfRange("k must be at least 1".into())),
        1 | 2 => Ok(Rational::one()),
        k => Ok(rat(2 * (k as i64 - 1), k as i64)),
    }
}

/// Spacing factor `(1-2α)/(1-α)·(1+ε)` of the path-and-cliques metric for α < 1/2.
pub fn path_spacing(alpha: &Rational, eps: &Rational) -> Rational {
    (Rational::one() - int(2) * alpha) / (Rational::one() - alpha) * (Rational::one() + eps)
}

/// Cost `2(1-α)(n+1)` of the all-preferred equilibrium of the path family.
pub fn path_equilibrium_cost(alpha: &Rational, n: u64) -> Rational {
    int(2) * (Rational::one() - alpha) * Rational::from_integer((n + 1).into())
}

/// Closed-form upper bound on the best bi-consensus cost of the path family:
/// `αn + α(n-1)²/4·c + 2(1-α) + 2n(1-2α)(1+ε)` with `c` the spacing factor.
pub fn bi_consensus_cost_bound(alpha: &Rational, eps: &Rational, n: u64) -> Rational {
    let n_r = Rational::from_integer(n.into());
    let spacing = path_spacing(alpha, eps);
    let sq = Rational::from_integer(((n - 1) * (n - 1)).into());
    alpha * &n_r
        + alpha * sq / int(4) * spacing
        + int(2) * (Rational::one() - alpha)
        + int(2) * n_r * (Rational::one() - int(2) * alpha) * (Rational::one() + eps)
}

/// Lower bound on the PoS certified by the path family of length `n`.
pub fn path_lower_ratio(alpha: &Rational, eps: &Rational, n: u64) -> Rational {
    path_equilibrium_cost(alpha, n) / bi_consensus_cost_bound(alpha, eps, n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundPoint {
    pub n_star: u64,
    pub ratio: Rational,
}

/// Smallest path length the family is evaluated at.
pub const MIN_PATH_LEN: u64 = 2;

/// Best path length for `0 < α < 1/2`. The stationary point is
/// `n* = 2√((2-3α)/(1-2α)) - 1`; its floor and ceiling are bracketed with an
/// exact integer square root and a small window around them is compared by
/// exact ratio. Ties go to the smaller `n`.
pub fn lower_bound_curve(alpha: &Rational, eps: &Rational) -> Result<LowerBoundPoint> {
    if !alpha.is_positive() || *alpha >= rat(1, 2) {
        return Err(Error::OutOfRange(format!(
            "lower-bound curve needs 0 < alpha < 1/2, got {}",
            format_rational(alpha)
        )));
    }
    if !eps.is_positive() {
        return Err(Error::OutOfRange("eps must be positive".into()));
    }
    let radicand = int(4) * (int(2) - int(3) * alpha) / (Rational::one() - int(2) * alpha);
    // floor(2√R) = m, so n* lies in [m-1, m)
    let m = floor_sqrt(&radicand)
        .to_u64()
        .ok_or_else(|| Error::OutOfRange("alpha too close to 1/2".into()))?;
    const WINDOW: u64 = 3;
    let lo = m.saturating_sub(1 + WINDOW).max(MIN_PATH_LEN);
    let hi = (m + WINDOW).max(lo);
    let mut best: Option<LowerBoundPoint> = None;
    for n in lo..=hi {
        let ratio = path_lower_ratio(alpha, eps, n);
        if best.as_ref().is_none_or(|b| ratio > b.ratio) {
            best = Some(LowerBoundPoint { n_star: n, ratio });
        }
    }
    Ok(best.expect("non-empty window"))
}
