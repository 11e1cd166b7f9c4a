//! Generators for the instance families behind the stability and anarchy
//! bounds. Clique sizes default to the values that make the asymptotic
//! arguments work and can be overridden for brute-force-sized miniatures.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{AnchoredInstance, Instance, StrategyVector};
use crate::metric::{cycle_metric, make_metric, two_point_metric};
use crate::optimize::path_spacing;
use crate::rational::{ceil, format_rational, int, odds, rat, Rational};

const A: usize = 0;
const B: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionId {
    PoaClique,
    Fig1Ring,
    TwoStrategyStar,
    CycleMetricGadget,
    PathCliquesHalf,
    PathCliquesSubHalf,
    AnchoredStar,
    AnchoredFromDiscrete,
}

impl ConstructionId {
    pub const ALL: [ConstructionId; 8] = [
        ConstructionId::PoaClique,
        ConstructionId::Fig1Ring,
        ConstructionId::TwoStrategyStar,
        ConstructionId::CycleMetricGadget,
        ConstructionId::PathCliquesHalf,
        ConstructionId::PathCliquesSubHalf,
        ConstructionId::AnchoredStar,
        ConstructionId::AnchoredFromDiscrete,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionId::PoaClique => "poa_clique",
            ConstructionId::Fig1Ring => "fig1_ring",
            ConstructionId::TwoStrategyStar => "two_strategy_star",
            ConstructionId::CycleMetricGadget => "cycle_metric_gadget",
            ConstructionId::PathCliquesHalf => "path_cliques_half",
            ConstructionId::PathCliquesSubHalf => "path_cliques_sub_half",
            ConstructionId::AnchoredStar => "anchored_star",
            ConstructionId::AnchoredFromDiscrete => "anchored_from_discrete",
        }
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown construction {s:?}")))
    }
}

/// An instance together with the strategy vector the construction is about
/// (the bad equilibrium, the all-preferred equilibrium, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Designated {
    pub instance: Instance,
    pub vector: StrategyVector,
}

fn out_of_range(what: &str, alpha: &Rational) -> Error {
    Error::OutOfRange(format!("{what}: alpha = {}", format_rational(alpha)))
}

fn to_count(value: num_bigint::BigInt) -> Result<usize> {
    value
        .to_usize()
        .ok_or_else(|| Error::OutOfRange("size does not fit in memory".into()))
}

/// Clique of size `⌈α/(1-α)⌉ + 1` where everyone prefers A; all-B is a
/// positive-cost equilibrium while the optimum costs 0.
pub fn gen_poa_clique(alpha: &Rational) -> Result<Designated> {
    if !alpha.is_positive() || *alpha >= Rational::one() {
        return Err(out_of_range("poa clique needs 0 < alpha < 1", alpha));
    }
    let size = to_count(ceil(&odds(alpha)))? + 1;
    let instance = Instance::new(Graph::complete(size), two_point_metric(), vec![A; size], alpha.clone())?;
    Ok(Designated {
        instance,
        vector: StrategyVector::uniform(size, B),
    })
}

/// Outer 4-cycle (nodes 0..4), inner 4-cycle (4..8), spokes `i -- i+4`,
/// `α = 0`. Outer on A with inner on B is an equilibrium of cost 8.
pub fn gen_fig1_ring() -> Designated {
    let mut edges = Vec::new();
    for i in 0..4 {
        edges.push((i, (i + 1) % 4));
        edges.push((4 + i, 4 + (i + 1) % 4));
        edges.push((i, i + 4));
    }
    let graph = Graph::new(8, edges).expect("ring is simple");
    let instance = Instance::new(graph, two_point_metric(), vec![A; 8], Rational::zero()).expect("valid");
    let vector = StrategyVector::new(vec![A, A, A, A, B, B, B, B]);
    Designated { instance, vector }
}

/// Star whose centre (node 0) prefers B and whose `⌈α/(1-α) - 1⌉`
/// peripherals prefer A. Its price of stability meets the two-strategy
/// upper bound exactly.
pub fn gen_two_strategy_star(alpha: &Rational) -> Result<Instance> {
    if *alpha <= rat(1, 2) || *alpha >= Rational::one() || *alpha == rat(2, 3) {
        return Err(out_of_range("two-strategy star needs 1/2 < alpha < 1, alpha != 2/3", alpha));
    }
    let leaves = to_count(ceil(&(odds(alpha) - Rational::one())))?;
    let n = leaves + 1;
    let mut preferred = vec![A; n];
    preferred[0] = B;
    let graph = Graph::new(n, (1..n).map(|j| (0, j)))?;
    Instance::new(graph, two_point_metric(), preferred, alpha.clone())
}

/// Cycle-metric gadget at `α = 1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleGadget {
    pub instance: Instance,
    pub k: usize,
    pub clique_size: usize,
    /// Strategies A, B, C on the cycle.
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl CycleGadget {
    pub const CENTRAL: usize = 0;

    /// Everyone on their preferred strategy (the equilibrium of cost `2k`).
    pub fn all_preferred(&self) -> StrategyVector {
        self.instance.all_preferred()
    }

    /// All preferred except the central node, which plays B.
    pub fn central_to_b(&self) -> StrategyVector {
        self.all_preferred().with(Self::CENTRAL, self.b)
    }
}

/// Cycle metric of size `3k+1` with `d(A,B) = d(A,C) = k`, `d(B,C) = k+1`.
/// Node 0 prefers A and is linked to one node of a B-clique and one node of
/// a C-clique, each of size `clique_size` (default `3k`).
pub fn gen_cycle_gadget(k: usize, clique_size: Option<usize>) -> Result<CycleGadget> {
    if k == 0 {
        return Err(Error::OutOfRange("cycle gadget needs k >= 1".into()));
    }
    let size = clique_size.unwrap_or(3 * k);
    if size == 0 {
        return Err(Error::OutOfRange("clique size must be positive".into()));
    }
    let metric = cycle_metric(3 * k + 1)?;
    let (a, b, c) = (0, k, 2 * k + 1);
    let n = 1 + 2 * size;
    let b_nodes: Vec<usize> = (1..=size).collect();
    let c_nodes: Vec<usize> = (size + 1..=2 * size).collect();
    let mut edges = vec![(0, b_nodes[0]), (0, c_nodes[0])];
    for group in [&b_nodes, &c_nodes] {
        for (x, &u) in group.iter().enumerate() {
            edges.extend(group[x + 1..].iter().map(|&v| (u, v)));
        }
    }
    let mut preferred = vec![a; n];
    for &u in &b_nodes {
        preferred[u] = b;
    }
    for &u in &c_nodes {
        preferred[u] = c;
    }
    let instance = Instance::new(Graph::new(n, edges)?, metric, preferred, rat(1, 2))?;
    Ok(CycleGadget {
        instance,
        k,
        clique_size: size,
        a,
        b,
        c,
    })
}

/// Path-and-cliques family.
///
/// Strategies are `s_0, ..., s_{n+1}`. Path nodes `0..n` prefer `s_1..s_n`;
/// the left clique prefers `s_0` and touches path node 0 through its first
/// node; the right clique prefers `s_{n+1}` and touches path node `n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCliques {
    pub instance: Instance,
    pub n: usize,
    pub clique_size: usize,
}

impl PathCliques {
    pub fn path_node(&self, i: usize) -> usize {
        assert!((1..=self.n).contains(&i));
        i - 1
    }

    pub fn left_clique(&self) -> std::ops::Range<usize> {
        self.n..self.n + self.clique_size
    }

    pub fn right_clique(&self) -> std::ops::Range<usize> {
        self.n + self.clique_size..self.n + 2 * self.clique_size
    }

    /// Path nodes `1..=split` join the left clique on `s_0`, the rest join
    /// the right clique on `s_{n+1}`.
    pub fn bi_consensus(&self, split: usize) -> StrategyVector {
        assert!(split <= self.n);
        let mut z = self.instance.all_preferred();
        for i in 1..=self.n {
            z[self.path_node(i)] = if i <= split { 0 } else { self.n + 1 };
        }
        z
    }
}

/// `d(s_i, s_j) = 1 + (|i-j| - 1)·gap` for `i ≠ j`.
fn spaced_metric(points: usize, gap: &Rational) -> Result<crate::metric::Metric> {
    let matrix = (0..points)
        .map(|i| {
            (0..points)
                .map(|j| {
                    if i == j {
                        Rational::zero()
                    } else {
                        Rational::one() + int(i.abs_diff(j) as i64 - 1) * gap
                    }
                })
                .collect()
        })
        .collect();
    make_metric(matrix)
}

/// `α = 1/2` uses spacing `ε`; `0 < α < 1/2` uses `(1-2α)/(1-α)·(1+ε)`.
/// Default clique size is `n²` at `α = 1/2` and `⌈n²/α⌉` below it.
pub fn gen_path_cliques(alpha: &Rational, n: usize, eps: &Rational, clique_size: Option<usize>) -> Result<PathCliques> {
    let half = rat(1, 2);
    if !alpha.is_positive() || *alpha > half {
        return Err(out_of_range("path cliques need 0 < alpha <= 1/2", alpha));
    }
    if n < 2 {
        return Err(Error::OutOfRange(format!("path length {n} < 2")));
    }
    if !eps.is_positive() {
        return Err(Error::OutOfRange("eps must be positive".into()));
    }
    let gap = if *alpha == half {
        eps.clone()
    } else {
        path_spacing(alpha, eps)
    };
    let metric = spaced_metric(n + 2, &gap)?;
    let default_size = if *alpha == half {
        n * n
    } else {
        to_count(ceil(&(int((n * n) as i64) / alpha)))?
    };
    let size = clique_size.unwrap_or(default_size);
    if size == 0 {
        return Err(Error::OutOfRange("clique size must be positive".into()));
    }

    let total = n + 2 * size;
    let left: Vec<usize> = (n..n + size).collect();
    let right: Vec<usize> = (n + size..total).collect();
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, left[0]));
    edges.push((n - 1, right[0]));
    for group in [&left, &right] {
        for (x, &u) in group.iter().enumerate() {
            edges.extend(group[x + 1..].iter().map(|&v| (u, v)));
        }
    }
    let mut preferred: Vec<usize> = (1..=n).collect();
    preferred.extend(std::iter::repeat_n(0, size));
    preferred.extend(std::iter::repeat_n(n + 1, size));
    let instance = Instance::new(Graph::new(total, edges)?, metric, preferred, alpha.clone())?;
    Ok(PathCliques {
        instance,
        n,
        clique_size: size,
    })
}

/// Anchored star: strategic centre 0 with `k` fixed A-neighbours, and a
/// strategic `(k-1)`-clique attached to it whose members each have `k`
/// fixed B-neighbours.
pub fn gen_anchored_star(k: usize) -> Result<AnchoredInstance> {
    if k < 3 {
        return Err(Error::OutOfRange(format!("anchored star needs k >= 3, got {k}")));
    }
    let center = 0;
    let mut next = 1;
    let mut edges = Vec::new();
    let mut fixed = Vec::new();
    for _ in 0..k {
        edges.push((center, next));
        fixed.push((next, A));
        next += 1;
    }
    let clique: Vec<usize> = (next..next + k - 1).collect();
    next += k - 1;
    for (x, &u) in clique.iter().enumerate() {
        edges.push((center, u));
        edges.extend(clique[x + 1..].iter().map(|&v| (u, v)));
        for _ in 0..k {
            edges.push((u, next));
            fixed.push((next, B));
            next += 1;
        }
    }
    let mut strategic = vec![center];
    strategic.extend(&clique);
    AnchoredInstance::new(Graph::new(next, edges)?, two_point_metric(), &fixed, &strategic)
}

/// Every node becomes strategic and gains a private fixed neighbour `n + i`
/// anchored at its old preferred strategy. Requires `α = 1/2`; anchored
/// costs are then exactly twice the original ones.
pub fn discrete_to_anchored(inst: &Instance) -> Result<AnchoredInstance> {
    if *inst.alpha() != rat(1, 2) {
        return Err(Error::WrongAlpha(format_rational(inst.alpha())));
    }
    let n = inst.node_count();
    let mut edges = inst.graph().edges().to_vec();
    edges.extend((0..n).map(|i| (i, n + i)));
    let fixed: Vec<_> = (0..n).map(|i| (n + i, inst.preferred()[i])).collect();
    let strategic: Vec<_> = (0..n).collect();
    AnchoredInstance::new(Graph::new(2 * n, edges)?, inst.metric().clone(), &fixed, &strategic)
}
