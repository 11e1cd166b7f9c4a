//! Medians and separators of node-weighted trees, and the response trees
//! whose medians are exactly a player's best responses (or social-cost
//! minimisers) under a tree metric.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::instance::{AnchoredInstance, Instance, StrategyVector};
use crate::rational::{alpha_weights, Rational};

/// A tree over the strategy set with non-negative integer node weights.
/// Edge lengths are carried so that median scores use the tree's path metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedTree {
    adjacency: Vec<Vec<(usize, Rational)>>,
    dist: Vec<Vec<Rational>>,
    weights: Vec<u64>,
}

impl WeightedTree {
    pub fn new(edges: &[(usize, usize, Rational)], weights: Vec<u64>) -> Result<Self> {
        let metric = crate::metric::tree_metric(weights.len(), edges)?;
        let mut adjacency = vec![Vec::new(); weights.len()];
        for (u, v, len) in edges {
            adjacency[*u].push((*v, len.clone()));
            adjacency[*v].push((*u, len.clone()));
        }
        Ok(WeightedTree {
            adjacency,
            dist: metric.matrix().to_vec(),
            weights,
        })
    }

    /// Tree with unit edge lengths.
    pub fn unit(edges: &[(usize, usize)], weights: Vec<u64>) -> Result<Self> {
        let edges: Vec<_> = edges
            .iter()
            .map(|&(u, v)| (u, v, Rational::from_integer(1.into())))
            .collect();
        Self::new(&edges, weights)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// `Σ_v w(v)·d(u,v)`
    pub fn score(&self, u: usize) -> Rational {
        self.weights
            .iter()
            .zip(&self.dist[u])
            .fold(Rational::zero(), |acc, (&w, d)| acc + d * Rational::from_integer(w.into()))
    }

    /// All minimisers of [`score`](Self::score), ascending. With zero total
    /// weight every node scores 0 and all of them are returned.
    pub fn medians(&self) -> Vec<usize> {
        let scores: Vec<_> = (0..self.len()).map(|u| self.score(u)).collect();
        let Some(best) = scores.iter().min() else {
            return Vec::new();
        };
        (0..self.len()).filter(|&u| &scores[u] == best).collect()
    }

    /// Like [`medians`](Self::medians) but rejects the degenerate zero-weight tree.
    pub fn checked_medians(&self) -> Result<Vec<usize>> {
        if self.total_weight() == 0 {
            return Err(Error::ZeroTotalWeight);
        }
        Ok(self.medians())
    }

    /// Weights of the connected components of `T - v`.
    pub fn component_weights(&self, v: usize) -> Vec<u64> {
        let mut seen = vec![false; self.len()];
        seen[v] = true;
        self.adjacency[v]
            .iter()
            .map(|&(start, _)| {
                let mut weight = 0;
                let mut stack = vec![start];
                seen[start] = true;
                while let Some(u) = stack.pop() {
                    weight += self.weights[u];
                    for &(x, _) in &self.adjacency[u] {
                        if !seen[x] {
                            seen[x] = true;
                            stack.push(x);
                        }
                    }
                }
                weight
            })
            .collect()
    }

    /// Nodes whose removal leaves every component with at most half the
    /// total weight, ascending.
    pub fn separators(&self) -> Vec<usize> {
        let total = self.total_weight();
        (0..self.len())
            .filter(|&v| self.component_weights(v).iter().all(|&c| 2 * c <= total))
            .collect()
    }

    pub fn is_separator(&self, v: usize) -> bool {
        let total = self.total_weight();
        self.component_weights(v).iter().all(|&c| 2 * c <= total)
    }

    pub fn scaled(&self, factor: u64) -> Self {
        self.with_weights(self.weights.iter().map(|w| w * factor).collect())
    }

    /// Node-wise weight sum of two trees on the same edges.
    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.adjacency, other.adjacency, "union needs identical trees");
        self.with_weights(self.weights.iter().zip(&other.weights).map(|(a, b)| a + b).collect())
    }

    pub fn with_weights(&self, weights: Vec<u64>) -> Self {
        assert_eq!(weights.len(), self.len());
        WeightedTree {
            adjacency: self.adjacency.clone(),
            dist: self.dist.clone(),
            weights,
        }
    }
}

fn intersect(left: &[usize], right: &[usize]) -> Vec<usize> {
    left.iter().copied().filter(|x| right.contains(x)).collect()
}

fn tree_edges(metric: &crate::metric::Metric) -> Result<Vec<(usize, usize, Rational)>> {
    metric.tree_edges().ok_or(Error::NotTreeMetric)
}

/// `T_{i,z}(q, r)`: weight `r·|{j∈N(i): z_j = v}|` at every `v`, plus `q`
/// at `i`'s preferred strategy.
pub fn build_response_tree(inst: &Instance, z: &StrategyVector, i: usize, q: u64, r: u64) -> Result<WeightedTree> {
    inst.check(z)?;
    inst.check_node(i)?;
    let edges = tree_edges(inst.metric())?;
    let mut weights = vec![0u64; inst.strategy_count()];
    weights[inst.preferred()[i]] += q;
    for &j in inst.graph().neighbors(i) {
        weights[z[j]] += r;
    }
    WeightedTree::new(&edges, weights)
}

/// Integer weights `(a, b)` with `α = a/(a+b)` in lowest terms.
pub fn integer_alpha_weights(inst: &Instance) -> Result<(u64, u64)> {
    let (a, b) = alpha_weights(inst.alpha());
    match (a.to_u64(), b.to_u64()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::OutOfRange("alpha denominator too large for integer weights".into())),
    }
}

/// A strategy that is simultaneously a best response and a social-cost
/// minimiser for player `i`: the lowest index in
/// `M(T(a,b)) ∩ M(T(a,2b))`. Requires a tree metric and `α = a/(a+b) ≤ 1/2`.
///
/// `EmptyIntersection` is never expected for valid input.
pub fn coherent_response(inst: &Instance, z: &StrategyVector, i: usize, a: u64, b: u64) -> Result<usize> {
    if a + b == 0 || Rational::new(a.into(), (a + b).into()) != *inst.alpha() {
        return Err(Error::OutOfRange(format!("weights ({a}, {b}) do not match alpha")));
    }
    if a > b {
        return Err(Error::OutOfRange("coherent response needs alpha <= 1/2".into()));
    }
    let best = build_response_tree(inst, z, i, a, b)?.medians();
    let social = build_response_tree(inst, z, i, a, 2 * b)?.medians();
    intersect(&best, &social)
        .first()
        .copied()
        .ok_or(Error::EmptyIntersection(i))
}

/// Anchored tree with one weight per fixed neighbour (in ascending node
/// order) and `r` per strategic neighbour.
fn anchored_tree(
    inst: &AnchoredInstance,
    z: &StrategyVector,
    node: usize,
    fixed_weights: &[u64],
    r: u64,
) -> Result<WeightedTree> {
    inst.check(z)?;
    let edges = tree_edges(inst.metric())?;
    let mut weights = vec![0u64; inst.strategy_count()];
    for (pref, q) in inst.fixed_neighbor_prefs(node).into_iter().zip(fixed_weights) {
        weights[pref] += q;
    }
    for j in inst.strategic_neighbors(node) {
        weights[inst.play(z, j)] += r;
    }
    WeightedTree::new(&edges, weights)
}

/// `T_{i,z}(q1, q2, r)` for a strategic node with exactly two fixed neighbours.
pub fn anchored_response_tree(
    inst: &AnchoredInstance,
    z: &StrategyVector,
    node: usize,
    q1: u64,
    q2: u64,
    r: u64,
) -> Result<WeightedTree> {
    inst.slot(node).ok_or(Error::NotStrategic(node))?;
    let found = inst.fixed_neighbor_prefs(node).len();
    if found != 2 {
        return Err(Error::WrongFixedDegree {
            node,
            found,
            expected: 2,
        });
    }
    anchored_tree(inst, z, node, &[q1, q2], r)
}

/// Lowest strategy that is both an anchored best response and an anchored
/// social-cost minimiser for `node`. Needs a tree metric and at most two
/// fixed neighbours.
pub fn anchored_coherent_response(inst: &AnchoredInstance, z: &StrategyVector, node: usize) -> Result<usize> {
    inst.slot(node).ok_or(Error::NotStrategic(node))?;
    let found = inst.fixed_neighbor_prefs(node).len();
    if found > 2 {
        return Err(Error::WrongFixedDegree {
            node,
            found,
            expected: 2,
        });
    }
    let ones = vec![1; found];
    let best = anchored_tree(inst, z, node, &ones, 1)?.medians();
    let social = anchored_tree(inst, z, node, &ones, 2)?.medians();
    intersect(&best, &social)
        .first()
        .copied()
        .ok_or(Error::EmptyIntersection(node))
}
