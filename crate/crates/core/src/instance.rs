use std::fmt;
use std::ops::{Deref, DerefMut};

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::Metric;
use crate::rational::{format_rational, Rational};

/// One strategy index per player.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StrategyVector(pub Vec<usize>);

impl StrategyVector {
    pub fn new(choice: Vec<usize>) -> Self {
        StrategyVector(choice)
    }

    pub fn uniform(len: usize, strategy: usize) -> Self {
        StrategyVector(vec![strategy; len])
    }

    /// Copy of `self` with coordinate `player` replaced.
    pub fn with(&self, player: usize, strategy: usize) -> Self {
        let mut next = self.clone();
        next.0[player] = strategy;
        next
    }
}

impl Deref for StrategyVector {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl DerefMut for StrategyVector {
    fn deref_mut(&mut self) -> &mut [usize] {
        &mut self.0
    }
}

impl fmt::Display for StrategyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

fn check_choice(choice: &[usize], len: usize, strategies: usize) -> Result<()> {
    if choice.len() != len {
        return Err(Error::InvalidInstance(format!(
            "strategy vector has length {}, expected {len}",
            choice.len()
        )));
    }
    match choice.iter().find(|&&s| s >= strategies) {
        Some(&s) => Err(Error::IndexOutOfRange {
            index: s,
            len: strategies,
        }),
        None => Ok(()),
    }
}

/// A discrete preference game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    metric: Metric,
    preferred: Vec<usize>,
    alpha: Rational,
}

impl Instance {
    pub fn new(graph: Graph, metric: Metric, preferred: Vec<usize>, alpha: Rational) -> Result<Self> {
        if preferred.len() != graph.node_count() {
            return Err(Error::InvalidInstance(format!(
                "{} preferred strategies for {} nodes",
                preferred.len(),
                graph.node_count()
            )));
        }
        check_choice(&preferred, preferred.len(), metric.strategy_count())?;
        if alpha.is_negative() || alpha > Rational::one() {
            return Err(Error::OutOfRange(format!(
                "alpha = {} not in [0,1]",
                format_rational(&alpha)
            )));
        }
        Ok(Instance {
            graph,
            metric,
            preferred,
            alpha,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn preferred(&self) -> &[usize] {
        &self.preferred
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn strategy_count(&self) -> usize {
        self.metric.strategy_count()
    }

    /// Same game with a different `α`.
    pub fn with_alpha(&self, alpha: Rational) -> Result<Self> {
        Instance::new(
            self.graph.clone(),
            self.metric.clone(),
            self.preferred.clone(),
            alpha,
        )
    }

    pub fn all_preferred(&self) -> StrategyVector {
        StrategyVector(self.preferred.clone())
    }

    pub fn check(&self, z: &StrategyVector) -> Result<()> {
        check_choice(z, self.node_count(), self.strategy_count())
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node >= self.node_count() {
            return Err(Error::IndexOutOfRange {
                index: node,
                len: self.node_count(),
            });
        }
        Ok(())
    }
}

/// Anchored preference game: fixed nodes are pinned to their preferred
/// strategy, strategic nodes pay only coordination cost. Strategy vectors
/// are indexed by position in [`AnchoredInstance::strategic`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchoredInstance {
    graph: Graph,
    metric: Metric,
    anchor: Vec<Option<usize>>,
    strategic: Vec<usize>,
    slot: Vec<Option<usize>>,
}

impl AnchoredInstance {
    /// `fixed` lists `(node, preferred strategy)`; `strategic` lists the
    /// remaining nodes. Together they must partition `0..n`.
    pub fn new(
        graph: Graph,
        metric: Metric,
        fixed: &[(usize, usize)],
        strategic: &[usize],
    ) -> Result<Self> {
        let n = graph.node_count();
        let mut anchor = vec![None; n];
        let mut slot = vec![None; n];
        let mut covered = vec![false; n];
        let mut claim = |node: usize| -> Result<()> {
            if node >= n {
                return Err(Error::IndexOutOfRange { index: node, len: n });
            }
            if std::mem::replace(&mut covered[node], true) {
                return Err(Error::InvalidInstance(format!("node {node} listed twice")));
            }
            Ok(())
        };
        for &(node, pref) in fixed {
            claim(node)?;
            if pref >= metric.strategy_count() {
                return Err(Error::IndexOutOfRange {
                    index: pref,
                    len: metric.strategy_count(),
                });
            }
            anchor[node] = Some(pref);
        }
        for (pos, &node) in strategic.iter().enumerate() {
            claim(node)?;
            slot[node] = Some(pos);
        }
        if let Some(missing) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidInstance(format!(
                "node {missing} is neither fixed nor strategic"
            )));
        }
        Ok(AnchoredInstance {
            graph,
            metric,
            anchor,
            strategic: strategic.to_vec(),
            slot,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn strategic(&self) -> &[usize] {
        &self.strategic
    }

    /// `(node, preferred)` for every fixed node, ascending by node.
    pub fn fixed(&self) -> Vec<(usize, usize)> {
        self.anchor
            .iter()
            .enumerate()
            .filter_map(|(node, pref)| pref.map(|p| (node, p)))
            .collect()
    }

    /// Preferred strategy of a fixed node, `None` for strategic nodes.
    pub fn anchor(&self, node: usize) -> Option<usize> {
        self.anchor[node]
    }

    /// Position of a strategic node in strategy vectors.
    pub fn slot(&self, node: usize) -> Option<usize> {
        self.slot.get(node).copied().flatten()
    }

    pub fn strategy_count(&self) -> usize {
        self.metric.strategy_count()
    }

    /// Preferred strategies of the fixed neighbours of `node`.
    pub fn fixed_neighbor_prefs(&self, node: usize) -> Vec<usize> {
        self.graph
            .neighbors(node)
            .iter()
            .filter_map(|&j| self.anchor[j])
            .collect()
    }

    pub fn strategic_neighbors(&self, node: usize) -> Vec<usize> {
        self.graph
            .neighbors(node)
            .iter()
            .copied()
            .filter(|&j| self.anchor[j].is_none())
            .collect()
    }

    /// Largest number of fixed neighbours of any strategic node.
    pub fn k(&self) -> usize {
        self.strategic
            .iter()
            .map(|&i| self.fixed_neighbor_prefs(i).len())
            .max()
            .unwrap_or(0)
    }

    pub fn check(&self, z: &StrategyVector) -> Result<()> {
        check_choice(z, self.strategic.len(), self.strategy_count())
    }

    /// Strategy of any node under `z`: fixed nodes play their anchor.
    pub fn play(&self, z: &StrategyVector, node: usize) -> usize {
        match self.anchor[node] {
            Some(pref) => pref,
            None => z[self.slot[node].expect("strategic node has a slot")],
        }
    }
}
