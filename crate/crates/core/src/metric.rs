//! Finite metrics over the strategy set `0..|L|`.

use num_traits::{Signed, Zero};

use crate::error::{Axiom, Error, Result};
use crate::rational::{int, Rational};

/// How a metric was built. Tree and line metrics keep their defining tree so
/// that median computations can walk it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricSource {
    Matrix,
    Tree { edges: Vec<(usize, usize, Rational)> },
    Line { positions: Vec<Rational> },
    Cycle { size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    dist: Vec<Vec<Rational>>,
    source: MetricSource,
}

impl Metric {
    pub fn strategy_count(&self) -> usize {
        self.dist.len()
    }

    pub fn d(&self, a: usize, b: usize) -> &Rational {
        &self.dist[a][b]
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.dist
    }

    pub fn source(&self) -> &MetricSource {
        &self.source
    }

    /// Edges (with lengths) of the tree whose shortest-path metric this is,
    /// or `None` if the metric was not built as a tree or line metric.
    pub fn tree_edges(&self) -> Option<Vec<(usize, usize, Rational)>> {
        match &self.source {
            MetricSource::Tree { edges } => Some(edges.clone()),
            MetricSource::Line { positions } => Some(
                positions
                    .windows(2)
                    .enumerate()
                    .map(|(i, w)| (i, i + 1, &w[1] - &w[0]))
                    .collect(),
            ),
            _ => None,
        }
    }

    pub fn is_tree_metric(&self) -> bool {
        matches!(
            self.source,
            MetricSource::Tree { .. } | MetricSource::Line { .. }
        )
    }
}

/// Validates a square distance matrix against the metric axioms.
///
/// Distinct points must be at positive distance (pseudo-metrics are rejected).
pub fn make_metric(matrix: Vec<Vec<Rational>>) -> Result<Metric> {
    validate(&matrix)?;
    Ok(Metric {
        dist: matrix,
        source: MetricSource::Matrix,
    })
}

fn validate(m: &[Vec<Rational>]) -> Result<()> {
    let n = m.len();
    let violation = |axiom, i, j, k| Error::AxiomViolation { axiom, i, j, k };
    if let Some(i) = m.iter().position(|row| row.len() != n) {
        return Err(violation(Axiom::NonSquare, i, 0, 0));
    }
    for i in 0..n {
        if !m[i][i].is_zero() {
            return Err(violation(Axiom::NonZeroDiagonal, i, i, i));
        }
        for j in 0..n {
            if m[i][j].is_negative() {
                return Err(violation(Axiom::Negative, i, j, j));
            }
            if i != j && m[i][j].is_zero() {
                return Err(violation(Axiom::ZeroDistance, i, j, j));
            }
            if m[i][j] != m[j][i] {
                return Err(violation(Axiom::Symmetry, i, j, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if m[i][j] > &m[i][k] + &m[k][j] {
                    return Err(violation(Axiom::Triangle, i, j, k));
                }
            }
        }
    }
    Ok(())
}

/// Shortest-path metric of a tree on `strategy_count` vertices.
pub fn tree_metric(strategy_count: usize, edges: &[(usize, usize, Rational)]) -> Result<Metric> {
    let n = strategy_count;
    if n == 0 || edges.len() + 1 != n {
        return Err(Error::NotATree(n));
    }
    let mut adjacency: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); n];
    for (u, v, len) in edges {
        if *u >= n || *v >= n || u == v {
            return Err(Error::NotATree(n));
        }
        if !len.is_positive() {
            return Err(Error::AxiomViolation {
                axiom: Axiom::ZeroDistance,
                i: *u,
                j: *v,
                k: *v,
            });
        }
        adjacency[*u].push((*v, len));
        adjacency[*v].push((*u, len));
    }

    let mut dist = vec![vec![Rational::zero(); n]; n];
    for (root, row) in dist.iter_mut().enumerate() {
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut stack = vec![root];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &(v, len) in &adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    row[v] = &row[u] + len;
                    stack.push(v);
                }
            }
        }
        // n-1 edges and connected implies acyclic
        if reached != n {
            return Err(Error::NotATree(n));
        }
    }
    validate(&dist)?;
    Ok(Metric {
        dist,
        source: MetricSource::Tree {
            edges: edges.to_vec(),
        },
    })
}

/// Points on a line at strictly increasing `positions`.
pub fn line_metric(positions: &[Rational]) -> Result<Metric> {
    if positions.is_empty() {
        return Err(Error::NotATree(0));
    }
    if let Some(i) = positions.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::NotSorted(i + 1));
    }
    let dist = positions
        .iter()
        .map(|p| positions.iter().map(|q| (p - q).abs()).collect())
        .collect();
    Ok(Metric {
        dist,
        source: MetricSource::Line {
            positions: positions.to_vec(),
        },
    })
}

/// Unit-edge cycle on `size` points.
pub fn cycle_metric(size: usize) -> Result<Metric> {
    if size < 3 {
        return Err(Error::TooSmall(size));
    }
    let dist = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let gap = i.abs_diff(j);
                    int(gap.min(size - gap) as i64)
                })
                .collect()
        })
        .collect();
    Ok(Metric {
        dist,
        source: MetricSource::Cycle { size },
    })
}

/// Two strategies at distance 1.
pub fn two_point_metric() -> Metric {
    make_metric(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).expect("valid metric")
}
