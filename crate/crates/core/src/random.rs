//! Seeded random instance generators for property runs. All randomness
//! comes from the caller's RNG, so a fixed seed gives a fixed instance.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;
use crate::instance::{AnchoredInstance, Instance, StrategyVector};
use crate::metric::{cycle_metric, line_metric, make_metric, tree_metric, two_point_metric, Metric};
use crate::rational::{rat, Rational};

/// Positive rational with numerator in `1..=6`, denominator in `1..=3`.
pub fn random_length<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(1..=6), rng.gen_range(1..=3))
}

/// G(n, p) with `p = num/den`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, num: u32, den: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_ratio(num, den) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("simple graph")
}

/// Random tree on `m` points: point `i` hangs off a uniformly chosen
/// earlier point.
pub fn random_tree_metric<R: Rng>(rng: &mut R, m: usize) -> Metric {
    let edges: Vec<_> = (1..m)
        .map(|i| (rng.gen_range(0..i), i, random_length(rng)))
        .collect();
    tree_metric(m.max(1), &edges).expect("random tree is a tree")
}

pub fn random_line_metric<R: Rng>(rng: &mut R, m: usize) -> Metric {
    let mut at = Rational::zero();
    let mut positions = vec![at.clone()];
    for _ in 1..m.max(1) {
        at += random_length(rng);
        positions.push(at.clone());
    }
    line_metric(&positions).expect("increasing positions")
}

/// Shortest-path closure of a random complete weighted graph. Usually not a
/// tree metric.
pub fn random_matrix_metric<R: Rng>(rng: &mut R, m: usize) -> Metric {
    let mut d = vec![vec![Rational::zero(); m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let w = random_length(rng);
            d[i][j] = w.clone();
            d[j][i] = w;
        }
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                let via = &d[i][k] + &d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    make_metric(d).expect("closure is a metric")
}

/// Every distance drawn from `{1, 5/4, 3/2, 7/4, 2}`. The axioms hold because
/// no distance exceeds twice another, and no triangle is degenerate, so
/// these are far from tree metrics.
pub fn random_spread_metric<R: Rng>(rng: &mut R, m: usize) -> Metric {
    let mut d = vec![vec![Rational::zero(); m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let w = rat(rng.gen_range(4..=8), 4);
            d[i][j] = w.clone();
            d[j][i] = w;
        }
    }
    make_metric(d).expect("spread distances form a metric")
}

/// Any of the four metric kinds on `2..=max_m` points.
pub fn random_metric<R: Rng>(rng: &mut R, max_m: usize) -> Metric {
    let m = rng.gen_range(2..=max_m.max(2));
    match rng.gen_range(0..4) {
        0 => random_matrix_metric(rng, m),
        1 => random_tree_metric(rng, m),
        2 => random_line_metric(rng, m),
        _ if m >= 3 => cycle_metric(m).expect("cycle of size >= 3"),
        _ => two_point_metric(),
    }
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, strategies: usize) -> StrategyVector {
    StrategyVector::new((0..n).map(|_| rng.gen_range(0..strategies)).collect())
}

/// Random graph (edge probability 1/2) with random preferences over `metric`.
pub fn random_instance<R: Rng>(rng: &mut R, n: usize, metric: Metric, alpha: Rational) -> Instance {
    let graph = random_graph(rng, n, 1, 2);
    let preferred = random_vector(rng, n, metric.strategy_count()).0;
    Instance::new(graph, metric, preferred, alpha).expect("valid random instance")
}

pub fn random_two_strategy_instance<R: Rng>(rng: &mut R, n: usize, alpha: Rational) -> Instance {
    random_instance(rng, n, two_point_metric(), alpha)
}

/// Rational `a/(a+b)` with `1 <= a <= b <= max`, so at most 1/2.
pub fn random_alpha_at_most_half<R: Rng>(rng: &mut R, max: i64) -> Rational {
    let b = rng.gen_range(1..=max);
    let a = rng.gen_range(1..=b);
    rat(a, a + b)
}

/// Anchored game with `strategic` strategic nodes and every strategic node
/// having at most `max_fixed` fixed neighbours. Fixed nodes may be shared
/// between strategic nodes as long as the cap holds.
pub fn random_anchored_instance<R: Rng>(rng: &mut R, strategic: usize, max_fixed: usize, metric: Metric) -> AnchoredInstance {
    let mut edges = random_graph(rng, strategic, 1, 2).edges().to_vec();
    let mut load = vec![0usize; strategic];
    let mut fixed = Vec::new();
    let mut next = strategic;
    for s in 0..strategic {
        let extra = rng.gen_range(0..=max_fixed.saturating_sub(load[s]));
        for _ in 0..extra {
            let node = next;
            next += 1;
            fixed.push((node, rng.gen_range(0..metric.strategy_count())));
            let mut others: Vec<usize> = (0..strategic).filter(|&t| t != s && load[t] < max_fixed).collect();
            others.shuffle(rng);
            others.truncate(rng.gen_range(0..=others.len().min(1)));
            for t in std::iter::once(s).chain(others) {
                load[t] += 1;
                edges.push((t, node));
            }
        }
    }
    let strategic_nodes: Vec<usize> = (0..strategic).collect();
    AnchoredInstance::new(Graph::new(next, edges).expect("simple graph"), metric, &fixed, &strategic_nodes)
        .expect("valid random anchored instance")
}

/// Two or three small cliques, each agreeing on a distinct preferred
/// strategy when the metric has enough points, plus one hub node attached
/// to a random member of every clique. The hub is pulled in several
/// directions at once, which is where optima stop being equilibria on
/// non-tree metrics.
pub fn random_hub_instance<R: Rng>(rng: &mut R, metric: Metric, alpha: Rational) -> Instance {
    let m = metric.strategy_count();
    let mut strategies: Vec<usize> = (0..m).collect();
    strategies.shuffle(rng);
    let mut edges = Vec::new();
    let mut preferred = Vec::new();
    let mut anchors = Vec::new();
    for c in 0..rng.gen_range(2..=3) {
        let start = preferred.len();
        let size = rng.gen_range(2..=3);
        let s = if c < m { strategies[c] } else { rng.gen_range(0..m) };
        for u in start..start + size {
            edges.extend((u + 1..start + size).map(|v| (u, v)));
            preferred.push(s);
        }
        anchors.push(rng.gen_range(start..start + size));
    }
    let hub = preferred.len();
    preferred.push(rng.gen_range(0..m));
    edges.extend(anchors.into_iter().map(|u| (hub, u)));
    let graph = Graph::new(hub + 1, edges).expect("simple graph");
    Instance::new(graph, metric, preferred, alpha).expect("valid hub instance")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn same_seed_same_instance() {
        let make = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let metric = random_metric(&mut rng, 5);
            random_instance(&mut rng, 6, metric, rat(1, 3))
        };
        assert_eq!(make(7), make(7));
    }

    #[test]
    fn anchored_respects_fixed_cap() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let metric = random_tree_metric(&mut rng, 4);
            let inst = random_anchored_instance(&mut rng, 5, 2, metric);
            assert!(inst.k() <= 2);
        }
    }

    #[test]
    fn tree_generators_are_tree_metrics() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for m in 1..7 {
            assert!(random_tree_metric(&mut rng, m).is_tree_metric());
            assert_eq!(random_line_metric(&mut rng, m).strategy_count(), m);
            assert_eq!(random_matrix_metric(&mut rng, m).strategy_count(), m);
        }
    }
}
