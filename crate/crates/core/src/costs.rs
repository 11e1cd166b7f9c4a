//! Player cost, social cost, contribution and the exact potential, plus the
//! anchored-game variants. All values are exact.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::instance::{AnchoredInstance, Instance, StrategyVector};
use crate::rational::{int, Rational};

/// The two summands of a player's cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostBreakdown {
    /// `α · d(s_i, z_i)`
    pub preference_term: Rational,
    /// `(1-α) · Σ_{j∈N(i)} d(z_i, z_j)`
    pub neighbor_term: Rational,
    pub total: Rational,
}

/// `Σ_{j∈N(i)} d(strategy, z_j)`: disagreement of `strategy` with `i`'s
/// neighbours as they play under `z`.
pub fn neighbor_distance(inst: &Instance, z: &StrategyVector, i: usize, strategy: usize) -> Rational {
    let metric = inst.metric();
    inst.graph()
        .neighbors(i)
        .iter()
        .fold(Rational::zero(), |acc, &j| acc + metric.d(strategy, z[j]))
}

/// Cost of player `i` if it played `strategy` while the others keep `z`.
pub fn deviation_cost(inst: &Instance, z: &StrategyVector, i: usize, strategy: usize) -> CostBreakdown {
    let alpha = inst.alpha();
    let preference_term = alpha * inst.metric().d(inst.preferred()[i], strategy);
    let neighbor_term = (Rational::one() - alpha) * neighbor_distance(inst, z, i, strategy);
    let total = &preference_term + &neighbor_term;
    CostBreakdown {
        preference_term,
        neighbor_term,
        total,
    }
}

/// Contribution of `i` to the social cost if it played `strategy`.
pub fn deviation_contribution(inst: &Instance, z: &StrategyVector, i: usize, strategy: usize) -> Rational {
    let alpha = inst.alpha();
    alpha * inst.metric().d(inst.preferred()[i], strategy)
        + int(2) * (Rational::one() - alpha) * neighbor_distance(inst, z, i, strategy)
}

pub fn player_cost(inst: &Instance, z: &StrategyVector, i: usize) -> Result<CostBreakdown> {
    inst.check(z)?;
    inst.check_node(i)?;
    Ok(deviation_cost(inst, z, i, z[i]))
}

fn preference_sum(inst: &Instance, z: &StrategyVector) -> Rational {
    let metric = inst.metric();
    z.iter()
        .zip(inst.preferred())
        .fold(Rational::zero(), |acc, (&zi, &si)| acc + metric.d(si, zi))
}

fn edge_sum(inst: &Instance, z: &StrategyVector) -> Rational {
    let metric = inst.metric();
    inst.graph()
        .edges()
        .iter()
        .fold(Rational::zero(), |acc, &(u, v)| acc + metric.d(z[u], z[v]))
}

/// `C(z) = α Σ_i d(s_i,z_i) + 2(1-α) Σ_{(i,j)∈E} d(z_i,z_j)`.
pub fn social_cost(inst: &Instance, z: &StrategyVector) -> Result<Rational> {
    inst.check(z)?;
    let alpha = inst.alpha();
    Ok(alpha * preference_sum(inst, z) + int(2) * (Rational::one() - alpha) * edge_sum(inst, z))
}

pub fn contribution(inst: &Instance, z: &StrategyVector, i: usize) -> Result<Rational> {
    inst.check(z)?;
    inst.check_node(i)?;
    Ok(deviation_contribution(inst, z, i, z[i]))
}

/// `φ(z) = α Σ_i d(z_i,s_i) + (1-α) Σ_{(i,j)∈E} d(z_i,z_j)`.
pub fn potential(inst: &Instance, z: &StrategyVector) -> Result<Rational> {
    inst.check(z)?;
    let alpha = inst.alpha();
    Ok(alpha * preference_sum(inst, z) + (Rational::one() - alpha) * edge_sum(inst, z))
}

/// Anchored cost of strategic node `node` if it played `strategy`.
pub fn anchored_deviation_cost(
    inst: &AnchoredInstance,
    z: &StrategyVector,
    node: usize,
    strategy: usize,
) -> Rational {
    let metric = inst.metric();
    inst.graph()
        .neighbors(node)
        .iter()
        .fold(Rational::zero(), |acc, &j| acc + metric.d(strategy, inst.play(z, j)))
}

/// Anchored contribution: fixed-neighbour terms once, strategic terms twice.
pub fn anchored_deviation_contribution(
    inst: &AnchoredInstance,
    z: &StrategyVector,
    node: usize,
    strategy: usize,
) -> Rational {
    let metric = inst.metric();
    inst.graph()
        .neighbors(node)
        .iter()
        .fold(Rational::zero(), |acc, &j| {
            let d = metric.d(strategy, inst.play(z, j));
            if inst.anchor(j).is_some() {
                acc + d
            } else {
                acc + int(2) * d
            }
        })
}

pub fn anchored_player_cost(inst: &AnchoredInstance, z: &StrategyVector, node: usize) -> Result<Rational> {
    inst.check(z)?;
    let slot = inst.slot(node).ok_or(Error::NotStrategic(node))?;
    Ok(anchored_deviation_cost(inst, z, node, z[slot]))
}

/// Sums over strategic–fixed edges (once) and strategic–strategic edges
/// (twice); fixed–fixed edges cost nothing.
fn anchored_edge_sums(inst: &AnchoredInstance, z: &StrategyVector) -> (Rational, Rational) {
    let metric = inst.metric();
    let mut anchored = Rational::zero();
    let mut internal = Rational::zero();
    for &(u, v) in inst.graph().edges() {
        match (inst.anchor(u), inst.anchor(v)) {
            (Some(_), Some(_)) => {}
            (None, None) => internal += metric.d(inst.play(z, u), inst.play(z, v)),
            _ => anchored += metric.d(inst.play(z, u), inst.play(z, v)),
        }
    }
    (anchored, internal)
}

pub fn anchored_social_cost(inst: &AnchoredInstance, z: &StrategyVector) -> Result<Rational> {
    inst.check(z)?;
    let (anchored, internal) = anchored_edge_sums(inst, z);
    Ok(anchored + int(2) * internal)
}

/// Exact potential of the anchored game: every relevant edge counted once.
pub fn anchored_potential(inst: &AnchoredInstance, z: &StrategyVector) -> Result<Rational> {
    inst.check(z)?;
    let (anchored, internal) = anchored_edge_sums(inst, z);
    Ok(anchored + internal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::metric::two_point_metric;
    use crate::rational::rat;

    const A: usize = 0;
    const B: usize = 1;

    fn edge(alpha: Rational) -> Instance {
        Instance::new(Graph::new(2, [(0, 1)]).unwrap(), two_point_metric(), vec![A, B], alpha).unwrap()
    }

    fn star(alpha: Rational) -> Instance {
        // center 0 prefers B, two peripherals prefer A
        Instance::new(
            Graph::new(3, [(0, 1), (0, 2)]).unwrap(),
            two_point_metric(),
            vec![B, A, A],
            alpha,
        )
        .unwrap()
    }

    fn sv(v: &[usize]) -> StrategyVector {
        StrategyVector::new(v.to_vec())
    }

    #[test]
    fn player_cost_examples() {
        let inst = edge(rat(1, 2));
        let c = player_cost(&inst, &sv(&[A, A]), 1).unwrap();
        assert_eq!(c.preference_term, rat(1, 2));
        assert_eq!(c.neighbor_term, int(0));
        assert_eq!(c.total, rat(1, 2));

        let clique = Instance::new(Graph::complete(4), two_point_metric(), vec![A; 4], rat(1, 3)).unwrap();
        for i in 0..4 {
            assert_eq!(player_cost(&clique, &sv(&[A; 4]), i).unwrap().total, int(0));
        }

        let s = star(rat(3, 4));
        assert_eq!(player_cost(&s, &s.all_preferred(), 0).unwrap().total, rat(1, 2));
        assert!(matches!(
            player_cost(&s, &s.all_preferred(), 3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn social_cost_examples() {
        let s = star(rat(3, 4));
        assert_eq!(social_cost(&s, &sv(&[B, A, A])).unwrap(), int(1));
        assert_eq!(social_cost(&s, &sv(&[A, A, A])).unwrap(), rat(3, 4));
        let clique = Instance::new(Graph::complete(3), two_point_metric(), vec![B; 3], rat(1, 5)).unwrap();
        assert_eq!(social_cost(&clique, &clique.all_preferred()).unwrap(), int(0));
    }

    #[test]
    fn contribution_examples() {
        let inst = edge(rat(1, 2));
        assert_eq!(contribution(&inst, &sv(&[A, A]), 1).unwrap(), rat(1, 2));
        assert_eq!(contribution(&inst, &sv(&[A, B]), 1).unwrap(), int(1));
        let lonely = Instance::new(Graph::empty(1), two_point_metric(), vec![B], rat(1, 2)).unwrap();
        assert_eq!(contribution(&lonely, &sv(&[B]), 0).unwrap(), int(0));
    }

    #[test]
    fn potential_examples() {
        let inst = edge(rat(1, 2));
        assert_eq!(potential(&inst, &sv(&[A, B])).unwrap(), rat(1, 2));
        assert_eq!(social_cost(&inst, &sv(&[A, B])).unwrap(), int(1));
        let s = star(rat(3, 4));
        assert_eq!(potential(&s, &s.all_preferred()).unwrap(), rat(1, 2));
        assert_eq!(potential(&inst, &inst.all_preferred()).unwrap(), rat(1, 2));
        let same = Instance::new(Graph::complete(3), two_point_metric(), vec![A; 3], rat(1, 2)).unwrap();
        assert_eq!(potential(&same, &same.all_preferred()).unwrap(), int(0));
    }

    fn anchored_star3() -> AnchoredInstance {
        // center 0; fixed A at 1..=3; strategic 4,5 (clique); each with three fixed B
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (4, 5)];
        let mut fixed = vec![(1, A), (2, A), (3, A)];
        let mut next = 6;
        for s in [4, 5] {
            for _ in 0..3 {
                edges.push((s, next));
                fixed.push((next, B));
                next += 1;
            }
        }
        AnchoredInstance::new(
            Graph::new(next, edges).unwrap(),
            two_point_metric(),
            &fixed,
            &[0, 4, 5],
        )
        .unwrap()
    }

    #[test]
    fn anchored_examples() {
        let inst = anchored_star3();
        assert_eq!(anchored_player_cost(&inst, &sv(&[A, B, B]), 0).unwrap(), int(2));
        assert_eq!(anchored_player_cost(&inst, &sv(&[B, B, B]), 0).unwrap(), int(3));
        assert_eq!(anchored_player_cost(&inst, &sv(&[B, B, B]), 1), Err(Error::NotStrategic(1)));
        assert_eq!(anchored_social_cost(&inst, &sv(&[A, B, B])).unwrap(), int(4));
        assert_eq!(anchored_social_cost(&inst, &sv(&[B, B, B])).unwrap(), int(3));

        let isolated = AnchoredInstance::new(
            Graph::new(3, [(1, 2)]).unwrap(),
            two_point_metric(),
            &[(1, A), (2, B)],
            &[0],
        )
        .unwrap();
        assert_eq!(anchored_player_cost(&isolated, &sv(&[B]), 0).unwrap(), int(0));
        assert_eq!(anchored_social_cost(&isolated, &sv(&[A])).unwrap(), int(0));
    }
}
