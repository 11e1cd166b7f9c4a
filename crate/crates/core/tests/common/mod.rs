//! Brute-force reference implementations written straight from the cost
//! definitions. They share nothing with the library beyond the instance
//! accessors, so agreement is a real cross-check.
#![allow(dead_code)]

use num_traits::{One, Zero};
use prefgame::{AnchoredInstance, Instance, Rational, StrategyVector};

pub fn player_cost(inst: &Instance, z: &[usize], i: usize) -> Rational {
    let alpha = inst.alpha();
    let d = |a: usize, b: usize| inst.metric().d(a, b).clone();
    let mut edges = Rational::zero();
    for &j in inst.graph().neighbors(i) {
        edges += d(z[i], z[j]);
    }
    alpha * d(inst.preferred()[i], z[i]) + (Rational::one() - alpha) * edges
}

pub fn social_cost(inst: &Instance, z: &[usize]) -> Rational {
    (0..inst.node_count()).map(|i| player_cost(inst, z, i)).sum()
}

pub fn potential(inst: &Instance, z: &[usize]) -> Rational {
    let alpha = inst.alpha();
    let d = |a: usize, b: usize| inst.metric().d(a, b).clone();
    let pref: Rational = (0..inst.node_count()).map(|i| d(z[i], inst.preferred()[i])).sum();
    let edges: Rational = inst.graph().edges().iter().map(|&(u, v)| d(z[u], z[v])).sum();
    alpha * pref + (Rational::one() - alpha) * edges
}

pub fn is_equilibrium(inst: &Instance, z: &[usize]) -> bool {
    let mut w = z.to_vec();
    (0..inst.node_count()).all(|i| {
        let now = player_cost(inst, z, i);
        (0..inst.strategy_count()).all(|s| {
            w[i] = s;
            let ok = player_cost(inst, &w, i) >= now;
            w[i] = z[i];
            ok
        })
    })
}

/// Every vector in `0..radix` of length `len`, lexicographic.
pub fn all_vectors(len: usize, radix: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; len]];
    loop {
        let mut next = out.last().unwrap().clone();
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            next[pos] += 1;
            if next[pos] < radix {
                break;
            }
            next[pos] = 0;
        }
        out.push(next);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremes {
    pub opt: Rational,
    pub best_eq: Option<Rational>,
    pub worst_eq: Option<Rational>,
    pub equilibria: Vec<Vec<usize>>,
}

fn extremes(vectors: Vec<Vec<usize>>, cost: impl Fn(&[usize]) -> Rational, eq: impl Fn(&[usize]) -> bool) -> Extremes {
    let mut opt: Option<Rational> = None;
    let mut best: Option<Rational> = None;
    let mut worst: Option<Rational> = None;
    let mut equilibria = Vec::new();
    for z in vectors {
        let c = cost(&z);
        if opt.as_ref().is_none_or(|o| c < *o) {
            opt = Some(c.clone());
        }
        if eq(&z) {
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c.clone());
            }
            if worst.as_ref().is_none_or(|w| c > *w) {
                worst = Some(c.clone());
            }
            equilibria.push(z);
        }
    }
    Extremes {
        opt: opt.expect("at least one vector"),
        best_eq: best,
        worst_eq: worst,
        equilibria,
    }
}

pub fn discrete_extremes(inst: &Instance) -> Extremes {
    extremes(
        all_vectors(inst.node_count(), inst.strategy_count()),
        |z| social_cost(inst, z),
        |z| is_equilibrium(inst, z),
    )
}

fn anchored_play(inst: &AnchoredInstance, z: &[usize], node: usize) -> usize {
    match inst.anchor(node) {
        Some(p) => p,
        None => z[inst.slot(node).unwrap()],
    }
}

/// Strategic node cost: distance to every neighbour, fixed ones pinned.
pub fn anchored_player_cost(inst: &AnchoredInstance, z: &[usize], node: usize) -> Rational {
    let own = anchored_play(inst, z, node);
    inst.graph()
        .neighbors(node)
        .iter()
        .map(|&j| inst.metric().d(own, anchored_play(inst, z, j)).clone())
        .sum()
}

pub fn anchored_social_cost(inst: &AnchoredInstance, z: &[usize]) -> Rational {
    inst.strategic().iter().map(|&v| anchored_player_cost(inst, z, v)).sum()
}

pub fn anchored_is_equilibrium(inst: &AnchoredInstance, z: &[usize]) -> bool {
    let mut w = z.to_vec();
    inst.strategic().iter().enumerate().all(|(slot, &v)| {
        let now = anchored_player_cost(inst, z, v);
        (0..inst.strategy_count()).all(|s| {
            w[slot] = s;
            let ok = anchored_player_cost(inst, &w, v) >= now;
            w[slot] = z[slot];
            ok
        })
    })
}

pub fn anchored_extremes(inst: &AnchoredInstance) -> Extremes {
    extremes(
        all_vectors(inst.strategic().len(), inst.strategy_count()),
        |z| anchored_social_cost(inst, z),
        |z| anchored_is_equilibrium(inst, z),
    )
}

pub fn sv(z: &[usize]) -> StrategyVector {
    StrategyVector::new(z.to_vec())
}
