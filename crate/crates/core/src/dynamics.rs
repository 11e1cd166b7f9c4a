//! Best responses, equilibrium checks and response dynamics.
//!
//! A move is only ever made when it strictly lowers the mover's cost, so the
//! exact potential strictly decreases along every trace.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::costs::{
    anchored_deviation_contribution, anchored_deviation_cost, anchored_potential, deviation_contribution,
    deviation_cost, potential,
};
use crate::error::{Error, Result};
use crate::instance::{AnchoredInstance, Instance, StrategyVector};
use crate::rational::{ceil, floor, format_rational, odds, Rational};
use crate::treemed::{anchored_coherent_response, coherent_response, integer_alpha_weights};

/// A strict unilateral improvement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Move {
    pub player: usize,
    pub from: usize,
    pub to: usize,
    /// `c_i(to, z_-i) - c_i(from, z_-i)`, always negative.
    #[serde(serialize_with = "ser_rational")]
    pub cost_delta: Rational,
    /// Potential after the move is applied.
    #[serde(serialize_with = "ser_rational")]
    pub phi_after: Rational,
}

fn ser_rational<S: serde::Serializer>(value: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(value))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub start: StrategyVector,
    pub moves: Vec<Move>,
    pub end: StrategyVector,
}

impl Trace {
    /// Re-applies the moves to `start`.
    pub fn replay(&self) -> StrategyVector {
        let mut z = self.start.clone();
        for mv in &self.moves {
            z[mv.player] = mv.to;
        }
        z
    }

    /// The move list as a JSON array.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.moves).expect("moves serialise")
    }
}

fn argmin_set(values: impl Iterator<Item = Rational>) -> Vec<usize> {
    let values: Vec<_> = values.collect();
    let Some(best) = values.iter().min() else {
        return Vec::new();
    };
    (0..values.len()).filter(|&s| &values[s] == best).collect()
}

/// Every strategy minimising `c_i(·, z_-i)`, ascending.
pub fn best_responses(inst: &Instance, z: &StrategyVector, i: usize) -> Result<Vec<usize>> {
    inst.check(z)?;
    inst.check_node(i)?;
    Ok(argmin_set((0..inst.strategy_count()).map(|s| deviation_cost(inst, z, i, s).total)))
}

/// Every strategy minimising player `i`'s contribution to the social cost.
pub fn social_responses(inst: &Instance, z: &StrategyVector, i: usize) -> Result<Vec<usize>> {
    inst.check(z)?;
    inst.check_node(i)?;
    Ok(argmin_set((0..inst.strategy_count()).map(|s| deviation_contribution(inst, z, i, s))))
}

/// Change in social cost if `i` alone switches to `to`.
pub fn social_delta(inst: &Instance, z: &StrategyVector, i: usize, to: usize) -> Rational {
    deviation_contribution(inst, z, i, to) - deviation_contribution(inst, z, i, z[i])
}

fn make_move(inst: &Instance, z: &StrategyVector, player: usize, to: usize) -> Move {
    let from = z[player];
    let cost_delta = deviation_cost(inst, z, player, to).total - deviation_cost(inst, z, player, from).total;
    let phi_after = potential(inst, &z.with(player, to)).expect("valid vector");
    Move {
        player,
        from,
        to,
        cost_delta,
        phi_after,
    }
}

/// Lowest-indexed best response of `i` if it is a strict improvement.
fn improvement_for(inst: &Instance, z: &StrategyVector, i: usize) -> Option<usize> {
    let costs: Vec<_> = (0..inst.strategy_count())
        .map(|s| deviation_cost(inst, z, i, s).total)
        .collect();
    let best = costs.iter().min()?;
    if *best < costs[z[i]] {
        costs.iter().position(|c| c == best)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumCheck {
    pub is_equilibrium: bool,
    /// First improving player (ascending) moving to its lowest best response.
    pub witness: Option<Move>,
}

pub fn is_equilibrium(inst: &Instance, z: &StrategyVector) -> Result<EquilibriumCheck> {
    inst.check(z)?;
    let witness = (0..inst.node_count())
        .find_map(|i| improvement_for(inst, z, i).map(|to| make_move(inst, z, i, to)));
    Ok(EquilibriumCheck {
        is_equilibrium: witness.is_none(),
        witness,
    })
}

fn apply(z: &mut StrategyVector, mv: &Move) {
    z[mv.player] = mv.to;
}

/// Two-phase schedule for two-strategy games: first let players switch to
/// strategy 0 while any strictly gains by it, then to strategy 1. Players
/// are scanned in ascending order within each phase.
pub fn two_phase_schedule(inst: &Instance, z0: &StrategyVector) -> Result<Trace> {
    if inst.strategy_count() != 2 {
        return Err(Error::NotTwoStrategies(inst.strategy_count()));
    }
    inst.check(z0)?;
    let mut z = z0.clone();
    let mut moves = Vec::new();
    for target in [0, 1] {
        loop {
            let next = (0..inst.node_count()).find(|&i| {
                z[i] != target && deviation_cost(inst, &z, i, target).total < deviation_cost(inst, &z, i, z[i]).total
            });
            let Some(player) = next else { break };
            let mv = make_move(inst, &z, player, target);
            apply(&mut z, &mv);
            moves.push(mv);
        }
    }
    Ok(Trace {
        start: z0.clone(),
        moves,
        end: z,
    })
}

/// Move-selection rule for [`potential_descent`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Picker {
    /// Lowest-indexed improving player, to its lowest best response.
    FirstImproving,
    /// Largest cost decrease over all players; ties to lowest player, then strategy.
    BestImproving,
    /// Lowest-indexed improving player, to its coherent (tree-median) response.
    /// Needs a tree metric and `α ≤ 1/2`; keeps the social cost unchanged.
    CoherentTree,
}

fn pick(inst: &Instance, z: &StrategyVector, picker: Picker) -> Result<Option<(usize, usize)>> {
    match picker {
        Picker::FirstImproving => Ok((0..inst.node_count()).find_map(|i| improvement_for(inst, z, i).map(|s| (i, s)))),
        Picker::BestImproving => {
            let mut best: Option<(Rational, usize, usize)> = None;
            for i in 0..inst.node_count() {
                if let Some(s) = improvement_for(inst, z, i) {
                    let delta = deviation_cost(inst, z, i, s).total - deviation_cost(inst, z, i, z[i]).total;
                    if best.as_ref().is_none_or(|(d, _, _)| delta < *d) {
                        best = Some((delta, i, s));
                    }
                }
            }
            Ok(best.map(|(_, i, s)| (i, s)))
        }
        Picker::CoherentTree => {
            let (a, b) = integer_alpha_weights(inst)?;
            for i in 0..inst.node_count() {
                if improvement_for(inst, z, i).is_some() {
                    return Ok(Some((i, coherent_response(inst, z, i, a, b)?)));
                }
            }
            Ok(None)
        }
    }
}

/// Runs improving moves chosen by `picker` until no player can improve.
pub fn potential_descent(inst: &Instance, z0: &StrategyVector, picker: Picker) -> Result<Trace> {
    inst.check(z0)?;
    let mut z = z0.clone();
    let mut moves = Vec::new();
    while let Some((player, to)) = pick(inst, &z, picker)? {
        let mv = make_move(inst, &z, player, to);
        if mv.cost_delta >= Rational::zero() {
            // only reachable if a coherent response is not a best response
            return Err(Error::BoundViolated(format!(
                "chosen response of player {player} does not improve its cost"
            )));
        }
        apply(&mut z, &mv);
        moves.push(mv);
    }
    Ok(Trace {
        start: z0.clone(),
        moves,
        end: z,
    })
}

/// Upper bound on the social-cost change when a two-strategy player's unique
/// best response moves it away from (`toward_preference = false`) or back to
/// its preferred strategy, with `d(A,B) = 1` and `α < 1`.
pub fn two_strategy_delta_bound(alpha: &Rational, toward_preference: bool) -> Rational {
    let two_edge = Rational::from_integer(2.into()) * (Rational::one() - alpha);
    let ratio = odds(alpha);
    if toward_preference {
        -alpha.clone() + two_edge * Rational::from_integer(ceil(&(ratio - Rational::one())))
    } else {
        alpha.clone() - two_edge * Rational::from_integer(floor(&(ratio + Rational::one())))
    }
}

/// Joint deviation that makes every coalition member strictly better off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionDeviation {
    pub coalition: Vec<usize>,
    pub strategies: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongCheck {
    pub is_strong: bool,
    pub witness: Option<CoalitionDeviation>,
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, t| acc * BigUint::from(n - t) / BigUint::from(t + 1))
}

/// Checks every coalition of size at most `max_coalition` (by increasing
/// size, lexicographic within a size) for a joint deviation improving all
/// members. The number of (coalition, deviation) pairs must fit `budget`.
pub fn is_strong_equilibrium(
    inst: &Instance,
    z: &StrategyVector,
    max_coalition: usize,
    budget: u64,
) -> Result<StrongCheck> {
    inst.check(z)?;
    let n = inst.node_count();
    let l = inst.strategy_count();
    let max_coalition = max_coalition.min(n);
    let size: BigUint = (1..=max_coalition)
        .map(|s| binomial(n, s) * BigUint::from(l).pow(s as u32))
        .sum();
    if size > BigUint::from(budget) {
        return Err(Error::search_too_large(&size, budget));
    }
    let current: Vec<_> = (0..n).map(|i| deviation_cost(inst, z, i, z[i]).total).collect();

    for s in 1..=max_coalition {
        let mut members: Vec<usize> = (0..s).collect();
        loop {
            let mut choice = vec![0usize; s];
            loop {
                let mut next = z.clone();
                for (&m, &c) in members.iter().zip(&choice) {
                    next[m] = c;
                }
                let all_gain = members
                    .iter()
                    .all(|&m| deviation_cost(inst, &next, m, next[m]).total < current[m]);
                if all_gain {
                    return Ok(StrongCheck {
                        is_strong: false,
                        witness: Some(CoalitionDeviation {
                            coalition: members.clone(),
                            strategies: choice,
                        }),
                    });
                }
                if !odometer(&mut choice, l) {
                    break;
                }
            }
            if !next_combination(&mut members, n) {
                break;
            }
        }
    }
    Ok(StrongCheck {
        is_strong: true,
        witness: None,
    })
}

/// Advances a base-`radix` counter (last digit fastest); false on wrap.
pub(crate) fn odometer(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    for pos in (0..k).rev() {
        if comb[pos] < n - k + pos {
            comb[pos] += 1;
            for later in pos + 1..k {
                comb[later] = comb[later - 1] + 1;
            }
            return true;
        }
    }
    false
}

// Anchored games.

fn anchored_node(inst: &AnchoredInstance, z: &StrategyVector, node: usize) -> Result<usize> {
    inst.check(z)?;
    inst.slot(node).ok_or(Error::NotStrategic(node))
}

pub fn anchored_best_responses(inst: &AnchoredInstance, z: &StrategyVector, node: usize) -> Result<Vec<usize>> {
    anchored_node(inst, z, node)?;
    Ok(argmin_set(
        (0..inst.strategy_count()).map(|s| anchored_deviation_cost(inst, z, node, s)),
    ))
}

pub fn anchored_social_responses(inst: &AnchoredInstance, z: &StrategyVector, node: usize) -> Result<Vec<usize>> {
    anchored_node(inst, z, node)?;
    Ok(argmin_set(
        (0..inst.strategy_count()).map(|s| anchored_deviation_contribution(inst, z, node, s)),
    ))
}

fn anchored_improvement(inst: &AnchoredInstance, z: &StrategyVector, node: usize) -> Option<usize> {
    let costs: Vec<_> = (0..inst.strategy_count())
        .map(|s| anchored_deviation_cost(inst, z, node, s))
        .collect();
    let best = costs.iter().min()?;
    let current = &costs[inst.play(z, node)];
    if best < current {
        costs.iter().position(|c| c == best)
    } else {
        None
    }
}

fn anchored_move(inst: &AnchoredInstance, z: &StrategyVector, node: usize, to: usize) -> Move {
    let slot = inst.slot(node).expect("strategic");
    let from = z[slot];
    let cost_delta = anchored_deviation_cost(inst, z, node, to) - anchored_deviation_cost(inst, z, node, from);
    let phi_after = anchored_potential(inst, &z.with(slot, to)).expect("valid vector");
    Move {
        player: node,
        from,
        to,
        cost_delta,
        phi_after,
    }
}

/// Witness `Move.player` is the graph node, not its slot.
pub fn is_anchored_equilibrium(inst: &AnchoredInstance, z: &StrategyVector) -> Result<EquilibriumCheck> {
    inst.check(z)?;
    let witness = inst
        .strategic()
        .iter()
        .find_map(|&node| anchored_improvement(inst, z, node).map(|to| anchored_move(inst, z, node, to)));
    Ok(EquilibriumCheck {
        is_equilibrium: witness.is_none(),
        witness,
    })
}

/// Anchored analogue of [`potential_descent`]; supports
/// [`Picker::FirstImproving`] and [`Picker::CoherentTree`].
pub fn anchored_descent(inst: &AnchoredInstance, z0: &StrategyVector, picker: Picker) -> Result<Trace> {
    inst.check(z0)?;
    let mut z = z0.clone();
    let mut moves = Vec::new();
    while let Some((node, best)) = inst
        .strategic()
        .iter()
        .find_map(|&node| anchored_improvement(inst, &z, node).map(|s| (node, s)))
    {
        let to = match picker {
            Picker::CoherentTree => anchored_coherent_response(inst, &z, node)?,
            _ => best,
        };
        let mv = anchored_move(inst, &z, node, to);
        if mv.cost_delta >= Rational::zero() {
            return Err(Error::BoundViolated(format!(
                "chosen response of node {node} does not improve its cost"
            )));
        }
        let slot = inst.slot(node).expect("strategic");
        z[slot] = to;
        moves.push(mv);
    }
    Ok(Trace {
        start: z0.clone(),
        moves,
        end: z,
    })
}
