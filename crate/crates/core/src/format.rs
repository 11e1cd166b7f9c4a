//! JSON file format for instances. Rationals are always exact `"p/q"`
//! strings; decimals are rejected on input.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{AnchoredInstance, Instance};
use crate::metric::{cycle_metric, line_metric, make_metric, tree_metric, Metric, MetricSource};
use crate::rational::{format_rational, parse_rational, rat, Rational};

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum MetricRepr {
    Matrix { d: Vec<Vec<String>> },
    Tree { strategies: usize, edges: Vec<(usize, usize, String)> },
    Line { positions: Vec<String> },
    Cycle { size: usize },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixedRepr {
    node: usize,
    preferred: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
    metric: MetricRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    preferred: Option<Vec<usize>>,
    alpha: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fixed: Option<Vec<FixedRepr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    strategic: Option<Vec<usize>>,
}

/// Either kind of game, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameFile {
    Discrete(Instance),
    Anchored(AnchoredInstance),
}

impl GameFile {
    pub fn to_json(&self) -> String {
        match self {
            GameFile::Discrete(inst) => instance_to_json(inst),
            GameFile::Anchored(inst) => anchored_to_json(inst),
        }
    }
}

fn metric_repr(metric: &Metric) -> MetricRepr {
    let f = format_rational;
    match metric.source() {
        MetricSource::Matrix => MetricRepr::Matrix {
            d: metric.matrix().iter().map(|row| row.iter().map(f).collect()).collect(),
        },
        MetricSource::Tree { edges } => MetricRepr::Tree {
            strategies: metric.strategy_count(),
            edges: edges.iter().map(|(u, v, w)| (*u, *v, f(w))).collect(),
        },
        MetricSource::Line { positions } => MetricRepr::Line {
            positions: positions.iter().map(f).collect(),
        },
        MetricSource::Cycle { size } => MetricRepr::Cycle { size: *size },
    }
}

fn parse_all(values: &[String]) -> Result<Vec<Rational>> {
    values.iter().map(|v| parse_rational(v)).collect()
}

fn build_metric(repr: &MetricRepr) -> Result<Metric> {
    match repr {
        MetricRepr::Matrix { d } => make_metric(d.iter().map(|row| parse_all(row)).collect::<Result<_>>()?),
        MetricRepr::Tree { strategies, edges } => {
            let edges = edges
                .iter()
                .map(|(u, v, w)| Ok((*u, *v, parse_rational(w)?)))
                .collect::<Result<Vec<_>>>()?;
            tree_metric(*strategies, &edges)
        }
        MetricRepr::Line { positions } => line_metric(&parse_all(positions)?),
        MetricRepr::Cycle { size } => cycle_metric(*size),
    }
}

fn write(repr: &FileRepr) -> String {
    serde_json::to_string_pretty(repr).expect("instance serialises")
}

pub fn instance_to_json(inst: &Instance) -> String {
    write(&FileRepr {
        n: inst.node_count(),
        edges: inst.graph().edges().to_vec(),
        metric: metric_repr(inst.metric()),
        preferred: Some(inst.preferred().to_vec()),
        alpha: format_rational(inst.alpha()),
        fixed: None,
        strategic: None,
    })
}

/// Anchored games are always played at `α = 1/2`; the field is written for
/// uniformity and must read back as `1/2`.
pub fn anchored_to_json(inst: &AnchoredInstance) -> String {
    write(&FileRepr {
        n: inst.graph().node_count(),
        edges: inst.graph().edges().to_vec(),
        metric: metric_repr(inst.metric()),
        preferred: None,
        alpha: format_rational(&rat(1, 2)),
        fixed: Some(
            inst.fixed()
                .into_iter()
                .map(|(node, preferred)| FixedRepr { node, preferred })
                .collect(),
        ),
        strategic: Some(inst.strategic().to_vec()),
    })
}

pub fn parse_game(text: &str) -> Result<GameFile> {
    let repr: FileRepr = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let graph = Graph::new(repr.n, repr.edges.iter().copied())?;
    let metric = build_metric(&repr.metric)?;
    let alpha = parse_rational(&repr.alpha)?;
    match (repr.fixed, repr.strategic) {
        (None, None) => {
            let preferred = repr
                .preferred
                .ok_or_else(|| Error::Parse("missing field `preferred`".into()))?;
            Ok(GameFile::Discrete(Instance::new(graph, metric, preferred, alpha)?))
        }
        (Some(fixed), Some(strategic)) => {
            if alpha != rat(1, 2) {
                return Err(Error::WrongAlpha(repr.alpha));
            }
            if repr.preferred.is_some() {
                return Err(Error::Parse("anchored games take preferences from `fixed`".into()));
            }
            let fixed: Vec<_> = fixed.iter().map(|f| (f.node, f.preferred)).collect();
            Ok(GameFile::Anchored(AnchoredInstance::new(graph, metric, &fixed, &strategic)?))
        }
        _ => Err(Error::Parse("`fixed` and `strategic` must appear together".into())),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    match parse_game(text)? {
        GameFile::Discrete(inst) => Ok(inst),
        GameFile::Anchored(_) => Err(Error::Parse("expected a discrete instance, found an anchored one".into())),
    }
}

pub fn parse_anchored(text: &str) -> Result<AnchoredInstance> {
    match parse_game(text)? {
        GameFile::Anchored(inst) => Ok(inst),
        GameFile::Discrete(_) => Err(Error::Parse("expected an anchored instance".into())),
    }
}
