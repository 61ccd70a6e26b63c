//! Steepest-descent-edge simplex loop.
//!
//! Each iteration enumerates the edges out of the current extreme point,
//! picks the one minimizing objective change per unit edge length, and pivots
//! when that rate is negative. The loop is single-threaded and deterministic;
//! identical inputs produce identical traces.

use crate::error::Error;
use crate::geometry::{self, Edge, NormPolicy};
use crate::scalar::{Scalar, Tolerances};
use crate::system::{ConstraintSystem, Objective, Point};

/// Iteration cap plus the tolerance set threaded through every decision.
#[derive(Debug, Clone)]
pub struct Limits<S> {
    pub max_iter: usize,
    pub tol: Tolerances<S>,
}

impl<S: Scalar> Default for Limits<S> {
    fn default() -> Self {
        Self {
            max_iter: 10_000,
            tol: Tolerances::default(),
        }
    }
}

/// Why a run stopped. `Optimal` requires the steepest rate to be
/// nonnegative; `GammaTol` covers floating runs whose rate is negative but
/// within the stopping tolerance; `IterLimit` is the guard for runs that
/// would pivot forever.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Optimal,
    GammaTol,
    IterLimit,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::Optimal => "optimal",
            StopReason::GammaTol => "gamma-tol",
            StopReason::IterLimit => "iter-limit",
        }
    }
}

/// Steepest-descent decision at one extreme point.
#[derive(Debug, Clone)]
pub struct PivotDecision<S> {
    /// Minimum of cost / length over the edges.
    pub gamma: S,
    /// The minimizing edge, absent when no pivot improves beyond tolerance.
    pub chosen: Option<Edge<S>>,
    /// Number of edges attaining the minimum within the stopping tolerance.
    pub tie_count: usize,
}

fn decide<S: Scalar>(edges: Vec<Edge<S>>, tol: &Tolerances<S>) -> PivotDecision<S> {
    debug_assert!(!edges.is_empty());
    let mut best: Option<(S, Edge<S>)> = None;
    for edge in edges.into_iter() {
        let rate = edge.rate().expect("objective attached");
        match &best {
            Some((current, _)) if rate >= *current => {}
            _ => best = Some((rate, edge)),
        }
    }
    let (gamma, edge) = best.expect("at least one edge");
    let chosen = if gamma >= -tol.opt.clone() {
        None
    } else {
        Some(edge)
    };
    PivotDecision {
        gamma,
        chosen,
        tie_count: 0,
    }
}

/// Steepest-descent rate and pivot choice at `p`. Ties resolve to the lowest
/// leaving id (edges are scanned in ascending leaving-id order).
pub fn gamma<S: Scalar>(
    sys: &ConstraintSystem<S>,
    obj: &Objective<S>,
    p: &Point<S>,
    policy: NormPolicy,
    tol: &Tolerances<S>,
) -> Result<PivotDecision<S>, Error> {
    let edges = geometry::adjacent_extreme_points(sys, p, policy, Some(obj), tol)?;
    let rates: Vec<S> = edges
        .iter()
        .map(|e| e.rate().expect("objective attached"))
        .collect();
    let mut decision = decide(edges, tol);
    decision.tie_count = rates
        .iter()
        .filter(|r| **r <= decision.gamma.clone() + tol.opt.clone())
        .count();
    Ok(decision)
}

/// Full record of a simplex run.
#[derive(Debug, Clone)]
pub struct SimplexTrace<S> {
    pub iterates: Vec<Point<S>>,
    pub values: Vec<S>,
    pub gammas: Vec<S>,
    pub pivots: Vec<(i64, i64)>,
    pub stop: StopReason,
    pub truncation: usize,
    pub policy: NormPolicy,
    /// When the objective carries a tail bound: `tail_bound / min edge
    /// length seen`, certifying that no edge neglected beyond the truncation
    /// level can have a rate below `-neglected_rate_bound`.
    pub neglected_rate_bound: Option<S>,
}

impl<S: Scalar> SimplexTrace<S> {
    pub fn final_value(&self) -> &S {
        self.values.last().expect("at least the starting value")
    }

    pub fn final_point(&self) -> &Point<S> {
        self.iterates.last().expect("at least the starting point")
    }
}

/// Runs the steepest-descent loop from the extreme point `p0`.
pub fn simplex_run<S: Scalar>(
    sys: &ConstraintSystem<S>,
    obj: &Objective<S>,
    p0: &Point<S>,
    policy: NormPolicy,
    limits: &Limits<S>,
) -> Result<SimplexTrace<S>, Error> {
    let tol = &limits.tol;
    if !geometry::is_extreme(sys, p0, tol)? {
        return Err(Error::NotExtreme);
    }

    let mut iterates = vec![p0.clone()];
    let mut values = vec![obj.eval(p0)?];
    let mut gammas: Vec<S> = Vec::new();
    let mut pivots: Vec<(i64, i64)> = Vec::new();
    let mut min_length: Option<S> = None;
    let mut current = p0.clone();
    let stop;

    loop {
        let at_iteration = |e: Error| Error::AtIteration {
            iteration: pivots.len(),
            source: Box::new(e),
        };
        let edges = geometry::adjacent_extreme_points(sys, &current, policy, Some(obj), tol)
            .map_err(at_iteration)?;
        for edge in &edges {
            match &min_length {
                Some(best) if *best <= edge.length => {}
                _ => min_length = Some(edge.length.clone()),
            }
        }
        let decision = decide(edges, tol);
        gammas.push(decision.gamma.clone());

        match decision.chosen {
            None => {
                stop = if decision.gamma >= S::zero() {
                    StopReason::Optimal
                } else {
                    StopReason::GammaTol
                };
                break;
            }
            Some(edge) => {
                if pivots.len() >= limits.max_iter {
                    stop = StopReason::IterLimit;
                    break;
                }
                pivots.push((edge.leaving_id, edge.entering_id));
                current = edge.adjacent.clone();
                values.push(obj.eval(&current)?);
                iterates.push(current.clone());
            }
        }
    }

    let neglected_rate_bound = match (obj.tail_bound(), &min_length) {
        (Some(tail), Some(len)) if *len > S::zero() => Some(tail.clone() / len.clone()),
        _ => None,
    };

    Ok(SimplexTrace {
        iterates,
        values,
        gammas,
        pivots,
        stop,
        truncation: sys.truncation(),
        policy,
        neglected_rate_bound,
    })
}

/// Certificate that no edge out of `p` improves the objective beyond the
/// stopping tolerance; otherwise carries the most negative edge as witness.
#[derive(Debug, Clone)]
pub struct OptimalityCertificate<S> {
    pub optimal: bool,
    pub witness: Option<Edge<S>>,
}

pub fn certify_optimal<S: Scalar>(
    sys: &ConstraintSystem<S>,
    obj: &Objective<S>,
    p: &Point<S>,
    tol: &Tolerances<S>,
) -> Result<OptimalityCertificate<S>, Error> {
    let edges = geometry::adjacent_extreme_points(sys, p, NormPolicy::UnitEdge, Some(obj), tol)?;
    let mut worst: Option<Edge<S>> = None;
    for edge in edges {
        let cost = edge.cost.clone().expect("objective attached");
        match &worst {
            Some(w) if cost >= w.cost.clone().expect("objective attached") => {}
            _ => worst = Some(edge),
        }
    }
    let worst = worst.expect("at least one edge");
    let optimal = worst.cost.clone().expect("objective attached") >= -tol.opt.clone();
    Ok(OptimalityCertificate {
        optimal,
        witness: if optimal { None } else { Some(worst) },
    })
}

/// JSON-lines serialization: one record per iteration, then a summary record.
/// Points are included only when `emit_points` is set.
pub fn trace_to_jsonl<S: Scalar>(trace: &SimplexTrace<S>, emit_points: bool) -> String {
    let mut out = String::new();
    for n in 0..trace.gammas.len() {
        let (leaving, entering) = match trace.pivots.get(n) {
            Some(&(l, e)) => (l.to_string(), e.to_string()),
            None => ("null".into(), "null".into()),
        };
        out.push_str(&format!(
            "{{\"n\":{},\"value\":{},\"gamma\":{},\"leaving_id\":{},\"entering_id\":{}",
            n,
            trace.values[n].json_value(),
            trace.gammas[n].json_value(),
            leaving,
            entering,
        ));
        if emit_points {
            let coords: Vec<String> = trace.iterates[n]
                .coords()
                .iter()
                .map(|c| c.json_value())
                .collect();
            out.push_str(&format!(",\"point\":[{}]", coords.join(",")));
        }
        out.push_str("}\n");
    }
    let tail = trace
        .neglected_rate_bound
        .as_ref()
        .map(|b| b.json_value())
        .unwrap_or_else(|| "null".into());
    out.push_str(&format!(
        "{{\"stop\":\"{}\",\"pivots\":{},\"final_value\":{},\"truncation\":{},\"policy\":\"{}\",\"neglected_rate_bound\":{}}}\n",
        trace.stop.as_str(),
        trace.pivots.len(),
        trace.final_value().json_value(),
        trace.truncation,
        trace.policy.as_str(),
        tail,
    ));
    out
}

/// Plot data: one `n,value,gamma` CSV row per gamma evaluation.
pub fn trace_to_csv<S: Scalar>(trace: &SimplexTrace<S>) -> String {
    let mut out = String::from("n,value,gamma\n");
    for n in 0..trace.gammas.len() {
        out.push_str(&format!(
            "{},{},{}\n",
            n,
            trace.values[n].literal(),
            trace.gammas[n].literal()
        ));
    }
    out
}
