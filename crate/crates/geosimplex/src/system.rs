//! Truncated half-space systems.
//!
//! A system holds an ordered family of affine inequalities `phi(x) <= b`
//! over coordinates `1..=N` together with the positive weight sequence of the
//! ambient weighted-l2 norm. Every infinite object is represented at a finite
//! truncation level chosen at construction; operations never silently extend
//! it. All types are immutable after construction and evaluation is pure.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Error;
use crate::scalar::{Scalar, Tolerances};

/// Sparse linear functional in coordinate form, `x -> sum_j a_j x_j`, with
/// indices implicitly zero above the truncation level.
#[derive(Debug, Clone, PartialEq)]
pub struct Coeffs<S> {
    entries: BTreeMap<usize, S>,
    truncation: usize,
}

impl<S: Scalar> Coeffs<S> {
    /// Builds a functional from `(index, coefficient)` pairs. Indices are
    /// 1-based and must lie in `[1, truncation]`; zero coefficients are
    /// dropped.
    pub fn from_pairs(pairs: &[(usize, S)], truncation: usize) -> Result<Self, Error> {
        let mut entries = BTreeMap::new();
        for (index, value) in pairs {
            if *index == 0 || *index > truncation {
                return Err(Error::IndexOutOfRange {
                    index: *index,
                    truncation,
                });
            }
            if !value.is_zero() {
                entries.insert(*index, value.clone());
            }
        }
        Ok(Self {
            entries,
            truncation,
        })
    }

    /// The coordinate functional `e_j`.
    pub fn unit(index: usize, truncation: usize) -> Result<Self, Error> {
        Self::from_pairs(&[(index, S::one())], truncation)
    }

    /// Drops zeros from a dense coefficient vector.
    pub fn from_dense(values: &[S]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i + 1, v.clone()))
            .collect();
        Self {
            entries,
            truncation: values.len(),
        }
    }

    pub fn zero(truncation: usize) -> Self {
        Self {
            entries: BTreeMap::new(),
            truncation,
        }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coefficient at the 1-based index (zero when absent).
    pub fn coefficient(&self, index: usize) -> S {
        self.entries.get(&index).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &S)> {
        self.entries.iter().map(|(&i, v)| (i, v))
    }

    pub fn dense(&self) -> Vec<S> {
        let mut out = vec![S::zero(); self.truncation];
        for (&i, v) in &self.entries {
            out[i - 1] = v.clone();
        }
        out
    }

    /// Evaluates the functional at a point. The point must be at least as
    /// long as the functional's truncation.
    pub fn eval(&self, x: &Point<S>) -> Result<S, Error> {
        if x.len() < self.truncation {
            return Err(Error::DimensionMismatch {
                functional: self.truncation,
                point: x.len(),
            });
        }
        let mut acc = S::zero();
        for (&i, a) in &self.entries {
            acc = acc + a.clone() * x.coord(i).clone();
        }
        Ok(acc)
    }

    pub fn scaled(&self, factor: &S) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(&i, v)| (i, v.clone() * factor.clone()))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Self {
            entries,
            truncation: self.truncation,
        }
    }

    /// Sum of two functionals at a common truncation.
    pub fn add(&self, other: &Self) -> Self {
        let truncation = self.truncation.max(other.truncation);
        let mut entries = self.entries.clone();
        for (&i, v) in &other.entries {
            let updated = entries.get(&i).cloned().unwrap_or_else(S::zero) + v.clone();
            if updated.is_zero() {
                entries.remove(&i);
            } else {
                entries.insert(i, updated);
            }
        }
        Self {
            entries,
            truncation,
        }
    }
}

/// Coordinate vector at a truncation level.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<S> {
    coords: Vec<S>,
}

impl<S: Scalar> Point<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Self { coords }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            coords: vec![S::zero(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinate at the 1-based index.
    pub fn coord(&self, index: usize) -> &S {
        &self.coords[index - 1]
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn iter(&self) -> impl Iterator<Item = &S> {
        self.coords.iter()
    }

    /// `self + t * direction`, componentwise.
    pub fn add_scaled(&self, direction: &Point<S>, t: &S) -> Point<S> {
        debug_assert_eq!(self.len(), direction.len());
        Point::new(
            self.coords
                .iter()
                .zip(&direction.coords)
                .map(|(x, d)| x.clone() + t.clone() * d.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Point<S>) -> Point<S> {
        debug_assert_eq!(self.len(), other.len());
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(x, y)| x.clone() - y.clone())
                .collect(),
        )
    }

    pub fn scaled(&self, factor: &S) -> Point<S> {
        Point::new(
            self.coords
                .iter()
                .map(|x| x.clone() * factor.clone())
                .collect(),
        )
    }

    pub fn chebyshev_distance(&self, other: &Point<S>) -> S {
        debug_assert_eq!(self.len(), other.len());
        let mut best = S::zero();
        for (x, y) in self.coords.iter().zip(&other.coords) {
            let d = (x.clone() - y.clone()).abs();
            if d > best {
                best = d;
            }
        }
        best
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }
}

/// One half-space constraint `functional(x) <= bound` with an integer label.
/// Labels may be negative (mirroring index sets of the form
/// `{1,2,...} ∪ {-1,-2,...}`) and are unique within a system.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<S> {
    id: i64,
    functional: Coeffs<S>,
    bound: S,
}

impl<S: Scalar> Constraint<S> {
    pub fn new(id: i64, functional: Coeffs<S>, bound: S) -> Result<Self, Error> {
        if functional.is_zero() {
            return Err(Error::Spec(format!(
                "constraint {id} has a zero functional"
            )));
        }
        Ok(Self {
            id,
            functional,
            bound,
        })
    }

    pub fn id(&self) -> i64 {
        self.id
    }

    pub fn functional(&self) -> &Coeffs<S> {
        &self.functional
    }

    pub fn bound(&self) -> &S {
        &self.bound
    }
}

/// Linear objective with an affine offset and an optional certified bound on
/// the edge-cost mass neglected beyond the truncation level.
#[derive(Debug, Clone, PartialEq)]
pub struct Objective<S> {
    linear: Coeffs<S>,
    constant: S,
    tail_bound: Option<S>,
}

impl<S: Scalar> Objective<S> {
    pub fn new(linear: Coeffs<S>, constant: S, tail_bound: Option<S>) -> Result<Self, Error> {
        if let Some(tail) = &tail_bound {
            if tail.is_negative() {
                return Err(Error::Spec("objective tail bound is negative".into()));
            }
        }
        Ok(Self {
            linear,
            constant,
            tail_bound,
        })
    }

    pub fn linear(&self) -> &Coeffs<S> {
        &self.linear
    }

    pub fn constant(&self) -> &S {
        &self.constant
    }

    pub fn tail_bound(&self) -> Option<&S> {
        self.tail_bound.as_ref()
    }

    pub fn eval(&self, x: &Point<S>) -> Result<S, Error> {
        Ok(self.linear.eval(x)? + self.constant.clone())
    }
}

/// Whether the constraint list is the whole instance or a truncation of a
/// countably infinite family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    Finite,
    Truncated,
}

/// How the weight sequence was produced. Geometric generators keep their
/// ratio so audits can reason about the un-truncated family.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightRule<S> {
    /// `delta_j = ratio^j`.
    Geometric { ratio: S },
    /// Weights given directly.
    Explicit,
}

/// An indexed, truncated family of half-space constraints plus the ambient
/// weight sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSystem<S> {
    constraints: Vec<Constraint<S>>,
    by_id: BTreeMap<i64, usize>,
    weights: Vec<S>,
    weight_rule: WeightRule<S>,
    truncation: usize,
    kind: SystemKind,
}

impl<S: Scalar> ConstraintSystem<S> {
    pub fn new(
        constraints: Vec<Constraint<S>>,
        weights: Vec<S>,
        weight_rule: WeightRule<S>,
        truncation: usize,
        kind: SystemKind,
    ) -> Result<Self, Error> {
        if truncation == 0 {
            return Err(Error::Spec("truncation level must be positive".into()));
        }
        if weights.len() != truncation {
            return Err(Error::Spec(format!(
                "expected {truncation} weights, got {}",
                weights.len()
            )));
        }
        if weights.iter().any(|w| *w <= S::zero()) {
            return Err(Error::Spec(
                "ambient weights must be strictly positive".into(),
            ));
        }
        let mut by_id = BTreeMap::new();
        for (i, c) in constraints.iter().enumerate() {
            if c.functional.truncation() != truncation {
                return Err(Error::Spec(format!(
                    "constraint {} truncated at {} in a system truncated at {truncation}",
                    c.id,
                    c.functional.truncation()
                )));
            }
            if by_id.insert(c.id, i).is_some() {
                return Err(Error::Spec(format!("duplicate constraint id {}", c.id)));
            }
        }
        Ok(Self {
            constraints,
            by_id,
            weights,
            weight_rule,
            truncation,
            kind,
        })
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn weight_rule(&self) -> &WeightRule<S> {
        &self.weight_rule
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// Constraints in insertion order.
    pub fn constraints(&self) -> &[Constraint<S>] {
        &self.constraints
    }

    /// All ids in ascending order.
    pub fn ids(&self) -> impl Iterator<Item = i64> + '_ {
        self.by_id.keys().copied()
    }

    pub fn constraint(&self, id: i64) -> Result<&Constraint<S>, Error> {
        self.by_id
            .get(&id)
            .map(|&i| &self.constraints[i])
            .ok_or(Error::UnknownId(id))
    }

    /// Rebuilds the system without one constraint.
    pub fn without(&self, id: i64) -> Result<Self, Error> {
        self.constraint(id)?;
        let constraints = self
            .constraints
            .iter()
            .filter(|c| c.id != id)
            .cloned()
            .collect();
        Self::new(
            constraints,
            self.weights.clone(),
            self.weight_rule.clone(),
            self.truncation,
            self.kind,
        )
    }

    fn expect_paired(&self, x: &Point<S>) -> Result<(), Error> {
        if x.len() != self.truncation {
            return Err(Error::DimensionMismatch {
                functional: self.truncation,
                point: x.len(),
            });
        }
        Ok(())
    }

    /// Slack `b - phi(x)` of one constraint. Negative slack signals that `x`
    /// violates the constraint.
    pub fn slack(&self, id: i64, x: &Point<S>) -> Result<S, Error> {
        self.expect_paired(x)?;
        let c = self.constraint(id)?;
        Ok(c.bound.clone() - c.functional.eval(x)?)
    }

    /// Slacks of every constraint, in ascending id order.
    pub fn slacks(&self, x: &Point<S>) -> Result<Vec<(i64, S)>, Error> {
        self.expect_paired(x)?;
        let mut out = Vec::with_capacity(self.constraints.len());
        for (&id, &i) in &self.by_id {
            let c = &self.constraints[i];
            out.push((id, c.bound.clone() - c.functional.eval(x)?));
        }
        Ok(out)
    }

    /// Errors with the most violated constraint when `x` is infeasible
    /// beyond `tol.active`.
    pub fn ensure_feasible(&self, x: &Point<S>, tol: &Tolerances<S>) -> Result<(), Error> {
        let slacks = self.slacks(x)?;
        let mut worst: Option<(i64, S)> = None;
        for (id, slack) in slacks {
            if slack < -tol.active.clone() {
                match &worst {
                    Some((_, w)) if *w <= slack => {}
                    _ => worst = Some((id, slack)),
                }
            }
        }
        match worst {
            Some((id, slack)) => Err(Error::Infeasible {
                id,
                slack: slack.literal(),
            }),
            None => Ok(()),
        }
    }

    /// Ids of the constraints tight at `x` (`|slack| <= tol.active`), in
    /// ascending id order.
    pub fn active_set(&self, x: &Point<S>, tol: &Tolerances<S>) -> Result<Vec<i64>, Error> {
        self.ensure_feasible(x, tol)?;
        let mut out = Vec::new();
        for (id, slack) in self.slacks(x)? {
            if slack.abs() <= tol.active {
                out.push(id);
            }
        }
        Ok(out)
    }

    /// Active ids in the series (re-indexing) order used by decompositions
    /// and edge-cost tail scans: ascending magnitude, then ascending id.
    /// For sign-mirrored index families this is the natural coordinate order.
    pub fn active_set_series_order(
        &self,
        x: &Point<S>,
        tol: &Tolerances<S>,
    ) -> Result<Vec<i64>, Error> {
        let mut ids = self.active_set(x, tol)?;
        ids.sort_by_key(|&id| (id.unsigned_abs(), id));
        Ok(ids)
    }

    /// Squared ambient norm `sum_j (delta_j x_j)^2`.
    pub fn norm_x_sq(&self, x: &Point<S>) -> S {
        let mut acc = S::zero();
        for (w, v) in self.weights.iter().zip(x.iter()) {
            let term = w.clone() * v.clone();
            acc = acc + term.clone() * term;
        }
        acc
    }

    /// Weighted l2 norm of a vector at the truncation level.
    pub fn norm_x(&self, x: &Point<S>) -> S {
        self.norm_x_sq(x).sqrt()
    }

    /// Active-constraint coefficient rows at `x`, densified, in ascending id
    /// order, together with the ids.
    pub fn active_rows(
        &self,
        x: &Point<S>,
        tol: &Tolerances<S>,
    ) -> Result<(Vec<i64>, Vec<Vec<S>>), Error> {
        let ids = self.active_set(x, tol)?;
        let rows = ids
            .iter()
            .map(|&id| {
                self.constraint(id)
                    .expect("active id exists")
                    .functional
                    .dense()
            })
            .collect();
        Ok((ids, rows))
    }
}

/// Symmetric difference of two active-id sets; used by pivot-structure
/// checks.
pub fn active_symmetric_difference(a: &[i64], b: &[i64]) -> Vec<i64> {
    let sa: BTreeSet<i64> = a.iter().copied().collect();
    let sb: BTreeSet<i64> = b.iter().copied().collect();
    sa.symmetric_difference(&sb).copied().collect()
}
