//! Extreme-point geometry: the singleton-intersection extremality test, edge
//! lines obtained by dropping one active hyperplane, the ratio test to the
//! adjacent extreme point, and series decompositions along the edges out of
//! an extreme point.

use crate::error::Error;
use crate::scalar::{Scalar, Tolerances};
use crate::system::{ConstraintSystem, Objective, Point};

/// Edge-length policy. `UnitEdge` assigns every edge length one; `Ambient`
/// measures `q - p` in the weighted ambient norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormPolicy {
    UnitEdge,
    Ambient,
}

impl NormPolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            NormPolicy::UnitEdge => "unit-edge",
            NormPolicy::Ambient => "ambient",
        }
    }
}

/// One edge out of an extreme point: the leaving active constraint, the ray
/// direction into its half-space, and the first blocking intersection.
#[derive(Debug, Clone)]
pub struct Edge<S> {
    pub anchor: Point<S>,
    pub leaving_id: i64,
    pub direction: Point<S>,
    pub step: S,
    pub adjacent: Point<S>,
    pub entering_id: i64,
    pub length: S,
    pub cost: Option<S>,
}

impl<S: Scalar> Edge<S> {
    /// Rate of objective change per unit edge length.
    pub fn rate(&self) -> Option<S> {
        self.cost.as_ref().map(|c| c.clone() / self.length.clone())
    }
}

/// Series decomposition of a feasible point along the edges out of an
/// extreme point. Coefficients follow the system's series order (ascending
/// id magnitude); `residual_sqs[n]` is the squared ambient distance between
/// the target and the n-term partial sum, so index 0 holds the distance to
/// the base point itself.
#[derive(Debug, Clone)]
pub struct SchauderDecomposition<S> {
    base: Point<S>,
    target: Point<S>,
    coefficients: Vec<(i64, S)>,
    edges: Vec<Edge<S>>,
    residual_sqs: Vec<S>,
}

impl<S: Scalar> SchauderDecomposition<S> {
    pub fn base(&self) -> &Point<S> {
        &self.base
    }

    pub fn target(&self) -> &Point<S> {
        &self.target
    }

    /// `(active id, coefficient)` pairs in series order.
    pub fn coefficients(&self) -> &[(i64, S)] {
        &self.coefficients
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn residual_sqs(&self) -> &[S] {
        &self.residual_sqs
    }

    pub fn residuals(&self) -> Vec<S> {
        self.residual_sqs.iter().map(|r| r.sqrt()).collect()
    }

    /// Partial sum `base + sum_{k<=n} theta_k (q_k - base)`.
    pub fn reconstruct(&self, n: usize) -> Result<Point<S>, Error> {
        if n > self.coefficients.len() {
            return Err(Error::OutOfRange {
                index: n,
                max: self.coefficients.len(),
            });
        }
        let mut acc = self.base.clone();
        for k in 0..n {
            let theta = &self.coefficients[k].1;
            let span = self.edges[k].adjacent.sub(&self.base);
            acc = acc.add_scaled(&span, theta);
        }
        Ok(acc)
    }
}

/// True iff the active hyperplanes at `x` intersect only in `x` itself,
/// i.e. the active coefficient matrix has full column rank at the truncation
/// level.
pub fn is_extreme<S: Scalar>(
    sys: &ConstraintSystem<S>,
    x: &Point<S>,
    tol: &Tolerances<S>,
) -> Result<bool, Error> {
    let (_, rows) = sys.active_rows(x, tol)?;
    if rows.len() < sys.truncation() {
        return Ok(false);
    }
    Ok(S::null_space(&rows, sys.truncation(), &tol.zero).is_empty())
}

fn ensure_extreme<S: Scalar>(
    sys: &ConstraintSystem<S>,
    x: &Point<S>,
    tol: &Tolerances<S>,
) -> Result<Vec<i64>, Error> {
    let (ids, rows) = sys.active_rows(x, tol)?;
    if rows.len() < sys.truncation()
        || !S::null_space(&rows, sys.truncation(), &tol.zero).is_empty()
    {
        return Err(Error::NotExtreme);
    }
    Ok(ids)
}

/// Direction of the line obtained by dropping one active hyperplane, oriented
/// into the half-space of the dropped constraint and normalized to unit
/// ambient norm.
pub fn edge_line<S: Scalar>(
    sys: &ConstraintSystem<S>,
    p: &Point<S>,
    leaving_id: i64,
    tol: &Tolerances<S>,
) -> Result<Point<S>, Error> {
    let active = ensure_extreme(sys, p, tol)?;
    if !active.contains(&leaving_id) {
        return Err(Error::NotActive { id: leaving_id });
    }
    edge_line_inner(sys, &active, leaving_id, tol)
}

fn edge_line_inner<S: Scalar>(
    sys: &ConstraintSystem<S>,
    active: &[i64],
    leaving_id: i64,
    tol: &Tolerances<S>,
) -> Result<Point<S>, Error> {
    let rows: Vec<Vec<S>> = active
        .iter()
        .filter(|&&id| id != leaving_id)
        .map(|&id| sys.constraint(id).expect("active id").functional().dense())
        .collect();
    let mut basis = S::null_space(&rows, sys.truncation(), &tol.zero);
    if basis.len() != 1 {
        return Err(Error::Degenerate {
            leaving_id,
            null_dim: basis.len(),
        });
    }
    let mut d = Point::new(basis.pop().expect("one basis vector"));
    let along = sys.constraint(leaving_id)?.functional().eval(&d)?;
    if along.abs() <= tol.zero {
        // The candidate direction stays inside the dropped hyperplane, which
        // contradicts the singleton intersection; treat as degenerate.
        return Err(Error::Degenerate {
            leaving_id,
            null_dim: 1,
        });
    }
    if along.is_positive() {
        d = d.scaled(&-S::one());
    }
    let norm = sys.norm_x(&d);
    Ok(d.scaled(&(S::one() / norm)))
}

/// Outcome of the ratio test along a ray.
#[derive(Debug, Clone)]
pub struct RatioStep<S> {
    pub step: S,
    pub entering_id: i64,
    pub point: Point<S>,
}

/// Minimizes `slack / directional increase` over the inactive constraints
/// that block the ray `p + t d`. Ties resolve to the lowest entering id.
pub fn ratio_test<S: Scalar>(
    sys: &ConstraintSystem<S>,
    p: &Point<S>,
    d: &Point<S>,
    tol: &Tolerances<S>,
) -> Result<RatioStep<S>, Error> {
    if d.is_zero() {
        return Err(Error::Spec(
            "ratio test requires a nonzero direction".into(),
        ));
    }
    sys.ensure_feasible(p, tol)?;
    let mut best: Option<(S, i64)> = None;
    for (id, slack) in sys.slacks(p)? {
        let rate = sys.constraint(id)?.functional().eval(d)?;
        if slack.abs() <= tol.active {
            // Active constraint: the ray must not increase it.
            if rate > tol.zero {
                return Err(Error::DirectionNotInCone { id });
            }
            continue;
        }
        if rate > tol.zero {
            let ratio = slack / rate;
            match &best {
                Some((current, _)) if *current <= ratio => {}
                _ => best = Some((ratio, id)),
            }
        }
    }
    let Some((step, entering_id)) = best else {
        return Err(Error::Unbounded { leaving_id: None });
    };
    let point = p.add_scaled(d, &step);
    Ok(RatioStep {
        step,
        entering_id,
        point,
    })
}

fn build_edge<S: Scalar>(
    sys: &ConstraintSystem<S>,
    p: &Point<S>,
    active: &[i64],
    leaving_id: i64,
    policy: NormPolicy,
    obj: Option<&Objective<S>>,
    tol: &Tolerances<S>,
) -> Result<Edge<S>, Error> {
    let attach = |source: Error| match source {
        e @ Error::Degenerate { .. } => e,
        Error::Unbounded { .. } => Error::Unbounded {
            leaving_id: Some(leaving_id),
        },
        other => Error::EdgeConstruction {
            leaving_id,
            source: Box::new(other),
        },
    };
    let direction = edge_line_inner(sys, active, leaving_id, tol).map_err(attach)?;
    let ratio = ratio_test(sys, p, &direction, tol).map_err(attach)?;
    let length = match policy {
        NormPolicy::UnitEdge => S::one(),
        NormPolicy::Ambient => sys.norm_x(&ratio.point.sub(p)),
    };
    let cost = match obj {
        Some(o) => Some(o.eval(&ratio.point)? - o.eval(p)?),
        None => None,
    };
    Ok(Edge {
        anchor: p.clone(),
        leaving_id,
        direction,
        step: ratio.step,
        adjacent: ratio.point,
        entering_id: ratio.entering_id,
        length,
        cost,
    })
}

/// One edge per active constraint at `p`, in ascending leaving-id order.
pub fn adjacent_extreme_points<S: Scalar>(
    sys: &ConstraintSystem<S>,
    p: &Point<S>,
    policy: NormPolicy,
    obj: Option<&Objective<S>>,
    tol: &Tolerances<S>,
) -> Result<Vec<Edge<S>>, Error> {
    let active = ensure_extreme(sys, p, tol)?;
    active
        .iter()
        .map(|&leaving_id| build_edge(sys, p, &active, leaving_id, policy, obj, tol))
        .collect()
}

/// Decomposes a feasible point `x` over the edges out of the extreme point
/// `p`: coefficient `theta_k = phi_k(x - p) / phi_k(q_k - p)` for each active
/// constraint in series order, with squared residuals of every partial sum.
pub fn schauder_decompose<S: Scalar>(
    sys: &ConstraintSystem<S>,
    p: &Point<S>,
    x: &Point<S>,
    tol: &Tolerances<S>,
) -> Result<SchauderDecomposition<S>, Error> {
    let active = ensure_extreme(sys, p, tol)?;
    sys.ensure_feasible(x, tol)?;
    let mut order: Vec<i64> = active.clone();
    order.sort_by_key(|&id| (id.unsigned_abs(), id));

    let mut coefficients = Vec::with_capacity(order.len());
    let mut edges = Vec::with_capacity(order.len());
    let diff = x.sub(p);
    for &id in &order {
        let edge = build_edge(sys, p, &active, id, NormPolicy::UnitEdge, None, tol)?;
        let functional = sys.constraint(id)?.functional();
        let numer = functional.eval(&diff)?;
        let denom = functional.eval(&edge.adjacent.sub(p))?;
        if denom.abs() <= tol.zero {
            return Err(Error::Degenerate {
                leaving_id: id,
                null_dim: 0,
            });
        }
        coefficients.push((id, numer / denom));
        edges.push(edge);
    }

    let mut residual_sqs = Vec::with_capacity(order.len() + 1);
    let mut acc = p.clone();
    residual_sqs.push(sys.norm_x_sq(&x.sub(&acc)));
    for (k, (_, theta)) in coefficients.iter().enumerate() {
        let span = edges[k].adjacent.sub(p);
        acc = acc.add_scaled(&span, theta);
        residual_sqs.push(sys.norm_x_sq(&x.sub(&acc)));
    }

    Ok(SchauderDecomposition {
        base: p.clone(),
        target: x.clone(),
        coefficients,
        edges,
        residual_sqs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};
    use proptest::prelude::*;

    type Q = BigRational;

    fn rat(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn cube3() -> crate::system::ConstraintSystem<f64> {
        instances::cube(3).unwrap()
    }

    fn tol64() -> Tolerances<f64> {
        Tolerances::default()
    }

    fn collinear(a: &Point<f64>, b: &[f64]) -> bool {
        // a proportional to b with positive factor
        let mut factor = None;
        for (x, y) in a.coords().iter().zip(b) {
            if y.abs() < 1e-12 {
                if x.abs() > 1e-9 {
                    return false;
                }
            } else {
                let f = x / y;
                match factor {
                    None => factor = Some(f),
                    Some(prev) => {
                        if (f - prev).abs() > 1e-9 {
                            return false;
                        }
                    }
                }
            }
        }
        factor.map(|f| f > 0.0).unwrap_or(false)
    }

    #[test]
    fn extremality_on_cube() {
        let sys = cube3();
        let tol = tol64();
        assert!(is_extreme(&sys, &Point::new(vec![1.0, 0.0, 1.0]), &tol).unwrap());
        // Rank-2 active matrix: null space spans e3.
        assert!(!is_extreme(&sys, &Point::new(vec![0.0, 0.0, 0.5]), &tol).unwrap());
    }

    #[test]
    fn extremality_on_hilbert_cube_binary_points() {
        let sys = instances::hilbert_cube::<Q>(&rat(1, 2), 4).unwrap();
        let tol = Tolerances::default();
        for bits in 0u32..16 {
            let coords: Vec<Q> = (0..4)
                .map(|j| Q::from_int(((bits >> j) & 1) as i64))
                .collect();
            assert!(is_extreme(&sys, &Point::new(coords), &tol).unwrap());
        }
    }

    #[test]
    fn extremality_rejects_infeasible() {
        let sys = cube3();
        assert!(matches!(
            is_extreme(&sys, &Point::new(vec![-1.0, 0.0, 0.0]), &tol64()),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn edge_line_at_origin() {
        let sys = cube3();
        // Dropping -x1 <= 0 (id 4): null space of rows {e2, e3} spans e1,
        // oriented so the dropped functional decreases.
        let d = edge_line(&sys, &Point::zeros(3), 4, &tol64()).unwrap();
        assert!(collinear(&d, &[1.0, 0.0, 0.0]));
    }

    #[test]
    fn edge_line_at_far_vertex() {
        let sys = cube3();
        let p = Point::new(vec![1.0, 1.0, 1.0]);
        let d = edge_line(&sys, &p, 3, &tol64()).unwrap();
        assert!(collinear(&d, &[0.0, 0.0, -1.0]));
    }

    #[test]
    fn edge_line_on_hilbert_cube() {
        let sys = instances::hilbert_cube::<Q>(&rat(1, 2), 3).unwrap();
        let tol = Tolerances::<Q>::default();
        for k in 1..=3i64 {
            let d = edge_line(&sys, &Point::zeros(3), -k, &tol).unwrap();
            for j in 1..=3usize {
                if j as i64 == k {
                    assert!(d.coord(j).is_positive());
                } else {
                    assert!(d.coord(j).is_zero());
                }
            }
        }
    }

    #[test]
    fn edge_line_degenerate_vertex() {
        // Square pyramid apex in R^3: four planes through one point.
        let rows = vec![
            vec![1.0, 0.0, 1.0],
            vec![-1.0, 0.0, 1.0],
            vec![0.0, 1.0, 1.0],
            vec![0.0, -1.0, 1.0],
            vec![0.0, 0.0, -1.0],
        ];
        let bounds = vec![1.0, 1.0, 1.0, 1.0, 0.0];
        let sys = instances::finite_system(rows, bounds).unwrap();
        let apex = Point::new(vec![0.0, 0.0, 1.0]);
        let err = edge_line(&sys, &apex, 1, &tol64()).unwrap_err();
        assert!(matches!(err, Error::Degenerate { leaving_id: 1, .. }));
    }

    #[test]
    fn ratio_test_cube_origin() {
        let sys = cube3();
        let out = ratio_test(
            &sys,
            &Point::zeros(3),
            &Point::new(vec![1.0, 0.0, 0.0]),
            &tol64(),
        )
        .unwrap();
        assert_eq!(out.step, 1.0);
        assert_eq!(out.entering_id, 1);
        assert_eq!(out.point, Point::new(vec![1.0, 0.0, 0.0]));
    }

    #[test]
    fn ratio_test_hilbert_flip() {
        let sys = instances::hilbert_cube::<Q>(&rat(1, 2), 4).unwrap();
        let tol = Tolerances::<Q>::default();
        for k in 1..=4usize {
            let mut d = Point::zeros(4);
            d = d.add_scaled(
                &Point::new(
                    (1..=4)
                        .map(|j| {
                            if j == k {
                                Q::from_int(1)
                            } else {
                                Q::from_int(0)
                            }
                        })
                        .collect(),
                ),
                &Q::from_int(1),
            );
            let out = ratio_test(&sys, &Point::zeros(4), &d, &tol).unwrap();
            assert_eq!(out.step, Q::from_int(1));
            assert_eq!(out.entering_id, k as i64);
            assert!(out.point.coord(k).is_one());
        }
    }

    #[test]
    fn ratio_test_simplex_brute_force() {
        let sys = instances::simplex_system(2).unwrap();
        let tol = tol64();
        let p = Point::new(vec![1.0, 0.0]);
        let d = Point::new(vec![-1.0, 1.0]);
        // Brute-force oracle over all constraints with positive rate.
        let mut expected: Option<(f64, i64)> = None;
        for (id, slack) in sys.slacks(&p).unwrap() {
            let rate = sys.constraint(id).unwrap().functional().eval(&d).unwrap();
            if slack.abs() <= tol.active || rate <= tol.zero {
                continue;
            }
            let ratio = slack / rate;
            if expected.map(|(s, _)| ratio < s).unwrap_or(true) {
                expected = Some((ratio, id));
            }
        }
        let out = ratio_test(&sys, &p, &d, &tol).unwrap();
        let (exp_step, exp_id) = expected.unwrap();
        assert_eq!(out.step, exp_step);
        assert_eq!(out.entering_id, exp_id);
        assert_eq!(out.step, 1.0);
        assert_eq!(out.point, Point::new(vec![0.0, 1.0]));
    }

    #[test]
    fn ratio_test_unbounded() {
        // Single half-space x1 <= 1 in R^1 has no blocker along -e1.
        let sys = instances::finite_system(vec![vec![1.0]], vec![1.0]).unwrap();
        let err = ratio_test(
            &sys,
            &Point::new(vec![0.0]),
            &Point::new(vec![-1.0]),
            &tol64(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Unbounded { .. }));
    }

    #[test]
    fn adjacency_on_cube_origin() {
        let sys = cube3();
        let edges =
            adjacent_extreme_points(&sys, &Point::zeros(3), NormPolicy::UnitEdge, None, &tol64())
                .unwrap();
        assert_eq!(edges.len(), 3);
        let reached: Vec<Vec<f64>> = edges.iter().map(|e| e.adjacent.coords().to_vec()).collect();
        assert!(reached.contains(&vec![1.0, 0.0, 0.0]));
        assert!(reached.contains(&vec![0.0, 1.0, 0.0]));
        assert!(reached.contains(&vec![0.0, 0.0, 1.0]));
        // Ordered by ascending leaving id.
        let leaving: Vec<i64> = edges.iter().map(|e| e.leaving_id).collect();
        assert_eq!(leaving, vec![4, 5, 6]);
    }

    #[test]
    fn adjacency_on_hilbert_cube_counts() {
        let n = 5;
        let sys = instances::hilbert_cube::<Q>(&rat(1, 2), n).unwrap();
        let tol = Tolerances::<Q>::default();
        let edges =
            adjacent_extreme_points(&sys, &Point::zeros(n), NormPolicy::UnitEdge, None, &tol)
                .unwrap();
        assert_eq!(edges.len(), n);
        for edge in &edges {
            // Each neighbor flips exactly one coordinate.
            let flipped: Vec<usize> = (1..=n)
                .filter(|&j| !edge.adjacent.coord(j).is_zero())
                .collect();
            assert_eq!(flipped.len(), 1);
            assert!(edge.adjacent.coord(flipped[0]).is_one());
        }
    }

    #[test]
    fn adjacency_on_2simplex() {
        let sys = instances::simplex_system(2).unwrap();
        let edges =
            adjacent_extreme_points(&sys, &Point::zeros(2), NormPolicy::UnitEdge, None, &tol64())
                .unwrap();
        assert_eq!(edges.len(), 2);
        let reached: Vec<Vec<f64>> = edges.iter().map(|e| e.adjacent.coords().to_vec()).collect();
        assert!(reached.contains(&vec![1.0, 0.0]));
        assert!(reached.contains(&vec![0.0, 1.0]));
    }

    #[test]
    fn edge_invariants_hold() {
        let sys = cube3();
        let tol = tol64();
        let p = Point::new(vec![1.0, 0.0, 1.0]);
        for edge in adjacent_extreme_points(&sys, &p, NormPolicy::Ambient, None, &tol).unwrap() {
            // adjacent = anchor + step * direction
            let rebuilt = edge.anchor.add_scaled(&edge.direction, &edge.step);
            assert!(rebuilt.chebyshev_distance(&edge.adjacent) < 1e-12);
            assert!(edge.step > 0.0);
            // Extreme-ray orientation at the anchor.
            for &id in &sys.active_set(&p, &tol).unwrap() {
                let v = sys
                    .constraint(id)
                    .unwrap()
                    .functional()
                    .eval(&edge.direction)
                    .unwrap();
                if id == edge.leaving_id {
                    assert!(v < 0.0);
                } else {
                    assert!(v.abs() <= 1e-10);
                }
            }
            assert!(is_extreme(&sys, &edge.adjacent, &tol).unwrap());
            // Ratio-test output is feasible and makes the entering id tight.
            sys.ensure_feasible(&edge.adjacent, &tol).unwrap();
            assert!(sys.slack(edge.entering_id, &edge.adjacent).unwrap().abs() <= tol.active);
        }
    }

    #[test]
    fn schauder_on_hilbert_cube() {
        let sys = instances::hilbert_cube::<Q>(&rat(1, 2), 3).unwrap();
        let tol = Tolerances::<Q>::default();
        let x = Point::new(vec![rat(1, 2), rat(1, 3), rat(0, 1)]);
        let dec = schauder_decompose(&sys, &Point::zeros(3), &x, &tol).unwrap();
        let thetas: Vec<Q> = dec.coefficients().iter().map(|(_, t)| t.clone()).collect();
        assert_eq!(thetas, vec![rat(1, 2), rat(1, 3), rat(0, 1)]);
        assert!(dec.residual_sqs().last().unwrap().is_zero());
    }

    #[test]
    fn schauder_identity_case() {
        let sys = cube3();
        let p = Point::new(vec![1.0, 1.0, 0.0]);
        let dec = schauder_decompose(&sys, &p, &p, &tol64()).unwrap();
        assert!(dec.coefficients().iter().all(|(_, t)| *t == 0.0));
        assert!(dec.residual_sqs().iter().all(|r| *r == 0.0));
    }

    #[test]
    fn schauder_full_reconstruction_on_cube() {
        let sys = cube3();
        let x = Point::new(vec![1.0, 1.0, 1.0]);
        let dec = schauder_decompose(&sys, &Point::zeros(3), &x, &tol64()).unwrap();
        let thetas: Vec<f64> = dec.coefficients().iter().map(|(_, t)| *t).collect();
        assert_eq!(thetas, vec![1.0, 1.0, 1.0]);
        assert_eq!(dec.residual_sqs()[3], 0.0);
        let rebuilt = dec.reconstruct(3).unwrap();
        assert!(rebuilt.chebyshev_distance(&x) < 1e-12);
        let norms = dec.residuals();
        for (norm, sq) in norms.iter().zip(dec.residual_sqs()) {
            assert!((norm * norm - sq).abs() < 1e-15);
        }
    }

    #[test]
    fn schauder_rejects_non_extreme_base() {
        let sys = cube3();
        let p = Point::new(vec![0.5, 0.0, 0.0]);
        assert!(matches!(
            schauder_decompose(&sys, &p, &Point::zeros(3), &tol64()),
            Err(Error::NotExtreme)
        ));
    }

    #[test]
    fn reconstruct_bounds() {
        let sys = cube3();
        let x = Point::new(vec![0.5, 0.25, 0.0]);
        let dec = schauder_decompose(&sys, &Point::zeros(3), &x, &tol64()).unwrap();
        assert_eq!(dec.reconstruct(0).unwrap(), Point::zeros(3));
        assert!(matches!(
            dec.reconstruct(4),
            Err(Error::OutOfRange { index: 4, max: 3 })
        ));
    }

    #[test]
    fn reconstruct_residual_geometric_tail() {
        // Truncated geometric tail: residual^2 after n terms is
        // sum_{k=n+1..N} 4^{-k}, computed here by direct summation.
        let n_level = 6usize;
        let sys = instances::hilbert_cube::<Q>(&rat(1, 2), n_level).unwrap();
        let tol = Tolerances::<Q>::default();
        let ones = Point::new(vec![rat(1, 1); n_level]);
        let dec = schauder_decompose(&sys, &Point::zeros(n_level), &ones, &tol).unwrap();
        for n in 0..=n_level {
            let mut expected = rat(0, 1);
            for k in n + 1..=n_level {
                expected += rat(1, 4).pow(k as i32);
            }
            assert_eq!(dec.residual_sqs()[n], expected);
        }
        // n = 2 matches the closed form (4^{-2} - 4^{-N}) / 3.
        let closed = (rat(1, 16) - rat(1, 4).pow(n_level as i32)) / rat(3, 1);
        assert_eq!(dec.residual_sqs()[2], closed);
    }

    #[test]
    fn membership_agreement_of_partial_sums() {
        // Each partial sum matches the target on the functionals already used.
        let sys = instances::hilbert_cube::<f64>(&0.5, 4).unwrap();
        let tol = tol64();
        let x = Point::new(vec![0.25, 0.75, 0.1, 0.9]);
        let dec = schauder_decompose(&sys, &Point::zeros(4), &x, &tol).unwrap();
        for n in 1..=4usize {
            let partial = dec.reconstruct(n).unwrap();
            for (id, _) in dec.coefficients().iter().take(n) {
                let f = sys.constraint(*id).unwrap().functional();
                let lhs = f.eval(&partial).unwrap();
                let rhs = f.eval(&x).unwrap();
                assert!((lhs - rhs).abs() <= 1e-10);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        // Nonnegative coefficients and nonincreasing residuals for feasible
        // targets decomposed at any cube vertex.
        #[test]
        fn schauder_nonnegative_and_monotone(
            bits in 0u8..8,
            coords in proptest::collection::vec(0.0..1.0f64, 3),
        ) {
            let sys = cube3();
            let tol = tol64();
            let p = Point::new((0..3).map(|j| ((bits >> j) & 1) as f64).collect());
            let x = Point::new(coords);
            let dec = schauder_decompose(&sys, &p, &x, &tol).unwrap();
            for (_, theta) in dec.coefficients() {
                prop_assert!(*theta >= -1e-12);
            }
            let r = dec.residual_sqs();
            for w in r.windows(2) {
                prop_assert!(w[1] <= w[0] + 1e-12);
            }
            prop_assert!(r.last().unwrap().abs() < 1e-18);
        }
    }
}
