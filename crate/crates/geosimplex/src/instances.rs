//! Instance builders: the Hilbert cube at a truncation level, finite
//! H-polytopes (boxes, standard simplices, seeded random LPs), exposing
//! objectives, and the rational disc section.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::geometry;
use crate::oracle;
use crate::scalar::{Scalar, Tolerances};
use crate::system::{
    Coeffs, Constraint, ConstraintSystem, Objective, Point, SystemKind, WeightRule,
};

/// Hilbert cube `0 <= x_j <= 1` truncated at level `n`, with geometric
/// weights `delta^j`. Constraint id `j` is the upper bound `x_j <= 1` and id
/// `-j` the lower bound `-x_j <= 0`, both stored coordinate-normalized.
pub fn hilbert_cube<S: Scalar>(delta: &S, n: usize) -> Result<ConstraintSystem<S>, Error> {
    if *delta <= S::zero() || *delta >= S::one() {
        return Err(Error::Spec(format!(
            "geometric weight ratio must lie in (0, 1), got {delta}"
        )));
    }
    let mut weights = Vec::with_capacity(n);
    let mut w = S::one();
    for _ in 0..n {
        w = w * delta.clone();
        weights.push(w.clone());
    }
    hilbert_cube_with_weights(
        weights,
        WeightRule::Geometric {
            ratio: delta.clone(),
        },
        n,
    )
}

/// Hilbert cube with an explicit weight list.
pub fn hilbert_cube_explicit<S: Scalar>(
    weights: Vec<S>,
    n: usize,
) -> Result<ConstraintSystem<S>, Error> {
    hilbert_cube_with_weights(weights, WeightRule::Explicit, n)
}

fn hilbert_cube_with_weights<S: Scalar>(
    weights: Vec<S>,
    rule: WeightRule<S>,
    n: usize,
) -> Result<ConstraintSystem<S>, Error> {
    if weights.iter().any(|w| *w <= S::zero() || *w >= S::one()) {
        return Err(Error::Spec("cube weights must lie in (0, 1)".into()));
    }
    let mut constraints = Vec::with_capacity(2 * n);
    for j in 1..=n {
        constraints.push(Constraint::new(j as i64, Coeffs::unit(j, n)?, S::one())?);
        constraints.push(Constraint::new(
            -(j as i64),
            Coeffs::from_pairs(&[(j, -S::one())], n)?,
            S::zero(),
        )?);
    }
    ConstraintSystem::new(constraints, weights, rule, n, SystemKind::Truncated)
}

/// Finite H-representation with unit ambient weights and sequential ids
/// `1..=m` in row order.
pub fn finite_system<S: Scalar>(
    rows: Vec<Vec<S>>,
    bounds: Vec<S>,
) -> Result<ConstraintSystem<S>, Error> {
    if rows.is_empty() {
        return Err(Error::Spec("finite system needs at least one row".into()));
    }
    if rows.len() != bounds.len() {
        return Err(Error::Spec(format!(
            "{} rows but {} bounds",
            rows.len(),
            bounds.len()
        )));
    }
    let dim = rows[0].len();
    if dim == 0 || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Spec("rows must share a positive dimension".into()));
    }
    let mut constraints = Vec::with_capacity(rows.len());
    for (i, (row, bound)) in rows.into_iter().zip(bounds).enumerate() {
        let functional = Coeffs::from_dense(&row);
        if functional.is_zero() {
            return Err(Error::Spec(format!("row {} is zero", i + 1)));
        }
        constraints.push(Constraint::new((i + 1) as i64, functional, bound)?);
    }
    ConstraintSystem::new(
        constraints,
        vec![S::one(); dim],
        WeightRule::Explicit,
        dim,
        SystemKind::Finite,
    )
}

/// Unit box `0 <= x_j <= 1` in dimension `n`: ids `1..=n` are the upper
/// bounds, `n+1..=2n` the lower bounds.
pub fn cube<S: Scalar>(n: usize) -> Result<ConstraintSystem<S>, Error> {
    let mut rows = Vec::with_capacity(2 * n);
    let mut bounds = Vec::with_capacity(2 * n);
    for j in 0..n {
        let mut row = vec![S::zero(); n];
        row[j] = S::one();
        rows.push(row);
        bounds.push(S::one());
    }
    for j in 0..n {
        let mut row = vec![S::zero(); n];
        row[j] = -S::one();
        rows.push(row);
        bounds.push(S::zero());
    }
    finite_system(rows, bounds)
}

/// Standard simplex `x >= 0`, `sum x <= 1` in dimension `n`.
pub fn simplex_system<S: Scalar>(n: usize) -> Result<ConstraintSystem<S>, Error> {
    let mut rows = Vec::with_capacity(n + 1);
    let mut bounds = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut row = vec![S::zero(); n];
        row[j] = -S::one();
        rows.push(row);
        bounds.push(S::zero());
    }
    rows.push(vec![S::one(); n]);
    bounds.push(S::one());
    finite_system(rows, bounds)
}

/// Objective with coefficients `delta_j^2 h` for a constant Riesz
/// representative `h`. For geometric weight rules the neglected edge-cost
/// mass beyond the truncation level has the exact bound
/// `|h| * ratio^(2(N+1)) / (1 - ratio^2)`, which is attached as the tail
/// bound.
pub fn riesz_objective<S: Scalar>(sys: &ConstraintSystem<S>, h: &S) -> Result<Objective<S>, Error> {
    let n = sys.truncation();
    let pairs: Vec<(usize, S)> = sys
        .weights()
        .iter()
        .enumerate()
        .map(|(i, w)| (i + 1, w.clone() * w.clone() * h.clone()))
        .collect();
    let linear = Coeffs::from_pairs(&pairs, n)?;
    let tail = match sys.weight_rule() {
        WeightRule::Geometric { ratio } => {
            let r2 = ratio.clone() * ratio.clone();
            let mut r2_pow = S::one();
            for _ in 0..=n {
                r2_pow = r2_pow * r2.clone();
            }
            Some(h.abs() * r2_pow / (S::one() - r2))
        }
        WeightRule::Explicit => None,
    };
    Objective::new(linear, S::zero(), tail)
}

/// Weighted-slack objective `sum_i 2^{-rank(i)} s_i(x)` over the constraints
/// active at `e`, where `rank` is the position in series order. The value is
/// zero at `e` and strictly positive at every other extreme point, so
/// minimizing it exposes `e`.
pub fn exposing_objective<S: Scalar>(
    sys: &ConstraintSystem<S>,
    e: &Point<S>,
    tol: &Tolerances<S>,
) -> Result<Objective<S>, Error> {
    if !geometry::is_extreme(sys, e, tol)? {
        return Err(Error::NotExtreme);
    }
    let order = sys.active_set_series_order(e, tol)?;
    let mut linear = Coeffs::zero(sys.truncation());
    let mut constant = S::zero();
    let mut weight = S::one();
    let half = S::from_ratio(1, 2);
    for id in order {
        weight = weight.clone() * half.clone();
        let c = sys.constraint(id)?;
        linear = linear.add(&c.functional().scaled(&-weight.clone()));
        constant = constant + weight.clone() * c.bound().clone();
    }
    Objective::new(linear, constant, None)
}

/// A seeded random bounded nondegenerate LP: the unit box plus up to
/// `extra_cuts` random half-spaces that keep the origin strictly feasible.
/// Coefficients are dyadic (denominator 8) so instances are exact in both
/// arithmetic modes. Degenerate draws are rejected and reseeded
/// deterministically.
pub struct RandomLp<S> {
    pub system: ConstraintSystem<S>,
    pub objective: Objective<S>,
    pub start: Point<S>,
}

pub fn random_lp<S: Scalar>(
    dim: usize,
    extra_cuts: usize,
    seed: u64,
    tol: &Tolerances<S>,
) -> Result<RandomLp<S>, Error> {
    if dim == 0 {
        return Err(Error::Spec("random LP needs a positive dimension".into()));
    }
    for attempt in 0..64u64 {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9).wrapping_add(attempt));
        let mut rows: Vec<Vec<S>> = Vec::new();
        let mut bounds: Vec<S> = Vec::new();
        for j in 0..dim {
            let mut row = vec![S::zero(); dim];
            row[j] = S::one();
            rows.push(row);
            bounds.push(S::one());
        }
        for j in 0..dim {
            let mut row = vec![S::zero(); dim];
            row[j] = -S::one();
            rows.push(row);
            bounds.push(S::zero());
        }
        for _ in 0..extra_cuts {
            let mut row: Vec<S> = Vec::with_capacity(dim);
            loop {
                row.clear();
                for _ in 0..dim {
                    row.push(S::from_ratio(rng.random_range(-8i64..=8), 8));
                }
                if row.iter().any(|v| !v.is_zero()) {
                    break;
                }
            }
            // Bound keeps the box center on the feasible side and the origin
            // strictly interior to the cut.
            let center_value = row
                .iter()
                .fold(S::zero(), |acc, v| acc + v.clone() * S::from_ratio(1, 2));
            let floor = if center_value.is_positive() {
                center_value
            } else {
                S::zero()
            };
            bounds.push(floor + S::from_ratio(1, 4));
            rows.push(row);
        }

        let mut coeffs: Vec<S> = Vec::with_capacity(dim);
        loop {
            coeffs.clear();
            for _ in 0..dim {
                coeffs.push(S::from_ratio(rng.random_range(-8i64..=8), 8));
            }
            if coeffs.iter().any(|v| !v.is_zero()) {
                break;
            }
        }

        let system = finite_system(rows, bounds)?;
        let objective = Objective::new(Coeffs::from_dense(&coeffs), S::zero(), None)?;
        let start = Point::zeros(dim);

        // Reject degenerate draws: every vertex must have exactly `dim`
        // tight constraints.
        let vs = oracle::enumerate_vertices(&system, tol)?;
        if vs.vertices.is_empty() {
            continue;
        }
        let nondegenerate = vs.vertices.iter().all(|v| {
            system
                .active_set(v, tol)
                .map(|a| a.len() == dim)
                .unwrap_or(false)
        });
        if !nondegenerate {
            continue;
        }
        if !geometry::is_extreme(&system, &start, tol)? {
            continue;
        }
        return Ok(RandomLp {
            system,
            objective,
            start,
        });
    }
    Err(Error::Spec(format!(
        "no nondegenerate draw found for dim={dim} cuts={extra_cuts} seed={seed}"
    )))
}

/// Rational points on the unit circle in primitive-triple order: for
/// `m > n >= 1`, coprime and of opposite parity, ascending `m` then `n`, the
/// triple `(m^2 - n^2, 2mn, m^2 + n^2)` contributes the eight sign/swap
/// variants of `((m^2-n^2)/(m^2+n^2), 2mn/(m^2+n^2))`, in a fixed order.
pub fn circle_directions(count: usize) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::with_capacity(count);
    let mut m: i64 = 2;
    'outer: loop {
        for n in 1..m {
            if (m - n) % 2 == 1 && gcd(m, n) == 1 {
                let a = m * m - n * n;
                let b = 2 * m * n;
                let c = m * m + n * n;
                for (r, q) in [
                    (a, b),
                    (-a, b),
                    (a, -b),
                    (-a, -b),
                    (b, a),
                    (-b, a),
                    (b, -a),
                    (-b, -a),
                ] {
                    out.push((r, q, c));
                    if out.len() == count {
                        break 'outer;
                    }
                }
            }
        }
        m += 1;
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Membership tester for the planar section of the cube cut by the flat
/// through the all-halves point spanned by the rational circle directions:
/// `(alpha, beta)` belongs iff `|r_i alpha + q_i beta| <= 1` for every
/// generated direction.
#[derive(Debug, Clone)]
pub struct DiscSection<S> {
    directions: Vec<(S, S)>,
}

pub fn disc_section<S: Scalar>(num_directions: usize) -> Result<DiscSection<S>, Error> {
    if num_directions < 3 {
        return Err(Error::Spec(
            "disc section needs at least three directions".into(),
        ));
    }
    let directions = circle_directions(num_directions)
        .into_iter()
        .map(|(r, q, c)| (S::from_ratio(r, c), S::from_ratio(q, c)))
        .collect();
    Ok(DiscSection { directions })
}

impl<S: Scalar> DiscSection<S> {
    pub fn directions(&self) -> &[(S, S)] {
        &self.directions
    }

    pub fn contains(&self, alpha: &S, beta: &S) -> bool {
        self.directions
            .iter()
            .all(|(r, q)| (r.clone() * alpha.clone() + q.clone() * beta.clone()).abs() <= S::one())
    }

    /// The section as a two-variable constraint system: direction `i`
    /// (1-based) contributes ids `i` and `-i` for the two half-spaces
    /// `±(r alpha + q beta) <= 1`. The family is a truncation of the
    /// countable rational-circle family.
    pub fn as_constraint_system(&self) -> Result<ConstraintSystem<S>, Error> {
        let mut constraints = Vec::with_capacity(2 * self.directions.len());
        for (i, (r, q)) in self.directions.iter().enumerate() {
            let id = (i + 1) as i64;
            constraints.push(Constraint::new(
                id,
                Coeffs::from_pairs(&[(1, r.clone()), (2, q.clone())], 2)?,
                S::one(),
            )?);
            constraints.push(Constraint::new(
                -id,
                Coeffs::from_pairs(&[(1, -r.clone()), (2, -q.clone())], 2)?,
                S::one(),
            )?);
        }
        ConstraintSystem::new(
            constraints,
            vec![S::one(), S::one()],
            WeightRule::Explicit,
            2,
            SystemKind::Truncated,
        )
    }
}

impl DiscSection<f64> {
    /// Largest accepted radius along a fixed angle, located by bisection.
    pub fn max_radius_at_angle(&self, theta: f64) -> f64 {
        let (dx, dy) = (theta.cos(), theta.sin());
        let mut lo = 0.0f64;
        let mut hi = 4.0f64;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.contains(&(mid * dx), &(mid * dy)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{Signed, Zero};
    use proptest::prelude::*;

    type Q = BigRational;

    fn rat(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn tol64() -> Tolerances<f64> {
        Tolerances::default()
    }

    #[test]
    fn hilbert_cube_structure() {
        let sys = hilbert_cube::<Q>(&rat(1, 2), 3).unwrap();
        assert_eq!(sys.len(), 6);
        assert_eq!(sys.truncation(), 3);
        assert_eq!(sys.kind(), SystemKind::Truncated);
        // All eight binary points are extreme.
        let tol = Tolerances::<Q>::default();
        for bits in 0u32..8 {
            let p = Point::new(
                (0..3)
                    .map(|j| Q::from_int(((bits >> j) & 1) as i64))
                    .collect(),
            );
            assert!(geometry::is_extreme(&sys, &p, &tol).unwrap());
        }
    }

    #[test]
    fn hilbert_cube_interval_case() {
        let sys = hilbert_cube::<f64>(&0.5, 1).unwrap();
        assert_eq!(sys.len(), 2);
        assert_eq!(sys.truncation(), 1);
    }

    #[test]
    fn hilbert_cube_rejects_bad_ratio() {
        assert!(hilbert_cube::<f64>(&1.0, 3).is_err());
        assert!(hilbert_cube::<f64>(&0.0, 3).is_err());
    }

    #[test]
    fn finite_system_cube_and_simplex() {
        assert_eq!(cube::<f64>(3).unwrap().len(), 6);
        assert_eq!(simplex_system::<f64>(2).unwrap().len(), 3);
        assert!(matches!(
            finite_system(vec![vec![0.0, 0.0]], vec![1.0]),
            Err(Error::Spec(_))
        ));
    }

    #[test]
    fn random_lp_accepted_draws_are_nondegenerate() {
        let tol = tol64();
        for seed in 0..6u64 {
            let lp = random_lp::<f64>(3, 2, seed, &tol).unwrap();
            let vs = oracle::enumerate_vertices(&lp.system, &tol).unwrap();
            assert!(!vs.vertices.is_empty());
            for v in &vs.vertices {
                assert_eq!(lp.system.active_set(v, &tol).unwrap().len(), 3);
            }
            assert!(geometry::is_extreme(&lp.system, &lp.start, &tol).unwrap());
        }
    }

    #[test]
    fn exposing_objective_on_cube() {
        let sys = cube::<Q>(3).unwrap();
        let tol = Tolerances::<Q>::default();
        let e = Point::new(vec![rat(1, 1); 3]);
        let obj = exposing_objective(&sys, &e, &tol).unwrap();
        assert!(obj.eval(&e).unwrap().is_zero());
        // Flipping the first coordinate releases the rank-1 active
        // constraint, whose slack is 1 with weight 1/2.
        let flipped = Point::new(vec![rat(0, 1), rat(1, 1), rat(1, 1)]);
        assert_eq!(obj.eval(&flipped).unwrap(), rat(1, 2));
    }

    #[test]
    fn exposing_objective_at_origin() {
        let sys = cube::<Q>(3).unwrap();
        let tol = Tolerances::<Q>::default();
        let e = Point::zeros(3);
        let obj = exposing_objective(&sys, &e, &tol).unwrap();
        assert!(obj.eval(&e).unwrap().is_zero());
    }

    #[test]
    fn exposing_objective_unique_minimizer() {
        let sys = cube::<Q>(3).unwrap();
        let tol = Tolerances::<Q>::default();
        let e = Point::new(vec![rat(1, 1); 3]);
        let obj = exposing_objective(&sys, &e, &tol).unwrap();
        let vs = oracle::enumerate_vertices(&sys, &tol).unwrap();
        let mut minima = 0;
        for v in &vs.vertices {
            let value = obj.eval(v).unwrap();
            if v.chebyshev_distance(&e).is_zero() {
                assert!(value.is_zero());
                minima += 1;
            } else {
                assert!(value.is_positive());
            }
        }
        assert_eq!(minima, 1);
    }

    #[test]
    fn exposing_objective_requires_extreme_target() {
        let sys = cube::<f64>(2).unwrap();
        let e = Point::new(vec![0.5, 0.5]);
        assert!(matches!(
            exposing_objective(&sys, &e, &tol64()),
            Err(Error::NotExtreme)
        ));
    }

    #[test]
    fn riesz_objective_coefficients_and_tail() {
        let sys = hilbert_cube::<Q>(&rat(1, 2), 3).unwrap();
        let obj = riesz_objective(&sys, &rat(-1, 1)).unwrap();
        assert_eq!(obj.linear().coefficient(1), rat(-1, 4));
        assert_eq!(obj.linear().coefficient(2), rat(-1, 16));
        assert_eq!(obj.linear().coefficient(3), rat(-1, 64));
        // Exact geometric tail: sum_{k>3} 4^{-k} = 4^{-4} / (1 - 1/4).
        assert_eq!(obj.tail_bound().unwrap(), &(rat(1, 256) / rat(3, 4)));
    }

    #[test]
    fn circle_directions_are_exact_unit_vectors() {
        for (r, q, c) in circle_directions(64) {
            assert_eq!(r * r + q * q, c * c);
            assert!(c > 0);
        }
    }

    #[test]
    fn disc_section_center_and_interior() {
        let disc = disc_section::<f64>(40).unwrap();
        assert!(disc.contains(&0.0, &0.0));
        // Radius sqrt(2)/2 < 1: accepted by Cauchy-Schwarz for any count.
        assert!(disc.contains(&0.5, &0.5));
    }

    #[test]
    fn disc_section_rejects_outside_point() {
        // (1.2, 0) is rejected once a direction with |r| > 5/6 appears.
        let directions = circle_directions(64);
        let first_sharp = directions
            .iter()
            .position(|(r, _, c)| 6 * r.abs() > 5 * c)
            .expect("a steep direction is generated");
        let disc = disc_section::<f64>(first_sharp + 1).unwrap();
        assert!(!disc.contains(&1.2, &0.0));
    }

    #[test]
    fn disc_inner_bound_exact_boundary() {
        // Circle points themselves (radius exactly one) are accepted in
        // exact arithmetic: |r r' + q q'| <= 1 is Cauchy-Schwarz with equality
        // only at parallel directions.
        let disc = disc_section::<Q>(32).unwrap();
        for (r, q, c) in circle_directions(32) {
            assert!(disc.contains(&rat(r, c), &rat(q, c)));
        }
    }

    #[test]
    fn disc_section_raised_system() {
        let disc = disc_section::<Q>(8).unwrap();
        let sys = disc.as_constraint_system().unwrap();
        assert_eq!(sys.truncation(), 2);
        assert_eq!(sys.len(), 16);
        // Membership agrees with the raised slack signs.
        let inside = Point::new(vec![rat(1, 2), rat(1, 2)]);
        assert!(sys.ensure_feasible(&inside, &Tolerances::default()).is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // Inner bound: every point of radius <= 1 is accepted regardless of
        // the direction count (0.999 keeps float rounding out of the margin;
        // the exact radius-1 case is covered below in rational arithmetic).
        #[test]
        fn disc_inner_bound(angle in 0.0..std::f64::consts::TAU, radius in 0.0..=0.999f64, count in 3usize..80) {
            let disc = disc_section::<f64>(count).unwrap();
            prop_assert!(disc.contains(&(radius * angle.cos()), &(radius * angle.sin())));
        }

        // Outer radius never increases when directions are added.
        #[test]
        fn disc_outer_radius_monotone(angle in 0.0..std::f64::consts::TAU) {
            let coarse = disc_section::<f64>(24).unwrap();
            let fine = disc_section::<f64>(48).unwrap();
            prop_assert!(fine.max_radius_at_angle(angle) <= coarse.max_radius_at_angle(angle) + 1e-12);
        }
    }
}
