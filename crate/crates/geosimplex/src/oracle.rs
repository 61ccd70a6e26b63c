//! Brute-force finite-dimensional ground truth.
//!
//! Vertex enumeration solves every full-rank n-subset of constraints and
//! keeps the feasible solutions; adjacency pairs vertices whose active sets
//! differ in exactly one constraint. The oracle is deliberately naive: it is
//! the independent route used to certify the geometric primitives, so it
//! shares no code path with the edge/ratio machinery.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::linalg;
use crate::scalar::{Scalar, Tolerances};
use crate::system::{ConstraintSystem, Objective, Point};

/// Hard cap on the number of candidate subsets.
pub const SUBSET_BUDGET: u128 = 10_000_000;

/// Vertices, adjacency pairs, and (optionally) the exhaustive optimum of a
/// finite system.
#[derive(Debug, Clone)]
pub struct VertexSet<S> {
    pub vertices: Vec<Point<S>>,
    pub adjacency: Vec<(usize, usize)>,
    pub optimum: Option<(S, usize)>,
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Enumerates all vertices of the system at its truncation level.
pub fn enumerate_vertices<S: Scalar>(
    sys: &ConstraintSystem<S>,
    tol: &Tolerances<S>,
) -> Result<VertexSet<S>, Error> {
    enumerate_vertices_threaded(sys, tol, 1)
}

/// As [`enumerate_vertices`], fanning the subset solves out over up to
/// `threads` worker threads. Results are merged in subset order, so the
/// output is identical for every thread count.
pub fn enumerate_vertices_threaded<S: Scalar>(
    sys: &ConstraintSystem<S>,
    tol: &Tolerances<S>,
    threads: usize,
) -> Result<VertexSet<S>, Error> {
    let n = sys.truncation();
    let m = sys.len();
    let subsets = binomial(m as u128, n as u128);
    if subsets > SUBSET_BUDGET {
        return Err(Error::Budget {
            subsets,
            limit: SUBSET_BUDGET,
        });
    }

    let ids: Vec<i64> = sys.ids().collect();
    let rows: Vec<Vec<S>> = ids
        .iter()
        .map(|&id| sys.constraint(id).expect("listed id").functional().dense())
        .collect();
    let bounds: Vec<S> = ids
        .iter()
        .map(|&id| sys.constraint(id).expect("listed id").bound().clone())
        .collect();

    // Lexicographic n-subsets of 0..m.
    let mut combos: Vec<Vec<usize>> = Vec::new();
    if m >= n {
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            combos.push(idx.clone());
            let mut i = n;
            while i > 0 && idx[i - 1] == i - 1 + m - n {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..n {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    let solve_chunk = |chunk: &[Vec<usize>]| -> Vec<Point<S>> {
        let mut found = Vec::new();
        for combo in chunk {
            let sub_rows: Vec<Vec<S>> = combo.iter().map(|&i| rows[i].clone()).collect();
            let sub_rhs: Vec<S> = combo.iter().map(|&i| bounds[i].clone()).collect();
            let Some(solution) = linalg::solve_square(&sub_rows, &sub_rhs, &tol.zero) else {
                continue;
            };
            let candidate = Point::new(solution);
            let feasible = rows.iter().zip(&bounds).all(|(row, b)| {
                let value = linalg::dot(row, candidate.coords());
                b.clone() - value >= -tol.active.clone()
            });
            if feasible {
                found.push(candidate);
            }
        }
        found
    };

    let workers = threads.max(1).min(combos.len().max(1));
    let mut candidates: Vec<Point<S>> = Vec::new();
    if workers <= 1 {
        candidates = solve_chunk(&combos);
    } else {
        let chunk_len = combos.len().div_ceil(workers);
        let chunks: Vec<&[Vec<usize>]> = combos.chunks(chunk_len).collect();
        let results: Vec<Vec<Point<S>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|chunk| scope.spawn(|| solve_chunk(chunk)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker"))
                .collect()
        });
        for part in results {
            candidates.extend(part);
        }
    }

    // Deduplicate coincident solutions, keeping first occurrence.
    let merge_tol = S::vertex_merge_tol();
    let mut vertices: Vec<Point<S>> = Vec::new();
    for candidate in candidates {
        let duplicate = vertices
            .iter()
            .any(|v| v.chebyshev_distance(&candidate) <= merge_tol);
        if !duplicate {
            vertices.push(candidate);
        }
    }

    // Adjacency by active-set symmetric difference of size two.
    let active_sets: Vec<BTreeSet<i64>> = vertices
        .iter()
        .map(|v| {
            sys.active_set(v, tol)
                .expect("vertex is feasible")
                .into_iter()
                .collect()
        })
        .collect();
    let mut adjacency = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let diff = active_sets[i].symmetric_difference(&active_sets[j]).count();
            if diff == 2 {
                adjacency.push((i, j));
            }
        }
    }

    Ok(VertexSet {
        vertices,
        adjacency,
        optimum: None,
    })
}

/// Exhaustive minimum of the objective over the vertex set. Ties resolve to
/// the lowest vertex index.
pub fn brute_optimum<S: Scalar>(
    vs: &VertexSet<S>,
    obj: &Objective<S>,
) -> Result<(S, usize), Error> {
    if vs.vertices.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    let mut best: Option<(S, usize)> = None;
    for (i, v) in vs.vertices.iter().enumerate() {
        let value = obj.eval(v)?;
        match &best {
            Some((current, _)) if value >= *current => {}
            _ => best = Some((value, i)),
        }
    }
    Ok(best.expect("nonempty vertex set"))
}

impl<S: Scalar> VertexSet<S> {
    /// Fills and returns the stored optimum.
    pub fn optimize(&mut self, obj: &Objective<S>) -> Result<(S, usize), Error> {
        let best = brute_optimum(self, obj)?;
        self.optimum = Some(best.clone());
        Ok(best)
    }

    /// Indices of the oracle neighbors of vertex `i`.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .adjacency
            .iter()
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Index of the vertex within merge tolerance of `p`, if any.
    pub fn find(&self, p: &Point<S>) -> Option<usize> {
        let merge_tol = S::vertex_merge_tol();
        self.vertices
            .iter()
            .position(|v| v.chebyshev_distance(p) <= merge_tol)
    }

    /// Canonical sorted copy of the vertex list, for set comparison.
    pub fn canonical_vertices(&self) -> Vec<Point<S>> {
        let mut out = self.vertices.clone();
        out.sort_by(|a, b| {
            a.coords()
                .iter()
                .zip(b.coords())
                .find_map(|(x, y)| x.partial_cmp(y).filter(|o| o.is_ne()))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        out
    }

    /// True when both sets contain the same vertices up to merge tolerance.
    pub fn same_vertices(&self, other: &VertexSet<S>) -> bool {
        if self.vertices.len() != other.vertices.len() {
            return false;
        }
        let merge_tol = S::vertex_merge_tol();
        let a = self.canonical_vertices();
        let b = other.canonical_vertices();
        a.iter()
            .zip(&b)
            .all(|(x, y)| x.chebyshev_distance(y) <= merge_tol)
    }
}
