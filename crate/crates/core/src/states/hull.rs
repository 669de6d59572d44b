//! Convex-hull membership by linear feasibility.
//!
//! Decides whether a target point is a convex combination of a small set
//! of points: find `λ ≥ 0` with `Σ λ_i v_i = t` and `Σ λ_i = 1`. Solved as
//! a phase-1 simplex over four equality rows with one artificial variable
//! each; Bland's rule guarantees termination, and the problem sizes here
//! (≤ a few dozen points) make efficiency a non-issue.

use alloc::vec;

const PIVOT_EPS: f64 = 1e-12;
const MAX_ITERS: usize = 10_000;

/// True iff `target` lies in the convex hull of `points`, within `tol` on
/// the residual infeasibility.
pub(crate) fn contains_point(points: &[[f64; 3]], target: [f64; 3], tol: f64) -> bool {
    let n = points.len();
    if n == 0 {
        return false;
    }
    const M: usize = 4;
    let ncols = n + M; // structural columns, then one artificial per row

    // Rows: three coordinate-matching equalities plus the Σλ = 1 row,
    // with right-hand sides flipped nonnegative.
    let mut a = vec![vec![0.0f64; ncols]; M];
    let mut b = [target[0], target[1], target[2], 1.0];
    for (j, p) in points.iter().enumerate() {
        a[0][j] = p[0];
        a[1][j] = p[1];
        a[2][j] = p[2];
        a[3][j] = 1.0;
    }
    for i in 0..M {
        if b[i] < 0.0 {
            b[i] = -b[i];
            for v in a[i].iter_mut() {
                *v = -*v;
            }
        }
        a[i][n + i] = 1.0;
    }
    let mut basis = [n, n + 1, n + 2, n + 3];

    // Minimize the artificial sum: reduced cost of structural column j is
    // −Σ_i a_ij while all artificials are basic; maintained by pivoting.
    let mut cost = vec![0.0f64; ncols];
    let mut obj = 0.0;
    for i in 0..M {
        for (c, v) in cost.iter_mut().zip(&a[i]) {
            *c -= *v;
        }
        obj += b[i];
    }
    for i in 0..M {
        cost[n + i] = 0.0;
    }

    for _ in 0..MAX_ITERS {
        // Bland: first structural column with negative reduced cost.
        let Some(enter) = (0..n).find(|&j| cost[j] < -PIVOT_EPS) else {
            break;
        };
        // Ratio test, ties broken by lowest basis index (Bland again).
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..M {
            if a[i][enter] > PIVOT_EPS {
                let ratio = b[i] / a[i][enter];
                if ratio < best - PIVOT_EPS
                    || (ratio < best + PIVOT_EPS
                        && leave.is_some_and(|l| basis[i] < basis[l]))
                {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // Unbounded below is impossible for a feasibility objective
            // bounded by 0; bail out defensively.
            break;
        };

        let piv = a[leave][enter];
        for v in a[leave].iter_mut() {
            *v /= piv;
        }
        b[leave] /= piv;
        for i in 0..M {
            if i != leave && a[i][enter].abs() > 0.0 {
                let factor = a[i][enter];
                for j in 0..ncols {
                    a[i][j] -= factor * a[leave][j];
                }
                b[i] -= factor * b[leave];
                if b[i] < 0.0 && b[i] > -PIVOT_EPS {
                    b[i] = 0.0;
                }
            }
        }
        let factor = cost[enter];
        if factor.abs() > 0.0 {
            for j in 0..ncols {
                cost[j] -= factor * a[leave][j];
            }
            obj -= factor * b[leave];
        }
        basis[leave] = enter;
    }

    // Residual infeasibility: value still carried by artificial variables.
    let _ = obj;
    let mut residual = 0.0;
    for i in 0..M {
        if basis[i] >= n {
            residual += b[i];
        }
    }
    residual <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn segment_membership() {
        let pts = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]];
        assert!(contains_point(&pts, [0.5, 0.0, 0.0], 1e-9));
        assert!(contains_point(&pts, [1.0, 0.0, 0.0], 1e-9));
        assert!(!contains_point(&pts, [1.1, 0.0, 0.0], 1e-9));
        assert!(!contains_point(&pts, [0.5, 0.1, 0.0], 1e-9));
    }

    #[test]
    fn tetrahedron_membership() {
        let pts = [
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ];
        assert!(contains_point(&pts, [0.25, 0.25, 0.25], 1e-9));
        assert!(contains_point(&pts, [0.0, 0.0, 0.0], 1e-9));
        assert!(!contains_point(&pts, [0.4, 0.4, 0.4], 1e-9));
        assert!(!contains_point(&pts, [-0.01, 0.1, 0.1], 1e-9));
    }

    #[test]
    fn octahedron_from_vertices() {
        let mut pts = Vec::new();
        for i in 0..3 {
            for s in [1.0, -1.0] {
                let mut v = [0.0; 3];
                v[i] = s;
                pts.push(v);
            }
        }
        assert!(contains_point(&pts, [0.3, 0.3, 0.3], 1e-9));
        assert!(contains_point(&pts, [0.5, -0.5, 0.0], 1e-9));
        assert!(!contains_point(&pts, [0.5, 0.5, 0.5], 1e-9));
        assert!(!contains_point(&pts, [0.4, -0.4, 0.4], 1e-9));
    }

    #[test]
    fn duplicate_points_are_harmless() {
        let pts = [[0.2, 0.2, 0.2]; 7];
        assert!(contains_point(&pts, [0.2, 0.2, 0.2], 1e-9));
        assert!(!contains_point(&pts, [0.21, 0.2, 0.2], 1e-9));
    }

    #[test]
    fn empty_set_contains_nothing() {
        assert!(!contains_point(&[], [0.0, 0.0, 0.0], 1e-9));
    }
}
