//! Lower convex envelopes of sampled curves.

use serde::{Deserialize, Serialize};

/// The greatest convex function below a sampled curve, evaluated on the
/// same grid, with the indices of the hull vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub values: Vec<f64>,
    pub vertices: Vec<usize>,
}

impl Envelope {
    /// Grid abscissae of the hull vertices.
    pub fn breakpoints(&self, grid: &[f64]) -> Vec<f64> {
        self.vertices.iter().map(|&i| grid[i]).collect()
    }
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Monotone-chain lower hull of the points `(grid[i], values[i])` followed by
/// linear interpolation between consecutive vertices. `grid` must be sorted.
pub fn lower_convex_envelope(grid: &[f64], values: &[f64]) -> Envelope {
    assert_eq!(grid.len(), values.len(), "grid and values differ in length");
    let mut hull: Vec<usize> = Vec::new();
    for i in 0..grid.len() {
        let pt = (grid[i], values[i]);
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if cross((grid[a], values[a]), (grid[b], values[b]), pt) <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    let mut out = vec![0.0; grid.len()];
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        for k in a..=b {
            let t = if b == a {
                0.0
            } else {
                (grid[k] - grid[a]) / (grid[b] - grid[a])
            };
            out[k] = values[a] + t * (values[b] - values[a]);
        }
    }
    if hull.len() == 1 {
        out[hull[0]] = values[hull[0]];
    }
    Envelope {
        values: out,
        vertices: hull,
    }
}

/// Interior grid indices where the discrete midpoint test
/// `v[i] <= (v[i-1] + v[i+1]) / 2` (scaled for uneven spacing) fails by more
/// than `slack`.
pub fn convexity_violations(grid: &[f64], values: &[f64], slack: f64) -> Vec<usize> {
    (1..grid.len().saturating_sub(1))
        .filter(|&i| {
            let (h0, h1) = (grid[i] - grid[i - 1], grid[i + 1] - grid[i]);
            let chord = (h1 * values[i - 1] + h0 * values[i + 1]) / (h0 + h1);
            values[i] > chord + slack
        })
        .collect()
}

/// Linear interpolation of a sampled curve at `x`, clamped to the grid ends.
pub fn interpolate(grid: &[f64], values: &[f64], x: f64) -> f64 {
    let n = grid.len();
    if x <= grid[0] {
        return values[0];
    }
    if x >= grid[n - 1] {
        return values[n - 1];
    }
    let k = grid.partition_point(|&g| g <= x).max(1);
    let t = (x - grid[k - 1]) / (grid[k] - grid[k - 1]);
    values[k - 1] + t * (values[k] - values[k - 1])
}
