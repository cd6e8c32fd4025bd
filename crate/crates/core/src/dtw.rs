//! Dynamic time warping over degree sequences: the relative-difference
//! element cost, the exact quadratic DP, and the linear-time FastDTW
//! multiresolution approximation.

/// Relative-difference cost between two degrees: `max/min - 1`.
///
/// Inputs must be positive; coarsened sequences carry fractional values.
pub fn dtw_cost(a: f64, b: f64) -> f64 {
    assert!(a > 0.0 && b > 0.0, "dtw_cost requires positive degrees");
    if a >= b {
        a / b - 1.0
    } else {
        b / a - 1.0
    }
}

/// Exact DTW total cost with unit steps (match, insert, delete).
pub fn exact_dtw(seq_a: &[f64], seq_b: &[f64]) -> f64 {
    assert!(
        !seq_a.is_empty() && !seq_b.is_empty(),
        "DTW needs non-empty sequences"
    );
    let m = seq_b.len();
    let mut prev = vec![f64::INFINITY; m];
    let mut cur = vec![f64::INFINITY; m];
    for (i, &a) in seq_a.iter().enumerate() {
        for (j, &b) in seq_b.iter().enumerate() {
            let cost = dtw_cost(a, b);
            let best = if i == 0 && j == 0 {
                0.0
            } else {
                let mut best = f64::INFINITY;
                if i > 0 {
                    best = best.min(prev[j]);
                    if j > 0 {
                        best = best.min(prev[j - 1]);
                    }
                }
                if j > 0 {
                    best = best.min(cur[j - 1]);
                }
                best
            };
            cur[j] = cost + best;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m - 1]
}

/// FastDTW: coarsen both sequences, solve recursively, and refine the
/// low-resolution warp path within a window of the given radius. Falls
/// back to the exact DP once a sequence is short enough, so a radius at
/// least the sequence length reproduces `exact_dtw` exactly.
pub fn fast_dtw(seq_a: &[f64], seq_b: &[f64], radius: usize) -> f64 {
    assert!(
        !seq_a.is_empty() && !seq_b.is_empty(),
        "DTW needs non-empty sequences"
    );
    fast_dtw_inner(seq_a, seq_b, radius).0
}

fn fast_dtw_inner(a: &[f64], b: &[f64], radius: usize) -> (f64, Vec<(usize, usize)>) {
    let min_size = radius + 2;
    if a.len() <= min_size || b.len() <= min_size {
        let window = full_window(a.len(), b.len());
        return windowed_dtw(a, b, &window);
    }
    let coarse_a = coarsen(a);
    let coarse_b = coarsen(b);
    let (_, low_res_path) = fast_dtw_inner(&coarse_a, &coarse_b, radius);
    let window = expand_window(&low_res_path, a.len(), b.len(), radius);
    windowed_dtw(a, b, &window)
}

fn coarsen(x: &[f64]) -> Vec<f64> {
    x.chunks(2)
        .map(|c| c.iter().sum::<f64>() / c.len() as f64)
        .collect()
}

fn full_window(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    vec![(0, cols - 1); rows]
}

/// Project a half-resolution warp path onto the full grid and widen it by
/// `radius` cells in both directions. Returns an inclusive column range per
/// row, clipped and made monotone so the DP region stays connected.
fn expand_window(
    low_res_path: &[(usize, usize)],
    rows: usize,
    cols: usize,
    radius: usize,
) -> Vec<(usize, usize)> {
    let mut lo = vec![usize::MAX; rows];
    let mut hi = vec![0usize; rows];
    let mut mark = |i: usize, j_lo: usize, j_hi: usize| {
        if i < rows {
            lo[i] = lo[i].min(j_lo);
            hi[i] = hi[i].max(j_hi.min(cols - 1));
        }
    };
    for &(ci, cj) in low_res_path {
        let j_lo = (2 * cj).saturating_sub(radius);
        let j_hi = 2 * cj + 1 + radius;
        for di in 0..2 {
            let i = 2 * ci + di;
            for r in 0..=radius {
                mark(i.saturating_sub(r), j_lo, j_hi);
                mark(i + r, j_lo, j_hi);
            }
        }
    }
    // rows beyond the projected path (odd-length tails) extend the last range
    let mut last = (0, cols - 1);
    for i in 0..rows {
        if lo[i] == usize::MAX {
            lo[i] = last.0;
            hi[i] = last.1;
        }
        last = (lo[i], hi[i]);
    }
    // monotone ranges keep every cell reachable from (0, 0)
    for i in 1..rows {
        lo[i] = lo[i].max(lo[i - 1]);
        hi[i] = hi[i].max(hi[i - 1]);
    }
    lo.into_iter().zip(hi).collect()
}

/// DP restricted to an inclusive per-row column window. Returns the total
/// cost and one optimal warp path.
fn windowed_dtw(a: &[f64], b: &[f64], window: &[(usize, usize)]) -> (f64, Vec<(usize, usize)>) {
    debug_assert_eq!(window.len(), a.len());
    debug_assert_eq!(window[0].0, 0);
    let n = a.len();
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (i, &(j_lo, j_hi)) in window.iter().enumerate() {
        let width = j_hi - j_lo + 1;
        let mut row = vec![f64::INFINITY; width];
        for j in j_lo..=j_hi {
            let cost = dtw_cost(a[i], b[j]);
            let best = if i == 0 && j == 0 {
                0.0
            } else {
                let fetch = |ri: usize, rj: usize| -> f64 {
                    let (lo, hi) = window[ri];
                    if rj < lo || rj > hi {
                        return f64::INFINITY;
                    }
                    if ri == i {
                        row[rj - lo]
                    } else {
                        rows[ri][rj - lo]
                    }
                };
                let mut best = f64::INFINITY;
                if j > j_lo {
                    best = best.min(fetch(i, j - 1));
                }
                if i > 0 {
                    best = best.min(fetch(i - 1, j));
                    if j > 0 {
                        best = best.min(fetch(i - 1, j - 1));
                    }
                }
                best
            };
            row[j - j_lo] = cost + best;
        }
        rows.push(row);
    }

    let total = rows[n - 1][b.len() - 1 - window[n - 1].0];
    debug_assert!(total.is_finite(), "DTW window disconnected");

    // walk back through the matrix along minimal predecessors
    let mut path = Vec::new();
    let (mut i, mut j) = (n - 1, b.len() - 1);
    loop {
        path.push((i, j));
        if i == 0 && j == 0 {
            break;
        }
        let value = |ri: usize, rj: usize| -> f64 {
            let (lo, hi) = window[ri];
            if rj < lo || rj > hi {
                f64::INFINITY
            } else {
                rows[ri][rj - lo]
            }
        };
        let mut best = f64::INFINITY;
        let mut next = (i, j);
        if i > 0 && j > 0 && value(i - 1, j - 1) < best {
            best = value(i - 1, j - 1);
            next = (i - 1, j - 1);
        }
        if i > 0 && value(i - 1, j) < best {
            best = value(i - 1, j);
            next = (i - 1, j);
        }
        if j > 0 && value(i, j - 1) < best {
            next = (i, j - 1);
        }
        (i, j) = next;
    }
    path.reverse();
    (total, path)
}
