use super::{ComplexMatrix, C64};

const MAX_SWEEPS: usize = 60;

/// Singular values in descending order, by one-sided (Hestenes) Jacobi
/// rotations applied to the columns.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    // Work on the orientation with at least as many rows as columns.
    let work = if a.rows() >= a.cols() {
        a.clone()
    } else {
        a.conj_transpose()
    };
    let (rows, cols) = (work.rows(), work.cols());
    let mut columns: Vec<Vec<C64>> = (0..cols).map(|j| work.col(j)).collect();
    let tol = f64::EPSILON * rows as f64;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: f64 = columns[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = columns[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = columns[p]
                    .iter()
                    .zip(&columns[q])
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let g = gamma.norm();
                if g == 0.0 || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Rotate the phase out of gamma, then apply a real rotation.
                let phase = gamma.conj() / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (lo, hi) = columns.split_at_mut(q);
                for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    let (u, v) = (*x, *y * phase);
                    *x = u * c - v * s;
                    *y = u * s + v * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = columns
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Number of singular values above `rel·σ_max`.
pub fn numeric_rank_rel(a: &ComplexMatrix, rel: f64) -> usize {
    let sv = singular_values(a);
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel * top).count()
}
