//! Observability, controllability and regularity of the single-input
//! single-output system attached to a bordered matrix `[[B, c], [bᵀ, δ]]`,
//! and the unique completion of the bordering column.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numcore::{
    charpoly_of_matrix, commutant_dimension, lu::Lu, numeric_rank, poly::poly_divmod, ComplexMatrix,
    MonicPoly, Tolerances, C64,
};

/// `ẋ = Bx + cu, y = bᵀx + δu`.
#[derive(Debug, Clone, PartialEq)]
pub struct SISOSystem {
    pub b_matrix: ComplexMatrix,
    pub row: Vec<C64>,
    pub col: Vec<C64>,
    pub delta: C64,
}

impl SISOSystem {
    pub fn new(b_matrix: ComplexMatrix, row: Vec<C64>, col: Vec<C64>, delta: C64) -> Result<Self> {
        let m = b_matrix.order()?;
        if row.len() != m || col.len() != m {
            return Err(Error::arg(format!("row and column must have length {m}")));
        }
        Ok(SISOSystem {
            b_matrix,
            row,
            col,
            delta,
        })
    }

    pub fn order(&self) -> usize {
        self.row.len()
    }

    /// `[[B, c], [bᵀ, δ]]`.
    pub fn bordered(&self) -> ComplexMatrix {
        let m = self.order();
        let mut a = self.b_matrix.embed(m + 1, C64::zero());
        for i in 0..m {
            a[(i, m)] = self.col[i];
            a[(m, i)] = self.row[i];
        }
        a[(m, m)] = self.delta;
        a
    }
}

/// Block-diagonal Jordan matrix with `1`s on the subdiagonal of each block.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanSpec {
    blocks: Vec<(C64, usize)>,
}

impl JordanSpec {
    pub fn new(blocks: Vec<(C64, usize)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::arg("a Jordan matrix needs at least one block"));
        }
        if blocks.iter().any(|&(_, s)| s == 0) {
            return Err(Error::arg("Jordan block sizes must be positive"));
        }
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if blocks[i].0 == blocks[j].0 {
                    return Err(Error::arg(format!(
                        "blocks {} and {} share the eigenvalue {}",
                        i + 1,
                        j + 1,
                        blocks[i].0
                    )));
                }
            }
        }
        Ok(JordanSpec { blocks })
    }

    pub fn blocks(&self) -> &[(C64, usize)] {
        &self.blocks
    }

    pub fn order(&self) -> usize {
        self.blocks.iter().map(|b| b.1).sum()
    }

    /// 0-based index of the last entry of each block.
    pub fn segment_ends(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |acc, &(_, s)| {
                *acc += s;
                Some(*acc - 1)
            })
            .collect()
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let m = self.order();
        let mut a = ComplexMatrix::zeros(m, m);
        let mut start = 0;
        for &(d, s) in &self.blocks {
            for i in 0..s {
                a[(start + i, start + i)] = d;
                if i > 0 {
                    a[(start + i, start + i - 1)] = C64::one();
                }
            }
            start += s;
        }
        a
    }
}

/// `[v, Av, …, A^{m−1}v]`.
pub(crate) fn krylov(a: &ComplexMatrix, v: &[C64]) -> ComplexMatrix {
    let m = v.len();
    let mut k = ComplexMatrix::zeros(m, m);
    let mut w = v.to_vec();
    for j in 0..m {
        for i in 0..m {
            k[(i, j)] = w[i];
        }
        w = a.mul_vec(&w);
    }
    k
}

fn check_len(b: &ComplexMatrix, v: &[C64]) -> Result<usize> {
    let m = b.order()?;
    if v.len() != m {
        return Err(Error::arg(format!("vector of length {} for a matrix of order {m}", v.len())));
    }
    Ok(m)
}

/// `rank [b, Bᵀb, …, (Bᵀ)^{m−1}b] = m`.
pub fn observable(b_matrix: &ComplexMatrix, row: &[C64], tol: &Tolerances) -> Result<bool> {
    let m = check_len(b_matrix, row)?;
    Ok(numeric_rank(&krylov(&b_matrix.transpose(), row), tol) == m)
}

/// `rank [c, Bc, …, B^{m−1}c] = m`.
pub fn controllable(b_matrix: &ComplexMatrix, col: &[C64], tol: &Tolerances) -> Result<bool> {
    let m = check_len(b_matrix, col)?;
    Ok(numeric_rank(&krylov(b_matrix, col), tol) == m)
}

/// Non-derogatory: the commutant has dimension equal to the order.
pub fn is_regular(b_matrix: &ComplexMatrix, tol: &Tolerances) -> Result<bool> {
    Ok(commutant_dimension(b_matrix, tol)? == b_matrix.order()?)
}

/// Markov parameters `bᵀB^{k−1}c`, `k = 1..=count`.
pub fn markov_parameters(sys: &SISOSystem, count: usize) -> Vec<C64> {
    let mut w = sys.col.clone();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(sys.row.iter().zip(&w).map(|(a, b)| a * b).sum());
        w = sys.b_matrix.mul_vec(&w);
    }
    out
}

/// `H_{ij} = bᵀB^{i+j−2}c`, `N×N`.
pub fn markov_hankel(sys: &SISOSystem, size: usize) -> Result<ComplexMatrix> {
    if size == 0 {
        return Err(Error::arg("Hankel size must be positive"));
    }
    let g = markov_parameters(sys, 2 * size - 1);
    let mut h = ComplexMatrix::zeros(size, size);
    for i in 0..size {
        for j in 0..size {
            h[(i, j)] = g[i + j];
        }
    }
    Ok(h)
}

/// Bordering data solving `det(λI − [[B, c], [bᵀ, δ]]) = target`.
#[derive(Debug, Clone, PartialEq)]
pub struct Completion {
    pub col: Vec<C64>,
    pub delta: C64,
}

/// The unique `c` (and the trace-forced `δ`) whose bordering realises the
/// characteristic polynomial `target` of degree `m+1`. Requires `(B, bᵀ)`
/// observable.
pub fn solve_unique_completion(
    b_matrix: &ComplexMatrix,
    row: &[C64],
    target: &MonicPoly,
    tol: &Tolerances,
) -> Result<Completion> {
    let m = check_len(b_matrix, row)?;
    if target.degree() != m + 1 {
        return Err(Error::arg(format!(
            "target must have degree {}, got {}",
            m + 1,
            target.degree()
        )));
    }
    if !observable(b_matrix, row, tol)? {
        return Err(Error::NoUniqueCompletion);
    }
    let p_b = charpoly_of_matrix(b_matrix)?;
    let delta = -target.coeffs[m] - b_matrix.trace();
    // target = (λ − δ)·P_B + R, and λ − δ − target/P_B = −R/P_B = Σ g_k λ^{−k}.
    let (_, rem) = poly_divmod(&target.to_poly(), &p_b);
    let r = |i: usize| rem.coeffs.get(i).copied().unwrap_or_else(C64::zero);
    let mut h = vec![C64::zero(); m + 1];
    for j in 1..=m {
        let mut acc = r(m - j);
        for i in 1..j {
            acc -= p_b.coeffs[m - i] * h[j - i];
        }
        h[j] = acc;
    }
    let g: Vec<C64> = h[1..].iter().map(|z| -z).collect();

    let mut k = ComplexMatrix::zeros(m, m);
    let mut w = row.to_vec();
    let bt = b_matrix.transpose();
    for i in 0..m {
        for j in 0..m {
            k[(i, j)] = w[j];
        }
        w = bt.mul_vec(&w);
    }
    let col = Lu::factor(&k)?.solve(&g)?;

    let sys = SISOSystem::new(b_matrix.clone(), row.to_vec(), col.clone(), delta)?;
    let got = charpoly_of_matrix(&sys.bordered())?;
    let scale = target.coeffs.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let resid = got
        .coeffs
        .iter()
        .zip(&target.coeffs)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    if resid.is_nan() || resid > 1e-6 * scale {
        return Err(Error::numerical(format!(
            "completed characteristic polynomial misses the target by {resid:.3e}"
        )));
    }
    Ok(Completion { col, delta })
}

/// Observability of `(J, rowᵀ)` for the Jordan matrix of `spec`, read off
/// the row entries at the segment ends.
pub fn jordan_observable_row(spec: &JordanSpec, row: &[C64], tol: &Tolerances) -> Result<bool> {
    if row.len() != spec.order() {
        return Err(Error::arg(format!(
            "row of length {} for Jordan order {}",
            row.len(),
            spec.order()
        )));
    }
    let top = row.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let thresh = tol.coincide_rel * if top == 0.0 { 1.0 } else { top };
    Ok(spec.segment_ends().iter().all(|&e| row[e].norm() > thresh))
}
