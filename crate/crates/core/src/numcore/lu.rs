use num_traits::Zero;

use super::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// LU factorization with partial pivoting, `P·A = L·U`, packed in place.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    sign_flips: usize,
    /// Number of pivots that were exactly zero (or replaced by the floor).
    degenerate_pivots: usize,
}

impl Lu {
    /// Factors a square matrix. Zero pivots are left in place and recorded;
    /// solving with such a factorization fails.
    pub fn factor(a: &ComplexMatrix) -> Result<Self> {
        Self::factor_impl(a, None)
    }

    /// Factors `a`, replacing any pivot smaller than `floor` in modulus by
    /// `floor` (keeping its phase). Used by inverse iteration where the
    /// shifted matrix is singular to working precision.
    pub fn factor_with_floor(a: &ComplexMatrix, floor: f64) -> Result<Self> {
        Self::factor_impl(a, Some(floor))
    }

    fn factor_impl(a: &ComplexMatrix, floor: Option<f64>) -> Result<Self> {
        let n = a.order()?;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign_flips = 0;
        let mut degenerate = 0;
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
                sign_flips += 1;
            }
            if let Some(fl) = floor {
                if pmax < fl {
                    let piv = lu[(k, k)];
                    lu[(k, k)] = if piv.is_zero() {
                        C64::new(fl, 0.0)
                    } else {
                        piv / piv.norm() * fl
                    };
                    degenerate += 1;
                }
            } else if pmax == 0.0 {
                degenerate += 1;
                continue;
            }
            let piv = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / piv;
                lu[(i, k)] = f;
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Ok(Lu {
            lu,
            perm,
            sign_flips,
            degenerate_pivots: if floor.is_some() { 0 } else { degenerate },
        })
    }

    pub fn order(&self) -> usize {
        self.lu.rows()
    }

    pub fn is_singular(&self) -> bool {
        self.degenerate_pivots > 0
    }

    pub fn det(&self) -> C64 {
        let mut d: C64 = self.lu.diag().into_iter().product();
        if self.sign_flips % 2 == 1 {
            d = -d;
        }
        d
    }

    pub fn solve(&self, b: &[C64]) -> Result<Vec<C64>> {
        let n = self.order();
        if b.len() != n {
            return Err(Error::arg("right-hand side length mismatch"));
        }
        if self.is_singular() {
            return Err(Error::numerical("singular matrix in linear solve"));
        }
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: C64 = (0..i).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: C64 = (i + 1..n).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[(i, i)];
        }
        Ok(x)
    }

    /// Solves `A·X = B` column by column.
    pub fn solve_matrix(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.order();
        if b.rows() != n {
            return Err(Error::arg("right-hand side row count mismatch"));
        }
        let mut out = ComplexMatrix::zeros(n, b.cols());
        for j in 0..b.cols() {
            let col = self.solve(&b.col(j))?;
            for (i, v) in col.into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        Ok(out)
    }
}

pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let lu = Lu::factor(a)?;
    lu.solve_matrix(&ComplexMatrix::identity(a.rows()))
}

pub fn determinant(a: &ComplexMatrix) -> Result<C64> {
    Ok(Lu::factor(a)?.det())
}

/// Solves `A·x = b`.
pub fn solve(a: &ComplexMatrix, b: &[C64]) -> Result<Vec<C64>> {
    Lu::factor(a)?.solve(b)
}
