//! Complementary coordinates `b` on generic fibres: extraction from a matrix,
//! reconstruction through the g-recurrence, and the coordinate transforms
//! induced by transposition and diagonal similarity.

use num_traits::One;

use crate::arrow::{cauchy_unchecked, pi_unchecked, sigma_unchecked};
use crate::error::{Condition, Error, Result};
use crate::fiber::{genericity_report, multiset_distance, ritz_values, GenericityReport, RitzData};
use crate::numcore::{eigvec_last_one, lu::Lu, ComplexMatrix, Tolerances, C64};

/// Ritz data with fixed orderings plus `b_1, …, b_{n−1}` (`b_m` of length
/// `m`); a complete coordinate description of one generic matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberCoords {
    ritz: RitzData,
    b: Vec<Vec<C64>>,
}

impl FiberCoords {
    /// Checks the shape of `b`, that every entry is nonzero relative to the
    /// Ritz scale and that the Ritz data are generic.
    pub fn new(ritz: RitzData, b: Vec<Vec<C64>>, tol: &Tolerances) -> Result<Self> {
        let n = ritz.n();
        if b.len() != n - 1 {
            return Err(Error::arg(format!(
                "expected {} coordinate vectors for n = {n}, got {}",
                n - 1,
                b.len()
            )));
        }
        let floor = tol.coincide_rel * ritz.scale();
        for (idx, bm) in b.iter().enumerate() {
            let m = idx + 1;
            if bm.len() != m {
                return Err(Error::arg(format!("b_{m} has {} entries (expected {m})", bm.len())));
            }
            if let Some(i) = bm.iter().position(|z| !z.is_finite() || z.norm() <= floor) {
                return Err(Error::arg(format!("entry {} of b_{m} is zero or non-finite", i + 1)));
            }
        }
        genericity_report(&ritz, tol).ensure_generic()?;
        Ok(FiberCoords { ritz, b })
    }

    pub fn ritz(&self) -> &RitzData {
        &self.ritz
    }

    pub fn n(&self) -> usize {
        self.ritz.n()
    }

    /// `b_m` (1-based).
    pub fn b(&self, m: usize) -> &[C64] {
        &self.b[m - 1]
    }

    pub fn b_all(&self) -> &[Vec<C64>] {
        &self.b
    }

    /// `(b_1, …, b_{n−1})` concatenated; slot `j = C(m,2) + l` holds `b_m[l]`.
    pub fn flat_b(&self) -> Vec<C64> {
        self.b.iter().flatten().copied().collect()
    }
}

/// Output of [`extract_coords`]: the coordinates, the redundant `c_m` and
/// the genericity report (which carries the ill-conditioning flag).
#[derive(Debug, Clone)]
pub struct ExtractedCoords {
    pub coords: FiberCoords,
    pub c: Vec<Vec<C64>>,
    pub report: GenericityReport,
}

/// Coordinates of a generic matrix, level orderings canonical.
pub fn extract_coords(x: &ComplexMatrix, tol: &Tolerances) -> Result<ExtractedCoords> {
    let ritz = ritz_values(x, tol)?;
    extract_with(x, &ritz, tol)
}

/// Like [`extract_coords`] but with caller-chosen level orderings; each
/// level of `ritz` must match the eigenvalues of `x_m` to
/// `coincide_rel·scale`.
pub fn extract_coords_ordered(
    x: &ComplexMatrix,
    ritz: &RitzData,
    tol: &Tolerances,
) -> Result<ExtractedCoords> {
    let n = x.order()?;
    if ritz.n() != n {
        return Err(Error::arg(format!("Ritz data for n = {} but matrix of order {n}", ritz.n())));
    }
    let computed = ritz_values(x, tol)?;
    let thresh = tol.coincide_rel * computed.scale().max(ritz.scale());
    for m in 1..=n {
        let d = multiset_distance(ritz.level(m), computed.level(m));
        if d.is_nan() || d > thresh {
            return Err(Error::arg(format!(
                "supplied Ritz level {m} is {d:.3e} away from the eigenvalues of the leading {m}×{m} block"
            )));
        }
    }
    extract_with(x, ritz, tol)
}

fn extract_with(x: &ComplexMatrix, ritz: &RitzData, tol: &Tolerances) -> Result<ExtractedCoords> {
    let n = x.order()?;
    let report = genericity_report(ritz, tol);
    report.ensure_generic()?;
    let mut b = Vec::with_capacity(n.saturating_sub(1));
    let mut c = Vec::with_capacity(n.saturating_sub(1));
    for m in 1..n {
        let g = diagonalizer(x, ritz.level(m), m, tol)?;
        let row = &x.row(m)[..m];
        b.push(g.vec_mul(row));
        let col: Vec<C64> = (0..m).map(|i| x[(i, m)]).collect();
        c.push(Lu::factor(&g)?.solve(&col)?);
    }
    let coords = FiberCoords::new(ritz.clone(), b, tol)?;
    Ok(ExtractedCoords { coords, c, report })
}

/// `g_m`: eigenvectors of `x_m` for `level` in order, last row all ones.
pub(crate) fn diagonalizer(
    x: &ComplexMatrix,
    level: &[C64],
    m: usize,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    let xm = x.block(m, m);
    let mut g = ComplexMatrix::zeros(m, m);
    for (j, &mu) in level.iter().enumerate() {
        let u = eigvec_last_one(&xm, mu, tol).map_err(|e| match e {
            Error::Genericity { detail, .. } => Error::genericity(Condition::G2(m - 1), detail),
            other => other,
        })?;
        for i in 0..m {
            g[(i, j)] = u[i];
        }
    }
    Ok(g)
}

/// `c_m = Σ_m / b_m` entrywise.
pub fn complement_c_from_b(r: &RitzData, m: usize, b: &[C64], tol: &Tolerances) -> Result<Vec<C64>> {
    if b.len() != m {
        return Err(Error::arg(format!("b_{m} must have {m} entries, got {}", b.len())));
    }
    if let Some(i) = b.iter().position(|z| *z == C64::new(0.0, 0.0)) {
        return Err(Error::arg(format!("entry {} of b_{m} is zero", i + 1)));
    }
    let sigma = crate::arrow::sigma_matrix(r, m, tol)?;
    Ok(sigma.iter().zip(b).map(|(s, bi)| s / bi).collect())
}

/// The matrix with coordinates `fc`, built by the g-recurrence
/// `g_{m+1} = [g_m·diag(−c_m)·Cauchy(Λ_m, Λ_{m+1}); ones]`, `x = g_nΛ_ng_n^{-1}`.
pub fn reconstruct(fc: &FiberCoords, tol: &Tolerances) -> Result<ComplexMatrix> {
    let r = fc.ritz();
    let n = r.n();
    let thresh = tol.coincide_rel * r.scale();
    let mut g = ComplexMatrix::identity(1);
    for m in 1..n {
        let lam = r.level(m);
        let next = r.level(m + 1);
        for (i, a) in lam.iter().enumerate() {
            if next.iter().any(|b| (a - b).norm() <= thresh) {
                return Err(Error::genericity(
                    Condition::G2(m),
                    format!("eigenvalue {a} (slot {}) reappears at level {}", i + 1, m + 1),
                ));
            }
        }
        let sigma = sigma_unchecked(r, m);
        let weights: Vec<C64> = sigma.iter().zip(fc.b(m)).map(|(s, b)| -s / b).collect();
        let cauchy = cauchy_unchecked(lam, next);
        let mut scaled = g.clone();
        for i in 0..m {
            for j in 0..m {
                scaled[(i, j)] *= weights[j];
            }
        }
        let top = &scaled * &cauchy;
        let mut grown = ComplexMatrix::zeros(m + 1, m + 1);
        for i in 0..m {
            for j in 0..=m {
                grown[(i, j)] = top[(i, j)];
            }
        }
        for j in 0..=m {
            grown[(m, j)] = C64::one();
        }
        g = grown;
    }
    let lam = ComplexMatrix::from_diag(r.level(n));
    let gl = &g * &lam;
    // x = gΛg^{-1}  ⇔  xᵀ = g^{-T}(gΛ)ᵀ
    let lu = Lu::factor(&g.transpose())?;
    if lu.is_singular() {
        return Err(Error::numerical("diagonalizer g_n is singular"));
    }
    let x = lu.solve_matrix(&gl.transpose())?.transpose();
    if !x.is_finite() {
        return Err(Error::numerical("reconstruction overflowed"));
    }
    Ok(x)
}

/// `(b_1, …, b_{n−1})` of `x` flattened; all ones at the unit upper
/// Hessenberg representative.
pub fn s_coordinates(x: &ComplexMatrix, tol: &Tolerances) -> Result<Vec<C64>> {
    Ok(extract_coords(x, tol)?.coords.flat_b())
}

/// Coordinates of `xᵀ`: `b̃_m = Π_m·Σ_m / b_m` with `Π_m` pairing levels
/// `m−1` and `m` (and `Π_1 = 1`).
pub fn transpose_coords(fc: &FiberCoords, tol: &Tolerances) -> Result<FiberCoords> {
    let r = fc.ritz();
    let n = r.n();
    genericity_report(r, tol).ensure_generic()?;
    let mut b = Vec::with_capacity(n - 1);
    for m in 1..n {
        let sigma = sigma_unchecked(r, m);
        let pi = if m == 1 { vec![C64::one()] } else { pi_unchecked(r.level(m - 1), r.level(m)) };
        b.push(
            (0..m)
                .map(|i| pi[i] * sigma[i] / fc.b(m)[i])
                .collect(),
        );
    }
    FiberCoords::new(r.clone(), b, tol)
}

/// Coordinates of `D·x·D^{-1}`, `D = diag(d)`: `b_m` scales by `d_{m+1}/d_m`.
pub fn diagonal_similarity_coords(fc: &FiberCoords, d: &[C64], tol: &Tolerances) -> Result<FiberCoords> {
    let n = fc.n();
    if d.len() != n {
        return Err(Error::arg(format!("scaling needs {n} entries, got {}", d.len())));
    }
    if let Some(i) = d.iter().position(|z| *z == C64::new(0.0, 0.0) || !z.is_finite()) {
        return Err(Error::arg(format!("scaling entry {} is zero or non-finite", i + 1)));
    }
    let b = (1..n)
        .map(|m| {
            let ratio = d[m] / d[m - 1];
            fc.b(m).iter().map(|z| z * ratio).collect()
        })
        .collect();
    FiberCoords::new(fc.ritz().clone(), b, tol)
}
