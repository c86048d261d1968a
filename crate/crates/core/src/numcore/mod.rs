//! Self-contained complex linear algebra and polynomial kernel.

pub mod eigen;
pub mod expm;
pub mod lu;
mod matrix;
pub mod poly;
pub mod svd;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use matrix::ComplexMatrix;
pub use poly::{
    charpoly_from_eigs, charpoly_of_matrix, poly_derivative, poly_eval, poly_quotient_in_basis,
    MonicPoly, Poly,
};

use crate::error::{Condition, Error, Result};

pub type C64 = num_complex::Complex64;

/// Numerical thresholds shared by every operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative eigenvalue/eigenvector accuracy demanded.
    pub eig_rel: f64,
    /// Two eigenvalues closer than `coincide_rel·scale` are treated as equal.
    pub coincide_rel: f64,
    /// Singular values below `rank_rel·σ_max` count as zero.
    pub rank_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eig_rel: 1e-10,
            coincide_rel: 1e-8,
            rank_rel: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn new(eig_rel: f64, coincide_rel: f64, rank_rel: f64) -> Result<Self> {
        for (name, v) in [
            ("eig_rel", eig_rel),
            ("coincide_rel", coincide_rel),
            ("rank_rel", rank_rel),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::arg(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        Ok(Tolerances {
            eig_rel,
            coincide_rel,
            rank_rel,
        })
    }
}

/// `x(1:m, 1:m)`.
pub fn leading_submatrix(x: &ComplexMatrix, m: usize) -> Result<ComplexMatrix> {
    let n = x.order()?;
    if m == 0 || m > n {
        return Err(Error::arg(format!("submatrix order {m} outside 1..={n}")));
    }
    Ok(x.block(m, m))
}

/// All eigenvalues with multiplicity, in canonical `(re, im)` order.
pub fn eigenvalues(x: &ComplexMatrix, _tol: &Tolerances) -> Result<Vec<C64>> {
    if !x.is_finite() {
        return Err(Error::arg("non-finite matrix entries"));
    }
    let mut e = eigen::eigenvalues_unordered(x)?;
    eigen::sort_canonical(&mut e);
    Ok(e)
}

/// Null vector of `x − μI` scaled so its last entry is exactly 1.
///
/// Inverse iteration from a fixed pseudo-random start, one factorization
/// and two refinement solves. A null vector whose last entry is negligible
/// means `x` and its leading `(n−1)`-block share the eigenvalue `μ`.
pub fn eigvec_last_one(x: &ComplexMatrix, mu: C64, tol: &Tolerances) -> Result<Vec<C64>> {
    let n = x.order()?;
    if !mu.is_finite() {
        return Err(Error::arg("non-finite shift"));
    }
    let xnorm = x.frobenius_norm();
    let scale = match xnorm.max(mu.norm()) {
        s if s > 0.0 => s,
        _ => 1.0,
    };
    let shifted = x.shift_diag(-mu);
    let lu = lu::Lu::factor_with_floor(&shifted, f64::EPSILON * scale)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_u64 + n as u64);
    let mut u: Vec<C64> = (0..n)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    for _ in 0..3 {
        u = lu.solve(&u)?;
        let norm = vec_norm(&u);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::numerical("inverse iteration broke down"));
        }
        for z in &mut u {
            *z /= norm;
        }
    }
    let last = u[n - 1];
    if last.norm() < tol.coincide_rel * vec_norm(&u) {
        let m = n.saturating_sub(1);
        return Err(Error::genericity(
            Condition::G2(m.max(1)),
            format!("eigenvector for {mu} has a vanishing last entry"),
        ));
    }
    let inv = C64::one() / last;
    for z in &mut u {
        *z *= inv;
    }
    u[n - 1] = C64::one();
    let resid = vec_norm(&shifted.mul_vec(&u));
    let bound = tol.eig_rel * xnorm.max(mu.norm()) * vec_norm(&u);
    if resid > bound && resid > f64::EPSILON * 16.0 * vec_norm(&u) {
        return Err(Error::numerical(format!(
            "eigenvector residual {resid:.3e} exceeds {bound:.3e}; is {mu} an eigenvalue?"
        )));
    }
    Ok(u)
}

/// Rank by singular values relative to the largest.
pub fn numeric_rank(a: &ComplexMatrix, tol: &Tolerances) -> usize {
    svd::numeric_rank_rel(a, tol.rank_rel)
}

/// Dimension of the commutant `{y : yB = By}`, the nullity of the Sylvester
/// operator `y ↦ By − yB` written as `I⊗B − Bᵀ⊗I` on row-major vec(y).
pub fn commutant_dimension(b: &ComplexMatrix, tol: &Tolerances) -> Result<usize> {
    let m = b.order()?;
    let mut op = ComplexMatrix::zeros(m * m, m * m);
    // vec index of y_{ij} is i*m + j; (By − yB)_{ij} = Σ_k B_ik y_kj − y_ik B_kj
    for i in 0..m {
        for j in 0..m {
            let row = i * m + j;
            for k in 0..m {
                op[(row, k * m + j)] += b[(i, k)];
                op[(row, i * m + k)] -= b[(k, j)];
            }
        }
    }
    // Measured against ‖B‖, not against the operator itself: a scalar
    // matrix carrying roundoff gives an operator made only of noise.
    let thresh = tol.rank_rel * b.frobenius_norm();
    let rank = svd::singular_values(&op).iter().filter(|&&s| s > thresh).count();
    Ok(m * m - rank)
}

pub(crate) fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Canonically sorted copy.
pub fn canonical_order(v: &[C64]) -> Vec<C64> {
    let mut out = v.to_vec();
    eigen::sort_canonical(&mut out);
    out
}

#[cfg(test)]
pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}
