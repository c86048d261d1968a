//! Down-arrow matrices `[[diag(d), p], [qᵀ, δ]]`, Cauchy matrices and the
//! closed-form spectral factorization built from them.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fiber::{genericity_report, RitzData};
use crate::numcore::{lu::Lu, ComplexMatrix, Tolerances, C64};

/// `[[diag(d), p], [qᵀ, delta]]`, of order `d.len() + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrowMatrix {
    pub d: Vec<C64>,
    pub p: Vec<C64>,
    pub q: Vec<C64>,
    pub delta: C64,
}

impl ArrowMatrix {
    pub fn new(d: Vec<C64>, p: Vec<C64>, q: Vec<C64>, delta: C64) -> Result<Self> {
        if p.len() != d.len() || q.len() != d.len() {
            return Err(Error::arg("arrow border lengths must match the diagonal block"));
        }
        Ok(ArrowMatrix { d, p, q, delta })
    }

    pub fn order(&self) -> usize {
        self.d.len() + 1
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let m = self.d.len();
        let mut a = ComplexMatrix::zeros(m + 1, m + 1);
        for i in 0..m {
            a[(i, i)] = self.d[i];
            a[(i, m)] = self.p[i];
            a[(m, i)] = self.q[i];
        }
        a[(m, m)] = self.delta;
        a
    }
}

/// Spectral factorization `A = Z^{-1}·diag(λ)·Z` of an arrow matrix.
#[derive(Debug, Clone)]
pub struct ArrowFactorization {
    pub lambda: Vec<C64>,
    /// Column eigenvectors `[−diag(p)·Cauchy(d, λ); ones]`.
    pub z_inv: ComplexMatrix,
    /// Diagonal of the pairing between row and column eigenvectors.
    pub pi: Vec<C64>,
}

impl ArrowFactorization {
    /// `Z`, obtained by solving against `z_inv`.
    pub fn z(&self) -> Result<ComplexMatrix> {
        let lu = Lu::factor(&self.z_inv)?;
        lu.solve_matrix(&ComplexMatrix::identity(self.z_inv.rows()))
    }
}

fn parameter_scale(sets: &[&[C64]]) -> f64 {
    let s = sets
        .iter()
        .flat_map(|v| v.iter())
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if s == 0.0 {
        1.0
    } else {
        s
    }
}

fn check_disjoint(a: &[C64], b: &[C64], thresh: f64, what: &str) -> Result<()> {
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if (x - y).norm() <= thresh {
                return Err(Error::SpectralCollision(format!(
                    "{what}: {x} (index {}) coincides with {y} (index {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

fn check_distinct(a: &[C64], thresh: f64, what: &str) -> Result<()> {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if (a[i] - a[j]).norm() <= thresh {
                return Err(Error::SpectralCollision(format!(
                    "{what}: entries {} and {} coincide ({})",
                    i + 1,
                    j + 1,
                    a[i]
                )));
            }
        }
    }
    Ok(())
}

/// `Cauchy(d, λ)_{ij} = 1 / (d_i − λ_j)`.
pub fn cauchy_matrix(d: &[C64], lam: &[C64], tol: &Tolerances) -> Result<ComplexMatrix> {
    if d.is_empty() || lam.is_empty() {
        return Err(Error::arg("Cauchy matrix needs nonempty parameter lists"));
    }
    let thresh = tol.coincide_rel * parameter_scale(&[d, lam]);
    check_disjoint(d, lam, thresh, "Cauchy parameters")?;
    Ok(cauchy_unchecked(d, lam))
}

pub(crate) fn cauchy_unchecked(d: &[C64], lam: &[C64]) -> ComplexMatrix {
    let mut c = ComplexMatrix::zeros(d.len(), lam.len());
    for (i, di) in d.iter().enumerate() {
        for (j, lj) in lam.iter().enumerate() {
            c[(i, j)] = C64::one() / (di - lj);
        }
    }
    c
}

/// `Σ_m = −P_{m+1}(Λ_m)·P′_m(Λ_m)^{-1}`, entrywise over level `m` in its
/// stored order. Requires (G1_m), (G2_m) and (G1_{m+1}).
pub fn sigma_matrix(r: &RitzData, m: usize, tol: &Tolerances) -> Result<Vec<C64>> {
    let n = r.n();
    if m == 0 || m >= n {
        return Err(Error::arg(format!("level {m} outside 1..={}", n.saturating_sub(1))));
    }
    genericity_report(r, tol).ensure_level(m)?;
    Ok(sigma_unchecked(r, m))
}

pub(crate) fn sigma_unchecked(r: &RitzData, m: usize) -> Vec<C64> {
    let level = r.level(m);
    let next = r.level(m + 1);
    level
        .iter()
        .enumerate()
        .map(|(i, mu)| {
            let p_next: C64 = next.iter().map(|nu| mu - nu).product();
            let p_prime: C64 = level
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, nu)| mu - nu)
                .product();
            -p_next / p_prime
        })
        .collect()
}

/// The entrywise product `b_m ∘ c_m` shared by every matrix of the fibre;
/// identical to [`sigma_matrix`].
pub fn bc_product(r: &RitzData, m: usize, tol: &Tolerances) -> Result<Vec<C64>> {
    sigma_matrix(r, m, tol)
}

/// Diagonal of `Π`, from the closed form
/// `Π_jj = 1 − Σ_i ∏_k(d_i − λ_k) / [(λ_j − d_i)² ∏_{k≠i}(d_i − d_k)]`.
/// An empty `d` gives the empty sum, i.e. all ones.
pub fn pi_matrix(d: &[C64], lam: &[C64], tol: &Tolerances) -> Result<Vec<C64>> {
    let thresh = tol.coincide_rel * parameter_scale(&[d, lam]);
    check_distinct(d, thresh, "arrow diagonal")?;
    check_disjoint(d, lam, thresh, "arrow diagonal vs spectrum")?;
    Ok(pi_unchecked(d, lam))
}

pub(crate) fn pi_unchecked(d: &[C64], lam: &[C64]) -> Vec<C64> {
    // p_i q_i is fixed by the spectrum: −∏_k(d_i − λ_k)/∏_{k≠i}(d_i − d_k).
    let pq: Vec<C64> = d
        .iter()
        .enumerate()
        .map(|(i, di)| {
            let num: C64 = lam.iter().map(|l| di - l).product();
            let den: C64 = d
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, dk)| di - dk)
                .product();
            num / den
        })
        .collect();
    lam.iter()
        .map(|lj| {
            let s: C64 = d
                .iter()
                .zip(&pq)
                .map(|(di, w)| {
                    let gap = lj - di;
                    w / (gap * gap)
                })
                .sum();
            C64::one() - s
        })
        .collect()
}

/// Closed-form eigen-decomposition of an arrow matrix whose spectrum `lam`
/// is known. The diagonal entries and the eigenvalues must be pairwise
/// distinct.
pub fn arrow_factorize(a: &ArrowMatrix, lam: &[C64], tol: &Tolerances) -> Result<ArrowFactorization> {
    let m = a.d.len();
    if lam.len() != m + 1 {
        return Err(Error::arg(format!(
            "arrow matrix of order {} needs {} eigenvalues, got {}",
            m + 1,
            m + 1,
            lam.len()
        )));
    }
    let thresh = tol.coincide_rel * parameter_scale(&[&a.d, lam]);
    check_distinct(&a.d, thresh, "arrow diagonal")?;
    check_distinct(lam, thresh, "arrow spectrum")?;
    check_disjoint(&a.d, lam, thresh, "arrow diagonal vs spectrum")?;

    let cauchy = cauchy_unchecked(&a.d, lam);
    let mut z_inv = ComplexMatrix::zeros(m + 1, m + 1);
    for i in 0..m {
        for j in 0..=m {
            z_inv[(i, j)] = -a.p[i] * cauchy[(i, j)];
        }
    }
    for j in 0..=m {
        z_inv[(m, j)] = C64::one();
    }
    let fact = ArrowFactorization {
        lambda: lam.to_vec(),
        z_inv,
        pi: pi_unchecked(&a.d, lam),
    };

    let amat = a.to_matrix();
    let z = fact.z()?;
    let recon = &(&fact.z_inv * &ComplexMatrix::from_diag(lam)) * &z;
    let resid = (&amat - &recon).frobenius_norm();
    let anorm = amat.frobenius_norm();
    if (resid.is_nan() || resid > 1e-8 * anorm.max(f64::MIN_POSITIVE)) && !(anorm == 0.0 && resid.is_zero()) {
        return Err(Error::numerical(format!(
            "arrow factorization residual {resid:.3e} exceeds 1e-8·‖A‖ = {:.3e}",
            1e-8 * anorm
        )));
    }
    Ok(fact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::c;

    fn close(a: &[C64], b: &[C64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    fn ritz(levels: &[&[f64]]) -> RitzData {
        RitzData::new(levels.iter().map(|l| l.iter().map(|&v| c(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn cauchy_examples() {
        let tol = Tolerances::default();
        let m = cauchy_matrix(&[c(0.0)], &[c(1.0), c(-1.0)], &tol).unwrap();
        assert_eq!(m.row(0), &[c(-1.0), c(1.0)]);
        let m = cauchy_matrix(&[c(2.0)], &[c(1.0)], &tol).unwrap();
        assert_eq!(m.row(0), &[c(1.0)]);
        let m = cauchy_matrix(&[c(0.0), c(1.0)], &[c(2.0)], &tol).unwrap();
        assert_eq!(m.col(0), vec![c(-0.5), c(-1.0)]);
        let err = cauchy_matrix(&[c(1.0)], &[c(1.0)], &tol).unwrap_err();
        assert!(matches!(err, Error::SpectralCollision(_)));
    }

    #[test]
    fn sigma_examples() {
        let tol = Tolerances::default();
        assert_eq!(sigma_matrix(&ritz(&[&[0.0], &[-1.0, 1.0]]), 1, &tol).unwrap(), vec![c(1.0)]);
        assert_eq!(sigma_matrix(&ritz(&[&[0.0], &[2.0, -2.0]]), 1, &tol).unwrap(), vec![c(4.0)]);
        let err = sigma_matrix(&ritz(&[&[1.0], &[1.0 + 1e-12, 3.0]]), 1, &tol).unwrap_err();
        assert!(matches!(err, Error::Genericity { .. }));
        assert!(sigma_matrix(&ritz(&[&[0.0], &[-1.0, 1.0]]), 2, &tol).is_err());
    }

    #[test]
    fn bc_product_examples() {
        let tol = Tolerances::default();
        assert_eq!(bc_product(&ritz(&[&[0.0], &[-1.0, 1.0]]), 1, &tol).unwrap(), vec![c(1.0)]);
        assert_eq!(bc_product(&ritz(&[&[1.0], &[0.0, 3.0]]), 1, &tol).unwrap(), vec![c(2.0)]);
        assert!(bc_product(&ritz(&[&[0.0], &[0.0, 2.0]]), 1, &tol).is_err());
    }

    #[test]
    fn pi_examples() {
        let tol = Tolerances::default();
        assert_eq!(pi_matrix(&[c(0.0)], &[c(1.0), c(-1.0)], &tol).unwrap(), vec![c(2.0), c(2.0)]);
        assert_eq!(pi_matrix(&[], &[c(3.5)], &tol).unwrap(), vec![c(1.0)]);
        assert!(pi_matrix(&[c(1.0), c(1.0)], &[c(0.0), c(2.0), c(3.0)], &tol).is_err());
    }

    #[test]
    fn factorize_examples() {
        let tol = Tolerances::default();
        let a = ArrowMatrix::new(vec![c(0.0)], vec![c(1.0)], vec![c(1.0)], c(0.0)).unwrap();
        let f = arrow_factorize(&a, &[c(1.0), c(-1.0)], &tol).unwrap();
        assert_eq!(f.z_inv.to_rows(), vec![vec![c(1.0), c(-1.0)], vec![c(1.0), c(1.0)]]);
        let a = ArrowMatrix::new(vec![c(0.0)], vec![c(0.5)], vec![c(2.0)], c(0.0)).unwrap();
        let f = arrow_factorize(&a, &[c(1.0), c(-1.0)], &tol).unwrap();
        assert!(close(f.z_inv.row(0), &[c(0.5), c(-0.5)], 1e-15));
        assert!(close(f.z_inv.row(1), &[c(1.0), c(1.0)], 0.0));
        // p = q = 0 decouples: spectrum {5, δ} collides with d = 5.
        let a = ArrowMatrix::new(vec![c(5.0)], vec![c(0.0)], vec![c(0.0)], c(2.0)).unwrap();
        let err = arrow_factorize(&a, &[c(5.0), c(2.0)], &tol).unwrap_err();
        assert!(matches!(err, Error::SpectralCollision(_)));
    }

    #[test]
    fn wrong_spectrum_is_numerical_error() {
        let tol = Tolerances::default();
        let a = ArrowMatrix::new(vec![c(0.0)], vec![c(1.0)], vec![c(1.0)], c(0.0)).unwrap();
        let err = arrow_factorize(&a, &[c(2.0), c(-1.0)], &tol).unwrap_err();
        assert!(matches!(err, Error::Numerical(_)));
    }

    #[test]
    fn pi_from_row_and_column_eigenvectors() {
        // Π = [Cauchy(Λ,D)·diag(q), ones]·Z^{-1}, which must be diagonal.
        let tol = Tolerances::default();
        let d = [c(0.0), C64::new(1.0, 0.5)];
        let lam = [c(-1.0), C64::new(0.5, 2.0), c(3.0)];
        let closed = pi_matrix(&d, &lam, &tol).unwrap();
        let pq: Vec<C64> = (0..2)
            .map(|i| {
                let num: C64 = lam.iter().map(|l| d[i] - l).product();
                -num / (d[i] - d[1 - i])
            })
            .collect();
        for p0 in [c(1.0), C64::new(0.3, -2.0)] {
            let p = vec![p0, c(1.0) / p0];
            let q: Vec<C64> = pq.iter().zip(&p).map(|(w, pi)| w / pi).collect();
            let delta = lam.iter().sum::<C64>() - d.iter().sum::<C64>();
            let a = ArrowMatrix::new(d.to_vec(), p, q.clone(), delta).unwrap();
            let f = arrow_factorize(&a, &lam, &tol).unwrap();
            let cl = cauchy_unchecked(&lam, &d);
            let mut rows = ComplexMatrix::zeros(3, 3);
            for j in 0..3 {
                for i in 0..2 {
                    rows[(j, i)] = cl[(j, i)] * q[i];
                }
                rows[(j, 2)] = c(1.0);
            }
            let prod = &rows * &f.z_inv;
            for j in 0..3 {
                for k in 0..3 {
                    if j == k {
                        assert!((prod[(j, j)] - closed[j]).norm() < 1e-12 * closed[j].norm());
                    } else {
                        assert!(prod[(j, k)].norm() < 1e-12);
                    }
                }
            }
        }
    }
}
