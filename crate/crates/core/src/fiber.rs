//! Ritz values, genericity, the forced diagonal and the unit upper
//! Hessenberg representative of a fibre.

use num_traits::{One, Zero};

use crate::error::{Condition, Error, Result};
use crate::numcore::{
    self, charpoly_from_eigs, eigenvalues, leading_submatrix, numeric_rank,
    poly_quotient_in_basis, ComplexMatrix, MonicPoly, Poly, Tolerances, C64,
};

/// Ordered spectra of the leading principal submatrices, level `m` holding
/// `m` values. The order within a level is data and is never rearranged
/// behind the caller's back.
#[derive(Debug, Clone, PartialEq)]
pub struct RitzData {
    levels: Vec<Vec<C64>>,
}

impl RitzData {
    pub fn new(levels: Vec<Vec<C64>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::arg("Ritz data needs at least one level"));
        }
        for (idx, level) in levels.iter().enumerate() {
            if level.len() != idx + 1 {
                return Err(Error::arg(format!(
                    "level {} has {} values (expected {})",
                    idx + 1,
                    level.len(),
                    idx + 1
                )));
            }
            if level.iter().any(|z| !z.is_finite()) {
                return Err(Error::arg(format!("level {} has a non-finite value", idx + 1)));
            }
        }
        Ok(RitzData { levels })
    }

    /// Matrix order `n`.
    pub fn n(&self) -> usize {
        self.levels.len()
    }

    /// Level `m` (1-based).
    pub fn level(&self, m: usize) -> &[C64] {
        &self.levels[m - 1]
    }

    pub fn levels(&self) -> &[Vec<C64>] {
        &self.levels
    }

    pub fn into_levels(self) -> Vec<Vec<C64>> {
        self.levels
    }

    /// Largest Ritz modulus over all levels, or 1 when every value is zero.
    pub fn scale(&self) -> f64 {
        let s = self
            .levels
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if s == 0.0 {
            1.0
        } else {
            s
        }
    }

    /// `P_m(λ) = ∏ (λ − μ)` over level `m`; `P_0 = 1`.
    pub fn charpoly(&self, m: usize) -> MonicPoly {
        if m == 0 {
            MonicPoly::one()
        } else {
            charpoly_from_eigs(self.level(m))
        }
    }

    /// Same multisets, each level in canonical order.
    pub fn canonicalized(&self) -> RitzData {
        RitzData {
            levels: self.levels.iter().map(|l| numcore::canonical_order(l)).collect(),
        }
    }

    /// Largest per-level multiset distance to `other` (same `n` required).
    pub fn distance(&self, other: &RitzData) -> f64 {
        assert_eq!(self.n(), other.n());
        self.levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| multiset_distance(a, b))
            .fold(0.0, f64::max)
    }
}

/// Distance between two equal-size multisets: pairs are matched greedily by
/// increasing distance and the largest matched gap is returned. Exact for
/// spectra whose separation exceeds the perturbation being measured.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len(), "multisets of different size");
    let mut pairs: Vec<(f64, usize, usize)> = a
        .iter()
        .enumerate()
        .flat_map(|(i, x)| b.iter().enumerate().map(move |(j, y)| ((x - y).norm(), i, j)))
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for (d, i, j) in pairs {
        if used_a[i] || used_b[j] {
            continue;
        }
        used_a[i] = true;
        used_b[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Outcome of the eigenvalue-disjointness tests.
#[derive(Debug, Clone, PartialEq)]
pub struct GenericityReport {
    /// `g1[m-1]` is (G1_m), m = 1..n.
    pub g1: Vec<bool>,
    /// `g2[m-1]` is (G2_m), m = 1..n−1.
    pub g2: Vec<bool>,
    pub generic: bool,
    /// Generic, but some gap is below `1e3·coincide_rel·scale`.
    pub ill_conditioned: bool,
    /// Smallest within-level or consecutive-level gap divided by the scale.
    pub min_relative_gap: f64,
}

impl GenericityReport {
    /// First failing condition in the order G1_1, G2_1, G1_2, G2_2, ….
    pub fn first_failure(&self) -> Option<Condition> {
        for m in 1..=self.g1.len() {
            if !self.g1[m - 1] {
                return Some(Condition::G1(m));
            }
            if m <= self.g2.len() && !self.g2[m - 1] {
                return Some(Condition::G2(m));
            }
        }
        None
    }

    pub fn ensure_generic(&self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(cond) => Err(Error::genericity(cond, "")),
        }
    }

    /// Checks (G1_m), (G1_{m+1}) and (G2_m), the hypotheses needed at one
    /// bordering step.
    pub fn ensure_level(&self, m: usize) -> Result<()> {
        if !self.g1[m - 1] {
            return Err(Error::genericity(Condition::G1(m), ""));
        }
        if !self.g2[m - 1] {
            return Err(Error::genericity(Condition::G2(m), ""));
        }
        if !self.g1[m] {
            return Err(Error::genericity(Condition::G1(m + 1), ""));
        }
        Ok(())
    }
}

/// Ritz data with the diagonal it forces.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberDescriptor {
    pub ritz: RitzData,
    pub diag: Vec<C64>,
}

impl FiberDescriptor {
    pub fn new(ritz: RitzData) -> Self {
        let diag = diagonal_from_ritz(&ritz);
        FiberDescriptor { ritz, diag }
    }
}

/// Level `m` holds the eigenvalues of `x_m` in canonical order.
pub fn ritz_values(x: &ComplexMatrix, tol: &Tolerances) -> Result<RitzData> {
    let n = x.order()?;
    let levels = (1..=n)
        .map(|m| eigenvalues(&leading_submatrix(x, m)?, tol))
        .collect::<Result<Vec<_>>>()?;
    RitzData::new(levels)
}

/// Decides (G1_m) and (G2_m) with the threshold `coincide_rel·scale`, the
/// scale being the largest Ritz modulus across all levels.
pub fn genericity_report(r: &RitzData, tol: &Tolerances) -> GenericityReport {
    let n = r.n();
    let scale = r.scale();
    let thresh = tol.coincide_rel * scale;
    let mut min_gap = f64::INFINITY;
    let mut g1 = Vec::with_capacity(n);
    for m in 1..=n {
        let level = r.level(m);
        let mut ok = true;
        for i in 0..m {
            for j in i + 1..m {
                let gap = (level[i] - level[j]).norm();
                min_gap = min_gap.min(gap);
                ok &= gap > thresh;
            }
        }
        g1.push(ok);
    }
    let mut g2 = Vec::with_capacity(n.saturating_sub(1));
    for m in 1..n {
        let mut ok = true;
        for a in r.level(m) {
            for b in r.level(m + 1) {
                let gap = (a - b).norm();
                min_gap = min_gap.min(gap);
                ok &= gap > thresh;
            }
        }
        g2.push(ok);
    }
    let generic = g1.iter().chain(&g2).all(|&b| b);
    let min_relative_gap = min_gap / scale;
    GenericityReport {
        g1,
        g2,
        generic,
        ill_conditioned: generic && min_gap < 1e3 * thresh,
        min_relative_gap,
    }
}

/// `x_mm = ΣE(x_m) − ΣE(x_{m−1})`.
pub fn diagonal_from_ritz(r: &RitzData) -> Vec<C64> {
    let sums: Vec<C64> = r.levels().iter().map(|l| l.iter().sum()).collect();
    sums.iter()
        .enumerate()
        .map(|(i, s)| if i == 0 { *s } else { s - sums[i - 1] })
        .collect()
}

/// The unit upper Hessenberg matrix with Ritz values `r`.
///
/// Column `m+1` above the diagonal holds the coefficients of
/// `(λ − δ_{m+1})P_m(λ) − P_{m+1}(λ)` in the basis `P_0, …, P_{m−1}`, which
/// is the last-column expansion of `det(λI − y_{m+1})`.
pub fn hessenberg_representative(r: &RitzData) -> ComplexMatrix {
    let n = r.n();
    let diag = diagonal_from_ritz(r);
    let polys: Vec<MonicPoly> = (0..=n).map(|m| r.charpoly(m)).collect();
    let mut y = ComplexMatrix::zeros(n, n);
    y[(0, 0)] = diag[0];
    for m in 1..n {
        y[(m, m)] = diag[m];
        y[(m, m - 1)] = C64::one();
        let bordered = polys[m].to_poly().mul(&Poly::new(vec![-diag[m], C64::one()]));
        // The λ^m coefficient cancels by the choice of δ; drop the rounding residue.
        let target = bordered.sub(&polys[m + 1].to_poly()).truncate(m);
        let coeffs = poly_quotient_in_basis(&target, &polys[..m])
            .expect("basis degrees are 0..m-1 and target degree < m");
        for (k, a) in coeffs.into_iter().enumerate() {
            y[(k, m)] = a;
        }
    }
    y
}

/// Whether the differentials of all `tr(x_m^k)`, `1 ≤ k ≤ m ≤ n`, are
/// linearly independent at `x`.
pub fn strong_regularity_check(x: &ComplexMatrix, tol: &Tolerances) -> Result<bool> {
    let n = x.order()?;
    let count = n * (n + 1) / 2;
    let mut jac = ComplexMatrix::zeros(count, n * n);
    let mut row = 0;
    for m in 1..=n {
        let xm = x.block(m, m);
        let mut power = ComplexMatrix::identity(m);
        for k in 1..=m {
            // d tr(x_m^k) / d x_ij = k (x_m^{k-1})_ji
            for i in 0..m {
                for j in 0..m {
                    jac[(row, i * n + j)] = power[(j, i)] * k as f64;
                }
            }
            power = &power * &xm;
            row += 1;
        }
    }
    Ok(numeric_rank(&jac, tol) == count)
}

#[allow(dead_code)]
fn is_unit_upper_hessenberg(y: &ComplexMatrix) -> bool {
    let n = y.rows();
    (0..n).all(|i| {
        (0..n).all(|j| {
            if i == j + 1 {
                y[(i, j)] == C64::one()
            } else if i > j + 1 {
                y[(i, j)].is_zero()
            } else {
                true
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::c;

    fn swap() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    fn ritz(levels: &[&[f64]]) -> RitzData {
        RitzData::new(levels.iter().map(|l| l.iter().map(|&v| c(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn ritz_examples() {
        let tol = Tolerances::default();
        let r = ritz_values(&swap(), &tol).unwrap();
        assert!(r.distance(&ritz(&[&[0.0], &[-1.0, 1.0]])) < 1e-14);
        assert!((r.level(2)[0] - c(-1.0)).norm() < 1e-14, "canonical order");
        let r = ritz_values(&ComplexMatrix::identity(2), &tol).unwrap();
        assert!(r.distance(&ritz(&[&[1.0], &[1.0, 1.0]])) < 1e-14);
        let tri = ComplexMatrix::from_real_rows(&[&[1.0, 1.0, 0.0], &[0.0, 2.0, 1.0], &[0.0, 0.0, 3.0]])
            .unwrap();
        let r = ritz_values(&tri, &tol).unwrap();
        assert!(r.distance(&ritz(&[&[1.0], &[1.0, 2.0], &[1.0, 2.0, 3.0]])) < 1e-12);
    }

    #[test]
    fn ritz_data_shape_checked() {
        assert!(RitzData::new(vec![]).is_err());
        assert!(RitzData::new(vec![vec![c(0.0)], vec![c(1.0)]]).is_err());
    }

    #[test]
    fn genericity_examples() {
        let tol = Tolerances::default();
        let rep = genericity_report(&ritz(&[&[0.0], &[-1.0, 1.0]]), &tol);
        assert!(rep.generic && rep.first_failure().is_none());
        let rep = genericity_report(&ritz(&[&[1.0], &[1.0, 1.0]]), &tol);
        assert!(!rep.generic);
        assert_eq!(rep.g2, vec![false]);
        assert_eq!(rep.first_failure(), Some(Condition::G2(1)));
        let rep = genericity_report(&ritz(&[&[0.0], &[1.0, 1.0]]), &tol);
        assert_eq!(rep.g1, vec![true, false]);
        assert_eq!(rep.first_failure(), Some(Condition::G1(2)));
    }

    #[test]
    fn grey_zone_flagged() {
        let tol = Tolerances::default();
        let rep = genericity_report(&ritz(&[&[0.0], &[-1.0, 1.0 + 0.0], &[-1.0 + 1e-6, 3.0, 2.0]]), &tol);
        assert!(rep.generic);
        assert!(rep.ill_conditioned);
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(diagonal_from_ritz(&ritz(&[&[0.0], &[-1.0, 1.0]])), vec![c(0.0), c(0.0)]);
        assert_eq!(diagonal_from_ritz(&ritz(&[&[2.5]])), vec![c(2.5)]);
        assert_eq!(
            diagonal_from_ritz(&ritz(&[&[1.0], &[1.0, 2.0], &[1.0, 2.0, 3.0]])),
            vec![c(1.0), c(2.0), c(3.0)]
        );
    }

    #[test]
    fn hessenberg_examples() {
        let y = hessenberg_representative(&ritz(&[&[0.0], &[-1.0, 1.0]]));
        assert_eq!(y, swap());
        let y = hessenberg_representative(&ritz(&[&[0.0], &[0.0, 0.0], &[0.0, 0.0, 0.0]]));
        let mut expected = ComplexMatrix::zeros(3, 3);
        expected[(1, 0)] = c(1.0);
        expected[(2, 1)] = c(1.0);
        assert_eq!(y, expected);
        let r = ritz(&[&[1.0], &[1.0, 2.0], &[1.0, 2.0, 3.0]]);
        let y = hessenberg_representative(&r);
        assert!(is_unit_upper_hessenberg(&y));
        assert_eq!(y.diag(), vec![c(1.0), c(2.0), c(3.0)]);
        let back = ritz_values(&y, &Tolerances::default()).unwrap();
        assert!(back.distance(&r) < 1e-10);
    }

    #[test]
    fn strong_regularity_examples() {
        let tol = Tolerances::default();
        assert!(strong_regularity_check(&swap(), &tol).unwrap());
        assert!(!strong_regularity_check(&ComplexMatrix::zeros(2, 2), &tol).unwrap());
        let y = hessenberg_representative(&ritz(&[&[0.0], &[0.0, 0.0], &[0.0, 0.0, 0.0]]));
        assert!(strong_regularity_check(&y, &tol).unwrap());
    }

    #[test]
    fn n2_genericity_matches_polynomial_criteria() {
        let tol = Tolerances::default();
        let cases: [[f64; 4]; 4] = [
            [0.0, 1.0, 1.0, 0.0],
            [1.0, 0.0, 3.0, 2.0],
            [1.0, 1.0, -1.0, 3.0],
            [2.0, 1.0, 1.0, 0.5],
        ];
        for e in cases {
            let x = ComplexMatrix::from_real_rows(&[&e[0..2], &e[2..4]]).unwrap();
            let r = ritz_values(&x, &tol).unwrap();
            let offdiag = e[1] * e[2];
            let disc = (e[0] - e[3]).powi(2) + 4.0 * offdiag;
            let expect = offdiag != 0.0 && disc != 0.0;
            assert_eq!(genericity_report(&r, &tol).generic, expect, "{e:?}");
        }
    }
}
