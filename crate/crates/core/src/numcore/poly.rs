use num_traits::{One, Zero};

use super::{eigen, ComplexMatrix, C64};
use crate::error::{Error, Result};

/// General polynomial with coefficients in ascending order
/// (`coeffs[k]` multiplies `λ^k`).
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub coeffs: Vec<C64>,
}

/// Monic polynomial `λ^d + c_{d−1}λ^{d−1} + … + c_0`; only the lower
/// coefficients are stored and the degree is `coeffs.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPoly {
    pub coeffs: Vec<C64>,
}

impl Poly {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// Degree after discarding exactly-zero leading coefficients; `None`
    /// for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::zero(), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![C64::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly { coeffs: out }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, k: usize| p.coeffs.get(k).copied().unwrap_or_else(C64::zero);
        Poly {
            coeffs: (0..len).map(|k| get(self, k) - get(other, k)).collect(),
        }
    }

    /// Drops coefficients of degree `>= len`.
    pub fn truncate(mut self, len: usize) -> Poly {
        self.coeffs.truncate(len);
        self
    }
}

impl MonicPoly {
    pub fn new(coeffs: Vec<C64>) -> Self {
        MonicPoly { coeffs }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        MonicPoly { coeffs: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Full coefficient list including the leading 1.
    pub fn to_poly(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.push(C64::one());
        Poly { coeffs: c }
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::one(), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Poly {
        self.to_poly().derivative()
    }

    /// `(λ − root)·self`.
    pub fn mul_linear(&self, root: C64) -> MonicPoly {
        let d = self.degree();
        let full = self.to_poly().coeffs;
        let mut out = vec![C64::zero(); d + 1];
        // coefficient k of λ·p − root·p, for k = 0..=d (leading stays 1)
        for (k, slot) in out.iter_mut().enumerate() {
            let lower = if k == 0 { C64::zero() } else { full[k - 1] };
            *slot = lower - root * full[k];
        }
        MonicPoly { coeffs: out }
    }
}

/// Monic polynomial with the given roots, expanded one linear factor at a
/// time.
pub fn charpoly_from_eigs(eigs: &[C64]) -> MonicPoly {
    eigs.iter()
        .fold(MonicPoly::one(), |p, &mu| p.mul_linear(mu))
}

pub fn poly_eval(p: &MonicPoly, z: C64) -> C64 {
    p.eval(z)
}

pub fn poly_derivative(p: &MonicPoly) -> Poly {
    p.derivative()
}

/// Coefficients `a_k` with `target = Σ a_k·basis[k]`, where `basis[k]` has
/// degree exactly `k`. Solved top-down since the basis is triangular.
pub fn poly_quotient_in_basis(target: &Poly, basis: &[MonicPoly]) -> Result<Vec<C64>> {
    for (k, b) in basis.iter().enumerate() {
        if b.degree() != k {
            return Err(Error::arg(format!(
                "basis element {k} has degree {} (expected {k})",
                b.degree()
            )));
        }
    }
    let m = basis.len();
    let mut rem = target.coeffs.clone();
    if let Some(d) = target.degree() {
        if d >= m {
            return Err(Error::arg(format!(
                "target degree {d} too high for a basis of {m} polynomials"
            )));
        }
    }
    rem.resize(m, C64::zero());
    let mut out = vec![C64::zero(); m];
    for k in (0..m).rev() {
        let a = rem[k];
        out[k] = a;
        if a.is_zero() {
            continue;
        }
        for (i, c) in basis[k].coeffs.iter().enumerate() {
            rem[i] -= a * c;
        }
        rem[k] = C64::zero();
    }
    Ok(out)
}

/// Characteristic polynomial `det(λI − a)` through a unitary Hessenberg
/// reduction and the Hessenberg determinant recurrence.
pub fn charpoly_of_matrix(a: &ComplexMatrix) -> Result<MonicPoly> {
    let n = a.order()?;
    let h = eigen::hessenberg(a)?;
    // ps[j] = charpoly of the leading j x j block of h.
    let mut ps: Vec<Poly> = vec![Poly::new(vec![C64::one()])];
    for j in 0..n {
        let prev = &ps[j];
        let mut next = prev
            .mul(&Poly::new(vec![-h[(j, j)], C64::one()]));
        let mut prod = C64::one();
        for i in (0..j).rev() {
            prod *= h[(i + 1, i)];
            let coef = h[(i, j)] * prod;
            if coef.is_zero() {
                continue;
            }
            let scaled = Poly::new(ps[i].coeffs.iter().map(|c| c * coef).collect());
            next = next.sub(&scaled);
        }
        ps.push(next);
    }
    let mut c = ps.pop().expect("nonempty").coeffs;
    c.truncate(n);
    Ok(MonicPoly { coeffs: c })
}

/// Division with remainder: `num = q·den + r`, `deg r < deg den`.
pub fn poly_divmod(num: &Poly, den: &MonicPoly) -> (Poly, Poly) {
    let d = den.degree();
    let mut rem = num.coeffs.clone();
    if rem.len() <= d {
        return (Poly::zero(), Poly::new(rem));
    }
    let qlen = rem.len() - d;
    let mut q = vec![C64::zero(); qlen];
    for k in (0..qlen).rev() {
        let a = rem[k + d];
        q[k] = a;
        rem[k + d] = C64::zero();
        for (i, c) in den.coeffs.iter().enumerate() {
            rem[k + i] -= a * c;
        }
    }
    rem.truncate(d);
    (Poly::new(q), Poly::new(rem))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(charpoly_from_eigs(&[c(1.0), c(-1.0)]).coeffs, vec![c(-1.0), c(0.0)]);
        assert_eq!(charpoly_from_eigs(&[]).degree(), 0);
        assert_eq!(
            charpoly_from_eigs(&[c(1.0), c(2.0), c(3.0)]).coeffs,
            vec![c(-6.0), c(11.0), c(-6.0)]
        );
    }

    #[test]
    fn eval_and_derivative() {
        let p = MonicPoly::new(vec![c(-1.0), c(0.0)]);
        assert_eq!(poly_eval(&p, c(0.0)), c(-1.0));
        assert_eq!(poly_derivative(&p).coeffs, vec![c(0.0), c(2.0)]);
    }

    #[test]
    fn basis_expansion() {
        let basis = [MonicPoly::one(), MonicPoly::new(vec![c(0.0)])];
        let a = poly_quotient_in_basis(&Poly::new(vec![c(1.0), c(3.0)]), &basis).unwrap();
        assert_eq!(a, vec![c(1.0), c(3.0)]);
        let too_high = Poly::new(vec![c(0.0), c(0.0), c(1.0)]);
        assert!(poly_quotient_in_basis(&too_high, &basis).is_err());
        let bad_basis = [MonicPoly::new(vec![c(0.0)])];
        assert!(poly_quotient_in_basis(&Poly::new(vec![c(1.0)]), &bad_basis).is_err());
    }

    #[test]
    fn matrix_charpoly_of_companion() {
        // companion of λ³ − 6λ² + 11λ − 6
        let a = ComplexMatrix::from_real_rows(&[
            &[0.0, 0.0, 6.0],
            &[1.0, 0.0, -11.0],
            &[0.0, 1.0, 6.0],
        ])
        .unwrap();
        let p = charpoly_of_matrix(&a).unwrap();
        for (got, want) in p.coeffs.iter().zip([-6.0, 11.0, -6.0]) {
            assert!((got - c(want)).norm() < 1e-12);
        }
    }

    #[test]
    fn divmod_roundtrip() {
        let num = Poly::new(vec![c(-1.0), c(0.0), c(0.0), c(1.0)]);
        let den = MonicPoly::new(vec![c(1.0), c(0.0)]);
        let (q, r) = poly_divmod(&num, &den);
        let back = q.mul(&den.to_poly()).sub(&r.mul(&Poly::new(vec![c(-1.0)])));
        for k in 0..4 {
            let want = num.coeffs[k];
            let got = back.coeffs.get(k).copied().unwrap_or_default();
            assert!((got - want).norm() < 1e-14);
        }
    }
}
