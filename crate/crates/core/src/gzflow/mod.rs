//! Gelfand-Zeitlin flows on generic fibres.
//!
//! The Hamiltonian flow of `tr(x_m^k)` is conjugation by
//! `exp(−q·k·x_m^{k−1}) ⊕ I`. The per-eigenvalue flows act through a
//! diagonalizer `g_m` of `x_m` and rescale exactly one coordinate slot.
//!
//! Sign convention: [`eigen_flow`] with time `q` multiplies the slot by
//! `e^{−q}`, so the conjugating block is `g_m·diag(…, e^{q}, …)·g_m^{-1}`.

pub mod poisson;

use num_traits::{One, Zero};

use crate::coords::diagonalizer;
use crate::error::{Error, Result};
use crate::fiber::{genericity_report, ritz_values};
use crate::numcore::{commutant_dimension, expm::expm, lu::inverse, ComplexMatrix, Tolerances, C64};

pub use poisson::{gz_generator, poisson_bracket, SparsePoly};

/// Level `m`, power `k` and complex time `q` of a `tr(x_m^k)` flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowParam {
    pub m: usize,
    pub k: usize,
    pub q: C64,
}

impl FlowParam {
    pub fn new(m: usize, k: usize, q: C64) -> Self {
        FlowParam { m, k, q }
    }

    fn check(&self, n: usize) -> Result<()> {
        if !(1 <= self.k && self.k <= self.m && self.m < n) {
            return Err(Error::arg(format!(
                "flow needs 1 ≤ k ≤ m ≤ n−1, got m={}, k={}, n={n}",
                self.m, self.k
            )));
        }
        if !self.q.is_finite() {
            return Err(Error::arg("non-finite flow time"));
        }
        Ok(())
    }
}

/// Coordinate slot `j = C(m,2) + l` as `(m, l)`.
pub fn slot_to_level(j: usize, n: usize) -> Result<(usize, usize)> {
    let total = n * (n - 1) / 2;
    if j == 0 || j > total {
        return Err(Error::arg(format!("slot {j} outside 1..={total}")));
    }
    let mut m = 1;
    while m * (m + 1) / 2 < j {
        m += 1;
    }
    Ok((m, j - m * (m - 1) / 2))
}

pub fn level_to_slot(m: usize, l: usize) -> usize {
    m * (m - 1) / 2 + l
}

/// `(g ⊕ I)·x·(g^{-1} ⊕ I)` for `g` commuting with `x_m`: the leading block
/// is left untouched and only the border blocks are multiplied.
fn conjugate_commuting(x: &ComplexMatrix, g: &ComplexMatrix, g_inv: &ComplexMatrix) -> ComplexMatrix {
    let n = x.rows();
    let m = g.rows();
    let mut y = x.clone();
    for j in m..n {
        for i in 0..m {
            y[(i, j)] = (0..m).map(|k| g[(i, k)] * x[(k, j)]).sum();
        }
    }
    for i in m..n {
        for j in 0..m {
            y[(i, j)] = (0..m).map(|k| x[(i, k)] * g_inv[(k, j)]).sum();
        }
    }
    y
}

/// `Ad(exp(−q·k·x_m^{k−1}) ⊕ I)·x`.
pub fn gz_flow(x: &ComplexMatrix, p: FlowParam) -> Result<ComplexMatrix> {
    let n = x.order()?;
    p.check(n)?;
    let a = x.block(p.m, p.m).powi(p.k - 1).scale(p.q * p.k as f64);
    let g = expm(&a.scale(C64::new(-1.0, 0.0)))?;
    let g_inv = expm(&a)?;
    finite(conjugate_commuting(x, &g, &g_inv))
}

fn finite(y: ComplexMatrix) -> Result<ComplexMatrix> {
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::numerical("flowed matrix overflows the floating-point range"))
    }
}

/// `[x, k·(x_m^{k−1} ⊕ 0)]`, the derivative of [`gz_flow`] at `q = 0`.
pub fn gz_vector_field(x: &ComplexMatrix, m: usize, k: usize) -> Result<ComplexMatrix> {
    let n = x.order()?;
    FlowParam::new(m, k, C64::zero()).check(n)?;
    let a = x.block(m, m).powi(k - 1).scale(C64::new(k as f64, 0.0)).embed(n, C64::zero());
    Ok(x.commutator(&a))
}

/// Flow of slot `j` for time `q`; the slot's coordinate scales by `e^{−q}`,
/// every other slot and every Ritz level is unchanged. Level `m` uses the
/// canonical eigenvalue order.
pub fn eigen_flow(x: &ComplexMatrix, j: usize, q: C64, tol: &Tolerances) -> Result<ComplexMatrix> {
    let n = x.order()?;
    let (m, l) = slot_to_level(j, n)?;
    let mut qs = vec![C64::zero(); m];
    qs[l - 1] = q;
    level_flow(x, m, &qs, tol)
}

/// All slots of level `m` at once: slot `l` scales by `e^{−q_l}`.
pub fn level_flow(x: &ComplexMatrix, m: usize, qs: &[C64], tol: &Tolerances) -> Result<ComplexMatrix> {
    let n = x.order()?;
    if m == 0 || m >= n {
        return Err(Error::arg(format!("level {m} outside 1..={}", n - 1)));
    }
    if qs.len() != m {
        return Err(Error::arg(format!("level {m} needs {m} times, got {}", qs.len())));
    }
    if qs.iter().any(|q| !q.is_finite()) {
        return Err(Error::arg("non-finite flow time"));
    }
    let ritz = ritz_values(x, tol)?;
    genericity_report(&ritz, tol).ensure_generic()?;
    let g = diagonalizer(x, ritz.level(m), m, tol)?;
    let g_inv = inverse(&g)?;
    let scaled = |q_sign: f64| -> ComplexMatrix {
        let mut gd = g.clone();
        for (col, q) in qs.iter().enumerate() {
            let f = (q * q_sign).exp();
            for i in 0..m {
                gd[(i, col)] *= f;
            }
        }
        &gd * &g_inv
    };
    finite(conjugate_commuting(x, &scaled(1.0), &scaled(-1.0)))
}

/// `(I, x_m, …, x_m^{m−1})`, each embedded as `g ⊕ I_{n−m}`; requires `x_m`
/// regular (commutant of dimension `m`).
pub fn centralizer_basis(x: &ComplexMatrix, m: usize, tol: &Tolerances) -> Result<Vec<ComplexMatrix>> {
    let n = x.order()?;
    if m == 0 || m > n {
        return Err(Error::arg(format!("level {m} outside 1..={n}")));
    }
    let xm = x.block(m, m);
    let nullity = commutant_dimension(&xm, tol)?;
    if nullity != m {
        return Err(Error::NotRegular { order: m, nullity });
    }
    let mut out = Vec::with_capacity(m);
    let mut power = ComplexMatrix::identity(m);
    for _ in 0..m {
        out.push(power.embed(n, C64::one()));
        power = &power * &xm;
    }
    Ok(out)
}
