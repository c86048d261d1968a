//! Exact polynomials in the coordinate functionals `α_ij` and the linear
//! Poisson bracket `{α_ij, α_kl} = δ_jk α_il − δ_il α_kj`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numcore::{ComplexMatrix, C64};

/// Gaussian rational coefficient.
pub type Coeff = Complex<Rational64>;

/// Polynomial in the `n²` variables `α_ij`. Exponent vectors are indexed by
/// `(i−1)·n + (j−1)`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    n: usize,
    terms: BTreeMap<Vec<u8>, Coeff>,
}

fn int(k: i64) -> Coeff {
    Complex::new(Rational64::from_integer(k), Rational64::zero())
}

impl SparsePoly {
    pub fn zero(n: usize) -> Self {
        SparsePoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Coeff) -> Self {
        let mut p = SparsePoly::zero(n);
        p.add_term(vec![0; n * n], c);
        p
    }

    /// `α_ij` (1-based indices).
    pub fn alpha(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::arg(format!("α_{{{i}{j}}} outside 1..={n}")));
        }
        let mut e = vec![0u8; n * n];
        e[(i - 1) * n + (j - 1)] = 1;
        let mut p = SparsePoly::zero(n);
        p.add_term(e, Coeff::one());
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(exponents, coefficient)` in a fixed order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Coeff)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, e: Vec<u8>, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = *o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_same_n(&self, other: &SparsePoly) {
        assert_eq!(self.n, other.n, "polynomials over different matrix sizes");
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        self.check_same_n(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.scale(int(-1)))
    }

    pub fn scale(&self, s: Coeff) -> SparsePoly {
        let mut out = SparsePoly::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        self.check_same_n(other);
        let mut out = SparsePoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u8> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// `∂/∂α_ij` (1-based).
    pub fn derivative(&self, i: usize, j: usize) -> SparsePoly {
        let v = (i - 1) * self.n + (j - 1);
        let mut out = SparsePoly::zero(self.n);
        for (e, c) in &self.terms {
            if e[v] > 0 {
                let mut d = e.clone();
                d[v] -= 1;
                out.add_term(d, c * int(e[v] as i64));
            }
        }
        out
    }

    /// Value at the matrix `x` (`α_ij ↦ x_ij`).
    pub fn evaluate(&self, x: &ComplexMatrix) -> Result<C64> {
        if x.rows() != self.n || x.cols() != self.n {
            return Err(Error::arg(format!("expected a {0}×{0} matrix", self.n)));
        }
        let flat = x.flatten();
        let mut total = C64::zero();
        for (e, c) in &self.terms {
            let mut t = coeff_to_c64(c);
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= flat[v].powu(k as u32);
                }
            }
            total += t;
        }
        Ok(total)
    }
}

pub fn coeff_to_c64(c: &Coeff) -> C64 {
    let f = |r: &Rational64| r.to_f64().unwrap_or(f64::NAN);
    C64::new(f(&c.re), f(&c.im))
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly({self})")
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.n;
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let coeff = if c.im.is_zero() {
                format!("{}", c.re)
            } else {
                format!("({} + {}i)", c.re, c.im)
            };
            let mut mono = Vec::new();
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let name = format!("a{}{}", v / n + 1, v % n + 1);
                mono.push(if k == 1 { name } else { format!("{name}^{k}") });
            }
            match (c.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{coeff}")?,
                (true, false) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{coeff}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Bracket of two coordinate functionals, indices 0-based.
fn bracket_vars(n: usize, (i, j): (usize, usize), (k, l): (usize, usize)) -> Vec<(usize, i64)> {
    let mut out = Vec::with_capacity(2);
    if j == k {
        out.push((i * n + l, 1));
    }
    if i == l {
        out.push((k * n + j, -1));
    }
    out
}

/// `{f, g} = Σ {α_ij, α_kl} ∂f/∂α_ij ∂g/∂α_kl`, computed exactly.
pub fn poisson_bracket(f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
    f.check_same_n(g);
    let n = f.n;
    let mut out = SparsePoly::zero(n);
    for (e1, c1) in &f.terms {
        for (e2, c2) in &g.terms {
            let base = c1 * c2;
            for (a, &ka) in e1.iter().enumerate().filter(|(_, &k)| k > 0) {
                for (b, &kb) in e2.iter().enumerate().filter(|(_, &k)| k > 0) {
                    let lin = bracket_vars(n, (a / n, a % n), (b / n, b % n));
                    if lin.is_empty() {
                        continue;
                    }
                    let mut mono: Vec<u8> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                    mono[a] -= 1;
                    mono[b] -= 1;
                    let weight = base * int(ka as i64 * kb as i64);
                    for (v, sign) in lin {
                        let mut e = mono.clone();
                        e[v] += 1;
                        out.add_term(e, weight * int(sign));
                    }
                }
            }
        }
    }
    out
}

/// `tr(x_m^k)` as a polynomial in the `α_ij`: the sum over closed index
/// walks `i_1 → i_2 → … → i_k → i_1` in `1..=m`.
pub fn gz_generator(n: usize, m: usize, k: usize) -> Result<SparsePoly> {
    if !(1 <= k && k <= m && m <= n) {
        return Err(Error::arg(format!("need 1 ≤ k ≤ m ≤ n, got n={n}, m={m}, k={k}")));
    }
    let mut out = SparsePoly::zero(n);
    let mut word = vec![0usize; k];
    loop {
        let mut e = vec![0u8; n * n];
        for t in 0..k {
            e[word[t] * n + word[(t + 1) % k]] += 1;
        }
        out.add_term(e, Coeff::one());
        // next word in base m
        let mut pos = 0;
        while pos < k {
            word[pos] += 1;
            if word[pos] < m {
                break;
            }
            word[pos] = 0;
            pos += 1;
        }
        if pos == k {
            break;
        }
    }
    Ok(out)
}
