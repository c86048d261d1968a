//! Dense complex eigenvalues: Householder reduction to upper Hessenberg form
//! followed by single-shift QR iteration with Wilkinson shifts.

use num_traits::Zero;

use super::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Iteration budget per eigenvalue before declaring non-convergence.
pub const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Unitary similarity to upper Hessenberg form.
pub fn hessenberg(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.order()?;
    let mut h = a.clone();
    if n < 3 {
        return Ok(h);
    }
    for k in 0..n - 2 {
        let norm: f64 = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.is_zero() {
            C64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        let mut v: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // Left: rows k+1.., H ← (I − 2vvᴴ)H
        for j in 0..n {
            let s: C64 = v
                .iter()
                .enumerate()
                .map(|(t, vt)| vt.conj() * h[(k + 1 + t, j)])
                .sum();
            for (t, vt) in v.iter().enumerate() {
                h[(k + 1 + t, j)] -= 2.0 * vt * s;
            }
        }
        // Right: columns k+1.., H ← H(I − 2vvᴴ)
        for i in 0..n {
            let s: C64 = v
                .iter()
                .enumerate()
                .map(|(t, vt)| h[(i, k + 1 + t)] * vt)
                .sum();
            for (t, vt) in v.iter().enumerate() {
                h[(i, k + 1 + t)] -= 2.0 * s * vt.conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = C64::zero();
        }
    }
    Ok(h)
}

/// Complex Givens rotation `[[c, s], [−s̄, c]]` mapping `(f, g)` to `(r, 0)`.
fn givens(f: C64, g: C64) -> (f64, C64) {
    let fa = f.norm();
    let ga = g.norm();
    if ga == 0.0 {
        return (1.0, C64::zero());
    }
    if fa == 0.0 {
        return (0.0, g.conj() / ga);
    }
    let r = fa.hypot(ga);
    let c = fa / r;
    let s = (f / fa) * g.conj() / r;
    (c, s)
}

/// Eigenvalue closest to `d` of `[[a, b], [c, d]]`.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let l1 = mid + disc;
    let l2 = mid - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

const BALANCE_SWEEPS: usize = 100;

/// Diagonal similarity by powers of two that roughly equalizes row and
/// column norms (Parlett and Reinsch); eigenvalues are unchanged exactly.
pub fn balance(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.order()?;
    let mut b = a.clone();
    let radix = 2.0f64;
    for _ in 0..BALANCE_SWEEPS {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += b[(j, i)].l1_norm();
                    r += b[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let total = c + r;
            let mut f = 1.0;
            let (mut c2, mut r2) = (c, r);
            while c2 < r2 / radix {
                c2 *= radix;
                r2 /= radix;
                f *= radix;
            }
            while c2 >= r2 * radix {
                c2 /= radix;
                r2 *= radix;
                f /= radix;
            }
            if (c2 + r2) < 0.95 * total {
                converged = false;
                for j in 0..n {
                    b[(i, j)] /= f;
                    b[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
    Ok(b)
}

/// All eigenvalues (with multiplicity) in the order they deflate.
///
/// The iteration runs on `a` scaled by a power of two so its largest entry
/// is near 1; eigenvalues that overflow on the way back are an error.
pub fn eigenvalues_unordered(a: &ComplexMatrix) -> Result<Vec<C64>> {
    let n = a.order()?;
    let top = a.max_abs();
    if top == 0.0 {
        return Ok(vec![C64::zero(); n]);
    }
    let exp = (top.log2().floor() as i32).clamp(-1000, 1000);
    let scaled = a.scale(C64::new(2f64.powi(-exp), 0.0));
    let eigs = eigenvalues_normalized(&scaled)?;
    let back = C64::new(2f64.powi(exp), 0.0);
    let out: Vec<C64> = eigs.iter().map(|z| z * back).collect();
    if out.iter().any(|z| !z.is_finite()) {
        return Err(Error::numerical("eigenvalues overflow the floating-point range"));
    }
    Ok(out)
}

fn eigenvalues_normalized(a: &ComplexMatrix) -> Result<Vec<C64>> {
    let n = a.order()?;
    let mut h = hessenberg(&balance(a)?)?;
    let mut out = vec![C64::zero(); n];
    let anorm = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    loop {
        if hi == 0 {
            out[0] = h[(0, 0)];
            break;
        }
        // Locate the start of the active unreduced block.
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let mut diag = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if diag == 0.0 {
                diag = anorm;
            }
            if sub <= eps * diag {
                h[(l, l - 1)] = C64::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            out[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > MAX_SWEEPS_PER_EIGENVALUE || total > MAX_SWEEPS_PER_EIGENVALUE * n {
            return Err(Error::numerical(format!(
                "QR iteration did not converge after {total} sweeps"
            )));
        }
        let shift = if iter % 11 == 10 {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_sweep(&mut h, l, hi, shift);
    }
    Ok(out)
}

/// One explicit shifted QR step on the active window `l..=hi`.
fn qr_sweep(h: &mut ComplexMatrix, l: usize, hi: usize, shift: C64) {
    for i in l..=hi {
        h[(i, i)] -= shift;
    }
    let mut rots = Vec::with_capacity(hi - l);
    for k in l..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = x * c + s * y;
            h[(k + 1, j)] = -s.conj() * x + y * c;
        }
        h[(k + 1, k)] = C64::zero();
        rots.push((c, s));
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let k = l + idx;
        let last = (k + 2).min(hi);
        for i in l..=last {
            let u = h[(i, k)];
            let v = h[(i, k + 1)];
            h[(i, k)] = u * c + v * s.conj();
            h[(i, k + 1)] = -u * s + v * c;
        }
    }
    for i in l..=hi {
        h[(i, i)] += shift;
    }
}

/// Canonical eigenvalue order: lexicographic on `(re, im)`.
pub fn canonical_cmp(a: &C64, b: &C64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

pub fn sort_canonical(v: &mut [C64]) {
    v.sort_by(canonical_cmp);
}
