#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use ritz_fibre::fiber::{genericity_report, ritz_values, RitzData};
use ritz_fibre::numcore::svd::singular_values;
use ritz_fibre::{ComplexMatrix, MonicPoly, Tolerances, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian (unit variance).
pub fn cgauss<R: Rng>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn cvec<R: Rng>(rng: &mut R, len: usize) -> Vec<C64> {
    (0..len).map(|_| cgauss(rng)).collect()
}

/// Complex Gaussian entries scaled by `1/√n`, so the spectrum fills
/// roughly the unit disc.
pub fn gaussian_matrix<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let s = 1.0 / (n as f64).sqrt();
    let data = (0..n * n).map(|_| cgauss(rng) * s).collect();
    ComplexMatrix::from_vec(n, n, data).unwrap()
}

/// Rejection-samples a Gaussian matrix whose Ritz data are generic.
pub fn generic_matrix<R: Rng>(rng: &mut R, n: usize, tol: &Tolerances) -> (ComplexMatrix, RitzData) {
    loop {
        let x = gaussian_matrix(rng, n);
        let r = ritz_values(&x, tol).unwrap();
        if genericity_report(&r, tol).generic {
            return (x, r);
        }
    }
}

/// Independent complex Gaussian values at every level, rejection-sampled
/// to be generic.
pub fn generic_ritz<R: Rng>(rng: &mut R, n: usize, tol: &Tolerances) -> RitzData {
    loop {
        let levels = (1..=n).map(|m| cvec(rng, m)).collect();
        let r = RitzData::new(levels).unwrap();
        if genericity_report(&r, tol).generic {
            return r;
        }
    }
}

/// Nonzero coordinates with modulus in `[1/2, 2]` and uniform phase.
pub fn random_b<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<C64>> {
    (1..n)
        .map(|m| {
            (0..m)
                .map(|_| {
                    let r = 2f64.powf(rng.gen_range(-1.0..1.0));
                    C64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
                })
                .collect()
        })
        .collect()
}

pub fn random_unit_hessenberg<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut y = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if j >= i {
                y[(i, j)] = cgauss(rng);
            } else if i == j + 1 {
                y[(i, j)] = C64::new(1.0, 0.0);
            }
        }
    }
    y
}

pub fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max|a − b| / max|b|`.
pub fn rel_diff(a: &[C64], b: &[C64]) -> f64 {
    let s = max_abs(b);
    max_abs_diff(a, b) / if s == 0.0 { 1.0 } else { s }
}

pub fn mat_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).max_abs()
}

/// Computed Ritz data with each level permuted to line up, by nearest
/// match, with the order in `reference`.
pub fn align_levels(reference: &RitzData, computed: &RitzData) -> RitzData {
    let levels = reference
        .levels()
        .iter()
        .zip(computed.levels())
        .map(|(want, got)| {
            let mut pool = got.clone();
            want.iter()
                .map(|w| {
                    let k = (0..pool.len())
                        .min_by(|&a, &b| (pool[a] - w).norm().total_cmp(&(pool[b] - w).norm()))
                        .unwrap();
                    pool.swap_remove(k)
                })
                .collect()
        })
        .collect();
    RitzData::new(levels).unwrap()
}

/// Rank of a Markov-parameter Hankel matrix of a completed system, with
/// singular values measured against the size the parameters can reach,
/// `max(1, |target|)·max(1, ‖B‖)^{2m−2}`, not against the matrix itself.
pub fn hankel_rank(h: &ComplexMatrix, b: &ComplexMatrix, target: &MonicPoly, tol: &Tolerances) -> usize {
    let m = b.rows();
    let scale = max_abs(&target.coeffs).max(1.0) * b.frobenius_norm().max(1.0).powi(2 * m as i32 - 2);
    singular_values(h).iter().filter(|&&s| s > tol.rank_rel * scale).count()
}

/// Property-test settings with a fixed seed, so runs are reproducible.
pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x6b77),
        failure_persistence: None,
        ..Default::default()
    }
}
