mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use ritz_fibre::coords::s_coordinates;
use ritz_fibre::fiber::{ritz_values, strong_regularity_check};
use ritz_fibre::gzflow::{
    centralizer_basis, eigen_flow, gz_flow, gz_generator, gz_vector_field, level_flow, level_to_slot,
    poisson_bracket, slot_to_level, FlowParam,
};
use ritz_fibre::numcore::numeric_rank;
use ritz_fibre::{ComplexMatrix, Tolerances, C64};
use std::f64::consts::{PI, TAU};

fn config() -> ProptestConfig {
    proptest_config(48)
}

fn random_time<R: Rng>(rng: &mut R) -> C64 {
    C64::from_polar(2.0 * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn flows_preserve_ritz_values(seed in any::<u64>(), n in 2usize..=6) {
        let tol = Tolerances::default();
        let mut rng = rng(seed);
        let (x, r) = generic_matrix(&mut rng, n, &tol);
        let m = rng.gen_range(1..n);
        let k = rng.gen_range(1..=m);
        let y = gz_flow(&x, FlowParam::new(m, k, random_time(&mut rng))).unwrap();
        prop_assert!(ritz_values(&y, &tol).unwrap().distance(&r) <= 1e-7 * r.scale());
        let j = rng.gen_range(1..=n * (n - 1) / 2);
        let y = eigen_flow(&x, j, random_time(&mut rng), &tol).unwrap();
        prop_assert!(ritz_values(&y, &tol).unwrap().distance(&r) <= 1e-7 * r.scale());
        let qs: Vec<C64> = (0..m).map(|_| random_time(&mut rng)).collect();
        let y = level_flow(&x, m, &qs, &tol).unwrap();
        prop_assert!(ritz_values(&y, &tol).unwrap().distance(&r) <= 1e-7 * r.scale());
    }

    #[test]
    fn gz_flow_group_law(seed in any::<u64>(), n in 2usize..=6) {
        let tol = Tolerances::default();
        let mut rng = rng(seed);
        let (x, _) = generic_matrix(&mut rng, n, &tol);
        let m = rng.gen_range(1..n);
        let k = rng.gen_range(1..=m);
        let (s, t) = (random_time(&mut rng), random_time(&mut rng));
        let direct = gz_flow(&x, FlowParam::new(m, k, s + t)).unwrap();
        let y = gz_flow(&x, FlowParam::new(m, k, s)).unwrap();
        let twice = gz_flow(&y, FlowParam::new(m, k, t)).unwrap();
        prop_assert!(mat_diff(&twice, &direct) <= 1e-8 * direct.max_abs());
    }

    #[test]
    fn eigen_flow_shifts_one_slot(seed in any::<u64>(), n in 2usize..=6) {
        let tol = Tolerances::default();
        let mut rng = rng(seed);
        let (x, _) = generic_matrix(&mut rng, n, &tol);
        let j = rng.gen_range(1..=n * (n - 1) / 2);
        let q = random_time(&mut rng);
        let before = s_coordinates(&x, &tol).unwrap();
        let after = s_coordinates(&eigen_flow(&x, j, q, &tol).unwrap(), &tol).unwrap();
        for (idx, (a, b)) in after.iter().zip(&before).enumerate() {
            let want = if idx + 1 == j { b * (-q).exp() } else { *b };
            prop_assert!((a - want).norm() <= 1e-7 * want.norm());
        }
    }

    #[test]
    fn eigen_flow_has_period_two_pi_i(seed in any::<u64>(), n in 2usize..=6) {
        let tol = Tolerances::default();
        let mut rng = rng(seed);
        let (x, _) = generic_matrix(&mut rng, n, &tol);
        let j = rng.gen_range(1..=n * (n - 1) / 2);
        let y = eigen_flow(&x, j, C64::new(0.0, 2.0 * PI), &tol).unwrap();
        prop_assert!(mat_diff(&y, &x) <= 1e-7 * x.max_abs());
    }

    #[test]
    fn vector_field_is_flow_derivative(seed in any::<u64>(), n in 2usize..=6) {
        let tol = Tolerances::default();
        let mut rng = rng(seed);
        let (x, _) = generic_matrix(&mut rng, n, &tol);
        let m = rng.gen_range(1..n);
        let k = rng.gen_range(1..=m);
        let h = 1e-6;
        let plus = gz_flow(&x, FlowParam::new(m, k, C64::new(h, 0.0))).unwrap();
        let minus = gz_flow(&x, FlowParam::new(m, k, C64::new(-h, 0.0))).unwrap();
        let diff = (&plus - &minus).scale(C64::new(0.5 / h, 0.0));
        let field = gz_vector_field(&x, m, k).unwrap();
        prop_assert!(mat_diff(&diff, &field) <= 1e-5 * field.max_abs());
    }

    #[test]
    fn strongly_regular_points_have_independent_fields(seed in any::<u64>(), n in 2usize..=6) {
        let tol = Tolerances::default();
        let mut rng = rng(seed);
        let y = random_unit_hessenberg(&mut rng, n);
        prop_assert!(strong_regularity_check(&y, &tol).unwrap());
        let fields: Vec<Vec<C64>> = (1..n)
            .flat_map(|m| (1..=m).map(move |k| (m, k)))
            .map(|(m, k)| gz_vector_field(&y, m, k).unwrap().flatten())
            .collect();
        let count = fields.len();
        prop_assert_eq!(count, n * (n - 1) / 2);
        prop_assert_eq!(numeric_rank(&ComplexMatrix::from_rows(&fields).unwrap(), &tol), count);
    }

    #[test]
    fn level_flow_composes_eigen_flows(seed in any::<u64>(), n in 2usize..=5) {
        let tol = Tolerances::default();
        let mut rng = rng(seed);
        let (x, _) = generic_matrix(&mut rng, n, &tol);
        let m = rng.gen_range(1..n);
        let qs: Vec<C64> = (0..m).map(|_| random_time(&mut rng)).collect();
        let together = level_flow(&x, m, &qs, &tol).unwrap();
        let mut y = x.clone();
        for (l, q) in qs.iter().enumerate() {
            y = eigen_flow(&y, level_to_slot(m, l + 1), *q, &tol).unwrap();
        }
        prop_assert!(mat_diff(&y, &together) <= 1e-7 * together.max_abs());
    }

    #[test]
    fn centralizer_basis_commutes_with_leading_block(seed in any::<u64>(), n in 2usize..=5) {
        let tol = Tolerances::default();
        let mut rng = rng(seed);
        let (x, _) = generic_matrix(&mut rng, n, &tol);
        let m = rng.gen_range(1..n);
        let basis = centralizer_basis(&x, m, &tol).unwrap();
        prop_assert_eq!(basis.len(), m);
        let xm = x.block(m, m);
        for g in &basis {
            prop_assert!(g.block(m, m).commutator(&xm).max_abs() <= 1e-10 * xm.max_abs().powi(m as i32).max(1.0));
        }
    }

    #[test]
    fn slot_indexing_is_bijective(n in 2usize..=10) {
        let mut j = 0;
        for m in 1..n {
            for l in 1..=m {
                j += 1;
                prop_assert_eq!(level_to_slot(m, l), j);
                prop_assert_eq!(slot_to_level(j, n).unwrap(), (m, l));
            }
        }
    }
}

#[test]
fn generators_commute_up_to_n_4() {
    for n in [2usize, 3, 4] {
        let gens: Vec<_> = (1..=n)
            .flat_map(|m| (1..=m).map(move |k| (m, k)))
            .map(|(m, k)| gz_generator(n, m, k).unwrap())
            .collect();
        for a in &gens {
            for b in &gens {
                assert!(poisson_bracket(a, b).is_zero());
            }
        }
    }
}

#[test]
fn generators_match_matrix_traces() {
    let tol = Tolerances::default();
    let mut rng = rng(77);
    let (x, _) = generic_matrix(&mut rng, 4, &tol);
    for m in 1..=4 {
        for k in 1..=m {
            let p = gz_generator(4, m, k).unwrap();
            let want = x.block(m, m).powi(k).trace();
            let got = p.evaluate(&x).unwrap();
            assert!((got - want).norm() <= 1e-12 * want.norm().max(1.0), "m={m} k={k}");
        }
    }
}
