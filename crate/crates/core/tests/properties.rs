//! Randomized invariants: exact round trips on dyadic grids, covariance
//! under relabeling and rescaling, dual involution, algebraic identities,
//! and wall-scan symmetries.

use std::collections::BTreeMap;

use proptest::prelude::*;

use cmvar_core::algebras::{oct_mul, quat_mul, Octonion, Quaternion};
use cmvar_core::distances::{
    cayley_from_configuration, cayley_from_gram, gram_from_cayley, realizability, CayleyVector,
    Configuration,
};
use cmvar_core::lorentz::{cone_classify, lorentz_l};
use cmvar_core::polygons::{standardize, wall_report, EdgeLengthVector};
use cmvar_core::rigidity::is_laman;
use cmvar_core::varieties::{dual, Family, VarietyId};

fn dyadic() -> impl Strategy<Value = f64> {
    (1u32..=512).prop_map(|k| f64::from(k) / 16.0)
}

fn dyadic_coord() -> impl Strategy<Value = f64> {
    (-256i32..=256).prop_map(|k| f64::from(k) / 16.0)
}

fn cayley_entries() -> impl Strategy<Value = (usize, Vec<f64>)> {
    (2usize..7).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(dyadic(), n * (n - 1) / 2),
        )
    })
}

fn dyadic_configuration() -> impl Strategy<Value = (usize, usize, Vec<Vec<f64>>)> {
    (2usize..7, 1usize..4).prop_flat_map(|(n, d)| {
        (
            Just(n),
            Just(d),
            proptest::collection::vec(proptest::collection::vec(dyadic_coord(), d), n),
        )
    })
}

proptest! {
    #[test]
    fn gram_round_trip_is_exact_on_the_dyadic_grid((n, values) in cayley_entries()) {
        let s = CayleyVector::from_ordered(n, &values).unwrap();
        let gram = gram_from_cayley(&s);
        let back = cayley_from_gram(&gram).unwrap();
        prop_assert_eq!(s.entries(), back.entries());
    }

    #[test]
    fn cayley_extraction_commutes_with_relabeling(
        (n, d, points) in dyadic_configuration(),
        seed in any::<u64>(),
    ) {
        let cfg = match Configuration::new(d, points) {
            Ok(cfg) => cfg,
            Err(_) => return Ok(()),
        };
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let direct = cayley_from_configuration(&cfg.relabel(&perm).unwrap()).unwrap();
        let routed = cayley_from_configuration(&cfg).unwrap().relabel(&perm).unwrap();
        prop_assert_eq!(direct.entries(), routed.entries());
    }

    #[test]
    fn realizability_is_invariant_under_relabeling_and_dyadic_scaling(
        (n, values) in cayley_entries(),
        perm_seed in any::<u64>(),
        exponent in -6i32..=6,
    ) {
        let s = CayleyVector::from_ordered(n, &values).unwrap();
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
        let base = realizability(&s, 1e-9);
        let relabeled = realizability(&s.relabel(&perm).unwrap(), 1e-9);
        prop_assert_eq!(base.realizable, relabeled.realizable);
        prop_assert_eq!(base.min_rank, relabeled.min_rank);
        let scaled = realizability(&s.scale(2f64.powi(exponent)).unwrap(), 1e-9);
        prop_assert_eq!(base.realizable, scaled.realizable);
        prop_assert_eq!(base.min_rank, scaled.min_rank);
    }

    #[test]
    fn cayley_serde_round_trips_bitwise((n, values) in cayley_entries()) {
        let s = CayleyVector::from_ordered(n, &values).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: CayleyVector = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(s, back);
    }

    #[test]
    fn dual_is_an_involution(
        family in prop_oneof![Just(Family::R), Just(Family::C), Just(Family::H)],
        n in 3usize..=12,
        d_seed in any::<u64>(),
    ) {
        let d = 1 + (d_seed as usize) % (n - 2);
        let v = VarietyId::new(family, d, n).unwrap();
        let w = dual(v).unwrap();
        prop_assert_eq!(w.d, n - 1 - d);
        prop_assert_eq!(dual(w).unwrap(), v);
    }

    #[test]
    fn conjugation_reverses_products(
        x in proptest::array::uniform4(-4.0..4.0f64),
        y in proptest::array::uniform4(-4.0..4.0f64),
        u in proptest::array::uniform8(-4.0..4.0f64),
        v in proptest::array::uniform8(-4.0..4.0f64),
    ) {
        let qx = Quaternion::new(x[0], x[1], x[2], x[3]);
        let qy = Quaternion::new(y[0], y[1], y[2], y[3]);
        let lhs = quat_mul(&qx, &qy).conj();
        let rhs = quat_mul(&qy.conj(), &qx.conj());
        let scale = (qx.norm() * qy.norm()).max(1.0);
        prop_assert!((&lhs - &rhs).norm() <= 1e-12 * scale);

        let ou = Octonion::new(
            Quaternion::new(u[0], u[1], u[2], u[3]),
            Quaternion::new(u[4], u[5], u[6], u[7]),
        );
        let ov = Octonion::new(
            Quaternion::new(v[0], v[1], v[2], v[3]),
            Quaternion::new(v[4], v[5], v[6], v[7]),
        );
        let lhs = oct_mul(&ou, &ov).conj();
        let rhs = oct_mul(&ov.conj(), &ou.conj());
        let scale = (ou.norm() * ov.norm()).max(1.0);
        prop_assert!((&lhs - &rhs).norm() <= 1e-12 * scale);
    }

    #[test]
    fn lorentz_form_is_symmetric_and_bilinear(
        m in 2usize..5,
        seed in any::<u64>(),
        alpha in -2.0..2.0f64,
        beta in -2.0..2.0f64,
    ) {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let sym = |rng: &mut rand_chacha::ChaCha8Rng| {
            let raw = nalgebra::DMatrix::from_fn(m, m, |_, _| rng.gen_range(-1.0..1.0f64));
            cmvar_core::distances::GramForm::from_matrix((&raw + raw.transpose()) * 0.5).unwrap()
        };
        let a = sym(&mut rng);
        let b = sym(&mut rng);
        let c = sym(&mut rng);
        let lab = lorentz_l(&a, &b).unwrap();
        let lba = lorentz_l(&b, &a).unwrap();
        prop_assert!((lab - lba).abs() <= 1e-12 * lab.abs().max(1.0));
        let combo = cmvar_core::distances::GramForm::from_matrix(
            a.matrix() * alpha + b.matrix() * beta,
        )
        .unwrap();
        let lhs = lorentz_l(&combo, &c).unwrap();
        let rhs = alpha * lorentz_l(&a, &c).unwrap() + beta * lorentz_l(&b, &c).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0));
        let report = cone_classify(&a, 1e-9);
        prop_assert!((report.value - lorentz_l(&a, &a).unwrap()).abs() <= 1e-12 * report.value.abs().max(1.0));
    }

    #[test]
    fn laman_verdict_is_relabeling_invariant(
        n in 4usize..=6,
        edge_seed in any::<u64>(),
        perm_seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut all_edges = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                all_edges.push((i, j));
            }
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(edge_seed);
        all_edges.shuffle(&mut rng);
        let edges: Vec<(usize, usize)> = all_edges[..2 * n - 3].to_vec();
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
        let mapped: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (perm[i - 1], perm[j - 1]);
                if a < b { (a, b) } else { (b, a) }
            })
            .collect();
        let base = is_laman(n, &edges).unwrap();
        let relabeled = is_laman(n, &mapped).unwrap();
        prop_assert_eq!(base.laman, relabeled.laman);
    }

    #[test]
    fn wall_scan_is_invariant_under_permutation_and_global_sign(
        lengths in proptest::collection::vec(0.05..1.0f64, 4..8),
        perm_seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let q = standardize(&EdgeLengthVector::new(lengths).unwrap());
        let base = wall_report(&q, 1e-9).unwrap();
        let mut shuffled = q.lengths().to_vec();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
        let permuted = wall_report(&EdgeLengthVector::new(shuffled).unwrap(), 1e-9).unwrap();
        prop_assert_eq!(base.on_wall, permuted.on_wall);
        prop_assert_eq!(base.witnesses.len(), permuted.witnesses.len());
        prop_assert!(
            (base.distance_to_nearest_wall - permuted.distance_to_nearest_wall).abs() <= 1e-12
        );
        for eps in &base.witnesses {
            prop_assert_eq!(eps[0], 1);
            let sum: f64 = eps
                .iter()
                .zip(q.lengths())
                .map(|(&e, &len)| f64::from(e) * len)
                .sum();
            prop_assert!(sum.abs() <= 1e-9);
        }
    }

    #[test]
    fn linkage_spec_serde_round_trips(
        n in 3usize..=6,
        seed in any::<u64>(),
    ) {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut edges = vec![(1, 2)];
        for v in 3..=n {
            let u = rng.gen_range(1..v);
            edges.push((u, v));
        }
        let sigma: BTreeMap<(usize, usize), f64> = edges
            .iter()
            .map(|&e| (e, f64::from(rng.gen_range(1..=64u32)) / 8.0))
            .collect();
        let spec = cmvar_core::rigidity::LinkageSpec::new(n, edges, sigma).unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        let back: cmvar_core::rigidity::LinkageSpec = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(spec, back);
    }
}
