//! The acceptance gate: one test per release criterion, so a test run
//! prints one pass/fail line for each.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cmvar_core::algebras::{
    associator, associator_witness, oct_herm_det2, oct_herm_det3, oct_mul, pfaffian_rank,
    quat_mul, quat_to_complex_block, sigma_map, HermitianGram, HyperHermitianGram, OctHermitian3,
    Octonion, Quaternion,
};
use cmvar_core::distances::{
    cayley_from_configuration, rank_det_check, rank_det_check_exact, realizability, CayleyVector,
    Configuration,
};
use cmvar_core::linalg;
use cmvar_core::lorentz::{
    lorentz_form_matrix, lorentz_hermitian, lorentz_l, lorentz_quaternionic,
};
use cmvar_core::polygons::{
    collinear_realization, octic_value, standardize, torus_point, wall_report, EdgeLengthVector,
};
use cmvar_core::rigidity::{
    enumerate_realizations, is_laman, is_laman_exhaustive, realization_bound,
    rigidity_jacobian_rank, LinkageSpec, SolverOptions,
};
use cmvar_core::varieties::{
    ambient_dimension, degree, degree_cm2, pfaffian_degree_both, sectional_genus, Family,
    VarietyId,
};

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn random_configuration(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Configuration {
    loop {
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        if let Ok(cfg) = Configuration::new(d, points) {
            return cfg;
        }
    }
}

fn random_quat(rng: &mut ChaCha8Rng) -> Quaternion<f64> {
    Quaternion::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    )
}

fn random_oct(rng: &mut ChaCha8Rng) -> Octonion<f64> {
    Octonion::new(random_quat(rng), random_quat(rng))
}

fn subsets_of_size<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn rec<T: Copy>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

#[test]
fn criterion_01_degree_table_and_cubic() {
    let expected = [big(1), big(3), big(10), big(35), big(126)];
    for (n, want) in (3..=7).zip(expected) {
        assert_eq!(degree_cm2(n).unwrap(), want, "degree table at n = {n}");
    }
    for n in 3..=20 {
        let v = VarietyId::new(Family::R, 2, n).unwrap();
        assert_eq!(
            degree(v).unwrap(),
            degree_cm2(n).unwrap(),
            "closed form vs product at n = {n}"
        );
    }
    let cm4 = VarietyId::new(Family::R, 2, 4).unwrap();
    assert_eq!(degree(cm4).unwrap(), big(3));
    assert_eq!(ambient_dimension(cm4), 5);
}

#[test]
fn criterion_02_veronese_segre_pfaffian_degrees() {
    for n in 3..=12usize {
        let veronese = degree(VarietyId::new(Family::R, 1, n).unwrap()).unwrap();
        assert_eq!(veronese, BigUint::from(2u64).pow(n as u32 - 2), "R at n={n}");
        let segre = degree(VarietyId::new(Family::C, 1, n).unwrap()).unwrap();
        assert_eq!(
            segre,
            cmvar_core::exact::binomial(2 * n as u64 - 4, n as u64 - 2),
            "C at n={n}"
        );
        for d in 1..=(n - 2) {
            let (first, second) = pfaffian_degree_both(d, n).unwrap();
            assert!(first.is_integer(), "H form 1 integral at d={d}, n={n}");
            assert_eq!(first, second, "H product forms at d={d}, n={n}");
            assert_eq!(
                first.to_integer().to_biguint().unwrap(),
                degree(VarietyId::new(Family::H, d, n).unwrap()).unwrap(),
                "H degree op at d={d}, n={n}"
            );
        }
    }
    let (first, second) = pfaffian_degree_both(1, 3).unwrap();
    assert_eq!(first, second);
    assert_eq!(first.to_integer(), BigInt::from(2));
}

#[test]
fn criterion_03_sectional_genus() {
    assert_eq!(sectional_genus(4).unwrap(), BigInt::from(1));
    assert_eq!(sectional_genus(5).unwrap(), BigInt::from(6));
}

#[test]
fn criterion_04_rank_and_determinant_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for trial in 0..500 {
        let n = rng.gen_range(3..=8);
        let count = n * (n - 1) / 2;
        let values: Vec<f64> = (0..count).map(|_| rng.gen_range(0.5..2.5)).collect();
        let s = CayleyVector::from_ordered(n, &values).unwrap();
        rank_det_check(&s, 1e-9).unwrap_or_else(|e| panic!("generic trial {trial}: {e}"));
    }
    for trial in 0..500 {
        let n = rng.gen_range(3..=8);
        let d = rng.gen_range(1..n.min(5));
        let cfg = random_configuration(&mut rng, n, d);
        let s = cayley_from_configuration(&cfg).unwrap();
        rank_det_check(&s, 1e-9).unwrap_or_else(|e| panic!("config trial {trial}: {e}"));
    }
    for trial in 0..200 {
        let n = rng.gen_range(2..=5);
        let mut entries = BTreeMap::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                let num = rng.gen_range(1..=30i64);
                let den = rng.gen_range(1..=8i64);
                entries.insert((i, j), BigRational::new(num.into(), den.into()));
            }
        }
        rank_det_check_exact(n, &entries)
            .unwrap_or_else(|e| panic!("exact trial {trial}: {e}"));
    }
}

#[test]
fn criterion_05_embed_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for trial in 0..500 {
        let n = rng.gen_range(2..=8);
        let d = rng.gen_range(1..=4);
        let cfg = random_configuration(&mut rng, n, d);
        let s = cayley_from_configuration(&cfg).unwrap();
        let recovered = cmvar_core::distances::embed(&s, d, 1e-9)
            .unwrap_or_else(|e| panic!("embed trial {trial}: {e}"));
        let s2 = cayley_from_configuration(&recovered).unwrap();
        let scale = s.entries().values().fold(1.0f64, |acc, &v| acc.max(v));
        for (&(i, j), &want) in s.entries() {
            let got = s2.get(i, j);
            assert!(
                (got - want).abs() <= 1e-8 * scale,
                "trial {trial}: s[{i},{j}] = {got}, want {want}"
            );
        }
    }
    let degenerate = CayleyVector::from_ordered(3, &[1.0, 1.0, 9.0]).unwrap();
    assert!(!realizability(&degenerate, 1e-9).realizable);
}

#[test]
fn criterion_06_rigidity_oracle_bound_and_enumeration() {
    for n in 4..=6usize {
        let mut all_edges = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                all_edges.push((i, j));
            }
        }
        for edges in subsets_of_size(&all_edges, 2 * n - 3) {
            let fast = is_laman(n, &edges).unwrap();
            let slow = is_laman_exhaustive(n, &edges).unwrap();
            assert_eq!(fast.laman, slow.laman, "n={n}, edges={edges:?}");
        }
    }
    for n in 3..=12usize {
        assert_eq!(realization_bound(n).unwrap(), degree_cm2(n).unwrap());
    }

    let opts = SolverOptions::default();
    let triangle = LinkageSpec::new(
        3,
        vec![(1, 2), (1, 3), (2, 3)],
        BTreeMap::from([((1, 2), 1.0), ((1, 3), 1.0), ((2, 3), 1.0)]),
    )
    .unwrap();
    let set = enumerate_realizations(&triangle, &opts).unwrap();
    assert_eq!(set.count, 1);
    assert_eq!(set.bound, big(1));

    let two_triangles = LinkageSpec::new(
        4,
        vec![(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)],
        BTreeMap::from([
            ((1, 2), 1.0),
            ((1, 3), 1.21),
            ((2, 3), 0.81),
            ((2, 4), 1.44),
            ((3, 4), 0.64),
        ]),
    )
    .unwrap();
    let set = enumerate_realizations(&two_triangles, &opts).unwrap();
    assert_eq!(set.count, 2);
    assert_eq!(set.bound, big(3));
    for rep in &set.representatives {
        for (&(i, j), &sigma) in two_triangles.edges().iter().zip(two_triangles.sigma_values()) {
            let p = rep.point(i);
            let q = rep.point(j);
            let dist: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
            assert!(
                (dist - sigma).abs() <= 1e-8 * sigma.max(1.0),
                "edge ({i},{j}): squared length {dist}, want {sigma}"
            );
        }
    }
}

#[test]
fn criterion_07_jacobian_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for n in [3usize, 4, 5] {
        for _ in 0..100 {
            let cfg = random_configuration(&mut rng, n, 2);
            assert_eq!(
                rigidity_jacobian_rank(&cfg, 1e-9).unwrap(),
                2 * n - 3,
                "generic n={n}"
            );
        }
        for _ in 0..100 {
            let slope = rng.gen_range(-2.0..2.0);
            let intercept = rng.gen_range(-1.0..1.0);
            let points: Vec<Vec<f64>> = (0..n)
                .map(|k| {
                    let t = rng.gen_range(-2.0..2.0) + 3.0 * k as f64;
                    vec![t, slope * t + intercept]
                })
                .collect();
            let cfg = Configuration::new(2, points).unwrap();
            assert_eq!(
                rigidity_jacobian_rank(&cfg, 1e-9).unwrap(),
                n - 1,
                "collinear n={n}"
            );
        }
    }
}

#[test]
fn criterion_08_lorentz_cone() {
    for n in 3..=8usize {
        let form = lorentz_form_matrix(n);
        let (eigs, _) = linalg::symmetric_eigen_desc(&form);
        let scale = eigs.iter().fold(1.0f64, |acc, &l| acc.max(l.abs()));
        let negatives = eigs.iter().filter(|&&l| l < -1e-9 * scale).count();
        assert_eq!(negatives, 1, "L-matrix signature at n = {n}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for trial in 0..1000 {
        let m = rng.gen_range(2..=6);
        let x = DMatrix::from_fn(m, 1, |_, _| rng.gen_range(-1.0..1.0f64));
        let a = &x * x.transpose();
        let norm_sq: f64 = a.iter().map(|v| v * v).sum();
        let form = cmvar_core::distances::GramForm::from_matrix(a).unwrap();
        let value = lorentz_l(&form, &form).unwrap();
        assert!(
            value.abs() <= 1e-9 * norm_sq.max(1e-30),
            "rank-1 trial {trial}: L = {value}"
        );
    }
    for trial in 0..1000 {
        let m = rng.gen_range(2..=6);
        let r = rng.gen_range(2..=m);
        let mut a = DMatrix::zeros(m, m);
        for _ in 0..r {
            let x = DMatrix::from_fn(m, 1, |_, _| rng.gen_range(-1.0..1.0f64));
            a += &x * x.transpose();
        }
        let form = cmvar_core::distances::GramForm::from_matrix(a).unwrap();
        let value = lorentz_l(&form, &form).unwrap();
        assert!(value < 0.0, "rank-{r} trial {trial}: L = {value}");
    }

    for trial in 0..200 {
        let m = rng.gen_range(2..=5);
        let real = DMatrix::from_fn(m, m, |_, _| rng.gen_range(-1.0..1.0f64));
        let sym = (&real + real.transpose()) * 0.5;
        let a_real = cmvar_core::distances::GramForm::from_matrix(sym.clone()).unwrap();
        let b_mat = {
            let raw = DMatrix::from_fn(m, m, |_, _| rng.gen_range(-1.0..1.0f64));
            (&raw + raw.transpose()) * 0.5
        };
        let b_real = cmvar_core::distances::GramForm::from_matrix(b_mat.clone()).unwrap();
        let want = lorentz_l(&a_real, &b_real).unwrap();

        let to_complex =
            |m_: &DMatrix<f64>| m_.map(|v| Complex::new(v, 0.0));
        let a_c = HermitianGram::from_matrix(to_complex(&sym)).unwrap();
        let b_c = HermitianGram::from_matrix(to_complex(&b_mat)).unwrap();
        let got_c = lorentz_hermitian(&a_c, &b_c).unwrap();

        let to_quat = |m_: &DMatrix<f64>| -> Vec<Vec<Quaternion<f64>>> {
            (0..m_.nrows())
                .map(|i| (0..m_.ncols()).map(|j| Quaternion::from_real(m_[(i, j)])).collect())
                .collect()
        };
        let a_h = HyperHermitianGram::from_entries(to_quat(&sym)).unwrap();
        let b_h = HyperHermitianGram::from_entries(to_quat(&b_mat)).unwrap();
        let got_h = lorentz_quaternionic(&a_h, &b_h).unwrap();

        let scale = want.abs().max(1.0);
        assert!(
            (got_c - want).abs() <= 1e-12 * scale,
            "hermitian tower trial {trial}"
        );
        assert!(
            (got_h - want).abs() <= 1e-12 * scale,
            "quaternionic tower trial {trial}"
        );
    }
}

#[test]
fn criterion_09_sigma_map_skewness_and_rank_doubling() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for trial in 0..200 {
        let n = rng.gen_range(2..=6);
        let m = n - 1;
        let d = rng.gen_range(1..=4);
        let gram = loop {
            let points: Vec<Vec<Quaternion<f64>>> = (0..n)
                .map(|_| (0..d).map(|_| random_quat(&mut rng)).collect())
                .collect();
            let candidate = HyperHermitianGram::from_points(&points).unwrap();
            let (eigs, _) = linalg::hermitian_eigen_desc(&candidate.complex_representation());
            if eigs[2 * d.min(m) - 1] > 1e-6 * eigs[0] {
                break candidate;
            }
        };
        let skew = sigma_map(&gram, 1e-9).unwrap();
        let mat = skew.matrix();
        for i in 0..mat.nrows() {
            assert_eq!(mat[(i, i)], Complex::new(0.0, 0.0), "diagonal at {i}");
            for j in (i + 1)..mat.ncols() {
                assert_eq!(
                    mat[(j, i)],
                    -mat[(i, j)],
                    "trial {trial}: skew symmetry at ({i},{j})"
                );
            }
        }
        let q_rank = gram.quaternionic_rank(1e-9);
        assert_eq!(q_rank, d.min(m), "trial {trial}: quaternionic rank");
        assert_eq!(
            linalg::rank_svd_complex(mat, 1e-9),
            2 * q_rank,
            "trial {trial}: complex rank of the skew form"
        );
        assert_eq!(
            pfaffian_rank(&skew, 1e-9).unwrap(),
            2 * q_rank,
            "trial {trial}: pfaffian rank"
        );
    }
}

#[test]
fn criterion_10_division_algebra_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for trial in 0..1000 {
        let x = random_quat(&mut rng);
        let y = random_quat(&mut rng);
        let lhs = quat_mul(&x, &y).norm_sqr();
        let rhs = x.norm_sqr() * y.norm_sqr();
        assert!(
            (lhs - rhs).abs() <= 1e-9 * rhs.max(1e-30),
            "quaternion norm trial {trial}"
        );
        let u = random_oct(&mut rng);
        let v = random_oct(&mut rng);
        let lhs = oct_mul(&u, &v).norm_sqr();
        let rhs = u.norm_sqr() * v.norm_sqr();
        assert!(
            (lhs - rhs).abs() <= 1e-9 * rhs.max(1e-30),
            "octonion norm trial {trial}"
        );
    }

    for trial in 0..200 {
        let x = random_oct(&mut rng);
        let y = random_oct(&mut rng);
        let scale = (x.norm() * x.norm() * y.norm()).max(1.0);
        assert!(
            associator(&x, &x, &y).norm() <= 1e-12 * scale,
            "alternativity (x,x,y) trial {trial}"
        );
        assert!(
            associator(&x, &y, &y).norm() <= 1e-12 * scale,
            "alternativity (x,y,y) trial {trial}"
        );
        assert!(
            associator(&x, &x.conj(), &y).norm() <= 1e-12 * scale,
            "conjugate argument trial {trial}"
        );
    }
    let [w1, w2, w3] = associator_witness();
    assert!(associator(&w1, &w2, &w3).norm() > 1.0);

    for trial in 0..200 {
        let x = random_quat(&mut rng);
        let y = random_quat(&mut rng);
        let product_block = quat_to_complex_block(&quat_mul(&x, &y));
        let block_product = quat_to_complex_block(&x) * quat_to_complex_block(&y);
        let diff = (&product_block - &block_product)
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max);
        assert!(
            diff <= 1e-12 * (x.norm() * y.norm()).max(1.0),
            "block multiplicativity trial {trial}"
        );
        assert_eq!(
            quat_to_complex_block(&x.conj()),
            quat_to_complex_block(&x).adjoint(),
            "block adjoint trial {trial}"
        );
    }
}

#[test]
fn criterion_11_octonionic_determinants() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for trial in 0..200 {
        let alpha = rng.gen_range(-2.0..2.0);
        let beta = rng.gen_range(-2.0..2.0);
        let x = random_oct(&mut rng);
        let want = alpha * beta - x.norm_sqr();
        let got = oct_herm_det2(alpha, beta, &x);
        assert!((got - want).abs() <= 1e-12, "det2 trial {trial}");

        let gamma = rng.gen_range(-2.0..2.0);
        let y = random_oct(&mut rng);
        let z = random_oct(&mut rng);
        let m = OctHermitian3::new([alpha, beta, gamma], x.clone(), y.clone(), z.clone());
        let closed = alpha * beta * gamma
            - alpha * x.norm_sqr()
            - beta * y.norm_sqr()
            - gamma * z.norm_sqr()
            + 2.0 * oct_mul(&oct_mul(&z, &x), &y.conj()).real_part();
        let got = oct_herm_det3(&m);
        let scale = got.abs().max(1.0);
        assert!(
            (got - closed).abs() <= 1e-10 * scale,
            "det3 trial {trial}: trace form {got}, closed form {closed}"
        );
    }

    for trial in 0..1000 {
        let rand_rat = |rng: &mut ChaCha8Rng| {
            BigRational::new(
                BigInt::from(rng.gen_range(-40i64..=40)),
                BigInt::from(rng.gen_range(1i64..=9)),
            )
        };
        let a = rand_rat(&mut rng);
        let b = rand_rat(&mut rng);
        let c = rand_rat(&mut rng);
        let m: OctHermitian3<BigRational> = OctHermitian3::new(
            [a.clone(), b.clone(), c.clone()],
            Octonion::zero(),
            Octonion::zero(),
            Octonion::zero(),
        );
        assert_eq!(oct_herm_det3(&m), a * b * c, "rational diagonal trial {trial}");
    }
}

#[test]
fn criterion_12_polygon_walls_and_octic() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    for &r in &[0.1, 0.5, 0.9] {
        for trial in 0..334 {
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let phi1 = rng.gen_range(0.0..std::f64::consts::TAU);
            let phi2 = rng.gen_range(0.0..std::f64::consts::TAU);
            let [a, b, c, d] = torus_point(r, theta, phi1, phi2).unwrap();
            let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs()).max(1.0);
            assert!(
                octic_value(a, b, c, d, r).abs() <= 1e-9 * scale.powi(8),
                "octic at r={r}, trial {trial}"
            );
        }
    }

    let square = EdgeLengthVector::new(vec![0.25; 4]).unwrap();
    assert!(wall_report(&square, 1e-9).unwrap().on_wall);
    let generic = EdgeLengthVector::new(vec![0.35, 0.25, 0.22, 0.18]).unwrap();
    assert!(!wall_report(&generic, 1e-9).unwrap().on_wall);

    for trial in 0..60 {
        let n = rng.gen_range(4..=7);
        let (q, _) = loop {
            let head: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.1..1.0)).collect();
            let signs: Vec<i32> = (0..n - 1)
                .map(|_| if rng.gen_bool(0.5) { 1 } else { -1 })
                .collect();
            let sum: f64 = head.iter().zip(&signs).map(|(&v, &e)| f64::from(e) * v).sum();
            if sum.abs() < 0.05 {
                continue;
            }
            let mut q = head;
            let mut eps = signs;
            q.push(sum.abs());
            eps.push(if sum > 0.0 { -1 } else { 1 });
            break (EdgeLengthVector::new(q).unwrap(), eps);
        };
        let std_q = standardize(&q);
        let report = wall_report(&std_q, 1e-9).unwrap();
        assert!(report.on_wall, "constructed wall point, trial {trial}");
        assert!(!report.witnesses.is_empty());
        for eps in &report.witnesses {
            let cfg = collinear_realization(&std_q, eps, 1e-9).unwrap();
            let check = realizability(&cayley_from_configuration(&cfg).unwrap(), 1e-9);
            assert!(check.realizable, "witness realizable, trial {trial}");
            assert_eq!(check.min_rank, 1, "witness rank, trial {trial}");
        }
    }
}
