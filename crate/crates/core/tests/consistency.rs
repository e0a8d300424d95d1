//! Cross-module checks: every algebraic fast path against the dense oracle,
//! plus the stated invariants of each module.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use symstab::experiments::{sample_symmetric, trivial_fraction, write_csv, SampleMode};
use symstab::majorana::{dicke_to_polynomial, majorana_decompose_with};
use symstab::mobius::cross_ratio;
use symstab::oracle::{
    apply_uniform, dense_from_symmetric, dense_lambda_max, dense_partial_trace, dense_symmetrize,
    dense_symmetrize_by_permutations, verify_certificate,
};
use symstab::slocc::{connecting_operator, conversion_report, p_max, slocc_equivalent};
use symstab::stabilizer::{f2_dicke, f4_dicke, Precheck};
use symstab::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> SymmetricState {
    SymmetricState::new((0..=n).map(|_| gaussian(rng)).collect()).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Mat2 {
    loop {
        let m = Mat2::new(gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng));
        if m.det().norm() > 0.1 {
            return m;
        }
    }
}

fn random_unitary(rng: &mut ChaCha8Rng) -> Mat2 {
    let (a, b) = (gaussian(rng), gaussian(rng));
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / norm, b / norm);
    Mat2::new(a, -b.conj(), b, a.conj())
}

/// `U diag(s, 1/s) V` with `s` in `[1, 3]`: generic but with bounded condition
/// number, so the degree-4 invariant keeps its digits.
fn random_sl2(rng: &mut ChaCha8Rng) -> Mat2 {
    random_sl2_within(rng, 3.0)
}

/// Singular values s and 1/s with s below `max_s`.
fn random_sl2_within(rng: &mut ChaCha8Rng, max_s: f64) -> Mat2 {
    let s = rng.random_range(1.0..max_s);
    random_unitary(rng) * Mat2::diag(c(s, 0.0), c(1.0 / s, 0.0)) * random_unitary(rng)
}

fn random_point(rng: &mut ChaCha8Rng) -> ProjectivePoint {
    canonicalize_point(gaussian(rng), gaussian(rng)).unwrap()
}

/// `g^{⊗n} psi` renormalized, computed on the dense vector.
fn transform_dense(g: &Mat2, psi: &SymmetricState) -> SymmetricState {
    let v = apply_uniform(g, &dense_from_symmetric(psi).unwrap());
    v.normalized().to_symmetric().unwrap()
}

/// States with a mix of stabilizer behaviours: random amplitudes, random
/// points with repeated multiplicities, and symmetric point configurations.
fn mixed_states(count: usize, max_n: usize, seed: u64) -> Vec<SymmetricState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..count {
        let n = rng.random_range(3..=max_n);
        let state = match i % 4 {
            0 => random_state(&mut rng, n),
            1 => {
                let m = rng.random_range(3..=n);
                sample_symmetric(n, SampleMode::ByPoints { m }, rng.random()).unwrap()
            }
            2 => {
                // regular polygon, optionally with poles
                let k = rng.random_range(3..=n);
                let rot = C64::from_polar(1.0, rng.random_range(0.0..6.0));
                let mut points: Vec<ProjectivePoint> = (0..k)
                    .map(|j| ProjectivePoint::from_plane(rot * C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / k as f64)))
                    .collect();
                for j in 0..n - k {
                    points.push(if j % 2 == 0 { ProjectivePoint::origin() } else { ProjectivePoint::infinity() });
                }
                let h = random_matrix(&mut rng);
                let set = MajoranaSet::from_points(&points, 1e-8).unwrap();
                transform_dense(&h, &majorana_compose(&set).unwrap())
            }
            _ => {
                // Möbius image of a configuration with a swap symmetry
                let p = random_point(&mut rng);
                let q = random_point(&mut rng);
                let swap = |x: &ProjectivePoint| ProjectivePoint::new(x.b(), x.a()).unwrap();
                let mut points = vec![p, swap(&p), q, swap(&q)];
                while points.len() < n {
                    points.push(ProjectivePoint::from_plane(c(1.0, 0.0)));
                }
                let set = MajoranaSet::from_points(&points, 1e-8).unwrap();
                majorana_compose(&set).unwrap()
            }
        };
        out.push(state);
    }
    out
}

/// All non-identity maps from every ordered source triple to every ordered
/// target triple, accepting those that permute the clusters.
fn brute_force_nontrivial(points: &MajoranaSet) -> bool {
    let cl = points.clusters();
    let m = cl.len();
    if m < 3 {
        return true;
    }
    let permutes = |f: &MobiusMap| {
        cl.iter().all(|a| {
            let image = f.apply(&a.point);
            cl.iter().any(|b| b.multiplicity == a.multiplicity && points_coincide(&image, &b.point, 1e-8))
        })
    };
    let triples: Vec<[usize; 3]> = (0..m)
        .flat_map(|i| (0..m).flat_map(move |j| (0..m).map(move |k| [i, j, k])))
        .filter(|[i, j, k]| i != j && j != k && i != k)
        .collect();
    for s in &triples {
        for t in &triples {
            if s.iter().zip(t).any(|(&a, &b)| cl[a].multiplicity != cl[b].multiplicity) {
                continue;
            }
            let Ok(f) = MobiusMap::from_three_points(s.map(|i| &cl[i].point), t.map(|i| &cl[i].point)) else {
                continue;
            };
            if !f.is_identity() && permutes(&f) {
                return true;
            }
        }
    }
    false
}

#[test]
fn decompose_compose_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let n = rng.random_range(1..=12);
        let psi = random_state(&mut rng, n);
        let set = majorana_decompose(&psi).unwrap();
        assert_eq!(set.n(), n);
        let back = majorana_compose(&set).unwrap();
        assert!(psi.fidelity(&back) >= 1.0 - 1e-10, "n = {n}");
    }
}

#[test]
fn root_residuals_are_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let n = rng.random_range(1..=16);
        let psi = random_state(&mut rng, n);
        let poly = dicke_to_polynomial(&psi);
        let set = majorana_decompose(&psi).unwrap();
        let total: usize = set.clusters().iter().map(|c| c.multiplicity).sum();
        assert_eq!(total, n);
        for cl in set.clusters() {
            assert!(poly.homogeneous_residual(&cl.point) <= 1e-9 * poly.max_coefficient());
        }
    }
}

#[test]
fn repeated_points_survive_decomposition() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let n = rng.random_range(2..=10);
        let m = rng.random_range(1..=n.min(4));
        let psi = sample_symmetric(n, SampleMode::ByPoints { m }, rng.random()).unwrap();
        let set = majorana_decompose(&psi).unwrap();
        assert_eq!(set.diversity(), m, "n = {n}");
    }
}

#[test]
fn compose_matches_dense_symmetrization() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..100 {
        let n = rng.random_range(1..=10);
        let points: Vec<ProjectivePoint> = (0..n).map(|_| random_point(&mut rng)).collect();
        let set = MajoranaSet::from_points(&points, 1e-8).unwrap();
        let algebraic = dense_from_symmetric(&majorana_compose(&set).unwrap()).unwrap();
        let dense = dense_symmetrize(&set).unwrap();
        assert!(algebraic.inner(&dense).norm() >= 1.0 - 1e-10);
        if n <= 6 && i % 5 == 0 {
            let literal = dense_symmetrize_by_permutations(&set).unwrap();
            assert!(literal.inner(&dense).norm() >= 1.0 - 1e-10);
        }
    }
}

#[test]
fn marginals_match_partial_trace() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.random_range(1..=10);
        let psi = random_state(&mut rng, n);
        let closed = reduced_density_matrix(&psi);
        let v = dense_from_symmetric(&psi).unwrap();
        let qubit = rng.random_range(0..n);
        assert!(closed.max_abs_diff(&dense_partial_trace(&v, qubit).unwrap()) <= 1e-10);
        assert!((closed.trace() - C64::new(1.0, 0.0)).norm() <= 1e-12);
    }
}

#[test]
fn dense_embedding_is_isometric_and_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let n = rng.random_range(2..=10);
        let (a, b) = (random_state(&mut rng, n), random_state(&mut rng, n));
        let (va, vb) = (dense_from_symmetric(&a).unwrap(), dense_from_symmetric(&b).unwrap());
        assert!((va.inner(&vb) - a.inner(&b)).norm() <= 1e-12);
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        assert!(va.swap_qubits(i, j).distance(&va) <= 1e-12);
    }
}

#[test]
fn symmetric_action_matches_dense_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let n = rng.random_range(1..=10);
        let psi = random_state(&mut rng, n);
        let g = random_matrix(&mut rng);
        let fast = SymmetricState::new(apply_symmetric(&g, &psi)).unwrap();
        assert!(fast.fidelity(&transform_dense(&g, &psi)) >= 1.0 - 1e-10);
    }
}

#[test]
fn mobius_points_follow_local_operators() {
    // the Majorana points of g^{⊗n} psi are the images of psi's points
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let n = rng.random_range(2..=8);
        let psi = random_state(&mut rng, n);
        let g = random_matrix(&mut rng);
        let f = MobiusMap::from_matrix(g).unwrap();
        let before = majorana_decompose(&psi).unwrap();
        let after = majorana_decompose(&transform_dense(&g, &psi)).unwrap();
        for cl in before.clusters() {
            let image = f.apply(&cl.point);
            assert!(after.clusters().iter().any(|d| d.point.distance(&image) < 1e-7));
        }
    }
}

#[test]
fn three_point_interpolation() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let src = [random_point(&mut rng), random_point(&mut rng), random_point(&mut rng)];
        let dst = [random_point(&mut rng), random_point(&mut rng), random_point(&mut rng)];
        let f = MobiusMap::from_three_points([&src[0], &src[1], &src[2]], [&dst[0], &dst[1], &dst[2]]).unwrap();
        for (s, d) in src.iter().zip(&dst) {
            assert!(f.apply(s).distance(d) <= 1e-8);
        }
        assert!((f.matrix().det() - C64::new(1.0, 0.0)).norm() < 1e-10);
    }
}

#[test]
fn cross_ratio_is_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..200 {
        let p: Vec<ProjectivePoint> = (0..4).map(|_| random_point(&mut rng)).collect();
        let f = MobiusMap::from_matrix(random_matrix(&mut rng)).unwrap();
        let q: Vec<ProjectivePoint> = p.iter().map(|x| f.apply(x)).collect();
        let before = cross_ratio(&p[0], &p[1], &p[2], &p[3]);
        let after = cross_ratio(&q[0], &q[1], &q[2], &q[3]);
        assert!(before.distance(&after) <= 1e-8);
        match f.fixed_points() {
            FixedPoints::All => panic!("random map is the identity"),
            fp => assert!(fp.count().unwrap() <= 2),
        }
    }
}

#[test]
fn search_is_complete_against_brute_force() {
    let states = mixed_states(200, 8, 11);
    let mut nontrivial = 0;
    for psi in &states {
        let points = majorana_decompose(psi).unwrap();
        let verdict = decide_stabilizer(psi).unwrap();
        assert_eq!(!verdict.trivial, brute_force_nontrivial(&points), "configuration {}", degeneracy_configuration(&points));
        nontrivial += usize::from(!verdict.trivial);
    }
    // the sample must exercise both verdicts
    assert!(nontrivial > 20 && nontrivial < 180, "{nontrivial}");
}

#[test]
fn certificates_are_sound() {
    for psi in mixed_states(200, 10, 12) {
        let verdict = decide_stabilizer(&psi).unwrap();
        if let Some(cert) = verdict.certificate {
            assert!(verify_certificate(&psi, &cert.g).unwrap() <= 1e-9);
            assert!(!cert.g.is_scalar(1e-9));
            assert!((cert.lambda_product() - C64::new(1.0, 0.0)).norm() <= 1e-9);
            assert_eq!(cert.lambdas.len(), psi.n());
        } else {
            assert!(verdict.trivial);
        }
    }
}

#[test]
fn precheck_never_contradicts_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut definite = 0;
    for i in 0..1000u64 {
        let n = rng.random_range(3..=9);
        let mode = if i % 2 == 0 {
            SampleMode::ByAmplitudes
        } else {
            SampleMode::ByPoints { m: rng.random_range(1..=n) }
        };
        let psi = sample_symmetric(n, mode, i).unwrap();
        let points = majorana_decompose(&psi).unwrap();
        let verdict = decide_stabilizer(&psi).unwrap();
        match config_precheck(&degeneracy_configuration(&points)) {
            Precheck::Trivial => assert!(verdict.trivial),
            Precheck::Nontrivial => assert!(!verdict.trivial),
            Precheck::Unknown => continue,
        }
        definite += 1;
    }
    assert!(definite > 100);
}

#[test]
fn stabilizers_transport_under_local_operators() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut checked = 0;
    for psi in mixed_states(60, 8, 15) {
        let Some(cert) = decide_stabilizer(&psi).unwrap().certificate else {
            continue;
        };
        // a residual r on psi becomes at most cond(h)^n r on the moved state
        let h = random_sl2_within(&mut rng, 1.2).scale(gaussian(&mut rng));
        let moved = SymmetricState::new(apply_symmetric(&h, &psi)).unwrap();
        let conjugated = LocalOperator::new(h * *cert.g.matrix() * h.inverse().unwrap()).unwrap();
        let residual = verify_certificate(&moved, &conjugated).unwrap();
        assert!(residual <= 1e-9, "{residual:e}");
        assert!(!decide_stabilizer(&moved).unwrap().trivial);
        checked += 1;
    }
    assert!(checked > 20);
}

#[test]
fn f2_vanishes_for_odd_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for n in [3, 5, 7, 9] {
        for _ in 0..100 {
            assert!(f2(&random_state(&mut rng, n)).norm() <= 1e-12);
        }
    }
}

#[test]
fn invariants_closed_forms_match_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in 2..=10 {
        for _ in 0..10 {
            let psi = random_state(&mut rng, n);
            assert!((f2(&psi) - f2_dicke(&psi)).norm() <= 1e-12);
            assert!((f4(&psi).unwrap() - f4_dicke(&psi).unwrap()).norm() <= 1e-12);
        }
    }
}

#[test]
fn invariants_are_sl_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..50 {
        let n = rng.random_range(2..=8);
        let psi = random_state(&mut rng, n);
        let g = random_sl2(&mut rng);
        // unnormalized image, as the invariants are homogeneous
        let image = apply_uniform(&g, &dense_from_symmetric(&psi).unwrap());
        let (a2, b2) = (symstab::oracle::f2_dense(&dense_from_symmetric(&psi).unwrap()), symstab::oracle::f2_dense(&image));
        let (a4, b4) = (f4(&psi).unwrap(), symstab::oracle::f4_dense(&image).unwrap());
        let rel = |a: C64, b: C64| (a - b).norm() / a.norm().max(1e-300);
        if n % 2 == 0 && a2.norm() > 1e-6 {
            assert!(rel(a2, b2) <= 1e-8);
        }
        if a4.norm() > 1e-6 {
            assert!(rel(a4, b4) <= 1e-8);
        }
    }
}

#[test]
fn equivalence_is_reflexive_and_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..100 {
        let n = rng.random_range(2..=8);
        let psi = random_state(&mut rng, n);
        let phi = transform_dense(&random_matrix(&mut rng), &psi);
        assert!(slocc_equivalent(&psi, &psi).unwrap().is_some());
        let (f, _) = slocc_equivalent(&psi, &phi).unwrap().unwrap();
        let back = connecting_operator(&phi, &psi, &f.inverse()).unwrap();
        assert!(back.overlap >= 1.0 - 1e-8);
        assert!(slocc_equivalent(&phi, &psi).unwrap().is_some());
    }
}

#[test]
fn conversion_probabilities_are_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..50 {
        let n = rng.random_range(2..=7);
        let psi = random_state(&mut rng, n);
        let phi = transform_dense(&random_matrix(&mut rng), &psi);
        let report = conversion_report(&psi, &phi, &Tolerances::default()).unwrap().unwrap();
        assert!(report.p_forward <= 1.0 + 1e-12 && report.p_forward > 0.0);
        assert!(report.p_backward <= 1.0 + 1e-12 && report.p_backward > 0.0);
        assert!(report.p_forward * report.p_backward <= 1.0 + 1e-12);
    }
}

#[test]
fn p_max_matches_dense_eigenvalue() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let n = rng.random_range(1..=6);
        let g = LocalOperator::new(random_matrix(&mut rng)).unwrap();
        let dense = 1.0 / dense_lambda_max(g.matrix(), n).unwrap();
        let closed = p_max(&g, n).unwrap();
        assert!((dense - closed).abs() <= 1e-10 * closed.max(1e-300) + 1e-14);
    }
    // unitary operators convert deterministically
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let hadamard = LocalOperator::new(Mat2::new(c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0))).unwrap();
    assert!((p_max(&hadamard, 5).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn monte_carlo_is_reproducible() {
    let run = || {
        let rows = vec![
            trivial_fraction(5, SampleMode::ByAmplitudes, 30, 77).unwrap(),
            trivial_fraction(6, SampleMode::ByPoints { m: 4 }, 30, 77).unwrap(),
        ];
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        buf
    };
    assert_eq!(run(), run());
}

/// The n = 9 family x3 D(9,3) + x7 D(9,7) + x9 D(9,9): diag(-1, 1) fixes every such state, since each
/// component D(9, k) picks up (-1)^(9 - k) and 9 - k is even for k = 3, 7, 9.
#[test]
fn gcd_family_has_a_z2_stabilizer() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let z = LocalOperator::new(Mat2::diag(c(-1.0, 0.0), c(1.0, 0.0))).unwrap();
    for _ in 0..20 {
        let mut amps = vec![C64::new(0.0, 0.0); 10];
        for k in [3, 7, 9] {
            amps[k] = gaussian(&mut rng);
        }
        let psi = SymmetricState::new(amps).unwrap();
        assert!(verify_certificate(&psi, &z).unwrap() <= 1e-12);
        let points = majorana_decompose_with(&psi, &Tolerances::default()).unwrap();
        let (f, _) = find_permuting_mobius(&points).unwrap();
        assert!(!f.is_identity());
        let verdict = decide_stabilizer(&psi).unwrap();
        assert!(!verdict.trivial);
        assert!(verdict.certificate.unwrap().residual.unwrap() <= 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdicts_are_invariant_under_local_operators(
        seed in any::<u64>(),
        n in 3usize..8,
        entries in prop::array::uniform8(-2.0f64..2.0),
    ) {
        let psi = sample_symmetric(n, SampleMode::ByAmplitudes, seed).unwrap();
        let g = Mat2::new(c(entries[0], entries[1]), c(entries[2], entries[3]), c(entries[4], entries[5]), c(entries[6], entries[7]));
        prop_assume!(g.det().norm() > 0.1 && g.frobenius() < 4.0);
        let moved = SymmetricState::new(apply_symmetric(&g, &psi)).unwrap();
        prop_assert_eq!(decide_stabilizer(&psi).unwrap().trivial, decide_stabilizer(&moved).unwrap().trivial);
    }

    #[test]
    fn schedules_give_identical_verdicts(seed in any::<u64>(), n in 3usize..9, m in 3usize..9) {
        prop_assume!(m <= n);
        let psi = sample_symmetric(n, SampleMode::ByPoints { m }, seed).unwrap();
        let tol = Tolerances::default();
        let a = symstab::stabilizer::decide_stabilizer_with(&psi, &tol, Schedule::Sequential).unwrap();
        let b = symstab::stabilizer::decide_stabilizer_with(&psi, &tol, Schedule::Parallel).unwrap();
        prop_assert_eq!(a, b);
    }
}
