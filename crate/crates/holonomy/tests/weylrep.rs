use holonomy::characters::LogWeylChar;
use holonomy::linalg::{self, CMat};
use holonomy::qdilog::RootConfig;
use holonomy::weylrep::*;
use holonomy::C64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn is_scalar(m: &CMat, s: C64, tol: f64) -> bool {
    linalg::max_abs(&(m - linalg::identity(m.nrows()) * s)) <= tol * s.norm().max(1.0)
}

fn power(m: &CMat, k: usize) -> CMat {
    (1..k).fold(m.clone(), |p, _| &p * m)
}

fn lc() -> LogWeylChar {
    LogWeylChar::new(c(0.21, -0.07), c(-0.33, 0.12), c(0.4, 0.05))
}

#[test]
fn bases_diagonalize_x_and_y() {
    for n in [2, 3, 5] {
        let cfg = RootConfig::new(n).unwrap();
        let l = lc();
        let w = rep_matrices(&cfg, &l, Basis::Weight);
        let f = rep_matrices(&cfg, &l, Basis::Fourier);
        for i in 0..n {
            for j in 0..n {
                let (wx, fy) = if i == j {
                    (cfg.pow(l.alpha - i as f64), cfg.pow(l.beta + i as f64))
                } else {
                    (c(0.0, 0.0), c(0.0, 0.0))
                };
                assert!((w.x[(i, j)] - wx).norm() < 1e-14);
                assert!((f.y[(i, j)] - fy).norm() < 1e-14);
            }
        }
        assert!(linalg::rel_dev(&fourier_basis_change(&cfg, &w.x).unwrap(), &f.x) < 1e-12);
        assert!(linalg::rel_dev(&fourier_basis_change(&cfg, &w.y).unwrap(), &f.y) < 1e-12);
    }
}

#[test]
fn fourier_round_trip() {
    for n in [2, 4, 7] {
        let cfg = RootConfig::new(n).unwrap();
        let p = fourier_matrix(&cfg) * fourier_inverse(&cfg);
        assert!(is_scalar(&p, c(1.0, 0.0), 1e-13));
        assert!(fourier_basis_change(&cfg, &linalg::identity(n + 1)).is_err());
    }
}

#[test]
fn casimir_and_central_elements() {
    for n in [2, 3, 6] {
        let cfg = RootConfig::new(n).unwrap();
        let l = lc();
        let g = rep_matrices(&cfg, &l, Basis::Fourier);
        let t = cfg.pow(l.mu + 0.5);
        assert!(is_scalar(&g.omega, t + 1.0 / t, 1e-11));
        let (ka, ea, fa) = central_scalars(&l);
        assert!((ka - cfg.pow(c(n as f64, 0.0) * l.alpha)).norm() < 1e-12);
        assert!(is_scalar(&power(&g.k, n), ka, 1e-10));
        assert!(is_scalar(&power(&g.e, n), ea, 1e-10));
        assert!(is_scalar(&power(&g.f, n), fa, 1e-10));
    }
    // a = m: E^N vanishes
    let cfg = RootConfig::new(4).unwrap();
    let l = LogWeylChar::new(c(0.3, 0.1), c(0.2, 0.0), c(0.3, 0.1));
    assert!(central_scalars(&l).1.norm() < 1e-14);
    assert!(is_scalar(&power(&rep_matrices(&cfg, &l, Basis::Weight).e, 4), c(0.0, 0.0), 1e-10));
}

#[test]
fn simplicity() {
    for n in [2, 3, 5] {
        let cfg = RootConfig::new(n).unwrap();
        let g = rep_matrices(&cfg, &lc(), Basis::Weight);
        assert_eq!(commutant_dim(&g), 1);
        assert_eq!(commutant_dim(&g.direct_sum(&g)), 4);
        // a = m with 2 mu = -1: reducible, still only scalars commute
        let mu = c(-0.5, 0.0);
        let p = rep_matrices(&cfg, &LogWeylChar::new(mu, c(0.1, 0.05), mu), Basis::Fourier);
        assert_eq!(commutant_dim(&p), 1);
    }
}

#[test]
fn automorphism_fixes_center_and_x_product() {
    let cfg = RootConfig::new(3).unwrap();
    let (l1, l2) = (lc(), LogWeylChar::new(c(-0.12, 0.2), c(0.45, -0.1), c(0.15, 0.08)));
    let p = tensor_generators(&cfg, &l1, &l2);
    for dir in [Direction::Forward, Direction::Inverse] {
        let im = rw_images(&cfg, &l1, &l2, dir).unwrap();
        assert!(is_scalar(&im.z1, cfg.pow(l1.mu), 1e-14));
        assert!(linalg::rel_dev(&(&im.x1 * &im.x2), &(&p.x1 * &p.x2)) < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn images_satisfy_weyl_relations(
        v in proptest::collection::vec((-0.5f64..0.5, -0.15f64..0.15), 6),
        n in 2usize..5,
        fwd in any::<bool>(),
    ) {
        let cfg = RootConfig::new(n).unwrap();
        let z: Vec<C64> = v.iter().map(|&(a, b)| c(a, b)).collect();
        let (l1, l2) = (LogWeylChar::new(z[0], z[1], z[2]), LogWeylChar::new(z[3], z[4], z[5]));
        let dir = if fwd { Direction::Forward } else { Direction::Inverse };
        let Ok(im) = rw_images(&cfg, &l1, &l2, dir) else { return Ok(()) };
        let w = cfg.omega();
        // y^{-1} x = omega x y^{-1} and x y = omega y x; different factors commute
        prop_assert!(linalg::rel_dev(&(&im.y1inv * &im.x1), &(&im.x1 * &im.y1inv * w)) < 1e-8);
        prop_assert!(linalg::rel_dev(&(&im.x2 * &im.y2), &(&im.y2 * &im.x2 * w)) < 1e-8);
        prop_assert!(linalg::rel_dev(&(&im.x1 * &im.x2), &(&im.x2 * &im.x1)) < 1e-8);
        prop_assert!(linalg::rel_dev(&(&im.y1inv * &im.y2), &(&im.y2 * &im.y1inv)) < 1e-8);
        prop_assert!(linalg::rel_dev(&(&im.x1 * &im.y2), &(&im.y2 * &im.x1)) < 1e-8);
        prop_assert!(linalg::rel_dev(&(&im.y1inv * &im.x2), &(&im.x2 * &im.y1inv)) < 1e-8);
    }

    #[test]
    fn quantum_group_relations(
        v in proptest::collection::vec((-0.5f64..0.5, -0.15f64..0.15), 3),
        n in 2usize..7,
        weight in any::<bool>(),
    ) {
        let cfg = RootConfig::new(n).unwrap();
        let l = LogWeylChar::new(c(v[0].0, v[0].1), c(v[1].0, v[1].1), c(v[2].0, v[2].1));
        let g = rep_matrices(&cfg, &l, if weight { Basis::Weight } else { Basis::Fourier });
        let xi = cfg.xi();
        let ki = linalg::inverse(&g.k).unwrap();
        prop_assert!(linalg::rel_dev(&(&g.k * &g.e), &(&g.e * &g.k * (xi * xi))) < 1e-10);
        prop_assert!(linalg::rel_dev(&(&g.k * &g.f), &(&g.f * &g.k / (xi * xi))) < 1e-10);
        let comm = &g.e * &g.f - &g.f * &g.e;
        prop_assert!(linalg::rel_dev(&comm, &((&g.k - &ki) * (xi - 1.0 / xi))) < 1e-10);
    }
}
