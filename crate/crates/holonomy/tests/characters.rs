use holonomy::characters::*;
use holonomy::qdilog::{RootConfig, Tolerance};
use holonomy::{sample, C64};
use proptest::prelude::*;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn dev(a: &M2, b: &M2) -> f64 {
    m2_max(&(a - b)) / m2_max(b).max(1.0)
}

#[test]
fn sigma_hat_holonomy() {
    let s = WeylChar::real(-1.0, 1.0, -1.0);
    let p = psi(&s);
    assert!(dev(&p, &(M2::identity() * c(-1.0))) < 1e-15);
    let z = to_z0_char(&s);
    assert!(dev(&z.lower, &M2::new(c(-1.0), c(0.0), c(0.0), c(1.0))) < 1e-15);
    assert!(dev(&z.upper, &M2::new(c(1.0), c(0.0), c(0.0), c(-1.0))) < 1e-15);
}

#[test]
fn identity_character() {
    for b in [0.3, -2.0, 7.5] {
        let z = to_z0_char(&WeylChar::real(1.0, b, 1.0));
        assert!(z.max_dev(&SL2StarElement::identity()) < 1e-15);
    }
    let x = to_z0_char(&WeylChar::real(1.7, 0.4, -0.6));
    let id = SL2StarElement::identity();
    assert!(char_product(&id, &x).unwrap().max_dev(&x) < 1e-15);
    assert!(char_product(&x, &id).unwrap().max_dev(&x) < 1e-15);
}

#[test]
fn upper_corner_vanishes_when_a_is_m() {
    let m = C64::new(0.3, 0.9);
    for b in [c(1.0), C64::new(-0.4, 2.0)] {
        assert_eq!(psi(&WeylChar::new_unchecked(m, b, m))[(0, 1)], c(0.0));
    }
}

#[test]
fn kashaev_pair_is_pinched() {
    let tol = Tolerance::default();
    let (x1, x2) = (WeylChar::real(-1.0, 1.0, -1.0), WeylChar::real(-1.0, -1.0, -1.0));
    let out = braid(&x1, &x2, Sign::Pos, &tol);
    assert!(out.admissible && out.pinched);
    assert!(out.chi2p.max_dev(&x1) < 1e-15);
    assert!(out.chi1p.max_dev(&x2) < 1e-15);
    let cls = classify_pair(&x1, &x2, Sign::Pos, &tol);
    assert!(cls.admissible && cls.pinched);
}

#[test]
fn vanishing_discriminant_is_inadmissible() {
    let tol = Tolerance::default();
    let (x1, x2) = (WeylChar::real(2.0, 1.0, 1.0), WeylChar::real(0.5, 1.0, 1.0));
    let cls = classify_pair(&x1, &x2, Sign::Pos, &tol);
    assert!(!cls.admissible);
    assert!(cls.discriminant.norm() < 1e-15);
    assert!(!braid(&x1, &x2, Sign::Pos, &tol).admissible);
}

#[test]
fn pinching_condition() {
    let tol = Tolerance::default();
    assert!(!is_pinched(&WeylChar::real(1.3, 1.0, -1.0), &WeylChar::real(0.7, 2.0, 1.0), &tol));
    assert!(is_pinched(&WeylChar::real(1.3, 2.0, -0.5), &WeylChar::real(0.7, -1.0, 1.0), &tol));
}

#[test]
fn casimir_examples() {
    let cfg = RootConfig::new(3).unwrap();
    let s = WeylChar::real(-1.0, 1.0, -1.0);
    assert!(casimir_relation(&cfg, &s, c(-0.5)).unwrap() < 1e-12);
    // t = omega^0 = 1, so the left side is 2; on the right a = m kills the first term
    let (a, b, m) = (s.a, s.b, s.m);
    assert!((b * (a - m) * (a - 1.0 / m) / (a * b) - a - 1.0 / a - c(2.0)).norm() < 1e-15);
    assert!(casimir_relation(&cfg, &s, c(0.1)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn braid_invariants(seed in any::<u64>(), pos in any::<bool>()) {
        let cfg = RootConfig::new(3).unwrap();
        let sign = if pos { Sign::Pos } else { Sign::Neg };
        let mut r = sample::rng(seed);
        let (x1, x2) = sample::admissible_pair(&cfg, &mut r, sign);
        let out = braid(&x1, &x2, sign, &cfg.tol);
        prop_assert!(out.admissible && !out.pinched);
        prop_assert_eq!(out.chi1p.m, x1.m);
        prop_assert_eq!(out.chi2p.m, x2.m);
        let back = braid(&out.chi2p, &out.chi1p, sign.flip(), &cfg.tol);
        prop_assert!(back.chi2p.max_dev(&x1) < 1e-10);
        prop_assert!(back.chi1p.max_dev(&x2) < 1e-10);
        // the total holonomy along the bottom equals the one along the top
        let (z1, z2) = (to_z0_char(&x1), to_z0_char(&x2));
        let (w2, w1) = (to_z0_char(&out.chi2p), to_z0_char(&out.chi1p));
        prop_assert!(dev(&(w2.lower * w1.lower), &(z1.lower * z2.lower)) < 1e-10);
        prop_assert!(dev(&(w2.upper * w1.upper), &(z1.upper * z2.upper)) < 1e-10);
    }

    #[test]
    fn psi_shape(seed in any::<u64>()) {
        let mut r = sample::rng(seed);
        let x = sample::weyl_char(&mut r);
        let p = psi(&x);
        let det = p[(0, 0)] * p[(1, 1)] - p[(0, 1)] * p[(1, 0)];
        prop_assert!((det - 1.0).norm() < 1e-12);
        prop_assert!((p.trace() - x.m - 1.0 / x.m).norm() < 1e-12);
        prop_assert!(dev(&to_z0_char(&x).to_sl2(), &p) < 1e-12);
        let z = to_z0_char(&x);
        let y = to_z0_char(&sample::weyl_char(&mut r));
        let prod = char_product(&z, &y).unwrap();
        prop_assert!((prod.kappa() - z.kappa() * y.kappa()).norm() < 1e-12);
    }

    #[test]
    fn casimir_on_any_branch(seed in any::<u64>(), k in -2i64..3, n in 2usize..8) {
        let cfg = RootConfig::new(n).unwrap();
        let mut r = sample::rng(seed);
        let x = sample::weyl_char(&mut r);
        let mu = x.m.ln() / C64::new(0.0, 2.0 * std::f64::consts::PI) + k as f64;
        prop_assert!(casimir_relation(&cfg, &x, mu).unwrap() < 1e-9);
    }
}
