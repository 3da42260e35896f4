use holonomy::braidgrpd::*;
use holonomy::characters::{self, Sign, WeylChar};
use holonomy::linalg;
use holonomy::qdilog::RootConfig;
use holonomy::rmatrix;
use holonomy::{sample, verify, C64};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn diagram(width: usize, letters: &[i64]) -> DiagramGraph {
    build_diagram(&BraidWord::new(width, letters.to_vec()).unwrap())
}

#[test]
fn word_validation() {
    assert!(BraidWord::new(0, vec![]).is_err());
    assert!(BraidWord::new(2, vec![0]).is_err());
    assert!(BraidWord::new(2, vec![2]).is_err());
    assert!(BraidWord::new(3, vec![-3]).is_err());
    assert!(BraidWord::new(3, vec![2, -1]).is_ok());
}

#[test]
fn diagram_shapes() {
    let d = diagram(2, &[1]);
    assert_eq!(d.segments.len(), 4);
    assert_eq!(d.n_regions, 4);
    assert!(d.internal_segments().is_empty());
    assert_eq!(d.bottom_strands(), vec![1, 0]);
    let d = diagram(3, &[1, 2, 1]);
    assert_eq!(d.segments.len(), 9);
    assert_eq!(d.internal_segments().len(), 3);
    assert_eq!(d.internal_regions().len(), 1);
    assert_eq!(d.bottom_strands(), vec![2, 1, 0]);
    let d = diagram(4, &[]);
    assert_eq!(d.bottom_strands(), vec![0, 1, 2, 3]);
    assert_eq!(d.half_segments.len(), 0);
}

#[test]
fn single_crossing_longitudes() {
    for (letter, eps) in [(1, 1.0), (-1, -1.0)] {
        let d = diagram(2, &[letter]);
        let beta = vec![c(0.1, 0.2), c(-0.3, 0.05), c(0.7, -0.1), c(0.25, 0.4)];
        let lc = LogColoring { beta: beta.clone(), gamma: vec![c(0.0, 0.0); 4], mu: vec![c(0.0, 0.0); 2] };
        // strand 0 runs 0 -> 3, strand 1 runs 1 -> 2
        let lam = log_longitudes(&d, &lc);
        assert!((lam[0] - (beta[3] - beta[0]) * eps / 2.0).norm() < 1e-15);
        assert!((lam[1] - (beta[1] - beta[2]) * eps / 2.0).norm() < 1e-15);
    }
}

#[test]
fn kashaev_coloring_of_the_braid_relation() {
    let cfg = RootConfig::new(3).unwrap();
    let top = [WeylChar::real(-1.0, 1.0, -1.0), WeylChar::real(-1.0, -1.0, -1.0), WeylChar::real(-1.0, 1.0, -1.0)];
    for w in [[1, 2, 1], [2, 1, 2]] {
        let d = diagram(3, &w);
        let x = propagate_chi(&cfg, &d, &top).unwrap();
        assert!(x.pinched.iter().all(|&p| p));
    }
}

#[test]
fn identity_braid_is_identity() {
    let cfg = RootConfig::new(3).unwrap();
    let d = diagram(2, &[]);
    let top = [WeylChar::real(1.3, 0.8, -1.0), WeylChar::real(0.6, 1.1, 1.0)];
    let x = propagate_chi(&cfg, &d, &top).unwrap();
    let lc = LogColoring::principal(&d, &x, &TopData::principal(&top, c(0.1, 0.0)));
    let j = jfunc_eval(&cfg, &d, &x, &lc).unwrap();
    assert_eq!(j, linalg::identity(9));
}

#[test]
fn inconsistent_log_coloring_is_rejected() {
    let cfg = RootConfig::new(2).unwrap();
    let mut r = sample::rng(5);
    let (d, x, mut lc) = verify::random_colored_braid(&cfg, &mut r, 2, 2);
    lc.beta[0] += 0.3;
    assert!(jfunc_eval(&cfg, &d, &x, &lc).is_err());
}

fn sign(pos: bool) -> Sign {
    if pos {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn one_crossing_propagation(seed in any::<u64>(), pos in any::<bool>()) {
        let cfg = RootConfig::new(2).unwrap();
        let s = sign(pos);
        let (x1, x2) = sample::admissible_pair(&cfg, &mut sample::rng(seed), s);
        let d = diagram(2, &[if pos { 1 } else { -1 }]);
        let x = propagate_chi(&cfg, &d, &[x1, x2]).unwrap();
        let out = characters::braid(&x1, &x2, s, &cfg.tol);
        let bottom = x.bottom(&d);
        prop_assert!(bottom[0].max_dev(&out.chi2p) < 1e-14);
        prop_assert!(bottom[1].max_dev(&out.chi1p) < 1e-14);
    }

    #[test]
    fn one_crossing_state_sum_is_the_braiding(seed in any::<u64>(), pos in any::<bool>(), n in 2usize..5) {
        let cfg = RootConfig::new(n).unwrap();
        let mut r = sample::rng(seed);
        let (x1, x2) = sample::admissible_pair(&cfg, &mut r, sign(pos));
        let d = diagram(2, &[if pos { 1 } else { -1 }]);
        let x = propagate_chi(&cfg, &d, &[x1, x2]).unwrap();
        let lc = LogColoring::principal(&d, &x, &TopData::principal(&[x1, x2], c(0.05, 0.1)));
        let j = jfunc_eval(&cfg, &d, &x, &lc).unwrap();
        let b = rmatrix::braiding_op(&cfg, &crossing_data(&d, &lc, 0)).unwrap();
        prop_assert!(linalg::rel_dev(&j, &b) == 0.0);
    }

    #[test]
    fn r2_move_is_trivial(seed in any::<u64>(), pos in any::<bool>(), n in 2usize..5) {
        let cfg = RootConfig::new(n).unwrap();
        let mut r = sample::rng(seed);
        let (x1, x2) = sample::admissible_pair(&cfg, &mut r, sign(pos));
        let e = if pos { 1 } else { -1 };
        let d = diagram(2, &[e, -e]);
        let id = diagram(2, &[]);
        let x = propagate_chi(&cfg, &d, &[x1, x2]).unwrap();
        let xid = propagate_chi(&cfg, &id, &[x1, x2]).unwrap();
        prop_assert!(x.bottom(&d)[0].max_dev(&x1) < 1e-10);
        let lid = LogColoring::principal(&id, &xid, &TopData::principal(&[x1, x2], c(0.2, -0.1)));
        let lc = fit_coloring(&d, &x, &lid.boundary(&id), &[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let rep = check_move(
            &cfg,
            &ColoredDiagram { diagram: &d, chi: &x, log: &lc },
            &ColoredDiagram { diagram: &id, chi: &xid, log: &lid },
            MoveKind::R2,
        ).unwrap();
        prop_assert!(rep.deviation < 1e-9);
    }

    #[test]
    fn integer_log_shifts_only_change_a_phase(seed in any::<u64>(), n in 2usize..4) {
        let cfg = RootConfig::new(n).unwrap();
        let mut r = sample::rng(seed);
        let (d, x, lc) = verify::random_colored_braid(&cfg, &mut r, 3, 4);
        let mut lc2 = lc.clone();
        for (i, s) in d.internal_segments().into_iter().enumerate() {
            lc2.beta[s] += (i % 3) as f64 - 1.0;
        }
        for g in d.internal_regions() {
            lc2.gamma[g] += 1.0;
        }
        for (_, v) in edge_gluing_residuals(&d, &lc2) {
            prop_assert!(v < 1e-10);
        }
        let j = jfunc_eval(&cfg, &d, &x, &lc).unwrap();
        let j2 = jfunc_eval(&cfg, &d, &x, &lc2).unwrap();
        let ph = log_dependence_phase(&cfg, &d, &lc, &lc2);
        prop_assert!(linalg::rel_dev(&j2, &(j * ph)) < 1e-8);
    }
}
