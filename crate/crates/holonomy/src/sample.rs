//! Seeded random inputs for the identity suites.

use crate::characters::{braid, classify_pair, Sign, WeylChar};
use crate::qdilog::{e, lg, Flattening, RootConfig};
use crate::rmatrix::{CrossingData, Quad};
use crate::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(r: &mut SampleRng, lo: f64, hi: f64) -> f64 {
    r.random_range(lo..hi)
}

pub fn complex_box(r: &mut SampleRng, re: f64, im: f64) -> C64 {
    C64::new(uniform(r, -re, re), uniform(r, -im, im))
}

pub fn small_int(r: &mut SampleRng, k: i64) -> i64 {
    r.random_range(-k..=k)
}

/// zeta0 with real part at distance > 0.05 from the integers, zeta1 on a random branch.
pub fn flattening(r: &mut SampleRng) -> Flattening {
    loop {
        let z0 = C64::new(uniform(r, -2.0, 2.0), uniform(r, -1.0, 1.0));
        if (z0.re - z0.re.round()).abs() > 0.05 {
            return Flattening::from_zeta0(z0, small_int(r, 2));
        }
    }
}

/// A character near the unit torus.
pub fn weyl_char(r: &mut SampleRng) -> WeylChar {
    let mut c = || e(complex_box(r, 0.5, 0.15));
    WeylChar::new_unchecked(c(), c(), c())
}

/// A well-conditioned admissible, non-pinched pair for the given sign.
pub fn admissible_pair(cfg: &RootConfig, r: &mut SampleRng, sign: Sign) -> (WeylChar, WeylChar) {
    loop {
        let c1 = weyl_char(r);
        let c2 = weyl_char(r);
        let cls = classify_pair(&c1, &c2, sign, &cfg.tol);
        if !cls.admissible || cls.pinched {
            continue;
        }
        let out = braid(&c1, &c2, sign, &cfg.tol);
        let ok = [cls.discriminant, out.chi1p.a, out.chi1p.b, out.chi2p.a, out.chi2p.b]
            .iter()
            .all(|z| z.norm() > 0.05 && z.norm() < 20.0);
        let far = (c2.b - c1.m * c1.b).norm() > 0.05 * c2.b.norm();
        if ok && far {
            return (c1, c2);
        }
    }
}

/// A random non-pinched log-colored crossing, logs on random branches.
pub fn crossing(cfg: &RootConfig, r: &mut SampleRng, sign: Sign) -> CrossingData {
    loop {
        let (c1, c2) = admissible_pair(cfg, r, sign);
        let out = braid(&c1, &c2, sign, &cfg.tol);
        let mut sh = || small_int(r, 2) as f64;
        let mu = [lg(c1.m) + sh(), lg(c2.m) + sh()];
        let beta = [lg(c1.b) + sh(), lg(c2.b) + sh(), lg(out.chi1p.b) + sh(), lg(out.chi2p.b) + sh()];
        let gn = complex_box(r, 0.2, 0.2) + small_int(r, 2) as f64;
        let mut sh = || small_int(r, 2) as f64;
        let gw = gn + lg(c1.a) + sh();
        let gs = gw + lg(c2.a) + sh();
        let ge = gn + lg(out.chi2p.a) + sh();
        let c = CrossingData::from_logs(sign, beta, mu, Quad { n: gn, w: gw, s: gs, e: ge });
        // keep clear of near-singular dilogarithm arguments
        let z0 = c.zeta0();
        let clear = [z0.n, z0.w, z0.s, z0.e].iter().all(|z| (z.re - z.re.round()).abs() > 0.02 || z.im.abs() > 0.02);
        if clear && c.validate(cfg).is_ok() {
            return c;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PinchedKind {
    Generic,
    /// alpha1 = mu1 = alpha1'
    Nilpotent,
}

/// Positive pinched crossing with the standard log-coloring.
pub fn pinched_crossing(cfg: &RootConfig, r: &mut SampleRng, kind: PinchedKind) -> CrossingData {
    loop {
        let mut rc = || complex_box(r, 0.5, 0.2);
        let (mut al1, mu1, beta, al2, mu2, gn) = (rc(), rc(), rc(), rc(), rc(), rc());
        if kind == PinchedKind::Nilpotent {
            al1 = mu1;
        }
        if let Some(c) = pinched_from_params(cfg, [al1, al2], [mu1, mu2], beta, gn, C64::new(0.0, 0.0)) {
            let good = [c.lc1p.chi().a, c.lc2p.chi().a].iter().all(|z| z.norm() > 0.05 && z.norm() < 20.0);
            if good {
                return c;
            }
        }
    }
}

/// Positive crossing with b2 = m1 b1 e^{2 pi i delta}; delta = 0 gives the
/// standard pinched log-coloring. Outgoing logs follow the standard ones
/// continuously in delta.
pub fn pinched_from_params(cfg: &RootConfig, al: [C64; 2], mu: [C64; 2], beta: C64, gn: C64, delta: C64) -> Option<CrossingData> {
    let c1 = WeylChar::new_unchecked(e(al[0]), e(beta), e(mu[0]));
    let c2 = WeylChar::new_unchecked(e(al[1]), e(beta + mu[0] + delta), e(mu[1]));
    let out = braid(&c1, &c2, Sign::Pos, &cfg.tol);
    if !out.admissible {
        return None;
    }
    let b2p = beta + lg(out.chi2p.b / e(beta));
    let b1p = beta + mu[1] + lg(out.chi1p.b / e(beta + mu[1]));
    let gw = gn + al[0];
    let gs = gw + al[1];
    let ge = gn + al[1] + lg(out.chi2p.a / c2.a);
    let mut c = CrossingData::from_logs(Sign::Pos, [beta, beta + mu[0] + delta, b1p, b2p], mu, Quad { n: gn, w: gw, s: gs, e: ge });
    if delta == C64::new(0.0, 0.0) {
        // exact standard values, free of rounding in the logs above
        c = c.with_betas([beta, beta + mu[0], beta + mu[1], beta]);
    }
    Some(c)
}
