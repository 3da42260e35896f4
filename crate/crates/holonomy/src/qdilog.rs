//! Root-of-unity special functions.
//!
//! Throughout, `omega = exp(2 pi i / N)` and `omega^x = exp(2 pi i x / N)` for
//! complex `x`. All logarithms are principal, with imaginary part in (-pi, pi].

use crate::{Error, Result, C64};
use polylog::Li2;
use std::f64::consts::PI;

pub const TWO_PI_I: C64 = C64::new(0.0, 2.0 * PI);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub constraint: f64,
    pub singular: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rel: 1e-8, constraint: 1e-10, singular: 1e-9 }
    }
}

impl Tolerance {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("rel", self.rel), ("constraint", self.constraint), ("singular", self.singular)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidTolerance(format!("{name} = {v} must lie in (0, 1)")));
            }
        }
        Ok(())
    }
}

/// The order `N` of the root of unity, with the numerical tolerances used by
/// every singularity and constraint check downstream.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootConfig {
    n: usize,
    pub tol: Tolerance,
}

impl RootConfig {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_tol(n, Tolerance::default())
    }

    pub fn with_tol(n: usize, tol: Tolerance) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidOrder(n));
        }
        tol.validate()?;
        Ok(RootConfig { n, tol })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nf(&self) -> f64 {
        self.n as f64
    }

    pub fn omega(&self) -> C64 {
        self.pow(C64::new(1.0, 0.0))
    }

    pub fn xi(&self) -> C64 {
        self.pow(C64::new(0.5, 0.0))
    }

    /// omega^x
    pub fn pow(&self, x: C64) -> C64 {
        (TWO_PI_I * x / self.nf()).exp()
    }

    pub fn pow_i(&self, k: i64) -> C64 {
        self.pow(C64::new(k as f64, 0.0))
    }

    pub fn modb(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }
}

pub fn omega_pow(cfg: &RootConfig, x: C64) -> C64 {
    cfg.pow(x)
}

/// exp(2 pi i x)
pub fn e(x: C64) -> C64 {
    (TWO_PI_I * x).exp()
}

/// Principal log divided by 2 pi i.
pub fn lg(z: C64) -> C64 {
    z.ln() / TWO_PI_I
}

/// A pair (zeta0, zeta1) with exp(2 pi i zeta1) (1 - exp(2 pi i zeta0)) = 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Flattening {
    pub zeta0: C64,
    pub zeta1: C64,
}

impl Flattening {
    pub fn new(zeta0: C64, zeta1: C64, tol: &Tolerance) -> Result<Self> {
        let f = Flattening { zeta0, zeta1 };
        let r = f.residual();
        if r > tol.constraint {
            return Err(Error::Constraint(r));
        }
        Ok(f)
    }

    pub fn new_unchecked(zeta0: C64, zeta1: C64) -> Self {
        Flattening { zeta0, zeta1 }
    }

    /// The flattening with given zeta0 whose zeta1 is the principal value plus `shift`.
    pub fn from_zeta0(zeta0: C64, shift: i64) -> Self {
        let zeta1 = -lg(C64::new(1.0, 0.0) - e(zeta0)) + shift as f64;
        Flattening { zeta0, zeta1 }
    }

    pub fn residual(&self) -> f64 {
        (e(self.zeta1) * (C64::new(1.0, 0.0) - e(self.zeta0)) - 1.0).norm()
    }

    /// (-zeta1, -zeta0), again a flattening.
    pub fn dual(&self) -> Self {
        Flattening { zeta0: -self.zeta1, zeta1: -self.zeta0 }
    }
}

/// q-Pochhammer symbol: (1-a)(1-aq)...(1-aq^{k-1}) for k > 0, and
/// 1 / ((1-aq^{-1})...(1-aq^{k})) for k < 0.
pub fn qpoch(a: C64, q: C64, k: i64, tol: &Tolerance) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    if k >= 0 {
        let mut r = one;
        let mut t = a;
        for _ in 0..k {
            r *= one - t;
            t *= q;
        }
        Ok(r)
    } else {
        let mut r = one;
        let qi = one / q;
        let mut t = a * qi;
        for _ in 0..(-k) {
            let f = one - t;
            if f.norm() < tol.singular {
                return Err(Error::Singular(format!("qpoch factor vanishes at k = {k}")));
            }
            r *= f;
            t *= qi;
        }
        Ok(one / r)
    }
}

/// The cyclic dilogarithm <zeta|k>.
pub fn cyc_dilog(cfg: &RootConfig, zeta: C64, k: i64) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let mut r = one;
    if k > 0 {
        for j in 1..=k {
            let f = one - cfg.pow(zeta + j as f64);
            if f.norm() < cfg.tol.singular {
                return Err(Error::Singular(format!("<zeta|{k}> has a pole: omega^(zeta+{j}) = 1")));
            }
            r /= f;
        }
    } else {
        for j in 0..(-k) {
            r *= one - cfg.pow(zeta - j as f64);
        }
    }
    Ok(r)
}

/// Principal-branch dilogarithm.
pub fn li2(z: C64) -> C64 {
    z.li2()
}

/// The lifted dilogarithm L(zeta0, zeta1).
pub fn lifted_dilog(cfg: &RootConfig, f: &Flattening) -> Result<C64> {
    let ez = e(f.zeta0);
    let one = C64::new(1.0, 0.0);
    if ez.norm() < cfg.tol.singular || (one - ez).norm() < cfg.tol.singular {
        return Err(Error::Singular("exp(2 pi i zeta0) is 0 or 1".into()));
    }
    Ok(li2(ez) + TWO_PI_I * TWO_PI_I / 2.0 * f.zeta0 * f.zeta1 + TWO_PI_I * f.zeta0 * (one - ez).ln())
}

pub fn d_const(cfg: &RootConfig, zeta: C64) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let mut s = C64::new(0.0, 0.0);
    for k in 1..cfg.n() {
        let f = one - cfg.pow(zeta + k as f64);
        if f.norm() < cfg.tol.singular {
            return Err(Error::Singular(format!("D: omega^(zeta+{k}) = 1")));
        }
        s += k as f64 * f.ln();
    }
    Ok((s / cfg.nf()).exp())
}

/// D(0)
pub fn d0(cfg: &RootConfig) -> C64 {
    d_const(cfg, C64::new(0.0, 0.0)).expect("D(0) is regular")
}

/// Lambda(zeta0, zeta1 | 0) from its closed form.
pub fn lambda0(cfg: &RootConfig, f: &Flattening) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let den = one - cfg.pow(f.zeta0);
    if den.norm() < cfg.tol.singular || (one - e(f.zeta0)).norm() < cfg.tol.singular {
        return Err(Error::Singular("Lambda: zeta0 is an integer".into()));
    }
    let l = lifted_dilog(cfg, f)?;
    let ratio = (one - cfg.pow(cfg.nf() * f.zeta0)) / den;
    Ok((-l / (TWO_PI_I * cfg.nf())).exp() * ratio / d_const(cfg, f.zeta0)?)
}

/// Lambda(zeta0, zeta1 | n); `n` is reduced mod N first.
pub fn lambda_dilog(cfg: &RootConfig, f: &Flattening, n: i64) -> Result<C64> {
    let n = cfg.modb(n) as i64;
    Ok(lambda0(cfg, f)? * cfg.pow(-(n as f64) * f.zeta1) * cyc_dilog(cfg, f.zeta0, n)?)
}

/// All N values Lambda(f | 0..N).
pub fn lambda_table(cfg: &RootConfig, f: &Flattening) -> Result<Vec<C64>> {
    let l0 = lambda0(cfg, f)?;
    let mut out = Vec::with_capacity(cfg.n());
    let mut q = C64::new(1.0, 0.0);
    for n in 0..cfg.n() as i64 {
        if n > 0 {
            q /= C64::new(1.0, 0.0) - cfg.pow(f.zeta0 + n as f64);
        }
        out.push(l0 * cfg.pow(-(n as f64) * f.zeta1) * q);
    }
    Ok(out)
}

pub fn s_norm(cfg: &RootConfig, f: &Flattening) -> Result<C64> {
    let dual = lambda_table(cfg, &f.dual())?;
    let sum: C64 = dual.iter().map(|x| 1.0 / x).sum();
    Ok(cfg.pow((cfg.nf() - 1.0) * f.zeta0) / lambda0(cfg, f)? * sum)
}

/// f(alpha, beta, gamma) = sum_k <alpha|k> / <beta|k> omega^{k gamma}.
pub fn fusion_f(cfg: &RootConfig, alpha: C64, beta: C64, gamma: C64) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let lhs = one - e(alpha);
    let rhs = (one - e(beta)) * e(gamma);
    let r = (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1.0);
    if r > cfg.tol.constraint.max(cfg.tol.rel) {
        return Err(Error::FusionConstraint(r));
    }
    fusion_sum(cfg, alpha, beta, gamma)
}

/// The fusion sum without the constraint check.
pub fn fusion_sum(cfg: &RootConfig, alpha: C64, beta: C64, gamma: C64) -> Result<C64> {
    let mut s = C64::new(0.0, 0.0);
    for k in 0..cfg.n() as i64 {
        s += cyc_dilog(cfg, alpha, k)? / cyc_dilog(cfg, beta, k)? * cfg.pow(k as f64 * gamma);
    }
    Ok(s)
}

/// ([k], cutoff(k)) where 0 <= [k] < N and cutoff(k) = 1 iff 0 <= k < N.
pub fn index_mod(cfg: &RootConfig, k: i64) -> (usize, u8) {
    let m = cfg.modb(k);
    (m, u8::from(m as i64 == k))
}

/// (omega; omega)_k, which vanishes for k >= N.
pub fn qfact(cfg: &RootConfig, k: usize) -> C64 {
    let one = C64::new(1.0, 0.0);
    (1..=k).fold(one, |acc, j| acc * (one - cfg.pow_i(j as i64)))
}

/// (conj omega; conj omega)_k
pub fn qfact_bar(cfg: &RootConfig, k: usize) -> C64 {
    qfact(cfg, k).conj()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn omega_examples() {
        let cfg = RootConfig::new(4).unwrap();
        assert!((omega_pow(&cfg, c(1.0, 0.0)) - c(0.0, 1.0)).norm() < 1e-15);
        assert!((omega_pow(&cfg, c(0.0, 0.0)) - 1.0).norm() < 1e-15);
        let cfg2 = RootConfig::new(2).unwrap();
        assert!((omega_pow(&cfg2, c(0.5, 0.0)) - c(0.0, 1.0)).norm() < 1e-15);
        assert!((cfg2.xi() * cfg2.xi() - cfg2.omega()).norm() < 1e-15);
        assert!(RootConfig::new(1).is_err());
    }

    #[test]
    fn qpoch_examples() {
        let tol = Tolerance::default();
        let cfg = RootConfig::new(5).unwrap();
        let w = cfg.omega();
        assert_eq!(qpoch(c(0.3, 0.2), w, 0, &tol).unwrap(), c(1.0, 0.0));
        assert!(qpoch(w, w, 5, &tol).unwrap().norm() < 1e-14);
        let a = c(0.7, -0.4);
        let q = c(0.2, 0.9);
        let want = 1.0 / (1.0 - a / q);
        assert!((qpoch(a, q, -1, &tol).unwrap() - want).norm() < 1e-14);
        assert!(qpoch(c(1.0, 0.0), c(1.0, 0.0), -2, &tol).is_err());
    }

    #[test]
    fn cyc_dilog_examples() {
        let cfg = RootConfig::new(2).unwrap();
        let z = c(0.3, 0.1);
        assert_eq!(cyc_dilog(&cfg, z, 0).unwrap(), c(1.0, 0.0));
        assert!((cyc_dilog(&cfg, z, -1).unwrap() - (1.0 - cfg.pow(z))).norm() < 1e-15);
        assert!((cyc_dilog(&cfg, c(0.0, 0.0), 1).unwrap() - 0.5).norm() < 1e-15);
        assert!(cyc_dilog(&cfg, c(1.0, 0.0), 1).is_err());
    }

    #[test]
    fn li2_values() {
        assert!(li2(c(0.0, 0.0)).norm() < 1e-16);
        assert!((li2(c(1.0, 0.0)) - PI * PI / 6.0).norm() < 1e-14);
        assert!((li2(c(-1.0, 0.0)) + PI * PI / 12.0).norm() < 1e-14);
    }

    #[test]
    fn d_const_n2() {
        let cfg = RootConfig::new(2).unwrap();
        assert!((d_const(&cfg, c(0.0, 0.0)).unwrap() - 2f64.sqrt()).norm() < 1e-14);
    }

    #[test]
    fn index_mod_examples() {
        let cfg = RootConfig::new(5).unwrap();
        assert_eq!(index_mod(&cfg, -1), (4, 0));
        assert_eq!(index_mod(&cfg, 5), (0, 0));
        assert_eq!(index_mod(&cfg, 3), (3, 1));
        for n in -5..5 {
            assert_eq!(cfg.modb(n), 4 - cfg.modb(-n - 1));
        }
    }

    #[test]
    fn flattening_checked() {
        let tol = Tolerance::default();
        let f = Flattening::from_zeta0(c(0.3, 0.2), 2);
        assert!(Flattening::new(f.zeta0, f.zeta1, &tol).is_ok());
        assert!(Flattening::new(f.zeta0, f.zeta1 + 0.1, &tol).is_err());
        assert!(f.dual().residual() < 1e-12);
    }
}
