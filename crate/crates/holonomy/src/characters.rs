//! Central characters of the Weyl algebra and their braiding.

use crate::qdilog::{e, RootConfig, Tolerance};
use crate::{Error, Result, C64};
use nalgebra::Matrix2;

pub type M2 = Matrix2<C64>;

/// Largest entry modulus.
pub fn m2_max(m: &M2) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn from_i64(s: i64) -> Option<Sign> {
        match s {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Pos => 1.0,
            Sign::Neg => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// Values (a, b, m) of x^N, y^N, z^N.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeylChar {
    pub a: C64,
    pub b: C64,
    pub m: C64,
}

impl WeylChar {
    pub fn new(a: C64, b: C64, m: C64, tol: &Tolerance) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("m", m)] {
            if !v.is_finite() || v.norm() <= tol.singular {
                return Err(Error::Singular(format!("character coordinate {name} = {v}")));
            }
        }
        Ok(WeylChar { a, b, m })
    }

    pub fn new_unchecked(a: C64, b: C64, m: C64) -> Self {
        WeylChar { a, b, m }
    }

    pub fn real(a: f64, b: f64, m: f64) -> Self {
        WeylChar { a: C64::new(a, 0.0), b: C64::new(b, 0.0), m: C64::new(m, 0.0) }
    }

    pub fn max_dev(&self, o: &WeylChar) -> f64 {
        [(self.a, o.a), (self.b, o.b), (self.m, o.m)]
            .iter()
            .map(|(x, y)| (x - y).norm() / x.norm().max(y.norm()).max(1e-300))
            .fold(0.0, f64::max)
    }
}

/// Logarithms (alpha, beta, mu) of a character: a = e^{2 pi i alpha}, etc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogWeylChar {
    pub alpha: C64,
    pub beta: C64,
    pub mu: C64,
}

impl LogWeylChar {
    pub fn new(alpha: C64, beta: C64, mu: C64) -> Self {
        LogWeylChar { alpha, beta, mu }
    }

    pub fn chi(&self) -> WeylChar {
        WeylChar { a: e(self.alpha), b: e(self.beta), m: e(self.mu) }
    }

    /// Checks the logs against a given character within `tol.constraint` (relative).
    pub fn check(&self, chi: &WeylChar, tol: &Tolerance) -> Result<()> {
        let mine = self.chi();
        for (name, x, y) in [("alpha", mine.a, chi.a), ("beta", mine.b, chi.b), ("mu", mine.m, chi.m)] {
            if (x - y).norm() > tol.constraint.max(1e-9) * y.norm().max(1.0) {
                return Err(Error::RootMismatch(name.into()));
            }
        }
        Ok(())
    }
}

/// A point of SL2*: a lower and an upper triangular matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SL2StarElement {
    pub lower: M2,
    pub upper: M2,
}

impl SL2StarElement {
    pub fn from_coords(kappa: C64, phi: C64, eps: C64) -> Self {
        let o = C64::new(0.0, 0.0);
        let i = C64::new(1.0, 0.0);
        SL2StarElement { lower: M2::new(kappa, o, phi, i), upper: M2::new(i, eps, o, kappa) }
    }

    pub fn identity() -> Self {
        Self::from_coords(C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0))
    }

    pub fn kappa(&self) -> C64 {
        self.lower[(0, 0)]
    }

    pub fn phi(&self) -> C64 {
        self.lower[(1, 0)]
    }

    pub fn eps(&self) -> C64 {
        self.upper[(0, 1)]
    }

    /// (chi(K^N), chi(E^N), chi(F^N))
    pub fn z0_values(&self) -> (C64, C64, C64) {
        (self.kappa(), self.eps(), self.phi() / self.kappa())
    }

    /// x+ (x-)^{-1}
    pub fn to_sl2(&self) -> M2 {
        self.lower * self.upper.try_inverse().expect("kappa != 0")
    }

    pub fn max_dev(&self, o: &Self) -> f64 {
        let d = m2_max(&(self.lower - o.lower)).max(m2_max(&(self.upper - o.upper)));
        let s = m2_max(&self.lower).max(m2_max(&self.upper)).max(1.0);
        d / s
    }

    fn shape_ok(&self) -> bool {
        let tiny = 1e-300;
        self.lower[(0, 1)].norm() <= tiny
            && (self.lower[(1, 1)] - 1.0).norm() <= 1e-12
            && self.upper[(1, 0)].norm() <= tiny
            && (self.upper[(0, 0)] - 1.0).norm() <= 1e-12
            && (self.upper[(1, 1)] - self.lower[(0, 0)]).norm() <= 1e-12 * self.kappa().norm().max(1.0)
    }
}

pub fn psi(chi: &WeylChar) -> M2 {
    let WeylChar { a, b, m } = *chi;
    M2::new(a, -b * (a - m), (a - 1.0 / m) / b, m + 1.0 / m - a)
}

/// The SL2* point of a character: kappa = a, eps = b(a - m), phi = b^{-1}(a - m^{-1}).
pub fn to_z0_char(chi: &WeylChar) -> SL2StarElement {
    let WeylChar { a, b, m } = *chi;
    SL2StarElement::from_coords(a, (a - 1.0 / m) / b, b * (a - m))
}

pub fn char_product(c1: &SL2StarElement, c2: &SL2StarElement) -> Result<SL2StarElement> {
    let p = SL2StarElement { lower: c1.lower * c2.lower, upper: c1.upper * c2.upper };
    if !p.shape_ok() {
        return Err(Error::Inconsistent("product left SL2*".into()));
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BraidOutcome {
    pub chi2p: WeylChar,
    pub chi1p: WeylChar,
    pub admissible: bool,
    pub pinched: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairClass {
    pub admissible: bool,
    pub pinched: bool,
    /// A for positive crossings, A-tilde for negative ones.
    pub discriminant: C64,
}

fn in_window(z: C64, tol: &Tolerance) -> bool {
    z.is_finite() && z.norm() > tol.singular && z.norm() < 1.0 / tol.singular
}

fn raw_braid(c1: &WeylChar, c2: &WeylChar, sign: Sign) -> (WeylChar, WeylChar, C64) {
    let (a1, b1, m1) = (c1.a, c1.b, c1.m);
    let (a2, b2, m2) = (c2.a, c2.b, c2.m);
    match sign {
        Sign::Pos => {
            let big_a = 1.0 - (m1 * b1 / b2) * (1.0 - a1 / m1) * (1.0 - 1.0 / (m2 * a2));
            let a1p = a1 / big_a;
            let a2p = a2 * big_a;
            let b1p = (m2 * b2 / m1) / (1.0 - m2 * a2 * (1.0 - b2 / (m1 * b1)));
            let b2p = b1 * (1.0 - (m1 / a1) * (1.0 - b2 / (m1 * b1)));
            (WeylChar::new_unchecked(a2p, b2p, m2), WeylChar::new_unchecked(a1p, b1p, m1), big_a)
        }
        Sign::Neg => {
            let big_a = 1.0 - (b2 / (m1 * b1)) * (1.0 - m1 * a1) * (1.0 - m2 / a2);
            let a1p = a1 / big_a;
            let a2p = a2 * big_a;
            let b1p = (m2 * b2 / m1) * (1.0 - (a2 / m2) * (1.0 - m1 * b1 / b2));
            let b2p = b1 / (1.0 - (1.0 / (m1 * a1)) * (1.0 - m1 * b1 / b2));
            (WeylChar::new_unchecked(a2p, b2p, m2), WeylChar::new_unchecked(a1p, b1p, m1), big_a)
        }
    }
}

pub fn is_pinched(chi1: &WeylChar, chi2: &WeylChar, tol: &Tolerance) -> bool {
    let t = chi1.m * chi1.b;
    (chi2.b - t).norm() <= tol.singular * chi2.b.norm().max(t.norm())
}

pub fn classify_pair(chi1: &WeylChar, chi2: &WeylChar, sign: Sign, tol: &Tolerance) -> PairClass {
    let (c2p, c1p, d) = raw_braid(chi1, chi2, sign);
    let admissible = in_window(d, tol)
        && [c2p.a, c2p.b, c1p.a, c1p.b].iter().all(|&z| in_window(z, tol));
    PairClass { admissible, pinched: is_pinched(chi1, chi2, tol), discriminant: d }
}

/// (chi2', chi1') = B(chi1, chi2) for sign +1, B^{-1} for sign -1.
pub fn braid(chi1: &WeylChar, chi2: &WeylChar, sign: Sign, tol: &Tolerance) -> BraidOutcome {
    let (chi2p, chi1p, _) = raw_braid(chi1, chi2, sign);
    let cls = classify_pair(chi1, chi2, sign, tol);
    BraidOutcome { chi2p, chi1p, admissible: cls.admissible, pinched: cls.pinched }
}

/// |P_N(chi(Omega)) - (chi(E^N F^N) - a - a^{-1})| where t = omega^{mu + 1/2}.
pub fn casimir_relation(cfg: &RootConfig, chi: &WeylChar, mu: C64) -> Result<f64> {
    let m_from_mu = e(mu);
    if (m_from_mu - chi.m).norm() > cfg.tol.constraint.max(1e-9) * chi.m.norm().max(1.0) {
        return Err(Error::RootMismatch("mu".into()));
    }
    let t = cfg.pow(mu + 0.5);
    let n = cfg.n() as i32;
    let lhs = t.powi(n) + t.powi(-n);
    let WeylChar { a, b, m } = *chi;
    let rhs = b * (a - m) * (a - 1.0 / m) / (a * b) - a - 1.0 / a;
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_sigma_hat() {
        let p = psi(&WeylChar::real(-1.0, 1.0, -1.0));
        assert!(m2_max(&(p + M2::identity())) < 1e-15);
    }

    #[test]
    fn z0_sigma_hat() {
        let s = to_z0_char(&WeylChar::real(-1.0, 1.0, -1.0));
        let o = C64::new(0.0, 0.0);
        let i = C64::new(1.0, 0.0);
        assert!(m2_max(&(s.lower - M2::new(-i, o, o, i))) < 1e-15);
        assert!(m2_max(&(s.upper - M2::new(i, o, o, -i))) < 1e-15);
        let id = to_z0_char(&WeylChar::real(1.0, 3.0, 1.0));
        assert!(id.max_dev(&SL2StarElement::identity()) < 1e-15);
    }

    #[test]
    fn kashaev_pair() {
        let tol = Tolerance::default();
        let out = braid(&WeylChar::real(-1.0, 1.0, -1.0), &WeylChar::real(-1.0, -1.0, -1.0), Sign::Pos, &tol);
        assert!(out.admissible && out.pinched);
        assert!(out.chi2p.max_dev(&WeylChar::real(-1.0, 1.0, -1.0)) < 1e-15);
        assert!(out.chi1p.max_dev(&WeylChar::real(-1.0, -1.0, -1.0)) < 1e-15);
    }

    #[test]
    fn a_zero_pair() {
        let tol = Tolerance::default();
        let c = classify_pair(&WeylChar::real(2.0, 1.0, 1.0), &WeylChar::real(0.5, 1.0, 1.0), Sign::Pos, &tol);
        assert!(!c.admissible);
        assert!(c.discriminant.norm() < 1e-15);
        let c2 = classify_pair(&WeylChar::real(1.0, -1.0, 1.0), &WeylChar::real(1.0, 2.0, 1.0), Sign::Pos, &tol);
        assert!(!c2.pinched);
    }

    #[test]
    fn casimir_sigma_hat() {
        let cfg = RootConfig::new(3).unwrap();
        let chi = WeylChar::real(-1.0, 1.0, -1.0);
        assert!(casimir_relation(&cfg, &chi, C64::new(-0.5, 0.0)).unwrap() < 1e-12);
        assert!(casimir_relation(&cfg, &chi, C64::new(0.1, 0.0)).is_err());
    }
}
