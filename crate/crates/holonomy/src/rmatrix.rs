//! R-matrices and braidings of log-colored crossings.
//!
//! Coefficients R[n1, n2, n1', n2'] are stored densely. The braiding of a
//! crossing of either sign sends v-hat_{n1 n2} to
//! sum R[n1, n2, n1', n2'] v-hat_{n2' n1'}; as a matrix it has column
//! index n1*N + n2 and row index n2'*N + n1'.
//!
//! Segment labels: 1 and 2 enter on the left and right slot, 2' and 1' leave
//! on the left and right slot. Regions: N left of the crossing, S right of it,
//! W between the incoming strands, E between the outgoing ones.

use crate::characters::{braid, LogWeylChar, Sign, WeylChar};
use crate::linalg::{self, CMat};
use crate::qdilog::{self, e, lg, Flattening, RootConfig, TWO_PI_I};
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    N,
    W,
    S,
    E,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::N, Region::W, Region::S, Region::E];

    pub fn label(self) -> char {
        match self {
            Region::N => 'N',
            Region::W => 'W',
            Region::S => 'S',
            Region::E => 'E',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quad<T> {
    pub n: T,
    pub w: T,
    pub s: T,
    pub e: T,
}

impl<T: Copy> Quad<T> {
    pub fn get(&self, r: Region) -> T {
        match r {
            Region::N => self.n,
            Region::W => self.w,
            Region::S => self.s,
            Region::E => self.e,
        }
    }

    pub fn map<U>(&self, f: impl Fn(T) -> U) -> Quad<U> {
        Quad { n: f(self.n), w: f(self.w), s: f(self.s), e: f(self.e) }
    }

    pub fn try_map<U>(&self, f: impl Fn(Region, T) -> Result<U>) -> Result<Quad<U>> {
        Ok(Quad {
            n: f(Region::N, self.n)?,
            w: f(Region::W, self.w)?,
            s: f(Region::S, self.s)?,
            e: f(Region::E, self.e)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Kappa {
    /// Principal branch: kappa = Log(K) / (2 pi i).
    Auto,
    Explicit(C64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossingData {
    pub sign: Sign,
    pub lc1: LogWeylChar,
    pub lc2: LogWeylChar,
    pub lc1p: LogWeylChar,
    pub lc2p: LogWeylChar,
    pub gamma: Quad<C64>,
    pub kappa: Kappa,
}

pub type ZetaSet = Quad<Flattening>;

fn dist_to_int(z: C64) -> f64 {
    (z - z.re.round()).norm()
}

fn as_int(x: C64, what: &str) -> Result<i64> {
    if dist_to_int(x) > 1e-8 {
        return Err(Error::NonInteger(format!("{what} = {x}")));
    }
    Ok(x.re.round() as i64)
}

impl CrossingData {
    /// Crossing from segment logs `beta = [b1, b2, b1', b2']`, meridian logs
    /// `mu = [mu1, mu2]` and region logs; the alphas follow from the regions.
    pub fn from_logs(sign: Sign, beta: [C64; 4], mu: [C64; 2], gamma: Quad<C64>) -> Self {
        let g = gamma;
        CrossingData {
            sign,
            lc1: LogWeylChar::new(g.w - g.n, beta[0], mu[0]),
            lc2: LogWeylChar::new(g.s - g.w, beta[1], mu[1]),
            lc1p: LogWeylChar::new(g.s - g.e, beta[2], mu[0]),
            lc2p: LogWeylChar::new(g.e - g.n, beta[3], mu[1]),
            gamma,
            kappa: Kappa::Auto,
        }
    }

    /// Braids the incoming characters and takes principal logs everywhere, with
    /// gamma_N given.
    pub fn from_chars(cfg: &RootConfig, sign: Sign, chi1: &WeylChar, chi2: &WeylChar, gamma_n: C64) -> Result<Self> {
        let out = braid(chi1, chi2, sign, &cfg.tol);
        if !out.admissible {
            return Err(Error::Inadmissible(0));
        }
        let gw = gamma_n + lg(chi1.a);
        let gs = gw + lg(chi2.a);
        let ge = gamma_n + lg(out.chi2p.a);
        Ok(Self::from_logs(
            sign,
            [lg(chi1.b), lg(chi2.b), lg(out.chi1p.b), lg(out.chi2p.b)],
            [lg(chi1.m), lg(chi2.m)],
            Quad { n: gamma_n, w: gw, s: gs, e: ge },
        ))
    }

    pub fn eps(&self) -> f64 {
        self.sign.value()
    }

    pub fn betas(&self) -> [C64; 4] {
        [self.lc1.beta, self.lc2.beta, self.lc1p.beta, self.lc2p.beta]
    }

    pub fn mus(&self) -> [C64; 2] {
        [self.lc1.mu, self.lc2.mu]
    }

    pub fn with_betas(&self, b: [C64; 4]) -> Self {
        let mut c = *self;
        c.lc1.beta = b[0];
        c.lc2.beta = b[1];
        c.lc1p.beta = b[2];
        c.lc2p.beta = b[3];
        c
    }

    pub fn with_gamma(&self, g: Quad<C64>) -> Self {
        let mut c = Self::from_logs(self.sign, self.betas(), self.mus(), g);
        c.kappa = self.kappa;
        c
    }

    pub fn with_kappa(&self, k: C64) -> Self {
        CrossingData { kappa: Kappa::Explicit(k), ..*self }
    }

    /// Checks region/segment consistency, meridians, and that the outgoing
    /// characters are the braiding of the incoming ones.
    pub fn validate(&self, cfg: &RootConfig) -> Result<()> {
        let g = self.gamma;
        let tol = 1e-10;
        let checks = [
            ("alpha1", self.lc1.alpha, g.w - g.n),
            ("alpha2", self.lc2.alpha, g.s - g.w),
            ("alpha1'", self.lc1p.alpha, g.s - g.e),
            ("alpha2'", self.lc2p.alpha, g.e - g.n),
            ("mu1'", self.lc1p.mu, self.lc1.mu),
            ("mu2'", self.lc2p.mu, self.lc2.mu),
        ];
        for (name, x, y) in checks {
            if (x - y).norm() > tol * (1.0 + y.norm()) {
                return Err(Error::Inconsistent(format!("{name} does not match the region data")));
            }
        }
        let out = braid(&self.lc1.chi(), &self.lc2.chi(), self.sign, &cfg.tol);
        if !out.admissible {
            return Err(Error::Inadmissible(0));
        }
        let d = out.chi2p.max_dev(&self.lc2p.chi()).max(out.chi1p.max_dev(&self.lc1p.chi()));
        if d > cfg.tol.rel {
            return Err(Error::Inconsistent(format!("outgoing characters differ from the braiding by {d:e}")));
        }
        Ok(())
    }

    /// The zeta0 parameters; these need no kappa and stay finite when pinched.
    pub fn zeta0(&self) -> Quad<C64> {
        let eps = self.eps();
        let [b1, b2, b1p, b2p] = self.betas();
        let [m1, m2] = self.mus();
        Quad {
            n: (b2p - b1) * eps,
            w: (b2 - b1 - m1) * eps,
            s: (b2 - b1p + m2 - m1) * eps,
            e: (b2p - b1p + m2) * eps,
        }
    }

    /// zeta1 with kappa dropped; only differences are meaningful.
    pub fn zeta1_rel(&self) -> Quad<C64> {
        let eps = self.eps();
        let [m1, m2] = self.mus();
        let g = self.gamma;
        Quad { n: -g.n, w: -g.w + m1 * eps, s: -g.s + (m1 - m2) * eps, e: -g.e - m2 * eps }
    }

    /// The first region whose zeta0 is an integer, if any.
    pub fn pinched_region(&self, cfg: &RootConfig) -> Option<Region> {
        let z = self.zeta0();
        let thr = cfg.tol.singular.max(1e-12);
        Region::ALL.into_iter().find(|&r| dist_to_int(z.get(r)) <= thr)
    }

    pub fn is_pinched(&self, cfg: &RootConfig) -> bool {
        self.pinched_region(cfg).is_some()
    }

    /// K = e^{2 pi i gamma_N} / (1 - e^{2 pi i eps (beta2' - beta1)})
    pub fn big_k(&self) -> C64 {
        e(self.gamma.n) / (1.0 - e((self.lc2p.beta - self.lc1.beta) * self.eps()))
    }

    pub fn kappa_value(&self) -> C64 {
        match self.kappa {
            Kappa::Auto => lg(self.big_k()),
            Kappa::Explicit(k) => k,
        }
    }

    /// The companion crossing of opposite sign: composing the two braidings gives the identity.
    pub fn r2_partner(&self) -> Self {
        let [b1, b2, b1p, b2p] = self.betas();
        let [m1, m2] = self.mus();
        let g = self.gamma;
        Self::from_logs(self.sign.flip(), [b2p, b1p, b2, b1], [m2, m1], Quad { n: g.n, w: g.e, s: g.s, e: g.w })
    }

    pub fn alphas(&self) -> [C64; 4] {
        [self.lc1.alpha, self.lc2.alpha, self.lc1p.alpha, self.lc2p.alpha]
    }

    /// Integer offsets l = beta - beta_std from the standard pinched log-coloring
    /// (beta2 = beta1 + mu1, beta1' = beta1 + mu2, beta2' = beta1), positive sign.
    pub fn standard_offsets(&self) -> Result<[i64; 4]> {
        let [b1, b2, b1p, b2p] = self.betas();
        let [m1, m2] = self.mus();
        Ok([0, as_int(b2 - b1 - m1, "beta2 offset")?, as_int(b1p - b1 - m2, "beta1' offset")?, as_int(b2p - b1, "beta2' offset")?])
    }
}

pub fn crossing_zetas(cfg: &RootConfig, c: &CrossingData) -> Result<ZetaSet> {
    if let Some(r) = c.pinched_region(cfg) {
        return Err(Error::Pinched(r.label()));
    }
    let k = c.kappa_value();
    let z0 = c.zeta0();
    let z1 = c.zeta1_rel();
    let zs = Quad {
        n: Flattening::new_unchecked(z0.n, z1.n + k),
        w: Flattening::new_unchecked(z0.w, z1.w + k),
        s: Flattening::new_unchecked(z0.s, z1.s + k),
        e: Flattening::new_unchecked(z0.e, z1.e + k),
    };
    zs.try_map(|r, f| {
        let res = f.residual() / (e(f.zeta1).norm().max(1.0));
        if res > cfg.tol.constraint.max(1e-10) {
            return Err(Error::Inconsistent(format!("zeta pair {} is not a flattening ({res:e})", r.label())));
        }
        Ok(f)
    })
}

/// Dense coefficient array R[n1, n2, n1', n2'] over Z/N.
#[derive(Clone, Debug, PartialEq)]
pub struct RTensor {
    n: usize,
    data: Vec<C64>,
}

impl RTensor {
    pub fn zeros(n: usize) -> Self {
        RTensor { n, data: vec![C64::new(0.0, 0.0); n * n * n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> C64) -> Self {
        let mut t = Self::zeros(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        t.data[((a * n + b) * n + c) * n + d] = f(a, b, c, d);
                    }
                }
            }
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at indices taken mod N.
    pub fn get(&self, n1: i64, n2: i64, n1p: i64, n2p: i64) -> C64 {
        let m = |k: i64| k.rem_euclid(self.n as i64) as usize;
        let n = self.n;
        self.data[((m(n1) * n + m(n2)) * n + m(n1p)) * n + m(n2p)]
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    /// N^2 x N^2 matrix with rows (n1, n2) and columns (n1', n2'), both row-major.
    pub fn to_matrix(&self) -> CMat {
        let n2 = self.n * self.n;
        CMat::from_fn(n2, n2, |r, c| self.data[r * n2 + c])
    }

    /// The braiding operator: column n1*N+n2, row n2'*N+n1'.
    pub fn braiding(&self) -> CMat {
        let n = self.n;
        let mut b = CMat::zeros(n * n, n * n);
        for n1 in 0..n {
            for n2 in 0..n {
                for n1p in 0..n {
                    for n2p in 0..n {
                        b[(n2p * n + n1p, n1 * n + n2)] = self.data[((n1 * n + n2) * n + n1p) * n + n2p];
                    }
                }
            }
        }
        b
    }

    pub fn from_braiding(n: usize, b: &CMat) -> Self {
        Self::from_fn(n, |n1, n2, n1p, n2p| b[(n2p * n + n1p, n1 * n + n2)])
    }

    pub fn from_matrix(n: usize, m: &CMat) -> Self {
        Self::from_fn(n, |n1, n2, n1p, n2p| m[(n1 * n + n2, n1p * n + n2p)])
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |a, z| a.max(z.norm()))
    }

    pub fn scale(&self, s: C64) -> Self {
        RTensor { n: self.n, data: self.data.iter().map(|z| z * s).collect() }
    }

    /// max |self - o| / max |o|
    pub fn rel_dev(&self, o: &RTensor) -> f64 {
        let d = self.data.iter().zip(&o.data).fold(0.0f64, |a, (x, y)| a.max((x - y).norm()));
        d / o.max_abs().max(f64::MIN_POSITIVE)
    }
}

struct LamTables {
    t: Quad<Vec<C64>>,
    n: i64,
}

impl LamTables {
    fn new(cfg: &RootConfig, z: &ZetaSet) -> Result<Self> {
        Ok(LamTables { t: z.try_map(|_, f| qdilog::lambda_table(cfg, &f))?, n: cfg.n() as i64 })
    }

    fn at(&self, r: Region, k: i64) -> C64 {
        let v = match r {
            Region::N => &self.t.n,
            Region::W => &self.t.w,
            Region::S => &self.t.s,
            Region::E => &self.t.e,
        };
        v[k.rem_euclid(self.n) as usize]
    }
}

fn zsum(f: &Flattening) -> C64 {
    f.zeta0 + f.zeta1
}

/// R-matrix coefficients of a non-pinched crossing from the closed formulas.
pub fn rmat(cfg: &RootConfig, c: &CrossingData) -> Result<RTensor> {
    let z = crossing_zetas(cfg, c)?;
    let lam = LamTables::new(cfg, &z)?;
    let nf = cfg.nf();
    use Region::*;
    Ok(match c.sign {
        Sign::Pos => {
            let pre = cfg.pow(-(nf - 1.0) * zsum(&z.w)) / nf;
            RTensor::from_fn(cfg.n(), |n1, n2, n1p, n2p| {
                let (n1, n2, n1p, n2p) = (n1 as i64, n2 as i64, n1p as i64, n2p as i64);
                pre * cfg.pow_i(n2 - n1) * lam.at(N, n2p - n1) * lam.at(S, n2 - n1p)
                    / (lam.at(W, n2 - n1 - 1) * lam.at(E, n2p - n1p))
            })
        }
        Sign::Neg => {
            let pre = cfg.pow((nf - 1.0) * (zsum(&z.e) - zsum(&z.s) - zsum(&z.n))) / nf;
            RTensor::from_fn(cfg.n(), |n1, n2, n1p, n2p| {
                let (n1, n2, n1p, n2p) = (n1 as i64, n2 as i64, n1p as i64, n2p as i64);
                pre * cfg.pow_i(n1 - n2) * lam.at(W, n1 - n2) * lam.at(E, n1p - n2p - 1)
                    / (lam.at(N, n1 - n2p - 1) * lam.at(S, n1p - n2 - 1))
            })
        }
    })
}

/// R-matrix of any crossing, routing pinched ones through [`rmat_pinched`].
pub fn rmat_auto(cfg: &RootConfig, c: &CrossingData) -> Result<RTensor> {
    if c.is_pinched(cfg) {
        rmat_pinched(cfg, c)
    } else {
        rmat(cfg, c)
    }
}

pub fn braiding_op(cfg: &RootConfig, c: &CrossingData) -> Result<CMat> {
    Ok(rmat_auto(cfg, c)?.braiding())
}

/// The four factors of the braiding. `ze`, `zw` are diagonals over (n1, n2);
/// `zn`, `zs` are N x N and depend only on a difference of indices.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub sign: Sign,
    pub ze: Vec<C64>,
    pub zn: CMat,
    pub zs: CMat,
    pub zw: Vec<C64>,
}

impl Factorization {
    /// (1/N) ZE (ZN (x) ZS) ZW for positive crossings; for negative ones the
    /// product (1/N) ZE (ZS (x) ZN) ZW is the braiding conjugated by the flip.
    pub fn compose(&self) -> CMat {
        let n = self.zn.nrows();
        let mid = match self.sign {
            Sign::Pos => linalg::kron(&self.zn, &self.zs),
            Sign::Neg => linalg::kron(&self.zs, &self.zn),
        };
        let m = linalg::diag(&self.ze) * mid * linalg::diag(&self.zw) / C64::new(n as f64, 0.0);
        match self.sign {
            Sign::Pos => m,
            Sign::Neg => {
                let t = linalg::swap(n);
                &t * m * &t
            }
        }
    }
}

pub fn factorized_ops(cfg: &RootConfig, c: &CrossingData) -> Result<Factorization> {
    let z = crossing_zetas(cfg, c)?;
    let lam = LamTables::new(cfg, &z)?;
    let n = cfg.n();
    let nf = cfg.nf();
    let idx: Vec<(i64, i64)> = (0..n as i64).flat_map(|a| (0..n as i64).map(move |b| (a, b))).collect();
    use Region::*;
    Ok(match c.sign {
        Sign::Pos => {
            let pw = cfg.pow(-(nf - 1.0) * zsum(&z.w));
            Factorization {
                sign: c.sign,
                ze: idx.iter().map(|&(a, b)| 1.0 / lam.at(E, a - b)).collect(),
                zn: CMat::from_fn(n, n, |p, q| lam.at(N, p as i64 - q as i64)),
                zs: CMat::from_fn(n, n, |p, q| lam.at(S, q as i64 - p as i64)),
                zw: idx.iter().map(|&(a, b)| pw * cfg.pow_i(b - a) / lam.at(W, b - a - 1)).collect(),
            }
        }
        Sign::Neg => {
            let pe = cfg.pow((nf - 1.0) * zsum(&z.e));
            let ps = cfg.pow(-(nf - 1.0) * zsum(&z.s));
            let pn = cfg.pow(-(nf - 1.0) * zsum(&z.n));
            Factorization {
                sign: c.sign,
                ze: idx.iter().map(|&(a, b)| pe * lam.at(E, a - b - 1)).collect(),
                zn: CMat::from_fn(n, n, |p, q| pn / lam.at(N, q as i64 - p as i64 - 1)),
                zs: CMat::from_fn(n, n, |p, q| ps / lam.at(S, p as i64 - q as i64 - 1)),
                zw: idx.iter().map(|&(a, b)| cfg.pow_i(b - a) * lam.at(W, b - a)).collect(),
            }
        }
    })
}

fn cut(n: usize, k: i64) -> bool {
    k >= 0 && k < n as i64
}

/// Closed form of the positive pinched R-matrix for the standard log-coloring,
/// in terms of alpha1, alpha2, alpha1', alpha2', mu1, mu2.
fn pinched_standard(cfg: &RootConfig, al: [C64; 4], mu: [C64; 2]) -> RTensor {
    let n = cfg.n();
    let [a1, a2, a1p, a2p] = al;
    let [m1, m2] = mu;
    let (ea1, ea2, ea1p, ea2p, em1, em2) = (e(a1), e(a2), e(a1p), e(a2p), e(m1), e(m2));
    let md = |k: i64| cfg.modb(k);
    RTensor::from_fn(n, |n1, n2, n1p, n2p| {
        let (i1, i2, i1p, i2p) = (n1 as i64, n2 as i64, n1p as i64, n2p as i64);
        let theta = cut(n, (md(i1 - i2) + md(i1p - i2p - 1)) as i64) && cut(n, (md(i2p - i1) + md(i2 - i1p)) as i64);
        if !theta {
            return C64::new(0.0, 0.0);
        }
        let c12 = cut(n, i1 - i2) as i32;
        let c21p = cut(n, i2 - i1p) as i32;
        let c1p2p = cut(n, i1p - i2p - 1) as i32;
        let amp = (ea1p / ea1) * (ea1 / em1).powi(2 - c12 - c21p) * (ea2 * em2).powi(-c21p) * (ea2p * em2).powi(1 - c1p2p);
        let ph = cfg.pow(
            (a1 - m1 - 1.0) * i1 as f64 + (a2 + m2 + 1.0) * i2 as f64 - (a1p - m1) * i1p as f64 - (a2p + m2) * i2p as f64,
        );
        let q = |k: i64| qdilog::qfact(cfg, md(k));
        amp / cfg.nf() * ph * q(i2p - i1p) * q(i2 - i1 - 1) / (q(i2p - i1) * q(i2 - i1p))
    })
}

fn beta_shift_phase(c: &CrossingData, l: [i64; 4]) -> C64 {
    let z = c.zeta1_rel();
    let [l1, l2, l1p, l2p] = l.map(|x| x as f64);
    l2p * (z.n - z.e) + l1p * (z.e - z.s) + l2 * (z.s - z.w) + l1 * (z.w - z.n)
}

/// Pinched R-matrix. Positive crossings use the closed form, reduced from the
/// standard log-coloring by the beta-shift rule; negative crossings invert the
/// braiding of their positive partner.
pub fn rmat_pinched(cfg: &RootConfig, c: &CrossingData) -> Result<RTensor> {
    if !c.is_pinched(cfg) {
        return Err(Error::NotPinched);
    }
    match c.sign {
        Sign::Pos => {
            let l = c.standard_offsets()?;
            let std = pinched_standard(cfg, c.alphas(), c.mus());
            if l == [0; 4] {
                return Ok(std);
            }
            let ph = cfg.pow(beta_shift_phase(c, l) / 2.0);
            Ok(RTensor::from_fn(cfg.n(), |n1, n2, n1p, n2p| {
                ph * std.get(n1 as i64 + l[0], n2 as i64 + l[1], n1p as i64 + l[2], n2p as i64 + l[3])
            }))
        }
        Sign::Neg => {
            let p = c.r2_partner();
            let b = rmat_pinched(cfg, &p)?.braiding();
            let inv = linalg::inverse(&b).ok_or_else(|| Error::Singular("pinched braiding not invertible".into()))?;
            Ok(RTensor::from_braiding(cfg.n(), &inv))
        }
    }
}

/// Coefficients of the standard form of the Kashaev R-matrix.
pub fn kashaev_rmat(cfg: &RootConfig) -> RTensor {
    let n = cfg.n();
    let md = |k: i64| cfg.modb(k);
    RTensor::from_fn(n, |n1, n2, n1p, n2p| {
        let (i1, i2, i1p, i2p) = (n1 as i64, n2 as i64, n1p as i64, n2p as i64);
        let theta = cut(n, (md(i1 - i2) + md(i1p - i2p - 1)) as i64) && cut(n, (md(i2p - i1) + md(i2 - i1p)) as i64);
        if !theta {
            return C64::new(0.0, 0.0);
        }
        let num = cfg.pow(C64::new((i2p - i1) as f64 + 0.5, 0.0)) * cfg.nf();
        let den = qdilog::qfact(cfg, md(i2p - i1))
            * qdilog::qfact(cfg, md(i2 - i1p))
            * qdilog::qfact_bar(cfg, md(i1p - i2p - 1))
            * qdilog::qfact_bar(cfg, md(i1 - i2));
        num / den
    })
}

/// The log-colored crossing whose pinched R-matrix specializes to the Kashaev
/// one: all alphas and mus equal -1/2, beta1 = gamma_N = 0.
pub fn kashaev_crossing() -> CrossingData {
    let h = C64::new(-0.5, 0.0);
    let o = C64::new(0.0, 0.0);
    CrossingData::from_logs(Sign::Pos, [o, h, h, o], [h, h], Quad { n: o, w: h, s: h * 2.0, e: h })
}

/// Conjugates coefficients from the Fourier basis to the weight basis on both factors.
pub fn weight_basis_rmat(cfg: &RootConfig, r: &RTensor) -> RTensor {
    let f = crate::weylrep::fourier_matrix(cfg);
    let ff = linalg::kron(&f, &f);
    let m = ff.map(|z| z.conj()) * r.to_matrix() * &ff / C64::new(cfg.nf() * cfg.nf(), 0.0);
    RTensor::from_matrix(cfg.n(), &m)
}

fn require_standard_positive(cfg: &RootConfig, c: &CrossingData) -> Result<()> {
    if c.sign != Sign::Pos {
        return Err(Error::Inconsistent("weight-basis closed forms are for positive crossings".into()));
    }
    if !c.is_pinched(cfg) {
        return Err(Error::NotPinched);
    }
    if c.standard_offsets()? != [0; 4] {
        return Err(Error::Inconsistent("log-coloring is not standard".into()));
    }
    Ok(())
}

/// Closed form of the weight-basis pinched R-matrix, generic parameters.
pub fn weight_basis_closed(cfg: &RootConfig, c: &CrossingData) -> Result<RTensor> {
    require_standard_positive(cfg, c)?;
    let [a1, a2, a1p, a2p] = c.alphas();
    let [m1, m2] = c.mus();
    let (ea1, ea2, em1, em2) = (e(a1), e(a2), e(m1), e(m2));
    let pre = ea1 * (em2 * ea2 - 1.0) / (em1 + ea1 * (em2 * ea2 - 1.0)) / cfg.nf();
    let n = cfg.n();
    let mut out = RTensor::zeros(n);
    for n1 in 0..n {
        for n2 in 0..n {
            for n1p in 0..n {
                for n2p in 0..n {
                    if !(n1 + n2 + 2 * n - n1p - n2p).is_multiple_of(n) {
                        continue;
                    }
                    let x = -a2p - m2 + n2p as f64;
                    let fv = qdilog::fusion_sum(cfg, x, -a2 - m2 + (n2 as f64 - 1.0), a1p - m1 - n1p as f64)?;
                    out.data[((n1 * n + n2) * n + n1p) * n + n2p] = pre / (1.0 - cfg.pow(x)) * fv;
                }
            }
        }
    }
    Ok(out)
}

/// Weight-basis form when alpha1 = mu1 = alpha1' (the nilpotent case), valid on all entries.
pub fn nilpotent_dual(cfg: &RootConfig, c: &CrossingData) -> Result<RTensor> {
    require_standard_positive(cfg, c)?;
    let [a1, a2, a1p, _] = c.alphas();
    let [m1, m2] = c.mus();
    if (a1 - m1).norm() > 1e-10 || (a1p - m1).norm() > 1e-10 {
        return Err(Error::Inconsistent("not nilpotent: need alpha1 = mu1 = alpha1'".into()));
    }
    let x = -a2 - m2;
    let n = cfg.n();
    Ok(RTensor::from_fn(n, |n1, n2, n1p, n2p| {
        if !(n1 + n2 + 2 * n - n1p - n2p).is_multiple_of(n) {
            return C64::new(0.0, 0.0);
        }
        let t = cfg.modb(n2p as i64 - n2 as i64);
        if t + n1p >= n {
            return C64::new(0.0, 0.0);
        }
        let prod: C64 = (0..t).map(|j| 1.0 - cfg.pow(x + (n2 + j) as f64)).product();
        cfg.pow(x * n1p as f64 + (n1p * n2) as f64) * prod * qdilog::qfact(cfg, t + n1p)
            / (qdilog::qfact(cfg, t) * qdilog::qfact(cfg, n1p))
    }))
}

/// The nilpotent closed form with an exact Kronecker delta; it agrees with
/// [`nilpotent_dual`] on entries with n1 + n2 = n1' + n2' and n2' >= n2.
pub fn nilpotent_display(cfg: &RootConfig, c: &CrossingData) -> Result<RTensor> {
    require_standard_positive(cfg, c)?;
    let x = -c.lc2.alpha - c.lc2.mu;
    let n = cfg.n();
    let qx = |k: usize| -> C64 { (0..k).map(|j| 1.0 - cfg.pow(x + j as f64)).product() };
    Ok(RTensor::from_fn(n, |n1, n2, n1p, n2p| {
        if n1 + n2 != n1p + n2p || n2p < n2 {
            return C64::new(0.0, 0.0);
        }
        cfg.pow(x * n1p as f64 + (n1p * n2) as f64) * qx(n2p) * qdilog::qfact(cfg, n1)
            / (qx(n2) * qdilog::qfact(cfg, n2p - n2) * qdilog::qfact(cfg, n1p))
    }))
}

/// Weight-basis form of the Kashaev specialization (framed colored Jones).
pub fn colored_jones_dual(cfg: &RootConfig) -> RTensor {
    let n = cfg.n();
    let q = |k: usize| qdilog::qfact(cfg, k);
    RTensor::from_fn(n, |n1, n2, n1p, n2p| {
        if n1 + n2 != n1p + n2p || n2p < n2 {
            return C64::new(0.0, 0.0);
        }
        cfg.pow_i((n1p * (1 + n2)) as i64) * q(n2p) * q(n1) / (q(n2) * q(n2p - n2) * q(n1p))
    })
}

/// Closed-form determinant of the braiding.
pub fn det_braiding(cfg: &RootConfig, c: &CrossingData) -> Result<C64> {
    let z = crossing_zetas(cfg, c)?;
    let l = z.try_map(|_, f| qdilog::lifted_dilog(cfg, &f))?;
    let i_c = l.n + l.s - l.w - l.e;
    let eps = c.eps();
    let n = cfg.nf();
    let [b1, b2, b1p, b2p] = c.betas();
    let lam1 = (b1p - b1) * eps / 2.0;
    let lam2 = (b2 - b2p) * eps / 2.0;
    let g = c.gamma;
    let base = C64::new(n, 0.0) / (qdilog::d0(cfg) * qdilog::d0(cfg));
    let nn = (cfg.n() * cfg.n()) as i32;
    let p1 = if eps > 0.0 { base.powi(nn) } else { base.powi(-nn) };
    let p2 = (-i_c * eps * n / TWO_PI_I).exp();
    let p3 = (TWO_PI_I * ((g.w - g.e) / 2.0 - lam1 - lam2) * (n * (n - 1.0))).exp();
    Ok(p1 * p2 * p3)
}

/// Integer shifts of region logs (k) and segment logs (l = [l1, l2, l1', l2']).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Shifts {
    pub gamma: [f64; 4],
    pub beta: [f64; 4],
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transform {
    pub crossing: CrossingData,
    /// omega^{eps Gamma / 2} omega^{B / 2}
    pub phase: C64,
    pub index_shift: [i64; 4],
    pub k: Quad<i64>,
}

impl Transform {
    /// Predicted coefficients of the transformed crossing from those of the original.
    pub fn apply(&self, cfg: &RootConfig, r: &RTensor) -> RTensor {
        let l = self.index_shift;
        let k = self.k;
        RTensor::from_fn(r.n(), |n1, n2, n1p, n2p| {
            let (m1, m2, m1p, m2p) = (n1 as i64 + l[0], n2 as i64 + l[1], n1p as i64 + l[2], n2p as i64 + l[3]);
            let idx = k.n * (m2p - m1) + k.s * (m2 - m1p) - k.w * (m2 - m1) - k.e * (m2p - m1p);
            self.phase * cfg.pow_i(idx) * r.get(m1, m2, m1p, m2p)
        })
    }
}

/// The crossing with shifted logs (kappa held fixed) and the data relating its
/// coefficients to the original ones.
pub fn transform_rules(cfg: &RootConfig, c: &CrossingData, s: &Shifts) -> Result<Transform> {
    let ki: Vec<i64> = s.gamma.iter().map(|&x| as_int(C64::new(x, 0.0), "gamma shift")).collect::<Result<_>>()?;
    let li: Vec<i64> = s.beta.iter().map(|&x| as_int(C64::new(x, 0.0), "beta shift")).collect::<Result<_>>()?;
    let k = Quad { n: ki[0], w: ki[1], s: ki[2], e: ki[3] };
    let l = [li[0], li[1], li[2], li[3]];
    let z0 = c.zeta0();
    let gamma_big = z0.n * k.n as f64 + z0.s * k.s as f64 - z0.w * k.w as f64 - z0.e * k.e as f64;
    let g = c.gamma;
    let gshift = Quad { n: g.n + k.n as f64, w: g.w + k.w as f64, s: g.s + k.s as f64, e: g.e + k.e as f64 };
    let mid = c.with_gamma(gshift).with_kappa(c.kappa_value());
    let b_big = beta_shift_phase(&mid, l);
    let b = c.betas();
    let nb = [b[0] + l[0] as f64, b[1] + l[1] as f64, b[2] + l[2] as f64, b[3] + l[3] as f64];
    let crossing = mid.with_betas(nb);
    let phase = cfg.pow(gamma_big * c.eps() / 2.0) * cfg.pow(b_big / 2.0);
    Ok(Transform { crossing, phase, index_shift: l, k })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kashaev_n2_entry() {
        let cfg = RootConfig::new(2).unwrap();
        let k = kashaev_rmat(&cfg);
        assert!((k.get(0, 0, 0, 0) - C64::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn pinched_theta_zero() {
        let cfg = RootConfig::new(2).unwrap();
        let r = rmat_pinched(&cfg, &kashaev_crossing()).unwrap();
        assert_eq!(r.get(1, 0, 0, 0), C64::new(0.0, 0.0));
    }

    #[test]
    fn kashaev_crossing_is_standard() {
        let cfg = RootConfig::new(3).unwrap();
        let c = kashaev_crossing();
        c.validate(&cfg).unwrap();
        assert_eq!(c.standard_offsets().unwrap(), [0; 4]);
        assert!(c.zeta0().map(|z| z.norm()).n < 1e-15);
    }

    #[test]
    fn braiding_round_trip() {
        let cfg = RootConfig::new(3).unwrap();
        let k = kashaev_rmat(&cfg);
        assert_eq!(RTensor::from_braiding(3, &k.braiding()), k);
        assert_eq!(RTensor::from_matrix(3, &k.to_matrix()), k);
    }
}
