//! Cyclic modules V(alpha, beta, mu) as explicit matrices.

use crate::characters::{LogWeylChar, WeylChar};
use crate::linalg::{self, CMat};
use crate::qdilog::RootConfig;
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// v_n, on which x is diagonal.
    Weight,
    /// v-hat_n = sum_k omega^{nk} v_k, on which y is diagonal.
    Fourier,
}

#[derive(Clone, Debug)]
pub struct GenMatrices {
    pub x: CMat,
    pub y: CMat,
    pub z: CMat,
    pub k: CMat,
    pub e: CMat,
    pub f: CMat,
    pub omega: CMat,
}

impl GenMatrices {
    /// Builds K, E, F, Omega from x, y, z through the Weyl algebra map.
    pub fn from_weyl(cfg: &RootConfig, x: CMat, y: CMat, z: CMat) -> Self {
        let n = x.nrows();
        let id = linalg::identity(n);
        let xi = cfg.xi();
        let xinv = linalg::inverse(&x).expect("x invertible");
        let yinv = linalg::inverse(&y).expect("y invertible");
        let zinv = linalg::inverse(&z).expect("z invertible");
        let e = (&y * (&z - &x)) * xi;
        let f = &yinv * (&id - &zinv * &xinv);
        let omega = &e * &f + &x / xi + &xinv * xi;
        GenMatrices { k: x.clone(), x, y, z, e, f, omega }
    }

    pub fn dim(&self) -> usize {
        self.x.nrows()
    }

    /// Block-diagonal V (+) W.
    pub fn direct_sum(&self, o: &GenMatrices) -> GenMatrices {
        let ds = |a: &CMat, b: &CMat| {
            let (p, q) = (a.nrows(), b.nrows());
            let mut m = CMat::zeros(p + q, p + q);
            m.view_mut((0, 0), (p, p)).copy_from(a);
            m.view_mut((p, p), (q, q)).copy_from(b);
            m
        };
        GenMatrices {
            x: ds(&self.x, &o.x),
            y: ds(&self.y, &o.y),
            z: ds(&self.z, &o.z),
            k: ds(&self.k, &o.k),
            e: ds(&self.e, &o.e),
            f: ds(&self.f, &o.f),
            omega: ds(&self.omega, &o.omega),
        }
    }
}

/// Weight basis: x v_n = omega^{alpha-n} v_n, y v_n = omega^beta v_{n-1}.
/// Fourier basis: x v-hat_n = omega^alpha v-hat_{n-1}, y v-hat_n = omega^{beta+n} v-hat_n.
pub fn rep_matrices(cfg: &RootConfig, lc: &LogWeylChar, basis: Basis) -> GenMatrices {
    let (x, y) = weyl_xy(cfg, lc, basis);
    let z = linalg::identity(cfg.n()) * cfg.pow(lc.mu);
    GenMatrices::from_weyl(cfg, x, y, z)
}

pub fn weyl_xy(cfg: &RootConfig, lc: &LogWeylChar, basis: Basis) -> (CMat, CMat) {
    let n = cfg.n();
    let mut x = CMat::zeros(n, n);
    let mut y = CMat::zeros(n, n);
    for j in 0..n {
        let prev = (j + n - 1) % n;
        match basis {
            Basis::Weight => {
                x[(j, j)] = cfg.pow(lc.alpha - j as f64);
                y[(prev, j)] = cfg.pow(lc.beta);
            }
            Basis::Fourier => {
                x[(prev, j)] = cfg.pow(lc.alpha);
                y[(j, j)] = cfg.pow(lc.beta + j as f64);
            }
        }
    }
    (x, y)
}

/// F with F[k][n] = omega^{nk}: its columns are the Fourier vectors in the weight basis.
pub fn fourier_matrix(cfg: &RootConfig) -> CMat {
    let n = cfg.n();
    CMat::from_fn(n, n, |k, j| cfg.pow_i((j * k) as i64))
}

pub fn fourier_inverse(cfg: &RootConfig) -> CMat {
    let n = cfg.n();
    CMat::from_fn(n, n, |j, k| cfg.pow_i(-((j * k) as i64)) / cfg.nf())
}

/// Rewrites a weight-basis operator in the Fourier basis: F^{-1} M F.
pub fn fourier_basis_change(cfg: &RootConfig, m: &CMat) -> Result<CMat> {
    if m.nrows() != cfg.n() || m.ncols() != cfg.n() {
        return Err(Error::Dimension { expected: cfg.n(), got: m.nrows() });
    }
    Ok(fourier_inverse(cfg) * m * fourier_matrix(cfg))
}

/// Scalars (K^N, E^N, F^N) = (a, b(a-m), (ab)^{-1}(a - m^{-1})).
pub fn central_scalars(lc: &LogWeylChar) -> (C64, C64, C64) {
    let WeylChar { a, b, m } = lc.chi();
    (a, b * (a - m), (a - 1.0 / m) / (a * b))
}

/// Images of Weyl generators under the outer automorphism, as operators on
/// V_first (x) V_second in the Fourier basis.
#[derive(Clone, Debug)]
pub struct RwImages {
    pub x1: CMat,
    pub x2: CMat,
    pub y1inv: CMat,
    pub y2: CMat,
    pub z1: CMat,
    pub z2: CMat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// The plain generators x1, x2, y1^{-1}, y2, z1, z2 on V_first (x) V_second.
pub fn tensor_generators(cfg: &RootConfig, first: &LogWeylChar, second: &LogWeylChar) -> RwImages {
    let id = linalg::identity(cfg.n());
    let g1 = rep_matrices(cfg, first, Basis::Fourier);
    let g2 = rep_matrices(cfg, second, Basis::Fourier);
    let y1 = linalg::kron(&g1.y, &id);
    RwImages {
        x1: linalg::kron(&g1.x, &id),
        x2: linalg::kron(&id, &g2.x),
        y1inv: linalg::inverse(&y1).expect("y invertible"),
        y2: linalg::kron(&id, &g2.y),
        z1: linalg::kron(&g1.z, &id),
        z2: linalg::kron(&id, &g2.z),
    }
}

/// Matrix shadows of the automorphism on generators, built on V_first (x) V_second.
/// `Forward` uses g = 1 - x1^{-1} y1 (z1 - x1) y2^{-1} (x2 - z2^{-1});
/// `Inverse` uses g~ = 1 - y1 (z1 - x1) y2^{-1} (1 - z2^{-1} x2^{-1}).
pub fn rw_images(cfg: &RootConfig, first: &LogWeylChar, second: &LogWeylChar, dir: Direction) -> Result<RwImages> {
    let p = tensor_generators(cfg, first, second);
    let n2 = cfg.n() * cfg.n();
    let id = linalg::identity(n2);
    let inv = |m: &CMat| linalg::inverse(m).expect("generator invertible");
    let (x1, x2, z1, z2, y2) = (&p.x1, &p.x2, &p.z1, &p.z2, &p.y2);
    let y1 = inv(&p.y1inv);
    let (x1i, x2i, y1i, y2i, z2i) = (inv(x1), inv(x2), p.y1inv.clone(), inv(y2), inv(z2));
    let g = match dir {
        Direction::Forward => &id - &x1i * &y1 * (z1 - x1) * &y2i * (x2 - &z2i),
        Direction::Inverse => &id - &y1 * (z1 - x1) * &y2i * (&id - &z2i * &x2i),
    };
    if linalg::condition_number(&g) > 1e12 {
        return Err(Error::Singular("g is not invertible".into()));
    }
    let gi = inv(&g);
    Ok(match dir {
        Direction::Forward => RwImages {
            x1: x1 * &g,
            x2: &gi * x2,
            y1inv: &y2i + (&y1i - &z2i * &y2i) * &x2i,
            y2: z1 * &z2i * &y1 + (y2 - &z2i * &y1) * x1,
            z1: z1.clone(),
            z2: z2.clone(),
        },
        Direction::Inverse => RwImages {
            x1: x1 * &gi,
            x2: &g * x2,
            y1inv: z1 * &z2i * &y2i + (&y1i - z1 * &y2i) * x2,
            y2: &y1 + (y2 - z1 * &y1) * &x1i,
            z1: z1.clone(),
            z2: z2.clone(),
        },
    })
}

impl RwImages {
    pub fn as_list(&self) -> [(&'static str, &CMat); 6] {
        [
            ("x1", &self.x1),
            ("x2", &self.x2),
            ("y1inv", &self.y1inv),
            ("y2", &self.y2),
            ("z1", &self.z1),
            ("z2", &self.z2),
        ]
    }
}

/// Dimension of the space of matrices commuting with K, E and F.
pub fn commutant_dim(mats: &GenMatrices) -> usize {
    let n = mats.dim();
    let id = linalg::identity(n);
    let mut rows = CMat::zeros(3 * n * n, n * n);
    for (i, a) in [&mats.k, &mats.e, &mats.f].into_iter().enumerate() {
        // vec(AX - XA) = (I (x) A - A^T (x) I) vec(X), column-major vec
        let block = linalg::kron(&id, a) - linalg::kron(&a.transpose(), &id);
        rows.view_mut((i * n * n, 0), (n * n, n * n)).copy_from(&block);
    }
    linalg::nullity(&rows, 1e-8)
}

/// The scalar by which the Casimir acts: omega^{mu+1/2} + omega^{-(mu+1/2)}.
pub fn casimir_scalar(cfg: &RootConfig, mu: C64) -> C64 {
    let t = cfg.pow(mu + 0.5);
    t + 1.0 / t
}
