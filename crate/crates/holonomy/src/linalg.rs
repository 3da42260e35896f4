//! Dense complex matrices on top of nalgebra.

use crate::C64;
use nalgebra::DMatrix;

pub type CMat = DMatrix<C64>;

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn det(m: &CMat) -> C64 {
    m.clone().lu().determinant()
}

pub fn inverse(m: &CMat) -> Option<CMat> {
    m.clone().try_inverse()
}

pub fn singular_values(m: &CMat) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// Ratio of largest to smallest singular value (infinite if singular).
pub fn condition_number(m: &CMat) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// Dimension of the null space, counting singular values below `rel_cutoff * s_max`.
pub fn nullity(m: &CMat, rel_cutoff: f64) -> usize {
    let s = singular_values(m);
    let smax = s.first().copied().unwrap_or(0.0);
    let rank = s.iter().filter(|&&x| x > rel_cutoff * smax).count();
    m.ncols() - rank
}

/// The flip v_i (x) v_j -> v_j (x) v_i on C^n (x) C^n.
pub fn swap(n: usize) -> CMat {
    let mut t = CMat::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            t[(j * n + i, i * n + j)] = C64::new(1.0, 0.0);
        }
    }
    t
}

pub fn diag(d: &[C64]) -> CMat {
    CMat::from_diagonal(&nalgebra::DVector::from_column_slice(d))
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// max |a - b| / max |b|.
pub fn rel_dev(a: &CMat, b: &CMat) -> f64 {
    let scale = max_abs(b).max(f64::MIN_POSITIVE);
    max_abs(&(a - b)) / scale
}

pub fn rel_err(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}
