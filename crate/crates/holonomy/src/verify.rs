//! Identity suites. Each suite evaluates one family of identities on seeded
//! random inputs and records the worst deviation per identity and N.

use crate::braidgrpd::{self, BraidWord, ChiColoring, ColoredDiagram, DiagramGraph, LogColoring, MoveKind, TopData};
use crate::characters::{self, Sign, WeylChar};
use crate::linalg::{self, rel_err, CMat};
use crate::qdilog::{self, cyc_dilog, d_const, e, lambda0, lambda_dilog, lifted_dilog, qpoch, s_norm, Flattening, RootConfig, TWO_PI_I};
use crate::rmatrix::{self, CrossingData, RTensor, Shifts};
use crate::sample::{self, PinchedKind, SampleRng};
use crate::weylrep::{self, Basis, Direction};
use crate::{Result, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub n: usize,
    pub dev: f64,
    pub tol: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.dev <= self.tol
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Suite {
    pub id: u8,
    pub name: &'static str,
    pub checks: Vec<Check>,
}

impl Suite {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    /// The failing checks, worst first.
    pub fn failures(&self) -> Vec<&Check> {
        let mut f: Vec<&Check> = self.checks.iter().filter(|c| !c.passed()).collect();
        f.sort_by(|a, b| (b.dev / b.tol).partial_cmp(&(a.dev / a.tol)).unwrap_or(std::cmp::Ordering::Equal));
        f
    }

    pub fn worst_ratio(&self) -> f64 {
        self.checks.iter().map(|c| if c.dev.is_nan() { f64::INFINITY } else { c.dev / c.tol }).fold(0.0, f64::max)
    }
}

/// Options shared by all suites.
#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub ns: Vec<usize>,
    pub seed: u64,
    /// Replaces every suite tolerance when set.
    pub tol_override: Option<f64>,
}

impl Default for Options {
    fn default() -> Self {
        Options { ns: vec![2, 3, 5, 7], seed: 7, tol_override: None }
    }
}

/// Accumulates max deviations keyed by (name, N).
struct Acc {
    checks: Vec<Check>,
    over: Option<f64>,
}

impl Acc {
    fn new(o: &Options) -> Self {
        Acc { checks: Vec::new(), over: o.tol_override }
    }

    fn put(&mut self, name: &str, n: usize, dev: f64, tol: f64) {
        let dev = if dev.is_nan() { f64::INFINITY } else { dev };
        let tol = self.over.unwrap_or(tol);
        match self.checks.iter_mut().find(|c| c.name == name && c.n == n) {
            Some(c) => c.dev = c.dev.max(dev),
            None => self.checks.push(Check { name: name.to_string(), n, dev, tol }),
        }
    }

    fn res(&mut self, name: &str, n: usize, r: Result<f64>, tol: f64) {
        self.put(name, n, r.unwrap_or(f64::INFINITY), tol);
    }

    fn suite(self, id: u8, name: &'static str) -> Suite {
        Suite { id, name, checks: self.checks }
    }
}

fn cfg(n: usize) -> RootConfig {
    RootConfig::new(n).expect("N >= 2")
}

fn seeded(o: &Options, id: u64, n: usize) -> SampleRng {
    sample::rng(o.seed.wrapping_mul(1_000_003).wrapping_add(id * 101 + n as u64))
}

fn c64(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn run_all(o: &Options) -> Vec<Suite> {
    vec![
        dilog_suite(o),
        intertwining_suite(o),
        recurrence_suite(o),
        r2_suite(o),
        r3_suite(o),
        factorization_suite(o),
        pinched_suite(o),
        determinant_suite(o),
        weight_basis_suite(o),
        log_dependence_suite(o),
        character_suite(o),
        representation_suite(o),
    ]
}

// ---------------------------------------------------------------- 1

fn dilog_checks(c: &RootConfig, f: &Flattening, acc: &mut Acc) -> Result<()> {
    let n = c.n();
    let ni = n as i64;
    let nf = c.nf();
    let tol = 1e-8;
    let l0 = lambda0(c, f)?;
    let route = |k: i64| -> Result<C64> { Ok(l0 * c.pow(-(k as f64) * f.zeta1) * cyc_dilog(c, f.zeta0, k)?) };
    for k in -ni..=ni {
        acc.put("lambda recurrence", n, rel_err(lambda_dilog(c, f, k)?, route(k)?), tol);
        acc.put("lambda periodicity", n, rel_err(lambda_dilog(c, f, k + ni)?, lambda_dilog(c, f, k)?), tol);
        acc.put("lambda periodicity (recurrence route)", n, rel_err(route(k + ni)?, route(k)?), tol);
    }
    for k in [-2i64, -1, 1, 2] {
        let kf = k as f64;
        let f0 = Flattening::new_unchecked(f.zeta0 + kf, f.zeta1);
        let f1 = Flattening::new_unchecked(f.zeta0, f.zeta1 + kf);
        for m in [0i64, 1, -3] {
            let want0 = c.pow(f.zeta1 * kf / 2.0) * lambda_dilog(c, f, m + k)?;
            acc.put("lambda shift zeta0", n, rel_err(lambda_dilog(c, &f0, m)?, want0), tol);
            let want1 = c.pow(-f.zeta0 * kf / 2.0 - (m * k) as f64) * lambda_dilog(c, f, m)?;
            acc.put("lambda shift zeta1", n, rel_err(lambda_dilog(c, &f1, m)?, want1), tol);
        }
    }
    let table = qdilog::lambda_table(c, f)?;
    let lf = lifted_dilog(c, f)?;
    let prod: C64 = table.iter().product();
    acc.put("lambda product", n, rel_err(prod, c.pow(-nf * (nf - 1.0) * f.zeta1 / 2.0) * (-lf / TWO_PI_I).exp()), tol);
    let lam = |k: i64| table[c.modb(k)];
    let scale = nf * c.pow((nf - 1.0) * (f.zeta0 + f.zeta1)).norm();
    for k in 0..ni {
        for l in 0..ni {
            let s: C64 = (0..ni).map(|m| c.pow_i(m) * lam(m + k) / lam(m + l - 1)).sum();
            let want = if (l - k).rem_euclid(ni) == 0 { c.pow_i(-k) * c.pow((nf - 1.0) * (f.zeta0 + f.zeta1)) * nf } else { c64(0.0) };
            acc.put("lambda inverse sum", n, (s - want).norm() / scale, tol);
        }
    }
    let s = s_norm(c, f)?;
    let dual = f.dual();
    let dual_table = qdilog::lambda_table(c, &dual)?;
    let ld = |k: i64| dual_table[c.modb(k)];
    let v: Vec<C64> = (0..ni).map(lam).collect();
    let mut back = vec![c64(0.0); n];
    for m in 0..ni {
        let fw: C64 = (0..ni).map(|k| v[k as usize] * c.pow_i(m * k)).sum();
        acc.put("fourier", n, rel_err(fw, c.pow((nf - 1.0) * f.zeta0) * nf / s / ld(m - 1)), tol);
        let inv: C64 = (0..ni).map(|k| c.pow_i(-m * k) / v[k as usize]).sum();
        acc.put("fourier inverse", n, rel_err(inv, s * c.pow((nf - 1.0) * f.zeta1) * c.pow_i(m) * ld(m)), tol);
        for k in 0..ni {
            back[k as usize] += fw * c.pow_i(-m * k);
        }
        let qa: C64 = (0..ni).map(|k| Ok(c.pow((f.zeta1 - m as f64) * k as f64) / cyc_dilog(c, f.zeta0, k)?)).sum::<Result<C64>>()?;
        let qb: C64 =
            (0..ni).map(|k| Ok(c.pow(-f.zeta0 * k as f64) / cyc_dilog(c, -f.zeta1 + m as f64, k)?)).sum::<Result<C64>>()?;
        acc.put("q-series transform", n, rel_err(qa, c.pow_i(m) * c.pow((nf - 1.0) * (f.zeta0 + f.zeta1)) * qb), tol);
    }
    for k in 0..n {
        acc.put("fourier round trip", n, rel_err(back[k], v[k] * nf), tol);
    }
    acc.put("S symmetry", n, rel_err(s, s_norm(c, &dual)?), tol);
    acc.put("S shift zeta0", n, rel_err(s_norm(c, &Flattening::new_unchecked(f.zeta0 + 1.0, f.zeta1))?, s), tol);
    acc.put("S shift zeta1", n, rel_err(s_norm(c, &Flattening::new_unchecked(f.zeta0, f.zeta1 + 1.0))?, s), tol);
    let d0 = qdilog::d0(c);
    let sn_want = d0.powi(n as i32) * ((lf + lifted_dilog(c, &dual)?) / TWO_PI_I).exp();
    acc.put("S^N", n, rel_err(s.powi(n as i32), sn_want), tol);
    // f-sum N-th power with (beta, gamma) = (zeta0, zeta1)
    let fs: C64 = (0..ni).map(|k| Ok(c.pow(f.zeta1 * k as f64) / cyc_dilog(c, f.zeta0, k)?)).sum::<Result<C64>>()?;
    let fw = c.pow((nf - 1.0) * f.zeta0) * d0 / (d_const(c, 1.0 - f.zeta1)? * d_const(c, f.zeta0 + 1.0)?);
    acc.put("fusion N-th power", n, rel_err(fs.powi(n as i32), fw.powi(n as i32)), tol);
    let zm = CMat::from_fn(n, n, |a, b| lam(a as i64 - b as i64));
    let det_want = nf.powi(n as i32) / d0.powi(n as i32) * c.pow(nf * (nf - 1.0) * f.zeta0 / 2.0) * (-lf / TWO_PI_I).exp();
    acc.put("circulant determinant", n, rel_err(linalg::det(&zm), det_want), tol);
    let unity: C64 = (0..n).map(|k| 1.0 - c.pow(f.zeta0 + k as f64)).product();
    acc.put("factorization of unity", n, rel_err(unity, 1.0 - c.pow(nf * f.zeta0)), tol);
    Ok(())
}

fn fusion_checks(c: &RootConfig, r: &mut SampleRng, acc: &mut Acc) -> Result<()> {
    let n = c.n();
    let ni = n as i64;
    let tol = 1e-8;
    let pick = |r: &mut SampleRng| loop {
        let z = C64::new(sample::uniform(r, -2.0, 2.0), sample::uniform(r, -1.0, 1.0));
        if (z.re - z.re.round()).abs() > 0.05 {
            return z;
        }
    };
    let a = pick(r);
    let b = pick(r);
    let g = qdilog::lg((1.0 - e(a)) / (1.0 - e(b))) + sample::small_int(r, 2) as f64;
    let f0 = qdilog::fusion_f(c, a, b, g)?;
    for (k, l, m) in [(1i64, 0i64, 0i64), (0, 1, 0), (0, 0, 1), (2, -1, 3), (-2, 3, -1)] {
        let (kf, lf, mf) = (k as f64, l as f64, m as f64);
        let lhs = qdilog::fusion_f(c, a + kf, b + lf, g + mf)?;
        let rhs = f0 * cyc_dilog(c, a - b - 1.0, k - l)? * cyc_dilog(c, b, l)? * cyc_dilog(c, -g, -m)?
            / (c.pow((g + mf) * lf) * c.pow((b + 1.0) * mf) * cyc_dilog(c, a, k)? * cyc_dilog(c, a - b - g - 1.0, k - l - m)?);
        acc.put("fusion shift identity", n, rel_err(lhs, rhs), tol);
    }
    let w = c.omega();
    for k in -ni..ni {
        for l in -ni..ni {
            for m in -ni..ni {
                let lhs = qdilog::fusion_f(c, a + k as f64, a + (l - 1) as f64, c64(m as f64))?;
                let (kl, mm) = (c.modb(k - l) as i64, c.modb(-m) as i64);
                let rhs = (1.0 - c.pow(a + l as f64)) / (1.0 - c.pow(a * c.nf())) * c.nf() * c.pow((a + l as f64) * mm as f64)
                    / cyc_dilog(c, a + l as f64, kl)?
                    * qpoch(w, w, kl + mm, &c.tol)?
                    / (qpoch(w, w, kl, &c.tol)? * qpoch(w, w, mm, &c.tol)?);
                acc.put("fusion integer closed form", n, (lhs - rhs).norm() / lhs.norm().max(1.0), tol);
            }
        }
    }
    for gi in -ni..=ni {
        let v = qdilog::fusion_f(c, a, a, c64(gi as f64))?;
        let want = if gi.rem_euclid(ni) == 0 { c.nf() } else { 0.0 };
        acc.put("fusion geometric sum", n, (v - want).norm() / c.nf(), tol);
    }
    Ok(())
}

pub fn dilog_suite(o: &Options) -> Suite {
    let mut acc = Acc::new(o);
    for &n in &o.ns {
        let c = cfg(n);
        let mut r = seeded(o, 1, n);
        for _ in 0..100 {
            let f = sample::flattening(&mut r);
            if let Err(err) = dilog_checks(&c, &f, &mut acc) {
                acc.put(&format!("dilog evaluation ({err})"), n, f64::INFINITY, 1e-8);
            }
        }
        for _ in 0..10 {
            let res = fusion_checks(&c, &mut r, &mut acc);
            acc.res("fusion evaluation", n, res.map(|_| 0.0), 1e-8);
        }
    }
    acc.suite(1, "dilogarithm identities")
}

// ---------------------------------------------------------------- 2

/// Intertwining deviation, max over the six generators.
pub fn intertwining_dev(c: &RootConfig, cr: &CrossingData) -> Result<f64> {
    let r = rmatrix::rmat(c, cr)?;
    let (m, src, img) = match cr.sign {
        Sign::Pos => (
            r.to_matrix().transpose(),
            weylrep::tensor_generators(c, &cr.lc1, &cr.lc2),
            weylrep::rw_images(c, &cr.lc1p, &cr.lc2p, Direction::Forward)?,
        ),
        Sign::Neg => {
            let t = linalg::swap(c.n());
            (
                &t * r.to_matrix().transpose() * &t,
                weylrep::tensor_generators(c, &cr.lc2, &cr.lc1),
                weylrep::rw_images(c, &cr.lc2p, &cr.lc1p, Direction::Inverse)?,
            )
        }
    };
    let mut worst = 0.0f64;
    for ((_, u), (_, v)) in src.as_list().iter().zip(img.as_list().iter()) {
        let lhs = &m * *u;
        let rhs = *v * &m;
        worst = worst.max(linalg::rel_dev(&rhs, &lhs));
    }
    Ok(worst)
}

pub fn intertwining_suite(o: &Options) -> Suite {
    let mut acc = Acc::new(o);
    for &n in &o.ns {
        let c = cfg(n);
        let mut r = seeded(o, 2, n);
        for t in 0..50 {
            let sign = if t % 2 == 0 { Sign::Pos } else { Sign::Neg };
            let cr = sample::crossing(&c, &mut r, sign);
            let name = if sign == Sign::Pos { "intertwining, positive" } else { "intertwining, negative" };
            acc.res(name, n, intertwining_dev(&c, &cr), 1e-8);
        }
    }
    acc.suite(2, "intertwining")
}

// ---------------------------------------------------------------- 3

/// Worst relative deviation of each recurrence, in order (i)..(iv).
pub fn recurrence_devs(c: &RootConfig, cr: &CrossingData) -> Result<[f64; 4]> {
    let r = rmatrix::rmat(c, cr)?;
    let z = cr.zeta0();
    let [a1, a2, a1p, a2p] = cr.alphas();
    let [m1, m2] = cr.mus();
    let n = c.n() as i64;
    let w = |x: C64| c.pow(x);
    let mut d = [0.0f64; 4];
    for n1 in 0..n {
        for n2 in 0..n {
            for n1p in 0..n {
                for n2p in 0..n {
                    let v = r.get(n1, n2, n1p, n2p);
                    let (f1, f2, f1p, f2p) = (n1 as f64, n2 as f64, n1p as f64, n2p as f64);
                    let p = [
                        r.get(n1, n2, n1p, n2p - 1) * w(-a2p - m2) * (1.0 - w(z.e + f2p - f1p)) / (1.0 - w(z.n + f2p - f1)),
                        r.get(n1, n2, n1p - 1, n2p) * w(-a1p + m1) * (1.0 - w(z.s + f2 - f1p + 1.0))
                            / (1.0 - w(z.e + f2p - f1p + 1.0)),
                        r.get(n1, n2 - 1, n1p, n2p) * w(a2 + m2 + 1.0) * (1.0 - w(z.w - 1.0 + f2 - f1)) / (1.0 - w(z.s + f2 - f1p)),
                        r.get(n1 - 1, n2, n1p, n2p) * w(a1 - m1 - 1.0) * (1.0 - w(z.n + f2p - f1 + 1.0)) / (1.0 - w(z.w + f2 - f1)),
                    ];
                    for k in 0..4 {
                        d[k] = d[k].max(rel_err(v, p[k]));
                    }
                }
            }
        }
    }
    Ok(d)
}

pub fn recurrence_suite(o: &Options) -> Suite {
    let mut acc = Acc::new(o);
    let names = ["recurrence (i)", "recurrence (ii)", "recurrence (iii)", "recurrence (iv)"];
    for &n in &o.ns {
        let c = cfg(n);
        let mut r = seeded(o, 3, n);
        for _ in 0..20 {
            let cr = sample::crossing(&c, &mut r, Sign::Pos);
            match recurrence_devs(&c, &cr) {
                Ok(d) => (0..4).for_each(|k| acc.put(names[k], n, d[k], 1e-8)),
                Err(_) => (0..4).for_each(|k| acc.put(names[k], n, f64::INFINITY, 1e-8)),
            }
        }
    }
    acc.suite(3, "recurrences")
}

// ---------------------------------------------------------------- 4

/// max |sum R[n1 n2 n1' n2'] Rbar[n2' n1' l2 l1] - delta|.
pub fn r2_contraction_dev(r: &RTensor, rb: &RTensor) -> f64 {
    let n = r.n() as i64;
    let mut worst = 0.0f64;
    for n1 in 0..n {
        for n2 in 0..n {
            for l1 in 0..n {
                for l2 in 0..n {
                    let mut s = c64(0.0);
                    for n1p in 0..n {
                        for n2p in 0..n {
                            s += r.get(n1, n2, n1p, n2p) * rb.get(n2p, n1p, l2, l1);
                        }
                    }
                    let want = if n1 == l1 && n2 == l2 { 1.0 } else { 0.0 };
                    worst = worst.max((s - want).norm());
                }
            }
        }
    }
    worst
}

fn r2_diagram_dev(c: &RootConfig, r: &mut SampleRng, sign: Sign) -> Result<f64> {
    let d = braidgrpd::build_diagram(&BraidWord::new(2, vec![if sign == Sign::Pos { 1 } else { -1 }, if sign == Sign::Pos { -1 } else { 1 }])?);
    let id = braidgrpd::build_diagram(&BraidWord::new(2, vec![])?);
    let (c1, c2) = sample::admissible_pair(c, r, sign);
    let chi = braidgrpd::propagate_chi(c, &d, &[c1, c2])?;
    let chi_id = braidgrpd::propagate_chi(c, &id, &[c1, c2])?;
    let top = TopData::principal(&[c1, c2], sample::complex_box(r, 0.3, 0.1));
    let lc_id = LogColoring::principal(&id, &chi_id, &top);
    let lc = braidgrpd::fit_coloring(&d, &chi, &lc_id.boundary(&id), &[c64(0.0), c64(0.0)])?;
    let rep = braidgrpd::check_move(
        c,
        &ColoredDiagram { diagram: &d, chi: &chi, log: &lc },
        &ColoredDiagram { diagram: &id, chi: &chi_id, log: &lc_id },
        MoveKind::R2,
    )?;
    Ok(rep.deviation)
}

pub fn r2_suite(o: &Options) -> Suite {
    let mut acc = Acc::new(o);
    for &n in &o.ns {
        let c = cfg(n);
        let mut r = seeded(o, 4, n);
        for t in 0..20 {
            let sign = if t % 2 == 0 { Sign::Pos } else { Sign::Neg };
            let cr = sample::crossing(&c, &mut r, sign);
            let dev = (|| -> Result<f64> {
                let p = cr.r2_partner();
                Ok(r2_contraction_dev(&rmatrix::rmat(&c, &cr)?, &rmatrix::rmat(&c, &p)?))
            })();
            let name = if sign == Sign::Pos { "R2 contraction, positive first" } else { "R2 contraction, negative first" };
            acc.res(name, n, dev, 1e-8);
        }
        for t in 0..4 {
            let sign = if t % 2 == 0 { Sign::Pos } else { Sign::Neg };
            acc.res("R2 diagram vs identity braid", n, r2_diagram_dev(&c, &mut r, sign), 1e-8);
        }
    }
    acc.suite(4, "R2 move")
}

// ---------------------------------------------------------------- 5

/// Both sides of an R3 move with matched boundary data and log-longitudes.
pub struct R3Pair {
    pub left: (DiagramGraph, ChiColoring, LogColoring),
    pub right: (DiagramGraph, ChiColoring, LogColoring),
}

fn generic_enough(c: &RootConfig, d: &DiagramGraph, lc: &LogColoring) -> bool {
    (0..d.crossings.len()).all(|k| {
        let cd = braidgrpd::crossing_data(d, lc, k);
        let z = cd.zeta0();
        let ok_z = [z.n, z.w, z.s, z.e].iter().all(|x| (x.re - x.re.round()).abs() > 0.02 || x.im.abs() > 0.02);
        ok_z && !cd.is_pinched(c)
    })
}

/// Random colored sides of sigma1 sigma2 sigma1 = sigma2 sigma1 sigma2 (all
/// letters of the given sign) with matched boundary and log-longitudes.
pub fn r3_pair(c: &RootConfig, r: &mut SampleRng, sign: Sign) -> R3Pair {
    let s = if sign == Sign::Pos { 1 } else { -1 };
    let dl = braidgrpd::build_diagram(&BraidWord::new(3, vec![s, 2 * s, s]).unwrap());
    let dr = braidgrpd::build_diagram(&BraidWord::new(3, vec![2 * s, s, 2 * s]).unwrap());
    loop {
        let top: Vec<WeylChar> = (0..3).map(|_| sample::weyl_char(r)).collect();
        let (Ok(xl), Ok(xr)) = (braidgrpd::propagate_chi(c, &dl, &top), braidgrpd::propagate_chi(c, &dr, &top)) else {
            continue;
        };
        let bounded = xl.seg.iter().chain(xr.seg.iter()).all(|w| [w.a, w.b].iter().all(|z| z.norm() > 0.05 && z.norm() < 20.0));
        if !bounded {
            continue;
        }
        let td = TopData::principal(&top, sample::complex_box(r, 0.3, 0.1));
        let ll = LogColoring::principal(&dl, &xl, &td);
        let lam = braidgrpd::log_longitudes(&dl, &ll);
        // the longitude difference between the sides is what must vanish
        let Ok(lr) = braidgrpd::fit_coloring(&dr, &xr, &ll.boundary(&dl), &lam) else {
            continue;
        };
        if generic_enough(c, &dl, &ll) && generic_enough(c, &dr, &lr) {
            return R3Pair { left: (dl, xl, ll), right: (dr.clone(), xr, lr) };
        }
    }
}

fn kashaev_r3_dev(c: &RootConfig) -> Result<f64> {
    let top = [WeylChar::real(-1.0, 1.0, -1.0), WeylChar::real(-1.0, -1.0, -1.0), WeylChar::real(-1.0, 1.0, -1.0)];
    let dl = braidgrpd::build_diagram(&BraidWord::new(3, vec![1, 2, 1])?);
    let dr = braidgrpd::build_diagram(&BraidWord::new(3, vec![2, 1, 2])?);
    let xl = braidgrpd::propagate_chi(c, &dl, &top)?;
    let xr = braidgrpd::propagate_chi(c, &dr, &top)?;
    let ll = LogColoring::principal(&dl, &xl, &TopData::principal(&top, c64(0.0)));
    let lr = braidgrpd::fit_coloring(&dr, &xr, &ll.boundary(&dl), &braidgrpd::log_longitudes(&dl, &ll))?;
    let rep = braidgrpd::check_move(
        c,
        &ColoredDiagram { diagram: &dl, chi: &xl, log: &ll },
        &ColoredDiagram { diagram: &dr, chi: &xr, log: &lr },
        MoveKind::R3,
    )?;
    Ok(rep.deviation)
}

/// |(B x I)(I x B)(B x I) - (I x B)(B x I)(I x B)| / max for a braiding matrix.
pub fn ybe_dev(n: usize, b: &CMat) -> f64 {
    let id = linalg::identity(n);
    let b12 = linalg::kron(b, &id);
    let b23 = linalg::kron(&id, b);
    let lhs = &b12 * &b23 * &b12;
    let rhs = &b23 * &b12 * &b23;
    linalg::rel_dev(&lhs, &rhs)
}

pub fn r3_suite(o: &Options) -> Suite {
    let mut acc = Acc::new(o);
    for &n in &o.ns {
        let c = cfg(n);
        let mut r = seeded(o, 5, n);
        for t in 0..20 {
            let sign = if t % 2 == 0 { Sign::Pos } else { Sign::Neg };
            let p = r3_pair(&c, &mut r, sign);
            let rep = braidgrpd::check_move(
                &c,
                &ColoredDiagram { diagram: &p.left.0, chi: &p.left.1, log: &p.left.2 },
                &ColoredDiagram { diagram: &p.right.0, chi: &p.right.1, log: &p.right.2 },
                MoveKind::R3,
            );
            acc.res("R3 jfunc equality", n, rep.map(|x| x.deviation), 1e-7);
        }
        acc.put("Kashaev YBE", n, ybe_dev(n, &rmatrix::kashaev_rmat(&c).braiding()), 1e-10);
        acc.res("Kashaev-colored R3 via jfunc", n, kashaev_r3_dev(&c), 1e-7);
    }
    acc.suite(5, "R3 move and Yang-Baxter")
}

// ---------------------------------------------------------------- 6

pub fn factorization_suite(o: &Options) -> Suite {
    let mut acc = Acc::new(o);
    for &n in &o.ns {
        let c = cfg(n);
        let mut r = seeded(o, 6, n);
        for t in 0..20 {
            let sign = if t % 2 == 0 { Sign::Pos } else { Sign::Neg };
            let cr = sample::crossing(&c, &mut r, sign);
            let dev = (|| -> Result<f64> {
                let f = rmatrix::factorized_ops(&c, &cr)?;
                Ok(linalg::rel_dev(&f.compose(), &rmatrix::braiding_op(&c, &cr)?))
            })();
            let name = if sign == Sign::Pos { "factorization, positive" } else { "factorization, negative" };
            acc.res(name, n, dev, 1e-9);
        }
    }
    acc.suite(6, "factorization")
}

// ---------------------------------------------------------------- 7

/// Richardson-extrapolated limit of `f(h)` as h -> 0 from h, h/2, h/4 (error O(h^3)).
pub fn richardson(f: impl Fn(C64) -> Result<RTensor>, h: C64) -> Result<RTensor> {
    let r0 = f(h)?;
    let r1 = f(h / 2.0)?;
    let r2 = f(h / 4.0)?;
    let n = r0.n();
    Ok(RTensor::from_fn(n, |a, b, cc, d| {
        let (a, b, cc, d) = (a as i64, b as i64, cc as i64, d as i64);
        let x1 = r1.get(a, b, cc, d) * 2.0 - r0.get(a, b, cc, d);
        let x2 = r2.get(a, b, cc, d) * 2.0 - r1.get(a, b, cc, d);
        (x2 * 4.0 - x1) / 3.0
    }))
}

fn abs_dev(a: &RTensor, b: &RTensor) -> f64 {
    a.entries().iter().zip(b.entries()).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

/// Pinched closed form vs limit of generic formulas, for a standard crossing,
/// an integer-shifted log-coloring of it, and its negative partner.
fn pinched_limit_devs(c: &RootConfig, r: &mut SampleRng) -> Result<[f64; 3]> {
    loop {
        let mut rc = || sample::complex_box(r, 0.5, 0.2);
        let (al, mu, beta, gn) = ([rc(), rc()], [rc(), rc()], rc(), rc());
        let Some(p0) = sample::pinched_from_params(c, al, mu, beta, gn, c64(0.0)) else { continue };
        if p0.lc1p.chi().a.norm() < 0.05 || p0.lc2p.chi().a.norm() < 0.05 {
            continue;
        }
        let path = |d: C64| -> Result<CrossingData> {
            sample::pinched_from_params(c, al, mu, beta, gn, d).ok_or(crate::Error::Inadmissible(0))
        };
        let h = C64::new(1e-4, 1e-4);
        let lim = richardson(|d| rmatrix::rmat(c, &path(d)?), h)?;
        let std = rmatrix::rmat_pinched(c, &p0)?;
        let l = [0.0, sample::small_int(r, 2) as f64, sample::small_int(r, 2) as f64, sample::small_int(r, 2) as f64];
        let shift = |x: CrossingData| {
            let b = x.betas();
            x.with_betas([b[0] + l[0], b[1] + l[1], b[2] + l[2], b[3] + l[3]])
        };
        let lim_s = richardson(|d| rmatrix::rmat(c, &shift(path(d)?)), h)?;
        let closed_s = rmatrix::rmat_pinched(c, &shift(p0))?;
        let lim_n = richardson(|d| rmatrix::rmat(c, &path(d)?.r2_partner()), h)?;
        let closed_n = rmatrix::rmat_pinched(c, &p0.r2_partner())?;
        return Ok([abs_dev(&std, &lim), abs_dev(&closed_s, &lim_s), abs_dev(&closed_n, &lim_n)]);
    }
}

/// The Kashaev-type crossing with all alphas and mus equal to v.
pub fn uniform_pinched_crossing(v: f64, gamma_n: f64) -> CrossingData {
    let v = c64(v);
    let g = c64(gamma_n);
    let o = c64(0.0);
    CrossingData::from_logs(Sign::Pos, [o, v, v, o], [v, v], rmatrix::Quad { n: g, w: g + v, s: g + v * 2.0, e: g + v })
}

pub fn pinched_suite(o: &Options) -> Suite {
    let mut acc = Acc::new(o);
    for &n in &o.ns {
        let c = cfg(n);
        let mut r = seeded(o, 7, n);
        for _ in 0..4 {
            match pinched_limit_devs(&c, &mut r) {
                Ok(d) => {
                    acc.put("pinched closed form vs limit, standard", n, d[0], 1e-5);
                    acc.put("pinched closed form vs limit, shifted betas", n, d[1], 1e-5);
                    acc.put("pinched closed form vs limit, negative", n, d[2], 1e-5);
                }
                Err(_) => acc.put("pinched closed form vs limit, standard", n, f64::INFINITY, 1e-5),
            }
        }
        let k = rmatrix::kashaev_rmat(&c).scale(c.pow(c64(-0.5)));
        for (v, g) in [(-0.5, 0.0), (-0.5, 0.5), ((n as f64 - 1.0) / 2.0, 0.0), ((n as f64 - 1.0) / 2.0, 1.0)] {
            let dev = rmatrix::rmat_pinched(&c, &uniform_pinched_crossing(v, g)).map(|p| p.rel_dev(&k));
            acc.res("Kashaev specialization = omega^(-1/2) Kashaev matrix", n, dev, 1e-12);
        }
    }
    acc.suite(7, "pinched limit")
}

// ---------------------------------------------------------------- 8

pub fn det_dev(c: &RootConfig, cr: &CrossingData) -> Result<f64> {
    let closed = rmatrix::det_braiding(c, cr)?;
    let lu = linalg::det(&rmatrix::braiding_op(c, cr)?);
    Ok(rel_err(closed, lu))
}

/// Product of closed-form determinants over left crossings divided by the
/// product over right ones, i.e. over the double diagram.
pub fn r3_det_product(c: &RootConfig, p: &R3Pair) -> Result<C64> {
    let prod = |d: &DiagramGraph, lc: &LogColoring| -> Result<C64> {
        (0..d.crossings.len()).map(|k| rmatrix::det_braiding(c, &braidgrpd::crossing_data(d, lc, k))).product()
    };
    Ok(prod(&p.left.0, &p.left.2)? / prod(&p.right.0, &p.right.2)?)
}

pub fn determinant_suite(o: &Options) -> Suite {
    let mut acc = Acc::new(o);
    for &n in &o.ns {
        let c = cfg(n);
        let mut r = seeded(o, 8, n);
        for t in 0..12 {
            let sign = if t % 2 == 0 { Sign::Pos } else { Sign::Neg };
            let cr = sample::crossing(&c, &mut r, sign);
            let name = if sign == Sign::Pos { "det closed form vs LU, positive" } else { "det closed form vs LU, negative" };
            acc.res(name, n, det_dev(&c, &cr), 1e-7);
        }
        for t in 0..4 {
            let sign = if t % 2 == 0 { Sign::Pos } else { Sign::Neg };
            let p = r3_pair(&c, &mut r, sign);
            let dev = r3_det_product(&c, &p).map(|x| (x - 1.0).norm().min((x + 1.0).norm()));
            acc.res("det product over R3 double diagram in {+1,-1}", n, dev, 1e-6);
        }
    }
    acc.suite(8, "determinant")
}

// ---------------------------------------------------------------- 9

pub fn weight_basis_suite(o: &Options) -> Suite {
    let mut acc = Acc::new(o);
    for &n in &o.ns {
        let c = cfg(n);
        let mut r = seeded(o, 9, n);
        for _ in 0..5 {
            let p = sample::pinched_crossing(&c, &mut r, PinchedKind::Generic);
            let res = (|| -> Result<(f64, f64)> {
                let w = rmatrix::weight_basis_rmat(&c, &rmatrix::rmat_pinched(&c, &p)?);
                let closed = rmatrix::weight_basis_closed(&c, &p)?;
                let mut off = 0.0f64;
                for a in 0..n {
                    for b in 0..n {
                        for cc in 0..n {
                            for d in 0..n {
                                if (a + b + 2 * n - cc - d) % n != 0 {
                                    off = off.max(w.get(a as i64, b as i64, cc as i64, d as i64).norm());
                                }
                            }
                        }
                    }
                }
                Ok((w.rel_dev(&closed), off / w.max_abs()))
            })();
            match res {
                Ok((d, off)) => {
                    acc.put("weight basis closed form, generic", n, d, 1e-8);
                    acc.put("weight basis charge conservation", n, off, 1e-8);
                }
                Err(_) => acc.put("weight basis closed form, generic", n, f64::INFINITY, 1e-8),
            }
            let q = sample::pinched_crossing(&c, &mut r, PinchedKind::Nilpotent);
            let res = (|| -> Result<(f64, f64)> {
                let w = rmatrix::weight_basis_rmat(&c, &rmatrix::rmat_pinched(&c, &q)?);
                let full = rmatrix::nilpotent_dual(&c, &q)?;
                let disp = rmatrix::nilpotent_display(&c, &q)?;
                let mut dd = 0.0f64;
                for a in 0..n {
                    for b in 0..n {
                        for cc in 0..n {
                            for d in 0..n {
                                if a + b == cc + d && d >= b {
                                    let (a, b, cc, d) = (a as i64, b as i64, cc as i64, d as i64);
                                    dd = dd.max((w.get(a, b, cc, d) - disp.get(a, b, cc, d)).norm());
                                }
                            }
                        }
                    }
                }
                Ok((w.rel_dev(&full), dd / w.max_abs()))
            })();
            match res {
                Ok((d, dd)) => {
                    acc.put("weight basis nilpotent (mod N form)", n, d, 1e-8);
                    acc.put("weight basis nilpotent (delta form, non-wrapping entries)", n, dd, 1e-8);
                }
                Err(_) => acc.put("weight basis nilpotent (mod N form)", n, f64::INFINITY, 1e-8),
            }
        }
        let cj = rmatrix::rmat_pinched(&c, &rmatrix::kashaev_crossing())
            .map(|k| rmatrix::weight_basis_rmat(&c, &k).rel_dev(&rmatrix::colored_jones_dual(&c)));
        acc.res("weight basis colored Jones", n, cj, 1e-8);
    }
    acc.suite(9, "weight basis")
}

// ---------------------------------------------------------------- 10

/// Random 2- or 3-strand colored diagram with its principal log-coloring.
pub fn random_colored_braid(c: &RootConfig, r: &mut SampleRng, width: usize, len: usize) -> (DiagramGraph, ChiColoring, LogColoring) {
    loop {
        let letters: Vec<i64> = (0..len)
            .map(|_| {
                let g = r.random_range(1..width as i64);
                if r.random_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let d = braidgrpd::build_diagram(&BraidWord::new(width, letters).unwrap());
        let top: Vec<WeylChar> = (0..width).map(|_| sample::weyl_char(r)).collect();
        let Ok(x) = braidgrpd::propagate_chi(c, &d, &top) else { continue };
        if !x.seg.iter().all(|w| [w.a, w.b].iter().all(|z| z.norm() > 0.05 && z.norm() < 20.0)) {
            continue;
        }
        let lc = LogColoring::principal(&d, &x, &TopData::principal(&top, sample::complex_box(r, 0.3, 0.1)));
        if generic_enough(c, &d, &lc) {
            return (d, x, lc);
        }
    }
}

use rand::Rng;

fn log_dependence_dev(c: &RootConfig, r: &mut SampleRng, width: usize) -> Result<(f64, f64)> {
    let (d, x, lc) = random_colored_braid(c, r, width, 2 + width);
    let mut lc2 = lc.clone();
    for s in d.internal_segments() {
        lc2.beta[s] += sample::small_int(r, 2) as f64;
    }
    for g in d.internal_regions() {
        lc2.gamma[g] += sample::small_int(r, 2) as f64;
    }
    let j = braidgrpd::jfunc_eval(c, &d, &x, &lc)?;
    let j2 = braidgrpd::jfunc_eval(c, &d, &x, &lc2)?;
    let ph = braidgrpd::log_dependence_phase(c, &d, &lc, &lc2);
    let glue = braidgrpd::edge_gluing_residuals(&d, &lc2).iter().fold(0.0f64, |m, (_, v)| m.max(*v));
    Ok((linalg::rel_dev(&j2, &(j * ph)), glue))
}

fn transform_devs(c: &RootConfig, r: &mut SampleRng, sign: Sign) -> Result<[f64; 3]> {
    let cr = sample::crossing(c, r, sign);
    let base = rmatrix::rmat(c, &cr)?;
    let k0 = cr.kappa_value();
    let mut kd = 0.0f64;
    for p in -3..=3 {
        kd = kd.max(rmatrix::rmat(c, &cr.with_kappa(k0 + p as f64))?.rel_dev(&base));
    }
    let mut int = || sample::small_int(r, 2) as f64;
    let sg = Shifts { gamma: [int(), int(), int(), int()], beta: [0.0; 4] };
    let sb = Shifts { gamma: [0.0; 4], beta: [int(), int(), int(), int()] };
    let tg = rmatrix::transform_rules(c, &cr, &sg)?;
    let tb = rmatrix::transform_rules(c, &cr, &sb)?;
    let gd = rmatrix::rmat(c, &tg.crossing)?.rel_dev(&tg.apply(c, &base));
    let bd = rmatrix::rmat(c, &tb.crossing)?.rel_dev(&tb.apply(c, &base));
    Ok([kd, gd, bd])
}

pub fn log_dependence_suite(o: &Options) -> Suite {
    let mut acc = Acc::new(o);
    for &n in &o.ns {
        let c = cfg(n);
        let mut r = seeded(o, 10, n);
        for t in 0..6 {
            let width = if t % 2 == 0 { 2 } else { 3 };
            match log_dependence_dev(&c, &mut r, width) {
                Ok((d, g)) => {
                    acc.put("jfunc log-longitude phase", n, d, 1e-8);
                    acc.put("edge gluing", n, g, 1e-10);
                }
                Err(_) => acc.put("jfunc log-longitude phase", n, f64::INFINITY, 1e-8),
            }
        }
        for t in 0..10 {
            let sign = if t % 2 == 0 { Sign::Pos } else { Sign::Neg };
            match transform_devs(&c, &mut r, sign) {
                Ok([k, g, b]) => {
                    acc.put("kappa independence", n, k, 1e-8);
                    acc.put("gamma shift rule", n, g, 1e-8);
                    acc.put("beta shift rule", n, b, 1e-8);
                }
                Err(_) => acc.put("kappa independence", n, f64::INFINITY, 1e-8),
            }
        }
    }
    acc.suite(10, "log-dependence and transformation rules")
}

// ---------------------------------------------------------------- 11

pub fn character_suite(o: &Options) -> Suite {
    let mut acc = Acc::new(o);
    let c = cfg(o.ns.first().copied().unwrap_or(2).max(2));
    let tol = c.tol;
    let mut r = seeded(o, 11, 0);
    let n = 0;
    for t in 0..500 {
        let sign = if t % 2 == 0 { Sign::Pos } else { Sign::Neg };
        let (c1, c2) = sample::admissible_pair(&c, &mut r, sign);
        let out = characters::braid(&c1, &c2, sign, &tol);
        let back = characters::braid(&out.chi2p, &out.chi1p, sign.flip(), &tol);
        acc.put("inverse pair", n, back.chi2p.max_dev(&c1).max(back.chi1p.max_dev(&c2)), 1e-10);
        let exact = out.chi1p.m == c1.m && out.chi2p.m == c2.m;
        acc.put("meridian preservation (exact)", n, if exact { 0.0 } else { 1.0 }, 1e-300);
        let p = characters::char_product(&characters::to_z0_char(&c1), &characters::to_z0_char(&c2));
        let q = characters::char_product(&characters::to_z0_char(&out.chi2p), &characters::to_z0_char(&out.chi1p));
        match (p, q) {
            (Ok(p), Ok(q)) => acc.put("product preservation with swap", n, p.max_dev(&q), 1e-10),
            _ => acc.put("product preservation with swap", n, f64::INFINITY, 1e-10),
        }
        acc.put("a-balance", n, rel_err(c1.a * c2.a, out.chi1p.a * out.chi2p.a), 1e-12);
        for w in [c1, c2] {
            let ps = characters::psi(&w);
            acc.put("det psi = 1", n, (ps.determinant() - 1.0).norm(), 1e-12);
            let z = characters::to_z0_char(&w);
            acc.put("psi = lower upper^-1", n, characters::m2_max(&(z.to_sl2() - ps)) / characters::m2_max(&ps), 1e-12);
        }
    }
    let d1 = braidgrpd::build_diagram(&BraidWord::new(3, vec![1, 2, 1]).unwrap());
    let d2 = braidgrpd::build_diagram(&BraidWord::new(3, vec![2, 1, 2]).unwrap());
    let d1m = braidgrpd::build_diagram(&BraidWord::new(3, vec![-1, -2, -1]).unwrap());
    let d2m = braidgrpd::build_diagram(&BraidWord::new(3, vec![-2, -1, -2]).unwrap());
    let mut done = 0;
    while done < 200 {
        let top: Vec<WeylChar> = (0..3).map(|_| sample::weyl_char(&mut r)).collect();
        for (a, b) in [(&d1, &d2), (&d1m, &d2m)] {
            if let (Ok(x), Ok(y)) = (braidgrpd::propagate_chi(&c, a, &top), braidgrpd::propagate_chi(&c, b, &top)) {
                let dev = x.bottom(a).iter().zip(y.bottom(b).iter()).fold(0.0f64, |m, (u, v)| m.max(u.max_dev(v)));
                acc.put("braid relation on characters", n, dev, 1e-9);
                done += 1;
            }
        }
    }
    for &nn in &o.ns {
        let cc = cfg(nn);
        let mut rr = seeded(o, 111, nn);
        for _ in 0..50 {
            let w = sample::weyl_char(&mut rr);
            let mu = qdilog::lg(w.m) + sample::small_int(&mut rr, 2) as f64;
            acc.res("Casimir/Chebyshev residual", nn, characters::casimir_relation(&cc, &w, mu), 1e-10);
        }
    }
    acc.suite(11, "character layer")
}

// ---------------------------------------------------------------- 12

fn mat_pow(m: &CMat, k: usize) -> CMat {
    let mut p = m.clone();
    for _ in 1..k {
        p = &p * m;
    }
    p
}

/// max |M - s I| relative to max(|s|, 1); s may vanish in the parabolic cases.
fn scalar_dev(m: &CMat, s: C64) -> f64 {
    let id = linalg::identity(m.nrows());
    linalg::max_abs(&(m - id * s)) / s.norm().max(1.0)
}

/// Log-characters covering the generic case and the parabolic and scalar cases.
pub fn module_cases(n: usize, r: &mut SampleRng) -> Vec<(&'static str, crate::characters::LogWeylChar)> {
    use crate::characters::LogWeylChar;
    let mut out = Vec::new();
    for t in 0..20 {
        let beta = sample::complex_box(r, 0.5, 0.15);
        let case = if n == 2 { t % 3 } else { t % 4 };
        let lc = match case {
            0 => LogWeylChar::new(sample::complex_box(r, 0.5, 0.15), beta, sample::complex_box(r, 0.5, 0.15)),
            1 => {
                // m = +-1, a != m
                let mu = c64(if t % 2 == 0 { 0.0 } else { 0.5 });
                LogWeylChar::new(mu + sample::complex_box(r, 0.4, 0.15) + 0.05, beta, mu)
            }
            2 => {
                // a = m with 2 mu = -1 mod N
                let mu = c64(if t % 2 == 0 { -0.5 } else { (n as f64 - 1.0) / 2.0 });
                LogWeylChar::new(mu, beta, mu)
            }
            _ => {
                // a = m with 2 mu = k, 1 <= k <= N - 2
                let k = 1 + (t / 4) % (n - 2);
                let mu = c64(k as f64 / 2.0);
                LogWeylChar::new(mu, beta, mu)
            }
        };
        let name = ["generic", "parabolic (a)", "parabolic (b)", "parabolic (c)"][case];
        out.push((name, lc));
    }
    out
}

pub fn representation_suite(o: &Options) -> Suite {
    let mut acc = Acc::new(o);
    for &n in &o.ns {
        let c = cfg(n);
        let mut r = seeded(o, 12, n);
        let xi = c.xi();
        for (name, lc) in module_cases(n, &mut r) {
            let g = weylrep::rep_matrices(&c, &lc, Basis::Fourier);
            let dim = weylrep::commutant_dim(&g);
            acc.put(&format!("commutant dimension = 1, {name}"), n, (dim as f64 - 1.0).abs(), 0.5);
            let kinv = linalg::inverse(&g.k).unwrap();
            let ke = &g.k * &g.e;
            let kf = &g.k * &g.f;
            let comm = &g.e * &g.f - &g.f * &g.e;
            acc.put("KE = xi^2 EK", n, linalg::rel_dev(&ke, &(&g.e * &g.k * (xi * xi))), 1e-10);
            acc.put("KF = xi^-2 FK", n, linalg::rel_dev(&kf, &(&g.f * &g.k / (xi * xi))), 1e-10);
            acc.put("[E,F] = (xi - xi^-1)(K - K^-1)", n, linalg::rel_dev(&comm, &((&g.k - &kinv) * (xi - 1.0 / xi))), 1e-10);
            acc.put("xy = omega yx", n, linalg::rel_dev(&(&g.x * &g.y), &(&g.y * &g.x * c.omega())), 1e-10);
            acc.put("Casimir scalar", n, scalar_dev(&g.omega, weylrep::casimir_scalar(&c, lc.mu)), 1e-10);
            let (ka, ea, fa) = weylrep::central_scalars(&lc);
            acc.put("K^N scalar", n, scalar_dev(&mat_pow(&g.k, n), ka), 1e-10);
            acc.put("E^N scalar", n, scalar_dev(&mat_pow(&g.e, n), ea), 1e-10);
            acc.put("F^N scalar", n, scalar_dev(&mat_pow(&g.f, n), fa), 1e-10);
        }
        let g = weylrep::rep_matrices(&c, &module_cases(n, &mut r)[0].1, Basis::Fourier);
        acc.put("commutant dimension of V + V = 4", n, (weylrep::commutant_dim(&g.direct_sum(&g)) as f64 - 4.0).abs(), 0.5);
        for _ in 0..5 {
            let l1 = crate::characters::LogWeylChar::new(sample::complex_box(&mut r, 0.5, 0.15), sample::complex_box(&mut r, 0.5, 0.15), sample::complex_box(&mut r, 0.5, 0.15));
            let l2 = crate::characters::LogWeylChar::new(sample::complex_box(&mut r, 0.5, 0.15), sample::complex_box(&mut r, 0.5, 0.15), sample::complex_box(&mut r, 0.5, 0.15));
            let g1 = weylrep::rep_matrices(&c, &l1, Basis::Fourier);
            let g2 = weylrep::rep_matrices(&c, &l2, Basis::Fourier);
            let id = linalg::identity(n);
            let dk = linalg::kron(&g1.k, &g2.k);
            let de = linalg::kron(&g1.e, &g2.k) + linalg::kron(&id, &g2.e);
            let df = linalg::kron(&g1.f, &id) + linalg::kron(&linalg::inverse(&g1.k).unwrap(), &g2.f);
            let prod = characters::char_product(&characters::to_z0_char(&l1.chi()), &characters::to_z0_char(&l2.chi())).unwrap();
            let (kp, ep, fp) = prod.z0_values();
            acc.put("tensor grading K^N", n, scalar_dev(&mat_pow(&dk, n), kp), 1e-10);
            acc.put("tensor grading E^N", n, scalar_dev(&mat_pow(&de, n), ep), 1e-10);
            acc.put("tensor grading F^N", n, scalar_dev(&mat_pow(&df, n), fp), 1e-10);
        }
    }
    acc.suite(12, "representation probes")
}

/// One line per suite: id, PASS/FAIL, name, worst deviation-to-tolerance ratio.
pub fn summary_line(s: &Suite) -> String {
    let verdict = if s.passed() { "PASS" } else { "FAIL" };
    let worst = s.checks.iter().max_by(|a, b| (a.dev / a.tol).partial_cmp(&(b.dev / b.tol)).unwrap_or(std::cmp::Ordering::Equal));
    match worst {
        Some(w) => format!(
            "criterion {:>2} {verdict}  {:<42} worst: {} (N={}) dev {:.2e} tol {:.0e}",
            s.id,
            s.name,
            w.name,
            if w.n == 0 { "any".to_string() } else { w.n.to_string() },
            w.dev,
            w.tol
        ),
        None => format!("criterion {:>2} {verdict}  {} (no checks ran)", s.id, s.name),
    }
}
