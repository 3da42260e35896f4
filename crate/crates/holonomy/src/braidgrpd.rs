//! Braid diagrams, their colorings, and the state sum.
//!
//! Slots are numbered 0..width from the side where generator 1 acts; the
//! generator +-i crosses slots i-1 and i. Crossings are read top to bottom and
//! the top crossing acts first. Strand k is the strand that starts in slot k;
//! for braids the strands are the components. Regions 0..=width sit between
//! the slots at the top (region j is on the slot-0 side of slot j); every
//! crossing creates one new region (its E region) and two new segments.
//!
//! In the tensor product slot 0 is the most significant factor.

use crate::characters::{braid, Sign, WeylChar};
use crate::linalg::{self, CMat};
use crate::qdilog::{lg, RootConfig, TWO_PI_I};
use crate::rmatrix::{self, CrossingData, Quad, Region};
use crate::{Error, Result, C64};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub width: usize,
    pub letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(width: usize, letters: Vec<i64>) -> Result<Self> {
        if width == 0 {
            return Err(Error::GeneratorRange(0, width));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= width {
                return Err(Error::GeneratorRange(l, width));
            }
        }
        Ok(BraidWord { width, letters })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub strand: usize,
    pub slot: usize,
    /// None for top segments.
    pub created_by: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub sign: Sign,
    /// The crossing acts on slots `slot` and `slot + 1`.
    pub slot: usize,
    /// Segments [1, 2, 1', 2'].
    pub segs: [usize; 4],
    pub regions: Quad<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfSegment {
    pub segment: usize,
    pub crossing: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramGraph {
    pub width: usize,
    pub segments: Vec<Segment>,
    pub n_regions: usize,
    pub crossings: Vec<Crossing>,
    pub top_segments: Vec<usize>,
    pub bottom_segments: Vec<usize>,
    pub top_regions: Vec<usize>,
    pub bottom_regions: Vec<usize>,
    pub half_segments: Vec<HalfSegment>,
}

pub fn build_diagram(word: &BraidWord) -> DiagramGraph {
    let w = word.width;
    let mut segments: Vec<Segment> = (0..w).map(|k| Segment { strand: k, slot: k, created_by: None }).collect();
    let mut cur_seg: Vec<usize> = (0..w).collect();
    let mut cur_reg: Vec<usize> = (0..=w).collect();
    let mut n_regions = w + 1;
    let mut crossings = Vec::new();
    let mut half = Vec::new();
    for (ci, &l) in word.letters.iter().enumerate() {
        let sign = if l > 0 { Sign::Pos } else { Sign::Neg };
        let eps: i8 = if l > 0 { 1 } else { -1 };
        let i = l.unsigned_abs() as usize - 1;
        let (s1, s2) = (cur_seg[i], cur_seg[i + 1]);
        let (st1, st2) = (segments[s1].strand, segments[s2].strand);
        let s2p = segments.len();
        segments.push(Segment { strand: st2, slot: i, created_by: Some(ci) });
        let s1p = segments.len();
        segments.push(Segment { strand: st1, slot: i + 1, created_by: Some(ci) });
        let e_reg = n_regions;
        n_regions += 1;
        let regions = Quad { n: cur_reg[i], w: cur_reg[i + 1], s: cur_reg[i + 2], e: e_reg };
        crossings.push(Crossing { sign, slot: i, segs: [s1, s2, s1p, s2p], regions });
        for (seg, sg) in [(s1, -eps), (s1p, eps), (s2, eps), (s2p, -eps)] {
            half.push(HalfSegment { segment: seg, crossing: ci, sign: sg });
        }
        cur_seg[i] = s2p;
        cur_seg[i + 1] = s1p;
        cur_reg[i + 1] = e_reg;
    }
    DiagramGraph {
        width: w,
        segments,
        n_regions,
        crossings,
        top_segments: (0..w).collect(),
        bottom_segments: cur_seg,
        top_regions: (0..=w).collect(),
        bottom_regions: cur_reg,
        half_segments: half,
    }
}

impl DiagramGraph {
    pub fn internal_segments(&self) -> Vec<usize> {
        (0..self.segments.len())
            .filter(|s| !self.top_segments.contains(s) && !self.bottom_segments.contains(s))
            .collect()
    }

    pub fn internal_regions(&self) -> Vec<usize> {
        (0..self.n_regions)
            .filter(|r| !self.top_regions.contains(r) && !self.bottom_regions.contains(r))
            .collect()
    }

    /// Strand occupying each slot at the bottom.
    pub fn bottom_strands(&self) -> Vec<usize> {
        self.bottom_segments.iter().map(|&s| self.segments[s].strand).collect()
    }
}

/// A character on every segment, plus which crossings are pinched.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiColoring {
    pub seg: Vec<WeylChar>,
    pub pinched: Vec<bool>,
}

impl ChiColoring {
    pub fn bottom(&self, d: &DiagramGraph) -> Vec<WeylChar> {
        d.bottom_segments.iter().map(|&s| self.seg[s]).collect()
    }
}

pub fn propagate_chi(cfg: &RootConfig, d: &DiagramGraph, top: &[WeylChar]) -> Result<ChiColoring> {
    if top.len() != d.width {
        return Err(Error::Dimension { expected: d.width, got: top.len() });
    }
    let mut seg = vec![WeylChar::real(1.0, 1.0, 1.0); d.segments.len()];
    seg[..d.width].copy_from_slice(top);
    let mut pinched = Vec::with_capacity(d.crossings.len());
    for (ci, c) in d.crossings.iter().enumerate() {
        let out = braid(&seg[c.segs[0]], &seg[c.segs[1]], c.sign, &cfg.tol);
        if !out.admissible {
            return Err(Error::Inadmissible(ci));
        }
        seg[c.segs[2]] = out.chi1p;
        seg[c.segs[3]] = out.chi2p;
        pinched.push(out.pinched);
    }
    Ok(ChiColoring { seg, pinched })
}

/// Logs: beta per segment, gamma per region, mu per strand.
#[derive(Clone, Debug, PartialEq)]
pub struct LogColoring {
    pub beta: Vec<C64>,
    pub gamma: Vec<C64>,
    pub mu: Vec<C64>,
}

/// Top boundary data: beta and mu per slot, gamma per top region.
#[derive(Clone, Debug, PartialEq)]
pub struct TopData {
    pub beta: Vec<C64>,
    pub gamma: Vec<C64>,
    pub mu: Vec<C64>,
}

impl TopData {
    /// Principal logs, with gamma accumulating the alphas from `gamma0`.
    pub fn principal(chars: &[WeylChar], gamma0: C64) -> Self {
        let mut gamma = vec![gamma0];
        for c in chars {
            let last = *gamma.last().unwrap();
            gamma.push(last + lg(c.a));
        }
        TopData { beta: chars.iter().map(|c| lg(c.b)).collect(), gamma, mu: chars.iter().map(|c| lg(c.m)).collect() }
    }
}

/// Boundary log-parameters of a coloring.
#[derive(Clone, Debug, PartialEq)]
pub struct Boundary {
    pub top_beta: Vec<C64>,
    pub top_gamma: Vec<C64>,
    pub bottom_beta: Vec<C64>,
    pub bottom_gamma: Vec<C64>,
    /// mu per top slot
    pub mu: Vec<C64>,
}

impl Boundary {
    pub fn max_dev(&self, o: &Boundary) -> f64 {
        let d = |a: &[C64], b: &[C64]| -> f64 {
            if a.len() != b.len() {
                return f64::INFINITY;
            }
            a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
        };
        d(&self.top_beta, &o.top_beta)
            .max(d(&self.top_gamma, &o.top_gamma))
            .max(d(&self.bottom_beta, &o.bottom_beta))
            .max(d(&self.bottom_gamma, &o.bottom_gamma))
            .max(d(&self.mu, &o.mu))
    }
}

impl LogColoring {
    /// Top data as given; every created segment and region gets the principal log.
    pub fn principal(d: &DiagramGraph, chi: &ChiColoring, top: &TopData) -> Self {
        let mut beta: Vec<C64> = chi.seg.iter().map(|c| lg(c.b)).collect();
        beta[..d.width].copy_from_slice(&top.beta);
        let mut gamma = vec![C64::new(0.0, 0.0); d.n_regions];
        gamma[..=d.width].copy_from_slice(&top.gamma);
        for c in &d.crossings {
            gamma[c.regions.e] = gamma[c.regions.n] + lg(chi.seg[c.segs[3]].a);
        }
        LogColoring { beta, gamma, mu: top.mu.clone() }
    }

    pub fn boundary(&self, d: &DiagramGraph) -> Boundary {
        Boundary {
            top_beta: d.top_segments.iter().map(|&s| self.beta[s]).collect(),
            top_gamma: d.top_regions.iter().map(|&r| self.gamma[r]).collect(),
            bottom_beta: d.bottom_segments.iter().map(|&s| self.beta[s]).collect(),
            bottom_gamma: d.bottom_regions.iter().map(|&r| self.gamma[r]).collect(),
            mu: self.mu.clone(),
        }
    }
}

pub fn crossing_data(d: &DiagramGraph, lc: &LogColoring, k: usize) -> CrossingData {
    let c = &d.crossings[k];
    let [s1, s2, s1p, s2p] = c.segs;
    let mu = [lc.mu[d.segments[s1].strand], lc.mu[d.segments[s2].strand]];
    let g = c.regions.map(|r| lc.gamma[r]);
    CrossingData::from_logs(c.sign, [lc.beta[s1], lc.beta[s2], lc.beta[s1p], lc.beta[s2p]], mu, g)
}

/// Checks the log-coloring against the characters at every crossing and on the top.
pub fn check_log_coloring(cfg: &RootConfig, d: &DiagramGraph, chi: &ChiColoring, lc: &LogColoring) -> Result<()> {
    if lc.beta.len() != d.segments.len() || lc.gamma.len() != d.n_regions || lc.mu.len() != d.width {
        return Err(Error::Inconsistent("log-coloring has the wrong shape".into()));
    }
    let tol = |z: C64| cfg.tol.singular * z.norm().max(1.0);
    for (s, c) in chi.seg.iter().enumerate() {
        let st = d.segments[s].strand;
        let b = crate::qdilog::e(lc.beta[s]);
        let m = crate::qdilog::e(lc.mu[st]);
        if (b - c.b).norm() > tol(c.b) {
            return Err(Error::RootMismatch(format!("beta of segment {s}")));
        }
        if (m - c.m).norm() > tol(c.m) {
            return Err(Error::RootMismatch(format!("mu of strand {st}")));
        }
    }
    for j in 0..d.width {
        let a = crate::qdilog::e(lc.gamma[j + 1] - lc.gamma[j]);
        if (a - chi.seg[j].a).norm() > tol(chi.seg[j].a) {
            return Err(Error::RootMismatch(format!("top regions around slot {j}")));
        }
    }
    for (k, c) in d.crossings.iter().enumerate() {
        let a2p = crate::qdilog::e(lc.gamma[c.regions.e] - lc.gamma[c.regions.n]);
        let want = chi.seg[c.segs[3]].a;
        if (a2p - want).norm() > tol(want) {
            return Err(Error::RootMismatch(format!("region E of crossing {k}")));
        }
    }
    Ok(())
}

/// lambda per strand: half the signed sum of beta over half-segments.
pub fn log_longitudes(d: &DiagramGraph, lc: &LogColoring) -> Vec<C64> {
    let mut lam = vec![C64::new(0.0, 0.0); d.width];
    for h in &d.half_segments {
        lam[d.segments[h.segment].strand] += lc.beta[h.segment] * (h.sign as f64) / 2.0;
    }
    lam
}

fn slot_operator(n: usize, width: usize, slot: usize, b: &CMat) -> CMat {
    let left = linalg::identity(n.pow(slot as u32));
    let right = linalg::identity(n.pow((width - slot - 2) as u32));
    linalg::kron(&linalg::kron(&left, b), &right)
}

/// The state sum: composition of the crossing braidings, top crossing first.
pub fn jfunc_eval(cfg: &RootConfig, d: &DiagramGraph, chi: &ChiColoring, lc: &LogColoring) -> Result<CMat> {
    check_log_coloring(cfg, d, chi, lc)?;
    let n = cfg.n();
    let mut m = linalg::identity(n.pow(d.width as u32));
    for (k, c) in d.crossings.iter().enumerate() {
        let cd = crossing_data(d, lc, k);
        let b = rmatrix::braiding_op(cfg, &cd).map_err(|err| match err {
            Error::Inadmissible(_) => Error::Inadmissible(k),
            other => other,
        })?;
        m = slot_operator(n, d.width, c.slot, &b) * m;
    }
    Ok(m)
}

/// For each internal region, |sum over its corners of eps * (+-zeta0)|.
pub fn edge_gluing_residuals(d: &DiagramGraph, lc: &LogColoring) -> Vec<(usize, f64)> {
    let mut sums = vec![C64::new(0.0, 0.0); d.n_regions];
    for k in 0..d.crossings.len() {
        let cd = crossing_data(d, lc, k);
        let z = cd.zeta0();
        let eps = cd.eps();
        let r = d.crossings[k].regions;
        sums[r.n] += z.n * eps;
        sums[r.s] += z.s * eps;
        sums[r.w] -= z.w * eps;
        sums[r.e] -= z.e * eps;
    }
    d.internal_regions().into_iter().map(|r| (r, sums[r].norm())).collect()
}

/// Adjusts internal betas by integers so the log-longitudes become `target`.
pub fn fit_longitudes(d: &DiagramGraph, lc: &mut LogColoring, target: &[C64]) -> Result<()> {
    let cur = log_longitudes(d, lc);
    // coefficient of each internal segment's beta in the longitude of its strand
    let mut coef = vec![0i64; d.segments.len()];
    for h in &d.half_segments {
        coef[h.segment] += h.sign as i64;
    }
    let internal = d.internal_segments();
    for s in 0..d.width {
        let delta = target[s] - cur[s];
        if delta.norm() < 1e-12 {
            continue;
        }
        let di = delta.re.round();
        if (delta - di).norm() > 1e-8 {
            return Err(Error::NonInteger(format!("log-longitude difference {delta} on strand {s}")));
        }
        let seg = internal
            .iter()
            .copied()
            .find(|&g| d.segments[g].strand == s && coef[g] != 0)
            .ok_or_else(|| Error::Ineligible(format!("strand {s} has no adjustable segment")))?;
        // coef is +-2 here, contributing coef/2 per unit shift
        lc.beta[seg] += di * (coef[seg] / 2) as f64;
    }
    Ok(())
}

/// Principal log-coloring with prescribed boundary values, fitted to the
/// given log-longitudes by integer shifts of internal betas.
pub fn fit_coloring(d: &DiagramGraph, chi: &ChiColoring, boundary: &Boundary, lambda: &[C64]) -> Result<LogColoring> {
    let top = TopData { beta: boundary.top_beta.clone(), gamma: boundary.top_gamma.clone(), mu: boundary.mu.clone() };
    let mut lc = LogColoring::principal(d, chi, &top);
    for (j, &s) in d.bottom_segments.iter().enumerate() {
        if s >= d.width {
            let diff = boundary.bottom_beta[j] - lc.beta[s];
            if (diff - diff.re.round()).norm() > 1e-8 {
                return Err(Error::Ineligible(format!("bottom beta {j} is not a log of its character")));
            }
            lc.beta[s] = boundary.bottom_beta[j];
        }
    }
    // bottom regions are fixed by the crossing that creates them
    for (j, &r) in d.bottom_regions.iter().enumerate() {
        if r > d.width {
            let diff = boundary.bottom_gamma[j] - lc.gamma[r];
            if (diff - diff.re.round()).norm() > 1e-8 {
                return Err(Error::Ineligible(format!("bottom gamma {j} is inconsistent")));
            }
            lc.gamma[r] = boundary.bottom_gamma[j];
        }
    }
    fit_longitudes(d, &mut lc, lambda)?;
    Ok(lc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    R2,
    R3,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MoveReport {
    pub kind: MoveKind,
    pub deviation: f64,
    pub before: CMat,
    pub after: CMat,
}

pub struct ColoredDiagram<'a> {
    pub diagram: &'a DiagramGraph,
    pub chi: &'a ChiColoring,
    pub log: &'a LogColoring,
}

/// Checks eligibility of a move between two colored diagrams and compares
/// their state sums.
pub fn check_move(cfg: &RootConfig, before: &ColoredDiagram, after: &ColoredDiagram, kind: MoveKind) -> Result<MoveReport> {
    if before.diagram.width != after.diagram.width {
        return Err(Error::Ineligible("widths differ".into()));
    }
    let bd = before.log.boundary(before.diagram);
    let ad = after.log.boundary(after.diagram);
    if bd.max_dev(&ad) > 1e-9 {
        return Err(Error::Ineligible("boundary log-parameters differ".into()));
    }
    if before.diagram.bottom_strands() != after.diagram.bottom_strands() {
        return Err(Error::Ineligible("strand permutations differ".into()));
    }
    let lb = log_longitudes(before.diagram, before.log);
    let la = log_longitudes(after.diagram, after.log);
    if lb.iter().zip(&la).any(|(x, y)| (x - y).norm() > 1e-9) {
        return Err(Error::Ineligible("log-longitudes differ (beta + beta'' != beta' + beta~')".into()));
    }
    let jb = jfunc_eval(cfg, before.diagram, before.chi, before.log)?;
    let ja = jfunc_eval(cfg, after.diagram, after.chi, after.log)?;
    Ok(MoveReport { kind, deviation: linalg::rel_dev(&ja, &jb), before: jb, after: ja })
}

/// Phase exp(-(2 pi i / N) sum (lambda' - lambda) mu) relating two colorings with equal boundary.
pub fn log_dependence_phase(cfg: &RootConfig, d: &DiagramGraph, f: &LogColoring, fp: &LogColoring) -> C64 {
    let l = log_longitudes(d, f);
    let lp = log_longitudes(d, fp);
    let s: C64 = (0..d.width).map(|i| (lp[i] - l[i]) * f.mu[i]).sum();
    (-TWO_PI_I / cfg.nf() * s).exp()
}

/// Region labels of a crossing for reports.
pub fn region_label(r: Region) -> char {
    r.label()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_word() {
        let d = build_diagram(&BraidWord::new(3, vec![]).unwrap());
        assert_eq!((d.segments.len(), d.crossings.len(), d.n_regions), (3, 0, 4));
    }

    #[test]
    fn single_crossing() {
        let d = build_diagram(&BraidWord::new(2, vec![1]).unwrap());
        assert_eq!(d.crossings.len(), 1);
        assert_eq!(d.segments.len(), 4);
        assert_eq!(d.half_segments.len(), 4);
        assert_eq!(d.bottom_strands(), vec![1, 0]);
    }

    #[test]
    fn out_of_range() {
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
    }

    #[test]
    fn sigma2_inverse_longitudes() {
        // width 3, one negative crossing on slots 1, 2
        let d = build_diagram(&BraidWord::new(3, vec![-2]).unwrap());
        let c = d.crossings[0];
        let mut beta: Vec<C64> = (0..5).map(|k| C64::new(0.1 * k as f64 + 0.03, 0.0)).collect();
        beta[0] = C64::new(0.7, 0.0);
        let lc = LogColoring { beta: beta.clone(), gamma: vec![C64::new(0.0, 0.0); 5], mu: vec![C64::new(0.0, 0.0); 3] };
        let lam = log_longitudes(&d, &lc);
        let [s1, s2, s1p, s2p] = c.segs;
        assert!(lam[0].norm() < 1e-15);
        // strand 1 enters as segment 1 and leaves as 1'; eps = -1
        assert!((lam[1] - (beta[s1] - beta[s1p]) / 2.0).norm() < 1e-15);
        assert!((lam[2] - (beta[s2p] - beta[s2]) / 2.0).norm() < 1e-15);
    }
}
