//! JSON interchange: complex numbers are `[re, im]` (a bare number is read as
//! real), matrices are row-major nested arrays.

use holonomy::braidgrpd::{BraidWord, DiagramGraph, LogColoring, TopData};
use holonomy::characters::{Sign, WeylChar};
use holonomy::linalg::CMat;
use holonomy::rmatrix::{CrossingData, Quad, RTensor};
use holonomy::C64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum ComplexIn {
    Pair([f64; 2]),
    Real(f64),
}

impl ComplexIn {
    pub fn value(self) -> C64 {
        match self {
            ComplexIn::Pair([re, im]) => C64::new(re, im),
            ComplexIn::Real(re) => C64::new(re, 0.0),
        }
    }
}

pub fn cx(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn matrix(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| cx(m[(i, j)])).collect()).collect()
}

/// Rows (n1, n2), columns (n1', n2').
pub fn rtensor(r: &RTensor) -> Vec<Vec<[f64; 2]>> {
    matrix(&r.to_matrix())
}

/// Input error: the JSON is well formed but does not describe a valid object.
#[derive(Debug)]
pub struct SchemaError(pub String);

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentIn {
    pub alpha: Option<ComplexIn>,
    pub beta: ComplexIn,
    pub mu: Option<ComplexIn>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionsIn {
    #[serde(rename = "N")]
    pub n: ComplexIn,
    #[serde(rename = "W")]
    pub w: ComplexIn,
    #[serde(rename = "S")]
    pub s: ComplexIn,
    #[serde(rename = "E")]
    pub e: ComplexIn,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum KappaIn {
    Word(String),
    Value(ComplexIn),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingIn {
    pub sign: i64,
    pub segments: BTreeMap<String, SegmentIn>,
    pub regions: RegionsIn,
    pub kappa: Option<KappaIn>,
}

impl CrossingIn {
    pub fn to_crossing(&self) -> Result<CrossingData, SchemaError> {
        let sign = Sign::from_i64(self.sign).ok_or_else(|| SchemaError(format!("sign must be 1 or -1, got {}", self.sign)))?;
        let seg = |k: &str| self.segments.get(k).ok_or_else(|| SchemaError(format!("missing segment \"{k}\"")));
        for k in self.segments.keys() {
            if !["1", "2", "1p", "2p"].contains(&k.as_str()) {
                return Err(SchemaError(format!("unknown segment \"{k}\"; expected 1, 2, 1p, 2p")));
            }
        }
        let (s1, s2, s1p, s2p) = (seg("1")?, seg("2")?, seg("1p")?, seg("2p")?);
        let mu_of = |a: &SegmentIn, b: &SegmentIn, name: &str| -> Result<C64, SchemaError> {
            match (a.mu, b.mu) {
                (Some(x), Some(y)) if (x.value() - y.value()).norm() > 1e-12 => {
                    Err(SchemaError(format!("segments {name} and {name}p lie on one strand but have different mu")))
                }
                (Some(x), _) | (None, Some(x)) => Ok(x.value()),
                (None, None) => Err(SchemaError(format!("mu missing on strand of segment {name}"))),
            }
        };
        let mu = [mu_of(s1, s1p, "1")?, mu_of(s2, s2p, "2")?];
        let r = &self.regions;
        let gamma = Quad { n: r.n.value(), w: r.w.value(), s: r.s.value(), e: r.e.value() };
        let mut c = CrossingData::from_logs(sign, [s1.beta.value(), s2.beta.value(), s1p.beta.value(), s2p.beta.value()], mu, gamma);
        let derived = c.alphas();
        for (i, (k, s)) in [("1", s1), ("2", s2), ("1p", s1p), ("2p", s2p)].into_iter().enumerate() {
            if let Some(a) = s.alpha {
                if (a.value() - derived[i]).norm() > 1e-9 {
                    return Err(SchemaError(format!(
                        "alpha of segment {k} is {} but the regions give {}",
                        a.value(),
                        derived[i]
                    )));
                }
            }
        }
        match &self.kappa {
            None => {}
            Some(KappaIn::Word(w)) if w == "auto" => {}
            Some(KappaIn::Word(w)) => return Err(SchemaError(format!("kappa must be \"auto\" or a complex number, got \"{w}\""))),
            Some(KappaIn::Value(k)) => c = c.with_kappa(k.value()),
        }
        Ok(c)
    }
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CharIn {
    pub a: ComplexInOut,
    pub b: ComplexInOut,
    pub m: ComplexInOut,
}

/// A complex number that is read leniently and written as `[re, im]`.
#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(from = "ComplexIn", into = "[f64; 2]")]
pub struct ComplexInOut(pub C64);

impl From<ComplexIn> for ComplexInOut {
    fn from(c: ComplexIn) -> Self {
        ComplexInOut(c.value())
    }
}

impl From<ComplexInOut> for [f64; 2] {
    fn from(c: ComplexInOut) -> Self {
        cx(c.0)
    }
}

impl CharIn {
    pub fn to_char(self) -> WeylChar {
        WeylChar::new_unchecked(self.a.0, self.b.0, self.m.0)
    }

    pub fn from_char(w: &WeylChar) -> Self {
        CharIn { a: ComplexInOut(w.a), b: ComplexInOut(w.b), m: ComplexInOut(w.m) }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogIn {
    /// Overrides keyed by segment index.
    #[serde(default)]
    pub beta: BTreeMap<String, ComplexIn>,
    /// Overrides keyed by region index.
    #[serde(default)]
    pub gamma: BTreeMap<String, ComplexIn>,
    /// Per strand.
    pub mu: Option<Vec<ComplexIn>>,
    /// Target log-longitudes per strand, reached by integer shifts of internal betas.
    pub lambda: Option<Vec<ComplexIn>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraidIn {
    pub width: usize,
    pub word: Vec<i64>,
    pub top_colors: Vec<CharIn>,
    #[serde(default)]
    pub log: Option<LogIn>,
}

impl BraidIn {
    pub fn word(&self) -> Result<BraidWord, SchemaError> {
        BraidWord::new(self.width, self.word.clone()).map_err(|e| SchemaError(e.to_string()))
    }

    pub fn top(&self) -> Result<Vec<WeylChar>, SchemaError> {
        if self.top_colors.len() != self.width {
            return Err(SchemaError(format!("top_colors has {} entries for width {}", self.top_colors.len(), self.width)));
        }
        Ok(self.top_colors.iter().map(|c| c.to_char()).collect())
    }

    /// Top data for the principal coloring, with gamma_0, top betas and mus
    /// taken from the overrides when present.
    pub fn top_data(&self, top: &[WeylChar]) -> Result<TopData, SchemaError> {
        let log = self.log.as_ref();
        let g0 = log.and_then(|l| l.gamma.get("0")).map(|c| c.value()).unwrap_or_default();
        let mut td = TopData::principal(top, g0);
        if let Some(l) = log {
            if let Some(mu) = &l.mu {
                if mu.len() != self.width {
                    return Err(SchemaError(format!("log.mu has {} entries for width {}", mu.len(), self.width)));
                }
                td.mu = mu.iter().map(|c| c.value()).collect();
            }
            for j in 0..self.width {
                if let Some(b) = l.beta.get(&j.to_string()) {
                    td.beta[j] = b.value();
                }
                if let Some(g) = l.gamma.get(&(j + 1).to_string()) {
                    td.gamma[j + 1] = g.value();
                }
            }
        }
        Ok(td)
    }

    /// Applies the remaining overrides to a principal coloring.
    pub fn apply_overrides(&self, d: &DiagramGraph, lc: &mut LogColoring) -> Result<(), SchemaError> {
        let Some(l) = &self.log else { return Ok(()) };
        let idx = |k: &str, len: usize, what: &str| -> Result<usize, SchemaError> {
            k.parse::<usize>()
                .ok()
                .filter(|&i| i < len)
                .ok_or_else(|| SchemaError(format!("log.{what} key \"{k}\" is not an index below {len}")))
        };
        for (k, v) in &l.beta {
            lc.beta[idx(k, d.segments.len(), "beta")?] = v.value();
        }
        for (k, v) in &l.gamma {
            lc.gamma[idx(k, d.n_regions, "gamma")?] = v.value();
        }
        Ok(())
    }

    pub fn lambda(&self) -> Result<Option<Vec<C64>>, SchemaError> {
        match self.log.as_ref().and_then(|l| l.lambda.as_ref()) {
            None => Ok(None),
            Some(v) if v.len() != self.width => Err(SchemaError(format!("log.lambda has {} entries for width {}", v.len(), self.width))),
            Some(v) => Ok(Some(v.iter().map(|c| c.value()).collect())),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FlatteningOut {
    pub zeta0: [f64; 2],
    pub zeta1: [f64; 2],
}

#[derive(Debug, Serialize)]
pub struct ZetaSetOut {
    #[serde(rename = "N")]
    pub n: FlatteningOut,
    #[serde(rename = "W")]
    pub w: FlatteningOut,
    #[serde(rename = "S")]
    pub s: FlatteningOut,
    #[serde(rename = "E")]
    pub e: FlatteningOut,
}

impl ZetaSetOut {
    pub fn of(c: &CrossingData) -> Self {
        let z0 = c.zeta0();
        let z1 = c.zeta1_rel();
        let k = c.kappa_value();
        let f = |a: C64, b: C64| FlatteningOut { zeta0: cx(a), zeta1: cx(b + k) };
        ZetaSetOut { n: f(z0.n, z1.n), w: f(z0.w, z1.w), s: f(z0.s, z1.s), e: f(z0.e, z1.e) }
    }
}

#[derive(Debug, Serialize)]
pub struct SegmentOut {
    pub id: usize,
    pub strand: usize,
    pub slot: usize,
    pub created_by: Option<usize>,
    pub chi: CharIn,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<[f64; 2]>,
}

#[derive(Debug, Serialize)]
pub struct CrossingOut {
    pub id: usize,
    pub sign: i64,
    pub slot: usize,
    pub segments: [usize; 4],
    pub regions: BTreeMap<&'static str, usize>,
    pub pinched: bool,
}

pub fn crossings_out(d: &DiagramGraph, pinched: &[bool]) -> Vec<CrossingOut> {
    d.crossings
        .iter()
        .enumerate()
        .map(|(i, c)| CrossingOut {
            id: i,
            sign: c.sign.value() as i64,
            slot: c.slot,
            segments: c.segs,
            regions: [("N", c.regions.n), ("W", c.regions.w), ("S", c.regions.s), ("E", c.regions.e)].into_iter().collect(),
            pinched: pinched[i],
        })
        .collect()
}
