use std::fmt;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spectral::isospectral;
use super::wl::{compare_fwl2, compare_wl1, RefinementComparison, WlInit, FWL2_NODE_CAP};
use crate::complex::OrientedSimplicialComplex;
use crate::encode::{edge_rwse, rwse_node, same_row_multiset, subspace_abs_markers, EdgeWalk, RwseMode};
use crate::error::{Error, Result};

/// A distinguishability test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Wl1,
    /// 1-WL initialised with node RWSE rows.
    Wl1Rwse,
    Fwl2,
    /// Exact `L_k` isospectrality.
    SpecL(usize),
    Rwse0,
    EdgeRwseFull,
    EdgeRwseUp,
    Hodge1LapAbs,
}

impl Method {
    /// The set selected by `all`.
    pub fn all() -> Vec<Method> {
        use Method::*;
        vec![Wl1, Wl1Rwse, Fwl2, SpecL(0), SpecL(1), Rwse0, EdgeRwseFull, EdgeRwseUp, Hodge1LapAbs]
    }

    /// Parses `all` or a comma-separated list of method names.
    pub fn parse_list(s: &str) -> Result<Vec<Method>> {
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if item == "all" {
                out.extend(Method::all());
            } else {
                out.push(item.parse()?);
            }
        }
        let mut seen = std::collections::HashSet::new();
        out.retain(|m| seen.insert(*m));
        if out.is_empty() {
            return Err(Error::Config("no distinguish methods given".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Wl1 => write!(f, "wl1"),
            Method::Wl1Rwse => write!(f, "wl1+rwse"),
            Method::Fwl2 => write!(f, "fwl2"),
            Method::SpecL(k) => write!(f, "spec_L{k}"),
            Method::Rwse0 => write!(f, "rwse0"),
            Method::EdgeRwseFull => write!(f, "edge_rwse_full"),
            Method::EdgeRwseUp => write!(f, "edge_rwse_up"),
            Method::Hodge1LapAbs => write!(f, "hodge1lap_abs"),
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "wl1" => Method::Wl1,
            "wl1+rwse" => Method::Wl1Rwse,
            "fwl2" => Method::Fwl2,
            "rwse0" => Method::Rwse0,
            "edge_rwse_full" => Method::EdgeRwseFull,
            "edge_rwse_up" => Method::EdgeRwseUp,
            "hodge1lap_abs" => Method::Hodge1LapAbs,
            other => match other.strip_prefix("spec_L").map(str::parse) {
                Some(Ok(k)) => Method::SpecL(k),
                _ => {
                    return Err(Error::Config(format!(
                        "unknown method {other:?}; expected all, wl1, wl1+rwse, fwl2, spec_L<k>, rwse0, \
                         edge_rwse_full, edge_rwse_up or hodge1lap_abs"
                    )))
                }
            },
        })
    }
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Method {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Separated,
    NotSeparated,
    /// The method could not run; `evidence` holds the error.
    Failed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Separated => "separated",
            Verdict::NotSeparated => "not_separated",
            Verdict::Failed => "failed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodResult {
    pub method: Method,
    pub verdict: Verdict,
    pub evidence: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistinguishParams {
    /// Walk length for RWSE-based methods.
    pub t: usize,
    pub max_iter: usize,
    pub fwl2_cap: usize,
    /// Eigen-subspaces used by `hodge1lap_abs`.
    pub n_eigen: usize,
    /// Feature multiset tolerance.
    pub tol: f64,
}

impl Default for DistinguishParams {
    fn default() -> Self {
        Self { t: 20, max_iter: 64, fwl2_cap: FWL2_NODE_CAP, n_eigen: 4, tol: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistinguishReport {
    pub pair: String,
    pub params: DistinguishParams,
    pub results: Vec<MethodResult>,
}

impl DistinguishReport {
    pub fn verdict(&self, method: Method) -> Option<Verdict> {
        self.results.iter().find(|r| r.method == method).map(|r| r.verdict)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Aligned-column table: method, verdict, evidence.
    pub fn to_text(&self) -> String {
        let names: Vec<String> = self.results.iter().map(|r| r.method.to_string()).collect();
        let w1 = names.iter().map(String::len).max().unwrap_or(0).max("method".len());
        let w2 = "not_separated".len();
        let mut out = format!("pair: {}\n{:<w1$}  {:<w2$}  evidence\n", self.pair, "method", "verdict");
        for (name, r) in names.iter().zip(&self.results) {
            out.push_str(&format!("{name:<w1$}  {:<w2$}  {}\n", r.verdict.to_string(), r.evidence));
        }
        out
    }
}

/// Runs each method on the pair; a failing method is recorded as
/// [`Verdict::Failed`] without stopping the others.
///
/// Graph-level methods use the 1-skeleton of each complex.
pub fn distinguish(
    pair: &str,
    a: &OrientedSimplicialComplex,
    b: &OrientedSimplicialComplex,
    methods: &[Method],
    params: &DistinguishParams,
) -> Result<DistinguishReport> {
    if methods.is_empty() {
        return Err(Error::Config("no distinguish methods given".into()));
    }
    let results = methods
        .par_iter()
        .map(|&method| match run_method(method, a, b, params) {
            Ok((separated, evidence)) => MethodResult {
                method,
                verdict: if separated { Verdict::Separated } else { Verdict::NotSeparated },
                evidence,
            },
            Err(e) => MethodResult { method, verdict: Verdict::Failed, evidence: e.to_string() },
        })
        .collect();
    Ok(DistinguishReport { pair: pair.into(), params: params.clone(), results })
}

fn refinement_evidence(c: RefinementComparison) -> (bool, String) {
    match c.first_difference {
        Some(it) => (true, format!("histograms differ at iteration {it}")),
        None => (false, format!("equal histograms; stable after {} rounds", c.iterations)),
    }
}

/// Smallest column prefix whose row multisets differ.
fn feature_evidence(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64, unit: &str) -> (bool, String) {
    if a.nrows() != b.nrows() {
        return (true, format!("row counts differ ({} vs {})", a.nrows(), b.nrows()));
    }
    if a.ncols() != b.ncols() {
        return (true, format!("column counts differ ({} vs {})", a.ncols(), b.ncols()));
    }
    for c in 1..=a.ncols() {
        if !same_row_multiset(&a.columns(0, c).into_owned(), &b.columns(0, c).into_owned(), tol) {
            return (true, format!("row multisets differ at {unit} {c}"));
        }
    }
    (false, format!("equal row multisets over {} columns", a.ncols()))
}

fn run_method(
    method: Method,
    a: &OrientedSimplicialComplex,
    b: &OrientedSimplicialComplex,
    p: &DistinguishParams,
) -> Result<(bool, String)> {
    let (ga, gb) = (a.graph(), b.graph());
    Ok(match method {
        Method::Wl1 => refinement_evidence(compare_wl1(&ga, &gb, &WlInit::Uniform, &WlInit::Uniform, p.max_iter)?),
        Method::Wl1Rwse => {
            let fa = rwse_node(&ga, p.t, RwseMode::Diag)?.values;
            let fb = rwse_node(&gb, p.t, RwseMode::Diag)?.values;
            refinement_evidence(compare_wl1(&ga, &gb, &WlInit::Features(fa), &WlInit::Features(fb), p.max_iter)?)
        }
        Method::Fwl2 => refinement_evidence(compare_fwl2(&ga, &gb, p.max_iter, p.fwl2_cap)?),
        Method::SpecL(k) => {
            let v = isospectral(a, b, k)?;
            let mut ev = match v.first_difference {
                Some(i) => format!("characteristic polynomials differ at coefficient {i}"),
                None => "identical characteristic polynomials".to_string(),
            };
            for w in &v.warnings {
                ev.push_str("; ");
                ev.push_str(w);
            }
            (v.separated, ev)
        }
        Method::Rwse0 => {
            let fa = rwse_node(&ga, p.t, RwseMode::Diag)?.values;
            let fb = rwse_node(&gb, p.t, RwseMode::Diag)?.values;
            feature_evidence(&fa, &fb, p.tol, "step")
        }
        Method::EdgeRwseFull | Method::EdgeRwseUp => {
            let variant = if method == Method::EdgeRwseFull { EdgeWalk::Full } else { EdgeWalk::Up };
            let fa = edge_rwse(a, variant, p.t, false)?.values;
            let fb = edge_rwse(b, variant, p.t, false)?.values;
            feature_evidence(&fa, &fb, p.tol, "step")
        }
        Method::Hodge1LapAbs => {
            let fa = subspace_abs_markers(a, p.n_eigen, 1e-7)?;
            let fb = subspace_abs_markers(b, p.n_eigen, 1e-7)?;
            feature_evidence(&fa, &fb, p.tol, "subspace")
        }
    })
}
