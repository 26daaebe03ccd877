use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::feature::{EncodingMeta, FeatureMatrix, Subject};
use crate::complex::OrientedSimplicialComplex;
use crate::error::{Error, Result};
use crate::hodge::{hodge_laplacian, spectrum, Spectrum, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hodge1LapMode {
    /// Projections of a preimage onto eigen-subspaces.
    Proj,
    /// Absolute eigenvector entries plus random projections of them.
    Abs,
    /// Raw eigenvectors with their eigenvalues.
    Sim,
}

impl std::str::FromStr for Hodge1LapMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proj" => Ok(Self::Proj),
            "abs" => Ok(Self::Abs),
            "sim" => Ok(Self::Sim),
            other => Err(Error::Config(format!("unknown Hodge1Lap mode {other:?} (expected proj, abs or sim)"))),
        }
    }
}

/// Vector(s) projected in `proj` mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Preimage {
    /// The constant vector with entries `1/sqrt(m)`.
    Unit,
    /// An `m x f` matrix of edge features; each column is projected.
    EdgeFeatures(DMatrix<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hodge1LapParams {
    pub mode: Hodge1LapMode,
    /// `proj`: nonzero eigen-subspaces after the kernel; `abs`/`sim`:
    /// eigenvectors counted from the smallest eigenvalue.
    pub n_eigen: usize,
    pub preimage: Preimage,
    /// Random projection channels in `abs` mode.
    pub n_random_proj: usize,
    pub seed: u64,
    /// Eigenvalues closer than this belong to one subspace.
    pub group_tol: f64,
    pub zero_tol: Option<f64>,
}

impl Default for Hodge1LapParams {
    fn default() -> Self {
        Self {
            mode: Hodge1LapMode::Proj,
            n_eigen: 4,
            preimage: Preimage::Unit,
            n_random_proj: 0,
            seed: 0,
            group_tol: 1e-7,
            zero_tol: None,
        }
    }
}

fn l1_spectrum(sc: &OrientedSimplicialComplex, zero_tol: Option<f64>) -> Result<Spectrum> {
    if sc.dim() < 1 {
        return Err(Error::Domain("Hodge1Lap needs a complex of dimension >= 1".into()));
    }
    spectrum(&hodge_laplacian(sc, 1, Variant::Standard)?, zero_tol)
}

/// Eigen-subspaces used by `proj` mode: the kernel, then the lowest
/// `n_eigen` nonzero eigenvalue groups. Each entry is `(eigenvalue, basis)`.
pub fn proj_subspaces(spec: &Spectrum, n_eigen: usize, group_tol: f64) -> (DMatrix<f64>, Vec<(f64, DMatrix<f64>)>) {
    let kernel = spec.kernel_basis();
    let k = spec.kernel_dim();
    let mut out = Vec::new();
    let mut start = k;
    while start < spec.len() && out.len() < n_eigen {
        let mut end = start + 1;
        while end < spec.len() && spec.eigenvalues[end] - spec.eigenvalues[end - 1] <= group_tol {
            end += 1;
        }
        out.push((spec.eigenvalues[start], spec.select(|i| (start..end).contains(&i))));
        start = end;
    }
    (kernel, out)
}

/// Hodge 1-Laplacian edge positional encoding.
pub fn hodge1lap(sc: &OrientedSimplicialComplex, params: &Hodge1LapParams) -> Result<FeatureMatrix> {
    let m = sc.count(1);
    let spec = l1_spectrum(sc, params.zero_tol)?;
    let mut meta = EncodingMeta::new(
        "hodge1lap",
        json!({
            "mode": params.mode,
            "n_eigen": params.n_eigen,
            "preimage": match params.preimage { Preimage::Unit => "unit", Preimage::EdgeFeatures(_) => "edge_features" },
            "n_random_proj": params.n_random_proj,
            "group_tol": params.group_tol,
        }),
    );
    meta.zero_tol = Some(spec.zero_tol);
    let mut columns: Vec<DVector<f64>> = Vec::new();
    let mut channels = Vec::new();
    match params.mode {
        Hodge1LapMode::Proj => {
            let x = match &params.preimage {
                Preimage::Unit => DMatrix::from_element(m, 1, 1.0 / (m as f64).sqrt()),
                Preimage::EdgeFeatures(f) => {
                    if f.nrows() != m {
                        return Err(Error::Domain(format!("edge features have {} rows for {m} edges", f.nrows())));
                    }
                    f.clone()
                }
            };
            let (kernel, groups) = proj_subspaces(&spec, params.n_eigen, params.group_tol);
            if groups.len() < params.n_eigen {
                meta.warnings.push(format!(
                    "only {} nonzero eigen-subspaces; {} requested, extra channels are zero",
                    groups.len(),
                    params.n_eigen
                ));
            }
            let names: Vec<String> =
                std::iter::once("ker".to_string()).chain((1..=params.n_eigen).map(|i| format!("s{i}"))).collect();
            for (g, name) in names.iter().enumerate() {
                let basis = if g == 0 { Some(&kernel) } else { groups.get(g - 1).map(|(_, b)| b) };
                let proj = match basis {
                    Some(u) => u * (u.transpose() * &x),
                    None => DMatrix::zeros(m, x.ncols()),
                };
                for c in 0..x.ncols() {
                    columns.push(proj.column(c).into_owned());
                    channels.push(if x.ncols() == 1 { name.clone() } else { format!("{name}_f{c}") });
                }
            }
            let eigen: Vec<f64> = groups.iter().map(|(l, _)| *l).collect();
            meta.params["subspace_eigenvalues"] = json!(eigen);
        }
        Hodge1LapMode::Abs | Hodge1LapMode::Sim => {
            let count = params.n_eigen.min(m);
            if count < params.n_eigen {
                meta.warnings
                    .push(format!("{} eigenvectors requested from {m} edges; clipped to {count}", params.n_eigen));
            }
            let vecs: Vec<DVector<f64>> = (0..count).map(|i| spec.eigenvectors.column(i).into_owned()).collect();
            if params.mode == Hodge1LapMode::Abs {
                for (i, v) in vecs.iter().enumerate() {
                    columns.push(v.abs());
                    channels.push(format!("abs{}", i + 1));
                }
                let alpha = gaussian_matrix(count, params.n_random_proj, params.seed);
                for j in 0..params.n_random_proj {
                    let mut col = DVector::zeros(m);
                    for (i, v) in vecs.iter().enumerate() {
                        col += v.abs() * alpha[(i, j)];
                    }
                    columns.push(col);
                    channels.push(format!("rp{}", j + 1));
                }
                meta.seed = Some(params.seed);
            } else {
                for (i, v) in vecs.iter().enumerate() {
                    columns.push(v.clone());
                    channels.push(format!("u{}", i + 1));
                }
                for i in 0..count {
                    columns.push(DVector::from_element(m, spec.eigenvalues[i]));
                    channels.push(format!("lambda{}", i + 1));
                }
            }
        }
    }
    let values = if columns.is_empty() { DMatrix::zeros(m, 0) } else { DMatrix::from_columns(&columns) };
    FeatureMatrix::new(Subject::Simplices(1), channels, values, meta)
}

/// `|U U^T| 1` for the kernel basis `U` of `L_1`: positive exactly on edges
/// lying on an unfilled cycle.
pub fn kernel_abs_marker(sc: &OrientedSimplicialComplex) -> Result<DVector<f64>> {
    let spec = l1_spectrum(sc, None)?;
    let u = spec.kernel_basis();
    let proj = &u * u.transpose();
    Ok(DVector::from_fn(proj.nrows(), |i, _| proj.row(i).iter().map(|x| x.abs()).sum()))
}

/// `|P_i| 1` for each `proj` subspace (kernel first): a sign- and
/// basis-invariant magnitude profile per edge.
pub fn subspace_abs_markers(sc: &OrientedSimplicialComplex, n_eigen: usize, group_tol: f64) -> Result<DMatrix<f64>> {
    let spec = l1_spectrum(sc, None)?;
    let (kernel, groups) = proj_subspaces(&spec, n_eigen, group_tol);
    let m = sc.count(1);
    let mut out = DMatrix::zeros(m, n_eigen + 1);
    let bases = std::iter::once(&kernel).chain(groups.iter().map(|(_, b)| b));
    for (c, u) in bases.enumerate() {
        let proj = u * u.transpose();
        for i in 0..m {
            out[(i, c)] = proj.row(i).iter().map(|x| x.abs()).sum();
        }
    }
    Ok(out)
}

pub(crate) fn gaussian_matrix(rows: usize, cols: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DMatrix::from_fn(rows, cols, |_, _| StandardNormal.sample(&mut rng))
}

/// Per-edge cycle labels derived from the kernel of `L_1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleLabels {
    pub in_cycle: Vec<bool>,
    /// Group id shared by edges whose kernel magnitudes coincide.
    pub group: Vec<Option<usize>>,
    /// Edges whose group magnitude is the sum or difference of two other
    /// groups' magnitudes under every projection.
    pub shared: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleParams {
    pub n_random_proj: usize,
    pub seed: u64,
    pub match_tol: f64,
    pub zero_tol: Option<f64>,
}

impl Default for CycleParams {
    fn default() -> Self {
        Self { n_random_proj: 8, seed: 0, match_tol: 1e-6, zero_tol: None }
    }
}

/// Labels edges by their support in harmonic 1-cochains.
///
/// An edge is on a cycle when its diagonal entry of the kernel projector
/// `K = U U^T` exceeds the zero threshold. Random kernel vectors `K g`
/// with Gaussian `g` give each cycle edge a magnitude profile; edges whose
/// profiles agree within `match_tol` share a group.
pub fn detect_cycles(sc: &OrientedSimplicialComplex, params: &CycleParams) -> Result<CycleLabels> {
    let spec = l1_spectrum(sc, params.zero_tol)?;
    let m = sc.count(1);
    let u = spec.kernel_basis();
    let proj = &u * u.transpose();
    let in_cycle: Vec<bool> = (0..m).map(|i| proj[(i, i)] > spec.zero_tol).collect();
    let g = gaussian_matrix(m, params.n_random_proj, params.seed);
    let mags = (&proj * g).abs();

    let mut reps: Vec<usize> = Vec::new();
    let mut group = vec![None; m];
    for i in (0..m).filter(|&i| in_cycle[i]) {
        let close = |r: usize| (0..mags.ncols()).all(|j| (mags[(i, j)] - mags[(r, j)]).abs() <= params.match_tol);
        match reps.iter().position(|&r| close(r)) {
            Some(id) => group[i] = Some(id),
            None => {
                group[i] = Some(reps.len());
                reps.push(i);
            }
        }
    }

    let mut shared_group = vec![false; reps.len()];
    for (s, &rs) in reps.iter().enumerate() {
        'pairs: for (a, &ra) in reps.iter().enumerate() {
            for (b, &rb) in reps.iter().enumerate().skip(a + 1) {
                if a == s || b == s {
                    continue;
                }
                let fits = (0..mags.ncols()).all(|j| {
                    let (x, y, z) = (mags[(ra, j)], mags[(rb, j)], mags[(rs, j)]);
                    (z - (x + y)).abs() <= params.match_tol || (z - (x - y).abs()).abs() <= params.match_tol
                });
                if fits {
                    shared_group[s] = true;
                    break 'pairs;
                }
            }
        }
    }
    let shared = group.iter().map(|g| g.is_some_and(|id| shared_group[id])).collect();
    Ok(CycleLabels { in_cycle, group, shared })
}
