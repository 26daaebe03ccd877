use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{clique_complex, Graph};
use crate::error::{Error, Result};
use crate::hodge::char_poly_exact;
use crate::isotest::spectral::laplacian_char_poly;
use crate::isotest::wl::{compare_wl1, WlInit};

/// Largest node count the exhaustive search accepts.
pub const SEARCH_NODE_CAP: usize = 8;
/// Largest number of labelled candidate graphs the search will enumerate.
pub const SEARCH_CANDIDATE_CAP: u64 = 20_000_000;

/// Two non-isomorphic graphs whose clique complexes have equal `L_k`
/// characteristic polynomials for every `k`.
#[derive(Debug, Clone, Serialize)]
pub struct IsospectralPair {
    pub a: Graph,
    pub b: Graph,
    /// Ascending coefficients per order `k`, shared by both graphs.
    pub polys: Vec<Vec<String>>,
    pub wl1_separated: bool,
}

/// Non-isomorphic graphs with the given `L_0` characteristic polynomial
/// (ascending coefficients), by exhaustive enumeration.
///
/// The polynomial fixes the node count (its degree), the edge count and the
/// degree sum of squares, which prune candidates before the exact check.
pub fn graphs_with_l0_poly(target: &[BigInt]) -> Result<Vec<Graph>> {
    let n = target.len().saturating_sub(1);
    if n == 0 || n > SEARCH_NODE_CAP {
        return Err(Error::Config(format!("search needs 1..={SEARCH_NODE_CAP} nodes, polynomial has degree {n}")));
    }
    let coeff = |i: usize| target[i].to_i64().ok_or_else(|| Error::Config("coefficient out of range".into()));
    if coeff(n)? != 1 {
        return Err(Error::Config("polynomial must be monic".into()));
    }
    let trace = -coeff(n - 1)?;
    if trace < 0 || trace % 2 != 0 {
        return Err(Error::Config(format!("trace {trace} is not twice an edge count")));
    }
    let m = (trace / 2) as usize;
    // e_2 of the eigenvalues = (trace^2 - sum d^2)/2 - m.
    let sum_sq = if n >= 2 { trace * trace - 2 * (coeff(n - 2)? + m as i64) } else { 0 };
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    if m > pairs.len() {
        return Ok(Vec::new());
    }
    let total = binomial(pairs.len() as u64, m as u64);
    if total > SEARCH_CANDIDATE_CAP {
        return Err(Error::Resource(format!("{total} candidates exceed the cap of {SEARCH_CANDIDATE_CAP}")));
    }

    let mut candidates = Vec::new();
    let mut chosen = Vec::with_capacity(m);
    let mut degree = vec![0i64; n];
    subsets(&pairs, m, 0, &mut chosen, &mut degree, sum_sq, &mut candidates);

    let mut found: Vec<(Vec<(usize, usize)>, Graph)> = candidates
        .into_par_iter()
        .filter_map(|edges| {
            let g = Graph::new(n, edges).ok()?;
            let poly = char_poly_exact(&laplacian_i64(&g)).ok()?;
            (poly == target).then(|| (canonical_form(&g), g))
        })
        .collect();
    found.sort_by(|x, y| x.0.cmp(&y.0));
    found.dedup_by(|x, y| x.0 == y.0);
    Ok(found.into_iter().map(|(_, g)| g).collect())
}

/// Pairs among `graphs` whose clique complexes are `L_k`-isospectral for
/// every `k`.
pub fn all_order_isospectral_pairs(graphs: &[Graph]) -> Result<Vec<IsospectralPair>> {
    let polys = graphs
        .iter()
        .map(|g| {
            let sc = clique_complex(g, g.n().saturating_sub(1))?;
            (0..=sc.dim()).map(|k| Ok(laplacian_char_poly(&sc, k)?.0)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            let len = polys[i].len().max(polys[j].len());
            let at = |p: &[Vec<BigInt>], k: usize| p.get(k).cloned().unwrap_or_else(|| vec![BigInt::from(1)]);
            if (0..len).all(|k| at(&polys[i], k) == at(&polys[j], k)) {
                let wl = compare_wl1(&graphs[i], &graphs[j], &WlInit::Uniform, &WlInit::Uniform, 64)?;
                out.push(IsospectralPair {
                    a: graphs[i].clone(),
                    b: graphs[j].clone(),
                    polys: (0..len).map(|k| at(&polys[i], k).iter().map(ToString::to_string).collect()).collect(),
                    wl1_separated: wl.separated,
                });
            }
        }
    }
    Ok(out)
}

fn subsets(
    pairs: &[(usize, usize)],
    left: usize,
    from: usize,
    chosen: &mut Vec<(usize, usize)>,
    degree: &mut [i64],
    sum_sq: i64,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if left == 0 {
        if degree.iter().map(|d| d * d).sum::<i64>() == sum_sq {
            out.push(chosen.clone());
        }
        return;
    }
    for i in from..=pairs.len() - left {
        let (u, v) = pairs[i];
        chosen.push((u, v));
        degree[u] += 1;
        degree[v] += 1;
        subsets(pairs, left - 1, i + 1, chosen, degree, sum_sq, out);
        degree[u] -= 1;
        degree[v] -= 1;
        chosen.pop();
    }
}

fn laplacian_i64(g: &Graph) -> nalgebra::DMatrix<i64> {
    let mut l = nalgebra::DMatrix::zeros(g.n(), g.n());
    for &(u, v) in g.edges() {
        l[(u, v)] = -1;
        l[(v, u)] = -1;
        l[(u, u)] += 1;
        l[(v, v)] += 1;
    }
    l
}

/// Lexicographically smallest sorted edge list over all relabellings.
fn canonical_form(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut e: Vec<(usize, usize)> =
            g.edges().iter().map(|&(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v]))).collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}
