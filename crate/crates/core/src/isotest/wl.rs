use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::Graph;
use crate::error::{Error, Result};

/// Default node cap for [`fwl2`].
pub const FWL2_NODE_CAP: usize = 64;

/// Color multiplicities after one refinement round.
///
/// Tokens are hex strings of a SHA-256 prefix over a canonical byte
/// encoding, so histograms from different graphs and processes compare
/// directly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorHistogram {
    pub iteration: usize,
    pub counts: BTreeMap<String, usize>,
}

impl ColorHistogram {
    fn from_colors(iteration: usize, colors: &[u64]) -> Self {
        let mut counts = BTreeMap::new();
        for c in colors {
            *counts.entry(format!("{c:016x}")).or_insert(0) += 1;
        }
        Self { iteration, counts }
    }

    pub fn n_classes(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

/// Initial node colors for [`wl1`].
#[derive(Debug, Clone, PartialEq)]
pub enum WlInit {
    Uniform,
    /// One row per node, rounded to 12 decimals before hashing.
    Features(DMatrix<f64>),
}

fn token(tag: &[u8], words: impl IntoIterator<Item = u64>) -> u64 {
    let mut h = Sha256::new();
    h.update((tag.len() as u64).to_le_bytes());
    h.update(tag);
    for w in words {
        h.update(w.to_le_bytes());
    }
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

fn round12(x: f64) -> u64 {
    let r = (x * 1e12).round();
    // `+ 0.0` folds negative zero into positive zero.
    (r + 0.0).to_bits()
}

/// A refinement procedure advanced one round at a time.
trait Refiner {
    fn colors(&self) -> &[u64];
    fn step(&mut self);
}

struct Wl1 {
    adj: Vec<Vec<usize>>,
    colors: Vec<u64>,
}

impl Wl1 {
    fn new(g: &Graph, init: &WlInit) -> Result<Self> {
        let colors = match init {
            WlInit::Uniform => vec![token(b"wl1-init", []); g.n()],
            WlInit::Features(f) => {
                if f.nrows() != g.n() {
                    return Err(Error::Contract(format!("{} feature rows for {} nodes", f.nrows(), g.n())));
                }
                (0..g.n()).map(|i| token(b"wl1-feat", f.row(i).iter().map(|&x| round12(x)))).collect()
            }
        };
        Ok(Self { adj: g.adjacency(), colors })
    }
}

impl Refiner for Wl1 {
    fn colors(&self) -> &[u64] {
        &self.colors
    }

    fn step(&mut self) {
        self.colors = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, nbrs)| {
                let mut ms: Vec<u64> = nbrs.iter().map(|&w| self.colors[w]).collect();
                ms.sort_unstable();
                token(b"wl1", std::iter::once(self.colors[v]).chain(ms))
            })
            .collect();
    }
}

struct Fwl2 {
    n: usize,
    colors: Vec<u64>,
}

impl Fwl2 {
    fn new(g: &Graph, cap: usize) -> Result<Self> {
        let n = g.n();
        if n > cap {
            return Err(Error::Resource(format!("2-FWL on {n} nodes exceeds the cap of {cap}")));
        }
        let [eq, adj, non] = [b"fwl2-eq" as &[u8], b"fwl2-adj", b"fwl2-non"].map(|t| token(t, []));
        let colors = (0..n * n)
            .map(|p| {
                let (u, v) = (p / n, p % n);
                if u == v {
                    eq
                } else if g.has_edge(u, v) {
                    adj
                } else {
                    non
                }
            })
            .collect();
        Ok(Self { n, colors })
    }
}

impl Refiner for Fwl2 {
    fn colors(&self) -> &[u64] {
        &self.colors
    }

    fn step(&mut self) {
        let n = self.n;
        let c = &self.colors;
        self.colors = (0..n * n)
            .into_par_iter()
            .map(|p| {
                let (u, v) = (p / n, p % n);
                let mut ms: Vec<(u64, u64)> = (0..n).map(|w| (c[w * n + v], c[u * n + w])).collect();
                ms.sort_unstable();
                token(b"fwl2", std::iter::once(c[p]).chain(ms.into_iter().flat_map(|(a, b)| [a, b])))
            })
            .collect();
    }
}

fn n_classes(colors: &[u64]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Runs until the number of color classes stops growing or `max_iter`
/// rounds have run. Iteration 0 is the initial coloring.
fn run(mut r: impl Refiner, max_iter: usize) -> Vec<ColorHistogram> {
    let mut out = vec![ColorHistogram::from_colors(0, r.colors())];
    let mut classes = n_classes(r.colors());
    for it in 1..=max_iter {
        r.step();
        out.push(ColorHistogram::from_colors(it, r.colors()));
        let now = n_classes(r.colors());
        if now == classes {
            break;
        }
        classes = now;
    }
    out
}

/// 1-WL color refinement.
pub fn wl1(g: &Graph, max_iter: usize, init: &WlInit) -> Result<Vec<ColorHistogram>> {
    Ok(run(Wl1::new(g, init)?, max_iter))
}

/// 2-FWL refinement on ordered node pairs.
pub fn fwl2(g: &Graph, max_iter: usize, cap: usize) -> Result<Vec<ColorHistogram>> {
    Ok(run(Fwl2::new(g, cap)?, max_iter))
}

/// Outcome of refining two graphs side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementComparison {
    pub separated: bool,
    /// First iteration whose histograms differ.
    pub first_difference: Option<usize>,
    /// Rounds run (excluding the initial coloring).
    pub iterations: usize,
}

/// Refines both graphs in lockstep until both partitions are stable, a
/// histogram difference appears, or `max_iter` rounds have run.
fn compare(mut a: impl Refiner, mut b: impl Refiner, max_iter: usize) -> RefinementComparison {
    let hist = |r: &dyn Refiner, it| ColorHistogram::from_colors(it, r.colors());
    let differ = |a: &dyn Refiner, b: &dyn Refiner, it| hist(a, it) != hist(b, it);
    if differ(&a, &b, 0) {
        return RefinementComparison { separated: true, first_difference: Some(0), iterations: 0 };
    }
    let (mut ca, mut cb) = (n_classes(a.colors()), n_classes(b.colors()));
    for it in 1..=max_iter {
        a.step();
        b.step();
        if differ(&a, &b, it) {
            return RefinementComparison { separated: true, first_difference: Some(it), iterations: it };
        }
        let (na, nb) = (n_classes(a.colors()), n_classes(b.colors()));
        if na == ca && nb == cb {
            return RefinementComparison { separated: false, first_difference: None, iterations: it };
        }
        (ca, cb) = (na, nb);
    }
    RefinementComparison { separated: false, first_difference: None, iterations: max_iter }
}

pub fn compare_wl1(
    a: &Graph,
    b: &Graph,
    init_a: &WlInit,
    init_b: &WlInit,
    max_iter: usize,
) -> Result<RefinementComparison> {
    Ok(compare(Wl1::new(a, init_a)?, Wl1::new(b, init_b)?, max_iter))
}

pub fn compare_fwl2(a: &Graph, b: &Graph, max_iter: usize, cap: usize) -> Result<RefinementComparison> {
    Ok(compare(Fwl2::new(a, cap)?, Fwl2::new(b, cap)?, max_iter))
}
