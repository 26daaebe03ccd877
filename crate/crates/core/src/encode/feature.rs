use std::collections::HashSet;

use nalgebra::DMatrix;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fmt::matrix_csv;

/// What the rows of a [`FeatureMatrix`] index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    /// k-simplices in canonical order.
    Simplices(usize),
    /// Node `i` per row, one channel per node `j` (an n x n matrix).
    PairMatrix,
    /// Ordered node pairs `(i, j)` flattened as row `i * n + j`.
    OrderedPairs,
    /// Simplices of every order `0..=K`; order `k` spans
    /// `offsets[k]..offsets[k+1]`.
    MultiOrder { offsets: Vec<usize> },
}

/// Provenance written next to a feature CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EncodingMeta {
    pub encoding: String,
    pub params: Value,
    pub seed: Option<u64>,
    pub zero_tol: Option<f64>,
    pub warnings: Vec<String>,
}

impl EncodingMeta {
    pub fn new(encoding: &str, params: Value) -> Self {
        Self { encoding: encoding.into(), params, seed: None, zero_tol: None, warnings: Vec::new() }
    }
}

/// Rows indexed by simplex id, columns by named channel.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub subject: Subject,
    pub channels: Vec<String>,
    pub values: DMatrix<f64>,
    pub meta: EncodingMeta,
}

impl FeatureMatrix {
    /// Checks channel count and uniqueness and that every entry is finite.
    pub fn new(subject: Subject, channels: Vec<String>, values: DMatrix<f64>, meta: EncodingMeta) -> Result<Self> {
        if channels.len() != values.ncols() {
            return Err(Error::Contract(format!("{} channel names for {} columns", channels.len(), values.ncols())));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = channels.iter().find(|c| !seen.insert(c.as_str())) {
            return Err(Error::Contract(format!("duplicate channel name {dup:?}")));
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::Contract(format!("non-finite entry in {}", meta.encoding)));
        }
        Ok(Self { subject, channels, values, meta })
    }

    pub fn nrows(&self) -> usize {
        self.values.nrows()
    }

    /// Row `i` as a vector.
    pub fn row(&self, i: usize) -> Vec<f64> {
        self.values.row(i).iter().copied().collect()
    }

    /// Rows with their order permuted: row `i` of the result is row
    /// `perm[i]` of `self`.
    pub fn select_rows(&self, perm: &[usize]) -> FeatureMatrix {
        let values = DMatrix::from_fn(perm.len(), self.values.ncols(), |i, j| self.values[(perm[i], j)]);
        FeatureMatrix { values, ..self.clone() }
    }

    /// CSV with header `simplex_id,<channels>`.
    pub fn to_csv(&self) -> String {
        let mut header = vec!["simplex_id".to_string()];
        header.extend(self.channels.iter().cloned());
        matrix_csv(&header, &self.values, |i| i.to_string())
    }

    /// JSON sidecar describing the CSV.
    pub fn sidecar_json(&self) -> String {
        #[derive(Serialize)]
        struct Sidecar<'a> {
            subject: &'a Subject,
            rows: usize,
            channels: &'a [String],
            #[serde(flatten)]
            meta: &'a EncodingMeta,
        }
        let s = Sidecar { subject: &self.subject, rows: self.nrows(), channels: &self.channels, meta: &self.meta };
        serde_json::to_string_pretty(&s).expect("serialisable")
    }
}

/// `p1..pT` channel names.
pub(crate) fn step_channels(prefix: &str, t: usize) -> Vec<String> {
    (1..=t).map(|i| format!("{prefix}{i}")).collect()
}

/// Rows rounded to 12 decimals and sorted lexicographically, for
/// order-free comparison of feature multisets.
pub fn sorted_rows(values: &DMatrix<f64>, cols: std::ops::Range<usize>) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = (0..values.nrows())
        .map(|i| {
            cols.clone()
                .map(|j| {
                    let x = (values[(i, j)] * 1e12).round() / 1e12;
                    if x == 0.0 {
                        0.0
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    rows.sort_by(|a, b| {
        a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    rows
}

/// Whether two feature matrices have the same row multiset within `tol`.
pub fn same_row_multiset(a: &DMatrix<f64>, b: &DMatrix<f64>, tol: f64) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    let cols = 0..a.ncols();
    let ra = sorted_rows(a, cols.clone());
    let rb = sorted_rows(b, cols);
    ra.iter().zip(&rb).all(|(x, y)| x.iter().zip(y).all(|(p, q)| (p - q).abs() <= tol))
}

/// Shortest-path distances; `None` marks unreachable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    pub values: Vec<Vec<Option<usize>>>,
}

impl DistanceMatrix {
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.values[u][v]
    }

    /// CSV with `inf` for unreachable pairs.
    pub fn to_csv(&self) -> String {
        let n = self.values.len();
        let mut out = String::from("simplex_id");
        for j in 0..n {
            out.push_str(&format!(",d{j}"));
        }
        out.push('\n');
        for (i, row) in self.values.iter().enumerate() {
            out.push_str(&i.to_string());
            for d in row {
                out.push(',');
                match d {
                    Some(d) => out.push_str(&d.to_string()),
                    None => out.push_str("inf"),
                }
            }
            out.push('\n');
        }
        out
    }

    /// Finite distances as floats with `f64::INFINITY` for unreachable pairs.
    pub fn to_f64(&self) -> DMatrix<f64> {
        let n = self.values.len();
        DMatrix::from_fn(n, n, |i, j| self.values[i][j].map_or(f64::INFINITY, |d| d as f64))
    }
}
