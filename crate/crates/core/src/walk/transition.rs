use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::fmt::format_float;

/// Row-sum tolerance for stochastic matrices.
pub const STOCHASTIC_TOL: f64 = 1e-12;

/// A row-stochastic matrix with state labels.
///
/// Lifted walks have `2n` states: the `n` simplices in reference
/// orientation, then the same `n` simplices reversed.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    states: Vec<String>,
    matrix: DMatrix<f64>,
    lifted: bool,
}

impl TransitionMatrix {
    /// Checks shape, non-negativity and unit row sums.
    pub fn new(states: Vec<String>, matrix: DMatrix<f64>, lifted: bool) -> Result<Self> {
        let n = states.len();
        if matrix.shape() != (n, n) {
            return Err(Error::Contract(format!("{} labels for a {}x{} matrix", n, matrix.nrows(), matrix.ncols())));
        }
        if lifted && n % 2 == 1 {
            return Err(Error::Contract("lifted walk with an odd number of states".into()));
        }
        for i in 0..n {
            let row = matrix.row(i);
            if row.iter().any(|&x| x.is_nan() || x < 0.0) {
                return Err(Error::Contract(format!("row {i} has a negative or NaN entry")));
            }
            let s = row.sum();
            if (s - 1.0).abs() > STOCHASTIC_TOL {
                return Err(Error::Contract(format!("row {i} sums to {s}")));
            }
        }
        Ok(Self { states, matrix, lifted })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn is_lifted(&self) -> bool {
        self.lifted
    }

    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    /// Number of unoriented simplices: half the states for a lifted walk.
    pub fn n_base(&self) -> usize {
        if self.lifted {
            self.states.len() / 2
        } else {
            self.states.len()
        }
    }

    /// Orientation merge `M[i, j] = P[i+, j+] + P[i+, j-]`.
    ///
    /// Returns the matrix unchanged for walks that are not lifted.
    pub fn merged(&self) -> TransitionMatrix {
        if !self.lifted {
            return self.clone();
        }
        let n = self.n_base();
        let m = DMatrix::from_fn(n, n, |i, j| self.matrix[(i, j)] + self.matrix[(i, n + j)]);
        TransitionMatrix { states: self.states[..n].to_vec(), matrix: m, lifted: false }
    }

    /// Distribution after `t` steps from each start, via vector propagation.
    pub fn propagate(&self, start: usize, t: usize) -> Vec<DVector<f64>> {
        let mut dist = DVector::zeros(self.n_states());
        dist[start] = 1.0;
        let pt = self.matrix.transpose();
        let mut out = Vec::with_capacity(t + 1);
        out.push(dist.clone());
        for _ in 0..t {
            dist = &pt * dist;
            out.push(dist.clone());
        }
        out
    }

    /// Dense CSV with a label header row and a label column.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("state");
        for s in &self.states {
            out.push(',');
            out.push_str(s);
        }
        out.push('\n');
        for (i, s) in self.states.iter().enumerate() {
            out.push_str(s);
            for j in 0..self.n_states() {
                out.push(',');
                out.push_str(&format_float(self.matrix[(i, j)]));
            }
            out.push('\n');
        }
        out
    }
}

/// Label of a simplex: its vertices joined by `-`.
pub fn simplex_label(vertices: &[usize]) -> String {
    vertices.iter().map(usize::to_string).collect::<Vec<_>>().join("-")
}

/// Labels `+s` for each simplex, then `-s`.
pub(crate) fn lifted_labels(faces: &[Vec<usize>]) -> Vec<String> {
    let base: Vec<String> = faces.iter().map(|f| simplex_label(f)).collect();
    base.iter().map(|l| format!("+{l}")).chain(base.iter().map(|l| format!("-{l}"))).collect()
}

/// `[diag(P^1), ..., diag(P^T)]`.
///
/// For lifted walks, entry `i` of each vector is the merged return
/// probability `P^t[i+, i+] + P^t[i+, i-]` over the unoriented simplex `i`.
pub fn power_diag(p: &TransitionMatrix, t_max: usize) -> Result<Vec<DVector<f64>>> {
    Ok(powers(p, t_max)?.iter().map(|pt| merged_diag(p, pt)).collect())
}

/// `[P^1, ..., P^T]` as dense matrices.
pub fn powers(p: &TransitionMatrix, t_max: usize) -> Result<Vec<DMatrix<f64>>> {
    if t_max == 0 {
        return Err(Error::Domain("number of steps T must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(t_max);
    let mut cur = p.matrix.clone();
    for _ in 1..t_max {
        let next = &cur * &p.matrix;
        out.push(cur);
        cur = next;
    }
    out.push(cur);
    Ok(out)
}

pub(crate) fn merged_diag(p: &TransitionMatrix, pt: &DMatrix<f64>) -> DVector<f64> {
    let n = p.n_base();
    if p.lifted {
        DVector::from_fn(n, |i, _| pt[(i, i)] + pt[(i, n + i)])
    } else {
        pt.diagonal()
    }
}

/// Return probabilities at steps `1..=t_max` from `start`, merged over
/// orientation for lifted walks, by vector propagation.
pub fn return_probabilities(p: &TransitionMatrix, start: usize, t_max: usize) -> Result<Vec<f64>> {
    if start >= p.n_base() {
        return Err(Error::Domain(format!("start state {start} out of range")));
    }
    let n = p.n_base();
    let pt = p.matrix.transpose();
    let mut dist = DVector::zeros(p.n_states());
    dist[start] = 1.0;
    let mut out = Vec::with_capacity(t_max);
    for _ in 0..t_max {
        dist = &pt * dist;
        out.push(if p.lifted { dist[start] + dist[n + start] } else { dist[start] });
    }
    Ok(out)
}

/// Cesaro average of [`return_probabilities`] over steps `1..=t_max`.
pub fn cesaro_return(p: &TransitionMatrix, start: usize, t_max: usize) -> Result<f64> {
    let r = return_probabilities(p, start, t_max)?;
    Ok(r.iter().sum::<f64>() / t_max as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let ok = DMatrix::from_row_slice(2, 2, &[0.5, 0.5, 0.0, 1.0]);
        assert!(TransitionMatrix::new(labels.clone(), ok, false).is_ok());
        let bad = DMatrix::from_row_slice(2, 2, &[0.5, 0.6, 0.0, 1.0]);
        assert!(TransitionMatrix::new(labels.clone(), bad, false).is_err());
        let neg = DMatrix::from_row_slice(2, 2, &[1.5, -0.5, 0.0, 1.0]);
        assert!(TransitionMatrix::new(labels, neg, false).is_err());
    }

    #[test]
    fn swap_chain_returns_every_other_step() {
        let p = TransitionMatrix::new(
            vec!["a".into(), "b".into()],
            DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]),
            false,
        )
        .unwrap();
        let d = power_diag(&p, 3).unwrap();
        assert_eq!(d[0].as_slice(), &[0.0, 0.0]);
        assert_eq!(d[1].as_slice(), &[1.0, 1.0]);
        assert_eq!(return_probabilities(&p, 0, 4).unwrap(), vec![0.0, 1.0, 0.0, 1.0]);
        assert_eq!(cesaro_return(&p, 0, 4).unwrap(), 0.5);
    }
}
