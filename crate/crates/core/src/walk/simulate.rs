use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::transition::TransitionMatrix;
use crate::error::{Error, Result};
use crate::fmt::format_float;

/// Name of the generator recorded in simulation output.
pub const RNG_NAME: &str = "ChaCha8 (rand_chacha), stream = chunk index";

/// Trials per independently seeded chunk.
pub const CHUNK_TRIALS: usize = 4096;

/// Empirical state distributions at steps `0..=steps`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Simulation {
    pub rng: String,
    pub seed: u64,
    pub start: usize,
    pub trials: usize,
    /// `frequencies[t][s]`: fraction of trials in state `s` after `t` steps.
    pub frequencies: Vec<Vec<f64>>,
}

impl Simulation {
    /// CSV rows `step,state,frequency` for nonzero frequencies.
    pub fn to_csv(&self, labels: &[String]) -> String {
        let mut out = String::from("step,state,frequency\n");
        for (t, row) in self.frequencies.iter().enumerate() {
            for (s, &f) in row.iter().enumerate() {
                if f > 0.0 {
                    out.push_str(&format!("{t},{},{}\n", labels[s], format_float(f)));
                }
            }
        }
        out
    }
}

/// Runs `trials` independent walks of `steps` steps from `start`.
///
/// Trials are split into chunks of [`CHUNK_TRIALS`]; chunk `c` draws from a
/// ChaCha8 generator seeded with `seed` on stream `c`. Counts are summed
/// exactly, so the output does not depend on the number of threads.
pub fn simulate(p: &TransitionMatrix, start: usize, steps: usize, trials: usize, seed: u64) -> Result<Simulation> {
    let n = p.n_states();
    if start >= n {
        return Err(Error::Domain(format!("start state {start} outside 0..{n}")));
    }
    if trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    let table = cumulative_rows(p);
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let size = CHUNK_TRIALS.min(trials - c * CHUNK_TRIALS);
            let mut counts = vec![vec![0u64; n]; steps + 1];
            for _ in 0..size {
                let mut s = start;
                counts[0][s] += 1;
                for row in counts.iter_mut().skip(1) {
                    s = table[s].sample(rng.random::<f64>());
                    row[s] += 1;
                }
            }
            counts
        })
        .reduce(
            || vec![vec![0u64; n]; steps + 1],
            |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                a
            },
        );
    let frequencies =
        counts.into_iter().map(|row| row.into_iter().map(|c| c as f64 / trials as f64).collect()).collect();
    Ok(Simulation { rng: RNG_NAME.into(), seed, start, trials, frequencies })
}

struct CumulativeRow {
    targets: Vec<usize>,
    cumulative: Vec<f64>,
}

impl CumulativeRow {
    fn sample(&self, u: f64) -> usize {
        let idx = self.cumulative.partition_point(|&c| c <= u);
        self.targets[idx.min(self.targets.len() - 1)]
    }
}

fn cumulative_rows(p: &TransitionMatrix) -> Vec<CumulativeRow> {
    let m = p.matrix();
    (0..p.n_states())
        .map(|i| {
            let mut targets = Vec::new();
            let mut cumulative = Vec::new();
            let mut acc = 0.0;
            for j in 0..m.ncols() {
                let x = m[(i, j)];
                if x > 0.0 {
                    acc += x;
                    targets.push(j);
                    cumulative.push(acc);
                }
            }
            CumulativeRow { targets, cumulative }
        })
        .collect()
}
