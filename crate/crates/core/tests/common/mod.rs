//! Generators and independent reference computations shared by the
//! integration tests and the acceptance runner.
#![allow(dead_code)]

use hodgewalk::complex::{clique_complex, Graph, OrientedSimplicialComplex};
use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p).
pub fn er_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// A random spanning tree plus G(n, p) extra edges.
pub fn connected_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng(seed ^ 0x5eed);
    let mut edges = std::collections::BTreeSet::new();
    for v in 1..n {
        let u = r.random_range(0..v);
        edges.insert((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if r.random::<f64>() < p {
                edges.insert((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Clique complex of a random graph on at most `n_max` nodes, up to
/// dimension `k_max`.
pub fn random_complex(n_max: usize, k_max: usize, seed: u64) -> OrientedSimplicialComplex {
    let mut r = rng(seed.wrapping_mul(31) + 7);
    let n = r.random_range(3..=n_max);
    let p = [0.2, 0.35, 0.5, 0.65][r.random_range(0..4)];
    clique_complex(&er_graph(n, p, seed), k_max).unwrap()
}

pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rng(seed));
    p
}

/// Gallery-independent copies of the two strongly regular graphs.
pub fn rook_oracle() -> Graph {
    // Line graph of K_{4,4}: edge (a, b) of K_{4,4} becomes node 4a + b.
    let mut edges = Vec::new();
    for x in 0..16 {
        for y in x + 1..16 {
            let (a1, b1, a2, b2) = (x / 4, x % 4, y / 4, y % 4);
            if a1 == a2 || b1 == b2 {
                edges.push((x, y));
            }
        }
    }
    Graph::new(16, edges).unwrap()
}

/// Characteristic polynomial `det(lambda I - A)` by Faddeev-LeVerrier,
/// ascending coefficients. Every division is exact for integer input.
pub fn faddeev_leverrier(a: &DMatrix<i64>) -> Vec<BigInt> {
    let n = a.nrows();
    let a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from(a[(i, j)])).collect()).collect();
    let mut coeffs = vec![BigInt::from(0); n + 1];
    coeffs[n] = BigInt::from(1);
    let mut m = vec![vec![BigInt::from(0); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigInt::from(0); n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l] == BigInt::from(0) {
                    continue;
                }
                for j in 0..n {
                    next[i][j] += &a[i][l] * &m[l][j];
                }
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        m = next;
        let mut tr = BigInt::from(0);
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        let c = -tr / BigInt::from(k as i64);
        coeffs[n - k] = c;
    }
    coeffs
}

/// Integer determinant by fraction-free Bareiss elimination.
pub fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k] == BigInt::from(0) {
            match (k + 1..n).find(|&r| a[r][k] != BigInt::from(0)) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::from(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}

/// `det(x I - A)` at an integer point.
pub fn char_value(a: &DMatrix<i64>, x: i64) -> BigInt {
    let n = a.nrows();
    let rows: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| BigInt::from(if i == j { x } else { 0 } - a[(i, j)])).collect()).collect();
    bareiss_det(&rows)
}

pub fn eval_poly(coeffs: &[BigInt], x: i64) -> BigInt {
    coeffs.iter().rev().fold(BigInt::from(0), |acc, c| acc * x + c)
}

/// Expands `prod (lambda - r)^mult` and `prod (lambda^2 + b lambda + c)^mult`
/// directly, ascending coefficients.
pub fn expand(linear: &[(i64, usize)], quadratic: &[(i64, i64, usize)]) -> Vec<BigInt> {
    let mut p = vec![BigInt::from(1)];
    let mul = |p: &[BigInt], f: &[i64]| -> Vec<BigInt> {
        let mut out = vec![BigInt::from(0); p.len() + f.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, &b) in f.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    for &(r, k) in linear {
        for _ in 0..k {
            p = mul(&p, &[-r, 1]);
        }
    }
    for &(b, c, k) in quadratic {
        for _ in 0..k {
            p = mul(&p, &[c, b, 1]);
        }
    }
    p
}

/// Expected hitting times to `target` of the simple random walk, from the
/// linear system `h = 1 + P h` off the target.
pub fn hitting_times(g: &Graph, target: usize) -> Vec<f64> {
    let n = g.n();
    let adj = g.adjacency();
    let others: Vec<usize> = (0..n).filter(|&v| v != target).collect();
    let pos = |v: usize| others.iter().position(|&w| w == v);
    let mut a = DMatrix::zeros(n - 1, n - 1);
    let b = DVector::from_element(n - 1, 1.0);
    for (i, &v) in others.iter().enumerate() {
        a[(i, i)] += 1.0;
        for &w in &adj[v] {
            if let Some(j) = pos(w) {
                a[(i, j)] -= 1.0 / adj[v].len() as f64;
            }
        }
    }
    let h = a.lu().solve(&b).unwrap();
    let mut out = vec![0.0; n];
    for (i, &v) in others.iter().enumerate() {
        out[v] = h[i];
    }
    out
}

/// All simple cycles as edge-id sets, by depth-first search from each
/// cycle's smallest vertex. Exponential; small graphs only.
pub fn simple_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let adj = g.adjacency();
    let mut found = std::collections::BTreeSet::new();
    fn dfs(
        g: &Graph,
        adj: &[Vec<usize>],
        start: usize,
        v: usize,
        path: &mut Vec<usize>,
        found: &mut std::collections::BTreeSet<Vec<usize>>,
    ) {
        for &w in &adj[v] {
            if w == start && path.len() >= 3 {
                let mut edges: Vec<usize> = path
                    .windows(2)
                    .map(|p| g.edge_index(p[0], p[1]).unwrap())
                    .chain([g.edge_index(v, start).unwrap()])
                    .collect();
                edges.sort_unstable();
                found.insert(edges);
            } else if w > start && !path.contains(&w) {
                path.push(w);
                dfs(g, adj, start, w, path, found);
                path.pop();
            }
        }
    }
    for s in 0..g.n() {
        dfs(g, &adj, s, s, &mut vec![s], &mut found);
    }
    found.into_iter().collect()
}

/// Rank over GF(2) of edge-id sets.
pub fn gf2_rank(sets: &[Vec<usize>], m: usize) -> usize {
    let mut rows: Vec<Vec<bool>> = sets
        .iter()
        .map(|s| {
            let mut r = vec![false; m];
            for &e in s {
                r[e] ^= true;
            }
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..m {
        if let Some(p) = (rank..rows.len()).find(|&i| rows[i][col]) {
            rows.swap(rank, p);
            for i in 0..rows.len() {
                if i != rank && rows[i][col] {
                    let pivot = rows[rank].clone();
                    for (x, y) in rows[i].iter_mut().zip(pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Total length of a minimum cycle basis by greedy selection over all
/// simple cycles (matroid greedy is optimal).
pub fn brute_force_mcb_length(g: &Graph) -> usize {
    let mut cycles = simple_cycles(g);
    cycles.sort_by_key(Vec::len);
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    let mut total = 0;
    for c in cycles {
        chosen.push(c.clone());
        if gf2_rank(&chosen, g.m()) == chosen.len() {
            total += c.len();
        } else {
            chosen.pop();
        }
    }
    total
}

/// Random orthogonal `k x k` matrix from the QR factor of a Gaussian matrix.
pub fn random_orthogonal(k: usize, seed: u64) -> DMatrix<f64> {
    let mut r = rng(seed);
    let g = DMatrix::from_fn(k, k, |_, _| {
        let (u1, u2): (f64, f64) = (r.random::<f64>().max(1e-300), r.random());
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    });
    g.qr().q()
}

pub fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    (a - b).amax()
}

/// Max deviation of Monte Carlo frequencies from exact probabilities, in
/// units of the binomial standard error; zero-probability states must
/// never be visited.
pub fn max_standard_errors(freq: &[f64], exact: &[f64], trials: usize) -> f64 {
    let mut worst = 0.0f64;
    for (&f, &p) in freq.iter().zip(exact) {
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        let dev = (f - p).abs();
        if se < 1e-15 {
            if dev > 1e-12 {
                return f64::INFINITY;
            }
        } else {
            worst = worst.max(dev / se);
        }
    }
    worst
}
