//! Brute-force reference computations shared by the integration tests. None
//! of these call into the crate's own linear algebra.
#![allow(dead_code)]

pub mod corpus;

use std::path::PathBuf;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C = Complex64;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn digits(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut d = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        d[k] = idx % dims[k];
        idx /= dims[k];
    }
    d
}

fn index(d: &[usize], dims: &[usize]) -> usize {
    d.iter().zip(dims).fold(0, |acc, (&x, &n)| acc * n + x)
}

/// Projector `|ψ⟩⟨ψ|` as a row-major flat matrix.
pub fn projector(psi: &[C]) -> Vec<C> {
    let n = psi.len();
    let mut m = vec![c(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] = psi[i] * psi[j].conj();
        }
    }
    m
}

/// `ρ_keep[i, j] = Σ_t ρ[(i,t), (j,t)]` by walking every matrix entry and
/// keeping those whose traced digits agree.
pub fn partial_trace(rho: &[C], dims: &[usize], keep: &[usize]) -> Vec<C> {
    let n: usize = dims.iter().product();
    let kdims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let m: usize = kdims.iter().product();
    let mut out = vec![c(0.0, 0.0); m * m];
    for row in 0..n {
        let dr = digits(row, dims);
        for col in 0..n {
            let dc = digits(col, dims);
            let traced_equal = (0..dims.len()).filter(|k| !keep.contains(k)).all(|k| dr[k] == dc[k]);
            if !traced_equal {
                continue;
            }
            let r: Vec<usize> = keep.iter().map(|&k| dr[k]).collect();
            let s: Vec<usize> = keep.iter().map(|&k| dc[k]).collect();
            out[index(&r, &kdims) * m + index(&s, &kdims)] += rho[row * n + col];
        }
    }
    out
}

pub fn to_dmatrix(m: &[C]) -> DMatrix<C> {
    let n = (m.len() as f64).sqrt().round() as usize;
    DMatrix::from_row_slice(n, n, m)
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn eigenvalues(m: &[C]) -> Vec<f64> {
    let mut v: Vec<f64> = to_dmatrix(m).symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn shannon(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 1e-15).map(|&x| -x * x.log2()).sum()
}

pub fn h2(p: f64) -> f64 {
    shannon(&[p, 1.0 - p])
}

pub fn entropy_of_matrix(m: &[C]) -> f64 {
    shannon(&eigenvalues(m))
}

/// Entropy (bits) of the reduction of `|ψ⟩` onto `keep`; 0 for an empty set.
pub fn entropy(psi: &[C], dims: &[usize], keep: &[usize]) -> f64 {
    if keep.is_empty() {
        return 0.0;
    }
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    entropy_of_matrix(&partial_trace(&projector(psi), dims, &keep))
}

pub fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn mutual_info(psi: &[C], dims: &[usize], a: &[usize], b: &[usize]) -> f64 {
    entropy(psi, dims, a) + entropy(psi, dims, b) - entropy(psi, dims, &union(a, b))
}

pub fn cmi(psi: &[C], dims: &[usize], a: &[usize], b: &[usize], cc: &[usize]) -> f64 {
    entropy(psi, dims, &union(a, cc)) + entropy(psi, dims, &union(b, cc))
        - entropy(psi, dims, cc)
        - entropy(psi, dims, &union(&union(a, b), cc))
}

/// Singular values of the coefficient matrix across the cut `left | rest`,
/// descending.
pub fn schmidt_coefficients(psi: &[C], dims: &[usize], left: &[usize]) -> Vec<f64> {
    let right: Vec<usize> = (0..dims.len()).filter(|k| !left.contains(k)).collect();
    let ld: Vec<usize> = left.iter().map(|&k| dims[k]).collect();
    let rd: Vec<usize> = right.iter().map(|&k| dims[k]).collect();
    let (m, n) = (ld.iter().product::<usize>(), rd.iter().product::<usize>());
    let mut mat = DMatrix::<C>::zeros(m, n);
    for (idx, &a) in psi.iter().enumerate() {
        let d = digits(idx, dims);
        let l: Vec<usize> = left.iter().map(|&k| d[k]).collect();
        let r: Vec<usize> = right.iter().map(|&k| d[k]).collect();
        mat[(index(&l, &ld), index(&r, &rd))] = a;
    }
    let mut s: Vec<f64> = mat.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn frobenius(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}

/// `|⟨a|b⟩|`.
pub fn overlap(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<C>().norm()
}

/// Proptest settings with a fixed RNG seed, so every run sees the same cases.
pub fn cases(n: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases: n,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x7a6e_6e65),
        failure_persistence: None,
        ..Default::default()
    }
}
