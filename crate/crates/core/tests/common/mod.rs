#![allow(dead_code)]

use alexq::linalg::ri;
use alexq::{FreeChainComplex, LaurentMatrix, LaurentPoly, QMatrix, SubgroupSpec, UPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random polynomial with exponents in `[0, deg]^g` and small coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, g: usize, deg: i64, terms: usize) -> LaurentPoly {
    let mut p = LaurentPoly::zero(g);
    for _ in 0..terms {
        let e: Vec<i64> = (0..g).map(|_| rng.gen_range(0..=deg)).collect();
        p.add_term(e, ri(rng.gen_range(-3..=3)));
    }
    p
}

pub fn random_matrix(rng: &mut ChaCha8Rng, g: usize, rows: usize, cols: usize, deg: i64) -> LaurentMatrix {
    let mut m = LaurentMatrix::zeros(rows, cols, g);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(0.7) {
                m[(i, j)] = random_poly(rng, g, deg, 2);
            }
        }
    }
    m
}

fn elementary(n: usize, g: usize, i: usize, j: usize, q: &LaurentPoly) -> LaurentMatrix {
    let mut e = LaurentMatrix::identity(n, g);
    e[(i, j)] = q.clone();
    e
}

fn max_degree(m: &LaurentMatrix) -> i64 {
    let mut d = 0;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if let Some((lo, hi)) = m[(i, j)].exponent_bounds() {
                d = d.max(lo.iter().zip(&hi).map(|(a, b)| b - a).max().unwrap_or(0));
            }
        }
    }
    d
}

/// A three-term complex `C_2 -> C_1 -> C_0` with `d1 = [A | 0] T^{-1}` and
/// `d2 = T [0 ; B]` for a random unimodular `T`. Entry degrees stay `<= max_deg`.
pub fn random_complex(rng: &mut ChaCha8Rng, g: usize, max_rank: usize, max_deg: i64) -> FreeChainComplex {
    loop {
        let n0 = rng.gen_range(1..=max_rank);
        let n1 = rng.gen_range(1..=max_rank);
        let n2 = rng.gen_range(1..=max_rank);
        let r = rng.gen_range(0..=n1);
        let a = random_matrix(rng, g, n0, r, (max_deg - 1).max(1));
        let b = random_matrix(rng, g, n1 - r, n2, (max_deg - 1).max(1));
        let mut t = LaurentMatrix::identity(n1, g);
        let mut t_inv = LaurentMatrix::identity(n1, g);
        if n1 > 1 {
            for _ in 0..2 {
                let i = rng.gen_range(0..n1);
                let j = (i + rng.gen_range(1..n1)) % n1;
                let q = random_poly(rng, g, 1, 1);
                t = t.mul(&elementary(n1, g, i, j, &q));
                t_inv = elementary(n1, g, i, j, &-&q).mul(&t_inv);
            }
        }
        let mut top = LaurentMatrix::zeros(n0, n1, g);
        for i in 0..n0 {
            for j in 0..r {
                top[(i, j)] = a[(i, j)].clone();
            }
        }
        let mut bottom = LaurentMatrix::zeros(n1, n2, g);
        for i in r..n1 {
            for j in 0..n2 {
                bottom[(i, j)] = b[(i - r, j)].clone();
            }
        }
        let d1 = top.mul(&t_inv);
        let d2 = t.mul(&bottom);
        if max_degree(&d1) > max_deg || max_degree(&d2) > max_deg {
            continue;
        }
        return FreeChainComplex::new(g, 0, vec![n0, n1, n2], vec![d1, d2]).expect("d1 d2 = 0 by construction");
    }
}

/// Random full-rank sublattice of `Z^g` with index in `1..=max_index`.
pub fn random_subgroup(rng: &mut ChaCha8Rng, g: usize, max_index: i64) -> SubgroupSpec {
    loop {
        let mut rows = vec![vec![0i64; g]; g];
        let mut index = 1;
        for i in 0..g {
            rows[i][i] = rng.gen_range(1..=max_index);
            index *= rows[i][i];
            for j in i + 1..g {
                rows[i][j] = rng.gen_range(-2..=2);
            }
        }
        if index > max_index {
            continue;
        }
        // mix the basis by unimodular row operations
        for _ in 0..g {
            if g > 1 {
                let i = rng.gen_range(0..g);
                let j = (i + rng.gen_range(1..g)) % g;
                let c = rng.gen_range(-2..=2);
                let src = rows[j].clone();
                for (x, y) in rows[i].iter_mut().zip(&src) {
                    *x += c * y;
                }
            }
        }
        return SubgroupSpec::new(rows).unwrap();
    }
}

pub fn companion(p: &UPoly) -> QMatrix {
    let n = p.degree().unwrap();
    let mut c = QMatrix::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = ri(1);
    }
    for i in 0..n {
        c[(i, n - 1)] = -p.coeff(i);
    }
    c
}

/// Random unimodular integer matrix.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    let mut s = QMatrix::identity(n);
    if n < 2 {
        return s;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = ri(rng.gen_range(-2..=2));
        let mut e = QMatrix::identity(n);
        e[(i, j)] = c;
        s = &s * &e;
    }
    s
}

/// Random quasi-unipotent matrix: conjugate of a block sum of companion
/// matrices of cyclotomic powers. Returns the matrix and the lcm of the
/// cyclotomic indices used.
pub fn random_quasi_unipotent(rng: &mut ChaCha8Rng, max_dim: usize) -> (QMatrix, u64) {
    let qu = random_quasi_unipotent_parts(rng, max_dim);
    (qu.matrix, qu.order)
}

pub struct QuasiUnipotent {
    pub matrix: QMatrix,
    pub order: u64,
    pub blocks: Vec<QMatrix>,
    /// Cyclotomic index of each block.
    pub indices: Vec<u64>,
    pub conj: QMatrix,
}

pub fn random_quasi_unipotent_parts(rng: &mut ChaCha8Rng, max_dim: usize) -> QuasiUnipotent {
    const CHOICES: [u64; 7] = [1, 2, 3, 4, 5, 6, 8];
    let target = rng.gen_range(1..=max_dim);
    let mut blocks = Vec::new();
    let mut indices = Vec::new();
    let mut dim = 0;
    let mut order = 1u64;
    while dim < target {
        let d = CHOICES[rng.gen_range(0..CHOICES.len())];
        let phi = UPoly::cyclotomic(d);
        let deg = phi.degree().unwrap();
        if dim + deg > target {
            if dim == 0 {
                continue;
            }
            break;
        }
        let mut e = 1;
        while dim + deg * (e + 1) <= target && rng.gen_bool(0.3) {
            e += 1;
        }
        blocks.push(companion(&phi.pow(e as u32)));
        indices.push(d);
        dim += deg * e;
        order = num_integer::lcm(order, d);
    }
    let b = QMatrix::block_diagonal(&blocks);
    let s = random_unimodular(rng, b.rows());
    let matrix = &(&s * &b) * &s.inverse().unwrap();
    QuasiUnipotent { matrix, order, blocks, indices, conj: s }
}
