//! Kernels, saturation and finite presentations for modules over the Laurent
//! ring, computed with Gröbner bases over the polynomial ring `Q[x_1..x_g]`.

mod groebner;

pub use groebner::{groebner_basis, reduce, CancelToken, Key, MVec};

use crate::chain::FreeChainComplex;
use crate::error::{Error, Result};
use crate::laurent::{laurent_snf, LaurentMatrix, LaurentPoly, QuotientAlgebra};
use crate::linalg::QMatrix;

/// Exponent shift that makes every entry of `vs` a polynomial.
fn clearing_shift<'a>(nvars: usize, vs: impl IntoIterator<Item = &'a LaurentPoly>) -> Vec<i64> {
    let mut shift = vec![0i64; nvars];
    for p in vs {
        if let Some((lo, _)) = p.exponent_bounds() {
            for (s, l) in shift.iter_mut().zip(lo) {
                *s = (*s).max(-l);
            }
        }
    }
    shift
}

fn to_mvec(v: &[LaurentPoly], offset: usize, shift: &[i64], out: &mut MVec) {
    for (i, p) in v.iter().enumerate() {
        for (e, c) in p.terms() {
            let exp = e
                .iter()
                .zip(shift)
                .map(|(a, s)| u32::try_from(a + s).expect("shift clears negative exponents"))
                .collect();
            out.add_term(Key { pos: offset + i, exp }, c.clone());
        }
    }
}

fn from_mvec(v: &MVec, lo: usize, hi: usize, nvars: usize) -> Vec<LaurentPoly> {
    let mut out = vec![LaurentPoly::zero(nvars); hi - lo];
    for (k, c) in v.terms() {
        if k.pos >= lo && k.pos < hi {
            out[k.pos - lo].add_term(k.exp.iter().map(|&x| x as i64).collect(), c.clone());
        }
    }
    out
}

/// Polynomial syzygies of the columns of `cols` (all polynomial, length `n`),
/// returned as vectors of length `cols.len()`.
fn poly_syzygies(cols: &[MVec], n: usize, nvars: usize, token: &CancelToken) -> Result<Vec<Vec<LaurentPoly>>> {
    let k = cols.len();
    let ext: Vec<MVec> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut v = c.clone();
            v.add_term(Key { pos: n + j, exp: vec![0; nvars] }, num_traits::One::one());
            v
        })
        .collect();
    let gb = groebner_basis(&ext, token)?;
    Ok(gb
        .iter()
        .filter(|v| v.lead_pos().is_some_and(|p| p >= n))
        .map(|v| from_mvec(v, n, n + k, nvars))
        .collect())
}

/// Generators of the kernel of `m` over the Laurent ring, as the columns of
/// the returned `cols(m) x r` matrix.
pub fn kernel(m: &LaurentMatrix) -> Result<LaurentMatrix> {
    kernel_with(m, &CancelToken::new())
}

pub fn kernel_with(m: &LaurentMatrix, token: &CancelToken) -> Result<LaurentMatrix> {
    let g = m.nvars();
    let (n, k) = (m.rows(), m.cols());
    let cols = m.columns();
    let shift = clearing_shift(g, cols.iter().flatten());
    let mcols: Vec<MVec> = cols
        .iter()
        .map(|c| {
            let mut v = MVec::zero();
            to_mvec(c, 0, &shift, &mut v);
            v
        })
        .collect();
    let syz = poly_syzygies(&mcols, n, g, token)?;
    Ok(LaurentMatrix::from_columns(k, g, &syz))
}

/// A submodule of `R^n` given by generators, with the Gröbner basis of the
/// saturated polynomial module kept for membership tests.
#[derive(Clone, Debug)]
pub struct LaurentSubmodule {
    nvars: usize,
    rank: usize,
    gens: Vec<Vec<LaurentPoly>>,
    sat_gb: Vec<MVec>,
}

impl LaurentSubmodule {
    pub fn new(nvars: usize, rank: usize, gens: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        Self::new_with(nvars, rank, gens, &CancelToken::new())
    }

    pub fn new_with(nvars: usize, rank: usize, gens: Vec<Vec<LaurentPoly>>, token: &CancelToken) -> Result<Self> {
        for v in &gens {
            if v.len() != rank {
                return Err(Error::InvalidInput(format!("generator of length {} in rank {rank}", v.len())));
            }
            if let Some(p) = v.iter().find(|p| p.nvars() != nvars) {
                return Err(Error::ArityMismatch { expected: nvars, found: p.nvars() });
            }
        }
        let polys: Vec<MVec> = gens.iter().map(|v| clear_vector(v, nvars)).collect();
        let sat_gb = saturate_poly(&polys, rank, nvars, token)?;
        Ok(LaurentSubmodule { nvars, rank, gens, sat_gb })
    }

    pub fn from_columns(m: &LaurentMatrix) -> Result<Self> {
        Self::new(m.nvars(), m.rows(), m.columns())
    }

    pub fn generators(&self) -> &[Vec<LaurentPoly>] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Generators of the saturation (polynomial vectors).
    pub fn saturated_generators(&self) -> Vec<Vec<LaurentPoly>> {
        self.sat_gb.iter().map(|v| from_mvec(v, 0, self.rank, self.nvars)).collect()
    }

    pub fn contains(&self, v: &[LaurentPoly]) -> bool {
        assert_eq!(v.len(), self.rank);
        reduce(&clear_vector(v, self.nvars), &self.sat_gb).is_zero()
    }

    pub fn contains_module(&self, other: &LaurentSubmodule) -> bool {
        other.gens.iter().all(|v| self.contains(v))
    }

    pub fn equals(&self, other: &LaurentSubmodule) -> bool {
        self.contains_module(other) && other.contains_module(self)
    }
}

fn clear_vector(v: &[LaurentPoly], nvars: usize) -> MVec {
    let shift = clearing_shift(nvars, v.iter());
    let mut out = MVec::zero();
    to_mvec(v, 0, &shift, &mut out);
    out
}

// Gröbner basis of M : (x_1...x_g)^∞ for a polynomial module M.
fn saturate_poly(gens: &[MVec], n: usize, nvars: usize, token: &CancelToken) -> Result<Vec<MVec>> {
    let mut gb = groebner_basis(gens, token)?;
    if nvars == 0 || gb.is_empty() {
        return Ok(gb);
    }
    let f = vec![1u32; nvars];
    loop {
        token.check()?;
        // M : f = first n coordinates of syz(f e_1, ..., f e_n, gb...)
        let mut cols: Vec<MVec> = (0..n)
            .map(|i| {
                let mut v = MVec::zero();
                v.add_term(Key { pos: i, exp: f.clone() }, num_traits::One::one());
                v
            })
            .collect();
        cols.extend(gb.iter().cloned());
        let syz = poly_syzygies(&cols, n, nvars, token)?;
        let quot: Vec<MVec> = syz
            .iter()
            .map(|s| {
                let mut v = MVec::zero();
                to_mvec(&s[..n], 0, &vec![0; nvars], &mut v);
                v
            })
            .filter(|v| !v.is_zero())
            .collect();
        if quot.iter().all(|v| reduce(v, &gb).is_zero()) {
            return Ok(gb);
        }
        let mut all = gb.clone();
        all.extend(quot);
        gb = groebner_basis(&all, token)?;
    }
}

/// Saturation of the polynomial module spanned by `gens` (vectors of length
/// `rank`) with respect to `t_1...t_g`. Negative exponents are first cleared
/// by multiplying each generator by a monomial.
pub fn saturate(nvars: usize, rank: usize, gens: &[Vec<LaurentPoly>]) -> Result<Vec<Vec<LaurentPoly>>> {
    Ok(LaurentSubmodule::new(nvars, rank, gens.to_vec())?.saturated_generators())
}

/// A finitely presented module `R^k / (column span of relations)`.
#[derive(Clone, Debug)]
pub struct FpModule {
    pub nvars: usize,
    pub num_gens: usize,
    pub relations: LaurentMatrix,
}

impl FpModule {
    pub fn new(relations: LaurentMatrix) -> Self {
        FpModule { nvars: relations.nvars(), num_gens: relations.rows(), relations }
    }

    /// Free module of rank `k`.
    pub fn free(nvars: usize, k: usize) -> Self {
        Self::new(LaurentMatrix::zeros(k, 0, nvars))
    }

    /// Matrix whose column span is the image of the relations in `Q^k ⊗ A`,
    /// where `A = q`. Coordinates: generator-major blocks of size `dim A`.
    pub fn tensor_relations(&self, q: &QuotientAlgebra) -> Result<QMatrix> {
        let d = q.dim();
        let (k, r) = (self.num_gens, self.relations.cols());
        let mut out = QMatrix::zeros(k * d, r * d);
        for j in 0..r {
            for i in 0..k {
                let p = &self.relations[(i, j)];
                if p.is_zero() {
                    continue;
                }
                out.set_block(i * d, j * d, &q.mult_matrix_poly(p)?);
            }
        }
        Ok(out)
    }

    /// `dim_Q (M ⊗_R A)`.
    pub fn tensor_dim(&self, q: &QuotientAlgebra) -> Result<usize> {
        Ok(self.num_gens * q.dim() - self.tensor_relations(q)?.rank())
    }

    /// For `g = 1`: free rank and the non-unit invariant factors (monic polynomials).
    pub fn structure_g1(&self) -> Result<(usize, Vec<LaurentPoly>)> {
        let snf = laurent_snf(&self.relations)?;
        let rank = snf.rank();
        Ok((self.num_gens - rank, snf.nonunit_divisors()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "nvars": self.nvars,
            "num_gens": self.num_gens,
            "relations": self.relations.to_json(),
        })
    }
}

/// A presentation of `H_j(C)` as an `R`-module.
pub fn present_homology(c: &FreeChainComplex, j: i64) -> Result<FpModule> {
    present_homology_with(c, j, &CancelToken::new())
}

pub fn present_homology_with(c: &FreeChainComplex, j: i64, token: &CancelToken) -> Result<FpModule> {
    let g = c.nvars();
    let dj = c.differential(j);
    let dnext = c.differential(j + 1);
    let kmat = kernel_with(&dj, token)?;
    let k = kmat.cols();
    let n = c.rank(j);
    // a ∈ R^k is a relation iff K a ∈ im d_{j+1}
    let cols: Vec<Vec<LaurentPoly>> = kmat.columns().into_iter().chain(dnext.columns()).collect();
    let mut mcols = Vec::with_capacity(cols.len());
    for col in &cols {
        let shift = clearing_shift(g, col.iter());
        let mut v = MVec::zero();
        to_mvec(col, 0, &shift, &mut v);
        mcols.push(v);
    }
    let syz = poly_syzygies(&mcols, n, g, token)?;
    let rels: Vec<Vec<LaurentPoly>> =
        syz.into_iter().map(|s| s[..k].to_vec()).filter(|v| v.iter().any(|p| !p.is_zero())).collect();
    Ok(FpModule::new(LaurentMatrix::from_columns(k, g, &rels)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::univariate(low, c)
    }

    #[test]
    fn kernel_examples() {
        let m = LaurentMatrix::from_rows(1, vec![vec![lp(0, &[-1, 1]), lp(0, &[-1, 1])]]).unwrap();
        let k = kernel(&m).unwrap();
        assert!(m.mul(&k).is_zero());
        let km = LaurentSubmodule::from_columns(&k).unwrap();
        assert!(km.contains(&[lp(0, &[1]), lp(0, &[-1])]));
        assert!(!km.contains(&[lp(0, &[1]), lp(0, &[0])]));

        let z = LaurentMatrix::zeros(1, 1, 1);
        let kz = LaurentSubmodule::from_columns(&kernel(&z).unwrap()).unwrap();
        assert!(kz.contains(&[lp(0, &[1])]));

        let id = LaurentMatrix::identity(2, 2);
        assert_eq!(kernel(&id).unwrap().cols(), 0);
    }

    #[test]
    fn saturation_examples() {
        let s = saturate(1, 1, &[vec![lp(1, &[1])]]).unwrap();
        assert_eq!(s, vec![vec![lp(0, &[1])]]);
        let s2 = saturate(1, 1, &s).unwrap();
        assert_eq!(s2, s);
    }

    #[test]
    fn laurent_units_in_membership() {
        let m = LaurentSubmodule::new(2, 1, vec![vec![LaurentPoly::t_pow(&[3, -1])]]).unwrap();
        assert!(m.contains(&[LaurentPoly::one(2)]));
    }
}
