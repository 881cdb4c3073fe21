//! Smith normal form over the principal ideal domain `Q[t^±1]`.

use super::{LaurentMatrix, LaurentPoly};
use crate::error::{Error, Result};
use crate::poly::UPoly;

/// `u * m * v = d` with `u`, `v` invertible and `d` diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: LaurentMatrix,
    pub u_inv: LaurentMatrix,
    pub d: LaurentMatrix,
    pub v: LaurentMatrix,
    pub v_inv: LaurentMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_0 | d_1 | ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<LaurentPoly> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Nonzero diagonal entries that are not units.
    pub fn nonunit_divisors(&self) -> Vec<LaurentPoly> {
        self.diagonal().into_iter().filter(|p| !p.is_zero() && !p.is_unit()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|p| !p.is_zero()).count()
    }
}

/// Euclidean division by span: `a = q b + r` with `span(r) < span(b)`.
pub(crate) fn laurent_div_rem(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let (ka, pa) = a.to_upoly_shifted().expect("univariate");
    let (kb, pb) = b.to_upoly_shifted().expect("univariate");
    let (q, r) = pa.div_rem(&pb);
    let q = LaurentPoly::from_upoly(&q).shift(&[ka - kb]);
    let r = LaurentPoly::from_upoly(&r).shift(&[ka]);
    (q, r)
}

/// Normalizing unit: `p = unit * n` with `n` a monic polynomial in `t`, `n(0) != 0`.
pub(crate) fn normalizing_unit(p: &LaurentPoly) -> LaurentPoly {
    let (k, f) = p.to_upoly_shifted().expect("univariate");
    LaurentPoly::monomial(vec![k], f.leading())
}

/// Monic polynomial representative of a nonzero Laurent polynomial in one variable.
pub fn normalized_upoly(p: &LaurentPoly) -> Result<UPoly> {
    Ok(p.to_upoly_shifted()?.1.monic())
}

struct Tracker {
    d: LaurentMatrix,
    u: LaurentMatrix,
    u_inv: LaurentMatrix,
    v: LaurentMatrix,
    v_inv: LaurentMatrix,
}

impl Tracker {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }
    // row_i += q row_k
    fn add_row(&mut self, i: usize, k: usize, q: &LaurentPoly) {
        self.d.add_row_multiple(i, k, q);
        self.u.add_row_multiple(i, k, q);
        self.u_inv.add_col_multiple(k, i, &-q);
    }
    // col_j += q col_k
    fn add_col(&mut self, j: usize, k: usize, q: &LaurentPoly) {
        self.d.add_col_multiple(j, k, q);
        self.v.add_col_multiple(j, k, q);
        self.v_inv.add_row_multiple(k, j, &-q);
    }
    fn scale_row(&mut self, i: usize, unit: &LaurentPoly) {
        let inv = unit.inverse_unit().expect("unit");
        self.d.scale_row(i, unit);
        self.u.scale_row(i, unit);
        self.u_inv.scale_col(i, &inv);
    }
}

pub fn laurent_snf(m: &LaurentMatrix) -> Result<SmithForm> {
    if m.nvars() != 1 {
        return Err(Error::MultivariateInput(m.nvars()));
    }
    let (r, c) = (m.rows(), m.cols());
    let mut t = Tracker {
        d: m.clone(),
        u: LaurentMatrix::identity(r, 1),
        u_inv: LaurentMatrix::identity(r, 1),
        v: LaurentMatrix::identity(c, 1),
        v_inv: LaurentMatrix::identity(c, 1),
    };
    for k in 0..r.min(c) {
        loop {
            let mut best: Option<(i64, usize, usize)> = None;
            for i in k..r {
                for j in k..c {
                    if let Some(s) = t.d[(i, j)].span() {
                        if best.is_none_or(|(b, _, _)| s < b) {
                            best = Some((s, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return Ok(finish(t));
            };
            t.swap_rows(k, pi);
            t.swap_cols(k, pj);
            let piv = t.d[(k, k)].clone();
            let mut dirty = false;
            for i in k + 1..r {
                if t.d[(i, k)].is_zero() {
                    continue;
                }
                let (q, rem) = laurent_div_rem(&t.d[(i, k)], &piv);
                t.add_row(i, k, &-&q);
                dirty |= !rem.is_zero();
            }
            for j in k + 1..c {
                if t.d[(k, j)].is_zero() {
                    continue;
                }
                let (q, rem) = laurent_div_rem(&t.d[(k, j)], &piv);
                t.add_col(j, k, &-&q);
                dirty |= !rem.is_zero();
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the remaining block by the pivot
            let bad = (k + 1..r).find(|&i| {
                (k + 1..c).any(|j| !t.d[(i, j)].is_zero() && !laurent_div_rem(&t.d[(i, j)], &piv).1.is_zero())
            });
            match bad {
                Some(i) => t.add_row(k, i, &LaurentPoly::one(1)),
                None => break,
            }
        }
        let unit = normalizing_unit(&t.d[(k, k)]).inverse_unit().expect("unit");
        t.scale_row(k, &unit);
    }
    Ok(finish(t))
}

fn finish(t: Tracker) -> SmithForm {
    SmithForm { u: t.u, u_inv: t.u_inv, d: t.d, v: t.v, v_inv: t.v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::univariate(low, c)
    }

    fn check(m: &LaurentMatrix) -> SmithForm {
        let s = laurent_snf(m).unwrap();
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), LaurentMatrix::identity(m.rows(), 1));
        assert_eq!(s.v.mul(&s.v_inv), LaurentMatrix::identity(m.cols(), 1));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                assert!(i == j || s.d[(i, j)].is_zero());
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(!w[0].is_zero());
                assert!(laurent_div_rem(&w[1], &w[0]).1.is_zero());
            }
        }
        s
    }

    #[test]
    fn single_entry() {
        let m = LaurentMatrix::from_rows(1, vec![vec![lp(0, &[-1, 1])]]).unwrap();
        assert_eq!(check(&m).diagonal(), vec![lp(0, &[-1, 1])]);
    }

    #[test]
    fn two_by_two() {
        let m = LaurentMatrix::from_rows(1, vec![vec![lp(1, &[1]), lp(0, &[1])], vec![lp(0, &[0]), lp(0, &[-1, 1])]]).unwrap();
        let s = check(&m);
        assert_eq!(s.diagonal(), vec![LaurentPoly::one(1), lp(0, &[-1, 1])]);
    }

    #[test]
    fn zero_matrix() {
        let s = check(&LaurentMatrix::zeros(2, 2, 1));
        assert!(s.diagonal().iter().all(|p| p.is_zero()));
    }

    #[test]
    fn divisibility_fixup() {
        // diag(t-1, t+1) has SNF diag(1, t^2-1)
        let m = LaurentMatrix::from_rows(1, vec![vec![lp(0, &[-1, 1]), lp(0, &[0])], vec![lp(0, &[0]), lp(0, &[1, 1])]]).unwrap();
        let s = check(&m);
        assert_eq!(s.diagonal(), vec![LaurentPoly::one(1), lp(0, &[-1, 0, 1])]);
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn multivariate_rejected() {
        assert_eq!(laurent_snf(&LaurentMatrix::zeros(1, 1, 2)).unwrap_err(), Error::MultivariateInput(2));
    }
}
