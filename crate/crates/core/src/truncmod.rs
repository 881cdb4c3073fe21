//! The truncations `R_m = ⊕_{j<m} Sym^j H_1` and their duals `R_{-m}`, with
//! the exponential action of the deck group.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{grlex_monomials, QuotientAlgebra, TruncMonomials};
use crate::linalg::{ri, QMatrix, Rat};

/// An element `prod γ_i^{a_i}` of the deck group `Z^g`.
pub type DeckExponent = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    /// `R_m`
    Truncation,
    /// `R_{-m}`, the dual of `R_m`
    Dual,
}

#[derive(Clone, Debug)]
pub struct TruncModule {
    g: usize,
    m: usize,
    variant: Variant,
    tm: TruncMonomials,
}

impl TruncModule {
    pub fn new(g: usize, m: usize, variant: Variant) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadOrder("truncation order m must be at least 1".into()));
        }
        Ok(TruncModule { g, m, variant, tm: TruncMonomials::new(g, m) })
    }

    pub fn rm(g: usize, m: usize) -> Result<Self> {
        Self::new(g, m, Variant::Truncation)
    }

    pub fn dual(g: usize, m: usize) -> Result<Self> {
        Self::new(g, m, Variant::Dual)
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn dim(&self) -> usize {
        self.tm.len()
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.tm.monos
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.tm
            .monos
            .iter()
            .map(|a| {
                let mono = monomial_name(a, "s");
                match self.variant {
                    Variant::Truncation => mono,
                    Variant::Dual => format!("({mono})^v"),
                }
            })
            .collect()
    }

    /// Tate-twist bookkeeping for `g = 1`: the label `(1-m)` attached to `R_{-m}` as metadata.
    pub fn twist_label(&self) -> Option<String> {
        (self.variant == Variant::Dual && self.g == 1).then(|| format!("({})", 1 - self.m as i64))
    }

    // multiplication by sum a_i s_i on R_m
    fn raise(&self, a: &[Rat]) -> QMatrix {
        assert_eq!(a.len(), self.g, "H_1 vector has wrong length");
        let n = self.dim();
        let mut out = QMatrix::zeros(n, n);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let mut e = vec![0u32; self.g];
            e[i] = 1;
            let Some(&si) = self.tm.index.get(&e) else {
                continue;
            };
            for col in 0..n {
                if let Some(row) = self.tm.product_index(si, col) {
                    out[(row, col)] += ai;
                }
            }
        }
        out
    }

    fn orient(&self, m: QMatrix) -> QMatrix {
        match self.variant {
            Variant::Truncation => m,
            Variant::Dual => m.transpose(),
        }
    }

    /// Multiplication by `a ∈ H_1(G, k)` (degree raising on `R_m`, its transpose on `R_{-m}`).
    pub fn mult_h1(&self, a: &[Rat]) -> QMatrix {
        self.orient(self.raise(a))
    }

    /// Action of `γ` via `e^{log γ}`.
    pub fn rm_action(&self, gamma: &[i64]) -> QMatrix {
        let a: Vec<Rat> = gamma.iter().map(|&x| ri(x)).collect();
        self.orient(exp_nilpotent(&self.raise(&a), self.m))
    }

    /// The logarithm of `γ` acting on this module.
    pub fn log_operator(&self, gamma: &[i64]) -> QMatrix {
        log_unipotent(&self.rm_action(gamma), self.m)
    }
}

fn monomial_name(a: &[u32], var: &str) -> String {
    let parts: Vec<String> = a
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let v = if a.len() == 1 { var.to_string() } else { format!("{var}{}", i + 1) };
            if e == 1 { v } else { format!("{v}^{e}") }
        })
        .collect();
    if parts.is_empty() { "1".into() } else { parts.join("*") }
}

/// `sum_{j < m} N^j / j!` for a nilpotent `N` with `N^m = 0`.
pub fn exp_nilpotent(n: &QMatrix, m: usize) -> QMatrix {
    let d = n.rows();
    let mut acc = QMatrix::identity(d);
    let mut term = QMatrix::identity(d);
    for j in 1..m.max(1) {
        term = (&term * n).scale(&ri(j as i64).recip());
        if term.is_zero() {
            break;
        }
        acc = &acc + &term;
    }
    acc
}

/// `-sum_{i=1}^{m-1} (1 - A)^i / i`, the logarithm of a unipotent `A`
/// whose `(A - 1)^m` vanishes.
pub fn log_unipotent(a: &QMatrix, m: usize) -> QMatrix {
    let d = a.rows();
    let x = &QMatrix::identity(d) - a;
    let mut acc = QMatrix::zeros(d, d);
    let mut p = QMatrix::identity(d);
    for i in 1..m {
        p = &p * &x;
        if p.is_zero() {
            break;
        }
        acc = &acc - &p.scale(&ri(i as i64).recip());
    }
    acc
}

/// Logarithm of `γ` acting on `R/m^m` (the full-subgroup quotient algebra).
pub fn log_operator_on_quotient(gamma: &[i64], q: &QuotientAlgebra) -> QMatrix {
    log_unipotent(&q.action(gamma), q.power())
}

/// Basis change `R/m^m -> R_m`: the class of `prod (t_i - 1)^{a_i}` goes to
/// `prod (e^{s_i} - 1)^{a_i}`. Columns are indexed by the basis of
/// [`QuotientAlgebra::full`], rows by the `s`-monomials.
pub fn iso_rmodm_to_rm(g: usize, m: usize) -> Result<QMatrix> {
    let rm = TruncModule::rm(g, m)?;
    let n = rm.dim();
    let mut u_images: Vec<Vec<Rat>> = Vec::with_capacity(g);
    for i in 0..g {
        let mut gamma = vec![0; g];
        gamma[i] = 1;
        let act = rm.rm_action(&gamma);
        let mut one = vec![Rat::zero(); n];
        one[0] = Rat::one();
        let mut img = act.apply(&one);
        img[0] -= Rat::one();
        u_images.push(img);
    }
    let mut cols = Vec::with_capacity(n);
    for a in &rm.tm.monos {
        let mut v = rm.tm.unit();
        for (i, &k) in a.iter().enumerate() {
            for _ in 0..k {
                v = rm.tm.mul_series(&v, &u_images[i]);
            }
        }
        cols.push(v);
    }
    Ok(QMatrix::from_columns(n, &cols))
}

/// The natural map between truncation orders: surjection `R_{m'} -> R_m`
/// or, for the dual variant, the inclusion `R_{-m} -> R_{-m'}`.
pub fn projection(g: usize, m_from: usize, m_to: usize, variant: Variant) -> Result<QMatrix> {
    if m_to == 0 || m_from < m_to {
        return Err(Error::BadOrder(format!("projection needs m' >= m >= 1, got m' = {m_from}, m = {m_to}")));
    }
    let big = grlex_monomials(g, m_from);
    let small = grlex_monomials(g, m_to);
    // grlex lists lower degrees first, so R_m's basis is a prefix of R_{m'}'s
    let mut p = QMatrix::zeros(small.len(), big.len());
    for i in 0..small.len() {
        debug_assert_eq!(small[i], big[i]);
        p[(i, i)] = Rat::one();
    }
    Ok(match variant {
        Variant::Truncation => p,
        Variant::Dual => p.transpose(),
    })
}

/// The pairing isomorphism `A_m: R_m -> R_{-m}`, `s^j ↦ (s^{m-1-j})^∨` (`g = 1`).
pub fn tate_am(g: usize, m: usize) -> Result<QMatrix> {
    if g != 1 {
        return Err(Error::MultivariateInput(g));
    }
    if m == 0 {
        return Err(Error::BadOrder("m must be at least 1".into()));
    }
    let mut a = QMatrix::zeros(m, m);
    for j in 0..m {
        a[(m - 1 - j, j)] = Rat::one();
    }
    Ok(a)
}

/// The algebra map `R^1_m -> R^2_m` induced by `ρ: Z^{g1} -> Z^{g2}`
/// (`rho` is `g2 x g1`, so `s_i ↦ sum_j rho[j][i] s'_j`), and the dual map
/// `R^2_{-m} -> R^1_{-m}` (its transpose).
pub fn rho_push(rho: &[Vec<i64>], g1: usize, m: usize) -> Result<(QMatrix, QMatrix)> {
    let g2 = rho.len();
    if rho.iter().any(|r| r.len() != g1) {
        return Err(Error::ArityMismatch { expected: g1, found: rho.first().map_or(0, |r| r.len()) });
    }
    let src = TruncModule::rm(g1, m)?;
    let dst = TruncModule::rm(g2, m)?;
    let images: Vec<Vec<Rat>> = (0..g1)
        .map(|i| {
            let a: Vec<Rat> = (0..g2).map(|j| ri(rho[j][i])).collect();
            dst.raise(&a).apply(&dst.tm.unit())
        })
        .collect();
    let cols: Vec<Vec<Rat>> = src
        .tm
        .monos
        .iter()
        .map(|a| {
            let mut v = dst.tm.unit();
            for (i, &k) in a.iter().enumerate() {
                for _ in 0..k {
                    v = dst.tm.mul_series(&v, &images[i]);
                }
            }
            v
        })
        .collect();
    let push = QMatrix::from_columns(dst.dim(), &cols);
    let dual = push.transpose();
    Ok((push, dual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn col(m: &QMatrix, j: usize) -> Vec<Rat> {
        m.column(j)
    }

    #[test]
    fn action_examples() {
        let r2 = TruncModule::rm(1, 2).unwrap();
        let a = r2.rm_action(&[1]);
        assert_eq!(col(&a, 0), vec![ri(1), ri(1)]);
        assert_eq!(col(&a, 1), vec![ri(0), ri(1)]);
        let r3 = TruncModule::rm(1, 3).unwrap();
        assert_eq!(col(&r3.rm_action(&[1]), 0), vec![ri(1), ri(1), rat(1, 2)]);
        let r1 = TruncModule::rm(3, 1).unwrap();
        assert!(r1.rm_action(&[2, -1, 5]).is_identity());
    }

    #[test]
    fn iso_examples() {
        let i3 = iso_rmodm_to_rm(1, 3).unwrap();
        assert_eq!(col(&i3, 1), vec![ri(0), ri(1), rat(1, 2)]);
        assert_eq!(col(&i3, 2), vec![ri(0), ri(0), ri(1)]);
        assert!(iso_rmodm_to_rm(1, 1).unwrap().is_identity());
        let i22 = iso_rmodm_to_rm(2, 2).unwrap();
        assert!(i22.is_identity());
    }

    #[test]
    fn log_examples() {
        let q = QuotientAlgebra::full(1, 2).unwrap();
        let l = log_operator_on_quotient(&[1], &q);
        assert_eq!(l, QMatrix::from_i64_rows(&[&[0, 0], &[1, 0]]));
        let q3 = QuotientAlgebra::full(1, 3).unwrap();
        let l2 = log_operator_on_quotient(&[2], &q3);
        assert_eq!(col(&l2, 0), vec![ri(0), ri(2), ri(-1)]);
        assert!(l2.pow(3).is_zero());
    }

    #[test]
    fn dual_multiplication() {
        let d = TruncModule::dual(1, 2).unwrap();
        let s = d.mult_h1(&[ri(1)]);
        assert_eq!(col(&s, 1), vec![ri(1), ri(0)]);
        assert_eq!(col(&s, 0), vec![ri(0), ri(0)]);
        assert!(TruncModule::rm(2, 3).unwrap().mult_h1(&[ri(0), ri(0)]).is_zero());
        assert_eq!(d.twist_label().as_deref(), Some("(-1)"));
    }

    #[test]
    fn projections() {
        let p = projection(1, 2, 1, Variant::Truncation).unwrap();
        assert_eq!(p, QMatrix::from_i64_rows(&[&[1, 0]]));
        assert!(projection(2, 3, 3, Variant::Truncation).unwrap().is_identity());
        let p32 = projection(2, 3, 2, Variant::Truncation).unwrap();
        let p21 = projection(2, 2, 1, Variant::Truncation).unwrap();
        assert_eq!(&p21 * &p32, projection(2, 3, 1, Variant::Truncation).unwrap());
        assert!(projection(1, 1, 2, Variant::Dual).is_err());
    }

    #[test]
    fn tate_pairing() {
        let a2 = tate_am(1, 2).unwrap();
        assert_eq!(a2, QMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]));
        assert!(tate_am(1, 1).unwrap().is_identity());
        let a3 = tate_am(1, 3).unwrap();
        let s = TruncModule::rm(1, 3).unwrap().mult_h1(&[ri(1)]);
        let sd = TruncModule::dual(1, 3).unwrap().mult_h1(&[ri(1)]);
        assert_eq!(&a3 * &s, &sd * &a3);
        assert!(tate_am(2, 2).is_err());
    }

    #[test]
    fn rho_examples() {
        let (p, d) = rho_push(&[vec![1], vec![1]], 1, 2).unwrap();
        assert_eq!(col(&p, 1), vec![ri(0), ri(1), ri(1)]);
        assert_eq!(d, p.transpose());
        assert!(rho_push(&[vec![1, 0], vec![0, 1]], 2, 3).unwrap().0.is_identity());
        let (z, _) = rho_push(&[vec![0]], 1, 3).unwrap();
        assert_eq!(z, QMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]));
    }
}
