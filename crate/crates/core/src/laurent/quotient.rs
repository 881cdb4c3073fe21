use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{LaurentPoly, SubgroupSpec};
use crate::error::{Error, Result};
use crate::linalg::{ri, QMatrix, Rat};

/// Exponent vectors of total degree `< m` in `g` variables, graded lexicographic.
pub fn grlex_monomials(g: usize, m: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 0..m {
        let mut level = Vec::new();
        compositions(g, d as u32, &mut vec![], &mut level);
        out.extend(level);
    }
    out
}

// All exponent vectors of length g summing to d, lexicographically descending
// (x1^d first), which is grlex within a degree.
fn compositions(g: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == g {
        prefix.push(d);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    if g == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return;
    }
    for a in (0..=d).rev() {
        prefix.push(a);
        compositions(g, d - a, prefix, out);
        prefix.pop();
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Generalized binomial coefficient `c choose k` for any integer `c`.
pub(crate) fn gen_binomial(c: i64, k: u32) -> Rat {
    let mut r = Rat::one();
    for i in 0..k as i64 {
        r = r * ri(c - i) / ri(i + 1);
    }
    r
}

/// Truncated monomial arithmetic in `u_1..u_g` modulo total degree `m`.
#[derive(Clone, Debug)]
pub(crate) struct TruncMonomials {
    pub monos: Vec<Vec<u32>>,
    pub index: HashMap<Vec<u32>, usize>,
    // mul[a * n + b] = index of monos[a] + monos[b] if degree < m
    mul: Vec<Option<usize>>,
}

impl TruncMonomials {
    pub fn new(g: usize, m: usize) -> Self {
        let monos = grlex_monomials(g, m);
        let index: HashMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let n = monos.len();
        let mut mul = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = monos[a].iter().zip(&monos[b]).map(|(x, y)| x + y).collect();
                mul[a * n + b] = index.get(&s).copied();
            }
        }
        TruncMonomials { monos, index, mul }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn product_index(&self, a: usize, b: usize) -> Option<usize> {
        self.mul[a * self.monos.len() + b]
    }

    /// Product of two truncated series (dense coefficient vectors).
    pub fn mul_series(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let n = self.len();
        let mut out = vec![Rat::zero(); n];
        for a in 0..n {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if y[b].is_zero() {
                    continue;
                }
                if let Some(c) = self.product_index(a, b) {
                    out[c] += &x[a] * &y[b];
                }
            }
        }
        out
    }

    /// `prod_i (1 + u_i)^{c_i}`, truncated.
    pub fn binomial_series(&self, c: &[i64]) -> Vec<Rat> {
        self.monos
            .iter()
            .map(|a| a.iter().zip(c).fold(Rat::one(), |acc, (&k, &ci)| acc * gen_binomial(ci, k)))
            .collect()
    }

    pub fn unit(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.len()];
        if !v.is_empty() {
            v[0] = Rat::one();
        }
        v
    }
}

/// Label of a basis vector: `t^coset * prod (h_i - 1)^{exps_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub coset: Vec<i64>,
    pub exps: Vec<u32>,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.coset.iter().any(|&x| x != 0) {
            if self.coset.len() == 1 {
                parts.push(if self.coset[0] == 1 { "t".to_string() } else { format!("t^{}", self.coset[0]) });
            } else {
                parts.push(format!("t^{:?}", self.coset));
            }
        }
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let u = if self.exps.len() == 1 { "u".to_string() } else { format!("u{}", i + 1) };
            parts.push(if e == 1 { u } else { format!("{u}^{e}") });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// The algebra `R / (m_H R)^m` with its monomial basis.
///
/// Basis: coset representatives `r` of `Z^g / H` times monomials `u^a`,
/// `|a| < m`, where `u_i = t^{h_i} - 1` for the normalized generators `h_i`
/// of `H`. Coordinates are indexed `coset * n_monomials + monomial`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    subgroup: SubgroupSpec,
    m: usize,
    cosets: Vec<Vec<i64>>,
    tm: TruncMonomials,
    // coset_prod[a * k + b] = (coset index, series) for t^{r_a + r_b}
    coset_prod: Vec<(usize, Vec<Rat>)>,
}

impl QuotientAlgebra {
    pub fn new(subgroup: SubgroupSpec, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadOrder("truncation order m must be at least 1".into()));
        }
        let g = subgroup.rank();
        let cosets = subgroup.coset_reps();
        let tm = TruncMonomials::new(g, m);
        let k = cosets.len();
        let mut coset_prod = Vec::with_capacity(k * k);
        for a in &cosets {
            for b in &cosets {
                let e: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let (r, c) = subgroup.decompose(&e);
                coset_prod.push((subgroup.coset_index(&r), tm.binomial_series(&c)));
            }
        }
        Ok(QuotientAlgebra { subgroup, m, cosets, tm, coset_prod })
    }

    /// `R / m^m` for the full group.
    pub fn full(g: usize, m: usize) -> Result<Self> {
        Self::new(SubgroupSpec::full(g), m)
    }

    pub fn subgroup(&self) -> &SubgroupSpec {
        &self.subgroup
    }

    pub fn power(&self) -> usize {
        self.m
    }

    pub fn nvars(&self) -> usize {
        self.subgroup.rank()
    }

    pub fn dim(&self) -> usize {
        self.cosets.len() * self.tm.len()
    }

    pub fn num_cosets(&self) -> usize {
        self.cosets.len()
    }

    pub fn num_monomials(&self) -> usize {
        self.tm.len()
    }

    pub fn basis(&self) -> Vec<BasisLabel> {
        let mut out = Vec::with_capacity(self.dim());
        for r in &self.cosets {
            for a in &self.tm.monos {
                out.push(BasisLabel { coset: r.clone(), exps: a.clone() });
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<Rat> {
        self.reduce_monomial(&vec![0; self.nvars()])
    }

    /// Coordinates of `t^e`.
    pub fn reduce_monomial(&self, e: &[i64]) -> Vec<Rat> {
        let (r, c) = self.subgroup.decompose(e);
        let ci = self.subgroup.coset_index(&r);
        let n = self.tm.len();
        let mut v = vec![Rat::zero(); self.dim()];
        for (j, x) in self.tm.binomial_series(&c).into_iter().enumerate() {
            v[ci * n + j] = x;
        }
        v
    }

    pub fn reduce_mod(&self, p: &LaurentPoly) -> Result<Vec<Rat>> {
        if p.nvars() != self.nvars() {
            return Err(Error::ArityMismatch { expected: self.nvars(), found: p.nvars() });
        }
        let mut v = vec![Rat::zero(); self.dim()];
        for (e, c) in p.terms() {
            for (x, y) in v.iter_mut().zip(self.reduce_monomial(e)) {
                if !y.is_zero() {
                    *x += c * y;
                }
            }
        }
        Ok(v)
    }

    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let k = self.cosets.len();
        let n = self.tm.len();
        let mut out = vec![Rat::zero(); self.dim()];
        for a in 0..k {
            let xa = &x[a * n..(a + 1) * n];
            if xa.iter().all(|v| v.is_zero()) {
                continue;
            }
            for b in 0..k {
                let yb = &y[b * n..(b + 1) * n];
                if yb.iter().all(|v| v.is_zero()) {
                    continue;
                }
                let (c, s) = &self.coset_prod[a * k + b];
                let prod = self.tm.mul_series(&self.tm.mul_series(xa, yb), s);
                for (o, p) in out[c * n..(c + 1) * n].iter_mut().zip(prod) {
                    *o += p;
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `x` in the basis.
    pub fn mult_matrix(&self, x: &[Rat]) -> QMatrix {
        let d = self.dim();
        let mut m = QMatrix::zeros(d, d);
        let mut e = vec![Rat::zero(); d];
        for j in 0..d {
            e[j] = Rat::one();
            for (i, v) in self.mul(x, &e).into_iter().enumerate() {
                m[(i, j)] = v;
            }
            e[j] = Rat::zero();
        }
        m
    }

    pub fn mult_matrix_poly(&self, p: &LaurentPoly) -> Result<QMatrix> {
        Ok(self.mult_matrix(&self.reduce_mod(p)?))
    }

    /// Action of the deck transformation `t^gamma`.
    pub fn action(&self, gamma: &[i64]) -> QMatrix {
        self.mult_matrix(&self.reduce_monomial(gamma))
    }

    /// Structure constants: `table[i]` is the matrix of left multiplication by basis vector `i`.
    pub fn mult_table(&self) -> Vec<QMatrix> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                let mut e = vec![Rat::zero(); d];
                e[i] = Rat::one();
                self.mult_matrix(&e)
            })
            .collect()
    }

    /// The Laurent polynomial `t^r prod (t^{h_i} - 1)^{a_i}` for basis vector `i`.
    pub fn basis_poly(&self, i: usize) -> LaurentPoly {
        let n = self.tm.len();
        let g = self.nvars();
        let mut p = LaurentPoly::t_pow(&self.cosets[i / n]);
        for (j, &a) in self.tm.monos[i % n].iter().enumerate() {
            let h = self.subgroup.generator(j);
            let u = &LaurentPoly::t_pow(&h) - &LaurentPoly::one(g);
            for _ in 0..a {
                p = &p * &u;
            }
        }
        p
    }

    /// A Laurent polynomial representing the given coordinates.
    pub fn element_poly(&self, x: &[Rat]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(self.nvars());
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                p = &p + &self.basis_poly(i).scale(c);
            }
        }
        p
    }

    /// The natural surjection onto `target = R/(m_K R)^k`, defined when
    /// `H <= K` and `m >= k`.
    pub fn projection_to(&self, target: &QuotientAlgebra) -> Result<QMatrix> {
        if !self.subgroup.is_subgroup_of(target.subgroup()) {
            return Err(Error::InvalidInput("projection requires the source subgroup to lie in the target subgroup".into()));
        }
        if self.m < target.m {
            return Err(Error::BadOrder(format!("cannot project from m = {} to m = {}", self.m, target.m)));
        }
        let cols: Vec<Vec<Rat>> = (0..self.dim()).map(|i| target.reduce_mod(&self.basis_poly(i))).collect::<Result<_>>()?;
        Ok(QMatrix::from_columns(target.dim(), &cols))
    }

    /// Expected dimension `[Z^g : H] * C(g + m - 1, g)`.
    pub fn expected_dim(subgroup: &SubgroupSpec, m: usize) -> u64 {
        let g = subgroup.rank() as u64;
        subgroup.index() * binomial(g + m as u64 - 1, g)
    }

    /// Convenience: integer coordinates vector builder.
    pub fn coords_from_i64(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| ri(x)).collect()
    }
}
