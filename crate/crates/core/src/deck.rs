//! Deck operators on finite-dimensional homology quotients: Jordan–Chevalley
//! decomposition, quasi-unipotence order, logarithms and generalized
//! eigenspaces over `Q`, split along cyclotomic factors.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chain::HomologyQuotient;
use crate::error::{Error, Result};
use crate::format::matrix_to_json;
use crate::linalg::{QMatrix, Subspace};
use crate::poly::{euler_phi, lcm_u64, UPoly};
use crate::truncmod::log_unipotent;

pub const ORDER_CAP: u64 = 10_000;

/// `A = ss * u` with `ss = p(A)` semisimple and `u` unipotent.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanChevalley {
    pub ss: QMatrix,
    pub u: QMatrix,
    /// Polynomial with zero constant term such that `ss = p(A)`.
    pub p: UPoly,
}

fn inverse_mod(a: &UPoly, m: &UPoly) -> Option<UPoly> {
    let (g, s, _) = a.rem(m).ext_gcd(m);
    if g.degree() != Some(0) {
        return None;
    }
    Some(s.scale(&g.leading().recip()).rem(m))
}

fn compose_mod(f: &UPoly, p: &UPoly, m: &UPoly) -> UPoly {
    // Horner in Q[x]/(m)
    let mut acc = UPoly::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(p).add(&UPoly::constant(c.clone())).rem(m);
    }
    acc
}

pub fn jordan_chevalley(a: &QMatrix) -> Result<JordanChevalley> {
    if !a.is_square() {
        return Err(Error::InvalidInput("operator must be square".into()));
    }
    if a.determinant().is_zero() {
        return Err(Error::SingularOperator);
    }
    let n = a.rows();
    if n == 0 {
        return Ok(JordanChevalley { ss: a.clone(), u: a.clone(), p: UPoly::x() });
    }
    let mu = a.minimal_polynomial();
    let s = mu.squarefree_part();
    let ds = s.derivative();
    // Newton iteration for a root of s near x, in Q[x]/(mu)
    let mut p = UPoly::x().rem(&mu);
    loop {
        let sp = compose_mod(&s, &p, &mu);
        if sp.is_zero() {
            break;
        }
        let inv = inverse_mod(&compose_mod(&ds, &p, &mu), &mu).expect("s' is invertible along the iteration");
        p = p.sub(&sp.mul(&inv)).rem(&mu);
    }
    // mu(0) != 0, so subtracting a multiple of mu kills the constant term
    let c0 = p.coeff(0);
    if !c0.is_zero() {
        p = p.sub(&mu.scale(&(c0 / mu.coeff(0))));
    }
    let ss = a.eval_poly(&p);
    let u = &ss.inverse().expect("semisimple part of an invertible operator") * a;
    Ok(JordanChevalley { ss, u, p })
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Cyclotomic indices `d` whose product of `Φ_d` is the squarefree part of
/// `p`, or `None` if `p` has a non-cyclotomic factor within the search range.
fn cyclotomic_support(p: &UPoly, candidates: impl Iterator<Item = u64>) -> Option<Vec<u64>> {
    let mut rest = p.squarefree_part().monic();
    let mut out = Vec::new();
    for d in candidates {
        if rest.degree() == Some(0) {
            break;
        }
        let phi = UPoly::cyclotomic(d);
        if phi.divides(&rest) {
            rest = rest.div_rem(&phi).0;
            out.push(d);
        }
    }
    (rest.degree() == Some(0)).then_some(out)
}

/// Smallest `N` with `A^N - 1` nilpotent. With a hint, only divisors of it
/// are tried.
pub fn quasi_unipotence_order(a: &QMatrix, hint: Option<u64>) -> Result<u64> {
    if a.determinant().is_zero() {
        return Err(Error::SingularOperator);
    }
    let mu = a.minimal_polynomial();
    let support = match hint {
        Some(h) if h > 0 => cyclotomic_support(&mu, divisors(h).into_iter()),
        _ => {
            // phi(d) >= sqrt(d / 2), so larger d cannot divide
            let deg = mu.degree().unwrap_or(0) as u64;
            cyclotomic_support(&mu, 1..=(2 * deg * deg + 2).min(ORDER_CAP))
        }
    };
    let cap = hint.filter(|&h| h > 0).unwrap_or(ORDER_CAP);
    let support = support.ok_or(Error::NotQuasiUnipotent(cap))?;
    let n = support.into_iter().fold(1, lcm_u64);
    if n > ORDER_CAP {
        return Err(Error::NotQuasiUnipotent(ORDER_CAP));
    }
    Ok(n)
}

/// Complex dimension attached to each primitive `d`-th root `e^{2πik/d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootDim {
    pub k: u64,
    pub d: u64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenBlock {
    /// One cyclotomic index per operator.
    pub factors: Vec<u64>,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub ambient: usize,
    pub orders: Vec<u64>,
    pub blocks: Vec<EigenBlock>,
    /// Bases of the blocks, aligned with `blocks`.
    pub spaces: Vec<Subspace>,
    /// `(u - 1)` nilpotency index per operator.
    pub nilpotency: Vec<usize>,
    /// Only for a single operator.
    pub roots: Option<Vec<RootDim>>,
}

impl EigenDecomposition {
    pub fn dim_of(&self, factors: &[u64]) -> usize {
        self.blocks.iter().find(|b| b.factors == factors).map_or(0, |b| b.dim)
    }

    pub fn root_dim(&self, k: u64, d: u64) -> Option<usize> {
        self.roots.as_ref()?.iter().find(|r| r.k == k && r.d == d).map(|r| r.dim)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "ambient": self.ambient,
            "orders": self.orders,
            "blocks": self.blocks,
            "nilpotency": self.nilpotency,
        });
        if let Some(r) = &self.roots {
            v["eigenvalues"] = json!(r);
        }
        v
    }
}

fn generalized_kernel(a: &QMatrix, f: &UPoly) -> Subspace {
    let n = a.rows();
    let fa = a.eval_poly(f);
    let mut p = fa.clone();
    let mut prev = usize::MAX;
    // the kernel chain stabilizes once it stops growing
    loop {
        let k = p.kernel();
        if k.cols() == prev || k.cols() == n {
            return Subspace::from_columns(&k);
        }
        prev = k.cols();
        p = &p * &fa;
    }
}

/// Joint generalized eigenspaces of a commuting family, indexed by tuples of
/// cyclotomic factors. `hints` gives a multiple of each order when known.
pub fn eigenspace_decomposition(ops: &[QMatrix], hints: Option<&[u64]>) -> Result<EigenDecomposition> {
    let n = ops.first().map_or(0, |a| a.rows());
    if let Some(a) = ops.iter().find(|a| !a.is_square() || a.rows() != n) {
        return Err(Error::ArityMismatch { expected: n, found: a.rows() });
    }
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if !ops[i].commutes_with(&ops[j]) {
                return Err(Error::NonCommuting(i, j));
            }
        }
    }
    let mut orders = Vec::with_capacity(ops.len());
    let mut nilpotency = Vec::with_capacity(ops.len());
    for (i, a) in ops.iter().enumerate() {
        orders.push(quasi_unipotence_order(a, hints.and_then(|h| h.get(i).copied()))?);
        let jc = jordan_chevalley(a)?;
        nilpotency.push((&jc.u - &QMatrix::identity(n)).nilpotency_index().unwrap_or(0));
    }
    let mut current: Vec<(Vec<u64>, Subspace)> = vec![(vec![], Subspace::from_columns(&QMatrix::identity(n)))];
    for (a, &order) in ops.iter().zip(&orders) {
        let mut next = Vec::new();
        for d in divisors(order) {
            let e = generalized_kernel(a, &UPoly::cyclotomic(d));
            if e.dim() == 0 {
                continue;
            }
            for (f, s) in &current {
                let x = s.intersection(&e);
                if x.dim() > 0 {
                    let mut f = f.clone();
                    f.push(d);
                    next.push((f, x));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        current = next;
    }
    if n == 0 {
        current.clear();
    }
    let blocks: Vec<EigenBlock> = current.iter().map(|(f, s)| EigenBlock { factors: f.clone(), dim: s.dim() }).collect();
    let roots = (ops.len() == 1).then(|| {
        let mut out = Vec::new();
        for b in &blocks {
            let d = b.factors[0];
            let phi = euler_phi(d) as usize;
            for k in (0..d.max(1)).filter(|&k| num_integer::gcd(k, d) == 1 || d == 1) {
                out.push(RootDim { k, d, dim: b.dim / phi });
            }
        }
        out
    });
    Ok(EigenDecomposition {
        ambient: n,
        orders,
        blocks,
        spaces: current.into_iter().map(|(_, s)| s).collect(),
        nilpotency,
        roots,
    })
}

/// A single deck operator with its decomposition and eigen table.
#[derive(Clone, Debug, PartialEq)]
pub struct DeckDecomposition {
    pub operator: QMatrix,
    pub ss: QMatrix,
    pub u: QMatrix,
    pub order: u64,
    /// `d -> (rational dim of E_{Φ_d}, complex dim per primitive root)`.
    pub eigen_table: BTreeMap<u64, (usize, usize)>,
}

impl DeckDecomposition {
    pub fn new(a: &QMatrix, hint: Option<u64>) -> Result<Self> {
        let jc = jordan_chevalley(a)?;
        let eig = eigenspace_decomposition(std::slice::from_ref(a), hint.as_ref().map(std::slice::from_ref))?;
        let eigen_table = eig
            .blocks
            .iter()
            .map(|b| {
                let d = b.factors[0];
                (d, (b.dim, b.dim / euler_phi(d) as usize))
            })
            .collect();
        Ok(DeckDecomposition { operator: a.clone(), ss: jc.ss, u: jc.u, order: eig.orders[0], eigen_table })
    }

    pub fn to_json(&self) -> Value {
        let table: Vec<Value> = self
            .eigen_table
            .iter()
            .map(|(d, (dim, per_root))| json!({"cyclotomic": d, "dim": dim, "per_root": per_root}))
            .collect();
        json!({
            "order": self.order,
            "semisimple": matrix_to_json(&self.ss),
            "unipotent": matrix_to_json(&self.u),
            "eigen_table": table,
        })
    }
}

/// `log` of the deck action of `gamma` on a homology quotient. For `gamma`
/// outside the subgroup the unipotent part is used.
pub fn log_on_quotient(gamma: &[i64], hq: &HomologyQuotient) -> Result<QMatrix> {
    let a = hq.action(gamma);
    let n = a.rows();
    let u = if hq.subgroup().contains(gamma) { a } else { jordan_chevalley(&a)?.u };
    let depth = (&u - &QMatrix::identity(n)).nilpotency_index().unwrap_or(0).max(hq.m);
    Ok(log_unipotent(&u, depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ri;

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_i64_rows(rows)
    }

    fn companion(p: &UPoly) -> QMatrix {
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

    #[test]
    fn trivial_decompositions() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let jc = jordan_chevalley(&a).unwrap();
        assert!(jc.ss.is_identity());
        assert_eq!(jc.u, a);
        let b = m(&[&[1, 0], &[0, -1]]);
        let jc = jordan_chevalley(&b).unwrap();
        assert_eq!(jc.ss, b);
        assert!(jc.u.is_identity());
        assert_eq!(jordan_chevalley(&m(&[&[0]])), Err(Error::SingularOperator));
    }

    #[test]
    fn companion_of_mixed_factor() {
        // (x - 1)^2 (x + 1)
        let p = UPoly::from_i64(&[-1, 1]).pow(2).mul(&UPoly::from_i64(&[1, 1]));
        let a = companion(&p);
        let jc = jordan_chevalley(&a).unwrap();
        assert_eq!(jc.ss.minimal_polynomial(), UPoly::from_i64(&[-1, 0, 1]));
        assert!(jc.p.coeff(0).is_zero());
        assert_eq!(&jc.ss * &jc.u, a);
        assert!(jc.ss.commutes_with(&jc.u));
        assert_eq!(quasi_unipotence_order(&a, None).unwrap(), 2);
    }

    #[test]
    fn orders() {
        assert_eq!(quasi_unipotence_order(&m(&[&[1, 1], &[0, 1]]), None).unwrap(), 1);
        assert_eq!(quasi_unipotence_order(&m(&[&[1, 0], &[0, -1]]), None).unwrap(), 2);
        // companion of x^2 - x + 1 has order 6
        let c = companion(&UPoly::from_i64(&[1, -1, 1]));
        assert_eq!(quasi_unipotence_order(&c, None).unwrap(), 6);
        assert_eq!(quasi_unipotence_order(&c, Some(12)).unwrap(), 6);
        assert_eq!(quasi_unipotence_order(&c, Some(4)), Err(Error::NotQuasiUnipotent(4)));
        assert!(matches!(quasi_unipotence_order(&m(&[&[2]]), None), Err(Error::NotQuasiUnipotent(_))));
    }

    #[test]
    fn eigen_blocks() {
        let id = QMatrix::identity(3);
        let e = eigenspace_decomposition(&[id], None).unwrap();
        assert_eq!(e.blocks, vec![EigenBlock { factors: vec![1], dim: 3 }]);
        let b = m(&[&[1, 0], &[0, -1]]);
        let e = eigenspace_decomposition(std::slice::from_ref(&b), Some(&[2])).unwrap();
        assert_eq!(e.dim_of(&[1]), 1);
        assert_eq!(e.dim_of(&[2]), 1);
        let c = m(&[&[0, 1], &[1, 0]]);
        assert!(matches!(eigenspace_decomposition(&[b, c], None), Err(Error::NonCommuting(0, 1))));
    }

    #[test]
    fn joint_blocks_of_commuting_pair() {
        let a = QMatrix::from_i64_rows(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        let b = QMatrix::from_i64_rows(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]]);
        let e = eigenspace_decomposition(&[a, b], None).unwrap();
        assert_eq!(e.dim_of(&[1, 2]), 1);
        assert_eq!(e.dim_of(&[2, 1]), 1);
        assert_eq!(e.dim_of(&[2, 2]), 1);
        assert!(e.roots.is_none());
    }

    #[test]
    fn galois_split_of_sixth_roots() {
        let c = companion(&UPoly::from_i64(&[1, -1, 1]));
        let dd = DeckDecomposition::new(&c, Some(6)).unwrap();
        assert_eq!(dd.eigen_table.get(&6), Some(&(2, 1)));
        let e = eigenspace_decomposition(&[c], None).unwrap();
        assert_eq!(e.root_dim(1, 6), Some(1));
        assert_eq!(e.root_dim(5, 6), Some(1));
    }
}
