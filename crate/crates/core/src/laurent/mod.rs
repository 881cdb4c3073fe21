//! Laurent polynomials over the rationals, finite-index subgroups of `Z^g`
//! and the quotient algebras `R / (m_H R)^m`.

mod matrix;
mod quotient;
mod snf;
mod subgroup;

pub use matrix::LaurentMatrix;
pub use quotient::{grlex_monomials, BasisLabel, QuotientAlgebra};
pub use snf::{laurent_snf, normalized_upoly, SmithForm};
pub(crate) use quotient::TruncMonomials;
pub use subgroup::SubgroupSpec;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{ri, Rat};
use crate::poly::UPoly;

/// An element of `Q[t_1^±1, ..., t_g^±1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exps: Vec<i64>, c: Rat) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// `t^e` with coefficient one.
    pub fn t_pow(exps: &[i64]) -> Self {
        Self::monomial(exps.to_vec(), Rat::one())
    }

    /// The variable `t_i`.
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::t_pow(&e)
    }

    /// Builds from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i64>, Rat)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Univariate shorthand: `coeffs[i]` is the coefficient of `t^(low + i)`.
    pub fn univariate(low: i64, coeffs: &[i64]) -> Self {
        let mut p = Self::zero(1);
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(vec![low + i as i64], ri(c));
        }
        p
    }

    pub fn from_upoly(p: &UPoly) -> Self {
        let mut q = Self::zero(1);
        for (i, c) in p.coeffs().iter().enumerate() {
            q.add_term(vec![i as i64], c.clone());
        }
        q
    }

    /// For `g = 1`: returns `(k, f)` with `self = t^k f`, `f` a polynomial with `f(0) != 0`.
    pub fn to_upoly_shifted(&self) -> Result<(i64, UPoly)> {
        if self.nvars != 1 {
            return Err(Error::MultivariateInput(self.nvars));
        }
        let Some(low) = self.terms.keys().next().map(|e| e[0]) else {
            return Ok((0, UPoly::zero()));
        };
        let high = self.terms.keys().next_back().unwrap()[0];
        let mut c = vec![Rat::zero(); (high - low + 1) as usize];
        for (e, a) in &self.terms {
            c[(e[0] - low) as usize] = a.clone();
        }
        Ok((low, UPoly::new(c)))
    }

    pub fn add_term(&mut self, e: Vec<i64>, c: Rat) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[i64]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&vec![0; self.nvars]).is_one()
    }

    /// Units of the Laurent ring are exactly the nonzero monomials `c t^e`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// Evaluation at `t_1 = ... = t_g = 1`.
    pub fn augment(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |a, b| a + b)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    /// Multiply by `t^e`.
    pub fn shift(&self, e: &[i64]) -> Self {
        assert_eq!(e.len(), self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(x, a)| (x.iter().zip(e).map(|(p, q)| p + q).collect(), a.clone()))
                .collect(),
        }
    }

    /// The involution `t_i -> t_i^{-1}`.
    pub fn conj(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.iter().map(|x| -x).collect(), a.clone())).collect(),
        }
    }

    /// Ring map induced by `t_i -> t^{rho[.][i]}`, where `rho` is a
    /// `target_vars x nvars` integer matrix.
    pub fn substitute(&self, rho: &[Vec<i64>]) -> Result<Self> {
        let target = rho.len();
        if rho.iter().any(|r| r.len() != self.nvars) {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: rho.first().map_or(0, |r| r.len()),
            });
        }
        let mut out = Self::zero(target);
        for (e, a) in &self.terms {
            let img: Vec<i64> = (0..target).map(|j| (0..self.nvars).map(|i| rho[j][i] * e[i]).sum()).collect();
            out.add_term(img, a.clone());
        }
        Ok(out)
    }

    /// Integer power; negative exponents only for units.
    pub fn pow(&self, e: i64) -> Option<Self> {
        if e < 0 {
            if !self.is_unit() {
                return None;
            }
            let (x, a) = self.terms.iter().next().unwrap();
            let inv = LaurentPoly::monomial(x.iter().map(|v| -v).collect(), a.recip());
            return inv.pow(-e);
        }
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        Some(acc)
    }

    pub fn inverse_unit(&self) -> Option<Self> {
        self.pow(-1)
    }

    /// Componentwise minimum and maximum exponents, if nonzero.
    pub fn exponent_bounds(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let (mut lo, mut hi) = (first.clone(), first.clone());
        for e in it {
            for i in 0..self.nvars {
                lo[i] = lo[i].min(e[i]);
                hi[i] = hi[i].max(e[i]);
            }
        }
        Some((lo, hi))
    }

    /// `max - min` of the (single) exponent; `g = 1` only.
    pub fn span(&self) -> Option<i64> {
        let (lo, hi) = self.exponent_bounds()?;
        Some(hi[0] - lo[0])
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| serde_json::json!([e, c.numer().to_string(), c.denom().to_string()]))
            .collect();
        serde_json::json!({ "nvars": self.nvars, "terms": terms })
    }

    fn check_arity(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "Laurent polynomials with different numbers of variables");
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_arity(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_arity(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_arity(rhs);
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rat::one())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c < &Rat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let is_const = e.iter().all(|&x| x == 0);
            if is_const || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            let mut need_sep = !is_const && !abs.is_one();
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if need_sep {
                    write!(f, "*")?;
                }
                need_sep = true;
                let name = if self.nvars == 1 { "t".to_string() } else { format!("t{}", i + 1) };
                if x == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{x}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Free function form of [`LaurentPoly::augment`].
pub fn augment(p: &LaurentPoly) -> Rat {
    p.augment()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn augmentation_examples() {
        let p = LaurentPoly::from_terms(2, [(vec![1, -1], ri(2)), (vec![0, 0], ri(-3))]).unwrap();
        assert_eq!(p.augment(), ri(-1));
        assert_eq!(LaurentPoly::univariate(0, &[-1, 1]).augment(), ri(0));
        assert_eq!(LaurentPoly::univariate(0, &[1, -1, 1]).augment(), ri(1));
    }

    #[test]
    fn arithmetic() {
        let a = LaurentPoly::univariate(-1, &[1, 0, 1]);
        let b = LaurentPoly::univariate(0, &[-1, 1]);
        let ab = &a * &b;
        assert_eq!(ab, LaurentPoly::univariate(-1, &[-1, 1, -1, 1]));
        assert!((&ab - &ab).is_zero());
        assert_eq!(a.conj(), a);
        let u = LaurentPoly::monomial(vec![3], rat(2, 3));
        assert!((&u * &u.inverse_unit().unwrap()).is_one());
        assert!(b.pow(-1).is_none());
    }

    #[test]
    fn substitution() {
        let p = LaurentPoly::univariate(0, &[-1, 1]);
        let q = p.substitute(&[vec![1], vec![1]]).unwrap();
        assert_eq!(q.to_string(), "t1*t2 - 1");
        let z = p.substitute(&[vec![0]]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn upoly_round_trip() {
        let p = LaurentPoly::univariate(-2, &[3, 0, 1]);
        let (k, f) = p.to_upoly_shifted().unwrap();
        assert_eq!(k, -2);
        assert_eq!(LaurentPoly::from_upoly(&f).shift(&[k]), p);
    }
}
