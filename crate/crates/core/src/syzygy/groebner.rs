//! Buchberger's algorithm for submodules of `Q[x_1..x_g]^n`, position over
//! term with graded reverse lexicographic order on monomials.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rat;

/// Cooperative cancellation: a shared flag plus an optional deadline.
#[derive(Clone, Debug, Default)]
pub struct CancelToken {
    flag: Arc<AtomicBool>,
    deadline: Option<Instant>,
}

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        CancelToken { flag: Arc::default(), deadline: Some(Instant::now() + timeout) }
    }

    pub fn cancel(&self) {
        self.flag.store(true, AtomicOrdering::SeqCst);
    }

    pub fn is_cancelled(&self) -> bool {
        self.flag.load(AtomicOrdering::SeqCst) || self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn check(&self) -> Result<()> {
        if self.is_cancelled() { Err(Error::Cancelled) } else { Ok(()) }
    }
}

/// A term position: component index and exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Key {
    pub pos: usize,
    pub exp: Vec<u32>,
}

pub(crate) fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        // lower positions dominate
        other.pos.cmp(&self.pos).then_with(|| grevlex(&self.exp, &other.exp))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A vector in `Q[x]^n`, stored sparsely in term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MVec {
    pub(crate) terms: BTreeMap<Key, Rat>,
}

impl MVec {
    pub fn zero() -> Self {
        MVec { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: Key, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
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

    pub fn leading(&self) -> Option<(&Key, &Rat)> {
        self.terms.last_key_value()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Rat)> {
        self.terms.iter()
    }

    /// `self += c * x^shift * other`
    pub fn add_scaled(&mut self, c: &Rat, shift: &[u32], other: &MVec) {
        for (k, v) in &other.terms {
            let exp = k.exp.iter().zip(shift).map(|(a, b)| a + b).collect();
            self.add_term(Key { pos: k.pos, exp }, c * v);
        }
    }

    pub fn make_monic(&mut self) {
        if let Some((_, lc)) = self.leading() {
            let inv = lc.recip();
            for v in self.terms.values_mut() {
                *v *= &inv;
            }
        }
    }

    /// Smallest component index with a nonzero entry.
    pub fn lead_pos(&self) -> Option<usize> {
        self.leading().map(|(k, _)| k.pos)
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Full reduction of `v` modulo `basis` (whose elements must be monic).
pub fn reduce(v: &MVec, basis: &[MVec]) -> MVec {
    let mut rest = v.clone();
    let mut out = MVec::zero();
    while let Some((k, c)) = rest.terms.pop_last() {
        let hit = basis.iter().find(|b| {
            let (bk, _) = b.leading().expect("nonzero basis element");
            bk.pos == k.pos && divides(&bk.exp, &k.exp)
        });
        match hit {
            Some(b) => {
                let (bk, _) = b.leading().unwrap();
                let shift = diff(&k.exp, &bk.exp);
                // the leading term cancels against the popped one
                let mut tail = b.clone();
                tail.terms.pop_last();
                rest.add_scaled(&-c, &shift, &tail);
            }
            None => {
                out.terms.insert(k, c);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Pair {
    lcm: Vec<u32>,
    i: usize,
    j: usize,
}

impl Ord for Pair {
    fn cmp(&self, o: &Self) -> Ordering {
        grevlex(&self.lcm, &o.lcm).then(self.j.cmp(&o.j)).then(self.i.cmp(&o.i))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn groebner_basis(gens: &[MVec], token: &CancelToken) -> Result<Vec<MVec>> {
    let mut basis: Vec<MVec> = Vec::new();
    let mut pending: BTreeSet<Pair> = BTreeSet::new();
    // module rank-1 inputs are ideals; only there do coprime leading terms certify a pair
    let ideal = gens.iter().flat_map(|g| g.terms.keys().map(|k| k.pos)).all(|p| p == 0);

    let insert = |basis: &mut Vec<MVec>, pending: &mut BTreeSet<Pair>, mut f: MVec| {
        f.make_monic();
        let idx = basis.len();
        let (fk, _) = f.leading().unwrap();
        for (i, b) in basis.iter().enumerate() {
            let (bk, _) = b.leading().unwrap();
            if bk.pos == fk.pos {
                pending.insert(Pair { lcm: lcm(&bk.exp, &fk.exp), i, j: idx });
            }
        }
        basis.push(f);
    };

    for g in gens {
        token.check()?;
        let r = reduce(g, &basis);
        if !r.is_zero() {
            insert(&mut basis, &mut pending, r);
        }
    }

    while let Some(p) = pending.pop_first() {
        token.check()?;
        let (ki, _) = basis[p.i].leading().unwrap();
        let (kj, _) = basis[p.j].leading().unwrap();
        if ideal && ki.exp.iter().zip(&kj.exp).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        if chain_criterion(&p, &basis, &pending) {
            continue;
        }
        let mut s = MVec::zero();
        s.add_scaled(&Rat::one(), &diff(&p.lcm, &ki.exp), &basis[p.i]);
        s.add_scaled(&-Rat::one(), &diff(&p.lcm, &kj.exp), &basis[p.j]);
        let r = reduce(&s, &basis);
        if !r.is_zero() {
            insert(&mut basis, &mut pending, r);
        }
    }
    Ok(interreduce(basis))
}

// Skip (i, j) if some k has lm(k) | lcm(i, j) and neither (i, k) nor (j, k) is pending.
fn chain_criterion(p: &Pair, basis: &[MVec], pending: &BTreeSet<Pair>) -> bool {
    let pos = basis[p.i].lead_pos();
    let is_pending = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let (ka, _) = basis[a].leading().unwrap();
        let (kb, _) = basis[b].leading().unwrap();
        pending.contains(&Pair { lcm: lcm(&ka.exp, &kb.exp), i: a, j: b })
    };
    basis.iter().enumerate().any(|(k, b)| {
        if k == p.i || k == p.j || b.lead_pos() != pos {
            return false;
        }
        let (bk, _) = b.leading().unwrap();
        divides(&bk.exp, &p.lcm) && bk.exp != p.lcm && !is_pending(p.i, k) && !is_pending(p.j, k)
    })
}

fn interreduce(basis: Vec<MVec>) -> Vec<MVec> {
    // drop elements whose leading term is divisible by another's
    let mut keep: Vec<MVec> = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let (bk, _) = b.leading().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, o)| {
            if i == j {
                return false;
            }
            let (ok, _) = o.leading().unwrap();
            ok.pos == bk.pos && divides(&ok.exp, &bk.exp) && (ok.exp != bk.exp || j < i)
        });
        if !redundant {
            keep.push(b.clone());
        }
    }
    let n = keep.len();
    for i in 0..n {
        let others: Vec<MVec> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, b)| b.clone()).collect();
        let mut r = reduce(&keep[i], &others);
        r.make_monic();
        keep[i] = r;
    }
    keep.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    keep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ri;

    fn poly(terms: &[(&[u32], i64)]) -> MVec {
        let mut v = MVec::zero();
        for (e, c) in terms {
            v.add_term(Key { pos: 0, exp: e.to_vec() }, ri(*c));
        }
        v
    }

    #[test]
    fn term_order() {
        let a = Key { pos: 0, exp: vec![1, 0] };
        let b = Key { pos: 0, exp: vec![0, 1] };
        let c = Key { pos: 1, exp: vec![5, 5] };
        assert!(a > b);
        assert!(b > c);
        assert_eq!(grevlex(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
    }

    #[test]
    fn ideal_basis() {
        // <x^2 - y, xy - 1> contains y^2 - x
        let f = poly(&[(&[2, 0], 1), (&[0, 1], -1)]);
        let g = poly(&[(&[1, 1], 1), (&[0, 0], -1)]);
        let gb = groebner_basis(&[f, g], &CancelToken::new()).unwrap();
        let h = poly(&[(&[0, 2], 1), (&[1, 0], -1)]);
        assert!(reduce(&h, &gb).is_zero());
        assert!(!reduce(&poly(&[(&[1, 0], 1)]), &gb).is_zero());
    }

    #[test]
    fn cancellation() {
        let t = CancelToken::new();
        t.cancel();
        assert_eq!(groebner_basis(&[poly(&[(&[1, 0], 1)])], &t), Err(Error::Cancelled));
    }
}
