//! Dense matrices over the rationals and the handful of exact linear algebra
//! routines the rest of the crate is built on.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::UPoly;

pub type Rat = BigRational;

pub fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| ri(x)).collect()).collect())
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Rat>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rat>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j { x.is_one() } else { x.is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn commutes_with(&self, other: &QMatrix) -> bool {
        (self * other) == (other * self)
    }

    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = QMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn set_block(&mut self, row: usize, col: usize, block: &QMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row + i, col + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> QMatrix {
        let mut m = QMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(row + i, col + j)].clone();
            }
        }
        m
    }

    pub fn block_diagonal(blocks: &[QMatrix]) -> QMatrix {
        let r = blocks.iter().map(|b| b.rows).sum();
        let c = blocks.iter().map(|b| b.cols).sum();
        let mut m = QMatrix::zeros(r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            m.set_block(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        m
    }

    /// Reduced row echelon form; returns the reduced matrix and its pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let x = &m[(r, j)] * &inv;
                m[(r, j)] = x;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        if !m[(r, j)].is_zero() {
                            let x = &m[(r, j)] * &f;
                            m[(i, j)] -= x;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate on the thinner side
        if self.rows > self.cols {
            self.transpose().rref().1.len()
        } else {
            self.rref().1.len()
        }
    }

    /// Basis of the null space, as the columns of the returned matrix.
    pub fn kernel(&self) -> QMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = QMatrix::zeros(self.cols, free.len());
        for (idx, &f) in free.iter().enumerate() {
            k[(f, idx)] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                k[(p, idx)] = -r[(row, f)].clone();
            }
        }
        k
    }

    /// Basis of the column space, taken from the original pivot columns.
    pub fn column_space(&self) -> QMatrix {
        let (_, pivots) = self.rref();
        let cols: Vec<Vec<Rat>> = pivots.iter().map(|&j| self.column(j)).collect();
        QMatrix::from_columns(self.rows, &cols)
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&QMatrix::from_columns(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Solve `self * X = B` column by column.
    pub fn solve_matrix(&self, b: &QMatrix) -> Option<QMatrix> {
        assert_eq!(b.rows, self.rows);
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = QMatrix::zeros(self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = r[(row, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&QMatrix::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn determinant(&self) -> Rat {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if !m[(i, c)].is_zero() {
                    let f = &m[(i, c)] / &piv;
                    for j in c..n {
                        let x = &m[(c, j)] * &f;
                        m[(i, j)] -= x;
                    }
                }
            }
        }
        det
    }

    /// Smallest `k` with `self^k = 0`, or `None` if not nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Some(0);
        }
        let mut p = QMatrix::identity(n);
        for k in 0..=n {
            if p.is_zero() {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }

    pub fn eval_poly(&self, p: &UPoly) -> QMatrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = QMatrix::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = &acc * self;
            if !c.is_zero() {
                for i in 0..n {
                    acc[(i, i)] += c;
                }
            }
        }
        acc
    }

    /// Minimal polynomial, found as the first linear dependency among `I, A, A^2, ...`.
    pub fn minimal_polynomial(&self) -> UPoly {
        assert!(self.is_square());
        let n = self.rows;
        let mut basis = Subspace::new(n * n);
        let mut p = QMatrix::identity(n);
        loop {
            if let Some(coords) = basis.coordinates(&p.data) {
                let mut c: Vec<Rat> = coords.into_iter().map(|x| -x).collect();
                c.push(Rat::one());
                return UPoly::new(c);
            }
            basis.add(&p.data);
            p = &p * self;
        }
    }

    /// Characteristic polynomial `det(xI - A)` by Faddeev–LeVerrier.
    pub fn characteristic_polynomial(&self) -> UPoly {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut m = QMatrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            m = next;
            let am = self * &m;
            let tr: Rat = (0..n).map(|i| am[(i, i)].clone()).fold(Rat::zero(), |a, b| a + b);
            coeffs[n - k] = -tr / ri(k as i64);
        }
        UPoly::new(coeffs)
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of `k^n` kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    // echelon rows; pivots[i] is the pivot column of rows[i]
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    // original spanning vectors that produced each echelon row, kept for coordinates
    originals: Vec<Vec<Rat>>,
    // echelon row i = sum_j combos[i][j] * originals[j]
    combos: Vec<Vec<Rat>>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace { ambient, rows: vec![], pivots: vec![], originals: vec![], combos: vec![] }
    }

    pub fn from_vectors(ambient: usize, vs: &[Vec<Rat>]) -> Self {
        let mut s = Self::new(ambient);
        for v in vs {
            s.add(v);
        }
        s
    }

    pub fn from_columns(m: &QMatrix) -> Self {
        Self::from_vectors(m.rows(), &m.columns())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    // Reduce v against echelon rows; returns the residual and the combination used.
    fn reduce(&self, v: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        let mut r = v.to_vec();
        let mut used = vec![Rat::zero(); self.originals.len()];
        for (idx, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (u, c) in used.iter_mut().zip(&self.combos[idx]) {
                if !c.is_zero() {
                    *u += &f * c;
                }
            }
        }
        (r, used)
    }

    /// Adds a vector; returns true if the dimension grew.
    pub fn add(&mut self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let (mut r, used) = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        // new row = (v - sum used_j orig_j) * inv
        let n_orig = self.originals.len();
        let mut combo: Vec<Rat> = used.iter().map(|u| -u * &inv).collect();
        combo.push(inv);
        for c in self.combos.iter_mut() {
            c.push(Rat::zero());
        }
        self.originals.push(v.to_vec());
        // back-substitute to keep reduced form
        for i in 0..self.rows.len() {
            let f = self.rows[i][p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in self.rows[i].iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for j in 0..=n_orig {
                let d = &f * &combo[j];
                self.combos[i][j] -= d;
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(pos, r);
        self.pivots.insert(pos, p);
        self.combos.insert(pos, combo);
        true
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).0.iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` with respect to the spanning vectors that were
    /// added (redundant additions get coefficient zero).
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let (r, used) = self.reduce(v);
        if r.iter().all(|x| x.is_zero()) { Some(used) } else { None }
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::from_columns(self.ambient, &self.rows)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = Subspace::from_vectors(self.ambient, &self.rows);
        for v in &other.rows {
            s.add(v);
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // solve a·A = b·B for the stacked basis
        let a = self.basis_matrix();
        let b = other.basis_matrix();
        let k = a.hstack(&(-&b)).kernel();
        let mut s = Subspace::new(self.ambient);
        for j in 0..k.cols() {
            let coeffs: Vec<Rat> = (0..a.cols()).map(|i| k[(i, j)].clone()).collect();
            s.add(&a.apply(&coeffs));
        }
        s
    }

    pub fn image_under(&self, m: &QMatrix) -> Subspace {
        Subspace::from_vectors(m.rows(), &self.rows.iter().map(|v| m.apply(v)).collect::<Vec<_>>())
    }

    pub fn is_invariant_under(&self, m: &QMatrix) -> bool {
        self.rows.iter().all(|v| self.contains(&m.apply(v)))
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }
}

/// A quotient `Z / B` of subspaces of `k^n` (with `B ⊆ Z`), with an explicit
/// basis of representatives.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    boundaries: Subspace,
    // boundaries extended by reps, in that order
    full: Subspace,
    reps: Vec<Vec<Rat>>,
}

impl Subquotient {
    pub fn new(cycles: &Subspace, boundaries: Subspace) -> Self {
        let mut full = Subspace::from_vectors(cycles.ambient(), boundaries.basis());
        let mut reps = Vec::new();
        for v in cycles.basis() {
            if full.add(v) {
                reps.push(v.clone());
            }
        }
        Subquotient { ambient: cycles.ambient(), boundaries, full, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn representatives(&self) -> &[Vec<Rat>] {
        &self.reps
    }

    pub fn boundaries(&self) -> &Subspace {
        &self.boundaries
    }

    /// Class of a cycle in the chosen basis; `None` if `v` is not a cycle.
    pub fn class_of(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let coords = self.full.coordinates(v)?;
        let nb = self.full.originals.len() - self.reps.len();
        Some(coords[nb..].to_vec())
    }

    pub fn is_zero_class(&self, v: &[Rat]) -> bool {
        self.boundaries.contains(v)
    }

    /// Matrix of the map induced by `op` (which must preserve cycles and boundaries).
    pub fn induced(&self, op: &QMatrix) -> Option<QMatrix> {
        let cols: Option<Vec<Vec<Rat>>> = self.reps.iter().map(|v| self.class_of(&op.apply(v))).collect();
        Some(QMatrix::from_columns(self.dim(), &cols?))
    }

    /// Matrix of the map to another subquotient induced by `map`.
    pub fn induced_to(&self, target: &Subquotient, map: &QMatrix) -> Option<QMatrix> {
        let cols: Option<Vec<Vec<Rat>>> = self.reps.iter().map(|v| target.class_of(&map.apply(v))).collect();
        Some(QMatrix::from_columns(target.dim(), &cols?))
    }
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

pub fn abs_rat(x: &Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let m = QMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.cols(), 2);
        assert!((&m * &k).is_zero());
    }

    #[test]
    fn inverse_and_det() {
        let m = QMatrix::from_i64_rows(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant(), ri(1));
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!(QMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn characteristic_and_minimal_polynomials() {
        // companion of (x-1)^2 (x+1) = x^3 - x^2 - x + 1
        let c = QMatrix::from_i64_rows(&[&[0, 0, -1], &[1, 0, 1], &[0, 1, 1]]);
        let chi = c.characteristic_polynomial();
        assert_eq!(chi, UPoly::from_i64(&[1, -1, -1, 1]));
        assert_eq!(c.minimal_polynomial(), chi);
        assert!(c.eval_poly(&chi).is_zero());
        let id = QMatrix::identity(3);
        assert_eq!(id.minimal_polynomial(), UPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn subspace_ops() {
        let a = Subspace::from_vectors(3, &[vec![ri(1), ri(0), ri(0)], vec![ri(0), ri(1), ri(0)]]);
        let b = Subspace::from_vectors(3, &[vec![ri(0), ri(1), ri(1)], vec![ri(1), ri(1), ri(0)]]);
        assert_eq!(a.intersection(&b).dim(), 1);
        assert_eq!(a.sum(&b).dim(), 3);
        let c = a.coordinates(&[ri(3), ri(-2), ri(0)]).unwrap();
        assert_eq!(c, vec![ri(3), ri(-2)]);
        assert!(a.coordinates(&[ri(0), ri(0), ri(1)]).is_none());
    }

    #[test]
    fn subquotient_classes() {
        let z = Subspace::from_vectors(2, &[vec![ri(1), ri(0)], vec![ri(0), ri(1)]]);
        let b = Subspace::from_vectors(2, &[vec![ri(1), ri(1)]]);
        let h = Subquotient::new(&z, b);
        assert_eq!(h.dim(), 1);
        let c1 = h.class_of(&[ri(1), ri(0)]).unwrap();
        let c2 = h.class_of(&[ri(0), ri(-1)]).unwrap();
        assert_eq!(c1, c2);
        assert!(h.is_zero_class(&[ri(2), ri(2)]));
    }
}
