use std::fmt;
use std::ops::{Index, IndexMut};

use super::LaurentPoly;
use crate::error::{Error, Result};

/// A dense matrix with Laurent polynomial entries.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        LaurentMatrix { rows, cols, nvars, data: vec![LaurentPoly::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one(nvars);
        }
        m
    }

    /// Builds from rows; `nvars` is needed to type empty matrices.
    pub fn from_rows(nvars: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        for p in rows.iter().flatten() {
            if p.nvars() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: p.nvars() });
            }
        }
        Ok(LaurentMatrix { rows: r, cols: c, nvars, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_columns(rows: usize, nvars: usize, cols: &[Vec<LaurentPoly>]) -> Self {
        let mut m = Self::zeros(rows, cols.len(), nvars);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, p) in c.iter().enumerate() {
                m[(i, j)] = p.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<LaurentPoly> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in Laurent matrix product");
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Self::zeros(self.rows, rhs.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] = &out[(i, j)] + &p;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = LaurentPoly::zero(self.nvars);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn hstack(&self, other: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::from_columns(self.rows, self.nvars, &cols)
    }

    /// Apply a ring map `t_i -> t^{rho[.][i]}` entrywise.
    pub fn substitute(&self, rho: &[Vec<i64>]) -> Result<LaurentMatrix> {
        let data: Vec<LaurentPoly> = self.data.iter().map(|p| p.substitute(rho)).collect::<Result<_>>()?;
        Ok(LaurentMatrix { rows: self.rows, cols: self.cols, nvars: rho.len(), data })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<serde_json::Value>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|p| p.to_json()).collect()).collect();
        serde_json::json!({ "rows": self.rows, "cols": self.cols, "entries": rows })
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row_i += q * row_k
    pub(crate) fn add_row_multiple(&mut self, i: usize, k: usize, q: &LaurentPoly) {
        for j in 0..self.cols {
            let x = &self[(k, j)] * q;
            if !x.is_zero() {
                self[(i, j)] = &self[(i, j)] + &x;
            }
        }
    }

    /// col_j += q * col_k
    pub(crate) fn add_col_multiple(&mut self, j: usize, k: usize, q: &LaurentPoly) {
        for i in 0..self.rows {
            let x = &self[(i, k)] * q;
            if !x.is_zero() {
                self[(i, j)] = &self[(i, j)] + &x;
            }
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, q: &LaurentPoly) {
        for j in 0..self.cols {
            self[(i, j)] = &self[(i, j)] * q;
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, q: &LaurentPoly) {
        for i in 0..self.rows {
            self[(i, j)] = &self[(i, j)] * q;
        }
    }
}

impl Index<(usize, usize)> for LaurentMatrix {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for LaurentMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LaurentMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
