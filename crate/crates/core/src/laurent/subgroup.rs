use num_integer::Integer;

use crate::error::{Error, Result};

/// A finite-index subgroup `H <= Z^g`, given by generating columns.
///
/// The basis is normalized to an upper-triangular Hermite form: column `j`
/// has support in rows `0..=j`, positive diagonal `d_j`, and entries
/// above the diagonal in row `i` reduced into `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupSpec {
    input: Vec<Vec<i64>>,
    hnf: Vec<Vec<i64>>,
}

impl SubgroupSpec {
    /// `basis` is a `g x g` matrix given as rows; its columns generate `H`.
    pub fn new(basis: Vec<Vec<i64>>) -> Result<Self> {
        let g = basis.len();
        if basis.iter().any(|r| r.len() != g) {
            return Err(Error::InvalidInput("subgroup basis must be a square matrix".into()));
        }
        let hnf = hermite(&basis).ok_or(Error::SingularSubgroup)?;
        Ok(SubgroupSpec { input: basis, hnf })
    }

    /// The full group `Z^g`.
    pub fn full(g: usize) -> Self {
        let id: Vec<Vec<i64>> = (0..g).map(|i| (0..g).map(|j| i64::from(i == j)).collect()).collect();
        SubgroupSpec { input: id.clone(), hnf: id }
    }

    /// `n Z^g`.
    pub fn scalar(g: usize, n: i64) -> Result<Self> {
        Self::new((0..g).map(|i| (0..g).map(|j| if i == j { n } else { 0 }).collect()).collect())
    }

    /// For `g = 1`: the subgroup `<t^n>`.
    pub fn cyclic(n: i64) -> Result<Self> {
        Self::new(vec![vec![n]])
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    /// Input basis as rows.
    pub fn input_basis(&self) -> &[Vec<i64>] {
        &self.input
    }

    /// Normalized basis as rows.
    pub fn hnf(&self) -> &[Vec<i64>] {
        &self.hnf
    }

    /// The `j`-th normalized generator `h_j` (a column).
    pub fn generator(&self, j: usize) -> Vec<i64> {
        self.hnf.iter().map(|r| r[j]).collect()
    }

    pub fn generators(&self) -> Vec<Vec<i64>> {
        (0..self.rank()).map(|j| self.generator(j)).collect()
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rank()).map(|i| self.hnf[i][i]).collect()
    }

    pub fn index(&self) -> u64 {
        self.diagonal().iter().map(|&d| d as u64).product()
    }

    /// Coset representatives: the box `0 <= r_i < d_i`, lexicographic.
    pub fn coset_reps(&self) -> Vec<Vec<i64>> {
        let d = self.diagonal();
        let mut out = vec![vec![]];
        for &di in &d {
            let mut next = Vec::with_capacity(out.len() * di as usize);
            for p in &out {
                for x in 0..di {
                    let mut q = p.clone();
                    q.push(x);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }

    /// Position of a box representative in [`coset_reps`](Self::coset_reps).
    pub fn coset_index(&self, r: &[i64]) -> usize {
        let d = self.diagonal();
        r.iter().zip(&d).fold(0usize, |acc, (&x, &di)| acc * di as usize + x as usize)
    }

    /// Writes `e = r + sum_j c_j h_j` with `r` in the coset box.
    pub fn decompose(&self, e: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let g = self.rank();
        assert_eq!(e.len(), g);
        let mut r = e.to_vec();
        let mut c = vec![0; g];
        for j in (0..g).rev() {
            let d = self.hnf[j][j];
            let q = r[j].div_euclid(d);
            c[j] = q;
            if q != 0 {
                for i in 0..=j {
                    r[i] -= q * self.hnf[i][j];
                }
            }
        }
        (r, c)
    }

    pub fn contains(&self, e: &[i64]) -> bool {
        self.decompose(e).0.iter().all(|&x| x == 0)
    }

    pub fn is_subgroup_of(&self, other: &SubgroupSpec) -> bool {
        self.rank() == other.rank() && self.generators().iter().all(|h| other.contains(h))
    }

    /// Exponent of the finite group `Z^g / H`.
    pub fn exponent(&self) -> u64 {
        let g = self.rank();
        let mut n = 1u64;
        for k in 0..g {
            let mut e = vec![0; g];
            let mut ord = 1u64;
            loop {
                e[k] = ord as i64;
                if self.contains(&e) {
                    break;
                }
                ord += 1;
            }
            n = n.lcm(&ord);
        }
        n
    }
}

// Column-style Hermite normal form. Returns None for singular input.
fn hermite(rows: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let g = rows.len();
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let col_op = |a: &mut Vec<Vec<i128>>, j: usize, k: usize, q: i128| {
        // col_j -= q * col_k
        for row in a.iter_mut() {
            row[j] -= q * row[k];
        }
    };
    for i in (0..g).rev() {
        // clear row i in columns 0..i into column i
        loop {
            let nz: Vec<usize> = (0..=i).filter(|&j| a[i][j] != 0).collect();
            if nz.is_empty() {
                return None;
            }
            if nz.len() == 1 {
                let j = nz[0];
                if j != i {
                    for row in a.iter_mut() {
                        row.swap(i, j);
                    }
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| a[i][j].abs()).unwrap();
            for &j in &nz {
                if j != p {
                    let q = a[i][j].div_euclid(a[i][p]);
                    col_op(&mut a, j, p, q);
                }
            }
        }
        if a[i][i] < 0 {
            for row in a.iter_mut() {
                row[i] = -row[i];
            }
        }
    }
    for j in 1..g {
        for i in (0..j).rev() {
            let q = a[i][j].div_euclid(a[i][i]);
            if q != 0 {
                col_op(&mut a, j, i, q);
            }
        }
    }
    Some(a.into_iter().map(|r| r.into_iter().map(|x| i64::try_from(x).expect("subgroup entries overflow")).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_shape_and_index() {
        let h = SubgroupSpec::new(vec![vec![2, 1], vec![0, 3]]).unwrap();
        assert_eq!(h.index(), 6);
        let n = h.hnf();
        assert_eq!(n[1][0], 0);
        assert!(n[0][1] >= 0 && n[0][1] < n[0][0]);
        assert!(h.contains(&[2, 0]) && h.contains(&[1, 3]) && !h.contains(&[1, 0]));
        assert_eq!(h.exponent(), 6);
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(SubgroupSpec::new(vec![vec![1, 2], vec![2, 4]]), Err(Error::SingularSubgroup));
    }

    #[test]
    fn decomposition_round_trip() {
        let h = SubgroupSpec::new(vec![vec![3, -1, 0], vec![1, 2, 1], vec![0, 0, 2]]).unwrap();
        let reps = h.coset_reps();
        assert_eq!(reps.len() as u64, h.index());
        for e in [[5, -7, 3], [0, 0, 0], [-1, 4, -9]] {
            let (r, c) = h.decompose(&e);
            let mut back = r.clone();
            for (j, cj) in c.iter().enumerate() {
                for (b, x) in back.iter_mut().zip(h.generator(j)) {
                    *b += cj * x;
                }
            }
            assert_eq!(back, e.to_vec());
            assert_eq!(reps[h.coset_index(&r)], r);
        }
    }
}
