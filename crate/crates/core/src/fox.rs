//! Group presentations with a homomorphism to `Z^g`, Fox derivatives, and
//! the chain complex of the associated abelian cover of the presentation
//! 2-complex.

use serde_json::{json, Value};

use crate::chain::FreeChainComplex;
use crate::error::{Error, Result};
use crate::format::{int_matrix_from_json, int_vec_from_json};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::linalg::ri;

/// A word: nonzero signed 1-based generator indices (`-k` is the inverse of generator `k`).
pub type Word = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    /// `phi[i]` is the image of generator `i` in `Z^g`.
    pub phi: Vec<Vec<i64>>,
    nvars: usize,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>, phi: Vec<Vec<i64>>) -> Result<Self> {
        if phi.len() != generators.len() {
            return Err(Error::InvalidInput(format!(
                "phi has {} entries for {} generators",
                phi.len(),
                generators.len()
            )));
        }
        let nvars = phi.first().map_or(0, |v| v.len());
        if let Some(v) = phi.iter().find(|v| v.len() != nvars) {
            return Err(Error::ArityMismatch { expected: nvars, found: v.len() });
        }
        let p = Presentation { generators, relators, phi, nvars };
        for (k, r) in p.relators.iter().enumerate() {
            if p.word_image(r)?.iter().any(|&x| x != 0) {
                return Err(Error::IncompatiblePhi(k + 1));
            }
        }
        if !lattice_is_full(&p.phi, nvars) {
            return Err(Error::NonSurjectivePhi(nvars));
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn letter(&self, l: i64) -> Result<(usize, i64)> {
        let k = l.unsigned_abs() as usize;
        if l == 0 || k > self.generators.len() {
            return Err(Error::UnknownGenerator(l.to_string()));
        }
        Ok((k - 1, l.signum()))
    }

    /// Image of a word in `Z^g`.
    pub fn word_image(&self, w: &[i64]) -> Result<Vec<i64>> {
        let mut e = vec![0; self.nvars];
        for &l in w {
            let (k, s) = self.letter(l)?;
            for (a, b) in e.iter_mut().zip(&self.phi[k]) {
                *a += s * b;
            }
        }
        Ok(e)
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators.iter().position(|g| g == name).ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    /// `∂w/∂x_k` mapped to the Laurent ring through `phi` (`k` is 0-based).
    pub fn fox_derivative(&self, w: &[i64], k: usize) -> Result<LaurentPoly> {
        if k >= self.generators.len() {
            return Err(Error::UnknownGenerator((k + 1).to_string()));
        }
        let mut prefix = vec![0; self.nvars];
        let mut out = LaurentPoly::zero(self.nvars);
        for &l in w {
            let (i, s) = self.letter(l)?;
            if s < 0 {
                for (a, b) in prefix.iter_mut().zip(&self.phi[i]) {
                    *a -= b;
                }
            }
            if i == k {
                out.add_term(prefix.clone(), ri(s));
            }
            if s > 0 {
                for (a, b) in prefix.iter_mut().zip(&self.phi[i]) {
                    *a += b;
                }
            }
        }
        Ok(out)
    }

    /// `R^{#relators} --d2--> R^{#generators} --d1--> R`, degrees 2, 1, 0.
    pub fn complex(&self) -> Result<FreeChainComplex> {
        let g = self.nvars;
        let n = self.generators.len();
        let r = self.relators.len();
        let one = LaurentPoly::one(g);
        let d1_row: Vec<LaurentPoly> = self.phi.iter().map(|e| &LaurentPoly::t_pow(e) - &one).collect();
        let d1 = if n == 0 { LaurentMatrix::zeros(1, 0, g) } else { LaurentMatrix::from_rows(g, vec![d1_row])? };
        let mut d2 = LaurentMatrix::zeros(n, r, g);
        for (k, w) in self.relators.iter().enumerate() {
            for i in 0..n {
                d2[(i, k)] = self.fox_derivative(w, i)?;
            }
        }
        FreeChainComplex::new(g, 0, vec![1, n, r], vec![d1, d2])
    }

    /// Adds a generator `y` with relator `y w^{-1}`.
    pub fn with_redundant_generator(&self, name: &str, w: &[i64]) -> Result<Presentation> {
        let mut gens = self.generators.clone();
        gens.push(name.to_string());
        let y = gens.len() as i64;
        let mut rel = vec![y];
        rel.extend(w.iter().rev().map(|l| -l));
        let mut relators = self.relators.clone();
        relators.push(rel);
        let mut phi = self.phi.clone();
        phi.push(self.word_image(w)?);
        Presentation::new(gens, relators, phi)
    }

    /// Same group with every `phi` value replaced by `rho * phi`.
    pub fn with_phi(&self, phi: Vec<Vec<i64>>) -> Result<Presentation> {
        Presentation::new(self.generators.clone(), self.relators.clone(), phi)
    }

    pub fn from_json(v: &Value) -> Result<Presentation> {
        let gens: Vec<String> = v
            .get("generators")
            .and_then(|g| g.as_array())
            .ok_or_else(|| Error::InvalidInput("presentation needs \"generators\"".into()))?
            .iter()
            .map(|g| g.as_str().map(String::from).ok_or_else(|| Error::InvalidInput("generator names must be strings".into())))
            .collect::<Result<_>>()?;
        let relators = match v.get("relators") {
            Some(r) => r
                .as_array()
                .ok_or_else(|| Error::InvalidInput("\"relators\" must be an array".into()))?
                .iter()
                .map(int_vec_from_json)
                .collect::<Result<_>>()?,
            None => vec![],
        };
        let phi = match v.get("phi") {
            Some(p) => int_matrix_from_json(p)?,
            None => vec![vec![1]; gens.len()],
        };
        Presentation::new(gens, relators, phi)
    }

    pub fn to_json(&self) -> Value {
        json!({ "generators": self.generators, "relators": self.relators, "phi": self.phi })
    }
}

// Column-echelon test that the columns generate all of Z^g.
fn lattice_is_full(cols: &[Vec<i64>], g: usize) -> bool {
    let mut a: Vec<Vec<i128>> = cols.iter().map(|c| c.iter().map(|&x| x as i128).collect()).collect();
    let mut used = vec![false; a.len()];
    for i in 0..g {
        loop {
            let nz: Vec<usize> = (0..a.len()).filter(|&j| !used[j] && a[j][i] != 0).collect();
            if nz.is_empty() {
                return false;
            }
            let p = *nz.iter().min_by_key(|&&j| a[j][i].abs()).unwrap();
            if nz.len() == 1 {
                if a[p][i].abs() != 1 {
                    return false;
                }
                used[p] = true;
                break;
            }
            for &j in &nz {
                if j != p {
                    let q = a[j][i].div_euclid(a[p][i]);
                    let pc = a[p].clone();
                    for (x, y) in a[j].iter_mut().zip(&pc) {
                        *x -= q * y;
                    }
                }
            }
        }
    }
    true
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `<x | >` with `x -> t`.
pub fn circle() -> Presentation {
    Presentation::new(vec!["x".into()], vec![], vec![vec![1]]).unwrap()
}

/// `<a, b | aba = bab>` with both generators mapped to `t`.
pub fn trefoil() -> Presentation {
    Presentation::new(vec!["a".into(), "b".into()], vec![vec![1, 2, 1, -2, -1, -2]], vec![vec![1], vec![1]]).unwrap()
}

fn commutators(m: usize) -> Vec<Word> {
    let mut rels = Vec::new();
    for i in 1..=m as i64 {
        for j in i + 1..=m as i64 {
            rels.push(vec![i, j, -i, -j]);
        }
    }
    rels
}

/// `m` lines in general position: free abelian on meridians, all mapped to `t`.
pub fn generic_arrangement(m: usize) -> Result<Presentation> {
    if m == 0 {
        return Err(Error::InvalidInput("generic arrangement needs at least one line".into()));
    }
    Presentation::new(names("x", m), commutators(m), vec![vec![1]; m])
}

/// Same group with the meridian `x_i` mapped to `t_i`.
pub fn generic_arrangement_multi(m: usize) -> Result<Presentation> {
    if m == 0 {
        return Err(Error::InvalidInput("generic arrangement needs at least one line".into()));
    }
    let phi = (0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect()).collect();
    Presentation::new(names("x", m), commutators(m), phi)
}

/// `d` concurrent lines: `x_i Δ = Δ x_i` for `i < d`, `Δ = x_1...x_d`.
pub fn pencil(d: usize) -> Result<Presentation> {
    if d == 0 {
        return Err(Error::InvalidInput("pencil needs at least one line".into()));
    }
    let delta: Vec<i64> = (1..=d as i64).collect();
    let inv: Vec<i64> = delta.iter().rev().map(|x| -x).collect();
    let rels = (1..d as i64)
        .map(|i| {
            let mut w = vec![i];
            w.extend(&delta);
            w.push(-i);
            w.extend(&inv);
            w
        })
        .collect();
    Presentation::new(names("x", d), rels, vec![vec![1]; d])
}

/// Look up a built-in presentation: `circle`, `trefoil`, `pencilN`,
/// `genericN`, `generic_multiN` (also accepted with `(N)` or `:N`).
pub fn builtin(name: &str) -> Result<Presentation> {
    let lower = name.trim().to_ascii_lowercase();
    let (base, param) = split_param(&lower);
    match (base.as_str(), param) {
        ("circle", None) => Ok(circle()),
        ("trefoil", None) => Ok(trefoil()),
        ("pencil", Some(d)) => pencil(d),
        ("generic" | "generic_arrangement", Some(m)) => generic_arrangement(m),
        ("generic_multi", Some(m)) => generic_arrangement_multi(m),
        _ => Err(Error::UnknownBuiltin(name.to_string())),
    }
}

fn split_param(s: &str) -> (String, Option<usize>) {
    let s = s.trim_end_matches(')');
    let cut = s.find(['(', ':']).unwrap_or_else(|| s.trim_end_matches(|c: char| c.is_ascii_digit()).len());
    let (base, rest) = s.split_at(cut);
    let digits = rest.trim_start_matches(['(', ':']);
    (base.to_string(), digits.parse().ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::torsion_free_split;

    fn lp(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::univariate(low, c)
    }

    #[test]
    fn derivative_rules() {
        let p = Presentation::new(vec!["x".into(), "y".into()], vec![], vec![vec![1], vec![1]]).unwrap();
        assert_eq!(p.fox_derivative(&[1, 2], 0).unwrap(), lp(0, &[1]));
        assert_eq!(p.fox_derivative(&[-1], 0).unwrap(), lp(-1, &[-1]));
        let t = trefoil();
        assert_eq!(t.fox_derivative(&t.relators[0], 0).unwrap(), lp(0, &[1, -1, 1]));
        assert_eq!(t.fox_derivative(&t.relators[0], 1).unwrap(), lp(0, &[-1, 1, -1]));
        assert!(matches!(t.fox_derivative(&[3], 0), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn validation() {
        assert_eq!(
            Presentation::new(vec!["x".into()], vec![vec![1]], vec![vec![1]]),
            Err(Error::IncompatiblePhi(1))
        );
        assert_eq!(Presentation::new(vec!["x".into()], vec![], vec![vec![2]]), Err(Error::NonSurjectivePhi(1)));
        assert!(Presentation::new(vec!["x".into(), "y".into()], vec![], vec![vec![2], vec![3]]).is_ok());
    }

    #[test]
    fn builtin_homology() {
        let c = circle().complex().unwrap();
        assert_eq!(torsion_free_split(&c, 1).unwrap(), (0, vec![]));
        assert_eq!(torsion_free_split(&c, 0).unwrap(), (0, vec![lp(0, &[-1, 1])]));
        let t = trefoil().complex().unwrap();
        assert_eq!(torsion_free_split(&t, 1).unwrap(), (0, vec![lp(0, &[1, -1, 1])]));
        let two = generic_arrangement(2).unwrap().complex().unwrap();
        assert_eq!(torsion_free_split(&two, 1).unwrap(), (0, vec![lp(0, &[-1, 1])]));
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin("pencil3").unwrap(), pencil(3).unwrap());
        assert_eq!(builtin("pencil(3)").unwrap(), pencil(3).unwrap());
        assert_eq!(builtin("generic:4").unwrap(), generic_arrangement(4).unwrap());
        assert_eq!(builtin("generic_multi3").unwrap(), generic_arrangement_multi(3).unwrap());
        assert!(matches!(builtin("figure8"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn json_round_trip() {
        let p = pencil(3).unwrap();
        assert_eq!(Presentation::from_json(&p.to_json()).unwrap(), p);
    }
}
