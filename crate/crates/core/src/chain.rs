//! Bounded complexes of free `R`-modules and their finite-dimensional
//! quotients: homology of `C ⊗ R/(m_H R)^m`, the quotients
//! `H_j(C) / (m_H)^m H_j(C)`, stabilization, and the duality check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{laurent_snf, LaurentMatrix, LaurentPoly, QuotientAlgebra, SubgroupSpec};
use crate::linalg::{QMatrix, Rat, Subquotient, Subspace};
use crate::syzygy::{kernel, present_homology_with, CancelToken, FpModule};
use crate::truncmod::{TruncModule, Variant};

/// `... -> C_j -> C_{j-1} -> ...`, supported in `min_degree ..= max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeChainComplex {
    nvars: usize,
    min_degree: i64,
    ranks: Vec<usize>,
    // diffs[k] = d_{min_degree + k + 1}
    diffs: Vec<LaurentMatrix>,
}

impl FreeChainComplex {
    /// `diffs[k]` is `d_{min_degree+k+1}: C_{min_degree+k+1} -> C_{min_degree+k}`,
    /// a `ranks[k] x ranks[k+1]` matrix.
    pub fn new(nvars: usize, min_degree: i64, ranks: Vec<usize>, diffs: Vec<LaurentMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::InvalidInput("complex needs at least one term".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::InvalidInput(format!(
                "{} terms need {} differentials, found {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.nvars() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: d.nvars() });
            }
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(Error::InvalidInput(format!(
                    "d_{} has shape {}x{}, expected {}x{}",
                    min_degree + k as i64 + 1,
                    d.rows(),
                    d.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].mul(&diffs[k]).is_zero() {
                return Err(Error::InvalidInput(format!(
                    "d_{} ∘ d_{} is not zero",
                    min_degree + k as i64,
                    min_degree + k as i64 + 1
                )));
            }
        }
        Ok(FreeChainComplex { nvars, min_degree, ranks, diffs })
    }

    /// `R --(t-1)--> R` in degrees 1, 0.
    pub fn circle() -> Self {
        Self::single_map(LaurentMatrix::from_rows(1, vec![vec![LaurentPoly::univariate(0, &[-1, 1])]]).unwrap())
    }

    /// Two-term complex `C_1 --d--> C_0`.
    pub fn single_map(d: LaurentMatrix) -> Self {
        let ranks = vec![d.rows(), d.cols()];
        Self::new(d.nvars(), 0, ranks, vec![d]).expect("two-term complex is valid")
    }

    /// Complex with the given ranks (from degree 0) and zero differentials.
    pub fn zero(nvars: usize, ranks: Vec<usize>) -> Self {
        let diffs = ranks.windows(2).map(|w| LaurentMatrix::zeros(w[0], w[1], nvars)).collect();
        Self::new(nvars, 0, ranks, diffs).expect("zero complex is valid")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.min_degree..=self.max_degree()
    }

    pub fn rank(&self, j: i64) -> usize {
        if j < self.min_degree || j > self.max_degree() {
            0
        } else {
            self.ranks[(j - self.min_degree) as usize]
        }
    }

    /// `d_j: C_j -> C_{j-1}` (a zero matrix outside the support).
    pub fn differential(&self, j: i64) -> LaurentMatrix {
        if j > self.min_degree && j <= self.max_degree() {
            self.diffs[(j - self.min_degree - 1) as usize].clone()
        } else {
            LaurentMatrix::zeros(self.rank(j - 1), self.rank(j), self.nvars)
        }
    }

    /// Apply a ring map `t_i -> t^{rho[.][i]}` to every differential.
    pub fn substitute(&self, rho: &[Vec<i64>]) -> Result<FreeChainComplex> {
        let diffs = self.diffs.iter().map(|d| d.substitute(rho)).collect::<Result<_>>()?;
        FreeChainComplex::new(rho.len(), self.min_degree, self.ranks.clone(), diffs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "nvars": self.nvars,
            "min_degree": self.min_degree,
            "ranks": self.ranks,
            "differentials": self.diffs.iter().map(|d| d.to_json()).collect::<Vec<_>>(),
        })
    }

    /// Inverse of [`FreeChainComplex::to_json`]; `min_degree` defaults to 0.
    pub fn from_json(v: &serde_json::Value) -> Result<FreeChainComplex> {
        let bad = |s: &str| Error::InvalidInput(s.to_string());
        let nvars = v.get("nvars").and_then(|x| x.as_u64()).ok_or_else(|| bad("complex needs \"nvars\""))? as usize;
        let min_degree = v.get("min_degree").map_or(Ok(0), crate::format::i64_from_json)?;
        let ranks: Vec<usize> = crate::format::int_vec_from_json(v.get("ranks").ok_or_else(|| bad("complex needs \"ranks\""))?)?
            .into_iter()
            .map(|r| usize::try_from(r).map_err(|_| bad("ranks must be non-negative")))
            .collect::<Result<_>>()?;
        let ds = v.get("differentials").and_then(|x| x.as_array()).ok_or_else(|| bad("complex needs \"differentials\""))?;
        if ds.len() + 1 != ranks.len() {
            return Err(bad("need one differential between consecutive ranks"));
        }
        let diffs = ds
            .iter()
            .enumerate()
            .map(|(k, d)| crate::format::laurent_matrix_from_json(d, nvars, ranks[k], ranks[k + 1]))
            .collect::<Result<_>>()?;
        FreeChainComplex::new(nvars, min_degree, ranks, diffs)
    }
}

/// Expansion of a Laurent matrix over `Q^(rows * d) x Q^(cols * d)` with
/// each entry replaced by its multiplication matrix in `q`.
fn expand(m: &LaurentMatrix, q: &QuotientAlgebra) -> Result<QMatrix> {
    let d = q.dim();
    let mut out = QMatrix::zeros(m.rows() * d, m.cols() * d);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let p = &m[(i, j)];
            if !p.is_zero() {
                out.set_block(i * d, j * d, &q.mult_matrix_poly(p)?);
            }
        }
    }
    Ok(out)
}

fn block_diag_copies(block: &QMatrix, copies: usize) -> QMatrix {
    QMatrix::block_diagonal(&vec![block.clone(); copies])
}

/// The finite complex `C ⊗_R A` over `Q` for a quotient algebra `A`.
#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    algebra: QuotientAlgebra,
    min_degree: i64,
    ranks: Vec<usize>,
    diffs: Vec<QMatrix>,
}

impl TruncatedComplex {
    pub fn algebra(&self) -> &QuotientAlgebra {
        &self.algebra
    }

    pub fn dim(&self, j: i64) -> usize {
        self.rank(j) * self.algebra.dim()
    }

    pub fn rank(&self, j: i64) -> usize {
        let k = j - self.min_degree;
        if k < 0 || k as usize >= self.ranks.len() { 0 } else { self.ranks[k as usize] }
    }

    pub fn differential(&self, j: i64) -> QMatrix {
        let k = j - self.min_degree - 1;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            QMatrix::zeros(self.dim(j - 1), self.dim(j))
        }
    }

    /// Action of `t^gamma` on the degree-`j` term.
    pub fn action(&self, j: i64, gamma: &[i64]) -> QMatrix {
        block_diag_copies(&self.algebra.action(gamma), self.rank(j))
    }

    pub fn cycles(&self, j: i64) -> Subspace {
        Subspace::from_columns(&self.differential(j).kernel())
    }

    pub fn boundaries(&self, j: i64) -> Subspace {
        Subspace::from_columns(&self.differential(j + 1).column_space())
    }

    pub fn homology(&self, j: i64) -> Subquotient {
        Subquotient::new(&self.cycles(j), self.boundaries(j))
    }
}

pub fn tensor_quotient(c: &FreeChainComplex, q: &QuotientAlgebra) -> Result<TruncatedComplex> {
    if c.nvars() != q.nvars() {
        return Err(Error::ArityMismatch { expected: c.nvars(), found: q.nvars() });
    }
    let diffs = c.diffs.iter().map(|d| expand(d, q)).collect::<Result<_>>()?;
    Ok(TruncatedComplex { algebra: q.clone(), min_degree: c.min_degree, ranks: c.ranks.clone(), diffs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// `H_j(C ⊗ R/(m_H R)^m)`
    HomologyOfQuotient,
    /// `H_j(C) ⊗ R/(m_H R)^m`
    QuotientOfHomology,
}

/// A finite-dimensional space attached to `H_j` and a quotient algebra,
/// with the deck group action.
#[derive(Clone, Debug)]
pub struct HomologyQuotient {
    pub j: i64,
    pub m: usize,
    pub dim: usize,
    /// Actions of `t_1, ..., t_g` in the chosen basis.
    pub deck_actions: Vec<QMatrix>,
    pub provenance: Provenance,
    algebra: QuotientAlgebra,
    space: Subquotient,
    copies: usize,
}

impl HomologyQuotient {
    fn build(j: i64, algebra: &QuotientAlgebra, space: Subquotient, copies: usize, provenance: Provenance) -> Result<Self> {
        let g = algebra.nvars();
        let deck_actions = (0..g)
            .map(|i| {
                let mut e = vec![0; g];
                e[i] = 1;
                let amb = block_diag_copies(&algebra.action(&e), copies);
                space.induced(&amb).ok_or_else(|| Error::InvalidInput("deck action does not preserve the space".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HomologyQuotient {
            j,
            m: algebra.power(),
            dim: space.dim(),
            deck_actions,
            provenance,
            algebra: algebra.clone(),
            space,
            copies,
        })
    }

    pub fn algebra(&self) -> &QuotientAlgebra {
        &self.algebra
    }

    pub fn subgroup(&self) -> &SubgroupSpec {
        self.algebra.subgroup()
    }

    pub fn space(&self) -> &Subquotient {
        &self.space
    }

    /// Action of an arbitrary deck element `t^gamma`.
    pub fn action(&self, gamma: &[i64]) -> QMatrix {
        let amb = block_diag_copies(&self.algebra.action(gamma), self.copies);
        self.space.induced(&amb).expect("deck action preserves the space")
    }

    /// The map to `target` induced by the natural projection of algebras.
    pub fn map_to(&self, target: &HomologyQuotient) -> Result<QMatrix> {
        if self.provenance != target.provenance || self.j != target.j || self.copies != target.copies {
            return Err(Error::InvalidInput("homology quotients are not comparable".into()));
        }
        let p = block_diag_copies(&self.algebra.projection_to(&target.algebra)?, self.copies);
        self.space
            .induced_to(&target.space, &p)
            .ok_or_else(|| Error::InvalidInput("projection does not descend to the quotients".into()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "j": self.j,
            "m": self.m,
            "subgroup": self.subgroup().input_basis(),
            "dim": self.dim,
            "provenance": self.provenance,
            "deck_actions": self.deck_actions.iter().map(crate::format::matrix_to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn homology_of_quotient(c: &FreeChainComplex, q: &QuotientAlgebra, j: i64) -> Result<HomologyQuotient> {
    let tc = tensor_quotient(c, q)?;
    HomologyQuotient::build(j, q, tc.homology(j), c.rank(j), Provenance::HomologyOfQuotient)
}

/// `M ⊗_R A` for a finitely presented `M`, as a homology quotient in degree `j`.
pub fn quotient_of_module(fp: &FpModule, j: i64, q: &QuotientAlgebra) -> Result<HomologyQuotient> {
    if fp.nvars != q.nvars() {
        return Err(Error::ArityMismatch { expected: fp.nvars, found: q.nvars() });
    }
    let n = fp.num_gens * q.dim();
    let whole = Subspace::from_columns(&QMatrix::identity(n));
    let rel = Subspace::from_columns(&fp.tensor_relations(q)?);
    HomologyQuotient::build(j, q, Subquotient::new(&whole, rel), fp.num_gens, Provenance::QuotientOfHomology)
}

/// How `H_j(C)` is presented before tensoring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationMethod {
    /// Smith normal form (`g = 1` only).
    Smith,
    /// Gröbner kernels (any `g`).
    Groebner,
}

/// Presentation of `H_j` for `g = 1` from the Smith form of `d_j`, together
/// with the cycles (columns, in `C_j`) that the generators correspond to.
pub fn present_homology_g1(c: &FreeChainComplex, j: i64) -> Result<(FpModule, LaurentMatrix)> {
    if c.nvars() != 1 {
        return Err(Error::MultivariateInput(c.nvars()));
    }
    let dj = c.differential(j);
    let dnext = c.differential(j + 1);
    let n = c.rank(j);
    let snf = laurent_snf(&dj)?;
    let r = snf.rank();
    // ker d_j is spanned by the last n - r columns of V
    let cycles_cols: Vec<Vec<LaurentPoly>> = (r..n).map(|k| snf.v.column(k)).collect();
    let cycles = LaurentMatrix::from_columns(n, 1, &cycles_cols);
    let coords = snf.v_inv.mul(&dnext);
    let rel_rows: Vec<Vec<LaurentPoly>> = (r..n).map(|k| coords.row(k).to_vec()).collect();
    let rel = if rel_rows.is_empty() {
        LaurentMatrix::zeros(0, dnext.cols(), 1)
    } else {
        LaurentMatrix::from_rows(1, rel_rows)?
    };
    Ok((FpModule::new(rel), cycles))
}

pub fn present_homology_by(c: &FreeChainComplex, j: i64, method: PresentationMethod, token: &CancelToken) -> Result<FpModule> {
    match method {
        PresentationMethod::Smith => Ok(present_homology_g1(c, j)?.0),
        PresentationMethod::Groebner => present_homology_with(c, j, token),
    }
}

pub fn default_method(c: &FreeChainComplex) -> PresentationMethod {
    if c.nvars() == 1 { PresentationMethod::Smith } else { PresentationMethod::Groebner }
}

pub fn quotient_of_homology(c: &FreeChainComplex, j: i64, h: &SubgroupSpec, m: usize) -> Result<HomologyQuotient> {
    quotient_of_homology_by(c, j, h, m, default_method(c), &CancelToken::new())
}

pub fn quotient_of_homology_by(
    c: &FreeChainComplex,
    j: i64,
    h: &SubgroupSpec,
    m: usize,
    method: PresentationMethod,
    token: &CancelToken,
) -> Result<HomologyQuotient> {
    if h.rank() != c.nvars() {
        return Err(Error::ArityMismatch { expected: c.nvars(), found: h.rank() });
    }
    let q = QuotientAlgebra::new(h.clone(), m)?;
    let fp = present_homology_by(c, j, method, token)?;
    quotient_of_module(&fp, j, &q)
}

/// `H_j ≅ R^rank ⊕ ⊕ R/(p_i)` for `g = 1`; the `p_i` are monic polynomials.
pub fn torsion_free_split(c: &FreeChainComplex, j: i64) -> Result<(usize, Vec<LaurentPoly>)> {
    let (fp, _) = present_homology_g1(c, j)?;
    fp.structure_g1()
}

/// Generators of `Z_j(C)` over `R`, for any `g`.
fn cycle_generators(c: &FreeChainComplex, j: i64) -> Result<LaurentMatrix> {
    if c.nvars() == 1 {
        Ok(present_homology_g1(c, j)?.1)
    } else {
        kernel(&c.differential(j))
    }
}

/// Subspace of `Z_j(C ⊗ A)` spanned by images of honest cycles of `C`.
fn image_from_infinity(cyc: &LaurentMatrix, tc: &TruncatedComplex) -> Result<Subspace> {
    let q = tc.algebra();
    let d = q.dim();
    let n = cyc.rows();
    let mut s = Subspace::new(n * d);
    for col in cyc.columns() {
        let blocks: Vec<QMatrix> = col.iter().map(|p| q.mult_matrix_poly(p)).collect::<Result<_>>()?;
        for b in 0..d {
            let mut v = Vec::with_capacity(n * d);
            for blk in &blocks {
                v.extend(blk.column(b));
            }
            s.add(&v);
        }
    }
    Ok(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizationReport {
    pub m: usize,
    pub m_prime: usize,
    /// Dimension of the common image inside `H_j(C ⊗ Q_m)`.
    pub image_dim: usize,
    pub homology_dim: usize,
    /// Both containments were checked explicitly.
    pub certified: bool,
}

/// Smallest `m' >= m` (up to `cap`) for which the image of
/// `H_j(C ⊗ Q_{m'}) -> H_j(C ⊗ Q_m)` equals the image of `H_j(C)`.
pub fn stabilization_bound(c: &FreeChainComplex, j: i64, h: &SubgroupSpec, m: usize, cap: Option<usize>) -> Result<StabilizationReport> {
    let cap = cap.unwrap_or(m + 16);
    let qm = QuotientAlgebra::new(h.clone(), m)?;
    let tm = tensor_quotient(c, &qm)?;
    let bm = tm.boundaries(j);
    let cyc = cycle_generators(c, j)?;
    let inf = image_from_infinity(&cyc, &tm)?.sum(&bm);
    let homology_dim = tm.homology(j).dim();
    for mp in m..=cap {
        let qp = QuotientAlgebra::new(h.clone(), mp)?;
        let tp = tensor_quotient(c, &qp)?;
        let proj = block_diag_copies(&qp.projection_to(&qm)?, c.rank(j));
        let fin = tp.cycles(j).image_under(&proj).sum(&bm);
        let (a, b) = (fin.contains_subspace(&inf), inf.contains_subspace(&fin));
        if !a {
            return Err(Error::InvalidInput("image of H_j(C) is not contained in a finite-level image".into()));
        }
        if b {
            return Ok(StabilizationReport {
                m,
                m_prime: mp,
                image_dim: inf.dim() - bm.dim(),
                homology_dim,
                certified: true,
            });
        }
    }
    Err(Error::BoundNotFound(cap))
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionDetection {
    pub divisor: String,
    pub augmentation_zero: bool,
    /// Smallest `m` at which the class has nonzero image in `H_j(C ⊗ R/m^m)`.
    pub detected_at: Option<usize>,
}

/// For `g = 1`: which torsion summands `R/(p_i)` of `H_j` survive in the
/// truncations `R/m^m`, `m <= max_m`.
pub fn torsion_detection(c: &FreeChainComplex, j: i64, max_m: usize) -> Result<Vec<TorsionDetection>> {
    let (fp, cyc) = present_homology_g1(c, j)?;
    let snf = laurent_snf(&fp.relations)?;
    // generators of the SNF summands, as cycles of C
    let gens = cyc.mul(&snf.u_inv);
    let diag = snf.diagonal();
    let mut out = Vec::new();
    for (i, p) in diag.iter().enumerate() {
        if p.is_zero() || p.is_unit() {
            continue;
        }
        let z = gens.column(i);
        let mut detected_at = None;
        for m in 1..=max_m {
            let q = QuotientAlgebra::full(1, m)?;
            let tc = tensor_quotient(c, &q)?;
            let mut v = Vec::new();
            for e in &z {
                v.extend(q.reduce_mod(e)?);
            }
            if !tc.boundaries(j).contains(&v) {
                detected_at = Some(m);
                break;
            }
        }
        out.push(TorsionDetection { divisor: p.to_string(), augmentation_zero: num_traits::Zero::is_zero(&p.augment()), detected_at });
    }
    Ok(out)
}

/// `p` restricted to `k[H]`: the matrix of multiplication by `p` on
/// `R = ⊕_r t^r k[H]`, entries as polynomials in the generators of `H`
/// (exponent vectors in `H`-coordinates).
fn restrict_to_subgroup(p: &LaurentPoly, h: &SubgroupSpec) -> Vec<Vec<Vec<(Vec<i64>, Rat)>>> {
    let reps = h.coset_reps();
    let k = reps.len();
    let mut out = vec![vec![Vec::new(); k]; k];
    for (col, r) in reps.iter().enumerate() {
        for (e, c) in p.terms() {
            let s: Vec<i64> = e.iter().zip(r).map(|(a, b)| a + b).collect();
            let (rr, cc) = h.decompose(&s);
            out[h.coset_index(&rr)][col].push((cc, c.clone()));
        }
    }
    out
}

fn expand_over_subgroup(m: &LaurentMatrix, h: &SubgroupSpec, module: &TruncModule) -> QMatrix {
    let k = h.index() as usize;
    let d = module.dim();
    let mut out = QMatrix::zeros(m.rows() * k * d, m.cols() * k * d);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let p = &m[(i, j)];
            if p.is_zero() {
                continue;
            }
            let blocks = restrict_to_subgroup(p, h);
            for (a, row) in blocks.iter().enumerate() {
                for (b, terms) in row.iter().enumerate() {
                    let mut acc = QMatrix::zeros(d, d);
                    for (v, c) in terms {
                        acc = &acc + &module.rm_action(v).scale(c);
                    }
                    out.set_block((i * k + a) * d, (j * k + b) * d, &acc);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualityDims {
    pub homology: usize,
    pub cohomology: usize,
}

/// Dimensions of `H_j(C ⊗_{k[H]} R^H_m)` and `H^j(Hom_{k[H]}(C, R^H_{-m}))`,
/// where `R^H_m` is the truncation module of `H ≅ Z^g`.
pub fn duality_dims(c: &FreeChainComplex, h: &SubgroupSpec, m: usize, j: i64) -> Result<DualityDims> {
    let g = c.nvars();
    if h.rank() != g {
        return Err(Error::ArityMismatch { expected: g, found: h.rank() });
    }
    let rm = TruncModule::new(g, m, Variant::Truncation)?;
    let rdual = TruncModule::new(g, m, Variant::Dual)?;
    let width = |deg: i64| c.rank(deg) * h.index() as usize * rm.dim();

    let dj = expand_over_subgroup(&c.differential(j), h, &rm);
    let dnext = expand_over_subgroup(&c.differential(j + 1), h, &rm);
    let homology = width(j) - dj.rank() - dnext.rank();

    // δ^j: Hom(C_{j-1}, R_{-m}) -> Hom(C_j, R_{-m}) is precomposition with d_j:
    // block positions transpose while each block acts contragrediently
    let cod = |d: &LaurentMatrix| transpose_blocks(&expand_over_subgroup(d, h, &rdual), rdual.dim());
    let delta_j = cod(&c.differential(j));
    let delta_next = cod(&c.differential(j + 1));
    let cohomology = width(j) - delta_next.rank() - delta_j.rank();
    if homology != cohomology {
        return Err(Error::DualityMismatch(homology, cohomology));
    }
    Ok(DualityDims { homology, cohomology })
}

// Swap block positions (blocks of size d) without transposing the blocks.
fn transpose_blocks(m: &QMatrix, d: usize) -> QMatrix {
    let (br, bc) = (m.rows() / d, m.cols() / d);
    let mut out = QMatrix::zeros(m.cols(), m.rows());
    for a in 0..br {
        for b in 0..bc {
            out.set_block(b * d, a * d, &m.block(a * d, b * d, d, d));
        }
    }
    out
}
