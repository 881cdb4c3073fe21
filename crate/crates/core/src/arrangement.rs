//! Affine line arrangements: incidence combinatorics, Euler characteristic of
//! the complement, the cyclic order `N`, and the Milnor-fiber dimension
//! bookkeeping built on top of the Alexander module of the complement.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chain::{homology_of_quotient, torsion_free_split};
use crate::error::{Error, Result};
use crate::format::{i64_from_json, rat_from_json, rat_to_json};
use crate::fox::{self, Presentation};
use crate::laurent::{QuotientAlgebra, SubgroupSpec};
use crate::linalg::{ri, Rat};
use crate::poly::{euler_phi, lcm_u64, UPoly};

/// Gaussian rational.
pub type GRat = Complex<Rat>;

pub fn grat(re: Rat, im: Rat) -> GRat {
    Complex::new(re, im)
}

fn real(x: i64) -> GRat {
    grat(ri(x), Rat::zero())
}

/// The line `a X + b Y + c = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub a: GRat,
    pub b: GRat,
    pub c: GRat,
}

impl Line {
    pub fn new(a: GRat, b: GRat, c: GRat) -> Self {
        Line { a, b, c }
    }

    pub fn real(a: i64, b: i64, c: i64) -> Self {
        Line::new(real(a), real(b), real(c))
    }

    fn proportional(&self, o: &Line) -> bool {
        let cross = |x: &GRat, y: &GRat, u: &GRat, v: &GRat| x * v - y * u;
        cross(&self.a, &self.b, &o.a, &o.b).is_zero()
            && cross(&self.a, &self.c, &o.a, &o.c).is_zero()
            && cross(&self.b, &self.c, &o.b, &o.c).is_zero()
    }

    fn meet(&self, o: &Line) -> Option<(GRat, GRat)> {
        let det = &self.a * &o.b - &o.a * &self.b;
        if det.is_zero() {
            return None;
        }
        let x = (&self.b * &o.c - &o.b * &self.c) / &det;
        let y = (&self.c * &o.a - &o.c * &self.a) / &det;
        Some((x, y))
    }

    fn contains(&self, p: &(GRat, GRat)) -> bool {
        (&self.a * &p.0 + &self.b * &p.1 + &self.c).is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MultiplePoint {
    pub mult: usize,
    /// 0-based line indices, increasing.
    pub lines: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineArrangement {
    Lines(Vec<Line>),
    /// Abstract incidence data. Pairs of lines not sharing a listed point are parallel.
    Incidence { m: usize, points: Vec<MultiplePoint> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Combinatorics {
    pub m: usize,
    pub points: Vec<MultiplePoint>,
    pub essential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Betti {
    pub b1: usize,
    pub b2: usize,
    pub chi: i64,
}

impl LineArrangement {
    pub fn from_lines(lines: Vec<Line>) -> Result<Self> {
        for (i, l) in lines.iter().enumerate() {
            if l.a.is_zero() && l.b.is_zero() {
                return Err(Error::InvalidInput(format!("line {i} has no linear part")));
            }
            for (j, o) in lines.iter().enumerate().skip(i + 1) {
                if l.proportional(o) {
                    return Err(Error::DegenerateLines(i, j));
                }
            }
        }
        Ok(LineArrangement::Lines(lines))
    }

    pub fn from_incidence(m: usize, points: Vec<MultiplePoint>) -> Result<Self> {
        let mut seen = BTreeMap::new();
        let mut normalized = Vec::with_capacity(points.len());
        for (k, p) in points.into_iter().enumerate() {
            let mut lines = p.lines.clone();
            lines.sort_unstable();
            lines.dedup();
            if lines.len() != p.lines.len() || lines.len() != p.mult || p.mult < 2 {
                return Err(Error::InvalidInput(format!("point {k}: multiplicity {} does not match its lines", p.mult)));
            }
            if let Some(&bad) = lines.iter().find(|&&l| l >= m) {
                return Err(Error::InvalidInput(format!("point {k}: line index {bad} out of range")));
            }
            for (x, &i) in lines.iter().enumerate() {
                for &j in &lines[x + 1..] {
                    if let Some(prev) = seen.insert((i, j), k) {
                        return Err(Error::InvalidInput(format!("lines {i} and {j} meet at points {prev} and {k}")));
                    }
                }
            }
            normalized.push(MultiplePoint { mult: p.mult, lines });
        }
        normalized.sort();
        Ok(LineArrangement::Incidence { m, points: normalized })
    }

    pub fn num_lines(&self) -> usize {
        match self {
            LineArrangement::Lines(l) => l.len(),
            LineArrangement::Incidence { m, .. } => *m,
        }
    }

    pub fn combinatorics(&self) -> Combinatorics {
        let (m, mut points) = match self {
            LineArrangement::Incidence { m, points } => (*m, points.clone()),
            LineArrangement::Lines(lines) => {
                let mut found: Vec<(GRat, GRat)> = Vec::new();
                for (i, l) in lines.iter().enumerate() {
                    for o in &lines[i + 1..] {
                        if let Some(p) = l.meet(o) {
                            if !found.contains(&p) {
                                found.push(p);
                            }
                        }
                    }
                }
                let pts = found
                    .iter()
                    .map(|p| {
                        let members: Vec<usize> = (0..lines.len()).filter(|&i| lines[i].contains(p)).collect();
                        MultiplePoint { mult: members.len(), lines: members }
                    })
                    .collect();
                (lines.len(), pts)
            }
        };
        points.sort();
        let essential = !points.is_empty();
        Combinatorics { m, points, essential }
    }

    fn essential_combinatorics(&self) -> Result<Combinatorics> {
        let c = self.combinatorics();
        if !c.essential {
            return Err(Error::NotEssential);
        }
        Ok(c)
    }

    pub fn betti_chi(&self) -> Result<Betti> {
        let c = self.essential_combinatorics()?;
        let b2: usize = c.points.iter().map(|p| p.mult - 1).sum();
        Ok(Betti { b1: c.m, b2, chi: 1 - c.m as i64 + b2 as i64 })
    }

    /// Smallest multiple of the lcm of all multiplicities above 2 exceeding `m`.
    pub fn milnor_n(&self) -> Result<u64> {
        let c = self.essential_combinatorics()?;
        if c.m < 3 {
            return Err(Error::TooFewLines(c.m));
        }
        let n0 = c.points.iter().filter(|p| p.mult > 2).fold(1, |acc, p| lcm_u64(acc, p.mult as u64));
        Ok((c.m as u64 / n0 + 1) * n0)
    }

    /// Free rank of `H_2` of the cyclic cover and the dimension of its
    /// quotient by `t^N - 1`.
    pub fn h2_report(&self) -> Result<(i64, i64)> {
        let n = self.milnor_n()? as i64;
        let chi = self.betti_chi()?.chi;
        Ok((chi, n * chi))
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        if let Some(ls) = v.get("lines") {
            let ls = ls.as_array().ok_or_else(|| Error::InvalidInput("\"lines\" must be an array".into()))?;
            let lines = ls.iter().map(line_from_json).collect::<Result<_>>()?;
            return LineArrangement::from_lines(lines);
        }
        if let Some(inc) = v.get("incidence") {
            let m = i64_from_json(inc.get("m").ok_or_else(|| Error::InvalidInput("incidence needs \"m\"".into()))?)?;
            let pts = inc.get("points").and_then(|p| p.as_array()).cloned().unwrap_or_default();
            let mut points = Vec::with_capacity(pts.len());
            for p in &pts {
                let lines: Vec<usize> = p
                    .get("lines")
                    .and_then(|l| l.as_array())
                    .ok_or_else(|| Error::InvalidInput("point needs \"lines\"".into()))?
                    .iter()
                    .map(|x| i64_from_json(x).map(|x| x as usize))
                    .collect::<Result<_>>()?;
                let mult = match p.get("mult") {
                    Some(x) => i64_from_json(x)? as usize,
                    None => lines.len(),
                };
                points.push(MultiplePoint { mult, lines });
            }
            return LineArrangement::from_incidence(m.max(0) as usize, points);
        }
        Err(Error::InvalidInput("arrangement needs \"lines\" or \"incidence\"".into()))
    }

    pub fn to_json(&self) -> Value {
        match self {
            LineArrangement::Lines(ls) => {
                let rows: Vec<Value> = ls
                    .iter()
                    .map(|l| {
                        json!([
                            rat_to_json(&l.a.re),
                            rat_to_json(&l.a.im),
                            rat_to_json(&l.b.re),
                            rat_to_json(&l.b.im),
                            rat_to_json(&l.c.re),
                            rat_to_json(&l.c.im)
                        ])
                    })
                    .collect();
                json!({ "lines": rows })
            }
            LineArrangement::Incidence { m, points } => json!({ "incidence": { "m": m, "points": points } }),
        }
    }
}

fn line_from_json(v: &Value) -> Result<Line> {
    let a = v.as_array().ok_or_else(|| Error::InvalidInput("line must be an array".into()))?;
    let r: Vec<Rat> = a.iter().map(rat_from_json).collect::<Result<_>>()?;
    match r.len() {
        3 => Ok(Line::new(grat(r[0].clone(), Rat::zero()), grat(r[1].clone(), Rat::zero()), grat(r[2].clone(), Rat::zero()))),
        6 => Ok(Line::new(
            grat(r[0].clone(), r[1].clone()),
            grat(r[2].clone(), r[3].clone()),
            grat(r[4].clone(), r[5].clone()),
        )),
        n => Err(Error::InvalidInput(format!("line needs 3 or 6 coefficients, found {n}"))),
    }
}

/// Three lines in general position.
pub fn triangle() -> LineArrangement {
    LineArrangement::from_lines(vec![Line::real(1, 0, 0), Line::real(0, 1, 0), Line::real(1, 1, -1)]).unwrap()
}

/// `d` lines through the origin: `x = 0` and `y = k x`, `k < d - 1`.
pub fn pencil(d: usize) -> Result<LineArrangement> {
    let mut lines = vec![Line::real(1, 0, 0)];
    lines.extend((0..d.saturating_sub(1) as i64).map(|k| Line::real(k, -1, 0)));
    lines.truncate(d);
    LineArrangement::from_lines(lines)
}

/// `m` tangent lines to a parabola: no two parallel, no three concurrent.
pub fn generic(m: usize) -> Result<LineArrangement> {
    LineArrangement::from_lines((1..=m as i64).map(|k| Line::real(2 * k, -1, -k * k)).collect())
}

/// Arrangement together with a presentation of its complement's group.
pub fn preset(name: &str) -> Result<(LineArrangement, Presentation)> {
    let lower = name.trim().to_ascii_lowercase();
    if lower == "triangle" {
        return Ok((triangle(), fox::generic_arrangement(3)?));
    }
    let p = fox::builtin(&lower)?;
    let n = p.generators.len();
    let a = if lower.starts_with("pencil") {
        pencil(n)?
    } else if lower.starts_with("generic") && !lower.starts_with("generic_multi") {
        generic(n)?
    } else {
        return Err(Error::UnknownBuiltin(name.to_string()));
    };
    Ok((a, p))
}

/// Torsion of `H_1` of the cyclic cover split by eigenvalue `e^{2πik/d}`,
/// keyed by `k/d` in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionProfile {
    pub free_rank: usize,
    pub total: usize,
    pub by_root: BTreeMap<(u64, u64), usize>,
    /// Degree of factors that are not cyclotomic.
    pub other: usize,
}

impl TorsionProfile {
    pub fn at_one(&self) -> usize {
        self.by_root.get(&(0, 1)).copied().unwrap_or(0)
    }

    pub fn as_fractions(&self) -> Vec<(Rat, usize)> {
        self.by_root.iter().map(|(&(k, d), &n)| (Rat::new((k as i64).into(), (d as i64).into()), n)).collect()
    }
}

fn check_presentation(a: &LineArrangement, p: &Presentation) -> Result<()> {
    if p.nvars() != 1 {
        return Err(Error::MultivariateInput(p.nvars()));
    }
    if p.phi.iter().any(|e| e[0] != 1) {
        return Err(Error::InvalidInput("every meridian must map to t".into()));
    }
    if p.generators.len() != a.num_lines() {
        return Err(Error::InvalidInput(format!(
            "presentation has {} generators for {} lines",
            p.generators.len(),
            a.num_lines()
        )));
    }
    Ok(())
}

pub fn torsion_profile(p: &Presentation) -> Result<TorsionProfile> {
    let (free_rank, divisors) = torsion_free_split(&p.complex()?, 1)?;
    let mut by_root = BTreeMap::new();
    let mut total = 0;
    let mut other = 0;
    for f in &divisors {
        let (_, mut u) = f.to_upoly_shifted()?;
        let deg = u.degree().unwrap_or(0);
        total += deg;
        let mut d = 1u64;
        let mut left = deg;
        while left > 0 && (euler_phi(d) as usize) <= 2 * deg * deg + 2 {
            let phi = UPoly::cyclotomic(d);
            let e = u.factor_multiplicity(&phi);
            if e > 0 {
                u = u.div_rem(&phi.pow(e as u32)).0;
                left -= e * euler_phi(d) as usize;
                for k in (0..d).filter(|&k| num_integer::gcd(k, d) == 1) {
                    *by_root.entry((k, d)).or_insert(0) += e;
                }
            }
            d += 1;
        }
        other += left;
    }
    Ok(TorsionProfile { free_rank, total, by_root, other })
}

/// First Betti number of the Milnor fiber of the cone over `a`.
pub fn milnor_fiber_b1(a: &LineArrangement, p: &Presentation) -> Result<usize> {
    check_presentation(a, p)?;
    let t = torsion_profile(p)?;
    if t.free_rank > 0 {
        return Err(Error::UnexpectedFreePart(t.free_rank));
    }
    Ok(t.total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceDims {
    pub n: u64,
    pub h1_from_sequence: usize,
    pub h1_direct: usize,
    pub h2: i64,
}

/// Dimensions of `H_1` and `H_2` of the `N`-fold cyclic cover; `H_1` is
/// computed both from the exact sequence and directly.
pub fn milnor_sequence_dims(a: &LineArrangement, p: &Presentation) -> Result<SequenceDims> {
    let tors = milnor_fiber_b1(a, p)?;
    let n = a.milnor_n()?;
    let chi = a.betti_chi()?.chi;
    let q = QuotientAlgebra::new(SubgroupSpec::cyclic(n as i64)?, 1)?;
    let direct = homology_of_quotient(&p.complex()?, &q, 1)?.dim;
    let from_seq = tors + 1;
    if direct != from_seq {
        return Err(Error::SequenceMismatch(format!("H_1 of the {n}-fold cover: sequence gives {from_seq}, direct gives {direct}")));
    }
    Ok(SequenceDims { n, h1_from_sequence: from_seq, h1_direct: direct, h2: n as i64 * chi + tors as i64 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub name: &'static str,
    pub holds: bool,
    pub identity: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    /// Sums of `n_α` over `α` in `(0,1]`, `(1,2]`, `(2,3]`.
    pub level_sums: [i64; 3],
    pub gr_m2: Rat,
    pub gr_m1: Rat,
    pub gr_0: Rat,
    pub f_0: Rat,
    pub f_m1: Rat,
    pub flags: Vec<Flag>,
}

impl SpectrumReport {
    pub fn all_hold(&self) -> bool {
        self.flags.iter().all(|f| f.holds)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level_sums": self.level_sums,
            "gr_minus2": rat_to_json(&self.gr_m2),
            "gr_minus1": rat_to_json(&self.gr_m1),
            "gr_0": rat_to_json(&self.gr_0),
            "f_0": rat_to_json(&self.f_0),
            "f_minus1": rat_to_json(&self.f_m1),
            "flags": self.flags,
        })
    }
}

/// Hodge-graded dimensions of the `H_2` quotient implied by spectrum
/// multiplicities `n_α` (`α ∈ (0,3]`, denominator dividing `N`) and the
/// torsion of `H_1` split by eigenvalue (`β ∈ [0,1)` for `e^{2πiβ}`).
pub fn spectrum_check_raw(m: usize, n: u64, chi: i64, spectrum: &[(Rat, i64)], tors: &[(Rat, usize)]) -> Result<SpectrumReport> {
    let big_n = Rat::from_integer((n as i64).into());
    let mut sums = [0i64; 3];
    for (alpha, v) in spectrum {
        let scaled = alpha * &big_n;
        if !scaled.is_integer() || *alpha <= Rat::zero() || *alpha > ri(3) {
            return Err(Error::GridMismatch(format!("alpha = {alpha} is not on the grid (0, 3] with step 1/{n}")));
        }
        let level = ((alpha - Rat::one()).ceil().to_integer().try_into().unwrap_or(0i64)).clamp(0, 2) as usize;
        sums[level] += v;
    }
    let total: usize = tors.iter().map(|(_, d)| d).sum();
    let at_one: usize = tors.iter().filter(|(b, _)| b.is_zero()).map(|(_, d)| d).sum();
    let off = total - at_one;
    let m_r = ri(m as i64);
    let half = (ri(total as i64) - ri(m as i64 - 1)) / ri(2);
    let gr_m1 = ri(sums[1]) + &m_r;
    let f_0 = ri(sums[2]) - &half;
    let gr_0 = f_0.clone();
    let gr_m2 = ri(sums[0]) - ri(m as i64 - 1) - &half;
    let f_m1 = &f_0 + &gr_m1;
    let graded = &gr_m2 + &gr_m1 + &gr_0;
    let target = ri(n as i64 * chi);
    let flags = vec![
        Flag {
            name: "graded_sum",
            holds: graded == target,
            identity: format!("Gr^-2 + Gr^-1 + Gr^0 = N*chi: {graded} vs {target}"),
        },
        Flag {
            name: "eigenvalue_one",
            holds: at_one + 1 == m,
            identity: format!("torsion at eigenvalue 1 = m - 1: {at_one} vs {}", m as i64 - 1),
        },
        Flag {
            name: "off_one_even",
            holds: off.is_multiple_of(2),
            identity: format!("torsion away from eigenvalue 1 is even: {off}"),
        },
    ];
    Ok(SpectrumReport { level_sums: sums, gr_m2, gr_m1, gr_0, f_0, f_m1, flags })
}

pub fn spectrum_check(a: &LineArrangement, spectrum: &[(Rat, i64)], tors: &[(Rat, usize)]) -> Result<SpectrumReport> {
    spectrum_check_raw(a.num_lines(), a.milnor_n()?, a.betti_chi()?.chi, spectrum, tors)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorReport {
    pub combinatorics: Combinatorics,
    pub betti: Betti,
    pub n: u64,
    pub h2_rank: i64,
    pub h2_quotient_dim: i64,
    pub torsion: Option<TorsionProfile>,
    pub b1_milnor_fiber: Option<usize>,
    pub sequence: Option<SequenceDims>,
    pub spectrum: Option<SpectrumReport>,
}

/// Everything the combinatorics determines, plus the presentation-dependent
/// parts when a presentation is supplied.
pub fn milnor_report(a: &LineArrangement, p: Option<&Presentation>, spectrum: Option<&[(Rat, i64)]>) -> Result<MilnorReport> {
    let combinatorics = a.essential_combinatorics()?;
    let betti = a.betti_chi()?;
    let n = a.milnor_n()?;
    let (h2_rank, h2_quotient_dim) = a.h2_report()?;
    let (torsion, b1, seq) = match p {
        Some(p) => {
            let b1 = milnor_fiber_b1(a, p)?;
            (Some(torsion_profile(p)?), Some(b1), Some(milnor_sequence_dims(a, p)?))
        }
        None => (None, None, None),
    };
    let spectrum = match spectrum {
        Some(s) => {
            let t = torsion.as_ref().ok_or_else(|| Error::InvalidInput("the spectrum check needs a presentation".into()))?;
            Some(spectrum_check(a, s, &t.as_fractions())?)
        }
        None => None,
    };
    Ok(MilnorReport {
        combinatorics,
        betti,
        n,
        h2_rank,
        h2_quotient_dim,
        torsion,
        b1_milnor_fiber: b1,
        sequence: seq,
        spectrum,
    })
}

impl MilnorReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "m": self.combinatorics.m,
            "points": self.combinatorics.points,
            "b1": self.betti.b1,
            "b2": self.betti.b2,
            "chi": self.betti.chi,
            "N": self.n,
            "h2_rank": self.h2_rank,
            "h2_quotient_dim": self.h2_quotient_dim,
        });
        if let Some(t) = &self.torsion {
            let roots: Vec<Value> = t.by_root.iter().map(|(&(k, d), &n)| json!({"k": k, "d": d, "dim": n})).collect();
            v["torsion"] = json!({ "total": t.total, "at_one": t.at_one(), "by_root": roots, "other": t.other });
        }
        if let Some(b) = self.b1_milnor_fiber {
            v["b1_milnor_fiber"] = json!(b);
        }
        if let Some(s) = &self.sequence {
            v["h1_cover"] = json!(s.h1_direct);
            v["h2_cover"] = json!(s.h2);
        }
        if let Some(s) = &self.spectrum {
            v["spectrum"] = s.to_json();
        }
        v
    }
}
