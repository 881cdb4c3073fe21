mod common;

use alexq::arrangement::{
    self, milnor_fiber_b1, milnor_report, milnor_sequence_dims, preset, spectrum_check_raw, torsion_profile, Line, MultiplePoint,
};
use alexq::linalg::rat;
use alexq::{Error, LineArrangement, Rat};
use common::*;
use num_rational::Ratio;
use proptest::prelude::*;
use rand::Rng;
use std::collections::BTreeMap;

type Pt = (Ratio<i64>, Ratio<i64>);

fn meet(l: (i64, i64, i64), o: (i64, i64, i64)) -> Option<Pt> {
    let det = l.0 * o.1 - o.0 * l.1;
    if det == 0 {
        return None;
    }
    Some((Ratio::new(l.1 * o.2 - o.1 * l.2, det), Ratio::new(l.2 * o.0 - o.2 * l.0, det)))
}

/// Multiplicities from counting meeting pairs at each point, and the Möbius
/// function of the intersection poset computed from its definition.
fn oracle(lines: &[(i64, i64, i64)]) -> (Vec<(usize, Vec<usize>)>, i64) {
    let mut pairs: BTreeMap<Pt, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Some(p) = meet(lines[i], lines[j]) {
                pairs.entry(p).or_default().push((i, j));
            }
        }
    }
    let mut pts = Vec::new();
    let mut mu_sum = 0;
    for ps in pairs.values() {
        let mut k = 2;
        while k * (k - 1) / 2 < ps.len() {
            k += 1;
        }
        assert_eq!(k * (k - 1) / 2, ps.len());
        let mut members: Vec<usize> = ps.iter().flat_map(|&(i, j)| [i, j]).collect();
        members.sort_unstable();
        members.dedup();
        assert_eq!(members.len(), k);
        // mu(plane) = 1, mu(line) = -1, mu(point) = -(1 - k)
        let mu_point = -(1 + members.iter().map(|_| -1i64).sum::<i64>());
        mu_sum += mu_point;
        pts.push((k, members));
    }
    pts.sort();
    (pts, mu_sum)
}

fn random_lines(seed: u64, m: usize) -> Vec<(i64, i64, i64)> {
    let mut r = rng(seed);
    let mut out: Vec<(i64, i64, i64)> = Vec::new();
    while out.len() < m {
        let l = (r.gen_range(-2..=2), r.gen_range(-2..=2), r.gen_range(-2..=2));
        if l.0 == 0 && l.1 == 0 {
            continue;
        }
        let prop = |o: &(i64, i64, i64)| l.0 * o.1 == l.1 * o.0 && l.0 * o.2 == l.2 * o.0 && l.1 * o.2 == l.2 * o.1;
        if out.iter().any(prop) {
            continue;
        }
        out.push(l);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn combinatorics_against_mobius(seed in any::<u64>(), m in 1usize..=8) {
        let lines = random_lines(seed, m);
        let a = LineArrangement::from_lines(lines.iter().map(|&(x, y, z)| Line::real(x, y, z)).collect()).unwrap();
        let c = a.combinatorics();
        let (pts, mu_sum) = oracle(&lines);
        let got: Vec<(usize, Vec<usize>)> = c.points.iter().map(|p| (p.mult, p.lines.clone())).collect();
        prop_assert_eq!(got, pts.clone());
        prop_assert_eq!(c.essential, !pts.is_empty());
        if c.essential {
            let b = a.betti_chi().unwrap();
            prop_assert_eq!(b.b1, m);
            prop_assert_eq!(b.b2 as i64, mu_sum);
            prop_assert_eq!(b.chi, 1 - m as i64 + mu_sum);
        } else {
            prop_assert_eq!(a.betti_chi().unwrap_err(), Error::NotEssential);
        }
        if c.essential && m >= 3 {
            let n = a.milnor_n().unwrap();
            let n0 = c.points.iter().filter(|p| p.mult > 2).fold(1u64, |acc, p| num_integer::lcm(acc, p.mult as u64));
            prop_assert!(n > m as u64);
            prop_assert_eq!(n % n0, 0);
            prop_assert!(n - n0 <= m as u64);
            let (rank, dim) = a.h2_report().unwrap();
            prop_assert_eq!(dim, n as i64 * rank);
        }

        // the incidence description carries the same combinatorics
        let inc = LineArrangement::from_incidence(m, c.points.clone()).unwrap();
        prop_assert_eq!(inc.combinatorics(), c.clone());
        let back = LineArrangement::from_json(&inc.to_json()).unwrap();
        prop_assert_eq!(back.combinatorics(), c.clone());
        let back = LineArrangement::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(back.combinatorics(), c);
    }

    #[test]
    fn spectrum_formulas(
        m in 3usize..=8,
        n in 4u64..=12,
        chi in -3i64..=6,
        raw in prop::collection::vec((1u64..=36, -4i64..=6), 0..8),
        extra in prop::collection::vec((1u64..=11, 1usize..=3), 0..4),
        at_one in 0usize..=8,
    ) {
        let spectrum: Vec<(Rat, i64)> = raw.iter().filter(|(k, _)| *k <= 3 * n).map(|&(k, v)| (rat(k as i64, n as i64), v)).collect();
        let mut tors: Vec<(Rat, usize)> = vec![(rat(0, 1), at_one)];
        tors.extend(extra.iter().filter(|(k, _)| *k < n).map(|&(k, d)| (rat(k as i64, n as i64), d)));
        let rep = spectrum_check_raw(m, n, chi, &spectrum, &tors).unwrap();

        let mut s = [0i64; 3];
        for (k, v) in raw.iter().filter(|(k, _)| *k <= 3 * n) {
            s[((k - 1) / n) as usize] += v;
        }
        prop_assert_eq!(rep.level_sums, s);
        let total: usize = tors.iter().map(|t| t.1).sum();
        let h = rat(total as i64 - (m as i64 - 1), 2);
        prop_assert_eq!(&rep.gr_m1, &rat(s[1] + m as i64, 1));
        prop_assert_eq!(&rep.f_0, &(rat(s[2], 1) - &h));
        prop_assert_eq!(&rep.gr_0, &rep.f_0);
        prop_assert_eq!(&rep.gr_m2, &(rat(s[0] - (m as i64 - 1), 1) - &h));
        prop_assert_eq!(&rep.f_m1, &(&rep.f_0 + &rep.gr_m1));
        let graded = &rep.gr_m2 + &rep.gr_m1 + &rep.gr_0;
        let flag = |name: &str| rep.flags.iter().find(|f| f.name == name).unwrap().holds;
        prop_assert_eq!(flag("graded_sum"), graded == rat(n as i64 * chi, 1));
        prop_assert_eq!(flag("eigenvalue_one"), at_one + 1 == m);
        prop_assert_eq!(flag("off_one_even"), (total - at_one).is_multiple_of(2));
    }
}

#[test]
fn off_grid_spectrum_is_rejected() {
    for alpha in [rat(1, 7), rat(0, 1), rat(13, 4), rat(-1, 2)] {
        let r = spectrum_check_raw(4, 4, 1, &[(alpha, 1)], &[]);
        assert!(matches!(r, Err(Error::GridMismatch(_))));
    }
}

#[test]
fn builtin_arrangements() {
    for name in ["triangle", "pencil3", "pencil4", "pencil5", "generic4", "generic5"] {
        let (a, p) = preset(name).unwrap();
        let m = a.num_lines();
        let t = torsion_profile(&p).unwrap();
        assert_eq!(t.free_rank, 0, "{name}");
        assert_eq!(t.at_one(), m - 1, "{name}");
        assert_eq!(t.other, 0, "{name}");
        let b1 = milnor_fiber_b1(&a, &p).unwrap();
        let seq = milnor_sequence_dims(&a, &p).unwrap();
        assert_eq!(seq.h1_direct, b1 + 1, "{name}");
        assert_eq!(seq.h1_from_sequence, seq.h1_direct);
        let rep = milnor_report(&a, Some(&p), None).unwrap();
        assert_eq!(rep.b1_milnor_fiber, Some(b1));
    }
    let (a, p) = preset("pencil3").unwrap();
    let t = torsion_profile(&p).unwrap();
    assert_eq!(t.by_root.get(&(1, 3)), Some(&1));
    assert_eq!(t.by_root.get(&(2, 3)), Some(&1));
    assert_eq!(a.milnor_n().unwrap(), 6);
}

#[test]
fn mismatched_presentation() {
    let (a, _) = preset("pencil3").unwrap();
    assert!(milnor_fiber_b1(&a, &alexq::fox::circle()).is_err());
    assert!(matches!(preset("circle"), Err(Error::UnknownBuiltin(_))));
}

#[test]
fn invalid_inputs() {
    let dup = LineArrangement::from_lines(vec![Line::real(1, 1, 1), Line::real(2, 2, 2)]);
    assert_eq!(dup.unwrap_err(), Error::DegenerateLines(0, 1));
    assert!(LineArrangement::from_lines(vec![Line::real(0, 0, 1)]).is_err());
    let twice = vec![MultiplePoint { mult: 2, lines: vec![0, 1] }, MultiplePoint { mult: 2, lines: vec![1, 0] }];
    assert!(LineArrangement::from_incidence(2, twice).is_err());
    let out = vec![MultiplePoint { mult: 2, lines: vec![0, 3] }];
    assert!(LineArrangement::from_incidence(3, out).is_err());
    assert_eq!(arrangement::pencil(2).unwrap().milnor_n().unwrap_err(), Error::TooFewLines(2));
    let parallel = LineArrangement::from_incidence(3, vec![]).unwrap();
    assert_eq!(parallel.milnor_n().unwrap_err(), Error::NotEssential);
}
