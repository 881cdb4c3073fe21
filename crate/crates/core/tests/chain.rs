mod common;

use alexq::chain::{
    duality_dims, homology_of_quotient, present_homology_g1, quotient_of_homology, stabilization_bound, tensor_quotient,
};
use alexq::laurent::QuotientAlgebra;
use alexq::{FreeChainComplex, QMatrix, SubgroupSpec};
use common::*;
use proptest::prelude::*;

fn unipotent_order(a: &QMatrix) -> Option<usize> {
    (a - &QMatrix::identity(a.rows())).nilpotency_index()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    // For g = 1 the universal coefficient sequence splits dimensionwise:
    // dim H_j(C ⊗ Q) = dim H_j ⊗ Q + dim Tor(H_{j-1}, Q), and for a
    // principal ideal domain dim Tor(R/p, Q) = dim R/p ⊗ Q.
    #[test]
    fn universal_coefficients_g1(seed in any::<u64>(), n in 1i64..=4, m in 1usize..=3) {
        let mut r = rng(seed);
        let c = random_complex(&mut r, 1, 3, 2);
        let q = QuotientAlgebra::new(SubgroupSpec::cyclic(n).unwrap(), m).unwrap();
        for j in 0..=2i64 {
            let lhs = homology_of_quotient(&c, &q, j).unwrap().dim;
            let (fp, _) = present_homology_g1(&c, j).unwrap();
            let mut rhs = fp.tensor_dim(&q).unwrap();
            if j > 0 {
                let (prev, _) = present_homology_g1(&c, j - 1).unwrap();
                let (free, _) = prev.structure_g1().unwrap();
                rhs += prev.tensor_dim(&q).unwrap() - free * q.dim();
            }
            prop_assert_eq!(lhs, rhs);
            prop_assert!(lhs >= quotient_of_homology(&c, j, q.subgroup(), m).unwrap().dim);
        }
    }

    #[test]
    fn quotient_of_homology_grows_with_m(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_complex(&mut r, 1, 3, 2);
        let h = SubgroupSpec::cyclic(2).unwrap();
        for j in 0..=2 {
            let dims: Vec<usize> = (1..=3).map(|m| quotient_of_homology(&c, j, &h, m).unwrap().dim).collect();
            prop_assert!(dims.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn deck_actions(seed in any::<u64>(), m in 1usize..=2) {
        let mut r = rng(seed);
        let g = 1 + (seed % 2) as usize;
        let c = random_complex(&mut r, g, 2, 1);
        let h = random_subgroup(&mut r, g, 3);
        let q = QuotientAlgebra::new(h.clone(), m).unwrap();
        let exp = h.exponent() as u32;
        for j in 0..=2 {
            let hq = homology_of_quotient(&c, &q, j).unwrap();
            for a in &hq.deck_actions {
                for b in &hq.deck_actions {
                    prop_assert!(a.commutes_with(b));
                }
                if hq.dim > 0 {
                    prop_assert!(unipotent_order(&a.pow(exp)).unwrap() <= m * g);
                }
            }
            for k in 0..g {
                let gen = h.generator(k);
                if hq.dim > 0 {
                    prop_assert!(unipotent_order(&hq.action(&gen)).unwrap() <= m * g);
                }
            }
        }
    }

    #[test]
    fn tower_maps_compose(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_complex(&mut r, 1, 2, 2);
        let levels = [(SubgroupSpec::cyclic(4).unwrap(), 3), (SubgroupSpec::cyclic(2).unwrap(), 2), (SubgroupSpec::cyclic(1).unwrap(), 1)];
        for j in 0..=2 {
            let hs: Vec<_> = levels
                .iter()
                .map(|(h, m)| homology_of_quotient(&c, &QuotientAlgebra::new(h.clone(), *m).unwrap(), j).unwrap())
                .collect();
            let f01 = hs[0].map_to(&hs[1]).unwrap();
            let f12 = hs[1].map_to(&hs[2]).unwrap();
            let f02 = hs[0].map_to(&hs[2]).unwrap();
            prop_assert_eq!(&f12 * &f01, f02);
            prop_assert_eq!(&f01 * &hs[0].deck_actions[0], &hs[1].deck_actions[0] * &f01);
        }
    }

    #[test]
    fn stabilization_matches_quotient_of_homology(seed in any::<u64>(), m in 1usize..=2) {
        let mut r = rng(seed);
        let c = random_complex(&mut r, 1, 2, 2);
        let h = SubgroupSpec::cyclic(2).unwrap();
        for j in 0..=2 {
            let rep = stabilization_bound(&c, j, &h, m, None).unwrap();
            prop_assert!(rep.certified);
            prop_assert!(rep.m_prime >= m);
            prop_assert_eq!(rep.image_dim, quotient_of_homology(&c, j, &h, m).unwrap().dim);
        }
    }
}

#[test]
fn free_complex_gives_copies_of_the_algebra() {
    for g in 1..=2 {
        let c = FreeChainComplex::zero(g, vec![2, 1, 3]);
        let q = QuotientAlgebra::new(SubgroupSpec::scalar(g, 2).unwrap(), 2).unwrap();
        for (j, r) in [(0, 2), (1, 1), (2, 3)] {
            assert_eq!(homology_of_quotient(&c, &q, j).unwrap().dim, r * q.dim());
            assert_eq!(quotient_of_homology(&c, j, q.subgroup(), 2).unwrap().dim, r * q.dim());
        }
    }
}

#[test]
fn circle_homology() {
    let c = FreeChainComplex::circle();
    for n in 1..=3 {
        for m in 1..=3 {
            let q = QuotientAlgebra::new(SubgroupSpec::cyclic(n).unwrap(), m).unwrap();
            // the infinite cyclic cover of a circle is a line: H_0 = Q, H_1 = 0,
            // while the finite truncations see the circle of the n-fold cover
            assert_eq!(quotient_of_homology(&c, 0, q.subgroup(), m).unwrap().dim, 1);
            assert_eq!(quotient_of_homology(&c, 1, q.subgroup(), m).unwrap().dim, 0);
            assert_eq!(homology_of_quotient(&c, &q, 0).unwrap().dim, 1);
            assert_eq!(homology_of_quotient(&c, &q, 1).unwrap().dim, 1);
        }
    }
    let tc = tensor_quotient(&c, &QuotientAlgebra::new(SubgroupSpec::cyclic(3).unwrap(), 1).unwrap()).unwrap();
    assert_eq!(tc.dim(0), 3);
    assert_eq!(tc.differential(1).rank(), 2);
}

#[test]
fn duality_on_free_complexes() {
    let c = FreeChainComplex::zero(2, vec![1, 2]);
    let h = SubgroupSpec::new(vec![vec![1, 0], vec![0, 2]]).unwrap();
    let d = duality_dims(&c, &h, 2, 1).unwrap();
    assert_eq!(d.homology, d.cohomology);
    assert_eq!(d.homology, 2 * 2 * 3);
}
