mod common;

use alexq::chain::homology_of_quotient;
use alexq::deck::{eigenspace_decomposition, jordan_chevalley, log_on_quotient, quasi_unipotence_order, DeckDecomposition};
use alexq::fox;
use alexq::laurent::QuotientAlgebra;
use alexq::linalg::ri;
use alexq::poly::euler_phi;
use alexq::truncmod::log_operator_on_quotient;
use alexq::{Error, FreeChainComplex, QMatrix, SubgroupSpec, UPoly};
use common::*;
use proptest::prelude::*;
use rand::Rng;
use std::collections::BTreeMap;

fn expected_dims(indices: &[u64], blocks: &[QMatrix]) -> BTreeMap<u64, usize> {
    let mut out = BTreeMap::new();
    for (d, b) in indices.iter().zip(blocks) {
        *out.entry(*d).or_insert(0) += b.rows();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn semisimple_part_lies_in_the_bicommutant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let qu = random_quasi_unipotent_parts(&mut r, 7);
        let a = &qu.matrix;
        let n = a.rows();
        let jc = jordan_chevalley(a).unwrap();
        prop_assert_eq!(&jc.ss * &jc.u, a.clone());
        prop_assert!(jc.ss.commutes_with(&jc.u));
        prop_assert_eq!(a.eval_poly(&jc.p), jc.ss.clone());
        prop_assert_eq!(jc.p.coeff(0), ri(0));
        prop_assert!((&jc.u - &QMatrix::identity(n)).nilpotency_index().is_some());
        prop_assert!(jc.ss.pow(qu.order as u32).is_identity());
        let mu = jc.ss.minimal_polynomial();
        prop_assert_eq!(mu.gcd(&mu.derivative()).degree(), Some(0));

        // elements commuting with A: polynomials in A, and scalars on the blocks
        let q = UPoly::from_i64(&(0..4).map(|_| r.gen_range(-3..=3)).collect::<Vec<_>>());
        prop_assert!(jc.ss.commutes_with(&a.eval_poly(&q)));
        let scalars: Vec<QMatrix> = qu.blocks.iter().map(|b| QMatrix::identity(b.rows()).scale(&ri(r.gen_range(-4..=4)))).collect();
        let c = &(&qu.conj * &QMatrix::block_diagonal(&scalars)) * &qu.conj.inverse().unwrap();
        prop_assert!(c.commutes_with(a));
        prop_assert!(jc.ss.commutes_with(&c));
        prop_assert!(jc.u.commutes_with(&c));
    }

    #[test]
    fn order_and_eigen_dims_match_the_construction(seed in any::<u64>()) {
        let mut r = rng(seed);
        let qu = random_quasi_unipotent_parts(&mut r, 8);
        let a = &qu.matrix;
        prop_assert_eq!(quasi_unipotence_order(a, None).unwrap(), qu.order);
        prop_assert_eq!(quasi_unipotence_order(a, Some(qu.order * 5)).unwrap(), qu.order);
        let dd = DeckDecomposition::new(a, None).unwrap();
        let want = expected_dims(&qu.indices, &qu.blocks);
        let got: BTreeMap<u64, usize> = dd.eigen_table.iter().map(|(d, (dim, _))| (*d, *dim)).collect();
        prop_assert_eq!(&got, &want);
        for (d, (dim, per_root)) in &dd.eigen_table {
            prop_assert_eq!(dim % euler_phi(*d) as usize, 0);
            prop_assert_eq!(*per_root * euler_phi(*d) as usize, *dim);
        }

        let eig = eigenspace_decomposition(std::slice::from_ref(a), None).unwrap();
        prop_assert_eq!(eig.blocks.iter().map(|b| b.dim).sum::<usize>(), a.rows());
        for s in &eig.spaces {
            prop_assert!(s.is_invariant_under(a));
        }
        let roots = eig.roots.as_ref().unwrap();
        for (d, dim) in &want {
            for root in roots.iter().filter(|x| x.d == *d) {
                prop_assert_eq!(root.dim * euler_phi(*d) as usize, *dim);
                prop_assert_eq!(num_integer::gcd(root.k, *d), 1);
            }
            prop_assert_eq!(roots.iter().filter(|x| x.d == *d).count() as u64, euler_phi(*d));
        }
    }

    #[test]
    fn joint_decomposition_refines(seed in any::<u64>()) {
        let mut r = rng(seed);
        let qu = random_quasi_unipotent_parts(&mut r, 6);
        let a = qu.matrix.clone();
        let b = a.pow(2);
        let eig = eigenspace_decomposition(&[a.clone(), b.clone()], None).unwrap();
        prop_assert!(eig.roots.is_none());
        prop_assert_eq!(eig.blocks.iter().map(|x| x.dim).sum::<usize>(), a.rows());
        for (blk, s) in eig.blocks.iter().zip(&eig.spaces) {
            prop_assert!(s.is_invariant_under(&a) && s.is_invariant_under(&b));
            // eigenvalues of A^2 are squares of those of A
            let (d, e) = (blk.factors[0], blk.factors[1]);
            prop_assert_eq!(e, if d % 2 == 0 { d / 2 } else { d });
        }
    }
}

#[test]
fn non_commuting_and_singular() {
    let a = QMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
    let b = QMatrix::from_i64_rows(&[&[1, 0], &[1, 1]]);
    assert!(matches!(eigenspace_decomposition(&[a.clone(), b], None), Err(Error::NonCommuting(0, 1))));
    let z = QMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
    assert_eq!(jordan_chevalley(&z).unwrap_err(), Error::SingularOperator);
    let two = QMatrix::from_i64_rows(&[&[2]]);
    assert!(matches!(quasi_unipotence_order(&two, None), Err(Error::NotQuasiUnipotent(_))));
    assert!(matches!(quasi_unipotence_order(&two, Some(12)), Err(Error::NotQuasiUnipotent(12))));
}

#[test]
fn log_on_free_quotient_is_the_algebra_log() {
    let c = FreeChainComplex::zero(1, vec![1]);
    let q = QuotientAlgebra::new(SubgroupSpec::cyclic(1).unwrap(), 2).unwrap();
    let hq = homology_of_quotient(&c, &q, 0).unwrap();
    assert_eq!(log_on_quotient(&[1], &hq).unwrap(), log_operator_on_quotient(&[1], &q));
}

#[test]
fn trefoil_monodromy() {
    let c = fox::trefoil().complex().unwrap();
    for m in 1..=3 {
        let q = QuotientAlgebra::new(SubgroupSpec::cyclic(6).unwrap(), m).unwrap();
        let hq = homology_of_quotient(&c, &q, 1).unwrap();
        assert!(log_on_quotient(&[6], &hq).unwrap().is_zero());
        let dd = DeckDecomposition::new(&hq.deck_actions[0], Some(6)).unwrap();
        assert_eq!(dd.order, 6);
        assert!(dd.eigen_table.contains_key(&6));
    }
}
