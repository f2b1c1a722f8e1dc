//! Structures built from operators: closed forms on the rank-two family and axiom checks on
//! current algebras.

mod common;

use pseudoalg::catalog::{self, diag_h_lambda, mean_projection, scalar_matrix, upper_g_lambda};
use pseudoalg::error::Error;
use pseudoalg::operators::{
    check_homomorphism, check_ns, check_operator, derive, DeriveKind, Derived, HLinearOp, OperatorKind,
};
use pseudoalg::pseudoalgebra::{check_structure, Flavor, PseudoProduct, Pseudoalgebra};
use pseudoalg::rational::{frac, q, Q};
use pseudoalg::tensor::TensorElem;

use common::*;

fn algebra(d: Derived) -> Pseudoalgebra {
    d.algebra().expect("single product").clone()
}

/// Expected table of a rank-two derived product: only `e2 * e2` survives, scaled by `c`.
fn rank_two_scaled(a: &Pseudoalgebra, c: &Q) -> TensorElem {
    a.table().get(1, 1, 1).scale(c)
}

fn only_e2e2(d: &Pseudoalgebra, expected: &TensorElem) {
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let want = if (i, j, k) == (1, 1, 1) { expected.clone() } else { TensorElem::zero(2) };
                assert_eq!(d.table().get(i, j, k), &want, "entry ({i}, {j}, {k})");
            }
        }
    }
}

fn assoc_rank_two() -> Vec<Pseudoalgebra> {
    hopf_corpus().into_iter().map(|(_, h)| catalog::rank_two_assoc(&h)).collect()
}

#[test]
fn averaging_twists_and_bracket_on_rank_two() {
    let mut r = rng(21);
    for a in assoc_rank_two() {
        let h = a.hopf();
        let l = random_nonzero_q(&mut r);
        let t = diag_h_lambda(h, random_elem(h, &mut r, 2, 2), l.clone());
        for kind in [DeriveKind::AssocTwistRight, DeriveKind::AssocTwistLeft] {
            let d = algebra(derive(&kind, &t, &a).unwrap());
            only_e2e2(&d, &rank_two_scaled(&a, &l));
            assert!(check_structure(&d, Some(Flavor::Associative)).passed());
            assert!(check_operator(&OperatorKind::Averaging, &t, &d).passed());
        }
        // α = 1 ⊗ 1 is symmetric, so the bracket vanishes.
        let lie = algebra(derive(&DeriveKind::LieFromAveraging, &t, &a).unwrap());
        only_e2e2(&lie, &TensorElem::zero(2));
    }
}

#[test]
fn averaging_constructions_on_currents() {
    let cases = [
        (catalog::current(&catalog::polynomial(), &catalog::split_pair(), Flavor::Associative), true),
        (catalog::current(&catalog::affine(), &catalog::split_pair(), Flavor::Associative), true),
        (catalog::current(&catalog::sign_smash(), &catalog::dual_numbers(), Flavor::Associative), false),
    ];
    for (a, split) in cases {
        let h = a.hopf();
        let t = if split { mean_projection(h) } else { HLinearOp::scalar(h, 2, frac(2, 3)) };
        let lie = algebra(derive(&DeriveKind::LieFromAveraging, &t, &a).unwrap());
        let rep = check_structure(&lie, Some(Flavor::Lie));
        assert!(rep.passed(), "{rep}");
        for kind in [DeriveKind::AssocTwistRight, DeriveKind::AssocTwistLeft] {
            let d = algebra(derive(&kind, &t, &a).unwrap());
            assert!(check_structure(&d, Some(Flavor::Associative)).passed());
        }
    }
}

#[test]
fn nijenhuis_ns_structure() {
    let mut r = rng(22);
    for a in assoc_rank_two() {
        let h = a.hopf();
        let l = random_nonzero_q(&mut r);
        let n = diag_h_lambda(h, random_elem(h, &mut r, 2, 2), l.clone());
        let ns = derive(&DeriveKind::NsFromNijenhuis, &n, &a).unwrap().ns().unwrap().clone();
        only_e2e2(&ns.succ, &rank_two_scaled(&a, &l));
        only_e2e2(&ns.prec, &rank_two_scaled(&a, &l));
        only_e2e2(&ns.diamond, &rank_two_scaled(&a, &-l.clone()));
        only_e2e2(&ns.sum().unwrap(), &rank_two_scaled(&a, &l));
        let rep = check_ns(&ns);
        assert!(rep.passed(), "{rep}");
        let upper = upper_g_lambda(h, h.scalar(q(2)), l);
        assert!(check_ns(derive(&DeriveKind::NsFromNijenhuis, &upper, &a).unwrap().ns().unwrap()).passed());
    }
    let h = catalog::affine();
    let cases = [
        (catalog::split_pair(), scalar_matrix(&h, &[vec![q(1), q(0)], vec![q(0), q(2)]])),
        (catalog::dual_numbers(), HLinearOp::scalar(&h, 2, q(3))),
    ];
    for (base, n) in cases {
        let a = catalog::current(&h, &base, Flavor::Associative);
        let ns = derive(&DeriveKind::NsFromNijenhuis, &n, &a).unwrap();
        assert!(check_ns(ns.ns().unwrap()).passed());
    }
}

#[test]
fn nijenhuis_deformation_of_lie_brackets() {
    let mut r = rng(23);
    let mut algs: Vec<Pseudoalgebra> = hopf_corpus()
        .into_iter()
        .filter_map(|(_, h)| catalog::rank_two_lie(&h).ok())
        .collect();
    assert_eq!(algs.len(), 3);
    for a in &algs {
        let h = a.hopf();
        let l = random_nonzero_q(&mut r);
        let n = diag_h_lambda(h, random_elem(h, &mut r, 2, 2), l.clone());
        let d = algebra(derive(&DeriveKind::LieDeformNijenhuis, &n, a).unwrap());
        only_e2e2(&d, &rank_two_scaled(a, &l));
        assert!(check_structure(&d, Some(Flavor::Lie)).passed());
        assert!(check_homomorphism(&n, &d, a).passed());
    }
    algs.clear();
    algs.push(catalog::w1());
    algs.push(catalog::current(&catalog::affine(), &catalog::sl2(), Flavor::Lie));
    for a in &algs {
        let n = HLinearOp::scalar(a.hopf(), a.rank(), frac(-3, 2));
        let d = algebra(derive(&DeriveKind::LieDeformNijenhuis, &n, a).unwrap());
        assert!(check_structure(&d, Some(Flavor::Lie)).passed());
        assert!(check_homomorphism(&n, &d, a).passed());
    }
}

#[test]
fn reynolds_double_product() {
    let mut r = rng(24);
    for a in assoc_rank_two() {
        let h = a.hopf();
        let l = random_nonzero_q(&mut r);
        let mu = -(Q::from_integer(1.into()) / l.clone());
        let rey = diag_h_lambda(h, random_elem(h, &mut r, 2, 2), mu.clone());
        let d = algebra(derive(&DeriveKind::ReynoldsDouble(l.clone()), &rey, &a).unwrap());
        only_e2e2(&d, &rank_two_scaled(&a, &mu));
        assert!(check_structure(&d, Some(Flavor::Associative)).passed());
        assert!(check_operator(&OperatorKind::Reynolds(l), &rey, &d).passed());
    }
    for h in [catalog::polynomial(), catalog::cyclic(3)] {
        let a = catalog::current(&h, &catalog::split_pair(), Flavor::Associative);
        let rey = mean_projection(&h);
        let d = algebra(derive(&DeriveKind::ReynoldsDouble(q(-1)), &rey, &a).unwrap());
        assert!(check_structure(&d, Some(Flavor::Associative)).passed());
    }
}

#[test]
fn preconditions_are_enforced() {
    let w = catalog::w1();
    let id = HLinearOp::identity(w.hopf(), 1);
    assert!(matches!(derive(&DeriveKind::LieFromAveraging, &id, &w), Err(Error::PreconditionFailed(_))));
    assert!(matches!(derive(&DeriveKind::NsFromNijenhuis, &id, &w), Err(Error::PreconditionFailed(_))));
    assert!(derive(&DeriveKind::LieDeformNijenhuis, &id, &w).is_ok());
    let a = catalog::current(&catalog::polynomial(), &catalog::split_pair(), Flavor::Associative);
    let swap = scalar_matrix(a.hopf(), &[vec![q(0), q(1)], vec![q(1), q(0)]]);
    assert!(matches!(derive(&DeriveKind::AssocTwistRight, &swap, &a), Err(Error::PreconditionFailed(_))));
    assert!(matches!(derive(&DeriveKind::ReynoldsDouble(q(1)), &swap, &a), Err(Error::PreconditionFailed(_))));
    assert!(matches!(
        derive(&DeriveKind::AssocTwistLeft, &id, &a),
        Err(Error::RankMismatch { expected: 2, found: 1 })
    ));
}

#[test]
fn construction_names_round_trip() {
    for k in [
        DeriveKind::LieFromAveraging,
        DeriveKind::AssocTwistRight,
        DeriveKind::AssocTwistLeft,
        DeriveKind::NsFromNijenhuis,
        DeriveKind::LieDeformNijenhuis,
        DeriveKind::ReynoldsDouble(frac(-1, 2)),
    ] {
        assert_eq!(k.to_string().parse::<DeriveKind>().unwrap(), k);
    }
    assert!("reynolds-double(x)".parse::<DeriveKind>().is_err());
}
