//! Annihilation algebras: the Witt bracket of `W(1)`, independence of the representative used
//! for a pseudoproduct, and lifts `ξ ⊗_H P` over group algebras.

mod common;

use pseudoalg::annihilation::{
    check_lift, hypothesis_report, AnnihilationAlgebra, DualMap, DualSpace, Validity,
};
use pseudoalg::catalog::{self, diag_h_lambda, mean_projection, upper_g_lambda};
use pseudoalg::hopf::HElem;
use pseudoalg::operators::{HLinearOp, OperatorKind};
use pseudoalg::pseudo_tensor::ModuleElem;
use pseudoalg::pseudoalgebra::{Flavor, PseudoProduct};
use pseudoalg::rational::{frac, q, Q};
use pseudoalg::tensor::TensorElem;

use common::*;

#[test]
fn w1_first_bracket_at_truncation_three() {
    let alg = catalog::w1();
    let h = alg.hopf();
    let ann = AnnihilationAlgebra::new(&alg, 3);
    let x1 = ann.basis_elem(&h.mono(&[1], 0), 0).unwrap();
    let x0 = ann.basis_elem(&h.mono(&[0], 0), 0).unwrap();
    let p = ann.product(&x1, &x0).unwrap();
    assert_eq!(p.coeff(0).validity(), Validity::UpTo(2));
    assert!(p.sub(&x0).is_zero(), "{}", p.fmt(h));
    assert_eq!(p.coeff(0).coeff(&h.mono(&[0], 0)).unwrap(), q(1));
    assert!(p.coeff(0).coeff(&h.mono(&[3], 0)).is_err());
}

#[test]
fn w1_annihilation_algebra_is_witt() {
    // With x_n dual to d^(n), x_n ⊗ e behaves as t^n and [t^i, t^j] = (i - j) t^(i+j-1).
    let alg = catalog::w1();
    let h = alg.hopf();
    let ann = AnnihilationAlgebra::new(&alg, 6);
    for i in 0..=3u32 {
        for j in 0..=3u32 {
            let u = ann.basis_elem(&h.mono(&[i], 0), 0).unwrap();
            let v = ann.basis_elem(&h.mono(&[j], 0), 0).unwrap();
            let p = ann.product(&u, &v).unwrap();
            let expected = if i + j == 0 {
                ann.basis_elem(&h.mono(&[0], 0), 0).unwrap().scale(&q(0))
            } else {
                ann.basis_elem(&h.mono(&[i + j - 1], 0), 0).unwrap().scale(&Q::from_integer((i as i64 - j as i64).into()))
            };
            assert!(p.sub(&expected).is_zero(), "[x{i}, x{j}] = {}", p.fmt(h));
        }
    }
}

#[test]
fn product_does_not_depend_on_the_representative() {
    let mut r = rng(31);
    let corpus = hopf_corpus();
    let mut nonzero = 0;
    for trial in 0..100 {
        let (_, hopf) = &corpus[trial % corpus.len()];
        let hopf = hopf.clone();
        let alg = catalog::rank_two_assoc(&hopf);
        let ann = AnnihilationAlgebra::new(&alg, 6);
        let space = &ann.space;
        let dual = |r: &mut rand_chacha::ChaCha8Rng| {
            let m = random_mono(&hopf, r, 1);
            space.dual_of(&m).unwrap().scale(&random_nonzero_q(r))
        };
        let (x, y) = (dual(&mut r), dual(&mut r));
        let mut original = Vec::new();
        let mut moved = Vec::new();
        for _ in 0..2 {
            let t = random_tensor(&hopf, &mut r, 2, 1, 2);
            let h1 = random_elem(&hopf, &mut r, 1, 2);
            let h2 = random_elem(&hopf, &mut r, 1, 2);
            let k = (trial + original.len()) % 2;
            let m = ModuleElem::single(2, k, hopf.mul(&h1, &h2));
            original.push((t.clone(), m));
            let shifted = hopf.tensor_mul(&t, &hopf.coproduct(&h1)).unwrap();
            moved.push((shifted, ModuleElem::single(2, k, h2)));
        }
        let a = ann.product_via(&x, &y, &original).unwrap();
        let b = ann.product_via(&x, &y, &moved).unwrap();
        assert!(a.sub(&b).is_zero(), "trial {trial}: {} vs {}", a.fmt(&hopf), b.fmt(&hopf));
        nonzero += usize::from(!a.is_zero());
    }
    assert!(nonzero >= 30, "only {nonzero} nonzero products");
}

#[test]
fn table_product_matches_canonical_representatives() {
    let mut r = rng(32);
    for (_, a) in rank_two_corpus() {
        let hopf = a.hopf_arc().clone();
        let ann = AnnihilationAlgebra::new(&a, 5);
        for _ in 0..5 {
            let x = ann.space.dual_of(&random_mono(&hopf, &mut r, 2)).unwrap();
            let y = ann.space.dual_of(&random_mono(&hopf, &mut r, 2)).unwrap();
            let raw = a.basis_product(1, 1).to_raw(&hopf);
            let via = ann.product_via(&x, &y, &raw).unwrap();
            let mut u = ann.from_pair(&x, &a.basis(1)).unwrap();
            let v = ann.from_pair(&y, &a.basis(1)).unwrap();
            let direct = ann.product(&u, &v).unwrap();
            assert!(via.sub(&direct).is_zero());
            u = ann.from_pair(&x, &a.basis(0)).unwrap();
            assert!(ann.product(&u, &v).unwrap().is_zero());
        }
    }
}

#[test]
fn group_annihilation_algebras_are_associative() {
    let algs = [
        catalog::rank_two_assoc(&catalog::cyclic(3)),
        catalog::current(&catalog::cyclic(2), &catalog::split_pair(), Flavor::Associative),
        catalog::current(&catalog::cyclic(3), &catalog::dual_numbers(), Flavor::Associative),
    ];
    for a in &algs {
        let ann = AnnihilationAlgebra::new(a, 0);
        assert!(ann.space.is_exact());
        let rep = ann.associativity_report().unwrap();
        assert!(rep.passed(), "{rep}");
    }
}

fn inverse_order(n: usize) -> Q {
    frac(1, n as i64)
}

#[test]
fn integral_lifts_over_cyclic_groups() {
    for n in [2, 3] {
        let h = catalog::cyclic(n);
        let a = catalog::rank_two_assoc(&h);
        let ann = AnnihilationAlgebra::new(&a, 0);
        let t = DualMap::integral(&h, &q(1)).unwrap();
        let t_mean = DualMap::integral(&h, &inverse_order(n)).unwrap();
        let avg = diag_h_lambda(&h, h.group_elem(1), frac(2, 3));
        let rep = check_lift(&OperatorKind::Averaging, &t, &avg, &ann).unwrap();
        assert!(rep.passed(), "n = {n}: {rep}");
        let rep = check_lift(&OperatorKind::Averaging, &t_mean, &avg, &ann).unwrap();
        assert!(rep.passed(), "n = {n}: {rep}");
        let l = frac(3, 2);
        let rey = diag_h_lambda(&h, h.one(), -(Q::from_integer(1.into()) / l.clone()));
        let kind = OperatorKind::Reynolds(l);
        let rep = check_lift(&kind, &t_mean, &rey, &ann).unwrap();
        assert!(rep.passed(), "n = {n}: {rep}");
        assert!(!hypothesis_report(&kind, &t, &ann.space).unwrap().passed(), "n = {n}");
        let cur = catalog::current(&h, &catalog::split_pair(), Flavor::Associative);
        let ann_cur = AnnihilationAlgebra::new(&cur, 0);
        let rep = check_lift(&OperatorKind::Averaging, &t, &mean_projection(&h), &ann_cur).unwrap();
        assert!(rep.passed(), "n = {n}: {rep}");
        let rep = check_lift(&OperatorKind::Reynolds(q(-1)), &t_mean, &mean_projection(&h), &ann_cur).unwrap();
        assert!(rep.passed(), "n = {n}: {rep}");
    }
}

#[test]
fn nijenhuis_hypothesis_fails_for_the_integral_and_holds_for_zero() {
    for n in [2, 3] {
        let h = catalog::cyclic(n);
        let a = catalog::rank_two_assoc(&h);
        let ann = AnnihilationAlgebra::new(&a, 0);
        let t = DualMap::integral(&h, &q(1)).unwrap();
        assert!(!hypothesis_report(&OperatorKind::Nijenhuis, &t, &ann.space).unwrap().passed());
        let zero = DualMap::Left(HElem::zero());
        let nij = upper_g_lambda(&h, h.scalar(q(2)), frac(1, 2));
        let rep = check_lift(&OperatorKind::Nijenhuis, &zero, &nij, &ann).unwrap();
        assert!(rep.passed(), "n = {n}: {rep}");
    }
}

#[test]
fn identity_lift_over_an_enveloping_algebra() {
    let alg = catalog::w1();
    let ann = AnnihilationAlgebra::new(&alg, 3);
    let xi = DualMap::identity(alg.hopf());
    let op = HLinearOp::scalar(alg.hopf(), 1, frac(-2, 5));
    let rep = check_lift(&OperatorKind::Averaging, &xi, &op, &ann).unwrap();
    assert!(rep.passed(), "{rep}");
}

#[test]
fn dual_space_basics() {
    let h = catalog::sign_smash();
    let s = DualSpace::new(h.clone(), 2);
    assert!(!s.is_exact());
    assert_eq!(s.full_validity(), Validity::UpTo(2));
    let x = s.dual_of(&h.mono(&[1], 1)).unwrap();
    let unit = s.unit();
    assert!(s.product(&unit, &x).unwrap().agrees(&x));
    assert!(s.dual_of(&h.mono(&[3], 0)).is_err());
    let t = TensorElem::pure(&[h.one(), h.one()]);
    assert!(s.pair_action(&unit, &x, &t).unwrap().agrees(&x));
}
