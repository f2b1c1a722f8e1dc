//! Standard Hopf algebras, pseudoalgebras and operators used as reference instances.

use std::sync::Arc;

use crate::error::Result;
use crate::hopf::{GroupSpec, HElem, HopfAlgebra, LieAlgebraSpec};
use crate::operators::HLinearOp;
use crate::pseudo_tensor::ModuleElem;
use crate::pseudoalgebra::{wedge_generator, BaseAlgebra, Flavor, Pseudoalgebra, Table};
use crate::rational::{frac, q, Q};
use crate::tensor::TensorElem;

/// `k[d]`, the enveloping algebra of the one-dimensional Lie algebra.
pub fn polynomial() -> Arc<HopfAlgebra> {
    Arc::new(HopfAlgebra::enveloping(LieAlgebraSpec::abelian(1)))
}

/// `U(d)` for the two-dimensional nonabelian Lie algebra `[d1, d2] = d2`.
pub fn affine() -> Arc<HopfAlgebra> {
    let lie = LieAlgebraSpec::new(2, [(0, 1, 1, q(1))]).expect("Jacobi holds in dimension two");
    Arc::new(HopfAlgebra::enveloping(lie))
}

/// `k[d1, d2]`.
pub fn polynomial2() -> Arc<HopfAlgebra> {
    Arc::new(HopfAlgebra::enveloping(LieAlgebraSpec::abelian(2)))
}

/// `k[Z/n]`.
pub fn cyclic(n: usize) -> Arc<HopfAlgebra> {
    Arc::new(HopfAlgebra::group_algebra(GroupSpec::cyclic(n)))
}

/// `k[d] # k[Z/2]` with the generator of `Z/2` acting by `d -> -d`.
pub fn sign_smash() -> Arc<HopfAlgebra> {
    let action = vec![vec![vec![q(1)]], vec![vec![q(-1)]]];
    Arc::new(HopfAlgebra::smash(LieAlgebraSpec::abelian(1), GroupSpec::cyclic(2), action).expect("valid action"))
}

/// Rank two with the single nonzero product `e2 * e2 = α ⊗_H e2`.
pub fn rank_two(hopf: &Arc<HopfAlgebra>, alpha: TensorElem, flavor: Flavor) -> Pseudoalgebra {
    let mut t = Table::zeros(2);
    t.set(1, 1, 1, alpha).expect("indices in range");
    Pseudoalgebra::new(hopf.clone(), t, flavor).expect("valid table")
}

/// `α = 1 ⊗ 1`: the rank-two example is then associative.
pub fn rank_two_assoc(hopf: &Arc<HopfAlgebra>) -> Pseudoalgebra {
    rank_two(hopf, TensorElem::pure(&[hopf.one(), hopf.one()]), Flavor::Associative)
}

/// `α = d1 ⊗ 1 - 1 ⊗ d1`: the rank-two example is then Lie. Needs a generator.
pub fn rank_two_lie(hopf: &Arc<HopfAlgebra>) -> Result<Pseudoalgebra> {
    Ok(rank_two(hopf, wedge_generator(hopf, 0)?, Flavor::Lie))
}

/// The rank-one Lie pseudoalgebra with `[e * e] = (d_i ⊗ 1 - 1 ⊗ d_i) ⊗_H e`; over `k[d]`
/// with `i = 0` this is `W(1)`.
pub fn wedge_rank_one(hopf: &Arc<HopfAlgebra>, i: usize) -> Result<Pseudoalgebra> {
    let mut t = Table::zeros(1);
    t.set(0, 0, 0, wedge_generator(hopf, i)?)?;
    Pseudoalgebra::new(hopf.clone(), t, Flavor::Lie)
}

pub fn w1() -> Pseudoalgebra {
    wedge_rank_one(&polynomial(), 0).expect("k[d] has a generator")
}

/// `k[t]/(t^2)` on the basis `1, t`.
pub fn dual_numbers() -> BaseAlgebra {
    BaseAlgebra::new(2, [(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1))]).expect("valid")
}

/// `k × k` on the idempotent basis.
pub fn split_pair() -> BaseAlgebra {
    BaseAlgebra::new(2, [(0, 0, 0, q(1)), (1, 1, 1, q(1))]).expect("valid")
}

/// `sl2` on the basis `e, h, f`.
pub fn sl2() -> BaseAlgebra {
    BaseAlgebra::new(
        3,
        [
            (0, 2, 1, q(1)),
            (2, 0, 1, q(-1)),
            (1, 0, 0, q(2)),
            (0, 1, 0, q(-2)),
            (1, 2, 2, q(-2)),
            (2, 1, 2, q(2)),
        ],
    )
    .expect("valid")
}

pub fn current(hopf: &Arc<HopfAlgebra>, base: &BaseAlgebra, flavor: Flavor) -> Pseudoalgebra {
    Pseudoalgebra::current(hopf.clone(), base, flavor).expect("valid")
}

/// Scalar matrix `m` acting on a free module, `P(e_i) = Σ_t m[i][t] e_t`.
pub fn scalar_matrix(hopf: &HopfAlgebra, m: &[Vec<Q>]) -> HLinearOp {
    HLinearOp::from_matrix(m.iter().map(|row| row.iter().map(|c| hopf.scalar(c.clone())).collect()).collect())
        .expect("square matrix")
}

/// `T(e1) = h e1`, `T(e2) = λ e2`.
pub fn diag_h_lambda(hopf: &HopfAlgebra, h: HElem, lambda: Q) -> HLinearOp {
    HLinearOp::diagonal(vec![h, hopf.scalar(lambda)])
}

/// `N(e1) = λ e1`, `N(e2) = g e1 + λ e2`.
pub fn upper_g_lambda(hopf: &HopfAlgebra, g: HElem, lambda: Q) -> HLinearOp {
    HLinearOp::from_rows(vec![
        ModuleElem::single(2, 0, hopf.scalar(lambda.clone())),
        ModuleElem::from_coeffs(vec![g, hopf.scalar(lambda)]),
    ])
    .expect("rank two")
}

/// The averaging idempotent `(x, y) -> ((x+y)/2, (x+y)/2)` on `k × k`.
pub fn mean_projection(hopf: &HopfAlgebra) -> HLinearOp {
    let h = frac(1, 2);
    scalar_matrix(hopf, &[vec![h.clone(), h.clone()], vec![h.clone(), h]])
}
