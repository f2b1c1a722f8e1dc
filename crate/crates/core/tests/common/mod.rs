//! Shared fixtures for the integration tests: the Hopf algebra corpus, the rank-two example
//! algebras and seeded random elements.
#![allow(dead_code)]

use std::sync::Arc;

use pseudoalg::catalog;
use pseudoalg::hopf::{HElem, HopfAlgebra, Mono};
use pseudoalg::pseudoalgebra::{Flavor, Pseudoalgebra};
use pseudoalg::rational::{frac, q, Q};
use pseudoalg::tensor::TensorElem;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `k[d]`, `U(d)` with `[d1, d2] = d2`, `k[Z/2]`, `k[Z/3]` and `k[d] # Z/2`.
pub fn hopf_corpus() -> Vec<(&'static str, Arc<HopfAlgebra>)> {
    vec![
        ("k[d]", catalog::polynomial()),
        ("U(d2)", catalog::affine()),
        ("k[Z/2]", catalog::cyclic(2)),
        ("k[Z/3]", catalog::cyclic(3)),
        ("k[d]#Z/2", catalog::sign_smash()),
    ]
}

pub fn random_q(rng: &mut ChaCha8Rng) -> Q {
    let n = rng.gen_range(-4i64..=4);
    let d = rng.gen_range(1i64..=3);
    frac(n, d)
}

pub fn random_nonzero_q(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let c = random_q(rng);
        if c != q(0) {
            return c;
        }
    }
}

pub fn random_mono(h: &HopfAlgebra, rng: &mut ChaCha8Rng, max_deg: u32) -> Mono {
    let basis = h.basis_up_to(max_deg);
    basis[rng.gen_range(0..basis.len())].clone()
}

/// A random element with at most `terms` terms of degree at most `max_deg`.
pub fn random_elem(h: &HopfAlgebra, rng: &mut ChaCha8Rng, max_deg: u32, terms: usize) -> HElem {
    let mut out = HElem::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        out.add_term(random_mono(h, rng, max_deg), random_q(rng));
    }
    out
}

pub fn random_nonzero_elem(h: &HopfAlgebra, rng: &mut ChaCha8Rng, max_deg: u32, terms: usize) -> HElem {
    loop {
        let e = random_elem(h, rng, max_deg, terms);
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn random_tensor(h: &HopfAlgebra, rng: &mut ChaCha8Rng, arity: usize, max_deg: u32, terms: usize) -> TensorElem {
    let mut t = TensorElem::zero(arity);
    for _ in 0..rng.gen_range(1..=terms) {
        let slots = (0..arity).map(|_| random_mono(h, rng, max_deg)).collect();
        t.add_term(slots, random_q(rng));
    }
    t
}

pub fn random_nonzero_tensor(h: &HopfAlgebra, rng: &mut ChaCha8Rng, arity: usize, max_deg: u32, terms: usize) -> TensorElem {
    loop {
        let t = random_tensor(h, rng, arity, max_deg, terms);
        if !t.is_zero() {
            return t;
        }
    }
}

/// The rank-two algebras `e2 * e2 = α ⊗_H e2` over every Hopf algebra of the corpus: the
/// associative one (`α = 1 ⊗ 1`), the Lie one where a generator exists, and one with a random
/// `α` that carries no axioms.
pub fn rank_two_corpus() -> Vec<(String, Pseudoalgebra)> {
    let mut out = Vec::new();
    let mut r = rng(7);
    for (name, h) in hopf_corpus() {
        out.push((format!("{name} assoc"), catalog::rank_two_assoc(&h)));
        if let Ok(a) = catalog::rank_two_lie(&h) {
            out.push((format!("{name} lie"), a));
        }
        let alpha = random_nonzero_tensor(&h, &mut r, 2, 2, 3);
        out.push((format!("{name} random"), catalog::rank_two(&h, alpha, Flavor::Unchecked)));
    }
    out
}
