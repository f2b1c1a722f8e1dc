//! Elements of `H^{⊗n} ⊗_H M` for a free module `M = ⊕ H e_k`, kept in the canonical form
//! where the last tensor slot is `1`.
//!
//! The quotient identifies `F (Δ^{(n)}(h)) ⊗_H m` with `F ⊗_H h m`. Rewriting
//! `f_1 ⊗ ... ⊗ f_n ⊗_H m` as
//! `Σ f_1 S(f_n(1)) ⊗ ... ⊗ f_{n-1} S(f_n(n-1)) ⊗ 1 ⊗_H f_n(n) m`
//! gives a unique representative, so equality is term-wise comparison.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hopf::{HElem, HopfAlgebra, Mono};
use crate::rational::{q, Q};
use crate::tensor::{accumulate, check_permutation, TensorElem};

/// `Σ_k h_k e_k` in the free module of rank `coeffs.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElem {
    coeffs: Vec<HElem>,
}

impl ModuleElem {
    pub fn zero(rank: usize) -> Self {
        ModuleElem { coeffs: vec![HElem::zero(); rank] }
    }

    pub fn from_coeffs(coeffs: Vec<HElem>) -> Self {
        ModuleElem { coeffs }
    }

    /// `h e_k`.
    pub fn single(rank: usize, k: usize, h: HElem) -> Self {
        let mut m = ModuleElem::zero(rank);
        m.coeffs[k] = h;
        m
    }

    pub fn basis(hopf: &HopfAlgebra, rank: usize, k: usize) -> Self {
        Self::single(rank, k, hopf.one())
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &HElem {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[HElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(HElem::is_zero)
    }

    pub fn add(&self, other: &ModuleElem) -> ModuleElem {
        debug_assert_eq!(self.rank(), other.rank());
        ModuleElem { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &ModuleElem) -> ModuleElem {
        debug_assert_eq!(self.rank(), other.rank());
        ModuleElem { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Q) -> ModuleElem {
        ModuleElem { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// `h · m`.
    pub fn left_mul(&self, hopf: &HopfAlgebra, h: &HElem) -> ModuleElem {
        ModuleElem { coeffs: self.coeffs.iter().map(|a| hopf.mul(h, a)).collect() }
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.iter().map(HElem::degree).max().unwrap_or(-1)
    }

    pub fn fmt(&self, hopf: &HopfAlgebra) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, h)| !h.is_zero())
            .map(|(k, h)| {
                if *h == hopf.one() {
                    format!("e{}", k + 1)
                } else {
                    format!("({}) e{}", hopf.fmt_elem(h), k + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PseudoKey {
    /// The first `n - 1` tensor slots; the last slot is `1`.
    pub slots: Vec<Mono>,
    /// Monomial coefficient of the module basis vector.
    pub coeff: Mono,
    pub module: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PseudoElem {
    arity: usize,
    rank: usize,
    terms: BTreeMap<PseudoKey, Q>,
}

impl PseudoElem {
    pub fn zero(arity: usize, rank: usize) -> Self {
        PseudoElem { arity, rank, terms: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PseudoKey, &Q)> {
        self.terms.iter()
    }

    /// Adds a term that is already canonical.
    pub fn add_canonical(&mut self, key: PseudoKey, c: Q) {
        debug_assert_eq!(key.slots.len() + 1, self.arity);
        debug_assert!(key.module < self.rank);
        accumulate(&mut self.terms, key, c);
    }

    fn compatible(&self, other: &PseudoElem) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &PseudoElem) -> Result<PseudoElem> {
        self.compatible(other)?;
        Ok(self.add(other))
    }

    pub fn add(&self, other: &PseudoElem) -> PseudoElem {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            accumulate(&mut out.terms, k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PseudoElem) -> PseudoElem {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            accumulate(&mut out.terms, k.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> PseudoElem {
        if c.is_zero() {
            return PseudoElem::zero(self.arity, self.rank);
        }
        PseudoElem {
            arity: self.arity,
            rank: self.rank,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> PseudoElem {
        self.scale(&q(-1))
    }

    /// Equality in the quotient; elements of different shape are never equal.
    pub fn equal(&self, other: &PseudoElem) -> bool {
        self.arity == other.arity && self.rank == other.rank && self.terms == other.terms
    }

    /// Largest degree of the first slot among all terms, or -1 for zero.
    pub fn max_first_slot_degree(&self) -> i64 {
        self.terms.keys().map(|k| k.slots[0].degree() as i64).max().unwrap_or(-1)
    }

    /// The canonical representative as raw `(tensor, module)` pairs.
    pub fn to_raw(&self, hopf: &HopfAlgebra) -> Vec<(TensorElem, ModuleElem)> {
        let unit = hopf.unit_mono();
        self.terms
            .iter()
            .map(|(k, c)| {
                let mut slots = k.slots.clone();
                slots.push(unit.clone());
                let mut t = TensorElem::zero(self.arity);
                t.add_term(slots, c.clone());
                (t, ModuleElem::single(self.rank, k.module, HElem::from_mono(k.coeff.clone())))
            })
            .collect()
    }

    pub fn fmt(&self, hopf: &HopfAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let unit = hopf.unit_mono();
        let mut s = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let mut slots: Vec<String> = k.slots.iter().map(|m| hopf.fmt_mono(m)).collect();
            slots.push("1".into());
            let coeff = if k.coeff == unit { String::new() } else { format!("{} ", hopf.fmt_mono(&k.coeff)) };
            let body = format!("({}) ⊗_H {}e{}", slots.join(" | "), coeff, k.module + 1);
            crate::hopf::push_signed(&mut s, i == 0, c, &body, false);
        }
        let _ = write!(s, "");
        s
    }
}

/// Pushes the canonical form of `c · (slots) ⊗_H coeff e_k` into `out`.
fn normalize_basis_term(
    hopf: &HopfAlgebra,
    slots: &[Mono],
    c: &Q,
    coeff: &HElem,
    k: usize,
    out: &mut PseudoElem,
) {
    let n = slots.len();
    let last = &slots[n - 1];
    if *last == hopf.unit_mono() {
        for (m, d) in coeff.terms() {
            out.add_canonical(PseudoKey { slots: slots[..n - 1].to_vec(), coeff: m.clone(), module: k }, c * d);
        }
        return;
    }
    for parts in hopf.iterated_coproduct_mono(last, n) {
        let mut acc: Vec<(Vec<Mono>, Q)> = vec![(Vec::with_capacity(n - 1), c.clone())];
        for j in 0..n - 1 {
            let s = hopf.antipode_mono(&parts[j]);
            let prod = hopf.mul(&HElem::from_mono(slots[j].clone()), &s);
            let mut next = Vec::with_capacity(acc.len() * prod.len());
            for (key, c) in &acc {
                for (m, d) in prod.terms() {
                    let mut key = key.clone();
                    key.push(m.clone());
                    next.push((key, c * d));
                }
            }
            acc = next;
        }
        let tail = hopf.mul(&HElem::from_mono(parts[n - 1].clone()), coeff);
        for (key, c) in acc {
            for (m, d) in tail.terms() {
                out.add_canonical(PseudoKey { slots: key.clone(), coeff: m.clone(), module: k }, &c * d);
            }
        }
    }
}

/// Canonical form of `Σ t_i ⊗_H m_i`.
pub fn normalize(hopf: &HopfAlgebra, arity: usize, rank: usize, raw: &[(TensorElem, ModuleElem)]) -> Result<PseudoElem> {
    if arity < 2 {
        return Err(Error::ArityTooSmall(arity));
    }
    let mut out = PseudoElem::zero(arity, rank);
    for (t, m) in raw {
        if t.arity() != arity {
            return Err(Error::ArityMismatch { expected: arity, found: t.arity() });
        }
        if m.rank() != rank {
            return Err(Error::RankMismatch { expected: rank, found: m.rank() });
        }
        for (slots, c) in t.terms() {
            for (k, h) in m.coeffs().iter().enumerate() {
                if !h.is_zero() {
                    normalize_basis_term(hopf, slots, c, h, k, &mut out);
                }
            }
        }
    }
    Ok(out)
}

/// Canonical form of `t ⊗_H m` for a single pair.
pub fn normalize_pair(hopf: &HopfAlgebra, t: &TensorElem, m: &ModuleElem) -> Result<PseudoElem> {
    normalize(hopf, t.arity(), m.rank(), std::slice::from_ref(&(t.clone(), m.clone())))
}

/// `F(f ⊗ g) = f S(g_(1)) ⊗ g_(2)`.
pub fn fourier(hopf: &HopfAlgebra, t: &TensorElem) -> Result<TensorElem> {
    fourier_with(hopf, t, true)
}

/// `F^{-1}(f ⊗ g) = f g_(1) ⊗ g_(2)`.
pub fn fourier_inv(hopf: &HopfAlgebra, t: &TensorElem) -> Result<TensorElem> {
    fourier_with(hopf, t, false)
}

fn fourier_with(hopf: &HopfAlgebra, t: &TensorElem, forward: bool) -> Result<TensorElem> {
    if t.arity() != 2 {
        return Err(Error::ArityMismatch { expected: 2, found: t.arity() });
    }
    let mut out = TensorElem::zero(2);
    for (slots, c) in t.terms() {
        for (g1, g2) in hopf.coproduct_mono(&slots[1]) {
            let right = if forward { hopf.antipode_mono(&g1) } else { HElem::from_mono(g1) };
            let left = hopf.mul(&HElem::from_mono(slots[0].clone()), &right);
            for (m, d) in left.terms() {
                out.add_term(vec![m.clone(), g2.clone()], c * d);
            }
        }
    }
    Ok(out)
}

/// Left action of `H^{⊗n}` on `H^{⊗n} ⊗_H M`.
pub fn act(hopf: &HopfAlgebra, left: &TensorElem, p: &PseudoElem) -> Result<PseudoElem> {
    if left.arity() != p.arity {
        return Err(Error::ArityMismatch { expected: p.arity, found: left.arity() });
    }
    let n = p.arity;
    let mut out = PseudoElem::zero(n, p.rank);
    for (lk, lc) in left.terms() {
        for (key, c) in &p.terms {
            let c = lc * c;
            let mut acc: Vec<(Vec<Mono>, Q)> = vec![(Vec::with_capacity(n), c)];
            for j in 0..n - 1 {
                let prod = hopf.mul_mono(&lk[j], &key.slots[j]);
                let mut next = Vec::with_capacity(acc.len() * prod.len());
                for (s, c) in &acc {
                    for (m, d) in prod.terms() {
                        let mut s = s.clone();
                        s.push(m.clone());
                        next.push((s, c * d));
                    }
                }
                acc = next;
            }
            let coeff = HElem::from_mono(key.coeff.clone());
            for (mut slots, c) in acc {
                slots.push(lk[n - 1].clone());
                normalize_basis_term(hopf, &slots, &c, &coeff, key.module, &mut out);
            }
        }
    }
    Ok(out)
}

/// `(σ ⊗_H id)`: slot `i` moves to slot `perm[i]`.
pub fn permute(hopf: &HopfAlgebra, perm: &[usize], p: &PseudoElem) -> Result<PseudoElem> {
    check_permutation(perm, p.arity)?;
    let n = p.arity;
    let unit = hopf.unit_mono();
    let mut out = PseudoElem::zero(n, p.rank);
    for (key, c) in &p.terms {
        let mut slots = vec![unit.clone(); n];
        for (i, m) in key.slots.iter().enumerate() {
            slots[perm[i]] = m.clone();
        }
        normalize_basis_term(hopf, &slots, c, &HElem::from_mono(key.coeff.clone()), key.module, &mut out);
    }
    Ok(out)
}

/// `(id ⊗_H φ)` for the H-linear map with `φ(e_k) = images[k]`.
pub fn map_module(hopf: &HopfAlgebra, p: &PseudoElem, images: &[ModuleElem]) -> Result<PseudoElem> {
    if images.len() != p.rank {
        return Err(Error::RankMismatch { expected: p.rank, found: images.len() });
    }
    let rank_out = images.first().map(ModuleElem::rank).unwrap_or(0);
    let mut out = PseudoElem::zero(p.arity, rank_out);
    for (key, c) in &p.terms {
        let img = &images[key.module];
        for (t, h) in img.coeffs().iter().enumerate() {
            if h.is_zero() {
                continue;
            }
            let prod = hopf.mul(&HElem::from_mono(key.coeff.clone()), h);
            for (m, d) in prod.terms() {
                out.add_canonical(PseudoKey { slots: key.slots.clone(), coeff: m.clone(), module: t }, c * d);
            }
        }
    }
    Ok(out)
}

/// The unique `α_k ∈ H^{⊗n}` with `p = Σ_k α_k ⊗_H e_k`.
pub fn coefficient_tensor(hopf: &HopfAlgebra, p: &PseudoElem, k: usize) -> TensorElem {
    let n = p.arity;
    let mut out = TensorElem::zero(n);
    for (key, c) in p.terms.iter().filter(|(key, _)| key.module == k) {
        for parts in hopf.iterated_coproduct_mono(&key.coeff, n) {
            let mut acc: Vec<(Vec<Mono>, Q)> = vec![(Vec::with_capacity(n), c.clone())];
            for j in 0..n {
                let prod = if j < n - 1 {
                    hopf.mul_mono(&key.slots[j], &parts[j])
                } else {
                    HElem::from_mono(parts[j].clone())
                };
                let mut next = Vec::with_capacity(acc.len() * prod.len());
                for (s, c) in &acc {
                    for (m, d) in prod.terms() {
                        let mut s = s.clone();
                        s.push(m.clone());
                        next.push((s, c * d));
                    }
                }
                acc = next;
            }
            for (s, c) in acc {
                out.add_term(s, c);
            }
        }
    }
    out
}
