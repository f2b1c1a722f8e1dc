//! Sparse elements of `H^{⊗n}` in the tensor basis of monomials.

use std::collections::BTreeMap;
use std::ops::{AddAssign, SubAssign};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hopf::{HElem, HopfAlgebra, Mono};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElem {
    arity: usize,
    terms: BTreeMap<Vec<Mono>, Q>,
}

impl TensorElem {
    pub fn zero(arity: usize) -> Self {
        TensorElem { arity, terms: BTreeMap::new() }
    }

    pub fn basis(slots: Vec<Mono>) -> Self {
        let mut t = TensorElem::zero(slots.len());
        t.add_term(slots, crate::rational::q(1));
        t
    }

    /// `h_1 ⊗ ... ⊗ h_n` expanded in the monomial basis.
    pub fn pure(slots: &[HElem]) -> Self {
        let mut acc: BTreeMap<Vec<Mono>, Q> = BTreeMap::new();
        acc.insert(Vec::new(), crate::rational::q(1));
        for h in slots {
            let mut next = BTreeMap::new();
            for (key, c) in &acc {
                for (m, d) in h.terms() {
                    let mut k = key.clone();
                    k.push(m.clone());
                    accumulate(&mut next, k, c * d);
                }
            }
            acc = next;
        }
        TensorElem { arity: slots.len(), terms: acc }
    }

    pub fn arity(&self) -> usize {
        self.arity
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Mono>, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, slots: &[Mono]) -> Q {
        self.terms.get(slots).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, slots: Vec<Mono>, c: Q) {
        debug_assert_eq!(slots.len(), self.arity);
        accumulate(&mut self.terms, slots, c);
    }

    pub fn scale(&self, c: &Q) -> TensorElem {
        if c.is_zero() {
            return TensorElem::zero(self.arity);
        }
        TensorElem {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> TensorElem {
        self.scale(&crate::rational::q(-1))
    }

    pub fn checked_add(&self, other: &TensorElem) -> Result<TensorElem> {
        self.same_arity(other)?;
        let mut out = self.clone();
        out += other;
        Ok(out)
    }

    fn same_arity(&self, other: &TensorElem) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    /// Moves slot `i` of the input to slot `perm[i]` of the output.
    pub fn permute(&self, perm: &[usize]) -> Result<TensorElem> {
        check_permutation(perm, self.arity)?;
        let mut out = TensorElem::zero(self.arity);
        for (k, c) in &self.terms {
            let mut slots = vec![Mono::new(Vec::new(), 0); self.arity];
            for (i, m) in k.iter().enumerate() {
                slots[perm[i]] = m.clone();
            }
            out.add_term(slots, c.clone());
        }
        Ok(out)
    }

    /// Largest monomial degree in any slot, or -1 for zero.
    pub fn max_slot_degree(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(|m| m.degree() as i64))
            .max()
            .unwrap_or(-1)
    }

    /// Inserts `1` at position `pos`, raising the arity by one.
    pub fn insert_unit(&self, pos: usize, unit: &Mono) -> TensorElem {
        let mut out = TensorElem::zero(self.arity + 1);
        for (k, c) in &self.terms {
            let mut slots = k.clone();
            slots.insert(pos, unit.clone());
            out.add_term(slots, c.clone());
        }
        out
    }
}

pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, Q>, key: K, c: Q) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::BadPermutation(n));
    }
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::BadPermutation(n));
        }
        seen[p] = true;
    }
    Ok(())
}

impl AddAssign<&TensorElem> for TensorElem {
    fn add_assign(&mut self, rhs: &TensorElem) {
        debug_assert_eq!(self.arity, rhs.arity);
        for (k, c) in &rhs.terms {
            accumulate(&mut self.terms, k.clone(), c.clone());
        }
    }
}

impl SubAssign<&TensorElem> for TensorElem {
    fn sub_assign(&mut self, rhs: &TensorElem) {
        debug_assert_eq!(self.arity, rhs.arity);
        for (k, c) in &rhs.terms {
            accumulate(&mut self.terms, k.clone(), -c.clone());
        }
    }
}

impl HopfAlgebra {
    /// Slot-wise product `(a_1 b_1) ⊗ ... ⊗ (a_n b_n)`.
    pub fn tensor_mul(&self, a: &TensorElem, b: &TensorElem) -> Result<TensorElem> {
        a.same_arity(b)?;
        let mut out = TensorElem::zero(a.arity);
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let c = ca * cb;
                let mut acc: Vec<(Vec<Mono>, Q)> = vec![(Vec::with_capacity(a.arity), c)];
                for (ma, mb) in ka.iter().zip(kb) {
                    let p = self.mul_mono(ma, mb);
                    let mut next = Vec::with_capacity(acc.len() * p.len());
                    for (key, c) in &acc {
                        for (m, d) in p.terms() {
                            let mut k = key.clone();
                            k.push(m.clone());
                            next.push((k, c * d));
                        }
                    }
                    acc = next;
                }
                for (k, c) in acc {
                    out.add_term(k, c);
                }
            }
        }
        Ok(out)
    }

    /// Applies the coproduct to slot `slot`, producing arity `n + 1`.
    pub fn coproduct_slot(&self, t: &TensorElem, slot: usize) -> Result<TensorElem> {
        if slot >= t.arity {
            return Err(Error::ArityMismatch { expected: slot + 1, found: t.arity });
        }
        let mut out = TensorElem::zero(t.arity + 1);
        for (k, c) in &t.terms {
            for (l, r) in self.coproduct_mono(&k[slot]) {
                let mut slots = Vec::with_capacity(t.arity + 1);
                slots.extend_from_slice(&k[..slot]);
                slots.push(l);
                slots.push(r);
                slots.extend_from_slice(&k[slot + 1..]);
                out.add_term(slots, c.clone());
            }
        }
        Ok(out)
    }

    pub fn fmt_tensor(&self, t: &TensorElem) -> String {
        if t.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (k, c)) in t.terms.iter().enumerate() {
            let body = k.iter().map(|m| self.fmt_mono(m)).collect::<Vec<_>>().join(" | ");
            crate::hopf::push_signed(&mut s, i == 0, c, &body, false);
        }
        s
    }
}
