//! Basis monomials and sparse elements of a smash-product Hopf algebra.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::Zero;

use crate::rational::Q;

/// Divided-power PBW monomial `∂^(I)` followed by a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub exps: Vec<u32>,
    pub group: usize,
}

impl Mono {
    pub fn new(exps: Vec<u32>, group: usize) -> Self {
        Mono { exps, group }
    }

    pub fn unit(n: usize, identity: usize) -> Self {
        Mono { exps: vec![0; n], group: identity }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
            .then_with(|| self.group.cmp(&other.group))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite linear combination of basis monomials with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HElem {
    terms: BTreeMap<Mono, Q>,
}

impl HElem {
    pub fn zero() -> Self {
        HElem::default()
    }

    pub fn from_mono(m: Mono) -> Self {
        Self::term(m, crate::rational::q(1))
    }

    pub fn term(m: Mono, c: Q) -> Self {
        let mut e = HElem::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> HElem {
        if c.is_zero() {
            return HElem::zero();
        }
        HElem { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Highest monomial degree, or -1 for the zero element.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree() as i64).max().unwrap_or(-1)
    }

    pub fn into_terms(self) -> BTreeMap<Mono, Q> {
        self.terms
    }
}

impl FromIterator<(Mono, Q)> for HElem {
    fn from_iter<T: IntoIterator<Item = (Mono, Q)>>(iter: T) -> Self {
        let mut e = HElem::zero();
        for (m, c) in iter {
            e.add_term(m, c);
        }
        e
    }
}

impl AddAssign<&HElem> for HElem {
    fn add_assign(&mut self, rhs: &HElem) {
        for (m, c) in rhs.terms() {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&HElem> for HElem {
    fn sub_assign(&mut self, rhs: &HElem) {
        for (m, c) in rhs.terms() {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&HElem> for &HElem {
    type Output = HElem;
    fn add(self, rhs: &HElem) -> HElem {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&HElem> for &HElem {
    type Output = HElem;
    fn sub(self, rhs: &HElem) -> HElem {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &HElem {
    type Output = HElem;
    fn neg(self) -> HElem {
        HElem { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Add for HElem {
    type Output = HElem;
    fn add(mut self, rhs: HElem) -> HElem {
        self += &rhs;
        self
    }
}

impl Sub for HElem {
    type Output = HElem;
    fn sub(mut self, rhs: HElem) -> HElem {
        self -= &rhs;
        self
    }
}

impl Neg for HElem {
    type Output = HElem;
    fn neg(self) -> HElem {
        -&self
    }
}
