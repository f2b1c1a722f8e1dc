//! Sparse multivariate polynomials over `Q` for the rank-one residual systems.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Q;
use crate::tensor::accumulate;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, Q::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Q) {
        debug_assert_eq!(exps.len(), self.nvars);
        accumulate(&mut self.terms, exps, c);
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, d)| (e.clone(), d * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::constant(self.nvars, Q::one()), |acc, _| acc.mul(self))
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|e| e.iter().sum::<u32>() as i64).max().unwrap_or(-1)
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Q::zero)
    }

    pub fn vars(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .flat_map(|e| e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i))
            .collect()
    }

    /// Replaces `u_i` by `value`.
    pub fn substitute(&self, i: usize, value: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        let mut powers: Vec<Poly> = vec![Poly::constant(self.nvars, Q::one())];
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while powers.len() <= k {
                let next = powers.last().expect("nonempty").mul(value);
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[i] = 0;
            let mut mono = Poly::zero(self.nvars);
            mono.add_term(rest, c.clone());
            out = out.add(&mono.mul(&powers[k]));
        }
        out
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().enumerate().fold(c.clone(), |acc, (i, &k)| {
                    if k == 0 {
                        acc
                    } else {
                        acc * num_traits::pow(point[i].clone(), k as usize)
                    }
                })
            })
            .sum()
    }

    /// `(Σ c_i u_i, c_0)` when the polynomial has degree at most one.
    pub fn linear_parts(&self) -> Option<(BTreeMap<usize, Q>, Q)> {
        if self.degree() > 1 {
            return None;
        }
        let mut lin = BTreeMap::new();
        for (e, c) in &self.terms {
            if let Some(i) = e.iter().position(|&x| x == 1) {
                lin.insert(i, c.clone());
            }
        }
        Some((lin, self.constant_term()))
    }

    /// The variable and dense coefficients `c_0..c_n` when only one variable occurs.
    pub fn as_univariate(&self) -> Option<(usize, Vec<Q>)> {
        let vars = self.vars();
        if vars.len() != 1 {
            return None;
        }
        let v = *vars.iter().next().expect("one variable");
        let n = self.terms.keys().map(|e| e[v]).max().unwrap_or(0) as usize;
        let mut coeffs = vec![Q::zero(); n + 1];
        for (e, c) in &self.terms {
            coeffs[e[v] as usize] = c.clone();
        }
        Some((v, coeffs))
    }

    /// A variable dividing every term.
    pub fn common_var(&self) -> Option<usize> {
        (0..self.nvars).find(|&i| !self.terms.is_empty() && self.terms.keys().all(|e| e[i] > 0))
    }

    pub fn div_var(&self, i: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e[i] -= 1;
                (e, c.clone())
            })
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    /// Scales so that the leading term (largest exponent vector) has coefficient one.
    pub fn monic(&self) -> Poly {
        match self.terms.iter().next_back() {
            Some((_, c)) => self.scale(&(Q::one() / c)),
            None => self.clone(),
        }
    }

    pub fn fmt_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let body: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { name(i) } else { format!("{}^{k}", name(i)) })
                .collect();
            crate::hopf::push_signed(&mut s, idx == 0, c, &body.join(" "), body.is_empty());
        }
        s
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.fmt_with(&|i| format!("u{i}")))
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn horner(coeffs: &[Q], x: &Q) -> Q {
    coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

/// Divides by `(x - r)`; `r` must be a root.
fn deflate(coeffs: &[Q], r: &Q) -> Vec<Q> {
    let n = coeffs.len() - 1;
    let mut out = vec![Q::zero(); n];
    let mut carry = Q::zero();
    for k in (1..=n).rev() {
        carry = &coeffs[k] + carry * r;
        out[k - 1] = carry.clone();
    }
    out
}

/// Distinct rational roots of `Σ c_k x^k` and the cofactor left after removing them
/// (with multiplicity). `None` when coefficients are too large to enumerate candidates.
pub fn rational_roots(coeffs: &[Q]) -> Option<(Vec<Q>, Vec<Q>)> {
    let mut c: Vec<Q> = coeffs.to_vec();
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let mut roots = Vec::new();
    while c.len() > 1 && c[0].is_zero() {
        c.remove(0);
        if !roots.contains(&Q::zero()) {
            roots.push(Q::zero());
        }
    }
    loop {
        if c.len() <= 1 {
            return Some((roots, c));
        }
        let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * Q::from(lcm.clone())).to_integer()).collect();
        let ps = divisors(&ints[0])?;
        let qs = divisors(ints.last().expect("nonempty"))?;
        let mut found = None;
        'search: for p in &ps {
            for qd in &qs {
                for sign in [1, -1] {
                    let cand = Q::new(p * sign, qd.clone());
                    if horner(&c, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                c = deflate(&c, &r);
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
            None => return Some((roots, c)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn substitution_and_eval_agree() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.mul(&x).add(&x.mul(&y).scale(&q(3))).sub(&Poly::constant(2, q(5)));
        let sub = y.add(&Poly::constant(2, q(1)));
        let r = p.substitute(0, &sub);
        for t in [q(0), q(2), frac(-1, 3)] {
            assert_eq!(r.eval(&[q(0), t.clone()]), p.eval(&[&t + q(1), t]));
        }
    }

    #[test]
    fn rational_roots_with_irrational_cofactor() {
        // (2x - 1)(x + 3)(x^2 - 2) x
        let coeffs = vec![q(0), q(6), q(-10), q(-7), q(5), q(2)];
        let (mut roots, rest) = rational_roots(&coeffs).unwrap();
        roots.sort();
        assert_eq!(roots, vec![q(-3), q(0), frac(1, 2)]);
        assert_eq!(rest.len(), 3);
        assert_eq!(&rest[0] / &rest[2], q(-2));
        assert!(rest[1].is_zero());
    }

    #[test]
    fn common_factor_and_division() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.mul(&y).add(&x.mul(&x));
        assert_eq!(p.common_var(), Some(0));
        assert_eq!(p.div_var(0), y.add(&x));
        assert_eq!(p.degree(), 2);
        assert_eq!(Poly::zero(2).degree(), -1);
    }
}
