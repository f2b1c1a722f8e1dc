//! x-brackets `[a_x b]` of the conformal algebra induced by a pseudoalgebra, its axioms and
//! the conformal operator identities.
//!
//! Brackets of basis vectors against dual basis vectors are cached; everything else is
//! assembled from the cache through sesqui-linearity. The formula that evaluates the
//! pseudoproduct directly is kept as an independent path for the checks.
//!
//! With `S*` in the bracket, sesqui-linearity holds for the antipode-twisted actions
//! `x h = S(h)·x` and `h x = x·S(h)`, written here with the untwisted actions of
//! [`DualSpace::left_act`] and [`DualSpace::right_act`].

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::annihilation::{DualElem, DualSpace};
use crate::error::{Error, Result};
use crate::hopf::{HElem, HopfAlgebra, Mono};
use crate::operators::{HLinearOp, OperatorKind};
use crate::pseudo_tensor::ModuleElem;
use crate::pseudoalgebra::{Flavor, PseudoProduct, Pseudoalgebra};
use crate::rational::Q;
use crate::report::Report;
use crate::tensor::TensorElem;

/// `η_x(f ⊗ g) = ⟨S*(x), f S(g_(1))⟩ g_(2)`, extended linearly.
pub fn eta(space: &DualSpace, x: &DualElem, t: &TensorElem) -> Result<HElem> {
    let hopf = space.hopf();
    let sx = space.antipode(x)?;
    let mut out = HElem::zero();
    for (slots, c) in t.terms() {
        let f = HElem::from_mono(slots[0].clone());
        for (g1, g2) in hopf.coproduct_mono(&slots[1]) {
            let v = sx.pair(&hopf.mul(&f, &hopf.antipode_mono(&g1)))?;
            if !num_traits::Zero::is_zero(&v) {
                out = out + HElem::term(g2, v * c);
            }
        }
    }
    Ok(out)
}

/// `Δ(x) = Σ c x_(1) ⊗ x_(2)` as `(x_(1), x_(2), c)` over dual basis vectors.
pub fn dual_coproduct_terms(space: &DualSpace, x: &DualElem) -> Result<Vec<(DualElem, DualElem, Q)>> {
    space
        .coproduct(x)?
        .into_iter()
        .map(|((m, n), c)| Ok((space.dual_of(&m)?, space.dual_of(&n)?, c)))
        .collect()
}

pub struct ConformalAlgebra<'a> {
    alg: &'a Pseudoalgebra,
    space: DualSpace,
    /// `[e_i _{x_m} e_j]`.
    cache: BTreeMap<(usize, usize), BTreeMap<Mono, ModuleElem>>,
    table_degree: u32,
}

impl<'a> ConformalAlgebra<'a> {
    /// Caches `[e_i _{x_m} e_j]` for every dual basis vector `x_m` of the truncated dual.
    pub fn new(alg: &'a Pseudoalgebra, truncation: u32) -> Result<Self> {
        let space = DualSpace::new(alg.hopf_arc().clone(), truncation);
        let r = alg.rank();
        let table_degree = (0..r)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .map(|(i, j)| alg.basis_product(i, j).max_first_slot_degree())
            .max()
            .unwrap_or(0)
            .max(0) as u32;
        if !space.is_exact() && truncation < table_degree {
            return Err(Error::ValidityExceeded { valid: truncation, needed: table_degree });
        }
        let mut keys = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for m in space.basis() {
                    keys.push((i, j, m.clone()));
                }
            }
        }
        let mut c = ConformalAlgebra { alg, space, cache: BTreeMap::new(), table_degree };
        let values: Vec<ModuleElem> = keys
            .par_iter()
            .map(|(i, j, m)| c.bracket_direct(&alg.basis(*i), &alg.basis(*j), &c.space.dual_of(m)?))
            .collect::<Result<_>>()?;
        for ((i, j, m), v) in keys.into_iter().zip(values) {
            c.cache.entry((i, j)).or_default().insert(m, v);
        }
        Ok(c)
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        self.space.hopf()
    }

    pub fn space(&self) -> &DualSpace {
        &self.space
    }

    pub fn algebra(&self) -> &Pseudoalgebra {
        self.alg
    }

    pub fn rank(&self) -> usize {
        self.alg.rank()
    }

    /// Largest first-slot degree `M` of the canonical basis products.
    pub fn table_degree(&self) -> u32 {
        self.table_degree
    }

    pub fn cached(&self, i: usize, j: usize, m: &Mono) -> Option<&ModuleElem> {
        self.cache.get(&(i, j)).and_then(|row| row.get(m))
    }

    /// Overwrites one cached bracket; used to plant faults.
    pub fn set_cached(&mut self, i: usize, j: usize, m: Mono, value: ModuleElem) {
        self.cache.entry((i, j)).or_default().insert(m, value);
    }

    /// `[a_x b] = Σ ⟨S*(x), h⟩ c` over the canonical form `Σ h ⊗ 1 ⊗_H c` of `[a * b]`.
    pub fn bracket_direct(&self, a: &ModuleElem, b: &ModuleElem, x: &DualElem) -> Result<ModuleElem> {
        let hopf = self.hopf();
        let p = self.alg.product(a, b)?;
        let mut out = ModuleElem::zero(self.rank());
        for (key, c) in p.terms() {
            let v = x.pair(&hopf.antipode_mono(&key.slots[0]))?;
            if !num_traits::Zero::is_zero(&v) {
                let term = ModuleElem::single(self.rank(), key.module, HElem::term(key.coeff.clone(), v * c));
                out = out.add(&term);
            }
        }
        Ok(out)
    }

    /// `[e_i _y e_j] = Σ_m ⟨y, m⟩ [e_i _{x_m} e_j]` from the cache.
    pub fn bracket_basis(&self, i: usize, j: usize, y: &DualElem) -> Result<ModuleElem> {
        let mut out = ModuleElem::zero(self.rank());
        let Some(row) = self.cache.get(&(i, j)) else {
            return Ok(out);
        };
        for (m, v) in row {
            if v.is_zero() {
                continue;
            }
            let c = y.coeff(m)?;
            if !num_traits::Zero::is_zero(&c) {
                out = out.add(&v.scale(&c));
            }
        }
        Ok(out)
    }

    /// The twisted right action `x h = S(h)·x`.
    pub fn x_times(&self, x: &DualElem, h: &HElem) -> Result<DualElem> {
        self.space.left_act(&self.hopf().antipode(h), x)
    }

    /// The twisted left action `h x = x·S(h)`.
    pub fn times_x(&self, h: &HElem, x: &DualElem) -> Result<DualElem> {
        self.space.right_act(x, &self.hopf().antipode(h))
    }

    /// `[a_x b]` for `a = Σ h_i e_i`, `b = Σ f_j e_j` via `[h a_x b] = [a_{x h} b]` and
    /// `[a_x h b] = h_(2) [a_{S(h_(1)) x} b]`.
    pub fn bracket(&self, a: &ModuleElem, b: &ModuleElem, x: &DualElem) -> Result<ModuleElem> {
        let hopf = self.hopf();
        let mut out = ModuleElem::zero(self.rank());
        for (i, hi) in a.coeffs().iter().enumerate() {
            if hi.is_zero() {
                continue;
            }
            let xh = self.x_times(x, hi)?;
            for (j, fj) in b.coeffs().iter().enumerate() {
                if fj.is_zero() {
                    continue;
                }
                for (slots, c) in hopf.coproduct(fj).terms() {
                    let y = self.times_x(&hopf.antipode_mono(&slots[0]), &xh)?;
                    let v = self.bracket_basis(i, j, &y)?;
                    out = out.add(&v.left_mul(hopf, &HElem::term(slots[1].clone(), c.clone())));
                }
            }
        }
        Ok(out)
    }

    fn dual_basis_up_to(&self, degree: u32) -> Vec<Mono> {
        self.space.basis().iter().filter(|m| m.degree() <= degree).cloned().collect()
    }
}

fn fmt_case(hopf: &HopfAlgebra, label: &str, xs: &[&Mono]) -> String {
    let xs: Vec<String> = xs.iter().map(|m| format!("x[{}]", hopf.fmt_mono(m))).collect();
    format!("{label} at {}", xs.join(", "))
}

fn diff(hopf: &HopfAlgebra, a: &ModuleElem, b: &ModuleElem) -> Option<String> {
    let d = a.sub(b);
    (!d.is_zero()).then(|| d.fmt(hopf))
}

/// Sesqui-linearity, locality, and for Lie algebras skew-commutativity and Jacobi, for all
/// dual basis vectors of degree at most `degree`.
pub fn check_conformal_axioms(c: &ConformalAlgebra<'_>, degree: u32) -> Result<Report> {
    let hopf = c.hopf();
    let r = c.rank();
    let xs = c.dual_basis_up_to(degree);
    let e = |i: usize| c.alg.basis(i);
    let mut rep = Report::new("conformal axioms");
    let movers: Vec<HElem> = hopf.basis_up_to(1).into_iter().map(HElem::from_mono).collect();

    let mut left = Report::new("sesqui-linearity [h a_x b] = [a_{xh} b]");
    let mut right = Report::new("sesqui-linearity [a_x h b] = h_(2) [a_{S(h_(1)) x} b]");
    for i in 0..r {
        for j in 0..r {
            for m in &xs {
                let x = c.space.dual_of(m)?;
                for h in &movers {
                    let tag = format!("(e{}, e{}), h = {}", i + 1, j + 1, hopf.fmt_elem(h));
                    let lhs = c.bracket_direct(&e(i).left_mul(hopf, h), &e(j), &x)?;
                    let rhs = c.bracket_basis(i, j, &c.x_times(&x, h)?)?;
                    left.record(fmt_case(hopf, &tag, &[m]), diff(hopf, &lhs, &rhs));
                    let lhs = c.bracket_direct(&e(i), &e(j).left_mul(hopf, h), &x)?;
                    let rhs = c.bracket(&e(i), &e(j).left_mul(hopf, h), &x)?;
                    right.record(fmt_case(hopf, &tag, &[m]), diff(hopf, &lhs, &rhs));
                }
            }
        }
    }
    rep.push_child(left);
    rep.push_child(right);

    let mut local = Report::new("locality");
    let big = c.table_degree();
    for ((i, j), row) in &c.cache {
        for (m, v) in row.iter().filter(|(m, _)| m.degree() > big) {
            local.record(
                fmt_case(hopf, &format!("(e{}, e{})", i + 1, j + 1), &[m]),
                (!v.is_zero()).then(|| v.fmt(hopf)),
            );
        }
    }
    if c.space.is_exact() {
        local.note("the dual is finite-dimensional, so locality holds trivially");
    } else {
        local.note(format!(
            "finite witness: [e_i _x e_j] = 0 for every dual basis x of degree {}..{}, i.e. on x vanishing on F^{} H",
            big + 1,
            c.space.truncation(),
            big
        ));
    }
    rep.push_child(local);

    if c.alg.flavor() != Flavor::Lie {
        rep.note("skew-commutativity and Jacobi apply to Lie algebras only; skipped");
        return Ok(rep);
    }

    let mut skew = Report::new("skew-commutativity");
    let support: Vec<Mono> = c.dual_basis_up_to(big);
    for i in 0..r {
        for j in 0..r {
            for m in &xs {
                let x = c.space.dual_of(m)?;
                let lhs = c.bracket_basis(i, j, &x)?;
                let mut rhs = ModuleElem::zero(r);
                for h in &support {
                    let v = c.bracket_basis(j, i, &c.space.dual_of(h)?)?;
                    if v.is_zero() {
                        continue;
                    }
                    for (h1, h2) in hopf.coproduct_mono(h) {
                        let s = x.pair(&hopf.antipode_mono(&h1))?;
                        if !num_traits::Zero::is_zero(&s) {
                            rhs = rhs.sub(&v.left_mul(hopf, &hopf.antipode_mono(&h2)).scale(&s));
                        }
                    }
                }
                skew.record(fmt_case(hopf, &format!("(e{}, e{})", i + 1, j + 1), &[m]), diff(hopf, &lhs, &rhs));
            }
        }
    }
    rep.push_child(skew);

    let mut jac = Report::new("Jacobi identity");
    let cases: Vec<(usize, usize, usize, Mono, Mono)> = (0..r)
        .flat_map(|a| (0..r).flat_map(move |b| (0..r).map(move |d| (a, b, d))))
        .flat_map(|(a, b, d)| {
            let xs = &xs;
            xs.iter().flat_map(move |m| xs.iter().map(move |n| (a, b, d, m.clone(), n.clone())))
        })
        .collect();
    let results: Vec<(String, Option<String>)> = cases
        .par_iter()
        .map(|(a, b, d, m, n)| {
            let x = c.space.dual_of(m)?;
            let y = c.space.dual_of(n)?;
            let lhs = c
                .bracket(&e(*a), &c.bracket_basis(*b, *d, &y)?, &x)?
                .sub(&c.bracket(&e(*b), &c.bracket_basis(*a, *d, &x)?, &y)?);
            let mut rhs = ModuleElem::zero(r);
            for (x1, x2, k) in dual_coproduct_terms(&c.space, &x)? {
                let inner = c.bracket_basis(*a, *b, &x2)?;
                if inner.is_zero() {
                    continue;
                }
                let yx1 = c.space.product(&y, &x1)?;
                rhs = rhs.add(&c.bracket(&inner, &e(*d), &yx1)?.scale(&k));
            }
            let tag = format!("(e{}, e{}, e{})", a + 1, b + 1, d + 1);
            Ok((fmt_case(hopf, &tag, &[m, n]), diff(hopf, &lhs, &rhs)))
        })
        .collect::<Result<_>>()?;
    for (case, res) in results {
        jac.record(case, res);
    }
    jac.note(format!("Δ(x) summed over dual basis pairs of total degree at most {}", c.space.truncation()));
    rep.push_child(jac);
    Ok(rep)
}

/// The conformal identity of `kind` for `R` on basis pairs and dual basis vectors up to `degree`.
pub fn check_conformal_operator(kind: &OperatorKind, op: &HLinearOp, c: &ConformalAlgebra<'_>, degree: u32) -> Result<Report> {
    if op.rank() != c.rank() {
        return Err(Error::RankMismatch { expected: c.rank(), found: op.rank() });
    }
    let hopf = c.hopf();
    let r = c.rank();
    let xs = c.dual_basis_up_to(degree);
    let cases: Vec<(usize, usize, Mono)> = (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .flat_map(|(i, j)| xs.iter().map(move |m| (i, j, m.clone())))
        .collect();
    let results: Vec<Vec<(String, Option<String>)>> = cases
        .par_iter()
        .map(|(i, j, m)| {
            let x = c.space.dual_of(m)?;
            let (a, b) = (c.alg.basis(*i), c.alg.basis(*j));
            let (ra, rb) = (op.apply(hopf, &a), op.apply(hopf, &b));
            let both = c.bracket(&ra, &rb, &x)?;
            let left = || c.bracket(&ra, &b, &x);
            let right = || c.bracket(&a, &rb, &x);
            let rr = |v: &ModuleElem| op.apply(hopf, v);
            let diffs: Vec<(&str, ModuleElem)> = match kind {
                OperatorKind::Averaging => vec![("left", both.sub(&rr(&left()?))), ("right", both.sub(&rr(&right()?)))],
                OperatorKind::Nijenhuis => {
                    let inner = left()?.add(&right()?).sub(&rr(&c.bracket(&a, &b, &x)?));
                    vec![("", both.sub(&rr(&inner)))]
                }
                OperatorKind::Reynolds(l) => {
                    let inner = left()?.add(&right()?).add(&both.scale(l));
                    vec![("", both.sub(&rr(&inner)))]
                }
                OperatorKind::RotaBaxter(l) => {
                    let inner = left()?.add(&right()?).add(&c.bracket(&a, &b, &x)?.scale(l));
                    vec![("", both.sub(&rr(&inner)))]
                }
            };
            Ok(diffs
                .into_iter()
                .map(|(tag, d)| {
                    let case = fmt_case(hopf, format!("(e{}, e{}) {tag}", i + 1, j + 1).trim_end(), &[m]);
                    (case, (!d.is_zero()).then(|| d.fmt(hopf)))
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut rep = Report::new(format!("conformal {kind} identity"));
    for (case, res) in results.into_iter().flatten() {
        rep.record(case, res);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::q;

    #[test]
    fn w1_brackets_match_hand_expansion() {
        let w = catalog::w1();
        let c = ConformalAlgebra::new(&w, 3).unwrap();
        let h = c.hopf();
        let e = w.basis(0);
        let x1 = c.space().dual_of(&h.mono(&[1], 0)).unwrap();
        let x0 = c.space().dual_of(&h.mono(&[0], 0)).unwrap();
        assert_eq!(c.bracket(&e, &e, &x1).unwrap(), e.scale(&q(-2)));
        assert_eq!(c.bracket(&e, &e, &x0).unwrap(), e.left_mul(h, &h.gen(0)).scale(&q(-1)));
    }

    #[test]
    fn eta_on_generator() {
        let h = catalog::polynomial();
        let s = DualSpace::new(h.clone(), 3);
        let x1 = s.dual_of(&h.mono(&[1], 0)).unwrap();
        let t = TensorElem::pure(&[h.gen(0), h.one()]);
        assert_eq!(eta(&s, &x1, &t).unwrap(), h.scalar(q(-1)));
    }

    #[test]
    fn w1_axioms_hold_and_corruption_breaks_skew() {
        let w = catalog::w1();
        let mut c = ConformalAlgebra::new(&w, 3).unwrap();
        let rep = check_conformal_axioms(&c, 3).unwrap();
        assert!(rep.passed(), "{rep}");
        let m = c.hopf().mono(&[1], 0);
        let v = c.cached(0, 0, &m).unwrap().scale(&q(-1));
        c.set_cached(0, 0, m, v);
        let rep = check_conformal_axioms(&c, 3).unwrap();
        let skew = rep.children.iter().find(|r| r.title == "skew-commutativity").unwrap();
        assert!(!skew.passed());
    }
}
