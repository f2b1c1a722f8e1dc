//! Pseudoalgebras on free modules: structure tables, pseudoproducts, the two compositions
//! and the associative and Lie axiom checks.

use std::sync::{Arc, RwLock};

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hopf::{HElem, HopfAlgebra, Mono};
use crate::pseudo_tensor::{act, normalize, permute, ModuleElem, PseudoElem, PseudoKey};
use crate::rational::{q, Q};
use crate::report::Report;
use crate::tensor::TensorElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Associative,
    Lie,
    Unchecked,
}

/// `e_i * e_j = Σ_k α_k^{ij} ⊗_H e_k` with every `α` in `H ⊗ H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    rank: usize,
    entries: Vec<TensorElem>,
}

impl Table {
    pub fn zeros(rank: usize) -> Self {
        Table { rank, entries: vec![TensorElem::zero(2); rank * rank * rank] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.rank + j) * self.rank + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &TensorElem {
        &self.entries[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, t: TensorElem) -> Result<()> {
        for idx in [i, j, k] {
            if idx >= self.rank {
                return Err(Error::ModuleIndex { index: idx, rank: self.rank });
            }
        }
        if t.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, found: t.arity() });
        }
        let n = self.idx(i, j, k);
        self.entries[n] = t;
        Ok(())
    }

    /// Reads the table off canonical products: `α_k = Σ (s ⊗ 1) Δ(h)` over terms `(s ⊗ 1) ⊗_H h e_k`.
    pub fn from_products(
        hopf: &HopfAlgebra,
        rank: usize,
        mut prod: impl FnMut(usize, usize) -> Result<PseudoElem>,
    ) -> Result<Table> {
        let mut t = Table::zeros(rank);
        for i in 0..rank {
            for j in 0..rank {
                let p = prod(i, j)?;
                for k in 0..rank {
                    t.set(i, j, k, crate::pseudo_tensor::coefficient_tensor(hopf, &p, k))?;
                }
            }
        }
        Ok(t)
    }
}

/// Structure constants of a finite-dimensional `k`-algebra, `x_i x_j = Σ_k c[i][j][k] x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseAlgebra {
    dim: usize,
    consts: Vec<Vec<Vec<Q>>>,
}

impl BaseAlgebra {
    pub fn new(dim: usize, entries: impl IntoIterator<Item = (usize, usize, usize, Q)>) -> Result<Self> {
        let mut consts = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        for (i, j, k, c) in entries {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(Error::ModuleIndex { index: idx, rank: dim });
                }
            }
            consts[i][j][k] += c;
        }
        Ok(BaseAlgebra { dim, consts })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn product(&self, i: usize, j: usize) -> &[Q] {
        &self.consts[i][j]
    }
}

pub struct Pseudoalgebra {
    hopf: Arc<HopfAlgebra>,
    table: Table,
    flavor: Flavor,
    basis_products: RwLock<Vec<Option<PseudoElem>>>,
}

impl Clone for Pseudoalgebra {
    fn clone(&self) -> Self {
        Pseudoalgebra {
            hopf: self.hopf.clone(),
            table: self.table.clone(),
            flavor: self.flavor,
            basis_products: RwLock::new(self.basis_products.read().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for Pseudoalgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Pseudoalgebra")
            .field("rank", &self.table.rank)
            .field("flavor", &self.flavor)
            .finish()
    }
}

/// Anything with a pseudoproduct on the free module of a fixed rank.
pub trait PseudoProduct: Sync {
    fn hopf(&self) -> &HopfAlgebra;
    fn rank(&self) -> usize;
    fn product(&self, a: &ModuleElem, b: &ModuleElem) -> Result<PseudoElem>;
}

impl Pseudoalgebra {
    pub fn new(hopf: Arc<HopfAlgebra>, table: Table, flavor: Flavor) -> Result<Self> {
        for t in &table.entries {
            for (slots, _) in t.terms() {
                slots.iter().try_for_each(|m| hopf.check_mono(m))?;
            }
        }
        let n = table.rank * table.rank;
        Ok(Pseudoalgebra { hopf, table, flavor, basis_products: RwLock::new(vec![None; n]) })
    }

    /// `Cur(B)`: the table `α_k^{ij} = c_{ij}^k (1 ⊗ 1)`.
    pub fn current(hopf: Arc<HopfAlgebra>, base: &BaseAlgebra, flavor: Flavor) -> Result<Self> {
        let mut table = Table::zeros(base.dim());
        let unit = hopf.unit_mono();
        for i in 0..base.dim() {
            for j in 0..base.dim() {
                for (k, c) in base.product(i, j).iter().enumerate() {
                    let mut t = TensorElem::zero(2);
                    t.add_term(vec![unit.clone(), unit.clone()], c.clone());
                    table.set(i, j, k, t)?;
                }
            }
        }
        Self::new(hopf, table, flavor)
    }

    pub fn hopf_arc(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Self {
        let mut c = self.clone();
        c.flavor = flavor;
        c
    }

    pub fn basis(&self, i: usize) -> ModuleElem {
        ModuleElem::basis(&self.hopf, self.rank(), i)
    }

    /// Canonical form of `e_i * e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> PseudoElem {
        let r = self.rank();
        if let Some(p) = &self.basis_products.read().unwrap()[i * r + j] {
            return p.clone();
        }
        let raw: Vec<(TensorElem, ModuleElem)> =
            (0..r).map(|k| (self.table.get(i, j, k).clone(), self.basis(k))).collect();
        let p = normalize(&self.hopf, 2, r, &raw).expect("table entries have arity 2");
        self.basis_products.write().unwrap()[i * r + j] = Some(p.clone());
        p
    }

    pub fn compose_left(&self, a: &ModuleElem, b: &ModuleElem, c: &ModuleElem) -> Result<PseudoElem> {
        compose_left(self, self, a, b, c)
    }

    pub fn compose_right(&self, a: &ModuleElem, b: &ModuleElem, c: &ModuleElem) -> Result<PseudoElem> {
        compose_right(self, self, a, b, c)
    }

    pub fn fmt_table(&self) -> String {
        let mut s = String::new();
        let r = self.rank();
        for i in 0..r {
            for j in 0..r {
                let p = self.basis_product(i, j);
                s.push_str(&format!("e{} * e{} = {}\n", i + 1, j + 1, p.fmt(&self.hopf)));
            }
        }
        s
    }
}

impl PseudoProduct for Pseudoalgebra {
    fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    fn rank(&self) -> usize {
        self.table.rank
    }

    fn product(&self, a: &ModuleElem, b: &ModuleElem) -> Result<PseudoElem> {
        let r = self.rank();
        for m in [a, b] {
            if m.rank() != r {
                return Err(Error::RankMismatch { expected: r, found: m.rank() });
            }
        }
        let mut out = PseudoElem::zero(2, r);
        for (i, ai) in a.coeffs().iter().enumerate().filter(|(_, h)| !h.is_zero()) {
            for (j, bj) in b.coeffs().iter().enumerate().filter(|(_, h)| !h.is_zero()) {
                let p = self.basis_product(i, j);
                if p.is_zero() {
                    continue;
                }
                let left = TensorElem::pure(&[ai.clone(), bj.clone()]);
                out = out.add(&act(&self.hopf, &left, &p)?);
            }
        }
        Ok(out)
    }
}

/// `(β ⊗_H x) * c = Σ (β ⊗ 1)(Δ^{(n)} ⊗ id)(x * c)`, raising the arity by one.
pub fn extend_left<P: PseudoProduct + ?Sized>(outer: &P, p: &PseudoElem, c: &ModuleElem) -> Result<PseudoElem> {
    let hopf = outer.hopf();
    let n = p.arity();
    let mut out = PseudoElem::zero(n + 1, outer.rank());
    for (key, coef) in p.terms() {
        let x = ModuleElem::single(p.rank(), key.module, HElem::from_mono(key.coeff.clone()));
        let xc = outer.product(&x, c)?;
        for (k2, c2) in xc.terms() {
            let u = &k2.slots[0];
            let base = coef * c2;
            for parts in hopf.iterated_coproduct_mono(u, n) {
                let mut acc: Vec<(Vec<Mono>, Q)> = vec![(Vec::with_capacity(n), base.clone())];
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
                for (slots, c) in acc {
                    out.add_canonical(PseudoKey { slots, coeff: k2.coeff.clone(), module: k2.module }, c);
                }
            }
        }
    }
    Ok(out)
}

/// `a * (β ⊗_H x) = Σ (1 ⊗ β)(id ⊗ Δ^{(n)})(a * x)`, raising the arity by one.
pub fn extend_right<P: PseudoProduct + ?Sized>(outer: &P, a: &ModuleElem, p: &PseudoElem) -> Result<PseudoElem> {
    let n = p.arity();
    let mut out = PseudoElem::zero(n + 1, outer.rank());
    for (key, coef) in p.terms() {
        let x = ModuleElem::single(p.rank(), key.module, HElem::from_mono(key.coeff.clone()));
        let ax = outer.product(a, &x)?;
        for (k2, c2) in ax.terms() {
            let mut slots = Vec::with_capacity(n);
            slots.push(k2.slots[0].clone());
            slots.extend(key.slots.iter().cloned());
            out.add_canonical(PseudoKey { slots, coeff: k2.coeff.clone(), module: k2.module }, coef * c2);
        }
    }
    Ok(out)
}

/// `(a *_inner b) *_outer c`.
pub fn compose_left<P: PseudoProduct + ?Sized, R: PseudoProduct + ?Sized>(
    inner: &P,
    outer: &R,
    a: &ModuleElem,
    b: &ModuleElem,
    c: &ModuleElem,
) -> Result<PseudoElem> {
    extend_left(outer, &inner.product(a, b)?, c)
}

/// `a *_outer (b *_inner c)`.
pub fn compose_right<P: PseudoProduct + ?Sized, R: PseudoProduct + ?Sized>(
    inner: &P,
    outer: &R,
    a: &ModuleElem,
    b: &ModuleElem,
    c: &ModuleElem,
) -> Result<PseudoElem> {
    extend_right(outer, a, &inner.product(b, c)?)
}

pub(crate) fn residual(hopf: &HopfAlgebra, diff: &PseudoElem) -> Option<String> {
    (!diff.is_zero()).then(|| diff.fmt(hopf))
}

pub(crate) fn triples(r: usize) -> Vec<(usize, usize, usize)> {
    let mut v = Vec::with_capacity(r * r * r);
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                v.push((i, j, k));
            }
        }
    }
    v
}

/// Associativity `(a*b)*c = a*(b*c)` on basis triples.
pub fn associativity_report<P: PseudoProduct + ?Sized>(a: &P) -> Report {
    let hopf = a.hopf();
    let r = a.rank();
    let e = |i| ModuleElem::basis(hopf, r, i);
    let results: Vec<(String, Option<String>)> = triples(r)
        .into_par_iter()
        .map(|(i, j, k)| {
            let case = format!("(e{}, e{}, e{})", i + 1, j + 1, k + 1);
            let res = match (compose_left(a, a, &e(i), &e(j), &e(k)), compose_right(a, a, &e(i), &e(j), &e(k))) {
                (Ok(l), Ok(rr)) => residual(hopf, &l.sub(&rr)),
                (Err(x), _) | (_, Err(x)) => Some(x.to_string()),
            };
            (case, res)
        })
        .collect();
    let mut rep = Report::new("associativity");
    for (c, r) in results {
        rep.record(c, r);
    }
    rep
}

/// Skew-commutativity and the Jacobi identity on basis pairs and triples.
pub fn lie_report<P: PseudoProduct + ?Sized>(a: &P) -> Report {
    let hopf = a.hopf();
    let r = a.rank();
    let e = |i| ModuleElem::basis(hopf, r, i);
    let mut skew = Report::new("skew-commutativity");
    for i in 0..r {
        for j in 0..r {
            let res = (|| -> Result<Option<String>> {
                let ab = a.product(&e(i), &e(j))?;
                let ba = a.product(&e(j), &e(i))?;
                Ok(residual(hopf, &ba.add(&permute(hopf, &[1, 0], &ab)?)))
            })();
            skew.record(format!("(e{}, e{})", i + 1, j + 1), res.unwrap_or_else(|x| Some(x.to_string())));
        }
    }
    let results: Vec<(String, Option<String>)> = triples(r)
        .into_par_iter()
        .map(|(i, j, k)| {
            let res = (|| -> Result<Option<String>> {
                let lhs = compose_right(a, a, &e(i), &e(j), &e(k))?;
                let t1 = compose_left(a, a, &e(i), &e(j), &e(k))?;
                let t2 = permute(hopf, &[1, 0, 2], &compose_right(a, a, &e(j), &e(i), &e(k))?)?;
                Ok(residual(hopf, &lhs.sub(&t1).sub(&t2)))
            })();
            (format!("(e{}, e{}, e{})", i + 1, j + 1, k + 1), res.unwrap_or_else(|x| Some(x.to_string())))
        })
        .collect();
    let mut jac = Report::new("Jacobi identity");
    for (c, res) in results {
        jac.record(c, res);
    }
    let mut rep = Report::new("Lie pseudoalgebra axioms");
    rep.push_child(skew);
    rep.push_child(jac);
    rep
}

/// Checks the axioms of `flavor` (or of the algebra's own flavor when `None`).
pub fn check_structure(a: &Pseudoalgebra, flavor: Option<Flavor>) -> Report {
    match flavor.unwrap_or(a.flavor()) {
        Flavor::Associative => associativity_report(a),
        Flavor::Lie => lie_report(a),
        Flavor::Unchecked => {
            let mut rep = Report::new("no axioms requested");
            rep.note("flavor is unchecked");
            rep
        }
    }
}

/// `α = r + s ⊗ 1 - 1 ⊗ s`.
pub fn rank1_alpha(hopf: &HopfAlgebra, r: &TensorElem, s: &HElem) -> TensorElem {
    let mut t = r.clone();
    t += &TensorElem::pure(&[s.clone(), hopf.one()]);
    t -= &TensorElem::pure(&[hopf.one(), s.clone()]);
    t
}

/// The two conditions on `(r, s)` under which `α = r + s ⊗ 1 - 1 ⊗ s` defines a rank-one Lie
/// pseudoalgebra over an enveloping algebra: `[r, Δ(s)] = 0` and the modified classical
/// Yang-Baxter equation in `H^{⊗3}`.
pub fn rank1_lie_conditions(hopf: &HopfAlgebra, r: &TensorElem, s: &HElem) -> Result<Report> {
    if r.arity() != 2 {
        return Err(Error::ArityMismatch { expected: 2, found: r.arity() });
    }
    let mut rep = Report::new("rank-one Lie conditions");
    let mut skew = Report::new("r is skew-symmetric");
    let sw = r.permute(&[1, 0])?;
    let mut d = sw.clone();
    d += r;
    skew.record("r", (!d.is_zero()).then(|| hopf.fmt_tensor(&d)));

    let mut c1 = Report::new("[r, Δ(s)] = 0");
    let ds = hopf.coproduct(s);
    let mut comm = hopf.tensor_mul(r, &ds)?;
    comm -= &hopf.tensor_mul(&ds, r)?;
    c1.record("(r, s)", (!comm.is_zero()).then(|| hopf.fmt_tensor(&comm)));

    let unit = hopf.unit_mono();
    let r12 = r.insert_unit(2, &unit);
    let r13 = r.insert_unit(1, &unit);
    let r23 = r.insert_unit(0, &unit);
    let one = hopf.one();
    let s1 = TensorElem::pure(&[s.clone(), one.clone(), one.clone()]);
    let s2 = TensorElem::pure(&[one.clone(), s.clone(), one.clone()]);
    let s3 = TensorElem::pure(&[one.clone(), one, s.clone()]);
    let m = |x: &TensorElem, y: &TensorElem| hopf.tensor_mul(x, y);
    let br = |x: &TensorElem, y: &TensorElem| -> Result<TensorElem> {
        let mut t = m(x, y)?;
        t -= &m(y, x)?;
        Ok(t)
    };
    let mut total = br(&r12, &r13)?;
    total += &m(&r12, &s3)?;
    total += &br(&r12, &r23)?;
    total += &m(&r23, &s1)?;
    total += &br(&r13, &r23)?;
    total -= &m(&r13, &s2)?;
    let mut c2 = Report::new("modified Yang-Baxter equation");
    c2.record("(r, s)", (!total.is_zero()).then(|| hopf.fmt_tensor(&total)));

    rep.push_child(skew);
    rep.push_child(c1);
    rep.push_child(c2);
    Ok(rep)
}

/// The scalar `c` as an element of `H ⊗ H`, handy for building tables.
pub fn scalar_tensor(hopf: &HopfAlgebra, c: Q) -> TensorElem {
    let mut t = TensorElem::zero(2);
    t.add_term(vec![hopf.unit_mono(), hopf.unit_mono()], c);
    t
}

/// `d ⊗ 1 - 1 ⊗ d` for the generator `d_{i+1}`: the rank-one Lie table of `W(1)` when `i = 0`
/// over `k[d]`.
pub fn wedge_generator(hopf: &HopfAlgebra, i: usize) -> Result<TensorElem> {
    let d = hopf.try_gen(i)?;
    let mut t = TensorElem::pure(&[d.clone(), hopf.one()]);
    t -= &TensorElem::pure(&[hopf.one(), d]);
    Ok(t)
}

pub fn unit_table(hopf: &HopfAlgebra) -> Table {
    let mut t = Table::zeros(1);
    t.set(0, 0, 0, scalar_tensor(hopf, q(1))).expect("rank one");
    t
}
