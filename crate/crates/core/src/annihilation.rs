//! The annihilation algebra `X ⊗_H L` with `X = H*`, and lifts `ξ ⊗_H P` of operators.
//!
//! A functional is stored by its values on basis monomials. Over a group algebra the dual
//! is finite-dimensional and every value is known. Otherwise values are tracked up to a
//! validity degree, every action by an element of degree `m` lowers it by `m`, and reading
//! past it is an error.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hopf::{HElem, HopfAlgebra, Mono};
use crate::operators::{check_operator, HLinearOp, OperatorKind};
use crate::pseudo_tensor::ModuleElem;
use crate::pseudoalgebra::{PseudoProduct, Pseudoalgebra};
use crate::rational::Q;
use crate::report::Report;
use crate::tensor::{accumulate, TensorElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    Exact,
    /// Values are known on monomials of degree at most this.
    UpTo(u32),
}

impl Validity {
    fn min(self, other: Validity) -> Validity {
        match (self, other) {
            (Validity::Exact, v) | (v, Validity::Exact) => v,
            (Validity::UpTo(a), Validity::UpTo(b)) => Validity::UpTo(a.min(b)),
        }
    }

    fn lower(self, by: i64) -> Result<Validity> {
        match self {
            Validity::Exact => Ok(Validity::Exact),
            Validity::UpTo(v) if by <= v as i64 => Ok(Validity::UpTo(v - by.max(0) as u32)),
            Validity::UpTo(v) => Err(Error::ValidityExceeded { valid: v, needed: by as u32 }),
        }
    }

    fn covers(self, deg: u32) -> bool {
        match self {
            Validity::Exact => true,
            Validity::UpTo(v) => deg <= v,
        }
    }
}

/// An element of `X = H*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualElem {
    validity: Validity,
    values: BTreeMap<Mono, Q>,
}

impl DualElem {
    pub fn zero(validity: Validity) -> Self {
        DualElem { validity, values: BTreeMap::new() }
    }

    pub fn validity(&self) -> Validity {
        self.validity
    }

    /// `⟨x, m⟩`.
    pub fn coeff(&self, m: &Mono) -> Result<Q> {
        if !self.validity.covers(m.degree()) {
            let valid = match self.validity {
                Validity::UpTo(v) => v,
                Validity::Exact => unreachable!(),
            };
            return Err(Error::ValidityExceeded { valid, needed: m.degree() });
        }
        Ok(self.values.get(m).cloned().unwrap_or_else(Q::zero))
    }

    /// Nonzero values `⟨x, m⟩`.
    pub fn values(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.values.iter()
    }

    pub fn pair(&self, h: &HElem) -> Result<Q> {
        let mut s = Q::zero();
        for (m, c) in h.terms() {
            s += c * self.coeff(m)?;
        }
        Ok(s)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn add(&self, other: &DualElem) -> DualElem {
        let validity = self.validity.min(other.validity);
        let mut values = BTreeMap::new();
        for (m, c) in self.values.iter().chain(other.values.iter()) {
            if validity.covers(m.degree()) {
                accumulate(&mut values, m.clone(), c.clone());
            }
        }
        DualElem { validity, values }
    }

    pub fn scale(&self, c: &Q) -> DualElem {
        if c.is_zero() {
            return DualElem::zero(self.validity);
        }
        DualElem { validity: self.validity, values: self.values.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    pub fn sub(&self, other: &DualElem) -> DualElem {
        self.add(&other.scale(&-Q::one()))
    }

    /// Equality on the monomials where both sides are known.
    pub fn agrees(&self, other: &DualElem) -> bool {
        self.sub(other).is_zero()
    }

    pub fn fmt(&self, hopf: &HopfAlgebra) -> String {
        if self.values.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.values.iter().enumerate() {
            crate::hopf::push_signed(&mut s, i == 0, c, &format!("x[{}]", hopf.fmt_mono(m)), false);
        }
        s
    }
}

/// `X = H*` realised on the monomials of degree at most `truncation`.
#[derive(Clone, Debug)]
pub struct DualSpace {
    hopf: Arc<HopfAlgebra>,
    truncation: u32,
    basis: Vec<Mono>,
}

impl DualSpace {
    pub fn new(hopf: Arc<HopfAlgebra>, truncation: u32) -> Self {
        let truncation = if hopf.n_gens() == 0 { 0 } else { truncation };
        let basis = hopf.basis_up_to(truncation);
        DualSpace { hopf, truncation, basis }
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    pub fn is_exact(&self) -> bool {
        self.hopf.n_gens() == 0
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn full_validity(&self) -> Validity {
        if self.is_exact() {
            Validity::Exact
        } else {
            Validity::UpTo(self.truncation)
        }
    }

    /// Monomials `m` with known dual basis vectors `x_m`.
    pub fn basis(&self) -> &[Mono] {
        &self.basis
    }

    fn covered(&self, v: Validity) -> impl Iterator<Item = &Mono> {
        self.basis.iter().filter(move |m| v.covers(m.degree()))
    }

    /// The functional `x_m` dual to the basis monomial `m`.
    pub fn dual_of(&self, m: &Mono) -> Result<DualElem> {
        self.hopf.check_mono(m)?;
        let mut x = DualElem::zero(self.full_validity());
        if !x.validity.covers(m.degree()) {
            return Err(Error::ValidityExceeded { valid: self.truncation, needed: m.degree() });
        }
        x.values.insert(m.clone(), Q::one());
        Ok(x)
    }

    pub fn zero(&self) -> DualElem {
        DualElem::zero(self.full_validity())
    }

    /// The unit `ε` of `X`.
    pub fn unit(&self) -> DualElem {
        self.from_fn(self.full_validity(), |m| Ok(self.hopf.counit_mono(m))).expect("infallible")
    }

    fn from_fn(&self, v: Validity, f: impl Fn(&Mono) -> Result<Q>) -> Result<DualElem> {
        let mut x = DualElem::zero(v);
        for m in self.covered(v) {
            let c = f(m)?;
            if !c.is_zero() {
                x.values.insert(m.clone(), c);
            }
        }
        Ok(x)
    }

    /// `⟨xy, h⟩ = ⟨x, h_(1)⟩⟨y, h_(2)⟩`.
    pub fn product(&self, x: &DualElem, y: &DualElem) -> Result<DualElem> {
        let v = x.validity.min(y.validity);
        self.from_fn(v, |m| {
            let mut s = Q::zero();
            for (a, b) in self.hopf.coproduct_mono(m) {
                let xa = x.values.get(&a);
                let yb = y.values.get(&b);
                if let (Some(p), Some(q)) = (xa, yb) {
                    s += p * q;
                }
            }
            Ok(s)
        })
    }

    /// `⟨h·x, f⟩ = ⟨x, f h⟩`.
    pub fn left_act(&self, h: &HElem, x: &DualElem) -> Result<DualElem> {
        let v = x.validity.lower(self.hopf.degree(h))?;
        self.from_fn(v, |m| x.pair(&self.hopf.mul(&HElem::from_mono(m.clone()), h)))
    }

    /// `⟨x·h, f⟩ = ⟨x, h f⟩`.
    pub fn right_act(&self, x: &DualElem, h: &HElem) -> Result<DualElem> {
        let v = x.validity.lower(self.hopf.degree(h))?;
        self.from_fn(v, |m| x.pair(&self.hopf.mul(h, &HElem::from_mono(m.clone()))))
    }

    /// `⟨S*(x), h⟩ = ⟨x, S(h)⟩`.
    pub fn antipode(&self, x: &DualElem) -> Result<DualElem> {
        self.from_fn(x.validity, |m| x.pair(&self.hopf.antipode_mono(m)))
    }

    /// `Δ(x) = Σ ⟨x, m n⟩ x_m ⊗ x_n` over pairs with `deg m + deg n` within validity.
    pub fn coproduct(&self, x: &DualElem) -> Result<BTreeMap<(Mono, Mono), Q>> {
        let mut out = BTreeMap::new();
        for m in &self.basis {
            for n in &self.basis {
                if !x.validity.covers(m.degree() + n.degree()) {
                    continue;
                }
                let c = x.pair(&self.hopf.mul_mono(m, n))?;
                accumulate(&mut out, (m.clone(), n.clone()), c);
            }
        }
        Ok(out)
    }

    /// `(x, y) ← t = Σ c (x·f)(y·g)` for `t = Σ c f ⊗ g`.
    pub fn pair_action(&self, x: &DualElem, y: &DualElem, t: &TensorElem) -> Result<DualElem> {
        let mut validity = x.validity.min(y.validity);
        let mut acc: Option<DualElem> = None;
        for (slots, c) in t.terms() {
            let xf = self.right_act(x, &HElem::from_mono(slots[0].clone()))?;
            let yg = self.right_act(y, &HElem::from_mono(slots[1].clone()))?;
            let p = self.product(&xf, &yg)?.scale(c);
            validity = validity.min(p.validity);
            acc = Some(match acc {
                None => p,
                Some(a) => a.add(&p),
            });
        }
        Ok(acc.unwrap_or_else(|| DualElem::zero(validity)))
    }
}

/// `Σ_k x_k ⊗_H e_k`: module coefficients are pushed into the dual slot through `x ⊗_H h a = (x·h) ⊗_H a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilationElem {
    coeffs: Vec<DualElem>,
}

impl AnnihilationElem {
    pub fn zero(space: &DualSpace, rank: usize) -> Self {
        AnnihilationElem { coeffs: vec![space.zero(); rank] }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &DualElem {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(DualElem::is_zero)
    }

    pub fn add(&self, other: &AnnihilationElem) -> AnnihilationElem {
        AnnihilationElem { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &AnnihilationElem) -> AnnihilationElem {
        AnnihilationElem { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Q) -> AnnihilationElem {
        AnnihilationElem { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn fmt(&self, hopf: &HopfAlgebra) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| format!("({}) ⊗_H e{}", x.fmt(hopf), k + 1))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `A_X L` for a pseudoalgebra `L`.
pub struct AnnihilationAlgebra<'a> {
    pub alg: &'a Pseudoalgebra,
    pub space: DualSpace,
}

impl<'a> AnnihilationAlgebra<'a> {
    pub fn new(alg: &'a Pseudoalgebra, truncation: u32) -> Self {
        AnnihilationAlgebra { alg, space: DualSpace::new(alg.hopf_arc().clone(), truncation) }
    }

    pub fn rank(&self) -> usize {
        self.alg.rank()
    }

    /// `x ⊗_H a` in canonical form.
    pub fn from_pair(&self, x: &DualElem, a: &ModuleElem) -> Result<AnnihilationElem> {
        if a.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: a.rank() });
        }
        let coeffs = a
            .coeffs()
            .iter()
            .map(|h| if h.is_zero() { Ok(x.scale(&Q::zero())) } else { self.space.right_act(x, h) })
            .collect::<Result<_>>()?;
        Ok(AnnihilationElem { coeffs })
    }

    /// `x_m ⊗_H e_k`.
    pub fn basis_elem(&self, m: &Mono, k: usize) -> Result<AnnihilationElem> {
        let x = self.space.dual_of(m)?;
        let mut coeffs = vec![DualElem::zero(x.validity); self.rank()];
        coeffs[k] = x;
        Ok(AnnihilationElem { coeffs })
    }

    /// `Σ (x, y) ← t_i ⊗_H m_i` for a representative `Σ t_i ⊗_H m_i` of `a * b`.
    pub fn product_via(&self, x: &DualElem, y: &DualElem, raw: &[(TensorElem, ModuleElem)]) -> Result<AnnihilationElem> {
        let mut out = AnnihilationElem { coeffs: vec![DualElem::zero(x.validity.min(y.validity)); self.rank()] };
        for (t, m) in raw {
            let z = self.space.pair_action(x, y, t)?;
            out = out.add(&self.from_pair(&z, m)?);
        }
        Ok(out)
    }

    /// The product `(x ⊗_H a)(y ⊗_H b) = Σ (x·f_i)(y·g_i) ⊗_H e_i`, read off the table.
    pub fn product(&self, u: &AnnihilationElem, v: &AnnihilationElem) -> Result<AnnihilationElem> {
        let r = self.rank();
        let mut out = AnnihilationElem::zero(&self.space, r);
        for i in 0..r {
            for j in 0..r {
                let (x, y) = (&u.coeffs[i], &v.coeffs[j]);
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                for k in 0..r {
                    let t = self.alg.table().get(i, j, k);
                    if t.is_zero() {
                        continue;
                    }
                    let z = self.space.pair_action(x, y, t)?;
                    out.coeffs[k] = out.coeffs[k].add(&z);
                }
            }
        }
        let floor = u.coeffs.iter().chain(&v.coeffs).fold(self.space.full_validity(), |a, x| a.min(x.validity));
        let shift = (0..r)
            .flat_map(|i| (0..r).flat_map(move |j| (0..r).map(move |k| (i, j, k))))
            .map(|(i, j, k)| self.alg.table().get(i, j, k).max_slot_degree())
            .max()
            .unwrap_or(0);
        let bound = DualElem::zero(floor.lower(shift)?);
        out.coeffs = out.coeffs.iter().map(|c| c.add(&bound)).collect();
        Ok(out)
    }

    /// All `x_m ⊗_H e_k`.
    pub fn basis(&self) -> Vec<(String, AnnihilationElem)> {
        let hopf = self.space.hopf();
        self.space
            .basis()
            .iter()
            .flat_map(|m| (0..self.rank()).map(move |k| (m, k)))
            .map(|(m, k)| (format!("x[{}]⊗e{}", hopf.fmt_mono(m), k + 1), self.basis_elem(m, k).expect("basis")))
            .collect()
    }

    /// Associativity on all basis triples.
    pub fn associativity_report(&self) -> Result<Report> {
        let mut rep = Report::new("annihilation product associativity");
        let basis = self.basis();
        let n = basis.len();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
            .collect();
        let results: Vec<(String, Option<String>)> = triples
            .par_iter()
            .map(|&(a, b, c)| {
                let (u, v, w) = (&basis[a].1, &basis[b].1, &basis[c].1);
                let l = self.product(&self.product(u, v)?, w)?;
                let r = self.product(u, &self.product(v, w)?)?;
                let d = l.sub(&r);
                Ok((
                    format!("({}, {}, {})", basis[a].0, basis[b].0, basis[c].0),
                    (!d.is_zero()).then(|| d.fmt(self.space.hopf())),
                ))
            })
            .collect::<Result<_>>()?;
        for (case, r) in results {
            rep.record(case, r);
        }
        Ok(rep)
    }
}

/// A map `ξ: X -> X`.
#[derive(Clone, Debug)]
pub enum DualMap {
    /// `ξ(x) = h·x`.
    Left(HElem),
    /// Images of the dual basis; only over an exact dual.
    Explicit(BTreeMap<Mono, DualElem>),
}

impl DualMap {
    pub fn identity(hopf: &HopfAlgebra) -> Self {
        DualMap::Left(hopf.one())
    }

    /// `ξ(x) = t·x` for the left integral `t`, when one exists.
    pub fn integral(hopf: &HopfAlgebra, scale: &Q) -> Option<Self> {
        hopf.left_integral().map(|t| DualMap::Left(t.scale(scale)))
    }

    pub fn apply(&self, space: &DualSpace, x: &DualElem) -> Result<DualElem> {
        match self {
            DualMap::Left(h) => space.left_act(h, x),
            DualMap::Explicit(images) => {
                if !space.is_exact() {
                    return Err(Error::Unsupported("explicit dual maps need a finite-dimensional dual".into()));
                }
                let mut out = space.zero();
                for (m, c) in x.values() {
                    let img = images.get(m).cloned().unwrap_or_else(|| space.zero());
                    out = out.add(&img.scale(c));
                }
                Ok(out)
            }
        }
    }
}

/// `ξ ⊗_H P` on `A_X L`.
pub struct LiftedOp<'a> {
    pub xi: &'a DualMap,
    pub op: &'a HLinearOp,
}

impl LiftedOp<'_> {
    /// `Σ_i ξ(x_i) ⊗_H P(e_i)`.
    pub fn apply(&self, ann: &AnnihilationAlgebra<'_>, u: &AnnihilationElem) -> Result<AnnihilationElem> {
        let mut out = AnnihilationElem::zero(&ann.space, ann.rank());
        for (i, x) in u.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let xi = self.xi.apply(&ann.space, x)?;
            out = out.add(&ann.from_pair(&xi, &self.op.rows()[i])?);
        }
        Ok(out)
    }
}

fn dual_pairs(space: &DualSpace) -> Vec<(Mono, Mono)> {
    let b = space.basis();
    b.iter().flat_map(|m| b.iter().map(move |n| (m.clone(), n.clone()))).collect()
}

/// Left and right `H`-linearity of `ξ` on dual basis vectors and basis monomials of `H` up to `h_degree`.
pub fn linearity_report(xi: &DualMap, space: &DualSpace, h_degree: u32) -> Result<Report> {
    let mut rep = Report::new("ξ is left and right H-linear");
    let hopf = space.hopf();
    for m in space.basis() {
        let x = space.dual_of(m)?;
        for h in hopf.basis_up_to(h_degree) {
            let h = HElem::from_mono(h);
            let left = xi.apply(space, &space.left_act(&h, &x)?)?.sub(&space.left_act(&h, &xi.apply(space, &x)?)?);
            let right = xi.apply(space, &space.right_act(&x, &h)?)?.sub(&space.right_act(&xi.apply(space, &x)?, &h)?);
            let name = format!("x[{}], h = {}", hopf.fmt_mono(m), hopf.fmt_elem(&h));
            rep.record(format!("{name} left"), (!left.is_zero()).then(|| left.fmt(hopf)));
            rep.record(format!("{name} right"), (!right.is_zero()).then(|| right.fmt(hopf)));
        }
    }
    Ok(rep)
}

/// The identities `ξ` must satisfy for the lift of a `kind` operator, on dual basis pairs.
pub fn hypothesis_report(kind: &OperatorKind, xi: &DualMap, space: &DualSpace) -> Result<Report> {
    if matches!(kind, OperatorKind::RotaBaxter(_)) {
        return Err(Error::Unsupported("lifts are defined for averaging, Nijenhuis and Reynolds operators".into()));
    }
    let hopf = space.hopf();
    let mut rep = Report::new(format!("ξ hypothesis for {kind}"));
    let results: Vec<Vec<(String, Option<String>)>> = dual_pairs(space)
        .par_iter()
        .map(|(m, n)| {
            let x = space.dual_of(m)?;
            let y = space.dual_of(n)?;
            let xx = xi.apply(space, &x)?;
            let xy = xi.apply(space, &y)?;
            let both = space.product(&xx, &xy)?;
            let mut eqs = vec![
                ("ξ(ξ(x)y)", xi.apply(space, &space.product(&xx, &y)?)?),
                ("ξ(xξ(y))", xi.apply(space, &space.product(&x, &xy)?)?),
            ];
            match kind {
                OperatorKind::Nijenhuis => {
                    let p = space.product(&x, &y)?;
                    eqs.push(("ξ²(xy)", xi.apply(space, &xi.apply(space, &p)?)?));
                }
                OperatorKind::Reynolds(_) => eqs.push(("ξ(ξ(x)ξ(y))", xi.apply(space, &both)?)),
                _ => {}
            }
            Ok(eqs
                .into_iter()
                .map(|(name, e)| {
                    let d = both.sub(&e);
                    (
                        format!("(x[{}], x[{}]) ξ(x)ξ(y) = {name}", hopf.fmt_mono(m), hopf.fmt_mono(n)),
                        (!d.is_zero()).then(|| d.fmt(hopf)),
                    )
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    for (case, r) in results.into_iter().flatten() {
        rep.record(case, r);
    }
    Ok(rep)
}

/// The plain operator identity of `kind` for `Q = ξ ⊗_H P` on all basis pairs of `A_X L`.
pub fn lifted_identity_report(kind: &OperatorKind, xi: &DualMap, op: &HLinearOp, ann: &AnnihilationAlgebra<'_>) -> Result<Report> {
    if matches!(kind, OperatorKind::RotaBaxter(_)) {
        return Err(Error::Unsupported("lifts are defined for averaging, Nijenhuis and Reynolds operators".into()));
    }
    let lift = LiftedOp { xi, op };
    let hopf = ann.space.hopf();
    let basis = ann.basis();
    let pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|a| (0..basis.len()).map(move |b| (a, b))).collect();
    let results: Vec<Vec<(String, Option<String>)>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (u, v) = (&basis[a].1, &basis[b].1);
            let qu = lift.apply(ann, u)?;
            let qv = lift.apply(ann, v)?;
            let both = ann.product(&qu, &qv)?;
            let left = ann.product(&qu, v)?;
            let right = ann.product(u, &qv)?;
            let diffs: Vec<(&str, AnnihilationElem)> = match kind {
                OperatorKind::Averaging => vec![
                    ("left", both.sub(&lift.apply(ann, &left)?)),
                    ("right", both.sub(&lift.apply(ann, &right)?)),
                ],
                OperatorKind::Nijenhuis => {
                    let inner = left.add(&right).sub(&lift.apply(ann, &ann.product(u, v)?)?);
                    vec![("", both.sub(&lift.apply(ann, &inner)?))]
                }
                OperatorKind::Reynolds(l) => {
                    let inner = left.add(&right).add(&both.scale(l));
                    vec![("", both.sub(&lift.apply(ann, &inner)?))]
                }
                OperatorKind::RotaBaxter(_) => unreachable!(),
            };
            Ok(diffs
                .into_iter()
                .map(|(tag, d)| {
                    let case = format!("({}, {}) {tag}", basis[a].0, basis[b].0).trim_end().to_string();
                    (case, (!d.is_zero()).then(|| d.fmt(hopf)))
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut rep = Report::new(format!("lifted {kind} identity on the annihilation algebra"));
    for (case, r) in results.into_iter().flatten() {
        rep.record(case, r);
    }
    Ok(rep)
}

/// Hypotheses on `ξ` and `P`, then the lifted identity.
pub fn check_lift(kind: &OperatorKind, xi: &DualMap, op: &HLinearOp, ann: &AnnihilationAlgebra<'_>) -> Result<Report> {
    let mut rep = Report::new(format!("lift of a {kind} operator"));
    rep.push_child(linearity_report(xi, &ann.space, ann.space.truncation().max(1))?);
    rep.push_child(hypothesis_report(kind, xi, &ann.space)?);
    rep.push_child(check_operator(kind, op, ann.alg));
    rep.push_child(lifted_identity_report(kind, xi, op, ann)?);
    Ok(rep)
}
