//! H-linear operators on free pseudoalgebras: the averaging, Nijenhuis, Reynolds and
//! Rota-Baxter identities, operator arithmetic and compatibility conditions.

mod derive;

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;

pub use derive::{check_ns, derive, DeriveKind, Derived, NsPseudoalgebra};

use crate::error::{Error, Result};
use crate::hopf::{HElem, HopfAlgebra, Mono};
use crate::linalg::solve;
use crate::pseudo_tensor::{map_module, ModuleElem, PseudoElem};
use crate::pseudoalgebra::{residual, PseudoProduct};
use crate::rational::{parse_rational, q, Q};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Averaging,
    Nijenhuis,
    Reynolds(Q),
    RotaBaxter(Q),
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorKind::Averaging => write!(f, "averaging"),
            OperatorKind::Nijenhuis => write!(f, "nijenhuis"),
            OperatorKind::Reynolds(l) => write!(f, "reynolds({l})"),
            OperatorKind::RotaBaxter(l) => write!(f, "rota-baxter({l})"),
        }
    }
}

impl FromStr for OperatorKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let weighted = |prefix: &str| -> Option<std::result::Result<Q, String>> {
            let rest = s.strip_prefix(prefix)?;
            let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')'));
            Some(
                inner
                    .and_then(parse_rational)
                    .ok_or_else(|| format!("expected {prefix}(<rational>), found `{s}`")),
            )
        };
        match s {
            "averaging" => return Ok(OperatorKind::Averaging),
            "nijenhuis" => return Ok(OperatorKind::Nijenhuis),
            _ => {}
        }
        if let Some(w) = weighted("reynolds") {
            return w.map(OperatorKind::Reynolds);
        }
        if let Some(w) = weighted("rota-baxter") {
            return w.map(OperatorKind::RotaBaxter);
        }
        Err(format!("unknown operator kind `{s}`"))
    }
}

/// `P(e_i) = Σ_t g_{it} e_t`, extended H-linearly: `P(h e_i) = Σ_t h g_{it} e_t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HLinearOp {
    rows: Vec<ModuleElem>,
}

impl HLinearOp {
    pub fn from_rows(rows: Vec<ModuleElem>) -> Result<Self> {
        let r = rows.len();
        if let Some(bad) = rows.iter().find(|m| m.rank() != r) {
            return Err(Error::RankMismatch { expected: r, found: bad.rank() });
        }
        Ok(HLinearOp { rows })
    }

    pub fn from_matrix(m: Vec<Vec<HElem>>) -> Result<Self> {
        Self::from_rows(m.into_iter().map(ModuleElem::from_coeffs).collect())
    }

    pub fn identity(hopf: &HopfAlgebra, rank: usize) -> Self {
        Self::scalar(hopf, rank, q(1))
    }

    pub fn zero(rank: usize) -> Self {
        HLinearOp { rows: vec![ModuleElem::zero(rank); rank] }
    }

    pub fn scalar(hopf: &HopfAlgebra, rank: usize, c: Q) -> Self {
        HLinearOp { rows: (0..rank).map(|i| ModuleElem::single(rank, i, hopf.scalar(c.clone()))).collect() }
    }

    pub fn diagonal(entries: Vec<HElem>) -> Self {
        let r = entries.len();
        HLinearOp { rows: entries.into_iter().enumerate().map(|(i, h)| ModuleElem::single(r, i, h)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[ModuleElem] {
        &self.rows
    }

    pub fn entry(&self, i: usize, t: usize) -> &HElem {
        self.rows[i].coeff(t)
    }

    pub fn apply(&self, hopf: &HopfAlgebra, m: &ModuleElem) -> ModuleElem {
        let mut out = ModuleElem::zero(self.rank());
        for (i, h) in m.coeffs().iter().enumerate() {
            if !h.is_zero() {
                out = out.add(&self.rows[i].left_mul(hopf, h));
            }
        }
        out
    }

    /// `(id ⊗_H P)` on a canonical element.
    pub fn apply_pseudo(&self, hopf: &HopfAlgebra, p: &PseudoElem) -> PseudoElem {
        map_module(hopf, p, &self.rows).expect("operator rank matches")
    }

    pub fn add(&self, other: &HLinearOp) -> HLinearOp {
        HLinearOp { rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &HLinearOp) -> HLinearOp {
        HLinearOp { rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Q) -> HLinearOp {
        HLinearOp { rows: self.rows.iter().map(|r| r.scale(c)).collect() }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, hopf: &HopfAlgebra, inner: &HLinearOp) -> HLinearOp {
        HLinearOp { rows: inner.rows.iter().map(|r| self.apply(hopf, r)).collect() }
    }

    pub fn power(&self, hopf: &HopfAlgebra, n: u32) -> HLinearOp {
        (0..n).fold(HLinearOp::identity(hopf, self.rank()), |acc, _| self.compose(hopf, &acc))
    }

    /// `Σ_i coeffs[i] P^i`.
    pub fn polynomial(&self, hopf: &HopfAlgebra, coeffs: &[Q]) -> HLinearOp {
        let mut out = HLinearOp::zero(self.rank());
        let mut pow = HLinearOp::identity(hopf, self.rank());
        for (i, c) in coeffs.iter().enumerate() {
            if i > 0 {
                pow = self.compose(hopf, &pow);
            }
            if !c.is_zero() {
                out = out.add(&pow.scale(c));
            }
        }
        out
    }

    /// Polynomial in `P` respecting the constraint attached to `kind`: averaging operators
    /// only admit polynomials without constant term.
    pub fn polynomial_for(&self, hopf: &HopfAlgebra, kind: &OperatorKind, coeffs: &[Q]) -> Result<HLinearOp> {
        if *kind == OperatorKind::Averaging && coeffs.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::ConstantTerm);
        }
        Ok(self.polynomial(hopf, coeffs))
    }

    /// `τ^{-1} P τ`, after certifying that `tau_inv` inverts `tau` and `tau` is an automorphism.
    pub fn conjugate<P: PseudoProduct + ?Sized>(&self, alg: &P, tau: &HLinearOp, tau_inv: &HLinearOp) -> Result<HLinearOp> {
        let hopf = alg.hopf();
        let id = HLinearOp::identity(hopf, self.rank());
        if tau.compose(hopf, tau_inv) != id || tau_inv.compose(hopf, tau) != id {
            return Err(Error::NotInvertible("supplied inverse does not invert τ".into()));
        }
        let hom = check_homomorphism(tau, alg, alg);
        if !hom.passed() {
            return Err(Error::NotAutomorphism(hom.to_string()));
        }
        Ok(tau_inv.compose(hopf, &self.compose(hopf, tau)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(ModuleElem::is_zero)
    }

    pub fn fmt(&self, hopf: &HopfAlgebra) -> String {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| format!("e{} -> {}", i + 1, r.fmt(hopf)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

pub(crate) struct Ctx<'a, P: PseudoProduct + ?Sized> {
    pub alg: &'a P,
}

impl<'a, P: PseudoProduct + ?Sized> Ctx<'a, P> {
    pub fn hopf(&self) -> &HopfAlgebra {
        self.alg.hopf()
    }

    pub fn e(&self, i: usize) -> ModuleElem {
        ModuleElem::basis(self.hopf(), self.alg.rank(), i)
    }

    pub fn prod(&self, a: &ModuleElem, b: &ModuleElem) -> PseudoElem {
        self.alg.product(a, b).expect("ranks agree")
    }

    pub fn ap(&self, op: &HLinearOp, m: &ModuleElem) -> ModuleElem {
        op.apply(self.hopf(), m)
    }

    pub fn out(&self, op: &HLinearOp, p: &PseudoElem) -> PseudoElem {
        op.apply_pseudo(self.hopf(), p)
    }
}

fn pairs(r: usize) -> Vec<(usize, usize)> {
    (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect()
}

fn rank_guard<P: PseudoProduct + ?Sized>(rep: &mut Report, alg: &P, ops: &[&HLinearOp]) -> bool {
    for op in ops {
        if op.rank() != alg.rank() {
            rep.record("shape", Some(format!("operator rank {} differs from algebra rank {}", op.rank(), alg.rank())));
            return false;
        }
    }
    true
}

/// Residuals of the defining identity of `kind` on `(a, b)`; all must vanish.
pub(crate) fn identity_residuals<P: PseudoProduct + ?Sized>(
    cx: &Ctx<'_, P>,
    kind: &OperatorKind,
    op: &HLinearOp,
    a: &ModuleElem,
    b: &ModuleElem,
) -> Vec<(&'static str, PseudoElem)> {
    let pa = cx.ap(op, a);
    let pb = cx.ap(op, b);
    let both = cx.prod(&pa, &pb);
    let left = || cx.prod(&pa, b);
    let right = || cx.prod(a, &pb);
    match kind {
        OperatorKind::Averaging => vec![
            ("left", both.sub(&cx.out(op, &left()))),
            ("right", both.sub(&cx.out(op, &right()))),
        ],
        OperatorKind::Nijenhuis => {
            let inner = left().add(&right()).sub(&cx.out(op, &cx.prod(a, b)));
            vec![("", both.sub(&cx.out(op, &inner)))]
        }
        OperatorKind::Reynolds(l) => {
            let inner = left().add(&right()).add(&both.scale(l));
            vec![("", both.sub(&cx.out(op, &inner)))]
        }
        OperatorKind::RotaBaxter(l) => {
            let inner = left().add(&right()).add(&cx.prod(a, b).scale(l));
            vec![("", both.sub(&cx.out(op, &inner)))]
        }
    }
}

/// Evaluates the defining identity of `kind` on all basis pairs.
pub fn check_operator<P: PseudoProduct + ?Sized>(kind: &OperatorKind, op: &HLinearOp, alg: &P) -> Report {
    let mut rep = Report::new(format!("{kind} identity"));
    if !rank_guard(&mut rep, alg, &[op]) {
        return rep;
    }
    let cx = Ctx { alg };
    let results: Vec<Vec<(String, Option<String>)>> = pairs(alg.rank())
        .into_par_iter()
        .map(|(i, j)| {
            identity_residuals(&cx, kind, op, &cx.e(i), &cx.e(j))
                .into_iter()
                .map(|(tag, r)| {
                    let case = if tag.is_empty() {
                        format!("(e{}, e{})", i + 1, j + 1)
                    } else {
                        format!("(e{}, e{}) {tag}", i + 1, j + 1)
                    };
                    (case, residual(cx.hopf(), &r))
                })
                .collect()
        })
        .collect();
    for (case, r) in results.into_iter().flatten() {
        rep.record(case, r);
    }
    rep
}

/// Cross-term conditions under which `P1 + P2` inherits the identity of `kind` from `P1`, `P2`.
fn cross_residuals<P: PseudoProduct + ?Sized>(
    cx: &Ctx<'_, P>,
    kind: &OperatorKind,
    p1: &HLinearOp,
    p2: &HLinearOp,
    a: &ModuleElem,
    b: &ModuleElem,
) -> Vec<(&'static str, PseudoElem)> {
    let (p1a, p1b, p2a, p2b) = (cx.ap(p1, a), cx.ap(p1, b), cx.ap(p2, a), cx.ap(p2, b));
    let m12 = cx.prod(&p1a, &p2b);
    let m21 = cx.prod(&p2a, &p1b);
    let mixed = m12.add(&m21);
    match kind {
        OperatorKind::Averaging => {
            let left = cx.out(p2, &cx.prod(&p1a, b)).add(&cx.out(p1, &cx.prod(&p2a, b)));
            let right = cx.out(p1, &cx.prod(a, &p2b)).add(&cx.out(p2, &cx.prod(a, &p1b)));
            vec![("left", mixed.sub(&left)), ("right", mixed.sub(&right))]
        }
        OperatorKind::Nijenhuis => {
            let ab = cx.prod(a, b);
            let t1 = cx.prod(&p1a, b).add(&cx.prod(a, &p1b)).sub(&cx.out(p1, &ab));
            let t2 = cx.prod(&p2a, b).add(&cx.prod(a, &p2b)).sub(&cx.out(p2, &ab));
            vec![("", mixed.sub(&cx.out(p2, &t1)).sub(&cx.out(p1, &t2)))]
        }
        OperatorKind::Reynolds(l) => {
            let m11 = cx.prod(&p1a, &p1b);
            let m22 = cx.prod(&p2a, &p2b);
            let t1 = cx.prod(&p1a, b).add(&cx.prod(a, &p1b)).add(&m11.add(&mixed).scale(l));
            let t2 = cx.prod(&p2a, b).add(&cx.prod(a, &p2b)).add(&m22.add(&mixed).scale(l));
            vec![("", mixed.sub(&cx.out(p2, &t1)).sub(&cx.out(p1, &t2)))]
        }
        OperatorKind::RotaBaxter(_) => {
            let t1 = cx.prod(&p1a, b).add(&cx.prod(a, &p1b));
            let t2 = cx.prod(&p2a, b).add(&cx.prod(a, &p2b));
            vec![("", mixed.sub(&cx.out(p2, &t1)).sub(&cx.out(p1, &t2)))]
        }
    }
}

/// Result of [`check_sum_compatibility`].
#[derive(Clone, Debug)]
pub struct SumCompatibility {
    pub preconditions: Report,
    pub condition: Report,
    pub sum: Report,
}

impl SumCompatibility {
    pub fn verdicts_match(&self) -> bool {
        self.condition.passed() == self.sum.passed()
    }

    pub fn report(&self) -> Report {
        let mut rep = Report::new("sum compatibility");
        rep.push_child(self.preconditions.clone());
        rep.push_child(self.condition.clone());
        rep.push_child(self.sum.clone());
        let mut m = Report::new("condition verdict equals sum verdict");
        m.record("verdicts", (!self.verdicts_match()).then(|| "verdicts differ".to_string()));
        rep.push_child(m);
        rep
    }
}

pub fn check_sum_compatibility<P: PseudoProduct + ?Sized>(
    kind: &OperatorKind,
    p1: &HLinearOp,
    p2: &HLinearOp,
    alg: &P,
) -> SumCompatibility {
    let mut pre = Report::new("both summands satisfy the identity");
    pre.push_child(check_operator(kind, p1, alg));
    pre.push_child(check_operator(kind, p2, alg));
    let mut cond = Report::new(format!("{kind} cross-term condition"));
    if rank_guard(&mut cond, alg, &[p1, p2]) {
        let cx = Ctx { alg };
        for (i, j) in pairs(alg.rank()) {
            for (tag, r) in cross_residuals(&cx, kind, p1, p2, &cx.e(i), &cx.e(j)) {
                cond.record(format!("(e{}, e{}) {tag}", i + 1, j + 1).trim_end().to_string(), residual(cx.hopf(), &r));
            }
        }
    }
    let sum = check_operator(kind, &p1.add(p2), alg);
    SumCompatibility { preconditions: pre, condition: cond, sum }
}

/// `N^i(a)*N^j(b) - (id⊗N^j)(N^i(a)*b) - (id⊗N^i)(a*N^j(b)) + (id⊗N^{i+j})(a*b) = 0`.
pub fn check_power_identity<P: PseudoProduct + ?Sized>(n: &HLinearOp, alg: &P, i_max: u32, j_max: u32) -> Report {
    let mut rep = Report::new(format!("power identity for i <= {i_max}, j <= {j_max}"));
    if !rank_guard(&mut rep, alg, &[n]) {
        return rep;
    }
    let cx = Ctx { alg };
    let hopf = cx.hopf();
    let powers: Vec<HLinearOp> = (0..=i_max + j_max).map(|k| n.power(hopf, k)).collect();
    for i in 0..=i_max {
        for j in 0..=j_max {
            for (x, y) in pairs(alg.rank()) {
                let (a, b) = (cx.e(x), cx.e(y));
                let nia = cx.ap(&powers[i as usize], &a);
                let njb = cx.ap(&powers[j as usize], &b);
                let total = cx
                    .prod(&nia, &njb)
                    .sub(&cx.out(&powers[j as usize], &cx.prod(&nia, &b)))
                    .sub(&cx.out(&powers[i as usize], &cx.prod(&a, &njb)))
                    .add(&cx.out(&powers[(i + j) as usize], &cx.prod(&a, &b)));
                rep.record(format!("i={i} j={j} (e{}, e{})", x + 1, y + 1), residual(hopf, &total));
            }
        }
    }
    rep
}

/// `φ(a) *_B φ(b) = (id ⊗_H φ)(a *_A b)` on basis pairs.
pub fn check_homomorphism<A: PseudoProduct + ?Sized, B: PseudoProduct + ?Sized>(phi: &HLinearOp, a: &A, b: &B) -> Report {
    let mut rep = Report::new("homomorphism");
    if !rank_guard(&mut rep, a, &[phi]) || !rank_guard(&mut rep, b, &[phi]) {
        return rep;
    }
    let ca = Ctx { alg: a };
    let cb = Ctx { alg: b };
    for (i, j) in pairs(a.rank()) {
        let lhs = cb.prod(&cb.ap(phi, &ca.e(i)), &cb.ap(phi, &ca.e(j)));
        let rhs = ca.out(phi, &ca.prod(&ca.e(i), &ca.e(j)));
        rep.record(format!("(e{}, e{})", i + 1, j + 1), residual(ca.hopf(), &lhs.sub(&rhs)));
    }
    rep
}

/// Detects which of `N² = 0`, `N² = N`, `N² = id` holds and compares the Nijenhuis verdict
/// with the matching Rota-Baxter verdicts.
pub fn check_square_branch<P: PseudoProduct + ?Sized>(n: &HLinearOp, alg: &P) -> Report {
    let hopf = alg.hopf();
    let r = n.rank();
    let sq = n.compose(hopf, n);
    let id = HLinearOp::identity(hopf, r);
    let mut rep = Report::new("square condition test");
    let nij = check_operator(&OperatorKind::Nijenhuis, n, alg);
    let (branch, others): (&str, Vec<Report>) = if sq.is_zero() {
        ("N^2 = 0", vec![check_operator(&OperatorKind::RotaBaxter(q(0)), n, alg)])
    } else if sq == *n {
        ("N^2 = N", vec![check_operator(&OperatorKind::RotaBaxter(q(-1)), n, alg)])
    } else if sq == id {
        (
            "N^2 = id",
            vec![
                check_operator(&OperatorKind::RotaBaxter(q(-2)), &n.add(&id), alg),
                check_operator(&OperatorKind::RotaBaxter(q(2)), &n.sub(&id), alg),
            ],
        )
    } else {
        rep.note("not applicable: none of N^2 = 0, N^2 = N, N^2 = id holds");
        return rep;
    };
    rep.note(format!("branch {branch}"));
    let nij_ok = nij.passed();
    let mut eq = Report::new("verdict equivalence");
    for o in &others {
        let msg = format!("nijenhuis {} but {} {}", verdict(nij_ok), o.title, verdict(o.passed()));
        eq.record(o.title.clone(), (nij_ok != o.passed()).then_some(msg));
    }
    rep.note(format!("nijenhuis: {}", verdict(nij_ok)));
    for o in &others {
        rep.note(format!("{}: {}", o.title, verdict(o.passed())));
    }
    rep.push_child(eq);
    rep
}

fn verdict(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

/// Checks that every module coefficient of `P(e_i) * P(e_j)` lies in the H-span of the rows
/// of `P`, searching for coefficients of degree at most `deg(target) + extra`.
pub fn image_subalgebra_check<P: PseudoProduct + ?Sized>(op: &HLinearOp, alg: &P, extra: u32) -> Report {
    let mut rep = Report::new("image is a subalgebra");
    if !rank_guard(&mut rep, alg, &[op]) {
        return rep;
    }
    let cx = Ctx { alg };
    let hopf = cx.hopf();
    let r = alg.rank();
    for (i, j) in pairs(r) {
        let p = cx.prod(&cx.ap(op, &cx.e(i)), &cx.ap(op, &cx.e(j)));
        let mut groups: std::collections::BTreeMap<Vec<Mono>, ModuleElem> = Default::default();
        for (key, c) in p.terms() {
            let entry = groups.entry(key.slots.clone()).or_insert_with(|| ModuleElem::zero(r));
            let add = ModuleElem::single(r, key.module, HElem::term(key.coeff.clone(), c.clone()));
            *entry = entry.add(&add);
        }
        for (slots, target) in groups {
            let deg = target.degree().max(0) as u32 + extra;
            let found = in_span(hopf, op, &target, deg);
            let case = format!("(e{}, e{}) at {}", i + 1, j + 1, slots.iter().map(|m| hopf.fmt_mono(m)).collect::<Vec<_>>().join(" | "));
            rep.record(case, (!found).then(|| target.fmt(hopf)));
        }
    }
    rep
}

fn in_span(hopf: &HopfAlgebra, op: &HLinearOp, target: &ModuleElem, deg: u32) -> bool {
    let basis = hopf.basis_up_to(deg);
    let r = op.rank();
    // Unknown f_{i,m}: coefficient of monomial m in f_i, with Σ_i f_i P(e_i) = target.
    let mut columns: Vec<Vec<(usize, Mono, Q)>> = Vec::new();
    for i in 0..r {
        for m in &basis {
            let img = op.rows()[i].left_mul(hopf, &HElem::from_mono(m.clone()));
            let mut col = Vec::new();
            for (t, h) in img.coeffs().iter().enumerate() {
                for (mm, c) in h.terms() {
                    col.push((t, mm.clone(), c.clone()));
                }
            }
            columns.push(col);
        }
    }
    let mut index: std::collections::BTreeMap<(usize, Mono), usize> = Default::default();
    let mut register = |t: usize, m: &Mono| {
        let n = index.len();
        *index.entry((t, m.clone())).or_insert(n)
    };
    for col in &columns {
        for (t, m, _) in col {
            register(*t, m);
        }
    }
    for (t, h) in target.coeffs().iter().enumerate() {
        for (m, _) in h.terms() {
            register(t, m);
        }
    }
    let rows = index.len();
    let mut a = vec![vec![Q::zero(); columns.len()]; rows];
    for (c, col) in columns.iter().enumerate() {
        for (t, m, v) in col {
            a[index[&(*t, m.clone())]][c] += v;
        }
    }
    let mut b = vec![Q::zero(); rows];
    for (t, h) in target.coeffs().iter().enumerate() {
        for (m, v) in h.terms() {
            b[index[&(t, m.clone())]] += v;
        }
    }
    solve(&a, &b).is_some()
}
