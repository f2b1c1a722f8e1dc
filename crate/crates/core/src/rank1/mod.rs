//! Classification of rank-one Rota-Baxter type operators `P(e) = h e` up to a degree cap.
//!
//! The operator identity for `[e * e] = α ⊗_H e` becomes a polynomial system in the
//! coefficients `u_I` of `h = Σ u_I d^(I)`, one equation per canonical basis element of
//! `H ⊗ H ⊗_H L`. The solver eliminates linear equations, branches on monomial and
//! factorable equations and on rational roots of univariate ones, and reports anything
//! else as undecided.

mod poly;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

pub use poly::{rational_roots, Poly};

use crate::error::{Error, Result};
use crate::hopf::{HElem, HopfAlgebra, HopfKind, Mono};
use crate::operators::{check_operator, HLinearOp, OperatorKind};
use crate::pseudo_tensor::{normalize_pair, ModuleElem, PseudoKey};
use crate::pseudoalgebra::{check_structure, Flavor, Pseudoalgebra, Table};
use crate::rational::{frac, q, Q};
use crate::report::Report;
use crate::tensor::TensorElem;

/// `c · (A ⊗ B) α ⊗_H C e` where `A`, `B` are `h` or `1` and `C = h^k`.
struct Shape {
    coef: Q,
    left: bool,
    right: bool,
    outer: u32,
}

fn shape(coef: Q, left: bool, right: bool, outer: u32) -> Shape {
    Shape { coef, left, right, outer }
}

fn shapes(kind: &OperatorKind) -> Vec<Vec<Shape>> {
    let one = q(1);
    let m = q(-1);
    match kind {
        OperatorKind::Averaging => vec![
            vec![shape(one.clone(), true, true, 0), shape(m.clone(), true, false, 1)],
            vec![shape(one, true, true, 0), shape(m, false, true, 1)],
        ],
        OperatorKind::Nijenhuis => vec![vec![
            shape(one.clone(), true, true, 0),
            shape(m.clone(), true, false, 1),
            shape(m, false, true, 1),
            shape(one, false, false, 2),
        ]],
        OperatorKind::Reynolds(l) => vec![vec![
            shape(one, true, true, 0),
            shape(m.clone(), true, false, 1),
            shape(m, false, true, 1),
            shape(-l.clone(), true, true, 1),
        ]],
        OperatorKind::RotaBaxter(l) => vec![vec![
            shape(one, true, true, 0),
            shape(m.clone(), true, false, 1),
            shape(m, false, true, 1),
            shape(-l.clone(), false, false, 1),
        ]],
    }
}

/// Polynomial equations whose common zeros are the operators `h e` satisfying an identity.
#[derive(Clone, Debug)]
pub struct ResidualSystem {
    pub kind: OperatorKind,
    pub cap: u32,
    /// Unknown `u_i` is the coefficient of `unknowns[i]`.
    pub unknowns: Vec<Mono>,
    pub equations: Vec<(PseudoKey, Poly)>,
}

impl ResidualSystem {
    pub fn nvars(&self) -> usize {
        self.unknowns.len()
    }

    pub fn vanishes_at(&self, point: &[Q]) -> bool {
        self.equations.iter().all(|(_, p)| p.eval(point).is_zero())
    }

    pub fn element(&self, point: &[Q]) -> HElem {
        self.unknowns.iter().zip(point).map(|(m, c)| (m.clone(), c.clone())).collect()
    }

    pub fn fmt(&self, hopf: &HopfAlgebra) -> String {
        let name = |i: usize| format!("u[{}]", hopf.fmt_mono(&self.unknowns[i]));
        let mut s = String::new();
        for (_, p) in &self.equations {
            let _ = writeln!(s, "  {} = 0", p.fmt_with(&name));
        }
        s
    }
}

fn rank_one(hopf: &Arc<HopfAlgebra>, alpha: &TensorElem) -> Result<Pseudoalgebra> {
    let mut t = Table::zeros(1);
    t.set(0, 0, 0, alpha.clone())?;
    Pseudoalgebra::new(hopf.clone(), t, Flavor::Lie)
}

fn preconditions(hopf: &Arc<HopfAlgebra>, alpha: &TensorElem) -> Result<Pseudoalgebra> {
    if hopf.kind() != HopfKind::Enveloping {
        return Err(Error::Unsupported("rank-one classification needs an enveloping algebra".into()));
    }
    if alpha.is_zero() {
        return Err(Error::PreconditionFailed("α must be nonzero".into()));
    }
    let alg = rank_one(hopf, alpha)?;
    let rep = check_structure(&alg, Some(Flavor::Lie));
    if !rep.passed() {
        return Err(Error::PreconditionFailed(format!("α does not define a Lie pseudoalgebra:\n{rep}")));
    }
    Ok(alg)
}

/// Builds the residual system of `kind` for `h` ranging over degree at most `cap`.
pub fn residual_system(kind: &OperatorKind, hopf: &Arc<HopfAlgebra>, alpha: &TensorElem, cap: u32) -> Result<ResidualSystem> {
    preconditions(hopf, alpha)?;
    Ok(build_system(kind, hopf, alpha, cap))
}

fn build_system(kind: &OperatorKind, hopf: &HopfAlgebra, alpha: &TensorElem, cap: u32) -> ResidualSystem {
    let unknowns = hopf.basis_up_to(cap);
    let n = unknowns.len();
    let mut equations: BTreeMap<(usize, PseudoKey), Poly> = BTreeMap::new();
    for (idx, identity) in shapes(kind).into_iter().enumerate() {
        for sh in identity {
            let slots = sh.left as u32 + sh.right as u32 + sh.outer;
            let assignments: Vec<Vec<usize>> = (0..n.pow(slots))
                .map(|mut code| {
                    (0..slots)
                        .map(|_| {
                            let d = code % n;
                            code /= n;
                            d
                        })
                        .collect()
                })
                .collect();
            let parts: Vec<(Vec<u32>, Vec<(PseudoKey, Q)>)> = assignments
                .par_iter()
                .map(|asg| {
                    let mut it = asg.iter();
                    let mut pick = |on: bool| match on {
                        true => HElem::from_mono(unknowns[*it.next().expect("slot")].clone()),
                        false => hopf.one(),
                    };
                    let a = pick(sh.left);
                    let b = pick(sh.right);
                    let mut c = hopf.one();
                    for _ in 0..sh.outer {
                        c = hopf.mul(&c, &pick(true));
                    }
                    let t = hopf
                        .tensor_mul(&TensorElem::pure(&[a, b]), alpha)
                        .expect("arity two");
                    let p = normalize_pair(hopf, &t, &ModuleElem::from_coeffs(vec![c])).expect("rank one");
                    let mut exps = vec![0u32; n];
                    for &v in asg {
                        exps[v] += 1;
                    }
                    (exps, p.terms().map(|(k, c)| (k.clone(), c * &sh.coef)).collect())
                })
                .collect();
            for (exps, terms) in parts {
                for (key, c) in terms {
                    equations
                        .entry((idx, key))
                        .or_insert_with(|| Poly::zero(n))
                        .add_term(exps.clone(), c);
                }
            }
        }
    }
    let equations = equations
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|((_, k), p)| (k, p))
        .collect();
    ResidualSystem { kind: kind.clone(), cap, unknowns, equations }
}

/// An affine family of solutions: fixed unknowns are affine in the free ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    nvars: usize,
    fixed: BTreeMap<usize, Poly>,
}

impl Component {
    pub fn free(&self) -> Vec<usize> {
        (0..self.nvars).filter(|i| !self.fixed.contains_key(i)).collect()
    }

    pub fn dimension(&self) -> usize {
        self.nvars - self.fixed.len()
    }

    /// Value of unknown `i` as a polynomial in the free unknowns.
    pub fn value(&self, i: usize) -> Poly {
        self.fixed.get(&i).cloned().unwrap_or_else(|| Poly::var(self.nvars, i))
    }

    /// The point with free unknowns set to `params` (in the order of [`Self::free`]).
    pub fn point(&self, params: &[Q]) -> Vec<Q> {
        let mut full = vec![Q::zero(); self.nvars];
        for (v, p) in self.free().into_iter().zip(params) {
            full[v] = p.clone();
        }
        (0..self.nvars).map(|i| self.value(i).eval(&full)).collect()
    }

    pub fn contains(&self, point: &[Q]) -> bool {
        self.fixed.iter().all(|(v, e)| e.eval(point) == point[*v])
    }

    fn within(&self, other: &Component) -> bool {
        other.fixed.iter().all(|(v, e)| {
            let mut lhs = e.clone();
            for (w, val) in &self.fixed {
                lhs = lhs.substitute(*w, val);
            }
            lhs.sub(&self.value(*v)).is_zero()
        })
    }

    pub fn fmt(&self, hopf: &HopfAlgebra, unknowns: &[Mono]) -> String {
        let free = self.free();
        let name = |i: usize| {
            let k = free.iter().position(|&f| f == i).unwrap_or(0);
            if free.len() == 1 {
                "c".to_string()
            } else {
                format!("c{}", k + 1)
            }
        };
        let parts: Vec<String> = (0..self.nvars)
            .rev()
            .filter_map(|i| {
                let v = self.value(i);
                if v.is_zero() {
                    return None;
                }
                let e = v.fmt_with(&name);
                let e = if v.len() > 1 { format!("({e})") } else { e };
                Some(format!("{e}·{}", hopf.fmt_mono(&unknowns[i])))
            })
            .collect();
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        format!("{{{body}}}")
    }
}

/// A branch the solver could not finish, with the equations left over.
#[derive(Clone, Debug)]
pub struct Undecided {
    pub fixed: BTreeMap<usize, Poly>,
    pub equations: Vec<Poly>,
}

enum Outcome {
    Solved(Component),
    Undecided(Undecided),
}

fn assign(eqs: &[Poly], fixed: &BTreeMap<usize, Poly>, v: usize, value: &Poly) -> (Vec<Poly>, BTreeMap<usize, Poly>) {
    let eqs = eqs.iter().map(|e| e.substitute(v, value)).collect();
    let mut fixed: BTreeMap<usize, Poly> = fixed.iter().map(|(w, e)| (*w, e.substitute(v, value))).collect();
    fixed.insert(v, value.clone());
    (eqs, fixed)
}

fn search(nvars: usize, eqs: Vec<Poly>, fixed: BTreeMap<usize, Poly>, out: &mut Vec<Outcome>) {
    let mut eqs: Vec<Poly> = eqs.into_iter().filter(|e| !e.is_zero()).map(|e| e.monic()).collect();
    eqs.sort();
    eqs.dedup();
    if eqs.iter().any(|e| e.degree() == 0) {
        return;
    }
    if eqs.is_empty() {
        out.push(Outcome::Solved(Component { nvars, fixed }));
        return;
    }
    if let Some((lin, c0)) = eqs.iter().find_map(Poly::linear_parts) {
        let (&v, cv) = lin.iter().next_back().expect("degree one");
        let mut value = Poly::constant(nvars, -c0 / cv);
        for (&w, cw) in &lin {
            if w != v {
                value = value.sub(&Poly::var(nvars, w).scale(&(cw / cv)));
            }
        }
        let (e, f) = assign(&eqs, &fixed, v, &value);
        return search(nvars, e, f, out);
    }
    if let Some(single) = eqs.iter().find(|e| e.len() == 1) {
        for v in single.vars() {
            let (e, f) = assign(&eqs, &fixed, v, &Poly::zero(nvars));
            search(nvars, e, f, out);
        }
        return;
    }
    if let Some((idx, v)) = eqs.iter().enumerate().find_map(|(i, e)| e.common_var().map(|v| (i, v))) {
        let (e, f) = assign(&eqs, &fixed, v, &Poly::zero(nvars));
        search(nvars, e, f, out);
        let mut rest = eqs.clone();
        rest[idx] = eqs[idx].div_var(v);
        return search(nvars, rest, fixed, out);
    }
    if let Some((v, coeffs)) = eqs.iter().find_map(Poly::as_univariate) {
        match rational_roots(&coeffs) {
            Some((roots, cofactor)) => {
                for r in roots {
                    let (e, f) = assign(&eqs, &fixed, v, &Poly::constant(nvars, r));
                    search(nvars, e, f, out);
                }
                if cofactor.len() > 1 {
                    let mut factor = Poly::zero(nvars);
                    for (k, c) in cofactor.into_iter().enumerate() {
                        let mut e = vec![0; nvars];
                        e[v] = k as u32;
                        factor.add_term(e, c);
                    }
                    let mut rest = eqs.clone();
                    rest.push(factor);
                    out.push(Outcome::Undecided(Undecided { fixed, equations: rest }));
                }
            }
            None => out.push(Outcome::Undecided(Undecided { fixed, equations: eqs })),
        }
        return;
    }
    out.push(Outcome::Undecided(Undecided { fixed, equations: eqs }));
}

/// Solves a residual system; components are deduplicated and pruned by inclusion.
pub fn solve(system: &ResidualSystem) -> (Vec<Component>, Vec<Undecided>) {
    let n = system.nvars();
    let mut out = Vec::new();
    search(n, system.equations.iter().map(|(_, p)| p.clone()).collect(), BTreeMap::new(), &mut out);
    let mut comps: Vec<Component> = Vec::new();
    let mut undecided = Vec::new();
    for o in out {
        match o {
            Outcome::Solved(c) => {
                if !comps.contains(&c) {
                    comps.push(c);
                }
            }
            Outcome::Undecided(u) => undecided.push(u),
        }
    }
    let kept: Vec<Component> = comps
        .iter()
        .enumerate()
        .filter(|(i, c)| !comps.iter().enumerate().any(|(j, d)| j != *i && c.within(d) && !(d.within(c) && j > *i)))
        .map(|(_, c)| c.clone())
        .collect();
    let mut kept = kept;
    kept.sort_by(|a, b| a.dimension().cmp(&b.dimension()).then_with(|| a.fixed.cmp(&b.fixed)));
    (kept, undecided)
}

#[derive(Clone, Debug)]
pub struct SolutionReport {
    pub system: ResidualSystem,
    pub components: Vec<Component>,
    pub undecided: Vec<Undecided>,
    /// Symbolic substitution, sampled `check_operator` runs and the falsification sweep.
    pub verification: Report,
}

impl SolutionReport {
    pub fn is_decided(&self) -> bool {
        self.undecided.is_empty()
    }

    /// `{c·1}`-style description of the solution set, components joined by `∪`.
    pub fn summary(&self, hopf: &HopfAlgebra) -> String {
        if self.components.is_empty() {
            return "∅".into();
        }
        self.components
            .iter()
            .map(|c| c.fmt(hopf, &self.system.unknowns))
            .collect::<Vec<_>>()
            .join(" ∪ ")
    }

    pub fn render(&self, hopf: &HopfAlgebra) -> String {
        let mut s = String::new();
        let sys = &self.system;
        let _ = writeln!(s, "kind: {}", sys.kind);
        let _ = writeln!(s, "degree cap: {}", sys.cap);
        let _ = writeln!(s, "unknowns: {}", sys.nvars());
        let _ = writeln!(s, "equations: {}", sys.equations.len());
        let _ = writeln!(s, "solutions: {}", self.summary(hopf));
        if !self.is_decided() {
            let _ = writeln!(s, "verdict: undecided");
            let name = |i: usize| format!("u[{}]", hopf.fmt_mono(&sys.unknowns[i]));
            for u in &self.undecided {
                let _ = writeln!(s, "undecided branch:");
                for (v, e) in &u.fixed {
                    let _ = writeln!(s, "  {} = {}", name(*v), e.fmt_with(&name));
                }
                for e in &u.equations {
                    let _ = writeln!(s, "  {} = 0", e.fmt_with(&name));
                }
            }
            let _ = writeln!(s, "residual system:");
            s.push_str(&sys.fmt(hopf));
        }
        let _ = write!(s, "{}", self.verification);
        s
    }
}

fn sample_params(dim: usize) -> Vec<Vec<Q>> {
    let mut v = vec![vec![q(0); dim], vec![q(1); dim]];
    v.push((0..dim).map(|i| frac(2 * i as i64 + 3, i as i64 + 2)).collect());
    v.dedup();
    v
}

/// Classifies operators `P(e) = h e` of the given kind with `deg h <= cap`.
pub fn classify(kind: &OperatorKind, hopf: &Arc<HopfAlgebra>, alpha: &TensorElem, cap: u32) -> Result<SolutionReport> {
    let alg = preconditions(hopf, alpha)?;
    let system = build_system(kind, hopf, alpha, cap);
    let (components, undecided) = solve(&system);
    let mut verification = Report::new("verification");

    let mut symbolic = Report::new("solutions annihilate every equation");
    for (ci, c) in components.iter().enumerate() {
        for (key, eq) in &system.equations {
            let mut r = eq.clone();
            for v in 0..system.nvars() {
                if let Some(val) = c.fixed.get(&v) {
                    r = r.substitute(v, val);
                }
            }
            let residual = (!r.is_zero()).then(|| r.to_string());
            symbolic.record(format!("component {} at {:?}", ci + 1, key.slots), residual);
        }
    }
    verification.push_child(symbolic);

    let mut sampled = Report::new("sampled solutions pass the operator check");
    let mut sweep = Report::new("falsification sweep");
    for (ci, c) in components.iter().enumerate() {
        for params in sample_params(c.dimension()) {
            let point = c.point(&params);
            let h = system.element(&point);
            let op = HLinearOp::diagonal(vec![h.clone()]);
            let rep = check_operator(kind, &op, &alg);
            let residual = (!rep.passed()).then(|| rep.to_string());
            sampled.record(format!("component {}: h = {}", ci + 1, hopf.fmt_elem(&h)), residual);
        }
        let base = c.point(&vec![q(1); c.dimension()]);
        for (mi, m) in system.unknowns.iter().enumerate() {
            if m.degree() == 0 {
                continue;
            }
            let mut bumped = base.clone();
            bumped[mi] += Q::one();
            if c.contains(&bumped) {
                continue;
            }
            let h = system.element(&bumped);
            let rep = check_operator(kind, &HLinearOp::diagonal(vec![h.clone()]), &alg);
            let residual = rep
                .passed()
                .then(|| format!("h = {} outside the reported set still passes", hopf.fmt_elem(&h)));
            sweep.record(format!("component {} + {}", ci + 1, hopf.fmt_mono(m)), residual);
        }
    }
    verification.push_child(sampled);
    verification.push_child(sweep);
    if !undecided.is_empty() {
        verification.note(format!("{} branch(es) outside solver scope", undecided.len()));
    }
    Ok(SolutionReport { system, components, undecided, verification })
}
