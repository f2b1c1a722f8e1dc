//! New pseudoalgebra structures built from an operator: the Lie bracket of an averaging
//! operator, the two associative twists, the NS structure and Lie deformation of a
//! Nijenhuis operator, and the Reynolds double product.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::pseudo_tensor::{permute, ModuleElem, PseudoElem};
use crate::pseudoalgebra::{
    associativity_report, check_structure, compose_left, compose_right, residual, triples, Flavor, Pseudoalgebra,
    PseudoProduct, Table,
};
use crate::rational::Q;
use crate::report::Report;

use super::{check_operator, HLinearOp, OperatorKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeriveKind {
    LieFromAveraging,
    AssocTwistRight,
    AssocTwistLeft,
    NsFromNijenhuis,
    LieDeformNijenhuis,
    ReynoldsDouble(Q),
}

impl std::fmt::Display for DeriveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DeriveKind::LieFromAveraging => write!(f, "lie-from-averaging"),
            DeriveKind::AssocTwistRight => write!(f, "assoc-twist-right"),
            DeriveKind::AssocTwistLeft => write!(f, "assoc-twist-left"),
            DeriveKind::NsFromNijenhuis => write!(f, "ns-from-nijenhuis"),
            DeriveKind::LieDeformNijenhuis => write!(f, "lie-deform-nijenhuis"),
            DeriveKind::ReynoldsDouble(l) => write!(f, "reynolds-double({l})"),
        }
    }
}

impl std::str::FromStr for DeriveKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s.trim() {
            "lie-from-averaging" => DeriveKind::LieFromAveraging,
            "assoc-twist-right" => DeriveKind::AssocTwistRight,
            "assoc-twist-left" => DeriveKind::AssocTwistLeft,
            "ns-from-nijenhuis" => DeriveKind::NsFromNijenhuis,
            "lie-deform-nijenhuis" => DeriveKind::LieDeformNijenhuis,
            other => {
                let w = other
                    .strip_prefix("reynolds-double(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(crate::rational::parse_rational)
                    .ok_or_else(|| format!("unknown construction `{other}`"))?;
                DeriveKind::ReynoldsDouble(w)
            }
        })
    }
}

/// Three products `▷`, `◁`, `⋄` on one free module.
#[derive(Clone, Debug)]
pub struct NsPseudoalgebra {
    pub succ: Pseudoalgebra,
    pub prec: Pseudoalgebra,
    pub diamond: Pseudoalgebra,
}

impl NsPseudoalgebra {
    /// `a ⋆ b = a ▷ b + a ◁ b + a ⋄ b`.
    pub fn sum(&self) -> Result<Pseudoalgebra> {
        let hopf = self.succ.hopf_arc().clone();
        let r = self.succ.rank();
        let t = Table::from_products(&hopf, r, |i, j| {
            Ok(self
                .succ
                .basis_product(i, j)
                .add(&self.prec.basis_product(i, j))
                .add(&self.diamond.basis_product(i, j)))
        })?;
        Pseudoalgebra::new(hopf, t, Flavor::Associative)
    }
}

#[derive(Clone, Debug)]
pub enum Derived {
    Algebra(Pseudoalgebra),
    Ns(NsPseudoalgebra),
}

impl Derived {
    pub fn algebra(&self) -> Option<&Pseudoalgebra> {
        match self {
            Derived::Algebra(a) => Some(a),
            Derived::Ns(_) => None,
        }
    }

    pub fn ns(&self) -> Option<&NsPseudoalgebra> {
        match self {
            Derived::Ns(n) => Some(n),
            Derived::Algebra(_) => None,
        }
    }
}

fn require(rep: Report) -> Result<()> {
    if rep.passed() {
        Ok(())
    } else {
        Err(Error::PreconditionFailed(rep.to_string()))
    }
}

fn build(
    hopf: &Arc<HopfAlgebra>,
    rank: usize,
    flavor: Flavor,
    f: impl Fn(&ModuleElem, &ModuleElem) -> PseudoElem,
) -> Result<Pseudoalgebra> {
    let e = |i| ModuleElem::basis(hopf, rank, i);
    let t = Table::from_products(hopf, rank, |i, j| Ok(f(&e(i), &e(j))))?;
    Pseudoalgebra::new(hopf.clone(), t, flavor)
}

/// Builds the structure of `kind` after verifying its preconditions on `alg` and `op`.
pub fn derive(kind: &DeriveKind, op: &HLinearOp, alg: &Pseudoalgebra) -> Result<Derived> {
    let (op_kind, base) = match kind {
        DeriveKind::LieFromAveraging | DeriveKind::AssocTwistRight | DeriveKind::AssocTwistLeft => {
            (OperatorKind::Averaging, Flavor::Associative)
        }
        DeriveKind::NsFromNijenhuis => (OperatorKind::Nijenhuis, Flavor::Associative),
        DeriveKind::LieDeformNijenhuis => (OperatorKind::Nijenhuis, Flavor::Lie),
        DeriveKind::ReynoldsDouble(l) => (OperatorKind::Reynolds(l.clone()), Flavor::Associative),
    };
    if op.rank() != alg.rank() {
        return Err(Error::RankMismatch { expected: alg.rank(), found: op.rank() });
    }
    require(check_operator(&op_kind, op, alg))?;
    require(check_structure(alg, Some(base)))?;
    derive_unchecked(kind, op, alg)
}

/// Same construction as [`derive`] with no precondition checks.
pub fn derive_unchecked(kind: &DeriveKind, op: &HLinearOp, alg: &Pseudoalgebra) -> Result<Derived> {
    let hopf = alg.hopf_arc().clone();
    let h: &HopfAlgebra = &hopf;
    let r = alg.rank();
    let p = |a: &ModuleElem, b: &ModuleElem| alg.product(a, b).expect("rank checked");
    let t = |m: &ModuleElem| op.apply(h, m);
    let out = |x: &PseudoElem| op.apply_pseudo(h, x);
    let swap = |x: &PseudoElem| permute(h, &[1, 0], x).expect("arity two");
    Ok(match kind {
        DeriveKind::LieFromAveraging => {
            Derived::Algebra(build(&hopf, r, Flavor::Lie, |a, b| p(a, &t(b)).sub(&swap(&p(b, &t(a)))))?)
        }
        DeriveKind::AssocTwistRight => Derived::Algebra(build(&hopf, r, Flavor::Associative, |a, b| p(a, &t(b)))?),
        DeriveKind::AssocTwistLeft => Derived::Algebra(build(&hopf, r, Flavor::Associative, |a, b| p(&t(a), b))?),
        DeriveKind::NsFromNijenhuis => Derived::Ns(NsPseudoalgebra {
            succ: build(&hopf, r, Flavor::Unchecked, |a, b| p(&t(a), b))?,
            prec: build(&hopf, r, Flavor::Unchecked, |a, b| p(a, &t(b)))?,
            diamond: build(&hopf, r, Flavor::Unchecked, |a, b| out(&p(a, b)).neg())?,
        }),
        DeriveKind::LieDeformNijenhuis => Derived::Algebra(build(&hopf, r, Flavor::Lie, |a, b| {
            p(&t(a), b).add(&p(a, &t(b))).sub(&out(&p(a, b)))
        })?),
        DeriveKind::ReynoldsDouble(l) => Derived::Algebra(build(&hopf, r, Flavor::Associative, |a, b| {
            p(a, &t(b)).add(&p(&t(a), b)).add(&p(&t(a), &t(b)).scale(l))
        })?),
    })
}

/// The four NS axioms on basis triples, plus associativity of the sum product.
pub fn check_ns(ns: &NsPseudoalgebra) -> Report {
    let (succ, prec, dia) = (&ns.succ, &ns.prec, &ns.diamond);
    let hopf = succ.hopf_arc().clone();
    let r = succ.rank();
    let mut rep = Report::new("NS axioms");
    let star = match ns.sum() {
        Ok(s) => s,
        Err(e) => {
            rep.record("sum product", Some(e.to_string()));
            return rep;
        }
    };
    let e = |i| ModuleElem::basis(&hopf, r, i);
    let mut ax = [
        Report::new("a▷(b◁c) = (a▷b)◁c"),
        Report::new("a▷(b▷c) = (a⋆b)▷c"),
        Report::new("a◁(b⋆c) = (a◁b)◁c"),
        Report::new("a▷(b⋄c) - (a⋆b)⋄c = (a⋄b)◁c - a⋄(b⋆c)"),
    ];
    for (i, j, k) in triples(r) {
        let (a, b, c) = (e(i), e(j), e(k));
        let case = format!("(e{}, e{}, e{})", i + 1, j + 1, k + 1);
        let res = (|| -> Result<[PseudoElem; 4]> {
            let r1 = compose_right(prec, succ, &a, &b, &c)?.sub(&compose_left(succ, prec, &a, &b, &c)?);
            let r2 = compose_right(succ, succ, &a, &b, &c)?.sub(&compose_left(&star, succ, &a, &b, &c)?);
            let r3 = compose_right(&star, prec, &a, &b, &c)?.sub(&compose_left(prec, prec, &a, &b, &c)?);
            let r4 = compose_right(dia, succ, &a, &b, &c)?
                .sub(&compose_left(&star, dia, &a, &b, &c)?)
                .sub(&compose_left(dia, prec, &a, &b, &c)?)
                .add(&compose_right(&star, dia, &a, &b, &c)?);
            Ok([r1, r2, r3, r4])
        })();
        match res {
            Ok(rs) => {
                for (rep_i, res_i) in ax.iter_mut().zip(rs.iter()) {
                    rep_i.record(case.clone(), residual(&hopf, res_i));
                }
            }
            Err(x) => ax[0].record(case, Some(x.to_string())),
        }
    }
    for a in ax {
        rep.push_child(a);
    }
    let mut assoc = associativity_report(&star);
    assoc.title = "sum product is associative".into();
    rep.push_child(assoc);
    rep
}
