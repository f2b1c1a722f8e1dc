//! Subcommand execution. Every command produces a plain-text report and a status; nothing
//! here depends on timing, thread count or the environment, so reports are reproducible.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use pseudoalg::annihilation::{check_lift, AnnihilationAlgebra, DualMap, DualSpace};
use pseudoalg::conformal::{check_conformal_axioms, check_conformal_operator, ConformalAlgebra};
use pseudoalg::error::Error;
use pseudoalg::hopf::HElem;
use pseudoalg::operators::{
    check_homomorphism, check_ns, check_operator, derive, DeriveKind, Derived, OperatorKind,
};
use pseudoalg::pseudoalgebra::{check_structure, PseudoProduct, Pseudoalgebra};
use pseudoalg::rank1::classify;
use pseudoalg::rational::Q;
use pseudoalg::report::Report;

use crate::model::{Definition, ModelError, Task, XiSpec};

pub const DEFAULT_CAP: u32 = 3;
pub const DEFAULT_ANNIHILATION_TRUNCATION: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Undecided,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Undecided => 3,
        }
    }

    fn of(rep: &Report) -> Status {
        if rep.passed() {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// A usage error: the file lacks something the command needs, or a flag is invalid.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum UsageError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Invalid(String),
}

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError::Invalid(e.to_string())
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub text: String,
}

/// Flag values shared by all subcommands.
#[derive(Clone, Debug, Default)]
pub struct Settings {
    pub cap: Option<u32>,
    pub truncation: Option<u32>,
    /// Replaces the claimed kinds of the operator in `conformal`.
    pub kind: Option<OperatorKind>,
}

/// Fills in the weight of `reynolds` or `rota-baxter` from `--weight` when it is not written
/// inline.
pub fn resolve_kind(s: &str, weight: Option<&Q>) -> Result<OperatorKind, UsageError> {
    let s = s.trim();
    let text = match (s, weight) {
        ("reynolds" | "rota-baxter", Some(w)) => format!("{s}({w})"),
        ("reynolds" | "rota-baxter", None) => {
            return Err(UsageError::Invalid(format!("`{s}` needs a weight: use --weight <p/q>")))
        }
        _ => s.to_string(),
    };
    text.parse().map_err(UsageError::Invalid)
}

pub fn resolve_construction(s: &str, weight: Option<&Q>) -> Result<DeriveKind, UsageError> {
    let s = s.trim();
    let text = match (s, weight) {
        ("reynolds-double", Some(w)) => format!("{s}({w})"),
        ("reynolds-double", None) => {
            return Err(UsageError::Invalid("`reynolds-double` needs a weight: use --weight <p/q>".into()))
        }
        _ => s.to_string(),
    };
    text.parse().map_err(UsageError::Invalid)
}

fn finish(mut text: String, status: Status) -> Outcome {
    let verdict = match status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Undecided => "UNDECIDED",
    };
    let _ = writeln!(text, "verdict: {verdict}");
    Outcome { status, text }
}

pub fn execute(task: &Task, def: &Definition, settings: &Settings) -> Result<Outcome, UsageError> {
    match task {
        Task::Check => check(def, settings),
        Task::Derive { op, construction } => derive_cmd(def, op, construction),
        Task::Classify { kind } => classify_cmd(def, kind, settings),
        Task::Annihilate { op, kind } => annihilate(def, op, kind, settings),
        Task::Conformal { op } => conformal(def, op.as_deref(), settings),
    }
}

/// Runs the tasks listed in the file, in order.
pub fn run_tasks(def: &Definition, settings: &Settings) -> Result<Outcome, UsageError> {
    if def.tasks.is_empty() {
        return Err(UsageError::Invalid("the file lists no tasks".into()));
    }
    let mut text = String::new();
    let mut status = Status::Pass;
    for t in &def.tasks {
        let out = execute(t, def, settings)?;
        let _ = writeln!(text, "== task: {t}");
        text.push_str(&out.text);
        status = status.max(out.status);
    }
    text.push_str("== all tasks\n");
    Ok(finish(text, status))
}

fn check(def: &Definition, settings: &Settings) -> Result<Outcome, UsageError> {
    let cap = settings.cap.unwrap_or(DEFAULT_CAP);
    let mut rep = Report::new("check");
    rep.push_child(def.hopf.axiom_report(cap));
    match &def.algebra {
        Some(alg) => {
            rep.push_child(check_structure(alg, None));
            for o in &def.operators {
                for k in &o.claims {
                    let mut r = check_operator(k, &o.op, alg);
                    r.title = format!("operator {} is {k}", o.name);
                    rep.push_child(r);
                }
            }
        }
        None if def.operators.iter().any(|o| !o.claims.is_empty()) => {
            return Err(ModelError::Semantic {
                path: "pseudoalgebra".into(),
                message: "operator claims need a pseudoalgebra section".into(),
            }
            .into())
        }
        None => {}
    }
    Ok(finish(rep.to_string(), Status::of(&rep)))
}

fn derive_cmd(def: &Definition, op_name: &str, construction: &DeriveKind) -> Result<Outcome, UsageError> {
    let alg = def.require_algebra()?;
    let op = &def.require_operator(op_name)?.op;
    let mut text = format!("construction: {construction}\noperator: {op_name}\n");
    let derived = match derive(construction, op, alg) {
        Ok(d) => d,
        Err(Error::PreconditionFailed(why)) => {
            let _ = writeln!(text, "precondition failed:\n{why}");
            return Ok(finish(text, Status::Fail));
        }
        Err(e) => return Err(e.into()),
    };
    let mut rep = Report::new(format!("{construction} checks"));
    match &derived {
        Derived::Algebra(d) => {
            let _ = writeln!(text, "derived products:");
            text.push_str(&d.fmt_table());
            rep.push_child(check_structure(d, None));
            let extra = match construction {
                DeriveKind::AssocTwistLeft | DeriveKind::AssocTwistRight => {
                    Some(titled(check_operator(&OperatorKind::Averaging, op, d), "T is averaging on the twist"))
                }
                DeriveKind::LieDeformNijenhuis => {
                    Some(titled(check_homomorphism(op, d, alg), "N is a homomorphism to the original bracket"))
                }
                DeriveKind::ReynoldsDouble(l) => Some(titled(
                    check_operator(&OperatorKind::Reynolds(l.clone()), op, d),
                    "R is Reynolds on the new product",
                )),
                _ => None,
            };
            rep.children.extend(extra);
        }
        Derived::Ns(ns) => {
            for (name, a) in [("succ", &ns.succ), ("prec", &ns.prec), ("diamond", &ns.diamond)] {
                let _ = writeln!(text, "{name} products:");
                text.push_str(&a.fmt_table());
            }
            rep.push_child(check_ns(ns));
        }
    }
    let _ = write!(text, "{rep}");
    Ok(finish(text, Status::of(&rep)))
}

fn titled(mut r: Report, title: &str) -> Report {
    r.title = title.into();
    r
}

fn classify_cmd(def: &Definition, kind: &OperatorKind, settings: &Settings) -> Result<Outcome, UsageError> {
    let alg = def.require_algebra()?;
    if alg.rank() != 1 {
        return Err(UsageError::Invalid(format!(
            "classify handles rank-one pseudoalgebras; this one has rank {}",
            alg.rank()
        )));
    }
    let cap = settings.cap.unwrap_or(DEFAULT_CAP);
    let alpha = alg.table().get(0, 0, 0).clone();
    let sol = match classify(kind, &def.hopf, &alpha, cap) {
        Ok(s) => s,
        Err(Error::PreconditionFailed(why)) => {
            return Ok(finish(format!("precondition failed:\n{why}\n"), Status::Fail));
        }
        Err(e) => return Err(e.into()),
    };
    let status = if !sol.is_decided() {
        Status::Undecided
    } else {
        Status::of(&sol.verification)
    };
    Ok(finish(sol.render(&def.hopf), status))
}

fn dual_map(def: &Definition, space: &DualSpace) -> Result<DualMap, UsageError> {
    let h = &*def.hopf;
    let spec = def.dual.as_ref().and_then(|d| d.xi.clone()).unwrap_or(XiSpec::Integral(Q::from_integer(1.into())));
    Ok(match spec {
        XiSpec::Integral(c) => DualMap::integral(h, &c)
            .ok_or_else(|| UsageError::Invalid("this Hopf algebra has no nonzero left integral".into()))?,
        XiSpec::Identity => DualMap::identity(h),
        XiSpec::Zero => DualMap::Left(HElem::zero()),
        XiSpec::Left(e) => DualMap::Left(e),
        XiSpec::Explicit(rows) => {
            let mut images = BTreeMap::new();
            for (m, row) in space.basis().iter().zip(&rows) {
                let mut img = space.zero();
                for (n, c) in space.basis().iter().zip(row) {
                    img = img.add(&space.dual_of(n)?.scale(c));
                }
                images.insert(m.clone(), img);
            }
            DualMap::Explicit(images)
        }
    })
}

fn annihilate(def: &Definition, op_name: &str, kind: &OperatorKind, settings: &Settings) -> Result<Outcome, UsageError> {
    let alg = def.require_algebra()?;
    let op = &def.require_operator(op_name)?.op;
    let truncation = settings
        .truncation
        .or_else(|| def.dual.as_ref().and_then(|d| d.truncation))
        .unwrap_or(DEFAULT_ANNIHILATION_TRUNCATION);
    let ann = AnnihilationAlgebra::new(alg, truncation);
    let xi = dual_map(def, &ann.space)?;
    let mut text = String::new();
    if ann.space.is_exact() {
        let _ = writeln!(text, "dual: exact, dimension {}", ann.space.basis().len());
    } else {
        let _ = writeln!(text, "dual: truncated at degree {}", ann.space.truncation());
    }
    let rep = check_lift(kind, &xi, op, &ann)?;
    let _ = write!(text, "{rep}");
    Ok(finish(text, Status::of(&rep)))
}

fn table_degree(alg: &Pseudoalgebra) -> u32 {
    let r = alg.rank();
    (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .map(|(i, j)| alg.basis_product(i, j).max_first_slot_degree().max(0) as u32)
        .max()
        .unwrap_or(0)
}

fn conformal(def: &Definition, op_name: Option<&str>, settings: &Settings) -> Result<Outcome, UsageError> {
    let alg = def.require_algebra()?;
    let h = &*def.hopf;
    let degree = settings.cap.unwrap_or(DEFAULT_CAP);
    let truncation = settings
        .truncation
        .or_else(|| def.dual.as_ref().and_then(|d| d.truncation))
        .unwrap_or(degree + table_degree(alg).max(1));
    if h.n_gens() > 0 && truncation <= degree {
        return Err(UsageError::Invalid(format!(
            "truncation {truncation} must exceed the checked degree {degree}"
        )));
    }
    let c = ConformalAlgebra::new(alg, truncation)?;
    let mut text = String::new();
    let _ = writeln!(text, "x-brackets of basis elements:");
    for i in 0..alg.rank() {
        for j in 0..alg.rank() {
            for m in c.space().basis().iter().filter(|m| m.degree() <= degree) {
                if let Some(v) = c.cached(i, j, m).filter(|v| !v.is_zero()) {
                    let _ = writeln!(text, "[e{} _x[{}] e{}] = {}", i + 1, h.fmt_mono(m), j + 1, v.fmt(h));
                }
            }
        }
    }
    let mut rep = Report::new("conformal");
    rep.push_child(check_conformal_axioms(&c, degree)?);
    if let Some(name) = op_name {
        let named = def.require_operator(name)?;
        let kinds = match &settings.kind {
            Some(k) => vec![k.clone()],
            None => named.claims.clone(),
        };
        if kinds.is_empty() {
            return Err(UsageError::Invalid(format!("operator `{name}` claims no kind; pass --kind")));
        }
        for k in &kinds {
            rep.push_child(titled(check_operator(k, &named.op, alg), &format!("{name} is {k} on the pseudoalgebra")));
            rep.push_child(titled(
                check_conformal_operator(k, &named.op, &c, degree)?,
                &format!("{name} is {k} on the conformal algebra"),
            ));
        }
    }
    let _ = write!(text, "{rep}");
    Ok(finish(text, Status::of(&rep)))
}
