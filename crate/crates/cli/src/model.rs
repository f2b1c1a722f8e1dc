//! Definition files: TOML sections with element literals inside strings.
//!
//! Indices of generators (`d1`), module basis elements (`e1`) and matrix rows are one-based
//! in the file and zero-based in memory.

use std::fmt;
use std::sync::Arc;

use pseudoalg::hopf::{GroupSpec, HElem, HopfAlgebra, HopfKind, LieAlgebraSpec};
use pseudoalg::operators::{DeriveKind, HLinearOp, OperatorKind};
use pseudoalg::pseudo_tensor::ModuleElem;
use pseudoalg::pseudoalgebra::{Flavor, PseudoProduct, Pseudoalgebra, Table};
use pseudoalg::rational::{parse_rational, Q};
use serde::{Deserialize, Serialize};

use crate::literal::{parse_elem, parse_tensor, LiteralError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{path}: {message}")]
    Semantic { path: String, message: String },
}

fn sem<T>(path: impl Into<String>, message: impl fmt::Display) -> Result<T, ModelError> {
    Err(ModelError::Semantic { path: path.into(), message: message.to_string() })
}

fn lit<T>(path: &str, r: Result<T, LiteralError>) -> Result<T, ModelError> {
    r.or_else(|e| sem(path, e))
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    tasks: Vec<String>,
    hopf: Option<RawHopf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pseudoalgebra: Option<RawPseudo>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    operators: Vec<RawOperator>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dual: Option<RawDual>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawHopf {
    kind: String,
    #[serde(default)]
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree_cap: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    brackets: Vec<RawBracket>,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<RawGroup>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    action: Vec<RawAction>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawBracket {
    i: usize,
    j: usize,
    value: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum RawGroup {
    Cyclic { cyclic: usize },
    Table { names: Vec<String>, table: Vec<Vec<String>> },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    element: String,
    matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawPseudo {
    rank: usize,
    flavor: String,
    #[serde(default)]
    products: Vec<RawProduct>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawProduct {
    i: usize,
    j: usize,
    k: usize,
    value: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawOperator {
    name: String,
    matrix: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    claims: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawDual {
    #[serde(skip_serializing_if = "Option::is_none")]
    truncation: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    xi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scale: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<String>>>,
}

/// A named operator with the kinds it is claimed to satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedOperator {
    pub name: String,
    pub op: HLinearOp,
    pub claims: Vec<OperatorKind>,
}

/// How `ξ: X -> X` is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XiSpec {
    /// `x -> (c t)·x` for the left integral `t`.
    Integral(Q),
    Identity,
    Zero,
    /// `x -> h·x`.
    Left(HElem),
    /// Rows are the images of the dual basis, in dual-basis coordinates.
    Explicit(Vec<Vec<Q>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSpec {
    pub truncation: Option<u32>,
    /// `None` leaves the choice to the command; `annihilate` then uses the integral.
    pub xi: Option<XiSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Check,
    Derive { op: String, construction: DeriveKind },
    Classify { kind: OperatorKind },
    Annihilate { op: String, kind: OperatorKind },
    Conformal { op: Option<String> },
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Task::Check => write!(f, "check"),
            Task::Derive { op, construction } => write!(f, "derive {op} {construction}"),
            Task::Classify { kind } => write!(f, "classify {kind}"),
            Task::Annihilate { op, kind } => write!(f, "annihilate {op} {kind}"),
            Task::Conformal { op: None } => write!(f, "conformal"),
            Task::Conformal { op: Some(op) } => write!(f, "conformal {op}"),
        }
    }
}

impl std::str::FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let words: Vec<&str> = s.split_whitespace().collect();
        Ok(match words.as_slice() {
            ["check"] => Task::Check,
            ["derive", op, c] => Task::Derive { op: op.to_string(), construction: c.parse()? },
            ["classify", k] => Task::Classify { kind: k.parse()? },
            ["annihilate", op, k] => Task::Annihilate { op: op.to_string(), kind: k.parse()? },
            ["conformal"] => Task::Conformal { op: None },
            ["conformal", op] => Task::Conformal { op: Some(op.to_string()) },
            _ => return Err(format!("unknown task `{s}`")),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Definition {
    pub hopf: Arc<HopfAlgebra>,
    pub algebra: Option<Pseudoalgebra>,
    pub operators: Vec<NamedOperator>,
    pub dual: Option<DualSpec>,
    pub tasks: Vec<Task>,
}

impl PartialEq for Definition {
    fn eq(&self, other: &Self) -> bool {
        let alg_eq = match (&self.algebra, &other.algebra) {
            (None, None) => true,
            (Some(a), Some(b)) => a.table() == b.table() && a.flavor() == b.flavor(),
            _ => false,
        };
        *self.hopf == *other.hopf
            && self.hopf.degree_cap() == other.hopf.degree_cap()
            && alg_eq
            && self.operators == other.operators
            && self.dual == other.dual
            && self.tasks == other.tasks
    }
}

impl Definition {
    pub fn operator(&self, name: &str) -> Option<&NamedOperator> {
        self.operators.iter().find(|o| o.name == name)
    }

    pub fn require_algebra(&self) -> Result<&Pseudoalgebra, ModelError> {
        self.algebra
            .as_ref()
            .map_or_else(|| sem("pseudoalgebra", "missing pseudoalgebra section"), Ok)
    }

    pub fn require_operator(&self, name: &str) -> Result<&NamedOperator, ModelError> {
        self.operator(name)
            .map_or_else(|| sem("operators", format!("no operator named `{name}`")), Ok)
    }
}

pub fn parse_str(text: &str) -> Result<Definition, ModelError> {
    let raw: RawFile = toml::from_str(text).map_err(|e| ModelError::Syntax(e.to_string().trim_end().to_string()))?;
    build(raw)
}

pub fn parse_file(path: &std::path::Path) -> Result<Definition, ModelError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ModelError::Syntax(format!("cannot read {}: {e}", path.display())))?;
    parse_str(&text)
}

fn rational(path: &str, s: &str) -> Result<Q, ModelError> {
    parse_rational(s).map_or_else(|| sem(path, format!("`{s}` is not a rational literal")), Ok)
}

fn rational_matrix(path: &str, rows: &[Vec<String>], n: usize) -> Result<Vec<Vec<Q>>, ModelError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return sem(path, format!("expected a {n}×{n} matrix"));
    }
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, s)| rational(&format!("{path}[{}][{}]", i + 1, j + 1), s))
                .collect()
        })
        .collect()
}

fn one_based(path: &str, what: &str, i: usize, n: usize) -> Result<usize, ModelError> {
    if i == 0 || i > n {
        return sem(path, format!("{what}{i} is out of range 1..={n}"));
    }
    Ok(i - 1)
}

fn build_group(raw: &RawGroup) -> Result<GroupSpec, ModelError> {
    match raw {
        RawGroup::Cyclic { cyclic } => {
            if *cyclic == 0 {
                return sem("hopf.group", "cyclic group must have positive order");
            }
            Ok(GroupSpec::cyclic(*cyclic))
        }
        RawGroup::Table { names, table } => {
            let idx = |s: &String| {
                names.iter().position(|n| n == s).map_or_else(
                    || sem("hopf.group.table", format!("unknown group element `{s}`")),
                    Ok,
                )
            };
            let t = table
                .iter()
                .map(|row| row.iter().map(idx).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            GroupSpec::from_table(names.clone(), t).or_else(|e| sem("hopf.group", e))
        }
    }
}

fn build_hopf(raw: &RawHopf) -> Result<HopfAlgebra, ModelError> {
    let n = raw.dim;
    let lie = if raw.brackets.is_empty() {
        LieAlgebraSpec::abelian(n)
    } else {
        let scratch = HopfAlgebra::enveloping(LieAlgebraSpec::abelian(n));
        let mut entries = Vec::new();
        for (b_idx, b) in raw.brackets.iter().enumerate() {
            let path = format!("hopf.brackets[{}]", b_idx + 1);
            let i = one_based(&path, "d", b.i, n)?;
            let j = one_based(&path, "d", b.j, n)?;
            let v = lit(&path, parse_elem(&scratch, &b.value))?;
            for (m, c) in v.terms() {
                match m.exps.iter().position(|&e| e == 1) {
                    Some(k) if m.degree() == 1 => entries.push((i, j, k, c.clone())),
                    _ => return sem(&path, "a bracket value must be a linear combination of generators"),
                }
            }
        }
        LieAlgebraSpec::new(n, entries).or_else(|e| sem("hopf.brackets", e))?
    };
    let h = match raw.kind.as_str() {
        "enveloping" => {
            if raw.group.is_some() || !raw.action.is_empty() {
                return sem("hopf", "an enveloping algebra takes no group or action");
            }
            HopfAlgebra::enveloping(lie)
        }
        "group" => {
            if n != 0 || !raw.brackets.is_empty() || !raw.action.is_empty() {
                return sem("hopf", "a group algebra takes no generators, brackets or action");
            }
            let g = raw.group.as_ref().map_or_else(|| sem("hopf.group", "missing group"), Ok)?;
            HopfAlgebra::group_algebra(build_group(g)?)
        }
        "smash" => {
            let g = raw.group.as_ref().map_or_else(|| sem("hopf.group", "missing group"), Ok)?;
            let group = build_group(g)?;
            let ident: Vec<Vec<Q>> = (0..n)
                .map(|i| (0..n).map(|j| Q::from_integer(((i == j) as i64).into())).collect())
                .collect();
            let mut action = vec![None; group.order()];
            for (a_idx, a) in raw.action.iter().enumerate() {
                let path = format!("hopf.action[{}]", a_idx + 1);
                let g = group
                    .index_of(&a.element)
                    .map_or_else(|| sem(&path, format!("unknown group element `{}`", a.element)), Ok)?;
                if action[g].is_some() {
                    return sem(&path, format!("duplicate action of `{}`", a.element));
                }
                action[g] = Some(rational_matrix(&format!("{path}.matrix"), &a.matrix, n)?);
            }
            let action = action.into_iter().map(|m| m.unwrap_or_else(|| ident.clone())).collect();
            HopfAlgebra::smash(lie, group, action).or_else(|e| sem("hopf.action", e))?
        }
        other => return sem("hopf.kind", format!("unknown kind `{other}`; expected enveloping, group or smash")),
    };
    Ok(match raw.degree_cap {
        Some(c) => h.with_degree_cap(c),
        None => h,
    })
}

fn parse_flavor(s: &str) -> Result<Flavor, ModelError> {
    match s {
        "associative" => Ok(Flavor::Associative),
        "lie" => Ok(Flavor::Lie),
        "unchecked" => Ok(Flavor::Unchecked),
        other => sem("pseudoalgebra.flavor", format!("unknown flavor `{other}`")),
    }
}

fn flavor_name(f: Flavor) -> &'static str {
    match f {
        Flavor::Associative => "associative",
        Flavor::Lie => "lie",
        Flavor::Unchecked => "unchecked",
    }
}

fn build_algebra(hopf: &Arc<HopfAlgebra>, raw: &RawPseudo) -> Result<Pseudoalgebra, ModelError> {
    let r = raw.rank;
    if r == 0 {
        return sem("pseudoalgebra.rank", "rank must be positive");
    }
    let flavor = parse_flavor(&raw.flavor)?;
    let mut table = Table::zeros(r);
    let mut seen = std::collections::BTreeSet::new();
    for (p_idx, p) in raw.products.iter().enumerate() {
        let path = format!("pseudoalgebra.products[{}]", p_idx + 1);
        let i = one_based(&path, "e", p.i, r)?;
        let j = one_based(&path, "e", p.j, r)?;
        let k = one_based(&path, "e", p.k, r)?;
        if !seen.insert((i, j, k)) {
            return sem(&path, format!("duplicate entry for e{} * e{} at e{}", p.i, p.j, p.k));
        }
        let t = lit(&path, parse_tensor(hopf, 2, &p.value))?;
        table.set(i, j, k, t).or_else(|e| sem(&path, e))?;
    }
    Pseudoalgebra::new(hopf.clone(), table, flavor).or_else(|e| sem("pseudoalgebra", e))
}

fn build_operator(hopf: &HopfAlgebra, rank: Option<usize>, idx: usize, raw: &RawOperator) -> Result<NamedOperator, ModelError> {
    let path = format!("operators[{}]", raw.name);
    if raw.name.is_empty() || raw.name.contains(char::is_whitespace) {
        return sem(format!("operators[{}]", idx + 1), "operator names must be nonempty words");
    }
    let n = raw.matrix.len();
    if n == 0 || raw.matrix.iter().any(|r| r.len() != n) {
        return sem(format!("{path}.matrix"), "matrix must be square and nonempty");
    }
    if let Some(r) = rank {
        if r != n {
            return sem(format!("{path}.matrix"), format!("rank mismatch: the pseudoalgebra has rank {r}, the matrix has {n} rows"));
        }
    }
    let mut rows = Vec::with_capacity(n);
    for (i, row) in raw.matrix.iter().enumerate() {
        let coeffs = row
            .iter()
            .enumerate()
            .map(|(j, s)| lit(&format!("{path}.matrix[{}][{}]", i + 1, j + 1), parse_elem(hopf, s)))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(ModuleElem::from_coeffs(coeffs));
    }
    let op = HLinearOp::from_rows(rows).or_else(|e| sem(format!("{path}.matrix"), e))?;
    let claims = raw
        .claims
        .iter()
        .map(|c| c.parse::<OperatorKind>().or_else(|e| sem(format!("{path}.claims"), e)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NamedOperator { name: raw.name.clone(), op, claims })
}

fn build_dual(hopf: &HopfAlgebra, raw: &RawDual) -> Result<DualSpec, ModelError> {
    let Some(xi_name) = raw.xi.as_deref() else {
        if raw.scale.is_some() || raw.matrix.is_some() {
            return sem("dual.xi", "scale and matrix need an explicit xi");
        }
        return Ok(DualSpec { truncation: raw.truncation, xi: None });
    };
    let xi = match xi_name {
        "integral" => {
            let c = match &raw.scale {
                Some(s) => rational("dual.scale", s)?,
                None => Q::from_integer(1.into()),
            };
            if hopf.left_integral().is_none() {
                return sem("dual.xi", "this Hopf algebra has no nonzero left integral");
            }
            XiSpec::Integral(c)
        }
        "identity" => XiSpec::Identity,
        "zero" => XiSpec::Zero,
        "explicit" => {
            if hopf.n_gens() > 0 {
                return sem("dual.xi", "explicit dual matrices need a group algebra");
            }
            let m = raw.matrix.as_ref().map_or_else(|| sem("dual.matrix", "missing matrix"), Ok)?;
            XiSpec::Explicit(rational_matrix("dual.matrix", m, hopf.group().order())?)
        }
        other => match other.strip_prefix("left:") {
            Some(e) => XiSpec::Left(lit("dual.xi", parse_elem(hopf, e))?),
            None => return sem("dual.xi", format!("unknown ξ `{other}`")),
        },
    };
    if raw.scale.is_some() && !matches!(xi, XiSpec::Integral(_)) {
        return sem("dual.scale", "scale only applies to the integral");
    }
    if raw.matrix.is_some() && !matches!(xi, XiSpec::Explicit(_)) {
        return sem("dual.matrix", "matrix only applies to an explicit ξ");
    }
    Ok(DualSpec { truncation: raw.truncation, xi: Some(xi) })
}

fn build(raw: RawFile) -> Result<Definition, ModelError> {
    let rh = raw.hopf.as_ref().map_or_else(|| sem("hopf", "missing hopf section"), Ok)?;
    let hopf = Arc::new(build_hopf(rh)?);
    let algebra = raw.pseudoalgebra.as_ref().map(|p| build_algebra(&hopf, p)).transpose()?;
    let rank = algebra.as_ref().map(|a| a.rank());
    let mut operators: Vec<NamedOperator> = Vec::new();
    for (idx, o) in raw.operators.iter().enumerate() {
        let op = build_operator(&hopf, rank, idx, o)?;
        if operators.iter().any(|p| p.name == op.name) {
            return sem(format!("operators[{}]", op.name), "duplicate operator name");
        }
        operators.push(op);
    }
    let dual = raw.dual.as_ref().map(|d| build_dual(&hopf, d)).transpose()?;
    let mut tasks = Vec::new();
    for (t_idx, t) in raw.tasks.iter().enumerate() {
        let path = format!("tasks[{}]", t_idx + 1);
        let task: Task = t.parse().or_else(|e| sem(&path, e))?;
        let op_name = match &task {
            Task::Derive { op, .. } | Task::Annihilate { op, .. } | Task::Conformal { op: Some(op) } => Some(op),
            _ => None,
        };
        if let Some(op) = op_name {
            if !operators.iter().any(|o| &o.name == op) {
                return sem(&path, format!("no operator named `{op}`"));
            }
        }
        tasks.push(task);
    }
    Ok(Definition { hopf, algebra, operators, dual, tasks })
}

fn emit_group(g: &GroupSpec) -> RawGroup {
    if *g == GroupSpec::cyclic(g.order()) {
        return RawGroup::Cyclic { cyclic: g.order() };
    }
    RawGroup::Table {
        names: g.names().to_vec(),
        table: g.table().iter().map(|r| r.iter().map(|&x| g.name(x).to_string()).collect()).collect(),
    }
}

fn emit_hopf(h: &HopfAlgebra) -> RawHopf {
    let n = h.n_gens();
    let gens = HopfAlgebra::enveloping(LieAlgebraSpec::abelian(n));
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v: HElem = h
                .lie()
                .bracket(i, j)
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let mut e = vec![0; n];
                    e[k] = 1;
                    (gens.mono(&e, 0), c.clone())
                })
                .collect();
            if !v.is_zero() {
                brackets.push(RawBracket { i: i + 1, j: j + 1, value: gens.fmt_elem(&v) });
            }
        }
    }
    let kind = match h.kind() {
        HopfKind::Enveloping => "enveloping",
        HopfKind::Group => "group",
        HopfKind::Smash => "smash",
    };
    let g = h.group();
    let (group, mut action) = match h.kind() {
        HopfKind::Enveloping => (None, Vec::new()),
        _ => (Some(emit_group(g)), Vec::new()),
    };
    if h.kind() == HopfKind::Smash {
        for a in 0..g.order() {
            let m = h.action_matrix(a);
            let trivial = m.iter().enumerate().all(|(i, r)| {
                r.iter().enumerate().all(|(j, c)| *c == Q::from_integer(((i == j) as i64).into()))
            });
            if !trivial {
                action.push(RawAction {
                    element: g.name(a).to_string(),
                    matrix: m.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
                });
            }
        }
    }
    RawHopf { kind: kind.into(), dim: n, degree_cap: Some(h.degree_cap()), brackets, group, action }
}

/// Writes `def` back as a definition file; `parse_str(&emit(def))` reproduces `def`.
pub fn emit(def: &Definition) -> String {
    let h: &HopfAlgebra = &def.hopf;
    let pseudoalgebra = def.algebra.as_ref().map(|a| {
        let r = a.rank();
        let mut products = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let t = a.table().get(i, j, k);
                    if !t.is_zero() {
                        products.push(RawProduct { i: i + 1, j: j + 1, k: k + 1, value: h.fmt_tensor(t) });
                    }
                }
            }
        }
        RawPseudo { rank: r, flavor: flavor_name(a.flavor()).into(), products }
    });
    let operators = def
        .operators
        .iter()
        .map(|o| RawOperator {
            name: o.name.clone(),
            matrix: o.op.rows().iter().map(|row| row.coeffs().iter().map(|c| h.fmt_elem(c)).collect()).collect(),
            claims: o.claims.iter().map(|c| c.to_string()).collect(),
        })
        .collect();
    let dual = def.dual.as_ref().map(|d| {
        let mut raw = RawDual { truncation: d.truncation, xi: None, scale: None, matrix: None };
        match &d.xi {
            None => {}
            Some(XiSpec::Integral(c)) => {
                raw.xi = Some("integral".into());
                raw.scale = Some(c.to_string());
            }
            Some(XiSpec::Identity) => raw.xi = Some("identity".into()),
            Some(XiSpec::Zero) => raw.xi = Some("zero".into()),
            Some(XiSpec::Left(e)) => raw.xi = Some(format!("left:{}", h.fmt_elem(e))),
            Some(XiSpec::Explicit(m)) => {
                raw.xi = Some("explicit".into());
                raw.matrix = Some(m.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect());
            }
        }
        raw
    });
    let raw = RawFile {
        tasks: def.tasks.iter().map(|t| t.to_string()).collect(),
        hopf: Some(emit_hopf(h)),
        pseudoalgebra,
        operators,
        dual,
    };
    toml::to_string(&raw).expect("definition files always serialize")
}
