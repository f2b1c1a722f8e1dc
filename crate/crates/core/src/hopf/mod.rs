//! Cocommutative Hopf algebras `U(d) # k[G]`: enveloping algebras, group algebras and
//! their smash products, in the divided-power PBW basis.
//!
//! Every algebra is stored as a smash product; the enveloping case has the trivial
//! group and the group case has no generators. Products of PBW monomials are computed
//! by straightening and memoised.

mod elem;
mod group;
mod lie;

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use elem::{HElem, Mono};
pub use group::GroupSpec;
pub use lie::LieAlgebraSpec;

use crate::error::{Error, Result};
use crate::rational::{coef_prefix, factorial, multinomial_merge, q, Q};
use crate::report::Report;
use crate::tensor::TensorElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HopfKind {
    Enveloping,
    Group,
    Smash,
}

type UElem = BTreeMap<Vec<u32>, Q>;

#[derive(Default)]
struct Caches {
    gen: RwLock<HashMap<(usize, Vec<u32>), UElem>>,
    act: RwLock<HashMap<(usize, Vec<u32>), UElem>>,
    mono: RwLock<HashMap<(Mono, Mono), HElem>>,
    antipode: RwLock<HashMap<Mono, HElem>>,
}

pub struct HopfAlgebra {
    kind: HopfKind,
    lie: LieAlgebraSpec,
    group: GroupSpec,
    /// `action[g][i]` holds the coordinates of `g · d_i` in the generators.
    action: Vec<Vec<Vec<Q>>>,
    trivial_action: bool,
    degree_cap: u32,
    caches: Caches,
}

impl Clone for HopfAlgebra {
    fn clone(&self) -> Self {
        HopfAlgebra {
            kind: self.kind,
            lie: self.lie.clone(),
            group: self.group.clone(),
            action: self.action.clone(),
            trivial_action: self.trivial_action,
            degree_cap: self.degree_cap,
            caches: Caches::default(),
        }
    }
}

impl PartialEq for HopfAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.lie == other.lie
            && self.group == other.group
            && self.action == other.action
            && self.degree_cap == other.degree_cap
    }
}

impl std::fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HopfAlgebra")
            .field("kind", &self.kind)
            .field("dim", &self.lie.dim())
            .field("group_order", &self.group.order())
            .finish()
    }
}

fn add_u(acc: &mut UElem, m: Vec<u32>, c: Q) {
    crate::tensor::accumulate(acc, m, c);
}

fn inv_factorial(exps: &[u32]) -> Q {
    let d = exps.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e));
    Q::new(BigInt::one(), d)
}

fn sign(deg: u32) -> Q {
    if deg % 2 == 0 {
        q(1)
    } else {
        q(-1)
    }
}

/// All ways to write `exps` as an ordered sum of `parts` exponent vectors.
pub fn compositions(exps: &[u32], parts: usize) -> Vec<Vec<Vec<u32>>> {
    assert!(parts >= 1);
    if parts == 1 {
        return vec![vec![exps.to_vec()]];
    }
    let mut out = Vec::new();
    let mut first = vec![0u32; exps.len()];
    loop {
        let rest: Vec<u32> = exps.iter().zip(&first).map(|(a, b)| a - b).collect();
        for mut tail in compositions(&rest, parts - 1) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
        // odometer over 0..=exps[i]
        let mut i = 0;
        loop {
            if i == exps.len() {
                return out;
            }
            if first[i] < exps[i] {
                first[i] += 1;
                break;
            }
            first[i] = 0;
            i += 1;
        }
    }
}

pub(crate) fn push_signed(s: &mut String, first: bool, c: &Q, body: &str, body_is_unit: bool) {
    let neg = c.is_negative();
    let a = c.abs();
    if first {
        if neg {
            s.push('-');
        }
    } else {
        s.push_str(if neg { " - " } else { " + " });
    }
    if body_is_unit {
        s.push_str(&a.to_string());
    } else {
        s.push_str(&coef_prefix(&a));
        s.push_str(body);
    }
}

impl HopfAlgebra {
    fn build(lie: LieAlgebraSpec, group: GroupSpec, action: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        let n = lie.dim();
        let kind = match (n, group.order()) {
            (_, 1) => HopfKind::Enveloping,
            (0, _) => HopfKind::Group,
            _ => HopfKind::Smash,
        };
        let id_row = |i: usize| (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect::<Vec<_>>();
        let trivial_action = action.iter().all(|rows| rows.iter().enumerate().all(|(i, r)| *r == id_row(i)));
        let h = HopfAlgebra {
            kind,
            lie,
            group,
            action,
            trivial_action,
            degree_cap: 8,
            caches: Caches::default(),
        };
        h.validate_action()?;
        Ok(h)
    }

    pub fn enveloping(lie: LieAlgebraSpec) -> Self {
        let n = lie.dim();
        let ident = vec![(0..n).map(|i| (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect()];
        Self::build(lie, GroupSpec::trivial(), ident).expect("trivial action is valid")
    }

    pub fn group_algebra(group: GroupSpec) -> Self {
        let action = vec![Vec::new(); group.order()];
        Self::build(LieAlgebraSpec::abelian(0), group, action).expect("empty action is valid")
    }

    /// `action[g][i]` gives the coordinates of `g · d_i`; it must define a group action by
    /// Lie algebra automorphisms of the generator span.
    pub fn smash(lie: LieAlgebraSpec, group: GroupSpec, action: Vec<Vec<Vec<Q>>>) -> Result<Self> {
        if action.len() != group.order()
            || action.iter().any(|rows| rows.len() != lie.dim() || rows.iter().any(|r| r.len() != lie.dim()))
        {
            return Err(Error::InvalidHopf("action matrices have the wrong shape".into()));
        }
        Self::build(lie, group, action)
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self
    }

    fn validate_action(&self) -> Result<()> {
        let n = self.lie.dim();
        let g = &self.group;
        let e = g.identity();
        for (i, row) in self.action[e].iter().enumerate() {
            if row.iter().enumerate().any(|(j, c)| *c != if i == j { q(1) } else { q(0) }) {
                return Err(Error::InvalidHopf("identity must act trivially".into()));
            }
        }
        let apply = |a: usize, v: &[Q]| -> Vec<Q> {
            let mut out = vec![Q::zero(); n];
            for (l, c) in v.iter().enumerate() {
                for (m, d) in self.action[a][l].iter().enumerate() {
                    out[m] += c * d;
                }
            }
            out
        };
        for a in 0..g.order() {
            for b in 0..g.order() {
                for i in 0..n {
                    if apply(a, &self.action[b][i]) != self.action[g.mul(a, b)][i] {
                        return Err(Error::InvalidHopf(format!(
                            "action is not compatible with the product {}*{}",
                            g.name(a),
                            g.name(b)
                        )));
                    }
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    let lhs = apply(a, self.lie.bracket(i, j));
                    let rhs = self.lie.bracket_vec(&self.action[a][i], &self.action[a][j]);
                    if lhs != rhs {
                        return Err(Error::InvalidHopf(format!(
                            "{} does not preserve [d{}, d{}]",
                            g.name(a),
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> HopfKind {
        self.kind
    }

    pub fn lie(&self) -> &LieAlgebraSpec {
        &self.lie
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn n_gens(&self) -> usize {
        self.lie.dim()
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn action_matrix(&self, g: usize) -> &[Vec<Q>] {
        &self.action[g]
    }

    pub fn is_commutative(&self) -> bool {
        self.lie.is_abelian() && self.trivial_action && self.group_is_abelian()
    }

    fn group_is_abelian(&self) -> bool {
        let g = &self.group;
        (0..g.order()).all(|a| (0..g.order()).all(|b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn unit_mono(&self) -> Mono {
        Mono::unit(self.n_gens(), self.group.identity())
    }

    pub fn one(&self) -> HElem {
        HElem::from_mono(self.unit_mono())
    }

    pub fn scalar(&self, c: Q) -> HElem {
        HElem::term(self.unit_mono(), c)
    }

    /// The generator `d_{i+1}`. Panics when `i` is out of range; see [`Self::try_gen`].
    pub fn gen(&self, i: usize) -> HElem {
        self.try_gen(i).expect("generator index in range")
    }

    pub fn try_gen(&self, i: usize) -> Result<HElem> {
        if i >= self.n_gens() {
            return Err(Error::UnknownGenerator(i));
        }
        let mut exps = vec![0; self.n_gens()];
        exps[i] = 1;
        Ok(HElem::from_mono(Mono::new(exps, self.group.identity())))
    }

    pub fn group_elem(&self, g: usize) -> HElem {
        HElem::from_mono(Mono::new(vec![0; self.n_gens()], g))
    }

    pub fn mono(&self, exps: &[u32], g: usize) -> Mono {
        Mono::new(exps.to_vec(), g)
    }

    pub fn check_mono(&self, m: &Mono) -> Result<()> {
        if m.exps.len() != self.n_gens() {
            return Err(Error::ForeignMonomial(format!("{:?}", m.exps)));
        }
        if m.group >= self.group.order() {
            return Err(Error::UnknownGroupElement(m.group));
        }
        Ok(())
    }

    pub fn check_elem(&self, h: &HElem) -> Result<()> {
        h.terms().try_for_each(|(m, _)| self.check_mono(m))
    }

    /// All basis monomials of degree at most `d`, in the monomial order.
    pub fn basis_up_to(&self, d: u32) -> Vec<Mono> {
        let mut out: Vec<Mono> = Vec::new();
        for deg in 0..=d {
            out.extend(self.basis_of_degree(deg));
        }
        out.sort();
        out
    }

    pub fn basis_of_degree(&self, d: u32) -> Vec<Mono> {
        let n = self.n_gens();
        if n == 0 {
            return if d == 0 { (0..self.group.order()).map(|g| Mono::new(Vec::new(), g)).collect() } else { Vec::new() };
        }
        let mut out = Vec::new();
        for exps in compositions(&[d], n).into_iter().map(|parts| parts.into_iter().map(|p| p[0]).collect::<Vec<u32>>()) {
            for g in 0..self.group.order() {
                out.push(Mono::new(exps.clone(), g));
            }
        }
        out.sort();
        out
    }

    // ---- enveloping algebra arithmetic on exponent vectors ----

    /// `d_k · d^(a)` expanded in the PBW basis.
    fn gen_times(&self, k: usize, a: &[u32]) -> UElem {
        if let Some(hit) = self.caches.gen.read().unwrap().get(&(k, a.to_vec())) {
            return hit.clone();
        }
        let mut out = UElem::new();
        match a.iter().position(|&e| e > 0) {
            Some(i) if i < k && !self.lie.is_abelian() => {
                // d^(a) = (1/a_i) d_i d^(a - e_i), and d_k d_i = d_i d_k + [d_k, d_i].
                let mut rest = a.to_vec();
                rest[i] -= 1;
                let inv = Q::new(BigInt::one(), BigInt::from(a[i]));
                for (m, c) in self.gen_times(k, &rest) {
                    for (m2, c2) in self.gen_times(i, &m) {
                        add_u(&mut out, m2, &c * &c2 * &inv);
                    }
                }
                for (l, c) in self.lie.bracket(k, i).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (m2, c2) in self.gen_times(l, &rest) {
                        add_u(&mut out, m2, c * &c2 * &inv);
                    }
                }
            }
            _ => {
                let mut m = a.to_vec();
                m[k] += 1;
                let c = Q::from_integer(BigInt::from(m[k]));
                out.insert(m, c);
            }
        }
        self.caches.gen.write().unwrap().insert((k, a.to_vec()), out.clone());
        out
    }

    fn left_gen(&self, k: usize, x: &UElem) -> UElem {
        let mut out = UElem::new();
        for (m, c) in x {
            for (m2, c2) in self.gen_times(k, m) {
                add_u(&mut out, m2, c * &c2);
            }
        }
        out
    }

    fn u_mul_mono(&self, a: &[u32], b: &[u32]) -> UElem {
        let last_a = a.iter().rposition(|&e| e > 0);
        let first_b = b.iter().position(|&e| e > 0);
        let ordered = match (last_a, first_b) {
            (Some(x), Some(y)) => x <= y,
            _ => true,
        };
        if self.lie.is_abelian() || ordered {
            let m: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            let mut out = UElem::new();
            out.insert(m, Q::from_integer(multinomial_merge(a, b)));
            return out;
        }
        let mut x = UElem::new();
        x.insert(b.to_vec(), q(1));
        for i in (0..a.len()).rev() {
            for _ in 0..a[i] {
                x = self.left_gen(i, &x);
            }
        }
        let s = inv_factorial(a);
        x.into_iter().map(|(m, c)| (m, c * &s)).collect()
    }

    fn u_mul(&self, x: &UElem, y: &UElem) -> UElem {
        let mut out = UElem::new();
        for (a, ca) in x {
            for (b, cb) in y {
                for (m, c) in self.u_mul_mono(a, b) {
                    add_u(&mut out, m, c * ca * cb);
                }
            }
        }
        out
    }

    fn u_antipode(&self, a: &[u32]) -> UElem {
        let deg: u32 = a.iter().sum();
        let mut out = UElem::new();
        if self.lie.is_abelian() {
            out.insert(a.to_vec(), sign(deg));
            return out;
        }
        // reversed word d_N^{a_N} ... d_1^{a_1}
        let mut x = UElem::new();
        x.insert(vec![0; a.len()], q(1));
        for (i, &e) in a.iter().enumerate() {
            for _ in 0..e {
                x = self.left_gen(i, &x);
            }
        }
        let s = inv_factorial(a) * sign(deg);
        x.into_iter().map(|(m, c)| (m, c * &s)).collect()
    }

    /// `g · d^(a)`.
    fn act_mono(&self, g: usize, a: &[u32]) -> UElem {
        let mut out = UElem::new();
        if self.trivial_action || g == self.group.identity() || a.iter().all(|&e| e == 0) {
            out.insert(a.to_vec(), q(1));
            return out;
        }
        if let Some(hit) = self.caches.act.read().unwrap().get(&(g, a.to_vec())) {
            return hit.clone();
        }
        let n = a.len();
        let mut x = UElem::new();
        x.insert(vec![0; n], q(1));
        for (i, &e) in a.iter().enumerate() {
            let mut image = UElem::new();
            for (l, c) in self.action[g][i].iter().enumerate() {
                let mut m = vec![0; n];
                m[l] = 1;
                add_u(&mut image, m, c.clone());
            }
            for _ in 0..e {
                x = self.u_mul(&x, &image);
            }
        }
        let s = inv_factorial(a);
        out = x.into_iter().map(|(m, c)| (m, c * &s)).collect();
        self.caches.act.write().unwrap().insert((g, a.to_vec()), out.clone());
        out
    }

    fn act_u(&self, g: usize, x: &UElem) -> UElem {
        let mut out = UElem::new();
        for (m, c) in x {
            for (m2, c2) in self.act_mono(g, m) {
                add_u(&mut out, m2, c * &c2);
            }
        }
        out
    }

    // ---- Hopf structure ----

    pub fn mul_mono(&self, a: &Mono, b: &Mono) -> HElem {
        let e = self.group.identity();
        if a.group == e && a.exps.iter().all(|&x| x == 0) {
            return HElem::from_mono(b.clone());
        }
        if b.group == e && b.exps.iter().all(|&x| x == 0) {
            return HElem::from_mono(a.clone());
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.caches.mono.read().unwrap().get(&key) {
            return hit.clone();
        }
        let acted = self.act_mono(a.group, &b.exps);
        let g = self.group.mul(a.group, b.group);
        let mut out = HElem::zero();
        for (m, c) in acted {
            for (m2, c2) in self.u_mul_mono(&a.exps, &m) {
                out.add_term(Mono::new(m2, g), &c * &c2);
            }
        }
        self.caches.mono.write().unwrap().insert(key, out.clone());
        out
    }

    pub fn mul(&self, a: &HElem, b: &HElem) -> HElem {
        let mut out = HElem::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let c = ca * cb;
                for (m, d) in self.mul_mono(ma, mb).terms() {
                    out.add_term(m.clone(), &c * d);
                }
            }
        }
        out
    }

    /// Like [`mul`](Self::mul) but rejects monomials foreign to this algebra.
    pub fn checked_mul(&self, a: &HElem, b: &HElem) -> Result<HElem> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        Ok(self.mul(a, b))
    }

    pub fn pow(&self, a: &HElem, n: u32) -> HElem {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// `Δ(d^(I) g) = Σ_{J+K=I} d^(J) g ⊗ d^(K) g`, every coefficient being one.
    pub fn coproduct_mono(&self, m: &Mono) -> Vec<(Mono, Mono)> {
        compositions(&m.exps, 2)
            .into_iter()
            .map(|mut p| {
                let r = p.pop().unwrap();
                let l = p.pop().unwrap();
                (Mono::new(l, m.group), Mono::new(r, m.group))
            })
            .collect()
    }

    /// `Δ^{(n)}`, the `(n-1)`-fold iterated coproduct into `n` factors.
    pub fn iterated_coproduct_mono(&self, m: &Mono, n: usize) -> Vec<Vec<Mono>> {
        compositions(&m.exps, n)
            .into_iter()
            .map(|parts| parts.into_iter().map(|p| Mono::new(p, m.group)).collect())
            .collect()
    }

    pub fn coproduct(&self, h: &HElem) -> TensorElem {
        let mut out = TensorElem::zero(2);
        for (m, c) in h.terms() {
            for (l, r) in self.coproduct_mono(m) {
                out.add_term(vec![l, r], c.clone());
            }
        }
        out
    }

    pub fn iterated_coproduct(&self, h: &HElem, n: usize) -> TensorElem {
        let mut out = TensorElem::zero(n);
        for (m, c) in h.terms() {
            for slots in self.iterated_coproduct_mono(m, n) {
                out.add_term(slots, c.clone());
            }
        }
        out
    }

    pub fn antipode_mono(&self, m: &Mono) -> HElem {
        if let Some(hit) = self.caches.antipode.read().unwrap().get(m) {
            return hit.clone();
        }
        let ginv = self.group.inv(m.group);
        let su = self.u_antipode(&m.exps);
        let acted = if m.group == self.group.identity() { su } else { self.act_u(ginv, &su) };
        let out: HElem = acted.into_iter().map(|(e, c)| (Mono::new(e, ginv), c)).collect();
        self.caches.antipode.write().unwrap().insert(m.clone(), out.clone());
        out
    }

    pub fn antipode(&self, h: &HElem) -> HElem {
        let mut out = HElem::zero();
        for (m, c) in h.terms() {
            out += &self.antipode_mono(m).scale(c);
        }
        out
    }

    pub fn counit(&self, h: &HElem) -> Q {
        h.terms()
            .filter(|(m, _)| m.degree() == 0)
            .fold(Q::zero(), |acc, (_, c)| acc + c)
    }

    pub fn counit_mono(&self, m: &Mono) -> Q {
        if m.degree() == 0 {
            q(1)
        } else {
            Q::zero()
        }
    }

    pub fn degree(&self, h: &HElem) -> i64 {
        h.degree()
    }

    /// A nonzero left integral exists exactly when there are no generators; it is `Σ g`.
    pub fn left_integral(&self) -> Option<HElem> {
        if self.n_gens() > 0 {
            return None;
        }
        Some((0..self.group.order()).map(|g| (Mono::new(Vec::new(), g), q(1))).collect())
    }

    pub fn fmt_mono(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("d{}", i + 1)),
                _ => parts.push(format!("d{}^{}", i + 1, e)),
            }
        }
        if m.group != self.group.identity() {
            parts.push(format!("g:{}", self.group.name(m.group)));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    pub fn fmt_elem(&self, h: &HElem) -> String {
        if h.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        let unit = self.unit_mono();
        for (i, (m, c)) in h.terms().enumerate() {
            push_signed(&mut s, i == 0, c, &self.fmt_mono(m), *m == unit);
        }
        s
    }

    /// Checks the bialgebra and antipode axioms on all basis monomials up to `max_degree`.
    /// Products are checked on pairs and triples whose degrees sum to at most `max_degree`.
    pub fn axiom_report(&self, max_degree: u32) -> Report {
        let basis = self.basis_up_to(max_degree);
        let mut rep = Report::new(format!("Hopf axioms up to degree {max_degree}"));
        let fm = |m: &Mono| self.fmt_mono(m);

        let mut coassoc = Report::new("coassociativity");
        let mut counit = Report::new("counit");
        let mut cocomm = Report::new("cocommutativity");
        let mut anti = Report::new("antipode");
        for m in &basis {
            let h = HElem::from_mono(m.clone());
            let d = self.coproduct(&h);
            let l = self.coproduct_slot(&d, 0).unwrap();
            let r = self.coproduct_slot(&d, 1).unwrap();
            let mut diff = l.clone();
            diff -= &r;
            coassoc.record(fm(m), (!diff.is_zero()).then(|| self.fmt_tensor(&diff)));

            let mut left = HElem::zero();
            let mut right = HElem::zero();
            let mut sl = HElem::zero();
            let mut sr = HElem::zero();
            for (a, b) in self.coproduct_mono(m) {
                left += &HElem::from_mono(b.clone()).scale(&self.counit_mono(&a));
                right += &HElem::from_mono(a.clone()).scale(&self.counit_mono(&b));
                sl += &self.mul(&self.antipode_mono(&a), &HElem::from_mono(b.clone()));
                sr += &self.mul(&HElem::from_mono(a), &self.antipode_mono(&b));
            }
            let bad = left != h || right != h;
            counit.record(fm(m), bad.then(|| format!("{} / {}", self.fmt_elem(&left), self.fmt_elem(&right))));
            let sw = d.permute(&[1, 0]).unwrap();
            cocomm.record(fm(m), (sw != d).then(|| self.fmt_tensor(&sw)));
            let eps = self.scalar(self.counit_mono(m));
            let bad = sl != eps || sr != eps;
            anti.record(fm(m), bad.then(|| format!("{} / {}", self.fmt_elem(&sl), self.fmt_elem(&sr))));
        }

        let mut delta_mult = Report::new("coproduct is multiplicative");
        let mut eps_mult = Report::new("counit is multiplicative");
        let mut unit = Report::new("unit");
        for a in &basis {
            let ha = HElem::from_mono(a.clone());
            let bad = self.mul(&self.one(), &ha) != ha || self.mul(&ha, &self.one()) != ha;
            unit.record(fm(a), bad.then(|| "1 is not a two-sided unit".to_string()));
            for b in &basis {
                if a.degree() + b.degree() > max_degree {
                    continue;
                }
                let hb = HElem::from_mono(b.clone());
                let ab = self.mul(&ha, &hb);
                let lhs = self.coproduct(&ab);
                let rhs = self.tensor_mul(&self.coproduct(&ha), &self.coproduct(&hb)).unwrap();
                let mut diff = lhs;
                diff -= &rhs;
                let case = format!("({}, {})", fm(a), fm(b));
                delta_mult.record(case.clone(), (!diff.is_zero()).then(|| self.fmt_tensor(&diff)));
                let e = self.counit(&ab) - self.counit_mono(a) * self.counit_mono(b);
                eps_mult.record(case, (!e.is_zero()).then(|| e.to_string()));
            }
        }

        let mut assoc = Report::new("associativity");
        for a in &basis {
            for b in &basis {
                if a.degree() + b.degree() > max_degree {
                    continue;
                }
                let ab = self.mul_mono(a, b);
                for c in &basis {
                    if a.degree() + b.degree() + c.degree() > max_degree {
                        continue;
                    }
                    let hc = HElem::from_mono(c.clone());
                    let l = self.mul(&ab, &hc);
                    let r = self.mul(&HElem::from_mono(a.clone()), &self.mul_mono(b, c));
                    let diff = &l - &r;
                    assoc.record(
                        format!("({}, {}, {})", fm(a), fm(b), fm(c)),
                        (!diff.is_zero()).then(|| self.fmt_elem(&diff)),
                    );
                }
            }
        }

        let mut integral = Report::new("left integral");
        match self.left_integral() {
            Some(t) => {
                for m in &basis {
                    let ht = self.mul(&HElem::from_mono(m.clone()), &t);
                    let expect = t.scale(&self.counit_mono(m));
                    integral.record(fm(m), (ht != expect).then(|| self.fmt_elem(&(&ht - &expect))));
                }
            }
            None => integral.note("no nonzero left integral (infinite-dimensional)"),
        }

        for r in [assoc, unit, coassoc, counit, cocomm, delta_mult, eps_mult, anti, integral] {
            rep.push_child(r);
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn affine() -> HopfAlgebra {
        // [d1, d2] = d2
        HopfAlgebra::enveloping(LieAlgebraSpec::new(2, [(0, 1, 1, q(1))]).unwrap())
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(&[2, 1], 2).len(), 6);
        assert_eq!(compositions(&[3], 3).len(), 10);
    }

    #[test]
    fn straightening_basic() {
        let h = affine();
        // d2 d1 = d1 d2 - [d1, d2] = d1 d2 - d2
        let p = h.mul(&h.gen(1), &h.gen(0));
        let mut expect = HElem::from_mono(Mono::new(vec![1, 1], 0));
        expect.add_term(Mono::new(vec![0, 1], 0), q(-1));
        assert_eq!(p, expect);
        // d1 d1 = 2 d^(2)
        let p = h.mul(&h.gen(0), &h.gen(0));
        assert_eq!(p, HElem::term(Mono::new(vec![2, 0], 0), q(2)));
    }

    #[test]
    fn antipode_on_generators_and_words() {
        let h = affine();
        assert_eq!(h.antipode(&h.gen(0)), -h.gen(0));
        // S(d1 d2) = S(d2) S(d1) = d2 d1 = d1 d2 - d2
        let s = h.antipode_mono(&Mono::new(vec![1, 1], 0));
        let mut expect = HElem::from_mono(Mono::new(vec![1, 1], 0));
        expect.add_term(Mono::new(vec![0, 1], 0), q(-1));
        assert_eq!(s, expect);
    }

    #[test]
    fn smash_relation() {
        let lie = LieAlgebraSpec::abelian(1);
        let h = HopfAlgebra::smash(lie, GroupSpec::cyclic(2), vec![vec![vec![q(1)]], vec![vec![q(-1)]]]).unwrap();
        let g = h.group_elem(1);
        // g d = -d g
        let lhs = h.mul(&g, &h.gen(0));
        let rhs = -h.mul(&h.gen(0), &g);
        assert_eq!(lhs, rhs);
        // S(d g) = g^{-1} S(d) = -g d = d g
        let dg = h.mul(&h.gen(0), &g);
        assert_eq!(h.antipode(&dg), dg);
    }

    #[test]
    fn bad_action_rejected() {
        let lie = LieAlgebraSpec::abelian(1);
        // g acting by 2 is not an action of Z/2 since g^2 = e must act by 1.
        let bad = HopfAlgebra::smash(lie, GroupSpec::cyclic(2), vec![vec![vec![q(1)]], vec![vec![q(2)]]]);
        assert!(bad.is_err());
        // On [d1,d2]=d2 the swap does not preserve the bracket.
        let lie = LieAlgebraSpec::new(2, [(0, 1, 1, q(1))]).unwrap();
        let swap = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        let id = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        assert!(HopfAlgebra::smash(lie, GroupSpec::cyclic(2), vec![id, swap]).is_err());
    }

    #[test]
    fn formatting() {
        let h = affine();
        let mut e = h.gen(0).scale(&frac(1, 2));
        e.add_term(h.unit_mono(), q(-3));
        e.add_term(Mono::new(vec![2, 1], 0), q(-1));
        assert_eq!(h.fmt_elem(&e), "-3 + 1/2*d1 - d1^2 d2");
    }

    #[test]
    fn axioms_small() {
        assert!(affine().axiom_report(3).passed());
        assert!(HopfAlgebra::group_algebra(GroupSpec::cyclic(3)).axiom_report(0).passed());
    }
}
