//! Finite-dimensional supercomodules over `K[D_{g,x}]`.
//!
//! A coaction `ρ(m_i) = Σ_j Σ_a C_a[j][i] m_j ⊗ a` is stored as one matrix
//! `C_a` per basis monomial `a ∈ {h, hz}` of `K[D_{g,x}]`; only finitely many
//! are nonzero.

use crate::chargroup::{Character, GroupDescriptor, LieFunctional};
use crate::field::{Elem, Field};
use crate::hopf::{GgxParams, HopfError, Monomial, MonomialHopfSuperalgebra};
use crate::superlin::{in_span, span_basis, Parity, SparseMatrix, SuperSpace};
use serde::Serialize;
use serde_json::{json, Value};
use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DgxError {
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("the base must be diagonalizable")]
    NotDiagonalizable,
    #[error("invalid comodule: {0}")]
    InvalidComodule(String),
    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

fn perr(path: &str, msg: impl Into<String>) -> DgxError {
    DgxError::Parse { path: path.to_string(), msg: msg.into() }
}

/// `K[D_{g,x}]` with a coproduct cache.
#[derive(Debug)]
pub struct Dgx {
    pub algebra: MonomialHopfSuperalgebra,
    cache: RefCell<BTreeMap<Monomial, Vec<(Monomial, Monomial, Elem)>>>,
}

impl Clone for Dgx {
    fn clone(&self) -> Self {
        Dgx { algebra: self.algebra.clone(), cache: RefCell::new(BTreeMap::new()) }
    }
}

impl Dgx {
    pub fn new(field: &Field, group: &GroupDescriptor, g: &Character, x: &LieFunctional) -> Result<Dgx, DgxError> {
        if !group.is_diagonalizable() {
            return Err(DgxError::NotDiagonalizable);
        }
        Ok(Dgx { algebra: MonomialHopfSuperalgebra::ggx(field, group, g, x)?, cache: RefCell::new(BTreeMap::new()) })
    }

    pub fn from_params(p: &GgxParams) -> Result<Dgx, DgxError> {
        match &p.gx {
            Some((g, x)) => Dgx::new(&p.field, &p.group, g, x),
            None => Dgx::new(&p.field, &p.group, &p.group.identity(), &LieFunctional::zero(&p.group, &p.field)),
        }
    }

    pub fn field(&self) -> &Field {
        &self.algebra.field
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.algebra.group
    }

    pub fn g(&self) -> Character {
        self.algebra.odd.as_ref().unwrap().g.clone()
    }

    pub fn x(&self) -> &LieFunctional {
        &self.algebra.odd.as_ref().unwrap().x
    }

    pub fn mono(&self, h: &Character, z: bool) -> Monomial {
        self.algebra.mono(h.clone(), z)
    }

    /// `h ∈ Y` iff `<x, h> = 0`.
    pub fn in_y(&self, h: &Character) -> bool {
        self.x().pair_in(self.field(), h).is_zero()
    }

    fn delta(&self, a: &Monomial) -> Vec<(Monomial, Monomial, Elem)> {
        if let Some(d) = self.cache.borrow().get(a) {
            return d.clone();
        }
        let d: Vec<_> = self
            .algebra
            .delta_monomial(a)
            .terms
            .into_iter()
            .map(|(k, c)| (k[0].clone(), k[1].clone(), c))
            .collect();
        self.cache.borrow_mut().insert(a.clone(), d.clone());
        d
    }

    fn gh(&self, h: &Character) -> Character {
        self.group().mul(&self.g(), h).unwrap()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kind {
    L,
    S,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IndecompLabel {
    pub kind: Kind,
    pub ch: Character,
    pub shifted: bool,
}

impl IndecompLabel {
    pub fn l(ch: Character, shifted: bool) -> Self {
        IndecompLabel { kind: Kind::L, ch, shifted }
    }

    pub fn s(ch: Character, shifted: bool) -> Self {
        IndecompLabel { kind: Kind::S, ch, shifted }
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            Kind::L => 2,
            Kind::S => 1,
        }
    }

    /// `(even, odd)` dimensions.
    pub fn dims(&self) -> (usize, usize) {
        match (self.kind, self.shifted) {
            (Kind::S, false) => (1, 0),
            (Kind::S, true) => (0, 1),
            _ => (1, 1),
        }
    }

    pub fn shift(&self) -> Self {
        IndecompLabel { shifted: !self.shifted, ..self.clone() }
    }

    pub fn is_simple(&self, a: &Dgx) -> bool {
        self.kind == Kind::S || !a.in_y(&self.ch)
    }

    /// For `h ∉ Y` (so `x ≠ 0` and `g^2 = 1`) the map `h ↦ <x,h> ghz`,
    /// `hz ↦ gh` is an isomorphism `L(h) ≅ ΠL(gh)`; the label with the
    /// smaller `(character, shifted)` represents the class.
    pub fn canonical(&self, a: &Dgx) -> Self {
        if self.kind == Kind::L && !a.in_y(&self.ch) {
            let other = IndecompLabel::l(a.gh(&self.ch), !self.shifted);
            return self.clone().min(other);
        }
        self.clone()
    }

    pub fn parse(s: &str, group: &GroupDescriptor) -> Result<Self, DgxError> {
        let (shifted, rest) = match s.strip_prefix("Pi") {
            Some(r) => (true, r),
            None => (false, s),
        };
        let kind = match rest.chars().next() {
            Some('L') => Kind::L,
            Some('S') => Kind::S,
            _ => return Err(DgxError::InvalidLabel(s.to_string())),
        };
        let inner = rest[1..].strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(|| DgxError::InvalidLabel(s.to_string()))?;
        let v: Value = serde_json::from_str(inner).map_err(|_| DgxError::InvalidLabel(s.to_string()))?;
        let ch = group.parse_character(&v).map_err(|e| DgxError::InvalidLabel(e.to_string()))?;
        Ok(IndecompLabel { kind, ch, shifted })
    }
}

impl fmt::Display for IndecompLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::L => "L",
            Kind::S => "S",
        };
        write!(f, "{}{}({})", if self.shifted { "Pi" } else { "" }, k, self.ch)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Supercomodule {
    pub space: SuperSpace,
    pub coaction: BTreeMap<Monomial, SparseMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum ComoduleCheck {
    Accept,
    Reject { identity: String, witness: String },
}

impl ComoduleCheck {
    pub fn accepted(&self) -> bool {
        matches!(self, ComoduleCheck::Accept)
    }
}

fn mat_mul(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    a.mul(b).expect("dimension mismatch")
}

impl Supercomodule {
    pub fn zero() -> Self {
        Supercomodule { space: SuperSpace::new(vec![]), coaction: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn parity(&self, i: usize) -> Parity {
        self.space.parities[i]
    }

    fn add_entry(&mut self, f: &Field, a: Monomial, row: usize, col: usize, c: &Elem) {
        let n = self.dim();
        let m = self.coaction.entry(a).or_insert_with(|| SparseMatrix::zeros(f, n, n));
        m.add_at(row, col, c);
    }

    fn prune(mut self) -> Self {
        self.coaction.retain(|_, m| !m.is_zero());
        self
    }

    pub fn get(&self, a: &Monomial, f: &Field) -> SparseMatrix {
        self.coaction.get(a).cloned().unwrap_or_else(|| SparseMatrix::zeros(f, self.dim(), self.dim()))
    }

    /// `L(h)`, `S(h)` and their shifts, read off from `Δ(h)` and `Δ(hz)`.
    pub fn standard(a: &Dgx, label: &IndecompLabel) -> Result<Self, DgxError> {
        a.group().check(&label.ch).map_err(|e| DgxError::InvalidLabel(e.to_string()))?;
        let f = a.field();
        let h = &label.ch;
        let par = |odd: bool| Parity::from_bit(odd ^ label.shifted);
        match label.kind {
            Kind::S => {
                if !a.in_y(h) {
                    return Err(DgxError::InvalidLabel(format!("S({h}) requires h in Y")));
                }
                let mut m = Supercomodule { space: SuperSpace::new(vec![par(false)]), coaction: BTreeMap::new() };
                m.add_entry(f, a.mono(h, false), 0, 0, &f.one());
                Ok(m)
            }
            Kind::L => {
                // basis h, hz of the right coideal Kh + Khz
                let basis = [a.mono(h, false), a.mono(h, true)];
                let mut m = Supercomodule { space: SuperSpace::new(vec![par(false), par(true)]), coaction: BTreeMap::new() };
                for (i, b) in basis.iter().enumerate() {
                    for (left, right, c) in a.delta(b) {
                        let j = basis.iter().position(|x| *x == left).ok_or_else(|| {
                            DgxError::InvalidComodule(format!("Δ({b}) leaves Kh + Khz"))
                        })?;
                        m.add_entry(f, right, j, i, &c);
                    }
                }
                Ok(m.prune())
            }
        }
    }

    pub fn direct_sum(&self, o: &Supercomodule, f: &Field) -> Supercomodule {
        let n = self.dim();
        let mut out = Supercomodule { space: self.space.direct_sum(&o.space), coaction: BTreeMap::new() };
        for (a, m) in &self.coaction {
            for (i, j, c) in m.nonzeros() {
                out.add_entry(f, a.clone(), i, j, c);
            }
        }
        for (a, m) in &o.coaction {
            for (i, j, c) in m.nonzeros() {
                out.add_entry(f, a.clone(), n + i, n + j, c);
            }
        }
        out
    }

    pub fn direct_sum_of(a: &Dgx, labels: &[IndecompLabel]) -> Result<Supercomodule, DgxError> {
        let mut out = Supercomodule::zero();
        for l in labels {
            out = out.direct_sum(&Supercomodule::standard(a, l)?, a.field());
        }
        Ok(out)
    }

    pub fn shift(&self) -> Supercomodule {
        Supercomodule { space: self.space.shift(), coaction: self.coaction.clone() }
    }

    /// The same comodule in the basis given by the columns of `p`
    /// (homogeneous columns; parities taken from them).
    pub fn change_basis(&self, p: &SparseMatrix) -> Option<Supercomodule> {
        let pinv = p.inverse()?;
        let parities = (0..p.ncols())
            .map(|j| {
                let col = p.column(j);
                let idx = col.iter().position(|e| !e.is_zero()).unwrap();
                self.parity(idx)
            })
            .collect();
        let coaction = self.coaction.iter().map(|(a, m)| (a.clone(), mat_mul(&pinv, &mat_mul(m, p)))).collect();
        Some(Supercomodule { space: SuperSpace::new(parities), coaction }.prune())
    }

    /// Tensor product with `ρ(m ⊗ n) = Σ (-1)^{|m_(1)||n_(0)|} m_(0) ⊗ n_(0) ⊗ m_(1) n_(1)`.
    pub fn tensor(&self, o: &Supercomodule, a: &Dgx) -> Supercomodule {
        let f = a.field();
        let (n1, n2) = (self.dim(), o.dim());
        let mut ps = Vec::new();
        for i in 0..n1 {
            for j in 0..n2 {
                ps.push(self.parity(i).add(o.parity(j)));
            }
        }
        let mut out = Supercomodule { space: SuperSpace::new(ps), coaction: BTreeMap::new() };
        for (ma, cm) in &self.coaction {
            for (mb, cn) in &o.coaction {
                let Some(prod) = a.algebra.mul_monomials(ma, mb) else { continue };
                for (k, i, c1) in cm.nonzeros() {
                    for (l, j, c2) in cn.nonzeros() {
                        let c = c1 * c2;
                        let c = if ma.z && o.parity(l).is_odd() { -c } else { c };
                        out.add_entry(f, prod.clone(), k * n2 + l, i * n2 + j, &c);
                    }
                }
            }
        }
        out.prune()
    }

    /// Check parity, counit and coassociativity.
    pub fn validate(&self, a: &Dgx) -> ComoduleCheck {
        let f = a.field();
        let n = self.dim();
        for (m, c) in &self.coaction {
            if c.nrows() != n || c.ncols() != n {
                return ComoduleCheck::Reject { identity: "shape".into(), witness: m.to_string() };
            }
            a.group().check(&m.ch).ok();
            for (i, j, _) in c.nonzeros() {
                if (self.parity(i) != self.parity(j)) != m.z {
                    return ComoduleCheck::Reject {
                        identity: "parity".into(),
                        witness: format!("coefficient of m{i} ⊗ {m} in ρ(m{j}) breaks parity"),
                    };
                }
            }
        }
        let mut counit = SparseMatrix::zeros(f, n, n);
        for (m, c) in &self.coaction {
            let e = a.algebra.counit_monomial(m);
            if !e.is_zero() {
                counit = counit.add(&c.scale(&e));
            }
        }
        if counit != SparseMatrix::identity(f, n) {
            let w = (0..n).find(|&i| counit.column(i) != SparseMatrix::identity(f, n).column(i)).unwrap();
            return ComoduleCheck::Reject { identity: "counit".into(), witness: format!("(id ⊗ ε)ρ(m{w}) != m{w}") };
        }
        // (ρ ⊗ id)ρ = (id ⊗ Δ)ρ, coefficientwise in a ⊗ b: C_a C_b = Σ_c Δ_c^{a,b} C_c
        let mut rhs: BTreeMap<(Monomial, Monomial), SparseMatrix> = BTreeMap::new();
        for (c, m) in &self.coaction {
            for (l, r, k) in a.delta(c) {
                let e = rhs.entry((l, r)).or_insert_with(|| SparseMatrix::zeros(f, n, n));
                *e = e.add(&m.scale(&k));
            }
        }
        let mut keys: BTreeSet<(Monomial, Monomial)> = rhs.keys().cloned().collect();
        for l in self.coaction.keys() {
            for r in self.coaction.keys() {
                keys.insert((l.clone(), r.clone()));
            }
        }
        for (l, r) in keys {
            let lhs = mat_mul(&self.get(&l, f), &self.get(&r, f));
            let want = rhs.get(&(l.clone(), r.clone())).cloned().unwrap_or_else(|| SparseMatrix::zeros(f, n, n));
            if lhs != want {
                return ComoduleCheck::Reject {
                    identity: "coassociativity".into(),
                    witness: format!("coefficient of {l} ⊗ {r}"),
                };
            }
        }
        ComoduleCheck::Accept
    }

    /// Restriction to the subcomodule spanned by homogeneous columns of `basis`.
    pub fn restrict(&self, f: &Field, basis: &[Vec<Elem>]) -> Option<Supercomodule> {
        let n = self.dim();
        let b = SparseMatrix::from_columns(f, n, basis);
        let parities = basis
            .iter()
            .map(|v| {
                let idx = v.iter().position(|e| !e.is_zero()).unwrap();
                self.parity(idx)
            })
            .collect();
        let mut coaction = BTreeMap::new();
        for (a, m) in &self.coaction {
            let mb = mat_mul(m, &b);
            let mut out = SparseMatrix::zeros(f, basis.len(), basis.len());
            for j in 0..basis.len() {
                let sol = b.solve(&mb.column(j)).ok()?;
                for (i, c) in sol.into_iter().enumerate() {
                    out.set(i, j, c);
                }
            }
            coaction.insert(a.clone(), out);
        }
        Some(Supercomodule { space: SuperSpace::new(parities), coaction }.prune())
    }

    pub fn to_json(&self, a: &Dgx) -> Value {
        // evens first
        let order: Vec<usize> = (0..self.dim())
            .filter(|i| !self.parity(*i).is_odd())
            .chain((0..self.dim()).filter(|i| self.parity(*i).is_odd()))
            .collect();
        let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(k, i)| (*i, k)).collect();
        let mut co = Vec::new();
        for (k, i) in order.iter().enumerate() {
            let mut terms = Vec::new();
            for (m, c) in &self.coaction {
                for (j, e) in c.column(*i).iter().enumerate() {
                    if !e.is_zero() {
                        terms.push(json!([pos[&j], e.to_string(), m.ch, u8::from(m.z)]));
                    }
                }
            }
            co.push(json!([k, terms]));
        }
        json!({
            "schema_version": 1,
            "algebra": algebra_json(a),
            "dims": {"even": self.space.even_dim(), "odd": self.space.odd_dim()},
            "coaction": co,
        })
    }

    /// Parse `{"dims": {"even", "odd"}, "coaction": [[i, [[j, "c", [h], eps], ...]], ...]}`;
    /// basis vectors `0..even` are even.
    pub fn from_json(v: &Value, a: &Dgx) -> Result<Supercomodule, DgxError> {
        let dims = v.get("dims").ok_or_else(|| perr("$.dims", "missing"))?;
        let get = |k: &str| dims.get(k).and_then(|x| x.as_u64()).map(|x| x as usize).ok_or_else(|| perr(&format!("$.dims.{k}"), "expected a count"));
        let (e, o) = (get("even")?, get("odd")?);
        let n = e + o;
        let f = a.field();
        let ps = (0..n).map(|i| Parity::from_bit(i >= e)).collect();
        let mut m = Supercomodule { space: SuperSpace::new(ps), coaction: BTreeMap::new() };
        let arr = v.get("coaction").and_then(|x| x.as_array()).ok_or_else(|| perr("$.coaction", "expected an array"))?;
        for (k, entry) in arr.iter().enumerate() {
            let path = format!("$.coaction[{k}]");
            let pair = entry.as_array().filter(|p| p.len() == 2).ok_or_else(|| perr(&path, "expected [index, terms]"))?;
            let i = pair[0].as_u64().map(|x| x as usize).filter(|x| *x < n).ok_or_else(|| perr(&format!("{path}[0]"), "bad index"))?;
            let terms = pair[1].as_array().ok_or_else(|| perr(&format!("{path}[1]"), "expected an array"))?;
            for (t, term) in terms.iter().enumerate() {
                let tp = format!("{path}[1][{t}]");
                let q = term.as_array().filter(|q| q.len() == 4).ok_or_else(|| perr(&tp, "expected [target, coeff, character, eps]"))?;
                let j = q[0].as_u64().map(|x| x as usize).filter(|x| *x < n).ok_or_else(|| perr(&format!("{tp}[0]"), "bad index"))?;
                let cs = match &q[1] {
                    Value::String(s) => s.clone(),
                    Value::Number(x) => x.to_string(),
                    _ => return Err(perr(&format!("{tp}[1]"), "expected a coefficient")),
                };
                let c = f.parse(&cs).map_err(|e| perr(&format!("{tp}[1]"), e.to_string()))?;
                let h = a.group().parse_character(&q[2]).map_err(|e| perr(&format!("{tp}[2]"), e.to_string()))?;
                let eps = match q[3].as_u64() {
                    Some(0) => false,
                    Some(1) => true,
                    _ => return Err(perr(&format!("{tp}[3]"), "expected 0 or 1")),
                };
                m.add_entry(f, a.mono(&h, eps), j, i, &c);
            }
        }
        Ok(m.prune())
    }
}

pub fn algebra_json(a: &Dgx) -> Value {
    json!({
        "field": a.field().descriptor(),
        "group": a.group(),
        "g": a.g(),
        "x": a.x().to_json(),
    })
}

/// Whether the even map `f: X → M` (columns indexed by the basis of `X`) is a comodule map.
pub fn is_morphism(a: &Dgx, x: &Supercomodule, m: &Supercomodule, map: &SparseMatrix) -> bool {
    let f = a.field();
    for (i, j, _) in map.nonzeros() {
        if m.parity(i) != x.parity(j) {
            return false;
        }
    }
    let keys: BTreeSet<&Monomial> = x.coaction.keys().chain(m.coaction.keys()).collect();
    keys.into_iter().all(|k| mat_mul(&m.get(k, f), map) == mat_mul(map, &x.get(k, f)))
}

/// Basis of the even comodule maps `X → M`, as `dim M × dim X` matrices.
pub fn hom(a: &Dgx, x: &Supercomodule, m: &Supercomodule) -> Vec<SparseMatrix> {
    let f = a.field();
    let (nx, nm) = (x.dim(), m.dim());
    let mut vars = Vec::new();
    let mut var_of = BTreeMap::new();
    for i in 0..nm {
        for j in 0..nx {
            if m.parity(i) == x.parity(j) {
                var_of.insert((i, j), vars.len());
                vars.push((i, j));
            }
        }
    }
    let keys: BTreeSet<&Monomial> = x.coaction.keys().chain(m.coaction.keys()).collect();
    let mut rows: Vec<BTreeMap<usize, Elem>> = Vec::new();
    for k in keys {
        let cm = m.get(k, f);
        let cx = x.get(k, f);
        // (C^M F - F C^X)[i][j]
        for i in 0..nm {
            for j in 0..nx {
                let mut row: BTreeMap<usize, Elem> = BTreeMap::new();
                for (l, c) in cm.row(i) {
                    if let Some(v) = var_of.get(&(*l, j)) {
                        let e = row.entry(*v).or_insert_with(|| f.zero());
                        *e = &*e + c;
                    }
                }
                for l in 0..nx {
                    let c = cx.get(l, j);
                    if !c.is_zero() {
                        if let Some(v) = var_of.get(&(i, l)) {
                            let e = row.entry(*v).or_insert_with(|| f.zero());
                            *e = &*e - &c;
                        }
                    }
                }
                row.retain(|_, c| !c.is_zero());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let mut sys = SparseMatrix::zeros(f, rows.len(), vars.len());
    for (r, row) in rows.into_iter().enumerate() {
        for (v, c) in row {
            sys.set(r, v, c);
        }
    }
    sys.kernel()
        .into_iter()
        .map(|k| {
            let mut fm = SparseMatrix::zeros(f, nm, nx);
            for (v, c) in k.into_iter().enumerate() {
                let (i, j) = vars[v];
                fm.set(i, j, c);
            }
            fm
        })
        .collect()
}

/// A comodule map `π: M → X` with `π ∘ ι = id`, if one exists.
pub fn find_retraction(a: &Dgx, x: &Supercomodule, m: &Supercomodule, iota: &SparseMatrix) -> Option<SparseMatrix> {
    let f = a.field();
    let basis = hom(a, m, x);
    let nx = x.dim();
    // Σ λ_k P_k ι = I
    let prods: Vec<SparseMatrix> = basis.iter().map(|p| mat_mul(p, iota)).collect();
    let mut sys = SparseMatrix::zeros(f, nx * nx, basis.len());
    let mut rhs = vec![f.zero(); nx * nx];
    for i in 0..nx {
        for j in 0..nx {
            for (k, p) in prods.iter().enumerate() {
                sys.set(i * nx + j, k, p.get(i, j));
            }
            if i == j {
                rhs[i * nx + j] = f.one();
            }
        }
    }
    let lam = sys.solve(&rhs).ok()?;
    let mut out = SparseMatrix::zeros(f, nx, m.dim());
    for (k, p) in basis.iter().enumerate() {
        out = out.add(&p.scale(&lam[k]));
    }
    Some(out)
}

/// Characters `h` for which `L(h)` or `S(h)` can map nontrivially into `m`.
fn relevant_characters(a: &Dgx, m: &Supercomodule) -> BTreeSet<Character> {
    let ginv = a.group().inverse(&a.g()).unwrap();
    let mut out = BTreeSet::new();
    for k in m.coaction.keys() {
        out.insert(k.ch.clone());
        out.insert(a.group().mul(&ginv, &k.ch).unwrap());
    }
    out
}

fn simple_labels(a: &Dgx, chars: &BTreeSet<Character>) -> Vec<IndecompLabel> {
    let mut out = BTreeSet::new();
    for h in chars {
        for s in [false, true] {
            if a.in_y(h) {
                out.insert(IndecompLabel::s(h.clone(), s));
            } else {
                out.insert(IndecompLabel::l(h.clone(), s).canonical(a));
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug)]
pub struct Socle {
    /// Basis of the socle, in the coordinates of `M`.
    pub basis: Vec<Vec<Elem>>,
    pub labels: Vec<IndecompLabel>,
    pub module: Supercomodule,
}

fn columns(m: &SparseMatrix) -> Vec<Vec<Elem>> {
    (0..m.ncols()).map(|j| m.column(j)).collect()
}

/// Select maps `X → M` whose images (of the columns in `cols`) are independent of `acc`.
fn independent_images(f: &Field, n: usize, maps: &[SparseMatrix], acc: &mut Vec<Vec<Elem>>, test_cols: &[usize]) -> Vec<SparseMatrix> {
    let mut chosen = Vec::new();
    for p in maps {
        let cols = columns(p);
        let mut trial = acc.clone();
        let mut ok = true;
        for c in test_cols {
            if in_span(f, n, &trial, &cols[*c]) {
                ok = false;
                break;
            }
            trial.push(cols[*c].clone());
        }
        if ok {
            *acc = trial;
            chosen.push(p.clone());
        }
    }
    chosen
}

/// Sum of all simple subcomodules. Simples have dimension at most 2, so
/// the socle is the span of the images of `S(h)`, `ΠS(h)` and the simple `L(h)`.
pub fn socle(a: &Dgx, m: &Supercomodule) -> Result<Socle, DgxError> {
    let f = a.field();
    let n = m.dim();
    let mut acc = Vec::new();
    let mut labels = Vec::new();
    for l in simple_labels(a, &relevant_characters(a, m)) {
        let x = Supercomodule::standard(a, &l)?;
        let maps = hom(a, &x, m);
        let test: Vec<usize> = (0..x.dim()).collect();
        for _ in independent_images(f, n, &maps, &mut acc, &test) {
            labels.push(l.clone());
        }
    }
    let module = m.restrict(f, &acc).ok_or_else(|| DgxError::Decomposition("socle is not a subcomodule".into()))?;
    Ok(Socle { basis: acc, labels, module })
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub labels: Vec<IndecompLabel>,
    /// Columns: images in `M` of the standard bases of the summands, in label order.
    pub iso: SparseMatrix,
    pub verified: bool,
}

impl Decomposition {
    pub fn label_strings(&self) -> Vec<String> {
        self.labels.iter().map(|l| l.to_string()).collect()
    }
}

/// Split off injective hulls of the socle constituents, then the semisimple rest.
pub fn decompose(a: &Dgx, m: &Supercomodule) -> Result<Decomposition, DgxError> {
    if let ComoduleCheck::Reject { identity, witness } = m.validate(a) {
        return Err(DgxError::InvalidComodule(format!("{identity}: {witness}")));
    }
    let f = a.field();
    let n = m.dim();
    let chars = relevant_characters(a, m);
    let mut acc: Vec<Vec<Elem>> = Vec::new();
    let mut parts: Vec<(IndecompLabel, Vec<Vec<Elem>>)> = Vec::new();
    let mut seen = BTreeSet::new();
    for h in &chars {
        for s in [false, true] {
            let l = IndecompLabel::l(h.clone(), s).canonical(a);
            if !seen.insert(l.clone()) {
                continue;
            }
            let x = Supercomodule::standard(a, &l)?;
            let maps = hom(a, &x, m);
            // L(h), h ∈ Y: an embedding is detected on the socle vector h
            let test: Vec<usize> = if a.in_y(&l.ch) { vec![0] } else { vec![0, 1] };
            let mut socle_acc: Vec<Vec<Elem>> = acc.clone();
            for p in independent_images(f, n, &maps, &mut socle_acc, &test) {
                let cols = columns(&p);
                acc.extend(cols.iter().cloned());
                parts.push((l.clone(), cols));
            }
        }
    }
    if span_basis(f, n, &acc).len() != acc.len() {
        return Err(DgxError::Decomposition("injective summands are not independent".into()));
    }
    // complement: kernel of a retraction onto the injective part
    let inj_labels: Vec<IndecompLabel> = parts.iter().map(|(l, _)| l.clone()).collect();
    let e = Supercomodule::direct_sum_of(a, &inj_labels)?;
    let iota = SparseMatrix::from_columns(f, n, &acc);
    let mut rest: Vec<Vec<Elem>> = Vec::new();
    if !acc.is_empty() {
        let pi = find_retraction(a, &e, m, &iota)
            .ok_or_else(|| DgxError::Decomposition("no retraction onto the injective part".into()))?;
        for par in [false, true] {
            let idx: Vec<usize> = (0..n).filter(|i| m.parity(*i).is_odd() == par).collect();
            let cols: Vec<Vec<Elem>> = idx.iter().map(|i| pi.column(*i)).collect();
            let sub = SparseMatrix::from_columns(f, e.dim(), &cols);
            for k in sub.kernel() {
                let mut v = vec![f.zero(); n];
                for (t, i) in idx.iter().enumerate() {
                    v[*i] = k[t].clone();
                }
                rest.push(v);
            }
        }
    } else {
        rest = (0..n).map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect();
    }
    if !rest.is_empty() {
        let c = m.restrict(f, &rest).ok_or_else(|| DgxError::Decomposition("complement is not a subcomodule".into()))?;
        let mut cacc = Vec::new();
        for h in &chars {
            if !a.in_y(h) {
                continue;
            }
            for s in [false, true] {
                let l = IndecompLabel::s(h.clone(), s);
                let x = Supercomodule::standard(a, &l)?;
                for p in independent_images(f, c.dim(), &hom(a, &x, &c), &mut cacc, &[0]) {
                    let coords = p.column(0);
                    let mut v = vec![f.zero(); n];
                    for (t, cf) in coords.iter().enumerate() {
                        for (i, r) in rest[t].iter().enumerate() {
                            v[i] = &v[i] + &(cf * r);
                        }
                    }
                    parts.push((l.clone(), vec![v]));
                }
            }
        }
        if cacc.len() != c.dim() {
            return Err(DgxError::Decomposition("complement of the injective part is not semisimple".into()));
        }
    }
    parts.sort_by(|x, y| x.0.cmp(&y.0));
    let labels: Vec<IndecompLabel> = parts.iter().map(|(l, _)| l.clone()).collect();
    let cols: Vec<Vec<Elem>> = parts.into_iter().flat_map(|(_, c)| c).collect();
    let iso = SparseMatrix::from_columns(f, n, &cols);
    let std = Supercomodule::direct_sum_of(a, &labels)?;
    let verified = iso.inverse().is_some() && is_morphism(a, &std, m, &iso);
    if !verified {
        return Err(DgxError::Decomposition("assembled map is not an isomorphism".into()));
    }
    Ok(Decomposition { labels, iso, verified })
}

#[derive(Clone, Debug)]
pub struct Ext1 {
    pub dim: usize,
    /// A non-split extension `0 → T → E → S → 0` with `T` first in the basis.
    pub representative: Option<(IndecompLabel, Supercomodule)>,
}

/// `Ext^1(S, T)` between simples: one-dimensional exactly for
/// `(ΠS(gh), S(h))` and `(S(gh), ΠS(h))`, with `h ∈ Y`, realized by `L(h)`
/// and `ΠL(h)`.
pub fn ext1(a: &Dgx, s: &IndecompLabel, t: &IndecompLabel) -> Result<Ext1, DgxError> {
    for l in [s, t] {
        if !l.is_simple(a) {
            return Err(DgxError::InvalidLabel(format!("{l} is not simple")));
        }
        Supercomodule::standard(a, l)?;
    }
    if s.kind == Kind::L || t.kind == Kind::L {
        return Ok(Ext1 { dim: 0, representative: None });
    }
    if s.ch == a.gh(&t.ch) && s.shifted != t.shifted {
        let l = IndecompLabel::l(t.ch.clone(), t.shifted);
        let e = Supercomodule::standard(a, &l)?;
        return Ok(Ext1 { dim: 1, representative: Some((l, e)) });
    }
    Ok(Ext1 { dim: 0, representative: None })
}

#[derive(Clone, Debug, Serialize)]
pub struct DualPairing {
    pub h: Character,
    /// Gram matrix rows: `h^-1`, `h^-1 z` of `ΠL(h^-1)`; columns: `g^-1 h`, `g^-1 h z` of `L(g^-1 h)`.
    pub gram: Vec<Vec<String>>,
    pub even: bool,
    pub morphism: bool,
    pub nondegenerate: bool,
}

impl DualPairing {
    pub fn verified(&self) -> bool {
        self.even && self.morphism && self.nondegenerate
    }
}

/// Check a bilinear form `ΠL(h^-1) ⊗ L(g^-1 h) → K` (Gram matrix `gram`).
pub fn check_pairing(a: &Dgx, h: &Character, gram: [[Elem; 2]; 2]) -> Result<DualPairing, DgxError> {
    let f = a.field();
    let grp = a.group();
    let hinv = grp.inverse(h).unwrap();
    let k = grp.mul(&grp.inverse(&a.g()).unwrap(), h).unwrap();
    let p = Supercomodule::standard(a, &IndecompLabel::l(hinv, true))?;
    let q = Supercomodule::standard(a, &IndecompLabel::l(k, false))?;
    let pq = p.tensor(&q, a);
    let one = Supercomodule::standard(a, &IndecompLabel::s(grp.identity(), false))?;
    let mut form = SparseMatrix::zeros(f, 1, 4);
    for i in 0..2 {
        for j in 0..2 {
            form.set(0, i * 2 + j, gram[i][j].clone());
        }
    }
    let even = (0..4).all(|c| form.get(0, c).is_zero() || !pq.parity(c).is_odd());
    let morphism = even && is_morphism(a, &pq, &one, &form);
    let g = SparseMatrix::from_rows(f, 2, &[gram[0].to_vec(), gram[1].to_vec()]);
    Ok(DualPairing {
        h: h.clone(),
        gram: gram.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect(),
        even,
        morphism,
        nondegenerate: g.rank() == 2,
    })
}

/// The pairing `<h^-1, g^-1 h z> = <h^-1 z, g^-1 h> = 1`.
pub fn dual_pairing(a: &Dgx, h: &Character) -> Result<DualPairing, DgxError> {
    let (o, z) = (a.field().one(), a.field().zero());
    check_pairing(a, h, [[z.clone(), o.clone()], [o, z]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dgx(field: &Field, group: &GroupDescriptor, g: &[i64], x: &[i64]) -> Dgx {
        let x = LieFunctional::from_ints(group, field, &x[..group.free_rank], &x[group.free_rank..], &[]).unwrap();
        Dgx::new(field, group, &Character(g.to_vec()), &x).unwrap()
    }

    #[test]
    fn standard_objects_are_valid() {
        let q = Field::rationals();
        let gm = GroupDescriptor::gm();
        let a = dgx(&q, &gm, &[0], &[1]);
        for h in -2..=2 {
            for s in [false, true] {
                let l = Supercomodule::standard(&a, &IndecompLabel::l(Character(vec![h]), s)).unwrap();
                assert!(l.validate(&a).accepted(), "L({h})");
            }
        }
        assert!(Supercomodule::standard(&a, &IndecompLabel::s(Character(vec![0]), false)).unwrap().validate(&a).accepted());
        assert!(matches!(Supercomodule::standard(&a, &IndecompLabel::s(Character(vec![1]), false)), Err(DgxError::InvalidLabel(_))));
    }

    #[test]
    fn dropped_z_term_is_rejected() {
        let q = Field::rationals();
        let gm = GroupDescriptor::gm();
        let a = dgx(&q, &gm, &[0], &[1]);
        let mut l = Supercomodule::standard(&a, &IndecompLabel::l(Character(vec![1]), false)).unwrap();
        l.coaction.remove(&a.mono(&Character(vec![1]), true));
        assert!(!l.validate(&a).accepted());
        let sum = Supercomodule::standard(&a, &IndecompLabel::l(Character(vec![2]), false))
            .unwrap()
            .direct_sum(&Supercomodule::standard(&a, &IndecompLabel::s(Character(vec![0]), true)).unwrap(), &q);
        assert!(sum.validate(&a).accepted());
    }

    #[test]
    fn socles() {
        let q = Field::rationals();
        let gm = GroupDescriptor::gm();
        let a = dgx(&q, &gm, &[0], &[1]);
        let l0 = Supercomodule::standard(&a, &IndecompLabel::l(Character(vec![0]), false)).unwrap();
        let s = socle(&a, &l0).unwrap();
        assert_eq!(s.labels, vec![IndecompLabel::s(Character(vec![0]), false)]);
        let l1 = Supercomodule::standard(&a, &IndecompLabel::l(Character(vec![1]), false)).unwrap();
        assert_eq!(socle(&a, &l1).unwrap().basis.len(), 2);
    }

    #[test]
    fn l_h_is_isomorphic_to_shifted_l_gh_off_y() {
        let q = Field::rationals();
        let gm = GroupDescriptor::gm();
        let a = dgx(&q, &gm, &[0], &[1]);
        let l = Supercomodule::standard(&a, &IndecompLabel::l(Character(vec![1]), false)).unwrap();
        let pl = Supercomodule::standard(&a, &IndecompLabel::l(Character(vec![1]), true)).unwrap();
        assert!(hom(&a, &l, &pl).iter().any(|p| p.inverse().is_some()));
    }

    #[test]
    fn decomposition_of_scrambled_sum() {
        let q = Field::rationals();
        let gm = GroupDescriptor::gm();
        let a = dgx(&q, &gm, &[0], &[1]);
        let labels = vec![
            IndecompLabel::l(Character(vec![0]), false),
            IndecompLabel::s(Character(vec![0]), false),
            IndecompLabel::s(Character(vec![0]), true),
            IndecompLabel::l(Character(vec![2]), false),
        ];
        let m = Supercomodule::direct_sum_of(&a, &labels).unwrap();
        // even automorphism mixing the two even copies of weight 0
        let n = m.dim();
        let mut p = SparseMatrix::identity(&q, n);
        p.set(0, 2, q.from_int(3));
        p.set(2, 0, q.from_int(1));
        let ms = m.change_basis(&p).unwrap();
        assert!(ms.validate(&a).accepted());
        let d = decompose(&a, &ms).unwrap();
        let mut want: Vec<_> = labels.iter().map(|l| l.canonical(&a)).collect();
        want.sort();
        assert_eq!(d.labels, want);
        assert!(d.verified);
        assert!(decompose(&a, &Supercomodule::zero()).unwrap().labels.is_empty());
    }

    #[test]
    fn regular_window_decomposes_into_l() {
        let q = Field::rationals();
        let gm = GroupDescriptor::gm();
        let a = dgx(&q, &gm, &[0], &[1]);
        // K h + K hz for h in a window, with the regular coaction
        let labels: Vec<_> = (-1..=1).map(|h| IndecompLabel::l(Character(vec![h]), false)).collect();
        let m = Supercomodule::direct_sum_of(&a, &labels).unwrap();
        let d = decompose(&a, &m).unwrap();
        assert_eq!(d.labels.len(), 3);
        assert!(d.labels.iter().all(|l| l.kind == Kind::L));
    }

    #[test]
    fn ext_and_retractions() {
        let q = Field::rationals();
        let gm = GroupDescriptor::gm();
        let a = dgx(&q, &gm, &[1], &[0]);
        let one = Character(vec![0]);
        let g = Character(vec![1]);
        let e = ext1(&a, &IndecompLabel::s(g.clone(), true), &IndecompLabel::s(one.clone(), false)).unwrap();
        assert_eq!(e.dim, 1);
        assert_eq!(e.representative.unwrap().0, IndecompLabel::l(one.clone(), false));
        assert_eq!(ext1(&a, &IndecompLabel::s(one.clone(), false), &IndecompLabel::s(one.clone(), false)).unwrap().dim, 0);
        // L(1) embedded in L(1) ⊕ S(g) splits
        let l = Supercomodule::standard(&a, &IndecompLabel::l(one.clone(), false)).unwrap();
        let m = l.direct_sum(&Supercomodule::standard(&a, &IndecompLabel::s(g, false)).unwrap(), &q);
        let mut iota = SparseMatrix::zeros(&q, 3, 2);
        iota.set(0, 0, q.one());
        iota.set(1, 1, q.one());
        assert!(find_retraction(&a, &l, &m, &iota).is_some());
    }

    #[test]
    fn duality() {
        let q = Field::rationals();
        let gm = GroupDescriptor::gm();
        for (g, x) in [(0, 1), (0, 0), (1, 0)] {
            let a = dgx(&q, &gm, &[g], &[x]);
            for h in -2..=2 {
                assert!(dual_pairing(&a, &Character(vec![h])).unwrap().verified());
            }
        }
        let a = dgx(&q, &gm, &[0], &[1]);
        let (o, z) = (q.one(), q.zero());
        let bad = check_pairing(&a, &Character(vec![1]), [[o.clone(), o.clone()], [o, z]]).unwrap();
        assert!(!bad.morphism);
    }

    #[test]
    fn json_round_trip() {
        let q = Field::rationals();
        let gm = GroupDescriptor::gm();
        let a = dgx(&q, &gm, &[0], &[1]);
        let m = Supercomodule::direct_sum_of(&a, &[IndecompLabel::l(Character(vec![1]), true), IndecompLabel::s(Character(vec![0]), false)]).unwrap();
        let v = m.to_json(&a);
        let back = Supercomodule::from_json(&v, &a).unwrap();
        assert!(back.validate(&a).accepted());
        let d1 = decompose(&a, &m).unwrap();
        let d2 = decompose(&a, &back).unwrap();
        assert_eq!(d1.labels, d2.labels);
        assert_eq!(IndecompLabel::parse("PiL([1])", &gm).unwrap(), IndecompLabel::l(Character(vec![1]), true));
    }
}
