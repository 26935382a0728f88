//! Harish-Chandra pairs `(G, V)` over bases `G = G_a^k × D`.
//!
//! `V` has a basis of weight vectors `v_i` with weights in `X(D)`; the
//! additive factors act trivially. A closed subgroup `H ⊆ G` is a choice of
//! additive factors together with a subgroup `A ⊆ X` such that `X(H_D) = X/A`.

use crate::chargroup::{
    CharOrder, Character, ChargroupError, GroupDescriptor, LieFunctional, LieFunctionalJson,
    SubgroupDescriptor,
};
use crate::field::{Elem, Field, FieldDescriptor, FieldError};
use crate::hopf::{validate_gx, HopfError};
use crate::superlin::{in_span, span_basis, SparseMatrix};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HcpError {
    #[error("the base group has additive factors")]
    BaseNotDiagonalizable,
    #[error("invalid sub-pair: {0}")]
    InvalidSubPair(String),
    #[error("sub-pair is not normal: {0}")]
    NotNormal(String),
    #[error("unsupported base: {0}")]
    UnsupportedBase(String),
    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },
    #[error(transparent)]
    Group(#[from] ChargroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

fn perr(path: &str, msg: impl Into<String>) -> HcpError {
    HcpError::Parse { path: path.to_string(), msg: msg.into() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject { condition: String, witness: String },
}

impl Verdict {
    pub fn accepted(&self) -> bool {
        matches!(self, Verdict::Accept)
    }

    fn reject(condition: &str, witness: impl Into<String>) -> Verdict {
        Verdict::Reject { condition: condition.to_string(), witness: witness.into() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HarishChandraPair {
    pub field: Field,
    pub base: GroupDescriptor,
    pub weights: Vec<Character>,
    /// Full table `[v_i, v_j]`; symmetry is checked, not assumed.
    pub bracket: Vec<Vec<LieFunctional>>,
}

impl HarishChandraPair {
    /// Pair with zero bracket.
    pub fn new(field: &Field, base: &GroupDescriptor, weights: Vec<Character>) -> Result<Self, HcpError> {
        base.validate()?;
        for w in &weights {
            base.check(w)?;
        }
        let z = LieFunctional::zero(base, field);
        let n = weights.len();
        Ok(HarishChandraPair {
            field: field.clone(),
            base: base.clone(),
            weights,
            bracket: vec![vec![z; n]; n],
        })
    }

    /// Set `[v_i, v_j] = [v_j, v_i] = x`.
    pub fn set_bracket(&mut self, i: usize, j: usize, x: LieFunctional) {
        self.bracket[i][j] = x.clone();
        self.bracket[j][i] = x;
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    fn zero_vec(&self) -> Vec<Elem> {
        vec![self.field.zero(); self.dim()]
    }

    fn unit(&self, i: usize) -> Vec<Elem> {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    /// `[u, w]` for coordinate vectors `u, w`.
    pub fn bracket_of(&self, u: &[Elem], w: &[Elem]) -> LieFunctional {
        let mut acc = LieFunctional::zero(&self.base, &self.field);
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in w.iter().enumerate() {
                if !b.is_zero() {
                    acc = acc.add(&self.bracket[i][j].scale(&(a * b)));
                }
            }
        }
        acc
    }

    /// Basis indices grouped by weight.
    pub fn weight_blocks(&self) -> BTreeMap<Character, Vec<usize>> {
        let mut m: BTreeMap<Character, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.weights.iter().enumerate() {
            m.entry(w.clone()).or_default().push(i);
        }
        m
    }

    /// The pair of `G_{g,x}`: `V = Kv` of weight `g` with `[v, v] = 2x`.
    pub fn ggx(field: &Field, base: &GroupDescriptor, g: &Character, x: &LieFunctional) -> Result<Self, HcpError> {
        let mut p = HarishChandraPair::new(field, base, vec![g.clone()])?;
        p.set_bracket(0, 0, x.scale(&field.from_int(2)));
        Ok(p)
    }

    pub fn to_json(&self) -> Value {
        let mut br = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let x = &self.bracket[i][j];
                if !x.is_zero() && (i <= j || self.bracket[j][i] != *x) {
                    br.push(json!([i, j, x.to_json()]));
                }
            }
        }
        json!({
            "schema_version": 1,
            "field": self.field.descriptor(),
            "base": self.base,
            "V": self.weights.iter().map(|w| json!({"weight": w, "parity": "odd"})).collect::<Vec<_>>(),
            "bracket": br,
        })
    }

    /// Parse `{"base", "V", "bracket"}`. A bracket entry given for `(i, j)`
    /// only is mirrored to `(j, i)`; conflicting entries are kept so that
    /// [`check_pair`] reports them.
    pub fn from_json(v: &Value, default_field: Option<&Field>) -> Result<Self, HcpError> {
        let field = match v.get("field") {
            Some(f) => {
                let d: FieldDescriptor = serde_json::from_value(f.clone()).map_err(|e| perr("$.field", e.to_string()))?;
                Field::new(d).map_err(|e| perr("$.field", e.to_string()))?
            }
            None => default_field.cloned().ok_or_else(|| perr("$.field", "missing field"))?,
        };
        let base: GroupDescriptor = serde_json::from_value(v.get("base").cloned().ok_or_else(|| perr("$.base", "missing"))?)
            .map_err(|e| perr("$.base", e.to_string()))?;
        base.validate().map_err(|e| perr("$.base", e.to_string()))?;
        let vs = v.get("V").and_then(|x| x.as_array()).ok_or_else(|| perr("$.V", "expected an array"))?;
        let mut weights = Vec::new();
        for (i, e) in vs.iter().enumerate() {
            let path = format!("$.V[{i}]");
            if let Some(p) = e.get("parity") {
                if p != "odd" {
                    return Err(perr(&format!("{path}.parity"), "odd vectors only"));
                }
            }
            let w = e.get("weight").ok_or_else(|| perr(&format!("{path}.weight"), "missing"))?;
            weights.push(base.parse_character(w).map_err(|e| perr(&format!("{path}.weight"), e.to_string()))?);
        }
        let mut p = HarishChandraPair::new(&field, &base, weights)?;
        let n = p.dim();
        let mut given = vec![vec![false; n]; n];
        if let Some(br) = v.get("bracket") {
            let arr = br.as_array().ok_or_else(|| perr("$.bracket", "expected an array"))?;
            for (k, e) in arr.iter().enumerate() {
                let path = format!("$.bracket[{k}]");
                let t = e.as_array().filter(|t| t.len() == 3).ok_or_else(|| perr(&path, "expected [i, j, functional]"))?;
                let idx = |x: &Value, s: &str| -> Result<usize, HcpError> {
                    x.as_u64().map(|u| u as usize).filter(|u| *u < n).ok_or_else(|| perr(&format!("{path}[{s}]"), "bad index"))
                };
                let (i, j) = (idx(&t[0], "0")?, idx(&t[1], "1")?);
                let lj: LieFunctionalJson = serde_json::from_value(t[2].clone()).map_err(|e| perr(&format!("{path}[2]"), e.to_string()))?;
                let x = LieFunctional::from_json(&lj, &base, &field).map_err(|e| perr(&format!("{path}[2]"), e.to_string()))?;
                p.bracket[i][j] = x.clone();
                given[i][j] = true;
                if !given[j][i] {
                    p.bracket[j][i] = x;
                }
            }
        }
        Ok(p)
    }
}

impl fmt::Display for HarishChandraPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(|c| c.to_string()).collect();
        write!(f, "({}, V of weights [{}])", self.base, w.join(", "))
    }
}

/// Check symmetry, equivariance and `v ◁ [v, v] = 0`.
///
/// The last condition, as a polynomial identity in the coordinates of `v`,
/// reads `Σ_jl c_i c_j c_l <[v_j, v_l], wt_i> = 0`; with symmetry and
/// `2 ≠ 0` this is equivalent to `<[v_j, v_l], wt_i> = 0` for all `i, j, l`.
pub fn check_pair(p: &HarishChandraPair) -> Verdict {
    let n = p.dim();
    for i in 0..n {
        for j in 0..n {
            if p.bracket[i][j] != p.bracket[j][i] {
                return Verdict::reject("symmetry", format!("[v{i}, v{j}] != [v{j}, v{i}]"));
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            let prod = p.base.mul(&p.weights[i], &p.weights[j]).unwrap();
            if !p.bracket[i][j].is_zero() && !p.base.is_identity(&prod) {
                return Verdict::reject(
                    "equivariance",
                    format!("[v{i}, v{j}] != 0 but wt(v{i}) wt(v{j}) = {prod} is not trivial"),
                );
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for l in j..n {
                if !p.bracket[j][l].pair_in(&p.field, &p.weights[i]).is_zero() {
                    return Verdict::reject("v ◁ [v,v] = 0", format!("<[v{j}, v{l}], wt(v{i})> != 0"));
                }
            }
        }
    }
    Verdict::Accept
}

/// Closed subgroup `H ⊆ G_a^k × D`: the selected additive factors and the
/// annihilator `A ⊆ X` with `X(H ∩ D) = X / A`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedSubgroup {
    pub additive: Vec<bool>,
    pub annihilator: SubgroupDescriptor,
}

impl ClosedSubgroup {
    pub fn whole(g: &GroupDescriptor) -> Self {
        ClosedSubgroup { additive: vec![true; g.additive_rank], annihilator: SubgroupDescriptor::trivial(&g.diagonal_part()) }
    }

    pub fn trivial(g: &GroupDescriptor) -> Self {
        ClosedSubgroup { additive: vec![false; g.additive_rank], annihilator: SubgroupDescriptor::whole(&g.diagonal_part()) }
    }

    /// The additive factors `G_a^k`.
    pub fn additive_part(g: &GroupDescriptor) -> Self {
        ClosedSubgroup { additive: vec![true; g.additive_rank], annihilator: SubgroupDescriptor::whole(&g.diagonal_part()) }
    }

    /// `Ker(g)` inside `D`, times the selected additive factors.
    pub fn kernel_of(g: &GroupDescriptor, ch: &Character, additive: bool) -> Result<Self, HcpError> {
        Ok(ClosedSubgroup {
            additive: vec![additive; g.additive_rank],
            annihilator: SubgroupDescriptor::new(&g.diagonal_part(), vec![ch.clone()])?,
        })
    }

    /// `H` as an abstract group.
    pub fn descriptor(&self) -> GroupDescriptor {
        let d = self.annihilator.quotient().target().clone();
        GroupDescriptor {
            free_rank: d.free_rank,
            torsion: d.torsion,
            additive_rank: self.additive.iter().filter(|b| **b).count(),
        }
    }

    pub fn lie_contains(&self, field: &Field, x: &LieFunctional) -> bool {
        x.additive.iter().zip(&self.additive).all(|(c, sel)| *sel || c.is_zero())
            && self.annihilator.generators.iter().all(|a| x.pair_in(field, a).is_zero())
    }

    /// Whether the character `ch` restricts trivially to `H`.
    pub fn kills(&self, ch: &Character) -> bool {
        self.annihilator.contains(ch).unwrap_or(false)
    }

    pub fn to_json(&self) -> Value {
        json!({"additive": self.additive, "annihilator": self.annihilator.generators})
    }

    pub fn from_json(v: &Value, g: &GroupDescriptor, path: &str) -> Result<Self, HcpError> {
        let additive: Vec<bool> = match v.get("additive") {
            Some(a) => serde_json::from_value(a.clone()).map_err(|e| perr(&format!("{path}.additive"), e.to_string()))?,
            None => vec![false; g.additive_rank],
        };
        if additive.len() != g.additive_rank {
            return Err(perr(&format!("{path}.additive"), "length does not match the base"));
        }
        let d = g.diagonal_part();
        let mut gens = Vec::new();
        if let Some(a) = v.get("annihilator") {
            let arr = a.as_array().ok_or_else(|| perr(&format!("{path}.annihilator"), "expected an array"))?;
            for (i, c) in arr.iter().enumerate() {
                gens.push(d.parse_character(c).map_err(|e| perr(&format!("{path}.annihilator[{i}]"), e.to_string()))?);
            }
        }
        Ok(ClosedSubgroup { additive, annihilator: SubgroupDescriptor::new(&d, gens)? })
    }
}

/// Sub-object `(H, W)`; `w` spans `W` in the coordinates of `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubPair {
    pub subgroup: ClosedSubgroup,
    pub w: Vec<Vec<Elem>>,
}

impl SubPair {
    pub fn new(subgroup: ClosedSubgroup, w: Vec<Vec<Elem>>) -> SubPair {
        SubPair { subgroup, w }
    }

    pub fn to_json(&self) -> Value {
        let w: Vec<Vec<String>> = self.w.iter().map(|v| v.iter().map(|e| e.to_string()).collect()).collect();
        json!({"subgroup": self.subgroup.to_json(), "W": w})
    }

    pub fn from_json(v: &Value, p: &HarishChandraPair) -> Result<Self, HcpError> {
        let sg = ClosedSubgroup::from_json(v.get("subgroup").unwrap_or(&Value::Null), &p.base, "$.subgroup")?;
        let mut w = Vec::new();
        if let Some(arr) = v.get("W") {
            let arr = arr.as_array().ok_or_else(|| perr("$.W", "expected an array"))?;
            for (i, row) in arr.iter().enumerate() {
                let path = format!("$.W[{i}]");
                let r = row.as_array().filter(|r| r.len() == p.dim()).ok_or_else(|| perr(&path, "expected a vector of length dim V"))?;
                let mut vec = Vec::new();
                for (j, s) in r.iter().enumerate() {
                    let s = match s {
                        Value::String(s) => s.clone(),
                        Value::Number(n) => n.to_string(),
                        _ => return Err(perr(&format!("{path}[{j}]"), "expected a coefficient")),
                    };
                    vec.push(p.field.parse(&s).map_err(|e| perr(&format!("{path}[{j}]"), e.to_string()))?);
                }
                w.push(vec);
            }
        }
        Ok(SubPair { subgroup: sg, w })
    }
}

fn graded_by<F: Fn(&Character) -> Character>(p: &HarishChandraPair, w: &[Vec<Elem>], key: F) -> bool {
    let n = p.dim();
    let mut blocks: BTreeMap<Character, Vec<usize>> = BTreeMap::new();
    for (i, wt) in p.weights.iter().enumerate() {
        blocks.entry(key(wt)).or_default().push(i);
    }
    for v in w {
        for idx in blocks.values() {
            let mut proj = p.zero_vec();
            for &i in idx {
                proj[i] = v[i].clone();
            }
            if !in_span(&p.field, n, w, &proj) {
                return false;
            }
        }
    }
    true
}

/// Check that `(H, W)` is a sub-object: `W` is `H`-stable and `[W, W] ⊆ Lie(H)`.
pub fn check_subpair(p: &HarishChandraPair, s: &SubPair) -> Result<(), HcpError> {
    if s.subgroup.additive.len() != p.base.additive_rank || s.subgroup.annihilator.group != p.base.diagonal_part() {
        return Err(HcpError::InvalidSubPair("subgroup does not belong to the base".into()));
    }
    if s.w.iter().any(|v| v.len() != p.dim()) {
        return Err(HcpError::InvalidSubPair("vector of the wrong length".into()));
    }
    let q = s.subgroup.annihilator.quotient();
    if !graded_by(p, &s.w, |c| q.project(c).unwrap()) {
        return Err(HcpError::InvalidSubPair("W is not H-stable".into()));
    }
    for (a, u) in s.w.iter().enumerate() {
        for (b, w) in s.w.iter().enumerate() {
            if !s.subgroup.lie_contains(&p.field, &p.bracket_of(u, w)) {
                return Err(HcpError::InvalidSubPair(format!("[w{a}, w{b}] is not in Lie(H)")));
            }
        }
    }
    Ok(())
}

/// Normality of a sub-pair: (i) holds since the base is abelian; (ii) `W`
/// is `G`-stable; (iii) `H` acts trivially on `V/W`; (iv) `[V, W] ⊆ Lie(H)`.
pub fn check_normal(p: &HarishChandraPair, s: &SubPair) -> Result<Verdict, HcpError> {
    check_subpair(p, s)?;
    let n = p.dim();
    if !graded_by(p, &s.w, |c| c.clone()) {
        return Ok(Verdict::reject("(ii)", "W is not spanned by weight vectors"));
    }
    for (i, wt) in p.weights.iter().enumerate() {
        if !in_span(&p.field, n, &s.w, &p.unit(i)) && !s.subgroup.kills(wt) {
            return Ok(Verdict::reject("(iii)", format!("weight {wt} of V/W is not trivial on H")));
        }
    }
    for i in 0..n {
        for (b, w) in s.w.iter().enumerate() {
            if !s.subgroup.lie_contains(&p.field, &p.bracket_of(&p.unit(i), w)) {
                return Ok(Verdict::reject("(iv)", format!("[v{i}, w{b}] is not in Lie(H)")));
            }
        }
    }
    Ok(Verdict::Accept)
}

/// `(G/H, V/W)` with the induced weights and bracket.
pub fn quotient_pair(p: &HarishChandraPair, s: &SubPair) -> Result<HarishChandraPair, HcpError> {
    match check_normal(p, s)? {
        Verdict::Accept => {}
        Verdict::Reject { condition, witness } => return Err(HcpError::NotNormal(format!("{condition}: {witness}"))),
    }
    let st = s.subgroup.annihilator.structure();
    let dq = st.descriptor().clone();
    let kept_add: Vec<usize> = (0..p.base.additive_rank).filter(|j| !s.subgroup.additive[*j]).collect();
    let base = GroupDescriptor { free_rank: dq.free_rank, torsion: dq.torsion.clone(), additive_rank: kept_add.len() };
    let n = p.dim();
    let mut span = span_basis(&p.field, n, &s.w);
    let mut reps = Vec::new();
    for i in 0..n {
        let e = p.unit(i);
        if !in_span(&p.field, n, &span, &e) {
            span.push(e);
            reps.push(i);
        }
    }
    let weights: Vec<Character> = reps
        .iter()
        .map(|i| st.coords(&p.weights[*i]).expect("weights of V/W lie in the annihilator"))
        .collect();
    let map = |x: &LieFunctional| -> LieFunctional {
        let add: Vec<Elem> = kept_add.iter().map(|j| x.additive[*j].clone()).collect();
        st.restrict_functional(x, &p.field, add)
    };
    let mut q = HarishChandraPair::new(&p.field, &base, weights)?;
    for (a, i) in reps.iter().enumerate() {
        for (b, j) in reps.iter().enumerate() {
            q.bracket[a][b] = map(&p.bracket[*i][*j]);
        }
    }
    Ok(q)
}

/// Rank data of the restricted brackets `V(g) × V(g^-1) → Lie(G)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagonalCertificate {
    pub super_diagonalizable: bool,
    /// `(weight, dim V(weight), rank of the restricted bracket)`.
    pub ranks: Vec<(Character, usize, usize)>,
    pub witness: Option<Character>,
}

fn pairing_rank(p: &HarishChandraPair, rows: &[usize], cols: &[usize]) -> usize {
    let lie_dim = p.base.rank() + p.base.additive_rank;
    let mut m = SparseMatrix::zeros(&p.field, rows.len(), cols.len() * lie_dim);
    for (a, i) in rows.iter().enumerate() {
        for (b, j) in cols.iter().enumerate() {
            for (k, c) in p.bracket[*i][*j].coords().into_iter().enumerate() {
                m.set(a, b * lie_dim + k, c);
            }
        }
    }
    m.rank()
}

pub fn super_diagonalizable(p: &HarishChandraPair) -> Result<DiagonalCertificate, HcpError> {
    if !p.base.is_diagonalizable() {
        return Err(HcpError::BaseNotDiagonalizable);
    }
    let blocks = p.weight_blocks();
    let mut ranks = Vec::new();
    let mut witness = None;
    for (g, idx) in &blocks {
        let ginv = p.base.inverse(g)?;
        let dual = blocks.get(&ginv).cloned().unwrap_or_default();
        let r = pairing_rank(p, idx, &dual);
        if r < idx.len() && witness.is_none() {
            witness = Some(g.clone());
        }
        ranks.push((g.clone(), idx.len(), r));
    }
    Ok(DiagonalCertificate { super_diagonalizable: witness.is_none(), ranks, witness })
}

/// Whether no nonzero `W` has `[V, W] = 0`.
pub fn unipotent_radical_trivial(p: &HarishChandraPair) -> Result<bool, HcpError> {
    if !p.base.is_diagonalizable() {
        return Err(HcpError::BaseNotDiagonalizable);
    }
    let all: Vec<usize> = (0..p.dim()).collect();
    Ok(pairing_rank(p, &all, &all) == p.dim())
}

/// The unipotent radical `(G_a^k, {w : [V, w] ⊆ Lie(G_a^k)})`.
pub fn unipotent_radical(p: &HarishChandraPair) -> SubPair {
    let n = p.dim();
    let r = p.base.rank();
    // rows: (partner b, diagonal coordinate k); unknowns: coefficients of w
    let mut m = SparseMatrix::zeros(&p.field, n * r, n);
    for b in 0..n {
        for a in 0..n {
            for (k, c) in p.bracket[a][b].diagonal_coords().into_iter().enumerate() {
                m.set(b * r + k, a, c);
            }
        }
    }
    SubPair { subgroup: ClosedSubgroup::additive_part(&p.base), w: m.kernel() }
}

/// `G/G_u` is super-diagonalizable.
pub fn super_trigonalizable(p: &HarishChandraPair) -> Result<bool, HcpError> {
    let q = quotient_pair(p, &unipotent_radical(p))?;
    Ok(super_diagonalizable(&q)?.super_diagonalizable)
}

/// `Some((G, dim V))` when `G ≅ G × (G_a^-)^dim V`, i.e. zero bracket and trivial weights.
pub fn abelian_normal_form(p: &HarishChandraPair) -> Option<(GroupDescriptor, usize)> {
    let abelian = p.bracket.iter().flatten().all(|x| x.is_zero()) && p.weights.iter().all(|w| p.base.is_identity(w));
    abelian.then(|| (p.base.clone(), p.dim()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorLabel {
    GaMinus,
    Gm,
    Mu(u64),
}

impl fmt::Display for FactorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorLabel::GaMinus => write!(f, "Ga_minus"),
            FactorLabel::Gm => write!(f, "Gm"),
            FactorLabel::Mu(n) => write!(f, "mu({n})"),
        }
    }
}

impl Serialize for FactorLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// One step `H ◁ N ◁ G` with `N/H ≅ G_a^-` and `G/N` given by `<g>`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub base: GroupDescriptor,
    pub g: Character,
    pub subgroup_base: GroupDescriptor,
    /// Top-down: `G/N` when nontrivial, then `N/H`.
    pub factors: Vec<FactorLabel>,
    /// `(H, W) ◁ G`, `(H, V) ◁ G` and `(H, W) ◁ (H, V)`.
    pub checks: Vec<Verdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalChain {
    pub steps: Vec<ChainStep>,
    pub factors: Vec<FactorLabel>,
    pub g0: GroupDescriptor,
}

impl NormalChain {
    pub fn odd_count(&self) -> usize {
        self.factors.iter().filter(|f| **f == FactorLabel::GaMinus).count()
    }

    pub fn all_normal(&self) -> bool {
        self.steps.iter().all(|s| s.checks.iter().all(Verdict::accepted))
    }
}

/// Normal chain with factors `G_a^-`, `G_m`, `μ_n`, peeling at each step the
/// basis vector of lowest weight (ties: lowest index).
pub fn normal_chain(p: &HarishChandraPair) -> Result<NormalChain, HcpError> {
    if let Verdict::Reject { condition, witness } = check_pair(p) {
        return Err(HcpError::UnsupportedBase(format!("not a Harish-Chandra pair ({condition}: {witness})")));
    }
    let mut cur = p.clone();
    let mut steps = Vec::new();
    let mut factors = Vec::new();
    while cur.dim() > 0 {
        let i0 = (0..cur.dim()).min_by(|a, b| cur.weights[*a].cmp(&cur.weights[*b]).then(a.cmp(b))).unwrap();
        let g = cur.weights[i0].clone();
        let h = ClosedSubgroup::kernel_of(&cur.base, &g, true)?;
        let others: Vec<usize> = (0..cur.dim()).filter(|i| *i != i0).collect();
        let w: Vec<Vec<Elem>> = others.iter().map(|i| cur.unit(*i)).collect();
        let all: Vec<Vec<Elem>> = (0..cur.dim()).map(|i| cur.unit(i)).collect();
        let hw = SubPair::new(h.clone(), w.clone());
        let hv = SubPair::new(h.clone(), all);
        let mut checks = vec![check_normal(&cur, &hw)?, check_normal(&cur, &hv)?];
        // the pairs N = (H, V) and H = (H, W) on the base H
        let q = h.annihilator.quotient();
        let hbase = h.descriptor();
        let restrict = |idx: &[usize]| -> Result<HarishChandraPair, HcpError> {
            let weights = idx.iter().map(|i| q.project(&cur.weights[*i])).collect::<Result<Vec<_>, _>>()?;
            let mut np = HarishChandraPair::new(&cur.field, &hbase, weights)?;
            for (a, i) in idx.iter().enumerate() {
                for (b, j) in idx.iter().enumerate() {
                    let x = &cur.bracket[*i][*j];
                    np.bracket[a][b] = q.push_functional(x, &cur.field, x.additive.clone());
                }
            }
            Ok(np)
        };
        let n_pair = restrict(&(0..cur.dim()).collect::<Vec<_>>())?;
        let w_in_n: Vec<Vec<Elem>> = others.iter().map(|i| n_pair.unit(*i)).collect();
        checks.push(check_normal(&n_pair, &SubPair::new(ClosedSubgroup::whole(&hbase), w_in_n))?);
        let mut step_factors = Vec::new();
        match cur.base.order(&g)? {
            CharOrder::Infinite => step_factors.push(FactorLabel::Gm),
            CharOrder::Finite(1) => {}
            CharOrder::Finite(n) => step_factors.push(FactorLabel::Mu(n)),
        }
        step_factors.push(FactorLabel::GaMinus);
        factors.extend(step_factors.iter().copied());
        let next = restrict(&others)?;
        steps.push(ChainStep { base: cur.base.clone(), g, subgroup_base: hbase, factors: step_factors, checks });
        cur = next;
    }
    Ok(NormalChain { steps, factors, g0: cur.base })
}

/// A nontrivial splitting `(G_1, V_1) × (G_2, V_2)` along base coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductSplit {
    /// Base coordinates (diagonal first, then additive) of the first factor.
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub v1: Vec<Vec<String>>,
    pub v2: Vec<Vec<String>>,
}

/// Search all splittings of the base into coordinate factors for a
/// nontrivial direct-product decomposition of the pair.
pub fn product_decomposition(p: &HarishChandraPair) -> Option<ProductSplit> {
    let r = p.base.rank();
    let total = r + p.base.additive_rank;
    let n = p.dim();
    let f = &p.field;
    let blocks = p.weight_blocks();
    for mask in 0u64..(1u64 << total) {
        let in1 = |c: usize| mask & (1 << c) != 0;
        let u = |side: bool| -> Vec<Vec<Elem>> {
            let mine = |c: usize| in1(c) == side;
            let mut out = Vec::new();
            for (wt, idx) in &blocks {
                if wt.0.iter().enumerate().any(|(c, a)| *a != 0 && !mine(c)) {
                    continue;
                }
                // v in V(wt) with [v, V] supported on this side's coordinates
                let mut rows = Vec::new();
                for b in 0..n {
                    for c in 0..total {
                        if !mine(c) {
                            rows.push((b, c));
                        }
                    }
                }
                let mut m = SparseMatrix::zeros(f, rows.len(), idx.len());
                for (ri, (b, c)) in rows.iter().enumerate() {
                    for (a, i) in idx.iter().enumerate() {
                        m.set(ri, a, p.bracket[*i][*b].coords()[*c].clone());
                    }
                }
                for k in m.kernel() {
                    let mut v = p.zero_vec();
                    for (a, i) in idx.iter().enumerate() {
                        v[*i] = k[a].clone();
                    }
                    out.push(v);
                }
            }
            out
        };
        let u1 = u(true);
        let u2 = u(false);
        let mut both = u1.clone();
        both.extend(u2.iter().cloned());
        if crate::superlin::span_dim(f, n, &both) < n {
            continue;
        }
        let s1: Vec<usize> = (0..total).filter(|c| in1(*c)).collect();
        let s2: Vec<usize> = (0..total).filter(|c| !in1(*c)).collect();
        // intersection I, complements C1, C2
        let b1 = span_basis(f, n, &u1);
        let b2 = span_basis(f, n, &u2);
        let inter = intersect(f, n, &b1, &b2);
        let c1 = extend_to_basis(f, n, &inter, &b1);
        let c2 = extend_to_basis(f, n, &inter, &b2);
        let lo = c1.len().max(usize::from(s1.is_empty()));
        let hi = (c1.len() + inter.len()).min(if s2.is_empty() { n.saturating_sub(1) } else { n });
        if lo > hi {
            continue;
        }
        let t = lo - c1.len();
        let mut v1 = c1.clone();
        v1.extend(inter[..t].iter().cloned());
        let mut v2 = c2.clone();
        v2.extend(inter[t..].iter().cloned());
        let s = |vs: &[Vec<Elem>]| vs.iter().map(|v| v.iter().map(|e| e.to_string()).collect()).collect();
        return Some(ProductSplit { first: s1, second: s2, v1: s(&v1), v2: s(&v2) });
    }
    None
}

fn intersect(f: &Field, n: usize, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    // kernel of [a | -b]
    let cols: Vec<Vec<Elem>> = a.iter().cloned().chain(b.iter().map(|v| v.iter().map(|e| -e.clone()).collect())).collect();
    let m = SparseMatrix::from_columns(f, n, &cols);
    let vecs: Vec<Vec<Elem>> = m
        .kernel()
        .into_iter()
        .map(|k| {
            let mut v = vec![f.zero(); n];
            for (i, c) in k[..a.len()].iter().enumerate() {
                for (j, e) in a[i].iter().enumerate() {
                    v[j] = &v[j] + &(c * e);
                }
            }
            v
        })
        .collect();
    span_basis(f, n, &vecs)
}

fn extend_to_basis(f: &Field, n: usize, start: &[Vec<Elem>], pool: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut acc = start.to_vec();
    let mut out = Vec::new();
    for v in pool {
        if !in_span(f, n, &acc, v) {
            acc.push(v.clone());
            out.push(v.clone());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IsoVerdict {
    Isomorphic {
        /// Sign of the automorphism on each character coordinate.
        signs: Vec<i8>,
        alpha: String,
        additive_scalings: Vec<String>,
    },
    NotIsomorphic,
    Undecidable { reason: String },
}

/// Decide `G_{g1,x1} ≅ G_{g2,x2}` over the automorphisms of `G` that invert
/// some character coordinates and rescale the additive factors.
pub fn iso_ggx(
    field: &Field,
    base: &GroupDescriptor,
    (g1, x1): (&Character, &LieFunctional),
    (g2, x2): (&Character, &LieFunctional),
) -> Result<IsoVerdict, HcpError> {
    validate_gx(field, base, g1, x1)?;
    validate_gx(field, base, g2, x2)?;
    // additive coordinates only need equal support
    if x1.additive.iter().zip(&x2.additive).any(|(a, b)| a.is_zero() != b.is_zero()) {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let r = base.rank();
    let d1 = x1.diagonal_coords();
    let d2 = x2.diagonal_coords();
    let mut undecided = None;
    for mask in 0u64..(1u64 << r) {
        let signs: Vec<i64> = (0..r).map(|i| if mask & (1 << i) != 0 { -1 } else { 1 }).collect();
        let raw: Vec<i64> = g2.0.iter().zip(&signs).map(|(a, s)| a * s).collect();
        if base.reduce(&raw)? != *g1 {
            continue;
        }
        // s_i x1_i = alpha^2 x2_i
        let mut ratio: Option<Elem> = None;
        let mut ok = true;
        for i in 0..r {
            let lhs = &d1[i] * &field.from_int(signs[i]);
            match (lhs.is_zero(), d2[i].is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let q = lhs.checked_div(&d2[i])?;
                    match &ratio {
                        Some(prev) if *prev != q => ok = false,
                        Some(_) => {}
                        None => ratio = Some(q),
                    }
                }
                _ => ok = false,
            }
        }
        if !ok {
            continue;
        }
        let alpha = match ratio {
            None => field.one(),
            Some(q) => match q.is_square() {
                Ok(Some(a)) => a,
                Ok(None) => continue,
                Err(FieldError::Unsupported(m)) => {
                    undecided.get_or_insert(m);
                    continue;
                }
                Err(e) => return Err(e.into()),
            },
        };
        let a2 = &alpha * &alpha;
        let scalings = x1
            .additive
            .iter()
            .zip(&x2.additive)
            .map(|(a, b)| if a.is_zero() { Ok(field.one()) } else { (&a2 * b).checked_div(a) })
            .collect::<Result<Vec<Elem>, FieldError>>()?;
        return Ok(IsoVerdict::Isomorphic {
            signs: signs.iter().map(|s| *s as i8).collect(),
            alpha: alpha.to_string(),
            additive_scalings: scalings.iter().map(|e| e.to_string()).collect(),
        });
    }
    Ok(match undecided {
        Some(reason) => IsoVerdict::Undecidable { reason },
        None => IsoVerdict::NotIsomorphic,
    })
}

/// `Z(G_{g,x})_ev = Ker ρ`, the kernel of the character `g` (the base is abelian).
pub fn center_ev(base: &GroupDescriptor, g: &Character) -> Result<ClosedSubgroup, HcpError> {
    ClosedSubgroup::kernel_of(base, g, true)
}

/// `G_{g,x}` with abelian base is nilpotent iff `g = 1`.
pub fn nilpotent_ggx(base: &GroupDescriptor, g: &Character) -> Result<bool, HcpError> {
    base.check(g)?;
    Ok(base.is_identity(g))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Thm64Report {
    /// `G / Z(G)_m` is unipotent.
    pub a: bool,
    /// A central extension by a multiplicative-type group with unipotent quotient exists.
    pub b: bool,
    pub c: bool,
    /// `G_ev` nilpotent and `Z(G_ev)_m ⊆ Ker ρ`.
    pub d: bool,
    pub center_ev: GroupDescriptor,
    pub center_m: GroupDescriptor,
    pub quotient_base: GroupDescriptor,
    pub implications_hold: bool,
}

/// Conditions (a)–(d) of the nilpotency theorem for `G_{g,x}`.
pub fn check_thm64(field: &Field, base: &GroupDescriptor, g: &Character, x: &LieFunctional) -> Result<Thm64Report, HcpError> {
    validate_gx(field, base, g, x)?;
    let p = HarishChandraPair::ggx(field, base, g, x)?;
    let z = center_ev(base, g)?;
    // Z(G)_m: the diagonal part of the center, which is central and purely even
    let zm = ClosedSubgroup::kernel_of(base, g, false)?;
    let q = quotient_pair(&p, &SubPair::new(zm.clone(), vec![]))?;
    let a = q.base.rank() == 0;
    // a multiplicative-type central F lies in Z(G)_m; G/F unipotent forces F = D
    let f_is_d = zm.annihilator.is_trivial();
    let b = f_is_d && a;
    let c = nilpotent_ggx(base, g)?;
    let d = base.is_identity(g);
    let implications_hold = (!a || b) && (!b || c) && (!c || d);
    Ok(Thm64Report {
        a,
        b,
        c,
        d,
        center_ev: z.descriptor(),
        center_m: zm.descriptor(),
        quotient_base: q.base,
        implications_hold,
    })
}

/// Whether `(φ, ψ)` is a morphism of pairs, with `φ` given on characters
/// (`phi_star(h)` is the pullback of a character of the codomain) and on Lie
/// algebras by `lie_phi`, and `ψ` by the images of basis vectors.
pub fn is_pair_morphism<F, L>(
    dom: &HarishChandraPair,
    cod: &HarishChandraPair,
    phi_star: F,
    lie_phi: L,
    psi: &[Vec<Elem>],
) -> bool
where
    F: Fn(&Character) -> Character,
    L: Fn(&LieFunctional) -> LieFunctional,
{
    // ψ is equivariant: each image is a combination of vectors whose weight pulls back to wt(v_i)
    for (i, img) in psi.iter().enumerate() {
        for (j, c) in img.iter().enumerate() {
            if !c.is_zero() && phi_star(&cod.weights[j]) != dom.weights[i] {
                return false;
            }
        }
    }
    for i in 0..dom.dim() {
        for j in 0..dom.dim() {
            if cod.bracket_of(&psi[i], &psi[j]) != lie_phi(&dom.bracket[i][j]) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample71 {
    pub splits: bool,
    pub radical_is_ga: bool,
    pub super_trigonalizable: bool,
    pub quotient_super_diagonalizable: bool,
    /// Super-trigonalizable while `G → G/G_u` does not split.
    pub trigonalizable_but_nonsplit: bool,
}

/// `G_{1, αx + βy}` over `G_a × G_m`.
pub fn counterexample_71(field: &Field, alpha: &Elem, beta: &Elem) -> Result<Counterexample71, HcpError> {
    let base = GroupDescriptor::new(1, vec![], 1)?;
    let x = LieFunctional::new(&base, field, vec![beta.clone()], vec![], vec![alpha.clone()])?;
    let p = HarishChandraPair::ggx(field, &base, &base.identity(), &x)?;
    let ga = SubPair::new(ClosedSubgroup::additive_part(&base), vec![]);
    let q = quotient_pair(&p, &ga)?;
    // section: G_m = 1 × G_m ⊂ G and id_V; characters of G pull back along the
    // embedding by dropping nothing (X(G) = X(G_m)), Lie(G_m) ⊂ Lie(G) has zero additive part
    let splits = is_pair_morphism(
        &q,
        &p,
        |h| h.clone(),
        |y| LieFunctional { free: y.free.clone(), torsion: y.torsion.clone(), additive: vec![field.zero()] },
        &[vec![field.one()]],
    );
    let rad = unipotent_radical(&p);
    let radical_is_ga = rad.w.is_empty() && rad.subgroup == ClosedSubgroup::additive_part(&base);
    let quotient_super_diagonalizable = super_diagonalizable(&q)?.super_diagonalizable;
    let st = super_trigonalizable(&p)?;
    let rad_quot = quotient_pair(&p, &rad)?;
    // when G_u = G_a the section is the one above; otherwise G_u ⊇ (G_a, V), the
    // quotient is purely even and G_m ⊂ G is a section
    let radical_split = if radical_is_ga {
        splits
    } else {
        rad_quot.dim() == 0 && is_pair_morphism(&rad_quot, &p, |h| h.clone(), |y| y.clone(), &[])
    };
    Ok(Counterexample71 {
        splits,
        radical_is_ga,
        super_trigonalizable: st,
        quotient_super_diagonalizable,
        trigonalizable_but_nonsplit: st && !radical_split,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn lie(g: &GroupDescriptor, free: &[i64], tors: &[i64], add: &[i64]) -> LieFunctional {
        LieFunctional::from_ints(g, &q(), free, tors, add).unwrap()
    }

    #[test]
    fn pair_checks() {
        let gm = GroupDescriptor::gm();
        let mut p = HarishChandraPair::new(&q(), &gm, vec![Character(vec![1])]).unwrap();
        p.set_bracket(0, 0, lie(&gm, &[2], &[], &[]));
        assert!(matches!(check_pair(&p), Verdict::Reject { ref condition, .. } if condition == "equivariance"));
        let mut p = HarishChandraPair::new(&q(), &gm, vec![Character(vec![0])]).unwrap();
        p.set_bracket(0, 0, lie(&gm, &[2], &[], &[]));
        assert_eq!(check_pair(&p), Verdict::Accept);
        // weights t, t^-1 with [v0, v1] = y: v0 ◁ [v0, v1] != 0
        let mut p = HarishChandraPair::new(&q(), &gm, vec![Character(vec![1]), Character(vec![-1])]).unwrap();
        p.set_bracket(0, 1, lie(&gm, &[1], &[], &[]));
        assert!(matches!(check_pair(&p), Verdict::Reject { ref condition, .. } if condition.contains("◁")));
        let mut p = HarishChandraPair::new(&q(), &gm, vec![Character(vec![0]); 2]).unwrap();
        p.bracket[0][1] = lie(&gm, &[1], &[], &[]);
        assert!(matches!(check_pair(&p), Verdict::Reject { ref condition, .. } if condition == "symmetry"));
    }

    #[test]
    fn normality_and_quotient_71() {
        let f = q();
        let base = GroupDescriptor::new(1, vec![], 1).unwrap();
        let p = HarishChandraPair::ggx(&f, &base, &base.identity(), &lie(&base, &[1], &[], &[1])).unwrap();
        let ga = SubPair::new(ClosedSubgroup::additive_part(&base), vec![]);
        assert_eq!(check_normal(&p, &ga).unwrap(), Verdict::Accept);
        let qp = quotient_pair(&p, &ga).unwrap();
        assert_eq!(qp.base, GroupDescriptor::gm());
        assert_eq!(qp.bracket[0][0], lie(&GroupDescriptor::gm(), &[2], &[], &[]));
        assert_eq!(check_pair(&qp), Verdict::Accept);
        let triv = SubPair::new(ClosedSubgroup::trivial(&base), vec![vec![f.one()]]);
        assert!(check_normal(&p, &triv).is_err() || !check_normal(&p, &triv).unwrap().accepted());
        let whole = SubPair::new(ClosedSubgroup::whole(&base), vec![vec![f.one()]]);
        assert_eq!(check_normal(&p, &whole).unwrap(), Verdict::Accept);
        let t = quotient_pair(&p, &whole).unwrap();
        assert_eq!(t.dim(), 0);
        assert_eq!(t.base.rank() + t.base.additive_rank, 0);
        let same = quotient_pair(&p, &SubPair::new(ClosedSubgroup::trivial(&base), vec![])).unwrap();
        assert_eq!(same.base, base);
        assert_eq!(same.bracket, p.bracket);
    }

    #[test]
    fn zero_bracket_subpair_with_nonzero_bracket_fails_iv() {
        let f = q();
        let gm = GroupDescriptor::gm();
        let mut p = HarishChandraPair::new(&f, &gm, vec![Character(vec![0]); 2]).unwrap();
        p.set_bracket(0, 1, lie(&gm, &[1], &[], &[]));
        let s = SubPair::new(ClosedSubgroup::trivial(&gm), vec![vec![f.one(), f.zero()]]);
        assert_eq!(check_normal(&p, &s).unwrap(), Verdict::reject("(iv)", "[v1, w0] is not in Lie(H)"));
    }

    #[test]
    fn diagonalizability() {
        let f = q();
        let gm = GroupDescriptor::gm();
        let mut p = HarishChandraPair::new(&f, &gm, vec![Character(vec![0]); 2]).unwrap();
        p.set_bracket(0, 0, lie(&gm, &[1], &[], &[]));
        p.set_bracket(1, 1, lie(&gm, &[1], &[], &[]));
        assert!(super_diagonalizable(&p).unwrap().super_diagonalizable);
        assert!(unipotent_radical_trivial(&p).unwrap());
        assert!(abelian_normal_form(&p).is_none());
        assert!(product_decomposition(&p).is_none());
        let z = HarishChandraPair::new(&f, &gm, vec![Character(vec![3])]).unwrap();
        let c = super_diagonalizable(&z).unwrap();
        assert!(!c.super_diagonalizable);
        assert_eq!(c.witness, Some(Character(vec![3])));
        let e = HarishChandraPair::new(&f, &gm, vec![]).unwrap();
        assert!(super_diagonalizable(&e).unwrap().super_diagonalizable);
        assert_eq!(super_diagonalizable(&HarishChandraPair::new(&f, &GroupDescriptor::ga(), vec![]).unwrap()), Err(HcpError::BaseNotDiagonalizable));
    }

    #[test]
    fn product_split_is_found_when_it_exists() {
        let f = q();
        // G_m x G_m with v0 pairing into the first Lie factor and v1 into the second
        let g = GroupDescriptor::new(2, vec![], 0).unwrap();
        let mut p = HarishChandraPair::new(&f, &g, vec![g.identity(); 2]).unwrap();
        p.set_bracket(0, 0, lie(&g, &[1, 0], &[], &[]));
        p.set_bracket(1, 1, lie(&g, &[0, 1], &[], &[]));
        let s = product_decomposition(&p).unwrap();
        assert_eq!(s.v1.len() + s.v2.len(), 2);
        // a free odd line splits off as G_a^-
        let gm = GroupDescriptor::gm();
        let mut p = HarishChandraPair::new(&f, &gm, vec![gm.identity(); 2]).unwrap();
        p.set_bracket(0, 0, lie(&gm, &[1], &[], &[]));
        assert!(product_decomposition(&p).is_some());
    }

    #[test]
    fn abelian_forms() {
        let f = q();
        let mu = GroupDescriptor::mu(3);
        let p = HarishChandraPair::new(&f, &mu, vec![mu.identity()]).unwrap();
        assert_eq!(abelian_normal_form(&p), Some((mu.clone(), 1)));
        let e = HarishChandraPair::new(&f, &mu, vec![]).unwrap();
        assert_eq!(abelian_normal_form(&e), Some((mu, 0)));
    }

    #[test]
    fn chains() {
        let f = q();
        let gm = GroupDescriptor::gm();
        let p = HarishChandraPair::ggx(&f, &gm, &gm.identity(), &lie(&gm, &[1], &[], &[])).unwrap();
        let c = normal_chain(&p).unwrap();
        assert_eq!(c.factors, vec![FactorLabel::GaMinus]);
        assert_eq!(c.g0, gm);
        assert!(c.all_normal());
        let e = normal_chain(&HarishChandraPair::new(&f, &gm, vec![]).unwrap()).unwrap();
        assert!(e.factors.is_empty());
        let mu = GroupDescriptor::mu(4);
        let t = HarishChandraPair::new(&f, &mu, vec![mu.identity()]).unwrap();
        let c = normal_chain(&t).unwrap();
        assert_eq!(c.factors, vec![FactorLabel::GaMinus]);
        assert_eq!(c.g0, mu);
        let s = HarishChandraPair::new(&f, &mu, vec![Character(vec![2])]).unwrap();
        let c = normal_chain(&s).unwrap();
        assert_eq!(c.factors, vec![FactorLabel::Mu(2), FactorLabel::GaMinus]);
        assert_eq!(c.g0, GroupDescriptor::mu(2));
        assert!(c.all_normal());
        let w = HarishChandraPair::new(&f, &gm, vec![Character(vec![2]), Character(vec![-1])]).unwrap();
        let c = normal_chain(&w).unwrap();
        assert_eq!(c.odd_count(), 2);
        assert!(c.all_normal());
    }

    #[test]
    fn isomorphism_classes() {
        let f = q();
        let gm = GroupDescriptor::gm();
        let one = gm.identity();
        let l = |a: i64| lie(&gm, &[a], &[], &[]);
        let v = |a: i64, b: i64| iso_ggx(&f, &gm, (&one, &l(a)), (&one, &l(b))).unwrap();
        assert!(matches!(v(1, 4), IsoVerdict::Isomorphic { ref alpha, .. } if alpha == "1/2"));
        assert!(matches!(v(1, -1), IsoVerdict::Isomorphic { .. }));
        assert_eq!(v(1, 2), IsoVerdict::NotIsomorphic);
        assert_eq!(v(1, 3), IsoVerdict::NotIsomorphic);
        let ga = GroupDescriptor::ga();
        let a = |c: i64| LieFunctional::from_ints(&ga, &f, &[], &[], &[c]).unwrap();
        let r = iso_ggx(&f, &ga, (&ga.identity(), &a(1)), (&ga.identity(), &a(2))).unwrap();
        assert!(matches!(r, IsoVerdict::Isomorphic { .. }));
        let f5 = Field::prime(5).unwrap();
        let l5 = |c: i64| LieFunctional::from_ints(&gm, &f5, &[c], &[], &[]).unwrap();
        assert_eq!(iso_ggx(&f5, &gm, (&one, &l5(1)), (&one, &l5(2))).unwrap(), IsoVerdict::NotIsomorphic);
        assert!(matches!(iso_ggx(&f5, &gm, (&one, &l5(1)), (&one, &l5(4))).unwrap(), IsoVerdict::Isomorphic { .. }));
    }

    #[test]
    fn center_and_nilpotency() {
        let gm = GroupDescriptor::gm();
        assert_eq!(center_ev(&gm, &Character(vec![1])).unwrap().descriptor(), GroupDescriptor::trivial());
        assert_eq!(center_ev(&gm, &gm.identity()).unwrap().descriptor(), gm);
        let mu = GroupDescriptor::mu(4);
        assert_eq!(center_ev(&mu, &Character(vec![2])).unwrap().descriptor(), GroupDescriptor::mu(2));
        assert!(nilpotent_ggx(&gm, &gm.identity()).unwrap());
        assert!(!nilpotent_ggx(&mu, &Character(vec![2])).unwrap());
    }

    #[test]
    fn thm64() {
        let f = q();
        let base = GroupDescriptor::new(1, vec![], 1).unwrap();
        let r = check_thm64(&f, &base, &base.identity(), &LieFunctional::zero(&base, &f)).unwrap();
        assert!(r.a && r.b && r.c && r.d && r.implications_hold);
        let mu = GroupDescriptor::mu(4);
        let r = check_thm64(&f, &mu, &Character(vec![2]), &LieFunctional::zero(&mu, &f)).unwrap();
        assert!(!r.d && !r.a && r.implications_hold);
        let ga = GroupDescriptor::ga();
        let r = check_thm64(&f, &ga, &ga.identity(), &LieFunctional::zero(&ga, &f)).unwrap();
        assert!(r.a);
    }

    #[test]
    fn counterexample() {
        let f = q();
        let e = |a: i64, b: i64| counterexample_71(&f, &f.from_int(a), &f.from_int(b)).unwrap();
        let r = e(1, 1);
        assert!(!r.splits && r.radical_is_ga && r.super_trigonalizable && r.trigonalizable_but_nonsplit);
        assert!(e(0, 1).splits);
        assert!(!e(1, 0).radical_is_ga);
        assert!(!e(1, 0).trigonalizable_but_nonsplit && !e(0, 1).trigonalizable_but_nonsplit);
        assert!(e(0, 0).super_trigonalizable);
    }

    #[test]
    fn json_round_trip() {
        let f = q();
        let gm = GroupDescriptor::gm();
        let mut p = HarishChandraPair::new(&f, &gm, vec![Character(vec![0]); 2]).unwrap();
        p.set_bracket(0, 1, lie(&gm, &[3], &[], &[]));
        let v = p.to_json();
        assert_eq!(HarishChandraPair::from_json(&v, None).unwrap(), p);
        let bad = json!({"field": {"kind": "Q"}, "base": {"free_rank": 1}, "V": [{"weight": [0]}], "bracket": [[0, 3, {}]]});
        assert!(matches!(HarishChandraPair::from_json(&bad, None), Err(HcpError::Parse { ref path, .. }) if path == "$.bracket[0][1]"));
    }
}
