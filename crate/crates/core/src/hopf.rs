//! Monomial Hopf superalgebras `K[X][t_1..t_k] ⊗ ∧(z)`.
//!
//! The algebra `K[G_{g,x}]` of the supergroup built from a group-like
//! character `g` and a Lie functional `x` has
//!
//! ```text
//! Δ(z)   = 1⊗z + z⊗g
//! Δ(h)   = h⊗h + <x,h> hz⊗ghz
//! Δ(t_j) = t_j⊗1 + 1⊗t_j + <x,t_j> z⊗gz
//! ```
//!
//! Structure maps are stored on generators and extended multiplicatively,
//! so a tampered generator image is caught by [`verify_hopf_axioms`].

use crate::chargroup::{
    subgroup_kernel, Character, ChargroupError, GroupDescriptor, LieFunctional, LieFunctionalJson,
    SubgroupDescriptor,
};
use crate::field::{Elem, Field, FieldDescriptor, FieldError};
use crate::poly::UPoly;
use crate::superlin::{Parity, SparseMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HopfError {
    #[error("invalid (g, x): {0}")]
    InvalidGx(String),
    #[error("a character window is required for infinite character groups")]
    WindowRequired,
    #[error("the base group must be diagonalizable here")]
    NotDiagonalizable,
    #[error("the coproduct is not filtered by t-degree")]
    NotFiltered,
    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },
    #[error(transparent)]
    Group(#[from] ChargroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn perr(path: &str, msg: impl Into<String>) -> HopfError {
    HopfError::Parse { path: path.to_string(), msg: msg.into() }
}

/// `h t^a z^ε`. The derived order is lexicographic on (character, t-exponents, ε).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub ch: Character,
    pub t: Vec<u32>,
    pub z: bool,
}

impl Monomial {
    pub fn new(ch: Character, t: Vec<u32>, z: bool) -> Monomial {
        Monomial { ch, t, z }
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.z)
    }

    pub fn t_degree(&self) -> u32 {
        self.t.iter().sum()
    }

    pub fn parse(s: &str, group: &GroupDescriptor) -> Result<Monomial, String> {
        let mut ch = group.identity();
        let mut t = vec![0u32; group.additive_rank];
        let mut z = false;
        for f in s.split('*').map(str::trim) {
            if f == "1" {
                continue;
            } else if f == "z" {
                if z {
                    return Err("z appears twice".into());
                }
                z = true;
            } else if let Some(body) = f.strip_prefix("h[").and_then(|r| r.strip_suffix(']')) {
                let raw: Result<Vec<i64>, _> = if body.is_empty() {
                    Ok(vec![])
                } else {
                    body.split(',').map(|x| x.trim().parse::<i64>()).collect()
                };
                let raw = raw.map_err(|e| e.to_string())?;
                let h = group.reduce(&raw).map_err(|e| e.to_string())?;
                ch = group.mul(&ch, &h).map_err(|e| e.to_string())?;
            } else if let Some(rest) = f.strip_prefix('t') {
                let (idx, exp) = match rest.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u32>().map_err(|e| e.to_string())?),
                    None => (rest, 1),
                };
                let j: usize = idx.parse().map_err(|_| format!("bad factor {f:?}"))?;
                if j >= t.len() {
                    return Err(format!("no additive coordinate {j}"));
                }
                t[j] += exp;
            } else {
                return Err(format!("bad factor {f:?}"));
            }
        }
        Ok(Monomial { ch, t, z })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.ch.0.iter().any(|a| *a != 0) {
            let v: Vec<String> = self.ch.0.iter().map(|a| a.to_string()).collect();
            parts.push(format!("h[{}]", v.join(",")));
        }
        for (j, e) in self.t.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("t{j}")),
                _ => parts.push(format!("t{j}^{e}")),
            }
        }
        if self.z {
            parts.push("z".into());
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Linear combination of `arity`-fold tensors of monomials. Arity 1 is an
/// algebra element.
#[derive(Clone, PartialEq)]
pub struct Tensor {
    pub arity: usize,
    pub terms: BTreeMap<Vec<Monomial>, Elem>,
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let key: Vec<String> = k.iter().map(|m| m.to_string()).collect();
                format!("({c}) {}", key.join(" ⊗ "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Tensor {
    pub fn zero(arity: usize) -> Tensor {
        Tensor { arity, terms: BTreeMap::new() }
    }

    pub fn term(key: Vec<Monomial>, c: Elem) -> Tensor {
        let mut t = Tensor::zero(key.len());
        t.add_term(key, c);
        t
    }

    pub fn add_term(&mut self, key: Vec<Monomial>, c: Elem) {
        debug_assert_eq!(key.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, o: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Elem) -> Tensor {
        let mut out = Tensor::zero(self.arity);
        for (k, a) in &self.terms {
            out.add_term(k.clone(), a * c);
        }
        out
    }

    pub fn sub(&self, o: &Tensor) -> Tensor {
        match o.terms.values().next() {
            Some(c) => self.add(&o.scale(&-c.field().one())),
            None => self.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[Monomial]) -> Option<&Elem> {
        self.terms.get(key)
    }

    fn to_wire(&self) -> Vec<Value> {
        self.terms
            .iter()
            .map(|(k, c)| {
                let mut v: Vec<Value> = k.iter().map(|m| Value::String(m.to_string())).collect();
                v.push(Value::String(c.to_string()));
                Value::Array(v)
            })
            .collect()
    }

    fn from_wire(v: &Value, arity: usize, group: &GroupDescriptor, field: &Field, path: &str) -> Result<Tensor, HopfError> {
        let arr = v.as_array().ok_or_else(|| perr(path, "expected an array of terms"))?;
        let mut t = Tensor::zero(arity);
        for (i, term) in arr.iter().enumerate() {
            let p = format!("{path}[{i}]");
            let parts = term.as_array().ok_or_else(|| perr(&p, "expected an array"))?;
            if parts.len() != arity + 1 {
                return Err(perr(&p, format!("expected {} entries", arity + 1)));
            }
            let mut key = Vec::new();
            for (j, s) in parts[..arity].iter().enumerate() {
                let s = s.as_str().ok_or_else(|| perr(&format!("{p}[{j}]"), "expected a string"))?;
                key.push(Monomial::parse(s, group).map_err(|e| perr(&format!("{p}[{j}]"), e))?);
            }
            let c = match &parts[arity] {
                Value::String(s) => field.parse(s).map_err(|e| perr(&format!("{p}[{arity}]"), e.to_string()))?,
                Value::Number(n) => field
                    .parse(&n.to_string())
                    .map_err(|e| perr(&format!("{p}[{arity}]"), e.to_string()))?,
                _ => return Err(perr(&format!("{p}[{arity}]"), "expected a coefficient")),
            };
            t.add_term(key, c);
        }
        Ok(t)
    }
}

/// Algebra generators on which structure maps are specified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Coordinate character `e_i`, or its inverse for free coordinates.
    Char { index: usize, inverse: bool },
    Prim(usize),
    Odd,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Char { index, inverse: false } => write!(f, "e{index}"),
            Generator::Char { index, inverse: true } => write!(f, "e{index}^-1"),
            Generator::Prim(j) => write!(f, "t{j}"),
            Generator::Odd => write!(f, "z"),
        }
    }
}

impl Generator {
    fn parse(s: &str) -> Option<Generator> {
        if s == "z" {
            return Some(Generator::Odd);
        }
        if let Some(r) = s.strip_prefix('t') {
            return r.parse().ok().map(Generator::Prim);
        }
        let r = s.strip_prefix('e')?;
        match r.strip_suffix("^-1") {
            Some(i) => i.parse().ok().map(|index| Generator::Char { index, inverse: true }),
            None => r.parse().ok().map(|index| Generator::Char { index, inverse: false }),
        }
    }
}

/// The data `(g, x)` of the odd part.
#[derive(Clone, Debug, PartialEq)]
pub struct GxData {
    pub g: Character,
    pub x: LieFunctional,
}

#[derive(Clone, Debug)]
pub struct MonomialHopfSuperalgebra {
    pub field: Field,
    pub group: GroupDescriptor,
    pub odd: Option<GxData>,
    delta: BTreeMap<Generator, Tensor>,
    counit: BTreeMap<Generator, Elem>,
    antipode: BTreeMap<Generator, Tensor>,
}

/// Outcome of [`validate_gx`]: the pairing `<x, g>`, which is always zero
/// for accepted data.
#[derive(Clone, Debug, PartialEq)]
pub struct GxValidation {
    pub pairing_xg: Elem,
}

/// Accept `(g, x)` iff `x = 0` or `g^2 = 1`.
pub fn validate_gx(
    field: &Field,
    group: &GroupDescriptor,
    g: &Character,
    x: &LieFunctional,
) -> Result<GxValidation, HopfError> {
    group.check(g)?;
    x.validate(group, field)?;
    let g2 = group.mul(g, g)?;
    if !x.is_zero() && !group.is_identity(&g2) {
        return Err(HopfError::InvalidGx(format!(
            "x is nonzero but g = {g} does not square to 1"
        )));
    }
    let pairing_xg = x.pair_in(field, g);
    assert!(pairing_xg.is_zero(), "<x, g> must vanish for accepted (g, x)");
    Ok(GxValidation { pairing_xg })
}

impl MonomialHopfSuperalgebra {
    /// `K[G_a^k × D]` with no odd part.
    pub fn even(field: &Field, group: &GroupDescriptor) -> Result<Self, HopfError> {
        group.validate()?;
        let mut a = MonomialHopfSuperalgebra {
            field: field.clone(),
            group: group.clone(),
            odd: None,
            delta: BTreeMap::new(),
            counit: BTreeMap::new(),
            antipode: BTreeMap::new(),
        };
        a.install_standard_maps();
        Ok(a)
    }

    /// `K[G_{g,x}]`.
    pub fn ggx(field: &Field, group: &GroupDescriptor, g: &Character, x: &LieFunctional) -> Result<Self, HopfError> {
        validate_gx(field, group, g, x)?;
        let mut a = MonomialHopfSuperalgebra {
            field: field.clone(),
            group: group.clone(),
            odd: Some(GxData { g: g.clone(), x: x.clone() }),
            delta: BTreeMap::new(),
            counit: BTreeMap::new(),
            antipode: BTreeMap::new(),
        };
        a.install_standard_maps();
        Ok(a)
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for i in 0..self.group.rank() {
            out.push(Generator::Char { index: i, inverse: false });
            if i < self.group.free_rank {
                out.push(Generator::Char { index: i, inverse: true });
            }
        }
        for j in 0..self.group.additive_rank {
            out.push(Generator::Prim(j));
        }
        if self.odd.is_some() {
            out.push(Generator::Odd);
        }
        out
    }

    pub fn generator_monomial(&self, gen: Generator) -> Monomial {
        match gen {
            Generator::Char { index, inverse } => {
                let e = self.group.generator(index);
                let ch = if inverse { self.group.inverse(&e).unwrap() } else { e };
                self.mono(ch, false)
            }
            Generator::Prim(j) => {
                let mut t = vec![0; self.group.additive_rank];
                t[j] = 1;
                Monomial::new(self.group.identity(), t, false)
            }
            Generator::Odd => self.mono(self.group.identity(), true),
        }
    }

    pub fn mono(&self, ch: Character, z: bool) -> Monomial {
        Monomial::new(ch, vec![0; self.group.additive_rank], z)
    }

    pub fn one(&self) -> Monomial {
        self.mono(self.group.identity(), false)
    }

    fn g(&self) -> Character {
        self.odd.as_ref().map(|d| d.g.clone()).unwrap_or_else(|| self.group.identity())
    }

    fn install_standard_maps(&mut self) {
        let one = self.field.one();
        let g = self.g();
        let xs = self.odd.as_ref().map(|d| d.x.clone());
        for gen in self.generators() {
            let m = self.generator_monomial(gen);
            let (d, s) = match gen {
                Generator::Char { .. } => {
                    let h = m.ch.clone();
                    let mut d = Tensor::term(vec![m.clone(), m.clone()], one.clone());
                    if let Some(x) = &xs {
                        let a = x.pair_in(&self.field, &h);
                        let gh = self.group.mul(&g, &h).unwrap();
                        d.add_term(vec![self.mono(h.clone(), true), self.mono(gh, true)], a);
                    }
                    let s = Tensor::term(vec![self.mono(self.group.inverse(&h).unwrap(), false)], one.clone());
                    (d, s)
                }
                Generator::Prim(j) => {
                    let u = self.one();
                    let mut d = Tensor::term(vec![m.clone(), u.clone()], one.clone());
                    d.add_term(vec![u, m.clone()], one.clone());
                    if let Some(x) = &xs {
                        d.add_term(
                            vec![self.mono(self.group.identity(), true), self.mono(g.clone(), true)],
                            x.additive[j].clone(),
                        );
                    }
                    (d, Tensor::term(vec![m.clone()], -one.clone()))
                }
                Generator::Odd => {
                    let mut d = Tensor::term(vec![self.one(), m.clone()], one.clone());
                    d.add_term(vec![m.clone(), self.mono(g.clone(), false)], one.clone());
                    let ginv = self.group.inverse(&g).unwrap();
                    (d, Tensor::term(vec![self.mono(ginv, true)], -one.clone()))
                }
            };
            let e = if matches!(gen, Generator::Char { .. }) { one.clone() } else { self.field.zero() };
            self.delta.insert(gen, d);
            self.antipode.insert(gen, s);
            self.counit.insert(gen, e);
        }
    }

    /// Replace the coproduct of a generator (for testing the verifier).
    pub fn set_delta(&mut self, gen: Generator, image: Tensor) {
        self.delta.insert(gen, image);
    }

    pub fn set_counit(&mut self, gen: Generator, value: Elem) {
        self.counit.insert(gen, value);
    }

    pub fn set_antipode(&mut self, gen: Generator, image: Tensor) {
        self.antipode.insert(gen, image);
    }

    pub fn delta_of_generator(&self, gen: Generator) -> &Tensor {
        &self.delta[&gen]
    }

    /// Product of monomials; `None` when it vanishes (`z^2 = 0`). No sign
    /// arises since all generators except `z` are even.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        if a.z && b.z {
            return None;
        }
        let ch = self.group.mul(&a.ch, &b.ch).expect("monomial outside the algebra");
        let t = a.t.iter().zip(&b.t).map(|(x, y)| x + y).collect();
        Some(Monomial::new(ch, t, a.z || b.z))
    }

    /// Product in the `n`-fold tensor power, with Koszul signs.
    pub fn mul(&self, a: &Tensor, b: &Tensor) -> Tensor {
        assert_eq!(a.arity, b.arity, "arity mismatch");
        let n = a.arity;
        let mut out = Tensor::zero(n);
        for (ka, ca) in &a.terms {
            'pair: for (kb, cb) in &b.terms {
                let mut odd = false;
                for i in 0..n {
                    for j in i + 1..n {
                        odd ^= kb[i].z && ka[j].z;
                    }
                }
                let mut key = Vec::with_capacity(n);
                for i in 0..n {
                    match self.mul_monomials(&ka[i], &kb[i]) {
                        Some(m) => key.push(m),
                        None => continue 'pair,
                    }
                }
                let c = ca * cb;
                out.add_term(key, if odd { -c } else { c });
            }
        }
        out
    }

    pub fn unit(&self, arity: usize) -> Tensor {
        Tensor::term(vec![self.one(); arity], self.field.one())
    }

    /// Monomial as a word in generators.
    fn factor(&self, m: &Monomial) -> Vec<(Generator, u32)> {
        let mut out = Vec::new();
        for (i, a) in m.ch.0.iter().enumerate() {
            if *a > 0 {
                out.push((Generator::Char { index: i, inverse: false }, *a as u32));
            } else if *a < 0 {
                out.push((Generator::Char { index: i, inverse: true }, a.unsigned_abs() as u32));
            }
        }
        for (j, e) in m.t.iter().enumerate() {
            if *e > 0 {
                out.push((Generator::Prim(j), *e));
            }
        }
        if m.z {
            out.push((Generator::Odd, 1));
        }
        out
    }

    fn extend<F: Fn(Generator) -> Tensor>(&self, m: &Monomial, arity: usize, image: F) -> Tensor {
        let mut acc = self.unit(arity);
        for (gen, e) in self.factor(m) {
            let im = image(gen);
            for _ in 0..e {
                acc = self.mul(&acc, &im);
            }
        }
        acc
    }

    pub fn delta_monomial(&self, m: &Monomial) -> Tensor {
        self.extend(m, 2, |g| self.delta[&g].clone())
    }

    pub fn counit_monomial(&self, m: &Monomial) -> Elem {
        let mut acc = self.field.one();
        for (gen, e) in self.factor(m) {
            acc = &acc * &self.counit[&gen].pow(e as i64).unwrap();
        }
        acc
    }

    pub fn antipode_monomial(&self, m: &Monomial) -> Tensor {
        self.extend(m, 1, |g| self.antipode[&g].clone())
    }

    pub fn delta(&self, a: &Tensor) -> Tensor {
        assert_eq!(a.arity, 1);
        let mut out = Tensor::zero(2);
        for (k, c) in &a.terms {
            out = out.add(&self.delta_monomial(&k[0]).scale(c));
        }
        out
    }

    pub fn counit(&self, a: &Tensor) -> Elem {
        let mut acc = self.field.zero();
        for (k, c) in &a.terms {
            acc = &acc + &(c * &self.counit_monomial(&k[0]));
        }
        acc
    }

    pub fn antipode(&self, a: &Tensor) -> Tensor {
        let mut out = Tensor::zero(1);
        for (k, c) in &a.terms {
            out = out.add(&self.antipode_monomial(&k[0]).scale(c));
        }
        out
    }

    pub fn element(&self, m: &Monomial) -> Tensor {
        Tensor::term(vec![m.clone()], self.field.one())
    }

    /// The coproduct of an even monomial `b = h t^a` by the closed formula
    /// `Δ(b) = b_(1) ⊗ b_(3) + <x, b_(2)> b_(1) z ⊗ g b_(3) z`, with the
    /// Sweedler components taken in the purely even group algebra.
    pub fn delta_closed_form(&self, b: &Monomial) -> Tensor {
        assert!(!b.z, "closed form is for even monomials");
        let one = self.field.one();
        let k = self.group.additive_rank;
        // Δ_B^(2)(t^a) = Σ multinomial t^{a1} ⊗ t^{a2} ⊗ t^{a3}
        let mut triples: Vec<(Vec<u32>, Vec<u32>, Vec<u32>, Elem)> = vec![(vec![], vec![], vec![], one.clone())];
        for j in 0..k {
            let a = b.t[j];
            let mut next = Vec::new();
            for (x1, x2, x3, c) in &triples {
                for a1 in 0..=a {
                    for a2 in 0..=(a - a1) {
                        let a3 = a - a1 - a2;
                        let coef = binom(a, a1) * binom(a - a1, a2);
                        let mut y1 = x1.clone();
                        y1.push(a1);
                        let mut y2 = x2.clone();
                        y2.push(a2);
                        let mut y3 = x3.clone();
                        y3.push(a3);
                        next.push((y1, y2, y3, c * &self.field.from_bigint(&coef.into())));
                    }
                }
            }
            triples = next;
        }
        let mut out = Tensor::zero(2);
        let g = self.g();
        let h = b.ch.clone();
        for (a1, a2, a3, c) in triples {
            let b1 = Monomial::new(h.clone(), a1.clone(), false);
            let b3 = Monomial::new(h.clone(), a3.clone(), false);
            if a2.iter().all(|e| *e == 0) {
                out.add_term(vec![b1.clone(), b3.clone()], c.clone());
            }
            if let Some(d) = &self.odd {
                // <x, h t^{a2}>: the derivation x at the identity
                let deg: u32 = a2.iter().sum();
                let pairing = match deg {
                    0 => d.x.pair_in(&self.field, &h),
                    1 => d.x.additive[a2.iter().position(|e| *e == 1).unwrap()].clone(),
                    _ => self.field.zero(),
                };
                if !pairing.is_zero() {
                    let gh = self.group.mul(&g, &h).unwrap();
                    out.add_term(
                        vec![Monomial::new(h.clone(), a1, true), Monomial::new(gh, a3, true)],
                        &c * &pairing,
                    );
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut delta = serde_json::Map::new();
        let mut counit = serde_json::Map::new();
        let mut antipode = serde_json::Map::new();
        for gen in self.generators() {
            delta.insert(gen.to_string(), Value::Array(self.delta[&gen].to_wire()));
            counit.insert(gen.to_string(), Value::String(self.counit[&gen].to_string()));
            antipode.insert(gen.to_string(), Value::Array(self.antipode[&gen].to_wire()));
        }
        json!({
            "schema_version": 1,
            "field": self.field.descriptor(),
            "group": self.group,
            "g": self.odd.as_ref().map(|d| d.g.clone()),
            "x": self.odd.as_ref().map(|d| d.x.to_json()),
            "delta": delta,
            "counit": counit,
            "antipode": antipode,
        })
    }

    /// Read either `(g, x)` parameters or a full dump with structure maps.
    pub fn from_json(v: &Value) -> Result<Self, HopfError> {
        let params = GgxParams::from_json(v)?;
        let mut a = params.build()?;
        let group = a.group.clone();
        let field = a.field.clone();
        if let Some(d) = v.get("delta") {
            let obj = d.as_object().ok_or_else(|| perr("$.delta", "expected an object"))?;
            for (k, t) in obj {
                let path = format!("$.delta.{k}");
                let gen = Generator::parse(k).filter(|g| a.generators().contains(g)).ok_or_else(|| perr(&path, "unknown generator"))?;
                a.delta.insert(gen, Tensor::from_wire(t, 2, &group, &field, &path)?);
            }
        }
        if let Some(d) = v.get("antipode") {
            let obj = d.as_object().ok_or_else(|| perr("$.antipode", "expected an object"))?;
            for (k, t) in obj {
                let path = format!("$.antipode.{k}");
                let gen = Generator::parse(k).filter(|g| a.generators().contains(g)).ok_or_else(|| perr(&path, "unknown generator"))?;
                let wire: Vec<Value> = t
                    .as_array()
                    .ok_or_else(|| perr(&path, "expected an array"))?
                    .to_vec();
                a.antipode.insert(gen, Tensor::from_wire(&Value::Array(wire), 1, &group, &field, &path)?);
            }
        }
        if let Some(d) = v.get("counit") {
            let obj = d.as_object().ok_or_else(|| perr("$.counit", "expected an object"))?;
            for (k, s) in obj {
                let path = format!("$.counit.{k}");
                let gen = Generator::parse(k).filter(|g| a.generators().contains(g)).ok_or_else(|| perr(&path, "unknown generator"))?;
                let s = s.as_str().ok_or_else(|| perr(&path, "expected a string"))?;
                a.counit.insert(gen, field.parse(s).map_err(|e| perr(&path, e.to_string()))?);
            }
        }
        Ok(a)
    }
}

fn binom(n: u32, k: u32) -> u64 {
    let mut r = 1u64;
    for i in 0..k as u64 {
        r = r * (n as u64 - i) / (i + 1);
    }
    r
}

/// Input parameters `{"field", "group", "g", "x"}`; `g` and `x` may be omitted
/// for a purely even algebra.
#[derive(Clone, Debug)]
pub struct GgxParams {
    pub field: Field,
    pub group: GroupDescriptor,
    pub gx: Option<(Character, LieFunctional)>,
}

impl GgxParams {
    pub fn from_json(v: &Value) -> Result<GgxParams, HopfError> {
        Self::from_json_with_default(v, None)
    }

    pub fn from_json_with_default(v: &Value, default_field: Option<&Field>) -> Result<GgxParams, HopfError> {
        let field = match v.get("field") {
            Some(f) => {
                let d: FieldDescriptor = serde_json::from_value(f.clone()).map_err(|e| perr("$.field", e.to_string()))?;
                Field::new(d).map_err(|e| perr("$.field", e.to_string()))?
            }
            None => default_field.cloned().ok_or_else(|| perr("$.field", "missing field"))?,
        };
        let gv = v.get("group").ok_or_else(|| perr("$.group", "missing"))?;
        let group: GroupDescriptor = serde_json::from_value(gv.clone()).map_err(|e| perr("$.group", e.to_string()))?;
        group.validate().map_err(|e| perr("$.group", e.to_string()))?;
        let gx = match (v.get("g").filter(|x| !x.is_null()), v.get("x").filter(|x| !x.is_null())) {
            (None, None) => None,
            (Some(g), x) => {
                let g = group.parse_character(g).map_err(|e| perr("$.g", e.to_string()))?;
                let x = match x {
                    Some(x) => {
                        let j: LieFunctionalJson = serde_json::from_value(x.clone()).map_err(|e| perr("$.x", e.to_string()))?;
                        LieFunctional::from_json(&j, &group, &field).map_err(|e| perr("$.x", e.to_string()))?
                    }
                    None => LieFunctional::zero(&group, &field),
                };
                Some((g, x))
            }
            (None, Some(_)) => return Err(perr("$.g", "x given without g")),
        };
        Ok(GgxParams { field, group, gx })
    }

    pub fn build(&self) -> Result<MonomialHopfSuperalgebra, HopfError> {
        match &self.gx {
            Some((g, x)) => MonomialHopfSuperalgebra::ggx(&self.field, &self.group, g, x),
            None => MonomialHopfSuperalgebra::even(&self.field, &self.group),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.descriptor(),
            "group": self.group,
            "g": self.gx.as_ref().map(|(g, _)| g.clone()),
            "x": self.gx.as_ref().map(|(_, x)| x.to_json()),
        })
    }
}

/// One axiom family with an optional failing witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfReport {
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<AxiomCheck>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Verifier<'a> {
    a: &'a MonomialHopfSuperalgebra,
    cache: HashMap<Monomial, Tensor>,
}

impl Verifier<'_> {
    fn delta_m(&mut self, m: &Monomial) -> Tensor {
        if let Some(t) = self.cache.get(m) {
            return t.clone();
        }
        let t = self.a.delta_monomial(m);
        self.cache.insert(m.clone(), t.clone());
        t
    }

    fn delta(&mut self, x: &Tensor) -> Tensor {
        let mut out = Tensor::zero(2);
        for (k, c) in &x.terms {
            out = out.add(&self.delta_m(&k[0]).scale(c));
        }
        out
    }

    /// Apply Δ to tensor slot `slot` of a 2-tensor.
    fn delta_slot(&mut self, t: &Tensor, slot: usize) -> Tensor {
        let mut out = Tensor::zero(3);
        for (k, c) in &t.terms {
            let d = self.delta_m(&k[slot]);
            for (dk, dc) in &d.terms {
                let key = if slot == 0 {
                    vec![dk[0].clone(), dk[1].clone(), k[1].clone()]
                } else {
                    vec![k[0].clone(), dk[0].clone(), dk[1].clone()]
                };
                out.add_term(key, c * dc);
            }
        }
        out
    }

    fn coassoc(&mut self, x: &Tensor) -> bool {
        let d = self.delta(x);
        self.delta_slot(&d, 0) == self.delta_slot(&d, 1)
    }

    fn counit_left(&mut self, x: &Tensor) -> bool {
        let d = self.delta(x);
        let mut out = Tensor::zero(1);
        for (k, c) in &d.terms {
            out.add_term(vec![k[1].clone()], c * &self.a.counit_monomial(&k[0]));
        }
        &out == x
    }

    fn counit_right(&mut self, x: &Tensor) -> bool {
        let d = self.delta(x);
        let mut out = Tensor::zero(1);
        for (k, c) in &d.terms {
            out.add_term(vec![k[0].clone()], c * &self.a.counit_monomial(&k[1]));
        }
        &out == x
    }

    fn antipode_law(&mut self, x: &Tensor, left: bool) -> bool {
        let d = self.delta(x);
        let mut out = Tensor::zero(1);
        for (k, c) in &d.terms {
            let (l, r) = if left {
                (self.a.antipode_monomial(&k[0]), self.a.element(&k[1]))
            } else {
                (self.a.element(&k[0]), self.a.antipode_monomial(&k[1]))
            };
            out = out.add(&self.a.mul(&l, &r).scale(c));
        }
        let expect = self.a.unit(1).scale(&self.a.counit(x));
        out == expect
    }
}

fn random_monomial<R: Rng>(a: &MonomialHopfSuperalgebra, rng: &mut R) -> Monomial {
    let grp = &a.group;
    let raw: Vec<i64> = (0..grp.rank())
        .map(|i| {
            if i < grp.free_rank {
                rng.gen_range(-2..=2)
            } else {
                rng.gen_range(0..grp.torsion[i - grp.free_rank] as i64)
            }
        })
        .collect();
    let t = (0..grp.additive_rank).map(|_| rng.gen_range(0..=2)).collect();
    let z = a.odd.is_some() && rng.gen_bool(0.5);
    Monomial::new(grp.reduce(&raw).unwrap(), t, z)
}

fn random_element<R: Rng>(a: &MonomialHopfSuperalgebra, rng: &mut R) -> Tensor {
    let mut t = Tensor::zero(1);
    for _ in 0..rng.gen_range(1..=2) {
        let mut c = a.field.random_elem(rng);
        if c.is_zero() {
            c = a.field.one();
        }
        t.add_term(vec![random_monomial(a, rng)], c);
    }
    t
}

/// Check the Hopf superalgebra axioms on generators, defining relations and
/// `samples` random elements drawn from a seeded generator.
pub fn verify_hopf_axioms(a: &MonomialHopfSuperalgebra, samples: usize, seed: u64) -> HopfReport {
    let mut v = Verifier { a, cache: HashMap::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks: Vec<AxiomCheck> = Vec::new();
    let mut record = |name: &str, witness: Option<String>| {
        checks.push(AxiomCheck { name: name.to_string(), passed: witness.is_none(), witness });
    };

    // relations: Δ, ε and S must respect z^2 = 0, e e^-1 = 1 and e^n = 1
    let mut rel_witness = None;
    let gens = a.generators();
    let mut relations: Vec<(String, Vec<(Generator, u32)>)> = Vec::new();
    if a.odd.is_some() {
        relations.push(("z^2".into(), vec![(Generator::Odd, 2)]));
    }
    for i in 0..a.group.rank() {
        if i < a.group.free_rank {
            relations.push((
                format!("e{i}*e{i}^-1"),
                vec![(Generator::Char { index: i, inverse: false }, 1), (Generator::Char { index: i, inverse: true }, 1)],
            ));
        } else {
            let n = a.group.torsion[i - a.group.free_rank] as u32;
            relations.push((format!("e{i}^{n}"), vec![(Generator::Char { index: i, inverse: false }, n)]));
        }
    }
    for (name, word) in &relations {
        let zero_rel = name == "z^2";
        let mut d = a.unit(2);
        let mut s = a.unit(1);
        let mut e = a.field.one();
        for (gen, k) in word {
            for _ in 0..*k {
                d = a.mul(&d, &a.delta[gen]);
                s = a.mul(&s, &a.antipode[gen]);
                e = &e * &a.counit[gen];
            }
        }
        let ok = if zero_rel {
            d.is_zero() && s.is_zero() && e.is_zero()
        } else {
            d == a.unit(2) && s == a.unit(1) && e.is_one()
        };
        if !ok && rel_witness.is_none() {
            rel_witness = Some(name.clone());
        }
    }
    record("relations", rel_witness);

    // parity: Δ and S are even
    let mut par = None;
    for gen in &gens {
        let m = a.generator_monomial(*gen);
        let bad_d = a.delta[gen].terms.keys().any(|k| k[0].parity().add(k[1].parity()) != m.parity());
        let bad_s = a.antipode[gen].terms.keys().any(|k| k[0].parity() != m.parity());
        let bad_e = m.z && !a.counit[gen].is_zero();
        if (bad_d || bad_s || bad_e) && par.is_none() {
            par = Some(m.to_string());
        }
    }
    record("parity", par);

    let mut pool: Vec<Tensor> = gens.iter().map(|g| a.element(&a.generator_monomial(*g))).collect();
    for _ in 0..samples {
        pool.push(random_element(a, &mut rng));
    }
    let wit = |x: &Tensor| {
        if x.terms.len() == 1 {
            let (k, c) = x.terms.iter().next().unwrap();
            if c.is_one() {
                return k[0].to_string();
            }
        }
        x.to_string()
    };

    let mut w = None;
    for x in &pool {
        if !v.coassoc(x) {
            w = Some(wit(x));
            break;
        }
    }
    record("coassociativity", w);

    let mut w = None;
    for x in &pool {
        if !v.counit_left(x) || !v.counit_right(x) {
            w = Some(wit(x));
            break;
        }
    }
    record("counit", w);

    let mut w = None;
    for x in &pool {
        if !v.antipode_law(x, true) || !v.antipode_law(x, false) {
            w = Some(wit(x));
            break;
        }
    }
    record("antipode", w);

    // multiplicativity and super-commutativity on random pairs of monomials
    let mut wd = None;
    let mut we = None;
    let mut ws = None;
    let mut wc = None;
    let mut pairs: Vec<(Monomial, Monomial)> = Vec::new();
    for g1 in &gens {
        for g2 in &gens {
            pairs.push((a.generator_monomial(*g1), a.generator_monomial(*g2)));
        }
    }
    for _ in 0..samples {
        pairs.push((random_monomial(a, &mut rng), random_monomial(a, &mut rng)));
    }
    for (m1, m2) in &pairs {
        let odd = m1.z && m2.z;
        let prod = a.mul_monomials(m1, m2);
        let name = format!("{m1} * {m2}");
        let d_prod = match &prod {
            Some(p) => v.delta_m(p),
            None => Tensor::zero(2),
        };
        let d1 = v.delta_m(m1);
        let d2 = v.delta_m(m2);
        if wd.is_none() && a.mul(&d1, &d2) != d_prod {
            wd = Some(name.clone());
        }
        let e_prod = prod.as_ref().map(|p| a.counit_monomial(p)).unwrap_or_else(|| a.field.zero());
        if we.is_none() && &a.counit_monomial(m1) * &a.counit_monomial(m2) != e_prod {
            we = Some(name.clone());
        }
        let s_prod = prod.as_ref().map(|p| a.antipode_monomial(p)).unwrap_or_else(|| Tensor::zero(1));
        let s21 = a.mul(&a.antipode_monomial(m2), &a.antipode_monomial(m1));
        let s21 = if odd { s21.scale(&-a.field.one()) } else { s21 };
        if ws.is_none() && s21 != s_prod {
            ws = Some(name.clone());
        }
        let ab = a.mul(&a.element(m1), &a.element(m2));
        let ba = a.mul(&a.element(m2), &a.element(m1));
        let ba = if odd { ba.scale(&-a.field.one()) } else { ba };
        if wc.is_none() && ab != ba {
            wc = Some(name);
        }
    }
    record("coproduct_multiplicative", wd);
    record("counit_multiplicative", we);
    record("antipode_antimultiplicative", ws);
    record("supercommutative", wc);

    HopfReport { samples, seed, checks }
}

/// Result of a grouplike search inside one character.
#[derive(Clone, Debug, PartialEq)]
pub enum GrouplikeSearch {
    Found(Vec<Tensor>),
    /// A quadratic condition needs a square root the field cannot decide.
    Undecided { character: Character, discriminant: Elem },
}

fn window_chars(a: &MonomialHopfSuperalgebra, window: Option<i64>) -> Result<Vec<Character>, HopfError> {
    match window {
        Some(b) => Ok(a.group.window(b)),
        None if a.group.free_rank == 0 => Ok(a.group.window(0)),
        None => Err(HopfError::WindowRequired),
    }
}

fn t_exponents(k: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=bound).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().sum::<u32>() <= bound);
    out
}

/// Monomials with character in the window and t-degree at most `degree_bound`.
pub fn search_space(a: &MonomialHopfSuperalgebra, window: Option<i64>, degree_bound: u32) -> Result<Vec<Monomial>, HopfError> {
    let mut out = Vec::new();
    for h in window_chars(a, window)? {
        for t in t_exponents(a.group.additive_rank, degree_bound) {
            out.push(Monomial::new(h.clone(), t.clone(), false));
            if a.odd.is_some() {
                out.push(Monomial::new(h.clone(), t, true));
            }
        }
    }
    out.sort();
    Ok(out)
}

fn is_filtered(a: &MonomialHopfSuperalgebra) -> bool {
    a.generators().iter().all(|g| {
        let deg = a.generator_monomial(*g).t_degree();
        a.delta[g].terms.keys().all(|k| k[0].t_degree() + k[1].t_degree() <= deg)
    })
}

/// Grouplike elements in the character window.
///
/// A grouplike `a` with `Δ(a) = a⊗a` has all its left tensor factors in
/// `Ka`; since left factors of `Δ(h·…)` keep the character `h`, `a` lives in
/// one character, and when `Δ` is filtered by t-degree the top-degree part
/// of `a` must vanish unless it is constant. The remaining candidates
/// `h + s·hz` give polynomial equations in `s` of degree at most two.
pub fn find_grouplikes(
    a: &MonomialHopfSuperalgebra,
    window: Option<i64>,
    homogeneous_only: bool,
) -> Result<GrouplikeSearch, HopfError> {
    if !is_filtered(a) {
        return Err(HopfError::NotFiltered);
    }
    let f = &a.field;
    let mut found = Vec::new();
    for h in window_chars(a, window)? {
        let mh = a.mono(h.clone(), false);
        let dh = a.delta_monomial(&mh);
        if a.odd.is_none() {
            if dh == Tensor::term(vec![mh.clone(), mh.clone()], f.one()) {
                found.push(a.element(&mh));
            }
            continue;
        }
        let mz = a.mono(h.clone(), true);
        let dz = a.delta_monomial(&mz);
        // Δ(h + s hz) - (h + s hz)⊗(h + s hz) = c0 + c1 s + c2 s^2
        let c0 = dh.sub(&Tensor::term(vec![mh.clone(), mh.clone()], f.one()));
        let mut c1 = dz.clone();
        c1.add_term(vec![mh.clone(), mz.clone()], -f.one());
        c1.add_term(vec![mz.clone(), mh.clone()], -f.one());
        let c2 = Tensor::term(vec![mz.clone(), mz.clone()], -f.one());
        let keys: BTreeSet<Vec<Monomial>> =
            c0.terms.keys().chain(c1.terms.keys()).chain(c2.terms.keys()).cloned().collect();
        let mut gcd = UPoly::zero(f);
        for k in &keys {
            let get = |t: &Tensor| t.coeff(k).cloned().unwrap_or_else(|| f.zero());
            let p = UPoly::new(f, vec![get(&c0), get(&c1), get(&c2)]);
            gcd = gcd.gcd(&p);
        }
        let roots: Vec<Elem> = match gcd.degree() {
            None => return Err(HopfError::InvalidGx("grouplike equations are degenerate".into())),
            Some(0) => vec![],
            Some(1) => vec![-gcd.coeff(0)],
            Some(_) => {
                // monic s^2 + b s + c
                let b = gcd.coeff(1);
                let c = gcd.coeff(0);
                let two = f.from_int(2);
                let disc = &(&b * &b) - &(&f.from_int(4) * &c);
                match disc.is_square() {
                    Ok(Some(r)) => {
                        let mut v = vec![
                            (&-&b + &r).checked_div(&two)?,
                            (&-&b - &r).checked_div(&two)?,
                        ];
                        v.dedup();
                        v
                    }
                    Ok(None) => vec![],
                    Err(FieldError::Unsupported(_)) if !homogeneous_only => {
                        return Ok(GrouplikeSearch::Undecided { character: h, discriminant: disc })
                    }
                    Err(FieldError::Unsupported(_)) => vec![],
                    Err(e) => return Err(e.into()),
                }
            }
        };
        for s in roots {
            if homogeneous_only && !s.is_zero() {
                continue;
            }
            let mut el = a.element(&mh);
            el.add_term(vec![mz.clone()], s);
            found.push(el);
        }
    }
    Ok(GrouplikeSearch::Found(found))
}

/// Solve `Δ(a) = l⊗a + a⊗r` over the search space.
fn solve_skew(a: &MonomialHopfSuperalgebra, space: &[Monomial], l: &Monomial, r: &Monomial) -> Vec<Tensor> {
    let f = &a.field;
    let mut rows: BTreeMap<Vec<Monomial>, BTreeMap<usize, Elem>> = BTreeMap::new();
    for (j, m) in space.iter().enumerate() {
        let mut d = a.delta_monomial(m);
        d.add_term(vec![l.clone(), m.clone()], -f.one());
        d.add_term(vec![m.clone(), r.clone()], -f.one());
        for (k, c) in d.terms {
            rows.entry(k).or_default().insert(j, c);
        }
    }
    let mut mat = SparseMatrix::zeros(f, rows.len(), space.len());
    for (i, (_, row)) in rows.into_iter().enumerate() {
        for (j, c) in row {
            mat.set(i, j, c);
        }
    }
    mat.kernel()
        .into_iter()
        .map(|v| {
            let mut t = Tensor::zero(1);
            for (j, c) in v.into_iter().enumerate() {
                t.add_term(vec![space[j].clone()], c);
            }
            t
        })
        .collect()
}

/// Basis of the primitive elements in the search space.
pub fn find_primitives(a: &MonomialHopfSuperalgebra, window: Option<i64>, degree_bound: u32) -> Result<Vec<Tensor>, HopfError> {
    let space = search_space(a, window, degree_bound)?;
    let one = a.one();
    Ok(solve_skew(a, &space, &one, &one))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SkewPrimitives {
    pub left: Character,
    pub right: Character,
    /// Basis of the skew-primitives modulo `K(left - right)`.
    pub basis: Vec<Tensor>,
}

/// `(l, r)`-skew-primitives for homogeneous grouplike characters `l, r` in the window.
pub fn find_skew_primitives(a: &MonomialHopfSuperalgebra, window: Option<i64>, degree_bound: u32) -> Result<Vec<SkewPrimitives>, HopfError> {
    let space = search_space(a, window, degree_bound)?;
    let gl: Vec<Character> = match find_grouplikes(a, window, true)? {
        GrouplikeSearch::Found(v) => v.iter().map(|t| t.terms.keys().next().unwrap()[0].ch.clone()).collect(),
        GrouplikeSearch::Undecided { .. } => unreachable!(),
    };
    let f = &a.field;
    let mut out = Vec::new();
    for l in &gl {
        for r in &gl {
            let ml = a.mono(l.clone(), false);
            let mr = a.mono(r.clone(), false);
            let sols = solve_skew(a, &space, &ml, &mr);
            let trivial = if l == r {
                vec![]
            } else {
                let mut t = a.element(&ml);
                t.add_term(vec![mr.clone()], -f.one());
                vec![t]
            };
            // quotient by the trivial solutions
            let mut basis: Vec<Tensor> = Vec::new();
            let vec_of = |t: &Tensor| -> Vec<Elem> {
                space.iter().map(|m| t.coeff(std::slice::from_ref(m)).cloned().unwrap_or_else(|| f.zero())).collect()
            };
            let mut acc: Vec<Vec<Elem>> = trivial.iter().map(vec_of).collect();
            for s in sols {
                let v = vec_of(&s);
                if !crate::superlin::in_span(f, space.len(), &acc, &v) {
                    acc.push(v);
                    basis.push(s);
                }
            }
            if !basis.is_empty() {
                out.push(SkewPrimitives { left: l.clone(), right: r.clone(), basis });
            }
        }
    }
    Ok(out)
}

/// Coradical of `K[D_{g,x}]` inside a character window, with the resulting
/// unipotent radical.
#[derive(Clone, Debug, PartialEq)]
pub struct CoradicalReport {
    /// Monomials spanning the coradical inside the window.
    pub basis: Vec<Monomial>,
    /// Characters `h` whose `Kh` is a simple subcoalgebra.
    pub grouplike: Vec<Character>,
    /// Characters `h` for which `span{h, hz}` is a simple right coideal.
    pub two_dimensional: Vec<Character>,
    /// Presentation of the unipotent radical: `K[X'] ⊗ ∧(z')`.
    pub unipotent_character_group: crate::chargroup::GroupDescriptor,
    pub unipotent_odd_generators: usize,
    pub unipotent_trivial: bool,
    pub quotient_purely_even_diagonalizable: bool,
}

pub fn coradical_dgx(a: &MonomialHopfSuperalgebra, window: Option<i64>) -> Result<CoradicalReport, HopfError> {
    if !a.group.is_diagonalizable() {
        return Err(HopfError::NotDiagonalizable);
    }
    let chars = window_chars(a, window)?;
    let inside: BTreeSet<Character> = chars.iter().cloned().collect();
    let mut span: BTreeSet<Monomial> = BTreeSet::new();
    let mut grouplike = Vec::new();
    let mut two = Vec::new();
    for h in &chars {
        let mh = a.mono(h.clone(), false);
        let dh = a.delta_monomial(&mh);
        if dh.terms.keys().all(|k| k[0] == mh) {
            grouplike.push(h.clone());
            span.extend(dh.terms.keys().map(|k| k[1].clone()));
            continue;
        }
        let mz = a.mono(h.clone(), true);
        let dz = a.delta_monomial(&mz);
        let coideal = dh.terms.keys().chain(dz.terms.keys()).all(|k| k[0] == mh || k[0] == mz);
        let has_line = dz.terms.keys().all(|k| k[0] == mz);
        if coideal && !has_line {
            two.push(h.clone());
            span.extend(dh.terms.keys().chain(dz.terms.keys()).map(|k| k[1].clone()));
        }
    }
    span.retain(|m| inside.contains(&m.ch));
    // K[G_u] = K[G] / (C^+): characters in C collapse to 1, z dies if some hz lies in C
    let collapsed: Vec<Character> = span.iter().filter(|m| !m.z).map(|m| m.ch.clone()).collect();
    let q = SubgroupDescriptor::new(&a.group, collapsed)?.quotient();
    let z_dies = span.iter().any(|m| m.z);
    let odd_left = usize::from(a.odd.is_some() && !z_dies);
    let xq = q.target().clone();
    let trivial = xq.rank() == 0 && odd_left == 0;
    let purely_even = a.odd.is_none() || odd_left == 1;
    Ok(CoradicalReport {
        basis: span.into_iter().collect(),
        grouplike,
        two_dimensional: two,
        unipotent_character_group: xq,
        unipotent_odd_generators: odd_left,
        unipotent_trivial: trivial,
        quotient_purely_even_diagonalizable: purely_even,
    })
}

/// `Y = {h : <x, h> = 0}` for the algebra's `x`.
pub fn grouplike_subgroup(a: &MonomialHopfSuperalgebra) -> Result<SubgroupDescriptor, HopfError> {
    match &a.odd {
        Some(d) => Ok(subgroup_kernel(&a.group, &a.field, &d.x)?),
        None => Ok(SubgroupDescriptor::whole(&a.group)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn gm_y(field: &Field, g: i64, y: i64) -> MonomialHopfSuperalgebra {
        let grp = GroupDescriptor::gm();
        let x = LieFunctional::from_ints(&grp, field, &[y], &[], &[]).unwrap();
        MonomialHopfSuperalgebra::ggx(field, &grp, &Character(vec![g]), &x).unwrap()
    }

    #[test]
    fn validation_rule() {
        let grp = GroupDescriptor::gm();
        let f = q();
        let y = LieFunctional::from_ints(&grp, &f, &[1], &[], &[]).unwrap();
        assert!(validate_gx(&f, &grp, &Character(vec![1]), &y).is_err());
        assert!(validate_gx(&f, &grp, &Character(vec![0]), &y).is_ok());
        let zero = LieFunctional::zero(&grp, &f);
        assert!(validate_gx(&f, &grp, &Character(vec![1]), &zero).is_ok());
        let mu4 = GroupDescriptor::mu(4);
        let f3 = Field::prime(5).unwrap();
        let z4 = LieFunctional::zero(&mu4, &f3);
        assert!(validate_gx(&f3, &mu4, &Character(vec![2]), &z4).is_ok());
    }

    #[test]
    fn standard_coproducts() {
        let a = gm_y(&q(), 0, 1);
        let h = a.mono(Character(vec![3]), false);
        let d = a.delta_monomial(&h);
        assert_eq!(d.terms.len(), 2);
        let hz = a.mono(Character(vec![3]), true);
        assert_eq!(d.coeff(&[hz.clone(), hz]), Some(&q().from_int(3)));
    }

    #[test]
    fn axioms_hold_for_standard_algebras() {
        let f = q();
        for a in [gm_y(&f, 0, 1), gm_y(&f, 1, 0), gm_y(&f, 0, 0)] {
            let r = verify_hopf_axioms(&a, 30, 7);
            assert!(r.passed(), "{:?}", r.checks);
        }
        let grp = GroupDescriptor::new(1, vec![], 1).unwrap();
        let x = LieFunctional::from_ints(&grp, &f, &[2], &[], &[3]).unwrap();
        let a = MonomialHopfSuperalgebra::ggx(&f, &grp, &Character(vec![0]), &x).unwrap();
        let r = verify_hopf_axioms(&a, 30, 1);
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn tampered_coproduct_fails_counit_at_z() {
        let mut a = gm_y(&q(), 0, 1);
        let z = a.generator_monomial(Generator::Odd);
        a.set_delta(Generator::Odd, Tensor::term(vec![a.one(), z], q().one()));
        let r = verify_hopf_axioms(&a, 10, 3);
        assert!(!r.passed());
        let c = r.check("counit").unwrap();
        assert!(!c.passed);
        assert_eq!(c.witness.as_deref(), Some("z"));
    }

    #[test]
    fn closed_form_matches_multiplicative_extension() {
        let f = Field::prime(5).unwrap();
        let grp = GroupDescriptor::new(1, vec![2], 2).unwrap();
        let x = LieFunctional::from_ints(&grp, &f, &[2], &[0], &[1, 3]).unwrap();
        let a = MonomialHopfSuperalgebra::ggx(&f, &grp, &Character(vec![0, 1]), &x).unwrap();
        for m in search_space(&a, Some(1), 3).unwrap() {
            if !m.z {
                assert_eq!(a.delta_closed_form(&m), a.delta_monomial(&m), "{m}");
            }
        }
    }

    #[test]
    fn monomial_strings_round_trip() {
        let grp = GroupDescriptor::new(1, vec![4], 2).unwrap();
        for s in ["1", "z", "h[1,3]*t0^2*z", "t1", "h[-2,0]"] {
            let m = Monomial::parse(s, &grp).unwrap();
            assert_eq!(m.to_string(), s);
        }
        assert!(Monomial::parse("w", &grp).is_err());
    }

    #[test]
    fn json_dump_round_trips() {
        let a = gm_y(&Field::prime(5).unwrap(), 0, 2);
        let v = a.to_json();
        let b = MonomialHopfSuperalgebra::from_json(&v).unwrap();
        assert_eq!(b.to_json(), v);
        assert!(verify_hopf_axioms(&b, 5, 0).passed());
        let dz = &v["delta"]["z"];
        assert_eq!(dz, &json!([["1", "z", "1"], ["z", "1", "1"]]));
    }

    #[test]
    fn grouplikes_are_the_kernel_characters() {
        let f = Field::prime(5).unwrap();
        let a = gm_y(&f, 0, 1);
        let GrouplikeSearch::Found(gl) = find_grouplikes(&a, Some(6), true).unwrap() else { panic!() };
        let chars: Vec<i64> = gl.iter().map(|t| t.terms.keys().next().unwrap()[0].ch.0[0]).collect();
        assert_eq!(chars, vec![-5, 0, 5]);
    }

    #[test]
    fn inhomogeneous_grouplikes() {
        // <x, h> = 4 is a square: h ± 2 hz are grouplike
        let a = gm_y(&q(), 0, 4);
        let GrouplikeSearch::Found(gl) = find_grouplikes(&a, Some(1), false).unwrap() else { panic!() };
        let h1: Vec<&Tensor> = gl.iter().filter(|t| t.terms.keys().any(|k| k[0].ch.0 == vec![1])).collect();
        assert_eq!(h1.len(), 2);
        for t in h1 {
            let d = a.delta(t);
            let mut sq = Tensor::zero(2);
            for (k1, c1) in &t.terms {
                for (k2, c2) in &t.terms {
                    sq.add_term(vec![k1[0].clone(), k2[0].clone()], c1 * c2);
                }
            }
            assert_eq!(d, sq);
        }
        // <x, h> = 2 is not a square over Q
        let b = gm_y(&q(), 0, 2);
        let GrouplikeSearch::Found(gl) = find_grouplikes(&b, Some(1), false).unwrap() else { panic!() };
        assert_eq!(gl.len(), 1);
    }

    #[test]
    fn primitives() {
        let f = q();
        let a = MonomialHopfSuperalgebra::even(&f, &GroupDescriptor::ga()).unwrap();
        let p = find_primitives(&a, None, 3).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].terms.keys().next().unwrap()[0].to_string(), "t0");
        let f5 = Field::prime(5).unwrap();
        let b = MonomialHopfSuperalgebra::even(&f5, &GroupDescriptor::ga()).unwrap();
        assert_eq!(find_primitives(&b, None, 5).unwrap().len(), 2);
    }

    #[test]
    fn z_is_skew_primitive() {
        let f = Field::prime(5).unwrap();
        let grp = GroupDescriptor::mu(4);
        let a = MonomialHopfSuperalgebra::ggx(&f, &grp, &Character(vec![2]), &LieFunctional::zero(&grp, &f)).unwrap();
        let sk = find_skew_primitives(&a, None, 0).unwrap();
        let hit = sk.iter().find(|s| s.left.0 == vec![0] && s.right.0 == vec![2]).unwrap();
        assert_eq!(hit.basis.len(), 1);
    }

    #[test]
    fn coradical_verdicts() {
        let f = q();
        let a = gm_y(&f, 0, 1);
        assert_eq!(coradical_dgx(&a, None), Err(HopfError::WindowRequired));
        let r = coradical_dgx(&a, Some(2)).unwrap();
        assert!(r.unipotent_trivial);
        assert!(!r.quotient_purely_even_diagonalizable);
        assert_eq!(r.grouplike, vec![Character(vec![0])]);
        let b = gm_y(&f, 1, 0);
        let r = coradical_dgx(&b, Some(2)).unwrap();
        assert!(!r.unipotent_trivial);
        assert_eq!(r.unipotent_odd_generators, 1);
        assert!(r.quotient_purely_even_diagonalizable);
        let mu1 = GroupDescriptor::mu(1);
        let c = MonomialHopfSuperalgebra::ggx(&f, &mu1, &Character(vec![0]), &LieFunctional::zero(&mu1, &f)).unwrap();
        let r = coradical_dgx(&c, None).unwrap();
        assert_eq!(r.basis.len(), 1);
        assert_eq!(r.unipotent_odd_generators, 1);
    }
}
