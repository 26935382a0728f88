//! Character groups of groups `G_a^k × D` with `D` diagonalizable, and their
//! Lie functionals.
//!
//! `X(D) ≅ Z^r ⊕ ⊕ Z/n_i` is stored as an exponent vector: the first `r`
//! coordinates are free, the rest are reduced into `0..n_i`. The additive
//! factors contribute no characters, only Lie coordinates.

use crate::field::{Elem, Field, FieldError};
use crate::lattice::{self, IMat};
use crate::superlin::SparseMatrix;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChargroupError {
    #[error("character {0} does not belong to group {1}")]
    GroupMismatch(String, String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid Lie functional: {0}")]
    InvalidFunctional(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type ChargroupResult<T> = Result<T, ChargroupError>;

/// `{"free_rank":1,"torsion":[4],"additive_rank":1}` describes `G_m × μ_4 × G_a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
    #[serde(default)]
    pub additive_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(pub Vec<i64>);

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharOrder {
    Infinite,
    Finite(u64),
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for _ in 0..self.additive_rank {
            parts.push("G_a".to_string());
        }
        for _ in 0..self.free_rank {
            parts.push("G_m".to_string());
        }
        for n in &self.torsion {
            parts.push(format!("mu_{n}"));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

impl GroupDescriptor {
    pub fn new(free_rank: usize, torsion: Vec<u64>, additive_rank: usize) -> ChargroupResult<Self> {
        let g = GroupDescriptor {
            free_rank,
            torsion,
            additive_rank,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn gm() -> Self {
        GroupDescriptor { free_rank: 1, torsion: vec![], additive_rank: 0 }
    }

    pub fn ga() -> Self {
        GroupDescriptor { free_rank: 0, torsion: vec![], additive_rank: 1 }
    }

    pub fn mu(n: u64) -> Self {
        GroupDescriptor { free_rank: 0, torsion: vec![n], additive_rank: 0 }
    }

    pub fn trivial() -> Self {
        GroupDescriptor { free_rank: 0, torsion: vec![], additive_rank: 0 }
    }

    pub fn validate(&self) -> ChargroupResult<()> {
        if self.torsion.contains(&0) {
            return Err(ChargroupError::InvalidGroup("torsion orders must be positive".into()));
        }
        Ok(())
    }

    /// Number of character coordinates.
    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.additive_rank == 0
    }

    /// Same group without its additive factors.
    pub fn diagonal_part(&self) -> GroupDescriptor {
        GroupDescriptor {
            free_rank: self.free_rank,
            torsion: self.torsion.clone(),
            additive_rank: 0,
        }
    }

    pub fn is_finite_diagonal(&self) -> bool {
        self.free_rank == 0
    }

    pub fn reduce(&self, raw: &[i64]) -> ChargroupResult<Character> {
        if raw.len() != self.rank() {
            return Err(ChargroupError::GroupMismatch(format!("{raw:?}"), self.to_string()));
        }
        let mut v = raw.to_vec();
        for (i, n) in self.torsion.iter().enumerate() {
            v[self.free_rank + i] = v[self.free_rank + i].rem_euclid(*n as i64);
        }
        Ok(Character(v))
    }

    pub(crate) fn reduce_wide(&self, raw: &[i128]) -> Character {
        let mut v: Vec<i64> = Vec::with_capacity(raw.len());
        for (i, a) in raw.iter().enumerate() {
            if i >= self.free_rank {
                let n = self.torsion[i - self.free_rank] as i128;
                v.push(a.rem_euclid(n) as i64);
            } else {
                v.push(i64::try_from(*a).expect("character exponent overflow"));
            }
        }
        Character(v)
    }

    pub fn check(&self, h: &Character) -> ChargroupResult<()> {
        if h.0.len() != self.rank()
            || self
                .torsion
                .iter()
                .enumerate()
                .any(|(i, n)| !(0..*n as i64).contains(&h.0[self.free_rank + i]))
        {
            return Err(ChargroupError::GroupMismatch(h.to_string(), self.to_string()));
        }
        Ok(())
    }

    pub fn identity(&self) -> Character {
        Character(vec![0; self.rank()])
    }

    /// The `i`-th coordinate generator.
    pub fn generator(&self, i: usize) -> Character {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        self.reduce(&v).unwrap()
    }

    pub fn mul(&self, a: &Character, b: &Character) -> ChargroupResult<Character> {
        self.check(a)?;
        self.check(b)?;
        let raw: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.reduce(&raw)
    }

    pub fn inverse(&self, a: &Character) -> ChargroupResult<Character> {
        self.check(a)?;
        let raw: Vec<i64> = a.0.iter().map(|x| -x).collect();
        self.reduce(&raw)
    }

    pub fn pow(&self, a: &Character, k: i64) -> ChargroupResult<Character> {
        self.check(a)?;
        let raw: Vec<i64> = a.0.iter().map(|x| x * k).collect();
        self.reduce(&raw)
    }

    pub fn is_identity(&self, a: &Character) -> bool {
        a.0.iter().all(|x| *x == 0)
    }

    pub fn order(&self, a: &Character) -> ChargroupResult<CharOrder> {
        self.check(a)?;
        if a.0[..self.free_rank].iter().any(|x| *x != 0) {
            return Ok(CharOrder::Infinite);
        }
        let mut ord = 1u64;
        for (i, n) in self.torsion.iter().enumerate() {
            let e = a.0[self.free_rank + i] as u64;
            let o = n / gcd(*n, e);
            ord = ord / gcd(ord, o) * o;
        }
        Ok(CharOrder::Finite(ord))
    }

    /// Characters with free exponents in `-bound..=bound`, in lexicographic order.
    pub fn window(&self, bound: i64) -> Vec<Character> {
        let mut out = vec![vec![]];
        for i in 0..self.rank() {
            let range: Vec<i64> = if i < self.free_rank {
                (-bound..=bound).collect()
            } else {
                (0..self.torsion[i - self.free_rank] as i64).collect()
            };
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    range.iter().map(move |x| {
                        let mut q = p.clone();
                        q.push(*x);
                        q
                    })
                })
                .collect();
        }
        let mut chars: Vec<Character> = out.into_iter().map(Character).collect();
        chars.sort();
        chars
    }

    /// Relation columns of `X` inside `Z^rank`.
    fn relations(&self) -> Vec<Vec<i128>> {
        self.torsion
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let mut v = vec![0i128; self.rank()];
                v[self.free_rank + i] = *n as i128;
                v
            })
            .collect()
    }

    pub fn parse_character(&self, v: &serde_json::Value) -> ChargroupResult<Character> {
        let raw: Vec<i64> = serde_json::from_value(v.clone())
            .map_err(|e| ChargroupError::GroupMismatch(v.to_string(), e.to_string()))?;
        self.reduce(&raw)
    }
}

/// Element of `Lie(G_a^k × D) = Hom(X(D), K) ⊕ K^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieFunctional {
    pub free: Vec<Elem>,
    pub torsion: Vec<Elem>,
    pub additive: Vec<Elem>,
}

/// Wire form of [`LieFunctional`], with field elements as strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieFunctionalJson {
    #[serde(default)]
    pub free: Vec<String>,
    #[serde(default)]
    pub torsion: Vec<String>,
    #[serde(default)]
    pub additive: Vec<String>,
}

impl LieFunctional {
    pub fn zero(group: &GroupDescriptor, field: &Field) -> LieFunctional {
        LieFunctional {
            free: vec![field.zero(); group.free_rank],
            torsion: vec![field.zero(); group.torsion.len()],
            additive: vec![field.zero(); group.additive_rank],
        }
    }

    pub fn new(
        group: &GroupDescriptor,
        field: &Field,
        free: Vec<Elem>,
        torsion: Vec<Elem>,
        additive: Vec<Elem>,
    ) -> ChargroupResult<LieFunctional> {
        let x = LieFunctional { free, torsion, additive };
        x.validate(group, field)?;
        Ok(x)
    }

    pub fn from_ints(group: &GroupDescriptor, field: &Field, free: &[i64], torsion: &[i64], additive: &[i64]) -> ChargroupResult<LieFunctional> {
        let conv = |v: &[i64]| v.iter().map(|a| field.from_int(*a)).collect::<Vec<_>>();
        LieFunctional::new(group, field, conv(free), conv(torsion), conv(additive))
    }

    pub fn validate(&self, group: &GroupDescriptor, field: &Field) -> ChargroupResult<()> {
        if self.free.len() != group.free_rank
            || self.torsion.len() != group.torsion.len()
            || self.additive.len() != group.additive_rank
        {
            return Err(ChargroupError::InvalidFunctional(format!(
                "shape does not match {group}"
            )));
        }
        for e in self.free.iter().chain(&self.torsion).chain(&self.additive) {
            field.check(e)?;
        }
        for (c, n) in self.torsion.iter().zip(&group.torsion) {
            if !(c * &field.from_int(*n as i64)).is_zero() {
                return Err(ChargroupError::InvalidFunctional(format!(
                    "torsion value {c} is not killed by {n}"
                )));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Option<&Field> {
        self.free.iter().chain(&self.torsion).chain(&self.additive).next().map(|e| e.field())
    }

    /// `<x, h>`.
    pub fn pair(&self, h: &Character) -> Elem {
        let field = self.field().expect("pairing needs a field").clone();
        let r = self.free.len();
        let mut acc = field.zero();
        for (i, a) in h.0.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            let c = if i < r { &self.free[i] } else { &self.torsion[i - r] };
            acc = &acc + &(c * &field.from_int(*a));
        }
        acc
    }

    pub fn pair_in(&self, field: &Field, h: &Character) -> Elem {
        if self.field().is_none() {
            return field.zero();
        }
        self.pair(h)
    }

    pub fn add(&self, o: &LieFunctional) -> LieFunctional {
        let z = |a: &[Elem], b: &[Elem]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        LieFunctional {
            free: z(&self.free, &o.free),
            torsion: z(&self.torsion, &o.torsion),
            additive: z(&self.additive, &o.additive),
        }
    }

    pub fn scale(&self, c: &Elem) -> LieFunctional {
        let s = |a: &[Elem]| a.iter().map(|x| x * c).collect();
        LieFunctional {
            free: s(&self.free),
            torsion: s(&self.torsion),
            additive: s(&self.additive),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|e| e.is_zero())
    }

    /// All coordinates: free, torsion, additive.
    pub fn coords(&self) -> Vec<Elem> {
        self.free.iter().chain(&self.torsion).chain(&self.additive).cloned().collect()
    }

    pub fn diagonal_coords(&self) -> Vec<Elem> {
        self.free.iter().chain(&self.torsion).cloned().collect()
    }

    pub fn to_json(&self) -> LieFunctionalJson {
        let s = |v: &[Elem]| v.iter().map(|e| e.to_string()).collect();
        LieFunctionalJson {
            free: s(&self.free),
            torsion: s(&self.torsion),
            additive: s(&self.additive),
        }
    }

    pub fn from_json(
        j: &LieFunctionalJson,
        group: &GroupDescriptor,
        field: &Field,
    ) -> ChargroupResult<LieFunctional> {
        let p = |v: &[String], n: usize| -> ChargroupResult<Vec<Elem>> {
            if v.is_empty() {
                return Ok(vec![field.zero(); n]);
            }
            v.iter().map(|s| field.parse(s).map_err(ChargroupError::from)).collect()
        };
        LieFunctional::new(
            group,
            field,
            p(&j.free, group.free_rank)?,
            p(&j.torsion, group.torsion.len())?,
            p(&j.additive, group.additive_rank)?,
        )
    }
}

impl fmt::Display for LieFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |v: &[Elem]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "(free: [{}], torsion: [{}], additive: [{}])", s(&self.free), s(&self.torsion), s(&self.additive))
    }
}

/// A subgroup of a character group, given by generators.
#[derive(Clone, Debug, PartialEq)]
pub struct SubgroupDescriptor {
    pub group: GroupDescriptor,
    pub generators: Vec<Character>,
}

fn to_wide(h: &Character) -> Vec<i128> {
    h.0.iter().map(|a| *a as i128).collect()
}

/// A surjection from some `Z^n` onto a group in standard form.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub target: GroupDescriptor,
    u: IMat,
    kept: Vec<(usize, i128)>,
    /// Preimages in `Z^n` of the standard generators of `target`.
    pub lifts: Vec<Vec<i128>>,
}

impl Presentation {
    /// `Z^n` modulo the span of `relations`.
    pub fn quotient(n: usize, relations: &[Vec<i128>]) -> Presentation {
        let m: IMat = (0..n).map(|i| relations.iter().map(|r| r[i]).collect()).collect();
        let (diag, u, _) = lattice::smith(&m, relations.len());
        let d = |i: usize| diag.get(i).copied().unwrap_or(0);
        let mut free = Vec::new();
        let mut tors = Vec::new();
        for i in 0..n {
            match d(i) {
                1 => {}
                0 => free.push((i, 0)),
                k => tors.push((i, k)),
            }
        }
        let uinv = lattice::unimodular_inverse(&u);
        let kept: Vec<(usize, i128)> = free.iter().chain(&tors).copied().collect();
        let lifts = kept.iter().map(|(i, _)| uinv.iter().map(|r| r[*i]).collect()).collect();
        Presentation {
            target: GroupDescriptor {
                free_rank: free.len(),
                torsion: tors.iter().map(|(_, k)| *k as u64).collect(),
                additive_rank: 0,
            },
            u,
            kept,
            lifts,
        }
    }

    pub fn apply(&self, v: &[i128]) -> Character {
        let w = lattice::mat_vec(&self.u, v);
        let raw: Vec<i128> = self
            .kept
            .iter()
            .map(|(i, k)| if *k == 0 { w[*i] } else { w[*i].rem_euclid(*k) })
            .collect();
        self.target.reduce_wide(&raw)
    }
}

/// The quotient `X / S` together with the projection.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub source: GroupDescriptor,
    pub presentation: Presentation,
}

impl QuotientGroup {
    pub fn target(&self) -> &GroupDescriptor {
        &self.presentation.target
    }

    pub fn project(&self, h: &Character) -> ChargroupResult<Character> {
        self.source.check(h)?;
        Ok(self.presentation.apply(&to_wide(h)))
    }

    /// A character of the source mapping to the `i`-th generator of the target.
    pub fn lift_generator(&self, i: usize) -> Character {
        self.source.reduce_wide(&self.presentation.lifts[i])
    }

    /// Functional on the target induced by one on the source that vanishes on `S`.
    pub fn push_functional(&self, x: &LieFunctional, field: &Field, additive: Vec<Elem>) -> LieFunctional {
        let t = self.target();
        let vals: Vec<Elem> = (0..t.rank()).map(|i| x.pair_in(field, &self.lift_generator(i))).collect();
        LieFunctional {
            free: vals[..t.free_rank].to_vec(),
            torsion: vals[t.free_rank..].to_vec(),
            additive,
        }
    }
}

/// A subgroup `A ⊆ X` as an abstract group, with coordinates.
#[derive(Clone, Debug)]
pub struct SubgroupStructure {
    pub ambient: GroupDescriptor,
    pub generators: Vec<Character>,
    pub presentation: Presentation,
}

impl SubgroupStructure {
    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.presentation.target
    }

    /// The standard generators of the abstract group, as characters of `X`.
    pub fn generator_in_ambient(&self, i: usize) -> Character {
        let c = &self.presentation.lifts[i];
        let mut acc = vec![0i128; self.ambient.rank()];
        for (k, g) in self.generators.iter().enumerate() {
            for (j, a) in g.0.iter().enumerate() {
                acc[j] += c[k] * *a as i128;
            }
        }
        self.ambient.reduce_wide(&acc)
    }

    /// Coordinates of an element of `A`, or `None` if it is not in `A`.
    pub fn coords(&self, h: &Character) -> Option<Character> {
        let c = combination(&self.ambient, &self.generators, h)?;
        Some(self.presentation.apply(&c))
    }

    /// Restriction of a functional on `X` to `A`.
    pub fn restrict_functional(&self, x: &LieFunctional, field: &Field, additive: Vec<Elem>) -> LieFunctional {
        let t = self.descriptor();
        let vals: Vec<Elem> = (0..t.rank()).map(|i| x.pair_in(field, &self.generator_in_ambient(i))).collect();
        LieFunctional {
            free: vals[..t.free_rank].to_vec(),
            torsion: vals[t.free_rank..].to_vec(),
            additive,
        }
    }
}

/// Integer coefficients `c` with `Σ c_k gens_k = h` in `X`.
fn combination(group: &GroupDescriptor, gens: &[Character], h: &Character) -> Option<Vec<i128>> {
    let rels = group.relations();
    let n = gens.len() + rels.len();
    let m: IMat = (0..group.rank())
        .map(|i| {
            gens.iter()
                .map(|g| g.0[i] as i128)
                .chain(rels.iter().map(|r| r[i]))
                .collect()
        })
        .collect();
    let x = lattice::solve(&m, n, &to_wide(h))?;
    Some(x[..gens.len()].to_vec())
}

impl SubgroupDescriptor {
    pub fn new(group: &GroupDescriptor, generators: Vec<Character>) -> ChargroupResult<Self> {
        for g in &generators {
            group.check(g)?;
        }
        Ok(SubgroupDescriptor {
            group: group.clone(),
            generators,
        })
    }

    pub fn whole(group: &GroupDescriptor) -> Self {
        SubgroupDescriptor {
            group: group.clone(),
            generators: (0..group.rank()).map(|i| group.generator(i)).collect(),
        }
    }

    pub fn trivial(group: &GroupDescriptor) -> Self {
        SubgroupDescriptor {
            group: group.clone(),
            generators: vec![],
        }
    }

    pub fn contains(&self, h: &Character) -> ChargroupResult<bool> {
        self.group.check(h)?;
        Ok(combination(&self.group, &self.generators, h).is_some())
    }

    pub fn contains_subgroup(&self, o: &SubgroupDescriptor) -> ChargroupResult<bool> {
        for g in &o.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_whole(&self) -> bool {
        (0..self.group.rank()).all(|i| self.contains(&self.group.generator(i)).unwrap())
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| self.group.is_identity(g))
    }

    pub fn quotient(&self) -> QuotientGroup {
        let mut rels = self.group.relations();
        rels.extend(self.generators.iter().map(to_wide));
        QuotientGroup {
            source: self.group.clone(),
            presentation: Presentation::quotient(self.group.rank(), &rels),
        }
    }

    pub fn structure(&self) -> SubgroupStructure {
        let q = self.generators.len();
        let rels = self.group.relations();
        let m: IMat = (0..self.group.rank())
            .map(|i| {
                self.generators
                    .iter()
                    .map(|g| g.0[i] as i128)
                    .chain(rels.iter().map(|r| r[i]))
                    .collect()
            })
            .collect();
        let ker = lattice::kernel(&m, q + rels.len());
        let relations: Vec<Vec<i128>> = ker.iter().map(|v| v[..q].to_vec()).collect();
        SubgroupStructure {
            ambient: self.group.clone(),
            generators: self.generators.clone(),
            presentation: Presentation::quotient(q, &relations),
        }
    }

    /// Reduced generating set (an echelon basis modulo torsion relations).
    pub fn simplified(&self) -> SubgroupDescriptor {
        let rels = self.group.relations();
        let cols: Vec<Vec<i128>> = self.generators.iter().map(to_wide).chain(rels).collect();
        let m: IMat = (0..self.group.rank()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let (e, _, pivots) = lattice::column_echelon(&m, cols.len());
        let mut gens = Vec::new();
        for k in 0..pivots.len() {
            let v: Vec<i128> = e.iter().map(|r| r[k]).collect();
            let h = self.group.reduce_wide(&v);
            if !self.group.is_identity(&h) && !gens.contains(&h) {
                gens.push(h);
            }
        }
        SubgroupDescriptor {
            group: self.group.clone(),
            generators: gens,
        }
    }
}

/// `Y = {h ∈ X : <x, h> = 0}`.
pub fn subgroup_kernel(
    group: &GroupDescriptor,
    field: &Field,
    x: &LieFunctional,
) -> ChargroupResult<SubgroupDescriptor> {
    x.validate(group, field)?;
    let r = group.free_rank;
    let n = group.rank();
    let vals = x.diagonal_coords();
    let mut gens: Vec<Vec<i128>> = Vec::new();
    let p = field.characteristic();
    let coords = field.prime_coordinates(&vals)?;
    let len = coords.first().map(|c| c.len()).unwrap_or(0);
    if p == 0 {
        // torsion values vanish in characteristic zero
        for i in r..n {
            let mut v = vec![0; n];
            v[i] = 1;
            gens.push(v);
        }
        let mut m: IMat = Vec::new();
        for k in 0..len {
            let row: Vec<num_rational::BigRational> =
                (0..r).map(|j| coords[j][k].to_rational().unwrap()).collect();
            let mut den = num_bigint::BigInt::from(1);
            for q in &row {
                den = num_integer::Integer::lcm(&den, q.denom());
            }
            m.push(
                row.iter()
                    .map(|q| {
                        let v = q.numer() * (&den / q.denom());
                        i128::try_from(v).expect("coefficient overflow")
                    })
                    .collect(),
            );
        }
        for v in lattice::kernel(&m, r) {
            let mut w = v.clone();
            w.resize(n, 0);
            gens.push(w);
        }
    } else {
        let k = field.prime_subfield();
        let rows: Vec<Vec<Elem>> = (0..len).map(|i| (0..n).map(|j| coords[j][i].clone()).collect()).collect();
        let mat = SparseMatrix::from_rows(&k, n, &rows);
        for v in mat.kernel() {
            gens.push(v.iter().map(|e| e.to_residue().unwrap() as i128).collect());
        }
        for i in 0..n {
            let mut v = vec![0; n];
            v[i] = p as i128;
            gens.push(v);
        }
    }
    let chars = gens.iter().map(|v| group.reduce_wide(v)).collect();
    Ok(SubgroupDescriptor {
        group: group.clone(),
        generators: chars,
    }
    .simplified())
}
