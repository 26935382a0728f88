//! Brute-force oracles over F_p with `u32` arithmetic for `K[D_{g,x}]`,
//! `D = μ_n`. Characters are exponents mod `n`, monomials `(h, ε)`.

#![allow(dead_code)]

use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};

pub type Mono = (u32, bool);
/// `co[a][j][i]`: coefficient of `m_j ⊗ a` in `ρ(m_i)`.
pub type Coaction = BTreeMap<Mono, Vec<Vec<u32>>>;

#[derive(Clone, Copy, Debug)]
pub struct Dgx {
    pub p: u32,
    pub n: u32,
    pub g: u32,
    /// `<x, t> ∈ F_p`, so `<x, t^k> = k <x, t>`.
    pub x: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Com {
    pub odd: Vec<bool>,
    pub co: Coaction,
}

pub fn pw(mut a: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    a = r as u32;
    a
}

impl Dgx {
    pub fn pair(&self, h: u32) -> u32 {
        (h % self.p) * self.x % self.p
    }

    pub fn in_y(&self, h: u32) -> bool {
        self.pair(h) == 0
    }

    fn gh(&self, h: u32) -> u32 {
        (self.g + h) % self.n
    }

    /// `Δ(h) = h⊗h + <x,h> hz⊗ghz`, `Δ(hz) = h⊗hz + hz⊗gh`.
    pub fn delta(&self, a: Mono) -> Vec<(Mono, Mono, u32)> {
        let (h, z) = a;
        if z {
            vec![((h, false), (h, true), 1), ((h, true), (self.gh(h), false), 1)]
        } else {
            let mut v = vec![((h, false), (h, false), 1)];
            let c = self.pair(h);
            if c != 0 {
                v.push(((h, true), (self.gh(h), true), c));
            }
            v
        }
    }

    pub fn counit(&self, a: Mono) -> u32 {
        u32::from(!a.1)
    }

    /// Coassociativity, counit and parity of a coaction.
    pub fn is_comodule(&self, m: &Com) -> bool {
        let p = self.p;
        let d = m.odd.len();
        for (a, c) in &m.co {
            for j in 0..d {
                for i in 0..d {
                    if c[j][i] != 0 && (m.odd[j] ^ a.1) != m.odd[i] {
                        return false;
                    }
                }
            }
        }
        for i in 0..d {
            // counit
            for j in 0..d {
                let mut s = 0;
                for (a, c) in &m.co {
                    s = (s + c[j][i] * self.counit(*a)) % p;
                }
                if s != u32::from(i == j) {
                    return false;
                }
            }
            let mut lhs: BTreeMap<(usize, Mono, Mono), u32> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, Mono, Mono), u32> = BTreeMap::new();
            for (a, ca) in &m.co {
                for j in 0..d {
                    if ca[j][i] == 0 {
                        continue;
                    }
                    for (b, cb) in &m.co {
                        for k in 0..d {
                            if cb[k][j] != 0 {
                                let e = lhs.entry((k, *b, *a)).or_insert(0);
                                *e = (*e + ca[j][i] * cb[k][j]) % p;
                            }
                        }
                    }
                }
                for k in 0..d {
                    if ca[k][i] == 0 {
                        continue;
                    }
                    for (b1, b2, c) in self.delta(*a) {
                        let e = rhs.entry((k, b1, b2)).or_insert(0);
                        *e = (*e + ca[k][i] * c) % p;
                    }
                }
            }
            lhs.retain(|_, v| *v != 0);
            rhs.retain(|_, v| *v != 0);
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// `L(h)` on `h, hz` or `S(h)` on `h`; `shifted` swaps parities.
    pub fn standard(&self, l: bool, h: u32, shifted: bool) -> Com {
        let mut co = Coaction::new();
        let mut set = |a: Mono, j: usize, i: usize, c: u32, d: usize| {
            co.entry(a).or_insert_with(|| vec![vec![0; d]; d])[j][i] = c;
        };
        if l {
            set((h, false), 0, 0, 1, 2);
            if self.pair(h) != 0 {
                set((self.gh(h), true), 1, 0, self.pair(h), 2);
            }
            set((h, true), 0, 1, 1, 2);
            set((self.gh(h), false), 1, 1, 1, 2);
            Com { odd: vec![shifted, !shifted], co }
        } else {
            set((h, false), 0, 0, 1, 1);
            Com { odd: vec![shifted], co }
        }
    }

    /// Every indecomposable: `(is_L, h, shifted)`.
    pub fn indecomposables(&self) -> Vec<(bool, u32, bool)> {
        let mut out = Vec::new();
        for h in 0..self.n {
            for s in [false, true] {
                out.push((true, h, s));
                if self.in_y(h) {
                    out.push((false, h, s));
                }
            }
        }
        out
    }

    /// Weight of a basis vector: the `h` with `ρ(v) ≡ v ⊗ h` modulo `z`.
    fn weight_projector(&self, m: &Com, h: u32) -> Vec<Vec<u32>> {
        let d = m.odd.len();
        m.co.get(&(h, false)).cloned().unwrap_or_else(|| vec![vec![0; d]; d])
    }

    /// `dim Hom(X, M)` by enumerating all even maps that send each basis
    /// vector of `X` into the matching weight space of `M`.
    pub fn hom_dim(&self, x: &Com, m: &Com) -> u32 {
        let p = self.p;
        let dm = m.odd.len();
        let mut choices: Vec<Vec<Vec<u32>>> = Vec::new();
        for i in 0..x.odd.len() {
            let w = (0..self.n).find(|h| self.weight_projector(x, *h)[i][i] == 1).expect("standard basis vectors are weight vectors");
            let proj = self.weight_projector(m, w);
            let cols: Vec<Vec<u32>> = (0..dm).filter(|j| m.odd[*j] == x.odd[i]).map(|j| (0..dm).map(|r| proj[r][j]).collect()).collect();
            let basis = span_basis(&cols, p);
            choices.push(all_combinations(&basis, dm, p));
        }
        let keys: BTreeSet<Mono> = x.co.keys().chain(m.co.keys()).copied().collect();
        let mut count = 0u64;
        let mut idx = vec![0usize; choices.len()];
        loop {
            // F columns = images of the basis of X
            let f: Vec<&Vec<u32>> = idx.iter().zip(&choices).map(|(k, c)| &c[*k]).collect();
            let ok = keys.iter().all(|a| {
                let zero = vec![vec![0; dm]; dm];
                let zx = vec![vec![0; x.odd.len()]; x.odd.len()];
                let cm = m.co.get(a).unwrap_or(&zero);
                let cx = x.co.get(a).unwrap_or(&zx);
                (0..x.odd.len()).all(|i| {
                    (0..dm).all(|r| {
                        let lhs: u64 = (0..dm).map(|k| cm[r][k] as u64 * f[i][k] as u64).sum::<u64>() % p as u64;
                        let rhs: u64 = (0..x.odd.len()).map(|l| f[l][r] as u64 * cx[l][i] as u64).sum::<u64>() % p as u64;
                        lhs == rhs
                    })
                })
            });
            if ok {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return log_p(count, p);
                }
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    /// `dim Ext^1(S, T)` for one-dimensional `S, T`: count the cocycles `c`
    /// making `[[ρ_T, c], [0, ρ_S]]` a coaction, then the coboundaries.
    pub fn ext1_dim(&self, s: &Com, t: &Com) -> u32 {
        let p = self.p;
        let eps = s.odd[0] ^ t.odd[0];
        let monos: Vec<Mono> = (0..self.n).map(|h| (h, eps)).collect();
        let split = |c: &[u32]| -> Com {
            let mut co = Coaction::new();
            for (a, m) in &t.co {
                co.entry(*a).or_insert_with(|| vec![vec![0; 2]; 2])[0][0] = m[0][0];
            }
            for (a, m) in &s.co {
                co.entry(*a).or_insert_with(|| vec![vec![0; 2]; 2])[1][1] = m[0][0];
            }
            for (a, v) in monos.iter().zip(c) {
                if *v != 0 {
                    co.entry(*a).or_insert_with(|| vec![vec![0; 2]; 2])[0][1] = *v;
                }
            }
            co.retain(|_, m| m.iter().flatten().any(|v| *v != 0));
            Com { odd: vec![t.odd[0], s.odd[0]], co }
        };
        let mut cocycles = 0u64;
        let total = (p as u64).pow(monos.len() as u32);
        for code in 0..total {
            let mut c = Vec::new();
            let mut r = code;
            for _ in 0..monos.len() {
                c.push((r % p as u64) as u32);
                r /= p as u64;
            }
            if self.is_comodule(&split(&c)) {
                cocycles += 1;
            }
        }
        // basis change s ↦ s + λ t turns c = 0 into c = λ (ρ_T(t) - ρ_S(s)) coefficients
        let mut bounds = BTreeSet::new();
        if s.odd[0] == t.odd[0] {
            for lam in 0..p {
                let mut c = vec![0u32; monos.len()];
                for (k, a) in monos.iter().enumerate() {
                    let tt = t.co.get(a).map_or(0, |m| m[0][0]);
                    let ss = s.co.get(a).map_or(0, |m| m[0][0]);
                    c[k] = (lam * ((tt + p - ss) % p)) % p;
                }
                bounds.insert(c);
            }
        } else {
            bounds.insert(vec![0; monos.len()]);
        }
        log_p(cocycles, p) - log_p(bounds.len() as u64, p)
    }

    /// Read the wire form `{"dims", "coaction"}`.
    pub fn from_json(&self, v: &Value) -> Com {
        let e = v["dims"]["even"].as_u64().unwrap() as usize;
        let o = v["dims"]["odd"].as_u64().unwrap() as usize;
        let d = e + o;
        let mut co = Coaction::new();
        for entry in v["coaction"].as_array().unwrap() {
            let i = entry[0].as_u64().unwrap() as usize;
            for t in entry[1].as_array().unwrap() {
                let j = t[0].as_u64().unwrap() as usize;
                let c = t[1].as_str().unwrap().parse::<i64>().unwrap().rem_euclid(self.p as i64) as u32;
                let h = t[2][0].as_i64().unwrap().rem_euclid(self.n as i64) as u32;
                let z = t[3].as_u64().unwrap() == 1;
                let m = co.entry((h, z)).or_insert_with(|| vec![vec![0; d]; d]);
                m[j][i] = (m[j][i] + c) % self.p;
            }
        }
        Com { odd: (0..d).map(|i| i >= e).collect(), co }
    }
}

pub fn log_p(mut count: u64, p: u32) -> u32 {
    let mut k = 0;
    while count > 1 {
        assert_eq!(count % p as u64, 0, "solution count is not a power of p");
        count /= p as u64;
        k += 1;
    }
    k
}

/// Row-reduced basis of the span of `vecs` over F_p.
pub fn span_basis(vecs: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for v in vecs {
        let mut v = v.clone();
        for r in &rows {
            let piv = r.iter().position(|x| *x != 0).unwrap();
            if v[piv] != 0 {
                let c = v[piv];
                for (a, b) in v.iter_mut().zip(r) {
                    *a = (*a + p - c * b % p) % p;
                }
            }
        }
        if let Some(piv) = v.iter().position(|x| *x != 0) {
            let inv = pw(v[piv], p - 2, p);
            for a in v.iter_mut() {
                *a = *a * inv % p;
            }
            for r in rows.iter_mut() {
                if r[piv] != 0 {
                    let c = r[piv];
                    for (a, b) in r.iter_mut().zip(&v) {
                        *a = (*a + p - c * b % p) % p;
                    }
                }
            }
            rows.push(v);
        }
    }
    rows
}

fn all_combinations(basis: &[Vec<u32>], dim: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; dim]];
    for b in basis {
        let mut next = Vec::new();
        for v in &out {
            for c in 0..p {
                next.push(v.iter().zip(b).map(|(x, y)| (x + c * y) % p).collect());
            }
        }
        out = next;
    }
    out
}

/// `a` is a square in F_p, by enumeration and by Euler's criterion.
pub fn is_square_mod(a: i64, p: u32) -> bool {
    let a = a.rem_euclid(p as i64) as u32;
    let by_enum = (0..p).any(|r| r * r % p == a);
    let euler = a == 0 || pw(a, (p - 1) / 2, p) == 1;
    assert_eq!(by_enum, euler);
    by_enum
}

fn isqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).find(|x| x * x == n)
}

/// `num / den` is a square in Q.
pub fn is_square_q(num: i64, den: i64) -> bool {
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    if num < 0 {
        return false;
    }
    let g = gcd(num as u64, den as u64);
    isqrt(num as u64 / g).is_some() && isqrt(den as u64 / g).is_some()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
