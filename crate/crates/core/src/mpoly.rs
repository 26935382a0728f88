//! Polynomials over `K[x_1..x_n] ⊗ ∧(z_1..z_s)` and Gröbner bases of
//! submodules of free `K[x]`-modules.

use crate::field::{Elem, Field};
use std::cmp::Ordering;
use std::collections::BTreeMap;

pub(crate) type Exps = Vec<u32>;

/// Super polynomial: keys are (odd subset as a bit mask, even exponents).
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct SPoly {
    pub nvars: usize,
    pub terms: BTreeMap<(u32, Exps), Elem>,
}

/// `z_T z_U` as `(sign is negative, T ∪ U)`, or `None` when `T ∩ U ≠ ∅`.
pub(crate) fn wedge(t: u32, u: u32) -> Option<(bool, u32)> {
    if t & u != 0 {
        return None;
    }
    // sign of moving each z_j (j in U) past the z_i (i in T) with i > j
    let mut inv = 0;
    for j in 0..32 {
        if u & (1 << j) != 0 {
            inv += (t >> (j + 1)).count_ones();
        }
    }
    Some((inv % 2 == 1, t | u))
}

impl SPoly {
    pub fn zero(nvars: usize) -> SPoly {
        SPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Elem) -> SPoly {
        let mut p = SPoly::zero(nvars);
        p.add_term(0, vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize, f: &Field) -> SPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = SPoly::zero(nvars);
        p.add_term(0, e, f.one());
        p
    }

    pub fn odd(nvars: usize, j: usize, f: &Field) -> SPoly {
        let mut p = SPoly::zero(nvars);
        p.add_term(1 << j, vec![0; nvars], f.one());
        p
    }

    pub fn add_term(&mut self, mask: u32, e: Exps, c: Elem) {
        if c.is_zero() {
            return;
        }
        let key = (mask, e);
        let v = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &SPoly) -> SPoly {
        let mut r = self.clone();
        for ((m, e), c) in &o.terms {
            r.add_term(*m, e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> SPoly {
        SPoly { nvars: self.nvars, terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect() }
    }

    pub fn sub(&self, o: &SPoly) -> SPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, a: &Elem) -> SPoly {
        let mut r = SPoly::zero(self.nvars);
        for ((m, e), c) in &self.terms {
            r.add_term(*m, e.clone(), c * a);
        }
        r
    }

    pub fn mul(&self, o: &SPoly) -> SPoly {
        let mut r = SPoly::zero(self.nvars);
        for ((m1, e1), c1) in &self.terms {
            for ((m2, e2), c2) in &o.terms {
                if let Some((neg, m)) = wedge(*m1, *m2) {
                    let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                    let c = c1 * c2;
                    r.add_term(m, e, if neg { -c } else { c });
                }
            }
        }
        r
    }

    pub fn pow(&self, k: u32, f: &Field) -> SPoly {
        let mut acc = SPoly::constant(self.nvars, f.one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Whether every term has an even number of odd factors.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|(m, _)| m.count_ones() % 2 == 0)
    }

    /// Component with odd part `mask`.
    pub fn component(&self, mask: u32) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for ((m, e), c) in &self.terms {
            if *m == mask {
                p.add_term(e.clone(), c.clone());
            }
        }
        p
    }

    pub fn from_poly(p: &Poly, mask: u32) -> SPoly {
        let mut r = SPoly::zero(p.nvars);
        for (e, c) in &p.terms {
            r.add_term(mask, e.clone(), c.clone());
        }
        r
    }

    /// Substitute `x_i ↦ images[i]` (even elements).
    pub fn substitute(&self, images: &[SPoly], f: &Field) -> SPoly {
        let mut out = SPoly::zero(self.nvars);
        for ((m, e), c) in &self.terms {
            let mut t = SPoly::constant(self.nvars, c.clone());
            for (i, k) in e.iter().enumerate() {
                if *k > 0 {
                    t = t.mul(&images[i].pow(*k, f));
                }
            }
            let mut z = SPoly::zero(self.nvars);
            z.add_term(*m, vec![0; self.nvars], f.one());
            out = out.add(&t.mul(&z));
        }
        out
    }

    pub fn display(&self, vars: &[String], odd: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for ((m, e), c) in self.terms.iter().rev() {
            let mut fs = Vec::new();
            for (i, k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => fs.push(vars[i].clone()),
                    _ => fs.push(format!("{}^{}", vars[i], k)),
                }
            }
            for (j, name) in odd.iter().enumerate() {
                if m & (1 << j) != 0 {
                    fs.push(name.clone());
                }
            }
            let cs = c.to_string();
            let term = if fs.is_empty() {
                cs
            } else if c.is_one() {
                fs.join("*")
            } else {
                format!("({cs})*{}", fs.join("*"))
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

/// Commutative polynomial in `nvars` variables.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Exps, Elem>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, e: Exps, c: Elem) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&e) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn derivative(&self, i: usize, f: &Field) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r.add_term(e2, c * &f.from_int(e[i] as i64));
            }
        }
        r
    }

    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars).filter(|i| self.terms.keys().any(|e| e[*i] > 0)).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|k| *k == 0))
    }
}

/// Element of a free module `K[x]^r`: keys are (position, exponents).
pub(crate) type ModVec = BTreeMap<(usize, Exps), Elem>;

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

/// Position over term, lower positions leading.
fn term_cmp(a: &(usize, Exps), b: &(usize, Exps)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| grevlex(&a.1, &b.1))
}

pub(crate) fn lead(v: &ModVec) -> Option<(&(usize, Exps), &Elem)> {
    v.iter().max_by(|x, y| term_cmp(x.0, y.0))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn add_scaled_shifted(v: &mut ModVec, g: &ModVec, c: &Elem, shift: &[u32]) {
    for ((p, e), a) in g {
        let e2: Exps = e.iter().zip(shift).map(|(x, y)| x + y).collect();
        let key = (*p, e2);
        let val = match v.remove(&key) {
            Some(old) => &old + &(a * c),
            None => a * c,
        };
        if !val.is_zero() {
            v.insert(key, val);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct StepLimit;

/// Full reduction of `v` by `g`; K-linear in `v` once `g` is a Gröbner basis.
pub(crate) fn normal_form(v: &ModVec, g: &[ModVec], steps: &mut usize, limit: usize) -> Result<ModVec, StepLimit> {
    let mut v = v.clone();
    let mut rem = ModVec::new();
    while let Some((lt, lc)) = lead(&v).map(|(k, c)| (k.clone(), c.clone())) {
        *steps += 1;
        if *steps > limit {
            return Err(StepLimit);
        }
        let red = g.iter().find(|h| {
            let (hk, _) = lead(h).unwrap();
            hk.0 == lt.0 && divides(&hk.1, &lt.1)
        });
        match red {
            Some(h) => {
                let (hk, hc) = lead(h).unwrap();
                let shift: Exps = lt.1.iter().zip(&hk.1).map(|(a, b)| a - b).collect();
                let c = -(&lc.checked_div(hc).unwrap());
                add_scaled_shifted(&mut v, h, &c, &shift);
            }
            None => {
                v.remove(&lt);
                rem.insert(lt, lc);
            }
        }
    }
    Ok(rem)
}

/// Reduced Gröbner basis (monic leads) of the submodule generated by `gens`.
pub(crate) fn groebner(gens: &[ModVec], limit: usize) -> Result<Vec<ModVec>, StepLimit> {
    let mut steps = 0;
    let mut g: Vec<ModVec> = Vec::new();
    for v in gens {
        let r = normal_form(v, &g, &mut steps, limit)?;
        if !r.is_empty() {
            g.push(r);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (ki, ci) = lead(&g[i]).map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let (kj, cj) = lead(&g[j]).map(|(k, c)| (k.clone(), c.clone())).unwrap();
        if ki.0 != kj.0 {
            continue;
        }
        let l: Exps = ki.1.iter().zip(&kj.1).map(|(a, b)| *a.max(b)).collect();
        let si: Exps = l.iter().zip(&ki.1).map(|(a, b)| a - b).collect();
        let sj: Exps = l.iter().zip(&kj.1).map(|(a, b)| a - b).collect();
        let mut s = ModVec::new();
        add_scaled_shifted(&mut s, &g[i], &ci.checked_inv().unwrap(), &si);
        add_scaled_shifted(&mut s, &g[j], &(-&cj.checked_inv().unwrap()), &sj);
        let r = normal_form(&s, &g, &mut steps, limit)?;
        if !r.is_empty() {
            let n = g.len();
            g.push(r);
            for k in 0..n {
                pairs.push((k, n));
            }
        }
    }
    // minimal, then reduced
    let mut keep: Vec<ModVec> = Vec::new();
    for (i, h) in g.iter().enumerate() {
        let (hk, _) = lead(h).unwrap();
        let redundant = g.iter().enumerate().any(|(j, o)| {
            if i == j {
                return false;
            }
            let (ok, _) = lead(o).unwrap();
            ok.0 == hk.0 && divides(&ok.1, &hk.1) && (ok.1 != hk.1 || j < i)
        });
        if !redundant {
            keep.push(h.clone());
        }
    }
    let mut out = Vec::new();
    for i in 0..keep.len() {
        let others: Vec<ModVec> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        let (lk, lc) = lead(&keep[i]).map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let mut tail = keep[i].clone();
        tail.remove(&lk);
        let mut r = normal_form(&tail, &others, &mut steps, limit)?;
        r.insert(lk, lc.clone());
        let inv = lc.checked_inv().unwrap();
        for c in r.values_mut() {
            *c = &*c * &inv;
        }
        out.push(r);
    }
    out.sort_by(|a, b| term_cmp(lead(a).unwrap().0, lead(b).unwrap().0));
    Ok(out)
}

pub(crate) fn poly_to_vec(p: &Poly, pos: usize) -> ModVec {
    p.terms.iter().map(|(e, c)| ((pos, e.clone()), c.clone())).collect()
}
