//! Exact linear algebra over super vector spaces.
//!
//! Matrices are row-sparse; vectors are plain `Vec<Elem>`. Tensor products of
//! homogeneous elements follow the Koszul rule
//! `(a ⊗ b)(c ⊗ d) = (-1)^{|b||c|} ac ⊗ bd`.

use crate::field::{Elem, Field, FieldError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SuperlinError {
    #[error("inconsistent linear system")]
    InconsistentSystem,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entry ({row},{col}) breaks the parity of the map")]
    ParityViolation { row: usize, col: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: bool) -> Parity {
        if b {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Parity {
        Parity::from_bit(!self.is_odd())
    }

    pub fn add(self, o: Parity) -> Parity {
        Parity::from_bit(self.is_odd() ^ o.is_odd())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_odd() { "odd" } else { "even" })
    }
}

/// `true` when swapping homogeneous elements of these parities costs a sign.
pub fn koszul_odd(a: Parity, b: Parity) -> bool {
    a.is_odd() && b.is_odd()
}

/// `(-1)^{|a||b|}` as a field element.
pub fn koszul_sign(field: &Field, a: Parity, b: Parity) -> Elem {
    if koszul_odd(a, b) {
        -field.one()
    } else {
        field.one()
    }
}

/// A super vector space with a chosen homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperSpace {
    pub parities: Vec<Parity>,
}

impl SuperSpace {
    pub fn new(parities: Vec<Parity>) -> SuperSpace {
        SuperSpace { parities }
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn even_dim(&self) -> usize {
        self.parities.iter().filter(|p| !p.is_odd()).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.even_dim()
    }

    /// Parity shift.
    pub fn shift(&self) -> SuperSpace {
        SuperSpace::new(self.parities.iter().map(|p| p.flip()).collect())
    }

    pub fn direct_sum(&self, o: &SuperSpace) -> SuperSpace {
        let mut p = self.parities.clone();
        p.extend_from_slice(&o.parities);
        SuperSpace::new(p)
    }
}

#[derive(Clone, PartialEq)]
pub struct SparseMatrix {
    field: Field,
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, Elem>>,
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            let row: Vec<String> = (0..self.ncols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl SparseMatrix {
    pub fn zeros(field: &Field, nrows: usize, ncols: usize) -> SparseMatrix {
        SparseMatrix {
            field: field.clone(),
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn identity(field: &Field, n: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, ncols: usize, rows: &[Vec<Elem>]) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(field, rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            for (j, a) in r.iter().enumerate() {
                m.set(i, j, a.clone());
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, nrows: usize, cols: &[Vec<Elem>]) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(field, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, a) in c.iter().enumerate() {
                m.set(i, j, a.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.rows[i].get(&j).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, a: Elem) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        if a.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, a);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, a: &Elem) {
        let v = &self.get(i, j) + a;
        self.set(i, j, v);
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, Elem> {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Elem)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, a)| (i, *j, a)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zeros(&self.field, self.ncols, self.nrows);
        for (i, j, a) in self.nonzeros() {
            t.set(j, i, a.clone());
        }
        t
    }

    pub fn mul(&self, o: &SparseMatrix) -> Result<SparseMatrix, SuperlinError> {
        if self.ncols != o.nrows {
            return Err(SuperlinError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows, self.ncols, o.nrows, o.ncols
            )));
        }
        let mut out = SparseMatrix::zeros(&self.field, self.nrows, o.ncols);
        for i in 0..self.nrows {
            let mut acc: BTreeMap<usize, Elem> = BTreeMap::new();
            for (k, a) in &self.rows[i] {
                for (j, b) in &o.rows[*k] {
                    let prod = a * b;
                    match acc.get_mut(j) {
                        Some(v) => *v = &*v + &prod,
                        None => {
                            acc.insert(*j, prod);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[i] = acc;
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.ncols, "vector length");
        self.rows
            .iter()
            .map(|r| {
                let mut acc = self.field.zero();
                for (j, a) in r {
                    acc = &acc + &(a * &v[*j]);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &SparseMatrix) -> SparseMatrix {
        assert!(self.nrows == o.nrows && self.ncols == o.ncols, "shape mismatch");
        let mut out = self.clone();
        for (i, j, a) in o.nonzeros() {
            out.add_at(i, j, a);
        }
        out
    }

    pub fn scale(&self, c: &Elem) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(&self.field, self.nrows, self.ncols);
        for (i, j, a) in self.nonzeros() {
            out.set(i, j, a * c);
        }
        out
    }

    pub fn sub(&self, o: &SparseMatrix) -> SparseMatrix {
        self.add(&o.scale(&-self.field.one()))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (SparseMatrix, Vec<usize>) {
        let mut rows: Vec<BTreeMap<usize, Elem>> =
            self.rows.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut pivots = Vec::new();
        let mut done = 0;
        for col in 0..self.ncols {
            let Some(p) = (done..rows.len()).find(|&i| rows[i].contains_key(&col)) else {
                continue;
            };
            rows.swap(done, p);
            let inv = rows[done][&col].checked_inv().unwrap();
            let pr: BTreeMap<usize, Elem> =
                rows[done].iter().map(|(j, a)| (*j, a * &inv)).collect();
            rows[done] = pr.clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == done {
                    continue;
                }
                if let Some(f) = row.get(&col).cloned() {
                    for (j, a) in &pr {
                        let v = &row.get(j).cloned().unwrap_or_else(|| self.field.zero()) - &(&f * a);
                        if v.is_zero() {
                            row.remove(j);
                        } else {
                            row.insert(*j, v);
                        }
                    }
                }
            }
            pivots.push(col);
            done += 1;
        }
        rows.truncate(done);
        let m = SparseMatrix {
            field: self.field.clone(),
            nrows: rows.len(),
            ncols: self.ncols,
            rows,
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : Mv = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![self.field.zero(); self.ncols];
                v[fc] = self.field.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, fc);
                }
                v
            })
            .collect()
    }

    /// Basis of the column space.
    pub fn image(&self) -> Vec<Vec<Elem>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.column(c)).collect()
    }

    /// Some solution of `Mx = b`.
    pub fn solve(&self, b: &[Elem]) -> Result<Vec<Elem>, SuperlinError> {
        if b.len() != self.nrows {
            return Err(SuperlinError::DimensionMismatch("right-hand side".into()));
        }
        let mut aug = SparseMatrix::zeros(&self.field, self.nrows, self.ncols + 1);
        for (i, j, a) in self.nonzeros() {
            aug.set(i, j, a.clone());
        }
        for (i, a) in b.iter().enumerate() {
            aug.set(i, self.ncols, a.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.ncols) {
            return Err(SuperlinError::InconsistentSystem);
        }
        let mut x = vec![self.field.zero(); self.ncols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.ncols);
        }
        Ok(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<SparseMatrix> {
        if self.nrows != self.ncols {
            return None;
        }
        let n = self.nrows;
        let mut aug = SparseMatrix::zeros(&self.field, n, 2 * n);
        for (i, j, a) in self.nonzeros() {
            aug.set(i, j, a.clone());
        }
        for i in 0..n {
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        let mut inv = SparseMatrix::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Entries as `(row, col, value)` with values rendered as strings.
    pub fn to_triplets(&self) -> Vec<(usize, usize, String)> {
        self.nonzeros().map(|(i, j, a)| (i, j, a.to_string())).collect()
    }

    pub fn from_triplets(
        field: &Field,
        nrows: usize,
        ncols: usize,
        triplets: &[(usize, usize, String)],
    ) -> Result<SparseMatrix, SuperlinError> {
        let mut m = SparseMatrix::zeros(field, nrows, ncols);
        for (i, j, s) in triplets {
            if *i >= nrows || *j >= ncols {
                return Err(SuperlinError::DimensionMismatch(format!("entry ({i},{j})")));
            }
            m.add_at(*i, *j, &field.parse(s)?);
        }
        Ok(m)
    }
}

/// Row-reduce a list of vectors to a basis of their span.
pub fn span_basis(field: &Field, dim: usize, vecs: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let m = SparseMatrix::from_rows(field, dim, vecs);
    let (r, _) = m.rref();
    (0..r.nrows()).map(|i| (0..dim).map(|j| r.get(i, j)).collect()).collect()
}

pub fn span_dim(field: &Field, dim: usize, vecs: &[Vec<Elem>]) -> usize {
    SparseMatrix::from_rows(field, dim, vecs).rank()
}

pub fn in_span(field: &Field, dim: usize, vecs: &[Vec<Elem>], v: &[Elem]) -> bool {
    let mut all = vecs.to_vec();
    all.push(v.to_vec());
    span_dim(field, dim, vecs) == span_dim(field, dim, &all)
}

/// A homogeneous linear map between super spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperLinearMap {
    pub domain: SuperSpace,
    pub codomain: SuperSpace,
    pub matrix: SparseMatrix,
    pub parity: Parity,
}

impl SuperLinearMap {
    pub fn new(
        domain: SuperSpace,
        codomain: SuperSpace,
        matrix: SparseMatrix,
        parity: Parity,
    ) -> Result<SuperLinearMap, SuperlinError> {
        if matrix.nrows() != codomain.dim() || matrix.ncols() != domain.dim() {
            return Err(SuperlinError::DimensionMismatch("map shape".into()));
        }
        for (i, j, _) in matrix.nonzeros() {
            if codomain.parities[i] != domain.parities[j].add(parity) {
                return Err(SuperlinError::ParityViolation { row: i, col: j });
            }
        }
        Ok(SuperLinearMap {
            domain,
            codomain,
            matrix,
            parity,
        })
    }

    pub fn compose(&self, first: &SuperLinearMap) -> Result<SuperLinearMap, SuperlinError> {
        if first.codomain != self.domain {
            return Err(SuperlinError::DimensionMismatch("composition".into()));
        }
        SuperLinearMap::new(
            first.domain.clone(),
            self.codomain.clone(),
            self.matrix.mul(&first.matrix)?,
            self.parity.add(first.parity),
        )
    }

    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        self.matrix.kernel()
    }

    pub fn image(&self) -> Vec<Vec<Elem>> {
        self.matrix.image()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Tensor product `f ⊗ g` on the lexicographic basis of `V ⊗ W`, with
    /// `(f ⊗ g)(v ⊗ w) = (-1)^{|g||v|} f(v) ⊗ g(w)`.
    pub fn tensor(&self, g: &SuperLinearMap) -> SuperLinearMap {
        let field = self.matrix.field().clone();
        let dom = tensor_space(&self.domain, &g.domain);
        let cod = tensor_space(&self.codomain, &g.codomain);
        let mut m = SparseMatrix::zeros(&field, cod.dim(), dom.dim());
        let wd = g.domain.dim();
        let wc = g.codomain.dim();
        for (i, j, a) in self.matrix.nonzeros() {
            let sign = koszul_sign(&field, g.parity, self.domain.parities[j]);
            for (k, l, b) in g.matrix.nonzeros() {
                m.set(i * wc + k, j * wd + l, &(a * b) * &sign);
            }
        }
        SuperLinearMap {
            domain: dom,
            codomain: cod,
            matrix: m,
            parity: self.parity.add(g.parity),
        }
    }
}

/// `V ⊗ W` with basis `v_i ⊗ w_j` at index `i * dim W + j`.
pub fn tensor_space(v: &SuperSpace, w: &SuperSpace) -> SuperSpace {
    let mut p = Vec::with_capacity(v.dim() * w.dim());
    for a in &v.parities {
        for b in &w.parities {
            p.push(a.add(*b));
        }
    }
    SuperSpace::new(p)
}

/// The braiding `v ⊗ w ↦ (-1)^{|v||w|} w ⊗ v`.
pub fn braiding(field: &Field, v: &SuperSpace, w: &SuperSpace) -> SuperLinearMap {
    let dom = tensor_space(v, w);
    let cod = tensor_space(w, v);
    let mut m = SparseMatrix::zeros(field, cod.dim(), dom.dim());
    for i in 0..v.dim() {
        for j in 0..w.dim() {
            m.set(j * v.dim() + i, i * w.dim() + j, koszul_sign(field, v.parities[i], w.parities[j]));
        }
    }
    SuperLinearMap {
        domain: dom,
        codomain: cod,
        matrix: m,
        parity: Parity::Even,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn m(field: &Field, rows: &[&[i64]]) -> SparseMatrix {
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let rs: Vec<Vec<Elem>> =
            rows.iter().map(|r| r.iter().map(|a| field.from_int(*a)).collect()).collect();
        SparseMatrix::from_rows(field, ncols, &rs)
    }

    #[test]
    fn kernel_image_rank() {
        let k = Field::rationals();
        let a = m(&k, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ker = a.kernel();
        assert_eq!(ker.len(), 1);
        assert!(a.mul_vec(&ker[0]).iter().all(|x| x.is_zero()));
        assert_eq!(a.image().len(), 2);
    }

    #[test]
    fn solve_and_inconsistency() {
        let k = f5();
        let a = m(&k, &[&[1, 1], &[1, 1]]);
        let ok = a.solve(&[k.from_int(2), k.from_int(2)]).unwrap();
        assert_eq!(a.mul_vec(&ok), vec![k.from_int(2), k.from_int(2)]);
        assert_eq!(
            a.solve(&[k.from_int(1), k.from_int(2)]),
            Err(SuperlinError::InconsistentSystem)
        );
    }

    #[test]
    fn inverse() {
        let k = f5();
        let a = m(&k, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), SparseMatrix::identity(&k, 2));
        assert!(m(&k, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn parity_is_enforced() {
        let k = f5();
        let v = SuperSpace::new(vec![Parity::Even, Parity::Odd]);
        let swap = m(&k, &[&[0, 1], &[1, 0]]);
        assert!(SuperLinearMap::new(v.clone(), v.clone(), swap.clone(), Parity::Odd).is_ok());
        assert!(matches!(
            SuperLinearMap::new(v.clone(), v, swap, Parity::Even),
            Err(SuperlinError::ParityViolation { .. })
        ));
    }

    #[test]
    fn braiding_squares_to_identity() {
        let k = Field::rationals();
        let v = SuperSpace::new(vec![Parity::Even, Parity::Odd]);
        let w = SuperSpace::new(vec![Parity::Odd, Parity::Odd, Parity::Even]);
        let b1 = braiding(&k, &v, &w);
        let b2 = braiding(&k, &w, &v);
        let id = SparseMatrix::identity(&k, 6);
        assert_eq!(b2.compose(&b1).unwrap().matrix, id);
        // odd ⊗ odd picks up a sign
        assert_eq!(b1.matrix.get(1, 3), -k.one());
    }

    #[test]
    fn tensor_of_odd_maps_carries_sign() {
        let k = Field::rationals();
        let v = SuperSpace::new(vec![Parity::Even, Parity::Odd]);
        let shift = SuperLinearMap::new(v.clone(), v.clone(), m(&k, &[&[0, 1], &[1, 0]]), Parity::Odd).unwrap();
        let t = shift.tensor(&shift);
        assert_eq!(t.parity, Parity::Even);
        // (f ⊗ f)(e1 ⊗ e1) = -f(e1) ⊗ f(e1) since |f| = |e1| = 1
        assert_eq!(t.matrix.get(0, 3), -k.one());
        assert_eq!(t.matrix.get(3, 0), k.one());
    }

    #[test]
    fn triplet_round_trip() {
        let k = Field::function_field(3, "t").unwrap();
        let mut a = SparseMatrix::zeros(&k, 2, 3);
        a.set(0, 2, k.parse("t/(t+1)").unwrap());
        a.set(1, 0, k.parse("2").unwrap());
        let b = SparseMatrix::from_triplets(&k, 2, 3, &a.to_triplets()).unwrap();
        assert_eq!(a, b);
    }
}
