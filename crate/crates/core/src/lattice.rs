//! Integer matrix reductions: column echelon form, integer kernels and
//! solutions, Smith normal form. Entries are `i128`; sizes here are tiny.

pub type IMat = Vec<Vec<i128>>;

#[cfg(test)]
fn ncols(m: &IMat, fallback: usize) -> usize {
    m.first().map(|r| r.len()).unwrap_or(fallback)
}

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect()
}

pub fn mat_vec(m: &IMat, v: &[i128]) -> Vec<i128> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

#[cfg(test)]
pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = ncols(b, 0);
    a.iter()
        .map(|r| (0..n).map(|j| r.iter().enumerate().map(|(k, x)| x * b[k][j]).sum()).collect())
        .collect()
}

fn col_op(m: &mut IMat, dst: usize, src: usize, c: i128) {
    for r in m.iter_mut() {
        r[dst] += c * r[src];
    }
}

fn col_swap(m: &mut IMat, a: usize, b: usize) {
    for r in m.iter_mut() {
        r.swap(a, b);
    }
}

fn col_neg(m: &mut IMat, a: usize) {
    for r in m.iter_mut() {
        r[a] = -r[a];
    }
}

/// Column echelon form `E = M T` with `T` unimodular. Returns `(E, T, pivot_rows)`;
/// column `k < rank` has its first nonzero entry (positive) in `pivot_rows[k]`,
/// and columns from `rank` on are zero.
pub fn column_echelon(m: &IMat, n: usize) -> (IMat, IMat, Vec<usize>) {
    let mut e = m.clone();
    let mut t = identity(n);
    let mut pivots = Vec::new();
    let mut c = 0;
    for r in 0..e.len() {
        if c >= n {
            break;
        }
        loop {
            let nz: Vec<usize> = (c..n).filter(|&j| e[r][j] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&j| e[r][j].abs()).unwrap();
            col_swap(&mut e, c, best);
            col_swap(&mut t, c, best);
            if e[r][c] < 0 {
                col_neg(&mut e, c);
                col_neg(&mut t, c);
            }
            let mut clean = true;
            for j in c + 1..n {
                if e[r][j] != 0 {
                    let q = e[r][j].div_euclid(e[r][c]);
                    col_op(&mut e, j, c, -q);
                    col_op(&mut t, j, c, -q);
                    if e[r][j] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if e[r][c] != 0 {
            pivots.push(r);
            c += 1;
        }
    }
    (e, t, pivots)
}

/// Basis of `{x in Z^n : M x = 0}`.
pub fn kernel(m: &IMat, n: usize) -> Vec<Vec<i128>> {
    let (_, t, pivots) = column_echelon(m, n);
    (pivots.len()..n).map(|j| t.iter().map(|r| r[j]).collect()).collect()
}

/// Some integer solution of `M x = b`.
pub fn solve(m: &IMat, n: usize, b: &[i128]) -> Option<Vec<i128>> {
    let (e, t, pivots) = column_echelon(m, n);
    let mut res = b.to_vec();
    let mut y = vec![0i128; n];
    for (k, &r) in pivots.iter().enumerate() {
        if res[r] % e[r][k] != 0 {
            return None;
        }
        y[k] = res[r] / e[r][k];
        for (i, row) in e.iter().enumerate() {
            res[i] -= y[k] * row[k];
        }
    }
    if res.iter().any(|&v| v != 0) {
        return None;
    }
    Some(mat_vec(&t, &y))
}

/// Smith normal form `U M V = D`. Returns `(diagonal, U, V)` where `diagonal`
/// has length `min(rows, cols)` and entries are non-negative with each
/// dividing the next.
pub fn smith(m: &IMat, n: usize) -> (Vec<i128>, IMat, IMat) {
    let rows = m.len();
    let mut d = m.clone();
    let mut u = identity(rows);
    let mut v = identity(n);
    let k = rows.min(n);
    let mut t = 0;
    while t < k {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..n {
                if d[i][j] != 0 && best.is_none_or(|(a, b)| d[i][j].abs() < d[a][b].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap(t, bi);
        u.swap(t, bi);
        col_swap(&mut d, t, bj);
        col_swap(&mut v, t, bj);
        let mut dirty = false;
        for i in t + 1..rows {
            let q = d[i][t].div_euclid(d[t][t]);
            if q != 0 {
                for j in 0..n {
                    d[i][j] -= q * d[t][j];
                }
                for j in 0..rows {
                    u[i][j] -= q * u[t][j];
                }
            }
            dirty |= d[i][t] != 0;
        }
        for j in t + 1..n {
            let q = d[t][j].div_euclid(d[t][t]);
            if q != 0 {
                col_op(&mut d, j, t, -q);
                col_op(&mut v, j, t, -q);
            }
            dirty |= d[t][j] != 0;
        }
        if dirty {
            continue;
        }
        let p = d[t][t];
        let bad = (t + 1..rows).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| d[i][j] % p != 0);
        if let Some((i, _)) = bad {
            for j in 0..n {
                d[t][j] += d[i][j];
            }
            for j in 0..rows {
                u[t][j] += u[i][j];
            }
            continue;
        }
        if p < 0 {
            for j in 0..n {
                d[t][j] = -d[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
        t += 1;
    }
    let diag = (0..k).map(|i| d[i][i]).collect();
    (diag, u, v)
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(u: &IMat) -> IMat {
    let n = u.len();
    let cols: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            let e: Vec<i128> = (0..n).map(|j| (i == j) as i128).collect();
            solve(u, n, &e).expect("matrix is not unimodular")
        })
        .collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}
