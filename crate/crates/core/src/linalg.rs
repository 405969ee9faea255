//! Dense linear algebra over `F_q`: row reduction, rank, null spaces and subspace enumeration.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

pub type Matrix = Vec<Vec<Elem>>;

/// Reduced row echelon form with zero rows dropped. Returns the rows and their pivot columns.
pub fn rref(field: &Field, rows: &[Vec<Elem>]) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv(m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(field: &Field, rows: &[Vec<Elem>]) -> usize {
    rref(field, rows).0.len()
}

/// Basis of `{x : M x^T = 0}`, as rows of length `ncols`.
pub fn nullspace(field: &Field, rows: &[Vec<Elem>], ncols: usize) -> Matrix {
    let (m, pivots) = rref(field, rows);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Elem::ZERO; ncols];
        v[free] = Elem::ONE;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = field.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

/// `x · M` for a coefficient row `x`.
pub fn combine(field: &Field, coeffs: &[Elem], rows: &[Vec<Elem>], ncols: usize) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; ncols];
    for (&c, row) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o = field.add(*o, field.mul(c, x));
        }
    }
    out
}

/// Matrix–vector product `M v`.
pub fn mat_vec(field: &Field, rows: &[Vec<Elem>], v: &[Elem]) -> Vec<Elem> {
    rows.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Elem::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
        })
        .collect()
}

/// Whether `v` lies in the row space of the RREF matrix `m` with pivots `pivots`.
pub fn in_row_space(field: &Field, m: &[Vec<Elem>], pivots: &[usize], v: &[Elem]) -> bool {
    let mut r = v.to_vec();
    for (row, &pc) in m.iter().zip(pivots) {
        let c = r[pc];
        if c.is_zero() {
            continue;
        }
        for (x, &y) in r.iter_mut().zip(row) {
            *x = field.sub(*x, field.mul(c, y));
        }
    }
    r.iter().all(|x| x.is_zero())
}

/// All `q^k` elements of the row space, in coefficient order with the first row's coefficient
/// varying fastest. Fails when `q^k` exceeds `bound`.
pub fn span(field: &Field, rows: &[Vec<Elem>], ncols: usize, bound: u64) -> Result<Vec<Vec<Elem>>> {
    let k = rows.len();
    let q = field.q() as u64;
    let total = q
        .checked_pow(k as u32)
        .filter(|&t| t <= bound)
        .ok_or_else(|| Error::TooLarge(alloc::format!("{q}^{k} code words")))?;
    let mut out: Vec<Vec<Elem>> = Vec::with_capacity(total as usize);
    out.push(vec![Elem::ZERO; ncols]);
    // Build by blocks: after processing row i, out holds all combinations of rows 0..=i.
    for row in rows {
        let block = out.len();
        for c in 1..q {
            let c = Elem(c as u32);
            let scaled: Vec<Elem> = row.iter().map(|&x| field.mul(c, x)).collect();
            for idx in 0..block {
                let v: Vec<Elem> = out[idx]
                    .iter()
                    .zip(&scaled)
                    .map(|(&a, &b)| field.add(a, b))
                    .collect();
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// Every subspace of `F_q^m` of dimension `k`, each as its RREF basis.
pub fn subspaces_of_dim(field: &Field, m: usize, k: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(field, m, k, 0, &mut pivots, &mut out);
    out
}

/// Every subspace of `F_q^m`, by increasing dimension.
pub fn all_subspaces(field: &Field, m: usize) -> Vec<Matrix> {
    (0..=m).flat_map(|k| subspaces_of_dim(field, m, k)).collect()
}

fn choose_pivots(field: &Field, m: usize, k: usize, start: usize, pivots: &mut Vec<usize>, out: &mut Vec<Matrix>) {
    if pivots.len() == k {
        fill_free(field, m, pivots, out);
        return;
    }
    for c in start..m {
        pivots.push(c);
        choose_pivots(field, m, k, c + 1, pivots, out);
        pivots.pop();
    }
}

fn fill_free(field: &Field, m: usize, pivots: &[usize], out: &mut Vec<Matrix>) {
    // free slots: row r, column c > pivots[r] with c not a pivot
    let mut slots = Vec::new();
    for (r, &pc) in pivots.iter().enumerate() {
        for c in pc + 1..m {
            if !pivots.contains(&c) {
                slots.push((r, c));
            }
        }
    }
    let q = field.q() as u64;
    let count = q.pow(slots.len() as u32);
    for mut idx in 0..count {
        let mut mat = vec![vec![Elem::ZERO; m]; pivots.len()];
        for (r, &pc) in pivots.iter().enumerate() {
            mat[r][pc] = Elem::ONE;
        }
        for &(r, c) in &slots {
            mat[r][c] = Elem((idx % q) as u32);
            idx /= q;
        }
        out.push(mat);
    }
}
