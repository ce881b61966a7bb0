//! Exact linear algebra over `F_p`.

use super::PrimeField;
use crate::error::{check_dim, Error, Result};

/// Dense `rows × cols` matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FpMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            check_dim(cols, r.len())?;
            data.extend_from_slice(r);
        }
        Ok(FpMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds the matrix whose `k`-th column is `columns[k]`.
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Result<Self> {
        let mut m = FpMatrix::zeros(rows, columns.len());
        for (k, c) in columns.iter().enumerate() {
            check_dim(rows, c.len())?;
            for (i, &v) in c.iter().enumerate() {
                m.set(i, k, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, fp: PrimeField, z: &[u32]) -> Result<Vec<u32>> {
        check_dim(self.cols, z.len())?;
        Ok(self
            .data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(|row| row.iter().zip(z).fold(0, |acc, (&a, &x)| fp.add(acc, fp.mul(a, x))))
            .collect())
    }

    /// Same matrix with columns reordered: column `k` of the result is
    /// column `order[k]` of `self`.
    pub fn permute_columns(&self, order: &[usize]) -> Result<Self> {
        check_dim(self.cols, order.len())?;
        let mut seen = vec![false; self.cols];
        for &c in order {
            if c >= self.cols || std::mem::replace(&mut seen[c], true) {
                return Err(Error::InvalidParameter("column order is not a permutation".into()));
            }
        }
        let mut out = FpMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (k, &c) in order.iter().enumerate() {
                out.set(i, k, self.get(i, c));
            }
        }
        Ok(out)
    }
}

/// Reduced row echelon form of `[a | b]` in place; returns pivot columns.
fn reduce(fp: PrimeField, a: &mut FpMatrix, b: &mut [u32]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(pr) = (row..a.rows).find(|&r| a.get(r, col) != 0) else {
            continue;
        };
        if pr != row {
            for j in 0..a.cols {
                let (x, y) = (a.get(row, j), a.get(pr, j));
                a.set(row, j, y);
                a.set(pr, j, x);
            }
            b.swap(row, pr);
        }
        let inv = fp.inv(a.get(row, col)).expect("pivot is non-zero");
        for j in col..a.cols {
            a.set(row, j, fp.mul(a.get(row, j), inv));
        }
        b[row] = fp.mul(b[row], inv);
        for r in 0..a.rows {
            let f = a.get(r, col);
            if r == row || f == 0 {
                continue;
            }
            for j in col..a.cols {
                a.set(r, j, fp.sub(a.get(r, j), fp.mul(f, a.get(row, j))));
            }
            b[r] = fp.sub(b[r], fp.mul(f, b[row]));
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Some `z` with `a · z = b`, free variables set to zero; `None` if the
/// system is inconsistent.
pub fn gauss_solve(fp: PrimeField, a: &FpMatrix, b: &[u32]) -> Result<Option<Vec<u32>>> {
    check_dim(a.rows, b.len())?;
    let mut m = a.clone();
    let mut rhs: Vec<u32> = b.iter().map(|&v| v % fp.p()).collect();
    for v in &mut m.data {
        *v %= fp.p();
    }
    let pivots = reduce(fp, &mut m, &mut rhs);
    if rhs[pivots.len()..].iter().any(|&v| v != 0) {
        return Ok(None);
    }
    let mut z = vec![0u32; a.cols];
    for (r, &c) in pivots.iter().enumerate() {
        z[c] = rhs[r];
    }
    Ok(Some(z))
}

pub fn rank(fp: PrimeField, a: &FpMatrix) -> usize {
    let mut m = a.clone();
    let mut rhs = vec![0; a.rows];
    reduce(fp, &mut m, &mut rhs).len()
}
