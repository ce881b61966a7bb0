//! Square matrices over a semiring, circulant matrices and the flattening of
//! two-sided products into linear-system columns.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::semiring::Semiring;

/// `n × n` matrix, row-major. JSON form: `{"n": 2, "rows": [[..], [..]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr<S>", into = "MatrixRepr<S>")]
#[serde(bound(serialize = "S: Serialize + Clone", deserialize = "S: Deserialize<'de>"))]
pub struct Matrix<S> {
    n: usize,
    entries: Vec<S>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr<S> {
    n: usize,
    rows: Vec<Vec<S>>,
}

impl<S> TryFrom<MatrixRepr<S>> for Matrix<S> {
    type Error = Error;

    fn try_from(repr: MatrixRepr<S>) -> Result<Self> {
        Matrix::from_rows(repr.rows).and_then(|m| {
            check_dim(repr.n, m.n)?;
            Ok(m)
        })
    }
}

impl<S: Clone> From<Matrix<S>> for MatrixRepr<S> {
    fn from(m: Matrix<S>) -> Self {
        MatrixRepr {
            n: m.n,
            rows: m.rows().map(<[S]>::to_vec).collect(),
        }
    }
}

impl<S> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidParameter("matrix dimension must be at least 1".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            check_dim(n, row.len())?;
            entries.extend(row);
        }
        Ok(Matrix { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Matrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.entries.chunks(self.n)
    }

    /// Row-major flattening, length `n²`.
    pub fn as_slice(&self) -> &[S] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<S> {
        self.entries
    }

    pub fn map<T>(&self, f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<S: Semiring> Matrix<S> {
    pub fn zero(n: usize) -> Self {
        Matrix::from_fn(n, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// Entrywise `⊕`.
    pub fn add(&self, rhs: &Matrix<S>) -> Result<Matrix<S>> {
        check_dim(self.n, rhs.n)?;
        Ok(Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.add(b)).collect(),
        })
    }

    /// `(A ⊗ B)_ij = ⊕_k A_ik ⊗ B_kj`.
    pub fn mul(&self, rhs: &Matrix<S>) -> Result<Matrix<S>> {
        check_dim(self.n, rhs.n)?;
        let n = self.n;
        Ok(Matrix::from_fn(n, |i, j| {
            (0..n).fold(S::zero(), |acc, k| acc.add(&self.get(i, k).mul(rhs.get(k, j))))
        }))
    }

    /// `z ⊗ A` entrywise, the action of the scalar matrix `zI`.
    pub fn scale(&self, z: &S) -> Matrix<S> {
        self.map(|a| z.mul(a))
    }

    pub fn is_circulant(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| self.get(i, j) == self.get((i + n - j) % n, 0)))
    }
}

/// `Circ(c_0, …, c_{n-1})`: the matrix with `C_ij = c_{(i - j) mod n}`, so the
/// first column reads `c_0 … c_{n-1}` top to bottom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CirculantRepr<S>", into = "CirculantRepr<S>")]
#[serde(bound(serialize = "S: Serialize + Clone", deserialize = "S: Deserialize<'de>"))]
pub struct Circulant<S> {
    first_column: Vec<S>,
}

#[derive(Serialize, Deserialize)]
struct CirculantRepr<S> {
    n: usize,
    c: Vec<S>,
}

impl<S> TryFrom<CirculantRepr<S>> for Circulant<S> {
    type Error = Error;

    fn try_from(repr: CirculantRepr<S>) -> Result<Self> {
        check_dim(repr.n, repr.c.len())?;
        Circulant::new(repr.c)
    }
}

impl<S: Clone> From<Circulant<S>> for CirculantRepr<S> {
    fn from(c: Circulant<S>) -> Self {
        CirculantRepr {
            n: c.first_column.len(),
            c: c.first_column,
        }
    }
}

impl<S> Circulant<S> {
    pub fn new(first_column: Vec<S>) -> Result<Self> {
        if first_column.is_empty() {
            return Err(Error::InvalidParameter("circulant dimension must be at least 1".into()));
        }
        Ok(Circulant { first_column })
    }

    pub fn n(&self) -> usize {
        self.first_column.len()
    }

    pub fn first_column(&self) -> &[S] {
        &self.first_column
    }
}

impl<S: Clone> Circulant<S> {
    pub fn expand(&self) -> Matrix<S> {
        let n = self.n();
        Matrix::from_fn(n, |i, j| self.first_column[(i + n - j) % n].clone())
    }
}

impl<S: Semiring> Circulant<S> {
    /// The multiplicative identity `Circ(1, 0, …, 0)`.
    pub fn identity(n: usize) -> Self {
        Circulant {
            first_column: (0..n).map(|i| if i == 0 { S::one() } else { S::zero() }).collect(),
        }
    }
}

/// Generators `C_i = Circ(e_i)`, `i = 0..n`, so that
/// `Circ(a_0, …, a_{n-1}) = ⊕_i a_i ⊗ C_i`.
pub fn circulant_generators<S: Semiring>(n: usize) -> Vec<Matrix<S>> {
    (0..n)
        .map(|i| {
            let e = (0..n).map(|k| if k == i { S::one() } else { S::zero() }).collect();
            Circulant { first_column: e }.expand()
        })
        .collect()
}

/// Flattened two-sided products with the generator pair `(i, j)` of each.
pub type TwoSidedColumns<S> = (Vec<Vec<S>>, Vec<(usize, usize)>);

/// Flattened products `L_i ⊗ M ⊗ R_j`, one per generator pair, in row-major
/// `(i, j)` order. The returned index maps position `k` back to `(i, j)`.
pub fn flatten_two_sided<S: Semiring>(
    m: &Matrix<S>,
    gens_left: &[Matrix<S>],
    gens_right: &[Matrix<S>],
) -> Result<TwoSidedColumns<S>> {
    let mut columns = Vec::with_capacity(gens_left.len() * gens_right.len());
    let mut index = Vec::with_capacity(columns.capacity());
    for (i, l) in gens_left.iter().enumerate() {
        let lm = l.mul(m)?;
        for (j, r) in gens_right.iter().enumerate() {
            columns.push(lm.mul(r)?.into_vec());
            index.push((i, j));
        }
    }
    Ok((columns, index))
}
