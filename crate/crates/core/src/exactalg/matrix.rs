use std::fmt;

use crate::error::{Error, Result};

use super::{FieldSpec, Scalar};

/// Dense row-major matrix over one exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of Gauss–Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Reduced row-echelon form, same shape as the input (zero rows last).
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Matrix::new(field, n, cols, data)
    }

    /// Integer entries, for tests and fixtures.
    pub fn from_ints(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Matrix::from_rows(field, cols, rows)
    }

    pub fn empty(field: FieldSpec, cols: usize) -> Self {
        Matrix {
            field,
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut data = vec![field.zero(); n * n];
        for i in 0..n {
            data[i * n + i] = field.one();
        }
        Matrix {
            field,
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// `M · v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        if let Some(bad) = v.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch(self.field, bad.field()));
        }
        Ok(self.row_iter().map(|row| dot(row, v, self.field)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Gauss–Jordan elimination with first-nonzero pivoting.
    pub fn rref(&self) -> Rref {
        let mut m: Vec<Vec<Scalar>> = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].inv().expect("pivot is nonzero");
            for v in m[r][c..].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for j in c..self.cols {
                    let t = &factor * &pivot_row[j];
                    row[j] = &row[j] - &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        let reduced = Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: m.into_iter().flatten().collect(),
        };
        Rref {
            reduced,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical basis of the row space: the nonzero rows of the rref.
    pub fn row_space_basis(&self) -> Matrix {
        let rref = self.rref();
        let rank = rref.rank;
        let mut reduced = rref.reduced;
        reduced.data.truncate(rank * self.cols);
        reduced.rows = rank;
        reduced
    }

    /// Basis of `{v : M v = 0}`, returned as rows in reduced echelon form.
    pub fn kernel_basis(&self) -> Matrix {
        let rref = self.rref();
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| !rref.pivots.contains(c))
            .collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (i, &pc) in rref.pivots.iter().enumerate() {
                v[pc] = -rref.reduced.get(i, f);
            }
            rows.push(v);
        }
        let basis = Matrix::from_rows(self.field, self.cols, rows).expect("shape is consistent");
        basis.row_space_basis()
    }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar], field: FieldSpec) -> Scalar {
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
}

/// Whether the row space of `b` contains the row space of `a`.
pub fn span_contains(a: &Matrix, b: &Matrix) -> Result<bool> {
    let stacked = b.vstack(a)?;
    Ok(stacked.rank() == b.rank())
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
