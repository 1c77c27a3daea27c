use crate::error::{Error, Result};
use crate::field::Field;

use super::sparse::{self, SparseVec};

/// Column-major sparse matrix. Columns are sorted coordinate lists without zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Columns must already be sorted, zero-free and in range.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec<E>>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|(r, _)| *r < rows)));
        Matrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &SparseVec<E> {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVec<E>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// All stored entries as `(row, col, value)`, column by column.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut out: Vec<SparseVec<E>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                out[*r].push((c, v.clone()));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            columns: out,
        }
    }

    /// Keeps the listed rows (renumbered in the given order) and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut row_map = vec![usize::MAX; self.rows];
        for (new, &old) in rows.iter().enumerate() {
            row_map[old] = new;
        }
        let columns = cols
            .iter()
            .map(|&c| {
                let mut col: SparseVec<E> = self.columns[c]
                    .iter()
                    .filter(|(r, _)| row_map[*r] != usize::MAX)
                    .map(|(r, v)| (row_map[*r], v.clone()))
                    .collect();
                col.sort_by_key(|(r, _)| *r);
                col
            })
            .collect();
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            columns,
        }
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        Matrix {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![(i, field.one())]).collect(),
        }
    }

    pub fn from_triplets<F: Field<Elem = E>>(
        field: &F,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, E)>,
    ) -> Result<Self> {
        let mut buckets: Vec<Vec<(usize, E)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::DimensionMismatch {
                    op: "matrix entry",
                    left: r.max(c),
                    right: rows.max(cols),
                });
            }
            buckets[c].push((r, v));
        }
        let columns = buckets
            .into_iter()
            .map(|b| sparse::from_pairs(field, b))
            .collect();
        Ok(Matrix {
            rows,
            cols,
            columns,
        })
    }

    /// Dense row-major integer literal, mostly for tests.
    pub fn from_rows_i64<F: Field<Elem = E>>(field: &F, rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let triplets = rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(c, v)| (r, c, field.from_i64(*v)))
        });
        Self::from_triplets(field, nrows, ncols, triplets.collect::<Vec<_>>())
            .expect("dense literal is in range")
    }

    pub fn get<F: Field<Elem = E>>(&self, field: &F, r: usize, c: usize) -> E {
        sparse::get(field, &self.columns[c], r)
    }

    /// `self * v` for a sparse vector `v` of length `cols`.
    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> SparseVec<E> {
        let mut acc: SparseVec<E> = Vec::new();
        for (c, coeff) in v {
            acc = sparse::axpy(field, &acc, coeff, &self.columns[*c]);
        }
        acc
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> Result<Matrix<E>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matrix product",
                left: self.cols,
                right: other.rows,
            });
        }
        let columns = other
            .columns
            .iter()
            .map(|col| self.mul_vec(field, col))
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        })
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut out = vec![vec![field.zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }
}
