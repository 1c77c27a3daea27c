use crate::field::Field;

use super::sparse::{self, SparseVec};

/// Incrementally built row echelon basis.
///
/// Every stored row has leading entry `1` at its pivot column and no entries
/// to the left of it. Rows are not reduced against later pivots, so the
/// insertion order survives: this is what lets a quotient basis keep the
/// denominator rows separate from the representatives.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    ambient: usize,
    rows: Vec<SparseVec<E>>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<usize>,
}

/// Result of reducing a vector against an echelon basis.
#[derive(Clone, Debug)]
pub struct Reduction<E> {
    /// `(row index, coefficient)` for every row that was subtracted.
    pub coefficients: Vec<(usize, E)>,
    pub residual: SparseVec<E>,
}

impl<E: Clone + PartialEq> Echelon<E> {
    pub fn new(ambient: usize) -> Self {
        Echelon {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_pivot: vec![usize::MAX; ambient],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_pivot[col] != usize::MAX
    }

    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> Reduction<E> {
        let mut x = v.clone();
        let mut coefficients = Vec::new();
        let mut pos = 0;
        while pos < x.len() {
            let (col, ref a) = x[pos];
            let r = self.row_of_pivot[col];
            if r == usize::MAX {
                pos += 1;
                continue;
            }
            let coeff = a.clone();
            x = sparse::axpy_from(field, &x, pos, &field.neg(&coeff), &self.rows[r]);
            coefficients.push((r, coeff));
        }
        Reduction {
            coefficients,
            residual: x,
        }
    }

    pub fn residual<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> SparseVec<E> {
        self.reduce(field, v).residual
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> bool {
        self.residual(field, v).is_empty()
    }

    /// Adds `v` to the span. Returns the new pivot column, or `None` if `v`
    /// was already in the span.
    pub fn insert<F: Field<Elem = E>>(&mut self, field: &F, v: &SparseVec<E>) -> Option<usize> {
        let residual = self.residual(field, v);
        self.push_reduced(field, residual)
    }

    /// Adds a vector that is already reduced against the current rows.
    pub(crate) fn push_reduced<F: Field<Elem = E>>(
        &mut self,
        field: &F,
        residual: SparseVec<E>,
    ) -> Option<usize> {
        let (pivot, lead) = residual.first()?.clone();
        let row = if field.is_one(&lead) {
            residual
        } else {
            sparse::scale(field, &field.inv(&lead), &residual)
        };
        self.row_of_pivot[pivot] = self.rows.len();
        self.rows.push(row);
        self.pivots.push(pivot);
        Some(pivot)
    }

    /// Fully reduced row echelon basis of the span, sorted by pivot.
    pub fn into_rref<F: Field<Elem = E>>(self, field: &F) -> (Vec<SparseVec<E>>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.pivots[r]));
        let mut done = Echelon::new(self.ambient);
        for r in order {
            let reduced = done.residual(field, &self.rows[r]);
            done.push_reduced(field, reduced);
        }
        let mut pairs: Vec<(usize, SparseVec<E>)> =
            done.pivots.into_iter().zip(done.rows).collect();
        pairs.sort_by_key(|(p, _)| *p);
        let (pivots, rows) = pairs.into_iter().unzip();
        (rows, pivots)
    }
}
