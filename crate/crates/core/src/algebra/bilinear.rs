use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::linalg::{sparse, Matrix, SparseVec};

/// A bilinear map `U x V -> W` given by its values on basis pairs.
///
/// Algebra multiplications, one-sided actions and the maps between
/// bimodules are all stored this way.
#[derive(Clone, Debug, PartialEq)]
pub struct Bilinear<E> {
    left: usize,
    right: usize,
    out: usize,
    table: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq> Bilinear<E> {
    pub fn zero(left: usize, right: usize, out: usize) -> Self {
        Bilinear {
            left,
            right,
            out,
            table: vec![Vec::new(); left * right],
        }
    }

    /// Builds the map from sparse `(a, b, c, coeff)` entries meaning
    /// `u_a * v_b` has coefficient `coeff` on `w_c`. Repeated entries add up.
    pub fn from_entries<F: Field<Elem = E>>(
        field: &F,
        left: usize,
        right: usize,
        out: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, E)>,
    ) -> Result<Self> {
        let mut buckets: Vec<Vec<(usize, E)>> = vec![Vec::new(); left * right];
        for (a, b, c, v) in entries {
            if a >= left || b >= right || c >= out {
                return Err(Error::InvalidAlgebra(format!(
                    "structure constant ({a}, {b}, {c}) out of range for shape {left} x {right} -> {out}"
                )));
            }
            buckets[a * right + b].push((c, v));
        }
        let table = buckets
            .into_iter()
            .map(|b| sparse::from_pairs(field, b))
            .collect();
        Ok(Bilinear {
            left,
            right,
            out,
            table,
        })
    }

    pub(crate) fn from_table(
        left: usize,
        right: usize,
        out: usize,
        table: Vec<SparseVec<E>>,
    ) -> Self {
        debug_assert_eq!(table.len(), left * right);
        Bilinear {
            left,
            right,
            out,
            table,
        }
    }

    pub fn left_dim(&self) -> usize {
        self.left
    }

    pub fn right_dim(&self) -> usize {
        self.right
    }

    pub fn out_dim(&self) -> usize {
        self.out
    }

    /// Value on the basis pair `(a, b)`.
    pub fn get(&self, a: usize, b: usize) -> &SparseVec<E> {
        &self.table[a * self.right + b]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    /// Nonzero structure constants as `(a, b, c, coeff)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &E)> {
        let right = self.right;
        self.table.iter().enumerate().flat_map(move |(ab, v)| {
            v.iter()
                .map(move |(c, coeff)| (ab / right, ab % right, *c, coeff))
        })
    }

    pub fn apply<F: Field<Elem = E>>(
        &self,
        field: &F,
        x: &SparseVec<E>,
        y: &SparseVec<E>,
    ) -> SparseVec<E> {
        let mut pairs = Vec::new();
        for (a, xa) in x {
            for (b, yb) in y {
                let coeff = field.mul(xa, yb);
                for (c, v) in self.get(*a, *b) {
                    pairs.push((*c, field.mul(&coeff, v)));
                }
            }
        }
        sparse::from_pairs(field, pairs)
    }

    /// `u_a * y`.
    pub fn apply_left_basis<F: Field<Elem = E>>(
        &self,
        field: &F,
        a: usize,
        y: &SparseVec<E>,
    ) -> SparseVec<E> {
        let mut pairs = Vec::new();
        for (b, yb) in y {
            for (c, v) in self.get(a, *b) {
                pairs.push((*c, field.mul(yb, v)));
            }
        }
        sparse::from_pairs(field, pairs)
    }

    /// `x * v_b`.
    pub fn apply_right_basis<F: Field<Elem = E>>(
        &self,
        field: &F,
        x: &SparseVec<E>,
        b: usize,
    ) -> SparseVec<E> {
        let mut pairs = Vec::new();
        for (a, xa) in x {
            for (c, v) in self.get(*a, b) {
                pairs.push((*c, field.mul(xa, v)));
            }
        }
        sparse::from_pairs(field, pairs)
    }

    /// Matrix from the tensor basis `u_a (x) v_b` (column `a * right + b`) to `W`.
    pub fn to_matrix(&self) -> Matrix<E> {
        Matrix::from_columns(self.out, self.table.clone())
    }
}

impl Bilinear<BigRational> {
    /// Image of rational structure constants in another field.
    pub fn convert<F: Field>(&self, field: &F) -> Result<Bilinear<F::Elem>> {
        let mut table = Vec::with_capacity(self.table.len());
        for v in &self.table {
            let mut out = Vec::with_capacity(v.len());
            for (c, x) in v {
                let y = field.from_rational(x)?;
                if !field.is_zero(&y) {
                    out.push((*c, y));
                }
            }
            table.push(out);
        }
        Ok(Bilinear {
            left: self.left,
            right: self.right,
            out: self.out,
            table,
        })
    }
}

/// Converts a rational sparse vector into another field.
pub fn convert_vec<F: Field>(field: &F, v: &SparseVec<BigRational>) -> Result<SparseVec<F::Elem>> {
    let mut out = Vec::with_capacity(v.len());
    for (i, x) in v {
        let y = field.from_rational(x)?;
        if !field.is_zero(&y) {
            out.push((*i, y));
        }
    }
    Ok(out)
}

pub(crate) const QQ: Rationals = Rationals;

pub(crate) fn basis_vec(i: usize) -> SparseVec<BigRational> {
    vec![(i, QQ.one())]
}
