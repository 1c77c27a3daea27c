use crate::error::{Error, Result};
use crate::field::Field;

use super::echelon::Echelon;
use super::matrix::Matrix;
use super::sparse::{self, SparseVec};

/// A linear subspace of `F^ambient`, stored by its reduced row echelon basis.
///
/// The representation is canonical: two subspaces are equal iff their
/// bases compare equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Vec<SparseVec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient: usize) -> Self {
        Self::coordinate(field, ambient, 0..ambient)
    }

    /// Span of the standard basis vectors at `indices`.
    pub fn coordinate<F: Field<Elem = E>>(
        field: &F,
        ambient: usize,
        indices: impl IntoIterator<Item = usize>,
    ) -> Self {
        let mut pivots: Vec<usize> = indices.into_iter().collect();
        pivots.sort_unstable();
        pivots.dedup();
        let basis = pivots.iter().map(|&i| vec![(i, field.one())]).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn span<'a, F: Field<Elem = E>>(
        field: &F,
        ambient: usize,
        vectors: impl IntoIterator<Item = &'a SparseVec<E>>,
    ) -> Self
    where
        E: 'a,
    {
        let mut ech = Echelon::new(ambient);
        for v in vectors {
            ech.insert(field, v);
        }
        Self::from_echelon(field, ech)
    }

    pub fn from_echelon<F: Field<Elem = E>>(field: &F, ech: Echelon<E>) -> Self {
        let ambient = ech.ambient_dim();
        let (basis, pivots) = ech.into_rref(field);
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec<E>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix<E> {
        Matrix::from_columns(self.ambient, self.basis.clone())
    }

    /// Echelon view of the basis, for incremental extension.
    pub fn to_echelon<F: Field<Elem = E>>(&self, field: &F) -> Echelon<E> {
        let mut ech = Echelon::new(self.ambient);
        for v in &self.basis {
            ech.push_reduced(field, v.clone());
        }
        ech
    }

    /// `v` minus its component along the pivot coordinates of this subspace.
    ///
    /// The result vanishes on every pivot column, and is zero iff `v` lies
    /// in the subspace.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> SparseVec<E> {
        // The basis is fully reduced, so the coefficient on each basis vector
        // is just the entry of `v` at its pivot.
        let hits: Vec<(usize, E)> = v
            .iter()
            .filter_map(|(i, c)| self.pivots.binary_search(i).ok().map(|k| (k, c.clone())))
            .collect();
        let mut x = v.clone();
        for (k, c) in hits {
            x = sparse::axpy(field, &x, &field.neg(&c), &self.basis[k]);
        }
        x
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> bool {
        self.reduce(field, v).is_empty()
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(field, b))
    }

    /// Image of this subspace under `m`.
    pub fn map<F: Field<Elem = E>>(&self, field: &F, m: &Matrix<E>) -> Result<Self> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                op: "subspace image",
                left: m.cols(),
                right: self.ambient,
            });
        }
        let images: Vec<_> = self.basis.iter().map(|b| m.mul_vec(field, b)).collect();
        Ok(Self::span(field, m.rows(), images.iter()))
    }
}

/// A basis of `numerator / denominator` given by lifted representatives.
///
/// Representatives are the numerator basis vectors that survive reduction
/// against the denominator, in pivot order; classes of arbitrary numerator
/// elements are read off by reduction.
#[derive(Clone, Debug)]
pub struct QuotientBasis<E> {
    echelon: Echelon<E>,
    rep_index: Vec<Option<usize>>,
    reps: Vec<usize>,
}

impl<E: Clone + PartialEq> QuotientBasis<E> {
    pub fn new<F: Field<Elem = E>>(
        field: &F,
        numerator: &Subspace<E>,
        denominator: &Subspace<E>,
    ) -> Result<Self> {
        if numerator.ambient_dim() != denominator.ambient_dim() {
            return Err(Error::DimensionMismatch {
                op: "quotient",
                left: numerator.ambient_dim(),
                right: denominator.ambient_dim(),
            });
        }
        let mut echelon = denominator.to_echelon(field);
        let mut rep_index = vec![None; denominator.dim()];
        let mut reps = Vec::new();
        for b in numerator.basis() {
            if echelon.insert(field, b).is_some() {
                rep_index.push(Some(reps.len()));
                reps.push(echelon.rank() - 1);
            }
        }
        if echelon.rank() != numerator.dim() {
            return Err(Error::NotNested);
        }
        Ok(QuotientBasis {
            echelon,
            rep_index,
            reps,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.echelon.ambient_dim()
    }

    pub fn representative(&self, i: usize) -> &SparseVec<E> {
        &self.echelon.rows()[self.reps[i]]
    }

    pub fn representatives(&self) -> impl Iterator<Item = &SparseVec<E>> {
        self.reps.iter().map(|&r| &self.echelon.rows()[r])
    }

    /// Coordinates of the class of `v` in the representative basis, or
    /// `None` when `v` is not in the numerator.
    pub fn coordinates<F: Field<Elem = E>>(
        &self,
        field: &F,
        v: &SparseVec<E>,
    ) -> Option<SparseVec<E>> {
        let red = self.echelon.reduce(field, v);
        if !red.residual.is_empty() {
            return None;
        }
        let pairs = red
            .coefficients
            .into_iter()
            .filter_map(|(row, c)| self.rep_index[row].map(|i| (i, c)))
            .collect();
        Some(sparse::from_pairs(field, pairs))
    }
}
