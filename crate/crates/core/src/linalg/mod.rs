//! Exact sparse linear algebra and the subspace calculus.
//!
//! Everything here is a pure function of immutable inputs; values can be
//! shared freely across threads.

mod echelon;
mod matrix;
pub mod sparse;
mod subspace;

pub use echelon::{Echelon, Reduction};
pub use matrix::Matrix;
pub use sparse::SparseVec;
pub use subspace::{QuotientBasis, Subspace};

use crate::error::{Error, Result};
use crate::field::Field;

/// Reduced row echelon form of `m` and its pivot columns.
///
/// Nonzero rows come first, sorted by pivot; the rank is `pivots.len()`.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let rows = m.transpose();
    let mut ech = Echelon::new(m.cols());
    for row in rows.columns() {
        ech.insert(field, row);
    }
    let (mut basis, pivots) = ech.into_rref(field);
    basis.resize(m.rows(), Vec::new());
    (Matrix::from_columns(m.cols(), basis).transpose(), pivots)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    // Eliminate along the shorter side.
    let mut ech;
    if m.cols() <= m.rows() {
        ech = Echelon::new(m.rows());
        for col in m.columns() {
            ech.insert(field, col);
        }
    } else {
        let t = m.transpose();
        ech = Echelon::new(t.rows());
        for col in t.columns() {
            ech.insert(field, col);
        }
    }
    ech.rank()
}

pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    let rows = m.transpose();
    let mut ech = Echelon::new(m.cols());
    for row in rows.columns() {
        ech.insert(field, row);
    }
    let (basis, pivots) = ech.into_rref(field);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<SparseVec<F::Elem>> = (0..m.cols())
        .filter(|c| !is_pivot[*c])
        .map(|free| {
            let mut v: Vec<(usize, F::Elem)> = basis
                .iter()
                .zip(&pivots)
                .filter_map(|(row, &p)| {
                    let c = sparse::get(field, row, free);
                    (!field.is_zero(&c)).then(|| (p, field.neg(&c)))
                })
                .collect();
            v.push((free, field.one()));
            sparse::from_pairs(field, v)
        })
        .collect();
    Subspace::span(field, m.cols(), vectors.iter())
}

pub fn image<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    Subspace::span(field, m.rows(), m.columns().iter())
}

fn check_ambient<E: Clone + PartialEq>(
    op: &'static str,
    u: &Subspace<E>,
    v: &Subspace<E>,
) -> Result<()> {
    if u.ambient_dim() != v.ambient_dim() {
        return Err(Error::DimensionMismatch {
            op,
            left: u.ambient_dim(),
            right: v.ambient_dim(),
        });
    }
    Ok(())
}

pub fn subspace_sum<F: Field>(
    field: &F,
    u: &Subspace<F::Elem>,
    v: &Subspace<F::Elem>,
) -> Result<Subspace<F::Elem>> {
    check_ambient("subspace sum", u, v)?;
    let mut ech = u.to_echelon(field);
    for b in v.basis() {
        ech.insert(field, b);
    }
    Ok(Subspace::from_echelon(field, ech))
}

/// Zassenhaus intersection.
pub fn subspace_intersect<F: Field>(
    field: &F,
    u: &Subspace<F::Elem>,
    v: &Subspace<F::Elem>,
) -> Result<Subspace<F::Elem>> {
    check_ambient("subspace intersection", u, v)?;
    let n = u.ambient_dim();
    if u.is_zero() || v.is_zero() {
        return Ok(Subspace::zero(n));
    }
    let mut ech = Echelon::new(2 * n);
    for b in u.basis() {
        let mut doubled = b.clone();
        doubled.extend(b.iter().map(|(i, c)| (i + n, c.clone())));
        ech.insert(field, &doubled);
    }
    for b in v.basis() {
        ech.insert(field, b);
    }
    let meet: Vec<SparseVec<F::Elem>> = ech
        .rows()
        .iter()
        .zip(ech.pivots())
        .filter(|(_, &p)| p >= n)
        .map(|(row, _)| row.iter().map(|(i, c)| (i - n, c.clone())).collect())
        .collect();
    Ok(Subspace::span(field, n, meet.iter()))
}

/// `{ x : m x in v }`.
pub fn preimage<F: Field>(
    field: &F,
    m: &Matrix<F::Elem>,
    v: &Subspace<F::Elem>,
) -> Result<Subspace<F::Elem>> {
    if v.ambient_dim() != m.rows() {
        return Err(Error::DimensionMismatch {
            op: "preimage",
            left: m.rows(),
            right: v.ambient_dim(),
        });
    }
    // Reducing modulo v is a linear map whose kernel is exactly v.
    let residuals: Vec<_> = m.columns().iter().map(|c| v.reduce(field, c)).collect();
    Ok(kernel(field, &Matrix::from_columns(m.rows(), residuals)))
}

/// `dim u - dim v`, after checking `v ⊆ u`.
pub fn quotient_dim<F: Field>(
    field: &F,
    u: &Subspace<F::Elem>,
    v: &Subspace<F::Elem>,
) -> Result<usize> {
    check_ambient("quotient", u, v)?;
    if !v.is_subspace_of(field, u) {
        return Err(Error::NotNested);
    }
    Ok(u.dim() - v.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn mat(rows: &[Vec<i64>]) -> Matrix<num_rational::BigRational> {
        Matrix::from_rows_i64(&Rationals, rows)
    }

    fn span(ambient: usize, vecs: &[Vec<i64>]) -> Subspace<num_rational::BigRational> {
        let f = Rationals;
        let sv: Vec<_> = vecs
            .iter()
            .map(|v| sparse::from_dense(&f, &v.iter().map(|x| f.from_i64(*x)).collect::<Vec<_>>()))
            .collect();
        Subspace::span(&f, ambient, sv.iter())
    }

    #[test]
    fn rref_examples() {
        let f = Rationals;
        let id = Matrix::identity(&f, 2);
        assert_eq!(rref(&f, &id), (id.clone(), vec![0, 1]));

        let z = Matrix::zeros(3, 4);
        assert_eq!(rref(&f, &z), (z.clone(), vec![]));

        let (r, p) = rref(&f, &mat(&[vec![1, 2], vec![2, 4]]));
        assert_eq!(r, mat(&[vec![1, 2], vec![0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        let f = Rationals;
        assert_eq!(kernel(&f, &Matrix::identity(&f, 3)).dim(), 0);
        assert_eq!(kernel(&f, &Matrix::zeros(2, 4)).dim(), 4);
        let k = kernel(&f, &mat(&[vec![1, 1]]));
        assert_eq!(k, span(2, &[vec![1, -1]]));
    }

    #[test]
    fn image_examples() {
        let f = Rationals;
        assert_eq!(image(&f, &Matrix::identity(&f, 3)), Subspace::full(&f, 3));
        assert!(image(&f, &Matrix::zeros(3, 2)).is_zero());
        assert_eq!(image(&f, &mat(&[vec![1], vec![2]])), span(2, &[vec![1, 2]]));
    }

    #[test]
    fn sum_and_intersection_examples() {
        let f = Rationals;
        let e1 = span(2, &[vec![1, 0]]);
        let e2 = span(2, &[vec![0, 1]]);
        let u = span(3, &[vec![1, 2, 3], vec![0, 1, 1]]);
        assert_eq!(subspace_sum(&f, &u, &Subspace::zero(3)).unwrap(), u);
        assert_eq!(subspace_sum(&f, &e1, &e2).unwrap(), Subspace::full(&f, 2));
        assert_eq!(subspace_sum(&f, &u, &u).unwrap(), u);

        assert_eq!(
            subspace_intersect(&f, &u, &Subspace::full(&f, 3)).unwrap(),
            u
        );
        assert!(subspace_intersect(&f, &e1, &e2).unwrap().is_zero());
        assert_eq!(subspace_intersect(&f, &u, &u).unwrap(), u);

        assert!(subspace_sum(&f, &e1, &u).is_err());
        assert!(subspace_intersect(&f, &e1, &u).is_err());
    }

    #[test]
    fn preimage_examples() {
        let f = Rationals;
        let m = mat(&[vec![1, 2, 0], vec![0, 0, 1]]);
        assert_eq!(
            preimage(&f, &m, &Subspace::full(&f, 2)).unwrap(),
            Subspace::full(&f, 3)
        );
        assert_eq!(
            preimage(&f, &m, &Subspace::zero(2)).unwrap(),
            kernel(&f, &m)
        );
        let m2 = mat(&[vec![1, 0], vec![0, 0]]);
        assert_eq!(preimage(&f, &m2, &span(2, &[vec![1, 0]])).unwrap().dim(), 2);
        assert!(preimage(&f, &m2, &Subspace::zero(3)).is_err());
    }

    #[test]
    fn quotient_dim_examples() {
        let f = Rationals;
        let u = span(4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 1]]);
        let v = span(4, &[vec![1, 1, 0, 0]]);
        assert_eq!(quotient_dim(&f, &u, &u).unwrap(), 0);
        assert_eq!(
            quotient_dim(&f, &Subspace::full(&f, 5), &Subspace::zero(5)).unwrap(),
            5
        );
        assert_eq!(quotient_dim(&f, &u, &v).unwrap(), 2);
        assert_eq!(quotient_dim(&f, &v, &u), Err(Error::NotNested));
    }

    #[test]
    fn quotient_basis_coordinates() {
        let f = Rationals;
        let u = span(3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let d = span(3, &[vec![1, 1, 0]]);
        let qb = QuotientBasis::new(&f, &u, &d).unwrap();
        assert_eq!(qb.dim(), 1);
        let x = sparse::from_dense(&f, &[f.from_i64(3), f.from_i64(5), f.zero()]);
        let rep = qb.representative(0).clone();
        let coords = qb.coordinates(&f, &x).unwrap();
        // x - c * rep must lie in d.
        let c = sparse::get(&f, &coords, 0);
        let diff = sparse::axpy(&f, &x, &f.neg(&c), &rep);
        assert!(d.contains(&f, &diff));
        let outside = sparse::from_dense(&f, &[f.zero(), f.zero(), f.one()]);
        assert!(qb.coordinates(&f, &outside).is_none());
        assert!(QuotientBasis::new(&f, &d, &u).is_err());
    }

    fn small_vecs(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-2i64..=2, n), 0..=n)
    }

    proptest! {
        #[test]
        fn grassmann_identity(a in small_vecs(5), b in small_vecs(5)) {
            let f = Rationals;
            let u = span(5, &a);
            let v = span(5, &b);
            let s = subspace_sum(&f, &u, &v).unwrap();
            let i = subspace_intersect(&f, &u, &v).unwrap();
            prop_assert_eq!(u.dim() + v.dim(), s.dim() + i.dim());
            prop_assert!(i.is_subspace_of(&f, &u) && i.is_subspace_of(&f, &v));
            prop_assert!(u.is_subspace_of(&f, &s) && v.is_subspace_of(&f, &s));
        }

        #[test]
        fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 1..6)) {
            let f = Rationals;
            let m = mat(&rows);
            let k = kernel(&f, &m);
            let im = image(&f, &m);
            prop_assert_eq!(k.dim() + im.dim(), m.cols());
            prop_assert_eq!(rank(&f, &m), im.dim());
            prop_assert_eq!(rref(&f, &m).1.len(), im.dim());
            for b in k.basis() {
                prop_assert!(m.mul_vec(&f, b).is_empty());
            }
        }

        #[test]
        fn canonical_bases(a in small_vecs(4), perm_seed in 0usize..24) {
            let u = span(4, &a);
            let mut shuffled = a.clone();
            if !shuffled.is_empty() {
                let k = perm_seed % shuffled.len();
                shuffled.rotate_left(k);
                shuffled.reverse();
            }
            prop_assert_eq!(span(4, &shuffled), u);
        }

        #[test]
        fn rank_agrees_over_q_and_fp(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..6)) {
            let fp = PrimeField::new(32003).unwrap();
            let mq = mat(&rows);
            let mp = Matrix::from_rows_i64(&fp, &rows);
            prop_assert_eq!(rank(&Rationals, &mq), rank(&fp, &mp));
        }

        #[test]
        fn preimage_contains_kernel(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 1..5), vs in small_vecs(4)) {
            let f = Rationals;
            let m = mat(&rows);
            let target = span(m.rows(), &vs.iter().map(|v| v[..m.rows().min(4)].to_vec()).filter(|v| v.len() == m.rows()).collect::<Vec<_>>());
            let pre = preimage(&f, &m, &target).unwrap();
            prop_assert!(kernel(&f, &m).is_subspace_of(&f, &pre));
            for b in pre.basis() {
                prop_assert!(target.contains(&f, &m.mul_vec(&f, b)));
            }
        }
    }
}
