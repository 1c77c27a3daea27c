use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{image, kernel, sparse, Matrix, SparseVec, Subspace};

use super::bilinear::{basis_vec, convert_vec, Bilinear, QQ};

/// One failed axiom, with the basis indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub location: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}", self.axiom, self.location)
    }
}

/// A finite-dimensional unital algebra over the rationals, presented by
/// structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteDimAlgebra {
    mul: Bilinear<BigRational>,
    unit: SparseVec<BigRational>,
}

impl FiniteDimAlgebra {
    pub fn new(mul: Bilinear<BigRational>, unit: SparseVec<BigRational>) -> Result<Self> {
        let d = mul.out_dim();
        if mul.left_dim() != d || mul.right_dim() != d {
            return Err(Error::InvalidAlgebra(format!(
                "multiplication has shape {} x {} -> {d}",
                mul.left_dim(),
                mul.right_dim()
            )));
        }
        if unit.iter().any(|(i, _)| *i >= d) {
            return Err(Error::InvalidAlgebra(format!(
                "unit vector has an entry beyond dimension {d}"
            )));
        }
        Ok(FiniteDimAlgebra { mul, unit })
    }

    /// Convenience constructor from `(a, b, c, coeff)` entries.
    pub fn from_entries(
        dim: usize,
        unit: SparseVec<BigRational>,
        entries: impl IntoIterator<Item = (usize, usize, usize, BigRational)>,
    ) -> Result<Self> {
        Self::new(Bilinear::from_entries(&QQ, dim, dim, dim, entries)?, unit)
    }

    /// The ground field `k`.
    pub fn ground() -> Self {
        Self::diagonal(1)
    }

    /// `k^d` with orthogonal idempotent basis.
    pub fn diagonal(d: usize) -> Self {
        let entries = (0..d).map(|i| (i, i, i, QQ.one()));
        let unit = (0..d).map(|i| (i, QQ.one())).collect();
        Self::from_entries(d, unit, entries).expect("diagonal algebra")
    }

    /// `k[x]/(x^2)` with basis `1, x`.
    pub fn dual_numbers() -> Self {
        let one = QQ.one();
        let entries = [
            (0, 0, 0, one.clone()),
            (0, 1, 1, one.clone()),
            (1, 0, 1, one.clone()),
        ];
        Self::from_entries(2, basis_vec(0), entries).expect("dual numbers")
    }

    /// Full matrix algebra `M_n(k)` with basis `E_{rc}` at index `r * n + c`.
    pub fn matrix_algebra(n: usize) -> Self {
        let mut entries = Vec::new();
        for r in 0..n {
            for c in 0..n {
                for c2 in 0..n {
                    entries.push((r * n + c, c * n + c2, r * n + c2, QQ.one()));
                }
            }
        }
        let unit = (0..n).map(|i| (i * n + i, QQ.one())).collect();
        Self::from_entries(n * n, unit, entries).expect("matrix algebra")
    }

    pub fn dim(&self) -> usize {
        self.mul.out_dim()
    }

    pub fn mul_table(&self) -> &Bilinear<BigRational> {
        &self.mul
    }

    pub fn unit(&self) -> &SparseVec<BigRational> {
        &self.unit
    }

    pub fn multiply(
        &self,
        x: &SparseVec<BigRational>,
        y: &SparseVec<BigRational>,
    ) -> SparseVec<BigRational> {
        self.mul.apply(&QQ, x, y)
    }

    /// Exhaustive associativity and unit checks.
    pub fn check(&self, name: &str) -> Vec<Violation> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            let bi = basis_vec(i);
            if self.multiply(&self.unit, &bi) != bi || self.multiply(&bi, &self.unit) != bi {
                out.push(Violation {
                    axiom: "unit",
                    location: format!("{name} basis {i}"),
                });
            }
            for j in 0..d {
                let ij = self.mul.get(i, j);
                for k in 0..d {
                    let lhs = self.mul.apply_right_basis(&QQ, ij, k);
                    let rhs = self.mul.apply_left_basis(&QQ, i, self.mul.get(j, k));
                    if lhs != rhs {
                        out.push(Violation {
                            axiom: "associativity",
                            location: format!("{name} basis ({i}, {j}, {k})"),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.mul.get(i, j) == self.mul.get(j, i)))
    }
}

/// `{ x : x b = b x for every basis vector b }`.
pub fn center<F: Field>(field: &F, a: &FiniteDimAlgebra) -> Result<Subspace<F::Elem>> {
    let d = a.dim();
    let mul = a.mul.convert(field)?;
    // Column x stacks the commutators [x, b_0], ..., [x, b_{d-1}].
    let columns = (0..d)
        .map(|x| {
            let mut pairs = Vec::new();
            for b in 0..d {
                let diff = sparse::axpy(
                    field,
                    mul.get(x, b),
                    &field.neg(&field.one()),
                    mul.get(b, x),
                );
                pairs.extend(diff.into_iter().map(|(c, v)| (b * d + c, v)));
            }
            pairs
        })
        .collect();
    let m = Matrix::from_columns(d * d, columns);
    let z = kernel(field, &m);
    debug_assert!(z.contains(field, &convert_vec(field, &a.unit)?));
    Ok(z)
}

/// Whether `a` has a separability element: `e` in `a (x) a` with
/// `mu(e) = 1` and `b e = e b` for every `b`. Decided by linear algebra.
pub fn is_separable<F: Field>(field: &F, a: &FiniteDimAlgebra) -> Result<bool> {
    let d = a.dim();
    let mul = a.mul.convert(field)?;
    // Unknown (u, v) is the coefficient of b_u (x) b_v. Rows 0..d hold
    // mu(e); row d + (s d + w) d + z holds the (b_w (x) b_z) coefficient of b_s e - e b_s.
    let columns = (0..d * d)
        .map(|uv| {
            let (u, v) = (uv / d, uv % d);
            let mut pairs: Vec<(usize, F::Elem)> = mul.get(u, v).clone();
            for s in 0..d {
                let base = d + s * d * d;
                for (w, c) in mul.get(s, u) {
                    pairs.push((base + w * d + v, c.clone()));
                }
                for (z, c) in mul.get(v, s) {
                    pairs.push((base + u * d + z, field.neg(c)));
                }
            }
            sparse::from_pairs(field, pairs)
        })
        .collect();
    let m = Matrix::from_columns(d + d * d * d, columns);
    let rhs = convert_vec(field, &a.unit)?;
    Ok(image(field, &m).contains(field, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{qi, Rationals};

    #[test]
    fn standard_algebras_are_valid() {
        for (name, a) in [
            ("k", FiniteDimAlgebra::ground()),
            ("k^3", FiniteDimAlgebra::diagonal(3)),
            ("k[x]/x^2", FiniteDimAlgebra::dual_numbers()),
            ("M_2", FiniteDimAlgebra::matrix_algebra(2)),
        ] {
            assert!(a.check(name).is_empty(), "{name}");
        }
    }

    #[test]
    fn broken_associativity_is_reported() {
        // x * x = 1 and x * 1 = x, but 1 * x = 0.
        let a = FiniteDimAlgebra::from_entries(
            2,
            basis_vec(0),
            [
                (0, 0, 0, qi(1)),
                (0, 1, 1, qi(0)),
                (1, 0, 1, qi(1)),
                (1, 1, 0, qi(1)),
            ],
        )
        .unwrap();
        let report = a.check("A");
        assert!(report.iter().any(|v| v.axiom == "unit"));
    }

    #[test]
    fn center_examples() {
        let f = Rationals;
        assert_eq!(center(&f, &FiniteDimAlgebra::diagonal(4)).unwrap().dim(), 4);
        assert_eq!(
            center(&f, &FiniteDimAlgebra::matrix_algebra(2))
                .unwrap()
                .dim(),
            1
        );
        assert_eq!(
            center(&f, &FiniteDimAlgebra::dual_numbers()).unwrap().dim(),
            2
        );
    }

    #[test]
    fn out_of_range_constants_are_rejected() {
        assert!(FiniteDimAlgebra::from_entries(1, basis_vec(0), [(0, 0, 1, qi(1))]).is_err());
        assert!(FiniteDimAlgebra::from_entries(1, basis_vec(3), [(0, 0, 0, qi(1))]).is_err());
    }

    #[test]
    fn separability() {
        let f = Rationals;
        assert!(is_separable(&f, &FiniteDimAlgebra::ground()).unwrap());
        assert!(is_separable(&f, &FiniteDimAlgebra::diagonal(3)).unwrap());
        assert!(is_separable(&f, &FiniteDimAlgebra::matrix_algebra(2)).unwrap());
        assert!(!is_separable(&f, &FiniteDimAlgebra::dual_numbers()).unwrap());
    }
}
