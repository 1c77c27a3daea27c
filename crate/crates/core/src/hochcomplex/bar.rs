use rayon::prelude::*;

use crate::algebra::{Bimodule, FiniteDimAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{sparse, Matrix, SparseVec};

use super::CochainWindow;

/// Default cap on stored matrix entries for the bar complex.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

struct BarTables<E> {
    dim: usize,
    xdim: usize,
    factor: Vec<Vec<(usize, usize, E)>>,
    left: Vec<Vec<(usize, SparseVec<E>)>>,
    right: Vec<Vec<(usize, SparseVec<E>)>>,
}

impl<E: Clone + PartialEq> BarTables<E> {
    fn new<F: Field<Elem = E>>(field: &F, a: &FiniteDimAlgebra, x: &Bimodule) -> Result<Self> {
        let dim = a.dim();
        if x.left_dim() != dim || x.right_dim() != dim {
            return Err(Error::ActionMismatch(format!(
                "coefficients are a bimodule over algebras of dims {} and {}, not {dim}",
                x.left_dim(),
                x.right_dim()
            )));
        }
        let mul = a.mul_table().convert(field)?;
        let mut factor = vec![Vec::new(); dim];
        for (p, q, u, c) in mul.entries() {
            factor[u].push((p, q, c.clone()));
        }
        let lact = x.lact().convert(field)?;
        let ract = x.ract().convert(field)?;
        let xdim = x.dim();
        let left = (0..xdim)
            .map(|xi| {
                (0..dim)
                    .filter(|s| !lact.get(*s, xi).is_empty())
                    .map(|s| (s, lact.get(s, xi).clone()))
                    .collect()
            })
            .collect();
        let right = (0..xdim)
            .map(|xi| {
                (0..dim)
                    .filter(|s| !ract.get(xi, *s).is_empty())
                    .map(|s| (s, ract.get(xi, s).clone()))
                    .collect()
            })
            .collect();
        Ok(BarTables {
            dim,
            xdim,
            factor,
            left,
            right,
        })
    }

    /// Stored entries of `delta_0 .. delta_cutoff` before cancellation.
    fn entries(&self, cutoff: usize) -> u64 {
        let d = self.dim as u64;
        let sides: u64 = self
            .left
            .iter()
            .chain(&self.right)
            .flatten()
            .map(|(_, v)| v.len() as u64)
            .sum();
        let fact: u64 = self.factor.iter().map(|f| f.len() as u64).sum();
        let mut total: u64 = 0;
        for l in 0..=cutoff as u32 {
            let tuples = d.saturating_pow(l);
            let outer = tuples.saturating_mul(sides);
            let inner = if l == 0 {
                0
            } else {
                (self.xdim as u64)
                    .saturating_mul(l as u64)
                    .saturating_mul(d.saturating_pow(l - 1))
                    .saturating_mul(fact)
            };
            total = total.saturating_add(outer).saturating_add(inner);
        }
        total
    }
}

/// Number of matrix entries the bar complex through `delta_cutoff` would store.
pub fn bar_budget_required(a: &FiniteDimAlgebra, x: &Bimodule, cutoff: usize) -> Result<u64> {
    Ok(BarTables::new(&crate::field::Rationals, a, x)?.entries(cutoff))
}

/// The classical Hochschild complex `C^l = Hom_k(A^{(x)l}, X)` for
/// `l = 0 ..= cutoff + 1`. Basis cochain `(a_1, ..., a_l; x)` sits at
/// `tuple_index * dim X + x`, first factor most significant.
///
/// Refuses when the differentials would store more than `budget` entries.
pub fn build_bar_complex<F: Field>(
    field: &F,
    a: &FiniteDimAlgebra,
    x: &Bimodule,
    cutoff: usize,
    budget: u64,
) -> Result<CochainWindow<F::Elem>> {
    let tables = BarTables::new(field, a, x)?;
    let required = tables.entries(cutoff);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let (d, xd) = (tables.dim, tables.xdim);
    let dims: Vec<usize> = (0..=cutoff + 1).map(|l| d.pow(l as u32) * xd).collect();
    let differentials = (0..=cutoff)
        .map(|l| {
            let tuples = d.pow(l as u32);
            let columns: Vec<SparseVec<F::Elem>> = (0..tuples * xd)
                .into_par_iter()
                .map(|col| bar_column(field, &tables, l, col / xd, col % xd))
                .collect();
            Matrix::from_columns(dims[l + 1], columns)
        })
        .collect();
    let tags = dims.iter().map(|&n| vec![0; n]).collect();
    Ok(CochainWindow::new(dims, differentials, tags, Vec::new(), 1))
}

fn bar_column<F: Field>(
    field: &F,
    tables: &BarTables<F::Elem>,
    l: usize,
    tuple: usize,
    x: usize,
) -> SparseVec<F::Elem> {
    let (d, xd) = (tables.dim, tables.xdim);
    let scale = d.pow(l as u32);
    let mut pairs = Vec::new();
    let minus = field.neg(&field.one());
    // a_0 f(...): the new factor is most significant.
    for (s, v) in &tables.left[x] {
        let t2 = s * scale + tuple;
        pairs.extend(v.iter().map(|(x2, c)| (t2 * xd + x2, c.clone())));
    }
    // Splitting factor i (1-based from the left) into two.
    for i in 1..=l {
        let below = d.pow((l - i) as u32);
        let u = (tuple / below) % d;
        let high = tuple / (below * d);
        let low = tuple % below;
        let sg = if i % 2 == 1 {
            minus.clone()
        } else {
            field.one()
        };
        for (p, q, c) in &tables.factor[u] {
            let t2 = ((high * d + p) * d + q) * below + low;
            pairs.push((t2 * xd + x, field.mul(&sg, c)));
        }
    }
    let sg = if (l + 1) % 2 == 1 { minus } else { field.one() };
    for (s, v) in &tables.right[x] {
        let t2 = tuple * d + s;
        pairs.extend(v.iter().map(|(x2, c)| (t2 * xd + x2, field.mul(&sg, c))));
    }
    sparse::from_pairs(field, pairs)
}
