//! Cochain complexes: the relative Hochschild complex with its trajectory
//! filtration, the classical bar complex used as an oracle, and the Ext and
//! Tor complexes of bimodules.

mod bar;
mod ext;
mod relative;

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rank, Matrix};
use crate::trajectory::{Trajectory, TrajectoryBasis};

pub use bar::{bar_budget_required, build_bar_complex, DEFAULT_ORACLE_BUDGET};
pub use ext::{build_ext_complex, build_tor_complex, homology_dims, ChainWindow};
pub use relative::build_relative_complex;

/// One summand `Hom_k(M_tau, _{target}X_{source})` of a relative cochain space.
#[derive(Clone, Debug)]
pub struct Cell {
    pub basis: TrajectoryBasis,
    /// Global indices of the coefficient basis vectors in the target block.
    pub x_basis: Vec<usize>,
    pub offset: usize,
}

impl Cell {
    pub fn trajectory(&self) -> &Trajectory {
        &self.basis.trajectory
    }

    pub fn dim(&self) -> usize {
        self.basis.dim() * self.x_basis.len()
    }

    /// Position of the basis cochain sending `tuple` to the `x`-th
    /// coefficient basis vector of the block, zero elsewhere.
    pub fn index(&self, tuple: &[usize], x_local: usize) -> usize {
        self.offset + self.basis.index(tuple) * self.x_basis.len() + x_local
    }
}

/// The cells of one relative cochain space, in trajectory enumeration order.
#[derive(Clone, Debug, Default)]
pub struct CellLayout {
    pub cells: Vec<Cell>,
    lookup: HashMap<Trajectory, usize>,
}

impl CellLayout {
    pub(crate) fn new(cells: Vec<Cell>) -> Self {
        let lookup = cells
            .iter()
            .enumerate()
            .map(|(k, c)| (c.trajectory().clone(), k))
            .collect();
        CellLayout { cells, lookup }
    }

    pub fn find(&self, tau: &Trajectory) -> Option<&Cell> {
        self.lookup.get(tau).map(|&k| &self.cells[k])
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(Cell::dim).sum()
    }

    /// The cell containing a basis index, with the tuple and local
    /// coefficient index.
    pub fn locate(&self, index: usize) -> (&Cell, Vec<usize>, usize) {
        let k = self.cells.partition_point(|c| c.offset + c.dim() <= index);
        let cell = &self.cells[k];
        let local = index - cell.offset;
        let xdim = cell.x_basis.len();
        (cell, cell.basis.tuple(local / xdim), local % xdim)
    }
}

/// Cochain spaces `C^0 .. C^{L+1}` with differentials `delta_0 .. delta_L`
/// and a filtration tag on every basis vector. Cohomology is determined
/// in degrees `0 ..= L`.
#[derive(Clone, Debug)]
pub struct CochainWindow<E> {
    dims: Vec<usize>,
    differentials: Vec<Matrix<E>>,
    tags: Vec<Vec<usize>>,
    layouts: Vec<CellLayout>,
    columns: usize,
}

impl<E: Clone + PartialEq + Send + Sync> CochainWindow<E> {
    pub(crate) fn new(
        dims: Vec<usize>,
        differentials: Vec<Matrix<E>>,
        tags: Vec<Vec<usize>>,
        layouts: Vec<CellLayout>,
        columns: usize,
    ) -> Self {
        debug_assert_eq!(dims.len(), differentials.len() + 1);
        debug_assert!(differentials
            .iter()
            .enumerate()
            .all(|(l, d)| d.cols() == dims[l] && d.rows() == dims[l + 1]));
        CochainWindow {
            dims,
            differentials,
            tags,
            layouts,
            columns,
        }
    }

    /// `L`: the highest degree whose cohomology the window determines.
    pub fn cutoff(&self) -> usize {
        self.differentials.len() - 1
    }

    pub fn dim(&self, l: usize) -> usize {
        self.dims[l]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `delta_l : C^l -> C^{l+1}`, for `l <= L`.
    pub fn differential(&self, l: usize) -> &Matrix<E> {
        &self.differentials[l]
    }

    /// Filtration tags of the basis of `C^l`.
    pub fn tags(&self, l: usize) -> &[usize] {
        &self.tags[l]
    }

    /// Number of filtration columns `n`; tags lie in `0..n`.
    pub fn columns(&self) -> usize {
        self.columns
    }

    /// Cell layout of `C^l`, for relative complexes.
    pub fn layout(&self, l: usize) -> Option<&CellLayout> {
        self.layouts.get(l)
    }

    /// `delta_{l+1} delta_l = 0` for every composable pair in the window.
    pub fn check_d_squared<F: Field<Elem = E>>(&self, field: &F) -> Result<()> {
        for l in 0..self.cutoff() {
            let comp = self.differentials[l + 1].mul(field, &self.differentials[l])?;
            if !comp.is_zero() {
                return Err(Error::Invariant(format!(
                    "delta^2 is nonzero in degree {l}"
                )));
            }
        }
        Ok(())
    }

    /// `delta` never lowers the filtration tag.
    pub fn check_filtration(&self) -> Result<()> {
        for (l, d) in self.differentials.iter().enumerate() {
            for (r, c, _) in d.entries() {
                if self.tags[l + 1][r] < self.tags[l][c] {
                    return Err(Error::Invariant(format!(
                        "delta_{l} lowers the filtration from {} to {}",
                        self.tags[l][c],
                        self.tags[l + 1][r]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Ranks of `delta_0 .. delta_L`, computed concurrently.
    pub fn ranks<F: Field<Elem = E>>(&self, field: &F) -> Vec<usize> {
        self.differentials
            .par_iter()
            .map(|d| rank(field, d))
            .collect()
    }
}

/// `dim H^l` for `l = 0 ..= L+1`; the entry for `L+1` is `None` because
/// `delta_{L+1}` is outside the window.
pub fn cohomology_dims<F: Field>(field: &F, w: &CochainWindow<F::Elem>) -> Vec<Option<usize>> {
    let ranks = w.ranks(field);
    let mut out: Vec<Option<usize>> = (0..=w.cutoff())
        .map(|l| {
            let below = if l == 0 { 0 } else { ranks[l - 1] };
            Some(w.dims[l] - ranks[l] - below)
        })
        .collect();
    out.push(None);
    out
}

/// Reliable cohomology dimensions only.
pub fn reliable_cohomology<F: Field>(field: &F, w: &CochainWindow<F::Elem>) -> Vec<usize> {
    cohomology_dims(field, w).into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{center, Bimodule, FiniteDimAlgebra, TBimodule, TriangularAlgebra};
    use crate::field::{PrimeField, Rationals};
    use crate::zoo;

    fn relative_hh(t: &TriangularAlgebra, cutoff: usize) -> Vec<usize> {
        let w = build_relative_complex(&Rationals, t, &TBimodule::regular(t), cutoff).unwrap();
        w.check_d_squared(&Rationals).unwrap();
        w.check_filtration().unwrap();
        reliable_cohomology(&Rationals, &w)
    }

    fn bar_hh(a: &FiniteDimAlgebra, cutoff: usize) -> Vec<usize> {
        let w = build_bar_complex(
            &Rationals,
            a,
            &Bimodule::regular(a),
            cutoff,
            DEFAULT_ORACLE_BUDGET,
        )
        .unwrap();
        w.check_d_squared(&Rationals).unwrap();
        reliable_cohomology(&Rationals, &w)
    }

    #[test]
    fn ground_field_relative_complex() {
        let t = TriangularAlgebra::new(vec![FiniteDimAlgebra::ground()], [], []).unwrap();
        let w = build_relative_complex(&Rationals, &t, &TBimodule::regular(&t), 3).unwrap();
        assert_eq!(w.dims(), &[1, 1, 1, 1, 1]);
        assert_eq!(reliable_cohomology(&Rationals, &w), vec![1, 0, 0, 0]);
        assert_eq!(bar_hh(&FiniteDimAlgebra::ground(), 2), vec![1, 0, 0]);
    }

    #[test]
    fn fan_quiver_dimensions_and_cohomology() {
        let t = zoo::quiver_algebra(&zoo::two_level_fan()).unwrap();
        let w = build_relative_complex(&Rationals, &t, &TBimodule::regular(&t), 3).unwrap();
        assert_eq!((w.dim(0), w.dim(1)), (4, 39));
        assert_eq!(w.tags(0), &[0, 0, 0, 0]);
        assert_eq!(relative_hh(&t, 3), vec![1, 6, 0, 0]);
        let p = PrimeField::new(32003).unwrap();
        let wp = build_relative_complex(&p, &t, &TBimodule::regular(&t), 3).unwrap();
        assert_eq!(reliable_cohomology(&p, &wp), vec![1, 6, 0, 0]);
    }

    #[test]
    fn fan_quiver_bar_oracle() {
        let t = zoo::quiver_algebra(&zoo::two_level_fan()).unwrap();
        assert_eq!(bar_hh(t.total(), 2), vec![1, 6, 0]);
    }

    #[test]
    fn kronecker_bar_oracle() {
        let t = zoo::quiver_algebra(&zoo::kronecker()).unwrap();
        assert_eq!(bar_hh(t.total(), 2), vec![1, 3, 0]);
        assert_eq!(relative_hh(&t, 2), vec![1, 3, 0]);
    }

    #[test]
    fn bar_budget_refusal_names_the_bound() {
        let t = zoo::quiver_algebra(&zoo::two_level_fan()).unwrap();
        let x = Bimodule::regular(t.total());
        let need = bar_budget_required(t.total(), &x, 3).unwrap();
        match build_bar_complex(&Rationals, t.total(), &x, 3, need - 1) {
            Err(Error::BudgetExceeded { required, budget }) => {
                assert_eq!((required, budget), (need, need - 1))
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn relative_matches_bar_and_center() {
        for t in [
            zoo::dual_by_ground(),
            zoo::chain_with_shortcut(),
            zoo::radical_square_zero_chain(3),
        ] {
            let rel = relative_hh(&t, 2);
            assert_eq!(rel, bar_hh(t.total(), 2));
            assert_eq!(rel[0], center(&Rationals, t.total()).unwrap().dim());
        }
    }

    #[test]
    fn dual_coefficients_keep_the_invariants() {
        let t = zoo::dual_triangular_matrices();
        let x = TBimodule::dual(&t);
        let w = build_relative_complex(&Rationals, &t, &x, 2).unwrap();
        w.check_d_squared(&Rationals).unwrap();
        w.check_filtration().unwrap();
        let b =
            build_bar_complex(&Rationals, t.total(), x.module(), 2, DEFAULT_ORACLE_BUDGET).unwrap();
        assert_eq!(
            reliable_cohomology(&Rationals, &w),
            reliable_cohomology(&Rationals, &b)
        );
    }

    #[test]
    fn exact_and_zero_complexes() {
        let f = Rationals;
        // k --id--> k --0--> k: H = [0, 0, ?]
        let w = CochainWindow::new(
            vec![1, 1, 1],
            vec![Matrix::identity(&f, 1), Matrix::zeros(1, 1)],
            vec![vec![0]; 3],
            vec![],
            1,
        );
        assert_eq!(cohomology_dims(&f, &w), vec![Some(0), Some(0), None]);
        let z = CochainWindow::new(
            vec![2, 3, 1],
            vec![Matrix::zeros(3, 2), Matrix::zeros(1, 3)],
            vec![vec![0; 2], vec![0; 3], vec![0]],
            vec![],
            1,
        );
        assert_eq!(reliable_cohomology(&f, &z), vec![2, 3]);
        let exact = CochainWindow::new(
            vec![1, 1, 0],
            vec![Matrix::identity(&f, 1), Matrix::zeros(0, 1)],
            vec![vec![0], vec![0], vec![]],
            vec![],
            1,
        );
        assert_eq!(reliable_cohomology(&f, &exact), vec![0, 0]);
    }
}
