use rayon::prelude::*;

use crate::algebra::{Block, TBimodule, TriangularAlgebra};
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{sparse, Matrix, SparseVec};
use crate::trajectory::{enumerate_trajectories, Step, Trajectory, TrajectoryBasis};

use super::{Cell, CellLayout, CochainWindow};

/// Structure constants of `T` and `X` in the target field, arranged for
/// pushing basis cochains forward.
struct Tables<E> {
    block_of: Vec<Block>,
    local: Vec<usize>,
    /// Total-basis offset of each block, by block id.
    offsets: Vec<usize>,
    /// `factor[u]` lists `(a, b, c)` with `b_a b_b = c b_u + ...`.
    factor: Vec<Vec<(usize, usize, E)>>,
    /// `left[x]` lists `(s, b_s x)` for the nonzero products.
    left: Vec<Vec<(usize, SparseVec<E>)>>,
    /// `right[x]` lists `(s, x b_s)` for the nonzero products.
    right: Vec<Vec<(usize, SparseVec<E>)>>,
    x_local: Vec<usize>,
}

impl<E: Clone + PartialEq> Tables<E> {
    fn new<F: Field<Elem = E>>(field: &F, t: &TriangularAlgebra, x: &TBimodule) -> Result<Self> {
        let d = t.dim();
        let block_of: Vec<Block> = (0..d).map(|u| t.block_of(u)).collect();
        let local: Vec<usize> = (0..d)
            .map(|u| u - t.range(block_of[u].target, block_of[u].source).offset)
            .collect();
        let mul = t.total().mul_table().convert(field)?;
        let mut factor: Vec<Vec<(usize, usize, E)>> = vec![Vec::new(); d];
        for (a, b, u, c) in mul.entries() {
            factor[u].push((a, b, c.clone()));
        }
        let lact = x.module().lact().convert(field)?;
        let ract = x.module().ract().convert(field)?;
        let mut left = vec![Vec::new(); x.dim()];
        let mut right = vec![Vec::new(); x.dim()];
        for xi in 0..x.dim() {
            for s in 0..d {
                let l = lact.get(s, xi);
                if !l.is_empty() {
                    left[xi].push((s, l.clone()));
                }
                let r = ract.get(xi, s);
                if !r.is_empty() {
                    right[xi].push((s, r.clone()));
                }
            }
        }
        let mut x_local = vec![0; x.dim()];
        for xi in 0..x.dim() {
            let (j, i) = x.block_of(xi);
            x_local[xi] = x.block(j, i).iter().position(|&y| y == xi).expect("listed");
        }
        Ok(Tables {
            block_of,
            local,
            offsets: t.ranges().iter().map(|r| r.offset).collect(),
            factor,
            left,
            right,
            x_local,
        })
    }
}

fn layout(t: &TriangularAlgebra, x: &TBimodule, l: usize) -> CellLayout {
    let mut cells = Vec::new();
    let mut offset = 0;
    for tau in enumerate_trajectories(t.n(), l) {
        let basis = TrajectoryBasis::new(t, tau);
        let x_basis = x
            .block(basis.trajectory.target(), basis.trajectory.source())
            .to_vec();
        if basis.dim() == 0 || x_basis.is_empty() {
            continue;
        }
        let cell = Cell {
            basis,
            x_basis,
            offset,
        };
        offset += cell.dim();
        cells.push(cell);
    }
    CellLayout::new(cells)
}

fn sign<F: Field>(field: &F, odd: bool) -> F::Elem {
    if odd {
        field.neg(&field.one())
    } else {
        field.one()
    }
}

/// `delta` applied to one basis cochain: the value at every basis tensor of
/// degree `l + 1`, read off term by term from the cobord formula.
fn push_forward<F: Field>(
    field: &F,
    tables: &Tables<F::Elem>,
    cell: &Cell,
    tuple: &[usize],
    x: usize,
    next: &CellLayout,
) -> SparseVec<F::Elem> {
    let tau = cell.trajectory();
    let steps = tau.steps();
    let l = steps.len();
    let mut pairs: Vec<(usize, F::Elem)> = Vec::new();

    // t_1 f(t_2, ..., t_{l+1})
    for (s, value) in &tables.left[x] {
        let mut new_steps = Vec::with_capacity(l + 1);
        new_steps.push(Step::of_block(tables.block_of[*s]));
        new_steps.extend_from_slice(steps);
        let Ok(tau2) = Trajectory::new(tau.source(), new_steps) else {
            continue;
        };
        let Some(target) = next.find(&tau2) else {
            continue;
        };
        let mut tuple2 = Vec::with_capacity(l + 1);
        tuple2.push(tables.local[*s]);
        tuple2.extend_from_slice(tuple);
        for (x2, c) in value {
            pairs.push((target.index(&tuple2, tables.x_local[*x2]), c.clone()));
        }
    }

    // (-1)^i f(..., t_i t_{i+1}, ...)
    for i in 1..=l {
        let step = steps[i - 1];
        let u = tables.offsets[step.block().id()] + tuple[i - 1];
        let sg = sign(field, i % 2 == 1);
        for (a, b, c) in &tables.factor[u] {
            let mut new_steps = Vec::with_capacity(l + 1);
            new_steps.extend_from_slice(&steps[..i - 1]);
            new_steps.push(Step::of_block(tables.block_of[*a]));
            new_steps.push(Step::of_block(tables.block_of[*b]));
            new_steps.extend_from_slice(&steps[i..]);
            let tau2 =
                Trajectory::new(tau.source(), new_steps).expect("factorization stays consecutive");
            let Some(target) = next.find(&tau2) else {
                continue;
            };
            let mut tuple2 = Vec::with_capacity(l + 1);
            tuple2.extend_from_slice(&tuple[..i - 1]);
            tuple2.push(tables.local[*a]);
            tuple2.push(tables.local[*b]);
            tuple2.extend_from_slice(&tuple[i..]);
            pairs.push((target.index(&tuple2, tables.x_local[x]), field.mul(&sg, c)));
        }
    }

    // (-1)^{l+1} f(t_1, ..., t_l) t_{l+1}
    let sg = sign(field, (l + 1) % 2 == 1);
    for (s, value) in &tables.right[x] {
        let bs = tables.block_of[*s];
        let mut new_steps = Vec::with_capacity(l + 1);
        new_steps.extend_from_slice(steps);
        new_steps.push(Step::of_block(bs));
        let Ok(tau2) = Trajectory::new(bs.source, new_steps) else {
            continue;
        };
        let Some(target) = next.find(&tau2) else {
            continue;
        };
        let mut tuple2 = Vec::with_capacity(l + 1);
        tuple2.extend_from_slice(tuple);
        tuple2.push(tables.local[*s]);
        for (x2, c) in value {
            pairs.push((
                target.index(&tuple2, tables.x_local[*x2]),
                field.mul(&sg, c),
            ));
        }
    }
    sparse::from_pairs(field, pairs)
}

/// The relative Hochschild complex `C^l = (+)_tau Hom_k(M_tau, _{target}X_{source})`
/// for `l = 0 ..= cutoff + 1`, with `C^0 = (+)_i _iX_i`. Basis vectors are
/// tagged with the number of jumps of their trajectory.
pub fn build_relative_complex<F: Field>(
    field: &F,
    t: &TriangularAlgebra,
    x: &TBimodule,
    cutoff: usize,
) -> Result<CochainWindow<F::Elem>> {
    let tables = Tables::new(field, t, x)?;
    let layouts: Vec<CellLayout> = (0..=cutoff + 1)
        .into_par_iter()
        .map(|l| layout(t, x, l))
        .collect();
    let differentials: Vec<Matrix<F::Elem>> = (0..=cutoff)
        .map(|l| {
            let (here, next) = (&layouts[l], &layouts[l + 1]);
            let columns: Vec<SparseVec<F::Elem>> = (0..here.dim())
                .into_par_iter()
                .map(|col| {
                    let (cell, tuple, xl) = here.locate(col);
                    push_forward(field, &tables, cell, &tuple, cell.x_basis[xl], next)
                })
                .collect();
            Matrix::from_columns(next.dim(), columns)
        })
        .collect();
    let dims = layouts.iter().map(CellLayout::dim).collect();
    let tags = layouts
        .iter()
        .map(|lay| {
            lay.cells
                .iter()
                .flat_map(|c| std::iter::repeat_n(c.trajectory().length(), c.dim()))
                .collect()
        })
        .collect();
    Ok(CochainWindow::new(
        dims,
        differentials,
        tags,
        layouts,
        t.n(),
    ))
}
