//! The spectral sequence of a tag-filtered cochain window: every page, every
//! page differential, and the checks that tie them to cohomology.
//!
//! `F^p C^l` is spanned by the basis vectors with tag `>= p`; `F^0 = C` and
//! `F^n = 0`. Cells are indexed by `(p, l)`, filtration column and total
//! degree, so `q = l - p`.

mod cup;
mod structure;

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hochcomplex::CochainWindow;
use crate::linalg::{kernel, rank, subspace_sum, Matrix, QuotientBasis, SparseVec, Subspace};

pub use cup::{check_d1_against_cup, cup_d1_general, cup_d1_n3, D1Check, DiagonalCocycles};
pub use structure::{
    check_degeneration_a2k, e1_structure_report, DegenerationReport, E1Cell, E1Report,
};

/// One cell `E_r^{p, l-p}` with its outgoing differential.
#[derive(Clone, Debug)]
pub struct PageCell<E> {
    pub quotient: QuotientBasis<E>,
    /// `d_r` into `(p + r, l + 1)` in the representative bases, when
    /// `l + 1` is inside the window. Into a column `>= n` it has no rows.
    pub differential: Option<Matrix<E>>,
}

impl<E: Clone + PartialEq> PageCell<E> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

#[derive(Clone, Debug)]
pub struct Page<E> {
    r: usize,
    /// `cells[l][p]` for `l <= L`, `p < n`.
    cells: Vec<Vec<PageCell<E>>>,
}

impl<E: Clone + PartialEq> Page<E> {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn cell(&self, p: usize, l: usize) -> Option<&PageCell<E>> {
        self.cells.get(l)?.get(p)
    }

    /// `dim E_r^{p,l-p}`, or `None` outside the reliable window.
    pub fn dim(&self, p: usize, l: usize) -> Option<usize> {
        self.cell(p, l).map(PageCell::dim)
    }

    /// Dimension by `(p, q)`.
    pub fn dim_pq(&self, p: usize, q: usize) -> Option<usize> {
        self.dim(p, p + q)
    }

    pub fn differential(&self, p: usize, l: usize) -> Option<&Matrix<E>> {
        self.cell(p, l)?.differential.as_ref()
    }
}

/// `Z_r^p(l)` keyed by the clamped column bounds `(l, lo, hi)`: vectors in
/// `F^lo C^l` whose coboundary vanishes on tags `< hi`.
type ZKey = (usize, usize, usize);

/// All pages `E_0 .. E_n` of a window; `E_n = E_infinity`.
#[derive(Clone, Debug)]
pub struct SpectralSequence<E> {
    columns: usize,
    cutoff: usize,
    pages: Vec<Page<E>>,
}

fn clamp(v: isize, n: usize) -> usize {
    v.clamp(0, n as isize) as usize
}

impl<E: Clone + PartialEq + Send + Sync> SpectralSequence<E> {
    pub fn compute<F: Field<Elem = E>>(field: &F, w: &CochainWindow<E>) -> Result<Self> {
        let n = w.columns();
        let cutoff = w.cutoff();
        let key = |l: usize, p: isize, r: isize| -> ZKey { (l, clamp(p, n), clamp(p + r, n)) };

        let mut keys: Vec<ZKey> = Vec::new();
        for r in 0..=n as isize {
            for l in 0..=cutoff {
                for p in 0..n as isize {
                    keys.push(key(l, p, r));
                    keys.push(key(l, p + 1, r - 1));
                    if l > 0 {
                        keys.push(key(l - 1, p - r + 1, r - 1));
                    }
                }
            }
        }
        keys.sort_unstable();
        keys.dedup();
        let z: HashMap<ZKey, Subspace<E>> = keys
            .into_par_iter()
            .map(|k| (k, z_space(field, w, k)))
            .collect();

        // Images of the denominators' boundary parts, shared between pages.
        let mut image_keys: Vec<ZKey> = Vec::new();
        for r in 0..=n as isize {
            for l in 1..=cutoff {
                for p in 0..n as isize {
                    image_keys.push(key(l - 1, p - r + 1, r - 1));
                }
            }
        }
        image_keys.sort_unstable();
        image_keys.dedup();
        let images: HashMap<ZKey, Subspace<E>> = image_keys
            .into_par_iter()
            .map(|k| {
                let img = z[&k].map(field, w.differential(k.0))?;
                Ok((k, img))
            })
            .collect::<Result<_>>()?;

        let mut pages = Vec::with_capacity(n + 1);
        for r in 0..=n as isize {
            let quotients: Vec<Vec<QuotientBasis<E>>> = (0..=cutoff)
                .into_par_iter()
                .map(|l| {
                    (0..n as isize)
                        .map(|p| {
                            let num = &z[&key(l, p, r)];
                            let mut den = z[&key(l, p + 1, r - 1)].clone();
                            if l > 0 {
                                den = subspace_sum(
                                    field,
                                    &den,
                                    &images[&key(l - 1, p - r + 1, r - 1)],
                                )?;
                            }
                            QuotientBasis::new(field, num, &den)
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            let differentials: Vec<Vec<Option<Matrix<E>>>> = (0..=cutoff)
                .into_par_iter()
                .map(|l| {
                    (0..n)
                        .map(|p| {
                            if l + 1 > cutoff {
                                return Ok(None);
                            }
                            let source = &quotients[l][p];
                            let target = p + r as usize;
                            if target >= n {
                                return Ok(Some(Matrix::zeros(0, source.dim())));
                            }
                            let tq = &quotients[l + 1][target];
                            let cols = source
                                .representatives()
                                .map(|v| {
                                    let image = w.differential(l).mul_vec(field, v);
                                    tq.coordinates(field, &image).ok_or_else(|| {
                                        Error::Invariant(format!(
                                            "d_{r} of a class at (p={p}, l={l}) leaves Z_{r}^{target}"
                                        ))
                                    })
                                })
                                .collect::<Result<Vec<SparseVec<E>>>>()?;
                            Ok(Some(Matrix::from_columns(tq.dim(), cols)))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            let cells = quotients
                .into_iter()
                .zip(differentials)
                .map(|(qs, ds)| {
                    qs.into_iter()
                        .zip(ds)
                        .map(|(quotient, differential)| PageCell {
                            quotient,
                            differential,
                        })
                        .collect()
                })
                .collect();
            pages.push(Page {
                r: r as usize,
                cells,
            });
        }
        Ok(SpectralSequence {
            columns: n,
            cutoff,
            pages,
        })
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Page `E_r`; pages past `n` equal `E_n`.
    pub fn page(&self, r: usize) -> &Page<E> {
        &self.pages[r.min(self.columns)]
    }

    pub fn pages(&self) -> &[Page<E>] {
        &self.pages
    }

    /// `sum_p dim E_n^{p, l-p}` for `l <= L`.
    pub fn abutment(&self) -> Vec<usize> {
        let last = &self.pages[self.columns];
        (0..=self.cutoff)
            .map(|l| (0..self.columns).filter_map(|p| last.dim(p, l)).sum())
            .collect()
    }

    /// `d_r d_r = 0` wherever both maps are in the window.
    pub fn check_d_squared<F: Field<Elem = E>>(&self, field: &F) -> Result<()> {
        for page in &self.pages {
            let r = page.r;
            for l in 0..self.cutoff {
                for p in 0..self.columns {
                    let (Some(first), Some(second)) =
                        (page.differential(p, l), page.differential(p + r, l + 1))
                    else {
                        continue;
                    };
                    if !second.mul(field, first)?.is_zero() {
                        return Err(Error::Invariant(format!(
                            "d_{r} d_{r} is nonzero at (p={p}, l={l})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `dim E_{r+1} = dim ker d_r - dim im d_r` at every cell whose
    /// incoming and outgoing `d_r` are both in the window.
    pub fn check_recurrence<F: Field<Elem = E>>(&self, field: &F) -> Result<()> {
        for r in 0..self.columns {
            let (page, next) = (&self.pages[r], &self.pages[r + 1]);
            for l in 0..self.cutoff {
                for p in 0..self.columns {
                    let out = page.differential(p, l).expect("l < L");
                    let kernel_dim = out.cols() - rank(field, out);
                    let incoming = if p >= r && l >= 1 {
                        rank(field, page.differential(p - r, l - 1).expect("l - 1 < L"))
                    } else {
                        0
                    };
                    let expected = kernel_dim - incoming;
                    let got = next.dim(p, l).expect("in window");
                    if got != expected {
                        return Err(Error::Invariant(format!(
                            "dim E_{} at (p={p}, l={l}) is {got}, but page {r} gives {expected}",
                            r + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn z_space<F: Field>(
    field: &F,
    w: &CochainWindow<F::Elem>,
    (l, lo, hi): ZKey,
) -> Subspace<F::Elem> {
    let dim = w.dim(l);
    let cols: Vec<usize> = (0..dim).filter(|&c| w.tags(l)[c] >= lo).collect();
    if cols.is_empty() {
        return Subspace::zero(dim);
    }
    let rows: Vec<usize> = (0..w.dim(l + 1))
        .filter(|&r| w.tags(l + 1)[r] < hi)
        .collect();
    let sub = w.differential(l).submatrix(&rows, &cols);
    let k = kernel(field, &sub);
    let embedded: Vec<SparseVec<F::Elem>> = k
        .basis()
        .iter()
        .map(|v| v.iter().map(|(i, c)| (cols[*i], c.clone())).collect())
        .collect();
    // Order-preserving re-indexing keeps the basis reduced.
    Subspace::span(field, dim, embedded.iter())
}
