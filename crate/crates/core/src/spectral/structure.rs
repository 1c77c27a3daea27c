//! Independent descriptions of the first pages: `E_1` as Hochschild
//! cohomology of the diagonal plus Ext groups of tensor products of the
//! jump blocks, and the vanishing of `d_2` for tensorial three-level
//! algebras.

use crate::algebra::{
    build_tensorial, is_separable, tensor_over, Bimodule, TBimodule, TriangularAlgebra,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hochcomplex::{
    build_bar_complex, build_ext_complex, reliable_cohomology, CochainWindow, DEFAULT_ORACLE_BUDGET,
};
use crate::linalg::{kernel, SparseVec};
use crate::trajectory::{Step, Trajectory};

use super::SpectralSequence;

/// One cell `E_1^{p, l-p}` next to its predicted decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Cell {
    pub p: usize,
    pub l: usize,
    /// `(label, dim)` of each summand.
    pub summands: Vec<(String, usize)>,
    pub computed: usize,
    /// Every intermediate algebra of the column is separable, so the
    /// tensor products over them are exact and the prediction is a theorem.
    pub hypothesis: bool,
}

impl E1Cell {
    pub fn predicted(&self) -> usize {
        self.summands.iter().map(|(_, d)| d).sum()
    }

    pub fn agrees(&self) -> bool {
        self.predicted() == self.computed
    }
}

#[derive(Clone, Debug)]
pub struct E1Report {
    pub cells: Vec<E1Cell>,
    /// Zero-dimensional jump blocks `(j, i)`, 0-based.
    pub zero_blocks: Vec<(usize, usize)>,
}

impl E1Report {
    /// Agreement on every cell where the hypothesis holds.
    pub fn consistent(&self) -> bool {
        self.cells.iter().all(|c| !c.hypothesis || c.agrees())
    }
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, size, cur, out);
            cur.pop();
        }
    }
    go(0, n, size, &mut cur, &mut out);
    out
}

fn levels_label(levels: &[usize]) -> String {
    levels
        .iter()
        .rev()
        .map(|k| (k + 1).to_string())
        .collect::<Vec<_>>()
        .join("")
}

/// Compares `E_1` of `seq` with `HH(A_i, _iX_i)` in column 0 and, in column
/// `t >= 1`, with `Ext^{l-t}` from `M_{k_{t+1}k_t} (x)_A ... (x)_A M_{k_2k_1}`
/// into `_{k_{t+1}}X_{k_1}`, summed over `k_1 < ... < k_{t+1}`.
pub fn e1_structure_report<F: Field>(
    field: &F,
    t: &TriangularAlgebra,
    x: &TBimodule,
    seq: &SpectralSequence<F::Elem>,
) -> Result<E1Report> {
    let n = t.n();
    let cutoff = seq.cutoff();
    let page = seq.page(1);
    let separable: Vec<bool> = (0..n)
        .map(|i| is_separable(field, t.diag(i)))
        .collect::<Result<_>>()?;
    let mut cells = Vec::new();

    let mut diagonal = Vec::with_capacity(n);
    for i in 0..n {
        let block = x.block_bimodule(t, i, i)?;
        let w = build_bar_complex(field, t.diag(i), &block, cutoff, DEFAULT_ORACLE_BUDGET)?;
        diagonal.push(reliable_cohomology(field, &w));
    }
    for l in 0..=cutoff {
        cells.push(E1Cell {
            p: 0,
            l,
            summands: (0..n)
                .map(|i| (format!("HH(A{})", i + 1), diagonal[i][l]))
                .collect(),
            computed: page.dim(0, l).expect("in window"),
            hypothesis: true,
        });
    }

    for col in 1..n.min(cutoff + 1) {
        let mut per_profile = Vec::new();
        let mut hypothesis = true;
        for levels in subsets(n, col + 1) {
            let (first, last) = (levels[0], levels[col]);
            hypothesis &= levels[1..col].iter().all(|&k| separable[k]);
            let mut tensor: Bimodule = t.module(levels[1], first).clone();
            for w in levels[1..].windows(2) {
                let (mid, top) = (w[0], w[1]);
                tensor = tensor_over(t.diag(mid), t.module(top, mid), &tensor)?.module;
            }
            let block = x.block_bimodule(t, last, first)?;
            let w = build_ext_complex(
                field,
                t.diag(last),
                t.diag(first),
                &tensor,
                &block,
                cutoff - col,
            )?;
            per_profile.push((
                format!("Ext(M{})", levels_label(&levels)),
                reliable_cohomology(field, &w),
            ));
        }
        for l in col..=cutoff {
            cells.push(E1Cell {
                p: col,
                l,
                summands: per_profile
                    .iter()
                    .map(|(name, dims)| (name.clone(), dims[l - col]))
                    .collect(),
                computed: page.dim(col, l).expect("in window"),
                hypothesis,
            });
        }
    }
    Ok(E1Report {
        cells,
        zero_blocks: t.zero_blocks(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationReport {
    pub middle_is_ground: bool,
    /// With `A_2 = k`: the cells `(p, l)` whose `d_2` is nonzero. `None`
    /// when the hypothesis fails and no global claim is made.
    pub nonzero_d2: Option<Vec<(usize, usize)>>,
    /// Degrees `l` where `d_2` is nonzero on a class from the `A_1` and
    /// `A_3` summands of `E_2^{0,l}`.
    pub lemma_failures: Vec<usize>,
    pub checked_degrees: Vec<usize>,
}

impl DegenerationReport {
    pub fn holds(&self) -> bool {
        self.lemma_failures.is_empty() && self.nonzero_d2.as_ref().is_none_or(Vec::is_empty)
    }
}

/// Checks that `d_2` vanishes for a tensorial three-level algebra with
/// `A_2 = k`, and in general that it vanishes on the `E_2^{0,l}` classes
/// coming from `HH(A_1) (+) HH(A_3)`.
pub fn check_degeneration_a2k<F: Field>(
    field: &F,
    t: &TriangularAlgebra,
    w: &CochainWindow<F::Elem>,
    seq: &SpectralSequence<F::Elem>,
) -> Result<DegenerationReport> {
    if t.n() != 3 {
        return Err(Error::Hypothesis(format!(
            "three levels are required, got {}",
            t.n()
        )));
    }
    let rebuilt = build_tensorial(
        t.diagonal_algebras().to_vec(),
        vec![t.module(1, 0).clone(), t.module(2, 1).clone()],
    )?;
    if rebuilt != *t {
        return Err(Error::Hypothesis(
            "the algebra is not the tensorial algebra of its adjacent blocks".into(),
        ));
    }
    let middle_is_ground = t.diag(1).dim() == 1;
    let cutoff = seq.cutoff();
    let page = seq.page(2);
    let checked_degrees: Vec<usize> = (0..cutoff).collect();

    let nonzero_d2 = middle_is_ground.then(|| {
        let mut bad = Vec::new();
        for l in 0..cutoff {
            for p in 0..3 {
                if page.differential(p, l).is_some_and(|d| !d.is_zero()) {
                    bad.push((p, l));
                }
            }
        }
        bad
    });

    let mut lemma_failures = Vec::new();
    for &l in &checked_degrees {
        let layout = w
            .layout(l)
            .ok_or_else(|| Error::MalformedCell("the window has no trajectory cells".into()))?;
        let middle = Trajectory::new(1, vec![Step::Stay(1); l]).expect("stays");
        let excluded: Vec<usize> = layout
            .find(&middle)
            .map(|c| (c.offset..c.offset + c.dim()).collect())
            .unwrap_or_default();
        let cols: Vec<usize> = (0..w.dim(l)).filter(|c| !excluded.contains(c)).collect();
        let rows: Vec<usize> = (0..w.dim(l + 1))
            .filter(|&r| w.tags(l + 1)[r] < 2)
            .collect();
        let k = kernel(field, &w.differential(l).submatrix(&rows, &cols));
        let target = &page.cell(2, l + 1).expect("in window").quotient;
        for v in k.basis() {
            let v: SparseVec<F::Elem> = v.iter().map(|(i, c)| (cols[*i], c.clone())).collect();
            let image = w.differential(l).mul_vec(field, &v);
            let coords = target.coordinates(field, &image).ok_or_else(|| {
                Error::Invariant(format!("d_2 image at degree {} leaves Z_2^2", l + 1))
            })?;
            if !coords.is_empty() {
                lemma_failures.push(l);
                break;
            }
        }
    }
    Ok(DegenerationReport {
        middle_is_ground,
        nonzero_d2,
        lemma_failures,
        checked_degrees,
    })
}
