//! Cochain-level formulas for `d_1`: cup products with the identities of
//! the jump blocks, plus the `mu`-splittings of jump components. These are
//! written against the block presentation of `T`, independently of the
//! total-algebra tables that assemble `delta`.

use std::collections::BTreeMap;

use crate::algebra::{Bilinear, TBimodule, TriangularAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hochcomplex::{build_bar_complex, CellLayout, CochainWindow, DEFAULT_ORACLE_BUDGET};
use crate::linalg::{sparse, SparseVec};
use crate::trajectory::{Step, Trajectory};

struct Context<'a, F: Field> {
    field: &'a F,
    t: &'a TriangularAlgebra,
    lact: Bilinear<F::Elem>,
    ract: Bilinear<F::Elem>,
    x_local: Vec<usize>,
    /// `split[(to, from)][u]` lists `(alpha, a, b, c)` with
    /// `mu_{to,alpha,from}(a (x) b) = c u + ...`.
    split: BTreeMap<(usize, usize), Vec<Vec<(usize, usize, usize, F::Elem)>>>,
}

impl<'a, F: Field> Context<'a, F> {
    fn new(field: &'a F, t: &'a TriangularAlgebra, x: &TBimodule) -> Result<Self> {
        let mut split: BTreeMap<(usize, usize), Vec<Vec<_>>> = BTreeMap::new();
        for ((l, j, i), mu) in t.mus() {
            let entry = split
                .entry((l, i))
                .or_insert_with(|| vec![Vec::new(); t.block_dim(l, i)]);
            for (a, b, u, c) in mu.convert(field)?.entries() {
                entry[u].push((j, a, b, c.clone()));
            }
        }
        let mut x_local = vec![0; x.dim()];
        for xi in 0..x.dim() {
            let (j, i) = x.block_of(xi);
            x_local[xi] = x.block(j, i).iter().position(|&y| y == xi).expect("listed");
        }
        Ok(Context {
            field,
            t,
            lact: x.module().lact().convert(field)?,
            ract: x.module().ract().convert(field)?,
            x_local,
            split,
        })
    }

    /// `theta (x) f` for the identity `theta` of `_jM_{target}`: the value
    /// at `(m, t_1, ..., t_l)` is `m f(t_1, ..., t_l)`.
    fn identity_cup(
        &self,
        tau: &Trajectory,
        tuple: &[usize],
        xg: usize,
        coef: &F::Elem,
        j: usize,
        next: &CellLayout,
        out: &mut Vec<(usize, F::Elem)>,
    ) {
        let from = tau.target();
        let block = self.t.range(j, from);
        let mut steps = vec![Step::Jump { from, to: j }];
        steps.extend_from_slice(tau.steps());
        let tau2 = Trajectory::new(tau.source(), steps).expect("prepended jump is consecutive");
        let Some(cell) = next.find(&tau2) else { return };
        let mut tuple2 = Vec::with_capacity(tuple.len() + 1);
        tuple2.push(0);
        tuple2.extend_from_slice(tuple);
        for m in 0..block.dim {
            tuple2[0] = m;
            for (y, c) in self.lact.get(block.offset + m, xg) {
                out.push((
                    cell.index(&tuple2, self.x_local[*y]),
                    self.field.mul(coef, c),
                ));
            }
        }
    }

    /// `f (x) theta` for the identity of `_{source}M_k`: the value at
    /// `(t_1, ..., t_l, m)` is `f(t_1, ..., t_l) m`.
    fn cup_identity(
        &self,
        tau: &Trajectory,
        tuple: &[usize],
        xg: usize,
        coef: &F::Elem,
        k: usize,
        next: &CellLayout,
        out: &mut Vec<(usize, F::Elem)>,
    ) {
        let to = tau.source();
        let block = self.t.range(to, k);
        let mut steps = tau.steps().to_vec();
        steps.push(Step::Jump { from: k, to });
        let tau2 = Trajectory::new(k, steps).expect("appended jump is consecutive");
        let Some(cell) = next.find(&tau2) else { return };
        let mut tuple2 = tuple.to_vec();
        tuple2.push(0);
        let last = tuple.len();
        for m in 0..block.dim {
            tuple2[last] = m;
            for (y, c) in self.ract.get(xg, block.offset + m) {
                out.push((
                    cell.index(&tuple2, self.x_local[*y]),
                    self.field.mul(coef, c),
                ));
            }
        }
    }

    /// `f o (1 (x) ... (x) mu (x) ... (x) 1)` on the jump at slot `pos`
    /// (0-based, leftmost first).
    fn mu_split(
        &self,
        tau: &Trajectory,
        tuple: &[usize],
        xg: usize,
        coef: &F::Elem,
        pos: usize,
        next: &CellLayout,
        out: &mut Vec<(usize, F::Elem)>,
    ) {
        let Step::Jump { from, to } = tau.steps()[pos] else {
            return;
        };
        let Some(table) = self.split.get(&(to, from)) else {
            return;
        };
        for (alpha, a, b, c) in &table[tuple[pos]] {
            let mut steps = tau.steps().to_vec();
            steps.splice(
                pos..=pos,
                [
                    Step::Jump { from: *alpha, to },
                    Step::Jump { from, to: *alpha },
                ],
            );
            let tau2 = Trajectory::new(tau.source(), steps).expect("split jump is consecutive");
            let Some(cell) = next.find(&tau2) else {
                continue;
            };
            let mut tuple2 = tuple.to_vec();
            tuple2.splice(pos..=pos, [*a, *b]);
            out.push((
                cell.index(&tuple2, self.x_local[xg]),
                self.field.mul(coef, c),
            ));
        }
    }
}

fn sign<F: Field>(field: &F, odd: bool) -> F::Elem {
    if odd {
        field.neg(&field.one())
    } else {
        field.one()
    }
}

fn layouts<E: Clone + PartialEq + Send + Sync>(
    w: &CochainWindow<E>,
    l: usize,
) -> Result<(&CellLayout, &CellLayout)> {
    match (w.layout(l), w.layout(l + 1)) {
        (Some(here), Some(next)) if l <= w.cutoff() => Ok((here, next)),
        _ => Err(Error::MalformedCell(format!(
            "degree {l} has no relative cells with a successor in this window"
        ))),
    }
}

/// The column-`(t+1)` cochain
/// `sum 1_M (x) f + sum (-1)^{m+1} f (x) 1_M + sum (-1)^pos f o (1 .. mu .. 1)`
/// for a degree-`l` cochain `f` of the relative window `w` supported on
/// column `t`, where `m = l` is the number of tensor slots of `f` and `pos`
/// is the 1-based slot of the split jump.
pub fn cup_d1_general<F: Field>(
    field: &F,
    t: &TriangularAlgebra,
    x: &TBimodule,
    w: &CochainWindow<F::Elem>,
    l: usize,
    f: &SparseVec<F::Elem>,
) -> Result<SparseVec<F::Elem>> {
    let (here, next) = layouts(w, l)?;
    let ctx = Context::new(field, t, x)?;
    let mut column = None;
    let mut out = Vec::new();
    let append_sign = sign(field, (l + 1) % 2 == 1);
    for (idx, coef) in f {
        if *idx >= here.dim() {
            return Err(Error::MalformedCell(format!(
                "index {idx} is outside C^{l}"
            )));
        }
        let (cell, tuple, xl) = here.locate(*idx);
        let tau = cell.trajectory();
        match column {
            None => column = Some(tau.length()),
            Some(c) if c != tau.length() => {
                return Err(Error::MalformedCell(format!(
                    "cochain mixes filtration columns {c} and {}",
                    tau.length()
                )))
            }
            Some(_) => {}
        }
        let xg = cell.x_basis[xl];
        for j in tau.target() + 1..t.n() {
            ctx.identity_cup(tau, &tuple, xg, coef, j, next, &mut out);
        }
        let signed = field.mul(&append_sign, coef);
        for k in 0..tau.source() {
            ctx.cup_identity(tau, &tuple, xg, &signed, k, next, &mut out);
        }
        for pos in 0..tau.degree() {
            let c = field.mul(&sign(field, (pos + 1) % 2 == 1), coef);
            ctx.mu_split(tau, &tuple, xg, &c, pos, next, &mut out);
        }
    }
    Ok(sparse::from_pairs(field, out))
}

/// Cocycles of `C^l(A_i, _iX_i)` for the three diagonal algebras, in the
/// bar coordinates `tuple * dim(_iX_i) + x`, first factor most significant.
#[derive(Clone, Debug)]
pub struct DiagonalCocycles<E> {
    pub f: SparseVec<E>,
    pub g: SparseVec<E>,
    pub h: SparseVec<E>,
}

/// `1_{M21} (x) f + (-1)^{l+1} g (x) 1_{M21} + 1_{M32} (x) g + (-1)^{l+1} h (x) 1_{M32}
///  + 1_{M31} (x) f + (-1)^{l+1} h (x) 1_{M31}` for a three-level algebra,
/// as a cochain of degree `l + 1` in the relative window.
pub fn cup_d1_n3<F: Field>(
    field: &F,
    t: &TriangularAlgebra,
    x: &TBimodule,
    w: &CochainWindow<F::Elem>,
    l: usize,
    cocycles: &DiagonalCocycles<F::Elem>,
) -> Result<SparseVec<F::Elem>> {
    if t.n() != 3 {
        return Err(Error::Hypothesis(format!(
            "the six-term formula needs 3 levels, got {}",
            t.n()
        )));
    }
    let (here, next) = layouts(w, l)?;
    let ctx = Context::new(field, t, x)?;
    let parts = [&cocycles.f, &cocycles.g, &cocycles.h];
    let mut stays = Vec::with_capacity(3);
    for (i, v) in parts.into_iter().enumerate() {
        let block = x.block_bimodule(t, i, i)?;
        let bar = build_bar_complex(field, t.diag(i), &block, l, DEFAULT_ORACLE_BUDGET)?;
        if v.iter().any(|(k, _)| *k >= bar.dim(l)) {
            return Err(Error::MalformedCell(format!(
                "cochain on A{} has an index beyond C^{l}",
                i + 1
            )));
        }
        if !bar.differential(l).mul_vec(field, v).is_empty() {
            return Err(Error::NotCocycle(format!(
                "the A{} component is not a cocycle",
                i + 1
            )));
        }
        let tau = Trajectory::new(i, vec![Step::Stay(i); l]).expect("stays are consecutive");
        stays.push((tau, v));
    }
    let append = sign(field, (l + 1) % 2 == 1);
    let mut out = Vec::new();
    // (level of the cochain, jump block (to, from), cochain on the left of the jump?)
    let terms = [
        (0, (1, 0), false),
        (1, (1, 0), true),
        (1, (2, 1), false),
        (2, (2, 1), true),
        (0, (2, 0), false),
        (2, (2, 0), true),
    ];
    for (level, (to, from), appended) in terms {
        let (tau, v) = &stays[level];
        let Some(cell) = here.find(tau) else { continue };
        for (idx, coef) in v.iter() {
            let xl = idx % cell.x_basis.len();
            let tuple = cell.basis.tuple(idx / cell.x_basis.len());
            let xg = cell.x_basis[xl];
            if appended {
                let c = field.mul(&append, coef);
                ctx.cup_identity(tau, &tuple, xg, &c, from, next, &mut out);
            } else {
                ctx.identity_cup(tau, &tuple, xg, coef, to, next, &mut out);
            }
        }
    }
    Ok(sparse::from_pairs(field, out))
}

/// Outcome of comparing the page-1 differential with [`cup_d1_general`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct D1Check {
    /// Representatives compared.
    pub checked: usize,
    /// `(p, l, k)` for the `k`-th representative of `E_1^{p,l-p}` where the
    /// two disagree.
    pub mismatches: Vec<(usize, usize, usize)>,
}

/// Compares `d_1` on every `E_1` representative with the cup formula applied
/// to its column-`p` part, in the coordinates of `E_1^{p+1}`.
pub fn check_d1_against_cup<F: Field>(
    field: &F,
    t: &TriangularAlgebra,
    x: &TBimodule,
    w: &CochainWindow<F::Elem>,
    seq: &super::SpectralSequence<F::Elem>,
) -> Result<D1Check> {
    let page = seq.page(1);
    let mut report = D1Check::default();
    for l in 0..seq.cutoff() {
        for p in 0..seq.columns() {
            let cell = page.cell(p, l).expect("in window");
            let d = cell.differential.as_ref().expect("l < L");
            for (k, rep) in cell.quotient.representatives().enumerate() {
                report.checked += 1;
                let machinery = d.column(k);
                if p + 1 >= seq.columns() {
                    if !machinery.is_empty() {
                        report.mismatches.push((p, l, k));
                    }
                    continue;
                }
                let f: SparseVec<F::Elem> = rep
                    .iter()
                    .filter(|(i, _)| w.tags(l)[*i] == p)
                    .cloned()
                    .collect();
                let g = cup_d1_general(field, t, x, w, l, &f)?;
                let target = &page.cell(p + 1, l + 1).expect("in window").quotient;
                match target.coordinates(field, &g) {
                    Some(c) if &c == machinery => {}
                    _ => report.mismatches.push((p, l, k)),
                }
            }
        }
    }
    Ok(report)
}
