use rayon::prelude::*;

use crate::algebra::{Bimodule, FiniteDimAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rank, sparse, Matrix, SparseVec};

use super::CochainWindow;

fn sign<F: Field>(field: &F, odd: bool) -> F::Elem {
    if odd {
        field.neg(&field.one())
    } else {
        field.one()
    }
}

fn factor_table<F: Field>(
    field: &F,
    a: &FiniteDimAlgebra,
) -> Result<Vec<Vec<(usize, usize, F::Elem)>>> {
    let mul = a.mul_table().convert(field)?;
    let mut out = vec![Vec::new(); a.dim()];
    for (p, q, u, c) in mul.entries() {
        out[u].push((p, q, c.clone()));
    }
    Ok(out)
}

/// Splits digit `i` (0-based, most significant first) of a `len`-digit
/// base-`d` number into the digit pair `(p, q)`.
fn split_digit(tuple: usize, d: usize, len: usize, i: usize, p: usize, q: usize) -> usize {
    let below = d.pow((len - 1 - i) as u32);
    let high = tuple / (below * d);
    let low = tuple % below;
    ((high * d + p) * d + q) * below + low
}

fn digit(tuple: usize, d: usize, len: usize, i: usize) -> usize {
    (tuple / d.pow((len - 1 - i) as u32)) % d
}

struct ExtShape {
    db: usize,
    dn: usize,
    da: usize,
    dx: usize,
}

impl ExtShape {
    fn component_dim(&self, q: usize, p: usize) -> usize {
        self.db.pow(q as u32) * self.dn * self.da.pow(p as u32) * self.dx
    }

    /// Offsets of the `(q, l - q)` components of degree `l`, plus the total.
    fn offsets(&self, l: usize) -> Vec<usize> {
        let mut out = vec![0];
        for q in 0..=l {
            let last = *out.last().expect("nonempty");
            out.push(last + self.component_dim(q, l - q));
        }
        out
    }

    fn index(
        &self,
        offsets: &[usize],
        q: usize,
        p: usize,
        bt: usize,
        n: usize,
        at: usize,
        x: usize,
    ) -> usize {
        offsets[q] + ((bt * self.dn + n) * self.da.pow(p as u32) + at) * self.dx + x
    }
}

/// Cochains `Hom_k(B^{(x)q} (x) N (x) A^{(x)p}, X)` in degree `p + q`, with
/// the Hochschild-type differential of the two-sided bar resolution of `N`.
/// Its cohomology is `Ext_{B-A}(N, X)`.
pub fn build_ext_complex<F: Field>(
    field: &F,
    b: &FiniteDimAlgebra,
    a: &FiniteDimAlgebra,
    n: &Bimodule,
    x: &Bimodule,
    cutoff: usize,
) -> Result<CochainWindow<F::Elem>> {
    for (what, m) in [("N", n), ("X", x)] {
        if m.left_dim() != b.dim() || m.right_dim() != a.dim() {
            return Err(Error::ActionMismatch(format!(
                "{what} is a bimodule over algebras of dims {} and {}, expected {} and {}",
                m.left_dim(),
                m.right_dim(),
                b.dim(),
                a.dim()
            )));
        }
    }
    let shape = ExtShape {
        db: b.dim(),
        dn: n.dim(),
        da: a.dim(),
        dx: x.dim(),
    };
    let fb = factor_table(field, b)?;
    let fa = factor_table(field, a)?;
    let nl = n.lact().convert(field)?;
    let nr = n.ract().convert(field)?;
    let xl = x.lact().convert(field)?;
    let xr = x.ract().convert(field)?;
    // n = b n' and n = n' a factorizations.
    let mut n_left = vec![Vec::new(); shape.dn];
    for (bb, n2, nn, c) in nl.entries() {
        n_left[nn].push((bb, n2, c.clone()));
    }
    let mut n_right = vec![Vec::new(); shape.dn];
    for (n2, aa, nn, c) in nr.entries() {
        n_right[nn].push((n2, aa, c.clone()));
    }

    let offsets: Vec<Vec<usize>> = (0..=cutoff + 1).map(|l| shape.offsets(l)).collect();
    let dims: Vec<usize> = offsets
        .iter()
        .map(|o| *o.last().expect("nonempty"))
        .collect();
    let differentials = (0..=cutoff)
        .map(|l| {
            let (here, next) = (&offsets[l], &offsets[l + 1]);
            let columns: Vec<SparseVec<F::Elem>> = (0..dims[l])
                .into_par_iter()
                .map(|col| {
                    let q = here.partition_point(|&o| o <= col) - 1;
                    let p = l - q;
                    let mut rest = col - here[q];
                    let xi = rest % shape.dx;
                    rest /= shape.dx;
                    let apow = shape.da.pow(p as u32);
                    let at = rest % apow;
                    rest /= apow;
                    let ni = rest % shape.dn;
                    let bt = rest / shape.dn;
                    let mut pairs = Vec::new();
                    let bpow = shape.db.pow(q as u32);

                    // b_0 f(...)
                    for b0 in 0..shape.db {
                        for (x2, c) in xl.get(b0, xi) {
                            let idx = shape.index(next, q + 1, p, b0 * bpow + bt, ni, at, *x2);
                            pairs.push((idx, c.clone()));
                        }
                    }
                    // merges inside the B slots, positions 1..=q
                    for i in 0..q {
                        let sg = sign(field, (i + 1) % 2 == 1);
                        for (p1, p2, c) in &fb[digit(bt, shape.db, q, i)] {
                            let bt2 = split_digit(bt, shape.db, q, i, *p1, *p2);
                            let idx = shape.index(next, q + 1, p, bt2, ni, at, xi);
                            pairs.push((idx, field.mul(&sg, c)));
                        }
                    }
                    // merges at the N slot, position q + 1
                    let sg = sign(field, (q + 1) % 2 == 1);
                    for (bb, n2, c) in &n_left[ni] {
                        let idx = shape.index(next, q + 1, p, bt * shape.db + bb, *n2, at, xi);
                        pairs.push((idx, field.mul(&sg, c)));
                    }
                    for (n2, aa, c) in &n_right[ni] {
                        let idx = shape.index(next, q, p + 1, bt, *n2, aa * apow + at, xi);
                        pairs.push((idx, field.mul(&sg, c)));
                    }
                    // merges inside the A slots, positions q + 2 ..= q + 1 + p
                    for k in 0..p {
                        let sg = sign(field, (q + 2 + k) % 2 == 1);
                        for (p1, p2, c) in &fa[digit(at, shape.da, p, k)] {
                            let at2 = split_digit(at, shape.da, p, k, *p1, *p2);
                            let idx = shape.index(next, q, p + 1, bt, ni, at2, xi);
                            pairs.push((idx, field.mul(&sg, c)));
                        }
                    }
                    // (-1)^{m+1} f(...) a_{p+1}, with m = q + 1 + p slots
                    let sg = sign(field, (q + p + 2) % 2 == 1);
                    for a2 in 0..shape.da {
                        for (x2, c) in xr.get(xi, a2) {
                            let idx = shape.index(next, q, p + 1, bt, ni, at * shape.da + a2, *x2);
                            pairs.push((idx, field.mul(&sg, c)));
                        }
                    }
                    sparse::from_pairs(field, pairs)
                })
                .collect();
            Matrix::from_columns(dims[l + 1], columns)
        })
        .collect();
    let tags = dims.iter().map(|&d| vec![0; d]).collect();
    Ok(CochainWindow::new(dims, differentials, tags, Vec::new(), 1))
}

/// Chain spaces `C_0 .. C_{L+1}` with boundaries `d_1 .. d_{L+1}`.
#[derive(Clone, Debug)]
pub struct ChainWindow<E> {
    dims: Vec<usize>,
    /// `boundaries[q - 1] = d_q : C_q -> C_{q-1}`.
    boundaries: Vec<Matrix<E>>,
}

impl<E: Clone + PartialEq + Send + Sync> ChainWindow<E> {
    pub fn cutoff(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, q: usize) -> &Matrix<E> {
        &self.boundaries[q - 1]
    }

    pub fn check_d_squared<F: Field<Elem = E>>(&self, field: &F) -> Result<()> {
        for q in 1..self.boundaries.len() {
            if !self.boundaries[q - 1]
                .mul(field, &self.boundaries[q])?
                .is_zero()
            {
                return Err(Error::Invariant(format!("d_{} d_{} is nonzero", q, q + 1)));
            }
        }
        Ok(())
    }
}

/// `dim H_q` for `q = 0 ..= L`.
pub fn homology_dims<F: Field>(field: &F, w: &ChainWindow<F::Elem>) -> Vec<usize> {
    let ranks: Vec<usize> = w.boundaries.par_iter().map(|d| rank(field, d)).collect();
    (0..=w.cutoff())
        .map(|q| {
            let out = if q == 0 { 0 } else { ranks[q - 1] };
            w.dims[q] - out - ranks[q]
        })
        .collect()
}

/// The complex `M2 (x) B^{(x)q} (x) M1` with boundary
/// `d_q(y, b_1, ..., b_q, x) = -(y b_1, ...) + sum (-1)^{i+1} (..., b_i b_{i+1}, ...) + (-1)^{q+1} (..., b_q x)`,
/// whose homology is `Tor^B(M2, M1)`.
pub fn build_tor_complex<F: Field>(
    field: &F,
    mid: &FiniteDimAlgebra,
    m2: &Bimodule,
    m1: &Bimodule,
    cutoff: usize,
) -> Result<ChainWindow<F::Elem>> {
    if m2.right_dim() != mid.dim() || m1.left_dim() != mid.dim() {
        return Err(Error::ActionMismatch(format!(
            "Tor over an algebra of dim {}: right action of dim {}, left action of dim {}",
            mid.dim(),
            m2.right_dim(),
            m1.left_dim()
        )));
    }
    let (d2, db, d1) = (m2.dim(), mid.dim(), m1.dim());
    let mul = mid.mul_table().convert(field)?;
    let yr = m2.ract().convert(field)?;
    let xl = m1.lact().convert(field)?;
    let dims: Vec<usize> = (0..=cutoff + 1)
        .map(|q| d2 * db.pow(q as u32) * d1)
        .collect();
    let boundaries = (1..=cutoff + 1)
        .map(|q| {
            let bpow = db.pow(q as u32);
            let lower = db.pow(q as u32 - 1);
            let columns: Vec<SparseVec<F::Elem>> = (0..dims[q])
                .into_par_iter()
                .map(|col| {
                    let x = col % d1;
                    let bt = (col / d1) % bpow;
                    let y = col / (d1 * bpow);
                    let index = |y: usize, bt: usize, x: usize| (y * lower + bt) * d1 + x;
                    let mut pairs = Vec::new();
                    let minus = field.neg(&field.one());
                    let b1 = digit(bt, db, q, 0);
                    let rest = bt % lower;
                    for (y2, c) in yr.get(y, b1) {
                        pairs.push((index(*y2, rest, x), field.mul(&minus, c)));
                    }
                    for i in 0..q - 1 {
                        let sg = sign(field, i % 2 == 1);
                        // merge digits i and i + 1
                        let below = db.pow((q - 2 - i) as u32);
                        let high = bt / (below * db * db);
                        let low = bt % below;
                        let (bi, bj) = (digit(bt, db, q, i), digit(bt, db, q, i + 1));
                        for (u, c) in mul.get(bi, bj) {
                            let bt2 = (high * db + *u) * below + low;
                            pairs.push((index(y, bt2, x), field.mul(&sg, c)));
                        }
                    }
                    let bq = bt % db;
                    let sg = sign(field, (q + 1) % 2 == 1);
                    for (x2, c) in xl.get(bq, x) {
                        pairs.push((index(y, bt / db, *x2), field.mul(&sg, c)));
                    }
                    sparse::from_pairs(field, pairs)
                })
                .collect();
            Matrix::from_columns(dims[q - 1], columns)
        })
        .collect();
    Ok(ChainWindow { dims, boundaries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Bilinear;
    use crate::field::{qi, Rationals};
    use crate::hochcomplex::reliable_cohomology;

    fn trivial(r: usize) -> Bimodule {
        let l =
            Bilinear::from_entries(&Rationals, 1, r, r, (0..r).map(|i| (0, i, i, qi(1)))).unwrap();
        let rt =
            Bilinear::from_entries(&Rationals, r, 1, r, (0..r).map(|i| (i, 0, i, qi(1)))).unwrap();
        Bimodule::new(l, rt).unwrap()
    }

    /// `_iM` over `k^2` on the left: `V (x) W` with `V = k^2` regular.
    fn k2_by_k(w: usize) -> Bimodule {
        let k2 = FiniteDimAlgebra::diagonal(2);
        let right =
            Bilinear::from_entries(&Rationals, w, 1, w, (0..w).map(|i| (i, 0, i, qi(1)))).unwrap();
        Bimodule::outer(k2.mul_table(), &right).unwrap()
    }

    #[test]
    fn ext_over_ground_field() {
        let k = FiniteDimAlgebra::ground();
        for r in 1..=3 {
            let w = build_ext_complex(&Rationals, &k, &k, &trivial(r), &trivial(r), 2).unwrap();
            w.check_d_squared(&Rationals).unwrap();
            assert_eq!(reliable_cohomology(&Rationals, &w), vec![r * r, 0, 0]);
        }
        let zero = Bimodule::zero(1, 1);
        let w = build_ext_complex(&Rationals, &k, &k, &zero, &trivial(2), 2).unwrap();
        assert_eq!(reliable_cohomology(&Rationals, &w), vec![0, 0, 0]);
    }

    #[test]
    fn ext_of_fan_block() {
        // k^4 = k^2 (x) k^2 as a k^2-k bimodule: two isotypic blocks of rank 2.
        let (k2, k) = (FiniteDimAlgebra::diagonal(2), FiniteDimAlgebra::ground());
        let n = k2_by_k(2);
        let w = build_ext_complex(&Rationals, &k2, &k, &n, &n, 2).unwrap();
        w.check_d_squared(&Rationals).unwrap();
        assert_eq!(reliable_cohomology(&Rationals, &w), vec![8, 0, 0]);
    }

    #[test]
    fn ext_over_dual_numbers_is_nonzero_in_every_degree() {
        // Ext_{A-A}(A, A) = HH(A) for A = k[x]/(x^2) over Q: dims 2, 1, 1.
        let a = FiniteDimAlgebra::dual_numbers();
        let reg = Bimodule::regular(&a);
        let w = build_ext_complex(&Rationals, &a, &a, &reg, &reg, 2).unwrap();
        w.check_d_squared(&Rationals).unwrap();
        assert_eq!(reliable_cohomology(&Rationals, &w), vec![2, 1, 1]);
    }

    #[test]
    fn tor_examples() {
        let k = FiniteDimAlgebra::ground();
        let w = build_tor_complex(&Rationals, &k, &trivial(2), &trivial(3), 2).unwrap();
        w.check_d_squared(&Rationals).unwrap();
        assert_eq!(homology_dims(&Rationals, &w), vec![6, 0, 0]);

        // k as a right k^2-module through the first factor, on both sides.
        let k2 = FiniteDimAlgebra::diagonal(2);
        let m2 = Bimodule::new(
            Bilinear::from_entries(&Rationals, 1, 1, 1, [(0, 0, 0, qi(1))]).unwrap(),
            Bilinear::from_entries(&Rationals, 1, 2, 1, [(0, 0, 0, qi(1))]).unwrap(),
        )
        .unwrap();
        let m1 = Bimodule::new(
            Bilinear::from_entries(&Rationals, 2, 1, 1, [(0, 0, 0, qi(1))]).unwrap(),
            Bilinear::from_entries(&Rationals, 1, 1, 1, [(0, 0, 0, qi(1))]).unwrap(),
        )
        .unwrap();
        let w = build_tor_complex(&Rationals, &k2, &m2, &m1, 3).unwrap();
        w.check_d_squared(&Rationals).unwrap();
        assert_eq!(homology_dims(&Rationals, &w), vec![1, 0, 0, 0]);

        let w = build_tor_complex(&Rationals, &k2, &Bimodule::zero(1, 2), &m1, 2).unwrap();
        assert_eq!(homology_dims(&Rationals, &w), vec![0, 0, 0]);
    }

    #[test]
    fn tor_over_dual_numbers() {
        // Tor^{k[x]/x^2}(k, k) = k in every degree.
        let a = FiniteDimAlgebra::dual_numbers();
        let m2 = Bimodule::new(
            Bilinear::from_entries(&Rationals, 1, 1, 1, [(0, 0, 0, qi(1))]).unwrap(),
            Bilinear::from_entries(&Rationals, 1, 2, 1, [(0, 0, 0, qi(1))]).unwrap(),
        )
        .unwrap();
        let m1 = Bimodule::new(
            Bilinear::from_entries(&Rationals, 2, 1, 1, [(0, 0, 0, qi(1))]).unwrap(),
            Bilinear::from_entries(&Rationals, 1, 1, 1, [(0, 0, 0, qi(1))]).unwrap(),
        )
        .unwrap();
        let w = build_tor_complex(&Rationals, &a, &m2, &m1, 3).unwrap();
        w.check_d_squared(&Rationals).unwrap();
        assert_eq!(homology_dims(&Rationals, &w), vec![1, 1, 1, 1]);
    }
}
