//! Sorted coordinate vectors.

use crate::field::Field;

/// A sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `x + c * y`, keeping the entries of `x` before position `from` untouched.
///
/// `y` must have no entries with index below `x[from].0` (when `from` is in
/// range); this is what elimination against a leading-pivot row guarantees.
pub fn axpy_from<F: Field>(
    field: &F,
    x: &SparseVec<F::Elem>,
    from: usize,
    c: &F::Elem,
    y: &SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    out.extend_from_slice(&x[..from]);
    let (mut i, mut j) = (from, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            let v = field.mul(c, &y[j].1);
            if !field.is_zero(&v) {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(&x[i].1, &field.mul(c, &y[j].1));
            if !field.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn axpy<F: Field>(
    field: &F,
    x: &SparseVec<F::Elem>,
    c: &F::Elem,
    y: &SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    axpy_from(field, x, 0, c, y)
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    if field.is_zero(c) {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, field.mul(c, v))).collect()
}

/// Builds a sparse vector from unsorted `(index, value)` pairs, summing duplicates.
pub fn from_pairs<F: Field>(field: &F, mut pairs: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    pairs.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(pairs.len());
    for (i, v) in pairs {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = field.add(acc, &v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !field.is_zero(v));
    out
}

pub fn from_dense<F: Field>(field: &F, dense: &[F::Elem]) -> SparseVec<F::Elem> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !field.is_zero(v))
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

pub fn to_dense<F: Field>(field: &F, x: &SparseVec<F::Elem>, len: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); len];
    for (i, v) in x {
        out[*i] = v.clone();
    }
    out
}

pub fn get<F: Field>(field: &F, x: &SparseVec<F::Elem>, index: usize) -> F::Elem {
    match x.binary_search_by_key(&index, |(i, _)| *i) {
        Ok(pos) => x[pos].1.clone(),
        Err(_) => field.zero(),
    }
}
