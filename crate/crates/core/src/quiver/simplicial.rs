use std::collections::{BTreeSet, HashMap};

use crate::algebra::{Bilinear, Bimodule, FiniteDimAlgebra, TriangularAlgebra, QQ};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rank, Matrix};

/// A finite simplicial complex, generated by its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    /// `faces[d]` lists the `d`-simplices as sorted vertex-index lists, sorted.
    faces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Closes the facets under taking nonempty subsets. Vertex order is the
    /// order of first appearance.
    pub fn from_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for facet in facets {
            let mut f: Vec<usize> = facet
                .iter()
                .map(|v| {
                    let v = v.as_ref();
                    *index.entry(v.to_string()).or_insert_with(|| {
                        vertices.push(v.to_string());
                        vertices.len() - 1
                    })
                })
                .collect();
            f.sort_unstable();
            f.dedup();
            if f.len() > 20 {
                return Err(Error::InvalidAlgebra(
                    "facet with more than 20 vertices".into(),
                ));
            }
            for mask in 1u32..(1 << f.len()) {
                let face: Vec<usize> = (0..f.len())
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| f[b])
                    .collect();
                all.insert(face);
            }
        }
        if all.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let top = all.iter().map(Vec::len).max().unwrap_or(1);
        let mut faces = vec![Vec::new(); top];
        for f in all {
            faces[f.len() - 1].push(f);
        }
        Ok(SimplicialComplex { vertices, faces })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.faces.len() - 1
    }

    /// The `d`-simplices.
    pub fn faces(&self, d: usize) -> &[Vec<usize>] {
        self.faces.get(d).map_or(&[], Vec::as_slice)
    }

    /// The `d`-simplices contained in each facet-closed family, as facets of
    /// the complex (maximal faces).
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (d, layer) in self.faces.iter().enumerate() {
            for f in layer {
                let covered = self
                    .faces
                    .get(d + 1)
                    .is_some_and(|up| up.iter().any(|g| f.iter().all(|v| g.contains(v))));
                if !covered {
                    out.push(f.clone());
                }
            }
        }
        out
    }
}

fn is_face(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

/// Incidence algebra of the face poset. Level `r` (0-based) holds the
/// `r`-simplices; the block `(s, r)` has one basis vector per pair
/// `sigma < tau` with `dim sigma = r`, `dim tau = s`, ordered by `(tau, sigma)`.
pub fn incidence_algebra(s: &SimplicialComplex) -> Result<TriangularAlgebra> {
    let n = s.faces.len();
    let pairs = |j: usize, i: usize| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, tau) in s.faces[j].iter().enumerate() {
            for (g, sigma) in s.faces[i].iter().enumerate() {
                if is_face(sigma, tau) {
                    out.push((t, g));
                }
            }
        }
        out
    };
    let blocks: HashMap<(usize, usize), Vec<(usize, usize)>> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (j, i)))
        .map(|(j, i)| ((j, i), pairs(j, i)))
        .collect();
    let position = |j: usize, i: usize| -> HashMap<(usize, usize), usize> {
        blocks[&(j, i)]
            .iter()
            .enumerate()
            .map(|(k, p)| (*p, k))
            .collect()
    };

    let diag: Vec<FiniteDimAlgebra> = (0..n)
        .map(|r| FiniteDimAlgebra::diagonal(s.faces[r].len()))
        .collect();
    let mut mods = Vec::new();
    for j in 0..n {
        for i in 0..j {
            let b = &blocks[&(j, i)];
            let d = b.len();
            let lentries = b.iter().enumerate().map(|(k, (t, _))| (*t, k, k, QQ.one()));
            let rentries = b.iter().enumerate().map(|(k, (_, g))| (k, *g, k, QQ.one()));
            let lact = Bilinear::from_entries(&QQ, diag[j].dim(), d, d, lentries)?;
            let ract = Bilinear::from_entries(&QQ, d, diag[i].dim(), d, rentries)?;
            mods.push(((j, i), Bimodule::new(lact, ract)?));
        }
    }
    let mut mus = Vec::new();
    for l in 0..n {
        for j in 0..l {
            for i in 0..j {
                let out = position(l, i);
                let (upper, lower) = (&blocks[&(l, j)], &blocks[&(j, i)]);
                let mut entries = Vec::new();
                for (a, (u, m)) in upper.iter().enumerate() {
                    for (b, (m2, g)) in lower.iter().enumerate() {
                        if m == m2 {
                            entries.push((a, b, out[&(*u, *g)], QQ.one()));
                        }
                    }
                }
                let mu = Bilinear::from_entries(&QQ, upper.len(), lower.len(), out.len(), entries)?;
                mus.push(((l, j, i), mu));
            }
        }
    }
    TriangularAlgebra::validated(diag, mods, mus)
}

/// Dimensions of `H^0 .. H^max_degree` of the ordered simplicial cochain complex.
pub fn simplicial_cohomology<F: Field>(
    field: &F,
    s: &SimplicialComplex,
    max_degree: usize,
) -> Vec<usize> {
    // coboundary[d] : C^d -> C^{d+1}
    let coboundary = |d: usize| -> Matrix<F::Elem> {
        let (lower, upper) = (s.faces(d), s.faces(d + 1));
        let index: HashMap<&Vec<usize>, usize> =
            lower.iter().enumerate().map(|(k, f)| (f, k)).collect();
        let mut triplets = Vec::new();
        for (row, f) in upper.iter().enumerate() {
            for omit in 0..f.len() {
                let mut face = f.clone();
                face.remove(omit);
                let sign = if omit % 2 == 0 {
                    field.one()
                } else {
                    field.neg(&field.one())
                };
                triplets.push((row, index[&face], sign));
            }
        }
        Matrix::from_triplets(field, upper.len(), lower.len(), triplets).expect("in range")
    };
    let ranks: Vec<usize> = (0..=max_degree)
        .map(|d| rank(field, &coboundary(d)))
        .collect();
    (0..=max_degree)
        .map(|d| {
            let below = if d == 0 { 0 } else { ranks[d - 1] };
            s.faces(d).len() - ranks[d] - below
        })
        .collect()
}
