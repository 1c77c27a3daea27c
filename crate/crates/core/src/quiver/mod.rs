//! Quivers, level structures and path algebras; simplicial complexes and
//! their incidence algebras.

mod simplicial;

use std::collections::{BTreeMap, HashMap};

use petgraph::algo::{is_cyclic_directed, toposort};
use petgraph::graph::{DiGraph, NodeIndex};

use crate::algebra::QQ;
use crate::algebra::{Bilinear, Bimodule, FiniteDimAlgebra, TriangularAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;

pub use simplicial::{incidence_algebra, simplicial_cohomology, SimplicialComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertices and arrows are referred to by position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: &str) -> Result<usize> {
        if self.vertex_index(label).is_some() || self.arrows.iter().any(|a| a.label == label) {
            return Err(Error::InvalidAlgebra(format!("duplicate label {label}")));
        }
        self.vertices.push(label.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, label: &str, source: &str, target: &str) -> Result<usize> {
        if self.vertex_index(label).is_some() || self.arrows.iter().any(|a| a.label == label) {
            return Err(Error::InvalidAlgebra(format!("duplicate label {label}")));
        }
        let s = self
            .vertex_index(source)
            .ok_or_else(|| Error::InvalidAlgebra(format!("unknown vertex {source}")))?;
        let t = self
            .vertex_index(target)
            .ok_or_else(|| Error::InvalidAlgebra(format!("unknown vertex {target}")))?;
        self.arrows.push(Arrow {
            label: label.to_string(),
            source: s,
            target: t,
        });
        Ok(self.arrows.len() - 1)
    }

    /// Builds a quiver from labels; arrows are `(label, source, target)`.
    pub fn from_labels(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let mut q = Quiver::new();
        for v in vertices {
            q.add_vertex(v)?;
        }
        for (a, s, t) in arrows {
            q.add_arrow(a, s, t)?;
        }
        Ok(q)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    fn graph(&self) -> DiGraph<(), ()> {
        let mut g = DiGraph::new();
        let nodes: Vec<NodeIndex> = self.vertices.iter().map(|_| g.add_node(())).collect();
        for a in &self.arrows {
            g.add_edge(nodes[a.source], nodes[a.target], ());
        }
        g
    }
}

/// `true` iff the quiver has no oriented cycle (loops count as cycles).
pub fn check_acyclic(q: &Quiver) -> bool {
    !is_cyclic_directed(&q.graph())
}

/// Levels of a quiver's vertices, 0-based, strictly increasing along arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelAssignment {
    level: Vec<usize>,
    n: usize,
}

impl LevelAssignment {
    /// Checks strict increase along every arrow and that every level in
    /// `0..n` is used.
    pub fn new(q: &Quiver, level: Vec<usize>) -> Result<Self> {
        if level.len() != q.vertices.len() {
            return Err(Error::InvalidLevels(format!(
                "{} levels for {} vertices",
                level.len(),
                q.vertices.len()
            )));
        }
        for a in &q.arrows {
            if level[a.source] >= level[a.target] {
                return Err(Error::InvalidLevels(format!(
                    "arrow {} does not increase the level ({} -> {})",
                    a.label,
                    level[a.source] + 1,
                    level[a.target] + 1
                )));
            }
        }
        let n = level.iter().max().map_or(0, |m| m + 1);
        if let Some(missing) = (0..n).find(|r| !level.contains(r)) {
            return Err(Error::InvalidLevels(format!(
                "level {} has no vertex",
                missing + 1
            )));
        }
        Ok(LevelAssignment { level, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based level of vertex `v`.
    pub fn level(&self, v: usize) -> usize {
        self.level[v]
    }

    pub fn levels(&self) -> &[usize] {
        &self.level
    }
}

/// Longest-path layering: a vertex's level is the length of the longest
/// directed path ending at it.
pub fn compute_levels(q: &Quiver) -> Result<LevelAssignment> {
    let g = q.graph();
    let order = toposort(&g, None).map_err(|_| Error::CyclicQuiver)?;
    let mut level = vec![0usize; q.vertices.len()];
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); q.vertices.len()];
    for a in &q.arrows {
        outgoing[a.source].push(a.target);
    }
    for node in order {
        let v = node.index();
        for &w in &outgoing[v] {
            level[w] = level[w].max(level[v] + 1);
        }
    }
    LevelAssignment::new(q, level)
}

/// A directed path; `arrows` are listed in the order they are traversed.
/// Paths of length zero are the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` after `first`, when the endpoints match.
    pub fn after(&self, first: &Path) -> Option<Path> {
        (first.target == self.source).then(|| Path {
            source: first.source,
            target: self.target,
            arrows: first.arrows.iter().chain(&self.arrows).copied().collect(),
        })
    }
}

/// All paths, by source vertex and then depth first along arrow order.
pub fn enumerate_paths(q: &Quiver) -> Result<Vec<Path>> {
    if !check_acyclic(q) {
        return Err(Error::CyclicQuiver);
    }
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); q.vertices.len()];
    for (i, a) in q.arrows.iter().enumerate() {
        outgoing[a.source].push(i);
    }
    let mut out = Vec::new();
    for v in 0..q.vertices.len() {
        let mut stack = vec![Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }];
        while let Some(p) = stack.pop() {
            for &a in outgoing[p.target].iter().rev() {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                stack.push(Path {
                    source: v,
                    target: q.arrows[a].target,
                    arrows,
                });
            }
            out.push(p);
        }
    }
    Ok(out)
}

/// Paths grouped by 0-based `(target level, source level)`.
pub fn paths_by_levels(
    q: &Quiver,
    levels: &LevelAssignment,
) -> Result<BTreeMap<(usize, usize), Vec<Path>>> {
    let mut out: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
    for p in enumerate_paths(q)? {
        out.entry((levels.level(p.target), levels.level(p.source)))
            .or_default()
            .push(p);
    }
    Ok(out)
}

/// The path algebra as a triangular algebra over the given levels; the
/// product `q * p` is `q` after `p`.
pub fn path_algebra(q: &Quiver, levels: &LevelAssignment) -> Result<TriangularAlgebra> {
    LevelAssignment::new(q, levels.levels().to_vec())?;
    let n = levels.n();
    if n == 0 {
        return Err(Error::InvalidAlgebra("quiver has no vertices".into()));
    }
    let groups = paths_by_levels(q, levels)?;
    let block = |j: usize, i: usize| -> &[Path] { groups.get(&(j, i)).map_or(&[], Vec::as_slice) };
    let index_of = |j: usize, i: usize| -> HashMap<&Path, usize> {
        block(j, i)
            .iter()
            .enumerate()
            .map(|(k, p)| (p, k))
            .collect()
    };
    // Products of two basis paths inside one table, as `(a, b, c, 1)` entries.
    let table = |left: &[Path], right: &[Path], out: &HashMap<&Path, usize>| {
        let mut entries = Vec::new();
        for (a, y) in left.iter().enumerate() {
            for (b, x) in right.iter().enumerate() {
                if let Some(c) = y.after(x).and_then(|p| out.get(&p).copied()) {
                    entries.push((a, b, c, QQ.one()));
                }
            }
        }
        entries
    };

    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        let verts = block(i, i);
        let entries = table(verts, verts, &index_of(i, i));
        let unit = (0..verts.len()).map(|k| (k, QQ.one())).collect();
        diag.push(FiniteDimAlgebra::from_entries(verts.len(), unit, entries)?);
    }
    let mut mods = Vec::new();
    for j in 0..n {
        for i in 0..j {
            let paths = block(j, i);
            let d = paths.len();
            let idx = index_of(j, i);
            let lact =
                Bilinear::from_entries(&QQ, diag[j].dim(), d, d, table(block(j, j), paths, &idx))?;
            let ract =
                Bilinear::from_entries(&QQ, d, diag[i].dim(), d, table(paths, block(i, i), &idx))?;
            mods.push(((j, i), Bimodule::new(lact, ract)?));
        }
    }
    let mut mus = Vec::new();
    for l in 0..n {
        for j in 0..l {
            for i in 0..j {
                let (left, right) = (block(l, j), block(j, i));
                let entries = table(left, right, &index_of(l, i));
                let mu = Bilinear::from_entries(
                    &QQ,
                    left.len(),
                    right.len(),
                    block(l, i).len(),
                    entries,
                )?;
                mus.push(((l, j, i), mu));
            }
        }
    }
    TriangularAlgebra::validated(diag, mods, mus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_quiver() -> Quiver {
        Quiver::from_labels(
            &["a", "b", "c", "d"],
            &[
                ("x", "a", "b"),
                ("y1", "b", "c"),
                ("y2", "b", "c"),
                ("z1", "b", "d"),
                ("z2", "b", "d"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn acyclicity() {
        assert!(check_acyclic(
            &Quiver::from_labels(&["a", "b"], &[("x", "a", "b")]).unwrap()
        ));
        assert!(!check_acyclic(
            &Quiver::from_labels(&["a"], &[("x", "a", "a")]).unwrap()
        ));
        assert!(check_acyclic(&example_quiver()));
        let cyc = Quiver::from_labels(&["a", "b"], &[("x", "a", "b"), ("y", "b", "a")]).unwrap();
        assert_eq!(compute_levels(&cyc), Err(Error::CyclicQuiver));
        assert_eq!(enumerate_paths(&cyc), Err(Error::CyclicQuiver));
    }

    #[test]
    fn longest_path_levels() {
        let chain =
            Quiver::from_labels(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c")]).unwrap();
        assert_eq!(compute_levels(&chain).unwrap().levels(), &[0, 1, 2]);
        let vee =
            Quiver::from_labels(&["a", "b", "c"], &[("x", "a", "c"), ("y", "b", "c")]).unwrap();
        assert_eq!(compute_levels(&vee).unwrap().levels(), &[0, 0, 1]);
        let lv = compute_levels(&example_quiver()).unwrap();
        assert_eq!(lv.levels(), &[0, 1, 2, 2]);
        assert_eq!(lv.n(), 3);
    }

    #[test]
    fn level_assignment_rejects_bad_levels() {
        let q = Quiver::from_labels(&["a", "b"], &[("x", "a", "b")]).unwrap();
        assert!(LevelAssignment::new(&q, vec![1, 1]).is_err());
        assert!(LevelAssignment::new(&q, vec![0, 2]).is_err());
        assert!(LevelAssignment::new(&q, vec![0]).is_err());
    }

    #[test]
    fn path_counts() {
        let single = Quiver::from_labels(&["a"], &[]).unwrap();
        assert_eq!(enumerate_paths(&single).unwrap().len(), 1);
        let chain =
            Quiver::from_labels(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c")]).unwrap();
        assert_eq!(enumerate_paths(&chain).unwrap().len(), 6);
        assert_eq!(enumerate_paths(&example_quiver()).unwrap().len(), 13);
    }

    #[test]
    fn example_path_algebra_blocks() {
        let q = example_quiver();
        let t = path_algebra(&q, &compute_levels(&q).unwrap()).unwrap();
        let diag: Vec<usize> = (0..3).map(|i| t.diag(i).dim()).collect();
        assert_eq!(diag, vec![1, 1, 2]);
        assert_eq!(t.module(1, 0).dim(), 1);
        assert_eq!(t.module(2, 1).dim(), 4);
        assert_eq!(t.module(2, 0).dim(), 4);
        assert_eq!(t.dim(), 13);
    }

    #[test]
    fn small_path_algebras() {
        let q = Quiver::from_labels(&["a", "b"], &[("x", "a", "b")]).unwrap();
        let t = path_algebra(&q, &compute_levels(&q).unwrap()).unwrap();
        assert_eq!(
            (t.diag(0).dim(), t.module(1, 0).dim(), t.diag(1).dim()),
            (1, 1, 1)
        );
        let kr = Quiver::from_labels(&["a", "b"], &[("x", "a", "b"), ("y", "a", "b")]).unwrap();
        let t = path_algebra(&kr, &compute_levels(&kr).unwrap()).unwrap();
        assert_eq!(t.module(1, 0).dim(), 2);
    }
}
