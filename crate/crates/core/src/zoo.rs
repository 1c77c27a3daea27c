//! Reference instances: the quivers and triangular algebras used by the
//! tests, the acceptance suite and the benches, plus seeded random families.

use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{build_tensorial, Bilinear, Bimodule, FiniteDimAlgebra, TriangularAlgebra};
use crate::error::Result;
use crate::field::{qi, Rationals};
use crate::quiver::{compute_levels, enumerate_paths, path_algebra, Quiver};

/// `a -> b`, two arrows `b -> c`, two arrows `b -> d`.
pub fn two_level_fan() -> Quiver {
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
    .expect("fixed quiver")
}

pub fn kronecker() -> Quiver {
    Quiver::from_labels(&["a", "b"], &[("x", "a", "b"), ("y", "a", "b")]).expect("fixed quiver")
}

/// Linear chain `v1 -> v2 -> ... -> vn`.
pub fn chain(n: usize) -> Quiver {
    let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut q = Quiver::new();
    for l in &labels {
        q.add_vertex(l).expect("distinct labels");
    }
    for i in 1..n {
        q.add_arrow(&format!("x{i}"), &labels[i - 1], &labels[i])
            .expect("known vertices");
    }
    q
}

/// Path algebra with longest-path levels.
pub fn quiver_algebra(q: &Quiver) -> Result<TriangularAlgebra> {
    path_algebra(q, &compute_levels(q)?)
}

fn bil(l: usize, r: usize, o: usize, entries: &[(usize, usize, usize)]) -> Bilinear<BigRational> {
    Bilinear::from_entries(
        &Rationals,
        l,
        r,
        o,
        entries.iter().map(|&(a, b, c)| (a, b, c, qi(1))),
    )
    .expect("entries in range")
}

/// A left or right module over one of the small algebras below.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Small {
    K,
    K2,
    Dual,
}

impl Small {
    fn algebra(self) -> FiniteDimAlgebra {
        match self {
            Small::K => FiniteDimAlgebra::ground(),
            Small::K2 => FiniteDimAlgebra::diagonal(2),
            Small::Dual => FiniteDimAlgebra::dual_numbers(),
        }
    }

    /// Left modules as `A x V -> V` tables, smallest first.
    fn left_modules(self) -> Vec<Bilinear<BigRational>> {
        match self {
            Small::K => vec![
                bil(1, 1, 1, &[(0, 0, 0)]),
                bil(1, 2, 2, &[(0, 0, 0), (0, 1, 1)]),
            ],
            Small::K2 => vec![
                bil(2, 1, 1, &[(0, 0, 0)]),
                bil(2, 1, 1, &[(1, 0, 0)]),
                self.algebra().mul_table().clone(),
            ],
            Small::Dual => vec![
                bil(2, 1, 1, &[(0, 0, 0)]),
                self.algebra().mul_table().clone(),
            ],
        }
    }

    /// Right modules as `W x A -> W` tables, mirroring `left_modules`.
    fn right_modules(self) -> Vec<Bilinear<BigRational>> {
        match self {
            Small::K => vec![
                bil(1, 1, 1, &[(0, 0, 0)]),
                bil(2, 1, 2, &[(0, 0, 0), (1, 0, 1)]),
            ],
            Small::K2 => vec![
                bil(1, 2, 1, &[(0, 0, 0)]),
                bil(1, 2, 1, &[(0, 1, 0)]),
                self.algebra().mul_table().clone(),
            ],
            Small::Dual => vec![
                bil(1, 2, 1, &[(0, 0, 0)]),
                self.algebra().mul_table().clone(),
            ],
        }
    }
}

/// `k[x]/(x^2)` and `k` with `_2M_1 = k`, on which `x` acts by zero.
pub fn dual_by_ground() -> TriangularAlgebra {
    let m = Bimodule::outer(&Small::K.left_modules()[0], &Small::Dual.right_modules()[0])
        .expect("modules");
    TriangularAlgebra::validated(
        vec![FiniteDimAlgebra::dual_numbers(), FiniteDimAlgebra::ground()],
        [((1, 0), m)],
        [],
    )
    .expect("valid")
}

/// Upper triangular 2x2 matrices over `k[x]/(x^2)`.
pub fn dual_triangular_matrices() -> TriangularAlgebra {
    let a = FiniteDimAlgebra::dual_numbers();
    TriangularAlgebra::validated(
        vec![a.clone(), a.clone()],
        [((1, 0), Bimodule::regular(&a))],
        [],
    )
    .expect("valid")
}

/// Three levels of `k` with all blocks `k` and every product zero.
pub fn chain_with_shortcut() -> TriangularAlgebra {
    let k = FiniteDimAlgebra::ground();
    let m = || Bimodule::regular(&k);
    TriangularAlgebra::validated(
        vec![k.clone(), k.clone(), k.clone()],
        [((1, 0), m()), ((2, 1), m()), ((2, 0), m())],
        [],
    )
    .expect("valid")
}

/// `a -> b -> c` modulo the composite: `_3M_1 = 0`.
pub fn radical_square_zero_chain(n: usize) -> TriangularAlgebra {
    let k = FiniteDimAlgebra::ground();
    let mods: Vec<_> = (1..n)
        .map(|i| ((i, i - 1), Bimodule::regular(&k)))
        .collect();
    TriangularAlgebra::validated(vec![k; n], mods, []).expect("valid")
}

/// `A1 = k[x]/(x^2)`, `A2 = A3 = k`, adjacent blocks `k` with `x` acting by zero.
pub fn tensorial_dual_k_k() -> TriangularAlgebra {
    let m21 = Bimodule::outer(&Small::K.left_modules()[0], &Small::Dual.right_modules()[0])
        .expect("modules");
    let m32 = Bimodule::regular(&FiniteDimAlgebra::ground());
    build_tensorial(
        vec![
            FiniteDimAlgebra::dual_numbers(),
            FiniteDimAlgebra::ground(),
            FiniteDimAlgebra::ground(),
        ],
        vec![m21, m32],
    )
    .expect("tensorial")
}

/// Seeded random acyclic quiver with at most `max_vertices` vertices whose
/// path algebra has dimension at most `max_dim`.
pub fn random_acyclic_quiver(seed: u64, max_vertices: usize, max_dim: usize) -> Quiver {
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        let nv = rng.random_range(1..=max_vertices);
        let mut q = Quiver::new();
        for v in 0..nv {
            q.add_vertex(&format!("v{v}")).expect("distinct");
        }
        let mut k = 0;
        for s in 0..nv {
            for t in s + 1..nv {
                let arrows = match rng.random_range(0..10) {
                    0..=5 => 0,
                    6..=8 => 1,
                    _ => 2,
                };
                for _ in 0..arrows {
                    q.add_arrow(&format!("x{k}"), &format!("v{s}"), &format!("v{t}"))
                        .expect("known vertices");
                    k += 1;
                }
            }
        }
        if enumerate_paths(&q).expect("acyclic").len() <= max_dim {
            return q;
        }
    }
}

/// Seeded random tensorial algebra on 2 or 3 levels over `k`, `k^2` and
/// `k[x]/(x^2)`, with adjacent blocks `V (x)_k W` of small simple or
/// regular modules, of total dimension at most `max_dim`.
pub fn random_tensorial(seed: u64, levels: usize, max_dim: usize) -> TriangularAlgebra {
    random_tensorial_with(seed, levels, max_dim, None)
}

/// As [`random_tensorial`] on three levels, with the middle algebra `k`.
pub fn random_tensorial_middle_k(seed: u64, max_dim: usize) -> TriangularAlgebra {
    random_tensorial_with(seed, 3, max_dim, Some(Small::K))
}

fn random_tensorial_with(
    seed: u64,
    levels: usize,
    max_dim: usize,
    middle: Option<Small>,
) -> TriangularAlgebra {
    const KINDS: [Small; 3] = [Small::K, Small::K2, Small::Dual];
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        let mut kinds: Vec<Small> = (0..levels).map(|_| KINDS[rng.random_range(0..3)]).collect();
        if let (Some(m), 3) = (middle, levels) {
            kinds[1] = m;
        }
        let adjacent: Vec<Bimodule> = (1..levels)
            .map(|j| {
                let ls = kinds[j].left_modules();
                let rs = kinds[j - 1].right_modules();
                let v = &ls[rng.random_range(0..ls.len())];
                let w = &rs[rng.random_range(0..rs.len())];
                Bimodule::outer(v, w).expect("modules")
            })
            .collect();
        let diag = kinds.iter().map(|k| k.algebra()).collect();
        let Ok(t) = build_tensorial(diag, adjacent) else {
            continue;
        };
        if t.dim() <= max_dim {
            return t;
        }
    }
}

/// The randomized oracle suite: path algebras, tensorial builds and
/// hand-coded structure constants, every one of dimension at most 8.
pub fn oracle_suite() -> Vec<(String, TriangularAlgebra)> {
    let mut out: Vec<(String, TriangularAlgebra)> = vec![
        (
            "kronecker".into(),
            quiver_algebra(&kronecker()).expect("valid"),
        ),
        ("chain3".into(), quiver_algebra(&chain(3)).expect("valid")),
        ("dual-by-k".into(), dual_by_ground()),
        ("dual-upper-triangular".into(), dual_triangular_matrices()),
        ("chain-with-shortcut".into(), chain_with_shortcut()),
        ("rad2-chain3".into(), radical_square_zero_chain(3)),
        ("rad2-chain4".into(), radical_square_zero_chain(4)),
        ("tensorial-dual-k-k".into(), tensorial_dual_k_k()),
    ];
    for seed in 0..6 {
        let q = random_acyclic_quiver(seed, 5, 8);
        out.push((
            format!("quiver-{seed}"),
            quiver_algebra(&q).expect("acyclic"),
        ));
    }
    for seed in 0..4 {
        out.push((
            format!("tensorial2-{seed}"),
            random_tensorial(100 + seed, 2, 8),
        ));
    }
    for seed in 0..4 {
        out.push((
            format!("tensorial3-{seed}"),
            random_tensorial(200 + seed, 3, 8),
        ));
    }
    out
}

/// Tensorial three-level instances with middle algebra `k`.
pub fn degeneration_suite() -> Vec<(String, TriangularAlgebra)> {
    let mut out = vec![
        (
            "two-level-fan".into(),
            quiver_algebra(&two_level_fan()).expect("valid"),
        ),
        ("tensorial-dual-k-k".into(), tensorial_dual_k_k()),
    ];
    for seed in 0..4 {
        out.push((
            format!("middle-k-{seed}"),
            random_tensorial_middle_k(300 + seed, 10),
        ));
    }
    out
}

/// Tensorial three-level instances with arbitrary middle algebra.
pub fn lemma_suite() -> Vec<(String, TriangularAlgebra)> {
    let mut out = Vec::new();
    for seed in 0..5 {
        out.push((
            format!("tensorial3-{seed}"),
            random_tensorial(400 + seed, 3, 10),
        ));
    }
    let k2 = Small::K2;
    let adjacent = vec![
        Bimodule::outer(&k2.left_modules()[2], &Small::K.right_modules()[0]).expect("modules"),
        Bimodule::outer(&Small::K.left_modules()[0], &k2.right_modules()[2]).expect("modules"),
    ];
    let t = build_tensorial(
        vec![
            FiniteDimAlgebra::ground(),
            FiniteDimAlgebra::diagonal(2),
            FiniteDimAlgebra::ground(),
        ],
        adjacent,
    )
    .expect("tensorial");
    out.push(("middle-k2".into(), t));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_triangular;

    #[test]
    fn suites_are_valid_and_small() {
        let suite = oracle_suite();
        assert!(suite.len() >= 20);
        for (name, t) in &suite {
            assert!(t.dim() <= 8, "{name} has dim {}", t.dim());
            assert!(validate_triangular(t).is_valid(), "{name}");
        }
        for (name, t) in degeneration_suite().iter().chain(&lemma_suite()) {
            assert_eq!(t.n(), 3, "{name}");
            assert!(validate_triangular(t).is_valid(), "{name}");
        }
    }

    #[test]
    fn random_families_are_deterministic() {
        assert_eq!(random_tensorial(7, 3, 8), random_tensorial(7, 3, 8));
        let (a, b) = (
            random_acyclic_quiver(3, 5, 8),
            random_acyclic_quiver(3, 5, 8),
        );
        assert_eq!(a.arrows().len(), b.arrows().len());
    }

    #[test]
    fn fan_has_paper_blocks() {
        let t = quiver_algebra(&two_level_fan()).unwrap();
        assert_eq!(t.dim(), 13);
        assert_eq!(t.block_dim(2, 0), 4);
    }
}
