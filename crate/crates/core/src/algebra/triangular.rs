use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::SparseVec;

use super::bilinear::{basis_vec, Bilinear, QQ};
use super::bimodule::{check_bilinearity, tensor_over, Bimodule};
use super::fdalg::{FiniteDimAlgebra, Violation};

/// The corner `e_target T e_source` of a triangular algebra. Levels are
/// 0-based; `target == source` is a diagonal algebra, `target > source` a
/// bimodule block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub target: usize,
    pub source: usize,
}

impl Block {
    pub fn new(target: usize, source: usize) -> Self {
        Block { target, source }
    }

    pub fn is_jump(&self) -> bool {
        self.target > self.source
    }

    /// Position in the total basis ordering `(0,0), (1,0), (1,1), (2,0), ...`.
    pub fn id(&self) -> usize {
        self.target * (self.target + 1) / 2 + self.source
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_jump() {
            write!(f, "M{}{}", self.target + 1, self.source + 1)
        } else {
            write!(f, "A{}", self.source + 1)
        }
    }
}

/// Where a block's basis lives inside the total basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockRange {
    pub block: Block,
    pub offset: usize,
    pub dim: usize,
}

/// `n` algebras on the diagonal, bimodules `_jM_i` below it and the maps
/// `mu_{l,j,i} : _lM_j (x) _jM_i -> _lM_i`, together with the assembled
/// total algebra.
#[derive(Clone, Debug)]
pub struct TriangularAlgebra {
    diag: Vec<FiniteDimAlgebra>,
    mods: BTreeMap<(usize, usize), Bimodule>,
    mus: BTreeMap<(usize, usize, usize), Bilinear<BigRational>>,
    total: FiniteDimAlgebra,
    ranges: Vec<BlockRange>,
    block_of: Vec<usize>,
}

impl PartialEq for TriangularAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.diag == other.diag && self.mods == other.mods && self.mus == other.mus
    }
}

fn mod_name(j: usize, i: usize) -> String {
    Block::new(j, i).to_string()
}

impl TriangularAlgebra {
    /// Assembles the total algebra after checking that all shapes fit.
    /// Missing bimodules are zero-dimensional and missing maps are zero.
    /// Axioms are not checked here; see [`validate_triangular`].
    pub fn new(
        diag: Vec<FiniteDimAlgebra>,
        mods: impl IntoIterator<Item = ((usize, usize), Bimodule)>,
        mus: impl IntoIterator<Item = ((usize, usize, usize), Bilinear<BigRational>)>,
    ) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra(
                "a triangular algebra needs at least one level".into(),
            ));
        }
        let mut mod_map = BTreeMap::new();
        for ((j, i), m) in mods {
            if !(i < j && j < n) {
                return Err(Error::InvalidAlgebra(format!(
                    "bimodule block ({}, {}) is not strictly below the diagonal of a {n}-level algebra",
                    j + 1,
                    i + 1
                )));
            }
            if m.left_dim() != diag[j].dim() || m.right_dim() != diag[i].dim() {
                return Err(Error::ActionMismatch(format!(
                    "{} is acted on by algebras of dims {} and {}, but A{} and A{} have dims {} and {}",
                    mod_name(j, i),
                    m.left_dim(),
                    m.right_dim(),
                    j + 1,
                    i + 1,
                    diag[j].dim(),
                    diag[i].dim()
                )));
            }
            if mod_map.insert((j, i), m).is_some() {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate bimodule {}",
                    mod_name(j, i)
                )));
            }
        }
        for j in 0..n {
            for i in 0..j {
                mod_map
                    .entry((j, i))
                    .or_insert_with(|| Bimodule::zero(diag[j].dim(), diag[i].dim()));
            }
        }
        let mut mu_map = BTreeMap::new();
        for ((l, j, i), mu) in mus {
            if !(i < j && j < l && l < n) {
                return Err(Error::InvalidAlgebra(format!(
                    "mu ({}, {}, {}) needs levels l > j > i",
                    l + 1,
                    j + 1,
                    i + 1
                )));
            }
            let (a, b, c) = (
                mod_map[&(l, j)].dim(),
                mod_map[&(j, i)].dim(),
                mod_map[&(l, i)].dim(),
            );
            if (mu.left_dim(), mu.right_dim(), mu.out_dim()) != (a, b, c) {
                return Err(Error::ActionMismatch(format!(
                    "mu ({}, {}, {}) has shape {} x {} -> {}, expected {a} x {b} -> {c}",
                    l + 1,
                    j + 1,
                    i + 1,
                    mu.left_dim(),
                    mu.right_dim(),
                    mu.out_dim()
                )));
            }
            if mu_map.insert((l, j, i), mu).is_some() {
                return Err(Error::InvalidAlgebra(format!(
                    "duplicate mu ({}, {}, {})",
                    l + 1,
                    j + 1,
                    i + 1
                )));
            }
        }
        for l in 0..n {
            for j in 0..l {
                for i in 0..j {
                    mu_map.entry((l, j, i)).or_insert_with(|| {
                        Bilinear::zero(
                            mod_map[&(l, j)].dim(),
                            mod_map[&(j, i)].dim(),
                            mod_map[&(l, i)].dim(),
                        )
                    });
                }
            }
        }

        let mut ranges = Vec::new();
        let mut block_of = Vec::new();
        let mut offset = 0;
        for j in 0..n {
            for i in 0..=j {
                let dim = if i == j {
                    diag[i].dim()
                } else {
                    mod_map[&(j, i)].dim()
                };
                let block = Block::new(j, i);
                block_of.extend(std::iter::repeat_n(block.id(), dim));
                ranges.push(BlockRange { block, offset, dim });
                offset += dim;
            }
        }
        let mut t = TriangularAlgebra {
            diag,
            mods: mod_map,
            mus: mu_map,
            total: FiniteDimAlgebra::ground(),
            ranges,
            block_of,
        };
        t.total = t.assemble()?;
        Ok(t)
    }

    /// Like [`TriangularAlgebra::new`], but also rejects data that fails
    /// any axiom.
    pub fn validated(
        diag: Vec<FiniteDimAlgebra>,
        mods: impl IntoIterator<Item = ((usize, usize), Bimodule)>,
        mus: impl IntoIterator<Item = ((usize, usize, usize), Bilinear<BigRational>)>,
    ) -> Result<Self> {
        let t = Self::new(diag, mods, mus)?;
        validate_triangular(&t).into_result()?;
        Ok(t)
    }

    fn assemble(&self) -> Result<FiniteDimAlgebra> {
        let d = self.block_of.len();
        let mut table: Vec<SparseVec<BigRational>> = vec![Vec::new(); d * d];
        let n = self.n();
        for l in 0..n {
            for j in 0..=l {
                for i in 0..=j {
                    let (left, right, out) = (self.range(l, j), self.range(j, i), self.range(l, i));
                    for y in 0..left.dim {
                        for x in 0..right.dim {
                            let local = match (l == j, j == i) {
                                (true, true) => self.diag[i].mul_table().get(y, x),
                                (false, true) => self.mods[&(l, j)].ract().get(y, x),
                                (true, false) => self.mods[&(j, i)].lact().get(y, x),
                                (false, false) => self.mus[&(l, j, i)].get(y, x),
                            };
                            table[(left.offset + y) * d + right.offset + x] = local
                                .iter()
                                .map(|(c, v)| (out.offset + c, v.clone()))
                                .collect();
                        }
                    }
                }
            }
        }
        let unit = (0..n)
            .flat_map(|i| self.embed(Block::new(i, i), self.diag[i].unit()))
            .collect();
        FiniteDimAlgebra::new(Bilinear::from_table(d, d, d, table), unit)
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self, i: usize) -> &FiniteDimAlgebra {
        &self.diag[i]
    }

    pub fn diagonal_algebras(&self) -> &[FiniteDimAlgebra] {
        &self.diag
    }

    /// The bimodule `_jM_i`, `j > i`.
    pub fn module(&self, j: usize, i: usize) -> &Bimodule {
        &self.mods[&(j, i)]
    }

    pub fn modules(&self) -> impl Iterator<Item = ((usize, usize), &Bimodule)> {
        self.mods.iter().map(|(k, v)| (*k, v))
    }

    pub fn mu(&self, l: usize, j: usize, i: usize) -> &Bilinear<BigRational> {
        &self.mus[&(l, j, i)]
    }

    pub fn mus(&self) -> impl Iterator<Item = ((usize, usize, usize), &Bilinear<BigRational>)> {
        self.mus.iter().map(|(k, v)| (*k, v))
    }

    /// The total algebra `T`, basis ordered block by block.
    pub fn total(&self) -> &FiniteDimAlgebra {
        &self.total
    }

    pub fn dim(&self) -> usize {
        self.block_of.len()
    }

    pub fn ranges(&self) -> &[BlockRange] {
        &self.ranges
    }

    /// Basis range of the block `e_target T e_source`, `target >= source`.
    pub fn range(&self, target: usize, source: usize) -> BlockRange {
        self.ranges[Block::new(target, source).id()]
    }

    pub fn block_dim(&self, target: usize, source: usize) -> usize {
        self.range(target, source).dim
    }

    pub fn block_of(&self, basis: usize) -> Block {
        self.ranges[self.block_of[basis]].block
    }

    /// Total-basis vector of a block-local vector.
    pub fn embed(&self, block: Block, v: &SparseVec<BigRational>) -> SparseVec<BigRational> {
        let off = self.ranges[block.id()].offset;
        v.iter().map(|(c, x)| (off + c, x.clone())).collect()
    }

    /// The level idempotent `e_i`, the unit of `A_i` seen in `T`.
    pub fn idempotent(&self, i: usize) -> SparseVec<BigRational> {
        self.embed(Block::new(i, i), self.diag[i].unit())
    }

    /// Bimodule blocks of dimension zero, as 0-based `(j, i)`.
    pub fn zero_blocks(&self) -> Vec<(usize, usize)> {
        self.mods
            .iter()
            .filter(|(_, m)| m.dim() == 0)
            .map(|(k, _)| *k)
            .collect()
    }
}

/// Everything that failed in [`validate_triangular`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Zero-dimensional bimodule blocks (0-based `(j, i)`); allowed, but noted.
    pub zero_blocks: Vec<(usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.violations.is_empty() {
            return Ok(());
        }
        let shown: Vec<String> = self
            .violations
            .iter()
            .take(5)
            .map(|v| v.to_string())
            .collect();
        let more = self.violations.len().saturating_sub(5);
        let mut msg = shown.join("; ");
        if more > 0 {
            msg.push_str(&format!("; and {more} more"));
        }
        Err(Error::InvalidAlgebra(msg))
    }
}

/// Checks every axiom: each `A_i`, each bimodule, bilinearity of each
/// `mu`, the associativity square for each `mu` pair, and independently the
/// associativity of the assembled total algebra.
pub fn validate_triangular(t: &TriangularAlgebra) -> ValidationReport {
    let n = t.n();
    let mut violations = Vec::new();
    for (i, a) in t.diag.iter().enumerate() {
        violations.extend(a.check(&format!("A{}", i + 1)));
    }
    for (&(j, i), m) in &t.mods {
        violations.extend(m.check(&mod_name(j, i), &t.diag[j], &t.diag[i]));
    }
    for (&(l, j, i), mu) in &t.mus {
        violations.extend(check_bilinearity(
            &format!("mu({},{},{})", l + 1, j + 1, i + 1),
            mu,
            &t.mods[&(l, j)],
            &t.mods[&(j, i)],
            &t.mods[&(l, i)],
        ));
    }
    for m in 0..n {
        for l in 0..m {
            for j in 0..l {
                for i in 0..j {
                    violations.extend(check_square(t, m, l, j, i));
                }
            }
        }
    }
    violations.extend(t.total.check("T"));
    ValidationReport {
        violations,
        zero_blocks: t.zero_blocks(),
    }
}

/// `mu_{m,l,i} (1 (x) mu_{l,j,i}) = mu_{m,j,i} (mu_{m,l,j} (x) 1)`.
fn check_square(t: &TriangularAlgebra, m: usize, l: usize, j: usize, i: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    let (mml, mlj, mji) = (
        t.mods[&(m, l)].dim(),
        t.mods[&(l, j)].dim(),
        t.mods[&(j, i)].dim(),
    );
    let (mu_mli, mu_lji, mu_mji, mu_mlj) = (
        &t.mus[&(m, l, i)],
        &t.mus[&(l, j, i)],
        &t.mus[&(m, j, i)],
        &t.mus[&(m, l, j)],
    );
    for z in 0..mml {
        for y in 0..mlj {
            for x in 0..mji {
                let lhs = mu_mli.apply_left_basis(&QQ, z, mu_lji.get(y, x));
                let rhs = mu_mji.apply_right_basis(&QQ, mu_mlj.get(z, y), x);
                if lhs != rhs {
                    out.push(Violation {
                        axiom: "mu associativity",
                        location: format!(
                            "levels ({}, {}, {}, {}) basis ({z}, {y}, {x})",
                            m + 1,
                            l + 1,
                            j + 1,
                            i + 1
                        ),
                    });
                }
            }
        }
    }
    out
}

/// The tensorial triangular algebra with the given diagonal and adjacent
/// bimodules `adjacent[i] = _{i+1}M_i`; the other blocks are iterated
/// tensor products over the intermediate algebras and every `mu` is the
/// canonical surjection.
pub fn build_tensorial(
    diag: Vec<FiniteDimAlgebra>,
    adjacent: Vec<Bimodule>,
) -> Result<TriangularAlgebra> {
    let n = diag.len();
    if adjacent.len() + 1 != n.max(1) {
        return Err(Error::InvalidAlgebra(format!(
            "{n} diagonal algebras need {} adjacent bimodules, got {}",
            n.saturating_sub(1),
            adjacent.len()
        )));
    }
    let mut mods: BTreeMap<(usize, usize), Bimodule> = BTreeMap::new();
    for (i, m) in adjacent.into_iter().enumerate() {
        mods.insert((i + 1, i), m);
    }
    // tensors[(l, i)] presents _lM_i = _lM_{l-1} (x)_{A_{l-1}} _{l-1}M_i.
    let mut tensors = BTreeMap::new();
    for gap in 2..n {
        for i in 0..n - gap {
            let l = i + gap;
            let t = tensor_over(&diag[l - 1], &mods[&(l, l - 1)], &mods[&(l - 1, i)])?;
            mods.insert((l, i), t.module.clone());
            tensors.insert((l, i), t);
        }
    }
    let mut mus: BTreeMap<(usize, usize, usize), Bilinear<BigRational>> = BTreeMap::new();
    for l in 2..n {
        for j in (1..l).rev() {
            for i in 0..j {
                let target = &tensors[&(l, i)];
                let (dy, dx, dout) = (
                    mods[&(l, j)].dim(),
                    mods[&(j, i)].dim(),
                    mods[&(l, i)].dim(),
                );
                let right = mods[&(l - 1, i)].dim();
                let mut table = Vec::with_capacity(dy * dx);
                for y in 0..dy {
                    for x in 0..dx {
                        let value = if j == l - 1 {
                            target.projection.column(y * dx + x).clone()
                        } else {
                            // y is the class of a pure tensor m (x) y' with
                            // m in _lM_{l-1} and y' in _{l-1}M_j.
                            let lift = tensors[&(l, j)].lifts[y];
                            let inner_dim = mods[&(l - 1, j)].dim();
                            let (m, y2) = (lift / inner_dim, lift % inner_dim);
                            let inner = mus[&(l - 1, j, i)].get(y2, x);
                            target.project_pair(right, &basis_vec(m), inner)
                        };
                        table.push(value);
                    }
                }
                mus.insert((l, j, i), Bilinear::from_table(dy, dx, dout, table));
            }
        }
    }
    TriangularAlgebra::validated(diag, mods, mus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::qi;

    fn k() -> FiniteDimAlgebra {
        FiniteDimAlgebra::ground()
    }

    fn k_bimodule(dim: usize, left: &FiniteDimAlgebra, right: &FiniteDimAlgebra) -> Bimodule {
        assert_eq!((left.dim(), right.dim()), (1, 1));
        let v =
            Bilinear::from_entries(&QQ, 1, dim, dim, (0..dim).map(|i| (0, i, i, qi(1)))).unwrap();
        let w =
            Bilinear::from_entries(&QQ, dim, 1, dim, (0..dim).map(|i| (i, 0, i, qi(1)))).unwrap();
        Bimodule::new(v, w).unwrap()
    }

    #[test]
    fn single_level_is_its_algebra() {
        let t = TriangularAlgebra::validated(vec![k()], [], []).unwrap();
        assert_eq!(t.dim(), 1);
        assert_eq!(t.total(), &k());
    }

    #[test]
    fn two_by_two_ground_case() {
        let t =
            TriangularAlgebra::validated(vec![k(), k()], [((1, 0), k_bimodule(1, &k(), &k()))], [])
                .unwrap();
        assert_eq!(t.dim(), 3);
        // Basis order: A1, M21, A2.
        let m = basis_vec(1);
        assert!(t.total().multiply(&m, &m).is_empty());
        assert_eq!(t.total().multiply(&basis_vec(2), &m), m);
        assert_eq!(t.total().multiply(&m, &basis_vec(0)), m);
    }

    #[test]
    fn tensorial_over_ground_field_is_one_dimensional_everywhere() {
        let n = 4;
        let adjacent = (0..n - 1).map(|_| k_bimodule(1, &k(), &k())).collect();
        let t = build_tensorial(vec![k(); n], adjacent).unwrap();
        for j in 0..n {
            for i in 0..j {
                assert_eq!(t.module(j, i).dim(), 1);
            }
        }
        assert_eq!(t.dim(), 10);
    }

    fn diagonal_tensorial() -> TriangularAlgebra {
        let k2 = FiniteDimAlgebra::diagonal(2);
        // _2M_1 = k^2 with k^2 acting on the left, k on the right; _3M_2 dually.
        let m21 = Bimodule::outer(k2.mul_table(), k().mul_table()).unwrap();
        let m32 = Bimodule::outer(k().mul_table(), k2.mul_table()).unwrap();
        build_tensorial(vec![k(), k2, k()], vec![m21, m32]).unwrap()
    }

    #[test]
    fn tensor_over_diagonal_middle() {
        let t = diagonal_tensorial();
        assert_eq!(t.module(2, 0).dim(), 2);
        assert!(validate_triangular(&t).is_valid());
    }

    #[test]
    fn perturbed_mu_is_reported() {
        let t = diagonal_tensorial();
        let mut mu = t.mu(2, 1, 0).clone();
        // y_0 (x) x_1 must vanish because e_0 e_1 = 0 in the middle algebra.
        let mut entries: Vec<_> = mu
            .entries()
            .map(|(a, b, c, v)| (a, b, c, v.clone()))
            .collect();
        entries.push((0, 1, 0, qi(1)));
        mu = Bilinear::from_entries(&QQ, mu.left_dim(), mu.right_dim(), mu.out_dim(), entries)
            .unwrap();
        let bad = TriangularAlgebra::new(
            t.diagonal_algebras().to_vec(),
            t.modules().map(|(key, m)| (key, m.clone())),
            [((2, 1, 0), mu)],
        )
        .unwrap();
        let report = validate_triangular(&bad);
        assert!(report.violations.iter().any(|v| v.axiom == "balance of mu"));
        assert!(TriangularAlgebra::validated(
            bad.diagonal_algebras().to_vec(),
            bad.modules().map(|(key, m)| (key, m.clone())),
            bad.mus().map(|(key, m)| (key, m.clone())),
        )
        .is_err());
    }

    #[test]
    fn shape_errors() {
        let k2 = FiniteDimAlgebra::diagonal(2);
        assert!(TriangularAlgebra::new(vec![], [], []).is_err());
        assert!(
            TriangularAlgebra::new(vec![k(), k()], [((0, 1), Bimodule::zero(1, 1))], []).is_err()
        );
        assert!(
            TriangularAlgebra::new(vec![k(), k()], [((1, 0), Bimodule::regular(&k2))], []).is_err()
        );
    }

    #[test]
    fn zero_blocks_are_flagged() {
        let t = TriangularAlgebra::validated(vec![k(), k()], [], []).unwrap();
        assert_eq!(validate_triangular(&t).zero_blocks, vec![(1, 0)]);
    }
}
