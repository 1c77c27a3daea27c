use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::SparseVec;

use super::bilinear::{basis_vec, Bilinear, QQ};
use super::bimodule::Bimodule;
use super::fdalg::Violation;
use super::triangular::TriangularAlgebra;

/// A coefficient bimodule over the total algebra `T`, with a basis adapted
/// to the level idempotents: every basis vector lies in one `_jX_i = e_j X e_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct TBimodule {
    module: Bimodule,
    /// `(j, i)` of each basis vector.
    block_of: Vec<(usize, usize)>,
    blocks: BTreeMap<(usize, usize), Vec<usize>>,
}

impl TBimodule {
    /// Fails when some basis vector is not homogeneous for the idempotents.
    pub fn new(t: &TriangularAlgebra, module: Bimodule) -> Result<Self> {
        if module.left_dim() != t.dim() || module.right_dim() != t.dim() {
            return Err(Error::ActionMismatch(format!(
                "coefficient bimodule is acted on by algebras of dims {} and {}, T has dim {}",
                module.left_dim(),
                module.right_dim(),
                t.dim()
            )));
        }
        let n = t.n();
        let idems: Vec<SparseVec<BigRational>> = (0..n).map(|i| t.idempotent(i)).collect();
        let mut block_of = Vec::with_capacity(module.dim());
        let mut blocks: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for x in 0..module.dim() {
            let xv = basis_vec(x);
            let mut found = None;
            for j in 0..n {
                let left = module.act_left(&idems[j], &xv);
                if left.is_empty() {
                    continue;
                }
                for i in 0..n {
                    if module.act_right(&left, &idems[i]) == xv {
                        found = Some((j, i));
                    }
                }
            }
            let Some(b) = found else {
                return Err(Error::InvalidAlgebra(format!(
                    "coefficient basis vector {x} does not lie in a single block e_j X e_i"
                )));
            };
            block_of.push(b);
            blocks.entry(b).or_default().push(x);
        }
        Ok(TBimodule {
            module,
            block_of,
            blocks,
        })
    }

    /// `T` over itself.
    pub fn regular(t: &TriangularAlgebra) -> Self {
        Self::new(t, Bimodule::regular(t.total())).expect("T is adapted to its own blocks")
    }

    /// The linear dual `D(T) = Hom_k(T, k)` with `(a f b)(x) = f(b x a)`, in
    /// the dual basis.
    pub fn dual(t: &TriangularAlgebra) -> Self {
        let d = t.dim();
        let mut lentries = Vec::new();
        let mut rentries = Vec::new();
        // b_x b_y = c b_z gives (b_y . f_z)(b_x) = c and (f_z . b_x)(b_y) = c.
        for (x, y, z, c) in t.total().mul_table().entries() {
            lentries.push((y, z, x, c.clone()));
            rentries.push((z, x, y, c.clone()));
        }
        let module = Bimodule::new(
            Bilinear::from_entries(&QQ, d, d, d, lentries).expect("in range"),
            Bilinear::from_entries(&QQ, d, d, d, rentries).expect("in range"),
        )
        .expect("dual shape");
        Self::new(t, module).expect("dual basis is adapted")
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn block_of(&self, x: usize) -> (usize, usize) {
        self.block_of[x]
    }

    /// Basis indices of `_jX_i`.
    pub fn block(&self, j: usize, i: usize) -> &[usize] {
        self.blocks.get(&(j, i)).map_or(&[], Vec::as_slice)
    }

    /// `_jX_i` as an `A_j`-`A_i` bimodule, in the order of [`Self::block`].
    pub fn block_bimodule(&self, t: &TriangularAlgebra, j: usize, i: usize) -> Result<Bimodule> {
        let basis = self.block(j, i);
        let local = |v: &SparseVec<BigRational>| -> Result<Vec<(usize, BigRational)>> {
            v.iter()
                .map(|(y, c)| match basis.iter().position(|b| b == y) {
                    Some(k) => Ok((k, c.clone())),
                    None => Err(Error::Invariant(format!(
                        "the action of A{} or A{} leaves the block ({}, {})",
                        j + 1,
                        i + 1,
                        j + 1,
                        i + 1
                    ))),
                })
                .collect()
        };
        let (aj, ai) = (t.range(j, j), t.range(i, i));
        let d = basis.len();
        let mut lentries = Vec::new();
        let mut rentries = Vec::new();
        for (s, &x) in basis.iter().enumerate() {
            for a in 0..aj.dim {
                for (k, c) in local(self.module.lact().get(aj.offset + a, x))? {
                    lentries.push((a, s, k, c));
                }
            }
            for a in 0..ai.dim {
                for (k, c) in local(self.module.ract().get(x, ai.offset + a))? {
                    rentries.push((s, a, k, c));
                }
            }
        }
        Bimodule::new(
            Bilinear::from_entries(&QQ, aj.dim, d, d, lentries)?,
            Bilinear::from_entries(&QQ, d, ai.dim, d, rentries)?,
        )
    }

    pub fn check(&self, t: &TriangularAlgebra) -> Vec<Violation> {
        self.module.check("X", t.total(), t.total())
    }
}
