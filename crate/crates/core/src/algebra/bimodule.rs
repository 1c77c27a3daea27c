use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{sparse, Matrix, SparseVec, Subspace};

use super::bilinear::{basis_vec, Bilinear, QQ};
use super::fdalg::{FiniteDimAlgebra, Violation};

/// A `B`-`A` bimodule: `lact` is `B x M -> M`, `ract` is `M x A -> M`.
///
/// The algebras themselves are not stored; only their dimensions are, and
/// axioms are checked against algebras supplied by the caller.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule {
    lact: Bilinear<BigRational>,
    ract: Bilinear<BigRational>,
}

impl Bimodule {
    pub fn new(lact: Bilinear<BigRational>, ract: Bilinear<BigRational>) -> Result<Self> {
        let dim = lact.out_dim();
        if lact.right_dim() != dim || ract.left_dim() != dim || ract.out_dim() != dim {
            return Err(Error::ActionMismatch(format!(
                "left action {} x {} -> {}, right action {} x {} -> {}",
                lact.left_dim(),
                lact.right_dim(),
                lact.out_dim(),
                ract.left_dim(),
                ract.right_dim(),
                ract.out_dim()
            )));
        }
        Ok(Bimodule { lact, ract })
    }

    pub fn zero(left_dim: usize, right_dim: usize) -> Self {
        Bimodule {
            lact: Bilinear::zero(left_dim, 0, 0),
            ract: Bilinear::zero(0, right_dim, 0),
        }
    }

    /// `A` as an `A`-`A` bimodule.
    pub fn regular(a: &FiniteDimAlgebra) -> Self {
        Bimodule {
            lact: a.mul_table().clone(),
            ract: a.mul_table().clone(),
        }
    }

    /// `V (x)_k W` for a left `B`-module `V` (given by `B x V -> V`) and a
    /// right `A`-module `W` (given by `W x A -> W`). Basis `v_s (x) w_t` sits
    /// at index `s * dim W + t`.
    pub fn outer(left: &Bilinear<BigRational>, right: &Bilinear<BigRational>) -> Result<Self> {
        let (dv, dw) = (left.out_dim(), right.out_dim());
        if left.right_dim() != dv || right.left_dim() != dw {
            return Err(Error::ActionMismatch("outer product of non-modules".into()));
        }
        let dim = dv * dw;
        let mut lentries = Vec::new();
        for (b, s, s2, c) in left.entries() {
            for t in 0..dw {
                lentries.push((b, s * dw + t, s2 * dw + t, c.clone()));
            }
        }
        let mut rentries = Vec::new();
        for (t, a, t2, c) in right.entries() {
            for s in 0..dv {
                rentries.push((s * dw + t, a, s * dw + t2, c.clone()));
            }
        }
        Bimodule::new(
            Bilinear::from_entries(&QQ, left.left_dim(), dim, dim, lentries)?,
            Bilinear::from_entries(&QQ, dim, right.right_dim(), dim, rentries)?,
        )
    }

    pub fn dim(&self) -> usize {
        self.lact.out_dim()
    }

    pub fn left_dim(&self) -> usize {
        self.lact.left_dim()
    }

    pub fn right_dim(&self) -> usize {
        self.ract.right_dim()
    }

    pub fn lact(&self) -> &Bilinear<BigRational> {
        &self.lact
    }

    pub fn ract(&self) -> &Bilinear<BigRational> {
        &self.ract
    }

    pub fn act_left(
        &self,
        b: &SparseVec<BigRational>,
        m: &SparseVec<BigRational>,
    ) -> SparseVec<BigRational> {
        self.lact.apply(&QQ, b, m)
    }

    pub fn act_right(
        &self,
        m: &SparseVec<BigRational>,
        a: &SparseVec<BigRational>,
    ) -> SparseVec<BigRational> {
        self.ract.apply(&QQ, m, a)
    }

    /// Exhaustive bimodule axioms against the given algebras.
    pub fn check(
        &self,
        name: &str,
        left: &FiniteDimAlgebra,
        right: &FiniteDimAlgebra,
    ) -> Vec<Violation> {
        let mut out = Vec::new();
        if left.dim() != self.left_dim() || right.dim() != self.right_dim() {
            out.push(Violation {
                axiom: "action shape",
                location: format!(
                    "{name}: acted on by algebras of dims {} and {}, expected {} and {}",
                    self.left_dim(),
                    self.right_dim(),
                    left.dim(),
                    right.dim()
                ),
            });
            return out;
        }
        let dm = self.dim();
        for m in 0..dm {
            let mv = basis_vec(m);
            if self.act_left(left.unit(), &mv) != mv {
                out.push(Violation {
                    axiom: "left unit",
                    location: format!("{name} basis {m}"),
                });
            }
            if self.act_right(&mv, right.unit()) != mv {
                out.push(Violation {
                    axiom: "right unit",
                    location: format!("{name} basis {m}"),
                });
            }
            for b in 0..left.dim() {
                let bm = self.lact.get(b, m);
                for b2 in 0..left.dim() {
                    let lhs = self.lact.apply_left_basis(&QQ, b2, bm);
                    let rhs = self.lact.apply(&QQ, left.mul_table().get(b2, b), &mv);
                    if lhs != rhs {
                        out.push(Violation {
                            axiom: "left action associativity",
                            location: format!("{name} (alg {b2}, alg {b}, module {m})"),
                        });
                    }
                }
                for a in 0..right.dim() {
                    let lhs = self.ract.apply_right_basis(&QQ, bm, a);
                    let rhs = self.lact.apply_left_basis(&QQ, b, self.ract.get(m, a));
                    if lhs != rhs {
                        out.push(Violation {
                            axiom: "actions commute",
                            location: format!("{name} (alg {b}, module {m}, alg {a})"),
                        });
                    }
                }
            }
            for a in 0..right.dim() {
                let ma = self.ract.get(m, a);
                for a2 in 0..right.dim() {
                    let lhs = self.ract.apply_right_basis(&QQ, ma, a2);
                    let rhs = self.ract.apply(&QQ, &mv, right.mul_table().get(a, a2));
                    if lhs != rhs {
                        out.push(Violation {
                            axiom: "right action associativity",
                            location: format!("{name} (module {m}, alg {a}, alg {a2})"),
                        });
                    }
                }
            }
        }
        out
    }
}

/// Checks that `mu : M (x) N -> P` is balanced over the middle algebra and
/// compatible with the outer actions. `M` is `C`-`B`, `N` is `B`-`A`, `P`
/// is `C`-`A`.
pub fn check_bilinearity(
    name: &str,
    mu: &Bilinear<BigRational>,
    m: &Bimodule,
    n: &Bimodule,
    p: &Bimodule,
) -> Vec<Violation> {
    let mut out = Vec::new();
    if mu.left_dim() != m.dim() || mu.right_dim() != n.dim() || mu.out_dim() != p.dim() {
        out.push(Violation {
            axiom: "map shape",
            location: format!(
                "{name}: {} x {} -> {}, expected {} x {} -> {}",
                mu.left_dim(),
                mu.right_dim(),
                mu.out_dim(),
                m.dim(),
                n.dim(),
                p.dim()
            ),
        });
        return out;
    }
    for y in 0..m.dim() {
        for x in 0..n.dim() {
            let yx = mu.get(y, x);
            for c in 0..m.left_dim() {
                let lhs = mu.apply(&QQ, m.lact.get(c, y), &basis_vec(x));
                let rhs = p.lact.apply_left_basis(&QQ, c, yx);
                if lhs != rhs {
                    out.push(Violation {
                        axiom: "left linearity of mu",
                        location: format!("{name} (alg {c}, {y}, {x})"),
                    });
                }
            }
            for a in 0..n.right_dim() {
                let lhs = mu.apply(&QQ, &basis_vec(y), n.ract.get(x, a));
                let rhs = p.ract.apply_right_basis(&QQ, yx, a);
                if lhs != rhs {
                    out.push(Violation {
                        axiom: "right linearity of mu",
                        location: format!("{name} ({y}, {x}, alg {a})"),
                    });
                }
            }
            for b in 0..m.right_dim() {
                let lhs = mu.apply(&QQ, m.ract.get(y, b), &basis_vec(x));
                let rhs = mu.apply(&QQ, &basis_vec(y), n.lact.get(b, x));
                if lhs != rhs {
                    out.push(Violation {
                        axiom: "balance of mu",
                        location: format!("{name} ({y}, alg {b}, {x})"),
                    });
                }
            }
        }
    }
    out
}

/// `M (x)_B N` as a quotient of `M (x)_k N`, with the canonical surjection.
#[derive(Clone, Debug)]
pub struct TensorOver {
    pub module: Bimodule,
    /// `dim module x (dim M * dim N)`; column `s * dim N + t` is the class of `m_s (x) n_t`.
    pub projection: Matrix<BigRational>,
    /// For each quotient basis vector, the pure tensor `m_s (x) n_t` (as `s * dim N + t`) lifting it.
    pub lifts: Vec<usize>,
}

impl TensorOver {
    pub fn project(&self, v: &SparseVec<BigRational>) -> SparseVec<BigRational> {
        self.projection.mul_vec(&QQ, v)
    }

    /// Class of `m (x) n` for arbitrary vectors.
    pub fn project_pair(
        &self,
        right: usize,
        m: &SparseVec<BigRational>,
        n: &SparseVec<BigRational>,
    ) -> SparseVec<BigRational> {
        let mut pairs = Vec::new();
        for (s, a) in m {
            for (t, b) in n {
                pairs.push((s * right + t, QQ.mul(a, b)));
            }
        }
        self.project(&sparse::from_pairs(&QQ, pairs))
    }
}

pub fn tensor_over(mid: &FiniteDimAlgebra, m: &Bimodule, n: &Bimodule) -> Result<TensorOver> {
    if m.right_dim() != mid.dim() || n.left_dim() != mid.dim() {
        return Err(Error::ActionMismatch(format!(
            "tensor over an algebra of dim {}: right action on the left factor has dim {}, left action on the right factor has dim {}",
            mid.dim(),
            m.right_dim(),
            n.left_dim()
        )));
    }
    let (dm, dn) = (m.dim(), n.dim());
    let ambient = dm * dn;
    let tensor = |ms: &SparseVec<BigRational>, ns: &SparseVec<BigRational>| {
        let mut pairs = Vec::new();
        for (s, a) in ms {
            for (t, b) in ns {
                pairs.push((s * dn + t, QQ.mul(a, b)));
            }
        }
        sparse::from_pairs(&QQ, pairs)
    };
    let mut relations = Vec::new();
    for s in 0..dm {
        for a in 0..mid.dim() {
            for t in 0..dn {
                let lhs = tensor(m.ract.get(s, a), &basis_vec(t));
                let rhs = tensor(&basis_vec(s), n.lact.get(a, t));
                let r = sparse::axpy(&QQ, &lhs, &QQ.neg(&QQ.one()), &rhs);
                if !r.is_empty() {
                    relations.push(r);
                }
            }
        }
    }
    let rel = Subspace::span(&QQ, ambient, relations.iter());
    let mut is_pivot = vec![false; ambient];
    for &p in rel.pivots() {
        is_pivot[p] = true;
    }
    let lifts: Vec<usize> = (0..ambient).filter(|c| !is_pivot[*c]).collect();
    let mut position = vec![usize::MAX; ambient];
    for (k, &c) in lifts.iter().enumerate() {
        position[c] = k;
    }
    let qdim = lifts.len();
    // Reducing modulo the relations leaves only non-pivot coordinates, which
    // are exactly the quotient coordinates.
    let project = |v: &SparseVec<BigRational>| -> SparseVec<BigRational> {
        rel.reduce(&QQ, v)
            .into_iter()
            .map(|(c, x)| (position[c], x))
            .collect()
    };
    let projection =
        Matrix::from_columns(qdim, (0..ambient).map(|c| project(&basis_vec(c))).collect());

    let mut lentries = Vec::new();
    let mut rentries = Vec::new();
    for (k, &c) in lifts.iter().enumerate() {
        let (s, t) = (c / dn, c % dn);
        for b in 0..m.left_dim() {
            let image = project(&tensor(m.lact.get(b, s), &basis_vec(t)));
            lentries.extend(image.into_iter().map(|(k2, x)| (b, k, k2, x)));
        }
        for a in 0..n.right_dim() {
            let image = project(&tensor(&basis_vec(s), n.ract.get(t, a)));
            rentries.extend(image.into_iter().map(|(k2, x)| (k, a, k2, x)));
        }
    }
    let module = Bimodule::new(
        Bilinear::from_entries(&QQ, m.left_dim(), qdim, qdim, lentries)?,
        Bilinear::from_entries(&QQ, qdim, n.right_dim(), qdim, rentries)?,
    )?;
    Ok(TensorOver {
        module,
        projection,
        lifts,
    })
}
