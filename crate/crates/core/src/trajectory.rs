//! Trajectories of the linear level quiver `e_1 -> ... -> e_n` and the
//! tensor modules `M_tau` they index.

use std::fmt;

use crate::algebra::{Block, TriangularAlgebra};
use crate::error::{Error, Result};

/// One component of a trajectory: a length-0 path at a level, or the jump
/// `from -> to` with `from < to`. Levels are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Stay(usize),
    Jump { from: usize, to: usize },
}

impl Step {
    pub fn of_block(b: Block) -> Self {
        if b.is_jump() {
            Step::Jump {
                from: b.source,
                to: b.target,
            }
        } else {
            Step::Stay(b.source)
        }
    }

    pub fn source(&self) -> usize {
        match *self {
            Step::Stay(i) => i,
            Step::Jump { from, .. } => from,
        }
    }

    pub fn target(&self) -> usize {
        match *self {
            Step::Stay(i) => i,
            Step::Jump { to, .. } => to,
        }
    }

    pub fn is_jump(&self) -> bool {
        matches!(self, Step::Jump { .. })
    }

    /// The block of `T` this component is tensored from.
    pub fn block(&self) -> Block {
        Block::new(self.target(), self.source())
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Step::Stay(i) => write!(f, "e{}", i + 1),
            Step::Jump { from, to } => write!(f, "{}->{}", from + 1, to + 1),
        }
    }
}

/// An `l`-trajectory, components listed leftmost first: `steps[0]` is
/// `gamma_l`, the last one applied, and `steps[l-1]` is `gamma_1`. This is
/// also the order of the tensor factors `M_tau = M_{gamma_l} (x) ... (x) M_{gamma_1}`.
///
/// A 0-trajectory is just a level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trajectory {
    source: usize,
    steps: Vec<Step>,
}

impl Trajectory {
    pub fn new(source: usize, steps: Vec<Step>) -> Result<Self> {
        let mut at = source;
        for s in steps.iter().rev() {
            if s.source() != at {
                return Err(Error::MalformedCell(format!(
                    "component {s} does not start where the previous one ends (level {})",
                    at + 1
                )));
            }
            if let Step::Jump { from, to } = *s {
                if from >= to {
                    return Err(Error::MalformedCell(format!("jump {s} does not go up")));
                }
            }
            at = s.target();
        }
        Ok(Trajectory { source, steps })
    }

    /// The empty trajectory at a level.
    pub fn at(level: usize) -> Self {
        Trajectory {
            source: level,
            steps: Vec::new(),
        }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// `l`, the number of components.
    pub fn degree(&self) -> usize {
        self.steps.len()
    }

    /// `|tau|`, the number of jumps.
    pub fn length(&self) -> usize {
        self.steps.iter().filter(|s| s.is_jump()).count()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.steps.first().map_or(self.source, Step::target)
    }

    /// Visited levels `k_1 < ... < k_{t+1}` and exponents `p_1, ..., p_{t+1}`,
    /// where `p_i` counts the stays at `k_i`.
    pub fn profile(&self) -> (Vec<usize>, Vec<usize>) {
        let mut levels = vec![self.source];
        let mut exps = vec![0];
        for s in self.steps.iter().rev() {
            match *s {
                Step::Stay(_) => *exps.last_mut().expect("nonempty") += 1,
                Step::Jump { to, .. } => {
                    levels.push(to);
                    exps.push(0);
                }
            }
        }
        (levels, exps)
    }

    /// Component dimensions in `t`, leftmost first.
    pub fn factor_dims(&self, t: &TriangularAlgebra) -> Vec<usize> {
        self.steps
            .iter()
            .map(|s| t.block_dim(s.target(), s.source()))
            .collect()
    }
}

impl fmt::Display for Trajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return write!(f, "(e{})", self.source + 1);
        }
        let parts: Vec<String> = self.steps.iter().map(Step::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Every `l`-trajectory over `n` levels, ordered by source level and then
/// by the components from `gamma_1` upward, stays before jumps, jumps by
/// target.
pub fn enumerate_trajectories(n: usize, l: usize) -> Vec<Trajectory> {
    let mut out = Vec::new();
    for s in 0..n {
        if l == 0 {
            out.push(Trajectory::at(s));
            continue;
        }
        // Built from gamma_1 upward, reversed at the end.
        let mut stack: Vec<Vec<Step>> = vec![Vec::new()];
        let mut done: Vec<Vec<Step>> = Vec::new();
        while let Some(partial) = stack.pop() {
            if partial.len() == l {
                done.push(partial);
                continue;
            }
            let at = partial.last().map_or(s, Step::target);
            let mut next: Vec<Step> = vec![Step::Stay(at)];
            next.extend((at + 1..n).map(|to| Step::Jump { from: at, to }));
            for step in next.into_iter().rev() {
                let mut p = partial.clone();
                p.push(step);
                stack.push(p);
            }
        }
        for mut steps in done {
            steps.reverse();
            out.push(Trajectory { source: s, steps });
        }
    }
    out
}

/// `dim M_tau`, the product of the component dimensions.
pub fn module_dim(t: &TriangularAlgebra, tau: &Trajectory) -> usize {
    tau.factor_dims(t).iter().product()
}

/// Mixed-radix indexing of the basis tuples of `M_tau`, leftmost factor
/// most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectoryBasis {
    pub trajectory: Trajectory,
    radices: Vec<usize>,
    dim: usize,
}

impl TrajectoryBasis {
    pub fn new(t: &TriangularAlgebra, trajectory: Trajectory) -> Self {
        let radices = trajectory.factor_dims(t);
        let dim = radices.iter().product();
        TrajectoryBasis {
            trajectory,
            radices,
            dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (u, r)| acc * r + u)
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.radices.len()];
        for (slot, r) in out.iter_mut().zip(&self.radices).rev() {
            *slot = index % r;
            index /= r;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_trajectories(2, 1).len(), 3);
        assert_eq!(enumerate_trajectories(3, 1).len(), 6);
        let two = enumerate_trajectories(2, 2);
        let expected: HashSet<Trajectory> = [
            Trajectory::new(0, vec![Step::Stay(0), Step::Stay(0)]).unwrap(),
            Trajectory::new(1, vec![Step::Stay(1), Step::Stay(1)]).unwrap(),
            Trajectory::new(0, vec![Step::Stay(1), Step::Jump { from: 0, to: 1 }]).unwrap(),
            Trajectory::new(0, vec![Step::Jump { from: 0, to: 1 }, Step::Stay(0)]).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(two.iter().cloned().collect::<HashSet<_>>(), expected);
        assert_eq!(two.len(), 4);
        assert_eq!(enumerate_trajectories(3, 0).len(), 3);
    }

    /// Trajectories of length l from level s: sequences of l moves, each a
    /// stay or a forward jump.
    fn count(n: usize, at: usize, l: usize) -> usize {
        if l == 0 {
            return 1;
        }
        count(n, at, l - 1) + (at + 1..n).map(|to| count(n, to, l - 1)).sum::<usize>()
    }

    #[test]
    fn counts_match_recursion() {
        for n in 1..=5 {
            for l in 0..=4 {
                let direct: usize = (0..n).map(|s| count(n, s, l)).sum();
                let list = enumerate_trajectories(n, l);
                assert_eq!(list.len(), direct, "n={n} l={l}");
                let unique: HashSet<_> = list.iter().collect();
                assert_eq!(unique.len(), list.len());
                for tau in &list {
                    let (levels, exps) = tau.profile();
                    assert_eq!(exps.iter().sum::<usize>(), l - tau.length());
                    assert!(levels.windows(2).all(|w| w[0] < w[1]));
                    assert_eq!(*levels.last().unwrap(), tau.target());
                }
            }
        }
    }

    #[test]
    fn malformed_trajectories_are_rejected() {
        assert!(Trajectory::new(0, vec![Step::Stay(1)]).is_err());
        assert!(Trajectory::new(1, vec![Step::Jump { from: 1, to: 0 }]).is_err());
        assert!(Trajectory::new(0, vec![Step::Stay(0), Step::Jump { from: 1, to: 2 }]).is_err());
    }

    #[test]
    fn profile_of_mixed_trajectory() {
        // gamma_1 = e1, gamma_2 = 1->2, gamma_3 = e2, gamma_4 = e2, gamma_5 = 2->3
        let tau = Trajectory::new(
            0,
            vec![
                Step::Jump { from: 1, to: 2 },
                Step::Stay(1),
                Step::Stay(1),
                Step::Jump { from: 0, to: 1 },
                Step::Stay(0),
            ],
        )
        .unwrap();
        assert_eq!(tau.profile(), (vec![0, 1, 2], vec![1, 2, 0]));
        assert_eq!(tau.length(), 2);
        assert_eq!(tau.target(), 2);
    }

    #[test]
    fn mixed_radix_round_trip() {
        let b = TrajectoryBasis {
            trajectory: Trajectory::at(0),
            radices: vec![2, 3, 4],
            dim: 24,
        };
        for i in 0..24 {
            assert_eq!(b.index(&b.tuple(i)), i);
        }
        assert_eq!(b.index(&[1, 0, 0]), 12);
    }
}
