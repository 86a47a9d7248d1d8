//! Truncated harmonic-oscillator (photon/phonon) space with ladder operators.

use crate::linalg::{basis_state, CMatrix, CVector, C64};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FockError {
    #[error("truncation must keep at least two levels, got n_max = {0}")]
    TruncationTooSmall(usize),
    #[error("occupation number {n} exceeds truncation n_max = {n_max}")]
    OccupationOutOfRange { n: usize, n_max: usize },
}

/// Oscillator space truncated at occupation number `n_max` (dimension
/// n_max + 1). The raising operator annihilates |n_max⟩, so the top level
/// doubles as a leakage monitor: its population must stay negligible for the
/// truncation to be trustworthy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    n_max: usize,
}

impl FockSpace {
    pub fn new(n_max: usize) -> Result<Self, FockError> {
        if n_max < 1 {
            return Err(FockError::TruncationTooSmall(n_max));
        }
        Ok(FockSpace { n_max })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    /// Annihilation operator: a|n⟩ = √n |n-1⟩, a|0⟩ = 0.
    pub fn lowering(&self) -> CMatrix {
        let dim = self.dim();
        let mut a = CMatrix::zeros(dim, dim);
        for n in 1..dim {
            a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
        }
        a
    }

    /// Creation operator: a†|n⟩ = √(n+1) |n+1⟩ for n < n_max, a†|n_max⟩ = 0.
    pub fn raising(&self) -> CMatrix {
        self.lowering().adjoint()
    }

    /// (a, a†) as a pair.
    pub fn ladder_ops(&self) -> (CMatrix, CMatrix) {
        (self.lowering(), self.raising())
    }

    /// Number operator a†a.
    pub fn number(&self) -> CMatrix {
        let dim = self.dim();
        CMatrix::from_fn(dim, dim, |i, j| {
            if i == j {
                C64::new(i as f64, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// Number state |n⟩ = (a†)ⁿ/√(n!) |0⟩.
    pub fn state(&self, n: usize) -> Result<CVector, FockError> {
        if n > self.n_max {
            return Err(FockError::OccupationOutOfRange {
                n,
                n_max: self.n_max,
            });
        }
        Ok(basis_state(self.dim(), n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, max_abs_diff};

    #[test]
    fn ladder_actions_on_number_states() {
        let space = FockSpace::new(3).unwrap();
        let (a, a_dag) = space.ladder_ops();

        // a|0⟩ = 0
        let out = &a * space.state(0).unwrap();
        assert!(out.norm() < 1e-15);

        // a†|1⟩ = √2 |2⟩
        let out = &a_dag * space.state(1).unwrap();
        let want = space.state(2).unwrap() * C64::new(2f64.sqrt(), 0.0);
        assert!((out - want).norm() < 1e-15);

        // a†a|n⟩ = n|n⟩ for every retained n
        let number = &a_dag * &a;
        for n in 0..=space.n_max() {
            let out = &number * space.state(n).unwrap();
            let want = space.state(n).unwrap() * C64::new(n as f64, 0.0);
            assert!((out - want).norm() < 1e-14);
        }
    }

    #[test]
    fn number_states_from_repeated_raising() {
        // |n⟩ = (a†)ⁿ|0⟩/√(n!), built by repeated application.
        let space = FockSpace::new(4).unwrap();
        let a_dag = space.raising();
        let mut built = space.state(0).unwrap();
        let mut factorial = 1.0;
        for n in 1..=space.n_max() {
            built = &a_dag * built;
            factorial *= n as f64;
            let normalized = &built / C64::new(factorial.sqrt(), 0.0);
            assert!((normalized - space.state(n).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn number_states_are_orthonormal() {
        let space = FockSpace::new(3).unwrap();
        for m in 0..=3 {
            for n in 0..=3 {
                let overlap = space.state(m).unwrap().dotc(&space.state(n).unwrap());
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((overlap - C64::new(want, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn commutator_is_identity_below_the_cutoff() {
        let space = FockSpace::new(5).unwrap();
        let (a, a_dag) = space.ladder_ops();
        let commutator = &a * &a_dag - &a_dag * &a;
        let deviation = &commutator - identity(space.dim());
        // Identity on span{|0⟩..|n_max - 1⟩}; the whole truncation error sits
        // in the single (n_max, n_max) diagonal entry.
        for i in 0..space.dim() {
            for j in 0..space.dim() {
                if i == space.n_max() && j == space.n_max() {
                    continue;
                }
                assert!(deviation[(i, j)].norm() < 1e-15, "({i},{j})");
            }
        }
        let corner = commutator[(space.n_max(), space.n_max())];
        assert!((corner - C64::new(-(space.n_max() as f64), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn raising_is_the_adjoint_of_lowering() {
        let space = FockSpace::new(3).unwrap();
        assert!(max_abs_diff(&space.raising(), &space.lowering().adjoint()) < 1e-16);
    }

    #[test]
    fn constructor_and_state_bounds() {
        assert!(matches!(
            FockSpace::new(0),
            Err(FockError::TruncationTooSmall(0))
        ));
        let space = FockSpace::new(2).unwrap();
        assert!(matches!(
            space.state(3),
            Err(FockError::OccupationOutOfRange { .. })
        ));
    }
}
