//! U(d) parametrized by d² real angles: d(d−1)/2 complex Givens rotations
//! (angle, phase) followed by d diagonal phases.

use rand::Rng;

use crate::error::{HardyError, Result};
use crate::linalg::CMatrix;
use crate::scalar::{cis, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryParam<T> {
    dim: usize,
    params: Vec<T>,
}

impl<T: Real> UnitaryParam<T> {
    pub fn param_count(dim: usize) -> usize {
        dim * dim
    }

    pub fn new(dim: usize, params: Vec<T>) -> Result<Self> {
        if dim == 0 {
            return Err(HardyError::EmptyInput);
        }
        if params.len() != dim * dim {
            return Err(HardyError::DimensionMismatch {
                index: 0,
                expected: dim * dim,
                found: params.len(),
            });
        }
        if params.iter().any(|p| !p.is_finite()) {
            return Err(HardyError::OutOfRange("non-finite unitary parameter".into()));
        }
        Ok(Self { dim, params })
    }

    pub fn identity(dim: usize) -> Self {
        Self { dim, params: vec![T::zero(); dim * dim] }
    }

    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let tau = T::TAU();
        let params = (0..dim * dim).map(|_| T::lit(rng.random::<f64>()) * tau).collect();
        Self { dim, params }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &[T] {
        &self.params
    }

    /// U = diag(e^{iδ}) · G_{d−2,d−1} ⋯ G_{0,1}.
    pub fn materialize(&self) -> CMatrix<T> {
        let d = self.dim;
        let mut u = CMatrix::identity(d);
        let mut it = self.params.iter().copied();
        for p in 0..d {
            for q in p + 1..d {
                let angle = it.next().expect("param count");
                let phase = it.next().expect("param count");
                let (c, s) = (angle.cos(), angle.sin());
                let e = cis(phase);
                // rows p, q of u ← [[c, −e·s], [ē·s, c]] · rows p, q
                for k in 0..d {
                    let up = u[(p, k)];
                    let uq = u[(q, k)];
                    u[(p, k)] = up * c - e * uq * s;
                    u[(q, k)] = e.conj() * up * s + uq * c;
                }
            }
        }
        for r in 0..d {
            let ph = cis(it.next().expect("param count"));
            for k in 0..d {
                u[(r, k)] = u[(r, k)] * ph;
            }
        }
        u
    }
}
