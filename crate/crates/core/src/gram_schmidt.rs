//! Classical Gram-Schmidt with one re-orthogonalization pass.

use crate::error::{HardyError, Result};
use crate::linalg::{axpy_sub, inner, norm, normalize};
use crate::scalar::{Real, C};

/// Default relative drop tolerance.
pub const DEFAULT_DROP_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Orthonormalized<T> {
    /// Orthonormal vectors, in input order of the vectors that survived.
    pub basis: Vec<Vec<C<T>>>,
    /// Input index each basis vector came from.
    pub kept: Vec<usize>,
}

impl<T: Real> Orthonormalized<T> {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Removes from `v` its components along the orthonormal set `basis`, twice.
pub fn project_out<T: Real>(v: &mut [C<T>], basis: &[Vec<C<T>>]) {
    for _pass in 0..2 {
        let coeffs: Vec<C<T>> = basis.iter().map(|b| inner(b, v)).collect();
        for (b, c) in basis.iter().zip(coeffs) {
            axpy_sub(v, c, b);
        }
    }
}

/// Orthonormalizes `vectors` in order. A vector whose post-projection norm
/// falls below `tol` times its input norm is dropped and does not count
/// toward the rank.
pub fn gram_schmidt<T: Real>(vectors: &[Vec<C<T>>], tol: T) -> Result<Orthonormalized<T>> {
    extend_orthonormal(&[], vectors, tol)
}

/// Like [`gram_schmidt`], but starts from an existing orthonormal `prefix`
/// that is not itself returned: the result spans the part of `vectors`
/// orthogonal to the prefix.
pub fn extend_orthonormal<T: Real>(
    prefix: &[Vec<C<T>>],
    vectors: &[Vec<C<T>>],
    tol: T,
) -> Result<Orthonormalized<T>> {
    let first = vectors.first().ok_or(HardyError::EmptyInput)?;
    let dim = first.len();
    for (index, v) in prefix.iter().chain(vectors).enumerate() {
        if v.len() != dim {
            return Err(HardyError::DimensionMismatch { index, expected: dim, found: v.len() });
        }
    }

    let mut all: Vec<Vec<C<T>>> = prefix.to_vec();
    let mut out = Orthonormalized { basis: Vec::new(), kept: Vec::new() };
    for (i, v) in vectors.iter().enumerate() {
        let n0 = norm(v);
        if n0 == T::zero() {
            continue;
        }
        let mut w = v.clone();
        project_out(&mut w, &all);
        if norm(&w) < tol * n0 {
            continue;
        }
        normalize(&mut w);
        all.push(w.clone());
        out.basis.push(w);
        out.kept.push(i);
    }
    Ok(out)
}

/// Numerical rank of a list of vectors.
pub fn rank<T: Real>(vectors: &[Vec<C<T>>], tol: T) -> Result<usize> {
    gram_schmidt(vectors, tol).map(|o| o.rank())
}
