//! Small dense complex linear algebra: vectors as slices, row-major square
//! matrices, LU determinant and a cyclic Jacobi Hermitian eigensolver.
//!
//! Dimensions here never exceed a few dozen, so everything is plain `Vec`
//! storage without blocking.

use std::ops::{Index, IndexMut, Mul};

use crate::scalar::{cone, czero, Real, C};

/// ⟨a|b⟩ = Σ conj(aᵢ) bᵢ
pub fn inner<T: Real>(a: &[C<T>], b: &[C<T>]) -> C<T> {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(czero(), |acc, (x, y)| acc + x.conj() * y)
}

pub fn norm_sqr<T: Real>(a: &[C<T>]) -> T {
    a.iter().map(|x| x.norm_sqr()).sum()
}

pub fn norm<T: Real>(a: &[C<T>]) -> T {
    norm_sqr(a).sqrt()
}

/// Scales `a` in place to unit norm and returns the original norm.
pub fn normalize<T: Real>(a: &mut [C<T>]) -> T {
    let n = norm(a);
    if n > T::zero() {
        let inv = T::one() / n;
        a.iter_mut().for_each(|x| *x = *x * inv);
    }
    n
}

/// a ← a − c·b
pub fn axpy_sub<T: Real>(a: &mut [C<T>], c: C<T>, b: &[C<T>]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = *x - c * y;
    }
}

/// Tensor product a ⊗ b with a-index major layout.
pub fn kron<T: Real>(a: &[C<T>], b: &[C<T>]) -> Vec<C<T>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Computational basis vector e_k of length `d`.
pub fn unit_vector<T: Real>(d: usize, k: usize) -> Vec<C<T>> {
    let mut v = vec![czero(); d];
    v[k] = cone();
    v
}

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    n: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![czero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = cone();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds the matrix whose columns are `cols`.
    pub fn from_columns(cols: &[Vec<C<T>>]) -> Self {
        let n = cols.len();
        Self::from_fn(n, |i, j| cols[j][i])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> Vec<C<T>> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C::new(-T::one(), T::zero())))
    }

    pub fn mul_vec(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let row = &self.data[i * self.n..(i + 1) * self.n];
                row.iter().zip(v).fold(czero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().map(|x| x.norm()).fold(T::zero(), T::max)
    }

    pub fn trace(&self) -> C<T> {
        (0..self.n).fold(czero(), |acc, i| acc + self[(i, i)])
    }

    /// max |A − A†|
    pub fn hermiticity_defect(&self) -> T {
        self.sub(&self.adjoint()).max_abs()
    }

    /// max |U†U − I|
    pub fn unitarity_defect(&self) -> T {
        (&self.adjoint() * self).sub(&Self::identity(self.n)).max_abs()
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn determinant(&self) -> C<T> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = cone::<T>();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, a[i * n + k].norm()))
                .fold((k, -T::one()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax == T::zero() {
                return czero();
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[k * n + k];
            det = det * pivot;
            for i in k + 1..n {
                let f = a[i * n + k] / pivot;
                for j in k..n {
                    let t = a[k * n + j];
                    a[i * n + j] = a[i * n + j] - f * t;
                }
            }
        }
        det
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations. Eigenvalues are returned in descending order; the k-th
    /// column of `vectors` belongs to `values[k]`.
    pub fn hermitian_eigen(&self) -> HermitianEigen<T> {
        let n = self.n;
        let mut a = self.clone();
        let mut v = Self::identity(n);
        let eps = T::epsilon();
        let scale = a.max_abs().max(T::min_positive_value());

        for _sweep in 0..100 {
            let off: T = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm_sqr())
                .sum();
            if off.sqrt() <= eps * scale * T::lit(1e-2) {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    let mag = apq.norm();
                    if mag <= eps * eps * scale {
                        continue;
                    }
                    let phase = apq / mag;
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let tau = (aqq - app) / (T::lit(2.0) * mag);
                    let t = if tau >= T::zero() {
                        T::one() / (tau + (T::one() + tau * tau).sqrt())
                    } else {
                        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                    };
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = t * c;
                    // J = [[c, s·e^{iα}], [−s·e^{-iα}, c]] on (p, q); A ← J†AJ.
                    let jpq = phase * s;
                    let jqp = -(phase.conj() * s);
                    let cc = C::new(c, T::zero());
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * cc + akq * jqp;
                        a[(k, q)] = akp * jpq + akq * cc;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = cc * apk + jqp.conj() * aqk;
                        a[(q, k)] = jpq.conj() * apk + cc * aqk;
                    }
                    a[(p, q)] = czero();
                    a[(q, p)] = czero();
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * cc + vkq * jqp;
                        v[(k, q)] = vkp * jpq + vkq * cc;
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());
        let values = order.iter().map(|&i| a[(i, i)].re).collect();
        let vectors = Self::from_fn(n, |i, k| v[(i, order[k])]);
        HermitianEigen { values, vectors }
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = C<T>;
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        CMatrix::from_fn(n, |i, j| {
            (0..n).fold(czero(), |acc, k| acc + self[(i, k)] * rhs[(k, j)])
        })
    }
}

#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: CMatrix<T>,
}
