//! Dense component tensors over a fixed frame of odd dimension.
//!
//! Dimensions of interest are 3–9, so everything is stored dense and contracted
//! with straightforward index loops. A [`FrameModel`] carries the metric and its
//! cached inverse and provides the g-induced inner products and norms used for
//! classification thresholds.

use nalgebra::{DMatrix, DVector};

use crate::tol::TOL_LIN;
use crate::{Error, Result};

/// Inverse of a symmetric positive definite matrix via Cholesky factorization,
/// symmetrized so the result is symmetric to the last bit.
pub fn metric_inverse(g: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = g.nrows();
    let sym_residual = (g - g.transpose()).abs().max();
    if sym_residual > TOL_LIN {
        return Err(Error::NotSymmetric {
            residual: sym_residual,
        });
    }
    let chol = g.clone().cholesky().ok_or(Error::NotPositiveDefinite)?;
    let inv = chol.solve(&DMatrix::identity(n, n));
    Ok((&inv + inv.transpose()) * 0.5)
}

/// The ambient arena: frame dimension `2n + 1` and metric components.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameModel {
    dim: usize,
    g: DMatrix<f64>,
    g_inv: DMatrix<f64>,
}

impl FrameModel {
    /// Builds a model from metric components. The dimension must be odd and
    /// at least 3 and `g` symmetric positive definite.
    pub fn new(g: DMatrix<f64>) -> Result<Self> {
        let dim = g.nrows();
        if dim < 3 || dim.is_multiple_of(2) || g.ncols() != dim {
            return Err(Error::BadDimension(dim));
        }
        let g_inv = metric_inverse(&g)?;
        Ok(Self { dim, g, g_inv })
    }

    /// Orthonormal frame in the given odd dimension.
    pub fn euclidean(dim: usize) -> Result<Self> {
        Self::new(DMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        (self.dim - 1) / 2
    }

    pub fn g(&self) -> &DMatrix<f64> {
        &self.g
    }

    pub fn g_inv(&self) -> &DMatrix<f64> {
        &self.g_inv
    }

    pub fn metric(&self, i: usize, j: usize) -> f64 {
        self.g[(i, j)]
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: dim,
            });
        }
        Ok(())
    }

    /// `S_abc T_def g^ad g^be g^cf`.
    pub fn cubic_inner(&self, s: &CubicTensor, t: &CubicTensor) -> Result<f64> {
        self.check_dim(s.dim)?;
        self.check_dim(t.dim)?;
        let raised = t
            .transform_slot(&self.g_inv, 0)
            .transform_slot(&self.g_inv, 1)
            .transform_slot(&self.g_inv, 2);
        Ok(s.data
            .iter()
            .zip(raised.data.iter())
            .map(|(a, b)| a * b)
            .sum())
    }

    /// g-induced norm of a cubic tensor; zero iff the tensor vanishes.
    pub fn cubic_norm(&self, t: &CubicTensor) -> Result<f64> {
        Ok(self.cubic_inner(t, t)?.max(0.0).sqrt())
    }

    /// `S_ab T_cd g^ac g^bd`.
    pub fn bilinear_inner(&self, s: &BilinearTensor, t: &BilinearTensor) -> Result<f64> {
        self.check_dim(s.dim)?;
        self.check_dim(t.dim)?;
        let sm = s.to_matrix();
        let tm = t.to_matrix();
        Ok((&self.g_inv * sm * &self.g_inv * tm.transpose()).trace())
    }

    pub fn bilinear_norm(&self, t: &BilinearTensor) -> Result<f64> {
        Ok(self.bilinear_inner(t, t)?.max(0.0).sqrt())
    }

    pub fn covector_norm(&self, t: &CovectorTensor) -> Result<f64> {
        self.check_dim(t.dim)?;
        let v = DVector::from_column_slice(&t.data);
        Ok((v.transpose() * &self.g_inv * v)[(0, 0)].max(0.0).sqrt())
    }

    /// g-induced norm of a (1,1) tensor `A^k_i`.
    pub fn endo_norm(&self, a: &DMatrix<f64>) -> Result<f64> {
        self.check_dim(a.nrows())?;
        Ok((&self.g_inv * a.transpose() * &self.g * a)
            .trace()
            .max(0.0)
            .sqrt())
    }

    /// Lowers the contravariant index of a (1,2) tensor to give a cubic tensor.
    pub fn lower_rank12(&self, t: &Rank12Tensor) -> Result<CubicTensor> {
        self.check_dim(t.dim)?;
        let d = self.dim;
        Ok(CubicTensor::from_fn(d, |i, j, k| {
            (0..d).map(|l| t.get(i, j, l) * self.g[(l, k)]).sum()
        }))
    }
}

/// Dense real (0,3) component array `T_ijk`.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicTensor {
    dim: usize,
    data: Vec<f64>,
}

impl CubicTensor {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut t = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    t.set(i, j, k, f(i, j, k));
                }
            }
        }
        t
    }

    pub fn from_vec(dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim * dim {
            return Err(Error::DimMismatch {
                expected: dim * dim * dim,
                got: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(i * self.dim + j) * self.dim + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.data[(i * self.dim + j) * self.dim + k] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a + b)
            .collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a - b)
            .collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|v| c * v).collect(),
        }
    }

    /// Pullback by a matrix in one slot:
    /// slot 0 gives `T'(x,y,z) = T(Mx,y,z)`, i.e. `T'_ijk = M^a_i T_ajk`.
    pub fn transform_slot(&self, m: &DMatrix<f64>, slot: usize) -> Self {
        let d = self.dim;
        CubicTensor::from_fn(d, |i, j, k| {
            (0..d)
                .map(|a| match slot {
                    0 => m[(a, i)] * self.get(a, j, k),
                    1 => m[(a, j)] * self.get(i, a, k),
                    _ => m[(a, k)] * self.get(i, j, a),
                })
                .sum()
        })
    }
}

/// Dense real (0,2) component array `S_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearTensor {
    dim: usize,
    data: Vec<f64>,
}

impl BilinearTensor {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut t = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                t.set(i, j, f(i, j));
            }
        }
        t
    }

    pub fn from_matrix(m: &DMatrix<f64>) -> Self {
        Self::from_fn(m.nrows(), |i, j| m[(i, j)])
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|v| c * v).collect(),
        }
    }
}

/// Dense real (0,1) component array `w_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovectorTensor {
    dim: usize,
    data: Vec<f64>,
}

impl CovectorTensor {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim],
        }
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize) -> f64) -> Self {
        Self {
            dim,
            data: (0..dim).map(f).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        self.data[i]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Pairing with a vector, `w(x) = w_i x^i`.
    pub fn pair(&self, x: &DVector<f64>) -> f64 {
        self.data.iter().zip(x.iter()).map(|(a, b)| a * b).sum()
    }
}

/// Dense real (1,2) component array `T_ij^k` (last index contravariant).
/// Houses structure constants, Christoffel symbols and covariant derivatives
/// of endomorphisms.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank12Tensor {
    dim: usize,
    data: Vec<f64>,
}

impl Rank12Tensor {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut t = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    t.set(i, j, k, f(i, j, k));
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(i * self.dim + j) * self.dim + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.data[(i * self.dim + j) * self.dim + k] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// The vector `T(e_i, e_j)` as a column.
    pub fn apply(&self, i: usize, j: usize) -> DVector<f64> {
        DVector::from_fn(self.dim, |k, _| self.get(i, j, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(entries: &[f64]) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_column_slice(entries))
    }

    #[test]
    fn inverse_of_identity() {
        let g = DMatrix::identity(3, 3);
        let inv = metric_inverse(&g).unwrap();
        assert!((inv - DMatrix::identity(3, 3)).abs().max() < TOL_LIN);
    }

    #[test]
    fn inverse_of_diagonal() {
        let inv = metric_inverse(&diag(&[4.0, 1.0, 1.0])).unwrap();
        assert!((inv - diag(&[0.25, 1.0, 1.0])).abs().max() < TOL_LIN);
    }

    #[test]
    fn inverse_multiply_back_random_spd() {
        // A A^T + I with a fixed A is SPD; the oracle is g * g^-1 = I.
        let a = DMatrix::from_fn(5, 5, |i, j| ((3 * i + 7 * j + 1) as f64 * 0.37).sin());
        let g = &a * a.transpose() + DMatrix::identity(5, 5);
        let inv = metric_inverse(&g).unwrap();
        assert!((&g * &inv - DMatrix::identity(5, 5)).abs().max() < 1e-12);
    }

    #[test]
    fn inverse_rejects_non_spd() {
        let m = diag(&[1.0, -1.0, 1.0]);
        assert!(matches!(
            metric_inverse(&m),
            Err(Error::NotPositiveDefinite)
        ));
        let mut asym = DMatrix::identity(3, 3);
        asym[(0, 1)] = 0.5;
        assert!(matches!(
            metric_inverse(&asym),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn inverse_involution() {
        let a = DMatrix::from_fn(5, 5, |i, j| ((2 * i + 5 * j) as f64 * 0.61).cos());
        let g = &a * a.transpose() + DMatrix::identity(5, 5) * 2.0;
        let back = metric_inverse(&metric_inverse(&g).unwrap()).unwrap();
        assert!((&g - back).abs().max() < 10.0 * TOL_LIN);
    }

    #[test]
    fn frame_model_rejects_even_or_small_dims() {
        assert!(FrameModel::new(DMatrix::identity(4, 4)).is_err());
        assert!(FrameModel::new(DMatrix::identity(1, 1)).is_err());
        assert!(FrameModel::new(DMatrix::identity(5, 5)).is_ok());
    }

    #[test]
    fn cubic_norm_zero_and_single_entry() {
        let m = FrameModel::euclidean(3).unwrap();
        let zero = CubicTensor::zeros(3);
        assert_eq!(m.cubic_norm(&zero).unwrap(), 0.0);

        let mut t = CubicTensor::zeros(3);
        t.set(0, 0, 0, 2.0);
        assert!((m.cubic_norm(&t).unwrap() - 2.0).abs() < TOL_LIN);
    }

    #[test]
    fn cubic_norm_orthonormal_equals_sum_of_squares() {
        let m = FrameModel::euclidean(5).unwrap();
        let t = CubicTensor::from_fn(5, |i, j, k| ((i + 2 * j + 3 * k) as f64 * 0.17).sin());
        let plain: f64 = t.data().iter().map(|v| v * v).sum();
        assert!((m.cubic_norm(&t).unwrap().powi(2) - plain).abs() < 1e-10);
    }

    #[test]
    fn cubic_inner_disjoint_supports() {
        let m = FrameModel::euclidean(3).unwrap();
        let mut s = CubicTensor::zeros(3);
        s.set(0, 1, 2, 1.0);
        let mut t = CubicTensor::zeros(3);
        t.set(1, 2, 0, 1.0);
        assert_eq!(m.cubic_inner(&s, &t).unwrap(), 0.0);
        assert_eq!(m.cubic_inner(&s, &s).unwrap(), 1.0);
    }

    #[test]
    fn cubic_inner_matches_norm_square() {
        let a = DMatrix::from_fn(3, 3, |i, j| ((i * 5 + j * 2) as f64 * 0.29).sin());
        let g = &a * a.transpose() + DMatrix::identity(3, 3);
        let m = FrameModel::new(g).unwrap();
        let t = CubicTensor::from_fn(3, |i, j, k| (i + j) as f64 - k as f64 * 0.5);
        let n = m.cubic_norm(&t).unwrap();
        assert!((m.cubic_inner(&t, &t).unwrap() - n * n).abs() < 1e-10);
    }

    #[test]
    fn dim_mismatch_is_reported() {
        let m = FrameModel::euclidean(3).unwrap();
        let t = CubicTensor::zeros(5);
        assert!(matches!(
            m.cubic_norm(&t),
            Err(Error::DimMismatch {
                expected: 3,
                got: 5
            })
        ));
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<FrameModel>();
        assert_send_sync::<CubicTensor>();
        assert_send_sync::<BilinearTensor>();
        assert_send_sync::<CovectorTensor>();
        assert_send_sync::<Rank12Tensor>();
        assert_send_sync::<crate::structure::ApapStructure>();
        assert_send_sync::<crate::classes::FundamentalTensor>();
        assert_send_sync::<crate::connection::Connection>();
    }
}
