//! Lie structure constants, the Jacobi test, and the Levi-Civita connection of
//! a left-invariant metric via the Koszul equality
//!
//! ```text
//! 2 g(D_Ei Ej, Ek) = g([Ei,Ej], Ek) + g([Ek,Ei], Ej) + g([Ek,Ej], Ei).
//! ```
//!
//! The metric components are constant in the frame, so no derivative terms of
//! `g` appear: this module models homogeneous (left-invariant) data only.

use nalgebra::{DMatrix, DVector};

use crate::frame::{BilinearTensor, FrameModel, Rank12Tensor};
use crate::structure::ApapStructure;
use crate::tol::TOL_STRUCT;
use crate::{Error, Result};

/// Lie algebra in a fixed basis: `[E_i, E_j] = c_ij^k E_k`.
///
/// The constants are stored antisymmetrized in `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraModel {
    dim: usize,
    c: Rank12Tensor,
}

impl LieAlgebraModel {
    /// Antisymmetrizes the input exactly and stores it.
    pub fn new(c: Rank12Tensor) -> Self {
        let dim = c.dim();
        let anti = Rank12Tensor::from_fn(dim, |i, j, k| 0.5 * (c.get(i, j, k) - c.get(j, i, k)));
        Self { dim, c: anti }
    }

    /// Abelian algebra (all brackets zero).
    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            c: Rank12Tensor::zeros(dim),
        }
    }

    /// Ingests a bracket list `(i, j, k, value)` meaning `[E_i,E_j] ∋ value·E_k`.
    ///
    /// Entries may cover one orientation only (the opposite one is filled in by
    /// antisymmetry) or both. Returns the model together with the largest
    /// inconsistency found when both orientations were supplied; callers warn
    /// when it exceeds `TOL_STRUCT`.
    pub fn from_brackets(
        dim: usize,
        entries: &[(usize, usize, usize, f64)],
    ) -> Result<(Self, f64)> {
        let mut given = vec![false; dim * dim * dim];
        let mut raw = Rank12Tensor::zeros(dim);
        let idx = |i: usize, j: usize, k: usize| (i * dim + j) * dim + k;
        for &(i, j, k, v) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    got: i.max(j).max(k) + 1,
                });
            }
            raw.set(i, j, k, raw.get(i, j, k) + v);
            given[idx(i, j, k)] = true;
        }
        let mut inconsistency: f64 = 0.0;
        let mut full = Rank12Tensor::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let fwd = raw.get(i, j, k);
                    let bwd = raw.get(j, i, k);
                    if given[idx(i, j, k)] && given[idx(j, i, k)] {
                        inconsistency = inconsistency.max((fwd + bwd).abs());
                        full.set(i, j, k, 0.5 * (fwd - bwd));
                    } else if given[idx(i, j, k)] {
                        full.set(i, j, k, fwd);
                    } else if given[idx(j, i, k)] {
                        full.set(i, j, k, -bwd);
                    }
                }
            }
        }
        Ok((Self::new(full), inconsistency))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &Rank12Tensor {
        &self.c
    }

    pub fn bracket(&self, i: usize, j: usize) -> DVector<f64> {
        self.c.apply(i, j)
    }

    /// Worst Jacobi residual together with the quadruple attaining it.
    pub fn jacobi_residual(&self) -> (f64, [usize; 4]) {
        let d = self.dim;
        let mut worst = 0.0;
        let mut at = [0usize; 4];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for m in 0..d {
                        let mut sum = 0.0;
                        for l in 0..d {
                            sum += self.c.get(i, j, l) * self.c.get(l, k, m)
                                + self.c.get(j, k, l) * self.c.get(l, i, m)
                                + self.c.get(k, i, l) * self.c.get(l, j, m);
                        }
                        if sum.abs() > worst {
                            worst = sum.abs();
                            at = [i, j, k, m];
                        }
                    }
                }
            }
        }
        (worst, at)
    }

    pub fn check_jacobi(&self) -> Result<()> {
        let (residual, worst) = self.jacobi_residual();
        if residual > TOL_STRUCT {
            return Err(Error::JacobiViolation { worst, residual });
        }
        Ok(())
    }
}

/// Levi-Civita connection in the frame: `D_Ei Ej = gamma_ij^k E_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection {
    dim: usize,
    gamma: Rank12Tensor,
}

impl Connection {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gamma(&self) -> &Rank12Tensor {
        &self.gamma
    }

    /// `D_Ei Ej` as a vector.
    pub fn derive(&self, i: usize, j: usize) -> DVector<f64> {
        self.gamma.apply(i, j)
    }

    /// `[E_i, E_j] = D_Ei Ej - D_Ej Ei` (torsion-free).
    pub fn bracket(&self, i: usize, j: usize, k: usize) -> f64 {
        self.gamma.get(i, j, k) - self.gamma.get(j, i, k)
    }

    /// `{E_i, E_j} = D_Ei Ej + D_Ej Ei`.
    pub fn brace(&self, i: usize, j: usize, k: usize) -> f64 {
        self.gamma.get(i, j, k) + self.gamma.get(j, i, k)
    }

    /// `D_x y` for constant-coefficient (left-invariant) vectors.
    pub fn derive_vec(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let d = self.dim;
        DVector::from_fn(d, |k, _| {
            let mut s = 0.0;
            for i in 0..d {
                for j in 0..d {
                    s += x[i] * y[j] * self.gamma.get(i, j, k);
                }
            }
            s
        })
    }
}

/// Solves the Koszul equality for the left-invariant Levi-Civita connection.
///
/// The covector `2 g(D_Ei Ej, ·)` is assembled from three brackets and the
/// index is raised with the inverse metric.
pub fn levi_civita(alg: &LieAlgebraModel, model: &FrameModel) -> Result<Connection> {
    if alg.dim() != model.dim() {
        return Err(Error::DimMismatch {
            expected: model.dim(),
            got: alg.dim(),
        });
    }
    alg.check_jacobi()?;
    let d = model.dim();
    let g = model.g();
    let g_inv = model.g_inv();
    let c = alg.constants();
    // k_ijm = g(D_Ei Ej, E_m)
    let mut k = Rank12Tensor::zeros(d);
    for i in 0..d {
        for j in 0..d {
            for m in 0..d {
                let mut s = 0.0;
                for l in 0..d {
                    s += c.get(i, j, l) * g[(l, m)]
                        + c.get(m, i, l) * g[(l, j)]
                        + c.get(m, j, l) * g[(l, i)];
                }
                k.set(i, j, m, 0.5 * s);
            }
        }
    }
    let gamma = Rank12Tensor::from_fn(d, |i, j, kk| {
        (0..d).map(|m| k.get(i, j, m) * g_inv[(m, kk)]).sum()
    });
    Ok(Connection { dim: d, gamma })
}

/// `(D_x phi) y = D_x (phi y) - phi (D_x y)` in components:
/// `(Dphi)_ij^k = gamma_il^k phi^l_j - phi^k_l gamma_ij^l`.
pub fn nabla_phi(conn: &Connection, s: &ApapStructure) -> Result<Rank12Tensor> {
    if conn.dim() != s.dim() {
        return Err(Error::DimMismatch {
            expected: s.dim(),
            got: conn.dim(),
        });
    }
    let d = s.dim();
    let phi = s.phi();
    let gamma = conn.gamma();
    Ok(Rank12Tensor::from_fn(d, |i, j, k| {
        let mut v = 0.0;
        for l in 0..d {
            v += gamma.get(i, l, k) * phi[(l, j)] - phi[(k, l)] * gamma.get(i, j, l);
        }
        v
    }))
}

/// The covariant derivatives of `eta` and `xi`:
/// `(D_x eta) y = g(D_x xi, y)`. Returns the (0,2) array and the (1,1) array
/// `(Dxi)^k_i` with `D_Ei xi = (Dxi)^k_i E_k`.
pub fn nabla_eta_xi(
    conn: &Connection,
    s: &ApapStructure,
) -> Result<(BilinearTensor, DMatrix<f64>)> {
    if conn.dim() != s.dim() {
        return Err(Error::DimMismatch {
            expected: s.dim(),
            got: conn.dim(),
        });
    }
    let d = s.dim();
    let xi = s.xi();
    let gamma = conn.gamma();
    let nabla_xi = DMatrix::from_fn(d, d, |k, i| {
        (0..d).map(|l| gamma.get(i, l, k) * xi[l]).sum()
    });
    let g = s.model().g();
    let nabla_eta =
        BilinearTensor::from_fn(d, |i, j| (0..d).map(|k| nabla_xi[(k, i)] * g[(k, j)]).sum());
    Ok((nabla_eta, nabla_xi))
}
