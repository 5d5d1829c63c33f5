//! A family of Lie-group examples in every odd dimension, plus seeded random
//! generators of valid structures for the property suites.
//!
//! The family is defined on a `(2n+1)`-dimensional Lie algebra with basis
//! `{E_0, ..., E_2n}` and brackets (for `i = 1..=n`, constants `a_1..a_2n`)
//!
//! ```text
//! [E_0, E_i]     = -a_i E_i - a_{n+i} E_{n+i},
//! [E_0, E_{n+i}] = -a_{n+i} E_i + a_i E_{n+i},
//! ```
//!
//! all other brackets zero, carrying the block-swap structure
//! `phi E_i = E_{n+i}`, `phi E_{n+i} = E_i`, `xi = E_0` and the orthonormal
//! metric.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connection::LieAlgebraModel;
use crate::frame::{metric_inverse, FrameModel, Rank12Tensor};
use crate::structure::ApapStructure;
use crate::{Error, Result};

/// Parameter vector `(a_1, ..., a_2n)` generating one member of the family.
#[derive(Debug, Clone, PartialEq)]
pub struct LieExample {
    n: usize,
    a: Vec<f64>,
}

impl LieExample {
    pub fn new(n: usize, a: Vec<f64>) -> Result<Self> {
        if n < 1 {
            return Err(Error::BadN(n));
        }
        if a.len() != 2 * n {
            return Err(Error::BadParameterLength {
                expected: 2 * n,
                got: a.len(),
            });
        }
        Ok(Self { n, a })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &[f64] {
        &self.a
    }

    /// Builds and validates the algebra and the structure. Jacobi and the
    /// structure axioms are verified, not assumed; they hold for every
    /// parameter vector.
    pub fn build(&self) -> Result<(LieAlgebraModel, ApapStructure)> {
        let n = self.n;
        let dim = 2 * n + 1;
        let mut c = Rank12Tensor::zeros(dim);
        for i in 1..=n {
            let ai = self.a[i - 1];
            let ani = self.a[n + i - 1];
            c.set(0, i, i, -ai);
            c.set(0, i, n + i, -ani);
            c.set(i, 0, i, ai);
            c.set(i, 0, n + i, ani);
            c.set(0, n + i, i, -ani);
            c.set(0, n + i, n + i, ai);
            c.set(n + i, 0, i, ani);
            c.set(n + i, 0, n + i, -ai);
        }
        let alg = LieAlgebraModel::new(c);
        alg.check_jacobi()?;
        let s = standard_structure(n)?;
        Ok((alg, s))
    }

    /// The expected membership set at `n = 1`, by the four exact cases on
    /// `(a_1, a_2)`. Used as a regression oracle against `classify`.
    pub fn expected_class(&self) -> Result<Vec<usize>> {
        if self.n != 1 {
            return Err(Error::NotDim3(2 * self.n + 1));
        }
        let (a1, a2) = (self.a[0], self.a[1]);
        Ok(match (a1 != 0.0, a2 != 0.0) {
            (true, true) => vec![4, 9],
            (false, true) => vec![4],
            (true, false) => vec![9],
            (false, false) => vec![],
        })
    }
}

/// The block-swap structure over the orthonormal frame in dimension `2n + 1`:
/// `phi e_i = e_{n+i}`, `phi e_{n+i} = e_i`, `xi = e_0`.
pub fn standard_structure(n: usize) -> Result<ApapStructure> {
    if n < 1 {
        return Err(Error::BadN(n));
    }
    let dim = 2 * n + 1;
    let model = FrameModel::euclidean(dim)?;
    let mut phi = DMatrix::zeros(dim, dim);
    for i in 1..=n {
        phi[(n + i, i)] = 1.0;
        phi[(i, n + i)] = 1.0;
    }
    let mut xi = DVector::zeros(dim);
    xi[0] = 1.0;
    let eta = xi.clone();
    ApapStructure::new_validated(model, phi, xi, eta)
}

/// Orthogonal factor of the QR decomposition of a seeded random matrix.
fn random_orthogonal(dim: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let a = DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
    a.qr().q()
}

/// A valid structure with non-trivial components: the block-swap structure
/// conjugated by a random frame change with condition number below 10.
pub fn random_structure(dim: usize, seed: u64) -> Result<ApapStructure> {
    if dim < 3 || dim.is_multiple_of(2) {
        return Err(Error::BadDimension(dim));
    }
    let n = (dim - 1) / 2;
    let base = standard_structure(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q1 = random_orthogonal(dim, &mut rng);
    let q2 = random_orthogonal(dim, &mut rng);
    // singular values in [e^-0.8, e^0.8]: condition number <= e^1.6 < 10
    let d = DMatrix::from_diagonal(&DVector::from_fn(dim, |_, _| {
        f64::exp(rng.gen_range(-0.8..0.8))
    }));
    let p = q1 * d * q2;
    let p_inv = metric_inverse(&(p.transpose() * &p))? * p.transpose();

    let g = p.transpose() * base.model().g() * &p;
    let phi = &p_inv * base.phi() * &p;
    let xi = &p_inv * base.xi();
    let eta = p.transpose() * base.eta();
    let model = FrameModel::new((&g + g.transpose()) * 0.5)?;
    ApapStructure::new_validated(model, phi, xi, eta)
}
