//! The `(phi, xi, eta, g)` structure: axiom validation, the projectors `h` and
//! `v`, the `l1/l2/l3` operators on bilinear tensors, and the associated metric.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::frame::{BilinearTensor, FrameModel};
use crate::tol::TOL_STRUCT;
use crate::{Error, Result};

/// Almost paracontact almost paracomplex structure in frame components.
///
/// `phi` acts on vector components by matrix multiplication, `xi` is a vector,
/// `eta` a covector. Instances are constructed with consistent dimensions;
/// whether the axioms hold is reported by [`ApapStructure::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct ApapStructure {
    model: FrameModel,
    phi: DMatrix<f64>,
    xi: DVector<f64>,
    eta: DVector<f64>,
}

/// Residual of each structure axiom; `valid` iff all are within tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureReport {
    /// `phi xi = 0`
    pub phi_xi: f64,
    /// `phi^2 = I - eta (x) xi`
    pub phi_square: f64,
    /// `eta o phi = 0`
    pub eta_phi: f64,
    /// `eta(xi) = 1`
    pub eta_xi: f64,
    /// `tr phi = 0`
    pub trace_phi: f64,
    /// `g(phi x, phi y) = g(x, y) - eta(x) eta(y)`
    pub compat_phi: f64,
    /// `g(x, xi) = eta(x)`
    pub compat_xi: f64,
    pub valid: bool,
}

impl StructureReport {
    pub fn worst(&self) -> f64 {
        [
            self.phi_xi,
            self.phi_square,
            self.eta_phi,
            self.eta_xi,
            self.trace_phi,
            self.compat_phi,
            self.compat_xi,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl ApapStructure {
    /// Dimension-checked construction; axioms are checked by [`Self::validate`].
    pub fn new(
        model: FrameModel,
        phi: DMatrix<f64>,
        xi: DVector<f64>,
        eta: DVector<f64>,
    ) -> Result<Self> {
        let dim = model.dim();
        for got in [phi.nrows(), phi.ncols(), xi.len(), eta.len()] {
            if got != dim {
                return Err(Error::DimMismatch { expected: dim, got });
            }
        }
        Ok(Self {
            model,
            phi,
            xi,
            eta,
        })
    }

    /// Construction that additionally requires all axioms to hold.
    pub fn new_validated(
        model: FrameModel,
        phi: DMatrix<f64>,
        xi: DVector<f64>,
        eta: DVector<f64>,
    ) -> Result<Self> {
        let s = Self::new(model, phi, xi, eta)?;
        let report = s.validate();
        if !report.valid {
            return Err(Error::InvalidStructure {
                residual: report.worst(),
            });
        }
        Ok(s)
    }

    pub fn model(&self) -> &FrameModel {
        &self.model
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    pub fn n(&self) -> usize {
        self.model.n()
    }

    pub fn phi(&self) -> &DMatrix<f64> {
        &self.phi
    }

    pub fn xi(&self) -> &DVector<f64> {
        &self.xi
    }

    pub fn eta(&self) -> &DVector<f64> {
        &self.eta
    }

    pub fn eta_of(&self, x: &DVector<f64>) -> f64 {
        self.eta.dot(x)
    }

    /// Residuals of all seven axioms. Reports everything instead of failing
    /// fast so hand-built structures get a full diagnostic.
    pub fn validate(&self) -> StructureReport {
        let dim = self.dim();
        let phi_xi = (&self.phi * &self.xi).abs().max();
        let phi2 = &self.phi * &self.phi;
        let target = DMatrix::identity(dim, dim) - &self.xi * self.eta.transpose();
        let phi_square = (&phi2 - target).abs().max();
        let eta_phi = (self.eta.transpose() * &self.phi).abs().max();
        let eta_xi = (self.eta.dot(&self.xi) - 1.0).abs();
        let trace_phi = self.phi.trace().abs();
        let g = self.model.g();
        let compat_phi = (self.phi.transpose() * g * &self.phi - g
            + &self.eta * self.eta.transpose())
        .abs()
        .max();
        let compat_xi = (g * &self.xi - &self.eta).abs().max();
        let report = StructureReport {
            phi_xi,
            phi_square,
            eta_phi,
            eta_xi,
            trace_phi,
            compat_phi,
            compat_xi,
            valid: false,
        };
        let valid = report.worst() <= TOL_STRUCT;
        StructureReport { valid, ..report }
    }

    /// Horizontal projector `h = phi^2`.
    pub fn h_matrix(&self) -> DMatrix<f64> {
        &self.phi * &self.phi
    }

    /// Vertical projector `v = xi (x) eta`.
    pub fn v_matrix(&self) -> DMatrix<f64> {
        &self.xi * self.eta.transpose()
    }

    /// Splits a bilinear tensor into its `l1 + l2 + l3` parts:
    /// `l1(S)(x,y) = S(hx,hy)`, `l2(S)(x,y) = S(vx,vy)`,
    /// `l3(S)(x,y) = S(vx,hy) + S(hx,vy)`.
    pub fn ell_split(
        &self,
        s: &BilinearTensor,
    ) -> Result<(BilinearTensor, BilinearTensor, BilinearTensor)> {
        if s.dim() != self.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim(),
                got: s.dim(),
            });
        }
        let h = self.h_matrix();
        let v = self.v_matrix();
        let sm = s.to_matrix();
        let l1 = h.transpose() * &sm * &h;
        let l2 = v.transpose() * &sm * &v;
        let l3 = v.transpose() * &sm * &h + h.transpose() * &sm * &v;
        Ok((
            BilinearTensor::from_matrix(&l1),
            BilinearTensor::from_matrix(&l2),
            BilinearTensor::from_matrix(&l3),
        ))
    }

    /// The associated metric `g~(x,y) = g(x, phi y) + eta(x) eta(y)`.
    pub fn associated_metric(&self) -> BilinearTensor {
        let m = self.model.g() * &self.phi + &self.eta * self.eta.transpose();
        BilinearTensor::from_matrix(&m)
    }

    /// Sign counts `(positive, negative, zero)` of the eigenvalues of a
    /// symmetric bilinear tensor, at tolerance `TOL_STRUCT`.
    pub fn signature(&self, s: &BilinearTensor) -> (usize, usize, usize) {
        let eig = SymmetricEigen::new(s.to_matrix());
        let mut pos = 0;
        let mut neg = 0;
        let mut zero = 0;
        for v in eig.eigenvalues.iter() {
            if *v > TOL_STRUCT {
                pos += 1;
            } else if *v < -TOL_STRUCT {
                neg += 1;
            } else {
                zero += 1;
            }
        }
        (pos, neg, zero)
    }

    /// `eta (x) eta` as a bilinear tensor.
    pub fn eta_outer(&self) -> BilinearTensor {
        let m = &self.eta * self.eta.transpose();
        BilinearTensor::from_matrix(&m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::LieExample;

    fn example_structure(a: [f64; 2]) -> ApapStructure {
        let (_, s) = LieExample::new(1, a.to_vec()).unwrap().build().unwrap();
        s
    }

    #[test]
    fn example_family_is_valid() {
        let s = example_structure([1.0, 1.0]);
        let report = s.validate();
        assert!(report.valid);
        assert!(report.worst() == 0.0);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let model = FrameModel::euclidean(3).unwrap();
        let s = ApapStructure::new(
            model,
            DMatrix::zeros(5, 5),
            DVector::zeros(3),
            DVector::zeros(3),
        );
        assert!(matches!(
            s,
            Err(crate::Error::DimMismatch {
                expected: 3,
                got: 5
            })
        ));
    }

    #[test]
    fn degenerate_phi_fails_phi_square_axiom() {
        let model = FrameModel::euclidean(3).unwrap();
        let phi = DMatrix::zeros(3, 3);
        let xi = DVector::from_column_slice(&[1.0, 0.0, 0.0]);
        let eta = xi.clone();
        let s = ApapStructure::new(model, phi, xi, eta).unwrap();
        let report = s.validate();
        assert!(!report.valid);
        assert!((report.phi_square - 1.0).abs() < 1e-15);
        assert_eq!(report.phi_xi, 0.0);
        assert_eq!(report.eta_xi, 0.0);
    }

    #[test]
    fn perturbed_metric_fails_compatibility() {
        let s0 = example_structure([1.0, 1.0]);
        let mut g = s0.model().g().clone();
        g[(1, 1)] = 2.0;
        let model = FrameModel::new(g).unwrap();
        let s =
            ApapStructure::new(model, s0.phi().clone(), s0.xi().clone(), s0.eta().clone()).unwrap();
        let report = s.validate();
        assert!(!report.valid);
        assert!((report.compat_phi - 1.0).abs() < 1e-15);
        assert_eq!(report.compat_xi, 0.0);
    }

    #[test]
    fn projectors_of_example() {
        let s = example_structure([2.0, -1.0]);
        let h = s.h_matrix();
        let v = s.v_matrix();
        let dim = s.dim();
        assert!(
            (&h - DMatrix::from_diagonal(&DVector::from_column_slice(&[0.0, 1.0, 1.0])))
                .abs()
                .max()
                < 1e-15
        );
        assert!(
            (&v - DMatrix::from_diagonal(&DVector::from_column_slice(&[1.0, 0.0, 0.0])))
                .abs()
                .max()
                < 1e-15
        );
        // algebraic identities h+v = I, hv = vh = 0, h^2 = h, v^2 = v
        assert!((&h + &v - DMatrix::identity(dim, dim)).abs().max() < TOL_STRUCT);
        assert!((&h * &v).abs().max() < TOL_STRUCT);
        assert!((&v * &h).abs().max() < TOL_STRUCT);
        assert!((&h * &h - &h).abs().max() < TOL_STRUCT);
        assert!((&v * &v - &v).abs().max() < TOL_STRUCT);
    }

    #[test]
    fn ell_split_of_metric() {
        let s = example_structure([1.0, 0.0]);
        let g = BilinearTensor::from_matrix(s.model().g());
        let (l1, l2, l3) = s.ell_split(&g).unwrap();
        let eta2 = s.eta_outer();
        assert!(l1.sub(&g.sub(&eta2)).max_abs() < TOL_STRUCT);
        assert!(l2.sub(&eta2).max_abs() < TOL_STRUCT);
        assert!(l3.max_abs() < TOL_STRUCT);
        // split sums back to the input
        assert!(l1.add(&l2).add(&l3).sub(&g).max_abs() < TOL_STRUCT);
    }

    #[test]
    fn ell_split_of_associated_metric_and_zero() {
        let s = example_structure([0.0, 1.0]);
        let gt = s.associated_metric();
        let (l1, l2, l3) = s.ell_split(&gt).unwrap();
        let eta2 = s.eta_outer();
        assert!(l1.sub(&gt.sub(&eta2)).max_abs() < TOL_STRUCT);
        assert!(l2.sub(&eta2).max_abs() < TOL_STRUCT);
        assert!(l3.max_abs() < TOL_STRUCT);

        let zero = BilinearTensor::zeros(3);
        let (z1, z2, z3) = s.ell_split(&zero).unwrap();
        assert_eq!(z1.max_abs(), 0.0);
        assert_eq!(z2.max_abs(), 0.0);
        assert_eq!(z3.max_abs(), 0.0);
    }

    #[test]
    fn associated_metric_of_example() {
        let s = example_structure([3.0, 2.0]);
        let gt = s.associated_metric();
        let expected = [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]];
        for (i, row) in expected.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert!((gt.get(i, j) - want).abs() < 1e-15);
            }
        }
        // signature (n+1, n) = (2, 1), and xi is unit for the associated metric
        assert_eq!(s.signature(&gt), (2, 1, 0));
        let gxi = gt.to_matrix() * s.xi();
        assert!((s.xi().dot(&gxi) - 1.0).abs() < 1e-15);
    }
}
