use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Component arrays disagree on the frame dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    /// A frame dimension that is not an odd integer >= 3.
    #[error("frame dimension must be odd and >= 3, got {0}")]
    BadDimension(usize),

    /// The metric failed the symmetric positive definite factorization.
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    /// The metric is not symmetric within tolerance.
    #[error("matrix is not symmetric: max |m_ij - m_ji| = {residual:.3e}")]
    NotSymmetric { residual: f64 },

    /// Structure constants violate the Jacobi identity.
    #[error(
        "Jacobi identity violated at (i,j,k,m) = ({:?}) with residual {residual:.3e}",
        worst
    )]
    JacobiViolation { worst: [usize; 4], residual: f64 },

    /// A structure whose axioms do not hold within tolerance.
    #[error("structure axioms violated: worst residual {residual:.3e}")]
    InvalidStructure { residual: f64 },

    /// A cubic tensor outside the admissible symmetry space.
    #[error(
        "symmetry violated at (i,j,k) = ({:?}) with residual {residual:.3e}",
        worst
    )]
    SymmetryViolation { worst: [usize; 3], residual: f64 },

    /// A basic-class index outside 1..=11.
    #[error("basic-class index must be in 1..=11, got {0}")]
    BadClassIndex(usize),

    /// A paracontact rank n < 1.
    #[error("n must be a positive integer, got {0}")]
    BadN(usize),

    /// An operation defined only for three-dimensional structures.
    #[error("operation requires dimension 3, got {0}")]
    NotDim3(usize),

    /// The frame is not an orthonormal phi-basis (xi = e0, phi e1 = e2).
    #[error("frame is not a phi-basis: residual {residual:.3e}")]
    NotPhiBasis { residual: f64 },

    /// `F - sum_i F_i` exceeded tolerance, so `F` lies outside the admissible space.
    #[error("decomposition residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    ResidualTooLarge { residual: f64, tol: f64 },

    /// A predicate or tensor that needs a connection was requested in raw-F mode.
    #[error("operation unsupported in this mode: {0}")]
    ModeUnsupported(&'static str),

    /// The symmetry projector failed to reach a fixed point.
    #[error("symmetry projection stalled with residual {residual:.3e}")]
    ProjectionStalled { residual: f64 },

    /// Example-family parameter vector of the wrong length.
    #[error("parameter vector must have length 2n = {expected}, got {got}")]
    BadParameterLength { expected: usize, got: usize },
}
