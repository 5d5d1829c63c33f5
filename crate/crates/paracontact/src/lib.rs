//! Pointwise tensor computations for almost paracontact almost paracomplex
//! Riemannian structures.
//!
//! Everything here works on frame components at a single point (or,
//! equivalently, on left-invariant data over a Lie group): a positive definite
//! metric `g`, an endomorphism `phi`, a Reeb vector `xi` and its dual 1-form
//! `eta` on an odd-dimensional space, subject to
//!
//! ```text
//! phi xi = 0,   phi^2 = I - eta (x) xi,   eta o phi = 0,   eta(xi) = 1,
//! tr phi = 0,   g(phi x, phi y) = g(x, y) - eta(x) eta(y),   g(x, xi) = eta(x).
//! ```
//!
//! The crate provides:
//!
//! * [`frame`] — dense (0,1)/(0,2)/(0,3)/(1,2) component tensors over a fixed
//!   frame, with metric-aware contraction and norms;
//! * [`structure`] — validation of the structure axioms, the projectors `h`/`v`,
//!   the `l1/l2/l3` splitting of bilinear tensors and the associated metric;
//! * [`connection`] — Lie structure constants, the Jacobi test, the Levi-Civita
//!   connection of a left-invariant metric via the Koszul equality, and the
//!   covariant derivatives of `phi`, `xi`, `eta`;
//! * [`classes`] — the fundamental tensor `F(x,y,z) = g((D_x phi)y, z)`, its Lee
//!   forms, the decomposition into the eleven basic classes `F1..F11`, class
//!   membership, the `F4'` subclass, the dimension-3 reduction and the
//!   subspace-dimension rank oracle;
//! * [`nijenhuis`] — the Nijenhuis tensors `N(1)..N(4)`, their associated
//!   (symmetric) counterparts, the reconstruction of `F` from the pair, and the
//!   structural predicates (normal, paracontact, para-Sasakian, Killing `xi`,
//!   closed `eta`, involutive distribution, geodesic `xi`-curves, integrable
//!   `phi`);
//! * [`gallery`] — a family of Lie-group examples in every odd dimension plus
//!   seeded random generators of valid structures;
//! * [`verify`] — the self-check suites behind `paracontact verify`.
//!
//! All values are immutable after construction and all operations are pure, so
//! everything can be shared freely across threads.

pub mod classes;
pub mod connection;
mod error;
pub mod frame;
pub mod gallery;
pub mod nijenhuis;
pub mod structure;
pub mod tol;
pub mod verify;

pub use classes::{
    classify, component, components_all, dim3_components, dim3_reconstruct, lee_forms,
    project_to_admissible, random_f, subspace_dim_formula, subspace_dim_numeric,
    subspace_dims_numeric, ClassReport, Dim3Components, FundamentalTensor, LeeForms,
};
pub use connection::{levi_civita, nabla_eta_xi, nabla_phi, Connection, LieAlgebraModel};
pub use error::Error;
pub use frame::{BilinearTensor, CovectorTensor, CubicTensor, FrameModel, Rank12Tensor};
pub use gallery::{random_structure, standard_structure, LieExample};
pub use nijenhuis::{
    assoc_nijenhuis, d_eta, d_eta_split, lie_derivative_g, nijenhuis, nijenhuis_from_connection,
    phi_brackets, predicates, reconstruct_f, AssocNijenhuisBundle, Flag, NijenhuisBundle,
    PredicateReport,
};
pub use structure::{ApapStructure, StructureReport};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
