//! The fundamental tensor `F(x,y,z) = g((D_x phi) y, z)`, its Lee forms, the
//! decomposition into the eleven basic classes, class membership, the `F4'`
//! subclass, the dimension-3 reduction, and the subspace-dimension oracle.
//!
//! The admissible space is the set of cubic tensors with
//!
//! ```text
//! F(x,y,z) = F(x,z,y)
//!          = -F(x, phi y, phi z) + eta(y) F(x, xi, z) + eta(z) F(x, y, xi),
//! ```
//!
//! which splits into eleven orthogonal invariant subspaces. Class membership is
//! decided by the g-induced norms of the component projections.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connection::{nabla_phi, Connection};
use crate::frame::{CovectorTensor, CubicTensor};
use crate::structure::ApapStructure;
use crate::tol::{TOL_CLASS, TOL_RANK, TOL_STRUCT};
use crate::{Error, Result};

/// A cubic tensor known to satisfy the admissible-space symmetries, together
/// with the structure it lives on.
#[derive(Debug, Clone)]
pub struct FundamentalTensor {
    f: CubicTensor,
    s: ApapStructure,
}

/// The three 1-forms traced out of `F`:
/// `theta(z) = g^ij F(h e_i, h e_j, z)`, `theta*(z) = g^ij F(e_i, phi e_j, z)`,
/// `omega(z) = F(xi, xi, z)`.
#[derive(Debug, Clone)]
pub struct LeeForms {
    pub theta: CovectorTensor,
    pub theta_star: CovectorTensor,
    pub omega: CovectorTensor,
}

/// Norms of the eleven component projections, the decomposition residual, the
/// membership set and the subclass flags.
#[derive(Debug, Clone)]
pub struct ClassReport {
    /// `|F_i|` for i = 1..=11, in order.
    pub norms: [f64; 11],
    /// `|F - sum_i F_i|`.
    pub residual: f64,
    /// Classes with `|F_i| > tol * max(1, |F|)`, ascending.
    pub members: Vec<usize>,
    pub is_f0: bool,
    pub is_f4_prime: bool,
    pub theta_xi: f64,
    pub theta_star_xi: f64,
    /// `|F|`.
    pub norm_f: f64,
}

/// Named scalars of the dimension-3 reduction in a phi-basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Dim3Components {
    pub theta_0: f64,
    pub theta_star_0: f64,
    pub theta_1: f64,
    pub theta_2: f64,
    pub omega_1: f64,
    pub omega_2: f64,
    pub lambda: f64,
    pub mu: f64,
    pub nu: f64,
}

impl FundamentalTensor {
    /// Wraps a cubic tensor after verifying both admissible-space symmetries.
    pub fn new(f: CubicTensor, s: ApapStructure) -> Result<Self> {
        if f.dim() != s.dim() {
            return Err(Error::DimMismatch {
                expected: s.dim(),
                got: f.dim(),
            });
        }
        let (residual, worst) = symmetry_residual(&f, &s);
        if residual > TOL_STRUCT {
            return Err(Error::SymmetryViolation { worst, residual });
        }
        Ok(Self { f, s })
    }

    /// `F_ijk = (Dphi)_ij^l g_lk` from a connection. For genuine structures the
    /// symmetries hold by construction; a violation signals inconsistent input.
    pub fn from_connection(conn: &Connection, s: &ApapStructure) -> Result<Self> {
        let dphi = nabla_phi(conn, s)?;
        let f = s.model().lower_rank12(&dphi)?;
        Self::new(f, s.clone())
    }

    pub fn tensor(&self) -> &CubicTensor {
        &self.f
    }

    pub fn structure(&self) -> &ApapStructure {
        &self.s
    }

    pub fn dim(&self) -> usize {
        self.s.dim()
    }

    pub fn norm(&self) -> f64 {
        self.s.model().cubic_norm(&self.f).expect("consistent dims")
    }

    /// Worst residual over both symmetry invariants.
    pub fn symmetry_residuals(&self) -> f64 {
        symmetry_residual(&self.f, &self.s).0
    }

    /// `F(x, y, z)` for component vectors.
    pub fn eval(&self, x: &DVector<f64>, y: &DVector<f64>, z: &DVector<f64>) -> f64 {
        let d = self.dim();
        let mut acc = 0.0;
        for i in 0..d {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                if y[j] == 0.0 {
                    continue;
                }
                for k in 0..d {
                    acc += x[i] * y[j] * z[k] * self.f.get(i, j, k);
                }
            }
        }
        acc
    }
}

/// Last-two-slot symmetry plus phi-relation residual, with the worst triple.
fn symmetry_residual(f: &CubicTensor, s: &ApapStructure) -> (f64, [usize; 3]) {
    let d = f.dim();
    let r = phi_relation(f, s);
    let mut worst = 0.0;
    let mut at = [0usize; 3];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let sym = (f.get(i, j, k) - f.get(i, k, j)).abs();
                let rel = (f.get(i, j, k) - r.get(i, j, k)).abs();
                let v = sym.max(rel);
                if v > worst {
                    worst = v;
                    at = [i, j, k];
                }
            }
        }
    }
    (worst, at)
}

/// The right side of the phi-relation:
/// `R(T)(x,y,z) = -T(x, phi y, phi z) + eta(y) T(x, xi, z) + eta(z) T(x, y, xi)`.
fn phi_relation(t: &CubicTensor, s: &ApapStructure) -> CubicTensor {
    let d = t.dim();
    let phi = s.phi();
    let xi = s.xi();
    let eta = s.eta();
    // T(x, xi, z) and T(x, y, xi) contractions
    let txi_mid = DMatrix::from_fn(d, d, |i, k| {
        (0..d).map(|b| t.get(i, b, k) * xi[b]).sum::<f64>()
    });
    let txi_last = DMatrix::from_fn(d, d, |i, j| {
        (0..d).map(|c| t.get(i, j, c) * xi[c]).sum::<f64>()
    });
    let tphiphi = t.transform_slot(phi, 1).transform_slot(phi, 2);
    CubicTensor::from_fn(d, |i, j, k| {
        -tphiphi.get(i, j, k) + eta[j] * txi_mid[(i, k)] + eta[k] * txi_last[(i, j)]
    })
}

/// Projects an arbitrary cubic tensor onto the admissible symmetry space:
/// the last two slots are symmetrized, the `(·, xi, xi)` part is removed, and
/// the phi-relation average `T <- (T + R(T))/2` is iterated to a fixed point
/// (at most 3 rounds; one suffices in exact arithmetic).
pub fn project_to_admissible(t: &CubicTensor, s: &ApapStructure) -> Result<CubicTensor> {
    let d = t.dim();
    if d != s.dim() {
        return Err(Error::DimMismatch {
            expected: s.dim(),
            got: d,
        });
    }
    let xi = s.xi();
    let eta = s.eta();
    let mut cur = CubicTensor::from_fn(d, |i, j, k| 0.5 * (t.get(i, j, k) + t.get(i, k, j)));
    // remove the (x, xi, xi) component; the averaging map scales it by 3/2,
    // so it must be exactly zero before iterating
    let xixi = DVector::from_fn(d, |i, _| {
        let mut acc = 0.0;
        for a in 0..d {
            for b in 0..d {
                acc += cur.get(i, a, b) * xi[a] * xi[b];
            }
        }
        acc
    });
    cur = CubicTensor::from_fn(d, |i, j, k| cur.get(i, j, k) - eta[j] * eta[k] * xixi[i]);
    let mut residual = f64::INFINITY;
    for _ in 0..3 {
        let r = phi_relation(&cur, s);
        cur = cur.add(&r).scale(0.5);
        cur = CubicTensor::from_fn(d, |i, j, k| 0.5 * (cur.get(i, j, k) + cur.get(i, k, j)));
        residual = symmetry_residual(&cur, s).0;
        if residual <= TOL_STRUCT {
            return Ok(cur);
        }
    }
    Err(Error::ProjectionStalled { residual })
}

/// Seeded random tensor in the admissible space.
pub fn random_f(s: &ApapStructure, seed: u64) -> Result<FundamentalTensor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = s.dim();
    let raw = CubicTensor::from_fn(d, |_, _, _| rng.gen_range(-1.0..1.0));
    let projected = project_to_admissible(&raw, s)?;
    FundamentalTensor::new(projected, s.clone())
}

/// Lee forms of `F`.
pub fn lee_forms(f: &FundamentalTensor) -> LeeForms {
    let s = f.structure();
    let d = s.dim();
    let h = s.h_matrix();
    let g_inv = s.model().g_inv();
    let phi = s.phi();
    let xi = s.xi();
    let t = f.tensor();
    // horizontal co-metric h g^-1 h^T and the mixed trace matrix g^-1 phi^T
    let m_theta = &h * g_inv * h.transpose();
    let m_star = g_inv * phi.transpose();
    let mut theta = vec![0.0; d];
    let mut theta_star = vec![0.0; d];
    let mut omega = vec![0.0; d];
    for k in 0..d {
        for a in 0..d {
            for b in 0..d {
                let v = t.get(a, b, k);
                theta[k] += m_theta[(a, b)] * v;
                theta_star[k] += m_star[(a, b)] * v;
                omega[k] += xi[a] * xi[b] * v;
            }
        }
    }
    LeeForms {
        theta: CovectorTensor::from_fn(d, |i| theta[i]),
        theta_star: CovectorTensor::from_fn(d, |i| theta_star[i]),
        omega: CovectorTensor::from_fn(d, |i| omega[i]),
    }
}

impl LeeForms {
    /// Residuals of the identities `omega(xi) = 0` and
    /// `theta* o phi = -theta o phi^2`.
    pub fn identity_residuals(&self, s: &ApapStructure) -> (f64, f64) {
        let omega_xi = self.omega.pair(s.xi()).abs();
        let d = s.dim();
        let phi = s.phi();
        let h = s.h_matrix();
        let mut worst = 0.0f64;
        for k in 0..d {
            let lhs: f64 = (0..d).map(|a| self.theta_star.get(a) * phi[(a, k)]).sum();
            let rhs: f64 = -(0..d).map(|a| self.theta.get(a) * h[(a, k)]).sum::<f64>();
            worst = worst.max((lhs - rhs).abs());
        }
        (omega_xi, worst)
    }
}

/// Shared contractions used by the component formulas.
struct ComponentCtx {
    d: usize,
    n: f64,
    eta: DVector<f64>,
    g_phiphi: DMatrix<f64>,
    g_phi: DMatrix<f64>,
    theta_h: Vec<f64>,
    theta_phi: Vec<f64>,
    theta_xi: f64,
    theta_star_xi: f64,
    omega: CovectorTensor,
    h3: CubicTensor,
    p1: CubicTensor,
    b: DMatrix<f64>,
    c: DMatrix<f64>,
    dmat: DMatrix<f64>,
}

impl ComponentCtx {
    fn new(f: &FundamentalTensor) -> Self {
        let s = f.structure();
        let d = s.dim();
        let phi = s.phi();
        let h = s.h_matrix();
        let g = s.model().g();
        let xi = s.xi();
        let lee = lee_forms(f);
        let t = f.tensor();

        let g_phiphi = phi.transpose() * g * phi;
        let g_phi = g * phi;
        let theta_h: Vec<f64> = (0..d)
            .map(|k| (0..d).map(|a| lee.theta.get(a) * h[(a, k)]).sum())
            .collect();
        let theta_phi: Vec<f64> = (0..d)
            .map(|k| (0..d).map(|a| lee.theta.get(a) * phi[(a, k)]).sum())
            .collect();
        let theta_xi = lee.theta.pair(xi);
        let theta_star_xi = lee.theta_star.pair(xi);

        let h3 = t
            .transform_slot(&h, 0)
            .transform_slot(&h, 1)
            .transform_slot(&h, 2);
        let p1 = t
            .transform_slot(phi, 0)
            .transform_slot(phi, 1)
            .transform_slot(&h, 2);
        // F(·,·,xi) contracted, then pulled back through h or phi in both slots
        let fxi = DMatrix::from_fn(d, d, |a, b| (0..d).map(|c| t.get(a, b, c) * xi[c]).sum());
        let b = h.transpose() * &fxi * &h;
        let c = phi.transpose() * &fxi * phi;
        // F(xi, h·, h·)
        let f0 = DMatrix::from_fn(d, d, |bq, cq| {
            (0..d).map(|a| xi[a] * t.get(a, bq, cq)).sum()
        });
        let dmat = h.transpose() * &f0 * &h;

        Self {
            d,
            n: s.n() as f64,
            eta: s.eta().clone(),
            g_phiphi,
            g_phi,
            theta_h,
            theta_phi,
            theta_xi,
            theta_star_xi,
            omega: lee.omega,
            h3,
            p1,
            b,
            c,
            dmat,
        }
    }

    fn class(&self, class: usize) -> CubicTensor {
        let d = self.d;
        let two_n = 2.0 * self.n;
        match class {
            1 => CubicTensor::from_fn(d, |i, j, k| {
                (self.g_phiphi[(i, j)] * self.theta_h[k] + self.g_phiphi[(i, k)] * self.theta_h[j]
                    - self.g_phi[(i, j)] * self.theta_phi[k]
                    - self.g_phi[(i, k)] * self.theta_phi[j])
                    / two_n
            }),
            2 => {
                let f1 = self.class(1);
                CubicTensor::from_fn(d, |i, j, k| {
                    0.25 * (2.0 * self.h3.get(i, j, k)
                        + self.h3.get(j, k, i)
                        + self.h3.get(k, i, j)
                        - self.p1.get(j, k, i)
                        - self.p1.get(k, j, i))
                        - f1.get(i, j, k)
                })
            }
            3 => CubicTensor::from_fn(d, |i, j, k| {
                0.25 * (2.0 * self.h3.get(i, j, k) - self.h3.get(j, k, i) - self.h3.get(k, i, j)
                    + self.p1.get(j, k, i)
                    + self.p1.get(k, j, i))
            }),
            4 => CubicTensor::from_fn(d, |i, j, k| {
                self.theta_xi / two_n
                    * (self.g_phiphi[(i, j)] * self.eta[k] + self.g_phiphi[(i, k)] * self.eta[j])
            }),
            5 => CubicTensor::from_fn(d, |i, j, k| {
                self.theta_star_xi / two_n
                    * (self.g_phi[(i, j)] * self.eta[k] + self.g_phi[(i, k)] * self.eta[j])
            }),
            6 => {
                let f4 = self.class(4);
                let f5 = self.class(5);
                CubicTensor::from_fn(d, |i, j, k| {
                    let sym = |p: usize, q: usize| {
                        self.b[(p, q)] + self.b[(q, p)] + self.c[(p, q)] + self.c[(q, p)]
                    };
                    0.25 * (sym(i, j) * self.eta[k] + sym(i, k) * self.eta[j])
                        - f4.get(i, j, k)
                        - f5.get(i, j, k)
                })
            }
            7 => CubicTensor::from_fn(d, |i, j, k| {
                let part = |p: usize, q: usize| {
                    self.b[(p, q)] - self.b[(q, p)] + self.c[(p, q)] - self.c[(q, p)]
                };
                0.25 * (part(i, j) * self.eta[k] + part(i, k) * self.eta[j])
            }),
            8 => CubicTensor::from_fn(d, |i, j, k| {
                let part = |p: usize, q: usize| {
                    self.b[(p, q)] + self.b[(q, p)] - self.c[(p, q)] - self.c[(q, p)]
                };
                0.25 * (part(i, j) * self.eta[k] + part(i, k) * self.eta[j])
            }),
            9 => CubicTensor::from_fn(d, |i, j, k| {
                let part = |p: usize, q: usize| {
                    self.b[(p, q)] - self.b[(q, p)] - self.c[(p, q)] + self.c[(q, p)]
                };
                0.25 * (part(i, j) * self.eta[k] + part(i, k) * self.eta[j])
            }),
            10 => CubicTensor::from_fn(d, |i, j, k| self.eta[i] * self.dmat[(j, k)]),
            11 => CubicTensor::from_fn(d, |i, j, k| {
                self.eta[i] * (self.eta[j] * self.omega.get(k) + self.eta[k] * self.omega.get(j))
            }),
            _ => unreachable!("class index checked by callers"),
        }
    }
}

/// The i-th basic-class component of `F`, i in 1..=11.
pub fn component(f: &FundamentalTensor, class: usize) -> Result<CubicTensor> {
    if !(1..=11).contains(&class) {
        return Err(Error::BadClassIndex(class));
    }
    Ok(ComponentCtx::new(f).class(class))
}

/// All eleven components, sharing the contraction work.
pub fn components_all(f: &FundamentalTensor) -> [CubicTensor; 11] {
    let ctx = ComponentCtx::new(f);
    std::array::from_fn(|i| ctx.class(i + 1))
}

/// The `F4'` tensor of a structure:
/// `-g(phi x, phi y) eta(z) - g(phi x, phi z) eta(y)`.
pub fn f4_prime_tensor(s: &ApapStructure) -> CubicTensor {
    let d = s.dim();
    let phi = s.phi();
    let g = s.model().g();
    let eta = s.eta();
    let g_phiphi = phi.transpose() * g * phi;
    CubicTensor::from_fn(d, |i, j, k| {
        -g_phiphi[(i, j)] * eta[k] - g_phiphi[(i, k)] * eta[j]
    })
}

/// Norms, residual, membership and subclass flags of `F`.
pub fn classify(f: &FundamentalTensor) -> Result<ClassReport> {
    let s = f.structure();
    let model = s.model();
    let comps = components_all(f);
    let norm_f = f.norm();
    let scale = norm_f.max(1.0);
    let mut norms = [0.0f64; 11];
    let mut sum = CubicTensor::zeros(f.dim());
    for (i, c) in comps.iter().enumerate() {
        norms[i] = model.cubic_norm(c)?;
        sum = sum.add(c);
    }
    let residual = model.cubic_norm(&f.tensor().sub(&sum))?;
    if residual > TOL_CLASS * scale {
        return Err(Error::ResidualTooLarge {
            residual,
            tol: TOL_CLASS * scale,
        });
    }
    let members: Vec<usize> = (1..=11)
        .filter(|&i| norms[i - 1] > TOL_CLASS * scale)
        .collect();
    let is_f0 = members.is_empty();
    let lee = lee_forms(f);
    let theta_xi = lee.theta.pair(s.xi());
    let theta_star_xi = lee.theta_star.pair(s.xi());
    // F4' is the theta(xi) = -2n slice of pure F4; F = 0 is excluded
    let two_n = 2.0 * s.n() as f64;
    let is_f4_prime = members == vec![4]
        && (theta_xi + two_n).abs() <= TOL_CLASS
        && model.cubic_norm(&comps[3].sub(&f4_prime_tensor(s)))? <= TOL_CLASS * scale;
    Ok(ClassReport {
        norms,
        residual,
        members,
        is_f0,
        is_f4_prime,
        theta_xi,
        theta_star_xi,
        norm_f,
    })
}

/// Closed-form dimension of the i-th subspace at paracontact rank n.
pub fn subspace_dim_formula(n: usize, class: usize) -> Result<usize> {
    if n < 1 {
        return Err(Error::BadN(n));
    }
    match class {
        1 | 11 => Ok(2 * n),
        2 => Ok(n * (n - 1) * (n + 2)),
        3 => Ok(n * n * (n - 1)),
        4 | 5 => Ok(1),
        6 => Ok((n - 1) * (n + 2)),
        7 => Ok(n * (n - 1)),
        8..=10 => Ok(n * n),
        _ => Err(Error::BadClassIndex(class)),
    }
}

/// Spanning family of the admissible space: every elementary basis tensor
/// pushed through the symmetry projector.
fn projected_basis(s: &ApapStructure) -> Result<Vec<FundamentalTensor>> {
    let d = s.dim();
    let mut out = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut e = CubicTensor::zeros(d);
                e.set(i, j, k, 1.0);
                let p = project_to_admissible(&e, s)?;
                out.push(FundamentalTensor::new(p, s.clone())?);
            }
        }
    }
    Ok(out)
}

fn numerical_rank(columns: &[CubicTensor], d: usize) -> usize {
    if columns.is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(d * d * d, columns.len(), |r, c| columns[c].data()[r]);
    let svals = m.singular_values();
    let smax = svals.max();
    svals
        .iter()
        .filter(|&&v| v > TOL_RANK * smax.max(1.0))
        .count()
}

/// Numerical dimension of the i-th subspace: rank of the projected basis
/// family mapped through the i-th component projection.
pub fn subspace_dim_numeric(s: &ApapStructure, class: usize) -> Result<usize> {
    if !(1..=11).contains(&class) {
        return Err(Error::BadClassIndex(class));
    }
    let basis = projected_basis(s)?;
    let cols: Vec<CubicTensor> = basis
        .iter()
        .map(|f| component(f, class))
        .collect::<Result<_>>()?;
    Ok(numerical_rank(&cols, s.dim()))
}

/// All eleven numerical subspace dimensions plus the rank of the full
/// admissible space, sharing the projected basis.
pub fn subspace_dims_numeric(s: &ApapStructure) -> Result<([usize; 11], usize)> {
    let basis = projected_basis(s)?;
    let d = s.dim();
    let mut dims = [0usize; 11];
    let all: Vec<[CubicTensor; 11]> = basis.iter().map(components_all).collect();
    for class in 1..=11 {
        let cols: Vec<CubicTensor> = all.iter().map(|c| c[class - 1].clone()).collect();
        dims[class - 1] = numerical_rank(&cols, d);
    }
    let full_cols: Vec<CubicTensor> = basis.iter().map(|f| f.tensor().clone()).collect();
    let full = numerical_rank(&full_cols, d);
    Ok((dims, full))
}

fn phi_basis_residual(s: &ApapStructure) -> f64 {
    let mut swap = DMatrix::zeros(3, 3);
    swap[(1, 2)] = 1.0;
    swap[(2, 1)] = 1.0;
    let e0 = DVector::from_column_slice(&[1.0, 0.0, 0.0]);
    let mut worst = (s.model().g() - DMatrix::identity(3, 3)).abs().max();
    worst = worst.max((s.phi() - swap).abs().max());
    worst = worst.max((s.xi() - &e0).abs().max());
    worst = worst.max((s.eta() - &e0).abs().max());
    worst
}

/// The nine scalars of the dimension-3 reduction. Requires a phi-basis
/// (`xi = e0`, `phi e1 = e2`, orthonormal `g`).
///
/// `lambda`, `mu`, `nu` antisymmetrize their index pairs so the extraction is
/// total on the whole admissible space and agrees with the pure-class values.
pub fn dim3_components(f: &FundamentalTensor) -> Result<Dim3Components> {
    let s = f.structure();
    if s.dim() != 3 {
        return Err(Error::NotDim3(s.dim()));
    }
    let residual = phi_basis_residual(s);
    if residual > TOL_STRUCT {
        return Err(Error::NotPhiBasis { residual });
    }
    let lee = lee_forms(f);
    let t = f.tensor();
    Ok(Dim3Components {
        theta_0: lee.theta.get(0),
        theta_star_0: lee.theta_star.get(0),
        theta_1: lee.theta.get(1),
        theta_2: lee.theta.get(2),
        omega_1: lee.omega.get(1),
        omega_2: lee.omega.get(2),
        lambda: 0.5 * (t.get(1, 1, 0) - t.get(2, 2, 0)),
        mu: 0.5 * (t.get(1, 2, 0) - t.get(2, 1, 0)),
        nu: 0.5 * (t.get(0, 1, 1) - t.get(0, 2, 2)),
    })
}

/// Rebuilds the cubic tensor from the nine dimension-3 scalars.
pub fn dim3_reconstruct(c: &Dim3Components) -> CubicTensor {
    let mut f = CubicTensor::zeros(3);
    let mut add = |i: usize, j: usize, k: usize, v: f64| {
        f.set(i, j, k, f.get(i, j, k) + v);
    };
    // F1: (x^1 th1 - x^2 th2)(y^1 z^1 - y^2 z^2)
    for (i, ci) in [(1, c.theta_1), (2, -c.theta_2)] {
        add(i, 1, 1, ci);
        add(i, 2, 2, -ci);
    }
    // F4, F5, F8, F9: vertical pairs on (y,z)
    for (i, jk, v) in [
        (1, (0, 1), 0.5 * c.theta_0),
        (2, (0, 2), 0.5 * c.theta_0),
        (1, (0, 2), 0.5 * c.theta_star_0),
        (2, (0, 1), 0.5 * c.theta_star_0),
        (1, (0, 1), c.lambda),
        (2, (0, 2), -c.lambda),
        (1, (0, 2), c.mu),
        (2, (0, 1), -c.mu),
    ] {
        add(i, jk.0, jk.1, v);
        add(i, jk.1, jk.0, v);
    }
    // F10: nu x^0 (y^1 z^1 - y^2 z^2)
    add(0, 1, 1, c.nu);
    add(0, 2, 2, -c.nu);
    // F11: x^0 { om1 (y^0 z^1 + y^1 z^0) + om2 (y^0 z^2 + y^2 z^0) }
    add(0, 0, 1, c.omega_1);
    add(0, 1, 0, c.omega_1);
    add(0, 0, 2, c.omega_2);
    add(0, 2, 0, c.omega_2);
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::levi_civita;
    use crate::gallery::{random_structure, LieExample};

    fn example_f(a: [f64; 2]) -> FundamentalTensor {
        let (alg, s) = LieExample::new(1, a.to_vec()).unwrap().build().unwrap();
        let conn = levi_civita(&alg, s.model()).unwrap();
        FundamentalTensor::from_connection(&conn, &s).unwrap()
    }

    /// The closed-form F of the example family for arbitrary vectors.
    fn example_closed_form(a1: f64, a2: f64) -> CubicTensor {
        let mut f = CubicTensor::zeros(3);
        for (i, j, k, v) in [
            (1, 0, 1, -a2),
            (1, 1, 0, -a2),
            (2, 0, 2, -a2),
            (2, 2, 0, -a2),
            (1, 0, 2, -a1),
            (1, 2, 0, -a1),
            (2, 0, 1, a1),
            (2, 1, 0, a1),
        ] {
            f.set(i, j, k, v);
        }
        f
    }

    #[test]
    fn f_components_of_example() {
        let f = example_f([3.0, -2.0]);
        assert!(f.tensor().sub(&example_closed_form(3.0, -2.0)).max_abs() < 1e-14);
        // flat case
        let f0 = example_f([0.0, 0.0]);
        assert_eq!(f0.tensor().max_abs(), 0.0);
    }

    #[test]
    fn example_f_norm_is_sqrt8_at_unit_parameters() {
        // eight entries of magnitude one
        let f = example_f([1.0, 1.0]);
        assert!((f.norm() - 8.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn lee_forms_of_example() {
        let f = example_f([5.0, 4.0]);
        let lee = lee_forms(&f);
        assert!((lee.theta.get(0) + 8.0).abs() < 1e-13);
        assert!(lee.theta.get(1).abs() < 1e-13);
        assert!(lee.theta.get(2).abs() < 1e-13);
        assert!(lee.theta_star.max_abs() < 1e-13);
        assert!(lee.omega.max_abs() < 1e-13);
        let (r1, r2) = lee.identity_residuals(f.structure());
        assert!(r1 < 1e-13 && r2 < 1e-13);
    }

    #[test]
    fn components_of_example_at_unit_parameters() {
        let f = example_f([1.0, 1.0]);
        let comps = components_all(&f);
        // F4 with theta_0 = -2: entries -1 on the F4 slots
        let f4_expected = example_closed_form(0.0, 1.0);
        let f9_expected = example_closed_form(1.0, 0.0);
        assert!(comps[3].sub(&f4_expected).max_abs() < 1e-13);
        assert!(comps[8].sub(&f9_expected).max_abs() < 1e-13);
        for (i, c) in comps.iter().enumerate() {
            if i != 3 && i != 8 {
                assert!(c.max_abs() < 1e-13, "class {} should vanish", i + 1);
            }
        }
        // distinct components are orthogonal
        let ip = f
            .structure()
            .model()
            .cubic_inner(&comps[3], &comps[8])
            .unwrap();
        assert!(ip.abs() < 1e-13);
    }

    #[test]
    fn classification_of_example_grid() {
        for a in [
            [1.0, 1.0],
            [0.0, 1.0],
            [1.0, 0.0],
            [0.0, 0.0],
            [-2.0, 3.0],
            [0.0, -1.0],
            [5.0, 0.0],
        ] {
            let expected = LieExample::new(1, a.to_vec())
                .unwrap()
                .expected_class()
                .unwrap();
            let report = classify(&example_f(a)).unwrap();
            assert_eq!(report.members, expected, "parameters {a:?}");
        }
        let r01 = classify(&example_f([0.0, 1.0])).unwrap();
        assert!(r01.is_f4_prime);
        assert!((r01.theta_xi + 2.0).abs() < 1e-13);
        let r02 = classify(&example_f([0.0, 2.0])).unwrap();
        assert!(!r02.is_f4_prime);
        assert!((r02.theta_xi + 4.0).abs() < 1e-13);
        let r00 = classify(&example_f([0.0, 0.0])).unwrap();
        assert!(r00.is_f0);
        assert_eq!(r00.residual, 0.0);
    }

    #[test]
    fn random_f_satisfies_symmetries_and_reconstructs() {
        let s = random_structure(5, 7).unwrap();
        let f = random_f(&s, 42).unwrap();
        assert!(f.symmetry_residuals() < TOL_STRUCT);
        let comps = components_all(&f);
        let mut sum = CubicTensor::zeros(5);
        for c in &comps {
            sum = sum.add(c);
        }
        let resid = s.model().cubic_norm(&f.tensor().sub(&sum)).unwrap();
        assert!(resid < 1e-10 * f.norm().max(1.0));
    }

    #[test]
    fn random_f_dim3_stays_in_surviving_classes() {
        let (_, s) = LieExample::new(1, vec![0.0, 0.0]).unwrap().build().unwrap();
        let f = random_f(&s, 42).unwrap();
        let report = classify(&f).unwrap();
        for m in &report.members {
            assert!([1, 4, 5, 8, 9, 10, 11].contains(m), "class {m} at dim 3");
        }
    }

    #[test]
    fn subspace_dimension_formulas() {
        let n1: Vec<usize> = (1..=11)
            .map(|i| subspace_dim_formula(1, i).unwrap())
            .collect();
        assert_eq!(n1, vec![2, 0, 0, 1, 1, 0, 0, 1, 1, 1, 2]);
        assert_eq!(n1.iter().sum::<usize>(), 9);
        let n2: Vec<usize> = (1..=11)
            .map(|i| subspace_dim_formula(2, i).unwrap())
            .collect();
        assert_eq!(n2, vec![4, 8, 4, 1, 1, 4, 2, 4, 4, 4, 4]);
        assert_eq!(n2.iter().sum::<usize>(), 40);
        let n3: Vec<usize> = (1..=11)
            .map(|i| subspace_dim_formula(3, i).unwrap())
            .collect();
        assert_eq!(n3, vec![6, 30, 18, 1, 1, 10, 6, 9, 9, 9, 6]);
        assert!(subspace_dim_formula(0, 1).is_err());
        assert!(subspace_dim_formula(1, 12).is_err());
    }

    #[test]
    fn numeric_ranks_match_formula_at_n1() {
        let (_, s) = LieExample::new(1, vec![1.0, 2.0]).unwrap().build().unwrap();
        let (dims, full) = subspace_dims_numeric(&s).unwrap();
        assert_eq!(dims, [2, 0, 0, 1, 1, 0, 0, 1, 1, 1, 2]);
        assert_eq!(full, 9);
        assert_eq!(subspace_dim_numeric(&s, 2).unwrap(), 0);
    }

    #[test]
    fn dim3_scalars_of_example() {
        let f = example_f([4.0, -3.0]);
        let c = dim3_components(&f).unwrap();
        assert!((c.theta_0 - 6.0).abs() < 1e-13); // -2 a2
        assert!((c.mu + 4.0).abs() < 1e-13); // -a1
        for v in [
            c.theta_star_0,
            c.theta_1,
            c.theta_2,
            c.omega_1,
            c.omega_2,
            c.lambda,
            c.nu,
        ] {
            assert!(v.abs() < 1e-13);
        }
        // closed-form reconstruction reproduces F
        let rebuilt = dim3_reconstruct(&c);
        assert!(rebuilt.sub(f.tensor()).max_abs() < 1e-13);
    }

    #[test]
    fn dim3_reconstruction_on_random_tensors() {
        let (_, s) = LieExample::new(1, vec![0.0, 0.0]).unwrap().build().unwrap();
        for seed in 0..20 {
            let f = random_f(&s, seed).unwrap();
            let c = dim3_components(&f).unwrap();
            let rebuilt = dim3_reconstruct(&c);
            let resid = s.model().cubic_norm(&rebuilt.sub(f.tensor())).unwrap();
            assert!(resid < 1e-10 * f.norm().max(1.0), "seed {seed}");
        }
    }

    #[test]
    fn dim3_lee_forms_reduce_to_component_traces() {
        // in a phi-basis: theta_0 = F110 + F220, theta*_0 = F120 + F210,
        // theta_1 = F111, theta_2 = F222, omega_i = F00i
        let (_, s) = LieExample::new(1, vec![0.0, 0.0]).unwrap().build().unwrap();
        for seed in 0..10 {
            let f = random_f(&s, seed).unwrap();
            let t = f.tensor();
            let lee = lee_forms(&f);
            assert!((lee.theta.get(0) - (t.get(1, 1, 0) + t.get(2, 2, 0))).abs() < 1e-12);
            assert!((lee.theta_star.get(0) - (t.get(1, 2, 0) + t.get(2, 1, 0))).abs() < 1e-12);
            assert!((lee.theta.get(1) - t.get(1, 1, 1)).abs() < 1e-12);
            assert!((lee.theta.get(2) - t.get(2, 2, 2)).abs() < 1e-12);
            assert!((lee.omega.get(1) - t.get(0, 0, 1)).abs() < 1e-12);
            assert!((lee.omega.get(2) - t.get(0, 0, 2)).abs() < 1e-12);
        }
    }

    #[test]
    fn dim3_requires_phi_basis() {
        let s = random_structure(3, 3).unwrap();
        let f = random_f(&s, 1).unwrap();
        assert!(matches!(
            dim3_components(&f),
            Err(Error::NotPhiBasis { .. })
        ));
        let s5 = random_structure(5, 3).unwrap();
        let f5 = random_f(&s5, 1).unwrap();
        assert!(matches!(dim3_components(&f5), Err(Error::NotDim3(5))));
    }

    #[test]
    fn bad_class_index_is_rejected() {
        let f = example_f([1.0, 1.0]);
        assert!(matches!(component(&f, 0), Err(Error::BadClassIndex(0))));
        assert!(matches!(component(&f, 12), Err(Error::BadClassIndex(12))));
    }

    #[test]
    fn non_admissible_tensor_is_rejected() {
        let (_, s) = LieExample::new(1, vec![0.0, 0.0]).unwrap().build().unwrap();
        let mut bad = CubicTensor::zeros(3);
        bad.set(0, 1, 2, 1.0); // not symmetric in the last two slots
        assert!(matches!(
            FundamentalTensor::new(bad, s),
            Err(Error::SymmetryViolation { .. })
        ));
    }
}
