//! The two Nijenhuis tensor families, their ingredient tensors, the
//! reconstruction of `F` from the pair, and the structural predicates.
//!
//! The antisymmetric family comes from the commutator:
//!
//! ```text
//! N(x,y)    = [phi,phi](x,y) - d eta(x,y) xi,
//! N2(x,y)   = (L_{phi x} eta)(y) - (L_{phi y} eta)(x),
//! N3(x)     = (L_xi phi)(x),       N4(x) = (L_xi eta)(x),
//! ```
//!
//! and the symmetric (associated) family from the anticommutator
//! `{x,y} = D_x y + D_y x`:
//!
//! ```text
//! N^(x,y)   = {phi,phi}(x,y) - (L_xi g)(x,y) xi,
//! N^2(x,y)  = (L_xi g)(phi x, y) + (L_xi g)(x, phi y),
//! N^3(x)    = {phi x, xi} - phi {x, xi},    N^4(x) = (L_xi g)(x, xi).
//! ```
//!
//! Both families are also expressible through the fundamental tensor alone,
//! which is what the raw-F entry points compute; the connection-backed route
//! exists so the two can be checked against each other.

use nalgebra::{DMatrix, DVector};

use crate::classes::{classify, f4_prime_tensor, FundamentalTensor};
use crate::connection::{nabla_eta_xi, Connection};
use crate::frame::{BilinearTensor, CovectorTensor, CubicTensor, Rank12Tensor};
use crate::structure::ApapStructure;
use crate::tol::TOL_CLASS;
use crate::{Error, Result};

/// The four tensors of the antisymmetric family, in metric-level components.
#[derive(Debug, Clone)]
pub struct NijenhuisBundle {
    pub n1: CubicTensor,
    pub n2: BilinearTensor,
    pub n3: BilinearTensor,
    pub n4: CovectorTensor,
}

/// The four tensors of the symmetric (associated) family.
#[derive(Debug, Clone)]
pub struct AssocNijenhuisBundle {
    pub n1: CubicTensor,
    pub n2: BilinearTensor,
    pub n3: BilinearTensor,
    pub n4: CovectorTensor,
}

/// One structural predicate: whether its defining residual vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flag {
    pub holds: bool,
    pub residual: f64,
}

/// All structural predicates. Connection-dependent flags are `None`
/// (indeterminate, not false) when no connection is available.
#[derive(Debug, Clone)]
pub struct PredicateReport {
    /// `N(1) = 0`
    pub normal: Flag,
    /// `2 g(x, phi y) = (L_xi g)(x, y)`
    pub paracontact: Flag,
    /// `D_x xi = phi x` (needs a connection; cross-checked against the
    /// `F4'`-class characterization when both are available)
    pub para_sasakian: Option<Flag>,
    /// `L_xi g = 0`
    pub killing_xi: Flag,
    /// `d eta = 0`
    pub eta_closed: Flag,
    /// `l1(d eta) = 0`: the paracontact distribution is involutive
    pub h_involutive: Flag,
    /// `l3(d eta) = 0`: integral curves of `xi` are geodesics
    pub xi_geodesic: Flag,
    /// `[phi, phi] = 0` (needs a connection)
    pub phi_integrable: Option<Flag>,
}

/// `F(e_i, phi e_j, xi)`, the contraction both Lie-derivative tensors of the
/// metric are built from.
fn f_phi_xi(f: &FundamentalTensor) -> DMatrix<f64> {
    let s = f.structure();
    let d = s.dim();
    let phi = s.phi();
    let xi = s.xi();
    let t = f.tensor();
    DMatrix::from_fn(d, d, |i, j| {
        let mut acc = 0.0;
        for b in 0..d {
            for c in 0..d {
                acc += phi[(b, j)] * xi[c] * t.get(i, b, c);
            }
        }
        acc
    })
}

/// `(L_xi g)(x, y) = -F(x, phi y, xi) - F(y, phi x, xi)`.
pub fn lie_derivative_g(f: &FundamentalTensor) -> BilinearTensor {
    let m = f_phi_xi(f);
    BilinearTensor::from_matrix(&(-(&m + m.transpose())))
}

/// `d eta(x, y) = -F(x, phi y, xi) + F(y, phi x, xi)`.
pub fn d_eta(f: &FundamentalTensor) -> BilinearTensor {
    let m = f_phi_xi(f);
    BilinearTensor::from_matrix(&(m.transpose() - &m))
}

/// `d eta` together with its `l1` and `l3` parts (`l2` vanishes identically).
pub fn d_eta_split(
    f: &FundamentalTensor,
) -> Result<(BilinearTensor, BilinearTensor, BilinearTensor)> {
    let de = d_eta(f);
    let (l1, _, l3) = f.structure().ell_split(&de)?;
    Ok((de, l1, l3))
}

/// Shared contractions of `F` used by both bundle computations.
struct BundleCtx {
    d: usize,
    eta: DVector<f64>,
    /// `F(phi x, y, z)`
    a: CubicTensor,
    /// `F(x, y, phi z)`
    b3: CubicTensor,
    /// `F(x, phi y, xi)`
    m: DMatrix<f64>,
    /// `F(x, y, xi)`
    fxi: DMatrix<f64>,
    /// `F(phi x, phi y, xi)`
    cm: DMatrix<f64>,
    /// `F(xi, x, y)`
    f0: DMatrix<f64>,
    /// `omega(phi x) = F(xi, xi, phi x)`
    omega_phi: DVector<f64>,
}

impl BundleCtx {
    fn new(f: &FundamentalTensor) -> Self {
        let s = f.structure();
        let d = s.dim();
        let phi = s.phi();
        let xi = s.xi();
        let t = f.tensor();
        let a = t.transform_slot(phi, 0);
        let b3 = t.transform_slot(phi, 2);
        let m = f_phi_xi(f);
        let fxi = DMatrix::from_fn(d, d, |i, j| (0..d).map(|c| t.get(i, j, c) * xi[c]).sum());
        let cm = phi.transpose() * &fxi * phi;
        let f0 = DMatrix::from_fn(d, d, |i, j| (0..d).map(|a0| xi[a0] * t.get(a0, i, j)).sum());
        let omega_phi = DVector::from_fn(d, |i, _| {
            (0..d)
                .map(|c| phi[(c, i)] * (0..d).map(|a0| xi[a0] * f0[(a0, c)]).sum::<f64>())
                .sum()
        });
        Self {
            d,
            eta: s.eta().clone(),
            a,
            b3,
            m,
            fxi,
            cm,
            f0,
            omega_phi,
        }
    }
}

/// The antisymmetric family expressed through `F`:
///
/// ```text
/// N(x,y,z) = F(phi x,y,z) - F(phi y,x,z) - F(x,y,phi z) + F(y,x,phi z)
///            + eta(z) { F(x,phi y,xi) - F(y,phi x,xi) },
/// N2(x,y)  = -F(x,y,xi) + F(y,x,xi) - F(phi x,phi y,xi) + F(phi y,phi x,xi),
/// N3(x,y)  = F(xi,x,y) - F(x,y,xi) + F(phi x,phi y,xi),
/// N4(x)    = -F(xi,xi,phi x).
/// ```
pub fn nijenhuis(f: &FundamentalTensor) -> NijenhuisBundle {
    let ctx = BundleCtx::new(f);
    let d = ctx.d;
    let n1 = CubicTensor::from_fn(d, |i, j, k| {
        ctx.a.get(i, j, k) - ctx.a.get(j, i, k) - ctx.b3.get(i, j, k)
            + ctx.b3.get(j, i, k)
            + ctx.eta[k] * (ctx.m[(i, j)] - ctx.m[(j, i)])
    });
    let n2 = BilinearTensor::from_fn(d, |i, j| {
        -ctx.fxi[(i, j)] + ctx.fxi[(j, i)] - ctx.cm[(i, j)] + ctx.cm[(j, i)]
    });
    let n3 = BilinearTensor::from_fn(d, |i, j| ctx.f0[(i, j)] - ctx.fxi[(i, j)] + ctx.cm[(i, j)]);
    let n4 = CovectorTensor::from_fn(d, |i| -ctx.omega_phi[i]);
    NijenhuisBundle { n1, n2, n3, n4 }
}

/// The symmetric family expressed through `F`:
///
/// ```text
/// N^(x,y,z) = F(phi x,y,z) + F(phi y,x,z) - F(x,y,phi z) - F(y,x,phi z)
///             + eta(z) { F(x,phi y,xi) + F(y,phi x,xi) },
/// N^2(x,y)  = -F(x,y,xi) - F(y,x,xi) - F(phi x,phi y,xi) - F(phi y,phi x,xi),
/// N^3(x,y)  = F(xi,x,y) + F(x,y,xi) - F(phi x,phi y,xi),
/// N^4(x)    = -F(xi,phi x,xi).
/// ```
pub fn assoc_nijenhuis(f: &FundamentalTensor) -> AssocNijenhuisBundle {
    let ctx = BundleCtx::new(f);
    let d = ctx.d;
    let n1 = CubicTensor::from_fn(d, |i, j, k| {
        ctx.a.get(i, j, k) + ctx.a.get(j, i, k) - ctx.b3.get(i, j, k) - ctx.b3.get(j, i, k)
            + ctx.eta[k] * (ctx.m[(i, j)] + ctx.m[(j, i)])
    });
    let n2 = BilinearTensor::from_fn(d, |i, j| {
        -ctx.fxi[(i, j)] - ctx.fxi[(j, i)] - ctx.cm[(i, j)] - ctx.cm[(j, i)]
    });
    let n3 = BilinearTensor::from_fn(d, |i, j| ctx.f0[(i, j)] + ctx.fxi[(i, j)] - ctx.cm[(i, j)]);
    // by the last-two-slot symmetry of F this equals N4
    let n4 = CovectorTensor::from_fn(d, |i| -ctx.omega_phi[i]);
    AssocNijenhuisBundle { n1, n2, n3, n4 }
}

/// The Nijenhuis torsion of `phi` and its symmetric counterpart, realized
/// through the torsion-free connection:
/// `[x,y] = D_x y - D_y x`, `{x,y} = D_x y + D_y x`.
pub fn phi_brackets(conn: &Connection, s: &ApapStructure) -> Result<(Rank12Tensor, Rank12Tensor)> {
    if conn.dim() != s.dim() {
        return Err(Error::DimMismatch {
            expected: s.dim(),
            got: conn.dim(),
        });
    }
    let d = s.dim();
    let phi = s.phi();
    let h = s.h_matrix();
    let build = |op: &dyn Fn(usize, usize, usize) -> f64| {
        Rank12Tensor::from_fn(d, |i, j, k| {
            let mut acc = 0.0;
            for a in 0..d {
                for b in 0..d {
                    acc += phi[(a, i)] * phi[(b, j)] * op(a, b, k);
                }
            }
            for l in 0..d {
                acc += h[(k, l)] * op(i, j, l);
                for a in 0..d {
                    acc -= phi[(k, l)] * (phi[(a, i)] * op(a, j, l) + phi[(a, j)] * op(i, a, l));
                }
            }
            acc
        })
    };
    let torsion = |i: usize, j: usize, k: usize| conn.bracket(i, j, k);
    let braces = |i: usize, j: usize, k: usize| conn.brace(i, j, k);
    Ok((build(&torsion), build(&braces)))
}

/// Both bundles computed from their bracket/anticommutator definitions rather
/// than through `F`. Used to cross-check the raw-F route.
pub fn nijenhuis_from_connection(
    conn: &Connection,
    s: &ApapStructure,
) -> Result<(NijenhuisBundle, AssocNijenhuisBundle)> {
    let d = s.dim();
    let (phiphi, braces_phiphi) = phi_brackets(conn, s)?;
    let (nabla_eta, _) = nabla_eta_xi(conn, s)?;
    let d_eta = BilinearTensor::from_fn(d, |i, j| nabla_eta.get(i, j) - nabla_eta.get(j, i));
    let lie_g = BilinearTensor::from_fn(d, |i, j| nabla_eta.get(i, j) + nabla_eta.get(j, i));
    let xi = s.xi();
    let eta = s.eta();
    let phi = s.phi();
    let g = s.model().g();
    let lower = |t: &Rank12Tensor| s.model().lower_rank12(t).expect("consistent dims");

    let n1 = lower(&Rank12Tensor::from_fn(d, |i, j, k| {
        phiphi.get(i, j, k) - d_eta.get(i, j) * xi[k]
    }));
    let hn1 = lower(&Rank12Tensor::from_fn(d, |i, j, k| {
        braces_phiphi.get(i, j, k) - lie_g.get(i, j) * xi[k]
    }));

    let c = |i: usize, j: usize, k: usize| conn.bracket(i, j, k);
    let sbr = |i: usize, j: usize, k: usize| conn.brace(i, j, k);
    // N2(x,y) = -eta([phi x, y]) + eta([phi y, x]) for left-invariant fields
    let n2 = BilinearTensor::from_fn(d, |i, j| {
        let mut acc = 0.0;
        for a in 0..d {
            for k in 0..d {
                acc += eta[k] * (-phi[(a, i)] * c(a, j, k) + phi[(a, j)] * c(a, i, k));
            }
        }
        acc
    });
    // N3(x) = [xi, phi x] - phi [xi, x], lowered with g
    let n3 = BilinearTensor::from_fn(d, |i, j| {
        let mut acc = 0.0;
        for k in 0..d {
            let mut vk = 0.0;
            for a in 0..d {
                for b in 0..d {
                    vk += xi[a] * phi[(b, i)] * c(a, b, k);
                }
                for l in 0..d {
                    vk -= phi[(k, l)] * xi[a] * c(a, i, l);
                }
            }
            acc += vk * g[(k, j)];
        }
        acc
    });
    // N4(x) = -eta([xi, x])
    let n4 = CovectorTensor::from_fn(d, |i| {
        let mut acc = 0.0;
        for a in 0..d {
            for k in 0..d {
                acc -= eta[k] * xi[a] * c(a, i, k);
            }
        }
        acc
    });
    // N^2(x,y) = (L_xi g)(phi x, y) + (L_xi g)(x, phi y)
    let hn2 = BilinearTensor::from_fn(d, |i, j| {
        (0..d)
            .map(|a| phi[(a, i)] * lie_g.get(a, j) + phi[(a, j)] * lie_g.get(i, a))
            .sum()
    });
    // N^3(x) = {phi x, xi} - phi {x, xi}, lowered with g
    let hn3 = BilinearTensor::from_fn(d, |i, j| {
        let mut acc = 0.0;
        for k in 0..d {
            let mut vk = 0.0;
            for a in 0..d {
                for b in 0..d {
                    vk += xi[a] * phi[(b, i)] * sbr(b, a, k);
                }
                for l in 0..d {
                    vk -= phi[(k, l)] * xi[a] * sbr(i, a, l);
                }
            }
            acc += vk * g[(k, j)];
        }
        acc
    });
    // N^4(x) = (L_xi g)(x, xi)
    let hn4 = CovectorTensor::from_fn(d, |i| (0..d).map(|a| lie_g.get(i, a) * xi[a]).sum());

    Ok((
        NijenhuisBundle { n1, n2, n3, n4 },
        AssocNijenhuisBundle {
            n1: hn1,
            n2: hn2,
            n3: hn3,
            n4: hn4,
        },
    ))
}

/// Rebuilds the fundamental tensor from the pair of Nijenhuis tensors:
///
/// ```text
/// F(x,y,z) = 1/4 [ N(phi x,y,z) + N(phi x,z,y) + N^(phi x,y,z) + N^(phi x,z,y) ]
///          - 1/2 eta(x) [ N(xi,y,phi z) + N^(xi,y,phi z) + eta(z) N^(xi,xi,phi y) ].
/// ```
pub fn reconstruct_f(
    n: &NijenhuisBundle,
    hn: &AssocNijenhuisBundle,
    s: &ApapStructure,
) -> CubicTensor {
    let d = s.dim();
    let phi = s.phi();
    let xi = s.xi();
    let eta = s.eta();
    let na = n.n1.transform_slot(phi, 0);
    let hna = hn.n1.transform_slot(phi, 0);
    // N(xi, y, phi z) and N^(xi, y, phi z)
    let mid = |t: &CubicTensor| {
        DMatrix::from_fn(d, d, |j, k| {
            let mut acc = 0.0;
            for a in 0..d {
                for cc in 0..d {
                    acc += xi[a] * phi[(cc, k)] * t.get(a, j, cc);
                }
            }
            acc
        })
    };
    let n_xi = mid(&n.n1);
    let hn_xi = mid(&hn.n1);
    // N^(xi, xi, phi y)
    let hn_xixi = DVector::from_fn(d, |j, _| {
        let mut acc = 0.0;
        for a in 0..d {
            for b in 0..d {
                for cc in 0..d {
                    acc += xi[a] * xi[b] * phi[(cc, j)] * hn.n1.get(a, b, cc);
                }
            }
        }
        acc
    });
    CubicTensor::from_fn(d, |i, j, k| {
        0.25 * (na.get(i, j, k) + na.get(i, k, j) + hna.get(i, j, k) + hna.get(i, k, j))
            - 0.5 * eta[i] * (n_xi[(j, k)] + hn_xi[(j, k)] + eta[k] * hn_xixi[j])
    })
}

/// `T(u, v, z)` contracted with xi in one or more slots; helper shared by the
/// in-family relation residuals below.
fn contract(
    t: &CubicTensor,
    w0: Option<&DVector<f64>>,
    w1: Option<&DVector<f64>>,
    w2: Option<&DVector<f64>>,
) -> CubicTensor {
    let d = t.dim();
    let mut out = t.clone();
    // replacing a slot by a fixed vector stores the result with that index
    // frozen at 0 and sums over it; done via transform by the rank-1 matrix
    let freeze = |t: &CubicTensor, w: &DVector<f64>, slot: usize| {
        let mut m = DMatrix::zeros(d, d);
        for a in 0..d {
            m[(a, 0)] = w[a];
        }
        t.transform_slot(&m, slot)
    };
    if let Some(w) = w0 {
        out = freeze(&out, w, 0);
    }
    if let Some(w) = w1 {
        out = freeze(&out, w, 1);
    }
    if let Some(w) = w2 {
        out = freeze(&out, w, 2);
    }
    out
}

/// Worst residual of the in-family relations of the antisymmetric bundle:
///
/// ```text
/// N2(x,y) = -eta(N(x,phi y)) - eta(N(phi x,xi)) eta(y),
/// N3(x)   = -N(phi x, xi),
/// N4(x)   = -N2(phi x, xi) = -eta(N3(phi x)).
/// ```
pub fn nkn_residual(b: &NijenhuisBundle, s: &ApapStructure) -> f64 {
    let d = s.dim();
    let phi = s.phi();
    let xi = s.xi();
    let eta = s.eta();
    // eta(N(u, v)) = N1(u, v, .) paired with xi in the covariant slot
    let n_phi_xi = contract(&b.n1.transform_slot(phi, 1), None, None, Some(xi));
    let n_phixi_xi = contract(&b.n1.transform_slot(phi, 0), None, Some(xi), Some(xi));
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let rhs = -n_phi_xi.get(i, j, 0) - n_phixi_xi.get(i, 0, 0) * eta[j];
            worst = worst.max((b.n2.get(i, j) - rhs).abs());
        }
    }
    // N3 lowered: N3_ij = -N1(phi e_i, xi, e_j)
    let n_phixi = contract(&b.n1.transform_slot(phi, 0), None, Some(xi), None);
    for i in 0..d {
        for j in 0..d {
            worst = worst.max((b.n3.get(i, j) + n_phixi.get(i, 0, j)).abs());
        }
    }
    for i in 0..d {
        let mut via_n2 = 0.0;
        let mut via_n3 = 0.0;
        for a in 0..d {
            for bb in 0..d {
                via_n2 -= phi[(a, i)] * xi[bb] * b.n2.get(a, bb);
                via_n3 -= phi[(a, i)] * b.n3.get(a, bb) * xi[bb];
            }
        }
        worst = worst.max((b.n4.get(i) - via_n2).abs());
        worst = worst.max((b.n4.get(i) - via_n3).abs());
    }
    worst
}

/// Worst residual of the in-family relations of the symmetric bundle:
///
/// ```text
/// N^2(x,y) = -eta(N^(x,phi y)) - eta(N^(phi x,xi)) eta(y),
/// N^3(x)   = N^(phi x,xi) - eta(x) phi N^(xi,xi),
/// N^4(x)   = -eta(N^(x,xi)) = 1/2 g(N^(xi,xi), x)
///          = N^2(phi x,xi) = -eta(N^3(phi x)).
/// ```
pub fn hat_nkn_residual(b: &AssocNijenhuisBundle, s: &ApapStructure) -> f64 {
    let d = s.dim();
    let phi = s.phi();
    let xi = s.xi();
    let eta = s.eta();
    let n_phi_xi = contract(&b.n1.transform_slot(phi, 1), None, None, Some(xi));
    let n_phixi_xi = contract(&b.n1.transform_slot(phi, 0), None, Some(xi), Some(xi));
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let rhs = -n_phi_xi.get(i, j, 0) - n_phixi_xi.get(i, 0, 0) * eta[j];
            worst = worst.max((b.n2.get(i, j) - rhs).abs());
        }
    }
    // N^3_ij = N^1(phi e_i, xi, e_j) - eta_i N^1(xi, xi, phi e_j)
    let n_phixi = contract(&b.n1.transform_slot(phi, 0), None, Some(xi), None);
    let n_xixi_phi = contract(&b.n1.transform_slot(phi, 2), Some(xi), Some(xi), None);
    for i in 0..d {
        for j in 0..d {
            let rhs = n_phixi.get(i, 0, j) - eta[i] * n_xixi_phi.get(0, 0, j);
            worst = worst.max((b.n3.get(i, j) - rhs).abs());
        }
    }
    let n_x_xixi = contract(&b.n1, None, Some(xi), Some(xi));
    let n_xixi = contract(&b.n1, Some(xi), Some(xi), None);
    for i in 0..d {
        let direct = -n_x_xixi.get(i, 0, 0);
        let half = 0.5 * n_xixi.get(0, 0, i);
        let mut via_n2 = 0.0;
        let mut via_n3 = 0.0;
        for a in 0..d {
            for bb in 0..d {
                via_n2 += phi[(a, i)] * b.n2.get(a, bb) * xi[bb];
                via_n3 -= phi[(a, i)] * b.n3.get(a, bb) * xi[bb];
            }
        }
        for rhs in [direct, half, via_n2, via_n3] {
            worst = worst.max((b.n4.get(i) - rhs).abs());
        }
    }
    worst
}

/// Worst residual of the six slot-symmetry identities shared by both cubic
/// Nijenhuis tensors:
///
/// ```text
/// T(h x, phi y, phi z) = -T(h x, h y, h z),   T(h x, h y, h z) = T(phi x, phi y, h z),
/// T(x, h y, h z) = -T(x, phi y, phi z),       T(h x, h y, z) = T(phi x, phi y, z),
/// T(xi, phi y, phi z) = -T(xi, h y, h z),     T(phi x, phi y, xi) = T(h x, h y, xi).
/// ```
pub fn slot_symmetry_residual(t: &CubicTensor, s: &ApapStructure) -> f64 {
    let phi = s.phi();
    let h = s.h_matrix();
    let xi = s.xi();
    let t_hpp = t
        .transform_slot(&h, 0)
        .transform_slot(phi, 1)
        .transform_slot(phi, 2);
    let t_hhh = t
        .transform_slot(&h, 0)
        .transform_slot(&h, 1)
        .transform_slot(&h, 2);
    let t_pph = t
        .transform_slot(phi, 0)
        .transform_slot(phi, 1)
        .transform_slot(&h, 2);
    let t_xhh = t.transform_slot(&h, 1).transform_slot(&h, 2);
    let t_xpp = t.transform_slot(phi, 1).transform_slot(phi, 2);
    let t_hh_last = t.transform_slot(&h, 0).transform_slot(&h, 1);
    let t_pp_last = t.transform_slot(phi, 0).transform_slot(phi, 1);
    let mut worst = t_hpp.add(&t_hhh).max_abs();
    worst = worst.max(t_hhh.sub(&t_pph).max_abs());
    worst = worst.max(t_xhh.add(&t_xpp).max_abs());
    worst = worst.max(t_hh_last.sub(&t_pp_last).max_abs());
    worst = worst.max(
        contract(&t_xpp, Some(xi), None, None)
            .add(&contract(&t_xhh, Some(xi), None, None))
            .max_abs(),
    );
    worst = worst.max(
        contract(&t_pp_last, None, None, Some(xi))
            .sub(&contract(&t_hh_last, None, None, Some(xi)))
            .max_abs(),
    );
    worst
}

/// Structural predicates from `F` (and a connection, when available).
pub fn predicates(f: &FundamentalTensor, conn: Option<&Connection>) -> Result<PredicateReport> {
    let s = f.structure();
    let model = s.model();
    let d = s.dim();
    let scale = f.norm().max(1.0);
    let tol = TOL_CLASS * scale;
    let flag = |residual: f64| Flag {
        holds: residual <= tol,
        residual,
    };

    let bundle = nijenhuis(f);
    let normal = flag(model.cubic_norm(&bundle.n1)?);

    let lie_g = lie_derivative_g(f);
    let killing_xi = flag(model.bilinear_norm(&lie_g)?);

    let g_phi = model.g() * s.phi();
    let pc = BilinearTensor::from_fn(d, |i, j| 2.0 * g_phi[(i, j)] - lie_g.get(i, j));
    let paracontact = flag(model.bilinear_norm(&pc)?);

    let (de, l1, l3) = d_eta_split(f)?;
    let eta_closed = flag(model.bilinear_norm(&de)?);
    let h_involutive = flag(model.bilinear_norm(&l1)?);
    let xi_geodesic = flag(model.bilinear_norm(&l3)?);

    let (para_sasakian, phi_integrable) = match conn {
        Some(c) => {
            let (_, nabla_xi) = nabla_eta_xi(c, s)?;
            let ps_residual = model.endo_norm(&(&nabla_xi - s.phi()))?;
            let ps_tol = TOL_CLASS * model.endo_norm(&nabla_xi)?.max(1.0);
            let ps = Flag {
                holds: ps_residual <= ps_tol,
                residual: ps_residual,
            };
            let (phiphi, _) = phi_brackets(c, s)?;
            let lowered = model.lower_rank12(&phiphi)?;
            let integ = flag(model.cubic_norm(&lowered)?);
            (Some(ps), Some(integ))
        }
        None => (None, None),
    };

    Ok(PredicateReport {
        normal,
        paracontact,
        para_sasakian,
        killing_xi,
        eta_closed,
        h_involutive,
        xi_geodesic,
        phi_integrable,
    })
}

/// The para-Sasakian decision through the class route: `F` coincides with the
/// `F4'` tensor of its structure.
pub fn para_sasakian_class_route(f: &FundamentalTensor) -> Result<Flag> {
    let s = f.structure();
    let report = classify(f)?;
    let scale = f.norm().max(1.0);
    let residual = s.model().cubic_norm(&f.tensor().sub(&f4_prime_tensor(s)))?;
    let holds = report.is_f4_prime && residual <= TOL_CLASS * scale;
    Ok(Flag { holds, residual })
}
