//! Self-check suites: every invariant the crate promises, runnable in bulk
//! with configurable seeds, dimensions and tolerance. Backs `paracontact
//! verify`.

use nalgebra::DMatrix;

use crate::classes::{
    classify, component, components_all, dim3_components, dim3_reconstruct, f4_prime_tensor,
    lee_forms, random_f, subspace_dim_formula, subspace_dims_numeric, FundamentalTensor,
};
use crate::connection::levi_civita;
use crate::frame::{BilinearTensor, CovectorTensor, CubicTensor};
use crate::gallery::{random_structure, standard_structure, LieExample};
use crate::nijenhuis::{
    assoc_nijenhuis, hat_nkn_residual, nijenhuis, nijenhuis_from_connection, nkn_residual,
    predicates, reconstruct_f, slot_symmetry_residual,
};
use crate::structure::ApapStructure;
use crate::Result;

/// Knobs for the suites.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Random draws per (suite, dimension) combination.
    pub seeds: u64,
    /// Frame dimensions to exercise (odd, >= 3).
    pub dims: Vec<usize>,
    /// Residual threshold for a case to pass.
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seeds: 25,
            dims: vec![3, 5],
            tol: 1e-10,
        }
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub worst_residual: f64,
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Recorder {
    name: &'static str,
    cases: usize,
    failures: usize,
    worst: f64,
    tol: f64,
    notes: Vec<String>,
}

impl Recorder {
    fn new(name: &'static str, tol: f64) -> Self {
        Self {
            name,
            cases: 0,
            failures: 0,
            worst: 0.0,
            tol,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, label: &str, residual: f64) {
        self.cases += 1;
        self.worst = self.worst.max(residual);
        if residual.is_nan() || residual > self.tol {
            self.failures += 1;
            if self.notes.len() < 8 {
                self.notes.push(format!(
                    "{label}: residual {residual:.3e} > {:.1e}",
                    self.tol
                ));
            }
        }
    }

    fn expect(&mut self, label: &str, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.notes.len() < 8 {
                self.notes.push(format!("{label}: expectation failed"));
            }
        }
    }

    fn fail(&mut self, label: &str, err: &crate::Error) {
        self.cases += 1;
        self.failures += 1;
        if self.notes.len() < 8 {
            self.notes.push(format!("{label}: error {err}"));
        }
    }

    fn finish(self) -> SuiteOutcome {
        SuiteOutcome {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            worst_residual: self.worst,
            notes: self.notes,
        }
    }
}

fn structures_for(cfg: &VerifyConfig, dim: usize) -> Vec<ApapStructure> {
    let mut out = Vec::new();
    if let Ok(s) = standard_structure((dim - 1) / 2) {
        out.push(s);
    }
    for seed in 0..cfg.seeds.min(8) {
        if let Ok(s) = random_structure(dim, seed) {
            out.push(s);
        }
    }
    out
}

/// Structure axioms, projector ranks, `l`-operator identities, associated
/// metric symmetry and signature on the random structure corpus.
pub fn suite_structures(cfg: &VerifyConfig) -> SuiteOutcome {
    let mut rec = Recorder::new("structure_axioms", cfg.tol);
    for &dim in &cfg.dims {
        for seed in 0..cfg.seeds {
            let s = match random_structure(dim, seed) {
                Ok(s) => s,
                Err(e) => {
                    rec.fail("random_structure", &e);
                    continue;
                }
            };
            let report = s.validate();
            rec.check(&format!("axioms dim {dim} seed {seed}"), report.worst());

            let h = s.h_matrix();
            let v = s.v_matrix();
            let rank = |m: &DMatrix<f64>| {
                let sv = m.clone().svd(false, false).singular_values;
                let smax = sv.max();
                sv.iter().filter(|&&x| x > 1e-8 * smax.max(1.0)).count()
            };
            rec.expect(&format!("rank h dim {dim}"), rank(&h) == dim - 1);
            rec.expect(&format!("rank v dim {dim}"), rank(&v) == 1);

            // l-split of g: l1 = g - eta(x)eta, l2 = eta(x)eta, l3 = 0
            let g = BilinearTensor::from_matrix(s.model().g());
            let (l1, l2, l3) = s.ell_split(&g).unwrap();
            let eta2 = s.eta_outer();
            rec.check("l1(g)", l1.sub(&g.sub(&eta2)).max_abs());
            rec.check("l2(g)", l2.sub(&eta2).max_abs());
            rec.check("l3(g)", l3.max_abs());

            // idempotence and pairwise orthogonality of the split
            let probe = BilinearTensor::from_fn(dim, |i, j| {
                ((i * 7 + j * 3 + seed as usize) as f64 * 0.41).sin()
            });
            let (p1, p2, p3) = s.ell_split(&probe).unwrap();
            let (p11, p12, p13) = s.ell_split(&p1).unwrap();
            rec.check("l1 idempotent", p11.sub(&p1).max_abs());
            rec.check("l1 others vanish", p12.max_abs().max(p13.max_abs()));
            let model = s.model();
            let ip12 = model.bilinear_inner(&p1, &p2).unwrap().abs();
            let ip13 = model.bilinear_inner(&p1, &p3).unwrap().abs();
            let ip23 = model.bilinear_inner(&p2, &p3).unwrap().abs();
            rec.check("l-split orthogonality", ip12.max(ip13).max(ip23));

            // associated metric: symmetric, signature (n+1, n)
            let gt = s.associated_metric();
            let mut asym = 0.0f64;
            for i in 0..dim {
                for j in 0..dim {
                    asym = asym.max((gt.get(i, j) - gt.get(j, i)).abs());
                }
            }
            rec.check("g~ symmetry", asym);
            let n = (dim - 1) / 2;
            rec.expect("g~ signature", s.signature(&gt) == (n + 1, n, 0));
        }
    }
    rec.finish()
}

/// Lee-form identities and the `omega(z) = -1/2 N^(xi,xi,phi z)` identity.
pub fn suite_lee_identities(cfg: &VerifyConfig) -> SuiteOutcome {
    let mut rec = Recorder::new("lee_identities", cfg.tol);
    for &dim in &cfg.dims {
        for s in structures_for(cfg, dim) {
            for seed in 0..cfg.seeds {
                let f = match random_f(&s, seed) {
                    Ok(f) => f,
                    Err(e) => {
                        rec.fail("random_f", &e);
                        continue;
                    }
                };
                let lee = lee_forms(&f);
                let (omega_xi, star) = lee.identity_residuals(&s);
                rec.check("omega(xi)=0", omega_xi);
                rec.check("theta* o phi = -theta o phi^2", star);

                let hb = assoc_nijenhuis(&f);
                let phi = s.phi();
                let xi = s.xi();
                let mut worst = 0.0f64;
                for k in 0..dim {
                    let mut acc = 0.0;
                    for a in 0..dim {
                        for b in 0..dim {
                            for c in 0..dim {
                                acc += xi[a] * xi[b] * phi[(c, k)] * hb.n1.get(a, b, c);
                            }
                        }
                    }
                    worst = worst.max((lee.omega.get(k) + 0.5 * acc).abs());
                }
                rec.check("omega = -1/2 N^(xi,xi,phi .)", worst);
            }
        }
    }
    rec.finish()
}

/// Completeness, orthogonality, idempotence and annihilation of the
/// eleven-component decomposition.
pub fn suite_decomposition(cfg: &VerifyConfig) -> SuiteOutcome {
    let mut rec = Recorder::new("class_decomposition", cfg.tol);
    for &dim in &cfg.dims {
        for s in structures_for(cfg, dim) {
            let model = s.model();
            for seed in 0..cfg.seeds {
                let f = match random_f(&s, seed) {
                    Ok(f) => f,
                    Err(e) => {
                        rec.fail("random_f", &e);
                        continue;
                    }
                };
                let scale = f.norm().max(1.0);
                let comps = components_all(&f);
                let mut sum = CubicTensor::zeros(dim);
                for c in &comps {
                    sum = sum.add(c);
                }
                rec.check(
                    &format!("completeness dim {dim} seed {seed}"),
                    model.cubic_norm(&f.tensor().sub(&sum)).unwrap() / scale,
                );
                for i in 0..11 {
                    let ni = model.cubic_norm(&comps[i]).unwrap();
                    for j in (i + 1)..11 {
                        let nj = model.cubic_norm(&comps[j]).unwrap();
                        let ip = model.cubic_inner(&comps[i], &comps[j]).unwrap().abs();
                        rec.check(
                            &format!("orthogonality F{} . F{}", i + 1, j + 1),
                            ip / (ni * nj).max(1.0),
                        );
                    }
                }
                // idempotence and annihilation on a couple of classes per seed
                for i in [1 + (seed as usize % 11), 1 + ((seed as usize + 4) % 11)] {
                    let fi = &comps[i - 1];
                    if model.cubic_norm(fi).unwrap() < 1e-12 {
                        continue;
                    }
                    let wrapped = FundamentalTensor::new(fi.clone(), s.clone()).unwrap();
                    let again = components_all(&wrapped);
                    rec.check(
                        &format!("idempotence F{i}"),
                        model.cubic_norm(&again[i - 1].sub(fi)).unwrap() / scale,
                    );
                    for j in 1..=11 {
                        if j != i {
                            rec.check(
                                &format!("annihilation F{j} of F{i}"),
                                model.cubic_norm(&again[j - 1]).unwrap() / scale,
                            );
                        }
                    }
                }
            }
        }
    }
    rec.finish()
}

/// Rank oracle against the closed dimension formulas.
pub fn suite_dimensions(cfg: &VerifyConfig) -> SuiteOutcome {
    let mut rec = Recorder::new("subspace_dimensions", cfg.tol);
    for &dim in &cfg.dims {
        let n = (dim - 1) / 2;
        let s = match standard_structure(n) {
            Ok(s) => s,
            Err(e) => {
                rec.fail("standard_structure", &e);
                continue;
            }
        };
        match subspace_dims_numeric(&s) {
            Ok((dims, full)) => {
                let mut total = 0usize;
                for class in 1..=11 {
                    let formula = subspace_dim_formula(n, class).unwrap();
                    total += formula;
                    rec.expect(
                        &format!("dim F{class} at n={n}"),
                        dims[class - 1] == formula,
                    );
                }
                rec.expect(&format!("full admissible rank at n={n}"), full == total);
            }
            Err(e) => rec.fail("subspace_dims_numeric", &e),
        }
    }
    rec.finish()
}

/// Dimension-3 reduction: classes 2, 3, 6, 7 vanish identically and the
/// named-scalar reconstruction reproduces the tensor.
pub fn suite_dim3(cfg: &VerifyConfig) -> SuiteOutcome {
    let mut rec = Recorder::new("dim3_reduction", cfg.tol);
    let s = match standard_structure(1) {
        Ok(s) => s,
        Err(e) => {
            let mut r = Recorder::new("dim3_reduction", cfg.tol);
            r.fail("standard_structure", &e);
            return r.finish();
        }
    };
    let model = s.model();
    let draws = cfg.seeds.max(50);
    for seed in 0..draws {
        let f = match random_f(&s, seed) {
            Ok(f) => f,
            Err(e) => {
                rec.fail("random_f", &e);
                continue;
            }
        };
        let scale = f.norm().max(1.0);
        let comps = components_all(&f);
        for class in [2usize, 3, 6, 7] {
            rec.check(
                &format!("F{class} trivial at n=1"),
                model.cubic_norm(&comps[class - 1]).unwrap() / scale,
            );
        }
        match dim3_components(&f) {
            Ok(c) => {
                let rebuilt = dim3_reconstruct(&c);
                rec.check(
                    "named-scalar reconstruction",
                    model.cubic_norm(&rebuilt.sub(f.tensor())).unwrap() / scale,
                );
            }
            Err(e) => rec.fail("dim3_components", &e),
        }
    }
    rec.finish()
}

/// In-family relations and the slot-symmetry identities of both bundles.
pub fn suite_nijenhuis_relations(cfg: &VerifyConfig) -> SuiteOutcome {
    let mut rec = Recorder::new("nijenhuis_relations", cfg.tol);
    for &dim in &cfg.dims {
        for s in structures_for(cfg, dim) {
            for seed in 0..cfg.seeds {
                let f = match random_f(&s, seed) {
                    Ok(f) => f,
                    Err(e) => {
                        rec.fail("random_f", &e);
                        continue;
                    }
                };
                let nb = nijenhuis(&f);
                let hb = assoc_nijenhuis(&f);
                rec.check("antisym family relations", nkn_residual(&nb, &s));
                rec.check("sym family relations", hat_nkn_residual(&hb, &s));
                rec.check("N slot symmetries", slot_symmetry_residual(&nb.n1, &s));
                rec.check("N^ slot symmetries", slot_symmetry_residual(&hb.n1, &s));
                let mut anti = 0.0f64;
                let mut sym = 0.0f64;
                for i in 0..dim {
                    for j in 0..dim {
                        for k in 0..dim {
                            anti = anti.max((nb.n1.get(i, j, k) + nb.n1.get(j, i, k)).abs());
                            sym = sym.max((hb.n1.get(i, j, k) - hb.n1.get(j, i, k)).abs());
                        }
                    }
                }
                rec.check("N antisymmetric", anti);
                rec.check("N^ symmetric", sym);
            }
        }
    }
    rec.finish()
}

/// Evaluates one row of the vanishing/closed-form tables for a pure-class
/// tensor and records the residuals.
fn check_table_row(rec: &mut Recorder, f: &FundamentalTensor, class: usize, scale: f64) {
    let s = f.structure();
    let d = s.dim();
    let phi = s.phi();
    let h = s.h_matrix();
    let xi = s.xi();
    let eta = s.eta();
    let g = s.model().g();
    let t = f.tensor();
    let lee = lee_forms(f);
    let n = s.n() as f64;

    let m = DMatrix::from_fn(d, d, |i, j| {
        let mut acc = 0.0;
        for b in 0..d {
            for c in 0..d {
                acc += phi[(b, j)] * xi[c] * t.get(i, b, c);
            }
        }
        acc
    });
    let fxi = DMatrix::from_fn(d, d, |i, j| (0..d).map(|c| t.get(i, j, c) * xi[c]).sum());
    let f0 = DMatrix::from_fn(d, d, |i, j| (0..d).map(|a| xi[a] * t.get(a, i, j)).sum());
    let f0phi = &f0 * phi;
    let omega_phi: Vec<f64> = (0..d)
        .map(|i| (0..d).map(|a| lee.omega.get(a) * phi[(a, i)]).sum())
        .collect();
    let theta_h: Vec<f64> = (0..d)
        .map(|k| (0..d).map(|a| lee.theta.get(a) * h[(a, k)]).sum())
        .collect();
    let theta_phi: Vec<f64> = (0..d)
        .map(|k| (0..d).map(|a| lee.theta.get(a) * phi[(a, k)]).sum())
        .collect();
    let g_phi = g * phi;
    let g_phiphi = phi.transpose() * g * phi;
    let theta_xi = lee.theta.pair(xi);
    let theta_star_xi = lee.theta_star.pair(xi);
    let pfff = t
        .transform_slot(phi, 0)
        .transform_slot(phi, 1)
        .transform_slot(phi, 2);
    let phhf = t
        .transform_slot(&h, 0)
        .transform_slot(&h, 1)
        .transform_slot(phi, 2);
    let minus2sum = pfff.add(&phhf).scale(-2.0);

    let zero3 = CubicTensor::zeros(d);
    let zero2 = BilinearTensor::zeros(d);
    let zero1 = CovectorTensor::zeros(d);

    // expected rows of the antisymmetric table
    let (n1e, n2e, n3e, n4e) = match class {
        3 => (
            minus2sum.clone(),
            zero2.clone(),
            zero2.clone(),
            zero1.clone(),
        ),
        7 => (
            CubicTensor::from_fn(d, |i, j, k| 4.0 * m[(i, j)] * eta[k]),
            BilinearTensor::from_matrix(&(-4.0 * &fxi)),
            zero2.clone(),
            zero1.clone(),
        ),
        8 | 9 => (
            CubicTensor::from_fn(d, |i, j, k| 2.0 * (eta[i] * m[(j, k)] - eta[j] * m[(i, k)])),
            zero2.clone(),
            BilinearTensor::from_matrix(&(-2.0 * &fxi)),
            zero1.clone(),
        ),
        10 => (
            CubicTensor::from_fn(d, |i, j, k| {
                -eta[i] * f0phi[(j, k)] + eta[j] * f0phi[(i, k)]
            }),
            zero2.clone(),
            BilinearTensor::from_matrix(&f0),
            zero1.clone(),
        ),
        11 => (
            CubicTensor::from_fn(d, |i, j, k| {
                eta[k] * (eta[i] * omega_phi[j] - eta[j] * omega_phi[i])
            }),
            BilinearTensor::from_fn(d, |i, j| {
                eta[j] * lee.omega.get(i) - eta[i] * lee.omega.get(j)
            }),
            BilinearTensor::from_fn(d, |i, j| eta[j] * lee.omega.get(i)),
            CovectorTensor::from_fn(d, |i| -omega_phi[i]),
        ),
        _ => (zero3.clone(), zero2.clone(), zero2.clone(), zero1.clone()),
    };
    // expected rows of the symmetric table
    let (h1e, h2e, h3e, h4e) = match class {
        1 => (
            CubicTensor::from_fn(d, |i, j, k| {
                2.0 / n * (g_phi[(i, j)] * theta_h[k] - g_phiphi[(i, j)] * theta_phi[k])
            }),
            zero2.clone(),
            zero2.clone(),
            zero1.clone(),
        ),
        2 => (minus2sum, zero2.clone(), zero2.clone(), zero1.clone()),
        4 => (
            CubicTensor::from_fn(d, |i, j, k| 2.0 / n * theta_xi * g_phi[(i, j)] * eta[k]),
            BilinearTensor::from_matrix(&(-2.0 / n * theta_xi * &g_phiphi)),
            zero2.clone(),
            zero1.clone(),
        ),
        5 => (
            CubicTensor::from_fn(d, |i, j, k| {
                2.0 / n * theta_star_xi * g_phiphi[(i, j)] * eta[k]
            }),
            BilinearTensor::from_matrix(&(-2.0 / n * theta_star_xi * &g_phi)),
            zero2.clone(),
            zero1.clone(),
        ),
        6 => (
            CubicTensor::from_fn(d, |i, j, k| 4.0 * m[(i, j)] * eta[k]),
            BilinearTensor::from_matrix(&(-4.0 * &fxi)),
            zero2.clone(),
            zero1.clone(),
        ),
        8 | 9 => (
            CubicTensor::from_fn(d, |i, j, k| {
                -2.0 * (eta[i] * m[(j, k)] + eta[j] * m[(i, k)])
            }),
            zero2.clone(),
            BilinearTensor::from_matrix(&(2.0 * &fxi)),
            zero1.clone(),
        ),
        10 => (
            CubicTensor::from_fn(d, |i, j, k| {
                -eta[i] * f0phi[(j, k)] - eta[j] * f0phi[(i, k)]
            }),
            zero2.clone(),
            BilinearTensor::from_matrix(&f0),
            zero1.clone(),
        ),
        11 => (
            CubicTensor::from_fn(d, |i, j, k| {
                eta[k] * (eta[i] * omega_phi[j] + eta[j] * omega_phi[i])
                    - 2.0 * eta[i] * eta[j] * omega_phi[k]
            }),
            BilinearTensor::from_fn(d, |i, j| {
                -eta[i] * lee.omega.get(j) - eta[j] * lee.omega.get(i)
            }),
            BilinearTensor::from_fn(d, |i, j| {
                lee.omega.get(i) * eta[j] + 2.0 * eta[i] * lee.omega.get(j)
            }),
            CovectorTensor::from_fn(d, |i| -omega_phi[i]),
        ),
        _ => (zero3, zero2.clone(), zero2, zero1),
    };

    let nb = nijenhuis(f);
    let hb = assoc_nijenhuis(f);
    rec.check(
        &format!("table row N1, class F{class}"),
        nb.n1.sub(&n1e).max_abs() / scale,
    );
    rec.check(
        &format!("table row N2, class F{class}"),
        nb.n2.sub(&n2e).max_abs() / scale,
    );
    rec.check(
        &format!("table row N3, class F{class}"),
        nb.n3.sub(&n3e).max_abs() / scale,
    );
    rec.check(
        &format!("table row N4, class F{class}"),
        nb.n4.sub(&n4e).max_abs() / scale,
    );
    rec.check(
        &format!("table row N^1, class F{class}"),
        hb.n1.sub(&h1e).max_abs() / scale,
    );
    rec.check(
        &format!("table row N^2, class F{class}"),
        hb.n2.sub(&h2e).max_abs() / scale,
    );
    rec.check(
        &format!("table row N^3, class F{class}"),
        hb.n3.sub(&h3e).max_abs() / scale,
    );
    rec.check(
        &format!("table row N^4, class F{class}"),
        hb.n4.sub(&h4e).max_abs() / scale,
    );
}

/// Per-class vanishing patterns and printed closed forms of both tensor
/// families, each class realized by projection at the smallest rank where its
/// subspace is nontrivial.
pub fn suite_tables(cfg: &VerifyConfig) -> SuiteOutcome {
    let mut rec = Recorder::new("table_patterns", cfg.tol);
    for class in 1..=11usize {
        let n = if subspace_dim_formula(1, class).unwrap() > 0 {
            1
        } else {
            2
        };
        let s = match standard_structure(n) {
            Ok(s) => s,
            Err(e) => {
                rec.fail("standard_structure", &e);
                continue;
            }
        };
        let mut realized = false;
        for seed in 0..20u64 {
            let f = match random_f(&s, seed) {
                Ok(f) => f,
                Err(e) => {
                    rec.fail("random_f", &e);
                    break;
                }
            };
            let fi = component(&f, class).unwrap();
            let norm = s.model().cubic_norm(&fi).unwrap();
            if norm < 1e-6 {
                continue;
            }
            realized = true;
            let pure = FundamentalTensor::new(fi, s.clone()).unwrap();
            check_table_row(&mut rec, &pure, class, norm.max(1.0));
            break;
        }
        rec.expect(&format!("class F{class} realized by projection"), realized);
    }
    rec.finish()
}

/// Round trip of the reconstruction formula over the random corpus.
pub fn suite_reconstruction(cfg: &VerifyConfig) -> SuiteOutcome {
    let mut rec = Recorder::new("reconstruction_roundtrip", cfg.tol);
    for &dim in &cfg.dims {
        for s in structures_for(cfg, dim) {
            for seed in 0..cfg.seeds {
                let f = match random_f(&s, seed) {
                    Ok(f) => f,
                    Err(e) => {
                        rec.fail("random_f", &e);
                        continue;
                    }
                };
                let rebuilt = reconstruct_f(&nijenhuis(&f), &assoc_nijenhuis(&f), &s);
                let resid = s.model().cubic_norm(&rebuilt.sub(f.tensor())).unwrap();
                rec.check(
                    &format!("round trip dim {dim} seed {seed}"),
                    resid / f.norm().max(1.0),
                );
            }
        }
    }
    rec.finish()
}

/// The Lie-group example family: connection values, fundamental-tensor
/// components, classification, the closed forms of both Nijenhuis families,
/// the para-Sasakian cases, and the raw-F/bracket route agreement.
pub fn suite_example_family(cfg: &VerifyConfig) -> SuiteOutcome {
    let mut rec = Recorder::new("example_family", cfg.tol);
    let grid = [(1.0, 1.0), (0.0, 1.0), (1.0, 0.0), (0.0, 0.0), (-2.0, 3.0)];
    for (a1, a2) in grid {
        let ex = LieExample::new(1, vec![a1, a2]).unwrap();
        let (alg, s) = match ex.build() {
            Ok(v) => v,
            Err(e) => {
                rec.fail("build", &e);
                continue;
            }
        };
        let conn = match levi_civita(&alg, s.model()) {
            Ok(c) => c,
            Err(e) => {
                rec.fail("levi_civita", &e);
                continue;
            }
        };
        // connection against its closed form
        let mut gamma_expected = crate::frame::Rank12Tensor::zeros(3);
        for (i, j, k, v) in [
            (1, 0, 1, a1),
            (1, 0, 2, a2),
            (2, 0, 1, a2),
            (2, 0, 2, -a1),
            (1, 1, 0, -a1),
            (2, 2, 0, a1),
            (1, 2, 0, -a2),
            (2, 1, 0, -a2),
        ] {
            gamma_expected.set(i, j, k, v);
        }
        rec.check(
            &format!("connection ({a1},{a2})"),
            conn.gamma().sub(&gamma_expected).max_abs(),
        );

        let f = match FundamentalTensor::from_connection(&conn, &s) {
            Ok(f) => f,
            Err(e) => {
                rec.fail("fundamental tensor", &e);
                continue;
            }
        };
        let mut f_expected = CubicTensor::zeros(3);
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
            f_expected.set(i, j, k, v);
        }
        rec.check(
            &format!("F components ({a1},{a2})"),
            f.tensor().sub(&f_expected).max_abs(),
        );

        match classify(&f) {
            Ok(report) => {
                let expected = ex.expected_class().unwrap();
                rec.expect(
                    &format!("classification ({a1},{a2})"),
                    report.members == expected,
                );
                if (a1, a2) == (0.0, 1.0) {
                    rec.expect("F4' at (0,1)", report.is_f4_prime);
                }
            }
            Err(e) => rec.fail("classify", &e),
        }

        // both Nijenhuis routes against the closed forms
        let nb = nijenhuis(&f);
        let hb = assoc_nijenhuis(&f);
        let (nd, hd) = nijenhuis_from_connection(&conn, &s).unwrap();
        let mut n1_expected = CubicTensor::zeros(3);
        for (i, j, k, v) in [
            (0, 1, 1, -2.0 * a1),
            (1, 0, 1, 2.0 * a1),
            (0, 2, 2, 2.0 * a1),
            (2, 0, 2, -2.0 * a1),
        ] {
            n1_expected.set(i, j, k, v);
        }
        let mut hn1_expected = CubicTensor::zeros(3);
        for (i, j, k, v) in [
            (1, 2, 0, -4.0 * a2),
            (2, 1, 0, -4.0 * a2),
            (0, 1, 1, 2.0 * a1),
            (1, 0, 1, 2.0 * a1),
            (0, 2, 2, -2.0 * a1),
            (2, 0, 2, -2.0 * a1),
        ] {
            hn1_expected.set(i, j, k, v);
        }
        let mut n3_expected = BilinearTensor::zeros(3);
        n3_expected.set(1, 2, 2.0 * a1);
        n3_expected.set(2, 1, -2.0 * a1);
        let mut hn2_expected = BilinearTensor::zeros(3);
        hn2_expected.set(1, 1, 4.0 * a2);
        hn2_expected.set(2, 2, 4.0 * a2);

        rec.check("N1 closed form", nb.n1.sub(&n1_expected).max_abs());
        rec.check("N2 closed form", nb.n2.max_abs());
        rec.check("N3 closed form", nb.n3.sub(&n3_expected).max_abs());
        rec.check("N4 = 0", nb.n4.max_abs());
        rec.check("N^1 closed form", hb.n1.sub(&hn1_expected).max_abs());
        rec.check("N^2 closed form", hb.n2.sub(&hn2_expected).max_abs());
        rec.check(
            "N^3 closed form",
            hb.n3.sub(&n3_expected.scale(-1.0)).max_abs(),
        );
        rec.check("N^4 = 0", hb.n4.max_abs());
        rec.check("N route agreement", nd.n1.sub(&nb.n1).max_abs());
        rec.check("N^ route agreement", hd.n1.sub(&hb.n1).max_abs());
        rec.check("N2 route agreement", nd.n2.sub(&nb.n2).max_abs());
        rec.check("N3 route agreement", nd.n3.sub(&nb.n3).max_abs());
        rec.check("N^2 route agreement", hd.n2.sub(&hb.n2).max_abs());
        rec.check("N^3 route agreement", hd.n3.sub(&hb.n3).max_abs());

        // predicates
        match predicates(&f, Some(&conn)) {
            Ok(p) => {
                let ps = p.para_sasakian.unwrap();
                rec.expect(
                    &format!("para-Sasakian iff (0,1) at ({a1},{a2})"),
                    ps.holds == ((a1, a2) == (0.0, 1.0)),
                );
                rec.expect(
                    &format!("normal iff a1 = 0 at ({a1},{a2})"),
                    p.normal.holds == (a1 == 0.0),
                );
                rec.expect(
                    &format!("Killing iff flat at ({a1},{a2})"),
                    p.killing_xi.holds == (a1 == 0.0 && a2 == 0.0),
                );
                rec.expect("eta closed", p.eta_closed.holds);
            }
            Err(e) => rec.fail("predicates", &e),
        }

        // para-Sasakian scaling case (0, 2): pure F4 but not F4'
        if (a1, a2) == (0.0, 1.0) {
            let ex2 = LieExample::new(1, vec![0.0, 2.0]).unwrap();
            let (alg2, s2) = ex2.build().unwrap();
            let conn2 = levi_civita(&alg2, s2.model()).unwrap();
            let f2 = FundamentalTensor::from_connection(&conn2, &s2).unwrap();
            let report2 = classify(&f2).unwrap();
            rec.expect("(0,2) in F4", report2.members == vec![4]);
            rec.expect("(0,2) not F4'", !report2.is_f4_prime);
            rec.check("(0,2) theta(xi) = -4", (report2.theta_xi + 4.0).abs());
        }
        let _ = cfg;
    }
    rec.finish()
}

/// Pure `F4'` corpus: paracontact holds, `xi` is never Killing.
pub fn suite_paracontact_killing(cfg: &VerifyConfig) -> SuiteOutcome {
    let mut rec = Recorder::new("paracontact_killing", cfg.tol);
    let mut samples = 0u64;
    let mut seed = 0u64;
    while samples < 20.max(cfg.seeds) && seed < 200 {
        let dim = cfg.dims[(seed % cfg.dims.len() as u64) as usize];
        if let Ok(s) = random_structure(dim, seed) {
            let f4p = f4_prime_tensor(&s);
            match FundamentalTensor::new(f4p, s.clone()) {
                Ok(f) => {
                    samples += 1;
                    match predicates(&f, None) {
                        Ok(p) => {
                            rec.expect(
                                &format!("paracontact on F4' sample {samples}"),
                                p.paracontact.holds,
                            );
                            rec.check("paracontact residual", p.paracontact.residual);
                            rec.expect(
                                &format!("xi not Killing on F4' sample {samples}"),
                                !p.killing_xi.holds,
                            );
                            match classify(&f) {
                                Ok(r) => rec.expect("classified as F4'", r.is_f4_prime),
                                Err(e) => rec.fail("classify", &e),
                            }
                        }
                        Err(e) => rec.fail("predicates", &e),
                    }
                }
                Err(e) => rec.fail("f4_prime wrap", &e),
            }
        }
        seed += 1;
    }
    rec.finish()
}

/// Runs every suite.
pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteOutcome> {
    vec![
        suite_structures(cfg),
        suite_lee_identities(cfg),
        suite_decomposition(cfg),
        suite_dimensions(cfg),
        suite_dim3(cfg),
        suite_nijenhuis_relations(cfg),
        suite_tables(cfg),
        suite_reconstruction(cfg),
        suite_example_family(cfg),
        suite_paracontact_killing(cfg),
    ]
}

/// Convenience wrapper returning an error-free overall verdict.
pub fn run_all_passed(cfg: &VerifyConfig) -> Result<(Vec<SuiteOutcome>, bool)> {
    let outcomes = run_all(cfg);
    let ok = outcomes.iter().all(SuiteOutcome::passed);
    Ok((outcomes, ok))
}
