//! The report emitted by `classify` and `example`: one JSON document per run,
//! with the text format a table view over the same data.

use paracontact::classes::{dim3_components, lee_forms};
use paracontact::{
    assoc_nijenhuis, classify, d_eta_split, lie_derivative_g, nijenhuis, predicates, reconstruct_f,
    Flag,
};
use serde::{Deserialize, Serialize};

use crate::model::{class_label, LoadedModel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureSection {
    pub phi_xi: f64,
    pub phi_square: f64,
    pub eta_phi: f64,
    pub eta_xi: f64,
    pub trace_phi: f64,
    pub compat_phi: f64,
    pub compat_xi: f64,
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSection {
    /// Nonzero structure constants with i < j: `[E_i, E_j] = value * E_k + ...`.
    pub nonzero_brackets: Vec<GammaEntry>,
    pub jacobi_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectionSection {
    /// Nonzero Christoffel components `D_Ei Ej = value * E_k + ...`.
    pub nonzero_gamma: Vec<GammaEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dim3Section {
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

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FundamentalSection {
    /// Row-major `F_ijk`.
    pub components: Vec<f64>,
    pub norm: f64,
    pub symmetry_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim3_scalars: Option<Dim3Section>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeeSection {
    pub theta: Vec<f64>,
    pub theta_star: Vec<f64>,
    pub omega: Vec<f64>,
    pub theta_xi: f64,
    pub theta_star_xi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassSection {
    /// `|F_i|` for i = 1..=11.
    pub norms: Vec<f64>,
    pub residual: f64,
    pub members: Vec<String>,
    pub label: String,
    pub is_f0: bool,
    pub is_f4_prime: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleSection {
    pub n1_norm: f64,
    pub n2_norm: f64,
    pub n3_norm: f64,
    pub n4_norm: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n1: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n2: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n3: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n4: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlagSection {
    pub holds: bool,
    pub residual: f64,
}

impl From<Flag> for FlagSection {
    fn from(f: Flag) -> Self {
        Self {
            holds: f.holds,
            residual: f.residual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredicateSection {
    pub normal: FlagSection,
    pub paracontact: FlagSection,
    /// Absent in raw-F mode (needs a connection).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub para_sasakian: Option<FlagSection>,
    pub killing_xi: FlagSection,
    pub eta_closed: FlagSection,
    pub h_involutive: FlagSection,
    pub xi_geodesic: FlagSection,
    /// Absent in raw-F mode (needs a connection).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_integrable: Option<FlagSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub mode: String,
    pub dim: usize,
    pub structure: StructureSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection: Option<ConnectionSection>,
    pub fundamental: FundamentalSection,
    pub lee_forms: LeeSection,
    pub classes: ClassSection,
    pub nijenhuis: BundleSection,
    pub assoc_nijenhuis: BundleSection,
    pub reconstruction_residual: f64,
    pub predicates: PredicateSection,
    pub notes: Vec<String>,
}

pub fn build_report(
    model: &LoadedModel,
    full_tensors: bool,
    membership_tol: Option<f64>,
) -> Result<Report, paracontact::Error> {
    let s = &model.structure;
    let dim = s.dim();
    let f = &model.fundamental;
    let v = s.validate();
    let structure = StructureSection {
        phi_xi: v.phi_xi,
        phi_square: v.phi_square,
        eta_phi: v.eta_phi,
        eta_xi: v.eta_xi,
        trace_phi: v.trace_phi,
        compat_phi: v.compat_phi,
        compat_xi: v.compat_xi,
        valid: v.valid,
    };

    let algebra = model.algebra.as_ref().map(|alg| {
        let mut nonzero_brackets = Vec::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in 0..dim {
                    let value = alg.constants().get(i, j, k);
                    if value.abs() > 1e-14 {
                        nonzero_brackets.push(GammaEntry { i, j, k, value });
                    }
                }
            }
        }
        AlgebraSection {
            nonzero_brackets,
            jacobi_residual: alg.jacobi_residual().0,
        }
    });

    let connection = model.connection.as_ref().map(|c| {
        let mut nonzero_gamma = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let value = c.gamma().get(i, j, k);
                    if value.abs() > 1e-14 {
                        nonzero_gamma.push(GammaEntry { i, j, k, value });
                    }
                }
            }
        }
        ConnectionSection { nonzero_gamma }
    });

    let dim3_scalars = if dim == 3 {
        dim3_components(f).ok().map(|c| Dim3Section {
            theta_0: c.theta_0,
            theta_star_0: c.theta_star_0,
            theta_1: c.theta_1,
            theta_2: c.theta_2,
            omega_1: c.omega_1,
            omega_2: c.omega_2,
            lambda: c.lambda,
            mu: c.mu,
            nu: c.nu,
        })
    } else {
        None
    };

    let fundamental = FundamentalSection {
        components: f.tensor().data().to_vec(),
        norm: f.norm(),
        symmetry_residual: f.symmetry_residuals(),
        dim3_scalars,
    };

    let lee = lee_forms(f);
    let lee_forms = LeeSection {
        theta: lee.theta.data().to_vec(),
        theta_star: lee.theta_star.data().to_vec(),
        omega: lee.omega.data().to_vec(),
        theta_xi: lee.theta.pair(s.xi()),
        theta_star_xi: lee.theta_star.pair(s.xi()),
    };

    let class_report = classify(f)?;
    let members: Vec<usize> = match membership_tol {
        None => class_report.members.clone(),
        Some(tol) => {
            let scale = class_report.norm_f.max(1.0);
            (1..=11)
                .filter(|&i| class_report.norms[i - 1] > tol * scale)
                .collect()
        }
    };
    let classes = ClassSection {
        norms: class_report.norms.to_vec(),
        residual: class_report.residual,
        members: members.iter().map(|i| format!("F{i}")).collect(),
        label: if class_report.is_f4_prime {
            "F4'".to_string()
        } else {
            class_label(&members)
        },
        is_f0: class_report.is_f0,
        is_f4_prime: class_report.is_f4_prime,
    };

    let model_frame = s.model();
    let nb = nijenhuis(f);
    let hb = assoc_nijenhuis(f);
    let bundle_section = |n1: &paracontact::CubicTensor,
                          n2: &paracontact::BilinearTensor,
                          n3: &paracontact::BilinearTensor,
                          n4: &paracontact::CovectorTensor|
     -> Result<BundleSection, paracontact::Error> {
        Ok(BundleSection {
            n1_norm: model_frame.cubic_norm(n1)?,
            n2_norm: model_frame.bilinear_norm(n2)?,
            n3_norm: model_frame.bilinear_norm(n3)?,
            n4_norm: model_frame.covector_norm(n4)?,
            n1: full_tensors.then(|| n1.data().to_vec()),
            n2: full_tensors.then(|| n2.data().to_vec()),
            n3: full_tensors.then(|| n3.data().to_vec()),
            n4: full_tensors.then(|| n4.data().to_vec()),
        })
    };
    let nijenhuis_section = bundle_section(&nb.n1, &nb.n2, &nb.n3, &nb.n4)?;
    let assoc_section = bundle_section(&hb.n1, &hb.n2, &hb.n3, &hb.n4)?;

    let rebuilt = reconstruct_f(&nb, &hb, s);
    let reconstruction_residual =
        model_frame.cubic_norm(&rebuilt.sub(f.tensor()))? / f.norm().max(1.0);

    let p = predicates(f, model.connection.as_ref())?;
    let predicates = PredicateSection {
        normal: p.normal.into(),
        paracontact: p.paracontact.into(),
        para_sasakian: p.para_sasakian.map(Into::into),
        killing_xi: p.killing_xi.into(),
        eta_closed: p.eta_closed.into(),
        h_involutive: p.h_involutive.into(),
        xi_geodesic: p.xi_geodesic.into(),
        phi_integrable: p.phi_integrable.map(Into::into),
    };

    let mut notes = model.notes.clone();
    if model.mode == "example" && dim == 3 {
        let expected = notes
            .iter()
            .find_map(|n| n.strip_prefix("expected class for these parameters: "))
            .map(str::to_string);
        if let Some(expected) = expected {
            let computed = class_label(&members);
            notes.push(if expected == computed {
                format!("computed class {computed} matches the expected class")
            } else {
                format!("computed class {computed} DIFFERS from expected {expected}")
            });
        }
    }
    // split of d eta drives two of the predicate flags; record the norms
    let (de, l1, l3) = d_eta_split(f)?;
    notes.push(format!(
        "|d eta| = {:.6e}, |l1(d eta)| = {:.6e}, |l3(d eta)| = {:.6e}, |L_xi g| = {:.6e}",
        model_frame.bilinear_norm(&de)?,
        model_frame.bilinear_norm(&l1)?,
        model_frame.bilinear_norm(&l3)?,
        model_frame.bilinear_norm(&lie_derivative_g(f))?,
    ));

    Ok(Report {
        mode: model.mode.to_string(),
        dim,
        structure,
        algebra,
        connection,
        fundamental,
        lee_forms,
        classes,
        nijenhuis: nijenhuis_section,
        assoc_nijenhuis: assoc_section,
        reconstruction_residual,
        predicates,
        notes,
    })
}

fn flag_line(name: &str, f: &FlagSection) -> String {
    format!(
        "  {:<16} {:<5} (residual {:.3e})",
        name,
        if f.holds { "yes" } else { "no" },
        f.residual
    )
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let mut push = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    push(format!("mode: {}   dim: {}", r.mode, r.dim));
    push(format!(
        "structure: {}  (worst residual {:.3e})",
        if r.structure.valid {
            "valid"
        } else {
            "INVALID"
        },
        [
            r.structure.phi_xi,
            r.structure.phi_square,
            r.structure.eta_phi,
            r.structure.eta_xi,
            r.structure.trace_phi,
            r.structure.compat_phi,
            r.structure.compat_xi,
        ]
        .into_iter()
        .fold(0.0f64, f64::max)
    ));
    if let Some(a) = &r.algebra {
        push(format!(
            "algebra: {} nonzero brackets, Jacobi residual {:.3e}",
            a.nonzero_brackets.len(),
            a.jacobi_residual
        ));
        for e in &a.nonzero_brackets {
            push(format!(
                "  [E{}, E{}] -> {:+.6} E{}",
                e.i, e.j, e.value, e.k
            ));
        }
    }
    if let Some(c) = &r.connection {
        push(format!(
            "connection: {} nonzero components",
            c.nonzero_gamma.len()
        ));
        for e in &c.nonzero_gamma {
            push(format!(
                "  gamma[{}][{}]^{} = {:+.6}",
                e.i, e.j, e.k, e.value
            ));
        }
    }
    push(format!(
        "fundamental tensor: |F| = {:.6}, symmetry residual {:.3e}",
        r.fundamental.norm, r.fundamental.symmetry_residual
    ));
    if let Some(d3) = &r.fundamental.dim3_scalars {
        push(format!(
            "  dim-3 scalars: theta0 {:+.6}  theta*0 {:+.6}  theta1 {:+.6}  theta2 {:+.6}",
            d3.theta_0, d3.theta_star_0, d3.theta_1, d3.theta_2
        ));
        push(format!(
            "                 omega1 {:+.6}  omega2 {:+.6}  lambda {:+.6}  mu {:+.6}  nu {:+.6}",
            d3.omega_1, d3.omega_2, d3.lambda, d3.mu, d3.nu
        ));
    }
    push(format!(
        "Lee forms: theta(xi) = {:+.6}, theta*(xi) = {:+.6}",
        r.lee_forms.theta_xi, r.lee_forms.theta_star_xi
    ));
    push(format!("class: {}", r.classes.label));
    push("  component norms:".to_string());
    for (i, n) in r.classes.norms.iter().enumerate() {
        push(format!("    |F{:<2}| = {:.6e}", i + 1, n));
    }
    push(format!(
        "  decomposition residual: {:.3e}   members: [{}]",
        r.classes.residual,
        r.classes.members.join(", ")
    ));
    push(format!(
        "Nijenhuis family norms:        N1 {:.6e}  N2 {:.6e}  N3 {:.6e}  N4 {:.6e}",
        r.nijenhuis.n1_norm, r.nijenhuis.n2_norm, r.nijenhuis.n3_norm, r.nijenhuis.n4_norm
    ));
    push(format!(
        "associated family norms:       N1 {:.6e}  N2 {:.6e}  N3 {:.6e}  N4 {:.6e}",
        r.assoc_nijenhuis.n1_norm,
        r.assoc_nijenhuis.n2_norm,
        r.assoc_nijenhuis.n3_norm,
        r.assoc_nijenhuis.n4_norm
    ));
    push(format!(
        "reconstruction from (N, N^): relative residual {:.3e}",
        r.reconstruction_residual
    ));
    push("predicates:".to_string());
    push(flag_line("normal", &r.predicates.normal));
    push(flag_line("paracontact", &r.predicates.paracontact));
    match &r.predicates.para_sasakian {
        Some(f) => push(flag_line("para_sasakian", f)),
        None => push("  para_sasakian    indeterminate (no connection)".to_string()),
    }
    push(flag_line("killing_xi", &r.predicates.killing_xi));
    push(flag_line("eta_closed", &r.predicates.eta_closed));
    push(flag_line("h_involutive", &r.predicates.h_involutive));
    push(flag_line("xi_geodesic", &r.predicates.xi_geodesic));
    match &r.predicates.phi_integrable {
        Some(f) => push(flag_line("phi_integrable", f)),
        None => push("  phi_integrable   indeterminate (no connection)".to_string()),
    }
    if !r.notes.is_empty() {
        push("notes:".to_string());
        for n in &r.notes {
            push(format!("  - {n}"));
        }
    }
    out
}
