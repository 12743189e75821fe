//! The full pipeline on one manifold document.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use super::spec::{ManifoldSpec, SpecError};
use crate::contact::{h_eigenstructure, is_sasakian, verify_nabla_xi, ContactMetricStructure};
use crate::curvature::Geometry;
use crate::kappa_mu::{
    detect_kappa_mu, rgps_residual_homogeneous, sectional_spectrum_check, three_dim_rgps_check,
    verify_ricci_identities, KappaMuParameters, Residual, SpectrumReport, ThreeDimVerdict,
};
use crate::linalg::Matrix;
use crate::pseudosym::{classify_symmetry, SymmetryReport};
use crate::scalar::Rational;
use crate::tensor::{basis, Tensor, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("ricci perturbation index ({i}, {j}) out of range for dimension {dim}")]
    PerturbationOutOfRange { i: usize, j: usize, dim: usize },
}

/// Adds `delta` to `S(e_i, e_j)` before the identity checks; 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RicciPerturbation {
    pub i: usize,
    pub j: usize,
    pub delta: Rational,
}

#[derive(Debug, Clone, Default)]
pub struct AnalysisOptions {
    pub perturb_ricci: Option<RicciPerturbation>,
}

/// Nonzero `∇_{e_i} e_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectionEntry {
    pub i: usize,
    pub j: usize,
    pub components: Vec<Rational>,
}

/// Nonzero `R(e_i, e_j) e_k` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurvatureEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub components: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionalEntry {
    pub i: usize,
    pub j: usize,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurvatureSummary {
    pub curvature: Vec<CurvatureEntry>,
    pub ricci: Vec<Vec<Rational>>,
    pub scalar_curvature: Rational,
    pub sectional: Vec<SectionalEntry>,
    pub bianchi_residual: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenSummary {
    pub lambda: Rational,
    pub d_zero: Vec<Vector>,
    pub d_plus: Vec<Vector>,
    pub d_minus: Vec<Vector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContactSummary {
    pub valid: bool,
    pub error: Option<String>,
    pub n: Option<usize>,
    pub phi: Option<Vec<Vec<Rational>>>,
    pub h: Option<Vec<Vec<Rational>>>,
    pub sasakian: Option<bool>,
    pub eigenstructure: Option<EigenSummary>,
    pub eigenstructure_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KappaMuSummary {
    pub parameters: Option<KappaMuParameters>,
    pub error: Option<String>,
}

/// The necessary pair condition for `R·R = L Q(S,R)` evaluated on the
/// first eigenvectors of `D(λ)` and `D(-λ)` with the fitted `L`.
/// Reported only; it is not a certification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCondition {
    pub l: Rational,
    pub x: Vector,
    pub y: Vector,
    pub residual: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certification {
    pub name: String,
    pub status: Status,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub spec: ManifoldSpec,
    pub perturbation: Option<RicciPerturbation>,
    pub connection: Vec<ConnectionEntry>,
    pub curvature: CurvatureSummary,
    pub contact: ContactSummary,
    pub kappa_mu: KappaMuSummary,
    pub symmetry: SymmetryReport,
    pub identities: Vec<Residual>,
    pub spectrum: Option<SpectrumReport>,
    pub three_dim: Option<ThreeDimVerdict>,
    pub pair_condition: Option<PairCondition>,
    pub certifications: Vec<Certification>,
    pub all_certified: bool,
    /// Wall time; left out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn rebase(mut r: Residual) -> Residual {
    r.worst_index = r.worst_index.map(|ix| one_based(&ix));
    r
}

fn rows(m: &Matrix) -> Vec<Vec<Rational>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn component(t: &Tensor, prefix: &[usize]) -> Vector {
    (0..t.dim())
        .map(|l| {
            let mut ix = vec![l];
            ix.extend_from_slice(prefix);
            t.get(&ix).clone()
        })
        .collect()
}

fn nonzero(v: &[Rational]) -> bool {
    v.iter().any(|c| !c.is_zero())
}

fn curvature_summary(geo: &Geometry) -> CurvatureSummary {
    let d = geo.dim();
    let r = &geo.riemann;
    let mut curvature = Vec::new();
    let mut sectional = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            for k in 0..d {
                let components = component(r, &[k, i, j]);
                if nonzero(&components) {
                    curvature.push(CurvatureEntry {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        components,
                    });
                }
            }
            sectional.push(SectionalEntry {
                i: i + 1,
                j: j + 1,
                value: geo.sectional(&basis(d, i), &basis(d, j)).expect("frame vectors are independent"),
            });
        }
    }
    // R(e_i,e_j)e_k + R(e_j,e_k)e_i + R(e_k,e_i)e_j, stored as R[l][k][i][j]
    let bianchi = Tensor::from_fn(d, 1, 3, |ix| {
        let (l, i, j, k) = (ix[0], ix[1], ix[2], ix[3]);
        r.get(&[l, k, i, j]) + r.get(&[l, i, j, k]) + r.get(&[l, j, k, i])
    });
    CurvatureSummary {
        curvature,
        ricci: rows(&geo.ricci.to_matrix()),
        scalar_curvature: geo.scalar_curvature(),
        sectional,
        bianchi_residual: bianchi.max_abs(),
    }
}

fn certification(name: &str, status: Status, detail: Option<String>) -> Certification {
    Certification {
        name: name.to_string(),
        status,
        detail,
    }
}

fn pass_fail(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn pair_condition(
    s: &ContactMetricStructure,
    geo: &Geometry,
    p: &KappaMuParameters,
    symmetry: &SymmetryReport,
) -> Option<PairCondition> {
    let l = symmetry.rgps_constant.clone()?;
    let ed = h_eigenstructure(s).ok()?;
    let (x, y) = (ed.basis_plus.first()?.clone(), ed.basis_minus.first()?.clone());
    let residual = rgps_residual_homogeneous(s, geo, p, &l, &x, &y).ok()?;
    Some(PairCondition { l, x, y, residual })
}

/// Runs every stage; later stages are skipped, not aborted, when an earlier
/// one reports a typed failure.
pub fn run_analysis(spec: &ManifoldSpec, options: &AnalysisOptions) -> Result<ReportDocument, AnalysisError> {
    let start = Instant::now();
    let metric = spec.metric_frame().map_err(|e| SpecError::BadMetric(e.to_string()))?;
    let mut geo = Geometry::compute(metric.clone());
    let d = geo.dim();
    if let Some(p) = &options.perturb_ricci {
        if p.i == 0 || p.j == 0 || p.i > d || p.j > d {
            return Err(AnalysisError::PerturbationOutOfRange { i: p.i, j: p.j, dim: d });
        }
        *geo.ricci.get_mut(&[p.i - 1, p.j - 1]) += p.delta.clone();
    }

    let mut connection = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let components = component(&geo.gamma, &[i, j]);
            if nonzero(&components) {
                connection.push(ConnectionEntry {
                    i: i + 1,
                    j: j + 1,
                    components,
                });
            }
        }
    }
    let curvature = curvature_summary(&geo);
    let symmetry = classify_symmetry(&geo.metric, &geo.riemann, &geo.ricci);
    let mut certifications = vec![certification(
        "first Bianchi identity",
        pass_fail(curvature.bianchi_residual.is_zero()),
        None,
    )];

    let structure = ContactMetricStructure::build(metric, spec.xi_index0());
    let mut contact = ContactSummary {
        valid: structure.is_ok(),
        error: structure.as_ref().err().map(|e| e.to_string()),
        n: None,
        phi: None,
        h: None,
        sasakian: None,
        eigenstructure: None,
        eigenstructure_error: None,
    };
    let mut kappa_mu = KappaMuSummary {
        parameters: None,
        error: None,
    };
    let mut identities = Vec::new();
    let mut spectrum = None;
    let mut three_dim = None;
    let mut pair = None;

    match &structure {
        Err(e) => {
            let why = Some(format!("no contact metric structure: {e}"));
            for name in ["nabla xi identity", "kappa-mu identities", "sectional spectrum"] {
                certifications.push(certification(name, Status::Skipped, why.clone()));
            }
        }
        Ok(s) => {
            contact.n = Some(s.n());
            contact.phi = Some(rows(&s.phi().to_matrix()));
            contact.h = Some(rows(&s.h().to_matrix()));
            contact.sasakian = Some(is_sasakian(s, &geo.gamma));
            match h_eigenstructure(s) {
                Ok(ed) => {
                    contact.eigenstructure = Some(EigenSummary {
                        lambda: ed.lambda,
                        d_zero: ed.basis_zero,
                        d_plus: ed.basis_plus,
                        d_minus: ed.basis_minus,
                    })
                }
                Err(e) => contact.eigenstructure_error = Some(e.to_string()),
            }
            let nabla_xi = rebase(Residual::from_tensor("nabla_X xi = -phi X - phi h X", &verify_nabla_xi(s, &geo.gamma)));
            certifications.push(certification("nabla xi identity", pass_fail(nabla_xi.is_zero()), None));
            identities.push(nabla_xi);

            match detect_kappa_mu(s, &geo.riemann) {
                Err(e) => {
                    kappa_mu.error = Some(e.to_string());
                    let why = Some(e.to_string());
                    certifications.push(certification("kappa-mu identities", Status::Skipped, why.clone()));
                    certifications.push(certification("sectional spectrum", Status::Skipped, why));
                }
                Ok(p) => {
                    let suite: Vec<Residual> = verify_ricci_identities(s, &geo.riemann, &geo.ricci, &p)
                        .into_iter()
                        .map(rebase)
                        .collect();
                    let failing: Vec<&str> = suite.iter().filter(|r| !r.is_zero()).map(|r| r.identity.as_str()).collect();
                    certifications.push(certification(
                        "kappa-mu identities",
                        pass_fail(failing.is_empty()),
                        (!failing.is_empty()).then(|| format!("nonzero: {}", failing.join("; "))),
                    ));
                    identities.extend(suite);

                    let spec_report = sectional_spectrum_check(s, &geo, &p);
                    let status = match &spec_report.skipped {
                        Some(_) => Status::Skipped,
                        None => pass_fail(spec_report.is_zero()),
                    };
                    certifications.push(certification("sectional spectrum", status, spec_report.skipped.clone()));
                    spectrum = Some(spec_report);

                    if d == 3 {
                        let verdict = three_dim_rgps_check(s, &geo, &p).expect("dimension is three");
                        certifications.push(certification(
                            "three-dimensional RGPS classification",
                            pass_fail(verdict.agree),
                            (!verdict.agree).then(|| {
                                format!(
                                    "parameter test predicts rgps = {}, operator test finds rgps = {}",
                                    verdict.predicted_rgps, verdict.operator_rgps
                                )
                            }),
                        ));
                        three_dim = Some(verdict);
                    }
                    pair = pair_condition(s, &geo, &p, &symmetry);
                    kappa_mu.parameters = Some(p);
                }
            }
        }
    }

    let all_certified = certifications.iter().all(|c| c.status != Status::Fail);
    Ok(ReportDocument {
        spec: spec.clone(),
        perturbation: options.perturb_ricci.clone(),
        connection,
        curvature,
        contact,
        kappa_mu,
        symmetry,
        identities,
        spectrum,
        three_dim,
        pair_condition: pair,
        certifications,
        all_certified,
        elapsed: start.elapsed(),
    })
}
