//! Plain-text rendering of reports.

use std::fmt::Write;

use super::analysis::{ReportDocument, Status};
use super::audit::AuditTable;
use crate::pseudosym::Fit;
use crate::scalar::Rational;

fn vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(Rational::to_string).collect();
    format!("({})", parts.join(", "))
}

fn fit(f: &Fit) -> String {
    match f {
        Fit::BothZero => "both sides vanish".to_string(),
        Fit::T2Zero => "right side vanishes, left does not".to_string(),
        Fit::Proportional(l) => format!("proportional, L = {l}"),
        Fit::Independent => "independent".to_string(),
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIP",
    }
}

pub fn render_report(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let w = &mut out;
    let spec = &doc.spec;
    let _ = writeln!(w, "manifold {} (dim {}, xi = e{})", spec.label, spec.dim, spec.xi_index);
    for (i, j, k, c) in &spec.structure_constants {
        let _ = writeln!(w, "  [e{i},e{j}] has e{k}-component {c}");
    }
    if let Some(p) = &doc.perturbation {
        let _ = writeln!(w, "ricci perturbed: S(e{},e{}) += {}", p.i, p.j, p.delta);
    }

    let _ = writeln!(w, "\nconnection");
    for c in &doc.connection {
        let _ = writeln!(w, "  nabla_e{} e{} = {}", c.i, c.j, vector(&c.components));
    }

    let cs = &doc.curvature;
    let _ = writeln!(w, "\ncurvature");
    for c in &cs.curvature {
        let _ = writeln!(w, "  R(e{},e{})e{} = {}", c.i, c.j, c.k, vector(&c.components));
    }
    for (i, row) in cs.ricci.iter().enumerate() {
        let _ = writeln!(w, "  S row {} = {}", i + 1, vector(row));
    }
    let _ = writeln!(w, "  scalar curvature {}", cs.scalar_curvature);
    for k in &cs.sectional {
        let _ = writeln!(w, "  K(e{},e{}) = {}", k.i, k.j, k.value);
    }
    let _ = writeln!(w, "  first Bianchi residual {}", cs.bianchi_residual);

    let c = &doc.contact;
    let _ = writeln!(w, "\ncontact structure");
    match &c.error {
        Some(e) => {
            let _ = writeln!(w, "  invalid: {e}");
        }
        None => {
            let _ = writeln!(w, "  valid, n = {}, sasakian = {}", opt(&c.n), opt(&c.sasakian));
            for (name, m) in [("phi", &c.phi), ("h", &c.h)] {
                for (i, row) in m.iter().flatten().enumerate() {
                    let _ = writeln!(w, "  {name} row {} = {}", i + 1, vector(row));
                }
            }
            if let Some(ed) = &c.eigenstructure {
                let _ = writeln!(w, "  lambda = {}", ed.lambda);
                for (name, b) in [("D(0)", &ed.d_zero), ("D(lambda)", &ed.d_plus), ("D(-lambda)", &ed.d_minus)] {
                    let vs: Vec<String> = b.iter().map(|v| vector(v)).collect();
                    let _ = writeln!(w, "  {name}: {}", vs.join(" "));
                }
            }
            if let Some(e) = &c.eigenstructure_error {
                let _ = writeln!(w, "  eigenstructure: {e}");
            }
        }
    }

    let _ = writeln!(w, "\nkappa, mu");
    match (&doc.kappa_mu.parameters, &doc.kappa_mu.error) {
        (Some(p), _) => {
            let _ = writeln!(
                w,
                "  kappa = {}, mu = {}{}, lambda^2 = {}, lambda = {}",
                p.kappa,
                p.mu,
                if p.mu_indeterminate { " (h = 0, from the Ricci closed form)" } else { "" },
                p.lambda_squared,
                opt(&p.lambda)
            );
        }
        (None, Some(e)) => {
            let _ = writeln!(w, "  {e}");
        }
        (None, None) => {
            let _ = writeln!(w, "  not computed");
        }
    }

    let s = &doc.symmetry;
    let _ = writeln!(w, "\nsymmetry");
    let _ = writeln!(w, "  semisymmetric {}", s.semisymmetric);
    let _ = writeln!(w, "  R.R against Q(g,R): {}", fit(&s.pseudosymmetry_fit));
    let _ = writeln!(w, "  R.R against Q(S,R): {}", fit(&s.rgps_fit));
    let _ = writeln!(w, "  R.R against Q(S,R), vector-valued R: {}", fit(&s.rgps_fit_vector_valued));
    let _ = writeln!(w, "  pseudosymmetric {}, rgps {}", s.pseudosymmetric, s.rgps);

    if !doc.identities.is_empty() {
        let _ = writeln!(w, "\nidentities");
        for r in &doc.identities {
            let at = r
                .worst_index
                .as_ref()
                .map(|ix| format!(" at {ix:?}"))
                .unwrap_or_default();
            let _ = writeln!(w, "  {}: residual {}{}", r.identity, r.max_abs, at);
        }
    }
    if let Some(sp) = &doc.spectrum {
        let _ = writeln!(w, "\nsectional spectrum");
        if let Some(why) = &sp.skipped {
            let _ = writeln!(w, "  skipped: {why}");
        }
        for c in &sp.cases {
            let _ = writeln!(w, "  {}: {} planes, residual {}", c.case, c.planes, c.max_abs);
        }
    }
    if let Some(v) = &doc.three_dim {
        let _ = writeln!(w, "\nthree-dimensional classification");
        let _ = writeln!(
            w,
            "  sasakian {}, constant curvature 1 {}, kappa = -mu {}",
            v.sasakian, v.constant_curvature_one, v.kappa_equals_minus_mu
        );
        let _ = writeln!(w, "  predicted rgps {}, operator rgps {}", v.predicted_rgps, v.operator_rgps);
    }
    if let Some(p) = &doc.pair_condition {
        let _ = writeln!(
            w,
            "\npair condition with L = {} on X = {}, Y = {}: residual {}",
            p.l,
            vector(&p.x),
            vector(&p.y),
            p.residual
        );
    }

    let _ = writeln!(w, "\ncertifications");
    for c in &doc.certifications {
        let detail = c.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default();
        let _ = writeln!(w, "  {} {}{}", status(c.status), c.name, detail);
    }
    let _ = writeln!(w, "all certified: {}", doc.all_certified);
    let _ = writeln!(w, "elapsed: {:.3} ms", doc.elapsed.as_secs_f64() * 1000.0);
    out
}

pub fn render_audit(table: &AuditTable) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "audit n = {}..{}", table.n_from, table.n_to);
    for row in &table.rows {
        let triples: Vec<String> = row
            .solutions
            .iter()
            .map(|s| format!("({}, {}, {})", s.triple.kappa, s.triple.mu, s.triple.l))
            .collect();
        let residuals: Vec<String> = row.solutions.iter().map(|s| s.classification_residual.to_string()).collect();
        let a = &row.branch_audit;
        let _ = writeln!(
            w,
            "n = {:>3}  triples {}  residuals {}  positive roots {}  L roots {}  {}",
            row.n,
            triples.join(" "),
            residuals.join(" "),
            a.positive_root.positive_roots,
            vector(&a.l_quadratic.rational_roots),
            if row.certified { "certified" } else { "NOT certified" }
        );
    }
    let _ = writeln!(w, "all certified: {}", table.all_certified);
    out
}
