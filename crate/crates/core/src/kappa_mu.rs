//! Detection of the (κ,μ)-nullity condition on ξ and the identities that
//! follow from it.

use serde::Serialize;
use thiserror::Error;

use crate::contact::{h_eigenstructure, is_sasakian, ContactError, ContactMetricStructure, EigenDistributions};
use crate::curvature::{curvature_apply, ricci_tensor, Geometry};
use crate::linalg::Matrix;
use crate::pseudosym::{classify_symmetry, proportionality_fit, Fit};
use crate::scalar::Rational;
use crate::tensor::{basis, vec_add, vec_scale, vec_sub, Tensor, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KappaMuError {
    #[error("curvature does not satisfy the (kappa, mu)-nullity condition for any constants")]
    NotKappaMu,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("the three-dimensional classification needs dim 3, got {0}")]
    DimensionNotThree(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KappaMuParameters {
    pub n: usize,
    pub kappa: Rational,
    pub mu: Rational,
    /// `1 - κ`.
    pub lambda_squared: Rational,
    /// `√(1 - κ)` when rational.
    pub lambda: Option<Rational>,
    /// Set when `h = 0`, so the μ-term vanishes. μ is then taken from the
    /// closed form of `S(X,Y)` when that has a solution, and 0 otherwise.
    pub mu_indeterminate: bool,
}

/// Solves `R(X,Y)ξ = κ{η(Y)X - η(X)Y} + μ{η(Y)hX - η(X)hY}` for κ, μ.
pub fn detect_kappa_mu(s: &ContactMetricStructure, r: &Tensor) -> Result<KappaMuParameters, KappaMuError> {
    let d = s.dim();
    let h = s.h();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (basis(d, i), basis(d, j));
            let (ex, ey) = (s.eta_of(&x), s.eta_of(&y));
            let k_col = vec_sub(&vec_scale(&x, &ey), &vec_scale(&y, &ex));
            let m_col = vec_sub(&vec_scale(&h.apply(&x), &ey), &vec_scale(&h.apply(&y), &ex));
            let lhs = curvature_apply(r, &x, &y, s.xi());
            for l in 0..d {
                rows.push(vec![k_col[l].clone(), m_col[l].clone()]);
                rhs.push(lhs[l].clone());
            }
        }
    }
    let (sol, rank) = Matrix::from_rows(rows).solve(&rhs).ok_or(KappaMuError::NotKappaMu)?;
    let kappa = sol[0].clone();
    let mu_indeterminate = rank < 2;
    let mu = if mu_indeterminate { mu_from_ricci(s, r, &kappa) } else { sol[1].clone() };
    let lambda_squared = Rational::one() - &kappa;
    Ok(KappaMuParameters {
        n: s.n(),
        lambda: lambda_squared.sqrt_exact(),
        lambda_squared,
        kappa,
        mu,
        mu_indeterminate,
    })
}

/// With `h = 0` the closed form reads
/// `S = 2(n-1)g + (2(1-n) + 2nκ)η⊗η + μ n(η⊗η - g)`; solve it for μ.
fn mu_from_ricci(s: &ContactMetricStructure, r: &Tensor, kappa: &Rational) -> Rational {
    let d = s.dim();
    let m = s.metric();
    let ricci = ricci_tensor(r);
    let n = Rational::int(s.n() as i64);
    let two = Rational::int(2);
    let eta_coeff = &two * (Rational::one() - &n) + &two * &n * kappa;
    let g = |i: usize, j: usize| m.inner(&basis(d, i), &basis(d, j));
    let ee = |i: usize, j: usize| s.eta_of(&basis(d, i)) * s.eta_of(&basis(d, j));
    let target = Tensor::from_fn(d, 0, 2, |ix| {
        let (i, j) = (ix[0], ix[1]);
        ricci.get(ix) - &two * (&n - Rational::one()) * g(i, j) - &eta_coeff * ee(i, j)
    });
    let coeff = Tensor::from_fn(d, 0, 2, |ix| &n * (ee(ix[0], ix[1]) - g(ix[0], ix[1])));
    match proportionality_fit(&target, &coeff).expect("same shape") {
        Fit::Proportional(mu) => mu,
        _ => Rational::zero(),
    }
}

/// Largest deviation of one identity over the frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub identity: String,
    pub max_abs: Rational,
    /// Frame indices of the largest entry, when nonzero.
    pub worst_index: Option<Vec<usize>>,
}

impl Residual {
    pub fn from_tensor(identity: &str, t: &Tensor) -> Self {
        let worst = t.worst_entry();
        Residual {
            identity: identity.to_string(),
            max_abs: worst.as_ref().map_or_else(Rational::zero, |(_, v)| v.clone()),
            worst_index: worst.map(|(ix, _)| ix),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs.is_zero()
    }
}

fn write_vec(t: &mut Tensor, prefix: &[usize], v: &[Rational]) {
    let mut ix = vec![0];
    ix.extend_from_slice(prefix);
    for (l, c) in v.iter().enumerate() {
        ix[0] = l;
        t.set(&ix, c.clone());
    }
}

/// Residuals of the five consequences of the nullity condition:
/// `S(X,ξ) = 2nκη(X)`, `h² = (κ-1)φ²`, `R(ξ,X)Y` in closed form, and the
/// closed forms of `S(X,Y)` and `S(hX,Y)`.
pub fn verify_ricci_identities(
    s: &ContactMetricStructure,
    r: &Tensor,
    ricci: &Tensor,
    p: &KappaMuParameters,
) -> Vec<Residual> {
    let d = s.dim();
    let m = s.metric();
    let n = Rational::int(p.n as i64);
    let (kappa, mu) = (&p.kappa, &p.mu);
    let two = Rational::int(2);
    let nm1 = &n - Rational::one();
    let a = &two * &nm1 - &n * mu;
    let b = &two * &nm1 + mu;
    let c = &two * (Rational::one() - &n) + &n * (&two * kappa + mu);
    let km1 = kappa - Rational::one();
    let h = s.h();
    let phi = s.phi();
    let e = |i: usize| basis(d, i);

    let ricci_xi = Tensor::from_fn(d, 0, 1, |ix| {
        let x = e(ix[0]);
        ricci.eval2(&x, s.xi()) - &two * &n * kappa * s.eta_of(&x)
    });

    let hm = h.to_matrix();
    let pm = phi.to_matrix();
    let h_squared = Tensor::endomorphism(&hm.mul(&hm).sub(&pm.mul(&pm).scale(&km1)));

    let mut r_xi = Tensor::zeros(d, 1, 2);
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (e(i), e(j));
            let lhs = curvature_apply(r, s.xi(), &x, &y);
            let ey = s.eta_of(&y);
            let k_part = vec_sub(&vec_scale(s.xi(), &m.inner(&x, &y)), &vec_scale(&x, &ey));
            let hx = h.apply(&x);
            let m_part = vec_sub(&vec_scale(s.xi(), &m.inner(&hx, &y)), &vec_scale(&hx, &ey));
            let rhs = vec_add(&vec_scale(&k_part, kappa), &vec_scale(&m_part, mu));
            write_vec(&mut r_xi, &[i, j], &vec_sub(&lhs, &rhs));
        }
    }

    let ricci_form = Tensor::from_fn(d, 0, 2, |ix| {
        let (x, y) = (e(ix[0]), e(ix[1]));
        let rhs = &a * m.inner(&x, &y) + &b * m.inner(&h.apply(&x), &y) + &c * s.eta_of(&x) * s.eta_of(&y);
        ricci.eval2(&x, &y) - rhs
    });

    let ricci_h_form = Tensor::from_fn(d, 0, 2, |ix| {
        let (x, y) = (e(ix[0]), e(ix[1]));
        let hx = h.apply(&x);
        let rhs = &a * m.inner(&hx, &y) - &km1 * &b * m.inner(&x, &y) + &km1 * &b * s.eta_of(&x) * s.eta_of(&y);
        ricci.eval2(&hx, &y) - rhs
    });

    vec![
        Residual::from_tensor("S(X,xi) = 2n kappa eta(X)", &ricci_xi),
        Residual::from_tensor("h^2 = (kappa-1) phi^2", &h_squared),
        Residual::from_tensor("R(xi,X)Y = kappa{g(X,Y)xi - eta(Y)X} + mu{g(hX,Y)xi - eta(Y)hX}", &r_xi),
        Residual::from_tensor("S(X,Y) closed form", &ricci_form),
        Residual::from_tensor("S(hX,Y) closed form", &ricci_h_form),
    ]
}

/// Outcome of one family of sectional-curvature checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumCase {
    pub case: String,
    pub planes: usize,
    pub max_abs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    /// Why the check did not run, if it did not.
    pub skipped: Option<String>,
    pub cases: Vec<SpectrumCase>,
}

impl SpectrumReport {
    pub fn is_zero(&self) -> bool {
        self.cases.iter().all(|c| c.max_abs.is_zero())
    }
}

fn case(name: &str, deviations: Vec<Rational>) -> SpectrumCase {
    SpectrumCase {
        case: name.to_string(),
        planes: deviations.len(),
        max_abs: Rational::max_abs(&deviations),
    }
}

/// Compares sectional curvatures on eigenplanes of `h` with their closed forms.
pub fn sectional_spectrum_check(
    s: &ContactMetricStructure,
    geo: &Geometry,
    p: &KappaMuParameters,
) -> SpectrumReport {
    let skipped = |why: &str| SpectrumReport {
        skipped: Some(why.to_string()),
        cases: Vec::new(),
    };
    let ed = match h_eigenstructure(s) {
        Ok(ed) => ed,
        Err(ContactError::IrrationalEigenvalue { .. }) => return skipped("lambda is irrational"),
        Err(_) => return skipped("h^2 is not scalar on the contact distribution"),
    };
    if ed.lambda.is_zero() {
        return skipped("lambda = 0");
    }
    spectrum_on(s, geo, p, &ed)
}

fn spectrum_on(
    s: &ContactMetricStructure,
    geo: &Geometry,
    p: &KappaMuParameters,
    ed: &EigenDistributions,
) -> SpectrumReport {
    let m = s.metric();
    let lam = &ed.lambda;
    let (kappa, mu) = (&p.kappa, &p.mu);
    let k = |x: &[Rational], y: &[Rational]| geo.sectional(x, y).expect("eigenvectors span planes");
    let xi = s.xi();
    let plus_xi = ed
        .basis_plus
        .iter()
        .map(|x| k(x, xi) - (kappa + lam * mu))
        .collect();
    let minus_xi = ed
        .basis_minus
        .iter()
        .map(|x| k(x, xi) - (kappa - lam * mu))
        .collect();
    let mut mixed = Vec::new();
    for x in &ed.basis_plus {
        for y in &ed.basis_minus {
            let gp = m.inner(x, &s.phi().apply(y));
            let expected = (-(kappa + mu) * &gp * &gp)
                .checked_div(&(m.norm_sq(x) * m.norm_sq(y)))
                .expect("eigenvectors are nonzero");
            mixed.push(k(x, y) - expected);
        }
    }
    let mut cases = vec![
        case("K(X,xi) = kappa + lambda mu, X in D(lambda)", plus_xi),
        case("K(X,xi) = kappa - lambda mu, X in D(-lambda)", minus_xi),
        case("K(X,Y) = -(kappa+mu) g(X,phi Y)^2, X in D(lambda), Y in D(-lambda)", mixed),
    ];
    if p.n > 1 {
        let two = Rational::int(2);
        let same = |b: &[Vector], target: Rational| -> Vec<Rational> {
            let mut out = Vec::new();
            for (i, x) in b.iter().enumerate() {
                for y in &b[i + 1..] {
                    out.push(k(x, y) - &target);
                }
            }
            out
        };
        cases.push(case(
            "K(X,Y) = 2(1+lambda) - mu, X,Y in D(lambda)",
            same(&ed.basis_plus, &two * (Rational::one() + lam) - mu),
        ));
        cases.push(case(
            "K(X,Y) = 2(1-lambda) - mu, X,Y in D(-lambda)",
            same(&ed.basis_minus, &two * (Rational::one() - lam) - mu),
        ));
    }
    SpectrumReport { skipped: None, cases }
}

fn check_pair(s: &ContactMetricStructure, x: &[Rational], y: &[Rational], unit: bool) -> Result<(), KappaMuError> {
    let m = s.metric();
    if x.len() != s.dim() || y.len() != s.dim() {
        return Err(KappaMuError::Precondition("vector length differs from the frame dimension"));
    }
    if !s.eta_of(x).is_zero() || !s.eta_of(y).is_zero() {
        return Err(KappaMuError::Precondition("X and Y must be orthogonal to xi"));
    }
    if !m.inner(x, y).is_zero() {
        return Err(KappaMuError::Precondition("X and Y must be orthogonal"));
    }
    let (nx, ny) = (m.norm_sq(x), m.norm_sq(y));
    if unit && (!nx.is_one() || !ny.is_one()) {
        return Err(KappaMuError::Precondition("X and Y must be unit vectors"));
    }
    if nx.is_zero() || ny.is_zero() {
        return Err(KappaMuError::Precondition("X and Y must be nonzero"));
    }
    Ok(())
}

/// Both sides of the necessary condition for `R·R = L Q(S,R)` on a unit
/// orthonormal pair, scaled so each term has degree two in X and in Y.
/// Returns `(lhs, rhs)`.
fn pair_sides(
    s: &ContactMetricStructure,
    geo: &Geometry,
    p: &KappaMuParameters,
    x: &[Rational],
    y: &[Rational],
) -> (Rational, Rational) {
    let m = s.metric();
    let h = s.h();
    let ricci = &geo.ricci;
    let (kappa, mu) = (&p.kappa, &p.mu);
    let (nx, ny) = (m.norm_sq(x), m.norm_sq(y));
    let rxyy = curvature_apply(&geo.riemann, x, y, y);
    let (hx, hy) = (h.apply(x), h.apply(y));
    let ghxy = m.inner(&hx, y);
    let lhs = kappa * m.inner(x, &rxyy) + mu * m.inner(&hx, &rxyy)
        - (kappa * &nx + mu * m.inner(&hx, x)) * (kappa * &ny + mu * m.inner(&hy, y))
        + mu * mu * &ghxy * &ghxy;
    let sxx = ricci.eval2(x, x);
    let rhs = ricci.eval2(x, &rxyy) - kappa * &sxx * &ny - mu * &sxx * m.inner(&hy, y)
        + mu * ricci.eval2(x, y) * &ghxy;
    (lhs, rhs)
}

/// `LHS - L·RHS` for unit, orthogonal X, Y orthogonal to ξ.
pub fn rgps_residual(
    s: &ContactMetricStructure,
    geo: &Geometry,
    p: &KappaMuParameters,
    l: &Rational,
    x: &[Rational],
    y: &[Rational],
) -> Result<Rational, KappaMuError> {
    check_pair(s, x, y, true)?;
    let (lhs, rhs) = pair_sides(s, geo, p, x, y);
    Ok(lhs - l * rhs)
}

/// The same residual for orthogonal X, Y of any nonzero length; it equals
/// `g(X,X) g(Y,Y)` times the residual at the normalized pair.
pub fn rgps_residual_homogeneous(
    s: &ContactMetricStructure,
    geo: &Geometry,
    p: &KappaMuParameters,
    l: &Rational,
    x: &[Rational],
    y: &[Rational],
) -> Result<Rational, KappaMuError> {
    check_pair(s, x, y, false)?;
    let (lhs, rhs) = pair_sides(s, geo, p, x, y);
    Ok(lhs - l * rhs)
}

/// `R(X,Y)Z = c(g(Y,Z)X - g(X,Z)Y)` on the whole frame.
pub fn has_constant_curvature(geo: &Geometry, c: &Rational) -> bool {
    let d = geo.dim();
    let m = &geo.metric;
    let e = |i| basis(d, i);
    (0..d).all(|i| {
        (0..d).all(|j| {
            (0..d).all(|k| {
                let (x, y, z) = (e(i), e(j), e(k));
                let model = vec_scale(&vec_sub(&vec_scale(&x, &m.inner(&y, &z)), &vec_scale(&y, &m.inner(&x, &z))), c);
                curvature_apply(&geo.riemann, &x, &y, &z) == model
            })
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeDimVerdict {
    pub sasakian: bool,
    pub constant_curvature_one: bool,
    pub kappa_equals_minus_mu: bool,
    /// Parameter-level prediction: Sasakian of curvature 1, or κ = -μ.
    pub predicted_rgps: bool,
    pub operator_fit: Fit,
    pub operator_rgps: bool,
    pub agree: bool,
}

/// Three-dimensional classification, compared with the operator test.
pub fn three_dim_rgps_check(
    s: &ContactMetricStructure,
    geo: &Geometry,
    p: &KappaMuParameters,
) -> Result<ThreeDimVerdict, KappaMuError> {
    if s.dim() != 3 {
        return Err(KappaMuError::DimensionNotThree(s.dim()));
    }
    let sasakian = is_sasakian(s, &geo.gamma);
    let constant_curvature_one = has_constant_curvature(geo, &Rational::one());
    let kappa_equals_minus_mu = p.kappa == -&p.mu;
    let predicted_rgps = (sasakian && constant_curvature_one) || kappa_equals_minus_mu;
    let report = classify_symmetry(&geo.metric, &geo.riemann, &geo.ricci);
    Ok(ThreeDimVerdict {
        sasakian,
        constant_curvature_one,
        kappa_equals_minus_mu,
        predicted_rgps,
        operator_rgps: report.rgps,
        agree: predicted_rgps == report.rgps,
        operator_fit: report.rgps_fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{family_frame, MetricFrame};

    fn r(p: i64, q: i64) -> Rational {
        Rational::frac(p, q)
    }

    fn setup(c2: Rational, c3: Rational) -> (ContactMetricStructure, Geometry) {
        let m = MetricFrame::orthonormal(family_frame(r(2, 1), c2, c3));
        let s = ContactMetricStructure::build(m.clone(), 0).unwrap();
        (s, Geometry::compute(m))
    }

    fn e(i: usize) -> Vector {
        basis(3, i)
    }

    #[test]
    fn detection_examples() {
        let (s, g) = setup(r(-5, 2), r(3, 2));
        let p = detect_kappa_mu(&s, &g.riemann).unwrap();
        assert_eq!((p.kappa.clone(), p.mu.clone()), (r(-3, 1), r(3, 1)));
        assert_eq!(p.lambda, Some(r(2, 1)));
        assert!(!p.mu_indeterminate);

        let (s, g) = setup(r(1, 1), r(1, 1));
        let p = detect_kappa_mu(&s, &g.riemann).unwrap();
        assert_eq!(p.kappa, r(1, 1));
        assert!(p.mu_indeterminate);
        assert!(p.mu.is_zero());
    }

    #[test]
    fn identity_suite_vanishes_on_family() {
        let (s, g) = setup(r(-5, 2), r(3, 2));
        let p = detect_kappa_mu(&s, &g.riemann).unwrap();
        for res in verify_ricci_identities(&s, &g.riemann, &g.ricci, &p) {
            assert!(res.is_zero(), "{}", res.identity);
        }
        let mut bad = g.ricci.clone();
        *bad.get_mut(&[1, 1]) += Rational::one();
        let res = verify_ricci_identities(&s, &g.riemann, &bad, &p);
        assert!(!res[3].is_zero());
    }

    #[test]
    fn sasakian_ricci_along_xi() {
        let (s, g) = setup(r(1, 1), r(1, 1));
        let p = detect_kappa_mu(&s, &g.riemann).unwrap();
        assert_eq!(g.ricci.eval2(s.xi(), s.xi()), r(2, 1));
        assert!(verify_ricci_identities(&s, &g.riemann, &g.ricci, &p)[0].is_zero());
    }

    #[test]
    fn spectrum_examples() {
        let (s, g) = setup(r(-5, 2), r(3, 2));
        let p = detect_kappa_mu(&s, &g.riemann).unwrap();
        assert_eq!(g.sectional(&e(1), &e(0)).unwrap(), r(3, 1));
        assert_eq!(g.sectional(&e(2), &e(0)).unwrap(), r(-9, 1));
        assert_eq!(g.sectional(&e(1), &e(2)).unwrap(), Rational::zero());
        let rep = sectional_spectrum_check(&s, &g, &p);
        assert!(rep.skipped.is_none());
        assert_eq!(rep.cases.len(), 3);
        assert!(rep.is_zero());
        let (s, g) = setup(r(1, 1), r(1, 1));
        let p = detect_kappa_mu(&s, &g.riemann).unwrap();
        assert!(sectional_spectrum_check(&s, &g, &p).skipped.is_some());
    }

    #[test]
    fn pair_residual_preconditions_and_scaling() {
        let (s, g) = setup(r(0, 1), r(1, 1));
        let p = detect_kappa_mu(&s, &g.riemann).unwrap();
        let l = r(1, 2);
        assert!(matches!(
            rgps_residual(&s, &g, &p, &l, &e(1), &e(1)),
            Err(KappaMuError::Precondition(_))
        ));
        assert!(rgps_residual(&s, &g, &p, &l, &e(0), &e(1)).is_err());
        let unit = rgps_residual(&s, &g, &p, &l, &e(1), &e(2)).unwrap();
        let scaled = rgps_residual_homogeneous(&s, &g, &p, &l, &vec_scale(&e(1), &r(3, 1)), &vec_scale(&e(2), &r(-1, 2))).unwrap();
        assert_eq!(scaled, unit * r(9, 4));
    }

    #[test]
    fn kappa_minus_mu_pair_residual_vanishes_at_fitted_constant() {
        let (s, g) = setup(r(-5, 2), r(3, 2));
        let p = detect_kappa_mu(&s, &g.riemann).unwrap();
        let rep = classify_symmetry(&g.metric, &g.riemann, &g.ricci);
        let l = rep.rgps_constant.unwrap();
        assert!(rgps_residual(&s, &g, &p, &l, &e(1), &e(2)).unwrap().is_zero());
    }

    #[test]
    fn three_dim_check_rejects_other_dimensions() {
        use crate::frame::LieFrame;
        let f = LieFrame::from_sparse(5, &[(1, 3, 0, r(2, 1)), (2, 4, 0, r(2, 1))]).unwrap();
        let m = MetricFrame::orthonormal(f);
        let s = ContactMetricStructure::build(m.clone(), 0).unwrap();
        let g = Geometry::compute(m);
        let p = detect_kappa_mu(&s, &g.riemann).unwrap();
        assert_eq!(three_dim_rgps_check(&s, &g, &p), Err(KappaMuError::DimensionNotThree(5)));
    }
}
