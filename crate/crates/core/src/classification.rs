//! Parameter-level algebra of Ricci-generalized pseudosymmetric
//! (κ,μ)-manifolds: the scalar condition on (n, κ, μ), its solution families
//! for n > 1, and exact audits of the polynomial eliminations used to rule
//! out the other branches.

use serde::Serialize;
use thiserror::Error;

use crate::poly::{Bound, Polynomial, RationalFunction};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassificationError {
    #[error("n = {0} is outside the range n >= 2")]
    OutOfTheoremRange(u32),
    #[error("empty range {from}..{to}")]
    EmptyRange { from: u32, to: u32 },
}

fn q(v: u32) -> Rational {
    Rational::int(i64::from(v))
}

/// `(1-2n)κμ - nμ² + 2(n-1)(κ+μ)`. Zero iff a (κ,μ)-manifold of dimension
/// `2n+1` satisfies `R·R = L Q(S,R)`.
pub fn classification_residual(n: u32, kappa: &Rational, mu: &Rational) -> Rational {
    let n = q(n);
    let one = Rational::one();
    (&one - Rational::int(2) * &n) * kappa * mu - &n * mu * mu
        + Rational::int(2) * (&n - &one) * (kappa + mu)
}

/// Residuals (left minus right) of the three scalar equations obtained by
/// comparing the `g`, `g(h·,·)` and `η⊗η` parts of the ξ-contracted
/// condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemResiduals {
    /// `κ[2(1-n) + n(2κ+μ)] + μ(κ-1)[2(n-1)+μ]`
    pub eta_part: Rational,
    /// `κ[2(n-1)+μ] + μ[2(n-1)-nμ] - 2nκμ`
    pub h_part: Rational,
    /// `κ[2(n-1)-nμ] - μ(κ-1)[2(n-1)+μ] - 2nκ²`
    pub g_part: Rational,
    /// Sum of the three; equals [`classification_residual`] identically.
    pub combined: Rational,
}

pub fn system_residuals(n: u32, kappa: &Rational, mu: &Rational) -> SystemResiduals {
    let n = q(n);
    let one = Rational::one();
    let two = Rational::int(2);
    let nm1 = &n - &one;
    let b = &two * &nm1 + mu;
    let eta_part = kappa * (&two * (&one - &n) + &n * (&two * kappa + mu)) + mu * (kappa - &one) * &b;
    let h_part = kappa * &b + mu * (&two * &nm1 - &n * mu) - &two * &n * kappa * mu;
    let g_part = kappa * (&two * &nm1 - &n * mu) - mu * (kappa - &one) * &b - &two * &n * kappa * kappa;
    let combined = &eta_part + &h_part + &g_part;
    SystemResiduals {
        eta_part,
        h_part,
        g_part,
        combined,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionTriple {
    pub kappa: Rational,
    pub mu: Rational,
    pub l: Rational,
}

/// The two non-Sasakian parameter families for `n ≥ 2`:
/// `(0, (2n-2)/n, 1/(n+1))` and `(-2/n, 2, 1/n)`.
pub fn rgps_solution_families(n: u32) -> Result<[SolutionTriple; 2], ClassificationError> {
    if n < 2 {
        return Err(ClassificationError::OutOfTheoremRange(n));
    }
    let nn = q(n);
    let inv = |x: Rational| x.recip().expect("n >= 2");
    Ok([
        SolutionTriple {
            kappa: Rational::zero(),
            mu: (Rational::int(2) * &nn - Rational::int(2)).checked_div(&nn).expect("n >= 2"),
            l: inv(&nn + Rational::one()),
        },
        SolutionTriple {
            kappa: Rational::int(-2).checked_div(&nn).expect("n >= 2"),
            mu: Rational::int(2),
            l: inv(nn),
        },
    ])
}

/// `μ = 2(n-1)L / (1-L)`, undefined at `L = 1`.
pub fn mu_from_l(n: u32, l: &Rational) -> Option<Rational> {
    (Rational::int(2) * (q(n) - Rational::one()) * l)
        .checked_div(&(Rational::one() - l))
        .ok()
}

/// The two candidate values of κ from the mixed-eigenspace branches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchConstants {
    pub a: Rational,
    pub b: Rational,
}

impl BranchConstants {
    /// `A = -λμ + L(2(n-1) - nμ + λ[2(n-1)+μ])`,
    /// `B = λμ + L(2(n-1) - nμ - λ[2(n-1)+μ])`.
    pub fn new(n: u32, lambda: &Rational, mu: &Rational, l: &Rational) -> Self {
        let (a0, a1) = Self::parts(n, mu, l);
        BranchConstants {
            a: &a0 + &a1 * lambda,
            b: &a0 - &a1 * lambda,
        }
    }

    /// `A = a0 + a1 λ`, `B = a0 - a1 λ` with `a0 = L(2(n-1) - nμ)` and
    /// `a1 = -μ + L(2(n-1)+μ)`.
    pub fn parts(n: u32, mu: &Rational, l: &Rational) -> (Rational, Rational) {
        let nn = q(n);
        let two_nm1 = Rational::int(2) * (&nn - Rational::one());
        let a0 = l * (&two_nm1 - &nn * mu);
        let a1 = -mu + l * (&two_nm1 + mu);
        (a0, a1)
    }

    /// `κ = A = B` for every λ, i.e. `κ = a0` and `a1 = 0`.
    pub fn consistent_for_all_lambda(n: u32, kappa: &Rational, mu: &Rational, l: &Rational) -> bool {
        let (a0, a1) = Self::parts(n, mu, l);
        a1.is_zero() && *kappa == a0
    }
}

fn poly(coeffs: Vec<Rational>) -> Polynomial {
    Polynomial::new(coeffs)
}

fn rf(p: Polynomial) -> RationalFunction {
    RationalFunction::poly(p)
}

fn konst(c: Rational) -> RationalFunction {
    RationalFunction::constant(c)
}

/// `λ² + (n+1)λ + (5n-4)` has no positive root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositiveRootAudit {
    pub polynomial: String,
    pub positive_roots: usize,
    pub discriminant: Rational,
    /// `-20n + 16 < 0`, the inequality a positive root would have to violate.
    pub inequality_holds: bool,
    /// `κ - A` under `κ = 1-λ²`, `L = (3-λ)/(2(n+1))`, `μ = 2(n-1)L/(1-L)`
    /// has numerator proportional to `(λ-1)(λ² + (n+1)λ + (5n-4))`.
    pub reduction_matches: bool,
    pub certified: bool,
}

/// `(n²+n)L² - (2n+1)L + 1` has exactly the roots `1/(n+1)` and `1/n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LQuadraticAudit {
    pub polynomial: String,
    pub real_roots: usize,
    pub rational_roots: Vec<Rational>,
    /// The two expressions for μ in terms of L agree exactly at these roots:
    /// their difference has numerator proportional to the quadratic.
    pub reduction_matches: bool,
    pub certified: bool,
}

/// The quadratic obtained from `μ = 1∓λ`, `κ = 1-λ²` shares no root with
/// the quadratic whose positive root is `½(±(n-2) + √(n²+8))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultantAudit {
    pub branch: String,
    pub condition: String,
    pub eigenvalue_quadratic: String,
    pub resultant: Rational,
    pub condition_positive_roots: usize,
    pub certified: bool,
}

/// `κ = 1-λ²`, `μ = 2(λ-1)` in the classification condition forces
/// `λ ∈ {1, n/(2n-1)}`, neither of which is a root of `λ² - (n+1)λ + (5n-4)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenvalueConflictAudit {
    pub polynomial: String,
    pub forced_roots: Vec<Rational>,
    pub values_at_forced_roots: Vec<Rational>,
    pub reduction_matches: bool,
    pub certified: bool,
}

/// At `λ = 1`, `κ = 0`, `μ = (2n-2)/n`, `L = 1/(n+1)`, both branch constants
/// vanish and `μ(1 - L(n+1)) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitEigenvalueAudit {
    pub constants: BranchConstants,
    pub sum_relation: Rational,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchAudit {
    pub n: u32,
    pub positive_root: PositiveRootAudit,
    pub l_quadratic: LQuadraticAudit,
    pub resultants: Vec<ResultantAudit>,
    pub eigenvalue_conflict: EigenvalueConflictAudit,
    pub unit_eigenvalue: UnitEigenvalueAudit,
}

impl BranchAudit {
    pub fn certified(&self) -> bool {
        self.positive_root.certified
            && self.l_quadratic.certified
            && self.resultants.iter().all(|r| r.certified)
            && self.eigenvalue_conflict.certified
            && self.unit_eigenvalue.certified
    }
}

fn audit_positive_root(n: u32) -> PositiveRootAudit {
    let nn = q(n);
    let one = Rational::one();
    let two = Rational::int(2);
    let quad = poly(vec![Rational::int(5) * &nn - Rational::int(4), &nn + &one, one.clone()]);
    let positive_roots = quad
        .real_roots_in_interval(&Bound::Finite(Rational::zero()), &Bound::PosInfinity)
        .expect("nonzero polynomial");
    let discriminant = quad.quadratic_discriminant().expect("degree two");
    let inequality_holds = (Rational::int(-20) * &nn + Rational::int(16)).is_negative();

    // λ as the variable; L(λ) = (3-λ)/(2(n+1)).
    let lam = Polynomial::x();
    let l = RationalFunction::new(
        poly(vec![Rational::int(3), -&one]),
        Polynomial::constant(&two * (&nn + &one)),
    )
    .expect("nonzero denominator");
    let two_nm1 = konst(&two * (&nn - &one));
    let one_minus_l = konst(one.clone()).sub(&l);
    let mu = two_nm1.mul(&l).div(&one_minus_l).expect("L is not identically 1");
    let lam_rf = rf(lam.clone());
    let a = lam_rf
        .mul(&mu)
        .mul(&konst(-&one))
        .add(&l.mul(&two_nm1.sub(&konst(nn.clone()).mul(&mu)).add(&lam_rf.mul(&two_nm1.add(&mu)))));
    let kappa = rf(poly(vec![one.clone(), Rational::zero(), -&one]));
    let num = kappa.sub(&a).reduced_numerator();
    let target = &poly(vec![-&one, one.clone()]) * &quad;
    let reduction_matches = num.is_proportional_to(&target);

    PositiveRootAudit {
        polynomial: quad.to_string(),
        positive_roots,
        discriminant,
        inequality_holds,
        reduction_matches,
        certified: positive_roots == 0 && inequality_holds && reduction_matches,
    }
}

fn audit_l_quadratic(n: u32) -> LQuadraticAudit {
    let nn = q(n);
    let one = Rational::one();
    let two = Rational::int(2);
    let quad = poly(vec![
        one.clone(),
        -(&two * &nn + &one),
        &nn * &nn + &nn,
    ]);
    let real_roots = quad.real_root_count().expect("nonzero polynomial");
    let rational_roots = quad.rational_roots();
    let expected = vec![
        (&nn + &one).recip().expect("n >= 1"),
        nn.recip().expect("n >= 1"),
    ];

    let l = rf(Polynomial::x());
    let two_nm1 = konst(&two * (&nn - &one));
    let mu_a = two_nm1
        .mul(&l)
        .div(&konst(one.clone()).sub(&l))
        .expect("L is not identically 1");
    let np1 = konst(&nn + &one);
    let mu_b = two_nm1
        .mul(&konst(-&one))
        .mul(&konst(two.clone()).sub(&l.mul(&np1)))
        .div(
            &konst(&one - Rational::int(3) * &nn)
                .sub(&l.mul(&np1).mul(&konst(&one - &two * &nn))),
        )
        .expect("denominator is not identically zero");
    let diff = mu_a.sub(&mu_b).reduced_numerator();
    let reduction_matches = diff.is_proportional_to(&quad);

    LQuadraticAudit {
        polynomial: quad.to_string(),
        real_roots,
        certified: real_roots == 2 && rational_roots == expected && reduction_matches,
        rational_roots,
        reduction_matches,
    }
}

fn audit_resultants(n: u32) -> Vec<ResultantAudit> {
    let nn = q(n);
    let one = Rational::one();
    let two = Rational::int(2);
    let three = Rational::int(3);
    let minus = ResultantAudit::build(
        "mu = 1 - lambda",
        poly(vec![&three - &nn, &two - &three * &nn, &one - &two * &nn]),
        poly(vec![-(&nn + &one), -(&nn - &two), one.clone()]),
    );
    let plus = ResultantAudit::build(
        "mu = 1 + lambda",
        poly(vec![&nn - &three, &two - &three * &nn, &two * &nn - &one]),
        poly(vec![-(&nn + &one), &nn - &two, one.clone()]),
    );
    vec![minus, plus]
}

impl ResultantAudit {
    fn build(branch: &str, condition: Polynomial, eigen: Polynomial) -> Self {
        let resultant = condition.resultant(&eigen);
        let condition_positive_roots = condition
            .real_roots_in_interval(&Bound::Finite(Rational::zero()), &Bound::PosInfinity)
            .expect("nonzero polynomial");
        ResultantAudit {
            branch: branch.to_string(),
            condition: condition.to_string(),
            eigenvalue_quadratic: eigen.to_string(),
            certified: !resultant.is_zero(),
            resultant,
            condition_positive_roots,
        }
    }
}

fn audit_eigenvalue_conflict(n: u32) -> EigenvalueConflictAudit {
    let nn = q(n);
    let one = Rational::one();
    let two = Rational::int(2);
    let quad = poly(vec![Rational::int(5) * &nn - Rational::int(4), -(&nn + &one), one.clone()]);

    // Classification residual with κ = 1-λ², μ = 2λ-2, as a polynomial in λ.
    let kappa = poly(vec![one.clone(), Rational::zero(), -&one]);
    let mu = poly(vec![-&two, two.clone()]);
    let c = |v: Rational| Polynomial::constant(v);
    let residual = &(&(&c(&one - &two * &nn) * &kappa) * &mu) - &(&c(nn.clone()) * &(&mu * &mu));
    let residual = &residual + &(&c(&two * (&nn - &one)) * &(&kappa + &mu));
    let lam_minus_one = poly(vec![-&one, one.clone()]);
    let target = &(&lam_minus_one * &lam_minus_one) * &poly(vec![-&nn, &two * &nn - &one]);
    let reduction_matches = residual.is_proportional_to(&target);

    let forced_roots = residual.rational_roots();
    let values_at_forced_roots: Vec<Rational> = forced_roots.iter().map(|r| quad.eval(r)).collect();
    let expected_roots = {
        let mut v = vec![one.clone(), nn.checked_div(&(&two * &nn - &one)).expect("n >= 1")];
        v.sort();
        v.dedup();
        v
    };
    EigenvalueConflictAudit {
        polynomial: quad.to_string(),
        certified: reduction_matches
            && forced_roots == expected_roots
            && values_at_forced_roots.iter().all(|v| !v.is_zero()),
        forced_roots,
        values_at_forced_roots,
        reduction_matches,
    }
}

fn audit_unit_eigenvalue(n: u32) -> UnitEigenvalueAudit {
    let nn = q(n);
    let one = Rational::one();
    let mu = (Rational::int(2) * &nn - Rational::int(2)).checked_div(&nn).expect("n >= 1");
    let l = (&nn + &one).recip().expect("n >= 1");
    let constants = BranchConstants::new(n, &one, &mu, &l);
    let sum_relation = &mu * (&one - &l * (&nn + &one));
    UnitEigenvalueAudit {
        certified: constants.a.is_zero() && constants.b.is_zero() && sum_relation.is_zero(),
        constants,
        sum_relation,
    }
}

pub fn branch_audit(n: u32) -> Result<BranchAudit, ClassificationError> {
    if n < 2 {
        return Err(ClassificationError::OutOfTheoremRange(n));
    }
    Ok(BranchAudit {
        n,
        positive_root: audit_positive_root(n),
        l_quadratic: audit_l_quadratic(n),
        resultants: audit_resultants(n),
        eigenvalue_conflict: audit_eigenvalue_conflict(n),
        unit_eigenvalue: audit_unit_eigenvalue(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::frac(p, q)
    }

    #[test]
    fn residual_examples() {
        assert!(classification_residual(2, &r(0, 1), &r(1, 1)).is_zero());
        assert!(classification_residual(2, &r(-1, 1), &r(2, 1)).is_zero());
        assert!(classification_residual(1, &r(-3, 1), &r(3, 1)).is_zero());
        // n = 1 reduces to -μ(κ+μ).
        assert_eq!(classification_residual(1, &r(2, 1), &r(5, 1)), r(-35, 1));
    }

    #[test]
    fn system_residual_values() {
        let s = system_residuals(2, &r(0, 1), &r(1, 1));
        assert_eq!((s.eta_part, s.h_part, s.g_part, s.combined.clone()), (r(-3, 1), r(0, 1), r(3, 1), r(0, 1)));
        let s = system_residuals(1, &r(1, 1), &r(0, 1));
        assert_eq!((s.eta_part, s.h_part, s.g_part), (r(2, 1), r(0, 1), r(-2, 1)));
        assert!(system_residuals(2, &r(-1, 1), &r(2, 1)).combined.is_zero());
    }

    #[test]
    fn solution_examples() {
        let [a, b] = rgps_solution_families(2).unwrap();
        assert_eq!((a.kappa, a.mu, a.l), (r(0, 1), r(1, 1), r(1, 3)));
        assert_eq!((b.kappa, b.mu, b.l), (r(-1, 1), r(2, 1), r(1, 2)));
        let [a, b] = rgps_solution_families(3).unwrap();
        assert_eq!((a.kappa, a.mu, a.l.clone()), (r(0, 1), r(4, 3), r(1, 4)));
        assert_eq!((b.kappa, b.mu, b.l), (r(-2, 3), r(2, 1), r(1, 3)));
        assert_eq!(mu_from_l(2, &r(1, 3)), Some(r(1, 1)));
        assert_eq!(mu_from_l(2, &r(1, 1)), None);
        assert_eq!(rgps_solution_families(1), Err(ClassificationError::OutOfTheoremRange(1)));
    }

    #[test]
    fn audit_n2() {
        let a = branch_audit(2).unwrap();
        assert_eq!(a.positive_root.positive_roots, 0);
        assert_eq!(a.positive_root.discriminant, r(-15, 1));
        assert_eq!(a.l_quadratic.rational_roots, vec![r(1, 3), r(1, 2)]);
        assert!(a.certified(), "{a:#?}");
        assert!(branch_audit(1).is_err());
    }

    #[test]
    fn audit_n20_has_real_but_negative_roots() {
        let a = branch_audit(20).unwrap();
        assert!(a.positive_root.discriminant.is_positive());
        assert_eq!(a.positive_root.positive_roots, 0);
        assert!(a.certified());
    }
}
