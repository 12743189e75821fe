//! Sweep of the `n ≥ 2` solution families and their branch audits.

use serde::Serialize;

use crate::classification::{
    branch_audit, classification_residual, mu_from_l, rgps_solution_families, system_residuals,
    BranchAudit, BranchConstants, ClassificationError, SolutionTriple, SystemResiduals,
};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionCheck {
    pub triple: SolutionTriple,
    pub classification_residual: Rational,
    /// `μ = 2(n-1)L/(1-L)`.
    pub mu_relation_holds: bool,
    /// Reported only.
    pub system_residuals: SystemResiduals,
    /// Reported only: `κ = A = B` for every λ.
    pub branch_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub n: u32,
    pub solutions: Vec<SolutionCheck>,
    pub branch_audit: BranchAudit,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditTable {
    pub n_from: u32,
    pub n_to: u32,
    pub rows: Vec<AuditRow>,
    pub all_certified: bool,
}

impl AuditTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("audit serializes")
    }
}

pub fn audit_row(n: u32) -> Result<AuditRow, ClassificationError> {
    let solutions: Vec<SolutionCheck> = rgps_solution_families(n)?
        .into_iter()
        .map(|t| SolutionCheck {
            classification_residual: classification_residual(n, &t.kappa, &t.mu),
            mu_relation_holds: mu_from_l(n, &t.l).as_ref() == Some(&t.mu),
            system_residuals: system_residuals(n, &t.kappa, &t.mu),
            branch_consistent: BranchConstants::consistent_for_all_lambda(n, &t.kappa, &t.mu, &t.l),
            triple: t,
        })
        .collect();
    let audit = branch_audit(n)?;
    let certified = audit.certified()
        && solutions
            .iter()
            .all(|s| s.classification_residual.is_zero() && s.mu_relation_holds);
    Ok(AuditRow {
        n,
        solutions,
        branch_audit: audit,
        certified,
    })
}

pub fn run_audit(n_from: u32, n_to: u32) -> Result<AuditTable, ClassificationError> {
    if n_from < 2 {
        return Err(ClassificationError::OutOfTheoremRange(n_from));
    }
    if n_from > n_to {
        return Err(ClassificationError::EmptyRange { from: n_from, to: n_to });
    }
    let rows = (n_from..=n_to).map(audit_row).collect::<Result<Vec<_>, _>>()?;
    Ok(AuditTable {
        n_from,
        n_to,
        all_certified: rows.iter().all(|r| r.certified),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_row_at_two() {
        let t = run_audit(2, 2).unwrap();
        assert_eq!(t.rows.len(), 1);
        let triples: Vec<_> = t.rows[0].solutions.iter().map(|s| s.triple.clone()).collect();
        assert_eq!(
            triples,
            vec![
                SolutionTriple { kappa: Rational::zero(), mu: Rational::one(), l: Rational::frac(1, 3) },
                SolutionTriple { kappa: Rational::int(-1), mu: Rational::int(2), l: Rational::frac(1, 2) },
            ]
        );
        assert!(t.all_certified);
    }

    #[test]
    fn range_errors() {
        assert_eq!(run_audit(1, 1), Err(ClassificationError::OutOfTheoremRange(1)));
        assert_eq!(run_audit(5, 3), Err(ClassificationError::EmptyRange { from: 5, to: 3 }));
    }
}
