//! Compares validity in all small plausibility algebras with bounded
//! validity on constrained neighborhood models.

use serde::Serialize;

use super::{check_dialect, valid_algebras, validates_unchecked, AlgebraError, ENUMERATION_BASE};
use crate::formula::{translate, Dialect, Formula};
use crate::search::{find_countermodel, ModelClass, SearchBounds, SearchVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementRow {
    pub formula: String,
    /// Valid in every valid algebra with base size up to the enumeration bound.
    pub algebraic_valid: bool,
    pub neighborhood_verdict: String,
    pub models_checked: u64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub max_base: usize,
    pub algebras: usize,
    pub max_worlds: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub rows: Vec<AgreementRow>,
}

/// For each `nabla` formula, compares algebraic validity (base sizes 1 and 2)
/// with the constrained neighborhood search on its box translation.
pub fn agreement_experiment(formulas: &[Formula], max_worlds: usize) -> Result<AgreementReport, AlgebraError> {
    let algebras: Vec<_> = (1..=ENUMERATION_BASE)
        .map(valid_algebras)
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut rows = Vec::with_capacity(formulas.len());
    for f in formulas {
        check_dialect(f)?;
        let algebraic_valid = algebras.iter().all(|a| validates_unchecked(a, f));
        let boxed = translate(f, Dialect::NablaSystem, Dialect::BoxSystem).expect("dialect checked");
        let bounds = SearchBounds::new(ModelClass::ConstrainedNeighborhood, max_worlds, f.atoms());
        let outcome = find_countermodel(&boxed, &bounds)?;
        let exhausted = outcome.verdict == SearchVerdict::ExhaustedValid;
        rows.push(AgreementRow {
            formula: f.to_string(),
            algebraic_valid,
            neighborhood_verdict: outcome.verdict.name().to_string(),
            models_checked: outcome.models_checked,
            agree: algebraic_valid == exhausted,
        });
    }
    let agreements = rows.iter().filter(|r| r.agree).count();
    Ok(AgreementReport {
        max_base: ENUMERATION_BASE,
        algebras: algebras.len(),
        max_worlds,
        agreements,
        disagreements: rows.len() - agreements,
        rows,
    })
}
