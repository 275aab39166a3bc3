//! Hilbert-style proofs and a line-by-line proof checker.
//!
//! A proof is a list of lines, each justified as a premise, an axiom instance,
//! or an application of a primitive rule to earlier lines. Necessitation-style
//! rules (`re`, `rnabla`, `rn`) only apply to premise-free lines.

mod builder;
mod io;
mod systems;
mod translate;

use std::fmt;

use thiserror::Error;

use crate::formula::{match_schema, Formula, MetaBinding};

pub use builder::ProofBuilder;
pub use io::{verdict_report, ProofIoError};
pub use systems::{catalog, list_axiom_schemas, Rule, SystemId, NABLA_DERIVED, S5_DERIVED};
pub use translate::{translate_proof, Bridge, TranslateError, Translation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Premise,
    /// An instance of the named schema, or of any schema of the system when
    /// no name is given.
    Axiom {
        schema: Option<String>,
    },
    /// Modus ponens from the antecedent line and the implication line
    /// (0-based indices).
    Mp(usize, usize),
    Re(usize),
    RNabla(usize),
    Rn(usize),
}

impl Justification {
    pub fn rule(&self) -> Option<Rule> {
        match self {
            Justification::Premise | Justification::Axiom { .. } => None,
            Justification::Mp(..) => Some(Rule::Mp),
            Justification::Re(_) => Some(Rule::Re),
            Justification::RNabla(_) => Some(Rule::RNabla),
            Justification::Rn(_) => Some(Rule::Rn),
        }
    }

    pub fn refs(&self) -> Vec<usize> {
        match *self {
            Justification::Premise | Justification::Axiom { .. } => vec![],
            Justification::Mp(i, j) => vec![i, j],
            Justification::Re(i) | Justification::RNabla(i) | Justification::Rn(i) => vec![i],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
}

impl ProofLine {
    pub fn new(formula: Formula, justification: Justification) -> ProofLine {
        ProofLine { formula, justification }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub system: SystemId,
    pub premises: Vec<Formula>,
    pub lines: Vec<ProofLine>,
    pub conclusion: Formula,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Treat `re` as a primitive rule of S5.
    pub s5_primitive_re: bool,
}

/// Malformed proofs: these are input errors, not rejections.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("proof has no lines")]
    Empty,
    #[error("line {line} refers to line {reference}, which is not an earlier line")]
    BadReference { line: usize, reference: usize },
}

/// Why a well-formed proof was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RejectReason {
    #[error("formula is outside the {system} vocabulary")]
    Dialect { system: SystemId },
    #[error("formula is not among the premises")]
    NotAPremise,
    #[error("schema `{schema}` is not an axiom of {system}")]
    SchemaNotInSystem { schema: String, system: SystemId },
    #[error("formula is not an instance of {}", .schema.as_deref().unwrap_or("any axiom schema"))]
    NotAnInstance { schema: Option<String> },
    #[error("rule `{rule}` is not a primitive rule of {system}")]
    RuleNotInSystem { rule: Rule, system: SystemId },
    #[error("modus ponens needs line {implication} to be `{antecedent} -> <this line>`")]
    MpMismatch { antecedent: usize, implication: usize },
    #[error("line does not have the shape required by `{rule}` applied to line {source_line}")]
    RuleShape { rule: Rule, source_line: usize },
    #[error("`{rule}` applied to line {source_line}, which depends on premises")]
    PremiseDependent { rule: Rule, source_line: usize },
    #[error("last line does not match the claimed conclusion")]
    ConclusionMismatch,
}

/// What the checker established about an accepted line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineInfo {
    pub premise_free: bool,
    /// The schema and binding an axiom line was matched against.
    pub axiom: Option<(String, MetaBinding)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted {
        lines: Vec<LineInfo>,
    },
    /// `line` is 1-based.
    Rejected {
        line: usize,
        reason: RejectReason,
    },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted { lines } => write!(f, "accepted ({} lines)", lines.len()),
            Verdict::Rejected { line, reason } => write!(f, "rejected at line {line}: {reason}"),
        }
    }
}

/// The first schema of `system`, in documented order, that `f` instantiates.
pub fn is_axiom_instance(system: SystemId, f: &Formula) -> Option<(String, MetaBinding)> {
    if !system.dialect().admits(f) {
        return None;
    }
    system
        .schemas()
        .iter()
        .find_map(|(id, schema)| match_schema(schema, f).map(|b| (id.clone(), b)))
}

pub fn check_proof(proof: &Proof) -> Result<Verdict, ProofError> {
    check_proof_with(proof, CheckOptions::default())
}

pub fn check_proof_with(proof: &Proof, options: CheckOptions) -> Result<Verdict, ProofError> {
    if proof.lines.is_empty() {
        return Err(ProofError::Empty);
    }
    let system = proof.system;
    let dialect = system.dialect();
    let mut infos: Vec<LineInfo> = Vec::with_capacity(proof.lines.len());
    for (k, line) in proof.lines.iter().enumerate() {
        for r in line.justification.refs() {
            if r >= k {
                return Err(ProofError::BadReference {
                    line: k + 1,
                    reference: r + 1,
                });
            }
        }
        let reject = |reason| Ok(Verdict::Rejected { line: k + 1, reason });
        if !dialect.admits(&line.formula) {
            return reject(RejectReason::Dialect { system });
        }
        if let Some(rule) = line.justification.rule() {
            if !system.has_rule(rule, options.s5_primitive_re) {
                return reject(RejectReason::RuleNotInSystem { rule, system });
            }
        }
        let formula_of = |i: usize| &proof.lines[i].formula;
        let mut axiom = None;
        let premise_free = match &line.justification {
            Justification::Premise => {
                if !proof.premises.contains(&line.formula) {
                    return reject(RejectReason::NotAPremise);
                }
                false
            }
            Justification::Axiom { schema: Some(id) } => {
                let Some(schema) = system.schema(id) else {
                    return reject(RejectReason::SchemaNotInSystem {
                        schema: id.clone(),
                        system,
                    });
                };
                match match_schema(schema, &line.formula) {
                    Some(b) => axiom = Some((id.clone(), b)),
                    None => {
                        return reject(RejectReason::NotAnInstance {
                            schema: Some(id.clone()),
                        })
                    }
                }
                true
            }
            Justification::Axiom { schema: None } => {
                match is_axiom_instance(system, &line.formula) {
                    Some(found) => axiom = Some(found),
                    None => return reject(RejectReason::NotAnInstance { schema: None }),
                }
                true
            }
            &Justification::Mp(i, j) => {
                let expected = Formula::implies(formula_of(i).clone(), line.formula.clone());
                if formula_of(j) != &expected {
                    return reject(RejectReason::MpMismatch {
                        antecedent: i + 1,
                        implication: j + 1,
                    });
                }
                infos[i].premise_free && infos[j].premise_free
            }
            &Justification::Re(i) | &Justification::RNabla(i) | &Justification::Rn(i) => {
                let rule = line.justification.rule().expect("rule justification");
                if !rule_shape_holds(rule, formula_of(i), &line.formula) {
                    return reject(RejectReason::RuleShape {
                        rule,
                        source_line: i + 1,
                    });
                }
                if !infos[i].premise_free {
                    return reject(RejectReason::PremiseDependent {
                        rule,
                        source_line: i + 1,
                    });
                }
                true
            }
        };
        infos.push(LineInfo { premise_free, axiom });
    }
    let last = proof.lines.len();
    if proof.lines[last - 1].formula != proof.conclusion {
        return Ok(Verdict::Rejected {
            line: last,
            reason: RejectReason::ConclusionMismatch,
        });
    }
    Ok(Verdict::Accepted { lines: infos })
}

fn rule_shape_holds(rule: Rule, source: &Formula, conclusion: &Formula) -> bool {
    use Formula as F;
    match (rule, source, conclusion) {
        (Rule::Rn, a, F::Box(b)) => a == b.as_ref(),
        (Rule::Re, F::Iff(a, b), F::Iff(c, d)) => {
            matches!((c.as_ref(), d.as_ref()), (F::Box(x), F::Box(y)) if x == a && y == b)
        }
        (Rule::RNabla, F::Implies(a, b), F::Implies(c, d)) => {
            matches!((c.as_ref(), d.as_ref()), (F::Nabla(x), F::Nabla(y)) if x == a && y == b)
        }
        _ => false,
    }
}
