//! JSON proof files.
//!
//! ```json
//! {"system":"S5","premises":["<>p0"],
//!  "lines":[{"formula":"<>p0 -> []<>p0","rule":"axiom","schema":"5"},
//!           {"formula":"<>p0","rule":"premise"},
//!           {"formula":"[]<>p0","rule":"mp","refs":[2,1]}],
//!  "conclusion":"[]<>p0"}
//! ```
//!
//! `refs` are 1-based; `mp` lists the antecedent first. `schema` is optional
//! on axiom lines and `conclusion` defaults to the last line.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Justification, Proof, ProofLine, SystemId, Verdict};
use crate::formula::{Formula, ParseError};

#[derive(Debug, Error)]
pub enum ProofIoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid proof file: {0}")]
    Format(String),
    #[error("cannot parse {context}: {error}")]
    Formula { context: String, error: ParseError },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProof {
    system: String,
    #[serde(default)]
    premises: Vec<String>,
    lines: Vec<RawLine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    conclusion: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLine {
    formula: String,
    rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    refs: Vec<usize>,
}

fn parse_formula(text: &str, context: impl FnOnce() -> String) -> Result<Formula, ProofIoError> {
    text.parse().map_err(|error| ProofIoError::Formula {
        context: context(),
        error,
    })
}

fn justification(k: usize, raw: &RawLine) -> Result<Justification, ProofIoError> {
    let line = k + 1;
    let arity = match raw.rule.as_str() {
        "premise" | "axiom" => 0,
        "mp" => 2,
        "re" | "rnabla" | "rn" => 1,
        other => return Err(ProofIoError::Format(format!("line {line}: unknown rule `{other}`"))),
    };
    if raw.schema.is_some() && raw.rule != "axiom" {
        return Err(ProofIoError::Format(format!(
            "line {line}: `schema` is only allowed on axiom lines"
        )));
    }
    if raw.refs.len() != arity {
        return Err(ProofIoError::Format(format!(
            "line {line}: `{}` takes {arity} reference(s), found {}",
            raw.rule,
            raw.refs.len()
        )));
    }
    if raw.refs.contains(&0) {
        return Err(ProofIoError::Format(format!("line {line}: references start at 1")));
    }
    let r: Vec<usize> = raw.refs.iter().map(|&r| r - 1).collect();
    Ok(match raw.rule.as_str() {
        "premise" => Justification::Premise,
        "axiom" => Justification::Axiom {
            schema: raw.schema.clone(),
        },
        "mp" => Justification::Mp(r[0], r[1]),
        "re" => Justification::Re(r[0]),
        "rnabla" => Justification::RNabla(r[0]),
        _ => Justification::Rn(r[0]),
    })
}

impl Proof {
    pub fn from_json(text: &str) -> Result<Proof, ProofIoError> {
        let raw: RawProof = serde_json::from_str(text)?;
        let system: SystemId = raw.system.parse().map_err(ProofIoError::Format)?;
        let premises = raw
            .premises
            .iter()
            .enumerate()
            .map(|(k, p)| parse_formula(p, || format!("premise {}", k + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        let lines = raw
            .lines
            .iter()
            .enumerate()
            .map(|(k, l)| {
                let formula = parse_formula(&l.formula, || format!("line {}", k + 1))?;
                Ok(ProofLine::new(formula, justification(k, l)?))
            })
            .collect::<Result<Vec<_>, ProofIoError>>()?;
        let conclusion = match &raw.conclusion {
            Some(c) => parse_formula(c, || "conclusion".to_string())?,
            None => match lines.last() {
                Some(l) => l.formula.clone(),
                None => return Err(ProofIoError::Format("proof has no lines".into())),
            },
        };
        Ok(Proof {
            system,
            premises,
            lines,
            conclusion,
        })
    }

    pub fn to_value(&self) -> serde_json::Value {
        let lines = self
            .lines
            .iter()
            .map(|l| {
                let (rule, schema) = match &l.justification {
                    Justification::Premise => ("premise", None),
                    Justification::Axiom { schema } => ("axiom", schema.clone()),
                    j => (j.rule().expect("rule justification").name(), None),
                };
                RawLine {
                    formula: l.formula.to_string(),
                    rule: rule.to_string(),
                    schema,
                    refs: l.justification.refs().iter().map(|r| r + 1).collect(),
                }
            })
            .collect();
        let raw = RawProof {
            system: self.system.name().to_string(),
            premises: self.premises.iter().map(ToString::to_string).collect(),
            lines,
            conclusion: Some(self.conclusion.to_string()),
        };
        serde_json::to_value(raw).expect("proof serializes")
    }

    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }
}

/// The checker's verdict on `proof` as a JSON object.
pub fn verdict_report(proof: &Proof, verdict: &Verdict) -> serde_json::Value {
    match verdict {
        Verdict::Accepted { lines } => serde_json::json!({
            "verdict": "accepted",
            "system": proof.system.name(),
            "lines": lines.len(),
            "conclusion": proof.conclusion.to_string(),
        }),
        Verdict::Rejected { line, reason } => serde_json::json!({
            "verdict": "rejected",
            "system": proof.system.name(),
            "line": line,
            "reason": reason.to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::check_proof;

    const S5_CHAIN: &str = r#"{"system":"S5","premises":["<>p0"],"lines":[{"formula":"<>p0 -> []<>p0","rule":"axiom","schema":"5"},{"formula":"<>p0","rule":"premise"},{"formula":"[]<>p0","rule":"mp","refs":[2,1]}],"conclusion":"[]<>p0"}"#;

    #[test]
    fn round_trip() {
        let p = Proof::from_json(S5_CHAIN).unwrap();
        assert_eq!(p.lines[2].justification, Justification::Mp(1, 0));
        assert!(check_proof(&p).unwrap().is_accepted());
        assert_eq!(p.to_json(), S5_CHAIN);
    }

    #[test]
    fn conclusion_defaults_to_last_line() {
        let p = Proof::from_json(r#"{"system":"LPBox","lines":[{"formula":"[]true","rule":"axiom"}]}"#).unwrap();
        assert_eq!(p.conclusion, Formula::necessarily(Formula::Top));
        assert!(p.premises.is_empty());
    }

    #[test]
    fn rejects_malformed_files() {
        let bad = [
            r#"{"system":"K","lines":[{"formula":"true","rule":"axiom"}]}"#,
            r#"{"system":"LPC","lines":[]}"#,
            r#"{"system":"LPC","lines":[{"formula":"true","rule":"guess"}]}"#,
            r#"{"system":"LPC","lines":[{"formula":"true","rule":"premise","schema":"PL13"}]}"#,
            r#"{"system":"LPC","lines":[{"formula":"true","rule":"mp","refs":[1]}]}"#,
            r#"{"system":"LPC","lines":[{"formula":"true","rule":"rn","refs":[0]}]}"#,
            r#"{"system":"LPC","lines":[{"formula":"p0 &","rule":"axiom"}]}"#,
            r#"{"system":"LPC","lines":[{"formula":"true","rule":"axiom"}],"extra":1}"#,
            r#"{"system":"LPC""#,
        ];
        for text in bad {
            assert!(Proof::from_json(text).is_err(), "{text} should be rejected");
        }
    }
}
