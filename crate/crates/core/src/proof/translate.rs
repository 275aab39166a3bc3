//! Proof translation between the `nabla` system and its box restatement.
//!
//! Formulas are mapped homomorphically (`nabla` to box and back). Axioms
//! with a direct counterpart are renamed, and the other steps are replaced
//! by short derived bridges:
//!
//! | source | target |
//! |---|---|
//! | `Ax1`, `Ax3` | `C`, `T` |
//! | `Ax2` | excluded middle, `re` and `N` |
//! | `rnabla` | monotonicity from `re`, `H` and `PL9` |
//! | `C`, `T` | `Ax1`, `Ax3` |
//! | `N` | `Ax2` and `rnabla` |
//! | `H` | `rnabla` twice and `PL9` |
//! | `re` | `rnabla` in both directions and `PL12` |

use std::ops::RangeInclusive;

use thiserror::Error;

use super::{check_proof, Justification, LineInfo, Proof, ProofBuilder, ProofError, RejectReason, SystemId, Verdict};
use crate::formula::{translate, Formula, MetaBinding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error(transparent)]
    Malformed(#[from] ProofError),
    #[error("source proof is rejected at line {line}: {reason}")]
    Rejected { line: usize, reason: RejectReason },
    #[error("no translation from {from} to {to}")]
    Unsupported { from: SystemId, to: SystemId },
}

/// Lines of the translated proof that stand in for one source line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bridge {
    /// 1-based line of the source proof.
    pub source_line: usize,
    /// The axiom or rule that was replaced.
    pub replaces: String,
    /// 1-based lines of the translated proof added for it. Empty when every
    /// step was already present.
    pub lines: RangeInclusive<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    pub proof: Proof,
    pub bridges: Vec<Bridge>,
}

fn plausibility(system: SystemId) -> bool {
    matches!(system, SystemId::LNabla | SystemId::LPBox)
}

/// Translates an accepted proof of one plausibility system into the other.
pub fn translate_proof(proof: &Proof, to: SystemId) -> Result<Translation, TranslateError> {
    let from = proof.system;
    if !plausibility(from) || !plausibility(to) {
        return Err(TranslateError::Unsupported { from, to });
    }
    let infos = match check_proof(proof)? {
        Verdict::Accepted { lines } => lines,
        Verdict::Rejected { line, reason } => return Err(TranslateError::Rejected { line, reason }),
    };
    let tr = |f: &Formula| translate(f, from.dialect(), to.dialect()).expect("accepted proofs stay in their dialect");
    let mut b = ProofBuilder::new(to);
    for p in &proof.premises {
        b.declare_premise(tr(p));
    }
    let mut map = Vec::with_capacity(proof.lines.len());
    let mut bridges = Vec::new();
    for (k, (line, info)) in proof.lines.iter().zip(&infos).enumerate() {
        let start = b.len();
        let (index, replaced) = if from == to {
            (copy_line(&mut b, &line.formula, &line.justification, info, &map), None)
        } else {
            step(&mut b, &tr, &line.formula, &line.justification, info, &map)
        };
        if let Some(replaces) = replaced {
            bridges.push(Bridge {
                source_line: k + 1,
                replaces,
                lines: start + 1..=b.len(),
            });
        }
        map.push(index);
    }
    let last = *map.last().expect("accepted proofs are non-empty");
    Ok(Translation {
        proof: b.finish_with(last),
        bridges,
    })
}

fn copy_line(b: &mut ProofBuilder, f: &Formula, j: &Justification, info: &LineInfo, map: &[usize]) -> usize {
    match *j {
        Justification::Premise => b.premise(f.clone()),
        Justification::Axiom { .. } => {
            let (id, _) = info.axiom.as_ref().expect("axiom lines carry a match");
            b.axiom_formula(id, f.clone())
        }
        Justification::Mp(i, k) => b.mp(map[i], map[k]),
        Justification::Re(i) => b.re(map[i]),
        Justification::RNabla(i) => b.rnabla(map[i]),
        Justification::Rn(i) => b.rn(map[i]),
    }
}

fn arg(binding: &MetaBinding, k: u32, tr: &impl Fn(&Formula) -> Formula) -> Formula {
    tr(&binding[&k])
}

/// Emits the target lines for one source line. Returns the line holding the
/// translated formula and, for bridged steps, the name of what was replaced.
fn step(
    b: &mut ProofBuilder,
    tr: &impl Fn(&Formula) -> Formula,
    f: &Formula,
    j: &Justification,
    info: &LineInfo,
    map: &[usize],
) -> (usize, Option<String>) {
    let direct = |b: &mut ProofBuilder| match *j {
        Justification::Premise => b.premise(tr(f)),
        Justification::Mp(i, k) => b.mp(map[i], map[k]),
        _ => unreachable!(),
    };
    match *j {
        Justification::Premise | Justification::Mp(..) => (direct(b), None),
        Justification::Axiom { .. } => {
            let (id, binding) = info.axiom.as_ref().expect("axiom lines carry a match");
            match id.as_str() {
                "Ax1" => (b.axiom_formula("C", tr(f)), None),
                "Ax3" => (b.axiom_formula("T", tr(f)), None),
                "C" => (b.axiom_formula("Ax1", tr(f)), None),
                "T" => (b.axiom_formula("Ax3", tr(f)), None),
                "Ax2" => (box_excluded_middle(b, &arg(binding, 0, tr)), Some(id.clone())),
                "N" => (nabla_top(b), Some(id.clone())),
                "H" => {
                    let (x, y) = (arg(binding, 0, tr), arg(binding, 1, tr));
                    (nabla_h(b, &x, &y), Some(id.clone()))
                }
                pl => (b.axiom_formula(pl, tr(f)), None),
            }
        }
        Justification::RNabla(i) => (box_monotonicity(b, map[i]), Some("rnabla".into())),
        Justification::Re(i) => (nabla_re(b, map[i]), Some("re".into())),
        Justification::Rn(_) => unreachable!("rn belongs to neither plausibility system"),
    }
}

/// `[](A | ~A)` from excluded middle, `re` and `N`.
fn box_excluded_middle(b: &mut ProofBuilder, a: &Formula) -> usize {
    let x = Formula::or(a.clone(), Formula::not(a.clone()));
    let top = Formula::Top;
    let em = b.excluded_middle(a);
    let t = b.axiom("PL13", &[]);
    let s1 = b.axiom("PL1", &[x.clone(), top.clone()]);
    let top_x = b.mp(em, s1);
    let s2 = b.axiom("PL1", &[top.clone(), x.clone()]);
    let x_top = b.mp(t, s2);
    let iff = b.iff_intro(top_x, x_top);
    let boxed = b.re(iff);
    let pl10 = b.axiom("PL10", &[Formula::necessarily(top), Formula::necessarily(x)]);
    let imp = b.mp(boxed, pl10);
    let n = b.axiom("N", &[]);
    b.mp(n, imp)
}

/// `[]A -> []B` from a premise-free line `A -> B`.
fn box_monotonicity(b: &mut ProofBuilder, source: usize) -> usize {
    let Formula::Implies(a, c) = b.formula(source).clone() else {
        unreachable!("rnabla sources are implications")
    };
    let (a, c) = (*a, *c);
    let id = b.identity(&c);
    let pl9 = b.axiom("PL9", &[a.clone(), c.clone(), c.clone()]);
    let s = b.mp(source, pl9);
    let or_c = b.mp(id, s);
    let c_or = b.axiom("PL8", &[a.clone(), c.clone()]);
    let iff = b.iff_intro(or_c, c_or);
    let boxed = b.re(iff);
    let box_or = Formula::necessarily(Formula::or(a.clone(), c.clone()));
    let pl10 = b.axiom("PL10", &[box_or, Formula::necessarily(c.clone())]);
    let down = b.mp(boxed, pl10);
    let h = b.axiom("H", &[a.clone(), c.clone()]);
    let pl7 = b.axiom("PL7", &[Formula::necessarily(a), Formula::necessarily(c)]);
    let up = b.syllogism(pl7, h);
    b.syllogism(up, down)
}

/// `nabla true` from `Ax2` and `rnabla`.
fn nabla_top(b: &mut ProofBuilder) -> usize {
    let top = Formula::Top;
    let em = Formula::or(top.clone(), Formula::not(top.clone()));
    let t = b.axiom("PL13", &[]);
    let s = b.axiom("PL1", &[top.clone(), em]);
    let imp = b.mp(t, s);
    let lifted = b.rnabla(imp);
    let ax2 = b.axiom("Ax2", &[top]);
    b.mp(ax2, lifted)
}

/// `nabla A | nabla B -> nabla(A | B)`.
fn nabla_h(b: &mut ProofBuilder, x: &Formula, y: &Formula) -> usize {
    let pl7 = b.axiom("PL7", &[x.clone(), y.clone()]);
    let left = b.rnabla(pl7);
    let pl8 = b.axiom("PL8", &[x.clone(), y.clone()]);
    let right = b.rnabla(pl8);
    let pl9 = b.axiom(
        "PL9",
        &[
            Formula::plausibly(x.clone()),
            Formula::plausibly(y.clone()),
            Formula::plausibly(Formula::or(x.clone(), y.clone())),
        ],
    );
    let s = b.mp(left, pl9);
    b.mp(right, s)
}

/// `nabla A <-> nabla B` from a premise-free line `A <-> B`.
fn nabla_re(b: &mut ProofBuilder, source: usize) -> usize {
    let Formula::Iff(x, y) = b.formula(source).clone() else {
        unreachable!("re sources are biconditionals")
    };
    let args = [*x, *y];
    let pl10 = b.axiom("PL10", &args);
    let forward = b.mp(source, pl10);
    let forward = b.rnabla(forward);
    let pl11 = b.axiom("PL11", &args);
    let backward = b.mp(source, pl11);
    let backward = b.rnabla(backward);
    b.iff_intro(forward, backward)
}
