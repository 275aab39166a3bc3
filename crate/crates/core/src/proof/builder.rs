use std::collections::HashMap;

use super::{Justification, Proof, ProofLine, SystemId};
use crate::formula::{instantiate, Formula, MetaBinding};

/// Incremental construction of Hilbert proofs, with a small library of
/// classical lemmas derived from the `PL` base.
///
/// Every method returns the 0-based index of the line holding its result.
/// A formula that has already been derived is reused instead of derived again.
///
/// The builder panics when asked for a step whose shape does not fit (for
/// example `mp` on a line that is not an implication); callers construct
/// steps from formulas they already know.
#[derive(Debug, Clone)]
pub struct ProofBuilder {
    system: SystemId,
    premises: Vec<Formula>,
    lines: Vec<ProofLine>,
    premise_free: Vec<bool>,
    index: HashMap<Formula, usize>,
}

fn imp(a: &Formula, b: &Formula) -> Formula {
    Formula::implies(a.clone(), b.clone())
}

fn neg(a: &Formula) -> Formula {
    Formula::not(a.clone())
}

fn split_implication(f: &Formula) -> (&Formula, &Formula) {
    match f {
        Formula::Implies(a, b) => (a, b),
        other => panic!("expected an implication, got `{other}`"),
    }
}

fn split_iff(f: &Formula) -> (&Formula, &Formula) {
    match f {
        Formula::Iff(a, b) => (a, b),
        other => panic!("expected a biconditional, got `{other}`"),
    }
}

impl ProofBuilder {
    pub fn new(system: SystemId) -> ProofBuilder {
        ProofBuilder {
            system,
            premises: Vec::new(),
            lines: Vec::new(),
            premise_free: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn system(&self) -> SystemId {
        self.system
    }

    pub fn formula(&self, line: usize) -> &Formula {
        &self.lines[line].formula
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    fn push(&mut self, formula: Formula, justification: Justification, premise_free: bool) -> usize {
        if let Some(&k) = self.index.get(&formula) {
            if self.premise_free[k] || !premise_free {
                return k;
            }
        }
        let k = self.lines.len();
        self.index.insert(formula.clone(), k);
        self.lines.push(ProofLine::new(formula, justification));
        self.premise_free.push(premise_free);
        k
    }

    /// Registers a premise without adding a line for it.
    pub fn declare_premise(&mut self, f: Formula) {
        if !self.premises.contains(&f) {
            self.premises.push(f);
        }
    }

    /// Adds a premise line, registering the formula as a premise if needed.
    pub fn premise(&mut self, f: Formula) -> usize {
        self.declare_premise(f.clone());
        self.push(f, Justification::Premise, false)
    }

    /// An instance of schema `id`; `args[k]` fills metavariable `k`.
    pub fn axiom(&mut self, id: &str, args: &[Formula]) -> usize {
        let schema = self
            .system
            .schema(id)
            .unwrap_or_else(|| panic!("{} has no schema `{id}`", self.system));
        let binding: MetaBinding = args.iter().enumerate().map(|(k, f)| (k as u32, f.clone())).collect();
        let formula = instantiate(schema, &binding).expect("all metavariables bound");
        self.push(
            formula,
            Justification::Axiom {
                schema: Some(id.to_string()),
            },
            true,
        )
    }

    /// An axiom line with an explicit formula; the checker decides whether it
    /// really instantiates `id`.
    pub fn axiom_formula(&mut self, id: &str, formula: Formula) -> usize {
        self.push(
            formula,
            Justification::Axiom {
                schema: Some(id.to_string()),
            },
            true,
        )
    }

    pub fn mp(&mut self, antecedent: usize, implication: usize) -> usize {
        let (a, b) = split_implication(self.formula(implication));
        assert_eq!(a, self.formula(antecedent), "modus ponens antecedent mismatch");
        let b = b.clone();
        let pf = self.premise_free[antecedent] && self.premise_free[implication];
        self.push(b, Justification::Mp(antecedent, implication), pf)
    }

    /// `[]A <-> []B` from `A <-> B`.
    pub fn re(&mut self, source: usize) -> usize {
        let (a, b) = split_iff(self.formula(source));
        let f = Formula::iff(Formula::necessarily(a.clone()), Formula::necessarily(b.clone()));
        self.push(f, Justification::Re(source), true)
    }

    /// `nabla A -> nabla B` from `A -> B`.
    pub fn rnabla(&mut self, source: usize) -> usize {
        let (a, b) = split_implication(self.formula(source));
        let f = imp(&Formula::plausibly(a.clone()), &Formula::plausibly(b.clone()));
        self.push(f, Justification::RNabla(source), true)
    }

    /// `[]A` from `A`.
    pub fn rn(&mut self, source: usize) -> usize {
        let f = Formula::necessarily(self.formula(source).clone());
        self.push(f, Justification::Rn(source), true)
    }

    /// `A -> A`.
    pub fn identity(&mut self, a: &Formula) -> usize {
        let aa = imp(a, a);
        let s1 = self.axiom("PL1", &[a.clone(), aa.clone()]);
        let s2 = self.axiom("PL2", &[a.clone(), aa.clone(), a.clone()]);
        let s3 = self.mp(s1, s2);
        let s4 = self.axiom("PL1", &[a.clone(), a.clone()]);
        self.mp(s4, s3)
    }

    /// `A -> C` from lines `A -> B` and `B -> C`.
    pub fn syllogism(&mut self, ab: usize, bc: usize) -> usize {
        let (a, b) = split_implication(self.formula(ab));
        let (b2, c) = split_implication(self.formula(bc));
        assert_eq!(b, b2, "syllogism middle terms differ");
        let (a, b, c) = (a.clone(), b.clone(), c.clone());
        let s1 = self.axiom("PL1", &[imp(&b, &c), a.clone()]);
        let s2 = self.mp(bc, s1);
        let s3 = self.axiom("PL2", &[a, b, c]);
        let s4 = self.mp(s2, s3);
        self.mp(ab, s4)
    }

    /// `~~A -> A`.
    pub fn double_negation_elim(&mut self, a: &Formula) -> usize {
        let na = neg(a);
        let nna = neg(&na);
        let nnna = neg(&nna);
        let nnnna = neg(&nnna);
        let s1 = self.axiom("PL1", &[nna.clone(), nnnna]);
        // (~~~~A -> ~~A) -> (~A -> ~~~A)
        let s2 = self.axiom("PL3", &[na.clone(), nnna]);
        let s3 = self.syllogism(s1, s2);
        // (~A -> ~~~A) -> (~~A -> A)
        let s4 = self.axiom("PL3", &[nna.clone(), a.clone()]);
        let s5 = self.syllogism(s3, s4);
        let s6 = self.axiom("PL2", &[nna.clone(), nna.clone(), a.clone()]);
        let s7 = self.mp(s5, s6);
        let s8 = self.identity(&nna);
        self.mp(s8, s7)
    }

    /// `A -> ~~A`.
    pub fn double_negation_intro(&mut self, a: &Formula) -> usize {
        let na = neg(a);
        let s1 = self.double_negation_elim(&na);
        // (~~~A -> ~A) -> (A -> ~~A)
        let s2 = self.axiom("PL3", &[a.clone(), neg(&na)]);
        self.mp(s1, s2)
    }

    /// `~B -> ~A` from a line `A -> B`.
    pub fn contrapose(&mut self, ab: usize) -> usize {
        let (a, b) = split_implication(self.formula(ab));
        let (a, b) = (a.clone(), b.clone());
        let s1 = self.double_negation_elim(&a);
        let s2 = self.syllogism(s1, ab);
        let s3 = self.double_negation_intro(&b);
        let s4 = self.syllogism(s2, s3);
        // (~~A -> ~~B) -> (~B -> ~A)
        let s5 = self.axiom("PL3", &[neg(&b), neg(&a)]);
        self.mp(s4, s5)
    }

    /// `A | ~A`.
    pub fn excluded_middle(&mut self, a: &Formula) -> usize {
        let na = neg(a);
        let x = Formula::or(a.clone(), na.clone());
        let nx = neg(&x);
        let not_top = neg(&Formula::Top);
        let to_x = self.axiom("PL7", &[a.clone(), na.clone()]);
        let c1 = self.contrapose(to_x); // ~X -> ~A
        let neg_to_x = self.axiom("PL8", &[a.clone(), na.clone()]);
        let c2 = self.contrapose(neg_to_x); // ~X -> ~~A
                                            // ~~A -> (~A -> ~true), by PL1 and PL3
        let e1 = self.axiom("PL1", &[neg(&na), neg(&not_top)]);
        let e2 = self.axiom("PL3", &[na.clone(), not_top.clone()]);
        let explosion = self.syllogism(e1, e2);
        let d = self.syllogism(c2, explosion); // ~X -> (~A -> ~true)
        let pl2 = self.axiom("PL2", &[nx, na, not_top]);
        let e = self.mp(d, pl2);
        let nx_to_not_top = self.mp(c1, e);
        // (~X -> ~true) -> (true -> X)
        let pl3 = self.axiom("PL3", &[Formula::Top, x]);
        let top_to_x = self.mp(nx_to_not_top, pl3);
        let top = self.axiom("PL13", &[]);
        self.mp(top, top_to_x)
    }

    /// `A <-> B` from lines `A -> B` and `B -> A`.
    pub fn iff_intro(&mut self, ab: usize, ba: usize) -> usize {
        let (a, b) = split_implication(self.formula(ab));
        let (a, b) = (a.clone(), b.clone());
        let pl12 = self.axiom("PL12", &[a, b]);
        let s = self.mp(ab, pl12);
        self.mp(ba, s)
    }

    /// The proof built so far, concluding with the last line added.
    pub fn finish(self) -> Proof {
        let last = self.lines.len() - 1;
        self.finish_with(last)
    }

    /// The proof built so far, concluding with `line`. A line that is not the
    /// last one is repeated at the end with the same justification.
    pub fn finish_with(mut self, line: usize) -> Proof {
        if line + 1 != self.lines.len() {
            let copy = self.lines[line].clone();
            self.lines.push(copy);
        }
        Proof {
            system: self.system,
            conclusion: self.lines[line].formula.clone(),
            premises: self.premises,
            lines: self.lines,
        }
    }
}
