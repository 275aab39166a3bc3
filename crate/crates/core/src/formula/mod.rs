//! Modal formulas over numbered atoms.
//!
//! A single [`Formula`] type covers classical, S5, `nabla` and box vocabularies;
//! which operators are allowed in a given context is decided by [`Dialect`].

mod parse;
mod schema;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use parse::{parse, ParseError};
pub use schema::{instantiate, match_schema, MetaBinding, Schema, SchemaError};

/// An inductive modal formula.
///
/// `Top`, `Bottom` and `Iff` are primitive, and `Diamond` is not an abbreviation
/// for `~[]~`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(u32),
    Top,
    Bottom,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Diamond(Box<Formula>),
    Nabla(Box<Formula>),
}

impl Formula {
    pub fn atom(index: u32) -> Formula {
        Formula::Atom(index)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn necessarily(f: Formula) -> Formula {
        Formula::Box(Box::new(f))
    }

    pub fn possibly(f: Formula) -> Formula {
        Formula::Diamond(Box::new(f))
    }

    pub fn plausibly(f: Formula) -> Formula {
        Formula::Nabla(Box::new(f))
    }

    /// Immediate subterms, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bottom => vec![],
            Formula::Not(a) | Formula::Box(a) | Formula::Diamond(a) | Formula::Nabla(a) => {
                vec![a]
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => vec![a, b],
        }
    }

    /// Rebuilds the formula bottom-up, applying `leaf` to atoms and `modal`
    /// to every modal node once its operand has been rebuilt.
    fn rebuild(&self, leaf: &impl Fn(u32) -> Formula, modal: &impl Fn(&Formula, Formula) -> Formula) -> Formula {
        let go = |a: &Formula| Box::new(a.rebuild(leaf, modal));
        match self {
            Formula::Atom(i) => leaf(*i),
            Formula::Top => Formula::Top,
            Formula::Bottom => Formula::Bottom,
            Formula::Not(a) => Formula::Not(go(a)),
            Formula::And(a, b) => Formula::And(go(a), go(b)),
            Formula::Or(a, b) => Formula::Or(go(a), go(b)),
            Formula::Implies(a, b) => Formula::Implies(go(a), go(b)),
            Formula::Iff(a, b) => Formula::Iff(go(a), go(b)),
            Formula::Box(a) | Formula::Diamond(a) | Formula::Nabla(a) => modal(self, a.rebuild(leaf, modal)),
        }
    }

    /// Simultaneous substitution of formulas for atoms. Atoms for which
    /// `subst` returns `None` are left alone.
    pub fn substitute(&self, subst: &impl Fn(u32) -> Option<Formula>) -> Formula {
        self.rebuild(&|i| subst(i).unwrap_or(Formula::Atom(i)), &|node, inner| {
            node.with_operand(inner)
        })
    }

    /// Replaces the operand of a modal node, keeping its operator.
    fn with_operand(&self, inner: Formula) -> Formula {
        match self {
            Formula::Box(_) => Formula::necessarily(inner),
            Formula::Diamond(_) => Formula::possibly(inner),
            Formula::Nabla(_) => Formula::plausibly(inner),
            _ => unreachable!("with_operand on a non-modal node"),
        }
    }

    /// Nesting depth of modal operators; 0 iff the formula is modality-free.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Box(a) | Formula::Diamond(a) | Formula::Nabla(a) => 1 + a.modal_depth(),
            _ => self.children().into_iter().map(Formula::modal_depth).max().unwrap_or(0),
        }
    }

    pub fn atoms(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<u32>) {
        if let Formula::Atom(i) = self {
            out.insert(*i);
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    /// All subformulas, the formula itself included.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if out.insert(self.clone()) {
            for c in self.children() {
                c.collect_subformulas(out);
            }
        }
    }

    fn operators(&self) -> Operators {
        let mut ops = Operators::default();
        self.collect_operators(&mut ops);
        ops
    }

    fn collect_operators(&self, ops: &mut Operators) {
        match self {
            Formula::Box(_) => ops.boxes = true,
            Formula::Diamond(_) => ops.diamonds = true,
            Formula::Nabla(_) => ops.nablas = true,
            _ => {}
        }
        for c in self.children() {
            c.collect_operators(ops);
        }
    }
}

pub fn modal_depth(f: &Formula) -> usize {
    f.modal_depth()
}

pub fn atoms_of(f: &Formula) -> BTreeSet<u32> {
    f.atoms()
}

pub fn subformulas(f: &Formula) -> BTreeSet<Formula> {
    f.subformulas()
}

/// Canonical rendering, same as `Display`.
pub fn render(f: &Formula) -> String {
    f.to_string()
}

#[derive(Debug, Default, Clone, Copy)]
struct Operators {
    boxes: bool,
    diamonds: bool,
    nablas: bool,
}

/// Modal vocabulary admitted in a given context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dialect {
    /// No modal operators.
    Classical,
    /// Box and diamond.
    S5,
    /// Only `nabla`.
    NablaSystem,
    /// Only box.
    BoxSystem,
}

impl Dialect {
    pub fn admits(self, f: &Formula) -> bool {
        let ops = f.operators();
        match self {
            Dialect::Classical => !ops.boxes && !ops.diamonds && !ops.nablas,
            Dialect::S5 => !ops.nablas,
            Dialect::NablaSystem => !ops.boxes && !ops.diamonds,
            Dialect::BoxSystem => !ops.diamonds && !ops.nablas,
        }
    }

    /// The narrowest dialect admitting `f`. Box-only formulas are reported as
    /// [`Dialect::BoxSystem`] even though S5 admits them as well.
    pub fn of(f: &Formula) -> Result<Dialect, DialectError> {
        let ops = f.operators();
        match (ops.nablas, ops.boxes || ops.diamonds) {
            (true, true) => Err(DialectError::Mixed { formula: f.to_string() }),
            (true, false) => Ok(Dialect::NablaSystem),
            (false, _) if ops.diamonds => Ok(Dialect::S5),
            (false, _) if ops.boxes => Ok(Dialect::BoxSystem),
            _ => Ok(Dialect::Classical),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Dialect::Classical => "Classical",
            Dialect::S5 => "S5",
            Dialect::NablaSystem => "NablaSystem",
            Dialect::BoxSystem => "BoxSystem",
        }
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DialectError {
    #[error("formula `{formula}` mixes nabla with box/diamond")]
    Mixed { formula: String },
    #[error("formula `{formula}` is not in the {dialect} dialect")]
    Violation { formula: String, dialect: Dialect },
    #[error("translation is only defined between NablaSystem and BoxSystem, not {from} -> {to}")]
    Unsupported { from: Dialect, to: Dialect },
}

/// Swaps `nabla` and box between the two plausibility dialects.
pub fn translate(f: &Formula, from: Dialect, to: Dialect) -> Result<Formula, DialectError> {
    let plausibility = |d| matches!(d, Dialect::NablaSystem | Dialect::BoxSystem);
    if !plausibility(from) || !plausibility(to) {
        return Err(DialectError::Unsupported { from, to });
    }
    if !from.admits(f) {
        return Err(DialectError::Violation {
            formula: f.to_string(),
            dialect: from,
        });
    }
    if from == to {
        return Ok(f.clone());
    }
    Ok(f.rebuild(&Formula::Atom, &|node, inner| match node {
        Formula::Nabla(_) => Formula::necessarily(inner),
        Formula::Box(_) => Formula::plausibly(inner),
        other => other.with_operand(inner),
    }))
}

// Binding strength used by the renderer; larger binds tighter.
const PREC_IFF: u8 = 1;
const PREC_IMPLIES: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_UNARY: u8 = 5;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => PREC_IFF,
        Formula::Implies(..) => PREC_IMPLIES,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        _ => PREC_UNARY,
    }
}

fn write_operand(out: &mut fmt::Formatter<'_>, f: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(out, "({f})")
    } else {
        write!(out, "{f}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(i) => write!(out, "p{i}"),
            Formula::Top => out.write_str("true"),
            Formula::Bottom => out.write_str("false"),
            Formula::Not(a) | Formula::Box(a) | Formula::Diamond(a) | Formula::Nabla(a) => {
                let parens = precedence(a) < PREC_UNARY;
                match self {
                    Formula::Not(_) => out.write_str("~")?,
                    Formula::Box(_) => out.write_str("[]")?,
                    Formula::Diamond(_) => out.write_str("<>")?,
                    _ if parens => out.write_str("nabla")?,
                    _ => out.write_str("nabla ")?,
                }
                write_operand(out, a, parens)
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                let (prec, op) = match self {
                    Formula::And(..) => (PREC_AND, " & "),
                    _ => (PREC_OR, " | "),
                };
                // left-associative
                write_operand(out, a, precedence(a) < prec)?;
                out.write_str(op)?;
                write_operand(out, b, precedence(b) <= prec)
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                let (prec, op) = match self {
                    Formula::Implies(..) => (PREC_IMPLIES, " -> "),
                    _ => (PREC_IFF, " <-> "),
                };
                // right-associative
                write_operand(out, a, precedence(a) <= prec)?;
                out.write_str(op)?;
                write_operand(out, b, precedence(b) < prec)
            }
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
pub(crate) mod arbitrary {
    use super::*;
    use proptest::prelude::*;

    fn leaf(atoms: u32) -> BoxedStrategy<Formula> {
        prop_oneof![
            4 => (0..atoms).prop_map(Formula::Atom),
            1 => Just(Formula::Top),
            1 => Just(Formula::Bottom),
        ]
        .boxed()
    }

    /// Random formulas whose modal operators are drawn from `modal`.
    pub fn formula(atoms: u32, modal: &'static [u8]) -> BoxedStrategy<Formula> {
        leaf(atoms)
            .prop_recursive(5, 48, 2, move |inner| {
                let unary = (0..(1 + modal.len()), inner.clone()).prop_map(move |(k, a)| {
                    if k == 0 {
                        Formula::not(a)
                    } else {
                        match modal[k - 1] {
                            b'b' => Formula::necessarily(a),
                            b'd' => Formula::possibly(a),
                            _ => Formula::plausibly(a),
                        }
                    }
                });
                let binary = (0..4u8, inner.clone(), inner).prop_map(|(k, a, b)| match k {
                    0 => Formula::and(a, b),
                    1 => Formula::or(a, b),
                    2 => Formula::implies(a, b),
                    _ => Formula::iff(a, b),
                });
                prop_oneof![unary, binary]
            })
            .boxed()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(i: u32) -> Formula {
        Formula::atom(i)
    }

    #[test]
    fn render_examples() {
        assert_eq!(Formula::necessarily(p(0)).to_string(), "[]p0");
        assert_eq!(Formula::implies(p(0), p(0)).to_string(), "p0 -> p0");
        let ax2 = Formula::plausibly(Formula::or(p(0), Formula::not(p(0))));
        assert_eq!(ax2.to_string(), "nabla(p0 | ~p0)");
        assert_eq!(
            Formula::not(Formula::plausibly(Formula::Bottom)).to_string(),
            "~nabla false"
        );
    }

    #[test]
    fn render_uses_minimal_parentheses() {
        let left_nested = Formula::implies(Formula::implies(p(0), p(1)), p(2));
        assert_eq!(left_nested.to_string(), "(p0 -> p1) -> p2");
        let right_nested = Formula::implies(p(0), Formula::implies(p(1), p(2)));
        assert_eq!(right_nested.to_string(), "p0 -> p1 -> p2");
        let conj = Formula::and(Formula::and(p(0), p(1)), p(2));
        assert_eq!(conj.to_string(), "p0 & p1 & p2");
        let conj_right = Formula::and(p(0), Formula::and(p(1), p(2)));
        assert_eq!(conj_right.to_string(), "p0 & (p1 & p2)");
        let mixed = Formula::or(Formula::and(p(0), p(1)), p(2));
        assert_eq!(mixed.to_string(), "p0 & p1 | p2");
        let boxed_and = Formula::necessarily(Formula::and(p(0), p(1)));
        assert_eq!(boxed_and.to_string(), "[](p0 & p1)");
        assert_eq!(Formula::not(Formula::not(p(3))).to_string(), "~~p3");
    }

    #[test]
    fn depth_atoms_subformulas() {
        assert_eq!(Formula::necessarily(Formula::necessarily(p(0))).modal_depth(), 2);
        assert_eq!(Formula::implies(p(0), p(1)).modal_depth(), 0);
        let f = Formula::necessarily(Formula::and(p(0), p(2)));
        assert_eq!(f.atoms(), BTreeSet::from([0, 2]));
        let neg = Formula::not(p(0));
        assert_eq!(neg.subformulas(), BTreeSet::from([neg.clone(), p(0)]));
    }

    #[test]
    fn dialect_classification() {
        let f: Formula = "p0 -> []p0".parse().unwrap();
        assert_eq!(Dialect::of(&f), Ok(Dialect::BoxSystem));
        assert!(Dialect::S5.admits(&f));
        let mixed: Formula = "nabla p0 & <>p1".parse().unwrap();
        assert!(matches!(Dialect::of(&mixed), Err(DialectError::Mixed { .. })));
        let nab: Formula = "nabla p0 -> p0".parse().unwrap();
        assert_eq!(Dialect::of(&nab), Ok(Dialect::NablaSystem));
        assert_eq!(Dialect::of(&p(1)), Ok(Dialect::Classical));
        assert_eq!(Dialect::of(&"<>p0".parse().unwrap()), Ok(Dialect::S5));
    }

    #[test]
    fn translate_examples() {
        let n = Dialect::NablaSystem;
        let b = Dialect::BoxSystem;
        assert_eq!(
            translate(&Formula::plausibly(p(0)), n, b).unwrap(),
            Formula::necessarily(p(0))
        );
        let ax1: Formula = "nabla p0 & nabla p1 -> nabla(p0 & p1)".parse().unwrap();
        let c: Formula = "[]p0 & []p1 -> [](p0 & p1)".parse().unwrap();
        assert_eq!(translate(&ax1, n, b).unwrap(), c);
        let plain: Formula = "p0 -> p1".parse().unwrap();
        assert_eq!(translate(&plain, n, b).unwrap(), plain);
    }

    #[test]
    fn translate_rejects_wrong_dialects() {
        let boxed: Formula = "[]p0".parse().unwrap();
        assert!(matches!(
            translate(&boxed, Dialect::NablaSystem, Dialect::BoxSystem),
            Err(DialectError::Violation { .. })
        ));
        assert!(matches!(
            translate(&boxed, Dialect::S5, Dialect::BoxSystem),
            Err(DialectError::Unsupported { .. })
        ));
    }

    proptest! {
        #[test]
        fn parse_render_round_trip(f in arbitrary::formula(4, b"bdn")) {
            let text = f.to_string();
            prop_assert_eq!(parse(&text).unwrap(), f);
        }

        #[test]
        fn translation_is_an_involution(f in arbitrary::formula(3, b"n")) {
            let boxed = translate(&f, Dialect::NablaSystem, Dialect::BoxSystem).unwrap();
            prop_assert!(Dialect::BoxSystem.admits(&boxed));
            let back = translate(&boxed, Dialect::BoxSystem, Dialect::NablaSystem).unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn depth_zero_iff_modality_free(f in arbitrary::formula(3, b"bdn")) {
            prop_assert_eq!(f.modal_depth() == 0, Dialect::Classical.admits(&f));
        }

        #[test]
        fn subformulas_closed_under_children(f in arbitrary::formula(3, b"bd")) {
            let subs = f.subformulas();
            prop_assert!(subs.contains(&f));
            for s in &subs {
                for c in s.children() {
                    prop_assert!(subs.contains(c));
                }
            }
        }
    }
}
