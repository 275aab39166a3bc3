//! Finite plausibility algebras: Boolean algebras of subsets of a `k`-element
//! base with an operator `♯` (written `sharp`).
//!
//! Elements are bitmasks over the base; `0` is the empty set and `1` the
//! full base. The axioms, for all `a, b`:
//!
//! - a1: `♯a ∧ ♯b ≤ ♯(a ∧ b)`
//! - a2: `♯a ≤ ♯(a ∨ b)`
//! - a3: `♯a ≤ a`
//! - a4: `♯1 = 1`

mod agreement;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Dialect, Formula};

pub use agreement::{agreement_experiment, AgreementReport, AgreementRow};

/// Largest base size accepted; the carrier then has 64 elements.
pub const MAX_BASE: usize = 6;

/// Largest base size for which every sharp map is enumerated.
pub const ENUMERATION_BASE: usize = 2;

pub type Element = u64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinitePlausibilityAlgebra {
    base: usize,
    sharp: Vec<Element>,
}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("base size must be between 1 and {MAX_BASE}, got {0}")]
    BaseSize(usize),
    #[error("sharp must list {expected} images, got {got}")]
    SharpLength { expected: usize, got: usize },
    #[error("sharp({element}) = {image} is not an element of the carrier")]
    OutOfCarrier { element: Element, image: Element },
    #[error("not a plausibility algebra: {0}")]
    Invalid(AxiomFailure),
    #[error("formula `{formula}` contains box or diamond")]
    Dialect { formula: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Search(#[from] crate::search::SearchError),
}

/// The first violation of an axiom, with the elements that violate it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "lowercase")]
pub enum AxiomFailure {
    A1 { a: Element, b: Element },
    A2 { a: Element, b: Element },
    A3 { a: Element },
    A4 { image: Element },
}

impl AxiomFailure {
    /// Re-checks the witness against `alg`.
    pub fn confirms(&self, alg: &FinitePlausibilityAlgebra) -> bool {
        let s = |x| alg.sharp(x);
        match *self {
            AxiomFailure::A1 { a, b } => !leq(s(a) & s(b), s(a & b)),
            AxiomFailure::A2 { a, b } => !leq(s(a), s(a | b)),
            AxiomFailure::A3 { a } => !leq(s(a), a),
            AxiomFailure::A4 { image } => image == s(alg.top()) && image != alg.top(),
        }
    }
}

impl std::fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomFailure::A1 { a, b } => write!(f, "a1 fails for a={a}, b={b}"),
            AxiomFailure::A2 { a, b } => write!(f, "a2 fails for a={a}, b={b}"),
            AxiomFailure::A3 { a } => write!(f, "a3 fails for a={a}"),
            AxiomFailure::A4 { image } => write!(f, "a4 fails: sharp(1) = {image}"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub a1: Option<AxiomFailure>,
    pub a2: Option<AxiomFailure>,
    pub a3: Option<AxiomFailure>,
    pub a4: Option<AxiomFailure>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomFailure> {
        [&self.a1, &self.a2, &self.a3, &self.a4].into_iter().flatten()
    }
}

/// A pair violating one of the derived laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LawFailure {
    pub a: Element,
    pub b: Element,
}

/// Derived laws: (i) `♯a ≤ ♯(a ∨ b)`, (ii) `a ≤ b ⇒ ♯a ≤ ♯b`,
/// (iii) `♯a ∨ ♯b ≤ ♯(a ∨ b)`. On a valid algebra a failure is a
/// contradiction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DerivedLawReport {
    pub i: Option<LawFailure>,
    pub ii: Option<LawFailure>,
    pub iii: Option<LawFailure>,
}

impl DerivedLawReport {
    pub fn all_hold(&self) -> bool {
        self.i.is_none() && self.ii.is_none() && self.iii.is_none()
    }
}

fn leq(a: Element, b: Element) -> bool {
    a & !b == 0
}

impl FinitePlausibilityAlgebra {
    pub fn new(base: usize, sharp: Vec<Element>) -> Result<Self, AlgebraError> {
        if base == 0 || base > MAX_BASE {
            return Err(AlgebraError::BaseSize(base));
        }
        let size = 1usize << base;
        if sharp.len() != size {
            return Err(AlgebraError::SharpLength {
                expected: size,
                got: sharp.len(),
            });
        }
        if let Some((element, &image)) = sharp.iter().enumerate().find(|(_, &x)| x >= size as Element) {
            return Err(AlgebraError::OutOfCarrier {
                element: element as Element,
                image,
            });
        }
        Ok(FinitePlausibilityAlgebra { base, sharp })
    }

    pub fn identity(base: usize) -> Result<Self, AlgebraError> {
        Self::new(base, (0..1 << base).collect())
    }

    /// `{"base":k,"sharp":[...]}`, index = element, value = image.
    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        let raw: FinitePlausibilityAlgebra = serde_json::from_str(text)?;
        Self::new(raw.base, raw.sharp)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("algebra serializes")
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn top(&self) -> Element {
        (1 << self.base) - 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        0..1 << self.base
    }

    pub fn sharp(&self, a: Element) -> Element {
        self.sharp[a as usize]
    }

    pub fn complement(&self, a: Element) -> Element {
        !a & self.top()
    }

    fn pairs(&self) -> impl Iterator<Item = (Element, Element)> + '_ {
        self.elements().flat_map(move |a| self.elements().map(move |b| (a, b)))
    }

    /// Checks a1 to a4 over all elements and pairs, reporting the first
    /// violation of each in ascending `(a, b)` order.
    pub fn check(&self) -> AxiomReport {
        let s = |x| self.sharp(x);
        AxiomReport {
            a1: self
                .pairs()
                .find(|&(a, b)| !leq(s(a) & s(b), s(a & b)))
                .map(|(a, b)| AxiomFailure::A1 { a, b }),
            a2: self
                .pairs()
                .find(|&(a, b)| !leq(s(a), s(a | b)))
                .map(|(a, b)| AxiomFailure::A2 { a, b }),
            a3: self.elements().find(|&a| !leq(s(a), a)).map(|a| AxiomFailure::A3 { a }),
            a4: (s(self.top()) != self.top()).then(|| AxiomFailure::A4 { image: s(self.top()) }),
        }
    }

    fn require_valid(&self) -> Result<(), AlgebraError> {
        match self.check().failures().next() {
            Some(&failure) => Err(AlgebraError::Invalid(failure)),
            None => Ok(()),
        }
    }
}

pub fn check_algebra(a: &FinitePlausibilityAlgebra) -> AxiomReport {
    a.check()
}

/// Nonzero fixed points of `♯`.
pub fn plausible_elements(a: &FinitePlausibilityAlgebra) -> Result<Vec<Element>, AlgebraError> {
    a.require_valid()?;
    Ok(a.elements().filter(|&x| x != 0 && a.sharp(x) == x).collect())
}

pub fn check_derived_laws(a: &FinitePlausibilityAlgebra) -> Result<DerivedLawReport, AlgebraError> {
    a.require_valid()?;
    let s = |x| a.sharp(x);
    let fail = |(a, b)| LawFailure { a, b };
    Ok(DerivedLawReport {
        i: a.pairs().find(|&(x, y)| !leq(s(x), s(x | y))).map(fail),
        ii: a.pairs().find(|&(x, y)| leq(x, y) && !leq(s(x), s(y))).map(fail),
        iii: a.pairs().find(|&(x, y)| !leq(s(x) | s(y), s(x | y))).map(fail),
    })
}

/// Assignment of carrier elements to atoms; missing atoms denote `0`.
pub type Assignment = BTreeMap<u32, Element>;

fn eval(a: &FinitePlausibilityAlgebra, env: &Assignment, f: &Formula) -> Element {
    use Formula as F;
    let top = a.top();
    match f {
        F::Atom(i) => env.get(i).copied().unwrap_or(0) & top,
        F::Top => top,
        F::Bottom => 0,
        F::Not(x) => a.complement(eval(a, env, x)),
        F::And(x, y) => eval(a, env, x) & eval(a, env, y),
        F::Or(x, y) => eval(a, env, x) | eval(a, env, y),
        F::Implies(x, y) => a.complement(eval(a, env, x)) | eval(a, env, y),
        F::Iff(x, y) => {
            let (x, y) = (eval(a, env, x), eval(a, env, y));
            (a.complement(x) | y) & (a.complement(y) | x)
        }
        F::Nabla(x) => a.sharp(eval(a, env, x)),
        F::Box(_) | F::Diamond(_) => unreachable!("checked by the dialect test"),
    }
}

fn check_dialect(f: &Formula) -> Result<(), AlgebraError> {
    if Dialect::NablaSystem.admits(f) {
        Ok(())
    } else {
        Err(AlgebraError::Dialect { formula: f.to_string() })
    }
}

/// Value of `f` under `env`, with `nabla` read as `♯`.
pub fn alg_eval(a: &FinitePlausibilityAlgebra, env: &Assignment, f: &Formula) -> Result<Element, AlgebraError> {
    check_dialect(f)?;
    a.require_valid()?;
    Ok(eval(a, env, f))
}

/// True iff `f` takes the value `1` under every assignment to its atoms.
pub fn alg_validates(a: &FinitePlausibilityAlgebra, f: &Formula) -> Result<bool, AlgebraError> {
    check_dialect(f)?;
    a.require_valid()?;
    Ok(validates_unchecked(a, f))
}

fn validates_unchecked(a: &FinitePlausibilityAlgebra, f: &Formula) -> bool {
    let atoms: Vec<u32> = f.atoms().into_iter().collect();
    let size = 1u64 << a.base;
    let total = size.pow(atoms.len() as u32);
    (0..total).all(|mut code| {
        let env: Assignment = atoms
            .iter()
            .map(|&p| {
                let e = code % size;
                code /= size;
                (p, e)
            })
            .collect();
        eval(a, &env, f) == a.top()
    })
}

/// Every map from the carrier to itself at base size `k`, valid or not, in
/// lexicographic order of the image list.
pub fn all_sharp_maps(k: usize) -> Result<impl Iterator<Item = FinitePlausibilityAlgebra>, AlgebraError> {
    if k == 0 || k > ENUMERATION_BASE {
        return Err(AlgebraError::BaseSize(k));
    }
    let size = 1u64 << k;
    let total = size.pow(size as u32);
    Ok((0..total).map(move |code| {
        let sharp = (0..size).rev().map(|i| (code / size.pow(i as u32)) % size).collect();
        FinitePlausibilityAlgebra { base: k, sharp }
    }))
}

/// The sharp maps at base size `k` satisfying a1 to a4.
pub fn valid_algebras(k: usize) -> Result<Vec<FinitePlausibilityAlgebra>, AlgebraError> {
    Ok(all_sharp_maps(k)?.filter(|a| a.check().all_hold()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(text: &str) -> Formula {
        text.parse().unwrap()
    }

    /// `♯1 = 1` and everything else goes to `0`.
    fn only_top(k: usize) -> FinitePlausibilityAlgebra {
        let top = (1 << k) - 1;
        let sharp = (0..=top).map(|x| if x == top { top } else { 0 }).collect();
        FinitePlausibilityAlgebra::new(k, sharp).unwrap()
    }

    #[test]
    fn axiom_checks() {
        assert!(FinitePlausibilityAlgebra::identity(1).unwrap().check().all_hold());
        let zero = FinitePlausibilityAlgebra::new(1, vec![0, 0]).unwrap();
        let report = zero.check();
        assert_eq!(report.a4, Some(AxiomFailure::A4 { image: 0 }));
        assert!(report.a4.unwrap().confirms(&zero));
        assert!(only_top(2).check().all_hold());
    }

    #[test]
    fn witnesses_confirm() {
        for a in all_sharp_maps(2).unwrap() {
            for failure in a.check().failures() {
                assert!(failure.confirms(&a), "{failure} on {}", a.to_json());
            }
        }
    }

    #[test]
    fn plausible_elements_examples() {
        let id = FinitePlausibilityAlgebra::identity(2).unwrap();
        assert_eq!(plausible_elements(&id).unwrap(), vec![1, 2, 3]);
        assert_eq!(plausible_elements(&only_top(2)).unwrap(), vec![3]);
        let zero = FinitePlausibilityAlgebra::new(1, vec![0, 0]).unwrap();
        assert!(matches!(plausible_elements(&zero), Err(AlgebraError::Invalid(_))));
    }

    #[test]
    fn derived_laws_on_all_small_algebras() {
        for k in 1..=ENUMERATION_BASE {
            for a in valid_algebras(k).unwrap() {
                assert!(check_derived_laws(&a).unwrap().all_hold(), "{}", a.to_json());
                assert!(!plausible_elements(&a).unwrap().contains(&0));
            }
        }
    }

    #[test]
    fn evaluation() {
        let id = FinitePlausibilityAlgebra::identity(2).unwrap();
        let env = Assignment::from([(0, 1)]);
        assert_eq!(alg_eval(&id, &env, &f("~nabla false")).unwrap(), 3);
        assert_eq!(alg_eval(&id, &env, &f("p0 | p1")).unwrap(), 1);
        assert_eq!(alg_eval(&id, &Assignment::new(), &f("nabla(p0 | ~p0)")).unwrap(), 3);
        for a in valid_algebras(2).unwrap() {
            for ax in [
                "nabla p0 & nabla p1 -> nabla(p0 & p1)",
                "nabla(p0 | ~p0)",
                "nabla p0 -> p0",
            ] {
                assert!(alg_validates(&a, &f(ax)).unwrap());
            }
        }
        assert!(!alg_validates(&id, &f("p0 -> nabla ~p0")).unwrap());
        assert!(matches!(
            alg_eval(&id, &env, &f("[]p0")),
            Err(AlgebraError::Dialect { .. })
        ));
    }

    #[test]
    fn enumeration_size() {
        assert_eq!(all_sharp_maps(2).unwrap().count(), 256);
        assert_eq!(all_sharp_maps(1).unwrap().count(), 4);
        assert!(all_sharp_maps(3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"base":2,"sharp":[0,0,0,3]}"#;
        let a = FinitePlausibilityAlgebra::from_json(text).unwrap();
        assert_eq!(a, only_top(2));
        assert_eq!(a.to_json(), text);
        for bad in [
            r#"{"base":2,"sharp":[0,0,3]}"#,
            r#"{"base":1,"sharp":[0,2]}"#,
            r#"{"base":0,"sharp":[]}"#,
            r#"{"base":1,"sharp":[0,1],"x":0}"#,
        ] {
            assert!(FinitePlausibilityAlgebra::from_json(bad).is_err(), "{bad}");
        }
    }
}
