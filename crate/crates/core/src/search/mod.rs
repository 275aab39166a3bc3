//! Bounded model enumeration, validity checking and countermodel search.
//!
//! Enumeration is deterministic: world counts ascend; within a world count,
//! frames follow the per-world choice order (world 0 most significant), and
//! for each frame the valuations run in bitmask order with the first atom
//! most significant. Neighborhood choices are ordered by the bitmask of the
//! family over subsets of `W`; Kripke relations by the relation bitmask.
//!
//! The constrained class is generated from cores: world `a` picks a set
//! `X ∋ a` and `S(a)` becomes every superset of `X`. On finite models these
//! are exactly the families satisfying (c), (h), (t) and (n).

mod frames;
mod report;
mod sample;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formula::{Dialect, Formula};
use crate::semantics::{Model, ModelFile, WorldSet};
use frames::{frames, materialize, valuation_at, Compiled, Frame};

pub use report::SearchReport;
pub use sample::random_model;

/// Upper bound on `max_worlds * atoms` for exhaustive runs.
pub const MAX_VALUATION_BITS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelClass {
    /// Neighborhood models with arbitrary families.
    RawNeighborhood,
    /// Neighborhood models satisfying (c), (h), (t) and (n).
    ConstrainedNeighborhood,
    /// Kripke models with a reflexive euclidean relation.
    KripkeEquivalence,
    KripkeAll,
    Universal,
}

impl ModelClass {
    pub const ALL: [ModelClass; 5] = [
        ModelClass::RawNeighborhood,
        ModelClass::ConstrainedNeighborhood,
        ModelClass::KripkeEquivalence,
        ModelClass::KripkeAll,
        ModelClass::Universal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelClass::RawNeighborhood => "RawNeighborhood",
            ModelClass::ConstrainedNeighborhood => "ConstrainedNeighborhood",
            ModelClass::KripkeEquivalence => "KripkeEquivalence",
            ModelClass::KripkeAll => "KripkeAll",
            ModelClass::Universal => "Universal",
        }
    }

    /// Short name used on the command line.
    pub fn short_name(self) -> &'static str {
        match self {
            ModelClass::RawNeighborhood => "raw",
            ModelClass::ConstrainedNeighborhood => "constrained",
            ModelClass::KripkeEquivalence => "kripke-equiv",
            ModelClass::KripkeAll => "kripke",
            ModelClass::Universal => "universal",
        }
    }

    /// Largest world count for exhaustive enumeration.
    pub fn enumeration_cap(self) -> usize {
        match self {
            ModelClass::RawNeighborhood => 2,
            ModelClass::ConstrainedNeighborhood => 4,
            ModelClass::KripkeEquivalence | ModelClass::KripkeAll => 4,
            ModelClass::Universal => 8,
        }
    }

    /// Largest world count for random sampling.
    pub fn sampling_cap(self) -> usize {
        match self {
            ModelClass::RawNeighborhood | ModelClass::ConstrainedNeighborhood => 6,
            _ => crate::semantics::MAX_WORLDS,
        }
    }

    /// Widest dialect the class can evaluate.
    pub fn dialect(self) -> Dialect {
        match self {
            ModelClass::RawNeighborhood | ModelClass::ConstrainedNeighborhood => Dialect::BoxSystem,
            _ => Dialect::S5,
        }
    }

    /// Whether `model` is of this class, checked on the model itself.
    pub fn contains(self, model: &ModelFile) -> bool {
        match (self, model) {
            (ModelClass::RawNeighborhood, ModelFile::Neighborhood(_)) => true,
            (ModelClass::ConstrainedNeighborhood, ModelFile::Neighborhood(m)) => m.check_conditions().all_hold(),
            (ModelClass::KripkeAll, ModelFile::Kripke(_)) => true,
            (ModelClass::KripkeEquivalence, ModelFile::Kripke(m)) => m.relation_properties().equivalence,
            (ModelClass::Universal, ModelFile::Universal(_)) => true,
            _ => false,
        }
    }
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelClass {
    type Err = String;

    /// Accepts either the short or the full name.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelClass::ALL
            .into_iter()
            .find(|c| c.short_name() == s || c.name() == s)
            .ok_or_else(|| {
                format!("unknown model class `{s}` (expected raw, constrained, kripke-equiv, kripke or universal)")
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_worlds: usize,
    pub atoms: Vec<u32>,
    pub model_class: ModelClass,
}

impl SearchBounds {
    pub fn new(model_class: ModelClass, max_worlds: usize, atoms: impl IntoIterator<Item = u32>) -> SearchBounds {
        let mut atoms: Vec<u32> = atoms.into_iter().collect();
        atoms.sort_unstable();
        atoms.dedup();
        SearchBounds {
            max_worlds,
            atoms,
            model_class,
        }
    }

    fn validate(&self, exhaustive: bool) -> Result<(), SearchError> {
        let class = self.model_class;
        let cap = if exhaustive {
            class.enumeration_cap()
        } else {
            class.sampling_cap()
        };
        if self.max_worlds == 0 || self.max_worlds > cap {
            return Err(SearchError::BoundsExceeded {
                class,
                max_worlds: self.max_worlds,
                cap,
            });
        }
        if exhaustive && self.max_worlds * self.atoms.len() > MAX_VALUATION_BITS {
            return Err(SearchError::TooManyValuations {
                max_worlds: self.max_worlds,
                atoms: self.atoms.len(),
            });
        }
        Ok(())
    }

    fn check_formula(&self, f: &Formula) -> Result<(), SearchError> {
        if self.model_class.dialect().admits(f) {
            Ok(())
        } else {
            Err(SearchError::Dialect {
                formula: f.to_string(),
                class: self.model_class,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{class} search supports 1 to {cap} worlds, got {max_worlds}")]
    BoundsExceeded {
        class: ModelClass,
        max_worlds: usize,
        cap: usize,
    },
    #[error("{max_worlds} worlds with {atoms} atoms is too many valuations to enumerate")]
    TooManyValuations { max_worlds: usize, atoms: usize },
    #[error("formula `{formula}` cannot be evaluated in {class} models")]
    Dialect { formula: String, class: ModelClass },
    #[error("internal error: countermodel failed re-validation: {0}")]
    Revalidation(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchVerdict {
    CountermodelFound {
        model: ModelFile,
        world: usize,
    },
    /// No countermodel within the bounds. This is not a validity claim.
    ExhaustedValid,
    /// Random sampling found no countermodel.
    Inconclusive,
}

impl SearchVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            SearchVerdict::CountermodelFound { .. } => "CountermodelFound",
            SearchVerdict::ExhaustedValid => "ExhaustedValid",
            SearchVerdict::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: SearchVerdict,
    pub models_checked: u64,
}

impl SearchOutcome {
    pub fn countermodel(&self) -> Option<(&ModelFile, usize)> {
        match &self.verdict {
            SearchVerdict::CountermodelFound { model, world } => Some((model, *world)),
            _ => None,
        }
    }
}

/// Number of models [`enumerate_models`] yields.
pub fn count_models(b: &SearchBounds) -> Result<u64, SearchError> {
    b.validate(true)?;
    Ok((1..=b.max_worlds)
        .map(|n| frames(b.model_class, n).len() as u64 * (1u64 << (n * b.atoms.len())))
        .sum())
}

/// Every model of the class up to the bounds, in enumeration order.
pub fn enumerate_models(b: &SearchBounds) -> Result<impl Iterator<Item = ModelFile>, SearchError> {
    b.validate(true)?;
    let class = b.model_class;
    let atoms = b.atoms.clone();
    Ok((1..=b.max_worlds).flat_map(move |n| {
        let atoms = atoms.clone();
        frames(class, n).into_iter().flat_map(move |frame| {
            let atoms = atoms.clone();
            let count = 1u64 << (n * atoms.len());
            (0..count).map(move |v| {
                let mut vals = Vec::new();
                valuation_at(v, n, atoms.len(), &mut vals);
                materialize(&frame, &atoms, &vals)
            })
        })
    }))
}

/// Runs `visit` on every (frame, valuation) pair in order until it returns
/// a world, counting the pairs visited.
fn scan(
    b: &SearchBounds,
    mut visit: impl FnMut(&Frame, &[WorldSet]) -> Option<usize>,
) -> (Option<(ModelFile, usize)>, u64) {
    let mut checked = 0u64;
    let mut vals = Vec::new();
    for n in 1..=b.max_worlds {
        for frame in frames(b.model_class, n) {
            for v in 0..1u64 << (n * b.atoms.len()) {
                checked += 1;
                valuation_at(v, n, b.atoms.len(), &mut vals);
                if let Some(w) = visit(&frame, &vals) {
                    return (Some((materialize(&frame, &b.atoms, &vals), w)), checked);
                }
            }
        }
    }
    (None, checked)
}

fn first_world_outside(set: WorldSet, n: usize) -> Option<usize> {
    set.complement(n).iter().next()
}

fn eval_in(model: &ModelFile, w: usize, f: &Formula) -> Result<bool, String> {
    let r = match model {
        ModelFile::Neighborhood(m) => m.eval(w, f),
        ModelFile::Kripke(m) => m.eval(w, f),
        ModelFile::Universal(m) => m.eval(w, f),
    };
    r.map_err(|e| e.to_string())
}

fn valid_in(model: &ModelFile, f: &Formula) -> Result<bool, String> {
    let r = match model {
        ModelFile::Neighborhood(m) => m.is_valid(f),
        ModelFile::Kripke(m) => m.is_valid(f),
        ModelFile::Universal(m) => m.is_valid(f),
    };
    r.map_err(|e| e.to_string())
}

/// Re-checks a countermodel through the model types: class membership,
/// validity of every premise and falsity of `f` at `world`.
fn revalidate(
    class: ModelClass,
    gamma: &[Formula],
    f: &Formula,
    model: ModelFile,
    world: usize,
    checked: u64,
) -> Result<SearchOutcome, SearchError> {
    let fail = |what: String| Err(SearchError::Revalidation(format!("{what} in {}", model.to_json())));
    if !class.contains(&model) {
        return fail(format!("model is not in {class}"));
    }
    for g in gamma {
        if !valid_in(&model, g).map_err(SearchError::Revalidation)? {
            return fail(format!("premise `{g}` is not valid"));
        }
    }
    if eval_in(&model, world, f).map_err(SearchError::Revalidation)? {
        return fail(format!("`{f}` holds at world {world}"));
    }
    Ok(SearchOutcome {
        verdict: SearchVerdict::CountermodelFound { model, world },
        models_checked: checked,
    })
}

/// The first model and world, in enumeration order, where `f` is false.
pub fn find_countermodel(f: &Formula, b: &SearchBounds) -> Result<SearchOutcome, SearchError> {
    check_global_consequence(&[], f, b)
}

/// Searches for a model validating every formula of `gamma` in which `f` is
/// false somewhere.
pub fn check_global_consequence(
    gamma: &[Formula],
    f: &Formula,
    b: &SearchBounds,
) -> Result<SearchOutcome, SearchError> {
    b.validate(true)?;
    for g in gamma.iter().chain([f]) {
        b.check_formula(g)?;
    }
    let premises: Vec<Compiled> = gamma.iter().map(|g| Compiled::new(g, &b.atoms)).collect();
    let goal = Compiled::new(f, &b.atoms);
    let mut stack = Vec::new();
    let (found, checked) = scan(b, |frame, vals| {
        let n = frame.worlds();
        let full = WorldSet::full(n);
        if premises.iter().any(|p| p.eval(frame, vals, &mut stack) != full) {
            return None;
        }
        first_world_outside(goal.eval(frame, vals, &mut stack), n)
    });
    match found {
        Some((model, world)) => revalidate(b.model_class, gamma, f, model, world, checked),
        None => Ok(SearchOutcome {
            verdict: SearchVerdict::ExhaustedValid,
            models_checked: checked,
        }),
    }
}

/// Draws `samples` seeded random models and reports the first one refuting
/// `f`, or `Inconclusive`.
pub fn sample_countermodel(
    f: &Formula,
    b: &SearchBounds,
    samples: u64,
    seed: u64,
) -> Result<SearchOutcome, SearchError> {
    b.validate(false)?;
    b.check_formula(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let goal = Compiled::new(f, &b.atoms);
    let mut stack = Vec::new();
    for k in 1..=samples {
        let n = rand::Rng::gen_range(&mut rng, 1..=b.max_worlds);
        let frame = sample::random_frame(b.model_class, n, &mut rng);
        let vals = sample::random_valuation(n, b.atoms.len(), &mut rng);
        if let Some(w) = first_world_outside(goal.eval(&frame, &vals, &mut stack), n) {
            let model = materialize(&frame, &b.atoms, &vals);
            return revalidate(b.model_class, &[], f, model, w, k);
        }
    }
    Ok(SearchOutcome {
        verdict: SearchVerdict::Inconclusive,
        models_checked: samples,
    })
}

/// `[](p0 -> p1) -> []p0 -> []p1`.
pub fn k_schema() -> Formula {
    "[](p0 -> p1) -> []p0 -> []p1".parse().expect("K parses")
}

/// Searches constrained neighborhood models for a countermodel to K over
/// atoms 0 and 1.
pub fn run_k_experiment(b: &SearchBounds) -> Result<SearchOutcome, SearchError> {
    if b.model_class != ModelClass::ConstrainedNeighborhood {
        return Err(SearchError::Dialect {
            formula: k_schema().to_string(),
            class: b.model_class,
        });
    }
    find_countermodel(&k_schema(), b)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::semantics::{KripkeModel, NeighborhoodModel, Valuation};

    fn f(text: &str) -> Formula {
        text.parse().unwrap()
    }

    fn constrained(n: usize, atoms: &[u32]) -> SearchBounds {
        SearchBounds::new(ModelClass::ConstrainedNeighborhood, n, atoms.iter().copied())
    }

    #[test]
    fn class_sizes() {
        assert_eq!(count_models(&constrained(1, &[0])).unwrap(), 2);
        let equiv = SearchBounds::new(ModelClass::KripkeEquivalence, 2, []);
        assert_eq!(count_models(&equiv).unwrap(), 1 + 2);
        let raw1 = SearchBounds::new(ModelClass::RawNeighborhood, 1, []);
        assert_eq!(count_models(&raw1).unwrap(), 4);
        assert_eq!(count_models(&constrained(3, &[0, 1])).unwrap(), 4 + 64 + 4096);
        for b in [constrained(2, &[0]), raw1, equiv] {
            assert_eq!(enumerate_models(&b).unwrap().count() as u64, count_models(&b).unwrap());
        }
    }

    #[test]
    fn two_world_equivalence_relations() {
        let models: Vec<ModelFile> = enumerate_models(&SearchBounds::new(ModelClass::KripkeEquivalence, 2, []))
            .unwrap()
            .filter(|m| matches!(m, ModelFile::Kripke(k) if k.world_count() == 2))
            .collect();
        let id = KripkeModel::new(2, vec![(0, 0), (1, 1)], Valuation::new()).unwrap();
        let all = KripkeModel::universal(2, Valuation::new()).unwrap();
        assert_eq!(models, vec![ModelFile::from(id), ModelFile::from(all)]);
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        for b in [
            constrained(3, &[0]),
            SearchBounds::new(ModelClass::RawNeighborhood, 2, [0]),
            SearchBounds::new(ModelClass::KripkeAll, 2, [0]),
        ] {
            let all: Vec<String> = enumerate_models(&b).unwrap().map(|m| m.to_json()).collect();
            let distinct: BTreeSet<&String> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
            assert!(enumerate_models(&b).unwrap().all(|m| b.model_class.contains(&m)));
        }
    }

    #[test]
    fn first_countermodel_for_p_implies_box_p() {
        let out = find_countermodel(&f("p0 -> []p0"), &constrained(2, &[0])).unwrap();
        let (model, world) = out.countermodel().unwrap();
        assert_eq!(world, 0);
        let full = WorldSet::full(2);
        let expected = NeighborhoodModel::new(
            2,
            vec![BTreeSet::from([full]), BTreeSet::from([full])],
            Valuation::from([(0, WorldSet::singleton(0))]),
        )
        .unwrap();
        assert_eq!(model, &ModelFile::from(expected));
        // one-world models (2), then the first frame's valuations ∅ and {0}
        assert_eq!(out.models_checked, 2 + 2);
    }

    #[test]
    fn axioms_survive_exhaustion() {
        let t = find_countermodel(&f("[]p0 -> p0"), &constrained(3, &[0])).unwrap();
        assert_eq!(t.verdict, SearchVerdict::ExhaustedValid);
        let five = SearchBounds::new(ModelClass::KripkeEquivalence, 3, [0]);
        let out = find_countermodel(&f("<>p0 -> []<>p0"), &five).unwrap();
        assert_eq!(out.verdict, SearchVerdict::ExhaustedValid);
        // 5 fails once the relation may be arbitrary
        let all = SearchBounds::new(ModelClass::KripkeAll, 2, [0]);
        assert!(find_countermodel(&f("<>p0 -> []<>p0"), &all)
            .unwrap()
            .countermodel()
            .is_some());
    }

    #[test]
    fn global_consequence() {
        let b = constrained(2, &[0]);
        let top = check_global_consequence(&[], &Formula::Top, &b).unwrap();
        assert_eq!(top.verdict, SearchVerdict::ExhaustedValid);
        let vacuous = check_global_consequence(&[Formula::Bottom], &f("p0"), &b).unwrap();
        assert_eq!(vacuous.verdict, SearchVerdict::ExhaustedValid);
        // p0 valid forces ||p0|| = W, which is in every constrained family
        let nec = check_global_consequence(&[f("p0")], &f("[]p0"), &b).unwrap();
        assert_eq!(nec.verdict, SearchVerdict::ExhaustedValid);
        // locally, p0 does not entail []p0
        let raw = SearchBounds::new(ModelClass::RawNeighborhood, 1, [0]);
        let out = check_global_consequence(&[f("p0")], &f("[]p0"), &raw).unwrap();
        assert!(out.countermodel().is_some());
    }

    #[test]
    fn bounds_and_dialects_are_enforced() {
        let too_big = SearchBounds::new(ModelClass::RawNeighborhood, 3, [0]);
        assert!(matches!(
            find_countermodel(&f("p0"), &too_big),
            Err(SearchError::BoundsExceeded { cap: 2, .. })
        ));
        assert!(matches!(
            find_countermodel(&f("<>p0"), &constrained(2, &[0])),
            Err(SearchError::Dialect { .. })
        ));
        assert!(matches!(
            find_countermodel(&f("nabla p0"), &SearchBounds::new(ModelClass::Universal, 2, [0])),
            Err(SearchError::Dialect { .. })
        ));
        assert!(matches!(
            count_models(&SearchBounds::new(ModelClass::Universal, 8, 0..5)),
            Err(SearchError::TooManyValuations { .. })
        ));
    }

    #[test]
    fn k_experiment_at_one_world() {
        let out = run_k_experiment(&constrained(1, &[0, 1])).unwrap();
        assert_eq!(out.models_checked, 4);
        assert_eq!(out.verdict, SearchVerdict::ExhaustedValid);
    }

    #[test]
    fn sampling_is_seeded() {
        let b = SearchBounds::new(ModelClass::RawNeighborhood, 5, [0]);
        let a = sample_countermodel(&f("[]p0 -> p0"), &b, 200, 7).unwrap();
        assert_eq!(a, sample_countermodel(&f("[]p0 -> p0"), &b, 200, 7).unwrap());
        assert!(a.countermodel().is_some());
        let c = constrained(6, &[0]);
        let t = sample_countermodel(&f("[]p0 -> p0"), &c, 200, 7).unwrap();
        assert_eq!(t.verdict, SearchVerdict::Inconclusive);
        assert_eq!(t.models_checked, 200);
    }
}
