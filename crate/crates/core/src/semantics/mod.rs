//! Truth in neighborhood, Kripke and universal models over finite world sets.
//!
//! Worlds are the integers `0..n` with `n <= 64`, so a set of worlds is a
//! 64-bit mask. Every model type evaluates formulas along two independent
//! routes: pointwise (`eval`, quantifying world by world) and set-valued
//! (`truth_set`, by bitmask algebra). The two must agree.

mod io;
mod kripke;
mod neighborhood;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::formula::{Dialect, Formula};

pub use io::{ModelFile, ModelIoError};
pub use kripke::{KripkeModel, RelationProperties, UniversalModel};
pub use neighborhood::{ConditionFailure, ConditionReport, NeighborhoodModel};

/// Largest supported world count.
pub const MAX_WORLDS: usize = 64;

/// A set of worlds as a bitmask: bit `w` is set iff world `w` is a member.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldSet(u64);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub fn from_bits(bits: u64) -> WorldSet {
        WorldSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, ..., n-1}`.
    pub fn full(n: usize) -> WorldSet {
        debug_assert!(n <= MAX_WORLDS);
        if n == MAX_WORLDS {
            WorldSet(u64::MAX)
        } else {
            WorldSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(w: usize) -> WorldSet {
        WorldSet(1u64 << w)
    }

    pub fn contains(self, w: usize) -> bool {
        w < MAX_WORLDS && self.0 >> w & 1 == 1
    }

    pub fn insert(&mut self, w: usize) {
        self.0 |= 1u64 << w;
    }

    pub fn union(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 | other.0)
    }

    pub fn intersection(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 & other.0)
    }

    /// Complement relative to `{0, ..., n-1}`.
    pub fn complement(self, n: usize) -> WorldSet {
        WorldSet(!self.0 & WorldSet::full(n).0)
    }

    pub fn is_subset(self, other: WorldSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_WORLDS).filter(move |&w| self.contains(w))
    }

    /// Largest member plus one, or 0 for the empty set.
    pub fn bound(self) -> usize {
        MAX_WORLDS - self.0.leading_zeros() as usize
    }

    /// All supersets of `self` inside `{0, ..., n-1}`, ascending by mask.
    pub fn supersets(self, n: usize) -> impl Iterator<Item = WorldSet> {
        let free = self.complement(n).0;
        let base = self.0;
        // walk the submasks of `free` upwards
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let sub = next?;
            next = if sub == free {
                None
            } else {
                Some((sub | !free).wrapping_add(1) & free)
            };
            Some(WorldSet(base | sub))
        })
    }
}

impl FromIterator<usize> for WorldSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = WorldSet::EMPTY;
        for w in iter {
            s.insert(w);
        }
        s
    }
}

impl serde::Serialize for WorldSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl fmt::Display for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

/// Atom valuation. Atoms missing from the map are false everywhere.
pub type Valuation = BTreeMap<u32, WorldSet>;

pub(crate) fn atom_set(valuation: &Valuation, atom: u32) -> WorldSet {
    valuation.get(&atom).copied().unwrap_or(WorldSet::EMPTY)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("world {world} is out of range for a model with {worlds} worlds")]
    WorldOutOfRange { world: usize, worlds: usize },
    #[error("formula `{formula}` is not in the {dialect} dialect required by this model")]
    Dialect { formula: String, dialect: Dialect },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a model needs between 1 and {MAX_WORLDS} worlds, got {0}")]
    WorldCount(usize),
    #[error("world {world} is out of range for a model with {worlds} worlds")]
    WorldOutOfRange { world: usize, worlds: usize },
    #[error("expected {expected} neighborhood families, got {got}")]
    FamilyCount { expected: usize, got: usize },
}

/// Common interface of the three model kinds.
pub trait Model {
    fn world_count(&self) -> usize;

    fn valuation(&self) -> &Valuation;

    /// Dialect of formulas this model can evaluate.
    fn dialect(&self) -> Dialect;

    /// Pointwise truth of a modal formula whose operand truth is given by `inner`.
    #[doc(hidden)]
    fn modal_holds(&self, w: usize, modal: &Formula, inner: &dyn Fn(usize) -> bool) -> bool;

    /// Truth set of a modal formula given the truth set of its operand.
    #[doc(hidden)]
    fn modal_set(&self, modal: &Formula, inner: WorldSet) -> WorldSet;

    fn check(&self, w: Option<usize>, f: &Formula) -> Result<(), EvalError> {
        if let Some(w) = w {
            if w >= self.world_count() {
                return Err(EvalError::WorldOutOfRange {
                    world: w,
                    worlds: self.world_count(),
                });
            }
        }
        if !self.dialect().admits(f) {
            return Err(EvalError::Dialect {
                formula: f.to_string(),
                dialect: self.dialect(),
            });
        }
        Ok(())
    }

    /// Truth of `f` at world `w`, by direct recursion on the truth clauses.
    fn eval(&self, w: usize, f: &Formula) -> Result<bool, EvalError> {
        self.check(Some(w), f)?;
        Ok(holds(self, w, f))
    }

    /// `{w : f is true at w}`, computed by set algebra.
    fn truth_set(&self, f: &Formula) -> Result<WorldSet, EvalError> {
        self.check(None, f)?;
        Ok(set_of(self, f))
    }

    /// True iff `f` holds at every world.
    fn is_valid(&self, f: &Formula) -> Result<bool, EvalError> {
        Ok(self.truth_set(f)? == WorldSet::full(self.world_count()))
    }
}

fn holds<M: Model + ?Sized>(m: &M, w: usize, f: &Formula) -> bool {
    match f {
        Formula::Atom(i) => atom_set(m.valuation(), *i).contains(w),
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Not(a) => !holds(m, w, a),
        Formula::And(a, b) => holds(m, w, a) && holds(m, w, b),
        Formula::Or(a, b) => holds(m, w, a) || holds(m, w, b),
        Formula::Implies(a, b) => !holds(m, w, a) || holds(m, w, b),
        Formula::Iff(a, b) => holds(m, w, a) == holds(m, w, b),
        Formula::Box(a) | Formula::Diamond(a) | Formula::Nabla(a) => m.modal_holds(w, f, &|z| holds(m, z, a)),
    }
}

fn set_of<M: Model + ?Sized>(m: &M, f: &Formula) -> WorldSet {
    let n = m.world_count();
    match f {
        Formula::Atom(i) => atom_set(m.valuation(), *i).intersection(WorldSet::full(n)),
        Formula::Top => WorldSet::full(n),
        Formula::Bottom => WorldSet::EMPTY,
        Formula::Not(a) => set_of(m, a).complement(n),
        Formula::And(a, b) => set_of(m, a).intersection(set_of(m, b)),
        Formula::Or(a, b) => set_of(m, a).union(set_of(m, b)),
        Formula::Implies(a, b) => set_of(m, a).complement(n).union(set_of(m, b)),
        Formula::Iff(a, b) => {
            let (x, y) = (set_of(m, a), set_of(m, b));
            x.complement(n).union(y).intersection(y.complement(n).union(x))
        }
        Formula::Box(a) | Formula::Diamond(a) | Formula::Nabla(a) => m.modal_set(f, set_of(m, a)),
    }
}

pub fn nm_eval(m: &NeighborhoodModel, w: usize, f: &Formula) -> Result<bool, EvalError> {
    m.eval(w, f)
}

pub fn truth_set(m: &NeighborhoodModel, f: &Formula) -> Result<WorldSet, EvalError> {
    m.truth_set(f)
}

pub fn nm_is_valid(m: &NeighborhoodModel, f: &Formula) -> Result<bool, EvalError> {
    m.is_valid(f)
}

pub fn nm_check_conditions(m: &NeighborhoodModel) -> ConditionReport {
    m.check_conditions()
}

pub fn supplement(m: &NeighborhoodModel) -> NeighborhoodModel {
    m.supplement()
}

pub fn km_eval(m: &KripkeModel, w: usize, f: &Formula) -> Result<bool, EvalError> {
    m.eval(w, f)
}

pub fn um_eval(m: &UniversalModel, w: usize, f: &Formula) -> Result<bool, EvalError> {
    m.eval(w, f)
}

pub fn relation_properties(m: &KripkeModel) -> RelationProperties {
    m.relation_properties()
}
