use std::collections::BTreeSet;

use serde::Serialize;

use super::{Model, ModelError, Valuation, WorldSet, MAX_WORLDS};
use crate::formula::{Dialect, Formula};

/// `<W, S, V>`: each world carries a family of world sets, and `[]A` holds at
/// `w` iff the truth set of `A` is in the family of `w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NeighborhoodModel {
    worlds: usize,
    neighborhoods: Vec<BTreeSet<WorldSet>>,
    valuation: Valuation,
}

impl NeighborhoodModel {
    pub fn new(
        worlds: usize,
        neighborhoods: Vec<BTreeSet<WorldSet>>,
        valuation: Valuation,
    ) -> Result<NeighborhoodModel, ModelError> {
        if worlds == 0 || worlds > MAX_WORLDS {
            return Err(ModelError::WorldCount(worlds));
        }
        if neighborhoods.len() != worlds {
            return Err(ModelError::FamilyCount {
                expected: worlds,
                got: neighborhoods.len(),
            });
        }
        let sets = neighborhoods.iter().flatten().chain(valuation.values());
        if let Some(bad) = sets.map(|s| s.bound()).find(|&b| b > worlds) {
            return Err(ModelError::WorldOutOfRange { world: bad - 1, worlds });
        }
        Ok(NeighborhoodModel {
            worlds,
            neighborhoods,
            valuation,
        })
    }

    pub(crate) fn new_unchecked(
        worlds: usize,
        neighborhoods: Vec<BTreeSet<WorldSet>>,
        valuation: Valuation,
    ) -> NeighborhoodModel {
        debug_assert!(Self::new(worlds, neighborhoods.clone(), valuation.clone()).is_ok());
        NeighborhoodModel {
            worlds,
            neighborhoods,
            valuation,
        }
    }

    /// The family `S(w)`.
    pub fn neighborhoods(&self, w: usize) -> &BTreeSet<WorldSet> {
        &self.neighborhoods[w]
    }

    pub fn families(&self) -> &[BTreeSet<WorldSet>] {
        &self.neighborhoods
    }

    pub fn universe(&self) -> WorldSet {
        WorldSet::full(self.worlds)
    }

    pub fn check_conditions(&self) -> ConditionReport {
        let mut report = ConditionReport::default();
        for (w, family) in self.neighborhoods.iter().enumerate() {
            if report.c.is_none() {
                report.c = family.iter().find_map(|&x| {
                    family
                        .iter()
                        .find(|&&y| !family.contains(&x.intersection(y)))
                        .map(|&y| ConditionFailure::C { world: w, x, y })
                });
            }
            if report.h.is_none() {
                // Literal (h) amounts to upward closure; a failure of upward
                // closure always shows up as a one-world extension leaving S(w).
                report.h = family.iter().find_map(|&x| {
                    x.complement(self.worlds)
                        .iter()
                        .map(WorldSet::singleton)
                        .find(|&y| !family.contains(&x.union(y)))
                        .map(|y| ConditionFailure::H { world: w, x, y })
                });
            }
            if report.t.is_none() {
                report.t = family
                    .iter()
                    .find(|x| !x.contains(w))
                    .map(|&x| ConditionFailure::T { world: w, x });
            }
            if report.n.is_none() && !family.contains(&self.universe()) {
                report.n = Some(ConditionFailure::N { world: w });
            }
        }
        report
    }

    /// Closes every family under supersets.
    pub fn supplement(&self) -> NeighborhoodModel {
        let neighborhoods = self
            .neighborhoods
            .iter()
            .map(|family| family.iter().flat_map(|y| y.supersets(self.worlds)).collect())
            .collect();
        NeighborhoodModel {
            worlds: self.worlds,
            neighborhoods,
            valuation: self.valuation.clone(),
        }
    }
}

impl Model for NeighborhoodModel {
    fn world_count(&self) -> usize {
        self.worlds
    }

    fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    fn dialect(&self) -> Dialect {
        Dialect::BoxSystem
    }

    fn modal_holds(&self, w: usize, _modal: &Formula, inner: &dyn Fn(usize) -> bool) -> bool {
        let truth: WorldSet = (0..self.worlds).filter(|&z| inner(z)).collect();
        self.neighborhoods[w].contains(&truth)
    }

    fn modal_set(&self, _modal: &Formula, inner: WorldSet) -> WorldSet {
        (0..self.worlds)
            .filter(|&w| self.neighborhoods[w].contains(&inner))
            .collect()
    }
}

/// A violated frame condition, with the data that violates it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "lowercase")]
pub enum ConditionFailure {
    /// `x, y` in `S(world)` but not their intersection.
    C { world: usize, x: WorldSet, y: WorldSet },
    /// `x` in `S(world)` but not `x ∪ y`.
    H { world: usize, x: WorldSet, y: WorldSet },
    /// `x` in `S(world)` but `world` not in `x`.
    T { world: usize, x: WorldSet },
    /// `W` not in `S(world)`.
    N { world: usize },
}

impl ConditionFailure {
    /// Re-checks the witness against `m`; true iff it really violates its condition.
    pub fn confirms(&self, m: &NeighborhoodModel) -> bool {
        let s = |w: usize| m.neighborhoods(w);
        match *self {
            ConditionFailure::C { world, x, y } => {
                s(world).contains(&x) && s(world).contains(&y) && !s(world).contains(&x.intersection(y))
            }
            ConditionFailure::H { world, x, y } => {
                (s(world).contains(&x) || s(world).contains(&y)) && !s(world).contains(&x.union(y))
            }
            ConditionFailure::T { world, x } => s(world).contains(&x) && !x.contains(world),
            ConditionFailure::N { world } => !s(world).contains(&m.universe()),
        }
    }
}

/// Outcome of checking conditions (c), (h), (t), (n); each field holds the
/// first failure found, or `None` when the condition holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConditionReport {
    pub c: Option<ConditionFailure>,
    pub h: Option<ConditionFailure>,
    pub t: Option<ConditionFailure>,
    pub n: Option<ConditionFailure>,
}

impl ConditionReport {
    pub fn c_holds(&self) -> bool {
        self.c.is_none()
    }

    pub fn h_holds(&self) -> bool {
        self.h.is_none()
    }

    pub fn t_holds(&self) -> bool {
        self.t.is_none()
    }

    pub fn n_holds(&self) -> bool {
        self.n.is_none()
    }

    pub fn all_hold(&self) -> bool {
        self.c_holds() && self.h_holds() && self.t_holds() && self.n_holds()
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionFailure> {
        [&self.c, &self.h, &self.t, &self.n].into_iter().flatten()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{nm_eval, supplement, truth_set};

    fn set(ws: &[usize]) -> WorldSet {
        ws.iter().copied().collect()
    }

    fn family(sets: &[&[usize]]) -> BTreeSet<WorldSet> {
        sets.iter().map(|s| set(s)).collect()
    }

    fn f(text: &str) -> Formula {
        text.parse().unwrap()
    }

    fn two_world_model() -> NeighborhoodModel {
        NeighborhoodModel::new(
            2,
            vec![family(&[&[0], &[0, 1]]), family(&[&[1], &[0, 1]])],
            Valuation::from([(0, set(&[0]))]),
        )
        .unwrap()
    }

    #[test]
    fn box_clause() {
        let m = two_world_model();
        assert!(nm_eval(&m, 0, &f("[]p0")).unwrap());
        assert!(!nm_eval(&m, 1, &f("[]p0")).unwrap());
        for w in 0..2 {
            assert!(nm_eval(&m, w, &Formula::Top).unwrap());
        }
    }

    #[test]
    fn truth_sets() {
        let m = two_world_model();
        assert_eq!(truth_set(&m, &f("p0")).unwrap(), set(&[0]));
        assert_eq!(truth_set(&m, &f("~p0")).unwrap(), set(&[1]));
        assert_eq!(truth_set(&m, &Formula::Bottom).unwrap(), WorldSet::EMPTY);
        assert_eq!(truth_set(&m, &f("[]p0")).unwrap(), set(&[0]));
        // atoms missing from V are empty
        assert_eq!(truth_set(&m, &f("p7")).unwrap(), WorldSet::EMPTY);
    }

    #[test]
    fn evaluation_errors() {
        let m = two_world_model();
        assert!(matches!(
            nm_eval(&m, 2, &f("p0")),
            Err(crate::semantics::EvalError::WorldOutOfRange { world: 2, worlds: 2 })
        ));
        assert!(matches!(
            nm_eval(&m, 0, &f("<>p0")),
            Err(crate::semantics::EvalError::Dialect { .. })
        ));
        assert!(nm_eval(&m, 0, &f("nabla p0")).is_err());
    }

    #[test]
    fn constructor_validates() {
        assert_eq!(
            NeighborhoodModel::new(0, vec![], Valuation::new()),
            Err(ModelError::WorldCount(0))
        );
        assert!(matches!(
            NeighborhoodModel::new(1, vec![family(&[&[1]])], Valuation::new()),
            Err(ModelError::WorldOutOfRange { world: 1, worlds: 1 })
        ));
        assert!(matches!(
            NeighborhoodModel::new(2, vec![BTreeSet::new()], Valuation::new()),
            Err(ModelError::FamilyCount { .. })
        ));
    }

    #[test]
    fn conditions_all_hold_for_trivial_filter() {
        let w = set(&[0, 1, 2]);
        let m = NeighborhoodModel::new(3, vec![BTreeSet::from([w]); 3], Valuation::new()).unwrap();
        assert!(m.check_conditions().all_hold());
    }

    #[test]
    fn n_and_h_fail_without_universe() {
        let m = NeighborhoodModel::new(2, vec![family(&[&[0]]), family(&[&[0, 1]])], Valuation::new()).unwrap();
        let r = m.check_conditions();
        assert_eq!(r.n, Some(ConditionFailure::N { world: 0 }));
        assert_eq!(
            r.h,
            Some(ConditionFailure::H {
                world: 0,
                x: set(&[0]),
                y: set(&[1])
            })
        );
        assert!(r.c_holds() && r.t_holds());
        assert!(r.failures().all(|w| w.confirms(&m)));
    }

    #[test]
    fn t_fails_with_witness() {
        let m =
            NeighborhoodModel::new(2, vec![family(&[&[1], &[0, 1]]), family(&[&[0, 1]])], Valuation::new()).unwrap();
        let r = m.check_conditions();
        assert_eq!(r.t, Some(ConditionFailure::T { world: 0, x: set(&[1]) }));
        assert!(r.t.unwrap().confirms(&m));
    }

    #[test]
    fn c_fails_with_witness() {
        let m = NeighborhoodModel::new(
            3,
            vec![family(&[&[0, 1], &[0, 2]]), family(&[&[1]]), family(&[&[2]])],
            Valuation::new(),
        )
        .unwrap();
        let r = m.check_conditions();
        let c = r.c.unwrap();
        assert!(c.confirms(&m));
        assert!(matches!(c, ConditionFailure::C { world: 0, .. }));
    }

    #[test]
    fn empty_family_is_legal_but_fails_n() {
        let m = NeighborhoodModel::new(1, vec![BTreeSet::new()], Valuation::new()).unwrap();
        let r = m.check_conditions();
        assert!(r.c_holds() && r.h_holds() && r.t_holds());
        assert!(!r.n_holds());
    }

    #[test]
    fn supplement_examples() {
        let m = NeighborhoodModel::new(2, vec![family(&[&[0]]), BTreeSet::new()], Valuation::new()).unwrap();
        let s = supplement(&m);
        assert_eq!(s.neighborhoods(0), &family(&[&[0], &[0, 1]]));
        assert!(s.neighborhoods(1).is_empty());
        assert_eq!(supplement(&s), s);

        let closed = two_world_model();
        assert_eq!(supplement(&closed), closed);
    }
}
