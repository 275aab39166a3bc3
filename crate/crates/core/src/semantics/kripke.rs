use serde::Serialize;

use super::{Model, ModelError, Valuation, WorldSet, MAX_WORLDS};
use crate::formula::{Dialect, Formula};

fn check_worlds(worlds: usize) -> Result<(), ModelError> {
    if worlds == 0 || worlds > MAX_WORLDS {
        Err(ModelError::WorldCount(worlds))
    } else {
        Ok(())
    }
}

fn check_sets<'a>(worlds: usize, sets: impl IntoIterator<Item = &'a WorldSet>) -> Result<(), ModelError> {
    match sets.into_iter().map(|s| s.bound()).find(|&b| b > worlds) {
        Some(bad) => Err(ModelError::WorldOutOfRange { world: bad - 1, worlds }),
        None => Ok(()),
    }
}

/// `<W, R, e>` with `[]` and `<>` quantifying over `R`-successors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KripkeModel {
    worlds: usize,
    /// `successors[w]` is `{z : (w, z) in R}`.
    successors: Vec<WorldSet>,
    valuation: Valuation,
}

impl KripkeModel {
    pub fn new(
        worlds: usize,
        relation: impl IntoIterator<Item = (usize, usize)>,
        valuation: Valuation,
    ) -> Result<KripkeModel, ModelError> {
        check_worlds(worlds)?;
        let mut successors = vec![WorldSet::EMPTY; worlds];
        for (from, to) in relation {
            let bad = from.max(to);
            if bad >= worlds {
                return Err(ModelError::WorldOutOfRange { world: bad, worlds });
            }
            successors[from].insert(to);
        }
        check_sets(worlds, valuation.values())?;
        Ok(KripkeModel {
            worlds,
            successors,
            valuation,
        })
    }

    pub(crate) fn from_successors(successors: Vec<WorldSet>, valuation: Valuation) -> KripkeModel {
        KripkeModel {
            worlds: successors.len(),
            successors,
            valuation,
        }
    }

    /// The universal relation `W × W`.
    pub fn universal(worlds: usize, valuation: Valuation) -> Result<KripkeModel, ModelError> {
        let pairs: Vec<_> = (0..worlds).flat_map(|a| (0..worlds).map(move |b| (a, b))).collect();
        KripkeModel::new(worlds, pairs, valuation)
    }

    pub fn successors(&self, w: usize) -> WorldSet {
        self.successors[w]
    }

    pub fn related(&self, from: usize, to: usize) -> bool {
        self.successors[from].contains(to)
    }

    /// `R` as ordered pairs, ascending.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.worlds)
            .flat_map(|a| self.successors[a].iter().map(move |b| (a, b)))
            .collect()
    }

    pub fn relation_properties(&self) -> RelationProperties {
        let ws = 0..self.worlds;
        let r = |a, b| self.related(a, b);
        let reflexive = ws.clone().all(|a| r(a, a));
        let symmetric = ws.clone().all(|a| ws.clone().all(|b| !r(a, b) || r(b, a)));
        let triples = || {
            ws.clone()
                .flat_map(move |a| (0..self.worlds).flat_map(move |b| (0..self.worlds).map(move |c| (a, b, c))))
        };
        let transitive = triples().all(|(a, b, c)| !(r(a, b) && r(b, c)) || r(a, c));
        let euclidean = triples().all(|(a, b, c)| !(r(a, b) && r(a, c)) || r(b, c));
        RelationProperties {
            reflexive,
            euclidean,
            symmetric,
            transitive,
            equivalence: reflexive && euclidean,
        }
    }
}

/// Properties of an accessibility relation. `equivalence` means reflexive and
/// euclidean, which for finite relations coincides with reflexive, symmetric
/// and transitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RelationProperties {
    pub reflexive: bool,
    pub euclidean: bool,
    pub symmetric: bool,
    pub transitive: bool,
    pub equivalence: bool,
}

impl Model for KripkeModel {
    fn world_count(&self) -> usize {
        self.worlds
    }

    fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    fn dialect(&self) -> Dialect {
        Dialect::S5
    }

    fn modal_holds(&self, w: usize, modal: &Formula, inner: &dyn Fn(usize) -> bool) -> bool {
        let mut succ = self.successors[w].iter();
        match modal {
            Formula::Diamond(_) => succ.any(inner),
            _ => succ.all(inner),
        }
    }

    fn modal_set(&self, modal: &Formula, inner: WorldSet) -> WorldSet {
        (0..self.worlds)
            .filter(|&w| {
                let succ = self.successors[w];
                match modal {
                    Formula::Diamond(_) => !succ.intersection(inner).is_empty(),
                    _ => succ.is_subset(inner),
                }
            })
            .collect()
    }
}

/// `<W, P>`: `[]` and `<>` quantify over all worlds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniversalModel {
    worlds: usize,
    valuation: Valuation,
}

impl UniversalModel {
    pub fn new(worlds: usize, valuation: Valuation) -> Result<UniversalModel, ModelError> {
        check_worlds(worlds)?;
        check_sets(worlds, valuation.values())?;
        Ok(UniversalModel { worlds, valuation })
    }

    /// The same model read as a Kripke model with `R = W × W`.
    pub fn to_kripke(&self) -> KripkeModel {
        let all = WorldSet::full(self.worlds);
        KripkeModel::from_successors(vec![all; self.worlds], self.valuation.clone())
    }
}

impl Model for UniversalModel {
    fn world_count(&self) -> usize {
        self.worlds
    }

    fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    fn dialect(&self) -> Dialect {
        Dialect::S5
    }

    fn modal_holds(&self, _w: usize, modal: &Formula, inner: &dyn Fn(usize) -> bool) -> bool {
        let mut all = 0..self.worlds;
        match modal {
            Formula::Diamond(_) => all.any(inner),
            _ => all.all(inner),
        }
    }

    fn modal_set(&self, modal: &Formula, inner: WorldSet) -> WorldSet {
        let full = WorldSet::full(self.worlds);
        let holds = match modal {
            Formula::Diamond(_) => !inner.is_empty(),
            _ => inner == full,
        };
        if holds {
            full
        } else {
            WorldSet::EMPTY
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{km_eval, relation_properties, um_eval, EvalError};

    fn f(text: &str) -> Formula {
        text.parse().unwrap()
    }

    fn v0(ws: &[usize]) -> Valuation {
        Valuation::from([(0, ws.iter().copied().collect())])
    }

    #[test]
    fn kripke_examples() {
        let empty = KripkeModel::new(1, [], Valuation::new()).unwrap();
        assert!(km_eval(&empty, 0, &f("[]false")).unwrap());
        assert!(!km_eval(&empty, 0, &f("<>true")).unwrap());

        let loop_ = KripkeModel::new(1, [(0, 0)], v0(&[0])).unwrap();
        assert!(km_eval(&loop_, 0, &f("<>p0")).unwrap());

        let full = KripkeModel::universal(2, v0(&[0])).unwrap();
        assert!(!km_eval(&full, 0, &f("[]p0")).unwrap());
        assert!(km_eval(&full, 1, &f("<>p0")).unwrap());
    }

    #[test]
    fn kripke_rejects_nabla_and_bad_worlds() {
        let m = KripkeModel::new(1, [(0, 0)], Valuation::new()).unwrap();
        assert!(matches!(km_eval(&m, 0, &f("nabla p0")), Err(EvalError::Dialect { .. })));
        assert!(matches!(
            km_eval(&m, 1, &f("p0")),
            Err(EvalError::WorldOutOfRange { .. })
        ));
        assert!(KripkeModel::new(2, [(0, 2)], Valuation::new()).is_err());
    }

    #[test]
    fn universal_examples() {
        let m = UniversalModel::new(2, v0(&[0])).unwrap();
        for w in 0..2 {
            assert!(um_eval(&m, w, &f("[]true")).unwrap());
            assert!(um_eval(&m, w, &f("[]p0 -> p0")).unwrap());
        }
        assert!(um_eval(&m, 1, &f("<>p0")).unwrap());
        assert!(!um_eval(&m, 0, &f("[]p0")).unwrap());
    }

    #[test]
    fn relation_property_examples() {
        let full = KripkeModel::universal(2, Valuation::new()).unwrap();
        let props = relation_properties(&full);
        assert!(props.reflexive && props.euclidean && props.symmetric && props.transitive);
        assert!(props.equivalence);

        let partial = KripkeModel::new(2, [(0, 0)], Valuation::new()).unwrap();
        assert!(!relation_properties(&partial).reflexive);

        // (0,1),(0,1) demands (1,1)
        let arrow = KripkeModel::new(2, [(0, 1)], Valuation::new()).unwrap();
        let props = relation_properties(&arrow);
        assert!(!props.euclidean);
        assert!(props.transitive);
        assert!(!props.equivalence);
    }

    #[test]
    fn euclidean_without_reflexive_is_not_equivalence() {
        // 0 -> 1, 1 -> 1 is euclidean and transitive but not reflexive
        let m = KripkeModel::new(2, [(0, 1), (1, 1)], Valuation::new()).unwrap();
        let props = m.relation_properties();
        assert!(props.euclidean && !props.reflexive && !props.equivalence);
    }

    #[test]
    fn pairs_are_sorted() {
        let m = KripkeModel::new(2, [(1, 0), (0, 1), (0, 0)], Valuation::new()).unwrap();
        assert_eq!(m.pairs(), vec![(0, 0), (0, 1), (1, 0)]);
    }
}
