//! Frames of each model class, a compiled bitmask evaluator, and conversion
//! back to the model types of the semantics module.

use std::collections::BTreeSet;

use super::ModelClass;
use crate::formula::Formula;
use crate::semantics::{KripkeModel, ModelFile, NeighborhoodModel, UniversalModel, Valuation, WorldSet};

/// The valuation-free part of a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Frame {
    /// Per world, a bitmask over subsets of `W`: bit `x` is set iff the set
    /// with mask `x` is a neighborhood. Needs `2^n <= 64`.
    Neighborhood(Vec<u64>),
    Kripke(Vec<WorldSet>),
    Universal(usize),
}

impl Frame {
    pub(crate) fn worlds(&self) -> usize {
        match self {
            Frame::Neighborhood(f) => f.len(),
            Frame::Kripke(s) => s.len(),
            Frame::Universal(n) => *n,
        }
    }
}

/// Family bitmask of all supersets of `core` among subsets of `n` worlds.
pub(crate) fn upset(core: WorldSet, n: usize) -> u64 {
    core.supersets(n).fold(0u64, |acc, x| acc | 1 << x.bits())
}

/// Per-world choices, each list in ascending order.
fn neighborhood_choices(class: ModelClass, n: usize) -> Vec<Vec<u64>> {
    let subsets = 1u64 << n;
    (0..n)
        .map(|w| match class {
            ModelClass::RawNeighborhood => {
                let families = 1u128 << subsets;
                (0..families).map(|f| f as u64).collect()
            }
            ModelClass::ConstrainedNeighborhood => {
                let mut fams: Vec<u64> = (0..subsets)
                    .map(WorldSet::from_bits)
                    .filter(|x| x.contains(w))
                    .map(|x| upset(x, n))
                    .collect();
                fams.sort_unstable();
                fams
            }
            _ => unreachable!("not a neighborhood class"),
        })
        .collect()
}

/// Mixed-radix product of per-world choices, world 0 most significant.
fn product(choices: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for options in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&c| {
                    let mut next = prefix.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    out
}

fn successors_of(relation: u64, n: usize) -> Vec<WorldSet> {
    let row = WorldSet::full(n).bits();
    (0..n)
        .map(|a| WorldSet::from_bits((relation >> (a * n)) & row))
        .collect()
}

pub(crate) fn is_equivalence(succ: &[WorldSet]) -> bool {
    succ.iter()
        .enumerate()
        .all(|(a, &s)| s.contains(a) && s.iter().all(|b| s.is_subset(succ[b])))
}

/// Every frame of `class` with exactly `n` worlds, in enumeration order.
///
/// Neighborhood frames are ordered by their per-world family bitmasks;
/// Kripke frames by the relation bitmask with pair `(a, b)` at bit `a*n + b`.
pub(crate) fn frames(class: ModelClass, n: usize) -> Vec<Frame> {
    match class {
        ModelClass::RawNeighborhood | ModelClass::ConstrainedNeighborhood => product(&neighborhood_choices(class, n))
            .into_iter()
            .map(Frame::Neighborhood)
            .collect(),
        ModelClass::KripkeAll | ModelClass::KripkeEquivalence => {
            let relations = 1u64 << (n * n);
            (0..relations)
                .map(|r| successors_of(r, n))
                .filter(|s| class == ModelClass::KripkeAll || is_equivalence(s))
                .map(Frame::Kripke)
                .collect()
        }
        ModelClass::Universal => vec![Frame::Universal(n)],
    }
}

#[derive(Debug, Clone, Copy)]
enum Op {
    /// Position in the valuation slice, or `None` for an atom outside it.
    Atom(Option<usize>),
    Top,
    Bottom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Box,
    Diamond,
}

/// A formula in postfix form with atoms resolved to valuation positions.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    ops: Vec<Op>,
}

impl Compiled {
    /// Compiles a formula without `nabla`.
    pub(crate) fn new(f: &Formula, atoms: &[u32]) -> Compiled {
        let mut ops = Vec::new();
        compile(f, atoms, &mut ops);
        Compiled { ops }
    }

    /// Truth set of the formula in `frame` under `vals` (one set per atom).
    pub(crate) fn eval(&self, frame: &Frame, vals: &[WorldSet], stack: &mut Vec<u64>) -> WorldSet {
        let n = frame.worlds();
        let full = WorldSet::full(n).bits();
        stack.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Atom(p) => p.map_or(0, |k| vals[k].bits()),
                Op::Top => full,
                Op::Bottom => 0,
                Op::Not => !stack.pop().unwrap() & full,
                Op::Box | Op::Diamond => {
                    let x = stack.pop().unwrap();
                    modal(frame, matches!(op, Op::Box), x)
                }
                binary => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    match binary {
                        Op::And => a & b,
                        Op::Or => a | b,
                        Op::Implies => (!a | b) & full,
                        Op::Iff => !(a ^ b) & full,
                        _ => unreachable!(),
                    }
                }
            };
            stack.push(v);
        }
        WorldSet::from_bits(stack.pop().unwrap())
    }
}

fn modal(frame: &Frame, is_box: bool, x: u64) -> u64 {
    let mut out = 0u64;
    match frame {
        Frame::Neighborhood(fams) => {
            debug_assert!(is_box);
            for (w, fam) in fams.iter().enumerate() {
                if fam >> x & 1 == 1 {
                    out |= 1 << w;
                }
            }
        }
        Frame::Kripke(succ) => {
            for (w, s) in succ.iter().enumerate() {
                let hit = if is_box { s.bits() & !x == 0 } else { s.bits() & x != 0 };
                if hit {
                    out |= 1 << w;
                }
            }
        }
        Frame::Universal(n) => {
            let full = WorldSet::full(*n).bits();
            let hit = if is_box { x == full } else { x != 0 };
            if hit {
                out = full;
            }
        }
    }
    out
}

fn compile(f: &Formula, atoms: &[u32], ops: &mut Vec<Op>) {
    use Formula as F;
    match f {
        F::Atom(i) => ops.push(Op::Atom(atoms.iter().position(|a| a == i))),
        F::Top => ops.push(Op::Top),
        F::Bottom => ops.push(Op::Bottom),
        F::Not(a) | F::Box(a) | F::Diamond(a) => {
            compile(a, atoms, ops);
            ops.push(match f {
                F::Not(_) => Op::Not,
                F::Box(_) => Op::Box,
                _ => Op::Diamond,
            });
        }
        F::Nabla(_) => unreachable!("search formulas are nabla-free"),
        F::And(a, b) | F::Or(a, b) | F::Implies(a, b) | F::Iff(a, b) => {
            compile(a, atoms, ops);
            compile(b, atoms, ops);
            ops.push(match f {
                F::And(..) => Op::And,
                F::Or(..) => Op::Or,
                F::Implies(..) => Op::Implies,
                _ => Op::Iff,
            });
        }
    }
}

/// The `index`-th valuation over `n` worlds: the first atom occupies the
/// most significant bits.
pub(crate) fn valuation_at(index: u64, n: usize, atoms: usize, out: &mut Vec<WorldSet>) {
    out.clear();
    let mask = WorldSet::full(n).bits();
    for k in 0..atoms {
        let shift = n * (atoms - 1 - k);
        out.push(WorldSet::from_bits((index >> shift) & mask));
    }
}

pub(crate) fn materialize(frame: &Frame, atoms: &[u32], vals: &[WorldSet]) -> ModelFile {
    let valuation: Valuation = atoms.iter().copied().zip(vals.iter().copied()).collect();
    let n = frame.worlds();
    match frame {
        Frame::Neighborhood(fams) => {
            let families = fams
                .iter()
                .map(|&fam| {
                    (0..64u64)
                        .filter(|x| fam >> x & 1 == 1)
                        .map(WorldSet::from_bits)
                        .collect::<BTreeSet<_>>()
                })
                .collect();
            NeighborhoodModel::new_unchecked(n, families, valuation).into()
        }
        Frame::Kripke(succ) => KripkeModel::from_successors(succ.clone(), valuation).into(),
        Frame::Universal(_) => UniversalModel::new(n, valuation)
            .expect("frame sizes are within range")
            .into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::Model;

    #[test]
    fn frame_counts() {
        assert_eq!(frames(ModelClass::RawNeighborhood, 1).len(), 4);
        assert_eq!(frames(ModelClass::RawNeighborhood, 2).len(), 256);
        assert_eq!(frames(ModelClass::ConstrainedNeighborhood, 1).len(), 1);
        assert_eq!(frames(ModelClass::ConstrainedNeighborhood, 2).len(), 4);
        assert_eq!(frames(ModelClass::ConstrainedNeighborhood, 3).len(), 64);
        assert_eq!(frames(ModelClass::KripkeAll, 2).len(), 16);
        // equivalence relations are counted by the Bell numbers
        let bell = [1, 2, 5, 15];
        for (n, b) in (1..=4).zip(bell) {
            assert_eq!(frames(ModelClass::KripkeEquivalence, n).len(), b);
        }
    }

    #[test]
    fn constrained_order_puts_the_full_core_first() {
        let fs = frames(ModelClass::ConstrainedNeighborhood, 2);
        // family {W} has mask 1<<3; the family of supersets of {0} has 1<<1 | 1<<3
        assert_eq!(fs[0], Frame::Neighborhood(vec![8, 8]));
        assert_eq!(fs[1], Frame::Neighborhood(vec![8, 12]));
        assert_eq!(fs[2], Frame::Neighborhood(vec![10, 8]));
    }

    #[test]
    fn compiled_evaluation_matches_the_models() {
        let atoms = [0, 1];
        let formulas = [
            "[]p0 -> p0",
            "[](p0 | ~p1) <-> ~[]p2",
            "p1 & []([]p0 -> p1)",
            "true",
            "false",
        ];
        let mut stack = Vec::new();
        let mut vals = Vec::new();
        for class in [
            ModelClass::RawNeighborhood,
            ModelClass::KripkeAll,
            ModelClass::Universal,
        ] {
            for frame in frames(class, 2) {
                for v in 0..16 {
                    valuation_at(v, 2, 2, &mut vals);
                    let m = materialize(&frame, &atoms, &vals);
                    for text in formulas {
                        let f: Formula = text.parse().unwrap();
                        let fast = Compiled::new(&f, &atoms).eval(&frame, &vals, &mut stack);
                        let slow = match &m {
                            ModelFile::Neighborhood(m) => m.truth_set(&f),
                            ModelFile::Kripke(m) => m.truth_set(&f),
                            ModelFile::Universal(m) => m.truth_set(&f),
                        };
                        assert_eq!(fast, slow.unwrap(), "{text} in {}", m.to_json());
                    }
                }
            }
        }
    }

    #[test]
    fn diamonds_in_kripke_frames() {
        let f: Formula = "<>p0 -> []<>p0".parse().unwrap();
        let c = Compiled::new(&f, &[0]);
        let mut stack = Vec::new();
        // 0 -> 1 only: <>p0 true at 0 with V(p0)={1}, but []<>p0 fails at 0
        let frame = Frame::Kripke(vec![WorldSet::singleton(1), WorldSet::EMPTY]);
        let set = c.eval(&frame, &[WorldSet::singleton(1)], &mut stack);
        assert!(!set.contains(0));
    }
}
