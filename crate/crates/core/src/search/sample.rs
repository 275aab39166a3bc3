//! Seeded random models, for breadth beyond the exhaustive caps.

use rand::Rng;

use super::frames::{materialize, upset, Frame};
use super::ModelClass;
use crate::semantics::{ModelFile, WorldSet};

/// A random frame of `class` with `n` worlds.
pub(crate) fn random_frame(class: ModelClass, n: usize, rng: &mut impl Rng) -> Frame {
    let row = WorldSet::full(n).bits();
    match class {
        ModelClass::RawNeighborhood => {
            let subsets = 1u32 << n;
            let mask = if subsets == 64 { u64::MAX } else { (1u64 << subsets) - 1 };
            Frame::Neighborhood((0..n).map(|_| rng.gen::<u64>() & mask).collect())
        }
        ModelClass::ConstrainedNeighborhood => Frame::Neighborhood(
            (0..n)
                .map(|w| {
                    let core = WorldSet::from_bits(rng.gen::<u64>() & row | 1 << w);
                    upset(core, n)
                })
                .collect(),
        ),
        ModelClass::KripkeAll => Frame::Kripke((0..n).map(|_| WorldSet::from_bits(rng.gen::<u64>() & row)).collect()),
        ModelClass::KripkeEquivalence => {
            // a random block label per world; worlds sharing a label see each other
            let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            Frame::Kripke(
                labels
                    .iter()
                    .map(|&l| (0..n).filter(|&b| labels[b] == l).collect())
                    .collect(),
            )
        }
        ModelClass::Universal => Frame::Universal(n),
    }
}

pub(crate) fn random_valuation(n: usize, atoms: usize, rng: &mut impl Rng) -> Vec<WorldSet> {
    let row = WorldSet::full(n).bits();
    (0..atoms)
        .map(|_| WorldSet::from_bits(rng.gen::<u64>() & row))
        .collect()
}

/// A random model of `class` with between 1 and `max_worlds` worlds and a
/// valuation over `atoms`. `max_worlds` must be within the class sampling cap.
pub fn random_model(class: ModelClass, max_worlds: usize, atoms: &[u32], rng: &mut impl Rng) -> ModelFile {
    assert!(
        (1..=class.sampling_cap()).contains(&max_worlds),
        "{max_worlds} worlds is outside the sampling range of {class}"
    );
    let n = rng.gen_range(1..=max_worlds);
    let frame = random_frame(class, n, rng);
    let vals = random_valuation(n, atoms.len(), rng);
    materialize(&frame, atoms, &vals)
}
