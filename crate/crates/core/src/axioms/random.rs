//! Seeded generators for randomized axiom checks.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::evidence::{MassFunction, ProbabilityVector};
use crate::frame::{Frame, SubsetMask};

/// Recorded in every report so witnesses can be regenerated.
pub const GENERATOR_VERSION: &str = "bpa-gen/1";

/// Upper bound on the number of focal elements of a random mass function.
pub const MAX_RANDOM_FOCAL: usize = 8;

/// Point drawn uniformly from the `k − 1`-simplex.
pub fn flat_simplex<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let draws: Vec<f64> = (0..k).map(|_| Exp1.sample(rng)).collect();
        let total: f64 = draws.iter().sum();
        if total > 0.0 && draws.iter().all(|&d| d > 0.0) {
            return draws.into_iter().map(|d| d / total).collect();
        }
    }
}

/// Non-empty subset of `within`, uniform among its `2^|within| − 1` choices.
pub fn random_nonempty_subset<R: Rng + ?Sized>(within: SubsetMask, rng: &mut R) -> SubsetMask {
    debug_assert!(!within.is_empty());
    let members: Vec<usize> = within.indices().collect();
    loop {
        let pick: u32 = rng.random_range(1..(1u64 << members.len())) as u32;
        let subset = SubsetMask::from_indices(
            members
                .iter()
                .enumerate()
                .filter(|(j, _)| pick >> j & 1 == 1)
                .map(|(_, &x)| x),
        );
        if !subset.is_empty() {
            return subset;
        }
    }
}

/// Focal count uniform in `[1, min(2^N − 1, 8)]`, distinct non-empty focal
/// sets chosen uniformly, masses from a flat simplex draw.
pub fn random_mass<R: Rng + ?Sized>(frame: &Frame, rng: &mut R) -> MassFunction {
    let subsets = (1u64 << frame.len()) - 1;
    let k = rng.random_range(1..=subsets.min(MAX_RANDOM_FOCAL as u64)) as usize;
    let mut sets: Vec<SubsetMask> = Vec::with_capacity(k);
    while sets.len() < k {
        let s = random_nonempty_subset(frame.full(), rng);
        if !sets.contains(&s) {
            sets.push(s);
        }
    }
    let masses = flat_simplex(k, rng);
    MassFunction::new(frame, sets.into_iter().zip(masses)).expect("positive masses summing to one")
}

pub fn random_probability<R: Rng + ?Sized>(frame: &Frame, rng: &mut R) -> ProbabilityVector {
    ProbabilityVector::new(frame, flat_simplex(frame.len(), rng)).expect("simplex point")
}

pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// `(A, B, α)` for a mass transfer: `A` focal, `B` a random strict superset,
/// `α` uniform in `[0, 1]`. `None` when every focal set is the whole frame.
pub fn random_transfer<R: Rng + ?Sized>(
    m: &MassFunction,
    rng: &mut R,
) -> Option<(SubsetMask, SubsetMask, f64)> {
    let full = m.frame().full();
    let sources: Vec<SubsetMask> = m.focal().map(|(s, _)| s).filter(|&s| s != full).collect();
    let &from = sources.choose(rng)?;
    let to = from | random_nonempty_subset(full & !from, rng);
    Some((from, to, rng.random::<f64>()))
}

/// `(I, J)` for a continuity path: `I` focal, `J` non-empty and different.
/// `None` on a one-element frame.
pub fn random_path<R: Rng + ?Sized>(
    m: &MassFunction,
    rng: &mut R,
) -> Option<(SubsetMask, SubsetMask)> {
    if m.frame().len() < 2 {
        return None;
    }
    let sources: Vec<SubsetMask> = m.focal().map(|(s, _)| s).collect();
    let &from = sources.choose(rng)?;
    loop {
        let to = random_nonempty_subset(m.frame().full(), rng);
        if to != from {
            return Some((from, to));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_masses_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=6 {
            let f = Frame::numbered(n).unwrap();
            for _ in 0..200 {
                let m = random_mass(&f, &mut rng);
                assert!(m.focal_count() >= 1);
                assert!(m.focal_count() <= ((1usize << n) - 1).min(MAX_RANDOM_FOCAL));
                assert!((m.total() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn transfers_pick_strict_supersets() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = Frame::numbered(4).unwrap();
        for _ in 0..200 {
            let m = random_mass(&f, &mut rng);
            if let Some((a, b, alpha)) = random_transfer(&m, &mut rng) {
                assert!(m.is_focal(a));
                assert!(a.is_strict_subset_of(b));
                assert!((0.0..=1.0).contains(&alpha));
            } else {
                assert!(m.focal().all(|(s, _)| s == f.full()));
            }
        }
    }

    #[test]
    fn subsets_stay_within() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let within = SubsetMask::from_bits(0b10110);
        for _ in 0..100 {
            let s = random_nonempty_subset(within, &mut rng);
            assert!(!s.is_empty() && s.is_subset_of(within));
        }
    }
}
