//! The credal set of a belief function: every distribution `p` with
//! `Bel(A) ≤ Σ_{x∈A} p_x` for all `A`.
//!
//! Membership is decided two ways: directly over all `2^N` subsets
//! ([`is_consistent`]) and constructively, by finding an allocation of every
//! focal mass among the focal set's elements ([`build_allocation`]).

mod flow;

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};
use crate::evidence::{BeliefFunction, MassFunction, ProbabilityVector, MASS_TOL};
use crate::frame::{Frame, SubsetMask};
use crate::lattice;

pub use flow::FlowNetwork;

/// Slack allowed on dominance constraints.
pub const CONS_TOL: f64 = 1e-9;

/// Outcome of the dominance check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Consistency {
    pub consistent: bool,
    /// Subset with the smallest `P(A) - Bel(A)`; the first in bitmask order on ties.
    pub worst_subset: SubsetMask,
    /// `P(worst) - Bel(worst)`; negative when dominance fails there.
    pub slack: f64,
}

/// Checks `Bel(A) ≤ P(A) + CONS_TOL` over every subset.
pub fn is_consistent(p: &ProbabilityVector, bel: &BeliefFunction) -> Result<Consistency> {
    if p.frame() != bel.frame() {
        return Err(Error::FrameMismatch);
    }
    let sums = lattice::subset_sums(p.values());
    let mut worst = (0usize, 0.0f64);
    for (a, (&pa, &ba)) in sums.iter().zip(bel.values()).enumerate() {
        let slack = pa - ba;
        if slack < worst.1 {
            worst = (a, slack);
        }
    }
    Ok(Consistency {
        consistent: worst.1 >= -CONS_TOL,
        worst_subset: SubsetMask::from_bits(worst.0 as u32),
        slack: worst.1,
    })
}

/// A split of every focal mass among the focal set's elements: `α_A^x ≥ 0`
/// for `x ∈ A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Allocation {
    frame: Frame,
    entries: BTreeMap<(SubsetMask, usize), f64>,
}

impl Allocation {
    pub fn new<I>(frame: &Frame, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((SubsetMask, usize), f64)>,
    {
        let mut map = BTreeMap::new();
        let mut total = 0.0;
        for ((set, x), alpha) in entries {
            frame.check_mask(set)?;
            if !set.contains(x) {
                return Err(Error::InvalidAllocation(format!(
                    "element {x} is not in {}",
                    frame.display_subset(set)
                )));
            }
            if !(alpha.is_finite() && alpha >= 0.0) {
                return Err(Error::InvalidAllocation(format!("negative share {alpha}")));
            }
            total += alpha;
            *map.entry((set, x)).or_insert(0.0) += alpha;
        }
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidAllocation(format!("shares sum to {total}")));
        }
        Ok(Allocation {
            frame: frame.clone(),
            entries: map,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// `α_A^x`; zero when absent.
    pub fn share(&self, set: SubsetMask, element: usize) -> f64 {
        self.entries.get(&(set, element)).copied().unwrap_or(0.0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (SubsetMask, usize, f64)> + '_ {
        self.entries.iter().map(|(&(s, x), &a)| (s, x, a))
    }
}

/// Result of [`build_allocation`].
#[derive(Debug, Clone, PartialEq)]
pub enum AllocationOutcome {
    Feasible(Allocation),
    /// No allocation exists; `deficit = 1 − max flow = max_A (Bel(A) − P(A))`.
    Infeasible {
        deficit: f64,
    },
}

impl AllocationOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, AllocationOutcome::Feasible(_))
    }
}

/// Finds `α` with `Σ_{A∋x} α_A^x = p_x` and `Σ_{x∈A} α_A^x = m(A)` as a
/// maximum flow on `source → A → x → sink`.
///
/// The flow value falls short of 1 by exactly the worst dominance violation,
/// so feasibility (deficit ≤ [`CONS_TOL`]) agrees with [`is_consistent`].
pub fn build_allocation(m: &MassFunction, p: &ProbabilityVector) -> Result<AllocationOutcome> {
    if m.frame() != p.frame() {
        return Err(Error::FrameMismatch);
    }
    let n = p.frame().len();
    let focal: Vec<(SubsetMask, f64)> = m.focal().collect();
    let source = 0;
    let sink = 1;
    let set_node = |k: usize| 2 + k;
    let element_node = |x: usize| 2 + focal.len() + x;

    let mut network = FlowNetwork::new(2 + focal.len() + n);
    for (k, &(_, mass)) in focal.iter().enumerate() {
        network.add_edge(source, set_node(k), mass);
    }
    let mut share_edges = Vec::new();
    for (k, &(set, _)) in focal.iter().enumerate() {
        for x in set.indices() {
            let e = network.add_edge(set_node(k), element_node(x), f64::INFINITY);
            share_edges.push(((set, x), e));
        }
    }
    for (x, &px) in p.values().iter().enumerate() {
        network.add_edge(element_node(x), sink, px);
    }

    let value = network.max_flow(source, sink);
    let deficit = (1.0 - value).max(0.0);
    if deficit > CONS_TOL {
        return Ok(AllocationOutcome::Infeasible { deficit });
    }
    let entries: Vec<_> = share_edges
        .into_iter()
        .map(|(key, e)| (key, network.flow(e).max(0.0)))
        .filter(|&(_, alpha)| alpha > 0.0)
        .collect();
    let total: f64 = entries.iter().map(|(_, a)| a).sum();
    // Close the (≤ CONS_TOL) gap so the shares sum to exactly one.
    let entries = entries.into_iter().map(|(k, a)| (k, a / total));
    Ok(AllocationOutcome::Feasible(Allocation::new(
        p.frame(),
        entries,
    )?))
}

/// The two marginals of an allocation: `p_x = Σ_{A∋x} α_A^x` and
/// `m(A) = Σ_{x∈A} α_A^x`.
pub fn allocation_marginals(allocation: &Allocation) -> (ProbabilityVector, MassFunction) {
    let frame = allocation.frame();
    let mut p = vec![0.0; frame.len()];
    let mut masses: BTreeMap<SubsetMask, f64> = BTreeMap::new();
    for (set, x, alpha) in allocation.entries() {
        p[x] += alpha;
        *masses.entry(set).or_insert(0.0) += alpha;
    }
    let p = ProbabilityVector::new(frame, p).expect("allocation shares sum to one");
    let m = MassFunction::from_sums(frame, masses).expect("allocation shares sum to one");
    (p, m)
}

/// Splits every focal mass by flat-Dirichlet weights over its elements.
pub fn sample_allocation<R: Rng + ?Sized>(m: &MassFunction, rng: &mut R) -> Allocation {
    let mut entries = Vec::new();
    for (set, mass) in m.focal() {
        let weights: Vec<f64> = set.indices().map(|_| Exp1.sample(rng)).collect();
        let total: f64 = weights.iter().sum();
        for (x, w) in set.indices().zip(weights) {
            let share = if total > 0.0 {
                mass * w / total
            } else {
                mass / set.len() as f64
            };
            entries.push(((set, x), share));
        }
    }
    Allocation::new(m.frame(), entries).expect("shares of a valid mass function")
}

/// `count` distributions from the credal set of `m`, deterministic in `seed`.
pub fn sample_consistent(m: &MassFunction, seed: u64, count: usize) -> Vec<ProbabilityVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| allocation_marginals(&sample_allocation(m, &mut rng)).0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evidence::{belief_from_mass, vacuous};

    fn ab() -> Frame {
        Frame::new(["a", "b"]).unwrap()
    }

    fn r1_example() -> MassFunction {
        MassFunction::from_labels(&ab(), &[(&["a"], 0.2), (&["b"], 0.5), (&["a", "b"], 0.3)])
            .unwrap()
    }

    fn pv(values: Vec<f64>) -> ProbabilityVector {
        ProbabilityVector::new(&ab(), values).unwrap()
    }

    #[test]
    fn consistency_examples() {
        let f = ab();
        let vac = belief_from_mass(&vacuous(&f, f.full()).unwrap());
        for p in [vec![1.0, 0.0], vec![0.3, 0.7], vec![0.0, 1.0]] {
            assert!(is_consistent(&pv(p), &vac).unwrap().consistent);
        }

        let point = belief_from_mass(&vacuous(&f, SubsetMask::singleton(0)).unwrap());
        let c = is_consistent(&pv(vec![0.5, 0.5]), &point).unwrap();
        assert!(!c.consistent);
        assert_eq!(c.worst_subset, SubsetMask::singleton(0));
        assert!((c.slack + 0.5).abs() < 1e-12);

        let r1 = belief_from_mass(&r1_example());
        assert!(is_consistent(&pv(vec![0.5, 0.5]), &r1).unwrap().consistent);
        assert!(!is_consistent(&pv(vec![0.1, 0.9]), &r1).unwrap().consistent);
    }

    #[test]
    fn single_focal_forces_the_split() {
        let f = ab();
        let m = vacuous(&f, f.full()).unwrap();
        match build_allocation(&m, &pv(vec![0.3, 0.7])).unwrap() {
            AllocationOutcome::Feasible(alloc) => {
                assert!((alloc.share(f.full(), 0) - 0.3).abs() < 1e-12);
                assert!((alloc.share(f.full(), 1) - 0.7).abs() < 1e-12);
                let (p, back) = allocation_marginals(&alloc);
                assert!((p.get(0) - 0.3).abs() < 1e-12);
                assert_eq!(back.focal().count(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_when_dominance_fails() {
        let f = ab();
        let m = vacuous(&f, SubsetMask::singleton(0)).unwrap();
        match build_allocation(&m, &pv(vec![0.5, 0.5])).unwrap() {
            AllocationOutcome::Infeasible { deficit } => assert!((deficit - 0.5).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn r1_example_allocation() {
        let m = r1_example();
        let p = pv(vec![0.5, 0.5]);
        let AllocationOutcome::Feasible(alloc) = build_allocation(&m, &p).unwrap() else {
            panic!("expected a feasible allocation");
        };
        let (p_back, m_back) = allocation_marginals(&alloc);
        assert!((p_back.get(0) - 0.5).abs() < MASS_TOL);
        assert!(m_back.max_difference(&m).unwrap() < MASS_TOL);

        // The hand-built allocation has the same marginals.
        let hand = Allocation::new(
            &ab(),
            [
                ((SubsetMask::from_bits(1), 0), 0.2),
                ((SubsetMask::from_bits(2), 1), 0.5),
                ((SubsetMask::from_bits(3), 0), 0.3),
            ],
        )
        .unwrap();
        let (hp, hm) = allocation_marginals(&hand);
        assert_eq!(hp.values(), &[0.5, 0.5]);
        assert!(hm.max_difference(&m).unwrap() < 1e-15);
    }

    #[test]
    fn frame_one_allocation() {
        let f = Frame::new(["x"]).unwrap();
        let alloc = Allocation::new(&f, [((f.full(), 0), 1.0)]).unwrap();
        let (p, m) = allocation_marginals(&alloc);
        assert_eq!(p.values(), &[1.0]);
        assert_eq!(m.mass(f.full()), 1.0);
    }

    #[test]
    fn allocation_validation() {
        let f = ab();
        assert!(Allocation::new(&f, [((SubsetMask::from_bits(1), 1), 1.0)]).is_err());
        assert!(Allocation::new(&f, [((SubsetMask::from_bits(3), 1), -0.1)]).is_err());
        assert!(Allocation::new(&f, [((SubsetMask::from_bits(3), 1), 0.5)]).is_err());
    }

    #[test]
    fn samples_without_freedom_are_fixed() {
        let f = ab();
        let m = vacuous(&f, SubsetMask::singleton(0)).unwrap();
        for p in sample_consistent(&m, 3, 20) {
            assert_eq!(p.values(), &[1.0, 0.0]);
        }
    }

    #[test]
    fn samples_cover_the_simplex_for_vacuous() {
        let f = ab();
        let m = vacuous(&f, f.full()).unwrap();
        let samples = sample_consistent(&m, 11, 500);
        let low = samples.iter().filter(|p| p.get(0) < 0.1).count();
        let high = samples.iter().filter(|p| p.get(0) > 0.9).count();
        assert!(low > 10 && high > 10);
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let m = r1_example();
        assert_eq!(sample_consistent(&m, 5, 10), sample_consistent(&m, 5, 10));
        assert_ne!(sample_consistent(&m, 5, 10), sample_consistent(&m, 6, 10));
    }

    #[test]
    fn every_sample_is_consistent() {
        let m = r1_example();
        let bel = belief_from_mass(&m);
        for p in sample_consistent(&m, 1, 1000) {
            assert!(is_consistent(&p, &bel).unwrap().consistent);
        }
    }
}
