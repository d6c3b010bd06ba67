//! The AU measure: the largest Shannon entropy over the credal set of a
//! belief function.
//!
//! [`au`] computes it exactly with a greedy decomposition of the frame. At each
//! step, over the remaining elements `W` and the already-assigned elements
//! `R`, it picks the non-empty `A ⊆ W` maximizing
//! `(Bel(A ∪ R) − Bel(R)) / |A|`, assigns that ratio as the probability of
//! every element of `A`, and moves `A` into `R`. Ratios tied within
//! [`TIE_TOL`] resolve to the largest `|A|`, then to the smallest bitmask.
//!
//! [`oracle::au_oracle`] recomputes the same maximum by direct search and
//! shares no code with the greedy path.

pub mod oracle;

use crate::evidence::{belief_from_mass, entropy_bits, MassFunction, ProbabilityVector};
use crate::frame::SubsetMask;
use crate::lattice::Submasks;

pub use oracle::{au_oracle, AscentParams, GridParams, OracleMode};

/// Tolerance for comparisons on the exact (greedy) path.
pub const AU_TOL: f64 = 1e-9;

/// Tolerance for comparisons against the ascent oracle at convergence.
pub const AU_ASCENT_TOL: f64 = 1e-6;

/// Ratios closer than this are considered tied.
pub const TIE_TOL: f64 = 1e-12;

/// Frames above this size are slow for the exact algorithm.
pub const WARN_FRAME_SIZE: usize = 16;

/// One round of the greedy decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreedyStep {
    pub set: SubsetMask,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuResult {
    /// AU in bits.
    pub value: f64,
    /// The maximum-entropy distribution in the credal set.
    pub argmax: ProbabilityVector,
    /// Selected sets and their ratios, in selection order.
    pub steps: Vec<GreedyStep>,
}

impl AuResult {
    /// Largest increase between consecutive ratios; the sequence is
    /// non-increasing in exact arithmetic, so this should be ≤ 0 up to noise.
    pub fn max_ratio_increase(&self) -> f64 {
        self.steps
            .windows(2)
            .map(|w| w[1].ratio - w[0].ratio)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn au(m: &MassFunction) -> AuResult {
    let frame = m.frame();
    let bel = belief_from_mass(m);
    let table = bel.values();
    let mut p = vec![0.0; frame.len()];
    let mut remaining = frame.full().bits();
    let mut assigned = 0u32;
    let mut steps = Vec::new();

    while remaining != 0 {
        let base = table[assigned as usize];
        let mut best_set = 0u32;
        let mut best_ratio = f64::NEG_INFINITY;
        let mut best_len = 0u32;
        for set in Submasks::new(remaining) {
            let len = set.count_ones();
            let ratio = (table[(set | assigned) as usize] - base) / len as f64;
            let better =
                ratio > best_ratio + TIE_TOL || (ratio >= best_ratio - TIE_TOL && len > best_len);
            if better {
                best_set = set;
                best_ratio = ratio;
                best_len = len;
            }
        }
        // Noise can push a zero ratio slightly negative.
        let ratio = best_ratio.max(0.0);
        for x in SubsetMask::from_bits(best_set).indices() {
            p[x] = ratio;
        }
        steps.push(GreedyStep {
            set: SubsetMask::from_bits(best_set),
            ratio,
        });
        assigned |= best_set;
        remaining &= !best_set;
    }

    let argmax = ProbabilityVector::new(frame, p).expect("greedy ratios partition Bel(X) = 1");
    AuResult {
        value: entropy_bits(argmax.values()),
        argmax,
        steps,
    }
}

/// `AU(m)` alone.
pub fn au_value(m: &MassFunction) -> f64 {
    au(m).value
}
