//! Candidate measures that violate some requirement, so the checks can be
//! seen to fail.

use crate::evidence::MassFunction;

/// Always zero. Fails both normalizations and minimality.
pub fn constant_zero(_: &MassFunction) -> f64 {
    0.0
}

/// `log₂ Σ_A m(A)·|A|`: log of the expected focal size. Satisfies the
/// nonspecificity normalization but is 0 on every Bayesian mass function.
pub fn nonspecificity_only(m: &MassFunction) -> f64 {
    m.focal()
        .map(|(s, mass)| mass * s.len() as f64)
        .sum::<f64>()
        .log2()
}

/// Jumps by 10 bits whenever some focal element holds at least half the mass.
pub fn step(m: &MassFunction) -> f64 {
    if m.focal().any(|(_, mass)| mass >= 0.5) {
        10.0
    } else {
        0.0
    }
}
