//! Basic probability assignments, belief functions and the transformations
//! between them.
//!
//! A [`MassFunction`] is stored sparsely (focal elements only, ordered by
//! bitmask); a [`BeliefFunction`] is a dense table over all `2^N` subsets. The
//! two are paired by the subset-lattice zeta/Möbius transforms.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::frame::{self, block_frame, Frame, Partition, ProductStructure, SubsetMask};
use crate::lattice;

/// Tolerance for validating user-supplied masses and probabilities.
pub const MASS_TOL: f64 = 1e-9;

/// Tolerance for exact-arithmetic roundtrips (Möbius, projections).
pub const ROUND_TOL: f64 = 1e-12;

/// A basic probability assignment on a frame.
///
/// Invariants: no entry for `∅`, every stored mass is positive and finite, and
/// the masses sum to 1 (within [`MASS_TOL`] on input, renormalized when the
/// deviation exceeds [`ROUND_TOL`]).
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    focal: BTreeMap<SubsetMask, f64>,
}

impl MassFunction {
    pub fn new<I>(frame: &Frame, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SubsetMask, f64)>,
    {
        let mut focal = BTreeMap::new();
        for (subset, mass) in entries {
            frame.check_mask(subset)?;
            if subset.is_empty() {
                return Err(Error::EmptyFocalSet);
            }
            if !(mass.is_finite() && mass > 0.0) {
                return Err(Error::NonPositiveMass { subset, mass });
            }
            if focal.insert(subset, mass).is_some() {
                return Err(Error::DuplicateFocalSet(subset));
            }
        }
        Self::normalized(frame, focal)
    }

    /// Builds from labelled focal sets, e.g. `[(&["a"][..], 0.2), ...]`.
    pub fn from_labels(frame: &Frame, entries: &[(&[&str], f64)]) -> Result<Self> {
        let entries = entries
            .iter()
            .map(|(set, mass)| Ok((frame.subset(set.iter().copied())?, *mass)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(frame, entries)
    }

    /// Accepts accumulated sums that may contain numerical noise: entries at
    /// or below [`MASS_TOL`] are dropped before validation.
    pub(crate) fn from_sums(frame: &Frame, sums: BTreeMap<SubsetMask, f64>) -> Result<Self> {
        let mut focal = BTreeMap::new();
        for (subset, mass) in sums {
            if subset.is_empty() || mass <= MASS_TOL {
                continue;
            }
            focal.insert(subset, mass);
        }
        Self::normalized(frame, focal)
    }

    fn normalized(frame: &Frame, mut focal: BTreeMap<SubsetMask, f64>) -> Result<Self> {
        let sum: f64 = focal.values().sum();
        if sum.is_nan() || (sum - 1.0).abs() > MASS_TOL {
            return Err(Error::MassSum { sum });
        }
        if (sum - 1.0).abs() > ROUND_TOL {
            focal.values_mut().for_each(|m| *m /= sum);
        }
        Ok(MassFunction {
            frame: frame.clone(),
            focal,
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// `m(A)`; zero for non-focal subsets.
    pub fn mass(&self, subset: SubsetMask) -> f64 {
        self.focal.get(&subset).copied().unwrap_or(0.0)
    }

    /// Focal elements with their masses, in increasing bitmask order.
    pub fn focal(&self) -> impl ExactSizeIterator<Item = (SubsetMask, f64)> + '_ {
        self.focal.iter().map(|(&s, &m)| (s, m))
    }

    pub fn focal_count(&self) -> usize {
        self.focal.len()
    }

    pub fn is_focal(&self, subset: SubsetMask) -> bool {
        self.focal.contains_key(&subset)
    }

    pub fn is_bayesian(&self) -> bool {
        self.focal.keys().all(|s| s.len() == 1)
    }

    pub fn total(&self) -> f64 {
        self.focal.values().sum()
    }

    /// Largest `|m(A) - other(A)|` over all subsets; `None` on different frames.
    pub fn max_difference(&self, other: &MassFunction) -> Option<f64> {
        if self.frame != other.frame {
            return None;
        }
        let keys = self.focal.keys().chain(other.focal.keys());
        Some(
            keys.map(|&k| (self.mass(k) - other.mass(k)).abs())
                .fold(0.0, f64::max),
        )
    }

    pub fn belief(&self) -> BeliefFunction {
        belief_from_mass(self)
    }
}

impl fmt::Display for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .focal()
            .map(|(s, m)| format!("{}: {m}", self.frame.display_subset(s)))
            .collect();
        write!(f, "m[{}]", parts.join(", "))
    }
}

/// Why a table fails to be a belief function.
#[derive(Debug, Clone, PartialEq)]
pub enum BeliefViolation {
    WrongLength {
        expected: usize,
        found: usize,
    },
    NotFinite {
        subset: SubsetMask,
    },
    EmptySet {
        value: f64,
    },
    FullSet {
        value: f64,
    },
    /// The Möbius coefficient of `subset` is negative (the most negative one is reported).
    NegativeMobius {
        subset: SubsetMask,
        coefficient: f64,
    },
}

impl fmt::Display for BeliefViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BeliefViolation::WrongLength { expected, found } => {
                write!(f, "table has {found} entries, expected {expected}")
            }
            BeliefViolation::NotFinite { subset } => write!(f, "value at {subset} is not finite"),
            BeliefViolation::EmptySet { value } => write!(f, "Bel(∅) = {value}, expected 0"),
            BeliefViolation::FullSet { value } => write!(f, "Bel(X) = {value}, expected 1"),
            BeliefViolation::NegativeMobius {
                subset,
                coefficient,
            } => write!(
                f,
                "Möbius coefficient m({subset}) = {coefficient} is negative"
            ),
        }
    }
}

/// Verdict of [`is_belief_function`].
#[derive(Debug, Clone, PartialEq)]
pub enum BeliefVerdict {
    Valid,
    Invalid(BeliefViolation),
}

impl BeliefVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, BeliefVerdict::Valid)
    }

    pub fn violation(&self) -> Option<&BeliefViolation> {
        match self {
            BeliefVerdict::Valid => None,
            BeliefVerdict::Invalid(v) => Some(v),
        }
    }
}

/// Checks boundary conditions and Möbius non-negativity of a dense table
/// indexed by subset bitmask.
pub fn is_belief_function(frame: &Frame, values: &[f64]) -> BeliefVerdict {
    let expected = frame.power_set_len();
    if values.len() != expected {
        return BeliefVerdict::Invalid(BeliefViolation::WrongLength {
            expected,
            found: values.len(),
        });
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return BeliefVerdict::Invalid(BeliefViolation::NotFinite {
            subset: SubsetMask::from_bits(i as u32),
        });
    }
    if values[0].abs() > MASS_TOL {
        return BeliefVerdict::Invalid(BeliefViolation::EmptySet { value: values[0] });
    }
    let full = values[expected - 1];
    if (full - 1.0).abs() > MASS_TOL {
        return BeliefVerdict::Invalid(BeliefViolation::FullSet { value: full });
    }
    let mut coefficients = values.to_vec();
    lattice::mobius_in_place(&mut coefficients);
    let (worst, &coefficient) = coefficients
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("table is non-empty");
    if coefficient < -MASS_TOL {
        return BeliefVerdict::Invalid(BeliefViolation::NegativeMobius {
            subset: SubsetMask::from_bits(worst as u32),
            coefficient,
        });
    }
    BeliefVerdict::Valid
}

/// A belief function as a dense table `Bel(A)` over every subset.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefFunction {
    frame: Frame,
    values: Vec<f64>,
}

impl BeliefFunction {
    pub fn from_values(frame: &Frame, values: Vec<f64>) -> Result<Self> {
        match is_belief_function(frame, &values) {
            BeliefVerdict::Valid => Ok(BeliefFunction {
                frame: frame.clone(),
                values,
            }),
            BeliefVerdict::Invalid(v) => Err(Error::NotABeliefFunction(v)),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn value(&self, subset: SubsetMask) -> f64 {
        self.values[subset.as_index()]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// `Bel(A) = Σ_{B ⊆ A} m(B)` for every subset.
pub fn belief_from_mass(m: &MassFunction) -> BeliefFunction {
    let mut values = vec![0.0; m.frame.power_set_len()];
    for (subset, mass) in m.focal() {
        values[subset.as_index()] = mass;
    }
    lattice::zeta_in_place(&mut values);
    BeliefFunction {
        frame: m.frame.clone(),
        values,
    }
}

/// Möbius inversion `m(A) = Σ_{B ⊆ A} (-1)^{|A - B|} Bel(B)`.
pub fn mass_from_belief(bel: &BeliefFunction) -> Result<MassFunction> {
    mass_from_table(&bel.frame, &bel.values)
}

/// Möbius inversion of a raw table; fails with the most negative coefficient
/// when the table is not a belief function.
pub fn mass_from_table(frame: &Frame, values: &[f64]) -> Result<MassFunction> {
    if let BeliefVerdict::Invalid(v) = is_belief_function(frame, values) {
        return Err(Error::NotABeliefFunction(v));
    }
    let mut coefficients = values.to_vec();
    lattice::mobius_in_place(&mut coefficients);
    let sums = coefficients
        .into_iter()
        .enumerate()
        .map(|(i, c)| (SubsetMask::from_bits(i as u32), c))
        .collect();
    MassFunction::from_sums(frame, sums)
}

/// `m↓Y(C) = Σ { m(B) : B↓Y = C }`, a mass function on the block frame of `Y`.
pub fn project_mass(m: &MassFunction, partition: &Partition) -> Result<MassFunction> {
    if partition.frame() != &m.frame {
        return Err(Error::FrameMismatch);
    }
    let mut sums = BTreeMap::new();
    for (subset, mass) in m.focal() {
        *sums
            .entry(frame::project_unchecked(subset, partition))
            .or_insert(0.0) += mass;
    }
    MassFunction::from_sums(&block_frame(partition), sums)
}

/// `Bel↓Y(C) = Bel(∪C)`, evaluated directly from the table.
pub fn project_belief(bel: &BeliefFunction, partition: &Partition) -> Result<BeliefFunction> {
    if partition.frame() != &bel.frame {
        return Err(Error::FrameMismatch);
    }
    let blocks = block_frame(partition);
    let values = (0..blocks.power_set_len())
        .map(|c| bel.value(partition.union_of(SubsetMask::from_bits(c as u32))))
        .collect();
    Ok(BeliefFunction {
        frame: blocks,
        values,
    })
}

fn map_subset(subset: SubsetMask, forward: &[usize]) -> SubsetMask {
    SubsetMask::from_indices(subset.indices().map(|i| forward[i]))
}

/// Carries `m` along the bijection `forward` (source index `i` ↦ target index
/// `forward[i]`): `π(m)(B) = m(π⁻¹(B))`.
pub fn relabel(m: &MassFunction, target: &Frame, forward: &[usize]) -> Result<MassFunction> {
    let n = m.frame.len();
    if target.len() != n {
        return Err(Error::NotBijection(format!(
            "frames have {} and {} elements",
            n,
            target.len()
        )));
    }
    if forward.len() != n {
        return Err(Error::NotBijection(format!(
            "map covers {} of {} elements",
            forward.len(),
            n
        )));
    }
    let mut hit = vec![false; n];
    for &j in forward {
        if j >= n || std::mem::replace(&mut hit[j], true) {
            return Err(Error::NotBijection(format!(
                "target index {j} is invalid or repeated"
            )));
        }
    }
    let focal = m
        .focal
        .iter()
        .map(|(&s, &mass)| (map_subset(s, forward), mass))
        .collect();
    Ok(MassFunction {
        frame: target.clone(),
        focal,
    })
}

/// Relabeling by a permutation of the frame's own element indices.
pub fn permute(m: &MassFunction, permutation: &[usize]) -> Result<MassFunction> {
    relabel(m, &m.frame.clone(), permutation)
}

/// Adds an element that no focal set contains.
pub fn expand(m: &MassFunction, new_label: impl Into<String>) -> Result<MassFunction> {
    let new_label = new_label.into();
    if m.frame.index_of(&new_label).is_some() {
        return Err(Error::DuplicateLabel(new_label));
    }
    Ok(MassFunction {
        frame: m.frame.extended(new_label)?,
        focal: m.focal.clone(),
    })
}

/// Moves the fraction `1 - alpha` of `m(from)` onto the strict superset `to`.
pub fn transfer(
    m: &MassFunction,
    from: SubsetMask,
    to: SubsetMask,
    alpha: f64,
) -> Result<MassFunction> {
    m.frame.check_mask(from)?;
    m.frame.check_mask(to)?;
    if !m.is_focal(from) {
        return Err(Error::NotFocal(from));
    }
    if !from.is_strict_subset_of(to) {
        return Err(Error::NotStrictSuperset { from, target: to });
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::OutOfUnitInterval {
            name: "alpha",
            value: alpha,
        });
    }
    let source = m.mass(from);
    let mut sums = m.focal.clone();
    sums.insert(from, alpha * source);
    *sums.entry(to).or_insert(0.0) += (1.0 - alpha) * source;
    MassFunction::from_sums(&m.frame, sums)
}

/// Moves an absolute `amount` of mass from `from` to an arbitrary non-empty
/// `to`; the path used to probe continuity.
pub fn shift_mass(
    m: &MassFunction,
    from: SubsetMask,
    to: SubsetMask,
    amount: f64,
) -> Result<MassFunction> {
    m.frame.check_mask(from)?;
    m.frame.check_mask(to)?;
    if to.is_empty() {
        return Err(Error::EmptyFocalSet);
    }
    let available = m.mass(from);
    if !(amount >= 0.0 && amount <= available) {
        return Err(Error::InsufficientMass {
            subset: from,
            amount,
            available,
        });
    }
    let mut sums = m.focal.clone();
    sums.insert(from, available - amount);
    *sums.entry(to).or_insert(0.0) += amount;
    MassFunction::from_sums(&m.frame, sums)
}

/// The non-interactive joint mass function of `first` and `second` on their
/// product frame: every pair of focal elements yields the rectangle
/// `A × B` with mass `m₁(A)·m₂(B)`.
pub fn product_mass(
    first: &MassFunction,
    second: &MassFunction,
) -> Result<(MassFunction, ProductStructure)> {
    let structure = frame::product_of(&first.frame, &second.frame)?;
    let mut focal = BTreeMap::new();
    for (a, ma) in first.focal() {
        for (b, mb) in second.focal() {
            focal.insert(structure.rectangle(a, b), ma * mb);
        }
    }
    let mass = MassFunction::normalized(&structure.frame, focal)?;
    Ok((mass, structure))
}

/// `m(A) = 1`.
pub fn vacuous(frame: &Frame, subset: SubsetMask) -> Result<MassFunction> {
    MassFunction::new(frame, [(subset, 1.0)])
}

/// Singleton-only mass function with `m({x}) = p_x`; zero entries omitted.
pub fn bayesian(p: &ProbabilityVector) -> MassFunction {
    let focal = p
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &px)| px > 0.0)
        .map(|(i, &px)| (SubsetMask::singleton(i), px))
        .collect();
    MassFunction {
        frame: p.frame.clone(),
        focal,
    }
}

/// A probability distribution over the elements of a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    frame: Frame,
    p: Vec<f64>,
}

impl ProbabilityVector {
    /// Entries within [`MASS_TOL`] below 0 are clamped; the sum must be 1
    /// within [`MASS_TOL`] and is renormalized beyond [`ROUND_TOL`].
    pub fn new(frame: &Frame, values: Vec<f64>) -> Result<Self> {
        if values.len() != frame.len() {
            return Err(Error::InvalidProbability(format!(
                "{} entries for a frame of {}",
                values.len(),
                frame.len()
            )));
        }
        let mut p = values;
        for (i, v) in p.iter_mut().enumerate() {
            if !v.is_finite() || *v < -MASS_TOL || *v > 1.0 + MASS_TOL {
                return Err(Error::InvalidProbability(format!(
                    "p[{}] = {v} is outside [0, 1]",
                    frame.label(i)
                )));
            }
            *v = v.clamp(0.0, 1.0);
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidProbability(format!("entries sum to {sum}")));
        }
        if (sum - 1.0).abs() > ROUND_TOL {
            p.iter_mut().for_each(|v| *v /= sum);
        }
        Ok(ProbabilityVector {
            frame: frame.clone(),
            p,
        })
    }

    pub fn uniform(frame: &Frame) -> Self {
        let n = frame.len();
        ProbabilityVector {
            frame: frame.clone(),
            p: vec![1.0 / n as f64; n],
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[f64] {
        &self.p
    }

    pub fn get(&self, index: usize) -> f64 {
        self.p[index]
    }

    /// `Σ_{x ∈ A} p_x`.
    pub fn probability(&self, subset: SubsetMask) -> f64 {
        subset.indices().map(|i| self.p[i]).sum()
    }
}

/// Shannon entropy in bits, with `0·log₂0 = 0`.
pub fn shannon_entropy(p: &ProbabilityVector) -> f64 {
    entropy_bits(&p.p)
}

pub(crate) fn entropy_bits(p: &[f64]) -> f64 {
    let h: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum();
    h.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Frame {
        Frame::new(["a", "b"]).unwrap()
    }

    fn r1_example() -> MassFunction {
        MassFunction::from_labels(&ab(), &[(&["a"], 0.2), (&["b"], 0.5), (&["a", "b"], 0.3)])
            .unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn mass_validation() {
        let f = ab();
        let a = SubsetMask::singleton(0);
        assert_eq!(
            MassFunction::new(&f, [(SubsetMask::EMPTY, 1.0)]),
            Err(Error::EmptyFocalSet)
        );
        assert!(matches!(
            MassFunction::new(&f, [(a, 0.0), (f.full(), 1.0)]),
            Err(Error::NonPositiveMass { .. })
        ));
        assert!(matches!(
            MassFunction::new(&f, [(a, 0.999)]),
            Err(Error::MassSum { .. })
        ));
        assert_eq!(
            MassFunction::new(&f, [(a, 0.5), (a, 0.5)]),
            Err(Error::DuplicateFocalSet(a))
        );
        // Within MASS_TOL: renormalized exactly.
        let m = MassFunction::new(&f, [(a, 0.5), (f.full(), 0.5 + 5e-10)]).unwrap();
        assert!(close(m.total(), 1.0));
    }

    #[test]
    fn belief_of_r1_example() {
        let bel = belief_from_mass(&r1_example());
        assert!(close(bel.value(SubsetMask::from_bits(0b01)), 0.2));
        assert!(close(bel.value(SubsetMask::from_bits(0b10)), 0.5));
        assert!(close(bel.value(SubsetMask::from_bits(0b11)), 1.0));
        assert_eq!(bel.value(SubsetMask::EMPTY), 0.0);
    }

    #[test]
    fn belief_of_vacuous_and_bayesian() {
        let f = Frame::numbered(3).unwrap();
        let bel = belief_from_mass(&vacuous(&f, f.full()).unwrap());
        for a in 0..7 {
            assert_eq!(bel.values()[a], 0.0);
        }
        assert_eq!(bel.values()[7], 1.0);

        let p = ProbabilityVector::new(&f, vec![0.2, 0.5, 0.3]).unwrap();
        let bel = belief_from_mass(&bayesian(&p));
        for a in 0..8u32 {
            let s = SubsetMask::from_bits(a);
            assert!(close(bel.value(s), p.probability(s)));
        }
    }

    #[test]
    fn mobius_recovers_r1_example() {
        let m = r1_example();
        let back = mass_from_belief(&belief_from_mass(&m)).unwrap();
        assert!(back.max_difference(&m).unwrap() < ROUND_TOL);
        assert_eq!(back.focal_count(), 3);
    }

    #[test]
    fn mobius_of_additive_table() {
        // Bel(A) = |A| / 2 on a two-element frame.
        let m = mass_from_table(&ab(), &[0.0, 0.5, 0.5, 1.0]).unwrap();
        assert_eq!(m.focal_count(), 2);
        assert!(close(m.mass(SubsetMask::from_bits(0b01)), 0.5));
        assert!(close(m.mass(SubsetMask::from_bits(0b10)), 0.5));
    }

    #[test]
    fn negative_mobius_is_rejected_with_witness() {
        let table = [0.0, 0.6, 0.6, 1.0];
        match mass_from_table(&ab(), &table) {
            Err(Error::NotABeliefFunction(BeliefViolation::NegativeMobius {
                subset,
                coefficient,
            })) => {
                assert_eq!(subset, SubsetMask::from_bits(0b11));
                assert!((coefficient + 0.2).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
        let verdict = is_belief_function(&ab(), &table);
        assert!(!verdict.is_valid());
        assert!(matches!(
            verdict.violation(),
            Some(BeliefViolation::NegativeMobius { .. })
        ));
    }

    #[test]
    fn boundary_violations() {
        assert!(matches!(
            is_belief_function(&ab(), &[0.1, 0.2, 0.5, 1.0]),
            BeliefVerdict::Invalid(BeliefViolation::EmptySet { .. })
        ));
        assert!(matches!(
            is_belief_function(&ab(), &[0.0, 0.2, 0.5, 0.9]),
            BeliefVerdict::Invalid(BeliefViolation::FullSet { .. })
        ));
        assert!(matches!(
            is_belief_function(&ab(), &[0.0, 0.2, 1.0]),
            BeliefVerdict::Invalid(BeliefViolation::WrongLength { .. })
        ));
        assert!(is_belief_function(&ab(), belief_from_mass(&r1_example()).values()).is_valid());
    }

    #[test]
    fn projection_example() {
        let x = Frame::numbered(4).unwrap();
        let y = Partition::from_labels(&x, &[vec!["1", "2"], vec!["3", "4"]]).unwrap();
        let m = MassFunction::from_labels(&x, &[(&["1", "3"], 0.6), (&["1", "2"], 0.4)]).unwrap();
        let projected = project_mass(&m, &y).unwrap();
        assert_eq!(projected.frame().labels(), ["1,2", "3,4"]);
        assert!(close(projected.mass(SubsetMask::from_bits(0b11)), 0.6));
        assert!(close(projected.mass(SubsetMask::from_bits(0b01)), 0.4));

        let bel_y = project_belief(&belief_from_mass(&m), &y).unwrap();
        assert!(close(bel_y.value(SubsetMask::from_bits(0b01)), 0.4));
        assert!(close(bel_y.value(SubsetMask::from_bits(0b11)), 1.0));
        assert_eq!(bel_y.value(SubsetMask::EMPTY), 0.0);

        let identity = project_mass(&m, &Partition::singletons(&x)).unwrap();
        assert_eq!(
            identity.focal().collect::<Vec<_>>(),
            m.focal().collect::<Vec<_>>()
        );
        let collapsed = project_mass(&m, &Partition::whole(&x)).unwrap();
        assert_eq!(
            collapsed.focal().collect::<Vec<_>>(),
            vec![(SubsetMask::from_bits(1), 1.0)]
        );
    }

    #[test]
    fn projection_rejects_foreign_partition() {
        let x = Frame::numbered(4).unwrap();
        let other = Frame::new(["a", "b", "c", "d"]).unwrap();
        let m = vacuous(&x, x.full()).unwrap();
        assert_eq!(
            project_mass(&m, &Partition::whole(&other)),
            Err(Error::FrameMismatch)
        );
    }

    #[test]
    fn relabel_matches_the_label_independence_example() {
        let m1 = r1_example();
        let target = Frame::new(["Δ", "*"]).unwrap();
        // a ↦ *, b ↦ Δ
        let m2 = relabel(&m1, &target, &[1, 0]).unwrap();
        let expected =
            MassFunction::from_labels(&target, &[(&["Δ"], 0.5), (&["*"], 0.2), (&["Δ", "*"], 0.3)])
                .unwrap();
        assert_eq!(m2.max_difference(&expected), Some(0.0));

        assert_eq!(permute(&m1, &[0, 1]).unwrap(), m1);
        let swapped = permute(&permute(&m1, &[1, 0]).unwrap(), &[1, 0]).unwrap();
        assert_eq!(swapped, m1);
        assert!(matches!(permute(&m1, &[0, 0]), Err(Error::NotBijection(_))));
        assert!(matches!(permute(&m1, &[0]), Err(Error::NotBijection(_))));
    }

    #[test]
    fn expansion_keeps_focal_sets() {
        let f = Frame::numbered(2).unwrap();
        let m = MassFunction::new(&f, [(SubsetMask::from_bits(1), 0.3), (f.full(), 0.7)]).unwrap();
        let e = expand(&m, "3").unwrap();
        assert_eq!(e.frame().len(), 3);
        assert_eq!(e.focal().collect::<Vec<_>>(), m.focal().collect::<Vec<_>>());
        let e2 = expand(&e, "4").unwrap();
        assert_eq!(e2.frame().len(), 4);
        assert!(e2.focal().all(|(s, _)| !s.contains(2) && !s.contains(3)));
        assert_eq!(expand(&m, "1"), Err(Error::DuplicateLabel("1".into())));

        // Projecting back with {1},{2},{3,4} recovers the original structure.
        let y = Partition::new(
            e2.frame(),
            vec![
                SubsetMask::from_bits(0b0001),
                SubsetMask::from_bits(0b0010),
                SubsetMask::from_bits(0b1100),
            ],
        )
        .unwrap();
        let back = project_mass(&e2, &y).unwrap();
        assert_eq!(
            back.focal().collect::<Vec<_>>(),
            m.focal().collect::<Vec<_>>()
        );
    }

    #[test]
    fn transfer_examples() {
        let m = r1_example();
        let a = SubsetMask::from_bits(0b01);
        let ab_mask = SubsetMask::from_bits(0b11);
        assert_eq!(transfer(&m, a, ab_mask, 1.0).unwrap(), m);

        let moved = transfer(&m, a, ab_mask, 0.5).unwrap();
        assert!(close(moved.mass(a), 0.1));
        assert!(close(moved.mass(SubsetMask::from_bits(0b10)), 0.5));
        assert!(close(moved.mass(ab_mask), 0.4));

        let point = vacuous(&ab(), a).unwrap();
        let full = transfer(&point, a, ab_mask, 0.0).unwrap();
        assert_eq!(full.focal().collect::<Vec<_>>(), vec![(ab_mask, 1.0)]);

        assert_eq!(
            transfer(&point, SubsetMask::from_bits(0b10), ab_mask, 0.5),
            Err(Error::NotFocal(SubsetMask::from_bits(0b10)))
        );
        assert!(matches!(
            transfer(&m, a, a, 0.5),
            Err(Error::NotStrictSuperset { .. })
        ));
        assert!(matches!(
            transfer(&m, a, ab_mask, 1.5),
            Err(Error::OutOfUnitInterval { .. })
        ));
    }

    #[test]
    fn shift_moves_absolute_amounts() {
        let m = r1_example();
        let b = SubsetMask::from_bits(0b10);
        let ab_mask = SubsetMask::from_bits(0b11);
        let shifted = shift_mass(&m, b, ab_mask, 0.5).unwrap();
        assert!(!shifted.is_focal(b));
        assert!(close(shifted.mass(ab_mask), 0.8));
        assert_eq!(shift_mass(&m, b, ab_mask, 0.0).unwrap(), m);
        assert!(shift_mass(&m, b, ab_mask, 0.6).is_err());
    }

    #[test]
    fn product_of_two_mass_functions() {
        let p = Frame::numbered(2).unwrap();
        let q = Frame::numbered(1).unwrap();
        let m1 = MassFunction::new(
            &p,
            [
                (SubsetMask::from_bits(0b01), 0.5),
                (SubsetMask::from_bits(0b11), 0.5),
            ],
        )
        .unwrap();
        let m2 = vacuous(&q, q.full()).unwrap();
        let (joint, ps) = product_mass(&m1, &m2).unwrap();
        let c11 = SubsetMask::singleton(ps.cell(0, 0));
        let c21 = SubsetMask::singleton(ps.cell(1, 0));
        assert!(close(joint.mass(c11), 0.5));
        assert!(close(joint.mass(c11 | c21), 0.5));

        let back1 = project_mass(&joint, &ps.rows).unwrap();
        let back2 = project_mass(&joint, &ps.columns).unwrap();
        assert_eq!(
            back1.focal().collect::<Vec<_>>(),
            m1.focal().collect::<Vec<_>>()
        );
        assert_eq!(
            back2.focal().collect::<Vec<_>>(),
            m2.focal().collect::<Vec<_>>()
        );
    }

    #[test]
    fn vacuous_product_is_vacuous() {
        let two = Frame::numbered(2).unwrap();
        let m = vacuous(&two, two.full()).unwrap();
        let (joint, ps) = product_mass(&m, &m).unwrap();
        assert_eq!(
            joint.focal().collect::<Vec<_>>(),
            vec![(ps.frame.full(), 1.0)]
        );
    }

    #[test]
    fn bayesian_product_is_product_measure() {
        let two = Frame::numbered(2).unwrap();
        let three = Frame::numbered(3).unwrap();
        let p = ProbabilityVector::new(&two, vec![0.4, 0.6]).unwrap();
        let q = ProbabilityVector::new(&three, vec![0.2, 0.3, 0.5]).unwrap();
        let (joint, ps) = product_mass(&bayesian(&p), &bayesian(&q)).unwrap();
        assert!(joint.is_bayesian());
        for i in 0..2 {
            for j in 0..3 {
                let cell = SubsetMask::singleton(ps.cell(i, j));
                assert!(close(joint.mass(cell), p.get(i) * q.get(j)));
            }
        }
    }

    #[test]
    fn constructors() {
        let f = Frame::new(["a", "b", "c"]).unwrap();
        assert_eq!(vacuous(&f, SubsetMask::EMPTY), Err(Error::EmptyFocalSet));
        let m = vacuous(&f, f.subset(["a", "b"]).unwrap()).unwrap();
        assert_eq!(m.focal_count(), 1);

        let p = ProbabilityVector::new(&ab(), vec![1.0, 0.0]).unwrap();
        let m = bayesian(&p);
        assert_eq!(
            m.focal().collect::<Vec<_>>(),
            vec![(SubsetMask::singleton(0), 1.0)]
        );
        let p = ProbabilityVector::new(&f, vec![0.2, 0.5, 0.3]).unwrap();
        assert_eq!(bayesian(&p).focal_count(), 3);
    }

    #[test]
    fn entropy_values() {
        let two = ab();
        let h = |v: Vec<f64>, f: &Frame| shannon_entropy(&ProbabilityVector::new(f, v).unwrap());
        assert!(close(h(vec![0.5, 0.5], &two), 1.0));
        assert_eq!(h(vec![1.0, 0.0], &two), 0.0);
        assert!(close(h(vec![0.25; 4], &Frame::numbered(4).unwrap()), 2.0));
    }

    #[test]
    fn probability_vector_validation() {
        let f = ab();
        assert!(ProbabilityVector::new(&f, vec![0.5]).is_err());
        assert!(ProbabilityVector::new(&f, vec![1.2, -0.2]).is_err());
        assert!(ProbabilityVector::new(&f, vec![0.5, 0.4]).is_err());
        let p = ProbabilityVector::new(&f, vec![1.0 + 1e-10, -1e-10]).unwrap();
        assert_eq!(p.get(1), 0.0);
    }

    /// Superadditivity over every family of subsets, for tables on frames
    /// with at most three elements.
    fn superadditive_for_all_families(values: &[f64]) -> bool {
        let subsets = values.len();
        // A family is a non-empty set of subsets: one bit per subset.
        for family in 1u64..(1u64 << subsets) {
            let members: Vec<usize> = (0..subsets).filter(|i| family >> i & 1 == 1).collect();
            let union = members.iter().fold(0, |acc, &a| acc | a);
            let mut rhs = 0.0;
            for pick in 1u64..(1u64 << members.len()) {
                let chosen: Vec<usize> = (0..members.len())
                    .filter(|i| pick >> i & 1 == 1)
                    .map(|i| members[i])
                    .collect();
                let inter = chosen.iter().fold(subsets - 1, |acc, &a| acc & a);
                let sign = if chosen.len() % 2 == 1 { 1.0 } else { -1.0 };
                rhs += sign * values[inter];
            }
            if values[union] < rhs - 1e-9 {
                return false;
            }
        }
        true
    }

    #[test]
    fn mobius_criterion_agrees_with_family_inequality() {
        // Frames of two elements: every table with Bel(∅)=0, Bel(X)=1 on a grid.
        let f = ab();
        for i in 0..=10 {
            for j in 0..=10 {
                let table = [0.0, i as f64 / 10.0, j as f64 / 10.0, 1.0];
                assert_eq!(
                    is_belief_function(&f, &table).is_valid(),
                    superadditive_for_all_families(&table),
                    "table {table:?}"
                );
            }
        }
        // Three elements: a pseudo-random sweep over tables with fixed boundary.
        let f3 = Frame::numbered(3).unwrap();
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 1000) as f64 / 1000.0
        };
        let mut valid = 0;
        for _ in 0..400 {
            let singles = [next() * 0.4, next() * 0.4, next() * 0.4];
            let mut table = [0.0; 8];
            table[1] = singles[0];
            table[2] = singles[1];
            table[4] = singles[2];
            table[3] = table[1] + table[2] + next() * 0.3 - 0.1;
            table[5] = table[1] + table[4] + next() * 0.3 - 0.1;
            table[6] = table[2] + table[4] + next() * 0.3 - 0.1;
            table[7] = 1.0;
            let verdict = is_belief_function(&f3, &table).is_valid();
            assert_eq!(verdict, superadditive_for_all_families(&table), "{table:?}");
            valid += verdict as usize;
        }
        assert!(valid > 20);
    }
}
