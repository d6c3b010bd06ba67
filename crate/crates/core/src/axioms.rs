//! Executable requirements for uncertainty measures on mass functions.
//!
//! Every check takes the candidate measure as a plain function
//! `Fn(&MassFunction) -> f64`, so the same checks run against AU and against
//! the counterexample measures in [`fixtures`]. A check returns a
//! [`CheckReport`] whose `margin` is a signed slack: zero or positive means
//! the requirement holds exactly, and the check passes while
//! `margin ≥ −tolerance`. Equalities report `−|lhs − rhs|`; inequalities
//! `lhs ≤ rhs` report `rhs − lhs`.

pub mod fixtures;
pub mod random;
pub mod suite;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::credal::sample_consistent;
use crate::document::BpaDocument;
use crate::error::Result;
use crate::evidence::{
    bayesian, expand, permute, product_mass, project_mass, shannon_entropy, shift_mass, transfer,
    vacuous, MassFunction, ProbabilityVector,
};
use crate::frame::{Frame, ProductStructure, SubsetMask};

pub use suite::{run_case, run_suite, SuiteConfig, SuiteReport, SuiteSelection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RequirementId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    T1,
    T2,
    T3,
    C4,
    T7,
}

impl RequirementId {
    pub const ALL: [RequirementId; 13] = [
        RequirementId::R1,
        RequirementId::R2,
        RequirementId::R3,
        RequirementId::R4,
        RequirementId::R5,
        RequirementId::R6,
        RequirementId::R7,
        RequirementId::R8,
        RequirementId::T1,
        RequirementId::T2,
        RequirementId::T3,
        RequirementId::C4,
        RequirementId::T7,
    ];

    /// Pass threshold on `-margin`.
    pub fn tolerance(self) -> f64 {
        match self {
            RequirementId::R1 | RequirementId::R3 => 1e-12,
            RequirementId::R7 | RequirementId::R8 => 1e-12,
            RequirementId::R4 | RequirementId::R5 => 1e-7,
            // The continuity margin already compares against CONT_BOUND.
            RequirementId::R2 => 0.0,
            _ => crate::au::AU_TOL,
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            RequirementId::R1 => "symmetry",
            RequirementId::R2 => "continuity",
            RequirementId::R3 => "expansibility",
            RequirementId::R4 => "subadditivity",
            RequirementId::R5 => "additivity",
            RequirementId::R6 => "monotone dispensability",
            RequirementId::R7 => "probabilistic normalization",
            RequirementId::R8 => "nonspecificity normalization",
            RequirementId::T1 => "nonnegativity",
            RequirementId::T2 => "Shannon collapse",
            RequirementId::T3 => "Hartley collapse",
            RequirementId::C4 => "upper bound log2|X|",
            RequirementId::T7 => "minimality",
        }
    }
}

impl fmt::Display for RequirementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::str::FromStr for RequirementId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        RequirementId::ALL
            .into_iter()
            .find(|r| r.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown requirement `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Inputs and values behind a report; enough to replay it.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<usize>,
    pub params: BTreeMap<String, String>,
    pub inputs: BTreeMap<String, BpaDocument>,
    pub values: BTreeMap<String, f64>,
}

impl Witness {
    fn input(mut self, name: &str, m: &MassFunction) -> Self {
        self.inputs.insert(name.into(), BpaDocument::from_mass(m));
        self
    }

    fn value(mut self, name: &str, v: f64) -> Self {
        self.values.insert(name.into(), v);
        self
    }

    fn param(mut self, name: &str, v: impl ToString) -> Self {
        self.params.insert(name.into(), v.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub requirement: RequirementId,
    pub verdict: Verdict,
    pub margin: f64,
    pub tolerance: f64,
    /// Number of cases folded into this report (worst one kept as witness).
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub witness: Witness,
}

impl CheckReport {
    fn new(requirement: RequirementId, margin: f64, witness: Witness) -> Self {
        let tolerance = requirement.tolerance();
        CheckReport {
            requirement,
            verdict: if margin >= -tolerance {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            margin,
            tolerance,
            cases: 1,
            note: None,
            witness,
        }
    }

    fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn equality_margin(lhs: f64, rhs: f64) -> f64 {
    nan_fails(-(lhs - rhs).abs())
}

fn fresh_label(frame: &Frame) -> String {
    (frame.len() + 1..)
        .map(|i| format!("x{i}"))
        .find(|l| frame.index_of(l).is_none())
        .expect("some label is unused")
}

/// Label independence: `U(m) = U(π(m))` for a permutation of the frame.
pub fn check_symmetry<F>(measure: F, m: &MassFunction, permutation: &[usize]) -> Result<CheckReport>
where
    F: Fn(&MassFunction) -> f64,
{
    let moved = permute(m, permutation)?;
    let (before, after) = (measure(m), measure(&moved));
    let witness = Witness::default()
        .input("m", m)
        .input("relabelled", &moved)
        .param("permutation", format!("{permutation:?}"))
        .value("U(m)", before)
        .value("U(pi(m))", after);
    Ok(CheckReport::new(
        RequirementId::R1,
        equality_margin(before, after),
        witness,
    ))
}

/// `U` is unchanged when an element no focal set contains is added.
pub fn check_expansibility<F>(measure: F, m: &MassFunction) -> Result<CheckReport>
where
    F: Fn(&MassFunction) -> f64,
{
    let expanded = expand(m, fresh_label(m.frame()))?;
    let (before, after) = (measure(m), measure(&expanded));
    let witness = Witness::default()
        .input("m", m)
        .value("U(m)", before)
        .value("U(expanded)", after);
    Ok(CheckReport::new(
        RequirementId::R3,
        equality_margin(before, after),
        witness,
    ))
}

/// `U(m) ≤ U(m↓Y₁) + U(m↓Y₂)` on a product frame.
pub fn check_subadditivity<F>(
    measure: F,
    m: &MassFunction,
    structure: &ProductStructure,
) -> Result<CheckReport>
where
    F: Fn(&MassFunction) -> f64,
{
    let first = project_mass(m, &structure.rows)?;
    let second = project_mass(m, &structure.columns)?;
    let joint = measure(m);
    let (u1, u2) = (measure(&first), measure(&second));
    let witness = Witness::default()
        .input("m", m)
        .param("rows", structure.row_count())
        .param("columns", structure.column_count())
        .value("U(m)", joint)
        .value("U(m|Y1)", u1)
        .value("U(m|Y2)", u2);
    Ok(CheckReport::new(
        RequirementId::R4,
        u1 + u2 - joint,
        witness,
    ))
}

/// `U(m₁ ⊗ m₂) = U(m₁) + U(m₂)` for the non-interactive product.
pub fn check_additivity<F>(
    measure: F,
    first: &MassFunction,
    second: &MassFunction,
) -> Result<CheckReport>
where
    F: Fn(&MassFunction) -> f64,
{
    let (joint, _) = product_mass(first, second)?;
    let (u, u1, u2) = (measure(&joint), measure(first), measure(second));
    let witness = Witness::default()
        .input("m1", first)
        .input("m2", second)
        .value("U(m)", u)
        .value("U(m1)", u1)
        .value("U(m2)", u2);
    Ok(CheckReport::new(
        RequirementId::R5,
        equality_margin(u, u1 + u2),
        witness,
    ))
}

/// `U(m) ≤ U(m′)` after moving `1 − α` of `m(A)` onto a strict superset `B`.
pub fn check_monotone_dispensability<F>(
    measure: F,
    m: &MassFunction,
    from: SubsetMask,
    to: SubsetMask,
    alpha: f64,
) -> Result<CheckReport>
where
    F: Fn(&MassFunction) -> f64,
{
    let moved = transfer(m, from, to, alpha)?;
    let (before, after) = (measure(m), measure(&moved));
    let witness = Witness::default()
        .input("m", m)
        .param("A", m.frame().display_subset(from))
        .param("B", m.frame().display_subset(to))
        .value("alpha", alpha)
        .value("U(m)", before)
        .value("U(m')", after);
    Ok(CheckReport::new(RequirementId::R6, after - before, witness))
}

/// `U₂(½, ½, 0) = 1` (R7) and `U₂(0, 0, 1) = 1` (R8).
pub fn check_normalizations<F>(measure: F) -> [CheckReport; 2]
where
    F: Fn(&MassFunction) -> f64,
{
    let frame = Frame::numbered(2).expect("two labels");
    let half = bayesian(&ProbabilityVector::uniform(&frame));
    let total = vacuous(&frame, frame.full()).expect("non-empty");
    let (u7, u8) = (measure(&half), measure(&total));
    [
        CheckReport::new(
            RequirementId::R7,
            equality_margin(u7, 1.0),
            Witness::default().input("m", &half).value("U(m)", u7),
        ),
        CheckReport::new(
            RequirementId::R8,
            equality_margin(u8, 1.0),
            Witness::default().input("m", &total).value("U(m)", u8),
        ),
    ]
}

/// `0 ≤ U(m)` (T1) and `U(m) ≤ log₂|X|` (C4).
pub fn check_range<F>(measure: F, m: &MassFunction) -> [CheckReport; 2]
where
    F: Fn(&MassFunction) -> f64,
{
    let u = measure(m);
    let upper = (m.frame().len() as f64).log2();
    let witness = Witness::default()
        .input("m", m)
        .value("U(m)", u)
        .value("log2|X|", upper);
    [
        CheckReport::new(RequirementId::T1, nan_fails(u), witness.clone()),
        CheckReport::new(RequirementId::C4, nan_fails(upper - u), witness),
    ]
}

/// Input of [`check_collapse`].
#[derive(Debug, Clone)]
pub enum Collapse<'a> {
    /// `U(bayesian(p)) = H(p)`.
    Shannon(&'a ProbabilityVector),
    /// `U(⟨A, 1⟩) = log₂|A|`.
    Hartley(&'a Frame, SubsetMask),
}

pub fn check_collapse<F>(measure: F, case: Collapse<'_>) -> Result<CheckReport>
where
    F: Fn(&MassFunction) -> f64,
{
    Ok(match case {
        Collapse::Shannon(p) => {
            let m = bayesian(p);
            let (u, h) = (measure(&m), shannon_entropy(p));
            let witness = Witness::default()
                .input("m", &m)
                .value("U(m)", u)
                .value("H(p)", h);
            CheckReport::new(RequirementId::T2, equality_margin(u, h), witness)
        }
        Collapse::Hartley(frame, subset) => {
            let m = vacuous(frame, subset)?;
            let (u, h) = (measure(&m), (subset.len() as f64).log2());
            let witness = Witness::default()
                .input("m", &m)
                .value("U(m)", u)
                .value("log2|A|", h);
            CheckReport::new(RequirementId::T3, equality_margin(u, h), witness)
        }
    })
}

/// `H(p) ≤ U(m)` for `count` distributions sampled from the credal set of `m`.
pub fn check_minimality<F>(measure: F, m: &MassFunction, count: usize, seed: u64) -> CheckReport
where
    F: Fn(&MassFunction) -> f64,
{
    let u = measure(m);
    let mut worst: Option<(usize, f64)> = None;
    for (i, p) in sample_consistent(m, seed, count).iter().enumerate() {
        let h = shannon_entropy(p);
        if worst.is_none_or(|(_, w)| h > w) {
            worst = Some((i, h));
        }
    }
    let mut witness = Witness::default()
        .input("m", m)
        .param("samples", count)
        .param("sample_seed", seed)
        .value("U(m)", u);
    let margin = match worst {
        Some((i, h)) => {
            witness = witness.param("worst_sample", i).value("H(p)", h);
            nan_fails(u - h)
        }
        None => 0.0,
    };
    CheckReport::new(RequirementId::T7, margin, witness)
}

/// A NaN measure value never passes.
fn nan_fails(slack: f64) -> f64 {
    if slack.is_nan() {
        f64::NEG_INFINITY
    } else {
        slack
    }
}

/// Heuristic modulus of continuity for a mesh of step `δ`, in bits.
pub fn cont_bound(step: f64) -> f64 {
    f64::max(1e-2, 50.0 * step.sqrt())
}

/// Samples `g(x) = U(m with x moved from I to J)` on `[0, m(I)]` with step
/// `mesh`; passes when no adjacent difference exceeds [`cont_bound`].
///
/// A sampled necessary condition only; it cannot establish continuity.
pub fn check_continuity<F>(
    measure: F,
    m: &MassFunction,
    from: SubsetMask,
    to: SubsetMask,
    mesh: f64,
) -> Result<CheckReport>
where
    F: Fn(&MassFunction) -> f64,
{
    if !m.is_focal(from) {
        return Err(crate::error::Error::NotFocal(from));
    }
    if to == from {
        return Err(crate::error::Error::NotStrictSuperset { from, target: to });
    }
    let available = m.mass(from);
    let points = ((available / mesh).ceil() as usize).max(1);
    let mut previous = measure(m);
    let mut worst = (0.0f64, 0.0f64);
    for k in 1..=points {
        let x = (k as f64 * mesh).min(available);
        let value = measure(&shift_mass(m, from, to, x)?);
        let jump = (value - previous).abs();
        if jump.is_nan() || jump > worst.0 {
            worst = (if jump.is_nan() { f64::INFINITY } else { jump }, x);
        }
        previous = value;
    }
    let bound = cont_bound(mesh);
    let witness = Witness::default()
        .input("m", m)
        .param("I", m.frame().display_subset(from))
        .param("J", m.frame().display_subset(to))
        .value("mesh", mesh)
        .value("bound", bound)
        .value("max_jump", worst.0)
        .value("at", worst.1);
    Ok(
        CheckReport::new(RequirementId::R2, bound - worst.0, witness)
            .with_note("sampled necessary condition, not a proof of continuity"),
    )
}
