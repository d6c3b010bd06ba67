use thiserror::Error;

use crate::frame::SubsetMask;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a frame needs at least one element")]
    EmptyFrame,
    #[error("frame label at position {0} is empty")]
    EmptyLabel(usize),
    #[error("duplicate frame label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown frame label `{0}`")]
    UnknownLabel(String),
    #[error("frame of {size} elements exceeds the limit of {limit}")]
    Capacity { size: usize, limit: usize },
    #[error("subset mask {mask} has bits outside a frame of {frame_size} elements")]
    InvalidMask { mask: SubsetMask, frame_size: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("operands live on different frames")]
    FrameMismatch,
    #[error("the empty set cannot carry mass")]
    EmptyFocalSet,
    #[error("mass {mass} on {subset} is not a positive finite number")]
    NonPositiveMass { subset: SubsetMask, mass: f64 },
    #[error("subset {0} appears more than once")]
    DuplicateFocalSet(SubsetMask),
    #[error("masses sum to {sum}, not 1")]
    MassSum { sum: f64 },
    #[error("table is not a belief function: {0}")]
    NotABeliefFunction(crate::evidence::BeliefViolation),
    #[error("{0} is not a focal element")]
    NotFocal(SubsetMask),
    #[error("{target} is not a strict superset of {from}")]
    NotStrictSuperset {
        from: SubsetMask,
        target: SubsetMask,
    },
    #[error("{name} = {value} is outside [0, 1]")]
    OutOfUnitInterval { name: &'static str, value: f64 },
    #[error("amount {amount} exceeds the mass {available} available on {subset}")]
    InsufficientMass {
        subset: SubsetMask,
        amount: f64,
        available: f64,
    },
    #[error("relabeling is not a bijection: {0}")]
    NotBijection(String),
    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),
    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),
}
