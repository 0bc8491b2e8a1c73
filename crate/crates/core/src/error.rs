use thiserror::Error;

use crate::assignment::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("weights has {weights} entries but degrees has {degrees}")]
    LengthMismatch { weights: usize, degrees: usize },

    #[error("degree sum {sum} != 2(n-1)={expected}")]
    DegreeSumInvalid { sum: usize, expected: i64 },

    #[error("degrees[{index}] = {value} is not positive")]
    NonPositiveDegree { index: usize, value: i64 },

    #[error("weights[{index}] = {value} is negative or not finite")]
    NegativeWeight { index: usize, value: f64 },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("assignment matrix is {rows}x{cols}, expected {n}x{q}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        n: usize,
        q: usize,
    },

    #[error("infeasible assignment: {}", format_violations(.0))]
    InfeasibleAssignment(Vec<Violation>),

    #[error("backbone has {q} positions, at least 4 are required")]
    SmallBackbone { q: usize },

    #[error("internal weights are not monotone in degrees")]
    NonMonotoneWeights,

    #[error("inconsistent partial assignment: {0}")]
    InconsistentPartial(String),

    #[error("achieved value {0} is not positive; relative error is undefined")]
    NonPositiveAchieved(f64),

    #[error("search space of about {count:.3e} assignments exceeds the limit {limit:.0e}")]
    SearchSpaceTooLarge { count: f64, limit: f64 },

    #[error("instance with {n} vertices exceeds the enumeration limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("instance with {n} vertices is too small, at least {min} are required")]
    TooSmall { n: usize, min: usize },

    #[error("invalid input: {0}")]
    Input(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
