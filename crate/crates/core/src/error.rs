use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vector has length {got}, expected rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("Cartan entry ({i},{j}) = {value} violates generalized Cartan conditions")]
    InvalidCartan { i: usize, j: usize, value: i64 },
    #[error("simple {what} are linearly dependent")]
    DependentSimple { what: &'static str },
    #[error("root system exceeds {cap} positive roots; the Weyl group is not finite")]
    InfiniteWeylGroup { cap: usize },
    #[error("orbit exceeds the safety cap of {cap} elements")]
    OrbitCap { cap: usize },
    #[error("Dynkin index {0} is out of range")]
    InvalidIndex(usize),
    #[error("coweight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("coweight {0:?} is not dominant for the Levi subgroup")]
    NotLeviDominant(Vec<i64>),
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: u128, cap: u128 },
    #[error("datum is not 1-admissible: {0}")]
    NotAdmissible(String),
    #[error("linear system has no integral solution: {0}")]
    NonIntegral(String),
    #[error("coweight {0:?} does not lie in the orbit of gamma")]
    NotInOrbit(Vec<i64>),
    #[error("{0}")]
    Precondition(String),
    #[error("claimed identity failed: {0}")]
    LemmaViolation(String),
    #[error("unsupported group: {0}")]
    Unsupported(String),
    #[error("malformed datum file: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
