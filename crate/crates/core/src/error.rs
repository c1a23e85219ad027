use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what}: {value} is not a prime")]
    NotPrime { what: &'static str, value: u64 },

    #[error("enumeration budget exceeded: domain of size {size} > budget {budget}")]
    BudgetExceeded { size: u128, budget: u64 },

    #[error("invalid curve model: {0}")]
    InvalidModel(String),

    #[error("singular model: common zero of the equation and its partials at {witness}")]
    SingularModel { witness: String },

    #[error("Weil bound violated at m = {m}: N_m = {count}, q^m + 1 = {center}, allowed deviation {bound}")]
    WeilViolation { m: usize, count: String, center: String, bound: String },

    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed group spec {name}: {reason}")]
    MalformedGroup { name: String, reason: String },

    #[error("unsupported group: {family} with n = {n}")]
    UnsupportedGroup { family: String, n: u32 },

    #[error("parse error: {0}")]
    Parse(String),
}
