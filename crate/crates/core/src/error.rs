use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("genus must be ≥ 2 (got {0})")]
    InvalidGenus(u32),

    #[error("malformed token `{0}`: expected a nonzero integer")]
    MalformedToken(String),

    #[error("zero token `{0}`: generators are numbered from 1")]
    ZeroToken(String),

    #[error("letter `{token}` out of range: generator index must lie in 1..={max}")]
    LetterOutOfRange { token: String, max: u32 },

    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(u32, u32),

    #[error("illegal rule: family {family}, j = {j:?}, s = {s:?}")]
    IllegalRule {
        family: u8,
        j: Option<u32>,
        s: Option<u32>,
    },

    #[error("stale match at offset {start}: subword no longer equals the leading word")]
    StaleMatch { start: usize },

    #[error("the trivial class has no prime root")]
    TrivialClass,

    #[error("word `{0}` is empty")]
    EmptyWord(String),

    #[error("word `{0}` is not cyclically reduced")]
    NotCyclicallyReduced(String),

    #[error("isometry with |trace| = {0} is not hyperbolic")]
    NotHyperbolic(f64),
}
