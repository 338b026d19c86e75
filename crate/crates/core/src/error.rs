use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// A parameter lies outside its open interval.
    OutOfRange {
        name: &'static str,
        value: f64,
        low: f64,
        high: f64,
    },
    /// `pi0` is at or below the validity threshold for the given `alpha`,
    /// which would make `f_0` (and the chain) meaningless.
    InvalidRegion {
        pi0: f64,
        alpha: f64,
        threshold: f64,
    },
    /// `conditional_range_prob` needs `0 < k <= i <= j`.
    OrderingViolation {
        k: u64,
        i: u64,
        j: u64,
    },
    /// A sampled state would not fit in 63 bits.
    StateOverflow,
    /// A symbol other than 0 or 1, or a non-finite real value.
    InvalidSymbol {
        index: usize,
    },
    EmptySeries,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::OutOfRange {
                name,
                value,
                low,
                high,
            } => write!(f, "{name} = {value} is outside ({low}, {high})"),
            Error::InvalidRegion {
                pi0,
                alpha,
                threshold,
            } => write!(
                f,
                "pi0 = {pi0} is not valid for alpha = {alpha}: pi0 must exceed {threshold:.12}"
            ),
            Error::OrderingViolation { k, i, j } => {
                write!(f, "need 0 < k <= i <= j, got k = {k}, i = {i}, j = {j}")
            }
            Error::StateOverflow => f.write_str("sampled chain state exceeds 2^63 - 1"),
            Error::InvalidSymbol { index } => write!(f, "invalid value at index {index}"),
            Error::EmptySeries => f.write_str("series is empty"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
