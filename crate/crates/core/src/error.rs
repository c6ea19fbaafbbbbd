use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An inference problem needs at least one positive and one negative.
    EmptyClass { positives: usize, negatives: usize },
    NonFiniteScore { index: usize },
    DimensionMismatch { what: &'static str, expected: usize, found: usize },
    OutOfRange { what: &'static str, value: usize, lo: usize, hi: usize },
    InvalidRange { lo: usize, hi: usize, len: usize },
    /// Interleaving ranks must be nondecreasing.
    NotMonotone { position: usize },
    MalformedPattern { positives: usize, negatives: usize },
    /// The loss violates the j-monotonicity condition and the caller did not
    /// opt into unchecked use.
    UnsuitableLoss,
    SearchTooLarge { size: u128, limit: u128 },
    InvalidConfig(&'static str),
    DuplicateId { index: usize },
    Diverged { epoch: usize, objective: f64, initial: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyClass { positives, negatives } => write!(
                f,
                "inference needs at least one positive and one negative sample (got {positives} positive, {negatives} negative)"
            ),
            Error::NonFiniteScore { index } => write!(f, "non-finite value at index {index}"),
            Error::DimensionMismatch { what, expected, found } => {
                write!(f, "{what}: expected {expected}, found {found}")
            }
            Error::OutOfRange { what, value, lo, hi } => {
                write!(f, "{what} = {value} outside [{lo}, {hi}]")
            }
            Error::InvalidRange { lo, hi, len } => {
                write!(f, "invalid range [{lo}, {hi}] for length {len}")
            }
            Error::NotMonotone { position } => {
                write!(f, "interleaving ranks decrease at position {position}")
            }
            Error::MalformedPattern { positives, negatives } => write!(
                f,
                "pattern has {positives} positives and {negatives} negatives, which does not match the instance"
            ),
            Error::UnsuitableLoss => f.write_str(
                "loss is not QS-suitable (its discrete derivative is not monotone in j); use a brute-force solver or run in oracle-checked mode",
            ),
            Error::SearchTooLarge { size, limit } => {
                write!(f, "exhaustive search over {size} candidates exceeds the limit of {limit}")
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::DuplicateId { index } => write!(f, "duplicate sample id at row {index}"),
            Error::Diverged { epoch, objective, initial } => write!(
                f,
                "training diverged at epoch {epoch}: objective {objective} exceeds 10x the initial {initial}"
            ),
        }
    }
}

impl core::error::Error for Error {}
