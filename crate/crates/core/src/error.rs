use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by plan construction, pass execution and format I/O.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A transform dimension is not a power of two.
    NotPowerOfTwo { what: &'static str, len: usize },
    /// A transform dimension exceeds the configured maximum.
    DimensionTooLarge { what: &'static str, len: usize, max: usize },
    /// An argument fell outside its valid range.
    Domain {
        what: &'static str,
        value: usize,
        bound: usize,
    },
    /// Two buffer shapes that must agree do not.
    ShapeMismatch {
        what: &'static str,
        expected: (usize, usize),
        actual: (usize, usize),
    },
    /// A pass table does not match the buffer extent it is applied to.
    TableMismatch {
        axis: &'static str,
        table_len: usize,
        extent: usize,
    },
    /// Input rows of differing lengths.
    RaggedGrid {
        row: usize,
        expected: usize,
        actual: usize,
    },
    /// Empty input where at least one sample is required.
    Empty,
    /// A buffer element is NaN or infinite.
    NonFinite { row: usize, col: usize },
    /// Scale factor must be finite and nonzero.
    BadScaleFactor,
    /// A sample fell outside the representable output range.
    SampleOutOfRange { row: usize, col: usize, value: f64 },
    /// Malformed PGM input; `offset` is the byte position of the problem.
    PgmParse { offset: usize, reason: String },
    /// Malformed complex CSV input; `line` is 1-based.
    CsvParse { line: usize, reason: String },
    /// Backend selection string did not parse.
    BadBackendSpec(String),
    /// The backend could not start its worker threads.
    BackendInit(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPowerOfTwo { what, len } => {
                write!(f, "{what} must be a power of two (got {len})")
            }
            Error::DimensionTooLarge { what, len, max } => {
                write!(f, "{what} {len} exceeds the maximum supported dimension {max}")
            }
            Error::Domain { what, value, bound } => {
                write!(f, "{what} {value} out of range (bound {bound})")
            }
            Error::ShapeMismatch {
                what,
                expected,
                actual,
            } => write!(
                f,
                "{what}: expected {}x{}, got {}x{}",
                expected.0, expected.1, actual.0, actual.1
            ),
            Error::TableMismatch {
                axis,
                table_len,
                extent,
            } => write!(
                f,
                "table of length {table_len} does not match {axis} extent {extent}"
            ),
            Error::RaggedGrid {
                row,
                expected,
                actual,
            } => write!(
                f,
                "ragged grid: row {row} has {actual} samples, expected {expected}"
            ),
            Error::Empty => write!(f, "input must contain at least one sample"),
            Error::NonFinite { row, col } => {
                write!(f, "non-finite sample at row {row}, col {col}")
            }
            Error::BadScaleFactor => write!(f, "scale factor must be finite and nonzero"),
            Error::SampleOutOfRange { row, col, value } => write!(
                f,
                "sample {value} at row {row}, col {col} outside [0, 1]"
            ),
            Error::PgmParse { offset, reason } => {
                write!(f, "PGM parse error at byte {offset}: {reason}")
            }
            Error::CsvParse { line, reason } => {
                write!(f, "CSV parse error at line {line}: {reason}")
            }
            Error::BadBackendSpec(spec) => write!(
                f,
                "invalid backend '{spec}' (expected 'serial' or 'parallel[:workers]')"
            ),
            Error::BackendInit(reason) => write!(f, "failed to start backend: {reason}"),
        }
    }
}

impl std::error::Error for Error {}
