use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape has {shape} entries but strides have {strides}")]
    LengthMismatch { shape: usize, strides: usize },

    #[error("extent of axis {axis} is zero")]
    ZeroExtent { axis: usize },

    #[error("size or address computation overflows")]
    Overflow,

    #[error("expected {expected} coordinates, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("coordinate {coordinate:?} is out of bounds for shape {shape:?}")]
    CoordinateOutOfBounds {
        coordinate: Vec<usize>,
        shape: Vec<usize>,
    },

    #[error("index {index} is out of bounds for size {size}")]
    IndexOutOfBounds { index: usize, size: usize },

    #[error("operation requires a scalar view, view has dimension {dimension}")]
    NotScalar { dimension: usize },

    #[error("operation requires a view of dimension at least 1")]
    ScalarView,

    #[error("sub-view at {base:?} with shape {shape:?} exceeds shape {parent:?}")]
    SubViewOutOfBounds {
        base: Vec<usize>,
        shape: Vec<usize>,
        parent: Vec<usize>,
    },

    #[error("axis {axis} is out of range for dimension {dimension}")]
    AxisOutOfRange { axis: usize, dimension: usize },

    #[error("value {value} is out of range for axis of extent {extent}")]
    ValueOutOfRange { value: usize, extent: usize },

    #[error("{0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),

    #[error("view is not unstrided")]
    NotUnstrided,

    #[error("size mismatch: {from} elements cannot become {to}")]
    SizeMismatch { from: usize, to: usize },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("view addresses element {max_address} but buffer holds {len}")]
    ViewOutOfBuffer { max_address: usize, len: usize },

    #[error("destination has a zero stride on axis {axis} with extent > 1")]
    ZeroStrideDestination { axis: usize },

    #[error("cursor dereferenced at position {position} of {size}")]
    DereferenceAtEnd { position: usize, size: usize },

    #[error("allocation of {0} elements failed")]
    AllocationFailure(usize),

    #[error("integer division by zero")]
    DivisionByZero,

    #[error("bad magic {0:?}")]
    BadMagic([u8; 4]),

    #[error("unsupported format version {0}")]
    UnsupportedVersion(u8),

    #[error("unknown element code {0}")]
    UnknownElementCode(u8),

    #[error("unknown order code {0}")]
    UnknownOrderCode(u8),

    #[error("element kind mismatch: expected {expected}, found {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("truncated stream: expected {expected} bytes, got {got}")]
    TruncatedPayload { expected: u64, got: u64 },

    #[error("trailing bytes after payload")]
    TrailingGarbage,

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
