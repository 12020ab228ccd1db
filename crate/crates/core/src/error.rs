use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("layer {layer} takes {cols} inputs but the previous layer produces {prev_rows}")]
    ShapeChain {
        layer: usize,
        cols: usize,
        prev_rows: usize,
    },
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("network has no layers")]
    EmptyNetwork,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsound bounds for unit {unit}: lower {lower} > upper {upper}")]
    UnsoundBounds { unit: usize, lower: f64, upper: f64 },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("too many undetermined units for enumeration: {units} > {cap}")]
    EnumerationCap { units: usize, cap: usize },
}
