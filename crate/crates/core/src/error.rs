use thiserror::Error;

/// Errors raised by form construction, structure evaluation and the
/// enumeration routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("nonorientable genus must be at least 1")]
    ZeroNonorientableGenus,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is singular over Z/2")]
    Degenerate,

    #[error("dimension {dim} exceeds the limit of {limit}")]
    SizeLimit { dim: usize, limit: usize },

    #[error("form is not in standard surface form")]
    NotStandard,

    #[error("operation requires an orientable (alternating) form")]
    NotOrientable,

    #[error("operation requires a nonorientable standard form")]
    NotNonorientable,

    #[error("value {value} on basis vector {index} violates the parity constraint (self-intersection {parity})")]
    IllegalValue { index: usize, value: u8, parity: u8 },

    #[error("value {value} on basis vector {index} is out of range for Z/{modulus}")]
    OutOfRange { index: usize, value: u8, modulus: u8 },

    #[error("refinement takes 0 and 1 equally often ({count} each); the form is not symplectic")]
    ArfTie { count: u64 },

    #[error("Gauss sum ({real}, {imag}) has squared norm {norm}, expected 2^{dim}")]
    GaussNorm { real: i64, imag: i64, norm: i128, dim: usize },

    #[error("Gauss sum ({real}, {imag}) is not on an octant ray")]
    NotOnOctant { real: i64, imag: i64 },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("vector with self-intersection 1 does not give an invertible transvection")]
    NonInvertibleTransvection,

    #[error("zero vector does not give a transvection")]
    ZeroVector,

    #[error("matrix does not preserve the intersection form")]
    NotIsometry,

    #[error("genus {genus} is too small; need at least {min}")]
    GenusTooSmall { genus: usize, min: usize },

    #[error("group closure exceeded {limit} elements")]
    GroupTooLarge { limit: usize },

    #[error("census mismatch at value {value}: enumerated {enumerated}, closed form {closed_form}")]
    CensusMismatch { value: u8, enumerated: u64, closed_form: u64 },

    #[error("structure does not live on the given surface")]
    SurfaceMismatch,

    #[error("cannot compare a {left} class with a {right} class")]
    TheoryMismatch { left: &'static str, right: &'static str },

    #[error("structure belongs to a different form than the isometry")]
    FormMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
