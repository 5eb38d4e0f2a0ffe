use core::fmt;

/// Errors raised by the algebraic core.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An operator was not square where a square one is required.
    NotSquare { rows: usize, cols: usize },
    /// Operand shapes do not match.
    DimensionMismatch { expected: usize, found: usize },
    /// Dense routines are limited to small operators.
    TooLarge { dim: usize, max: usize },
    /// Two interpolation nodes are too close to separate.
    DegenerateNodes { first: usize, second: usize, gap: f64 },
    /// Composition elements with different signatures were combined.
    SignatureMismatch,
    /// Power exponent out of range (zero, or even where odd is required).
    InvalidExponent(usize),
    /// Input is not a tripotent; carries the residual of `{xxx} = 2x`.
    NotATripotent { residual: f64 },
    /// The invariant triple of a tripotent does not match any rank.
    InconsistentInvariants { norm: f64, sharp_norm: f64, det_sq: f64 },
    /// A Peirce projector trace was not close to an integer.
    PeirceTrace { index: usize, trace: f64 },
    /// Element has mass outside the requested subspace.
    OutOfSubspace { mass: f64 },
    /// The octonion is not a null vector of unit Hermitian norm.
    NotNullUnit { hermitian: f64, norm: f64 },
    /// Projective point violates the defining equations of its manifold.
    NotOnManifold { residual: f64 },
    /// Chart inversion produced an inconsistent `V_0(e_1)` component.
    ChartMismatch { residual: f64 },
    /// Point is not on the expected boundary stratum.
    WrongStratum { expected: usize, found: Option<usize> },
    /// Point is interior or exterior where a boundary point was required.
    NotOnBoundary,
    /// Complex coordinates given to a real algebra.
    NotReal,
    /// NaN or infinite value encountered.
    NonFinite,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::NotSquare { rows, cols } => write!(f, "operator is {rows}x{cols}, expected square"),
            Self::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Self::TooLarge { dim, max } => write!(f, "dimension {dim} exceeds limit {max}"),
            Self::DegenerateNodes { first, second, gap } => {
                write!(f, "nodes {first} and {second} collide (gap {gap:e})")
            }
            Self::SignatureMismatch => write!(f, "composition algebra signatures differ"),
            Self::InvalidExponent(k) => write!(f, "invalid exponent {k}"),
            Self::NotATripotent { residual } => {
                write!(f, "not a tripotent: |{{xxx}} - 2x| = {residual:e}")
            }
            Self::InconsistentInvariants { norm, sharp_norm, det_sq } => {
                write!(f, "tripotent invariants ({norm}, {sharp_norm}, {det_sq}) match no rank; input looks corrupted")
            }
            Self::PeirceTrace { index, trace } => {
                write!(f, "Peirce projector P{index} has non-integral trace {trace}")
            }
            Self::OutOfSubspace { mass } => write!(f, "element leaves the subspace (mass {mass:e})"),
            Self::NotNullUnit { hermitian, norm } => {
                write!(f, "expected (b|b) = 1 and n(b) = 0, got {hermitian} and {norm:e}")
            }
            Self::NotOnManifold { residual } => {
                write!(f, "point is off the manifold (residual {residual:e})")
            }
            Self::ChartMismatch { residual } => {
                write!(f, "chart inversion mismatch (residual {residual:e})")
            }
            Self::WrongStratum { expected, found } => match found {
                Some(k) => write!(f, "expected boundary stratum {expected}, found stratum {k}"),
                None => write!(f, "expected boundary stratum {expected}, point is not on the boundary"),
            },
            Self::NotOnBoundary => write!(f, "point is not on the boundary"),
            Self::NotReal => write!(f, "complex coordinate in a real algebra"),
            Self::NonFinite => write!(f, "non-finite value"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
