use core::fmt;

/// Which inequality of the parameter domain a point violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainBound {
    /// `a > 1/(√2 cos α̃) + margin`
    LowerA,
    /// `a < 1 − margin`
    UpperA,
    /// `|α̃| < π/4 − margin`
    AlphaRange,
}

impl DomainBound {
    pub fn name(self) -> &'static str {
        match self {
            DomainBound::LowerA => "lower_a",
            DomainBound::UpperA => "upper_a",
            DomainBound::AlphaRange => "alpha_range",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A point that should lie strictly inside the unit disk does not.
    NotInDisk { modulus: f64 },
    /// `|u|² − |v|² − 1` is too far from zero to renormalize.
    NotSu11 { defect: f64 },
    /// Geodesic arc with a non-positive or non-finite radius.
    InvalidArc { radius: f64 },
    /// Octagon parameters outside the admissible region.
    OutOfDomain {
        which: DomainBound,
        bound: f64,
        value: f64,
    },
    /// A formula was evaluated outside its domain of definition.
    Domain { what: &'static str, value: f64 },
    /// Finite-difference stencil leaves the admissible region.
    StepTooLarge { h: f64 },
    /// Group-ball enumeration exceeded its element cap.
    Capacity { cap: usize },
    QuadratureNonConvergence {
        value: f64,
        error_estimate: f64,
        intervals: usize,
    },
    InsufficientSamples { got: usize, needed: usize },
    InvalidGrid { reason: &'static str },
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    /// True for errors caused by inputs outside a mathematical domain.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::NotInDisk { .. }
                | Error::OutOfDomain { .. }
                | Error::Domain { .. }
                | Error::StepTooLarge { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotInDisk { modulus } => {
                write!(f, "point with modulus {modulus} is not inside the unit disk")
            }
            Error::NotSu11 { defect } => {
                write!(f, "matrix is not in SU(1,1): |u|^2-|v|^2-1 = {defect:e}")
            }
            Error::InvalidArc { radius } => write!(f, "invalid geodesic arc radius {radius}"),
            Error::OutOfDomain {
                which,
                bound,
                value,
            } => write!(
                f,
                "parameters out of domain: {} violated (value {value}, bound {bound})",
                which.name()
            ),
            Error::Domain { what, value } => write!(f, "{what} out of domain (value {value})"),
            Error::StepTooLarge { h } => {
                write!(f, "finite-difference step {h} leaves the parameter domain")
            }
            Error::Capacity { cap } => write!(f, "group ball exceeds capacity of {cap} elements"),
            Error::QuadratureNonConvergence {
                value,
                error_estimate,
                intervals,
            } => write!(
                f,
                "quadrature did not converge: value {value}, error estimate {error_estimate:e} after {intervals} subintervals"
            ),
            Error::InsufficientSamples { got, needed } => {
                write!(f, "need at least {needed} samples, got {got}")
            }
            Error::InvalidGrid { reason } => write!(f, "invalid grid: {reason}"),
        }
    }
}

impl core::error::Error for Error {}
