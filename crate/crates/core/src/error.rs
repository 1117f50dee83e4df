use thiserror::Error;

/// Errors raised by the simulator.
///
/// Variants fall into three families that front ends map onto distinct exit
/// codes: input/validation problems, size-cap violations, and numerical
/// consistency failures. See [`Error::is_size_limit`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("{what} of {requested} exceeds the limit of {limit}")]
    SizeLimit {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("matrix is not unitary: max residual |U^dag U - I| = {residual:.3e}")]
    NotUnitary { residual: f64 },

    #[error("distinguishability matrix is not {property}: {detail}")]
    InvalidDistMatrix {
        property: &'static str,
        detail: String,
    },

    #[error("distribution is not normalized: total probability {total}")]
    Unnormalized { total: f64 },

    #[error("negative probability {value:.3e} for occupation {occupation:?}")]
    NegativeProbability { occupation: Vec<usize>, value: f64 },

    #[error("probability for occupation {occupation:?} has imaginary residue {residue:.3e}")]
    ImaginaryResidue { occupation: Vec<usize>, residue: f64 },

    #[error("distributions are over different bases: {0}")]
    BasisMismatch(String),

    #[error("postselection onto the symmetric subspace succeeds with probability {probability:.3e}")]
    DegeneratePostselection { probability: f64 },

    #[error("numerical consistency failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn size(what: &'static str, requested: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::SizeLimit {
            what,
            requested: requested.into(),
            limit: limit.into(),
        }
    }

    /// True when the error is a size-cap violation rather than bad input.
    pub fn is_size_limit(&self) -> bool {
        matches!(self, Error::SizeLimit { .. })
    }

    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::Shape(_) => "shape",
            Error::SizeLimit { .. } => "size_limit",
            Error::NotUnitary { .. } => "not_unitary",
            Error::InvalidDistMatrix { .. } => "invalid_dist_matrix",
            Error::Unnormalized { .. } => "unnormalized",
            Error::NegativeProbability { .. } => "negative_probability",
            Error::ImaginaryResidue { .. } => "imaginary_residue",
            Error::BasisMismatch(_) => "basis_mismatch",
            Error::DegeneratePostselection { .. } => "degenerate_postselection",
            Error::Numerical(_) => "numerical",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
