use thiserror::Error;

use crate::geometry::ManifoldKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("manifold kind mismatch: {0} vs {1}")]
    KindMismatch(ManifoldKind, ManifoldKind),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid polyline: {0}")]
    InvalidPolyline(String),

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A geodesic average was requested outside the region where it is defined.
    #[error("geodesic domain error at t = {t}: {reason}")]
    Domain { t: f64, reason: String },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("round {round}, index {index}: {source}")]
    InRound {
        round: usize,
        index: usize,
        source: Box<Error>,
    },
}

impl Error {
    /// True for errors raised while computing (domain, convergence, shrinkage)
    /// as opposed to rejected inputs.
    pub fn is_numeric(&self) -> bool {
        match self {
            Error::Domain { .. } | Error::Numeric(_) => true,
            Error::InRound { source, .. } => source.is_numeric(),
            _ => false,
        }
    }

    pub(crate) fn in_round(self, round: usize, index: usize) -> Self {
        Error::InRound {
            round,
            index,
            source: Box::new(self),
        }
    }
}
