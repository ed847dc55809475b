use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("series is not a unit: constant term is zero")]
    NotUnit,

    #[error("vector field is not invertible for the multiplication")]
    NotInvertible,

    #[error("not an eventual identity: {0}")]
    NotEventualIdentity(String),

    #[error("map is not S2-equivariant")]
    NotEquivariant,

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("resource limit exceeded: {what} needs {needed}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("series evaluation at a non-origin point would use truncated data")]
    CapOverflow,

    #[error("invalid rational literal {0:?}")]
    BadRational(String),

    #[error("{0}")]
    Parse(#[from] crate::dsl::ParseError),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
