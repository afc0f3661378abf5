use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("quotient is not Artinian within truncation degree {0}")]
    NotArtinian(u32),
    #[error("elements are dependent modulo the square of the maximal ideal")]
    DependentModM2,
    #[error("morphism is not local: {0}")]
    NotLocal(String),
    #[error("morphism is not well defined: {0}")]
    NotWellDefined(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),
    #[error("relation fails on homology: {0}")]
    RelationFailsOnHomology(String),
    #[error("map is not a chain map: {0}")]
    NotChainMap(String),
    #[error("map is not invertible modulo the maximal ideal in degree {0}")]
    NotInvertibleModM(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("field mismatch: file declares {found}, session uses {session}")]
    FieldMismatch { found: String, session: String },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
