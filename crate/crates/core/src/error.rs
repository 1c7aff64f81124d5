use thiserror::Error;

pub type Result<T> = std::result::Result<T, CadenceError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CadenceError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("convolution span {span} exceeds the limit of {limit}")]
    SpanLimit { span: u64, limit: u64 },
    #[error("weight sets may not contain zero")]
    ZeroWeight,
}

impl CadenceError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        CadenceError::InvalidArgument(msg.into())
    }
}
