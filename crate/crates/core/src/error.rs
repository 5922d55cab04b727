use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("the zero polynomial has no Newton polygon")]
    ZeroPolynomial,

    #[error("invalid design parameters: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("momentum derivation produced a term outside the K3/K4 template: {0}")]
    TemplateMismatch(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("classification found a reducible case but no candidate factor divides G")]
    FactorSearchFailed,

    #[error("configuration outside the workspace at sample {sample}: {msg}")]
    Workspace { sample: usize, msg: String },

    #[error("branch error at sample {sample}: {msg}")]
    Branch { sample: usize, msg: String },

    #[error("singular configuration: {0}")]
    Singular(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
