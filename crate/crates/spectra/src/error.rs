use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("empty germ: {0}")]
    EmptyGerm(String),
    #[error("germ has a nonzero constant term")]
    ConstantTerm,
    #[error("not convenient: axis {axis}")]
    NotConvenient { axis: String },
    #[error("not simplicial: {0}")]
    NotSimplicial(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("degenerate facet: {0}")]
    DegenerateFacet(String),
    #[error("singular matrix: {0}")]
    SingularMatrix(String),
    #[error("point {0:?} lies outside every cone of the subdivision")]
    OutsideCones(Vec<i64>),
    #[error("negative coordinate in {0:?}")]
    NegativeCoordinate(Vec<i64>),
    #[error("unclassifiable basis element: {0}")]
    Unclassifiable(String),
    #[error("oracle did not stabilize below degree {ceiling} (possibly non-isolated)")]
    NoStabilization { ceiling: u32 },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::UnknownVariable { .. }
            | Error::EmptyGerm(_)
            | Error::ConstantTerm => 2,
            Error::NotConvenient { .. }
            | Error::NotSimplicial(_)
            | Error::Degenerate(_)
            | Error::DegenerateFacet(_)
            | Error::NoStabilization { .. } => 3,
            _ => 4,
        }
    }
}
