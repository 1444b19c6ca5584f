use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("conductor mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    ConductorMismatch(u32, u32),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("structure mismatch: {0}")]
    StructureMismatch(String),

    #[error("family is not translation invariant (g = {g}, f = T_{point}, u = e({module_point}, {coord}))")]
    NotTInvariant {
        g: usize,
        point: usize,
        module_point: usize,
        coord: usize,
    },

    #[error("not an algebra automorphism: {0}")]
    NotAutomorphism(String),

    #[error("matrix is singular")]
    Singular,

    #[error("span is not closed: {0}")]
    NotClosed(String),

    #[error("subalgebra is not irreducible")]
    NotIrreducible,

    #[error("span does not factor as an ideal: {0}")]
    ShapeFailure(String),

    #[error("invalid chi table: {0}")]
    InvalidChi(String),

    #[error("degree budget exceeded: {0}")]
    BudgetOverflow(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("decomposition failed: {0}")]
    Analysis(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Whether the error comes from malformed input rather than from a
    /// mathematical check failing.
    pub fn is_input(&self) -> bool {
        !matches!(
            self,
            Error::NotTInvariant { .. }
                | Error::NotAutomorphism(_)
                | Error::Singular
                | Error::NotClosed(_)
                | Error::NotIrreducible
                | Error::ShapeFailure(_)
                | Error::InvalidChi(_)
                | Error::Analysis(_)
        )
    }
}
