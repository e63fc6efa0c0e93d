use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A multi-index or variable index falls outside the grid.
    #[error("index out of range: {0}")]
    Range(String),

    /// Operands live on different grids or have incompatible sizes.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A check was asked for something the truncation cannot support
    /// (empty interior, orthogonality depth beyond the grid, ...).
    #[error("configuration error: {0}")]
    Config(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// The two independent routes to the same subspace disagree.
    #[error("route mismatch: {0}")]
    RouteMismatch(String),
}
