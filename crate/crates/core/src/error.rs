use thiserror::Error;

/// Errors shared across the workbench.
///
/// Validation *failures* (an axiom that does not hold, a homomorphism
/// condition that is violated) are not errors: they are reported through
/// [`crate::ValidationReport`] entries so a caller can see every failed check
/// at once.  `Error` is reserved for inputs that are outside an operation's
/// domain altogether — malformed data, mismatched dimensions, guards.
#[derive(Debug, Error)]
pub enum Error {
    /// Input is structurally outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Text input could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A finite table has no maximal solution `v` of `x . v <= z`.
    #[error("not residuated: no greatest v with x.v <= z for x = {x}, z = {z}")]
    NotResiduated { x: usize, z: usize },

    /// A bunch with a non-trivial layer group cannot be tabulated.
    #[error("infinite chain: layer {layer} has a non-trivial group")]
    InfiniteChain { layer: String },

    /// An enumeration guard was exceeded.
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    /// A claimed chain homomorphism violates one of the defining conditions.
    #[error("not a chain homomorphism: {0}")]
    NotAHom(String),

    /// The operation needs a discretely ordered (class J) layer and none exists.
    #[error("bunch has no class-J layer")]
    NoClassJ,

    /// Input claims to satisfy a precondition but demonstrably does not.
    #[error("input contradiction: {0}")]
    InputContradiction(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
