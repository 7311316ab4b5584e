use thiserror::Error;

/// Errors raised while building or computing with the algebraic objects of
/// this crate. Axiom failures of already-constructed data are not errors;
/// they are reported through [`crate::report::ValidationReport`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("not an action: {0}")]
    NotAnAction(String),

    #[error("malformed data: {0}")]
    Malformed(String),

    #[error("enumeration bound exceeded: {what} needs {needed}, budget is {budget}")]
    BoundExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("map is not surjective: {0}")]
    NotSurjective(String),

    #[error(
        "kernel is not central: element {witness} of the kernel does not commute with {other}"
    )]
    KernelNotCentral { witness: usize, other: usize },

    #[error("not a cocycle: {0}")]
    NotACocycle(String),

    #[error("image of the boundary map is not normal: {0}")]
    NonNormalImage(String),

    #[error("derived structure check failed: {0}")]
    StructureFailure(String),

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("element is not fixed: {0}")]
    NotFixed(String),

    #[error("exactness failure at {junction}: {witness}")]
    ExactnessFailure { junction: String, witness: String },

    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn bound_check(what: &str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BoundExceeded {
            what: what.to_string(),
            needed,
            budget,
        })
    } else {
        Ok(())
    }
}
