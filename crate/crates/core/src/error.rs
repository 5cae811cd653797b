use crate::character::CharacterError;
use crate::cli::problem::InputError;
use crate::equivariant::EquivariantError;
use crate::group::GroupError;
use crate::linalg::LinalgError;
use crate::oracle::OracleError;
use crate::quasipoly::QuasiPolyError;

/// Pipeline error tagged with the module it came from.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("exact-linalg: {0}")]
    Linalg(LinalgError),
    #[error("group-engine: {0}")]
    Group(GroupError),
    #[error("character-engine: {0}")]
    Character(CharacterError),
    #[error("quasipoly: {0}")]
    QuasiPoly(QuasiPolyError),
    #[error("equivariant-core: {0}")]
    Equivariant(EquivariantError),
    #[error("oracle: {0}")]
    Oracle(OracleError),
    #[error("cli: {0}")]
    Input(InputError),
}

impl Error {
    pub fn module(&self) -> &'static str {
        match self {
            Error::Linalg(_) => "exact-linalg",
            Error::Group(_) => "group-engine",
            Error::Character(_) => "character-engine",
            Error::QuasiPoly(_) => "quasipoly",
            Error::Equivariant(_) => "equivariant-core",
            Error::Oracle(_) => "oracle",
            Error::Input(_) => "cli",
        }
    }
}

impl From<LinalgError> for Error {
    fn from(e: LinalgError) -> Self {
        Error::Linalg(e)
    }
}

impl From<GroupError> for Error {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Linalg(inner) => Error::Linalg(inner),
            other => Error::Group(other),
        }
    }
}

impl From<CharacterError> for Error {
    fn from(e: CharacterError) -> Self {
        Error::Character(e)
    }
}

impl From<QuasiPolyError> for Error {
    fn from(e: QuasiPolyError) -> Self {
        Error::QuasiPoly(e)
    }
}

impl From<EquivariantError> for Error {
    fn from(e: EquivariantError) -> Self {
        match e {
            EquivariantError::Linalg(inner) => Error::Linalg(inner),
            EquivariantError::Character(inner) => Error::Character(inner),
            EquivariantError::QuasiPoly(inner) => Error::QuasiPoly(inner),
            other => Error::Equivariant(other),
        }
    }
}

impl From<OracleError> for Error {
    fn from(e: OracleError) -> Self {
        Error::Oracle(e)
    }
}

impl From<InputError> for Error {
    fn from(e: InputError) -> Self {
        Error::Input(e)
    }
}
