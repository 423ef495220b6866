use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unsupported residue ring p={p} f={f} e={e} level={level}: only e = 1 or e >= level are modelled")]
    UnsupportedRing { p: u32, f: u32, e: u32, level: u32 },

    #[error("vector has no unit entry")]
    NotUnimodular,

    #[error("matrix determinant is not a unit")]
    SingularMatrix,

    #[error("invalid simplex type {0:?}: entries must be positive and sum to d + 1")]
    InvalidType(Vec<usize>),

    #[error("operation requires a maximal simplex")]
    NotMaximal,

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("coefficients do not have total degree zero modulo {0}")]
    NotDegreeZero(u64),

    #[error("valuation of the zero element is undefined")]
    ZeroElement,

    #[error("component {0} is zero and has no inverse")]
    NonUnit(usize),

    #[error("component {0} is not of the form t^j * v")]
    NotAUnit(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
