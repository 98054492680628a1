use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported field parameter m = {0} (supported: 1..=5)")]
    UnsupportedField(u32),
    #[error("element out of range for GF(2^{n}): {value:#x}")]
    OutOfRange { value: u32, n: u32 },
    #[error("zero element where a unit is required")]
    ZeroElement,
    #[error("zero polynomial has no well-defined root set")]
    ZeroPolynomial,
    #[error("root splitting failed after {0} attempts")]
    RootSplitting(u32),
    #[error("matrix is singular")]
    Singular,
    #[error("element is not conjugate into the diagonal torus")]
    NotTorusConjugate,
    #[error("module is not uniserial")]
    NotUniserial,
    #[error("points are not in general position")]
    NotGeneralPosition,
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("no invariant symplectic form")]
    NotSymplectic,
    #[error("psi calibration failed: hom space has dimension {0}")]
    Calibration(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate instance: {0}")]
    DegenerateInstance(&'static str),
    #[error("determinant vanishes identically for instance {0}")]
    ConjectureViolated(String),
    #[error("Las Vegas budget exhausted after {0} rounds")]
    BudgetExhausted(u64),
    #[error("element is not in the group")]
    NotInGroup,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
