use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports. The CLI maps these onto exit codes via
/// [`Error::is_resource_cap`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("modulus has degree {got}, expected {expected}")]
    ModulusDegreeMismatch { expected: usize, got: usize },

    #[error("modulus is not monic")]
    ModulusNotMonic,

    #[error("modulus is reducible over F_{p}")]
    ModulusReducible { p: u64 },

    #[error("coefficient {value} is not reduced modulo {p}")]
    CoefficientOutOfRange { value: u64, p: u64 },

    #[error("field F_{p}^{n} exceeds the supported size")]
    FieldTooLarge { p: u64, n: usize },

    #[error("element encoding {0} is outside the field")]
    InvalidElement(u128),

    #[error("division by zero")]
    DivideByZero,

    #[error("{k} does not divide the extension degree {n}")]
    NotDivisor { k: usize, n: usize },

    #[error("element is not in the subfield F_p^{k}")]
    NotInSubfield { k: usize },

    #[error("zero input")]
    ZeroInput,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial has no root in the field")]
    NoRootFound,

    #[error("coefficient must be nonzero")]
    ZeroCoefficient,

    #[error("field of order {order} is too large for exact character sums")]
    FieldTooLargeForCharSum { order: u128 },

    #[error("{s} does not divide the multiplicative group order")]
    NotGroupDivisor { s: u128 },

    #[error("extension degree {n} is odd")]
    OddDegree { n: usize },

    #[error("extension degree {n} is not {r} * {k}")]
    DegreeMismatch { n: usize, r: usize, k: usize },

    #[error("characteristic 5 is not supported here")]
    CharFive,

    #[error("characteristic {0} is excluded by the theorem's hypotheses")]
    CharExcluded(u64),

    #[error("characteristic {got} does not match the required {expected}")]
    WrongCharacteristic { expected: u64, got: u64 },

    #[error("even characteristic is not supported here")]
    EvenCharacteristic,

    #[error("gcd condition violated: {0}")]
    GcdViolation(String),

    #[error("u and v are both zero")]
    UvBothZero,

    #[error("k = {k} is not coprime to {m}")]
    KNotCoprime { k: usize, m: usize },

    #[error("u must be nonzero")]
    UZero,

    #[error("v must be nonzero")]
    VZero,

    #[error("coefficient a is excluded (must lie in F_p^k minus {{0, -1}})")]
    AExcluded,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by a field or search being too large to run.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::FieldTooLarge { .. } | Error::FieldTooLargeForCharSum { .. } | Error::CapExceeded(_)
        )
    }
}
