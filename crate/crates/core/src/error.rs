use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not invertible over the integers: leading coefficient is not a unit")]
    NotInvertible,

    #[error("cannot invert the zero series")]
    ZeroSeries,

    #[error("coefficient of q^{n} is beyond precision (prec = {prec})")]
    BeyondPrecision { n: i64, prec: i64 },

    #[error("unsupported prime {0}: expected one of 2, 3, 5, 7, 13")]
    UnsupportedPrime(u32),

    #[error("gamma undefined for this prime ({0}); only 3, 5, 7 are covered")]
    GammaUndefined(u32),

    #[error(
        "lemma precondition fails: p^alpha divides m (no nonzero digit among the first {alpha})"
    )]
    LemmaPrecondition { alpha: u32 },

    #[error(
        "not a φ-polynomial within budget: residual at q^{exponent} with degree budget {max_deg}"
    )]
    NotPhiPolynomial { exponent: i64, max_deg: u32 },

    #[error("insufficient precision: need prec >= {needed}, have {available}")]
    InsufficientPrecision { needed: i64, available: i64 },

    #[error("series has a term at q^{0}; φ-decomposition needs valuation >= 1")]
    NonPositiveValuation(i64),

    #[error("φ-polynomial with a constant term")]
    ConstantTerm,

    #[error("mixed primes in φ-polynomial arithmetic: {0} vs {1}")]
    PrimeMismatch(u32, u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed data: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
