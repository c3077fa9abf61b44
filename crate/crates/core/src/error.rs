use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero weight")]
    DivisionByZero,

    #[error("specialization pole")]
    SpecializationPole,

    #[error("non-unit constant term")]
    NonUnitConstant,

    #[error("constant term must be 1")]
    ConstantNotOne,

    #[error("Exp of non-augmented series")]
    NonAugmented,

    #[error("recursion polynomiality violated at degree {0}")]
    PolynomialityViolated(usize),

    #[error("expected an integral result: {0}")]
    NotIntegral(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource ceiling exceeded: {0}")]
    ResourceCeiling(String),

    #[error("parse error: {0}")]
    Parse(String),
}
