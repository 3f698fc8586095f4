//! Coefficient arithmetic: the cyclotomic field and its extension by formal parameters.

mod cyclo;
mod param;
mod parse;

pub use cyclo::{cyclotomic_poly, field, Cyclo, CycloField, MAX_N};
pub use param::{Param, ParamKey, ParamScalar};
pub use parse::parse_scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
