//! Power coproducts, the scalar tables read off them, support shapes, twist transport
//! and the enveloping-algebra straightening route.

mod lie;
mod power;
mod reference;
mod support;
mod table;
mod twist;

pub use lie::{bracket_root, check_hypothesis, fit_constants, lie_straighten, r_from_lie, ruling_word, LieConstants, LieElement, LieWord};
pub use power::{braided, power_coproduct, power_coproducts, PowerCoproduct};
pub use reference::{coproduct_diff, parse_coproducts, reference_tensor, ReferenceCoproduct, ReferenceTensorTerm, TensorDiff};
pub use support::{check_support, SupportReport, SupportViolation};
pub use table::{closed_forms, extract_table, positions, Case, Position, ScalarTable};
pub use twist::{psi_tensor, twist_coproduct, twist_psi, TwistData};

use crate::engine::EngineError;
use crate::engine::Mono;
use crate::presentations::BuildError;
use crate::rootdata::Root;
use crate::scalars::ScalarError;

#[derive(Debug, thiserror::Error)]
pub enum StructureError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("unexpected term {left} (x) {right} in the coproduct of x_{root}^N")]
    SupportViolation { root: Root, left: Mono, right: Mono },
    #[error("coproduct of x_{0}^N is missing")]
    MissingCoproduct(Root),
    #[error("word has weight {found:?}, expected {expected:?}")]
    WeightMismatch { found: [i64; 2], expected: [i64; 2] },
    #[error("braiding violates q_(alpha,beta)^(N_beta) = 1 at ({0}, {1})")]
    HypothesisViolation(Root, Root),
    #[error("no structure constant for [xi_{0}, xi_{1}]")]
    MissingConstant(Root, Root),
    #[error("coefficient at {0} is not a pure scalar")]
    NotScalar(String),
}

/// `x_r1^k1 x_r2^k2 ...` as a letter monomial, factors in any order.
pub fn letters_mono(factors: &[(Root, u16)]) -> Mono {
    let mut e = [0u8; 6];
    for (r, k) in factors {
        e[r.rank()] += *k as u8;
    }
    Mono::letters(e)
}
