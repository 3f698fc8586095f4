use std::sync::Arc;

use rayon::prelude::*;

use super::StructureError;
use crate::engine::{GeneratorMap, Kind, Mono, Tensor};
use crate::presentations::build;
use crate::rootdata::{BraidingConfig, Root, ROOTS};

/// `Delta(x_root^(N_root))` in the tensor square of the bosonized pre-Nichols algebra.
#[derive(Clone, Debug)]
pub struct PowerCoproduct {
    pub root: Root,
    pub exponent: u16,
    pub tensor: Tensor,
}

pub fn power_coproduct(map: &GeneratorMap, root: Root) -> Result<PowerCoproduct, StructureError> {
    let k = map.source.config.n_alpha(root);
    let t = map.power_image(root, k as u8)?;
    Ok(PowerCoproduct { root, exponent: k, tensor: (*t).clone() })
}

/// All six power coproducts for a braiding, in convex order.
pub fn power_coproducts(config: BraidingConfig) -> Result<Vec<PowerCoproduct>, StructureError> {
    let p = Arc::new(build(Kind::PreNichols, config, &[], None)?);
    let map = GeneratorMap::coproduct(p);
    ROOTS.par_iter().map(|r| power_coproduct(&map, *r)).collect()
}

/// Braided form of a bosonized coproduct: drops the group part `g^(deg right)` from
/// each left leg. Returns `None` if some left leg carries a different group part.
pub fn braided(t: &Tensor) -> Option<Tensor> {
    let mut out = Tensor::zero();
    for ((l, r), c) in t.iter() {
        let d = r.letter_degree();
        let g = [l.g[0] as i64 - r.g[0] as i64, l.g[1] as i64 - r.g[1] as i64];
        if g != d {
            return None;
        }
        out.add_term_owned(Mono::letters(l.e), *r, c.clone());
    }
    Some(out)
}
