use serde::Serialize;

use super::StructureError;
use crate::engine::{Element, Mono, Tensor};
use crate::rootdata::{BraidingConfig, Root, ROOTS};
use crate::scalars::Cyclo;

/// Transport data from the braiding `source` to `target` (same `N`).
///
/// `sigma` is the bicharacter on `Z^2` with `sigma(g_1, g_2) = q^(a_source - a_target)` and
/// all other generator values 1; `t[r]` is the exponent of `q` in `t_r`.
#[derive(Clone, Debug, Serialize)]
pub struct TwistData {
    pub source: BraidingConfig,
    pub target: BraidingConfig,
    pub sigma: [[i64; 2]; 2],
    pub t: [i64; 6],
}

impl TwistData {
    pub fn new(source: BraidingConfig, target: BraidingConfig) -> Result<Self, StructureError> {
        if source.n != target.n {
            return Err(StructureError::NotScalar(format!("orders {} and {} differ", source.n, target.n)));
        }
        let n = source.n as i64;
        let mut sigma = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in i..2 {
                sigma[i][j] = (source.q_exp(i + 1, j + 1) - target.q_exp(i + 1, j + 1)).rem_euclid(n);
            }
        }
        let mut data = TwistData { source, target, sigma, t: [0; 6] };
        for r in [Root::R12, Root::R112, Root::R1112, Root::Beta] {
            let (a, b) = r.shirshov().expect("non-simple root");
            let v = data.sigma_exp(a.degree(), b.degree()) + data.t[a.rank()] + data.t[b.rank()];
            data.t[r.rank()] = v.rem_euclid(n);
        }
        Ok(data)
    }

    pub fn n(&self) -> u16 {
        self.source.n
    }

    pub fn sigma_exp(&self, u: [i64; 2], v: [i64; 2]) -> i64 {
        let mut e = 0;
        for i in 0..2 {
            for j in 0..2 {
                e += u[i] * v[j] * self.sigma[i][j];
            }
        }
        e.rem_euclid(self.source.n as i64)
    }

    pub fn sigma(&self, u: [i64; 2], v: [i64; 2]) -> Cyclo {
        Cyclo::qpow(self.n(), self.sigma_exp(u, v))
    }

    pub fn t(&self, r: Root) -> Cyclo {
        Cyclo::qpow(self.n(), self.t[r.rank()])
    }

    /// Exponent of the rescaling factor of a PBW letter monomial under `psi`.
    pub fn f_exp(&self, m: &Mono) -> i64 {
        let mut e = 0i64;
        for (i, ri) in ROOTS.iter().enumerate() {
            let ni = m.e[i] as i64;
            if ni == 0 {
                continue;
            }
            for (j, rj) in ROOTS.iter().enumerate().skip(i + 1) {
                let nj = m.e[j] as i64;
                e += self.sigma_exp(rj.degree(), ri.degree()) * ni * nj;
            }
            e += self.sigma_exp(ri.degree(), ri.degree()) * (ni * (ni - 1) / 2);
            e += self.t[i] * ni;
        }
        e.rem_euclid(self.source.n as i64)
    }

    pub fn f(&self, m: &Mono) -> Cyclo {
        Cyclo::qpow(self.n(), self.f_exp(m))
    }
}

/// The linear isomorphism `psi`: rescales each PBW monomial by its `f`-factor; group
/// parts are carried along unchanged.
pub fn twist_psi(e: &Element, data: &TwistData) -> Element {
    let mut out = Element::zero();
    for (m, c) in e.iter() {
        out.add_term_owned(*m, c.scale(&data.f(m)));
    }
    out
}

/// Multiplies each term of a tensor by `sigma(deg left, deg right)`, with degrees
/// those of the letter parts (the legs of the braided form).
pub fn twist_coproduct(t: &Tensor, data: &TwistData) -> Tensor {
    t.map_terms(|l, r, c| c.scale(&data.sigma(l.letter_degree(), r.letter_degree())))
}

/// `(psi (x) psi)` on a tensor.
pub fn psi_tensor(t: &Tensor, data: &TwistData) -> Tensor {
    t.map_terms(|l, r, c| c.scale(&(&data.f(l) * &data.f(r))))
}
