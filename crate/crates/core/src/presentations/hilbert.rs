use std::collections::BTreeMap;

use serde::Serialize;

use crate::engine::Presentation;
use crate::rootdata::ROOTS;

/// Graded dimensions of the letter part, keyed by `Z^2` degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub bound: [i64; 2],
    pub dims: BTreeMap<[i64; 2], u64>,
}

impl HilbertSeries {
    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    /// Dimensions by total degree `d_1 + d_2`.
    pub fn by_total_degree(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for (d, v) in &self.dims {
            *out.entry(d[0] + d[1]).or_insert(0) += v;
        }
        out
    }
}

/// Counts normal-form letter monomials of degree at most `bound` componentwise.
pub fn hilbert_series(p: &Presentation, bound: [i64; 2]) -> HilbertSeries {
    let mut dims = BTreeMap::new();
    fn rec(p: &Presentation, i: usize, deg: [i64; 2], bound: [i64; 2], dims: &mut BTreeMap<[i64; 2], u64>) {
        if i == 6 {
            *dims.entry(deg).or_insert(0) += 1;
            return;
        }
        let r = ROOTS[i];
        let rd = r.degree();
        let cap = p.bound(r).map(|b| b as i64).unwrap_or(i64::MAX);
        let mut k = 0;
        loop {
            let d = [deg[0] + k * rd[0], deg[1] + k * rd[1]];
            if k >= cap || d[0] > bound[0] || d[1] > bound[1] {
                break;
            }
            rec(p, i + 1, d, bound, dims);
            k += 1;
        }
    }
    rec(p, 0, [0, 0], bound, &mut dims);
    HilbertSeries { bound, dims }
}

/// The product `prod_alpha (1 + t^alpha + ... + t^((N_alpha - 1) alpha))`, truncated at
/// `bound`, computed as a polynomial product independent of any enumeration.
pub fn nichols_series_formula(config: &crate::rootdata::BraidingConfig, bound: [i64; 2]) -> BTreeMap<[i64; 2], u64> {
    let mut poly: BTreeMap<[i64; 2], u64> = BTreeMap::from([([0, 0], 1)]);
    for r in ROOTS {
        let rd = r.degree();
        let mut next = BTreeMap::new();
        for (d, c) in &poly {
            for k in 0..config.n_alpha(r) as i64 {
                let e = [d[0] + k * rd[0], d[1] + k * rd[1]];
                if e[0] <= bound[0] && e[1] <= bound[1] {
                    *next.entry(e).or_insert(0) += c;
                }
            }
        }
        poly = next;
    }
    poly
}
