use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rootdata::{Root, ROOTS};

/// Exponents of the six root letters, indexed by convex rank.
pub type Letters = [u8; 6];

/// A PBW monomial `x_2^n5 x_12^n4 x_beta^n3 x_112^n2 x_1112^n1 x_1^n0 g_1^g0 g_2^g1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mono {
    pub e: Letters,
    pub g: [i16; 2],
}

impl Mono {
    pub const ONE: Mono = Mono { e: [0; 6], g: [0, 0] };

    pub fn letter(r: Root) -> Mono {
        let mut e = [0; 6];
        e[r.rank()] = 1;
        Mono { e, g: [0, 0] }
    }

    pub fn power(r: Root, k: u8) -> Mono {
        let mut e = [0; 6];
        e[r.rank()] = k;
        Mono { e, g: [0, 0] }
    }

    pub fn group(g: [i16; 2]) -> Mono {
        Mono { e: [0; 6], g }
    }

    pub fn letters(e: Letters) -> Mono {
        Mono { e, g: [0, 0] }
    }

    pub fn with_group(mut self, g: [i16; 2]) -> Mono {
        self.g = g;
        self
    }

    pub fn times_group(mut self, g: [i16; 2]) -> Mono {
        self.g[0] += g[0];
        self.g[1] += g[1];
        self
    }

    pub fn is_one(&self) -> bool {
        *self == Mono::ONE
    }

    pub fn has_letters(&self) -> bool {
        self.e.iter().any(|x| *x > 0)
    }

    /// Degree of the letter part in the root lattice `Z alpha_1 + Z alpha_2`.
    pub fn letter_degree(&self) -> [i64; 2] {
        letters_degree(&self.e)
    }

    pub fn group_i64(&self) -> [i64; 2] {
        [self.g[0] as i64, self.g[1] as i64]
    }

    /// Total letter count.
    pub fn length(&self) -> u32 {
        self.e.iter().map(|x| *x as u32).sum()
    }

    pub fn fmt_with(&self, letter: char) -> String {
        let mut parts = Vec::new();
        for r in ROOTS.iter().rev() {
            let k = self.e[r.rank()];
            if k == 0 {
                continue;
            }
            let name = if *r == Root::Beta { "b" } else { r.name() };
            if k == 1 {
                parts.push(format!("{letter}{name}"));
            } else {
                parts.push(format!("{letter}{name}^{k}"));
            }
        }
        for (i, e) in self.g.iter().enumerate() {
            match *e {
                0 => {}
                1 => parts.push(format!("g{}", i + 1)),
                e => parts.push(format!("g{}^{}", i + 1, e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with('x'))
    }
}

pub fn letters_degree(e: &Letters) -> [i64; 2] {
    let mut d = [0i64; 2];
    for r in ROOTS {
        let k = e[r.rank()] as i64;
        let rd = r.degree();
        d[0] += k * rd[0];
        d[1] += k * rd[1];
    }
    d
}

/// Lowest convex rank present, i.e. the rightmost letter.
pub fn lowest(e: &Letters) -> Option<usize> {
    e.iter().position(|x| *x > 0)
}

/// Highest convex rank present, i.e. the leftmost letter.
pub fn highest(e: &Letters) -> Option<usize> {
    e.iter().rposition(|x| *x > 0)
}
