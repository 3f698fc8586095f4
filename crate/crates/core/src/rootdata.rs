//! The G2 root datum, braiding configurations and the bicharacter on `Z^2`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalars::{Cyclo, Param, ParamScalar};

/// A positive root of G2, indexed by its rank in the convex order
/// `1 < 1112 < 112 < beta < 12 < 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Root {
    R1 = 0,
    R1112 = 1,
    R112 = 2,
    Beta = 3,
    R12 = 4,
    R2 = 5,
}

pub const ROOTS: [Root; 6] = [Root::R1, Root::R1112, Root::R112, Root::Beta, Root::R12, Root::R2];

impl Root {
    pub fn rank(self) -> usize {
        self as usize
    }

    pub fn from_rank(r: usize) -> Root {
        ROOTS[r]
    }

    pub fn degree(self) -> [i64; 2] {
        match self {
            Root::R1 => [1, 0],
            Root::R1112 => [3, 1],
            Root::R112 => [2, 1],
            Root::Beta => [3, 2],
            Root::R12 => [1, 1],
            Root::R2 => [0, 1],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Root::R1 => "1",
            Root::R1112 => "1112",
            Root::R112 => "112",
            Root::Beta => "beta",
            Root::R12 => "12",
            Root::R2 => "2",
        }
    }

    pub fn from_name(s: &str) -> Option<Root> {
        match s {
            "1" => Some(Root::R1),
            "1112" => Some(Root::R1112),
            "112" => Some(Root::R112),
            "beta" | "b" | "11212" => Some(Root::Beta),
            "12" => Some(Root::R12),
            "2" => Some(Root::R2),
            _ => None,
        }
    }

    /// Whether the power bound of this root is `M = N/gcd(N,3)` rather than `N`.
    pub fn is_short_power(self) -> bool {
        matches!(self, Root::R2 | Root::R1112 | Root::Beta)
    }

    /// Shirshov decomposition `x_root = [x_left, x_right]_c` for non-simple roots.
    pub fn shirshov(self) -> Option<(Root, Root)> {
        match self {
            Root::R12 => Some((Root::R1, Root::R2)),
            Root::R112 => Some((Root::R1, Root::R12)),
            Root::R1112 => Some((Root::R1, Root::R112)),
            Root::Beta => Some((Root::R112, Root::R12)),
            _ => None,
        }
    }

    /// The deformation parameter attached to this root's power relation.
    pub fn mu(self) -> Param {
        match self {
            Root::R1 => Param::M1,
            Root::R2 => Param::M2,
            Root::R12 => Param::M12,
            Root::R112 => Param::M112,
            Root::R1112 => Param::M1112,
            Root::Beta => Param::MBeta,
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("N must exceed 3 (got {0})")]
    SmallOrder(i64),
    #[error("N must not exceed {max} (got {n})")]
    LargeOrder { n: i64, max: u16 },
    #[error("parameter {0} is not admissible for this braiding")]
    InadmissibleParameter(String),
}

/// A Cartan-G2 braiding `q_11 = q`, `q_22 = q^3`, `q_12 = q^a`, `q_21 = q^(-3-a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidingConfig {
    #[serde(rename = "N")]
    pub n: u16,
    pub a: i64,
}

impl BraidingConfig {
    pub fn new(n: i64, a: i64) -> Result<Self, ConfigError> {
        if n <= 3 {
            return Err(ConfigError::SmallOrder(n));
        }
        if n > crate::scalars::MAX_N as i64 {
            return Err(ConfigError::LargeOrder { n, max: crate::scalars::MAX_N });
        }
        Ok(BraidingConfig { n: n as u16, a: a.rem_euclid(n) })
    }

    pub fn m(&self) -> u16 {
        let n = self.n;
        if n.is_multiple_of(3) {
            n / 3
        } else {
            n
        }
    }

    pub fn n_alpha(&self, r: Root) -> u16 {
        if r.is_short_power() {
            self.m()
        } else {
            self.n
        }
    }

    /// Exponent `e` with `q_ij = q^e`, for `i, j` in `{1, 2}`.
    pub fn q_exp(&self, i: usize, j: usize) -> i64 {
        match (i, j) {
            (1, 1) => 1,
            (1, 2) => self.a,
            (2, 1) => -3 - self.a,
            (2, 2) => 3,
            _ => panic!("braiding index out of range"),
        }
    }

    /// Exponent of `q` in the bicharacter value `b(u, v)`, reduced mod `N`.
    pub fn bichar_exp(&self, u: [i64; 2], v: [i64; 2]) -> i64 {
        let e = u[0] * v[0] * self.q_exp(1, 1)
            + u[0] * v[1] * self.q_exp(1, 2)
            + u[1] * v[0] * self.q_exp(2, 1)
            + u[1] * v[1] * self.q_exp(2, 2);
        e.rem_euclid(self.n as i64)
    }

    pub fn bichar(&self, u: [i64; 2], v: [i64; 2]) -> Cyclo {
        Cyclo::qpow(self.n, self.bichar_exp(u, v))
    }

    /// The degenerate braiding `((q, q^3), (q, q^3))`, possible only for `N = 7`.
    pub fn is_degenerate(&self) -> bool {
        self.n == 7 && self.a.rem_euclid(7) == 3
    }

    /// Whether the character `chi_v` attached to degree `v` is trivial on `Gamma`.
    pub fn character_trivial(&self, v: [i64; 2]) -> bool {
        self.bichar_exp([1, 0], v) == 0 && self.bichar_exp([0, 1], v) == 0
    }

    /// Admissibility of each formal parameter: `l1` needs `chi_11112` trivial, `l2` needs
    /// `chi_122` trivial, `mu_alpha` needs `chi_alpha^(N_alpha)` trivial. The group-side
    /// conditions never trigger since `Gamma` is free abelian.
    pub fn admissible(&self, p: Param) -> bool {
        match p {
            Param::L1 => self.character_trivial([4, 1]),
            Param::L2 => self.character_trivial([1, 2]),
            _ => {
                let r = crate::rootdata::ROOTS.iter().copied().find(|r| r.mu() == p).expect("mu parameter");
                let d = r.degree();
                let k = self.n_alpha(r) as i64;
                self.character_trivial([d[0] * k, d[1] * k])
            }
        }
    }

    /// Checks a set of parameters declared nonzero.
    pub fn check_params(&self, params: &[Param]) -> Result<(), ConfigError> {
        for p in params {
            if !self.admissible(*p) {
                return Err(ConfigError::InadmissibleParameter(p.token().to_string()));
            }
        }
        Ok(())
    }

    pub fn qpow(&self, k: i64) -> ParamScalar {
        ParamScalar::qpow(self.n, k)
    }
}

/// Degree arithmetic helpers on `Z^2`.
pub fn deg_add(a: [i64; 2], b: [i64; 2]) -> [i64; 2] {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn deg_scale(a: [i64; 2], k: i64) -> [i64; 2] {
    [a[0] * k, a[1] * k]
}
