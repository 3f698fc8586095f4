//! Exact arithmetic in the cyclotomic field `Q(q) = Q[q]/Phi_N(q)`.
//!
//! Elements are stored as coordinate vectors in the basis `1, q, ..., q^(phi(N)-1)`.
//! Integral elements whose coordinates fit in `i64` use an inline fast path; anything
//! else falls back to arbitrary-precision numerators over a common positive denominator.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::{smallvec, SmallVec};

use super::ScalarError;

/// Largest supported order of `q`.
pub const MAX_N: u16 = 255;

/// Precomputed reduction data for one value of `N`.
#[derive(Debug)]
pub struct CycloField {
    pub n: u16,
    pub phi: usize,
    /// Coefficients of `Phi_N`, lowest degree first (monic, length `phi + 1`).
    pub poly: Vec<i64>,
    /// For every `j < N`, the coordinates of `q^j`.
    red: Vec<Vec<i64>>,
}

static FIELDS: [OnceLock<CycloField>; MAX_N as usize + 1] = [const { OnceLock::new() }; MAX_N as usize + 1];

/// Returns the reduction data for `N`, building it on first use.
pub fn field(n: u16) -> &'static CycloField {
    assert!((1..=MAX_N).contains(&n), "cyclotomic order {n} out of range");
    FIELDS[n as usize].get_or_init(|| CycloField::build(n))
}

fn poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let mut quot = vec![0i64; num.len() + 1 - dl];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl - 1] / den[dl - 1];
        quot[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|r| *r == 0));
    quot
}

/// Integer coefficients of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u16) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_divexact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

impl CycloField {
    fn build(n: u16) -> Self {
        let poly = cyclotomic_poly(n);
        let phi = poly.len() - 1;
        let mut red = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            red.push(cur.clone());
            let top = cur[phi - 1];
            for k in (1..phi).rev() {
                cur[k] = cur[k - 1] - top * poly[k];
            }
            cur[0] = -top * poly[0];
        }
        CycloField { n, phi, poly, red }
    }

    pub fn qpow_coords(&self, k: usize) -> &[i64] {
        &self.red[k % self.n as usize]
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(SmallVec<[i64; 6]>),
    Big(Box<BigRepr>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct BigRepr {
    num: Vec<BigInt>,
    den: BigInt,
}

/// An element of `Q(q)` for a fixed primitive `N`-th root of unity `q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    n: u16,
    repr: Repr,
}

impl Cyclo {
    pub fn zero(n: u16) -> Self {
        let phi = field(n).phi;
        Cyclo { n, repr: Repr::Small(smallvec![0; phi]) }
    }

    pub fn one(n: u16) -> Self {
        Self::from_int(n, 1)
    }

    pub fn from_int(n: u16, v: i64) -> Self {
        let mut c = Self::zero(n);
        if let Repr::Small(s) = &mut c.repr {
            s[0] = v;
        }
        c
    }

    pub fn from_bigint(n: u16, v: BigInt) -> Self {
        let phi = field(n).phi;
        let mut num = vec![BigInt::zero(); phi];
        num[0] = v;
        Self::from_big(n, num, BigInt::one())
    }

    pub fn from_rational(n: u16, v: &BigRational) -> Self {
        let phi = field(n).phi;
        let mut num = vec![BigInt::zero(); phi];
        num[0] = v.numer().clone();
        Self::from_big(n, num, v.denom().clone())
    }

    /// `q^k` for any integer `k`.
    pub fn qpow(n: u16, k: i64) -> Self {
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        Cyclo { n, repr: Repr::Small(SmallVec::from_slice(f.qpow_coords(e))) }
    }

    /// Builds a value from coordinates in the power basis `1, q, ..., q^(len-1)`,
    /// reducing modulo `Phi_N` when `len` exceeds `phi(N)`.
    pub fn from_coeffs(n: u16, coeffs: &[i64]) -> Self {
        let mut acc = Self::zero(n);
        for (k, c) in coeffs.iter().enumerate() {
            if *c != 0 {
                acc += &Self::qpow(n, k as i64).scale_int(*c);
            }
        }
        acc
    }

    fn from_big(n: u16, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        assert!(!den.is_zero(), "zero denominator");
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            den /= &g;
            for c in num.iter_mut() {
                *c /= &g;
            }
        }
        if den.is_one() {
            let small: Option<SmallVec<[i64; 6]>> = num.iter().map(|c| c.to_i64()).collect();
            if let Some(s) = small {
                return Cyclo { n, repr: Repr::Small(s) };
            }
        }
        Cyclo { n, repr: Repr::Big(Box::new(BigRepr { num, den })) }
    }

    fn to_big(&self) -> (Vec<BigInt>, BigInt) {
        match &self.repr {
            Repr::Small(s) => (s.iter().map(|c| BigInt::from(*c)).collect(), BigInt::one()),
            Repr::Big(b) => (b.num.clone(), b.den.clone()),
        }
    }

    pub fn order(&self) -> u16 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small(s) => s.iter().all(|c| *c == 0),
            Repr::Big(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small(s) => s[0] == 1 && s[1..].iter().all(|c| *c == 0),
            Repr::Big(_) => false,
        }
    }

    /// Coordinates as exact rationals.
    pub fn coords(&self) -> Vec<BigRational> {
        let (num, den) = self.to_big();
        num.into_iter().map(|c| BigRational::new(c, den.clone())).collect()
    }

    /// Integer numerator coordinates and the positive common denominator.
    pub fn numer_denom(&self) -> (Vec<BigInt>, BigInt) {
        self.to_big()
    }

    pub fn scale_int(&self, k: i64) -> Self {
        if let Repr::Small(s) = &self.repr {
            let out: Option<SmallVec<[i64; 6]>> = s.iter().map(|c| c.checked_mul(k)).collect();
            if let Some(out) = out {
                return Cyclo { n: self.n, repr: Repr::Small(out) };
            }
        }
        let (num, den) = self.to_big();
        let kb = BigInt::from(k);
        Self::from_big(self.n, num.into_iter().map(|c| c * &kb).collect(), den)
    }

    /// Multiplies by `q^k`.
    pub fn mul_qpow(&self, k: i64) -> Self {
        let e = k.rem_euclid(self.n as i64);
        if e == 0 {
            return self.clone();
        }
        self * &Self::qpow(self.n, e)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.n);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Field inverse, by solving the linear system of multiplication by `self`.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.n;
        let phi = field(n).phi;
        // column j holds the coordinates of self * q^j
        let cols: Vec<Vec<BigRational>> = (0..phi).map(|j| self.mul_qpow(j as i64).coords()).collect();
        let mut m: Vec<Vec<BigRational>> = (0..phi)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..phi).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for c in 0..phi {
            let p = (c..phi).find(|&r| !m[r][c].is_zero()).ok_or(ScalarError::DivisionByZero)?;
            m.swap(c, p);
            let piv = m[c][c].clone();
            for v in m[c].iter_mut() {
                *v = &*v / &piv;
            }
            for r in 0..phi {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    let (src, dst) = if r < c {
                        let (a, b) = m.split_at_mut(c);
                        (&b[0], &mut a[r])
                    } else {
                        let (a, b) = m.split_at_mut(r);
                        (&a[c], &mut b[0])
                    };
                    for (d, s) in dst.iter_mut().zip(src.iter()) {
                        *d = &*d - &f * s;
                    }
                }
            }
        }
        let sol: Vec<BigRational> = m.into_iter().map(|row| row[phi].clone()).collect();
        Ok(Self::from_rationals(n, &sol))
    }

    pub fn from_rationals(n: u16, coords: &[BigRational]) -> Self {
        let mut den = BigInt::one();
        for c in coords {
            den = den.lcm(c.denom());
        }
        let num = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Self::from_big(n, num, den)
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.n, other.n, "mixing cyclotomic orders {} and {}", self.n, other.n);
    }

    fn add_big(&self, other: &Self, sign: i64) -> Self {
        let (an, ad) = self.to_big();
        let (bn, bd) = other.to_big();
        let den = &ad * &bd;
        let num = an
            .iter()
            .zip(bn.iter())
            .map(|(x, y)| {
                let t = y * &ad;
                x * &bd + if sign < 0 { -t } else { t }
            })
            .collect();
        Self::from_big(self.n, num, den)
    }

    fn mul_small(&self, a: &[i64], b: &[i64]) -> Option<SmallVec<[i64; 6]>> {
        let f = field(self.n);
        let n = f.n as usize;
        let phi = f.phi;
        let mut acc: SmallVec<[i128; 12]> = smallvec![0; n];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if *y == 0 {
                    continue;
                }
                let mut k = i + j;
                if k >= n {
                    k -= n;
                }
                acc[k] = acc[k].checked_add((*x as i128) * (*y as i128))?;
            }
        }
        let mut out: SmallVec<[i128; 12]> = SmallVec::from_slice(&acc[..phi]);
        for (j, aj) in acc.iter().enumerate().skip(phi) {
            if *aj == 0 {
                continue;
            }
            for (o, r) in out.iter_mut().zip(f.red[j].iter()) {
                if *r != 0 {
                    *o = o.checked_add(aj.checked_mul(*r as i128)?)?;
                }
            }
        }
        out.iter().map(|v| i64::try_from(*v).ok()).collect()
    }

    fn mul_big(&self, other: &Self) -> Self {
        let f = field(self.n);
        let n = f.n as usize;
        let phi = f.phi;
        let (an, ad) = self.to_big();
        let (bn, bd) = other.to_big();
        let mut acc = vec![BigInt::zero(); n];
        for (i, x) in an.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bn.iter().enumerate() {
                acc[(i + j) % n] += x * y;
            }
        }
        let mut out: Vec<BigInt> = acc[..phi].to_vec();
        for (j, aj) in acc.iter().enumerate().skip(phi) {
            for (o, r) in out.iter_mut().zip(f.red[j].iter()) {
                if *r != 0 {
                    *o += aj * *r;
                }
            }
        }
        Self::from_big(self.n, out, ad * bd)
    }
}

impl std::ops::Add<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn add(self, other: &Cyclo) -> Cyclo {
        let mut r = self.clone();
        r += other;
        r
    }
}

impl std::ops::Sub<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn sub(self, other: &Cyclo) -> Cyclo {
        let mut r = self.clone();
        r -= other;
        r
    }
}

impl std::ops::AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, other: &Cyclo) {
        self.check_order(other);
        if let (Repr::Small(a), Repr::Small(b)) = (&mut self.repr, &other.repr) {
            let mut ok = true;
            let mut tmp: SmallVec<[i64; 6]> = SmallVec::with_capacity(a.len());
            for (x, y) in a.iter().zip(b.iter()) {
                match x.checked_add(*y) {
                    Some(v) => tmp.push(v),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                *a = tmp;
                return;
            }
        }
        *self = self.add_big(other, 1);
    }
}

impl std::ops::SubAssign<&Cyclo> for Cyclo {
    fn sub_assign(&mut self, other: &Cyclo) {
        self.check_order(other);
        if let (Repr::Small(a), Repr::Small(b)) = (&mut self.repr, &other.repr) {
            let mut ok = true;
            let mut tmp: SmallVec<[i64; 6]> = SmallVec::with_capacity(a.len());
            for (x, y) in a.iter().zip(b.iter()) {
                match x.checked_sub(*y) {
                    Some(v) => tmp.push(v),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                *a = tmp;
                return;
            }
        }
        *self = self.add_big(other, -1);
    }
}

impl std::ops::Mul<&Cyclo> for &Cyclo {
    type Output = Cyclo;
    fn mul(self, other: &Cyclo) -> Cyclo {
        self.check_order(other);
        if let (Repr::Small(a), Repr::Small(b)) = (&self.repr, &other.repr) {
            if let Some(s) = self.mul_small(a, b) {
                return Cyclo { n: self.n, repr: Repr::Small(s) };
            }
        }
        self.mul_big(other)
    }
}

impl std::ops::Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.scale_int(-1)
    }
}

impl std::ops::Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.scale_int(-1)
    }
}

fn write_int_poly(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if neg {
            write!(f, "-")?;
        } else if !first {
            write!(f, "+")?;
        }
        first = false;
        match k {
            0 => write!(f, "{abs}")?,
            _ => {
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                }
                if k == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{k}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Cyclo {
    /// Canonical text: powers of `q` ascending, e.g. `21q+35q^2-7q^4`; rational values
    /// are written as `(numerator)/denominator`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.to_big();
        if den.is_one() {
            write_int_poly(f, &num)
        } else {
            write!(f, "(")?;
            write_int_poly(f, &num)?;
            write!(f, ")/{den}")
        }
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Cyclo {
    /// Whether the value is a single term `c q^k` with integer `c`; returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(i64, usize)> {
        match &self.repr {
            Repr::Small(s) => {
                let mut nz = s.iter().enumerate().filter(|(_, c)| **c != 0);
                let first = nz.next()?;
                if nz.next().is_some() {
                    return None;
                }
                Some((*first.1, first.0))
            }
            Repr::Big(_) => None,
        }
    }
}
