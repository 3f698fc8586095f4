//! Polynomials in the deformation parameters with cyclotomic coefficients.

use std::fmt;

use smallvec::SmallVec;

use super::cyclo::Cyclo;

/// The formal deformation parameters, in their canonical (lexicographic) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    L1,
    L2,
    M1,
    M2,
    M12,
    M112,
    M1112,
    MBeta,
}

impl Param {
    pub const ALL: [Param; 8] =
        [Param::L1, Param::L2, Param::M1, Param::M2, Param::M12, Param::M112, Param::M1112, Param::MBeta];

    pub fn token(self) -> &'static str {
        match self {
            Param::L1 => "l1",
            Param::L2 => "l2",
            Param::M1 => "m1",
            Param::M2 => "m2",
            Param::M12 => "m12",
            Param::M112 => "m112",
            Param::M1112 => "m1112",
            Param::MBeta => "mb",
        }
    }

    pub fn from_token(s: &str) -> Option<Param> {
        Param::ALL.iter().copied().find(|p| p.token() == s)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Exponent vector of a parameter monomial, packed one byte per parameter with `l1`
/// in the most significant byte, so integer order is lexicographic order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamKey(pub u64);

const HIGH_BITS: u64 = 0x8080_8080_8080_8080;

impl ParamKey {
    pub const ONE: ParamKey = ParamKey(0);

    pub fn single(p: Param, e: u8) -> Self {
        ParamKey((e as u64) << (8 * (7 - p.index())))
    }

    pub fn exp(self, p: Param) -> u8 {
        (self.0 >> (8 * (7 - p.index()))) as u8
    }

    pub fn exps(self) -> [u8; 8] {
        self.0.to_be_bytes()
    }

    pub fn from_exps(e: [u8; 8]) -> Self {
        ParamKey(u64::from_be_bytes(e))
    }

    pub fn mul(self, other: ParamKey) -> ParamKey {
        assert!((self.0 | other.0) & HIGH_BITS == 0, "parameter exponent overflow");
        ParamKey(self.0 + other.0)
    }

    /// Whether `other` divides `self`; returns the quotient.
    pub fn div(self, other: ParamKey) -> Option<ParamKey> {
        let a = self.exps();
        let b = other.exps();
        let mut out = [0u8; 8];
        for i in 0..8 {
            out[i] = a[i].checked_sub(b[i])?;
        }
        Some(ParamKey::from_exps(out))
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn degree(self) -> u32 {
        self.exps().iter().map(|e| *e as u32).sum()
    }
}

impl fmt::Display for ParamKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in Param::ALL {
            let e = self.exp(p);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", p.token())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// An element of `Q(q)[l1, l2, m1, m2, m12, m112, m1112, mb]`.
///
/// Terms are kept sorted by [`ParamKey`] with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamScalar {
    n: u16,
    terms: SmallVec<[(ParamKey, Cyclo); 1]>,
}

impl ParamScalar {
    pub fn zero(n: u16) -> Self {
        ParamScalar { n, terms: SmallVec::new() }
    }

    pub fn one(n: u16) -> Self {
        Self::from_cyclo(Cyclo::one(n))
    }

    pub fn from_int(n: u16, v: i64) -> Self {
        Self::from_cyclo(Cyclo::from_int(n, v))
    }

    pub fn qpow(n: u16, k: i64) -> Self {
        Self::from_cyclo(Cyclo::qpow(n, k))
    }

    pub fn from_cyclo(c: Cyclo) -> Self {
        Self::monomial(c, ParamKey::ONE)
    }

    pub fn monomial(c: Cyclo, key: ParamKey) -> Self {
        let n = c.order();
        let mut terms = SmallVec::new();
        if !c.is_zero() {
            terms.push((key, c));
        }
        ParamScalar { n, terms }
    }

    pub fn param(n: u16, p: Param) -> Self {
        Self::monomial(Cyclo::one(n), ParamKey::single(p, 1))
    }

    pub fn order(&self) -> u16 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> &[(ParamKey, Cyclo)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The parameter-free part, if the scalar has no parameter dependence.
    pub fn as_cyclo(&self) -> Option<Cyclo> {
        match self.terms.len() {
            0 => Some(Cyclo::zero(self.n)),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, key: ParamKey) -> Cyclo {
        match self.terms.binary_search_by_key(&key, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Cyclo::zero(self.n),
        }
    }

    pub fn from_terms(n: u16, mut terms: Vec<(ParamKey, Cyclo)>) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut out: SmallVec<[(ParamKey, Cyclo); 1]> = SmallVec::with_capacity(terms.len());
        for (k, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == k => last.1 += &c,
                _ => out.push((k, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        ParamScalar { n, terms: out }
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        ParamScalar { n: self.n, terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect() }
    }

    pub fn mul_qpow(&self, k: i64) -> Self {
        if k.rem_euclid(self.n as i64) == 0 {
            return self.clone();
        }
        ParamScalar { n: self.n, terms: self.terms.iter().map(|(key, x)| (*key, x.mul_qpow(k))).collect() }
    }

    pub fn mul_key(&self, key: ParamKey) -> Self {
        ParamScalar { n: self.n, terms: self.terms.iter().map(|(k, x)| (k.mul(key), x.clone())).collect() }
    }

    pub fn neg(&self) -> Self {
        ParamScalar { n: self.n, terms: self.terms.iter().map(|(k, x)| (*k, -x)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes a value for each parameter that has one; others stay formal.
    pub fn substitute(&self, values: &[Option<ParamScalar>; 8]) -> ParamScalar {
        let mut acc = ParamScalar::zero(self.n);
        for (key, c) in &self.terms {
            let mut term = ParamScalar::monomial(c.clone(), ParamKey::ONE);
            let mut kept = [0u8; 8];
            for p in Param::ALL {
                let e = key.exp(p);
                match &values[p.index()] {
                    Some(v) if e > 0 => term = &term * &v.pow(e as u32),
                    _ => kept[p.index()] = e,
                }
            }
            acc += &term.mul_key(ParamKey::from_exps(kept));
        }
        acc
    }

    /// Drops every term that involves one of the given parameters.
    pub fn kill(&self, params: &[Param]) -> ParamScalar {
        ParamScalar {
            n: self.n,
            terms: self.terms.iter().filter(|(k, _)| params.iter().all(|p| k.exp(*p) == 0)).cloned().collect(),
        }
    }

    /// Multiplies `a * b` and adds the product into `self`.
    pub fn add_mul(&mut self, a: &ParamScalar, b: &ParamScalar) {
        if a.terms.len() == 1 && b.terms.len() == 1 && self.terms.len() <= 1 {
            let key = a.terms[0].0.mul(b.terms[0].0);
            let prod = &a.terms[0].1 * &b.terms[0].1;
            if self.terms.is_empty() {
                if !prod.is_zero() {
                    self.terms.push((key, prod));
                }
                return;
            }
            if self.terms[0].0 == key {
                self.terms[0].1 += &prod;
                if self.terms[0].1.is_zero() {
                    self.terms.clear();
                }
                return;
            }
        }
        *self += &(a * b);
    }
}

impl std::ops::AddAssign<&ParamScalar> for ParamScalar {
    fn add_assign(&mut self, other: &ParamScalar) {
        if other.terms.is_empty() {
            return;
        }
        if self.terms.is_empty() {
            self.terms = other.terms.clone();
            return;
        }
        if self.terms.len() == 1 && other.terms.len() == 1 && self.terms[0].0 == other.terms[0].0 {
            self.terms[0].1 += &other.terms[0].1;
            if self.terms[0].1.is_zero() {
                self.terms.clear();
            }
            return;
        }
        let mut out: SmallVec<[(ParamKey, Cyclo); 1]> = SmallVec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => {
                    if x.0 < y.0 {
                        out.push(a.next().unwrap());
                    } else if y.0 < x.0 {
                        out.push(b.next().unwrap().clone());
                    } else {
                        let (k, mut c) = a.next().unwrap();
                        c += &b.next().unwrap().1;
                        if !c.is_zero() {
                            out.push((k, c));
                        }
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap().clone()),
                (None, None) => break,
            }
        }
        self.terms = out;
    }
}

impl std::ops::SubAssign<&ParamScalar> for ParamScalar {
    fn sub_assign(&mut self, other: &ParamScalar) {
        *self += &other.neg();
    }
}

impl std::ops::Add<&ParamScalar> for &ParamScalar {
    type Output = ParamScalar;
    fn add(self, other: &ParamScalar) -> ParamScalar {
        let mut r = self.clone();
        r += other;
        r
    }
}

impl std::ops::Sub<&ParamScalar> for &ParamScalar {
    type Output = ParamScalar;
    fn sub(self, other: &ParamScalar) -> ParamScalar {
        let mut r = self.clone();
        r -= other;
        r
    }
}

impl std::ops::Mul<&ParamScalar> for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, other: &ParamScalar) -> ParamScalar {
        if self.terms.is_empty() || other.terms.is_empty() {
            return ParamScalar::zero(self.n);
        }
        if self.terms.len() == 1 && other.terms.len() == 1 {
            let c = &self.terms[0].1 * &other.terms[0].1;
            return ParamScalar::monomial(c, self.terms[0].0.mul(other.terms[0].0));
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                prods.push((ka.mul(*kb), ca * cb));
            }
        }
        ParamScalar::from_terms(self.n, prods)
    }
}

impl fmt::Display for ParamScalar {
    /// Canonical text. A lone parameter-free value prints bare; otherwise every term is
    /// `(coefficient)*monomial`, monomials in lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if self.terms.len() == 1 && self.terms[0].0.is_one() {
            return write!(f, "{}", self.terms[0].1);
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "({c})")?;
            if !k.is_one() {
                write!(f, "*{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
