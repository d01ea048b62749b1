//! Sparse multivariate integer polynomials over the free-variable set Y.
//!
//! Variables are `y_k` where `k` is neither 0 nor a reserved power address.
//! Terms are kept in a canonical graded-lexicographic order so that every
//! downstream compilation step is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::index::{classify, Index, IndexClass};

/// Index of a variable `y_k`. Guaranteed to lie in Y: nonzero and not of the
/// form `9 + 2^i*3^j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarIndex(BigUint);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VarIndexError {
    #[error("y0 is the reference cell, not a variable")]
    Zero,
    #[error("y{k} has a reserved index: {k} = 9+2^({i})*3^({j})")]
    Reserved { k: BigUint, i: BigUint, j: BigUint },
}

impl VarIndex {
    pub fn new(k: BigUint) -> Result<Self, VarIndexError> {
        match classify(&Index::Num(k.clone())) {
            IndexClass::ReferenceCell => Err(VarIndexError::Zero),
            IndexClass::ReservedPower(i, j) => Err(VarIndexError::Reserved {
                k,
                i: i.as_numeric().unwrap().clone(),
                j: j.as_numeric().unwrap().clone(),
            }),
            IndexClass::Free => Ok(VarIndex(k)),
        }
    }

    pub fn from_u64(k: u64) -> Result<Self, VarIndexError> {
        Self::new(BigUint::from(k))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y{}", self.0)
    }
}

/// Exponent map of a monomial; no zero exponents stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Exponents(BTreeMap<VarIndex, u64>);

impl Exponents {
    pub fn one() -> Self {
        Exponents::default()
    }

    pub fn var(v: VarIndex) -> Self {
        let mut m = BTreeMap::new();
        m.insert(v, 1);
        Exponents(m)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarIndex, &u64)> {
        self.0.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Exponents) -> Exponents {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            *out.entry(v.clone()).or_insert(0) += e;
        }
        Exponents(out)
    }
}

impl Ord for Exponents {
    /// Graded lexicographic: lower total degree first; at equal degree, the
    /// monomial with the larger exponent on the smallest differing variable
    /// comes first.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.0.iter();
        let mut b = other.0.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                // Exhausted first: remaining weight of the other sits on
                // larger variables, so the other comes first.
                (None, Some(_)) => return Ordering::Greater,
                (Some(_), None) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => {
                    match va.cmp(vb) {
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => {}
                    }
                    match ea.cmp(eb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {}
                    }
                }
            }
        }
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A monomial with a positive coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coefficient: BigUint,
    pub exponents: Exponents,
}

impl Monomial {
    pub fn eval(&self, asg: &BTreeMap<VarIndex, BigUint>) -> Result<BigUint, EvalError> {
        let mut acc = self.coefficient.clone();
        for (v, e) in self.exponents.iter() {
            let val = asg
                .get(v)
                .ok_or_else(|| EvalError::MissingVariable(v.clone()))?;
            acc *= pow_nat(val, *e);
        }
        Ok(acc)
    }
}

fn pow_nat(base: &BigUint, exp: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut base = base.clone();
    let mut exp = exp;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &base;
        }
        exp >>= 1;
        if exp > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// A polynomial in canonical sparse form: a term map with no zero
/// coefficients. Two polynomials are equal iff their term maps are equal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Exponents, BigInt>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("no value assigned to {0}")]
    MissingVariable(VarIndex),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("negative coefficient {coefficient} on a term of {polynomial}")]
pub struct NegativeCoefficient {
    pub coefficient: BigInt,
    pub polynomial: String,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Exponents::one(), c);
        p
    }

    pub fn var(v: VarIndex) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Exponents::var(v), BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn variables(&self) -> impl Iterator<Item = &VarIndex> {
        let mut seen = std::collections::BTreeSet::new();
        self.terms
            .keys()
            .flat_map(|e| e.iter().map(|(v, _)| v))
            .filter(move |v| seen.insert((*v).clone()))
    }

    fn add_term(&mut self, exps: Exponents, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, coeff);
            }
        }
    }

    /// Exact big-integer evaluation under a total assignment of naturals.
    pub fn eval(&self, asg: &BTreeMap<VarIndex, BigUint>) -> Result<BigInt, EvalError> {
        let mut acc = BigInt::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (v, e) in exps.iter() {
                let val = asg
                    .get(v)
                    .ok_or_else(|| EvalError::MissingVariable(v.clone()))?;
                term *= BigInt::from(pow_nat(val, *e));
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Partition into positive and negated-negative parts: `self = q0 - q1`
    /// with both parts having nonnegative coefficients only.
    pub fn split_signs(&self) -> (Polynomial, Polynomial) {
        let mut q0 = Polynomial::zero();
        let mut q1 = Polynomial::zero();
        for (exps, coeff) in &self.terms {
            if coeff.is_positive() {
                q0.add_term(exps.clone(), coeff.clone());
            } else {
                q1.add_term(exps.clone(), -coeff.clone());
            }
        }
        (q0, q1)
    }

    /// Rewrite `c*m` as `c` adjacent copies of the coefficient-1 monomial `m`,
    /// in canonical term order. Requires nonnegative coefficients.
    pub fn unit_monomials(&self) -> Result<Vec<Monomial>, NegativeCoefficient> {
        let mut out = Vec::new();
        for (exps, coeff) in &self.terms {
            let c = coeff.to_biguint().ok_or_else(|| NegativeCoefficient {
                coefficient: coeff.clone(),
                polynomial: self.to_string(),
            })?;
            let mut n = BigUint::zero();
            while n < c {
                out.push(Monomial {
                    coefficient: BigUint::one(),
                    exponents: exps.clone(),
                });
                n += 1u32;
            }
        }
        Ok(out)
    }

    /// Replace each variable that appears in `map` by the corresponding
    /// polynomial; variables not in the map are left in place.
    pub fn substitute(&self, map: &BTreeMap<VarIndex, Polynomial>) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (exps, coeff) in &self.terms {
            let mut term = Polynomial::constant(coeff.clone());
            for (v, e) in exps.iter() {
                let factor = match map.get(v) {
                    Some(p) => p.clone(),
                    None => Polynomial::var(v.clone()),
                };
                for _ in 0..*e {
                    term = &term * &factor;
                }
            }
            acc = &acc + &term;
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (exps, coeff) in &rhs.terms {
            out.add_term(exps.clone(), coeff.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (exps, coeff) in &rhs.terms {
            out.add_term(exps.clone(), -coeff.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        &Polynomial::zero() - self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (exps, coeff)) in self.terms.iter().enumerate() {
            let mag = coeff.magnitude();
            if idx == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut wrote_factor = false;
            if !mag.is_one() || exps.is_constant() {
                write!(f, "{mag}")?;
                wrote_factor = true;
            }
            for (v, e) in exps.iter() {
                if wrote_factor {
                    write!(f, "*")?;
                }
                write!(f, "{v}")?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote_factor = true;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("at position {pos}: {source}")]
    BadVariable {
        pos: usize,
        #[source]
        source: VarIndexError,
    },
    #[error("exponent at position {pos} is too large")]
    HugeExponent { pos: usize },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

/// Parse polynomial text. An `lhs = rhs` equation is normalized to
/// `lhs - rhs`.
pub fn parse_polynomial(src: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let lhs = p.poly()?;
    p.skip_ws();
    if p.peek() == Some(b'=') {
        p.pos += 1;
        let rhs = p.poly()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        return Ok(&lhs - &rhs);
    }
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(lhs)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        let mut base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            Some(b'y') => {
                self.pos += 1;
                let start = self.pos;
                let k = self.nat()?;
                let v = VarIndex::new(k)
                    .map_err(|source| ParseError::BadVariable { pos: start, source })?;
                Polynomial::var(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                Polynomial::constant(BigInt::from(n))
            }
            _ => return Err(self.err("expected a number, variable, or '('")),
        };
        loop {
            self.skip_ws();
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                let at = self.pos;
                let e = self.nat()?;
                let e: u64 = e
                    .try_into()
                    .map_err(|_| ParseError::HugeExponent { pos: at })?;
                if e > 1_000_000 {
                    return Err(ParseError::HugeExponent { pos: at });
                }
                let mut acc = Polynomial::constant(BigInt::one());
                for _ in 0..e {
                    acc = &acc * &base;
                }
                base = acc;
            } else {
                return Ok(base);
            }
        }
    }

    fn nat(&mut self) -> Result<BigUint, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a natural number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .unwrap())
    }
}
