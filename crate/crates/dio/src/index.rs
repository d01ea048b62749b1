//! Arithmetic of the memory layout: cell addresses are either the reference
//! cell 0, reserved power cells `9 + 2^i*3^j`, or free. Reserved addresses at
//! compiled scale have numerals far beyond memory, so an index is either an
//! explicit numeral or a symbolic `9+2^i*3^j` node.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::budget::digit_threshold;
use crate::poly::VarIndex;

const LOG10_2: f64 = std::f64::consts::LOG10_2;
const LOG10_3: f64 = 0.47712125471966244;

/// A cell address: an explicit natural, or `9 + 2^i*3^j` kept symbolic when
/// the numeral would exceed the digit budget.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Index {
    Num(BigUint),
    Pow { i: Box<Index>, j: Box<Index> },
}

/// Partition of addresses by role in the memory layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexClass {
    /// Cell 0, pinned to the constant 2.
    ReferenceCell,
    /// Cell `9 + 2^i*3^j`, pinned to `n_i ^ n_j`.
    ReservedPower(Index, Index),
    Free,
}

/// Best-effort order on denoted naturals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderResult {
    Less,
    Equal,
    Greater,
    Unknown,
}

impl Index {
    pub fn from_u64(n: u64) -> Self {
        Index::Num(BigUint::from(n))
    }

    pub fn zero() -> Self {
        Index::Num(BigUint::zero())
    }

    pub fn as_numeric(&self) -> Option<&BigUint> {
        match self {
            Index::Num(n) => Some(n),
            Index::Pow { .. } => None,
        }
    }

    /// Exact decimal digit count of the numeral, when numeric.
    pub fn digit_count(&self) -> Option<u64> {
        self.as_numeric().map(|n| {
            if n.is_zero() {
                1
            } else {
                n.to_str_radix(10).len() as u64
            }
        })
    }
}

/// `(i, j) -> 9 + 2^i*3^j`. Collapses to a numeral whenever the result fits
/// the digit budget.
pub fn encode_power_index(i: Index, j: Index) -> Index {
    if let (Index::Num(a), Index::Num(b)) = (&i, &j) {
        let est = estimated_digits(a, b);
        if est <= digit_threshold() as f64 + 2.0 {
            let a = a.to_u64().expect("estimate guarantees small exponent");
            let b = b.to_u64().expect("estimate guarantees small exponent");
            let value = BigUint::from(9u32)
                + BigUint::from(2u32).pow(a as u32) * BigUint::from(3u32).pow(b as u32);
            if digits_at_most(&value, digit_threshold()) {
                return Index::Num(value);
            }
        }
    }
    Index::Pow {
        i: Box::new(i),
        j: Box::new(j),
    }
}

fn estimated_digits(i: &BigUint, j: &BigUint) -> f64 {
    match (i.to_u64(), j.to_u64()) {
        (Some(i), Some(j)) => i as f64 * LOG10_2 + j as f64 * LOG10_3 + 1.0,
        _ => f64::INFINITY,
    }
}

/// `n < 10^t`, checked without converting to decimal unless near the boundary.
pub(crate) fn digits_at_most(n: &BigUint, t: u64) -> bool {
    let bits = n.bits();
    // 10^t has floor(t*log2(10)) + 1 bits.
    let t_bits = (t as f64 * std::f64::consts::LOG2_10) as u64;
    if bits + 1 < t_bits {
        return true;
    }
    if bits > t_bits + 2 {
        return false;
    }
    n.to_str_radix(10).len() as u64 <= t
}

/// Classify an address as reference, reserved power, or free.
///
/// Numeric addresses decode by stripping factors of 2 then 3 from `k - 9` and
/// checking the remainder is 1.
pub fn classify(k: &Index) -> IndexClass {
    match k {
        Index::Num(n) => {
            if n.is_zero() {
                return IndexClass::ReferenceCell;
            }
            if *n < BigUint::from(10u32) {
                return IndexClass::Free;
            }
            let mut m = n - BigUint::from(9u32);
            let mut i = 0u64;
            while (&m % 2u32).is_zero() {
                m >>= 1;
                i += 1;
            }
            let mut j = 0u64;
            let three = BigUint::from(3u32);
            while (&m % &three).is_zero() {
                m /= &three;
                j += 1;
            }
            if m.is_one() {
                IndexClass::ReservedPower(Index::from_u64(i), Index::from_u64(j))
            } else {
                IndexClass::Free
            }
        }
        Index::Pow { i, j } => IndexClass::ReservedPower((**i).clone(), (**j).clone()),
    }
}

/// Scratch variable `y_{9+5t}`: 5 divides `5t` but never `2^i*3^j`, so the
/// index is always free and disjoint from the input cells `n_1..n_9`.
pub fn alloc_scratch(t: u64) -> VarIndex {
    assert!(t >= 1, "scratch slots start at 1");
    VarIndex::new(BigUint::from(9 + 5 * t)).expect("9+5t is always a free index")
}

/// Three-valued order comparison on denoted naturals.
///
/// Symbolic nodes only exist above the digit budget, so a numeral within the
/// budget is always smaller than any symbolic index.
pub fn cmp_indices(a: &Index, b: &Index) -> OrderResult {
    match (a, b) {
        (Index::Num(x), Index::Num(y)) => match x.cmp(y) {
            std::cmp::Ordering::Less => OrderResult::Less,
            std::cmp::Ordering::Equal => OrderResult::Equal,
            std::cmp::Ordering::Greater => OrderResult::Greater,
        },
        (Index::Num(x), Index::Pow { .. }) => {
            if digits_at_most(x, digit_threshold()) {
                OrderResult::Less
            } else {
                OrderResult::Unknown
            }
        }
        (Index::Pow { .. }, Index::Num(y)) => {
            if digits_at_most(y, digit_threshold()) {
                OrderResult::Greater
            } else {
                OrderResult::Unknown
            }
        }
        (Index::Pow { i: i1, j: j1 }, Index::Pow { i: i2, j: j2 }) => {
            // 9 + 2^i*3^j is strictly monotone in both i and j.
            let ci = cmp_indices(i1, i2);
            let cj = cmp_indices(j1, j2);
            match (ci, cj) {
                (OrderResult::Equal, c) | (c, OrderResult::Equal) => c,
                (OrderResult::Less, OrderResult::Less) => OrderResult::Less,
                (OrderResult::Greater, OrderResult::Greater) => OrderResult::Greater,
                _ => OrderResult::Unknown,
            }
        }
    }
}

impl fmt::Display for Index {
    /// Canonical rendering: `NAT` or `9+2^(<index>)*3^(<index>)`, fully
    /// parenthesized, no whitespace.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Num(n) => write!(f, "{n}"),
            Index::Pow { i, j } => write!(f, "9+2^({i})*3^({j})"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndexParseError {
    #[error("unexpected character {found:?} at position {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("unexpected end of input at position {pos}")]
    Eof { pos: usize },
    #[error("trailing input at position {pos}")]
    Trailing { pos: usize },
}

impl FromStr for Index {
    type Err = IndexParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let (idx, rest) = parse_index(bytes, 0)?;
        if rest != bytes.len() {
            return Err(IndexParseError::Trailing { pos: rest });
        }
        Ok(idx)
    }
}

fn parse_index(s: &[u8], pos: usize) -> Result<(Index, usize), IndexParseError> {
    if s[pos..].starts_with(b"9+2^(") {
        let (i, p) = parse_index(s, pos + 5)?;
        let p = expect(s, p, b")*3^(")?;
        let (j, p) = parse_index(s, p)?;
        let p = expect(s, p, b")")?;
        return Ok((
            Index::Pow {
                i: Box::new(i),
                j: Box::new(j),
            },
            p,
        ));
    }
    let start = pos;
    let mut p = pos;
    while p < s.len() && s[p].is_ascii_digit() {
        p += 1;
    }
    if p == start {
        return match s.get(pos) {
            Some(&c) => Err(IndexParseError::Unexpected {
                pos,
                found: c as char,
            }),
            None => Err(IndexParseError::Eof { pos }),
        };
    }
    let digits = std::str::from_utf8(&s[start..p]).unwrap();
    Ok((Index::Num(digits.parse().unwrap()), p))
}

fn expect(s: &[u8], pos: usize, lit: &[u8]) -> Result<usize, IndexParseError> {
    if s[pos..].starts_with(lit) {
        Ok(pos + lit.len())
    } else {
        match s.get(pos) {
            Some(&c) => Err(IndexParseError::Unexpected {
                pos,
                found: c as char,
            }),
            None => Err(IndexParseError::Eof { pos }),
        }
    }
}
