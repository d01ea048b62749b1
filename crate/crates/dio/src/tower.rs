//! Symbolic value algebra for well-formed cells: naturals closed under
//! exponentiation. Values like 2^(2^p) overflow any numeral, so towers above
//! the digit budget stay symbolic, kept in a canonical form (collapsed small
//! numerals, minimal bases, merged same-base exponents) that makes equality a
//! structural check.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::budget::digit_threshold;
use crate::index::{digits_at_most, OrderResult};

/// A natural number, possibly an iterated exponential too large to write out.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TowerValue {
    Nat(BigUint),
    Pow {
        base: Box<TowerValue>,
        exp: Box<TowerValue>,
    },
}

/// Returned by [`tower_eval`] when the exact numeral would not fit the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetExceeded;

impl TowerValue {
    pub fn nat<N: Into<BigUint>>(n: N) -> Self {
        TowerValue::Nat(n.into())
    }

    pub fn one() -> Self {
        TowerValue::nat(1u32)
    }

    pub fn two() -> Self {
        TowerValue::nat(2u32)
    }

    fn is_nat(&self, v: u32) -> bool {
        matches!(self, TowerValue::Nat(n) if *n == BigUint::from(v))
    }
}

/// Canonical `a^b`. Conventions over the naturals: `x^0 = 1` (including
/// `0^0 = 1`), `0^b = 0` for `b >= 1`, `1^b = 1`.
pub fn tower_pow(a: &TowerValue, b: &TowerValue) -> TowerValue {
    if b.is_nat(0) {
        return TowerValue::one();
    }
    if b.is_nat(1) {
        return a.clone();
    }
    if a.is_nat(0) || a.is_nat(1) {
        return a.clone();
    }
    // a = base^exp_a (with exp_a = 1 when a is not already a power).
    let (base, exp_a) = match a {
        TowerValue::Nat(_) => (a.clone(), TowerValue::one()),
        TowerValue::Pow { base, exp } => ((**base).clone(), (**exp).clone()),
    };
    match try_mul(&exp_a, b) {
        Some(e) => make_pow(base, e),
        // Exponent product not representable in the tower grammar: keep the
        // non-minimal form.
        None => TowerValue::Pow {
            base: Box::new(a.clone()),
            exp: Box::new(b.clone()),
        },
    }
}

/// Canonical wrapper around `base^exp`: collapses to a numeral within budget
/// and rewrites the base to its minimal (non-perfect-power) form.
fn make_pow(base: TowerValue, exp: TowerValue) -> TowerValue {
    if exp.is_nat(0) {
        return TowerValue::one();
    }
    if exp.is_nat(1) {
        return base;
    }
    match base {
        TowerValue::Nat(m) => {
            if m.is_zero() || m.is_one() {
                return TowerValue::Nat(m);
            }
            let (m0, k) = minimal_base(&m);
            let (m0, exp) = if k > 1 {
                match try_mul(&TowerValue::nat(k), &exp) {
                    Some(e) => (m0, e),
                    None => (m.clone(), exp),
                }
            } else {
                (m0, exp)
            };
            if exp.is_nat(1) {
                return TowerValue::Nat(m0);
            }
            if let TowerValue::Nat(e) = &exp {
                if let Some(v) = numeric_pow_within(&m0, e, digit_threshold()) {
                    return TowerValue::Nat(v);
                }
            }
            TowerValue::Pow {
                base: Box::new(TowerValue::Nat(m0)),
                exp: Box::new(exp),
            }
        }
        compound => TowerValue::Pow {
            base: Box::new(compound),
            exp: Box::new(exp),
        },
    }
}

/// `m^e` as an explicit numeral, if it has at most `budget` decimal digits.
fn numeric_pow_within(m: &BigUint, e: &BigUint, budget: u64) -> Option<BigUint> {
    let bits = m.bits();
    let e_small = e.to_u64()?;
    // Lower bound on the digit count of m^e; bail before materializing.
    let min_digits = (e_small as f64) * ((bits - 1) as f64) * std::f64::consts::LOG10_2;
    if min_digits > budget as f64 + 2.0 {
        return None;
    }
    let e32: u32 = e_small.try_into().ok()?;
    let v = m.pow(e32);
    if digits_at_most(&v, budget) {
        Some(v)
    } else {
        None
    }
}

/// Product of two tower values, when representable in the grammar.
fn try_mul(x: &TowerValue, y: &TowerValue) -> Option<TowerValue> {
    match (x, y) {
        (TowerValue::Nat(a), TowerValue::Nat(b)) => Some(TowerValue::Nat(a * b)),
        (TowerValue::Nat(a), TowerValue::Pow { base, exp })
        | (TowerValue::Pow { base, exp }, TowerValue::Nat(a)) => {
            if a.is_one() {
                return Some(TowerValue::Pow {
                    base: base.clone(),
                    exp: exp.clone(),
                });
            }
            // a * m^e = m^(k+e) when a = m^k.
            if let TowerValue::Nat(m) = &**base {
                let k = exact_log(a, m)?;
                let e = try_add(&TowerValue::nat(k), exp)?;
                return Some(make_pow((**base).clone(), e));
            }
            None
        }
        (
            TowerValue::Pow { base: b1, exp: e1 },
            TowerValue::Pow { base: b2, exp: e2 },
        ) => {
            if tower_eq(b1, b2) {
                let e = try_add(e1, e2)?;
                Some(make_pow((**b1).clone(), e))
            } else {
                None
            }
        }
    }
}

/// Sum of two tower values, when representable in the grammar.
fn try_add(x: &TowerValue, y: &TowerValue) -> Option<TowerValue> {
    match (x, y) {
        (TowerValue::Nat(a), TowerValue::Nat(b)) => Some(TowerValue::Nat(a + b)),
        _ if tower_eq(x, y) => try_mul(&TowerValue::two(), x),
        _ => None,
    }
}

/// `k` such that `a = m^k`, if one exists (`m >= 2`).
fn exact_log(a: &BigUint, m: &BigUint) -> Option<u64> {
    if *m < BigUint::from(2u32) {
        return None;
    }
    if a.is_one() {
        return Some(0);
    }
    let k = (a.bits() - 1) / (m.bits() - 1).max(1);
    for cand in [k, k + 1] {
        let c32: u32 = cand.try_into().ok()?;
        if &m.pow(c32) == a {
            return Some(cand);
        }
    }
    None
}

/// Largest decomposition `m = r^k` with `r` not itself a perfect power.
fn minimal_base(m: &BigUint) -> (BigUint, u64) {
    let mut m = m.clone();
    let mut k_total = 1u64;
    if m < BigUint::from(4u32) {
        return (m, 1);
    }
    // Fast path for the towers arising in practice: powers of 2.
    if m == BigUint::one() << (m.bits() - 1) {
        return (BigUint::from(2u32), m.bits() - 1);
    }
    'outer: loop {
        let max_k = m.bits();
        let mut k = 2u64;
        while k <= max_k {
            if is_prime_small(k) {
                let k32: u32 = match k.try_into() {
                    Ok(v) => v,
                    Err(_) => break,
                };
                let r = m.nth_root(k32);
                if r > BigUint::one() && r.pow(k32) == m {
                    m = r;
                    k_total *= k;
                    continue 'outer;
                }
            }
            k += 1;
        }
        return (m, k_total);
    }
}

fn is_prime_small(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact equality of denoted naturals.
pub fn tower_eq(a: &TowerValue, b: &TowerValue) -> bool {
    match (a, b) {
        (TowerValue::Nat(x), TowerValue::Nat(y)) => x == y,
        (TowerValue::Pow { base: b1, exp: e1 }, TowerValue::Pow { base: b2, exp: e2 }) => {
            tower_eq(b1, b2) && tower_eq(e1, e2)
        }
        (TowerValue::Nat(x), TowerValue::Pow { base, exp })
        | (TowerValue::Pow { base, exp }, TowerValue::Nat(x)) => {
            // A canonical Pow exceeds the digit budget; a numeral that fits it
            // cannot match. An oversized numeral (possible via exponent
            // arithmetic) is compared by taking the exact base-m logarithm.
            if digits_at_most(x, digit_threshold()) {
                return false;
            }
            if let TowerValue::Nat(m) = &**base {
                if let Some(k) = exact_log(x, m) {
                    return tower_eq(&TowerValue::nat(k), exp);
                }
            }
            false
        }
    }
}

/// Exact numeral of `a`, if its decimal length fits `digit_budget`.
///
/// Digit counts are estimated through exponent arithmetic before any oversized
/// intermediate is materialized.
pub fn tower_eval(a: &TowerValue, digit_budget: u64) -> Result<BigUint, BudgetExceeded> {
    assert!(digit_budget >= 1);
    match a {
        TowerValue::Nat(n) => {
            if digits_at_most(n, digit_budget) {
                Ok(n.clone())
            } else {
                Err(BudgetExceeded)
            }
        }
        TowerValue::Pow { base, exp } => {
            // The exponent must itself be tiny for the result to fit.
            let e = tower_eval(exp, 21).map_err(|_| BudgetExceeded)?;
            let base_v = tower_eval(base, digit_budget)?;
            if base_v.is_zero() || base_v.is_one() {
                return Ok(base_v);
            }
            numeric_pow_within(&base_v, &e, digit_budget).ok_or(BudgetExceeded)
        }
    }
}

/// Best-effort order on denoted naturals: definite answers are always
/// consistent with the true ordering, `Equal` agrees exactly with
/// [`tower_eq`].
pub fn tower_cmp(a: &TowerValue, b: &TowerValue, budget: u64) -> OrderResult {
    if tower_eq(a, b) {
        return OrderResult::Equal;
    }
    if let (Ok(x), Ok(y)) = (tower_eval(a, budget), tower_eval(b, budget)) {
        return match x.cmp(&y) {
            std::cmp::Ordering::Less => OrderResult::Less,
            std::cmp::Ordering::Equal => OrderResult::Equal,
            std::cmp::Ordering::Greater => OrderResult::Greater,
        };
    }
    match (a, b) {
        // Materialized numerals compare exactly whatever the budget.
        (TowerValue::Nat(x), TowerValue::Nat(y)) => match x.cmp(y) {
            std::cmp::Ordering::Less => OrderResult::Less,
            std::cmp::Ordering::Equal => OrderResult::Equal,
            std::cmp::Ordering::Greater => OrderResult::Greater,
        },
        // Same-base monotonicity (canonical bases are >= 2).
        (TowerValue::Pow { base: b1, exp: e1 }, TowerValue::Pow { base: b2, exp: e2 })
            if tower_eq(b1, b2) =>
        {
            tower_cmp(e1, e2, budget)
        }
        (TowerValue::Nat(x), TowerValue::Pow { .. }) => {
            if digits_at_most(x, digit_threshold()) {
                OrderResult::Less
            } else {
                OrderResult::Unknown
            }
        }
        (TowerValue::Pow { .. }, TowerValue::Nat(y)) => {
            if digits_at_most(y, digit_threshold()) {
                OrderResult::Greater
            } else {
                OrderResult::Unknown
            }
        }
        _ => OrderResult::Unknown,
    }
}

impl fmt::Display for TowerValue {
    /// Rendering grammar: `NAT | (a)^(b)`, fully parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerValue::Nat(n) => write!(f, "{n}"),
            TowerValue::Pow { base, exp } => write!(f, "({base})^({exp})"),
        }
    }
}
