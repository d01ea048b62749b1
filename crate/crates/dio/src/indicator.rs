//! Finite ball families in Q^5, the W tuple set with exact
//! paraboloid-in-ball containment, a budgeted estimator of
//! `inf f_{A,B,C} = 1 - indicator(U_m)`, and literal / semantic evaluation of
//! the f bracket.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::compiler::CompiledEquation;
use crate::index::Index;
use crate::tower::{tower_eq, tower_eval, TowerValue};
use crate::wf::{DensePrefix, WfAssignment};

pub type Point = [BigRational; 5];

/// One listed open ball of some `U_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub center: Point,
    pub radius: BigRational,
}

/// A finite family `m -> U_m`, each `U_m` a finite union of rational balls.
/// Stands in for the first outputs of a computable enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BallFamily {
    balls: BTreeMap<u64, Vec<Ball>>,
}

/// A tuple `(n_1, ..., n_9)` proposed for membership in W.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WTuple {
    n: [BigUint; 9],
}

/// The paraboloid data carried by `n_3..n_9`: sublevel set
/// `{x : n_3 * sum (x_k - c_k)^2 <= 1}` is the closed ball of radius
/// `1/sqrt(n_3)` about `c`, where `c_k = n_{k+5}/(1+n_4) - n_4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParaboloidParams {
    pub n3: BigUint,
    pub n4: BigUint,
    /// `n_5..n_9` in order.
    pub numerators: [BigUint; 5],
}

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("radius must be strictly positive")]
    NonPositiveRadius,
    #[error("U_{0} has no balls; families list non-empty open sets")]
    EmptyEntry(u64),
    #[error("bad rational {0:?}")]
    BadRational(String),
    #[error("center must have exactly 5 coordinates")]
    BadCenter,
    #[error("bad family JSON: {0}")]
    BadJson(String),
}

impl WTuple {
    /// `values[k]` is `n_{k+1}`.
    pub fn new(values: [BigUint; 9]) -> Self {
        WTuple { n: values }
    }

    /// `n_k` for `1 <= k <= 9`.
    pub fn get(&self, k: usize) -> &BigUint {
        &self.n[k - 1]
    }

    pub fn values(&self) -> &[BigUint; 9] {
        &self.n
    }

    pub fn params(&self) -> ParaboloidParams {
        ParaboloidParams {
            n3: self.get(3).clone(),
            n4: self.get(4).clone(),
            numerators: std::array::from_fn(|k| self.get(5 + k).clone()),
        }
    }
}

impl ParaboloidParams {
    pub fn center(&self) -> Point {
        let shift = BigRational::from(BigInt::from(self.n4.clone()));
        let den = &shift + BigRational::one();
        std::array::from_fn(|k| {
            BigRational::from(BigInt::from(self.numerators[k].clone())) / &den - &shift
        })
    }

    /// `n_3 * |x - c|^2`.
    pub fn penalty(&self, x: &Point) -> BigRational {
        let c = self.center();
        let d2 = dist_sq(x, &c);
        BigRational::from(BigInt::from(self.n3.clone())) * d2
    }
}

pub fn dist_sq(a: &Point, b: &Point) -> BigRational {
    let mut acc = BigRational::zero();
    for k in 0..5 {
        let d = &a[k] - &b[k];
        acc += &d * &d;
    }
    acc
}

/// Decide `sqrt(a) + sqrt(b) < r` exactly for rationals `a, b >= 0`.
///
/// Square twice with sign guards: the condition holds iff
/// `t = r^2 - a - b > 0` and `4ab < t^2` (or `t >= 0` suffices when one
/// radical side already closes the gap; the guard handles both).
fn sqrt_sum_lt(a: &BigRational, b: &BigRational, r: &BigRational) -> bool {
    debug_assert!(!a.is_negative() && !b.is_negative());
    if !r.is_positive() {
        return false;
    }
    let t = r * r - a - b;
    if !t.is_positive() {
        return false;
    }
    let four_ab = BigRational::from(BigInt::from(4u32)) * a * b;
    four_ab < &t * &t
}

/// Exact test: the closed sublevel ball of `p` lies inside the open ball
/// `B_radius(center)`. Condition: `sqrt(d^2) + sqrt(1/n_3) < radius`.
pub fn contains_sublevel(p: &ParaboloidParams, center: &Point, radius: &BigRational) -> bool {
    assert!(!p.n3.is_zero(), "contains_sublevel requires n_3 >= 1");
    let d2 = dist_sq(&p.center(), center);
    let inv_n3 = BigRational::new(BigInt::one(), BigInt::from(p.n3.clone()));
    sqrt_sum_lt(&d2, &inv_n3, radius)
}

impl BallFamily {
    pub fn new(balls: BTreeMap<u64, Vec<Ball>>) -> Result<Self, FamilyError> {
        for (m, list) in &balls {
            if list.is_empty() {
                return Err(FamilyError::EmptyEntry(*m));
            }
            for b in list {
                if !b.radius.is_positive() {
                    return Err(FamilyError::NonPositiveRadius);
                }
            }
        }
        Ok(BallFamily { balls })
    }

    pub fn entry(&self, m: u64) -> Option<&[Ball]> {
        self.balls.get(&m).map(|v| v.as_slice())
    }

    pub fn entries(&self) -> &BTreeMap<u64, Vec<Ball>> {
        &self.balls
    }

    /// Strict membership of `x` in the listed part of `U_m`.
    pub fn point_in(&self, m: u64, x: &Point) -> bool {
        self.entry(m).is_some_and(|balls| {
            balls
                .iter()
                .any(|b| dist_sq(x, &b.center) < &b.radius * &b.radius)
        })
    }

    /// Parse the `{"<m>": [{"center": [...], "radius": "p/q"}]}` format.
    pub fn from_json(text: &str) -> Result<Self, FamilyError> {
        let raw: BTreeMap<String, Vec<BallJson>> =
            serde_json::from_str(text).map_err(|e| FamilyError::BadJson(e.to_string()))?;
        let mut balls = BTreeMap::new();
        for (m, list) in raw {
            let m: u64 = m
                .parse()
                .map_err(|_| FamilyError::BadJson(format!("bad family key {m:?}")))?;
            let list: Result<Vec<Ball>, FamilyError> = list
                .iter()
                .map(|b| {
                    let coords: Result<Vec<BigRational>, _> =
                        b.center.iter().map(|s| parse_rational(s)).collect();
                    let coords = coords?;
                    let center: Point =
                        coords.try_into().map_err(|_| FamilyError::BadCenter)?;
                    Ok(Ball {
                        center,
                        radius: parse_rational(&b.radius)?,
                    })
                })
                .collect();
            balls.insert(m, list?);
        }
        BallFamily::new(balls)
    }

    pub fn to_json(&self) -> String {
        let raw: BTreeMap<String, Vec<BallJson>> = self
            .balls
            .iter()
            .map(|(m, list)| {
                (
                    m.to_string(),
                    list.iter()
                        .map(|b| BallJson {
                            center: b.center.iter().map(render_rational).collect(),
                            radius: render_rational(&b.radius),
                        })
                        .collect(),
                )
            })
            .collect();
        serde_json::to_string_pretty(&raw).expect("family serializes")
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct BallJson {
    center: Vec<String>,
    radius: String,
}

/// Parse `p/q` or `p` (q >= 1 after reduction).
pub fn parse_rational(s: &str) -> Result<BigRational, FamilyError> {
    let bad = || FamilyError::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Membership in W: the capping tuples `n_2 = 1, n_3 = 0`, or `n_2 = 0` with
/// the sublevel ball inside some listed ball of `U_{n_1}`.
pub fn w_member(fam: &BallFamily, t: &WTuple) -> bool {
    if t.get(2).is_one() && t.get(3).is_zero() {
        return true;
    }
    if !t.get(2).is_zero() || t.get(3).is_zero() {
        return false;
    }
    let Some(m) = t.get(1).to_u64() else {
        return false;
    };
    let Some(balls) = fam.entry(m) else {
        return false;
    };
    let p = t.params();
    balls.iter().any(|b| contains_sublevel(&p, &b.center, &b.radius))
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum InfEstimate {
    /// `x` is in no listed ball of `U_m`; the infimum is exactly 1.
    ExactOne,
    /// Least penalty found within budget, with its enumeration-least witness.
    UpperBound { value: BigRational, witness: WTuple },
}

/// Budgeted estimate of `inf_{n} f_{A,B,C}` at `(m, x)` over W-tuples.
///
/// Candidate centers are enumerated by increasing denominator shift `n_4`,
/// then lexicographically by numerators; only centers lying inside a listed
/// ball are viable (the sublevel ball contains its own center), and for each
/// the least admissible `n_3` is found by doubling and bisection, which is
/// sound because containment is monotone in `n_3`. Each examined center
/// costs one unit of budget.
pub fn inf_estimate(fam: &BallFamily, m: u64, x: &Point, budget: u64) -> InfEstimate {
    assert!(budget >= 1);
    if !fam.point_in(m, x) {
        return InfEstimate::ExactOne;
    }
    let balls = fam.entry(m).expect("point_in checked the entry");

    // The n_2 = 1, n_3 = 0 tuple caps the infimum at 1.
    let mut best = Best {
        value: BigRational::one(),
        witness: {
            let mut n = [0u64; 9].map(BigUint::from);
            n[0] = BigUint::from(m);
            n[1] = BigUint::one();
            WTuple::new(n)
        },
    };

    let mut remaining = budget;
    let mut n4 = 0u64;
    // Centers get arbitrarily dense as n_4 grows; stop when the budget is
    // spent or a perfect witness is found.
    'outer: while remaining > 0 {
        let shift = BigRational::from(BigInt::from(n4));
        let den = &shift + BigRational::one();
        let mut seen = std::collections::BTreeSet::new();
        for ball in balls {
            let Some(boxes) = numerator_box(ball, &shift, &den) else {
                continue;
            };
            let mut nums = boxes.iter().map(|r| r.0.clone()).collect::<Vec<_>>();
            loop {
                if seen.insert(nums.clone()) {
                    if remaining == 0 {
                        break 'outer;
                    }
                    remaining -= 1;
                    examine_center(fam, m, x, n4, &nums, balls, &mut best);
                    if best.value.is_zero() {
                        break 'outer;
                    }
                }
                // Odometer over the box, last coordinate fastest.
                let mut k = 4usize;
                loop {
                    nums[k] += BigInt::one();
                    if nums[k] <= boxes[k].1 {
                        break;
                    }
                    nums[k] = boxes[k].0.clone();
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                }
                if k == 0 && nums[0] == boxes[0].0 {
                    break;
                }
            }
        }
        n4 += 1;
    }

    InfEstimate::UpperBound {
        value: best.value,
        witness: best.witness,
    }
}

/// Running minimum held by `inf_estimate` during enumeration.
struct Best {
    value: BigRational,
    witness: WTuple,
}

/// Integer numerators whose centers fall inside the open ball, per
/// coordinate: `n_{k+5}/(1+n_4) - n_4` in `(y_k - r, y_k + r)`.
fn numerator_box(
    ball: &Ball,
    shift: &BigRational,
    den: &BigRational,
) -> Option<[(BigInt, BigInt); 5]> {
    let mut out: Vec<(BigInt, BigInt)> = Vec::with_capacity(5);
    for k in 0..5 {
        let lo = (&ball.center[k] - &ball.radius + shift) * den;
        let hi = (&ball.center[k] + &ball.radius + shift) * den;
        // Smallest and largest integers in the open interval (lo, hi).
        let mut start: BigInt = lo.floor().to_integer() + 1;
        if start.is_negative() {
            start = BigInt::zero();
        }
        let end = hi.ceil().to_integer() - 1;
        if start > end {
            return None;
        }
        out.push((start, end));
    }
    out.try_into().ok()
}

fn examine_center(
    fam: &BallFamily,
    m: u64,
    x: &Point,
    n4: u64,
    nums: &[BigInt],
    balls: &[Ball],
    best: &mut Best,
) {
    let numerators: [BigUint; 5] =
        std::array::from_fn(|k| nums[k].to_biguint().expect("numerators are natural"));
    // Least n_3 admitting containment in any listed ball.
    let mut params = ParaboloidParams {
        n3: BigUint::one(),
        n4: BigUint::from(n4),
        numerators,
    };
    let Some(n3) = minimal_n3(&mut params, balls) else {
        return;
    };
    params.n3 = n3;
    let penalty = params.penalty(x);
    if penalty < best.value {
        let mut n = [0u64; 9].map(BigUint::from);
        n[0] = BigUint::from(m);
        n[2] = params.n3.clone();
        n[3] = params.n4.clone();
        n[4..9].clone_from_slice(&params.numerators);
        let t = WTuple::new(n);
        debug_assert!(w_member(fam, &t));
        best.value = penalty;
        best.witness = t;
    }
}

/// Least `n_3 >= 1` whose sublevel ball fits in some listed ball, if any
/// `n_3 <= 2^48` works.
fn minimal_n3(params: &mut ParaboloidParams, balls: &[Ball]) -> Option<BigUint> {
    let fits = |n3: u64, p: &mut ParaboloidParams| {
        p.n3 = BigUint::from(n3);
        balls.iter().any(|b| contains_sublevel(p, &b.center, &b.radius))
    };
    let mut hi = 1u64;
    while !fits(hi, params) {
        if hi >= 1 << 48 {
            return None;
        }
        hi *= 2;
    }
    let mut lo = hi / 2; // fits(lo) is false (or lo = 0)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if mid == 0 || !fits(mid, params) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(BigUint::from(hi))
}

// ---------------------------------------------------------------------------
// f_{A,B,C} evaluation
// ---------------------------------------------------------------------------

/// Assignment flavor for `f_value`.
pub enum FAssignment<'a> {
    /// Explicit cells `n_0..n_A`; the bracket is computed literally.
    Dense(&'a DensePrefix),
    /// Well-formed assignment; well-formedness zeroes the reference and
    /// power-law penalties.
    Semantic(&'a WfAssignment),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FValue {
    Exact(BigRational),
    /// Certified at least 1: distinct naturals differ by at least 1, so
    /// `(n_B - n_C)^2 >= 1` whenever the cells differ.
    SymbolicLarge,
}

#[derive(Debug, Error)]
pub enum FError {
    #[error("dense evaluation needs cells n_0..n_{needed}, prefix has {got}")]
    PrefixTooShort { needed: BigUint, got: usize },
    #[error("dense evaluation requires numeric A and B")]
    SymbolicProgram,
    #[error("cell value exceeds the digit budget in dense mode")]
    Budget,
}

/// Evaluate the four-line bracket of `f_{A,B,C}` at `(x, m)`.
pub fn f_value(
    x: &Point,
    m: u64,
    asg: &FAssignment<'_>,
    prog: &CompiledEquation,
) -> Result<FValue, FError> {
    match asg {
        FAssignment::Dense(prefix) => f_dense(x, m, prefix, prog),
        FAssignment::Semantic(wf) => Ok(f_semantic(x, m, wf, prog)),
    }
}

fn square_rat(r: BigRational) -> BigRational {
    &r * &r
}

fn rat(n: &BigUint) -> BigRational {
    BigRational::from(BigInt::from(n.clone()))
}

/// Paraboloid term from cells `n_3..n_9`.
fn paraboloid_term(x: &Point, cells: &[BigUint]) -> BigRational {
    let params = ParaboloidParams {
        n3: cells[0].clone(),
        n4: cells[1].clone(),
        numerators: std::array::from_fn(|k| cells[2 + k].clone()),
    };
    if params.n3.is_zero() {
        return BigRational::zero();
    }
    params.penalty(x)
}

fn f_semantic(x: &Point, m: u64, wf: &WfAssignment, prog: &CompiledEquation) -> FValue {
    let cell = |k: u64| match wf.cell(&Index::from_u64(k)) {
        TowerValue::Nat(n) => n,
        TowerValue::Pow { .. } => unreachable!("free cells y1..y9 are numeric"),
    };
    let n1 = rat(&cell(1));
    let mrat = BigRational::from(BigInt::from(m));
    let mut total = square_rat(n1 - mrat);
    total += rat(&cell(2));
    let cells: Vec<BigUint> = (3..=9).map(cell).collect();
    total += paraboloid_term(x, &cells);
    if tower_eq(&wf.cell(&prog.b), &wf.cell(&prog.c)) {
        FValue::Exact(total)
    } else {
        FValue::SymbolicLarge
    }
}

fn f_dense(
    x: &Point,
    m: u64,
    prefix: &DensePrefix,
    prog: &CompiledEquation,
) -> Result<FValue, FError> {
    let b = prog.b.as_numeric().ok_or(FError::SymbolicProgram)?;
    let c = prog.c.as_numeric().ok_or(FError::SymbolicProgram)?;
    let a = prog.a.as_numeric().ok_or(FError::SymbolicProgram)?;
    let values = prefix.values();
    let needed = a.clone();
    if BigUint::from(values.len()) <= needed {
        return Err(FError::PrefixTooShort {
            needed,
            got: values.len(),
        });
    }
    let at = |k: &BigUint| -> Result<&BigUint, FError> {
        let k: usize = k.try_into().map_err(|_| FError::Budget)?;
        values.get(k).ok_or(FError::PrefixTooShort {
            needed: a.clone(),
            got: values.len(),
        })
    };

    let mut total = square_rat(rat(&values[0]) - BigRational::from(BigInt::from(2)));
    total += square_rat(rat(&values[1]) - BigRational::from(BigInt::from(m)));
    total += rat(&values[2]);
    let diff = BigInt::from(at(b)?.clone()) - BigInt::from(at(c)?.clone());
    total += BigRational::from(&diff * &diff);
    total += paraboloid_term(x, &values[3..=9]);

    // Power-law penalty over i, j <= B.
    let b_small: u64 = b.try_into().map_err(|_| FError::Budget)?;
    for i in 0..=b_small {
        for j in 0..=b_small {
            let base = &values[usize::try_from(i).unwrap()];
            let exp = &values[usize::try_from(j).unwrap()];
            let pow = crate::tower::tower_pow(
                &TowerValue::Nat(base.clone()),
                &TowerValue::Nat(exp.clone()),
            );
            let pow = tower_eval(&pow, crate::budget::digit_threshold())
                .map_err(|_| FError::Budget)?;
            let idx = BigUint::from(9u32)
                + (BigUint::one() << i) * BigUint::from(3u32).pow(j.try_into().unwrap());
            let diff = BigInt::from(at(&idx)?.clone()) - BigInt::from(pow);
            total += BigRational::from(&diff * &diff);
        }
    }
    Ok(FValue::Exact(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::compile_equation;
    use crate::poly::Polynomial;

    fn r(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn pt(coords: [&str; 5]) -> Point {
        std::array::from_fn(|k| r(coords[k]))
    }

    fn unit_family() -> BallFamily {
        BallFamily::new(
            [(
                0u64,
                vec![Ball {
                    center: pt(["0", "0", "0", "0", "0"]),
                    radius: r("1"),
                }],
            )]
            .into(),
        )
        .unwrap()
    }

    fn tuple(values: [u64; 9]) -> WTuple {
        WTuple::new(values.map(BigUint::from))
    }

    #[test]
    fn contains_sublevel_examples() {
        let origin = pt(["0", "0", "0", "0", "0"]);
        let p = ParaboloidParams {
            n3: BigUint::from(4u32),
            n4: BigUint::zero(),
            numerators: std::array::from_fn(|_| BigUint::zero()),
        };
        // Concentric: 1/2 < 1.
        assert!(contains_sublevel(&p, &origin, &r("1")));
        // Boundary: radius-1 closed ball not inside open radius-1 ball.
        let p1 = ParaboloidParams {
            n3: BigUint::one(),
            ..p.clone()
        };
        assert!(!contains_sublevel(&p1, &origin, &r("1")));
        // d^2 = 1/4, n_3 = 16: 1/2 + 1/4 < 1.
        let p16 = ParaboloidParams {
            n3: BigUint::from(16u32),
            ..p.clone()
        };
        let off = pt(["1/2", "0", "0", "0", "0"]);
        assert!(contains_sublevel(&p16, &off, &r("1")));
        // Tight: d = 1/2, sublevel radius 1/2 reaches the boundary exactly.
        let p4_off = ParaboloidParams {
            n3: BigUint::from(4u32),
            ..p
        };
        assert!(!contains_sublevel(&p4_off, &off, &r("1")));
    }

    #[test]
    fn w_member_examples() {
        let fam = unit_family();
        assert!(w_member(&fam, &tuple([7, 1, 0, 0, 0, 0, 0, 0, 0])));
        assert!(w_member(&fam, &tuple([0, 0, 16, 0, 0, 0, 0, 0, 0])));
        assert!(!w_member(&fam, &tuple([0, 0, 1, 0, 0, 0, 0, 0, 0])));
        // Unknown m: not a member.
        assert!(!w_member(&fam, &tuple([3, 0, 16, 0, 0, 0, 0, 0, 0])));
        // n_2 = 0 and n_3 = 0: the sublevel set is all of R^5.
        assert!(!w_member(&fam, &tuple([0, 0, 0, 0, 0, 0, 0, 0, 0])));
    }

    #[test]
    fn inf_estimate_examples() {
        let fam = unit_family();
        let origin = pt(["0", "0", "0", "0", "0"]);
        match inf_estimate(&fam, 0, &origin, 100_000) {
            InfEstimate::UpperBound { value, witness } => {
                assert!(value <= r("1/16"), "value {value}");
                assert!(w_member(&fam, &witness));
            }
            other => panic!("expected upper bound, got {other:?}"),
        }
        let outside = pt(["3", "0", "0", "0", "0"]);
        assert_eq!(inf_estimate(&fam, 0, &outside, 10), InfEstimate::ExactOne);
        // Unknown m.
        assert_eq!(inf_estimate(&fam, 5, &origin, 10), InfEstimate::ExactOne);
    }

    #[test]
    fn inf_estimate_interior_point() {
        let fam = unit_family();
        // Point inside but off-center: bound must still come out below 1 with
        // enough budget, and shrink as the budget grows.
        let x = pt(["1/3", "0", "0", "0", "0"]);
        let small = match inf_estimate(&fam, 0, &x, 50) {
            InfEstimate::UpperBound { value, .. } => value,
            other => panic!("{other:?}"),
        };
        let large = match inf_estimate(&fam, 0, &x, 20_000) {
            InfEstimate::UpperBound { value, .. } => value,
            other => panic!("{other:?}"),
        };
        assert!(large <= small);
        assert!(large < BigRational::one());
        assert!(!large.is_negative());
    }

    #[test]
    fn family_json_round_trip() {
        let fam = unit_family();
        let text = fam.to_json();
        assert_eq!(BallFamily::from_json(&text).unwrap(), fam);
        let parsed = BallFamily::from_json(
            r#"{"0": [{"center": ["1/2","0","0","0","0"], "radius": "1"}]}"#,
        )
        .unwrap();
        assert_eq!(parsed.entry(0).unwrap()[0].center[0], r("1/2"));
        assert!(BallFamily::from_json(r#"{"0": []}"#).is_err());
        assert!(BallFamily::from_json(
            r#"{"0": [{"center": ["0","0","0","0","0"], "radius": "0"}]}"#
        )
        .is_err());
    }

    fn tiny_program() -> CompiledEquation {
        compile_equation(&Polynomial::zero()).unwrap()
    }

    #[test]
    fn f_value_examples() {
        let prog = tiny_program(); // B = C = 0, A = 10
        let x = pt(["0", "0", "0", "0", "0"]);

        // Well-formed, n_1 = m, n_2 = 1, n_3 = 0: only the n_2 term survives.
        let wf = WfAssignment::from_free_cells(
            [
                (BigUint::from(1u32), BigUint::from(7u32)),
                (BigUint::from(2u32), BigUint::one()),
            ]
            .into(),
        );
        assert_eq!(
            f_value(&x, 7, &FAssignment::Semantic(&wf), &prog).unwrap(),
            FValue::Exact(BigRational::one())
        );

        // Everything vanishing.
        let wf = WfAssignment::from_free_cells(BTreeMap::new());
        assert_eq!(
            f_value(&x, 0, &FAssignment::Semantic(&wf), &prog).unwrap(),
            FValue::Exact(BigRational::zero())
        );

        // Dense mode with n_0 = 3: at least (n_0 - 2)^2 = 1 regardless of x.
        let prefix = DensePrefix::new(
            [3u64, 0, 0, 0, 0, 0, 0, 0, 0, 0, 27]
                .map(BigUint::from)
                .to_vec(),
        )
        .unwrap();
        match f_value(&x, 0, &FAssignment::Dense(&prefix), &prog).unwrap() {
            FValue::Exact(v) => assert!(v >= BigRational::one()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dense_matches_semantic_when_well_formed() {
        let prog = tiny_program();
        let x = pt(["1/2", "0", "-1", "0", "2/3"]);
        // Materialize the closure of a small free assignment up to A = 10.
        let free: BTreeMap<BigUint, BigUint> = [
            (BigUint::from(1u32), BigUint::from(2u32)),
            (BigUint::from(3u32), BigUint::from(1u32)),
            (BigUint::from(5u32), BigUint::from(4u32)),
        ]
        .into();
        let wf = WfAssignment::from_free_cells(free);
        let dense: Vec<BigUint> = (0..=10)
            .map(|k| match wf.cell(&Index::from_u64(k)) {
                TowerValue::Nat(n) => n,
                _ => panic!("small cells are numeric"),
            })
            .collect();
        let prefix = DensePrefix::new(dense).unwrap();
        let d = f_value(&x, 2, &FAssignment::Dense(&prefix), &prog).unwrap();
        let s = f_value(&x, 2, &FAssignment::Semantic(&wf), &prog).unwrap();
        assert_eq!(d, s);
    }

    #[test]
    fn rational_parse_render() {
        assert_eq!(render_rational(&r("2/4")), "1/2");
        assert_eq!(render_rational(&r("-6/3")), "-2");
        assert_eq!(render_rational(&r("5")), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
