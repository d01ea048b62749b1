//! Sparse well-formed sequences: an assignment of free cells plus lazily
//! derived reserved cells. Cell 0 always reads 2, a reserved cell
//! `9+2^i*3^j` always reads `n_i ^ n_j`, unassigned free cells read 0.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::index::{classify, Index, IndexClass};
use crate::tower::{tower_eq, tower_pow, TowerValue};

/// A well-formed sequence in sparse form. Only free cells are stored; reserved
/// cells are derived on demand and memoized.
#[derive(Debug, Default)]
pub struct WfAssignment {
    free: BTreeMap<BigUint, BigUint>,
    cache: Mutex<HashMap<Index, TowerValue>>,
}

impl Clone for WfAssignment {
    fn clone(&self) -> Self {
        WfAssignment {
            free: self.free.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

/// An explicit initial segment `n_0..n_A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePrefix(Vec<BigUint>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationResult {
    Valid,
    /// First violated constraint by ascending index.
    Violation {
        at: usize,
        expected: TowerValue,
        found: BigUint,
    },
    /// A reserved-cell value too large to verify numerically.
    BudgetExceeded { at: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtendError {
    #[error("cell 0 is pinned to 2, prefix claims {found}")]
    BadReference { found: BigUint },
    #[error("reserved cell {at} must equal {expected}, prefix claims {found}")]
    ReservedMismatch {
        at: BigUint,
        expected: String,
        found: BigUint,
    },
}

impl DensePrefix {
    pub fn new(values: Vec<BigUint>) -> Option<Self> {
        if values.is_empty() {
            None
        } else {
            Some(DensePrefix(values))
        }
    }

    pub fn values(&self) -> &[BigUint] {
        &self.0
    }
}

impl WfAssignment {
    /// Assignment with the given free cells; everything else defaults.
    /// Panics if a key is not a free index.
    pub fn from_free_cells(free: BTreeMap<BigUint, BigUint>) -> Self {
        for k in free.keys() {
            assert!(
                classify(&Index::Num(k.clone())) == IndexClass::Free,
                "index {k} is not free"
            );
        }
        WfAssignment {
            free,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn free_cells(&self) -> &BTreeMap<BigUint, BigUint> {
        &self.free
    }

    /// Value of cell `k`, deriving reserved cells recursively. The dependency
    /// graph descends strictly in index magnitude, so derivation terminates.
    pub fn cell(&self, k: &Index) -> TowerValue {
        match classify(k) {
            IndexClass::ReferenceCell => TowerValue::two(),
            IndexClass::Free => {
                let key = k.as_numeric().expect("free indices are numeric");
                TowerValue::Nat(self.free.get(key).cloned().unwrap_or_default())
            }
            IndexClass::ReservedPower(i, j) => {
                // Memoize numeric indices only: symbolic trees never repeat a
                // node, and cloning them as map keys would dominate the cost.
                let cacheable = k.as_numeric().is_some();
                if cacheable {
                    if let Some(v) = self.cache.lock().unwrap().get(k) {
                        return v.clone();
                    }
                }
                let v = tower_pow(&self.cell(&i), &self.cell(&j));
                if cacheable {
                    self.cache
                        .lock()
                        .unwrap()
                        .entry(k.clone())
                        .or_insert(v.clone());
                }
                v
            }
        }
    }

    /// The unique minimal well-formed extension of a sparse prefix, with all
    /// unmentioned free cells pinned to 0. Reserved entries, if present, must
    /// already satisfy their equations.
    pub fn extend(prefix: &BTreeMap<BigUint, BigUint>) -> Result<Self, ExtendError> {
        let mut free = BTreeMap::new();
        let mut reserved_claims = Vec::new();
        for (k, v) in prefix {
            match classify(&Index::Num(k.clone())) {
                IndexClass::ReferenceCell => {
                    if *v != BigUint::from(2u32) {
                        return Err(ExtendError::BadReference { found: v.clone() });
                    }
                }
                IndexClass::Free => {
                    free.insert(k.clone(), v.clone());
                }
                IndexClass::ReservedPower(..) => {
                    reserved_claims.push((k.clone(), v.clone()));
                }
            }
        }
        let asg = WfAssignment::from_free_cells(free);
        for (k, v) in reserved_claims {
            let expected = asg.cell(&Index::Num(k.clone()));
            if !tower_eq(&expected, &TowerValue::Nat(v.clone())) {
                return Err(ExtendError::ReservedMismatch {
                    at: k,
                    expected: expected.to_string(),
                    found: v,
                });
            }
        }
        Ok(asg)
    }
}

/// Check an explicit prefix: `n_0 = 2` and every reserved index in range
/// satisfies its equation. Reports the first violation by ascending index.
pub fn validate_prefix(p: &DensePrefix) -> ValidationResult {
    let values = p.values();
    if values[0] != BigUint::from(2u32) {
        return ValidationResult::Violation {
            at: 0,
            expected: TowerValue::two(),
            found: values[0].clone(),
        };
    }
    for (k, found) in values.iter().enumerate().skip(1) {
        if let IndexClass::ReservedPower(i, j) = classify(&Index::from_u64(k as u64)) {
            let i = i.as_numeric().unwrap().try_into().unwrap_or(usize::MAX);
            let j = j.as_numeric().unwrap().try_into().unwrap_or(usize::MAX);
            // i, j < k for every reserved k, so both source cells are in range.
            let expected = tower_pow(
                &TowerValue::Nat(values[i].clone()),
                &TowerValue::Nat(values[j].clone()),
            );
            match &expected {
                TowerValue::Nat(n) => {
                    if n != found {
                        return ValidationResult::Violation {
                            at: k,
                            expected,
                            found: found.clone(),
                        };
                    }
                }
                TowerValue::Pow { .. } => {
                    return ValidationResult::BudgetExceeded { at: k };
                }
            }
        }
    }
    ValidationResult::Valid
}

/// File form of a sparse assignment: `{"free": {"<index>": <nat>, ...}}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct AssignmentFile {
    pub free: BTreeMap<String, u64>,
}

impl AssignmentFile {
    pub fn to_prefix(&self) -> Result<BTreeMap<BigUint, BigUint>, String> {
        self.free
            .iter()
            .map(|(k, v)| {
                let k: BigUint = k
                    .parse()
                    .map_err(|_| format!("bad index {k:?} in assignment file"))?;
                Ok((k, BigUint::from(*v)))
            })
            .collect()
    }

    pub fn from_assignment(asg: &WfAssignment) -> Self {
        AssignmentFile {
            free: asg
                .free
                .iter()
                .map(|(k, v)| {
                    (
                        k.to_string(),
                        v.try_into().expect("assignment value exceeds u64"),
                    )
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::tower_eval;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    /// Independent oracle: materialize the closure densely up to `len` cells.
    fn closure_oracle(free: &BTreeMap<BigUint, BigUint>, len: usize) -> Vec<BigUint> {
        let mut out: Vec<BigUint> = Vec::with_capacity(len);
        for k in 0..len {
            let v = if k == 0 {
                big(2)
            } else {
                let mut reserved = None;
                for i in 0..40u32 {
                    for j in 0..40u32 {
                        let idx = 9u128 + (1u128 << i) * 3u128.pow(j);
                        if idx == k as u128 {
                            reserved = Some((i as usize, j as usize));
                        }
                    }
                }
                match reserved {
                    Some((i, j)) => {
                        let e: u32 = (&out[j]).try_into().unwrap();
                        out[i].pow(e)
                    }
                    None => free.get(&big(k as u64)).cloned().unwrap_or_default(),
                }
            };
            out.push(v);
        }
        out
    }

    #[test]
    fn cell_examples() {
        let asg = WfAssignment::from_free_cells([(big(3), big(4))].into());
        assert_eq!(asg.cell(&Index::zero()), TowerValue::two());
        // n_36 = n_0^{n_3} = 2^4 = 16.
        assert_eq!(asg.cell(&Index::from_u64(36)), TowerValue::nat(16u32));
        let empty = WfAssignment::default();
        // n_10 = n_0^{n_0} = 4.
        assert_eq!(empty.cell(&Index::from_u64(10)), TowerValue::nat(4u32));
        // n_12 = n_0^{n_1} = 2^0 = 1.
        assert_eq!(empty.cell(&Index::from_u64(12)), TowerValue::one());
    }

    #[test]
    fn cell_matches_closure_oracle() {
        let free: BTreeMap<_, _> = [(big(1), big(2)), (big(3), big(3)), (big(4), big(1))].into();
        let oracle = closure_oracle(&free, 50);
        let asg = WfAssignment::from_free_cells(free);
        for (k, expected) in oracle.iter().enumerate() {
            let got = asg.cell(&Index::from_u64(k as u64));
            assert_eq!(
                tower_eval(&got, 100_000).unwrap(),
                *expected,
                "cell {k}"
            );
        }
    }

    #[test]
    fn cell_query_order_independent() {
        let free: BTreeMap<_, _> = [(big(3), big(2))].into();
        let a = WfAssignment::from_free_cells(free.clone());
        let b = WfAssignment::from_free_cells(free);
        let forward: Vec<_> = (0..40).map(|k| a.cell(&Index::from_u64(k))).collect();
        let backward: Vec<_> = (0..40).rev().map(|k| b.cell(&Index::from_u64(k))).collect();
        for (k, v) in forward.iter().enumerate() {
            assert_eq!(*v, backward[39 - k]);
            assert_eq!(*v, a.cell(&Index::from_u64(k as u64)));
        }
    }

    #[test]
    fn validate_examples() {
        let p = DensePrefix::new(
            [2u64, 7, 1, 0, 5, 0, 0, 0, 0, 0, 4].map(big).to_vec(),
        )
        .unwrap();
        assert_eq!(validate_prefix(&p), ValidationResult::Valid);

        let p = DensePrefix::new(vec![big(3)]).unwrap();
        assert_eq!(
            validate_prefix(&p),
            ValidationResult::Violation {
                at: 0,
                expected: TowerValue::two(),
                found: big(3),
            }
        );

        let p = DensePrefix::new(
            [2u64, 0, 0, 0, 0, 0, 0, 0, 0, 0, 5].map(big).to_vec(),
        )
        .unwrap();
        assert_eq!(
            validate_prefix(&p),
            ValidationResult::Violation {
                at: 10,
                expected: TowerValue::nat(4u32),
                found: big(5),
            }
        );
    }

    #[test]
    fn validate_accepts_materialized_assignment() {
        let free: BTreeMap<_, _> = [(big(1), big(1)), (big(3), big(2))].into();
        let oracle = closure_oracle(&free, 40);
        let p = DensePrefix::new(oracle).unwrap();
        assert_eq!(validate_prefix(&p), ValidationResult::Valid);
    }

    #[test]
    fn extend_examples() {
        let prefix: BTreeMap<_, _> = (1u64..=9).map(|k| (big(k), big(0))).chain([(big(1), big(5))]).collect();
        let asg = WfAssignment::extend(&prefix).unwrap();
        assert_eq!(asg.cell(&Index::from_u64(10)), TowerValue::nat(4u32));

        let asg = WfAssignment::extend(&BTreeMap::new()).unwrap();
        assert_eq!(asg.cell(&Index::from_u64(12)), TowerValue::one());

        let bad: BTreeMap<_, _> = [(big(3), big(2)), (big(36), big(9))].into();
        let err = WfAssignment::extend(&bad).unwrap_err();
        assert!(matches!(err, ExtendError::ReservedMismatch { .. }), "{err:?}");

        let ok: BTreeMap<_, _> = [(big(3), big(2)), (big(36), big(4))].into();
        assert!(WfAssignment::extend(&ok).is_ok());
    }
}
