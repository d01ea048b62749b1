//! Compilation of polynomials into index programs: monomials to exponent
//! indices `E_p` (cell value `2^p(n)`), nonnegative polynomials to
//! double-exponent indices `D_p` (cell value `2^2^p(n)`), equations to
//! `(B, C, A)` with `n_B = n_C` iff `p(n) = 0`, and c.e.-set descriptions to
//! membership programs, together with brute-force verification at desk scale.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::index::{alloc_scratch, cmp_indices, encode_power_index, Index, OrderResult};
use crate::poly::{parse_polynomial, Monomial, NegativeCoefficient, Polynomial, VarIndex};
use crate::tower::tower_eq;
use crate::wf::WfAssignment;

/// An equation compiled to a pair of double-exponent indices.
///
/// For every well-formed assignment, `n_B = n_C` iff the source polynomial
/// vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledEquation {
    pub b: Index,
    pub c: Index,
    /// `9 + 2^B*3^C`, the length bound of the quantifier block.
    pub a: Index,
    pub source: Polynomial,
    pub scratch_vars: Vec<VarIndex>,
    /// False when `B >= C` could not be certified and the original order was
    /// kept; the semantics are order-independent.
    pub order_certified: bool,
}

/// A compiled membership program for a c.e. subset of 9-tuples.
#[derive(Debug, Clone)]
pub struct CeSetProgram {
    /// The user-supplied Diophantine representation `r(w, z_1..z_m)`.
    pub relation: Polynomial,
    pub w: VarIndex,
    pub witnesses: Vec<VarIndex>,
    /// Scratch cells `y_{9+5t}`, `t = 1..m`, standing for `z_1..z_m`.
    pub witness_scratch: Vec<VarIndex>,
    /// Scratch cells holding the nested pairing chain, outermost first; the
    /// first one carries the full q-code of `(y_1..y_9)`.
    pub chain_scratch: Vec<VarIndex>,
    pub compiled: CompiledEquation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipResult {
    /// Witness values for `z_1..z_m`, in order.
    Accept(Vec<BigUint>),
    /// Not a rejection proof: membership is only semi-decidable.
    NoWitnessFound,
}

/// One mismatch between the equation and its compiled form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub assignment: BTreeMap<VarIndex, BigUint>,
    pub poly_vanishes: bool,
    pub cells_equal: bool,
}

/// Outcome of exhaustive desk-scale verification.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checked: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Assignments solving `p = 0`, in enumeration order.
    pub solutions: Vec<BTreeMap<VarIndex, BigUint>>,
}

#[derive(Debug, Error)]
pub enum CompileError {
    #[error("monomial has coefficient {0}, expected 1")]
    CoefficientNotOne(BigUint),
    #[error(transparent)]
    Negative(#[from] NegativeCoefficient),
    #[error("witness variable collides with w or another witness")]
    WitnessCollision,
    #[error("relation uses variable {0} which is neither w nor a witness")]
    UnknownVariable(VarIndex),
    #[error("brute-force verification requires at most {limit} {what}")]
    DeskScale { what: &'static str, limit: u64 },
}

/// Exponent index of a coefficient-1 monomial: `cell(E_p) = 2^p(n)` for every
/// well-formed assignment.
///
/// `E_1 = 0` (the reference cell holds `2 = 2^1`); variables are peeled in
/// ascending index order, so the outermost encoding step carries the smallest
/// variable.
pub fn exp_index(m: &Monomial) -> Result<Index, CompileError> {
    if !num_traits::One::is_one(&m.coefficient) {
        return Err(CompileError::CoefficientNotOne(m.coefficient.clone()));
    }
    let mut occurrences: Vec<&VarIndex> = Vec::new();
    for (v, e) in m.exponents.iter() {
        for _ in 0..*e {
            occurrences.push(v);
        }
    }
    let mut idx = Index::zero();
    for v in occurrences.into_iter().rev() {
        idx = encode_power_index(idx, Index::Num(v.value().clone()));
    }
    Ok(idx)
}

/// Double-exponent index of a nonnegative polynomial:
/// `cell(D_p) = 2^(2^p(n))` for every well-formed assignment.
///
/// `D_0 = 0`; unit monomials are folded in canonical term order via
/// `D_{r+q} = 9 + 2^{D_r}*3^{E_q}`.
pub fn sum_index(p: &Polynomial) -> Result<Index, CompileError> {
    let mut d = Index::zero();
    for m in p.unit_monomials()? {
        let e = exp_index(&m)?;
        d = encode_power_index(d, e);
    }
    Ok(d)
}

/// Compile `p = 0` into `(B, C, A)` with `B >= C` where possible.
pub fn compile_equation(p: &Polynomial) -> Result<CompiledEquation, CompileError> {
    let (q0, q1) = p.split_signs();
    let b = sum_index(&q0)?;
    let c = sum_index(&q1)?;
    let (b, c, order_certified) = order_indices(b, c, &q0, &q1);
    let a = encode_power_index(b.clone(), c.clone());
    Ok(CompiledEquation {
        b,
        c,
        a,
        source: p.clone(),
        scratch_vars: Vec::new(),
        order_certified,
    })
}

/// Put the larger index first. When the numerals are beyond comparison, the
/// longer unit-monomial fold dominates; if even those tie, keep the original
/// order and drop the certification flag.
fn order_indices(b: Index, c: Index, q0: &Polynomial, q1: &Polynomial) -> (Index, Index, bool) {
    match cmp_indices(&b, &c) {
        OrderResult::Less => (c, b, true),
        OrderResult::Equal | OrderResult::Greater => (b, c, true),
        OrderResult::Unknown => {
            let n0 = q0.unit_monomials().map(|u| u.len()).unwrap_or(0);
            let n1 = q1.unit_monomials().map(|u| u.len()).unwrap_or(0);
            if n0 > n1 {
                (b, c, true)
            } else if n1 > n0 {
                (c, b, true)
            } else {
                (b, c, false)
            }
        }
    }
}

/// `J(x, y) = x + (x+y)^2`, an injection of pairs of naturals.
pub fn pairing_j(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    x + &s * &s
}

/// Right-nested J-code of a 9-tuple.
pub fn q_code(tuple: &[BigUint; 9]) -> BigUint {
    let mut acc = tuple[8].clone();
    for k in (0..8).rev() {
        acc = pairing_j(&tuple[k], &acc);
    }
    acc
}

fn j_poly(x: &Polynomial, y: &Polynomial) -> Polynomial {
    let s = x + y;
    x + &(&s * &s)
}

fn tuple_var(k: u64) -> VarIndex {
    VarIndex::from_u64(k).expect("y1..y9 are free")
}

/// Compile a c.e.-set description `r(w, z_1..z_m)` into a membership program
/// over 9-tuples: `(n_1..n_9)` is a member iff some setting of the scratch
/// cells yields `n_B = n_C`.
///
/// The nested pairing `w = J(y_1, J(y_2, ... J(y_8, y_9)))` is introduced one
/// step at a time through dedicated scratch cells, and the conjunction of the
/// chain equations with `r = 0` is folded into a single equation as a sum of
/// squares. Substituting the fully expanded pairing polynomial directly would
/// blow up past any feasible term count.
pub fn compile_ce(
    r: &Polynomial,
    w: &VarIndex,
    witnesses: &[VarIndex],
) -> Result<CeSetProgram, CompileError> {
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(w.clone());
    for z in witnesses {
        if !seen.insert(z.clone()) {
            return Err(CompileError::WitnessCollision);
        }
    }
    for v in r.variables() {
        if !seen.contains(v) {
            return Err(CompileError::UnknownVariable(v.clone()));
        }
    }

    let m = witnesses.len() as u64;
    let witness_scratch: Vec<VarIndex> = (1..=m).map(alloc_scratch).collect();
    let chain_scratch: Vec<VarIndex> = (m + 1..=m + 8).map(alloc_scratch).collect();

    // Chain equations: u_8 = J(y_8, y_9), u_i = J(y_i, u_{i+1}); u_1 is the
    // full code of the tuple.
    let mut constraints: Vec<Polynomial> = Vec::new();
    for i in (0..8usize).rev() {
        let u_i = Polynomial::var(chain_scratch[i].clone());
        let inner = if i == 7 {
            Polynomial::var(tuple_var(9))
        } else {
            Polynomial::var(chain_scratch[i + 1].clone())
        };
        let j = j_poly(&Polynomial::var(tuple_var(i as u64 + 1)), &inner);
        constraints.push(&u_i - &j);
    }

    let mut subst: BTreeMap<VarIndex, Polynomial> = BTreeMap::new();
    subst.insert(w.clone(), Polynomial::var(chain_scratch[0].clone()));
    for (z, s) in witnesses.iter().zip(&witness_scratch) {
        subst.insert(z.clone(), Polynomial::var(s.clone()));
    }
    constraints.push(r.substitute(&subst));

    let mut p = Polynomial::zero();
    for c in &constraints {
        p = &p + &(c * c);
    }

    let mut compiled = compile_equation(&p)?;
    compiled.scratch_vars = witness_scratch
        .iter()
        .chain(&chain_scratch)
        .cloned()
        .collect();
    Ok(CeSetProgram {
        relation: r.clone(),
        w: w.clone(),
        witnesses: witnesses.to_vec(),
        witness_scratch,
        chain_scratch,
        compiled,
    })
}

impl CeSetProgram {
    /// The forced values of the pairing-chain cells for a given tuple.
    fn chain_values(&self, tuple: &[BigUint; 9]) -> Vec<BigUint> {
        let mut values = vec![BigUint::zero(); 8];
        values[7] = pairing_j(&tuple[7], &tuple[8]);
        for i in (0..7).rev() {
            values[i] = pairing_j(&tuple[i], &values[i + 1]);
        }
        values
    }
}

/// Search for a witness with all values at most `witness_bound`, dovetailed by
/// increasing maximum then lexicographic. Candidates are screened by exact
/// polynomial evaluation; an accept is certified through the compiled cells
/// (`tower_eq(cell(B), cell(C))`).
pub fn check_membership(
    prog: &CeSetProgram,
    tuple: &[BigUint; 9],
    witness_bound: u64,
) -> MembershipResult {
    let chain = prog.chain_values(tuple);
    let m = prog.witness_scratch.len();

    let mut base_asg: BTreeMap<VarIndex, BigUint> = BTreeMap::new();
    for (k, v) in tuple.iter().enumerate() {
        base_asg.insert(tuple_var(k as u64 + 1), v.clone());
    }
    for (var, v) in prog.chain_scratch.iter().zip(&chain) {
        base_asg.insert(var.clone(), v.clone());
    }

    let mut found = None;
    for_each_witness(m, witness_bound, &mut |candidate| {
        let mut asg = base_asg.clone();
        for (var, v) in prog.witness_scratch.iter().zip(candidate) {
            asg.insert(var.clone(), BigUint::from(*v));
        }
        let value = prog
            .compiled
            .source
            .eval(&asg)
            .expect("membership assignment is total");
        if value.is_zero() {
            found = Some(candidate.to_vec());
            return false;
        }
        true
    });

    match found {
        Some(witness) => {
            // Certify through the well-formed-cell semantics.
            let mut free: BTreeMap<BigUint, BigUint> = BTreeMap::new();
            for (k, v) in tuple.iter().enumerate() {
                free.insert(BigUint::from(k as u64 + 1), v.clone());
            }
            for (var, v) in prog.chain_scratch.iter().zip(&chain) {
                free.insert(var.value().clone(), v.clone());
            }
            for (var, v) in prog.witness_scratch.iter().zip(&witness) {
                free.insert(var.value().clone(), BigUint::from(*v));
            }
            let asg = WfAssignment::from_free_cells(free);
            assert!(
                tower_eq(&asg.cell(&prog.compiled.b), &asg.cell(&prog.compiled.c)),
                "compiled cells disagree with polynomial evaluation"
            );
            MembershipResult::Accept(witness.iter().map(|&v| BigUint::from(v)).collect())
        }
        None => MembershipResult::NoWitnessFound,
    }
}

/// Visit witness tuples of length `m` with values `<= bound`, ordered by
/// increasing maximum then lexicographic. Stops early when `f` returns false.
fn for_each_witness(m: usize, bound: u64, f: &mut dyn FnMut(&[u64]) -> bool) {
    if m == 0 {
        f(&[]);
        return;
    }
    let mut tuple = vec![0u64; m];
    for shell in 0..=bound {
        if !visit_shell(&mut tuple, 0, shell, false, f) {
            return;
        }
    }
}

fn visit_shell(
    tuple: &mut [u64],
    pos: usize,
    shell: u64,
    hit: bool,
    f: &mut dyn FnMut(&[u64]) -> bool,
) -> bool {
    if pos == tuple.len() {
        return if hit { f(tuple) } else { true };
    }
    for v in 0..=shell {
        tuple[pos] = v;
        if !visit_shell(tuple, pos + 1, shell, hit || v == shell, f) {
            return false;
        }
    }
    true
}

/// Exhaustively check `eval(p) = 0 <=> tower_eq(cell(B), cell(C))` over all
/// assignments of `p`'s variables with values up to `value_bound`.
pub fn brute_force_verify(p: &Polynomial, value_bound: u64) -> Result<VerifyReport, CompileError> {
    let vars: Vec<VarIndex> = p.variables().cloned().collect();
    if vars.len() > 4 {
        return Err(CompileError::DeskScale {
            what: "variables",
            limit: 4,
        });
    }
    if value_bound > 16 {
        return Err(CompileError::DeskScale {
            what: "for the value bound",
            limit: 16,
        });
    }
    let prog = compile_equation(p)?;
    let mut report = VerifyReport {
        checked: 0,
        counterexamples: Vec::new(),
        solutions: Vec::new(),
    };
    let mut values = vec![0u64; vars.len()];
    loop {
        let asg: BTreeMap<VarIndex, BigUint> = vars
            .iter()
            .cloned()
            .zip(values.iter().map(|&v| BigUint::from(v)))
            .collect();
        let poly_vanishes = p.eval(&asg).expect("assignment is total").is_zero();
        let free: BTreeMap<BigUint, BigUint> = asg
            .iter()
            .map(|(k, v)| (k.value().clone(), v.clone()))
            .collect();
        let wf = WfAssignment::from_free_cells(free);
        let cells_equal = tower_eq(&wf.cell(&prog.b), &wf.cell(&prog.c));
        report.checked += 1;
        if poly_vanishes != cells_equal {
            report.counterexamples.push(Counterexample {
                assignment: asg.clone(),
                poly_vanishes,
                cells_equal,
            });
        }
        if poly_vanishes {
            report.solutions.push(asg);
        }
        // Odometer over the value grid.
        let mut i = 0;
        loop {
            if i == values.len() {
                return Ok(report);
            }
            if values[i] < value_bound {
                values[i] += 1;
                break;
            }
            values[i] = 0;
            i += 1;
        }
        if vars.is_empty() {
            return Ok(report);
        }
    }
}

// ---------------------------------------------------------------------------
// Program files
// ---------------------------------------------------------------------------

/// On-disk form of a compiled program.
#[derive(Debug, Serialize, Deserialize)]
pub struct ProgramFile {
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "A")]
    pub a: String,
    pub source: String,
    pub scratch: Vec<u64>,
    /// Present for membership programs; the chain and witness layout is
    /// reconstructed deterministically by recompiling the relation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ce: Option<CeMeta>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CeMeta {
    pub relation: String,
    pub w: u64,
    pub witnesses: Vec<u64>,
}

#[derive(Debug, Error)]
pub enum ProgramFileError {
    #[error("bad index rendering: {0}")]
    BadIndex(#[from] crate::index::IndexParseError),
    #[error("bad polynomial: {0}")]
    BadPolynomial(#[from] crate::poly::ParseError),
    #[error("bad variable: {0}")]
    BadVariable(#[from] crate::poly::VarIndexError),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error("stored indices do not match the recompiled program")]
    Inconsistent,
}

impl CompiledEquation {
    pub fn to_file(&self) -> ProgramFile {
        ProgramFile {
            b: self.b.to_string(),
            c: self.c.to_string(),
            a: self.a.to_string(),
            source: self.source.to_string(),
            scratch: self
                .scratch_vars
                .iter()
                .map(|v| v.value().try_into().expect("scratch index fits u64"))
                .collect(),
            ce: None,
        }
    }
}

impl CeSetProgram {
    pub fn to_file(&self) -> ProgramFile {
        let mut f = self.compiled.to_file();
        f.ce = Some(CeMeta {
            relation: self.relation.to_string(),
            w: self.w.value().try_into().expect("w index fits u64"),
            witnesses: self
                .witnesses
                .iter()
                .map(|v| v.value().try_into().expect("witness index fits u64"))
                .collect(),
        });
        f
    }

    pub fn from_file(file: &ProgramFile) -> Result<Self, ProgramFileError> {
        let meta = file.ce.as_ref().ok_or(ProgramFileError::Inconsistent)?;
        let r = parse_polynomial(&meta.relation)?;
        let w = VarIndex::from_u64(meta.w)?;
        let witnesses: Result<Vec<_>, _> =
            meta.witnesses.iter().map(|&k| VarIndex::from_u64(k)).collect();
        let prog = compile_ce(&r, &w, &witnesses?)?;
        let ok = prog.compiled.b.to_string() == file.b
            && prog.compiled.c.to_string() == file.c
            && prog.compiled.a.to_string() == file.a;
        if !ok {
            return Err(ProgramFileError::Inconsistent);
        }
        Ok(prog)
    }
}

impl CompiledEquation {
    pub fn from_file(file: &ProgramFile) -> Result<Self, ProgramFileError> {
        let source = parse_polynomial(&file.source)?;
        let mut prog = compile_equation(&source)?;
        let scratch: Result<Vec<_>, _> =
            file.scratch.iter().map(|&k| VarIndex::from_u64(k)).collect();
        prog.scratch_vars = scratch?;
        if prog.b.to_string() != file.b
            || prog.c.to_string() != file.c
            || prog.a.to_string() != file.a
        {
            return Err(ProgramFileError::Inconsistent);
        }
        Ok(prog)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::tower::{tower_pow, TowerValue};
    use num_traits::One;

    fn mono(src: &str) -> Monomial {
        let p = parse_polynomial(src).unwrap();
        let mut units = p.unit_monomials().unwrap();
        assert_eq!(units.len(), 1, "{src} is not a unit monomial");
        units.pop().unwrap()
    }

    #[test]
    fn exp_index_examples() {
        assert_eq!(exp_index(&mono("1")).unwrap(), Index::zero());
        assert_eq!(exp_index(&mono("y3")).unwrap(), Index::from_u64(36));
        // y1*y3: peel y1 after y3, giving 9 + 2^36*3.
        let e = exp_index(&mono("y1*y3")).unwrap();
        let expected = BigUint::from(9u32) + (BigUint::one() << 36) * BigUint::from(3u32);
        assert_eq!(e, Index::Num(expected));
    }

    #[test]
    fn sum_index_examples() {
        assert_eq!(sum_index(&Polynomial::zero()).unwrap(), Index::zero());
        // D for the constant 2: fold 1 twice; D_1 = 10, D_2 = 9 + 2^10 = 1033.
        let d = sum_index(&parse_polynomial("2").unwrap()).unwrap();
        assert_eq!(d, Index::from_u64(1033));
        // D for y3 is 9 + 3^36.
        let d = sum_index(&parse_polynomial("y3").unwrap()).unwrap();
        assert_eq!(
            d,
            Index::Num(BigUint::from(9u32) + BigUint::from(3u32).pow(36))
        );
    }

    /// `cell(E_p) = 2^p(n)` and `cell(D_p) = 2^(2^p(n))` on small monomials.
    #[test]
    fn index_soundness_small() {
        for src in ["1", "y1", "y3", "y1^2", "y1*y3", "y3^2"] {
            let p = parse_polynomial(src).unwrap();
            let e = exp_index(&mono(src)).unwrap();
            let d = sum_index(&p).unwrap();
            for n1 in 0u64..=3 {
                for n3 in 0u64..=3 {
                    let asg: BTreeMap<_, _> = [
                        (VarIndex::from_u64(1).unwrap(), BigUint::from(n1)),
                        (VarIndex::from_u64(3).unwrap(), BigUint::from(n3)),
                    ]
                    .into();
                    let val = p.eval(&asg).unwrap().to_biguint().unwrap();
                    let wf = WfAssignment::from_free_cells(
                        [(BigUint::from(1u32), BigUint::from(n1)),
                         (BigUint::from(3u32), BigUint::from(n3))]
                        .into(),
                    );
                    let two_p = tower_pow(&TowerValue::two(), &TowerValue::Nat(val.clone()));
                    assert!(tower_eq(&wf.cell(&e), &two_p), "{src} E at {n1},{n3}");
                    let two_two_p = tower_pow(&TowerValue::two(), &two_p);
                    assert!(tower_eq(&wf.cell(&d), &two_two_p), "{src} D at {n1},{n3}");
                }
            }
        }
    }

    #[test]
    fn compile_zero() {
        let prog = compile_equation(&Polynomial::zero()).unwrap();
        assert_eq!(prog.b, Index::zero());
        assert_eq!(prog.c, Index::zero());
        assert_eq!(prog.a, Index::from_u64(10));
    }

    #[test]
    fn compile_intro_equation() {
        let p = parse_polynomial("y1 + y3 - 2*y1*y3").unwrap();
        let report = brute_force_verify(&p, 8).unwrap();
        assert!(report.counterexamples.is_empty());
        let solutions: Vec<Vec<u64>> = report
            .solutions
            .iter()
            .map(|s| s.values().map(|v| v.try_into().unwrap()).collect())
            .collect();
        assert_eq!(solutions, vec![vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn verify_constants() {
        let one = brute_force_verify(&parse_polynomial("1").unwrap(), 4).unwrap();
        assert!(one.counterexamples.is_empty());
        assert!(one.solutions.is_empty());
        let zero = brute_force_verify(&Polynomial::zero(), 4).unwrap();
        assert!(zero.counterexamples.is_empty());
        assert_eq!(zero.checked, 1);
        assert_eq!(zero.solutions.len(), 1);
    }

    #[test]
    fn pairing_examples() {
        let j = |x: u64, y: u64| pairing_j(&BigUint::from(x), &BigUint::from(y));
        assert_eq!(j(0, 0), BigUint::zero());
        assert_eq!(j(1, 2), BigUint::from(10u32));
        assert_eq!(j(2, 1), BigUint::from(11u32));
        let mut tuple = [0u64; 9].map(BigUint::from);
        tuple[0] = BigUint::from(1u32);
        assert_eq!(q_code(&tuple), BigUint::from(2u32));
    }

    fn composites_program() -> CeSetProgram {
        // w = (z1+2)(z2+2) describes the composite numbers.
        let r = parse_polynomial("y1 - (y2 + 2)*(y3 + 2)").unwrap();
        compile_ce(
            &r,
            &VarIndex::from_u64(1).unwrap(),
            &[VarIndex::from_u64(2).unwrap(), VarIndex::from_u64(3).unwrap()],
        )
        .unwrap()
    }

    /// Tuple `(v, 0, ..., 0)`: the all-zero tail pairs to 0, so the code is
    /// `J(v, 0) = v + v^2`.
    fn tuple_head(v: u64) -> [BigUint; 9] {
        let mut t = [0u64; 9].map(BigUint::from);
        t[0] = BigUint::from(v);
        assert_eq!(q_code(&t), BigUint::from(v + v * v));
        t
    }

    #[test]
    fn membership_examples() {
        let prog = composites_program();
        // Code 6 = 2*3: first witness in shell order is (0, 1).
        match check_membership(&prog, &tuple_head(2), 5) {
            MembershipResult::Accept(w) => {
                assert_eq!(w, vec![BigUint::from(0u32), BigUint::from(1u32)])
            }
            other => panic!("expected accept, got {other:?}"),
        }
        // Code 2 is prime and code 0 is below every product (z1+2)(z2+2).
        assert_eq!(
            check_membership(&prog, &tuple_head(1), 50),
            MembershipResult::NoWitnessFound
        );
        assert_eq!(
            check_membership(&prog, &tuple_head(0), 10),
            MembershipResult::NoWitnessFound
        );
        // Code 20 = 4*5: witness (2, 3), reached in shell 3.
        match check_membership(&prog, &tuple_head(4), 10) {
            MembershipResult::Accept(w) => {
                assert_eq!(w, vec![BigUint::from(2u32), BigUint::from(3u32)])
            }
            other => panic!("expected accept, got {other:?}"),
        }
    }

    #[test]
    fn program_file_round_trip() {
        let p = parse_polynomial("y1 + y3 - 2*y1*y3").unwrap();
        let prog = compile_equation(&p).unwrap();
        let file = prog.to_file();
        let json = serde_json::to_string(&file).unwrap();
        let back: ProgramFile = serde_json::from_str(&json).unwrap();
        assert_eq!(CompiledEquation::from_file(&back).unwrap(), prog);

        let ce = composites_program();
        let file = ce.to_file();
        let json = serde_json::to_string(&file).unwrap();
        let back: ProgramFile = serde_json::from_str(&json).unwrap();
        let loaded = CeSetProgram::from_file(&back).unwrap();
        assert_eq!(loaded.compiled, ce.compiled);
    }

    #[test]
    fn witness_enumeration_order() {
        let mut seen = Vec::new();
        for_each_witness(2, 2, &mut |t| {
            seen.push(t.to_vec());
            true
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![1, 1],
                vec![0, 2],
                vec![1, 2],
                vec![2, 0],
                vec![2, 1],
                vec![2, 2],
            ]
        );
    }
}
