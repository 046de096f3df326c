//! Obstructions to a virtually overtwisted structure being the boundary of a
//! Milnor fiber, via integral isometries of the positive chain form and
//! the trace condition on the monodromy.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lattice::{short_vectors, SymmetricIntMatrix};
use crate::limits::{Budget, Limits};
use crate::numbers::{neg_cf_expand, LensSpace, NegCF};
use crate::tight::{classify, RotationVector, TightClass};

pub type IntMatrix = Vec<Vec<i64>>;

/// Positive definite tridiagonal form with even diagonal `2x1, ..., 2xn` and
/// `-1` off the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TridiagonalForm {
    diagonal: Vec<i64>,
}

impl TridiagonalForm {
    pub fn new(diagonal: Vec<i64>) -> Result<Self> {
        if diagonal.is_empty() {
            return invalid("empty form");
        }
        if let Some(d) = diagonal.iter().find(|&&d| d < 2 || d % 2 != 0) {
            return invalid(format!("diagonal entry {d} is not an even number >= 2"));
        }
        let f = TridiagonalForm { diagonal };
        if !f.matrix().is_positive_definite() {
            return invalid("form is not positive definite");
        }
        Ok(f)
    }

    pub fn from_cf(cf: &NegCF) -> Result<Self> {
        TridiagonalForm::new(cf.coeffs_i64()?)
    }

    pub fn diagonal(&self) -> &[i64] {
        &self.diagonal
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.diagonal[i]
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        }
    }

    pub fn matrix(&self) -> SymmetricIntMatrix {
        let n = self.dim();
        let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect();
        SymmetricIntMatrix::from_i64(&rows).expect("symmetric by construction")
    }

    fn bilinear(&self, u: &[i64], v: &[i64]) -> i64 {
        let n = self.dim();
        let mut s = 0;
        for i in 0..n {
            s += self.diagonal[i] * u[i] * v[i];
            if i + 1 < n {
                s -= u[i] * v[i + 1] + u[i + 1] * v[i];
            }
        }
        s
    }

    /// `A M A^T == M`.
    pub fn preserved_by(&self, a: &IntMatrix) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.bilinear(&a[i], &a[j]) == self.entry(i, j)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryGroupResult {
    pub elements: Vec<IntMatrix>,
    pub complete: bool,
}

impl IsometryGroupResult {
    pub fn contains(&self, a: &IntMatrix) -> bool {
        self.elements.binary_search(a).is_ok()
    }
}

pub fn trace(a: &IntMatrix) -> i64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

/// The basis reversal `ei -> e_{n+1-i}`.
pub fn reversal(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| (i + j + 1 == n) as i64).collect()).collect()
}

pub fn negate(a: &IntMatrix) -> IntMatrix {
    a.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

/// All integral `A` with `A M A^T = M`. Row `i` of `A` must have norm
/// `M_ii`, which confines it to a finite ellipsoid; rows are then matched
/// against the off-diagonal entries.
pub fn isometry_search(m: &TridiagonalForm, limits: &Limits) -> Result<IsometryGroupResult> {
    let n = m.dim();
    if n > limits.isometry_rank {
        return Err(Error::ResourceLimit(format!("isometry search is limited to rank {}", limits.isometry_rank)));
    }
    let gram = m.matrix();
    let mut rows_by_norm: Vec<Vec<Vec<i64>>> = Vec::with_capacity(n);
    for i in 0..n {
        let target = BigInt::from(m.diagonal[i]);
        let vs = short_vectors(&gram, &target, limits)?;
        let exact: Vec<Vec<i64>> = vs
            .into_iter()
            .filter(|v| gram.quadratic_form(v) == target)
            .map(|v| v.iter().map(|x| x.to_i64().expect("bounded coordinate")).collect())
            .collect();
        rows_by_norm.push(exact);
    }
    let mut budget = Budget::new(limits, "isometry search");
    let mut out = Vec::new();
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n);
    extend_rows(m, &rows_by_norm, &mut rows, &mut out, &mut budget)?;
    out.sort();
    Ok(IsometryGroupResult { elements: out, complete: true })
}

fn extend_rows(
    m: &TridiagonalForm,
    candidates: &[Vec<Vec<i64>>],
    rows: &mut Vec<Vec<i64>>,
    out: &mut Vec<IntMatrix>,
    budget: &mut Budget,
) -> Result<()> {
    let i = rows.len();
    if i == m.dim() {
        out.push(rows.clone());
        return Ok(());
    }
    for v in &candidates[i] {
        budget.tick()?;
        if (0..i).all(|j| m.bilinear(&rows[j], v) == m.entry(j, i)) {
            rows.push(v.clone());
            extend_rows(m, candidates, rows, out, budget)?;
            rows.pop();
        }
    }
    Ok(())
}

/// Closed form of the isometry group when every `xi >= 2` and `n >= 2`:
/// `{+-I}`, plus `+-reversal` when the diagonal is a palindrome.
pub fn gerstein_fast_path(m: &TridiagonalForm) -> Option<IsometryGroupResult> {
    let n = m.dim();
    if n < 2 || m.diagonal.iter().any(|&d| d < 4) {
        return None;
    }
    let id = identity(n);
    let mut elements = vec![id.clone(), negate(&id)];
    let palindrome = (0..n).all(|i| m.diagonal[i] == m.diagonal[n - 1 - i]);
    if palindrome {
        let rho = reversal(n);
        elements.push(negate(&rho));
        elements.push(rho);
    }
    elements.sort();
    Some(IsometryGroupResult { elements, complete: true })
}

/// `(xi = x_{n+1-i} for all i, q^2 = 1 mod p)`; the two must agree.
pub fn palindrome_iff_q2(l: &LensSpace) -> Result<(bool, bool)> {
    let cf = neg_cf_expand(l);
    if cf.coeffs().iter().any(|a| a.is_odd()) {
        return Err(Error::UnsupportedInput(format!("{cf} has an odd coefficient")));
    }
    let c = cf.coeffs();
    let palindrome = (0..c.len()).all(|i| c[i] == c[c.len() - 1 - i]);
    let q2 = (l.q() * l.q()).mod_floor(l.p()).is_one();
    if palindrome != q2 {
        return Err(Error::Inconsistency(format!("{l}: palindrome {palindrome} but q^2 = 1 is {q2}")));
    }
    Ok((palindrome, q2))
}

/// Whether some isometry has trace `-1`, as a Milnor-fiber monodromy must.
pub fn acampo_filter(g: &IsometryGroupResult) -> Result<bool> {
    if !g.complete {
        return Err(Error::Inconclusive("isometry group is not known to be complete".into()));
    }
    Ok(g.elements.iter().any(|a| trace(a) == -1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MilnorCase {
    #[serde(rename = "a")]
    OddCoefficient,
    #[serde(rename = "b")]
    LengthTwo,
    #[serde(rename = "c-i")]
    NotPalindrome,
    #[serde(rename = "c-ii")]
    EvenPalindrome,
    #[serde(rename = "c1-nonzero")]
    NonzeroChernClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MilnorVerdictKind {
    Obstructed,
    Inconclusive,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorVerdict {
    pub verdict: MilnorVerdictKind,
    pub case: Option<MilnorCase>,
    pub reason: String,
    /// Isometry group consulted for the trace condition, when one was.
    pub isometries: Option<IsometryGroupResult>,
}

impl MilnorVerdict {
    fn new(verdict: MilnorVerdictKind, case: Option<MilnorCase>, reason: impl Into<String>) -> Self {
        MilnorVerdict { verdict, case, reason: reason.into(), isometries: None }
    }
}

pub fn milnor_verdict(l: &LensSpace, r: &RotationVector, limits: &Limits) -> Result<MilnorVerdict> {
    use MilnorVerdictKind::*;
    let cf = neg_cf_expand(l);
    if classify(&cf, r)? == TightClass::UniversallyTight {
        return Ok(MilnorVerdict::new(NotApplicable, None, "universally tight: the question concerns vo structures"));
    }
    if let Some(i) = cf.coeffs().iter().position(|a| a.is_odd()) {
        return Ok(MilnorVerdict::new(
            Obstructed,
            Some(MilnorCase::OddCoefficient),
            format!("a{} = {} is odd", i + 1, cf.coeffs()[i]),
        ));
    }
    if !r.is_zero() {
        return Ok(MilnorVerdict::new(
            Obstructed,
            Some(MilnorCase::NonzeroChernClass),
            "c1 != 0, but a Milnor fiber has trivial tangent bundle",
        ));
    }
    let n = cf.len();
    let form = TridiagonalForm::from_cf(&cf)?;
    if n == 1 {
        return Ok(MilnorVerdict::new(Inconclusive, None, format!("{l} is in the realizable family L(2n,1)")));
    }
    if n == 2 {
        let g = isometry_search(&form, limits)?;
        let has = acampo_filter(&g)?;
        let mut v = if has {
            MilnorVerdict::new(Inconclusive, None, "an isometry of trace -1 exists")
        } else {
            MilnorVerdict::new(
                Obstructed,
                Some(MilnorCase::LengthTwo),
                format!("exhaustive search over {} isometries finds none of trace -1", g.elements.len()),
            )
        };
        v.isometries = Some(g);
        return Ok(v);
    }
    let Some(g) = gerstein_fast_path(&form) else {
        return Ok(MilnorVerdict::new(Inconclusive, None, "some xi = 1: isometry group not classified"));
    };
    let (palindrome, _) = palindrome_iff_q2(l)?;
    let has = acampo_filter(&g)?;
    let mut v = match (palindrome, has) {
        (false, false) => MilnorVerdict::new(
            Obstructed,
            Some(MilnorCase::NotPalindrome),
            "q^2 != 1 (mod p): only +-I, no trace -1",
        ),
        (true, false) => MilnorVerdict::new(
            Obstructed,
            Some(MilnorCase::EvenPalindrome),
            "q^2 = 1 (mod p), n even: traces are +-n and 0",
        ),
        (true, true) => MilnorVerdict::new(
            Inconclusive,
            None,
            "q^2 = 1 (mod p), n odd: minus the reversal has trace -1",
        ),
        (false, true) => return Err(Error::Inconsistency("trace -1 without a palindrome".into())),
    };
    v.isometries = Some(g);
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniqueFillingNote {
    /// `r = 0`: a Milnor fiber filling would be the only Stein filling.
    pub unique_filling: bool,
    /// `q = p - 1`: the lens space is a link of `z^p + xy = 0`.
    pub isolated_singularity_eligible: bool,
}

pub fn unique_filling_note(l: &LensSpace, r: &RotationVector) -> Result<UniqueFillingNote> {
    r.validate(&neg_cf_expand(l))?;
    Ok(UniqueFillingNote {
        unique_filling: r.is_zero(),
        isolated_singularity_eligible: l.q() + BigInt::one() == *l.p(),
    })
}
