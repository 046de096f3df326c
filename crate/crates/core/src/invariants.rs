//! Meridian coordinates, the Euler class, `c1^2` and the d3 invariant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lattice::{exact_inverse, linking_matrix, SymmetricIntMatrix};
use crate::limits::Limits;
use crate::numbers::{ExactFraction, NegCF};
use crate::tight::{enumerate_chain, universally_tight_vector, RotationVector};

/// `mu1 = 1`, `mu2 = a1`, `mu_i = a_{i-1} mu_{i-1} - mu_{i-2}`: the meridians
/// written as multiples of the generator `mu1` of `H1 = Z/p`.
pub fn meridian_coords(cf: &NegCF) -> Vec<BigInt> {
    let mut mu: Vec<BigInt> = Vec::with_capacity(cf.len());
    mu.push(BigInt::from(1));
    for i in 1..cf.len() {
        let prev2 = if i >= 2 { mu[i - 2].clone() } else { BigInt::zero() };
        let next = &cf.coeffs()[i - 1] * &mu[i - 1] - prev2;
        mu.push(next);
    }
    mu
}

/// Poincaré dual of the Euler class, `sum ri mu_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdClass {
    #[serde(with = "crate::serde_int")]
    pub unreduced: BigInt,
    #[serde(with = "crate::serde_int")]
    pub reduced: BigInt,
    #[serde(with = "crate::serde_int")]
    pub modulus: BigInt,
}

pub fn pd_euler_class(cf: &NegCF, r: &RotationVector) -> Result<PdClass> {
    r.validate(cf)?;
    let mu = meridian_coords(cf);
    let unreduced: BigInt = r.entries().iter().zip(&mu).map(|(x, m)| x * m).sum();
    let modulus = cf.lens_space().p().clone();
    let reduced = unreduced.mod_floor(&modulus);
    Ok(PdClass { unreduced, reduced, modulus })
}

/// `c1 = 0` exactly when the unreduced Euler class sum vanishes, which in
/// turn happens only for `r = 0`.
pub fn c1_is_zero(cf: &NegCF, r: &RotationVector) -> Result<bool> {
    let pd = pd_euler_class(cf, r)?;
    let zero = pd.unreduced.is_zero();
    if zero != r.is_zero() {
        return Err(Error::Inconsistency(format!("Euler class sum vanishes for nonzero {r}")));
    }
    Ok(zero)
}

/// `r^T Q^{-1} r`.
pub fn c1_squared(q: &SymmetricIntMatrix, r: &[BigInt]) -> Result<ExactFraction> {
    if r.len() != q.dim() {
        return invalid(format!("vector of length {} against a {}x{} matrix", r.len(), q.dim(), q.dim()));
    }
    let inv = exact_inverse(q)?;
    Ok(inv.quadratic_form(r).into())
}

/// `(c1^2 - 3 sigma - 2 chi) / 4` for the filling given by handle data with
/// negative definite intersection form `Q` (so `sigma = -n`, `chi = 1 + n`).
pub fn d3_invariant(q: &SymmetricIntMatrix, r: &[BigInt]) -> Result<ExactFraction> {
    if !q.is_negative_definite() {
        return Err(Error::UnsupportedInput("intersection form is not negative definite".into()));
    }
    let c1sq = c1_squared(q, r)?.into_inner();
    let n = BigRational::from_integer(BigInt::from(q.dim()));
    let sigma = -n.clone();
    let chi = BigRational::from_integer(BigInt::from(1)) + n;
    let three = BigRational::from_integer(BigInt::from(3));
    let two = BigRational::from_integer(BigInt::from(2));
    let four = BigRational::from_integer(BigInt::from(4));
    Ok(((c1sq - three * sigma - two * chi) / four).into())
}

/// d3 of the structure with rotation vector `r` on the chain `cf`.
pub fn d3_for_rotation(cf: &NegCF, r: &RotationVector) -> Result<ExactFraction> {
    r.validate(cf)?;
    d3_invariant(&linking_matrix(cf), r.entries())
}

/// `chi = 4 d3 + 3`, valid for fillings with `c1 = 0`.
pub fn chi_from_d3(d3: &ExactFraction) -> Option<BigInt> {
    let chi = d3.value() * BigRational::from_integer(BigInt::from(4)) + BigRational::from_integer(BigInt::from(3));
    if chi.is_integer() && chi.to_integer() >= BigInt::from(1) {
        Some(chi.to_integer())
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BallVerdict {
    Obstructed,
    Possible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallWitness {
    pub f_x: ExactFraction,
    pub f_y: ExactFraction,
    pub signature: i64,
    pub d3: ExactFraction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalBallReport {
    pub verdict: BallVerdict,
    pub reason: String,
    pub witness: BallWitness,
}

/// Stein rational-ball test: needs `f(x) <= f(y)` for the universally tight
/// `y`, and `c1^2 = sigma`.
pub fn rational_ball_obstruction(cf: &NegCF, r: &RotationVector) -> Result<RationalBallReport> {
    r.validate(cf)?;
    let q = linking_matrix(cf);
    let y = universally_tight_vector(cf);
    let f_x = c1_squared(&q, r.entries())?;
    let f_y = c1_squared(&q, y.entries())?;
    let signature = -(cf.len() as i64);
    let witness = BallWitness { f_x: f_x.clone(), f_y: f_y.clone(), signature, d3: d3_invariant(&q, r.entries())? };
    let (verdict, reason) = if f_x > f_y {
        (BallVerdict::Obstructed, "f(x) > f(y): not a minimizer of the Euler-class form".to_string())
    } else if f_x != ExactFraction::from_integer(signature) {
        (BallVerdict::Obstructed, format!("c1^2 = {f_x} differs from the signature {signature}, so d3 != -1/2"))
    } else {
        (BallVerdict::Possible, "c1^2 equals the signature".to_string())
    };
    Ok(RationalBallReport { verdict, reason, witness })
}

/// Integer numerators of `f(x) = x^T Q^{-1} x` over the common denominator
/// `det Q`, so comparisons need no rationals.
struct ScaledForm {
    adj: Vec<Vec<BigInt>>,
    small: Option<Vec<Vec<i128>>>,
}

impl ScaledForm {
    fn new(q: &SymmetricIntMatrix) -> Result<Self> {
        let inv = exact_inverse(q)?;
        let det = BigRational::from_integer(q.determinant());
        let n = q.dim();
        let adj: Vec<Vec<BigInt>> =
            (0..n).map(|i| (0..n).map(|j| (inv.get(i, j) * &det).to_integer()).collect()).collect();
        let small = adj.iter().map(|r| r.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>()).collect();
        Ok(ScaledForm { adj, small })
    }

    fn eval(&self, x: &[i64]) -> BigInt {
        if let Some(m) = &self.small {
            if let Some(v) = eval_checked(m, x) {
                return BigInt::from(v);
            }
        }
        let mut total = BigInt::zero();
        for (i, row) in self.adj.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                total += a * BigInt::from(x[i]) * BigInt::from(x[j]);
            }
        }
        total
    }
}

fn eval_checked(m: &[Vec<i128>], x: &[i64]) -> Option<i128> {
    let mut total: i128 = 0;
    for (i, row) in m.iter().enumerate() {
        for (j, a) in row.iter().enumerate() {
            let t = a.checked_mul(x[i] as i128)?.checked_mul(x[j] as i128)?;
            total = total.checked_add(t)?;
        }
    }
    Some(total)
}

/// Exhaustive check that `f` restricted to the rotation vectors attains its
/// minimum exactly at `y` and `-y`.
pub fn verify_concavity(cf: &NegCF, limits: &Limits) -> Result<bool> {
    let q = linking_matrix(cf);
    let det_sign_positive = q.determinant() > BigInt::zero();
    let form = ScaledForm::new(&q)?;
    let y = universally_tight_vector(cf);
    let to_small = |r: &RotationVector| -> Vec<i64> { r.entries().iter().map(|x| x.to_i64().unwrap()).collect() };
    let y_small = to_small(&y);
    let minus_y: Vec<i64> = y_small.iter().map(|x| -x).collect();
    // f = num / det; ordering by f is ordering by num when det > 0
    let key = |v: &[i64]| {
        let n = form.eval(v);
        if det_sign_positive {
            n
        } else {
            -n
        }
    };
    let best = key(&y_small);
    for r in enumerate_chain(cf, limits)? {
        let v = to_small(&r);
        let k = key(&v);
        let extremal = v == y_small || v == minus_y;
        if k < best || (k == best && !extremal) {
            return Ok(false);
        }
    }
    Ok(true)
}
