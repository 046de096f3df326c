//! Lens-space normalization, negative continued fractions and Riemenschneider
//! duality, all over arbitrary-precision integers.
//!
//! Expansions use the positive convention `p/q = [a1, ..., an]` with every
//! `ai >= 2`, meaning `p/q = a1 - 1/(a2 - 1/(... - 1/an))`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// A reduced rational number that always prints as `num/den`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactFraction(BigRational);

impl ExactFraction {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return invalid("zero denominator");
        }
        Ok(ExactFraction(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactFraction(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }
}

impl From<BigRational> for ExactFraction {
    fn from(r: BigRational) -> Self {
        ExactFraction(r)
    }
}

impl fmt::Display for ExactFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for ExactFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidInput(format!("bad fraction {s:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => ExactFraction::new(parse(n)?, parse(d)?),
            None => Ok(ExactFraction::from_integer(parse(s)?)),
        }
    }
}

impl Serialize for ExactFraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactFraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The lens space `L(p, q)` with `0 < q < p` and `gcd(p, q) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LensSpace {
    #[serde(with = "crate::serde_int")]
    p: BigInt,
    #[serde(with = "crate::serde_int")]
    q: BigInt,
}

impl LensSpace {
    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn fraction(&self) -> ExactFraction {
        ExactFraction(BigRational::new(self.p.clone(), self.q.clone()))
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

/// Reduce `q` modulo `p` and check coprimality.
pub fn normalize_lens(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<LensSpace> {
    let p = p.into();
    let q = q.into();
    if p < BigInt::from(2) {
        return invalid(format!("p must be at least 2, got {p}"));
    }
    let q = q.mod_floor(&p);
    if q.is_zero() {
        return invalid(format!("q is divisible by p = {p}"));
    }
    if !p.gcd(&q).is_one() {
        return invalid(format!("gcd({p}, {q}) is not 1"));
    }
    Ok(LensSpace { p, q })
}

/// Orientation-preserving homeomorphism test: `q' = q` or `q q' = 1 (mod p)`.
pub fn same_lens_space(a: &LensSpace, b: &LensSpace) -> bool {
    a.p == b.p && (a.q == b.q || (&a.q * &b.q).mod_floor(&a.p).is_one())
}

/// A negative continued fraction `[a1, ..., an]` with every `ai >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NegCF {
    #[serde(with = "crate::serde_int::vec")]
    coeffs: Vec<BigInt>,
}

impl NegCF {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return invalid("empty expansion");
        }
        let two = BigInt::from(2);
        if let Some(a) = coeffs.iter().find(|a| **a < two) {
            return invalid(format!("expansion coefficient {a} is below 2"));
        }
        Ok(NegCF { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        NegCF::new(coeffs.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients as machine integers, for routines that iterate over them.
    pub fn coeffs_i64(&self) -> Result<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|a| {
                a.to_i64()
                    .ok_or_else(|| Error::ResourceLimit(format!("coefficient {a} too large to enumerate")))
            })
            .collect()
    }

    pub fn all_twos(&self) -> bool {
        self.coeffs.iter().all(|a| *a == BigInt::from(2))
    }

    pub fn evaluate(&self) -> ExactFraction {
        evaluate_unchecked(&self.coeffs)
    }

    /// The lens space this chain describes.
    pub fn lens_space(&self) -> LensSpace {
        let f = self.evaluate();
        LensSpace { p: f.numer().clone(), q: f.denom().clone() }
    }
}

impl fmt::Display for NegCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Unique expansion of `p/q` with all coefficients at least 2.
pub fn neg_cf_expand(l: &LensSpace) -> NegCF {
    NegCF { coeffs: expand_fraction(&l.p, &l.q) }
}

/// Expansion of any fraction `p/q > 1` in lowest terms.
pub(crate) fn expand_fraction(p: &BigInt, q: &BigInt) -> Vec<BigInt> {
    let mut coeffs = Vec::new();
    let (mut p, mut q) = (p.clone(), q.clone());
    while !q.is_zero() {
        let a = Integer::div_ceil(&p, &q);
        let next = &a * &q - &p;
        coeffs.push(a);
        p = std::mem::replace(&mut q, next);
    }
    coeffs
}

/// Lengths of the expansion of `p/q` and of its dual, without building either.
/// Runs of 2s are skipped in one step, so the cost is logarithmic in `p`.
pub fn chain_lengths(l: &LensSpace) -> (BigInt, BigInt) {
    let (mut p, mut q) = (l.p.clone(), l.q.clone());
    let mut len = BigInt::zero();
    // sum of (ai - 2); the dual has one more entry than this
    let mut excess = BigInt::zero();
    while !q.is_zero() {
        let a = Integer::div_ceil(&p, &q);
        let gap = &p - &q;
        if a == BigInt::from(2) && gap < q {
            // (q + gap, q) -> (q, q - gap) -> ... emits a 2 while q stays above gap
            let k = Integer::div_ceil(&q, &gap) - 1;
            let next_p = &q - (&k - 1) * &gap;
            q = &q - &k * &gap;
            p = next_p;
            len += k;
        } else {
            let next = &a * &q - &p;
            excess += &a - 2;
            len += 1;
            p = std::mem::replace(&mut q, next);
        }
    }
    (len, excess + 1)
}

/// Evaluate a coefficient list; entries must all be at least 2.
pub fn cf_evaluate(coeffs: &[BigInt]) -> Result<ExactFraction> {
    Ok(NegCF::new(coeffs.to_vec())?.evaluate())
}

/// Evaluation without the `>= 2` check. Callers guarantee that no partial
/// tail evaluates to zero.
pub(crate) fn evaluate_unchecked(coeffs: &[BigInt]) -> ExactFraction {
    // Track the tail value num/den from the right.
    let mut num = BigInt::one();
    let mut den = BigInt::zero();
    for a in coeffs.iter().rev() {
        let next = a * &num - &den;
        den = std::mem::replace(&mut num, next);
    }
    ExactFraction(BigRational::new(num, den))
}

/// Expansion of `p/(p-q)`, the dual chain.
pub fn riemenschneider_dual(l: &LensSpace) -> NegCF {
    NegCF { coeffs: expand_fraction(&l.p, &(&l.p - &l.q)) }
}

/// Staircase of dots: row `i` holds `ai - 1` dots and starts in the column
/// where row `i - 1` ends. Returns the occupied column span of every row.
pub fn dots_layout(cf: &NegCF) -> Result<Vec<(usize, usize)>> {
    let mut rows = Vec::with_capacity(cf.len());
    let mut start = 0usize;
    for a in cf.coeffs_i64()? {
        let end = start + (a as usize - 2);
        rows.push((start, end));
        start = end;
    }
    Ok(rows)
}

/// Dual expansion read off the dots layout: `cj = 1 + #dots in column j`.
pub fn dual_from_dots(cf: &NegCF) -> Result<NegCF> {
    let rows = dots_layout(cf)?;
    let width = rows.last().map(|r| r.1 + 1).unwrap_or(0);
    let mut counts = vec![1i64; width];
    for &(s, e) in &rows {
        for c in counts.iter_mut().take(e + 1).skip(s) {
            *c += 1;
        }
    }
    NegCF::from_i64(&counts)
}

/// Plain-text rendering of the dots layout, one row per coefficient.
pub fn render_dots(cf: &NegCF) -> Result<String> {
    let rows = dots_layout(cf)?;
    let mut out = String::new();
    for (s, e) in rows {
        out.push_str(&" ".repeat(2 * s));
        out.push_str(&vec!["*"; e - s + 1].join(" "));
        out.push('\n');
    }
    Ok(out)
}

/// The inverse of `a` modulo `m`, in `0 < a* < m`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    if !m.is_positive() {
        return invalid(format!("modulus must be positive, got {m}"));
    }
    let a = a.mod_floor(m);
    let eg = a.extended_gcd(m);
    if !eg.gcd.is_one() {
        return invalid(format!("{a} is not invertible modulo {m}"));
    }
    let inv = eg.x.mod_floor(m);
    if inv.is_zero() {
        // only happens for m = 1, where no residue lies strictly inside (0, m)
        return invalid("no inverse strictly between 0 and 1");
    }
    Ok(inv)
}

/// All positive divisors of `n`, ascending, by trial division.
pub fn divisors(n: &BigInt, limits: &crate::Limits) -> Result<Vec<BigInt>> {
    if !n.is_positive() {
        return invalid("divisors of a non-positive number");
    }
    let root = n.sqrt();
    let steps = root.to_u64().unwrap_or(u64::MAX);
    limits.check("divisor search", steps)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while d <= root {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(p: i64, q: i64) -> LensSpace {
        normalize_lens(p, q).unwrap()
    }

    fn cf(v: &[i64]) -> NegCF {
        NegCF::from_i64(v).unwrap()
    }

    #[test]
    fn chain_lengths_match_expansions() {
        for p in 2..200i64 {
            for q in 1..p {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let l = normalize_lens(p, q).unwrap();
                let (len, dual_len) = chain_lengths(&l);
                assert_eq!(len, BigInt::from(neg_cf_expand(&l).len()), "L({p},{q})");
                assert_eq!(dual_len, BigInt::from(riemenschneider_dual(&l).len()), "L({p},{q})");
            }
        }
    }

    #[test]
    fn normalization() {
        assert_eq!(l(2, 7), l(2, 1));
        assert_eq!(l(4, 11), l(4, 3));
        assert_eq!(l(5, 2).q(), &BigInt::from(2));
        assert!(normalize_lens(1, 0).is_err());
        assert!(normalize_lens(6, 12).is_err());
        assert!(normalize_lens(6, 4).is_err());
    }

    #[test]
    fn lens_equivalence() {
        assert!(same_lens_space(&l(7, 2), &l(7, 4)));
        assert!(!same_lens_space(&l(7, 2), &l(7, 3)));
        assert!(!same_lens_space(&l(5, 2), &l(7, 2)));
    }

    #[test]
    fn expansions() {
        assert_eq!(neg_cf_expand(&l(11, 4)), cf(&[3, 4]));
        assert_eq!(neg_cf_expand(&l(17, 7)), cf(&[3, 2, 4]));
        assert_eq!(neg_cf_expand(&l(13, 11)), cf(&[2, 2, 2, 2, 2, 3]));
        assert_eq!(neg_cf_expand(&l(9, 8)), cf(&[2; 8]));
        assert_eq!(cf(&[3, 4]).evaluate().to_string(), "11/4");
        assert_eq!(cf(&[5, 4, 3]).evaluate().to_string(), "52/11");
        assert_eq!(cf(&[2]).evaluate().to_string(), "2/1");
        assert!(cf_evaluate(&[BigInt::from(1)]).is_err());
    }

    #[test]
    fn duals() {
        assert_eq!(riemenschneider_dual(&l(11, 4)), cf(&[2, 3, 2, 2]));
        assert_eq!(cf(&[2, 3, 2, 2]).evaluate().to_string(), "11/7");
        assert_eq!(riemenschneider_dual(&l(4, 3)), cf(&[4]));
        assert_eq!(dual_from_dots(&cf(&[3, 4])).unwrap(), cf(&[2, 3, 2, 2]));
        assert_eq!(render_dots(&cf(&[3, 4])).unwrap(), "* *\n  * * *\n");
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(&7.into(), &34.into()).unwrap(), BigInt::from(5));
        assert_eq!(mod_inverse(&1.into(), &9.into()).unwrap(), BigInt::from(1));
        assert_eq!(mod_inverse(&11.into(), &52.into()).unwrap(), BigInt::from(19));
        assert!(mod_inverse(&4.into(), &10.into()).is_err());
    }

    #[test]
    fn divisor_list() {
        let ds = divisors(&56.into(), &crate::Limits::default()).unwrap();
        let ds: Vec<i64> = ds.iter().map(|d| d.to_i64().unwrap()).collect();
        assert_eq!(ds, vec![1, 2, 4, 7, 8, 14, 28, 56]);
    }

    #[test]
    fn fraction_format() {
        let f: ExactFraction = "-6/22".parse().unwrap();
        assert_eq!(f.to_string(), "-3/11");
        assert_eq!(ExactFraction::from_integer(0).to_string(), "0/1");
        assert_eq!(serde_json::to_string(&f).unwrap(), "\"-3/11\"");
    }
}
