//! Tight contact structures on `L(p,q)`: rotation vectors, the ut/vo split,
//! and the block decomposition into basic slices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::invariants::meridian_coords;
use crate::limits::Limits;
use crate::serde_int::Int;
use crate::numbers::{evaluate_unchecked, expand_fraction, neg_cf_expand, LensSpace, NegCF};

/// Rotation numbers of the surgery chain, in expansion order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RotationVector {
    #[serde(with = "crate::serde_int::vec")]
    entries: Vec<BigInt>,
}

impl RotationVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        RotationVector { entries }
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        RotationVector { entries: entries.iter().map(|&x| BigInt::from(x)).collect() }
    }

    /// Checked against a chain: `|ri| <= ai - 2` and `ri = ai (mod 2)`.
    pub fn for_chain(cf: &NegCF, entries: Vec<BigInt>) -> Result<Self> {
        let r = RotationVector { entries };
        r.validate(cf)?;
        Ok(r)
    }

    pub fn zero(n: usize) -> Self {
        RotationVector { entries: vec![BigInt::zero(); n] }
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn negated(&self) -> RotationVector {
        RotationVector { entries: self.entries.iter().map(|x| -x).collect() }
    }

    pub fn validate(&self, cf: &NegCF) -> Result<()> {
        if self.entries.len() != cf.len() {
            return Err(Error::InvalidRotation(format!(
                "expected {} entries, got {}",
                cf.len(),
                self.entries.len()
            )));
        }
        for (i, (r, a)) in self.entries.iter().zip(cf.coeffs()).enumerate() {
            let bound = a - 2;
            if r.abs() > bound {
                return Err(Error::InvalidRotation(format!("|r{}| = {} exceeds a{} - 2 = {bound}", i + 1, r.abs(), i + 1)));
            }
            if !(r - a).is_even() {
                return Err(Error::InvalidRotation(format!("r{} = {r} has the wrong parity for a{} = {a}", i + 1, i + 1)));
            }
        }
        Ok(())
    }
}

impl fmt::Display for RotationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TightClass {
    UniversallyTight,
    VirtuallyOvertwisted,
}

/// All tight structures up to isotopy, lexicographically sorted.
pub fn enumerate_tight(l: &LensSpace, limits: &Limits) -> Result<Vec<RotationVector>> {
    enumerate_chain(&neg_cf_expand(l), limits)
}

pub fn tight_count(cf: &NegCF) -> BigInt {
    cf.coeffs().iter().map(|a| a - 1).product()
}

pub fn enumerate_chain(cf: &NegCF, limits: &Limits) -> Result<Vec<RotationVector>> {
    let count = tight_count(cf);
    limits.check("tight enumeration", count.to_u64().unwrap_or(u64::MAX))?;
    let mut out: Vec<Vec<BigInt>> = vec![vec![]];
    for a in cf.coeffs_i64()? {
        let values: Vec<i64> = (0..a - 1).map(|k| -(a - 2) + 2 * k).collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(BigInt::from(v));
                    p
                })
            })
            .collect();
    }
    Ok(out.into_iter().map(RotationVector::new).collect())
}

/// Universally tight iff all stabilizations sit on one side.
pub fn classify(cf: &NegCF, r: &RotationVector) -> Result<TightClass> {
    r.validate(cf)?;
    let plus = r.entries.iter().zip(cf.coeffs()).all(|(x, a)| *x == a - 2);
    let minus = r.entries.iter().zip(cf.coeffs()).all(|(x, a)| *x == -(a - BigInt::from(2)));
    Ok(if plus || minus { TightClass::UniversallyTight } else { TightClass::VirtuallyOvertwisted })
}

/// The rotation vector `(a1 - 2, ..., an - 2)`.
pub fn universally_tight_vector(cf: &NegCF) -> RotationVector {
    RotationVector { entries: cf.coeffs().iter().map(|a| a - 2).collect() }
}

/// Orbits under `r -> -r`, each sorted, listed by smallest member.
pub fn contactomorphism_classes(vs: &[RotationVector]) -> Vec<Vec<RotationVector>> {
    let mut sorted = vs.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut classes: Vec<Vec<RotationVector>> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for v in &sorted {
        if seen.contains(v) {
            continue;
        }
        let n = v.negated();
        let mut class = vec![v.clone()];
        if n != *v && sorted.binary_search(&n).is_ok() {
            class.push(n.clone());
        }
        class.sort();
        for c in &class {
            seen.insert(c.clone());
        }
        classes.push(class);
    }
    classes
}

/// Dividing-curve slope `(-den, num)`, stored as the positive fraction
/// `num/den`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slope {
    pub num: BigInt,
    pub den: BigInt,
}

impl Slope {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        let g = num.gcd(&den);
        Slope { num: num / &g, den: den / &g }
    }

    pub fn value(&self) -> num_rational::BigRational {
        num_rational::BigRational::new(self.num.clone(), self.den.clone())
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(-{},{})", self.den, self.num)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (Int(-&self.den), Int(self.num.clone())).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (neg_den, num): (Int, Int) = Deserialize::deserialize(d)?;
        Ok(Slope::new(num.0, -neg_den.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicSlice {
    pub from: Slope,
    pub to: Slope,
    /// Zero-based expansion index of the owning block.
    pub block: usize,
    #[serde(with = "crate::serde_int")]
    pub contribution: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub index: usize,
    pub slice_count: usize,
    #[serde(with = "crate::serde_int")]
    pub contribution: BigInt,
}

/// Slopes from `p/q` down to `1/1`. The first step leaves the standard
/// neighbourhood; every later step is a basic slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub slopes: Vec<Slope>,
    pub slices: Vec<BasicSlice>,
    /// In expansion order.
    pub blocks: Vec<Block>,
}

impl BlockDecomposition {
    /// Block sizes in the order the slices are met, i.e. from `an` to `a1`.
    pub fn sizes_in_slope_order(&self) -> Vec<usize> {
        self.blocks.iter().rev().map(|b| b.slice_count).collect()
    }
}

/// Decrement the last coefficient, re-expanding whenever it reaches 1.
pub fn honda_blocks(l: &LensSpace) -> Result<BlockDecomposition> {
    let cf = neg_cf_expand(l);
    let mut slopes = vec![Slope::new(l.p().clone(), l.q().clone())];
    let mut coeffs = cf.coeffs().to_vec();
    loop {
        let last = coeffs.last_mut().unwrap();
        *last -= 1;
        let f = evaluate_unchecked(&coeffs);
        let slope = Slope::new(f.numer().clone(), f.denom().clone());
        let done = slope.num.is_one() && slope.den.is_one();
        if coeffs.last().unwrap().is_one() && !done {
            coeffs = expand_fraction(&slope.num, &slope.den);
        }
        slopes.push(slope);
        if done {
            break;
        }
    }
    let mu = meridian_coords(&cf);
    let mut slices = Vec::new();
    for w in slopes.windows(2).skip(1) {
        let block = expand_fraction(&w[0].num, &w[0].den).len() - 1;
        slices.push(BasicSlice {
            from: w[0].clone(),
            to: w[1].clone(),
            block,
            contribution: &w[0].num - &w[1].num,
        });
    }
    let mut blocks = Vec::new();
    for (i, a) in cf.coeffs().iter().enumerate() {
        let mine: Vec<&BasicSlice> = slices.iter().filter(|s| s.block == i).collect();
        if BigInt::from(mine.len()) != a - 2 {
            return Err(Error::Inconsistency(format!("block {i} has {} slices, expected {}", mine.len(), a - 2)));
        }
        if let Some(s) = mine.iter().find(|s| s.contribution != mu[i]) {
            return Err(Error::Inconsistency(format!(
                "slice {} -> {} contributes {}, expected {}",
                s.from, s.to, s.contribution, mu[i]
            )));
        }
        blocks.push(Block { index: i, slice_count: mine.len(), contribution: mu[i].clone() });
    }
    for w in slopes.windows(2) {
        let det = &w[0].num * &w[1].den - &w[1].num * &w[0].den;
        if !det.abs().is_one() {
            return Err(Error::Inconsistency(format!("slopes {} and {} are not a basis", w[0], w[1])));
        }
    }
    Ok(BlockDecomposition { slopes, slices, blocks })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Basic-slice signs grouped by block, in expansion order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignVector {
    pub blocks: Vec<Vec<Sign>>,
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for s in b {
                write!(f, "{}", if *s == Sign::Plus { '+' } else { '-' })?;
            }
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split('|')
            .map(|b| {
                b.chars()
                    .map(|c| match c {
                        '+' => Ok(Sign::Plus),
                        '-' | '\u{2212}' => Ok(Sign::Minus),
                        _ => Err(Error::InvalidInput(format!("unexpected sign character {c:?}"))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(SignVector { blocks })
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `ri = #plus - #minus` in block `i`.
pub fn signs_to_rotation(cf: &NegCF, s: &SignVector) -> Result<RotationVector> {
    if s.blocks.len() != cf.len() {
        return invalid(format!("expected {} blocks, got {}", cf.len(), s.blocks.len()));
    }
    let mut entries = Vec::with_capacity(cf.len());
    for (i, (b, a)) in s.blocks.iter().zip(cf.coeffs()).enumerate() {
        if BigInt::from(b.len()) != a - 2 {
            return invalid(format!("block {} has {} signs, expected {}", i + 1, b.len(), a - 2));
        }
        entries.push(BigInt::from(b.iter().map(|x| x.value()).sum::<i64>()));
    }
    Ok(RotationVector::new(entries))
}

/// Canonical sign layout: pluses first.
pub fn rotation_to_signs(cf: &NegCF, r: &RotationVector) -> Result<SignVector> {
    r.validate(cf).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let sizes = cf.coeffs_i64()?;
    let blocks = sizes
        .iter()
        .zip(r.entries())
        .map(|(&a, x)| {
            let size = (a - 2) as usize;
            let plus = ((a - 2 + x.to_i64().unwrap()) / 2) as usize;
            let mut b = vec![Sign::Plus; plus];
            b.resize(size, Sign::Minus);
            b
        })
        .collect();
    Ok(SignVector { blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::normalize_lens;

    fn l(p: i64, q: i64) -> LensSpace {
        normalize_lens(p, q).unwrap()
    }

    fn cf(v: &[i64]) -> NegCF {
        NegCF::from_i64(v).unwrap()
    }

    fn rv(v: &[i64]) -> RotationVector {
        RotationVector::from_i64(v)
    }

    #[test]
    fn enumeration_counts() {
        let lim = Limits::default();
        assert_eq!(enumerate_tight(&l(17, 7), &lim).unwrap().len(), 6);
        assert_eq!(enumerate_tight(&l(9, 8), &lim).unwrap(), vec![RotationVector::zero(8)]);
        let v = enumerate_tight(&l(11, 4), &lim).unwrap();
        assert_eq!(v, vec![rv(&[-1, -2]), rv(&[-1, 0]), rv(&[-1, 2]), rv(&[1, -2]), rv(&[1, 0]), rv(&[1, 2])]);
    }

    #[test]
    fn classification() {
        let c = cf(&[3, 4]);
        assert_eq!(classify(&c, &rv(&[1, 2])).unwrap(), TightClass::UniversallyTight);
        assert_eq!(classify(&c, &rv(&[-1, -2])).unwrap(), TightClass::UniversallyTight);
        assert_eq!(classify(&c, &rv(&[1, -2])).unwrap(), TightClass::VirtuallyOvertwisted);
        assert_eq!(classify(&cf(&[2, 2]), &rv(&[0, 0])).unwrap(), TightClass::UniversallyTight);
        assert_eq!(classify(&cf(&[2, 4]), &rv(&[0, 2])).unwrap(), TightClass::UniversallyTight);
        assert!(matches!(classify(&c, &rv(&[0, 0])), Err(Error::InvalidRotation(_))));
        assert!(matches!(classify(&c, &rv(&[1])), Err(Error::InvalidRotation(_))));
    }

    #[test]
    fn classes_under_negation() {
        let lim = Limits::default();
        assert_eq!(contactomorphism_classes(&enumerate_tight(&l(17, 7), &lim).unwrap()).len(), 3);
        assert_eq!(contactomorphism_classes(&enumerate_tight(&l(11, 4), &lim).unwrap()).len(), 3);
        assert_eq!(contactomorphism_classes(&[RotationVector::zero(2)]), vec![vec![RotationVector::zero(2)]]);
    }

    fn slopes_of(d: &BlockDecomposition) -> Vec<(i64, i64)> {
        d.slopes.iter().map(|s| (s.num.to_i64().unwrap(), s.den.to_i64().unwrap())).collect()
    }

    #[test]
    fn blocks_34_7() {
        let d = honda_blocks(&l(34, 7)).unwrap();
        assert_eq!(
            slopes_of(&d),
            vec![(34, 7), (29, 6), (24, 5), (19, 4), (14, 3), (9, 2), (4, 1), (3, 1), (2, 1), (1, 1)]
        );
        assert_eq!(d.sizes_in_slope_order(), vec![5, 3]);
        assert_eq!(d.blocks[0].contribution, BigInt::from(1));
        assert_eq!(d.blocks[1].contribution, BigInt::from(5));
        for s in ["(-1,2)", "(-1,4)", "(-3,14)", "(-5,24)"] {
            assert!(d.slopes.iter().any(|x| x.to_string() == s), "{s}");
        }
    }

    #[test]
    fn blocks_small() {
        let d = honda_blocks(&l(17, 7)).unwrap();
        assert_eq!(slopes_of(&d), vec![(17, 7), (12, 5), (7, 3), (2, 1), (1, 1)]);
        assert_eq!(d.sizes_in_slope_order(), vec![2, 0, 1]);
        let d = honda_blocks(&l(2, 1)).unwrap();
        assert_eq!(slopes_of(&d), vec![(2, 1), (1, 1)]);
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].slice_count, 0);
        let d = honda_blocks(&l(4, 3)).unwrap();
        assert_eq!(slopes_of(&d), vec![(4, 3), (1, 1)]);
    }

    #[test]
    fn signs_and_rotations() {
        let c = cf(&[5, 7]);
        let s: SignVector = "+++|+++--".parse().unwrap();
        assert_eq!(signs_to_rotation(&c, &s).unwrap(), rv(&[3, 1]));
        assert_eq!(rotation_to_signs(&c, &rv(&[3, 1])).unwrap(), s);
        assert_eq!(rotation_to_signs(&c, &rv(&[-1, 1])).unwrap().to_string(), "+--|+++--");
        let all_plus: SignVector = "+++|+++++".parse().unwrap();
        assert_eq!(signs_to_rotation(&c, &all_plus).unwrap(), universally_tight_vector(&c));
        assert!(signs_to_rotation(&c, &"++|+++++".parse().unwrap()).is_err());
        assert_eq!(serde_json::to_string(&s).unwrap(), "\"+++|+++--\"");
        assert_eq!("+\u{2212}|".parse::<SignVector>().unwrap().to_string(), "+-|");
    }
}
