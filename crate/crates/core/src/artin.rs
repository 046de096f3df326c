//! Artin presentations: relation words in a free group whose conjugated
//! generators multiply back to `x1 x2 ... xn`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::mcg::{MultiplicityMatrix, TwistFactorization};

/// Reduced word; letter `i > 0` is `x_i`, `-i` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct FreeWord {
    letters: Vec<i64>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(i: i64) -> Self {
        assert!(i != 0, "generator index must be nonzero");
        FreeWord { letters: vec![i] }
    }

    /// Free reduction; letter `0` is rejected.
    pub fn reduce(letters: &[i64]) -> Result<Self> {
        if letters.contains(&0) {
            return invalid("letter 0 is not a generator");
        }
        Ok(FreeWord { letters: reduce_letters(letters.iter().copied()) })
    }

    /// Reduce, also checking every index lies in `[-n, n]`.
    pub fn reduce_in_rank(letters: &[i64], n: usize) -> Result<Self> {
        if let Some(x) = letters.iter().find(|x| x.unsigned_abs() as usize > n) {
            return invalid(format!("letter {x} exceeds rank {n}"));
        }
        FreeWord::reduce(letters)
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn concat(&self, o: &FreeWord) -> FreeWord {
        FreeWord { letters: reduce_letters(self.letters.iter().chain(&o.letters).copied()) }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|x| -x).collect() }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `self^-1 * w * self`.
    pub fn conjugate(&self, w: &FreeWord) -> FreeWord {
        self.inverse().concat(w).concat(self)
    }

    /// Replace each `x_i` by `images[i-1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out = Vec::new();
        for &x in &self.letters {
            let img = &images[x.unsigned_abs() as usize - 1];
            if x > 0 {
                out.extend_from_slice(&img.letters);
            } else {
                out.extend(img.letters.iter().rev().map(|y| -y));
            }
        }
        FreeWord { letters: reduce_letters(out) }
    }

    /// Total exponent of `x_i`.
    pub fn exponent_sum(&self, i: usize) -> i64 {
        self.letters.iter().map(|&x| if x.unsigned_abs() as usize == i { x.signum() } else { 0 }).sum()
    }
}

fn reduce_letters(it: impl IntoIterator<Item = i64>) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    for x in it {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        // run-length: x1^2 x2^-1
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let x = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == x {
                j += 1;
            }
            let run = (j - i) as i64 * x.signum();
            parts.push(if run == 1 { format!("x{}", x.abs()) } else { format!("x{}^{}", x.abs(), run) });
            i = j;
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Rank `n` and `n` relation words; candidate until [`validate`] says so.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation")]
pub struct ArtinPresentation {
    n: usize,
    relations: Vec<FreeWord>,
}

#[derive(Deserialize)]
struct RawPresentation {
    n: usize,
    relations: Vec<Vec<i64>>,
}

impl TryFrom<RawPresentation> for ArtinPresentation {
    type Error = Error;

    fn try_from(raw: RawPresentation) -> Result<Self> {
        ArtinPresentation::from_letters(raw.n, &raw.relations)
    }
}

impl ArtinPresentation {
    pub fn new(n: usize, relations: Vec<FreeWord>) -> Result<Self> {
        if relations.len() != n {
            return invalid(format!("expected {n} relations, got {}", relations.len()));
        }
        if let Some(w) = relations.iter().find(|w| w.max_index() > n) {
            return invalid(format!("relation {w} uses a generator beyond rank {n}"));
        }
        Ok(ArtinPresentation { n, relations })
    }

    pub fn from_letters(n: usize, relations: &[Vec<i64>]) -> Result<Self> {
        let words = relations.iter().map(|r| FreeWord::reduce_in_rank(r, n)).collect::<Result<Vec<_>>>()?;
        ArtinPresentation::new(n, words)
    }

    pub fn trivial(n: usize) -> Self {
        ArtinPresentation { n, relations: vec![FreeWord::identity(); n] }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn relations(&self) -> &[FreeWord] {
        &self.relations
    }

    /// Images `r_i^-1 x_i r_i` of the generators.
    pub fn conjugated_generators(&self) -> Vec<FreeWord> {
        self.relations
            .iter()
            .enumerate()
            .map(|(i, r)| r.conjugate(&FreeWord::generator(i as i64 + 1)))
            .collect()
    }
}

impl fmt::Display for ArtinPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.n).map(|i| format!("x{i}")).collect();
        let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
        write!(f, "<{} | {}>", gens.join(","), rels.join(", "))
    }
}

fn boundary_word(n: usize) -> FreeWord {
    FreeWord { letters: (1..=n as i64).collect() }
}

/// The Artin condition: `prod x_i = prod r_i^-1 x_i r_i` after reduction.
pub fn validate(p: &ArtinPresentation) -> bool {
    let rhs = p.conjugated_generators().iter().fold(FreeWord::identity(), |acc, w| acc.concat(w));
    rhs == boundary_word(p.n)
}

/// `k`-th power of the twist around the `i`-th hole: `r_i = x_i^k`, others trivial.
pub fn boundary_twist_presentation(n: usize, i: usize, k: i64) -> Result<ArtinPresentation> {
    if i == 0 || i > n {
        return invalid(format!("hole index {i} out of range 1..={n}"));
    }
    let mut p = ArtinPresentation::trivial(n);
    p.relations[i - 1] = FreeWord::generator(i as i64).pow(k);
    Ok(p)
}

/// `k`-th power of the twist parallel to the outer boundary: every
/// relation is `(x1 ... xn)^k`.
pub fn outer_twist_presentation(n: usize, k: i64) -> ArtinPresentation {
    let w = boundary_word(n).pow(k);
    ArtinPresentation { n, relations: vec![w; n] }
}

/// Substitute `x_i -> r_i^-1 x_i r_i` into the second presentation's
/// relations, then prepend the first's.
pub fn artin_product(p: &ArtinPresentation, q: &ArtinPresentation) -> Result<ArtinPresentation> {
    if p.n != q.n {
        return invalid(format!("rank mismatch: {} vs {}", p.n, q.n));
    }
    let images = p.conjugated_generators();
    let relations = p.relations.iter().zip(&q.relations).map(|(r, s)| r.concat(&s.substitute(&images))).collect();
    Ok(ArtinPresentation { n: p.n, relations })
}

/// Entry `(i, j)` is the exponent sum of `x_i` in `r_j`.
pub fn relation_matrix(p: &ArtinPresentation) -> Result<MultiplicityMatrix> {
    if !validate(p) {
        return invalid(format!("{p} fails the Artin condition"));
    }
    let entries: Vec<Vec<i64>> =
        (1..=p.n).map(|i| p.relations.iter().map(|r| r.exponent_sum(i)).collect()).collect();
    let m = MultiplicityMatrix { entries };
    if !m.is_symmetric() {
        return Err(Error::Inconsistency(format!("relation matrix of {p} is not symmetric")));
    }
    Ok(m)
}

/// Rank-two family `<x1^a (x1x2)^c, x2^b (x1x2)^c>` with matrix
/// `[[a+c, c], [c, b+c]]`; the product of twists `c` times around the outer
/// boundary, `a` around the first hole and `b` around the second.
pub fn pabc(a: i64, b: i64, c: i64) -> ArtinPresentation {
    let w = boundary_word(2).pow(c);
    let r1 = FreeWord::generator(1).pow(a).concat(&w);
    let r2 = FreeWord::generator(2).pow(b).concat(&w);
    ArtinPresentation { n: 2, relations: vec![r1, r2] }
}

/// Presentation of a factorization whose curves are all boundary-parallel:
/// single holes or the full set of holes.
pub fn boundary_factorization_presentation(f: &TwistFactorization) -> Result<ArtinPresentation> {
    let n = f.holes.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut p = ArtinPresentation::trivial(n);
    for t in &f.twists {
        let step = if t.holes.0 == all {
            outer_twist_presentation(n, t.power)
        } else if t.holes.len() == 1 {
            boundary_twist_presentation(n, t.holes.indices()[0] + 1, t.power)?
        } else {
            return Err(Error::UnsupportedInput(format!(
                "relation words for the curve around {} depend on arc choices",
                t.holes
            )));
        };
        p = artin_product(&p, &step)?;
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FillabilityScreen {
    FailsNecessary,
    /// Necessary condition only; not a fillability certificate.
    PassesNecessary,
}

pub fn stein_fillable_screen(p: &ArtinPresentation) -> Result<FillabilityScreen> {
    let m = relation_matrix(p)?;
    Ok(if crate::mcg::quasipositivity_screen(&m) {
        FillabilityScreen::PassesNecessary
    } else {
        FillabilityScreen::FailsNecessary
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[i64]) -> FreeWord {
        FreeWord::reduce(l).unwrap()
    }

    #[test]
    fn reduction() {
        assert_eq!(w(&[1, -1, 2]).letters(), &[2]);
        assert!(w(&[1, 2, -2, -1]).is_identity());
        assert_eq!(w(&[2, -1, 1, 1]).letters(), &[2, 1]);
        assert!(FreeWord::reduce(&[1, 0]).is_err());
        assert!(FreeWord::reduce_in_rank(&[3], 2).is_err());
        assert_eq!(w(&[1, 1, -2]).to_string(), "x1^2 x2^-1");
    }

    #[test]
    fn validity() {
        assert!(validate(&ArtinPresentation::trivial(4)));
        let p = ArtinPresentation::from_letters(2, &[vec![1, 1, 2], vec![2, 1, 2]]).unwrap();
        assert!(validate(&p));
        assert_eq!(p, pabc(1, 1, 1));
        let p = ArtinPresentation::from_letters(2, &[vec![1], vec![]]).unwrap();
        assert!(validate(&p));
        let p = ArtinPresentation::from_letters(2, &[vec![2], vec![]]).unwrap();
        assert!(!validate(&p));
        assert!(relation_matrix(&p).is_err());
        assert!(ArtinPresentation::from_letters(2, &[vec![1]]).is_err());
    }

    #[test]
    fn generators() {
        let p = boundary_twist_presentation(3, 2, 1).unwrap();
        assert_eq!(p.to_string(), "<x1,x2,x3 | 1, x2, 1>");
        assert!(validate(&p));
        assert_eq!(boundary_twist_presentation(5, 3, 0).unwrap(), ArtinPresentation::trivial(5));
        let p = boundary_twist_presentation(2, 1, -3).unwrap();
        assert_eq!(p.relations()[0].letters(), &[-1, -1, -1]);
        assert!(validate(&p));
        assert!(boundary_twist_presentation(2, 3, 1).is_err());
        assert!(validate(&outer_twist_presentation(4, -2)));
    }

    #[test]
    fn products() {
        let a = boundary_twist_presentation(3, 1, 2).unwrap();
        let b = boundary_twist_presentation(3, 1, 3).unwrap();
        assert_eq!(artin_product(&a, &b).unwrap(), boundary_twist_presentation(3, 1, 5).unwrap());
        assert_eq!(artin_product(&pabc(1, 2, 3), &pabc(-2, 0, 1)).unwrap(), pabc(-1, 2, 4));
        let t = ArtinPresentation::trivial(3);
        assert_eq!(artin_product(&a, &t).unwrap(), a);
        assert_eq!(artin_product(&t, &a).unwrap(), a);
        assert!(artin_product(&a, &ArtinPresentation::trivial(2)).is_err());
        let twist = artin_product(&outer_twist_presentation(2, 1), &boundary_twist_presentation(2, 1, 1).unwrap()).unwrap();
        assert!(validate(&twist));
        assert_eq!(relation_matrix(&twist).unwrap().entries, vec![vec![2, 1], vec![1, 1]]);
    }

    #[test]
    fn pabc_family() {
        assert_eq!(pabc(0, 0, 0), ArtinPresentation::trivial(2));
        for (a, b, c) in [(1, 0, 0), (2, 3, 1), (-1, 4, -2), (0, 0, 5)] {
            let p = pabc(a, b, c);
            assert!(validate(&p));
            assert_eq!(relation_matrix(&p).unwrap().entries, vec![vec![a + c, c], vec![c, b + c]]);
        }
        assert_eq!(stein_fillable_screen(&pabc(1, 1, -1)).unwrap(), FillabilityScreen::FailsNecessary);
        assert_eq!(stein_fillable_screen(&pabc(2, 3, 1)).unwrap(), FillabilityScreen::PassesNecessary);
        assert_eq!(
            stein_fillable_screen(&ArtinPresentation::trivial(3)).unwrap(),
            FillabilityScreen::PassesNecessary
        );
    }

    #[test]
    fn factorization_bridge() {
        let f = TwistFactorization::from_named(
            &["1", "2", "3"],
            &[(&["1", "2", "3"], 2), (&["2"], 1), (&["3"], -1), (&["1", "2", "3"], -1)],
        )
        .unwrap();
        let p = boundary_factorization_presentation(&f).unwrap();
        assert!(validate(&p));
        assert_eq!(relation_matrix(&p).unwrap(), crate::mcg::multiplicity_matrix(&f).unwrap());
        let g = TwistFactorization::from_named(&["1", "2", "3"], &[(&["1", "2"], 1)]).unwrap();
        assert!(boundary_factorization_presentation(&g).is_err());
    }

    #[test]
    fn json_shape() {
        let p = pabc(1, 0, 1);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"n":2,"relations":[[1,1,2],[1,2]]}"#);
        let back: ArtinPresentation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<ArtinPresentation>(r#"{"n":1,"relations":[[2]]}"#).is_err());
    }
}
