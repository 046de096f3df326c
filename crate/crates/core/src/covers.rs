//! Finite covers of lens spaces and how tight structures lift along them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::invariants::{chi_from_d3, d3_for_rotation, pd_euler_class};
use crate::limits::Limits;
use crate::numbers::{
    divisors, evaluate_unchecked, mod_inverse, neg_cf_expand, normalize_lens, ExactFraction, LensSpace,
};
use crate::tight::{classify, enumerate_chain, honda_blocks, RotationVector, Slope, TightClass};

/// Total space of a cover: another lens space, or the 3-sphere for the
/// universal cover.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TotalSpace {
    Sphere,
    Lens(LensSpace),
}

impl TotalSpace {
    /// Expansion length; the sphere counts as the empty chain.
    pub fn chain_length(&self) -> usize {
        match self {
            TotalSpace::Sphere => 0,
            TotalSpace::Lens(l) => neg_cf_expand(l).len(),
        }
    }

    /// Only universally tight structures exist on the total space.
    pub fn only_universally_tight(&self) -> bool {
        match self {
            TotalSpace::Sphere => true,
            TotalSpace::Lens(l) => neg_cf_expand(l).all_twos(),
        }
    }
}

impl std::fmt::Display for TotalSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TotalSpace::Sphere => write!(f, "S3"),
            TotalSpace::Lens(l) => write!(f, "{l}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDatum {
    pub base: LensSpace,
    #[serde(with = "crate::serde_int")]
    pub degree: BigInt,
    pub total: TotalSpace,
}

/// The degree-`d` cover `L(p/d, q)`.
pub fn cover_of(base: &LensSpace, d: &BigInt) -> Result<CoverDatum> {
    if d < &BigInt::one() || !(base.p() % d).is_zero() {
        return invalid(format!("degree {d} does not divide {}", base.p()));
    }
    let p_cover = base.p() / d;
    let total = if p_cover.is_one() {
        TotalSpace::Sphere
    } else {
        TotalSpace::Lens(normalize_lens(p_cover, base.q().clone())?)
    };
    Ok(CoverDatum { base: base.clone(), degree: d.clone(), total })
}

/// One cover per divisor `d > 1` of `p`, ascending.
pub fn covering_lattice(l: &LensSpace, limits: &Limits) -> Result<Vec<CoverDatum>> {
    divisors(l.p(), limits)?.iter().filter(|d| !d.is_one()).map(|d| cover_of(l, d)).collect()
}

/// Tight structures on the degree-`d` cover whose pushed-forward Euler class
/// matches `d * PD(r)` up to sign. When `r` is virtually overtwisted,
/// universally tight candidates are dropped. An empty answer means the lift
/// of `r` is overtwisted.
pub fn euler_compatibility_filter(
    base: &LensSpace,
    r: &RotationVector,
    d: &BigInt,
    limits: &Limits,
) -> Result<Vec<RotationVector>> {
    let cf = neg_cf_expand(base);
    let class = classify(&cf, r)?;
    let cover = cover_of(base, d)?;
    if d.is_one() {
        return Ok(vec![r.clone()]);
    }
    let p = base.p();
    let target = (d * pd_euler_class(&cf, r)?.unreduced).mod_floor(p);
    let target_neg = (-&target).mod_floor(p);
    let candidates: Vec<(RotationVector, BigInt, TightClass)> = match &cover.total {
        TotalSpace::Sphere => vec![(RotationVector::zero(0), BigInt::zero(), TightClass::UniversallyTight)],
        TotalSpace::Lens(l) => {
            let ccf = neg_cf_expand(l);
            enumerate_chain(&ccf, limits)?
                .into_iter()
                .map(|v| {
                    let pd = pd_euler_class(&ccf, &v)?.unreduced;
                    let c = classify(&ccf, &v)?;
                    Ok((v, pd, c))
                })
                .collect::<Result<_>>()?
        }
    };
    Ok(candidates
        .into_iter()
        .filter(|(_, pd, c)| {
            let pushed = (d * pd).mod_floor(p);
            (pushed == target || pushed == target_neg)
                && !(class == TightClass::VirtuallyOvertwisted && *c == TightClass::UniversallyTight)
        })
        .map(|(v, _, _)| v)
        .collect())
}

fn check_degree(base: &LensSpace, d: &BigInt) -> Result<()> {
    if d < &BigInt::one() || !(base.p() % d).is_zero() {
        return invalid(format!("degree {d} does not divide {}", base.p()));
    }
    Ok(())
}

/// Every virtually overtwisted structure lifts overtwisted when `q < p < dq`.
pub fn overtwisted_lift_basic(base: &LensSpace, d: &BigInt) -> Result<bool> {
    check_degree(base, d)?;
    Ok(base.q() < base.p() && base.p() < &(d * base.q()))
}

/// The relaxed criterion `p' < d q'` with `p'/q' = [a1, ..., a_{n-1}, an - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedCriterion {
    /// `p'/q'` from decrementing the last coefficient.
    pub expansion_route: ExactFraction,
    /// `q*` with `q q* = 1 (mod p)`.
    #[serde(with = "crate::serde_int")]
    pub q_inverse: BigInt,
    /// `p'/q'` from `p' = p - q*`, `q' q* = 1 (mod p')`.
    pub inverse_route: ExactFraction,
    pub routes_agree: bool,
    pub overtwisted: bool,
}

pub fn overtwisted_lift_refined(base: &LensSpace, d: &BigInt) -> Result<RefinedCriterion> {
    check_degree(base, d)?;
    let mut coeffs = neg_cf_expand(base).coeffs().to_vec();
    *coeffs.last_mut().unwrap() -= 1;
    let expansion_route = evaluate_unchecked(&coeffs);
    let q_inverse = mod_inverse(base.q(), base.p())?;
    let p_prime = base.p() - &q_inverse;
    let q_prime = if p_prime.is_one() { BigInt::one() } else { mod_inverse(&q_inverse, &p_prime)? };
    let inverse_route = ExactFraction::new(p_prime, q_prime)?;
    let routes_agree = inverse_route == expansion_route;
    let overtwisted =
        expansion_route.numer() < &(d * expansion_route.denom()) && !d.is_one();
    Ok(RefinedCriterion { expansion_route, q_inverse, inverse_route, routes_agree, overtwisted })
}

/// One sign shared by a run of base slices and the cover slices they lift
/// onto. The coefficient is the base contribution minus the cover
/// contribution; it may be zero, in which case the sign is unconstrained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkedTerm {
    #[serde(with = "crate::serde_int")]
    pub coefficient: BigInt,
    pub base_slices: Vec<usize>,
    pub cover_slices: Vec<usize>,
}

/// A base slice whose lift lies in a standard neighbourhood of the cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeTerm {
    #[serde(with = "crate::serde_int")]
    pub coefficient: BigInt,
    pub base_slice: usize,
}

/// `sum of +-coefficients = 0 (mod modulus)`, one sign per term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignConstraintSystem {
    pub base: LensSpace,
    #[serde(with = "crate::serde_int")]
    pub degree: BigInt,
    #[serde(with = "crate::serde_int")]
    pub modulus: BigInt,
    pub linked: Vec<LinkedTerm>,
    pub free: Vec<FreeTerm>,
    /// True for the instances whose pairing has been checked by hand.
    pub validated: bool,
}

impl SignConstraintSystem {
    /// Linked coefficients first, then free ones.
    pub fn coefficients(&self) -> Vec<BigInt> {
        self.linked.iter().map(|t| t.coefficient.clone()).chain(self.free.iter().map(|t| t.coefficient.clone())).collect()
    }

    pub fn display_sum(&self) -> String {
        let mut s = String::new();
        for c in self.coefficients() {
            s.push_str(&format!("\u{b1}{c}"));
        }
        format!("{s} = 0 (mod {})", self.modulus)
    }
}

const VALIDATED: [(i64, i64, i64); 3] = [(34, 7, 2), (52, 11, 2), (56, 15, 2)];

fn lift(s: &Slope, d: &BigInt) -> BigRational {
    BigRational::new(s.num.clone(), d * &s.den)
}

/// Pair base basic slices with cover basic slices through the slope pullback
/// `p/q -> p/(dq)` and collect the resulting sign constraint.
pub fn lift_sign_constraints(base: &LensSpace, d: &BigInt, limits: &Limits) -> Result<SignConstraintSystem> {
    check_degree(base, d)?;
    if d.is_one() || d == base.p() {
        return invalid("sign constraints need a proper cover (1 < d < p)");
    }
    let cover = cover_of(base, d)?;
    let TotalSpace::Lens(total) = &cover.total else { unreachable!() };
    if base.q() >= total.p() {
        return Err(Error::Inconclusive(format!(
            "q = {} is not below the cover order {}; the lifted chain does not match the cover's coordinates",
            base.q(),
            total.p()
        )));
    }
    let bd = honda_blocks(base)?;
    let cd = honda_blocks(total)?;
    if bd.slices.len() + cd.slices.len() > limits.slice_count {
        return Err(Error::ResourceLimit(format!(
            "{} slices exceed the limit of {}",
            bd.slices.len() + cd.slices.len(),
            limits.slice_count
        )));
    }
    let one = BigRational::one();
    let top = cd.slopes[1].value();
    let mut free = Vec::new();
    let mut linked_base = Vec::new();
    for (j, s) in bd.slices.iter().enumerate() {
        let (hi, lo) = (lift(&s.from, d), lift(&s.to, d));
        if lo >= top || hi <= one {
            free.push(FreeTerm { coefficient: s.contribution.clone(), base_slice: j });
        } else if hi <= top && lo >= one {
            linked_base.push(j);
        } else {
            return Err(Error::Inconclusive(format!(
                "base slice {} -> {} lifts across a cover boundary",
                s.from, s.to
            )));
        }
    }
    let mut linked = Vec::new();
    let mut cover_iter = cd.slices.iter().enumerate().peekable();
    let mut group = LinkedTerm { coefficient: BigInt::zero(), base_slices: vec![], cover_slices: vec![] };
    if let Some(&first) = linked_base.first() {
        if lift(&bd.slices[first].from, d) != top {
            return Err(Error::Inconclusive("lifted base slopes miss the top of the cover slices".into()));
        }
    } else if !cd.slices.is_empty() {
        return Err(Error::Inconclusive("no base slice lifts onto the cover slices".into()));
    }
    for &j in &linked_base {
        let s = &bd.slices[j];
        group.coefficient += &s.contribution;
        group.base_slices.push(j);
        let lo = lift(&s.to, d);
        while let Some((k, c)) = cover_iter.peek() {
            if c.to.value() >= lo {
                group.coefficient -= &c.contribution;
                group.cover_slices.push(*k);
                cover_iter.next();
            } else {
                break;
            }
        }
        let closed = group.cover_slices.last().is_some_and(|&k| cd.slices[k].to.value() == lo);
        if closed {
            linked.push(std::mem::replace(
                &mut group,
                LinkedTerm { coefficient: BigInt::zero(), base_slices: vec![], cover_slices: vec![] },
            ));
        }
    }
    if !group.base_slices.is_empty() || cover_iter.next().is_some() {
        return Err(Error::Inconclusive("base and cover slices do not share a final breakpoint".into()));
    }
    let validated = VALIDATED.iter().any(|&(p, q, dd)| {
        base.p() == &BigInt::from(p) && base.q() == &BigInt::from(q) && d == &BigInt::from(dd)
    });
    Ok(SignConstraintSystem {
        base: base.clone(),
        degree: d.clone(),
        modulus: total.p().clone(),
        linked,
        free,
        validated,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SignSolution {
    /// Only all-plus or all-minus: every vo base structure lifts overtwisted.
    OnlyConstantSigns,
    /// A non-constant solution, as one sign (+1/-1) per term in the order of
    /// [`SignConstraintSystem::coefficients`].
    MixedSolutionExists { witness: Vec<i8> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignSolveReport {
    pub solution: SignSolution,
    /// "validated" for hand-checked pairings, "heuristic" otherwise.
    pub confidence: String,
}

pub fn solve_sign_constraints(s: &SignConstraintSystem, limits: &Limits) -> Result<SignSolveReport> {
    let coeffs: Vec<BigInt> = s.coefficients().iter().map(|c| c.mod_floor(&s.modulus)).collect();
    let t = coeffs.len();
    if t >= 63 {
        return Err(Error::ResourceLimit(format!("{t} sign terms")));
    }
    limits.check("sign assignments", 1u64 << t)?;
    let mut witness = None;
    for mask in 0u64..(1u64 << t) {
        if mask == 0 || mask == (1u64 << t) - 1 {
            continue;
        }
        let mut total = BigInt::zero();
        for (i, c) in coeffs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                total -= c;
            } else {
                total += c;
            }
        }
        if total.mod_floor(&s.modulus).is_zero() {
            witness = Some((0..t).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect());
            break;
        }
    }
    let solution = match witness {
        Some(w) => SignSolution::MixedSolutionExists { witness: w },
        None => SignSolution::OnlyConstantSigns,
    };
    let confidence = if s.validated { "validated" } else { "heuristic" }.to_string();
    Ok(SignSolveReport { solution, confidence })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorEntry {
    #[serde(with = "crate::serde_int")]
    pub order: BigInt,
    pub total: TotalSpace,
    pub cover_length: usize,
    /// `(1 + l') / order`, an upper bound for `chi` of a filling with this
    /// fundamental group order.
    pub chi_bound: ExactFraction,
    /// Criteria showing the degree-`order` lift is overtwisted.
    pub overtwisted_evidence: Vec<String>,
    /// Evidence that was computed but is not relied on.
    pub unused_evidence: Vec<String>,
    pub excluded_by: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi1Report {
    pub base: LensSpace,
    pub rotation: RotationVector,
    pub class: TightClass,
    #[serde(with = "crate::serde_int::option")]
    pub chi_lower: Option<BigInt>,
    pub chi_exact: bool,
    pub entries: Vec<DivisorEntry>,
    #[serde(with = "crate::serde_int::vec")]
    pub allowed_orders: Vec<BigInt>,
    pub notes: Vec<String>,
}

/// Evidence that the degree-`d` lift of a vo structure is overtwisted.
fn overtwisted_evidence(
    base: &LensSpace,
    r: &RotationVector,
    cover: &CoverDatum,
    limits: &Limits,
) -> Result<(Vec<String>, Vec<String>)> {
    let d = &cover.degree;
    let mut used = Vec::new();
    let mut unused = Vec::new();
    if d == base.p() {
        used.push("universal cover: S3 carries only the tight ut structure".to_string());
    }
    if overtwisted_lift_basic(base, d)? {
        used.push(format!("basic: {} < {} < {}", base.q(), base.p(), d * base.q()));
    }
    let refined = overtwisted_lift_refined(base, d)?;
    if refined.overtwisted {
        used.push(format!("refined: p'/q' = {} with p' < d q'", refined.expansion_route));
    }
    if !refined.routes_agree {
        unused.push(format!(
            "refined routes disagree: {} vs {}",
            refined.expansion_route, refined.inverse_route
        ));
    }
    if matches!(cover.total, TotalSpace::Lens(_)) && cover.total.only_universally_tight() {
        used.push(format!("ut-forcing: {} has only universally tight structures", cover.total));
    }
    match euler_compatibility_filter(base, r, d, limits) {
        Ok(v) if v.is_empty() => used.push("euler-filter: no compatible tight lift".to_string()),
        Ok(_) => {}
        Err(Error::ResourceLimit(m)) => unused.push(format!("euler-filter skipped: {m}")),
        Err(e) => return Err(e),
    }
    if d != base.p() {
        match lift_sign_constraints(base, d, limits).and_then(|s| Ok((solve_sign_constraints(&s, limits)?, s))) {
            Ok((rep, s)) if rep.solution == SignSolution::OnlyConstantSigns => {
                let msg = format!("sign-constraints: {} has only constant solutions", s.display_sum());
                if s.validated {
                    used.push(msg);
                } else {
                    unused.push(format!("{msg} (heuristic)"));
                }
            }
            Ok(_) => {}
            Err(Error::Inconclusive(m)) => unused.push(format!("sign-constraints inconclusive: {m}")),
            Err(Error::ResourceLimit(m)) => unused.push(format!("sign-constraints skipped: {m}")),
            Err(e) => return Err(e),
        }
    }
    Ok((used, unused))
}

/// Which orders of `pi1` remain possible for a Stein filling of `(L, r)`.
pub fn pi1_chi_report(base: &LensSpace, r: &RotationVector, limits: &Limits) -> Result<Pi1Report> {
    let cf = neg_cf_expand(base);
    let class = classify(&cf, r)?;
    let orders = divisors(base.p(), limits)?;
    let mut notes = Vec::new();
    let (chi_lower, chi_exact) = if class == TightClass::UniversallyTight {
        notes.push("universally tight: lifts stay tight, no constraint".to_string());
        (None, false)
    } else if r.is_zero() {
        match chi_from_d3(&d3_for_rotation(&cf, r)?) {
            Some(chi) => {
                notes.push(format!("c1 = 0: chi = {chi} from d3"));
                (Some(chi), true)
            }
            None => {
                notes.push("c1 = 0 but d3 gives no admissible chi: no Stein filling".to_string());
                (None, false)
            }
        }
    } else {
        (Some(BigInt::from(2)), false)
    };
    let mut entries = Vec::new();
    let mut ot_degrees: BTreeSet<BigInt> = BTreeSet::new();
    for m in &orders {
        let cover = cover_of(base, m)?;
        let length = if m.is_one() { cf.len() } else { cover.total.chain_length() };
        let chi_bound = ExactFraction::new(BigInt::from(1 + length), m.clone())?;
        let (evidence, unused) = if class == TightClass::VirtuallyOvertwisted && !m.is_one() {
            overtwisted_evidence(base, r, &cover, limits)?
        } else {
            (vec![], vec![])
        };
        if !evidence.is_empty() {
            ot_degrees.insert(m.clone());
        }
        entries.push(DivisorEntry {
            order: m.clone(),
            total: if m.is_one() { TotalSpace::Lens(base.clone()) } else { cover.total },
            cover_length: length,
            chi_bound,
            overtwisted_evidence: evidence,
            unused_evidence: unused,
            excluded_by: vec![],
        });
    }
    if class == TightClass::VirtuallyOvertwisted {
        for e in entries.iter_mut() {
            for d in &ot_degrees {
                if (&e.order % d).is_zero() {
                    e.excluded_by.push(format!("overtwisted degree-{d} lift"));
                }
            }
            if let Some(chi) = &chi_lower {
                if BigRational::from_integer(chi.clone()) > *e.chi_bound.value() {
                    e.excluded_by.push(format!("chi >= {chi} exceeds {}", e.chi_bound));
                }
            }
        }
        if chi_lower.is_none() {
            for e in entries.iter_mut() {
                e.excluded_by.push("no admissible chi".to_string());
            }
        }
    }
    let allowed_orders = entries.iter().filter(|e| e.excluded_by.is_empty()).map(|e| e.order.clone()).collect();
    Ok(Pi1Report {
        base: base.clone(),
        rotation: r.clone(),
        class,
        chi_lower,
        chi_exact,
        entries,
        allowed_orders,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn small(x: &BigInt) -> i64 {
        x.to_i64().expect("small integer")
    }

    fn l(p: i64, q: i64) -> LensSpace {
        normalize_lens(p, q).unwrap()
    }

    fn rv(v: &[i64]) -> RotationVector {
        RotationVector::from_i64(v)
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn coeffs(s: &SignConstraintSystem) -> (Vec<i64>, Vec<i64>) {
        (
            s.linked.iter().map(|t| small(&t.coefficient)).collect(),
            s.free.iter().map(|t| small(&t.coefficient)).collect(),
        )
    }

    #[test]
    fn lattice_of_covers() {
        let lim = Limits::default();
        let totals: Vec<String> =
            covering_lattice(&l(56, 15), &lim).unwrap().iter().map(|c| c.total.to_string()).collect();
        assert_eq!(totals, ["L(28,15)", "L(14,1)", "L(8,7)", "L(7,1)", "L(4,3)", "L(2,1)", "S3"]);
        let totals: Vec<String> =
            covering_lattice(&l(34, 7), &lim).unwrap().iter().map(|c| c.total.to_string()).collect();
        assert_eq!(totals, ["L(17,7)", "L(2,1)", "S3"]);
        assert_eq!(covering_lattice(&l(13, 5), &lim).unwrap().len(), 1);
    }

    #[test]
    fn euler_filter() {
        let lim = Limits::default();
        let base = l(34, 7);
        assert!(euler_compatibility_filter(&base, &rv(&[3, -5]), &b(2), &lim).unwrap().is_empty());
        let ok = euler_compatibility_filter(&base, &rv(&[3, 1]), &b(2), &lim).unwrap();
        assert!(ok.contains(&rv(&[1, 0, -2])));
        assert_eq!(euler_compatibility_filter(&base, &rv(&[3, 1]), &b(1), &lim).unwrap(), vec![rv(&[3, 1])]);
        assert!(euler_compatibility_filter(&base, &rv(&[3, 1]), &b(3), &lim).is_err());
    }

    #[test]
    fn lift_criteria() {
        assert!(!overtwisted_lift_basic(&l(34, 7), &b(2)).unwrap());
        assert!(overtwisted_lift_basic(&l(9, 5), &b(3)).unwrap());
        assert!(overtwisted_lift_basic(&l(35, 8), &b(5)).unwrap());
        assert!(overtwisted_lift_basic(&l(35, 8), &b(7)).unwrap());
        let r = overtwisted_lift_refined(&l(34, 7), &b(2)).unwrap();
        assert_eq!(r.expansion_route.to_string(), "29/6");
        assert_eq!(r.q_inverse, b(5));
        assert!(r.routes_agree);
        assert!(!r.overtwisted);
        assert!(overtwisted_lift_refined(&l(9, 5), &b(3)).unwrap().overtwisted);
        let r = overtwisted_lift_refined(&l(5, 4), &b(5)).unwrap();
        assert_eq!(r.expansion_route.to_string(), "1/1");
        assert!(r.routes_agree);
    }

    #[test]
    fn sign_system_34_7() {
        let lim = Limits::default();
        let s = lift_sign_constraints(&l(34, 7), &b(2), &lim).unwrap();
        assert_eq!(s.modulus, b(17));
        assert_eq!(coeffs(&s), (vec![5, 5, 1], vec![5, 1]));
        assert!(s.validated);
        assert_eq!(solve_sign_constraints(&s, &lim).unwrap().solution, SignSolution::OnlyConstantSigns);
    }

    #[test]
    fn sign_system_52_11() {
        let lim = Limits::default();
        let s = lift_sign_constraints(&l(52, 11), &b(2), &lim).unwrap();
        assert_eq!(s.modulus, b(26));
        assert_eq!(coeffs(&s), (vec![5, 1], vec![19, 1]));
        assert_eq!(solve_sign_constraints(&s, &lim).unwrap().solution, SignSolution::OnlyConstantSigns);
    }

    #[test]
    fn sign_system_56_15() {
        let lim = Limits::default();
        let s = lift_sign_constraints(&l(56, 15), &b(2), &lim).unwrap();
        assert_eq!(s.modulus, b(28));
        assert_eq!(coeffs(&s), (vec![13, 0, 0, -1], vec![15, 1]));
        assert!(matches!(
            solve_sign_constraints(&s, &lim).unwrap().solution,
            SignSolution::MixedSolutionExists { .. }
        ));
        // d = 4 leaves the cover's coordinate chart
        assert!(matches!(lift_sign_constraints(&l(56, 15), &b(4), &lim), Err(Error::Inconclusive(_))));
    }

    #[test]
    fn sign_system_all_twos() {
        let lim = Limits::default();
        let s = lift_sign_constraints(&l(9, 8), &b(3), &lim);
        // q = 8 >= 3: coordinates do not match
        assert!(s.is_err());
        let s = lift_sign_constraints(&l(6, 5), &b(2), &lim);
        assert!(s.is_err());
    }

    #[test]
    fn pi1_56_15() {
        let lim = Limits::default();
        let rep = pi1_chi_report(&l(56, 15), &rv(&[0, 0, 0]), &lim).unwrap();
        assert_eq!(rep.chi_lower, Some(b(4)));
        assert_eq!(rep.allowed_orders, vec![b(1)]);
        let bound = |m: i64| rep.entries.iter().find(|e| e.order == b(m)).unwrap().chi_bound.to_string();
        assert_eq!(bound(8), "1/4");
        assert_eq!(bound(4), "1/2");
        assert_eq!(bound(2), "2/1");
    }

    #[test]
    fn pi1_prime_and_ut() {
        let lim = Limits::default();
        let rep = pi1_chi_report(&l(17, 7), &rv(&[1, 0, -2]), &lim).unwrap();
        assert_eq!(rep.allowed_orders, vec![b(1)]);
        let rep = pi1_chi_report(&l(34, 7), &rv(&[3, 5]), &lim).unwrap();
        assert_eq!(rep.allowed_orders, vec![b(1), b(2), b(17), b(34)]);
    }
}
