//! Dehn-twist factorizations on planar pages, seen through the holes each
//! curve encloses.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::limits::{Budget, Limits};

/// Set of hole indices, as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HoleSet(pub u64);

impl HoleSet {
    pub fn from_indices(idx: &[usize]) -> Self {
        HoleSet(idx.iter().fold(0u64, |m, &i| m | 1 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: HoleSet) -> HoleSet {
        HoleSet(self.0 | o.0)
    }

    pub fn disjoint(self, o: HoleSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..64).filter(|&i| self.contains(i)).collect()
    }

    fn permuted(self, perm: &[usize]) -> HoleSet {
        HoleSet(self.indices().iter().fold(0u64, |m, &i| m | 1 << perm[i]))
    }
}

impl fmt::Display for HoleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twist {
    pub holes: HoleSet,
    pub power: i64,
}

/// Ordered product of twists around curves enclosing the given holes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistFactorization {
    pub holes: Vec<String>,
    pub twists: Vec<Twist>,
}

#[derive(Serialize, Deserialize)]
struct NamedTwist {
    holes: Vec<String>,
    power: i64,
}

#[derive(Serialize, Deserialize)]
struct NamedFactorization {
    holes: Vec<String>,
    twists: Vec<NamedTwist>,
}

impl TwistFactorization {
    pub fn new(holes: Vec<String>, twists: Vec<Twist>) -> Result<Self> {
        if holes.len() > 64 {
            return invalid("at most 64 holes are supported");
        }
        let distinct: BTreeSet<&String> = holes.iter().collect();
        if distinct.len() != holes.len() {
            return invalid("hole names must be distinct");
        }
        let all = if holes.len() == 64 { u64::MAX } else { (1u64 << holes.len()) - 1 };
        for t in &twists {
            if t.holes.is_empty() {
                return invalid("a twist curve must enclose at least one hole");
            }
            if t.holes.0 & !all != 0 {
                return invalid("twist refers to an unknown hole");
            }
            if t.power == 0 {
                return invalid("twist powers must be nonzero");
            }
        }
        Ok(TwistFactorization { holes, twists })
    }

    /// Build from hole names; each twist lists the names it encloses.
    pub fn from_named(holes: &[&str], twists: &[(&[&str], i64)]) -> Result<Self> {
        let names: Vec<String> = holes.iter().map(|s| s.to_string()).collect();
        let mut out = Vec::new();
        for (hs, power) in twists {
            out.push(Twist { holes: holeset_by_name(&names, hs)?, power: *power });
        }
        TwistFactorization::new(names, out)
    }

    /// Parse `{"holes": [...], "twists": [{"holes": [...], "power": k}]}` or
    /// a bare list of twists, in which case holes are taken in order of
    /// first appearance.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let named: NamedFactorization = if v.is_array() {
            let twists: Vec<NamedTwist> = serde_json::from_value(v.clone())
                .map_err(|e| Error::InvalidInput(format!("bad factorization: {e}")))?;
            let mut holes: Vec<String> = Vec::new();
            for t in &twists {
                for h in &t.holes {
                    if !holes.contains(h) {
                        holes.push(h.clone());
                    }
                }
            }
            NamedFactorization { holes, twists }
        } else {
            serde_json::from_value(v.clone())
                .map_err(|e| Error::InvalidInput(format!("bad factorization: {e}")))?
        };
        let mut twists = Vec::new();
        for t in &named.twists {
            let names: Vec<&str> = t.holes.iter().map(|s| s.as_str()).collect();
            twists.push(Twist { holes: holeset_by_name(&named.holes, &names)?, power: t.power });
        }
        TwistFactorization::new(named.holes, twists)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let named = NamedFactorization {
            holes: self.holes.clone(),
            twists: self
                .twists
                .iter()
                .map(|t| NamedTwist {
                    holes: t.holes.indices().iter().map(|&i| self.holes[i].clone()).collect(),
                    power: t.power,
                })
                .collect(),
        };
        serde_json::to_value(named).expect("serializable")
    }

    /// Concatenation on the same page.
    pub fn then(&self, other: &TwistFactorization) -> Result<Self> {
        if self.holes != other.holes {
            return invalid("factorizations live on different pages");
        }
        let mut twists = self.twists.clone();
        twists.extend(other.twists.iter().cloned());
        TwistFactorization::new(self.holes.clone(), twists)
    }

    pub fn holeset(&self, names: &[&str]) -> Result<HoleSet> {
        holeset_by_name(&self.holes, names)
    }
}

fn holeset_by_name(holes: &[String], names: &[&str]) -> Result<HoleSet> {
    let mut idx = Vec::new();
    for n in names {
        match holes.iter().position(|h| h == n) {
            Some(i) => idx.push(i),
            None => return invalid(format!("unknown hole {n:?}")),
        }
    }
    Ok(HoleSet::from_indices(&idx))
}

/// Symmetric matrix of (joint) multiplicities indexed by holes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiplicityMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl MultiplicityMatrix {
    pub fn zeros(n: usize) -> Self {
        MultiplicityMatrix { entries: vec![vec![0; n]; n] }
    }

    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return invalid("matrix is not square");
        }
        let m = MultiplicityMatrix { entries };
        if !m.is_symmetric() {
            return invalid("multiplicity matrix must be symmetric");
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn add(&self, o: &MultiplicityMatrix) -> Result<MultiplicityMatrix> {
        if self.dim() != o.dim() {
            return invalid("dimension mismatch");
        }
        let mut out = self.clone();
        for (i, row) in out.entries.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = x.checked_add(o.entries[i][j]).ok_or_else(overflow)?;
            }
        }
        Ok(out)
    }

    fn add_curve(&mut self, s: HoleSet, power: i64) -> Result<()> {
        let idx = s.indices();
        for &i in &idx {
            for &j in &idx {
                self.entries[i][j] = self.entries[i][j].checked_add(power).ok_or_else(overflow)?;
            }
        }
        Ok(())
    }
}

fn overflow() -> Error {
    Error::ResourceLimit("multiplicity overflows 64 bits".into())
}

/// `m(i)` and `m(i,j)`: total power of twists whose curve encloses `i`
/// (and `j`).
pub fn multiplicity_matrix(f: &TwistFactorization) -> Result<MultiplicityMatrix> {
    let mut m = MultiplicityMatrix::zeros(f.holes.len());
    for t in &f.twists {
        m.add_curve(t.holes, t.power)?;
    }
    Ok(m)
}

/// Multiplicities of a multiset of curves, each with power one.
pub fn multiset_matrix(curves: &[HoleSet], holes: usize) -> Result<MultiplicityMatrix> {
    let mut m = MultiplicityMatrix::zeros(holes);
    for &c in curves {
        m.add_curve(c, 1)?;
    }
    Ok(m)
}

fn remove_one(ms: &mut Vec<HoleSet>, s: HoleSet) -> Result<()> {
    match ms.iter().position(|&x| x == s) {
        Some(i) => {
            ms.remove(i);
            Ok(())
        }
        None => Err(Error::InvalidRewrite(format!("curve {s} is not in the multiset"))),
    }
}

/// Replace `{S1 u S2 u S3, S1, S2, S3}` by `{S1 u S2, S1 u S3, S2 u S3}`.
pub fn lantern_rewrite(f: &[HoleSet], pick: (HoleSet, HoleSet, HoleSet)) -> Result<Vec<HoleSet>> {
    let (a, b, c) = pick;
    if a.is_empty() || b.is_empty() || c.is_empty() {
        return Err(Error::InvalidRewrite("lantern sets must be non-empty".into()));
    }
    if !(a.disjoint(b) && a.disjoint(c) && b.disjoint(c)) {
        return Err(Error::InvalidRewrite("lantern sets must be pairwise disjoint".into()));
    }
    let mut out = f.to_vec();
    for s in [a.union(b).union(c), a, b, c] {
        remove_one(&mut out, s)?;
    }
    out.extend([a.union(b), a.union(c), b.union(c)]);
    out.sort();
    Ok(out)
}

/// Inverse lantern: `{S1 u S2, S1 u S3, S2 u S3}` back to the four curves.
pub fn lantern_inverse(f: &[HoleSet], pick: (HoleSet, HoleSet, HoleSet)) -> Result<Vec<HoleSet>> {
    let (a, b, c) = pick;
    if a.is_empty() || b.is_empty() || c.is_empty() || !(a.disjoint(b) && a.disjoint(c) && b.disjoint(c)) {
        return Err(Error::InvalidRewrite("lantern sets must be non-empty and pairwise disjoint".into()));
    }
    let mut out = f.to_vec();
    for s in [a.union(b), a.union(c), b.union(c)] {
        remove_one(&mut out, s)?;
    }
    out.extend([a.union(b).union(c), a, b, c]);
    out.sort();
    Ok(out)
}

/// A curve configuration: sorted multiset of hole sets.
pub type Configuration = Vec<HoleSet>;

/// All multisets of curves, at most `max_curves` of them, realizing the
/// target multiplicities; one representative per orbit of the declared
/// symmetry (each inner list is a block of interchangeable holes).
pub fn enumerate_configurations(
    target: &MultiplicityMatrix,
    max_curves: usize,
    symmetry: &[Vec<usize>],
    limits: &Limits,
) -> Result<Vec<Configuration>> {
    let h = target.dim();
    if h > limits.config_holes {
        return Err(Error::ResourceLimit(format!("configuration search is limited to {} holes", limits.config_holes)));
    }
    if target.entries.iter().flatten().any(|&x| x < 0) {
        return invalid("target multiplicities must be non-negative");
    }
    if !target.is_symmetric() {
        return invalid("target must be symmetric");
    }
    let mut seen = BTreeSet::new();
    for block in symmetry {
        for &i in block {
            if i >= h || !seen.insert(i) {
                return invalid("symmetry blocks must be disjoint hole indices");
            }
        }
    }
    let mut candidates: Vec<HoleSet> = (1u64..(1u64 << h))
        .map(HoleSet)
        .filter(|s| {
            let idx = s.indices();
            idx.iter().all(|&i| idx.iter().all(|&j| target.entries[i][j] > 0))
        })
        .collect();
    candidates.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    // pairs still coverable by candidates[idx..]
    let mut coverable = vec![0u128; candidates.len() + 1];
    for idx in (0..candidates.len()).rev() {
        let mut mask = coverable[idx + 1];
        let ids = candidates[idx].indices();
        for &i in &ids {
            for &j in &ids {
                mask |= 1u128 << (i * h + j);
            }
        }
        coverable[idx] = mask;
    }
    let mut search = ConfigSearch {
        h,
        candidates: &candidates,
        coverable: &coverable,
        residual: target.entries.clone(),
        chosen: Vec::new(),
        max_curves,
        found: BTreeSet::new(),
        budget: Budget::new(limits, "configuration search"),
    };
    search.run(0)?;
    let perms = symmetry_group(h, symmetry);
    let mut classes = BTreeSet::new();
    for conf in search.found {
        classes.insert(canonical(&conf, &perms));
    }
    Ok(classes.into_iter().collect())
}

struct ConfigSearch<'a> {
    h: usize,
    candidates: &'a [HoleSet],
    coverable: &'a [u128],
    residual: Vec<Vec<i64>>,
    chosen: Vec<HoleSet>,
    max_curves: usize,
    found: BTreeSet<Configuration>,
    budget: Budget,
}

impl ConfigSearch<'_> {
    fn run(&mut self, idx: usize) -> Result<()> {
        self.budget.tick()?;
        let mut pending = 0u128;
        for i in 0..self.h {
            for j in 0..self.h {
                if self.residual[i][j] > 0 {
                    pending |= 1u128 << (i * self.h + j);
                }
            }
        }
        if pending == 0 {
            let mut conf = self.chosen.clone();
            conf.sort();
            self.found.insert(conf);
            return Ok(());
        }
        if idx == self.candidates.len() || pending & !self.coverable[idx] != 0 {
            return Ok(());
        }
        let s = self.candidates[idx];
        let ids = s.indices();
        let room = self.max_curves - self.chosen.len();
        let max_mult = ids
            .iter()
            .flat_map(|&i| ids.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.residual[i][j])
            .min()
            .unwrap_or(0)
            .max(0) as usize;
        for k in (0..=max_mult.min(room)).rev() {
            self.apply(&ids, -(k as i64));
            for _ in 0..k {
                self.chosen.push(s);
            }
            let res = self.run(idx + 1);
            for _ in 0..k {
                self.chosen.pop();
            }
            self.apply(&ids, k as i64);
            res?;
        }
        Ok(())
    }

    fn apply(&mut self, ids: &[usize], delta: i64) {
        for &i in ids {
            for &j in ids {
                self.residual[i][j] += delta;
            }
        }
    }
}

fn symmetry_group(h: usize, blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut perms: Vec<Vec<usize>> = vec![(0..h).collect()];
    for block in blocks {
        let mut next = Vec::new();
        for p in &perms {
            for arrangement in permutations(block) {
                let mut q = p.clone();
                for (from, to) in block.iter().zip(&arrangement) {
                    q[*from] = *to;
                }
                next.push(q);
            }
        }
        perms = next;
    }
    perms
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn canonical(conf: &[HoleSet], perms: &[Vec<usize>]) -> Configuration {
    perms
        .iter()
        .map(|p| {
            let mut c: Vec<HoleSet> = conf.iter().map(|s| s.permuted(p)).collect();
            c.sort();
            c
        })
        .min()
        .expect("identity permutation present")
}

/// Topology of the Lefschetz fibration over the disk with this monodromy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PalfTopology {
    pub holes: usize,
    pub curves: usize,
    pub chi: i64,
    pub b2: i64,
    /// Free rank of `H1`.
    pub h1_rank: usize,
    /// Torsion invariant factors of `H1` (all greater than 1).
    #[serde(with = "crate::serde_int::vec")]
    pub h1_torsion: Vec<BigInt>,
}

/// `chi = 1 - h + #curves`; `H1` is the cokernel of the hole-by-curve
/// incidence matrix and `b2` the rank of its kernel.
pub fn palf_euler(f: &TwistFactorization) -> Result<PalfTopology> {
    if let Some(t) = f.twists.iter().find(|t| t.power <= 0) {
        return Err(Error::NotStein(format!("twist around {} has power {}", t.holes, t.power)));
    }
    let h = f.holes.len();
    let mut columns: Vec<HoleSet> = Vec::new();
    for t in &f.twists {
        for _ in 0..t.power {
            columns.push(t.holes);
        }
    }
    let n = columns.len();
    let m: Vec<Vec<BigInt>> =
        (0..h).map(|i| columns.iter().map(|c| BigInt::from(c.contains(i) as i64)).collect()).collect();
    let factors = smith_diagonal(m, h, n);
    let rank = factors.len();
    let torsion = factors.into_iter().filter(|d| d > &BigInt::from(1)).collect();
    Ok(PalfTopology {
        holes: h,
        curves: n,
        chi: 1 - h as i64 + n as i64,
        b2: n as i64 - rank as i64,
        h1_rank: h - rank,
        h1_torsion: torsion,
    })
}

/// Nonzero invariant factors of an integer matrix, ascending.
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>, rows: usize, cols: usize) -> Vec<BigInt> {
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero entry in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let f = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &f * &a[t][j];
                    a[i][j] -= v;
                }
                clean &= a[i][t].is_zero();
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let f = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &f * &a[i][t];
                    a[i][j] -= v;
                }
                clean &= a[t][j].is_zero();
            }
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| {
            !(&a[i][j] % &a[t][t]).is_zero()
        });
        if let Some((i, _)) = bad {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag.sort();
    diag
}

/// Necessary condition for quasi-positivity: non-negative entries, each
/// diagonal entry the largest in its row.
pub fn quasipositivity_screen(a: &MultiplicityMatrix) -> bool {
    a.entries.iter().enumerate().all(|(i, row)| row.iter().all(|&x| x >= 0 && row[i] >= x))
}

/// Page with holes `s, p1..pk, n1..nl` and monodromy: one curve around all
/// holes, one around `s` and the `p`s, one around `s` and the `n`s, and one
/// boundary-parallel curve around each `p` and each `n`.
pub fn two_chain_monodromy(k: usize, l: usize) -> Result<TwistFactorization> {
    let mut holes = vec!["s".to_string()];
    holes.extend((1..=k).map(|i| format!("p{i}")));
    holes.extend((1..=l).map(|j| format!("n{j}")));
    let s = HoleSet::from_indices(&[0]);
    let ps = HoleSet::from_indices(&(1..=k).collect::<Vec<_>>());
    let ns = HoleSet::from_indices(&(k + 1..=k + l).collect::<Vec<_>>());
    let mut twists = vec![
        Twist { holes: s.union(ps).union(ns), power: 1 },
        Twist { holes: s.union(ps), power: 1 },
        Twist { holes: s.union(ns), power: 1 },
    ];
    for i in 1..=k + l {
        twists.push(Twist { holes: HoleSet::from_indices(&[i]), power: 1 });
    }
    TwistFactorization::new(holes, twists)
}

/// Symmetry blocks of [`two_chain_monodromy`]: the `p`s and the `n`s.
pub fn two_chain_symmetry(k: usize, l: usize) -> Vec<Vec<usize>> {
    vec![(1..=k).collect(), (k + 1..=k + l).collect()]
}

/// The three-hole family whose matrix has a `-1` off the diagonal.
pub fn conway_factorization(n1: i64, n2: i64, n3: i64, n4: i64, p: i64) -> Result<TwistFactorization> {
    let holes = ["1", "2", "3"];
    let twists: Vec<(&[&str], i64)> = vec![
        (&["2", "3"], -(n1 + 1)),
        (&["1", "2"], p),
        (&["1", "2", "3"], n1),
        (&["1"], n2),
        (&["2"], n3),
        (&["3"], n4),
    ];
    let twists: Vec<(&[&str], i64)> = twists.into_iter().filter(|t| t.1 != 0).collect();
    TwistFactorization::from_named(&holes, &twists)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs(i: &[usize]) -> HoleSet {
        HoleSet::from_indices(i)
    }

    #[test]
    fn two_chain_multiplicities() {
        let f = two_chain_monodromy(3, 3).unwrap();
        let m = multiplicity_matrix(&f).unwrap();
        let (s, p1, p2, n1, n2) = (0, 1, 2, 4, 5);
        assert_eq!(m.entries[s][s], 3);
        assert_eq!(m.entries[p1][p1], 3);
        assert_eq!(m.entries[n1][n1], 3);
        assert_eq!(m.entries[n1][n2], 2);
        assert_eq!(m.entries[p1][p2], 2);
        assert_eq!(m.entries[p1][s], 2);
        assert_eq!(m.entries[n1][s], 2);
        assert_eq!(m.entries[n1][p1], 1);
    }

    #[test]
    fn conway_matrix() {
        let f = conway_factorization(2, 2, 2, 2, 3).unwrap();
        let m = multiplicity_matrix(&f).unwrap();
        assert_eq!(m.entries, vec![vec![7, 5, 2], vec![5, 4, -1], vec![2, -1, 1]]);
        assert!(!quasipositivity_screen(&m));
    }

    #[test]
    fn single_twist() {
        let f = TwistFactorization::from_named(&["a"], &[(&["a"], 5)]).unwrap();
        assert_eq!(multiplicity_matrix(&f).unwrap().entries, vec![vec![5]]);
    }

    #[test]
    fn lantern_on_small_page() {
        // holes s=0, p1=1, n1=2, n2=3
        let f = two_chain_monodromy(1, 2).unwrap();
        let curves: Vec<HoleSet> = {
            let mut c: Vec<HoleSet> = f.twists.iter().map(|t| t.holes).collect();
            c.sort();
            c
        };
        let pick = (hs(&[2]), hs(&[3]), hs(&[0, 1]));
        let after = lantern_rewrite(&curves, pick).unwrap();
        assert_eq!(after.len(), 5);
        assert!(after.contains(&hs(&[2, 3])) && after.contains(&hs(&[0, 1, 2])) && after.contains(&hs(&[0, 1, 3])));
        assert_eq!(multiset_matrix(&curves, 4).unwrap(), multiset_matrix(&after, 4).unwrap());
        assert_eq!(lantern_inverse(&after, pick).unwrap(), curves);
        assert!(lantern_rewrite(&curves, (hs(&[2]), hs(&[2]), hs(&[0, 1]))).is_err());
        assert!(lantern_rewrite(&after, pick).is_err());
    }

    #[test]
    fn euler_characteristics() {
        let f = two_chain_monodromy(1, 2).unwrap();
        let t = palf_euler(&f).unwrap();
        assert_eq!((t.chi, t.b2), (3, 2));
        let curves: Vec<HoleSet> = f.twists.iter().map(|t| t.holes).collect();
        let after = lantern_rewrite(&curves, (hs(&[2]), hs(&[3]), hs(&[0, 1]))).unwrap();
        let g = TwistFactorization::new(
            f.holes.clone(),
            after.iter().map(|&h| Twist { holes: h, power: 1 }).collect(),
        )
        .unwrap();
        let t = palf_euler(&g).unwrap();
        assert_eq!((t.chi, t.h1_rank, t.h1_torsion.len()), (2, 0, 0));
        let empty = TwistFactorization::new(vec![], vec![]).unwrap();
        assert_eq!(palf_euler(&empty).unwrap().chi, 1);
        let neg = TwistFactorization::from_named(&["a"], &[(&["a"], -1)]).unwrap();
        assert!(matches!(palf_euler(&neg), Err(Error::NotStein(_))));
    }

    #[test]
    fn torsion_in_h1() {
        // a single hole with a double twist still kills H1
        let f = TwistFactorization::from_named(&["a"], &[(&["a"], 2)]).unwrap();
        let t = palf_euler(&f).unwrap();
        assert_eq!(t.h1_rank, 0);
        assert!(t.h1_torsion.is_empty());
        assert_eq!(smith_diagonal(vec![vec![2.into(), 0.into()], vec![0.into(), 3.into()]], 2, 2), vec![1.into(), 6.into()]);
        assert_eq!(smith_diagonal(vec![vec![2.into(), 4.into()]], 1, 2), vec![2.into()]);
    }

    #[test]
    fn configurations() {
        let lim = Limits::default();
        let m = MultiplicityMatrix::new(vec![vec![4]]).unwrap();
        assert_eq!(enumerate_configurations(&m, 10, &[], &lim).unwrap(), vec![vec![hs(&[0]); 4]]);
        let target = multiplicity_matrix(&two_chain_monodromy(3, 3).unwrap()).unwrap();
        let found = enumerate_configurations(&target, 20, &two_chain_symmetry(3, 3), &lim).unwrap();
        assert_eq!(found.len(), 1);
        let target = multiplicity_matrix(&two_chain_monodromy(1, 2).unwrap()).unwrap();
        let found = enumerate_configurations(&target, 20, &two_chain_symmetry(1, 2), &lim).unwrap();
        assert_eq!(found.len(), 2);
        for c in &found {
            assert_eq!(multiset_matrix(c, 4).unwrap(), target);
        }
    }

    #[test]
    fn screen() {
        let ok = MultiplicityMatrix::new(vec![vec![3, 1], vec![1, 4]]).unwrap();
        assert!(quasipositivity_screen(&ok));
        let bad = MultiplicityMatrix::new(vec![vec![0, -1], vec![-1, 0]]).unwrap();
        assert!(!quasipositivity_screen(&bad));
        let bad = MultiplicityMatrix::new(vec![vec![1, 2], vec![2, 5]]).unwrap();
        assert!(!quasipositivity_screen(&bad));
    }
}
