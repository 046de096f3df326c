//! Linking matrices of linear plumbings, exact inverses, and embeddings of
//! plumbing lattices into the diagonal lattice `<-1>^t`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::limits::{Budget, Limits};
use crate::numbers::{neg_cf_expand, ExactFraction, LensSpace, NegCF};

/// Square symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymmetricIntMatrix {
    #[serde(with = "crate::serde_int::matrix")]
    rows: Vec<Vec<BigInt>>,
}

impl SymmetricIntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return invalid("matrix is not square");
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return invalid(format!("matrix is not symmetric at ({i},{j})"));
                }
            }
        }
        Ok(SymmetricIntMatrix { rows })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        SymmetricIntMatrix::new(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn negated(&self) -> SymmetricIntMatrix {
        SymmetricIntMatrix { rows: self.rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(self.rows.clone())
    }

    /// Leading principal minors `D1, ..., Dn`.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        (1..=self.dim())
            .map(|k| bareiss_determinant(self.rows[..k].iter().map(|r| r[..k].to_vec()).collect()))
            .collect()
    }

    /// Sylvester's criterion: minors alternate in sign starting negative.
    pub fn is_negative_definite(&self) -> bool {
        self.leading_minors().iter().enumerate().all(|(i, d)| {
            if i % 2 == 0 {
                d.is_negative()
            } else {
                d.is_positive()
            }
        })
    }

    pub fn is_positive_definite(&self) -> bool {
        self.leading_minors().iter().all(|d| d.is_positive())
    }

    /// `x^T A x` for an integer vector.
    pub fn quadratic_form(&self, x: &[BigInt]) -> BigInt {
        let mut total = BigInt::zero();
        for (i, row) in self.rows.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            let mut acc = BigInt::zero();
            for (j, a) in row.iter().enumerate() {
                acc += a * &x[j];
            }
            total += &x[i] * acc;
        }
        total
    }
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Square matrix of exact rationals; serializes as rows of `num/den` strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalMatrix {
    rows: Vec<Vec<ExactFraction>>,
}

impl RationalMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        self.rows[i][j].value()
    }

    pub fn rows(&self) -> &[Vec<ExactFraction>] {
        &self.rows
    }

    /// `A * self` for an integer matrix `A`.
    pub fn left_mul(&self, a: &SymmetricIntMatrix) -> RationalMatrix {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = BigRational::zero();
                        for k in 0..n {
                            acc += BigRational::from_integer(a.get(i, k).clone()) * self.get(k, j);
                        }
                        ExactFraction::from(acc)
                    })
                    .collect()
            })
            .collect();
        RationalMatrix { rows }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim()).all(|i| {
            (0..self.dim()).all(|j| {
                let v = self.get(i, j);
                if i == j {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        })
    }

    /// `x^T self x` for an integer vector.
    pub fn quadratic_form(&self, x: &[BigInt]) -> BigRational {
        let mut total = BigRational::zero();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !x[i].is_zero() && !x[j].is_zero() {
                    total += self.get(i, j) * BigRational::from_integer(&x[i] * &x[j]);
                }
            }
        }
        total
    }
}

/// Tridiagonal linking matrix with diagonal `-ai` and off-diagonal `1`.
pub fn linking_matrix(cf: &NegCF) -> SymmetricIntMatrix {
    let n = cf.len();
    let mut rows = vec![vec![BigInt::zero(); n]; n];
    for (i, a) in cf.coeffs().iter().enumerate() {
        rows[i][i] = -a;
        if i + 1 < n {
            rows[i][i + 1] = BigInt::one();
            rows[i + 1][i] = BigInt::one();
        }
    }
    SymmetricIntMatrix { rows }
}

/// Positive-definite companion `-Q`: diagonal `ai`, off-diagonal `-1`.
pub fn positive_chain_matrix(cf: &NegCF) -> SymmetricIntMatrix {
    linking_matrix(cf).negated()
}

/// Determinants of the leading blocks via `D_i = -ai D_{i-1} - D_{i-2}`,
/// starting from `D_{-1} = 0`, `D_0 = 1`. Returns `[D_0, ..., D_n]`.
pub fn chain_determinants(cf: &NegCF) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut before = BigInt::zero();
    for a in cf.coeffs() {
        let last = out.last().unwrap().clone();
        let next = -a * &last - &before;
        before = last;
        out.push(next);
    }
    out
}

pub fn chain_determinant(cf: &NegCF) -> BigInt {
    chain_determinants(cf).pop().unwrap()
}

/// Exact inverse by Gauss-Jordan elimination over the rationals.
pub fn exact_inverse(q: &SymmetricIntMatrix) -> Result<RationalMatrix> {
    let n = q.dim();
    let mut a: Vec<Vec<BigRational>> = q
        .rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Ok(RationalMatrix {
        rows: inv.into_iter().map(|r| r.into_iter().map(ExactFraction::from).collect()).collect(),
    })
}

/// Upper bound `1 + length(p/q)` on the Euler characteristic of a filling.
pub fn chi_upper_bound(l: &LensSpace) -> usize {
    1 + neg_cf_expand(l).len()
}

/// A linear chain of vertices with negative weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearPlumbing {
    weights: Vec<i64>,
}

impl LinearPlumbing {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.is_empty() {
            return invalid("plumbing has no vertices");
        }
        if let Some(w) = weights.iter().find(|&&w| w >= 0) {
            return invalid(format!("weight {w} is not negative"));
        }
        Ok(LinearPlumbing { weights })
    }

    /// The chain `-a1, ..., -an`.
    pub fn from_cf(cf: &NegCF) -> Result<Self> {
        LinearPlumbing::new(cf.coeffs_i64()?.into_iter().map(|a| -a).collect())
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    fn degree(&self, i: usize) -> i64 {
        let k = self.weights.len();
        (i > 0) as i64 + (i + 1 < k) as i64
    }

    pub fn bad_vertices(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&i| self.weights[i] + self.degree(i) > 0).collect()
    }

    /// Plumbing form: diagonal `wi`, `1` between neighbours.
    pub fn form(&self) -> SymmetricIntMatrix {
        let k = self.weights.len();
        let mut rows = vec![vec![BigInt::zero(); k]; k];
        for i in 0..k {
            rows[i][i] = BigInt::from(self.weights[i]);
            if i + 1 < k {
                rows[i][i + 1] = BigInt::one();
                rows[i + 1][i] = BigInt::one();
            }
        }
        SymmetricIntMatrix { rows }
    }
}

/// Images of plumbing vertices in `<-1>^t`, as dense coefficient vectors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiagonalEmbedding {
    pub t: usize,
    pub images: Vec<Vec<i64>>,
}

impl DiagonalEmbedding {
    /// Gram matrix of the images under the form `-sum xi yi`.
    pub fn gram(&self) -> SymmetricIntMatrix {
        let k = self.images.len();
        let rows = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        let s: i64 = self.images[a].iter().zip(&self.images[b]).map(|(x, y)| x * y).sum();
                        BigInt::from(-s)
                    })
                    .collect()
            })
            .collect();
        SymmetricIntMatrix { rows }
    }

    /// True when every basis vector is hit, i.e. no `-1` vector is orthogonal
    /// to the image.
    pub fn is_irreducible(&self) -> bool {
        (0..self.t).all(|j| self.images.iter().any(|v| v[j] != 0))
    }

    /// Representative of the class under signed coordinate permutations.
    pub fn canonical(&self) -> DiagonalEmbedding {
        let k = self.images.len();
        let mut cols: Vec<Vec<i64>> = (0..self.t)
            .map(|j| {
                let mut c: Vec<i64> = (0..k).map(|a| self.images[a][j]).collect();
                if c.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                    c.iter_mut().for_each(|x| *x = -*x);
                }
                c
            })
            .collect();
        cols.sort_by(|a, b| b.cmp(a));
        columns_to_embedding(&cols, self.t, k)
    }
}

fn columns_to_embedding(cols: &[Vec<i64>], t: usize, k: usize) -> DiagonalEmbedding {
    let mut images = vec![vec![0i64; t]; k];
    for (j, c) in cols.iter().enumerate() {
        for a in 0..k {
            images[a][j] = c[a];
        }
    }
    DiagonalEmbedding { t, images }
}

/// Greedy embedding with `t = 1 + sum(|wi| - 1)`: each vertex takes fresh
/// basis vectors, except one shared with its left neighbour.
pub fn max_irreducible_embedding(p: &LinearPlumbing) -> Result<DiagonalEmbedding> {
    let bad = p.bad_vertices();
    if !bad.is_empty() {
        return Err(Error::UnsupportedGraph(format!("bad vertices at positions {bad:?}")));
    }
    let t = 1 + p.weights.iter().map(|w| w.unsigned_abs() as usize - 1).sum::<usize>();
    let mut images = Vec::with_capacity(p.weights.len());
    let mut next = 0usize;
    let mut last_fresh: Option<usize> = None;
    for &w in &p.weights {
        let mut v = vec![0i64; t];
        let mut used = 0;
        if let Some(s) = last_fresh {
            v[s] = -1;
            used += 1;
        }
        while used < w.unsigned_abs() as usize {
            v[next] = 1;
            last_fresh = Some(next);
            next += 1;
            used += 1;
        }
        images.push(v);
    }
    let e = DiagonalEmbedding { t, images };
    if e.gram() != p.form() {
        return Err(Error::Inconsistency("greedy embedding does not reproduce the plumbing form".into()));
    }
    Ok(e)
}

/// Basis of the integer kernel of an integer matrix (rows x cols), via
/// unimodular column operations.
pub fn integer_kernel(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    // column operations act on a (rows) and on u (as columns)
    let col_op = |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, f: &BigInt| {
        for row in a.iter_mut() {
            let t = f * &row[src];
            row[dst] -= t;
        }
        for row in u.iter_mut() {
            let t = f * &row[src];
            row[dst] -= t;
        }
    };
    let swap_cols = |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, x: usize, y: usize| {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
        for row in u.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut pivot_col = 0usize;
    for r in 0..a.len() {
        if pivot_col >= cols {
            break;
        }
        loop {
            // smallest nonzero entry in row r among active columns
            let best = (pivot_col..cols)
                .filter(|&c| !a[r][c].is_zero())
                .min_by(|&x, &y| a[r][x].abs().cmp(&a[r][y].abs()));
            let Some(b) = best else { break };
            swap_cols(&mut a, &mut u, pivot_col, b);
            let mut done = true;
            for c in pivot_col + 1..cols {
                if !a[r][c].is_zero() {
                    let f = a[r][c].div_floor(&a[r][pivot_col]);
                    col_op(&mut a, &mut u, c, pivot_col, &f);
                    if !a[r][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                pivot_col += 1;
                break;
            }
        }
    }
    (pivot_col..cols).map(|c| u.iter().map(|row| row[c].clone()).collect()).collect()
}

/// Gram matrix of an integral basis of the orthogonal complement of the image.
pub fn orthogonal_complement(e: &DiagonalEmbedding) -> SymmetricIntMatrix {
    let m: Vec<Vec<BigInt>> =
        e.images.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let basis = integer_kernel(&m, e.t);
    let rows = basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| -x.iter().zip(y).map(|(a, b)| a * b).sum::<BigInt>())
                .collect()
        })
        .collect();
    SymmetricIntMatrix { rows }
}

/// All nonzero integer vectors `x` with `x^T G x <= bound` for positive
/// definite `G`, by exact Fincke-Pohst enumeration.
pub fn short_vectors(g: &SymmetricIntMatrix, bound: &BigInt, limits: &Limits) -> Result<Vec<Vec<BigInt>>> {
    let n = g.dim();
    if !g.is_positive_definite() {
        return Err(Error::UnsupportedInput("short-vector search needs a positive definite form".into()));
    }
    // Q(x) = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2
    let mut m: Vec<Vec<BigRational>> = g
        .rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    // only the upper triangle is kept up to date
    for i in 0..n {
        for j in i + 1..n {
            let f = &m[i][j] / &m[i][i];
            for k in j..n {
                let t = &f * &m[i][k];
                m[j][k] -= t;
            }
        }
    }
    let d: Vec<BigRational> = (0..n).map(|i| m[i][i].clone()).collect();
    let mu: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| if j > i { &m[i][j] / &d[i] } else { BigRational::zero() }).collect()).collect();

    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    let mut budget = Budget::new(limits, "short-vector search");
    let bound = BigRational::from_integer(bound.clone());
    fp_recurse(n, &d, &mu, &bound, &mut x, &mut out, &mut budget)?;
    out.retain(|v| v.iter().any(|c| !c.is_zero()));
    out.sort();
    Ok(out)
}

fn fp_recurse(
    level: usize,
    d: &[BigRational],
    mu: &[Vec<BigRational>],
    remaining: &BigRational,
    x: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
    budget: &mut Budget,
) -> Result<()> {
    if level == 0 {
        out.push(x.clone());
        return Ok(());
    }
    let i = level - 1;
    let n = x.len();
    let mut center = BigRational::zero();
    for j in i + 1..n {
        center += &mu[i][j] * BigRational::from_integer(x[j].clone());
    }
    // admissible x_i: d_i (x_i + center)^2 <= remaining
    let cost = |xi: &BigInt| {
        let s = BigRational::from_integer(xi.clone()) + &center;
        &d[i] * &s * &s
    };
    let start = (-center.clone()).floor().to_integer();
    let mut candidates = Vec::new();
    let mut v = start.clone();
    while cost(&v) <= *remaining {
        candidates.push(v.clone());
        v -= 1;
    }
    let mut v = start + 1;
    while cost(&v) <= *remaining {
        candidates.push(v.clone());
        v += 1;
    }
    candidates.sort();
    for xi in candidates {
        budget.tick()?;
        let rest = remaining - cost(&xi);
        x[i] = xi;
        fp_recurse(level - 1, d, mu, &rest, x, out, budget)?;
    }
    x[i] = BigInt::zero();
    Ok(())
}

/// GL2(Z)-reduced Gram entries `(a, b, c)` of a definite binary form, with
/// `0 <= 2b <= a <= c` after flipping to the positive definite side.
pub fn gauss_reduce(g: &SymmetricIntMatrix) -> Result<(BigInt, BigInt, BigInt)> {
    if g.dim() != 2 {
        return invalid("Gauss reduction needs a rank-2 form");
    }
    let g = if g.get(0, 0).is_negative() { g.negated() } else { g.clone() };
    if !g.is_positive_definite() {
        return Err(Error::UnsupportedInput("form is not definite".into()));
    }
    let (mut a, mut b, mut c) = (g.get(0, 0).clone(), g.get(0, 1).clone(), g.get(1, 1).clone());
    loop {
        // e2 -> e2 - k e1 brings |b| <= a/2
        let k = round_div(&b, &a);
        if !k.is_zero() {
            c = &c - BigInt::from(2) * &k * &b + &k * &k * &a;
            b = &b - &k * &a;
        }
        if c < a {
            std::mem::swap(&mut a, &mut c);
            continue;
        }
        break;
    }
    Ok((a, b.abs(), c))
}

fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (two.clone() * n + d).div_floor(&(two * d))
}

/// Verdict of comparing two integral forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormComparison {
    Isomorphic,
    Distinguished,
    Inconclusive,
}

/// Certified for rank at most 2; a screen by determinant, definiteness and
/// short-vector counts above that.
pub fn compare_forms(a: &SymmetricIntMatrix, b: &SymmetricIntMatrix, limits: &Limits) -> Result<FormComparison> {
    if a.dim() != b.dim() || a.determinant() != b.determinant() {
        return Ok(FormComparison::Distinguished);
    }
    if a.is_negative_definite() != b.is_negative_definite() || a.is_positive_definite() != b.is_positive_definite() {
        return Ok(FormComparison::Distinguished);
    }
    match a.dim() {
        0 => Ok(FormComparison::Isomorphic),
        1 => Ok(if a == b { FormComparison::Isomorphic } else { FormComparison::Distinguished }),
        2 => Ok(if gauss_reduce(a)? == gauss_reduce(b)? {
            FormComparison::Isomorphic
        } else {
            FormComparison::Distinguished
        }),
        _ => {
            let flip = |m: &SymmetricIntMatrix| if m.is_negative_definite() { m.negated() } else { m.clone() };
            let (pa, pb) = (flip(a), flip(b));
            if !pa.is_positive_definite() {
                return Ok(FormComparison::Inconclusive);
            }
            let counts = |m: &SymmetricIntMatrix| -> Result<Vec<usize>> {
                let vs = short_vectors(m, &BigInt::from(4), limits)?;
                Ok((1..=4).map(|k| vs.iter().filter(|v| m.quadratic_form(v) == BigInt::from(k)).count()).collect())
            };
            Ok(if counts(&pa)? != counts(&pb)? {
                FormComparison::Distinguished
            } else {
                FormComparison::Inconclusive
            })
        }
    }
}

/// Every embedding of the plumbing lattice into `<-1>^r`, one representative
/// per signed-permutation class, canonically sorted.
pub fn embedding_oracle(p: &LinearPlumbing, r: usize, limits: &Limits) -> Result<Vec<DiagonalEmbedding>> {
    let k = p.weights.len();
    let total: u64 = p.weights.iter().map(|w| w.unsigned_abs()).sum();
    if k > limits.embedding_vertices || total > limits.embedding_weight_sum {
        return Err(Error::ResourceLimit(format!(
            "embedding oracle is limited to {} vertices and total weight {}",
            limits.embedding_vertices, limits.embedding_weight_sum
        )));
    }
    // target: sum over columns c c^T = -form
    let target: Vec<Vec<i64>> = p
        .form()
        .rows
        .iter()
        .map(|row| row.iter().map(|x| -x.to_i64().unwrap()).collect())
        .collect();
    let bounds: Vec<i64> = (0..k).map(|a| target[a][a]).collect();
    let columns = candidate_columns(&bounds);
    let mut state = OracleState {
        columns: &columns,
        residual: target,
        chosen: Vec::new(),
        max_cols: r,
        found: BTreeSet::new(),
        budget: Budget::new(limits, "embedding oracle"),
    };
    state.search(0)?;
    Ok(state
        .found
        .into_iter()
        .map(|cols| {
            let mut full = cols.clone();
            full.resize(r, vec![0; k]);
            columns_to_embedding(&full, r, k)
        })
        .collect())
}

/// Nonzero columns with first nonzero entry positive and `c_a^2 <= bound_a`,
/// sorted descending.
fn candidate_columns(bounds: &[i64]) -> Vec<Vec<i64>> {
    let mut cols: Vec<Vec<i64>> = vec![vec![]];
    for &b in bounds {
        let m = (0..).take_while(|x: &i64| x * x <= b).last().unwrap_or(0);
        cols = cols
            .into_iter()
            .flat_map(|c| {
                (-m..=m).map(move |x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    cols.retain(|c| c.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0));
    cols.sort_by(|a, b| b.cmp(a));
    cols
}

struct OracleState<'a> {
    columns: &'a [Vec<i64>],
    residual: Vec<Vec<i64>>,
    chosen: Vec<Vec<i64>>,
    max_cols: usize,
    found: BTreeSet<Vec<Vec<i64>>>,
    budget: Budget,
}

impl OracleState<'_> {
    fn search(&mut self, from: usize) -> Result<()> {
        self.budget.tick()?;
        let k = self.residual.len();
        if self.residual.iter().all(|row| row.iter().all(|&x| x == 0)) {
            self.found.insert(self.chosen.clone());
            return Ok(());
        }
        if self.chosen.len() == self.max_cols {
            return Ok(());
        }
        for idx in from..self.columns.len() {
            let c = &self.columns[idx];
            if (0..k).any(|a| c[a] * c[a] > self.residual[a][a]) {
                continue;
            }
            self.apply(c, -1);
            if self.feasible() {
                self.chosen.push(c.clone());
                let res = self.search(idx);
                self.chosen.pop();
                res?;
            }
            self.apply(c, 1);
        }
        Ok(())
    }

    fn apply(&mut self, c: &[i64], sign: i64) {
        for a in 0..c.len() {
            for b in 0..c.len() {
                self.residual[a][b] += sign * c[a] * c[b];
            }
        }
    }

    /// Residual must stay a sum of outer products: nonnegative diagonal and
    /// Cauchy-Schwarz on every pair.
    fn feasible(&self) -> bool {
        let k = self.residual.len();
        (0..k).all(|a| {
            self.residual[a][a] >= 0
                && (0..a).all(|b| self.residual[a][b].pow(2) <= self.residual[a][a] * self.residual[b][b])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(v: &[i64]) -> NegCF {
        NegCF::from_i64(v).unwrap()
    }

    fn m(rows: &[Vec<i64>]) -> SymmetricIntMatrix {
        SymmetricIntMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn linking_matrices() {
        assert_eq!(linking_matrix(&cf(&[3, 4])), m(&[vec![-3, 1], vec![1, -4]]));
        assert_eq!(
            linking_matrix(&cf(&[3, 2, 4])),
            m(&[vec![-3, 1, 0], vec![1, -2, 1], vec![0, 1, -4]])
        );
        assert_eq!(linking_matrix(&cf(&[2])), m(&[vec![-2]]));
    }

    #[test]
    fn determinants() {
        assert_eq!(chain_determinant(&cf(&[3, 4])), BigInt::from(11));
        assert_eq!(chain_determinant(&cf(&[2])), BigInt::from(-2));
        assert_eq!(chain_determinant(&cf(&[5, 7])), BigInt::from(34));
        assert_eq!(linking_matrix(&cf(&[3, 2, 4])).determinant(), BigInt::from(-17));
    }

    #[test]
    fn inverse_of_chain() {
        let q = m(&[vec![-3, 1], vec![1, -4]]);
        let inv = exact_inverse(&q).unwrap();
        let want = [["-4/11", "-1/11"], ["-1/11", "-3/11"]];
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(inv.rows()[i][j].to_string(), want[i][j]);
            }
        }
        assert!(inv.left_mul(&q).is_identity());
        assert_eq!(exact_inverse(&m(&[vec![-2]])).unwrap().rows()[0][0].to_string(), "-1/2");
        assert_eq!(exact_inverse(&m(&[vec![1, 1], vec![1, 1]])), Err(Error::SingularMatrix));
    }

    #[test]
    fn greedy_embeddings() {
        let p = LinearPlumbing::new(vec![-2, -3, -2, -2]).unwrap();
        let e = max_irreducible_embedding(&p).unwrap();
        assert_eq!(e.t, 6);
        assert!(e.is_irreducible());
        let e = max_irreducible_embedding(&LinearPlumbing::new(vec![-2]).unwrap()).unwrap();
        assert_eq!(e.images, vec![vec![1, 1]]);
        let e = max_irreducible_embedding(&LinearPlumbing::new(vec![-3, -4]).unwrap()).unwrap();
        assert_eq!(e.t, 6);
        let bad = LinearPlumbing::new(vec![-2, -1, -2]).unwrap();
        assert!(matches!(max_irreducible_embedding(&bad), Err(Error::UnsupportedGraph(_))));
    }

    #[test]
    fn complements() {
        let p = LinearPlumbing::new(vec![-2, -3, -2, -2]).unwrap();
        let c = orthogonal_complement(&max_irreducible_embedding(&p).unwrap());
        assert_eq!(c.dim(), 2);
        assert_eq!(c.determinant(), BigInt::from(11));
        assert_eq!(gauss_reduce(&c).unwrap(), gauss_reduce(&m(&[vec![-3, 1], vec![1, -4]])).unwrap());
        let limits = Limits::default();
        assert!(short_vectors(&c.negated(), &BigInt::one(), &limits).unwrap().is_empty());

        let c = orthogonal_complement(&max_irreducible_embedding(&LinearPlumbing::new(vec![-2]).unwrap()).unwrap());
        assert_eq!(c, m(&[vec![-2]]));
    }

    #[test]
    fn gauss_reduction() {
        assert_eq!(
            gauss_reduce(&m(&[vec![-3, 1], vec![1, -4]])).unwrap(),
            (BigInt::from(3), BigInt::from(1), BigInt::from(4))
        );
        // same class in a skewed basis
        assert_eq!(
            gauss_reduce(&m(&[vec![3, 2], vec![2, 5]])).unwrap(),
            (BigInt::from(3), BigInt::from(1), BigInt::from(4))
        );
    }

    #[test]
    fn short_vector_counts() {
        let a2 = m(&[vec![2, -1], vec![-1, 2]]);
        let vs = short_vectors(&a2, &BigInt::from(2), &Limits::default()).unwrap();
        assert_eq!(vs.len(), 6);
    }

    #[test]
    fn short_vectors_match_brute_force_in_rank_three() {
        let g = m(&[vec![5, 4, 4], vec![4, 5, 4], vec![4, 4, 5]]);
        for bound in 1..=8 {
            let fast = short_vectors(&g, &BigInt::from(bound), &Limits::default()).unwrap();
            let mut slow = Vec::new();
            for a in -6i64..=6 {
                for b in -6i64..=6 {
                    for c in -6i64..=6 {
                        let x = vec![BigInt::from(a), BigInt::from(b), BigInt::from(c)];
                        let norm = g.quadratic_form(&x);
                        if (a, b, c) != (0, 0, 0) && norm <= BigInt::from(bound) {
                            slow.push(x);
                        }
                    }
                }
            }
            slow.sort();
            assert_eq!(fast, slow, "bound {bound}");
        }
    }

    #[test]
    fn kernel_basis() {
        let rows = vec![vec![BigInt::from(2), BigInt::from(4), BigInt::from(6)]];
        let k = integer_kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: BigInt = v.iter().zip(&rows[0]).map(|(a, b)| a * b).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn oracle_small_cases() {
        let limits = Limits::default();
        let p = LinearPlumbing::new(vec![-3, -4]).unwrap();
        let irr = |r| {
            embedding_oracle(&p, r, &limits).unwrap().into_iter().filter(|e| e.is_irreducible()).count()
        };
        assert_eq!(irr(6), 1);
        assert_eq!(irr(7), 0);
        let two = LinearPlumbing::new(vec![-2]).unwrap();
        assert_eq!(embedding_oracle(&two, 2, &limits).unwrap().len(), 1);
    }

    #[test]
    fn chi_bounds() {
        let l = |p: i64, q: i64| crate::numbers::normalize_lens(p, q).unwrap();
        assert_eq!(chi_upper_bound(&l(11, 4)), 3);
        assert_eq!(chi_upper_bound(&l(9, 8)), 9);
        assert_eq!(chi_upper_bound(&l(52, 11)), 4);
    }
}
