//! Exhaustive counts over prime fields, used as ground truth for the
//! symbolic formulas.
//!
//! Subspaces are stored in reduced row-echelon form, so equal subspaces
//! have equal representations. Enumeration runs over pivot sets and the
//! free entries to the right of each pivot.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{Partition, WeakComposition};
use crate::profiles::{Block, ProfileTuple, SimilarityType};
use crate::ratfunc::{q_binomial, BigQ};

/// Largest number of subspaces an enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// A square matrix over `F_p`, `p` prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FpMatrix {
    p: u64,
    n: usize,
    entries: Vec<Vec<u64>>,
}

impl<'de> Deserialize<'de> for FpMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            p: u64,
            n: usize,
            entries: Vec<Vec<u64>>,
        }
        let r = Raw::deserialize(de)?;
        let m = FpMatrix::new(r.p, r.entries).map_err(serde::de::Error::custom)?;
        if m.n != r.n {
            return Err(serde::de::Error::custom(format!("n = {} but the matrix is {}x{}", r.n, m.n, m.n)));
        }
        Ok(m)
    }
}

impl FpMatrix {
    /// Validates primality, squareness and that entries are reduced.
    pub fn new(p: u64, entries: Vec<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::InvalidArgument("matrix must be square".into()));
            }
            if let Some(x) = row.iter().find(|&&x| x >= p) {
                return Err(Error::InvalidArgument(format!("entry {x} is not reduced mod {p}")));
            }
        }
        Ok(FpMatrix { p, n, entries })
    }

    pub fn zero(p: u64, n: usize) -> Result<Self> {
        FpMatrix::new(p, vec![vec![0; n]; n])
    }

    pub fn identity(p: u64, n: usize) -> Result<Self> {
        FpMatrix::new(p, (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect())
    }

    /// `c · I`.
    pub fn scalar(p: u64, n: usize, c: u64) -> Result<Self> {
        FpMatrix::new(p, (0..n).map(|i| (0..n).map(|j| if i == j { c % p } else { 0 }).collect()).collect())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// `Δ v` for a column vector `v`.
    pub fn apply_vec(&self, v: &[u64]) -> Vec<u64> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).fold(0, |a, (x, y)| (a + x * y) % self.p))
            .collect()
    }

    pub fn mul(&self, o: &FpMatrix) -> FpMatrix {
        let n = self.n;
        let entries = (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(0, |a, k| (a + self.entries[i][k] * o.entries[k][j]) % self.p)).collect())
            .collect();
        FpMatrix { p: self.p, n, entries }
    }

    fn add_scaled_identity(&self, c: u64) -> FpMatrix {
        let mut m = self.clone();
        for i in 0..self.n {
            m.entries[i][i] = (m.entries[i][i] + c) % self.p;
        }
        m
    }

    /// `g(Δ)` for `g` given by ascending coefficients.
    pub fn eval_poly(&self, g: &[u64]) -> FpMatrix {
        let zero = FpMatrix { p: self.p, n: self.n, entries: vec![vec![0; self.n]; self.n] };
        g.iter().rev().fold(zero, |acc, &c| acc.mul(self).add_scaled_identity(c))
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<FpMatrix> {
        let n = self.n;
        let rows = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().copied().chain((0..n).map(|j| u64::from(i == j))).collect())
            .collect();
        let red = rref(self.p, 2 * n, rows);
        if red.dim() != n || (0..n).any(|i| red.basis[i][i] != 1) {
            return None;
        }
        let entries = red.basis.iter().map(|r| r[n..].to_vec()).collect();
        Some(FpMatrix { p: self.p, n, entries })
    }

    /// `g Δ g^{-1}`.
    pub fn conjugate_by(&self, g: &FpMatrix) -> Result<FpMatrix> {
        check_compatible(self.p, self.n, g.p, g.n)?;
        let gi = g
            .inverse()
            .ok_or_else(|| Error::InvalidArgument("conjugating matrix is singular".into()))?;
        Ok(g.mul(self).mul(&gi))
    }

    /// A fixed invertible matrix with every entry typically nonzero: the
    /// product of a unit lower and a unit upper triangular matrix.
    pub fn scrambler(p: u64, n: usize) -> Result<FpMatrix> {
        let fill = |i: usize, j: usize| ((3 * i + 5 * j + 1) as u64) % p;
        let lower = (0..n).map(|i| (0..n).map(|j| if i == j { 1 } else if j < i { fill(i, j) } else { 0 }).collect()).collect();
        let upper = (0..n).map(|i| (0..n).map(|j| if i == j { 1 } else if j > i { fill(j, i) } else { 0 }).collect()).collect();
        Ok(FpMatrix::new(p, lower)?.mul(&FpMatrix::new(p, upper)?))
    }

    pub fn rank(&self) -> usize {
        rref(self.p, self.n, self.entries.clone()).dim()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("matrices serialize")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^{p-2}
    let (mut base, mut e, mut r) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

/// A subspace of `F_p^n`, as the rows of its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    p: u64,
    n: usize,
    basis: Vec<Vec<u64>>,
}

impl Subspace {
    pub fn zero(p: u64, n: usize) -> Self {
        Subspace { p, n, basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        sum_spaces(self, other).map(|s| s.dim() == self.dim()).unwrap_or(false)
    }
}

/// Row reduces `rows` to the canonical basis of their span.
pub fn rref(p: u64, n: usize, mut rows: Vec<Vec<u64>>) -> Subspace {
    for r in &mut rows {
        r.resize(n, 0);
        for x in r.iter_mut() {
            *x %= p;
        }
    }
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for j in 0..n {
                    rows[r][j] = (rows[r][j] + (p - f) * rows[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    Subspace { p, n, basis: rows }
}

fn check_compatible(p: u64, n: usize, q: u64, m: usize) -> Result<()> {
    if p != q || n != m {
        return Err(Error::SizeMismatch(format!("F_{p}^{n} against F_{q}^{m}")));
    }
    Ok(())
}

pub fn sum_spaces(u: &Subspace, v: &Subspace) -> Result<Subspace> {
    check_compatible(u.p, u.n, v.p, v.n)?;
    let rows = u.basis.iter().chain(v.basis.iter()).cloned().collect();
    Ok(rref(u.p, u.n, rows))
}

/// `ΔW`.
pub fn apply(delta: &FpMatrix, w: &Subspace) -> Result<Subspace> {
    check_compatible(delta.p, delta.n, w.p, w.n)?;
    Ok(rref(w.p, w.n, w.basis.iter().map(|v| delta.apply_vec(v)).collect()))
}

fn gaussian_at(n: usize, m: usize, p: u64) -> u128 {
    let v = q_binomial(n, m).eval(&BigQ::from_integer(BigInt::from(p)));
    u128::try_from(v.to_integer()).unwrap_or(u128::MAX)
}

/// Number of subspaces an enumeration would visit.
pub fn subspace_count(p: u64, n: usize, dim: Option<usize>) -> u128 {
    match dim {
        Some(m) => gaussian_at(n, m, p),
        None => (0..=n).map(|m| gaussian_at(n, m, p)).fold(0u128, u128::saturating_add),
    }
}

pub fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::Budget { needed, budget })
    } else {
        Ok(())
    }
}

/// Every subspace of `F_p^n` (of dimension `dim`, if given) exactly once.
pub struct SubspaceIter {
    p: u64,
    n: usize,
    pivot_sets: Vec<Vec<usize>>,
    set_idx: usize,
    /// Free positions `(row, col)` of the current pivot set and their values.
    free: Vec<(usize, usize)>,
    values: Vec<u64>,
    fresh: bool,
}

impl SubspaceIter {
    fn load(&mut self) {
        let piv = &self.pivot_sets[self.set_idx];
        self.free = piv
            .iter()
            .enumerate()
            .flat_map(|(r, &c)| ((c + 1)..self.n).filter(|j| !piv.contains(j)).map(move |j| (r, j)))
            .collect();
        self.values = vec![0; self.free.len()];
        self.fresh = true;
    }

    fn current(&self) -> Subspace {
        let piv = &self.pivot_sets[self.set_idx];
        let mut rows = vec![vec![0u64; self.n]; piv.len()];
        for (r, &c) in piv.iter().enumerate() {
            rows[r][c] = 1;
        }
        for (&(r, j), &v) in self.free.iter().zip(&self.values) {
            rows[r][j] = v;
        }
        Subspace { p: self.p, n: self.n, basis: rows }
    }

    fn advance(&mut self) -> bool {
        for v in self.values.iter_mut() {
            *v += 1;
            if *v < self.p {
                return true;
            }
            *v = 0;
        }
        false
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            if self.set_idx >= self.pivot_sets.len() {
                return None;
            }
            if self.fresh {
                self.fresh = false;
                return Some(self.current());
            }
            if self.advance() {
                return Some(self.current());
            }
            self.set_idx += 1;
            if self.set_idx < self.pivot_sets.len() {
                self.load();
            }
        }
    }
}

/// Enumerates subspaces after checking the count against `budget`.
pub fn all_subspaces(p: u64, n: usize, dim: Option<usize>, budget: u128) -> Result<SubspaceIter> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if dim.is_some_and(|m| m > n) {
        return Err(Error::InvalidArgument(format!("no subspaces of dimension {} in F_p^{n}", dim.unwrap_or(0))));
    }
    check_budget(subspace_count(p, n, dim), budget)?;
    let mut pivot_sets = Vec::new();
    for mask in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if dim.is_none_or(|m| m == set.len()) {
            pivot_sets.push(set);
        }
    }
    pivot_sets.sort_by_key(|s| (s.len(), s.clone()));
    let mut it = SubspaceIter { p, n, pivot_sets, set_idx: 0, free: Vec::new(), values: Vec::new(), fresh: false };
    if !it.pivot_sets.is_empty() {
        it.load();
    }
    Ok(it)
}

fn increments(w: &Subspace, delta: &FpMatrix, steps: Option<usize>) -> Result<Vec<usize>> {
    check_compatible(delta.p, delta.n, w.p, w.n)?;
    let mut out = Vec::new();
    let mut prev = 0;
    let mut v = w.clone();
    loop {
        if steps.is_some_and(|s| out.len() == s) {
            break;
        }
        let d = v.dim();
        if steps.is_none() && d == prev {
            break;
        }
        out.push(d - prev);
        prev = d;
        v = sum_spaces(&v, &apply(delta, &v)?)?;
    }
    Ok(out)
}

/// The `Δ`-profile of `W`: increments of `W ⊆ W + ΔW ⊆ …` until it stabilizes.
pub fn profile_of(w: &Subspace, delta: &FpMatrix) -> Result<Partition> {
    Partition::new(increments(w, delta, None)?)
}

/// The first `r` increments, zeros included.
pub fn partial_profile_of(w: &Subspace, delta: &FpMatrix, r: usize) -> Result<ProfileTuple> {
    Ok(ProfileTuple(increments(w, delta, Some(r))?))
}

/// For every profile, the number of subspaces that have it.
pub fn profile_counts(delta: &FpMatrix) -> Result<BTreeMap<Partition, u128>> {
    let mut out = BTreeMap::new();
    for w in all_subspaces(delta.p, delta.n, None, DEFAULT_BUDGET)? {
        *out.entry(profile_of(&w, delta)?).or_insert(0) += 1;
    }
    Ok(out)
}

pub fn sigma_bruteforce(mu: &Partition, delta: &FpMatrix) -> Result<u128> {
    if mu.size() > delta.n {
        return Ok(0);
    }
    let mut c = 0;
    for w in all_subspaces(delta.p, delta.n, Some(mu.first()), DEFAULT_BUDGET)? {
        if &profile_of(&w, delta)? == mu {
            c += 1;
        }
    }
    Ok(c)
}

/// All `Δ`-invariant subspaces.
pub fn invariant_subspaces(delta: &FpMatrix) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for w in all_subspaces(delta.p, delta.n, None, DEFAULT_BUDGET)? {
        if w.contains(&apply(delta, &w)?) {
            out.push(w);
        }
    }
    Ok(out)
}

/// Number of flags `0 = W_0 ⊆ W_1 ⊆ … ⊆ W_k = F_p^n` of invariant subspaces
/// with `dim W_i / W_{i-1} = α_i`.
pub fn flag_count_bruteforce(alpha: &WeakComposition, delta: &FpMatrix) -> Result<u128> {
    if alpha.size() != delta.n {
        return Err(Error::SizeMismatch(format!("|{alpha:?}| != {}", delta.n)));
    }
    let inv = invariant_subspaces(delta)?;
    let mut level: HashMap<Subspace, u128> = HashMap::new();
    level.insert(Subspace::zero(delta.p, delta.n), 1);
    let mut dim = 0;
    for &a in alpha.parts() {
        dim += a;
        let mut next: HashMap<Subspace, u128> = HashMap::new();
        for w in inv.iter().filter(|w| w.dim() == dim) {
            let c: u128 = level.iter().filter(|(u, _)| w.contains(u)).map(|(_, c)| c).sum();
            if c > 0 {
                next.insert(w.clone(), c);
            }
        }
        level = next;
    }
    Ok(level.values().sum())
}

/// Subspaces whose first `r` increments are `ρ`.
pub fn partial_profile_bruteforce(rho: &ProfileTuple, delta: &FpMatrix) -> Result<u128> {
    let Some(&first) = rho.entries().first() else {
        return Err(Error::InvalidArgument("partial profile must be nonempty".into()));
    };
    if first > delta.n {
        return Ok(0);
    }
    let mut c = 0;
    for w in all_subspaces(delta.p, delta.n, Some(first), DEFAULT_BUDGET)? {
        if &partial_profile_of(&w, delta, rho.entries().len())? == rho {
            c += 1;
        }
    }
    Ok(c)
}

/// `m`-dimensional `W` with `dim(W + ΔW + … + Δ^fold W) = (fold+1) m`.
pub fn anti_invariant_bruteforce(m: usize, fold: usize, delta: &FpMatrix) -> Result<u128> {
    if m > delta.n {
        return Ok(0);
    }
    let mut c = 0;
    for w in all_subspaces(delta.p, delta.n, Some(m), DEFAULT_BUDGET)? {
        let inc = increments(&w, delta, Some(fold + 1))?;
        if inc.iter().sum::<usize>() == (fold + 1) * m {
            c += 1;
        }
    }
    Ok(c)
}

fn big(p: u64) -> BigInt {
    BigInt::from(p)
}

/// Probability that `k` random vectors generate `F_p^n` by Krylov words of
/// length below `l`. Each subspace `W` whose profile is a partition of `n`
/// with at most `l` parts contributes the number of `k`-tuples spanning it.
pub fn krylov_bruteforce(k: usize, l: usize, delta: &FpMatrix) -> Result<BigQ> {
    let (p, n) = (delta.p, delta.n);
    let mut hits = BigInt::zero();
    for w in all_subspaces(p, n, None, DEFAULT_BUDGET)? {
        let m = w.dim();
        if m > k {
            continue;
        }
        let mu = profile_of(&w, delta)?;
        if mu.size() != n || mu.len() > l {
            continue;
        }
        let pk = big(p).pow(k as u32);
        let tuples = (0..m).fold(BigInt::one(), |a, i| a * (&pk - big(p).pow(i as u32)));
        hits += tuples;
    }
    Ok(BigQ::new(hits, big(p).pow((n * k) as u32)))
}

/// Same probability by running over every `k`-tuple of vectors.
pub fn krylov_bruteforce_tuples(k: usize, l: usize, delta: &FpMatrix) -> Result<BigQ> {
    let (p, n) = (delta.p, delta.n);
    let total = (p as u128).checked_pow((n * k) as u32).unwrap_or(u128::MAX);
    check_budget(total, DEFAULT_BUDGET)?;
    let mut hits = 0u128;
    let mut digits = vec![0u64; n * k];
    for _ in 0..total {
        let mut rows = Vec::new();
        for v in digits.chunks(n) {
            let mut cur = v.to_vec();
            for _ in 0..l {
                rows.push(cur.clone());
                cur = delta.apply_vec(&cur);
            }
        }
        if rref(p, n, rows).dim() == n {
            hits += 1;
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    Ok(BigQ::new(BigInt::from(hits), BigInt::from(total)))
}

// Polynomials over F_p as ascending coefficient vectors.

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn poly_rem_is_zero(a: &[u64], m: &[u64], p: u64) -> bool {
    // m is monic
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = *r.last().expect("nonempty");
        let shift = r.len() - 1 - dm;
        for (i, &x) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - c) * x % p) % p;
        }
        r.pop();
    }
    r.iter().all(|&x| x == 0)
}

/// Monic polynomials of degree `d` over `F_p`, in odometer order starting from `x^d`.
fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(idx % p);
            idx /= p;
        }
        c.push(1);
        c
    })
}

/// Monic irreducibles of degree `d` over `F_p`; for `d = 1` the first is `x`.
pub fn irreducibles(p: u64, d: usize) -> Vec<Vec<u64>> {
    monic_polys(p, d)
        .filter(|f| (1..=d / 2).all(|e| monic_polys(p, e).all(|g| !poly_rem_is_zero(f, &g, p))))
        .collect()
}

/// Companion matrix of a monic polynomial.
fn companion(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    let mut m = vec![vec![0; n]; n];
    for i in 1..n {
        m[i][i - 1] = 1;
    }
    for i in 0..n {
        m[i][n - 1] = (p - f[i]) % p;
    }
    m
}

/// A matrix of type `τ`: block-diagonal companions of `g_i^{λ_{ij}}`, with
/// distinct irreducibles `g_i` taken in enumeration order per degree.
pub fn build_matrix_of_type(tau: &SimilarityType, p: u64) -> Result<FpMatrix> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    tau.check_realizable(p)?;
    let n = tau.size();
    let mut entries = vec![vec![0; n]; n];
    let mut used: BTreeMap<usize, usize> = BTreeMap::new();
    let mut cache: BTreeMap<usize, Vec<Vec<u64>>> = BTreeMap::new();
    let mut off = 0;
    for Block { d, lambda } in tau.blocks() {
        let idx = used.entry(*d).or_insert(0);
        let g = cache.entry(*d).or_insert_with(|| irreducibles(p, *d))[*idx].clone();
        *idx += 1;
        for &part in lambda.parts() {
            let f = (0..part).fold(vec![1], |acc, _| poly_mul(&acc, &g, p));
            let c = companion(&f, p);
            for (i, row) in c.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    entries[off + i][off + j] = x;
                }
            }
            off += c.len();
        }
    }
    FpMatrix::new(p, entries)
}

/// The similarity class type of `Δ`, from `dim ker g(Δ)^j` for each irreducible `g`.
pub fn similarity_type(delta: &FpMatrix) -> Result<SimilarityType> {
    let (p, n) = (delta.p, delta.n);
    let mut blocks = Vec::new();
    let mut covered = 0;
    for d in 1..=n {
        if covered == n {
            break;
        }
        for g in irreducibles(p, d) {
            let gd = delta.eval_poly(&g);
            let mut power = FpMatrix::identity(p, n)?;
            let mut kers = vec![0usize];
            loop {
                power = power.mul(&gd);
                let k = n - power.rank();
                if k == *kers.last().expect("nonempty") {
                    break;
                }
                kers.push(k);
            }
            if kers.len() == 1 {
                continue;
            }
            // λ'_j = (dim ker g(Δ)^j - dim ker g(Δ)^{j-1}) / d
            let conj: Vec<usize> = kers.windows(2).map(|w| (w[1] - w[0]) / d).collect();
            let lambda = Partition::new(conj)?.conjugate();
            covered += d * lambda.size();
            blocks.push(Block::new(d, lambda)?);
        }
    }
    SimilarityType::new(blocks)
}
