//! Integer partitions, weak compositions and the shape predicates used to
//! index every basis, profile and similarity class type.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// The derived ordering is lexicographic on the parts, so among partitions of
/// a fixed `n` the partition `(1^n)` is smallest and `(n)` largest.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition, stripping trailing zeros. Fails if the parts are
    /// not weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "{parts:?} has an interior zero"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The single-row partition `(n)`; empty when `n == 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    /// The single-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    /// `(a^m)` followed by `(1^k)`; used for the anti-invariant pairing.
    pub fn rectangle_plus_column(a: usize, m: usize, k: usize) -> Self {
        let mut parts = vec![a; if a == 0 { 0 } else { m }];
        parts.extend(std::iter::repeat_n(1, k));
        Partition::new(parts).expect("rectangle with a >= 1 followed by ones")
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part `i` (0-based); zero beyond the length.
    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part, zero for the empty partition.
    pub fn first(&self) -> usize {
        self.get(0)
    }

    /// The partition with its first part removed.
    pub fn tail(&self) -> Partition {
        Partition(self.0.iter().skip(1).copied().collect())
    }

    /// The partition with its last part removed.
    pub fn without_last(&self) -> Partition {
        let mut v = self.0.clone();
        v.pop();
        Partition(v)
    }

    pub fn contains(&self, inner: &Partition) -> bool {
        inner.len() <= self.len() && (0..inner.len()).all(|i| inner.0[i] <= self.0[i])
    }

    pub fn conjugate(&self) -> Partition {
        conjugate(self)
    }

    /// Multiplies every part by `d`.
    pub fn scale(&self, d: usize) -> Partition {
        Partition(self.0.iter().map(|&x| x * d).collect())
    }

    /// Multiset union of the parts, re-sorted.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v: Vec<usize> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    /// `Σ_j binom(λ_j, 2)` over parts with index `>= from` (0-based).
    pub fn binom2_sum_from(&self, from: usize) -> usize {
        self.0.iter().skip(from).map(|&x| x * x.saturating_sub(1) / 2).sum()
    }

    /// Multiplicity of each part value: `m[i]` is the number of parts equal
    /// to `i + 1`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.first()];
        for &x in &self.0 {
            m[x - 1] += 1;
        }
        m
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

/// A finite sequence of nonnegative integers; trailing zeros are not stored,
/// so compositions differing only by trailing zeros are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct WeakComposition(Vec<usize>);

impl WeakComposition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        WeakComposition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

impl From<&Partition> for WeakComposition {
    fn from(p: &Partition) -> Self {
        WeakComposition(p.0.clone())
    }
}

/// A skew shape `outer / inner`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPair {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewPair {
    pub fn new(outer: Partition, inner: Partition) -> Self {
        SkewPair { outer, inner }
    }
}

pub fn conjugate(lambda: &Partition) -> Partition {
    let first = lambda.first();
    Partition(
        (1..=first)
            .map(|j| lambda.0.iter().take_while(|&&x| x >= j).count())
            .collect(),
    )
}

/// Dominance order `μ ≥ ν` on partitions of the same size.
pub fn dominates(mu: &Partition, nu: &Partition) -> Result<bool> {
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(format!(
            "dominance between {mu} and {nu}"
        )));
    }
    let (mut a, mut b) = (0, 0);
    for i in 0..mu.len().max(nu.len()) {
        a += mu.get(i);
        b += nu.get(i);
        if a < b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `inner ⊆ outer` and the skew diagram has at most one box per column.
pub fn is_horizontal_strip(s: &SkewPair) -> bool {
    s.outer.contains(&s.inner) && (0..s.outer.len()).all(|i| s.outer.get(i + 1) <= s.inner.get(i))
}

/// `n(λ) = Σ (i-1) λ_i`.
pub fn n_stat(lambda: &Partition) -> usize {
    lambda.0.iter().enumerate().map(|(i, &x)| i * x).sum()
}

/// `(-1)^{|λ| - ℓ(λ)}`.
pub fn epsilon(lambda: &Partition) -> i32 {
    if (lambda.size() - lambda.len()) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Σ_i μ_i ν_i`.
pub fn dot(mu: &Partition, nu: &Partition) -> usize {
    mu.0.iter().zip(nu.0.iter()).map(|(a, b)| a * b).sum()
}

/// All partitions of `n` in ascending lexicographic order: `(1^n)` first, `(n)` last.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    gen_desc(n, n, &mut cur, &mut out);
    out.reverse();
    out
}

// Generates partitions of `n` with parts at most `max`, in descending lex order.
fn gen_desc(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for k in (1..=max.min(n)).rev() {
        cur.push(k);
        gen_desc(n - k, k, cur, out);
        cur.pop();
    }
}

/// The order ideal of all partitions of size `< n` (`strict`) or `<= n`.
///
/// Ordered by size, and within one size from `(m)` down to `(1^m)`.
pub fn partitions_up_to(n: usize, strict: bool) -> Vec<Partition> {
    let top = if strict {
        match n.checked_sub(1) {
            Some(t) => t,
            None => return Vec::new(),
        }
    } else {
        n
    };
    (0..=top)
        .flat_map(|m| partitions_of(m).into_iter().rev())
        .collect()
}

/// Strips zeros and sorts the parts in decreasing order.
pub fn sort_to_partition(alpha: &WeakComposition) -> Partition {
    let mut v: Vec<usize> = alpha.0.iter().copied().filter(|&x| x > 0).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Partition(v)
}

/// All partitions `ρ` such that `μ/ρ` is a horizontal strip of size `k`.
pub fn horizontal_strip_removals(mu: &Partition, k: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(mu.len());
    fn rec(
        mu: &Partition,
        i: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if i == mu.len() {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("interlacing rows stay decreasing"));
            }
            return;
        }
        // mu_{i+1} <= rho_i <= mu_i
        let lo = mu.get(i + 1);
        let hi = mu.get(i);
        for r in lo..=hi {
            let removed = hi - r;
            if removed > left {
                continue;
            }
            cur.push(r);
            rec(mu, i + 1, left - removed, cur, out);
            cur.pop();
        }
    }
    rec(mu, 0, k, &mut cur, &mut out);
    out
}

/// All partitions `η` of size `|μ| + k` such that `η/μ` is a horizontal strip.
pub fn horizontal_strip_additions(mu: &Partition, k: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(mu.len() + 1);
    fn rec(
        mu: &Partition,
        i: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if i > mu.len() {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("interlacing rows stay decreasing"));
            }
            return;
        }
        // mu_i <= eta_i <= mu_{i-1}
        let lo = mu.get(i);
        let hi = if i == 0 { lo + left } else { mu.get(i - 1) };
        for e in lo..=hi.min(lo + left) {
            cur.push(e);
            rec(mu, i + 1, left - (e - lo), cur, out);
            cur.pop();
        }
    }
    rec(mu, 0, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
pub(crate) fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}
