//! Subspace-profile counts for similarity class types, symbolic in `t`.
//!
//! The production route for `σ(μ,τ)` is the Hall product
//! `ε_{μ'} t^{Σ_{j≥2} C(μ_j,2)} ⟨F_τ, W̃_μ h_{n-|μ|}⟩`. The remaining
//! routes (`ã`-matrix, `b_{μν}`, closed products) exist to cross-check it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hlwhittaker::{hl_p, hmod, pieri_psi, plethysm_pd, theta, whittaker_dual};
use crate::linalg::{self, Matrix};
use crate::memo::Memo;
use crate::partitions::{
    dot, horizontal_strip_removals, partitions_of, partitions_up_to, Partition, WeakComposition,
};
use crate::ratfunc::{q_binomial, q_factorial, BigQ, PolyT, RatFunc};
use crate::symfunc::{from_basis, hall_inner, multiply, omega, product, to_basis, Basis, SymFunc};
use crate::tableaux::{kostka_foulkes, kostka_number};

/// One primary component: an irreducible of degree `d` with partition `lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Block {
    pub d: usize,
    pub lambda: Partition,
}

impl<'de> Deserialize<'de> for Block {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            d: usize,
            lambda: Partition,
        }
        let r = Raw::deserialize(de)?;
        Block::new(r.d, r.lambda).map_err(serde::de::Error::custom)
    }
}

impl Block {
    pub fn new(d: usize, lambda: Partition) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("block degree must be positive".into()));
        }
        if lambda.is_empty() {
            return Err(Error::InvalidArgument("block shape must be nonempty".into()));
        }
        Ok(Block { d, lambda })
    }

    pub fn size(&self) -> usize {
        self.d * self.lambda.size()
    }
}

/// A similarity class type: the multiset of `(deg g_i, λ^i)`. Blocks are
/// kept sorted, so equal multisets compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimilarityType {
    blocks: Vec<Block>,
}

impl<'de> Deserialize<'de> for SimilarityType {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            blocks: Vec<Block>,
        }
        SimilarityType::new(Raw::deserialize(de)?.blocks).map_err(serde::de::Error::custom)
    }
}

impl SimilarityType {
    pub fn new(mut blocks: Vec<Block>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidArgument("a similarity type needs at least one block".into()));
        }
        blocks.sort();
        Ok(SimilarityType { blocks })
    }

    /// Shorthand from `(d, parts)` pairs.
    pub fn from_pairs(pairs: &[(usize, &[usize])]) -> Result<Self> {
        let blocks = pairs
            .iter()
            .map(|&(d, l)| Block::new(d, Partition::new(l.to_vec())?))
            .collect::<Result<_>>()?;
        SimilarityType::new(blocks)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(Block::size).sum()
    }

    /// The zero matrix `{(1,(1^n))}`.
    pub fn zero(n: usize) -> Result<Self> {
        SimilarityType::new(vec![Block::new(1, Partition::column(n))?])
    }

    /// The regular nilpotent type `{(1,(n))}`.
    pub fn regular_nilpotent(n: usize) -> Result<Self> {
        SimilarityType::new(vec![Block::new(1, Partition::row(n))?])
    }

    /// A simple operator, `{(n,(1))}`.
    pub fn simple(n: usize) -> Result<Self> {
        SimilarityType::new(vec![Block::new(n, Partition::row(1))?])
    }

    /// Diagonalizable with eigenspace dimensions `ν`: one block `(1,(1^{ν_i}))` each.
    pub fn diagonal(nu: &Partition) -> Result<Self> {
        SimilarityType::new(
            nu.parts()
                .iter()
                .map(|&m| Block::new(1, Partition::column(m)))
                .collect::<Result<_>>()?,
        )
    }

    /// How many distinct monic irreducibles of each degree a matrix of this type uses.
    pub fn irreducibles_needed(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for b in &self.blocks {
            *m.entry(b.d).or_insert(0) += 1;
        }
        m
    }

    pub fn check_realizable(&self, p: u64) -> Result<()> {
        for (&degree, &needed) in &self.irreducibles_needed() {
            let available = irreducible_count(p, degree);
            if (needed as u128) > available {
                return Err(Error::Unrealizable {
                    p,
                    degree,
                    needed,
                    available,
                });
            }
        }
        Ok(())
    }

    pub fn is_realizable(&self, p: u64) -> bool {
        self.check_realizable(p).is_ok()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("types serialize")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Display for SimilarityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", b.d, b.lambda)?;
        }
        f.write_str("}")
    }
}

/// All similarity class types of size `n`.
pub fn types_of_size(n: usize) -> Vec<SimilarityType> {
    let mut atoms = Vec::new();
    for d in 1..=n {
        for m in 1..=n / d {
            for l in partitions_of(m) {
                atoms.push(Block { d, lambda: l });
            }
        }
    }
    atoms.sort();
    let mut out = Vec::new();
    fn rec(atoms: &[Block], start: usize, left: usize, cur: &mut Vec<Block>, out: &mut Vec<SimilarityType>) {
        if left == 0 {
            out.push(SimilarityType { blocks: cur.clone() });
            return;
        }
        for i in start..atoms.len() {
            let s = atoms[i].size();
            if s <= left {
                cur.push(atoms[i].clone());
                rec(atoms, i, left - s, cur, out);
                cur.pop();
            }
        }
    }
    if n > 0 {
        rec(&atoms, 0, n, &mut Vec::new(), &mut out);
    }
    out
}

fn mobius(n: usize) -> i64 {
    let mut m = n;
    let mut sign = 1;
    let mut f = 2;
    while f * f <= m {
        if m % f == 0 {
            m /= f;
            if m % f == 0 {
                return 0;
            }
            sign = -sign;
        }
        f += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducible polynomials of degree `d` over `F_p`,
/// `(1/d) Σ_{e|d} μ(e) p^{d/e}`; saturates at `u128::MAX`.
pub fn irreducible_count(p: u64, d: usize) -> u128 {
    if d == 0 {
        return 0;
    }
    let mut acc = BigInt::zero();
    for e in 1..=d {
        if d % e == 0 {
            let m = mobius(e);
            if m != 0 {
                acc += BigInt::from(m) * BigInt::from(p).pow((d / e) as u32);
            }
        }
    }
    let v: BigInt = acc / BigInt::from(d);
    u128::try_from(v).unwrap_or(u128::MAX)
}

/// A partial profile `(ρ_1, …, ρ_r)`. Entries are not required to decrease.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProfileTuple(pub Vec<usize>);

impl ProfileTuple {
    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

fn sign(odd: bool) -> RatFunc {
    RatFunc::from_int(if odd { -1 } else { 1 })
}

fn tpow(e: i64) -> RatFunc {
    RatFunc::t_pow(e)
}

fn to_count(r: RatFunc, what: &str) -> Result<PolyT> {
    r.to_poly()
        .map_err(|_| Error::NotPolynomial(format!("{what}: {r}")))
}

/// `F_τ = Π_i p_{d_i}[H̃_{λ^i}]`.
pub fn flag_gf(tau: &SimilarityType) -> Result<SymFunc> {
    static MEMO: Memo<SimilarityType, SymFunc> = Memo::new();
    crate::symfunc::check_cap(tau.size())?;
    Ok((*MEMO.try_get_or_insert_with(tau, || {
        let factors = tau
            .blocks
            .iter()
            .map(|b| plethysm_pd(b.d, &hmod(&b.lambda)?))
            .collect::<Result<Vec<_>>>()?;
        product(factors.iter())
    })?)
    .clone())
}

/// `X_λ(τ)`, the number of invariant flags with dimension jumps `λ`.
pub fn x_coeff(lambda: &Partition, tau: &SimilarityType) -> Result<PolyT> {
    if lambda.size() != tau.size() {
        return Err(Error::SizeMismatch(format!("|{lambda}| != size of {tau}")));
    }
    let m = to_basis(&flag_gf(tau)?, Basis::M)?;
    to_count(m.get(lambda).cloned().unwrap_or_default(), "flag count")
}

/// `σ(μ,τ)`, the number of subspaces with profile `μ`.
pub fn sigma(mu: &Partition, tau: &SimilarityType) -> Result<PolyT> {
    let n = tau.size();
    if mu.size() > n {
        return Err(Error::SizeMismatch(format!("|{mu}| > {n}")));
    }
    let c = multiply(&whittaker_dual(mu)?, &from_basis(Basis::H, &Partition::row(n - mu.size()))?)?;
    let v = hall_inner(&flag_gf(tau)?, &c);
    let pre = &sign((mu.size() - mu.first()) % 2 == 1) * &tpow(mu.binom2_sum_from(1) as i64);
    to_count(&pre * &v, "sigma")
}

/// `σ(μ,τ)` for every `|μ| ≤ size(τ)`, in `partitions_up_to` order.
pub fn sigma_table(tau: &SimilarityType) -> Result<Vec<(Partition, PolyT)>> {
    partitions_up_to(tau.size(), false)
        .into_iter()
        .map(|mu| Ok((mu.clone(), sigma(&mu, tau)?)))
        .collect()
}

/// `Π_{i≥2} t^{μ_i²} [μ_{i-1} choose μ_i]_t`, the count for a regular nilpotent operator.
pub fn sigma_regnil(mu: &Partition, n: usize) -> Result<PolyT> {
    if mu.size() > n {
        return Err(Error::SizeMismatch(format!("|{mu}| > {n}")));
    }
    Ok((1..mu.len()).fold(PolyT::one(), |acc, i| {
        let m = mu.get(i);
        &(&acc * &PolyT::t_pow(m * m)) * &q_binomial(mu.get(i - 1), m)
    }))
}

/// The count for an operator with irreducible characteristic polynomial:
/// `(t^n-1)/(t^{μ_1}-1) Π_{i≥2} t^{μ_i²-μ_i} [μ_{i-1} choose μ_i]_t` when
/// `μ ⊢ n`. Such an operator has no invariant subspaces besides `0` and the
/// whole space, so the count is `1` for `μ = ()` and `0` for `0 < |μ| < n`.
pub fn sigma_simple(mu: &Partition, n: usize) -> Result<RatFunc> {
    if mu.size() > n {
        return Err(Error::SizeMismatch(format!("|{mu}| > {n}")));
    }
    if mu.is_empty() {
        return Ok(RatFunc::one());
    }
    if mu.size() < n {
        return Ok(RatFunc::zero());
    }
    let one = PolyT::one();
    let lead = RatFunc::new(&PolyT::t_pow(n) - &one, &PolyT::t_pow(mu.first()) - &one)?;
    let prod = (1..mu.len()).fold(PolyT::one(), |acc, i| {
        let m = mu.get(i);
        &(&acc * &PolyT::t_pow(m * m - m)) * &q_binomial(mu.get(i - 1), m)
    });
    let r = &lead * &RatFunc::from_poly(prod);
    if !r.is_polynomial() {
        return Err(Error::NotPolynomial(format!("simple-operator product for {mu}: {r}")));
    }
    Ok(r)
}

/// `b_{μν}(t)` by the recurrence over horizontal strips of size `ν_last`.
pub fn b_poly(mu: &Partition, nu: &Partition) -> Result<PolyT> {
    static MEMO: Memo<(Partition, Partition), PolyT> = Memo::new();
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(format!("b for {mu} and {nu}")));
    }
    if nu.is_empty() {
        return Ok(PolyT::one());
    }
    Ok((*MEMO.try_get_or_insert_with(&(mu.clone(), nu.clone()), || {
        let last = nu.get(nu.len() - 1);
        let rest = nu.without_last();
        let mut acc = RatFunc::zero();
        for rho in horizontal_strip_removals(mu, last) {
            let b = b_poly(&rho, &rest)?;
            if !b.is_zero() {
                acc = &acc + &(&theta(mu, &rho) * &RatFunc::from_poly(b));
            }
        }
        to_count(acc, "b")
    })?)
    .clone())
}

/// `b_{μν}` through `Π[ν_i]! / Π[μ_i-μ_{i+1}]! · ⟨W_μ, h_ν⟩`.
pub fn b_poly_via_inner(mu: &Partition, nu: &Partition) -> Result<PolyT> {
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(format!("b for {mu} and {nu}")));
    }
    let num = nu.parts().iter().fold(PolyT::one(), |a, &v| &a * &q_factorial(v));
    let den = (0..mu.len()).fold(PolyT::one(), |a, i| &a * &q_factorial(mu.get(i) - mu.get(i + 1)));
    let w = crate::hlwhittaker::whittaker_w(mu)?;
    let v = hall_inner(&w, &from_basis(Basis::H, nu)?);
    to_count(&RatFunc::new(num, den)? * &v, "b")
}

/// `(t-1)^{Σ_{j≥2} μ_j} t^{Σ_{j≥2} C(μ_j,2)} b_{μν}(t)` for `μ, ν ⊢ n`.
pub fn sigma_diagonal(mu: &Partition, nu: &Partition) -> Result<PolyT> {
    let b = b_poly(mu, nu)?;
    let tm1 = PolyT::from_ints(&[-1, 1]).pow(mu.size() - mu.first());
    Ok(&(&tm1 * &PolyT::t_pow(mu.binom2_sum_from(1))) * &b)
}

/// `a_{μλ}(t) = Σ_η K_{η'μ} K_{ηλ}(t)`.
pub fn a_coeff(mu: &Partition, lambda: &Partition) -> Result<PolyT> {
    if mu.size() != lambda.size() {
        return Err(Error::SizeMismatch(format!("a for {mu} and {lambda}")));
    }
    let mut acc = PolyT::zero();
    for eta in partitions_of(mu.size()) {
        let k = kostka_number(&eta.conjugate(), &WeakComposition::from(mu))?;
        if k > 0 {
            acc = &acc + &kostka_foulkes(&eta, lambda)?.scale(&BigQ::from_integer(BigInt::from(k)));
        }
    }
    Ok(acc)
}

fn a_tilde_matrix(n: usize) -> Result<Arc<Matrix<RatFunc>>> {
    static MEMO: Memo<usize, Matrix<RatFunc>> = Memo::new();
    MEMO.try_get_or_insert_with(&n, || {
        let parts = partitions_of(n);
        let a: Matrix<RatFunc> = parts
            .iter()
            .map(|m| parts.iter().map(|l| Ok(RatFunc::from_poly(a_coeff(m, l)?))).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        linalg::inverse(&a).ok_or_else(|| Error::InvalidArgument(format!("a-matrix singular at n = {n}")))
    })
}

/// Entry `ã_{μλ}` of the inverse of `(a_{μλ})`.
pub fn a_tilde(mu: &Partition, lambda: &Partition) -> Result<RatFunc> {
    if mu.size() != lambda.size() {
        return Err(Error::SizeMismatch(format!("ã for {mu} and {lambda}")));
    }
    let parts = partitions_of(mu.size());
    let inv = a_tilde_matrix(mu.size())?;
    let i = parts.binary_search(mu).expect("partition of n");
    let j = parts.binary_search(lambda).expect("partition of n");
    Ok(inv[i][j].clone())
}

/// `σ(μ,τ)` for `μ ⊢ n` as `ε_{μ'} t^{Σ_{j≥2} C(μ_j,2)} Σ_λ ã_{μ'λ} X_λ(τ)`.
pub fn sigma_full_via_atilde(mu: &Partition, tau: &SimilarityType) -> Result<PolyT> {
    let n = tau.size();
    if mu.size() != n {
        return Err(Error::SizeMismatch(format!("|{mu}| != {n}")));
    }
    let mc = mu.conjugate();
    let xs = to_basis(&flag_gf(tau)?, Basis::M)?;
    let mut acc = RatFunc::zero();
    for (lam, x) in &xs {
        acc = &acc + &(&a_tilde(&mc, lam)? * x);
    }
    let pre = &sign((n - mu.first()) % 2 == 1) * &tpow(mu.binom2_sum_from(1) as i64);
    to_count(&pre * &acc, "sigma")
}

/// `Σ_{|μ|≤n} (-1)^{μ_1} t^{-μ·ν + C(μ_1,2)} σ(μ,τ)`, which should vanish.
pub fn bcrr_residual(tau: &SimilarityType, nu: &Partition) -> Result<RatFunc> {
    let n = tau.size();
    if nu.size() >= n {
        return Err(Error::InvalidArgument(format!("|{nu}| must be below {n}")));
    }
    let mut acc = RatFunc::zero();
    for (mu, s) in sigma_table(tau)? {
        let e = binom2(mu.first()) as i64 - dot(&mu, nu) as i64;
        let term = &(&sign(mu.first() % 2 == 1) * &tpow(e)) * &RatFunc::from_poly(s);
        acc = &acc + &term;
    }
    Ok(acc)
}

fn check_rho(rho: &ProfileTuple, n: usize) -> Result<()> {
    match rho.0.last() {
        None => Err(Error::InvalidArgument("partial profile must be nonempty".into())),
        Some(0) => Err(Error::InvalidArgument(
            "partial profile must end in a nonzero entry; use sigma for stabilized profiles".into(),
        )),
        Some(_) if rho.sum() > n => Err(Error::SizeMismatch(format!("partial profile sums past {n}"))),
        Some(_) => Ok(()),
    }
}

/// `G_ρ = (-1)^{Σ_{j≥2} ρ_j} t^{Σ_{j≥2} C(ρ_j,2)} Σ_{η⊢n, ℓ(η)=r} ψ_{η/ρ} P_{η'}`.
/// Zero when `ρ` is not weakly decreasing, since no subspace has such increments.
pub fn g_partial(rho: &ProfileTuple, n: usize) -> Result<SymFunc> {
    check_rho(rho, n)?;
    let Ok(rp) = Partition::new(rho.0.clone()) else {
        return Ok(SymFunc::zero(n));
    };
    let r = rho.0.len();
    let mut terms = Vec::new();
    for eta in partitions_of(n) {
        if eta.len() != r {
            continue;
        }
        let psi = pieri_psi(&eta, &rp);
        if !psi.is_zero() {
            terms.push((RatFunc::from_poly(psi), hl_p(&eta.conjugate())?));
        }
    }
    let g = SymFunc::linear_combination(n, terms.iter().map(|(c, f)| (c.clone(), f)))?;
    let pre = &sign((rp.size() - rp.first()) % 2 == 1) * &tpow(rp.binom2_sum_from(1) as i64);
    Ok(g.scale(&pre))
}

/// `π(ρ,τ) = ⟨ωF_τ, G_ρ⟩`, the number of subspaces with partial profile `ρ`.
pub fn pi_partial(rho: &ProfileTuple, tau: &SimilarityType) -> Result<PolyT> {
    let g = g_partial(rho, tau.size())?;
    to_count(hall_inner(&omega(&flag_gf(tau)?), &g), "partial profile count")
}

/// Number of `fold`-fold anti-invariant subspaces of dimension `m`,
/// `(-1)^{m·fold} t^{fold·C(m,2)} ⟨ωF_τ, P_{((fold+1)^m, 1^{n-m(fold+1)})}⟩`.
pub fn anti_invariant_count(m: usize, fold: usize, tau: &SimilarityType) -> Result<PolyT> {
    let n = tau.size();
    if fold == 0 {
        return Err(Error::InvalidArgument("fold must be positive".into()));
    }
    if m * (fold + 1) > n {
        return Err(Error::InvalidArgument(format!(
            "{m}-dimensional {fold}-fold anti-invariant subspaces need dimension {} > {n}",
            m * (fold + 1)
        )));
    }
    let shape = Partition::rectangle_plus_column(fold + 1, m, n - m * (fold + 1));
    let v = hall_inner(&omega(&flag_gf(tau)?), &hl_p(&shape)?);
    let pre = &sign((m * fold) % 2 == 1) * &tpow((fold * binom2(m)) as i64);
    to_count(&pre * &v, "anti-invariant count")
}

/// `G(n,k,ℓ) = t^{-nk} Σ_{μ⊢n, ℓ(μ)≤ℓ} (-1)^{n-μ_1} (t-1)^{μ_1} t^{Σ_j C(μ_j,2)} [k choose μ_1]_t [μ_1]_t! W̃_μ`.
pub fn krylov_g(n: usize, k: usize, l: usize) -> Result<SymFunc> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidArgument("k and l must be positive".into()));
    }
    let mut terms = Vec::new();
    for mu in partitions_of(n) {
        if mu.len() > l {
            continue;
        }
        let m1 = mu.first();
        let c = &PolyT::from_ints(&[-1, 1]).pow(m1)
            * &(&PolyT::t_pow(mu.binom2_sum_from(0)) * &(&q_binomial(k, m1) * &q_factorial(m1)));
        if c.is_zero() {
            continue;
        }
        let c = &sign((n - m1) % 2 == 1) * &RatFunc::from_poly(c);
        terms.push((c, whittaker_dual(&mu)?));
    }
    let g = SymFunc::linear_combination(n, terms.iter().map(|(c, f)| (c.clone(), f)))?;
    Ok(g.scale(&tpow(-((n * k) as i64))))
}

/// Probability that `k` uniformly random vectors generate the whole space
/// through Krylov words of length below `l`.
pub fn krylov_prob(k: usize, l: usize, tau: &SimilarityType) -> Result<RatFunc> {
    Ok(hall_inner(&flag_gf(tau)?, &krylov_g(tau.size(), k, l)?))
}

/// Left side `Σ_μ (-1)^{|μ|} t^{-μ·ν + Σ_j C(μ_j,2)} ψ_{η/μ}` over `μ` with `η/μ` a horizontal strip.
pub fn psisum_lhs(eta: &Partition, nu: &Partition) -> RatFunc {
    let mut acc = RatFunc::zero();
    for k in 0..=eta.size() {
        for mu in horizontal_strip_removals(eta, eta.size() - k) {
            let e = mu.binom2_sum_from(0) as i64 - dot(&mu, nu) as i64;
            let term = &(&sign(mu.size() % 2 == 1) * &tpow(e)) * &RatFunc::from_poly(pieri_psi(eta, &mu));
            acc = &acc + &term;
        }
    }
    acc
}

/// Right side `(-1)^{|η|} (1-t)^{η_1} t^{-η·ν + Σ_j C(η_j,2)} Π_i [ν_i - η_{i+1} choose η_i - η_{i+1}]_t [η_i - η_{i+1}]_t!`,
/// with a Gaussian binomial of negative top read as zero.
pub fn psisum_rhs(eta: &Partition, nu: &Partition) -> RatFunc {
    let mut prod = PolyT::from_ints(&[1, -1]).pow(eta.first());
    for i in 0..eta.len() {
        let gap = eta.get(i) - eta.get(i + 1);
        let top = nu.get(i) as i64 - eta.get(i + 1) as i64;
        if top < 0 {
            return RatFunc::zero();
        }
        prod = &prod * &(&q_binomial(top as usize, gap) * &q_factorial(gap));
    }
    let e = eta.binom2_sum_from(0) as i64 - dot(eta, nu) as i64;
    &(&sign(eta.size() % 2 == 1) * &tpow(e)) * &RatFunc::from_poly(prod)
}

/// Both sides of the ψ-sum identity agree, and vanish when `|ν| < |η|`.
pub fn psisum_check(eta: &Partition, nu: &Partition) -> bool {
    let l = psisum_lhs(eta, nu);
    l == psisum_rhs(eta, nu) && (nu.size() >= eta.size() || l.is_zero())
}

/// Outcome of the determinant check over the order ideal of partitions of size `< n`.
#[derive(Clone, Debug)]
pub struct DeterminantReport {
    pub determinant: RatFunc,
    pub product_formula: RatFunc,
    pub nonzero: bool,
    pub matches_product: bool,
}

pub fn bcrr_determinant(n: usize) -> Result<DeterminantReport> {
    let ideal = partitions_up_to(n, true);
    let m: Matrix<RatFunc> = ideal
        .iter()
        .map(|a| ideal.iter().map(|b| tpow(-(dot(a, b) as i64))).collect())
        .collect();
    let det = linalg::determinant(&m);
    // x_{i,j} = t^{-j}: x_λ^{sh λ} = t^{-Σ_k λ_k λ_{k+1}}, and δx(μ,λ) = t^{-μ_r} - t^{-λ_r}
    // over pairs λ ⊆ μ differing in the single row r
    let mut prod = RatFunc::one();
    for l in &ideal {
        let e: usize = (0..l.len()).map(|k| l.get(k) * l.get(k + 1)).sum();
        prod = &prod * &tpow(-(e as i64));
    }
    for lo in &ideal {
        for hi in &ideal {
            let diff: Vec<usize> = (0..hi.len()).filter(|&i| hi.get(i) != lo.get(i)).collect();
            if diff.len() != 1 || !hi.contains(lo) {
                continue;
            }
            let r = diff[0];
            prod = &prod * &(&tpow(-(hi.get(r) as i64)) - &tpow(-(lo.get(r) as i64)));
        }
    }
    let matches = det == prod || det == -prod.clone();
    Ok(DeterminantReport {
        nonzero: !det.is_zero(),
        matches_product: matches,
        determinant: det,
        product_formula: prod,
    })
}

/// The BCRR determinant is nonzero and agrees with the product formula up to sign.
pub fn bcrr_determinant_check(n: usize) -> Result<bool> {
    let r = bcrr_determinant(n)?;
    Ok(r.nonzero && r.matches_product)
}

/// The expansion coefficients of `h_n` and `p_n` on `W_μ` predicted by the
/// regular nilpotent and simple closed forms.
pub fn h_n_whittaker_coeff(mu: &Partition) -> PolyT {
    let s = if (mu.size() - mu.first()) % 2 == 1 { -1 } else { 1 };
    (1..mu.len())
        .fold(PolyT::from_ints(&[s]), |acc, i| {
            let m = mu.get(i);
            &(&acc * &PolyT::t_pow(binom2(m + 1))) * &q_binomial(mu.get(i - 1), m)
        })
}

pub fn p_n_whittaker_coeff(mu: &Partition) -> Result<RatFunc> {
    let n = mu.size();
    let s = if (n - mu.first()) % 2 == 1 { -1 } else { 1 };
    let one = PolyT::one();
    let lead = RatFunc::new(&PolyT::t_pow(n) - &one, &PolyT::t_pow(mu.first()) - &one)?;
    let prod = (1..mu.len()).fold(PolyT::from_ints(&[s]), |acc, i| {
        let m = mu.get(i);
        &(&acc * &PolyT::t_pow(binom2(m))) * &q_binomial(mu.get(i - 1), m)
    });
    Ok(&lead * &RatFunc::from_poly(prod))
}

/// Evaluates a count at `t = p`, after checking that the type is realizable over `F_p`.
pub fn eval_count_at_prime(count: &PolyT, tau: &SimilarityType, p: u64) -> Result<BigInt> {
    tau.check_realizable(p)?;
    let v = count.eval(&BigQ::from_integer(BigInt::from(p)));
    crate::ratfunc::as_integer(&v).ok_or_else(|| Error::NotPolynomial(format!("non-integer count {v}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{dominates, p};
    use crate::ratfunc::bigq;

    fn ty(pairs: &[(usize, &[usize])]) -> SimilarityType {
        SimilarityType::from_pairs(pairs).unwrap()
    }

    fn poly(c: &[i64]) -> PolyT {
        PolyT::from_ints(c)
    }

    fn t() -> PolyT {
        poly(&[0, 1])
    }

    #[test]
    fn type_json_and_validation() {
        let tau = SimilarityType::from_json_str(r#"{"blocks":[{"d":2,"lambda":[1]},{"d":1,"lambda":[2,1]}]}"#).unwrap();
        assert_eq!(tau.size(), 5);
        assert_eq!(tau.blocks()[0].d, 1);
        let back: SimilarityType = serde_json::from_value(tau.to_json()).unwrap();
        assert_eq!(back, tau);
        assert!(SimilarityType::from_json_str(r#"{"blocks":[{"d":0,"lambda":[1]}]}"#).is_err());
        assert!(SimilarityType::from_json_str(r#"{"blocks":[{"d":1,"lambda":[]}]}"#).is_err());
        assert!(SimilarityType::from_json_str(r#"{"blocks":[]}"#).is_err());
    }

    #[test]
    fn type_enumeration() {
        // sizes 1..4: 1, 4, 8, 22 types (counted by hand from the atoms)
        let counts: Vec<usize> = (1..=4).map(|n| types_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 4, 8, 22]);
        for n in 1..=5 {
            for tau in types_of_size(n) {
                assert_eq!(tau.size(), n);
            }
        }
    }

    #[test]
    fn necklace_counts() {
        assert_eq!(irreducible_count(2, 1), 2);
        assert_eq!(irreducible_count(2, 2), 1);
        assert_eq!(irreducible_count(2, 3), 2);
        assert_eq!(irreducible_count(2, 4), 3);
        assert_eq!(irreducible_count(3, 2), 3);
        assert_eq!(irreducible_count(5, 1), 5);
        assert!(ty(&[(1, &[1]), (1, &[1])]).is_realizable(2));
        let three = ty(&[(1, &[1]), (1, &[1]), (1, &[1])]);
        assert!(matches!(three.check_realizable(2), Err(Error::Unrealizable { degree: 1, needed: 3, .. })));
        assert!(three.is_realizable(3));
    }

    #[test]
    fn flag_gf_examples() {
        let f = flag_gf(&ty(&[(2, &[1])])).unwrap();
        assert_eq!(f, from_basis(Basis::P, &p(&[2])).unwrap());
        assert_eq!(f, from_basis(Basis::M, &p(&[2])).unwrap());
        assert_eq!(flag_gf(&ty(&[(1, &[2])])).unwrap(), from_basis(Basis::H, &p(&[2])).unwrap());
        let z = flag_gf(&ty(&[(1, &[1, 1])])).unwrap();
        let m = to_basis(&z, Basis::M).unwrap();
        assert!(m[&p(&[2])].is_one());
        assert_eq!(m[&p(&[1, 1])], RatFunc::from_poly(poly(&[1, 1])));
    }

    #[test]
    fn x_coeff_examples() {
        assert_eq!(x_coeff(&p(&[1, 1]), &ty(&[(1, &[1, 1])])).unwrap(), poly(&[1, 1]));
        assert!(x_coeff(&p(&[1, 1]), &ty(&[(2, &[1])])).unwrap().is_zero());
        for n in 1..=4 {
            for tau in types_of_size(n) {
                assert!(x_coeff(&Partition::row(n), &tau).unwrap().is_one());
            }
        }
        assert!(x_coeff(&p(&[1]), &ty(&[(2, &[1])])).is_err());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&p(&[1, 1]), &ty(&[(1, &[2])])).unwrap(), t());
        assert_eq!(sigma(&p(&[1, 1]), &ty(&[(2, &[1])])).unwrap(), poly(&[1, 1]));
        for n in 1..=4 {
            for tau in types_of_size(n) {
                assert!(sigma(&Partition::empty(), &tau).unwrap().is_one());
                assert!(sigma(&Partition::row(n), &tau).unwrap().is_one());
            }
        }
        assert!(sigma(&p(&[2, 1]), &ty(&[(1, &[2])])).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(sigma_regnil(&p(&[1, 1]), 2).unwrap(), t());
        assert!(sigma_regnil(&p(&[3]), 3).unwrap().is_one());
        assert_eq!(sigma_simple(&p(&[1, 1]), 2).unwrap(), RatFunc::from_poly(poly(&[1, 1])));
        assert!(sigma_simple(&p(&[1]), 2).unwrap().is_zero());
        assert!(sigma_regnil(&p(&[2, 1]), 2).is_err());
        for n in 1..=4 {
            let rn = SimilarityType::regular_nilpotent(n).unwrap();
            let sm = SimilarityType::simple(n).unwrap();
            for mu in partitions_up_to(n, false) {
                assert_eq!(sigma(&mu, &rn).unwrap(), sigma_regnil(&mu, n).unwrap(), "{mu}");
                assert_eq!(RatFunc::from_poly(sigma(&mu, &sm).unwrap()), sigma_simple(&mu, n).unwrap(), "{mu}");
            }
        }
    }

    #[test]
    fn b_examples() {
        assert!(b_poly(&p(&[2]), &p(&[1, 1])).unwrap().is_one());
        assert!(b_poly(&p(&[1, 1]), &p(&[2])).unwrap().is_zero());
        assert_eq!(b_poly(&p(&[2, 1]), &p(&[2, 1])).unwrap(), poly(&[1, 1]));
        for n in 0..=5 {
            for mu in partitions_of(n) {
                let diag = (0..mu.len()).fold(RatFunc::one(), |a, i| {
                    &a * &RatFunc::new(q_factorial(mu.get(i)), q_factorial(mu.get(i) - mu.get(i + 1))).unwrap()
                });
                assert_eq!(RatFunc::from_poly(b_poly(&mu, &mu).unwrap()), diag);
                for nu in partitions_of(n) {
                    let b = b_poly(&mu, &nu).unwrap();
                    assert_eq!(b.is_zero(), !dominates(&mu, &nu).unwrap());
                    assert!(b.has_integer_coeffs() && b.has_nonnegative_coeffs());
                    if n <= 4 {
                        assert_eq!(b, b_poly_via_inner(&mu, &nu).unwrap());
                    }
                }
            }
        }
        assert!(b_poly(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(sigma_diagonal(&p(&[1, 1]), &p(&[1, 1])).unwrap(), poly(&[-1, 1]));
        assert!(sigma_diagonal(&p(&[3]), &p(&[3])).unwrap().is_one());
        assert!(sigma_diagonal(&p(&[1, 1]), &p(&[2])).unwrap().is_zero());
        for n in 1..=4 {
            for mu in partitions_of(n) {
                for nu in partitions_of(n) {
                    let tau = SimilarityType::diagonal(&nu).unwrap();
                    assert_eq!(sigma(&mu, &tau).unwrap(), sigma_diagonal(&mu, &nu).unwrap(), "{mu} {nu}");
                }
            }
        }
    }

    #[test]
    fn a_matrix() {
        assert_eq!(a_coeff(&p(&[1, 1]), &p(&[1, 1])).unwrap(), poly(&[1, 1]));
        for n in 0..=4 {
            let ps = partitions_of(n);
            for m in &ps {
                for l in &ps {
                    let mut acc = RatFunc::zero();
                    for k in &ps {
                        acc = &acc + &(&RatFunc::from_poly(a_coeff(m, k).unwrap()) * &a_tilde(k, l).unwrap());
                    }
                    assert_eq!(acc.is_one(), m == l);
                    assert_eq!(acc.is_zero(), m != l);
                }
            }
        }
    }

    #[test]
    fn atilde_route() {
        assert_eq!(sigma_full_via_atilde(&p(&[1, 1]), &ty(&[(1, &[2])])).unwrap(), t());
        for n in 1..=4 {
            for tau in types_of_size(n) {
                assert!(sigma_full_via_atilde(&Partition::row(n), &tau).unwrap().is_one());
                for mu in partitions_of(n) {
                    assert_eq!(sigma_full_via_atilde(&mu, &tau).unwrap(), sigma(&mu, &tau).unwrap());
                }
            }
        }
    }

    #[test]
    fn bcrr_examples() {
        assert!(bcrr_residual(&ty(&[(1, &[2])]), &p(&[1])).unwrap().is_zero());
        assert!(bcrr_residual(&ty(&[(2, &[1])]), &Partition::empty()).unwrap().is_zero());
        assert!(bcrr_residual(&ty(&[(2, &[1])]), &p(&[2])).is_err());
    }

    #[test]
    fn partial_examples() {
        for n in 1..=4 {
            for tau in types_of_size(n) {
                for m in 1..=n {
                    let got = pi_partial(&ProfileTuple(vec![m]), &tau).unwrap();
                    assert_eq!(got, q_binomial(n, m));
                }
            }
        }
        assert_eq!(pi_partial(&ProfileTuple(vec![1, 1]), &ty(&[(1, &[2])])).unwrap(), t());
        assert!(pi_partial(&ProfileTuple(vec![1, 2]), &ty(&[(1, &[3])])).unwrap().is_zero());
        assert!(pi_partial(&ProfileTuple(vec![1, 0]), &ty(&[(1, &[2])])).is_err());
        assert!(pi_partial(&ProfileTuple(vec![]), &ty(&[(1, &[2])])).is_err());
    }

    #[test]
    fn anti_invariant_examples() {
        assert_eq!(anti_invariant_count(1, 1, &ty(&[(1, &[2])])).unwrap(), t());
        assert_eq!(anti_invariant_count(1, 1, &ty(&[(2, &[1])])).unwrap(), poly(&[1, 1]));
        assert!(anti_invariant_count(0, 1, &ty(&[(2, &[1])])).unwrap().is_one());
        assert!(anti_invariant_count(2, 1, &ty(&[(2, &[1])])).is_err());
        for n in 1..=4 {
            for tau in types_of_size(n) {
                for fold in 1..n {
                    for m in 1..=n / (fold + 1) {
                        let rho = ProfileTuple(vec![m; fold + 1]);
                        assert_eq!(anti_invariant_count(m, fold, &tau).unwrap(), pi_partial(&rho, &tau).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn krylov_examples() {
        let rn = SimilarityType::regular_nilpotent(2).unwrap();
        let pr = krylov_prob(1, 2, &rn).unwrap();
        assert_eq!(pr, &RatFunc::one() - &RatFunc::t_pow(-1));
        let z = SimilarityType::zero(2).unwrap();
        assert_eq!(krylov_prob(2, 2, &z).unwrap().eval_at(&bigq(2)).unwrap(), crate::ratfunc::bigq_frac(3, 8));
        for n in 1..=3 {
            let z = SimilarityType::zero(n).unwrap();
            let expect = (0..n).fold(RatFunc::one(), |a, i| &a * &(&RatFunc::one() - &RatFunc::t_pow(i as i64 - n as i64)));
            assert_eq!(krylov_prob(n, n, &z).unwrap(), expect);
            for tau in types_of_size(n) {
                for k in 1..=3 {
                    for l in 1..=3 {
                        if k * l < n {
                            assert!(krylov_prob(k, l, &tau).unwrap().is_zero());
                        }
                    }
                }
            }
        }
        assert!(krylov_g(2, 0, 1).is_err());
    }

    #[test]
    fn psisum_examples() {
        assert!(psisum_check(&p(&[2]), &p(&[2])));
        assert!(!psisum_lhs(&p(&[2]), &p(&[2])).is_zero());
        assert!(psisum_check(&p(&[2]), &p(&[1])));
        assert!(psisum_lhs(&p(&[2]), &p(&[1])).is_zero());
        assert!(psisum_check(&Partition::empty(), &Partition::empty()));
        assert!(psisum_lhs(&Partition::empty(), &Partition::empty()).is_one());
    }

    #[test]
    fn determinant_examples() {
        for n in 1..=3 {
            assert!(bcrr_determinant_check(n).unwrap(), "{n}");
        }
        assert!(bcrr_determinant(1).unwrap().determinant.is_one());
    }

    #[test]
    fn whittaker_expansions_small() {
        for n in 1..=4 {
            let h = to_basis(&from_basis(Basis::H, &Partition::row(n)).unwrap(), Basis::Whittaker).unwrap();
            let pn = to_basis(&from_basis(Basis::P, &Partition::row(n)).unwrap(), Basis::Whittaker).unwrap();
            for mu in partitions_of(n) {
                assert_eq!(h.get(&mu).cloned().unwrap_or_default(), RatFunc::from_poly(h_n_whittaker_coeff(&mu)));
                assert_eq!(pn.get(&mu).cloned().unwrap_or_default(), p_n_whittaker_coeff(&mu).unwrap());
            }
        }
    }
}
