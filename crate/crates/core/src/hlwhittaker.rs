//! Hall-Littlewood and q-Whittaker bases, the two plethystic substitutions
//! used with them, and the Pieri coefficients `ψ` and `θ`.
//!
//! `plethysm_pd` treats `t` as a variable (`c(t) ↦ c(t^d)`), while the
//! `X(1-t)` alphabets treat it as a scalar. Do not mix them up.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::memo::Memo;
use crate::partitions::{is_horizontal_strip, n_stat, partitions_of, Partition, SkewPair};
use crate::ratfunc::{q_binomial, q_factorial, PolyT, RatFunc};
use crate::symfunc::{check_cap, omega, Basis, SymFunc};
use crate::tableaux::{kostka_foulkes, modified_kostka};

fn memo_element(tag: Basis, lambda: &Partition, f: impl FnOnce() -> Result<SymFunc>) -> Result<SymFunc> {
    static MEMO: Memo<(Basis, Partition), SymFunc> = Memo::new();
    check_cap(lambda.size())?;
    Ok((*MEMO.try_get_or_insert_with(&(tag, lambda.clone()), f)?).clone())
}

fn from_polys(n: usize, terms: impl IntoIterator<Item = (Partition, PolyT)>) -> Result<SymFunc> {
    SymFunc::from_schur(n, terms.into_iter().map(|(k, v)| (k, RatFunc::from_poly(v))))
}

/// Modified Hall-Littlewood `H̃_λ = Σ_μ K̃_{μλ}(t) s_μ`.
pub fn hmod(lambda: &Partition) -> Result<SymFunc> {
    memo_element(Basis::ModifiedH, lambda, || {
        let n = lambda.size();
        let terms = partitions_of(n)
            .into_iter()
            .map(|mu| Ok((mu.clone(), modified_kostka(&mu, lambda)?)))
            .collect::<Result<Vec<_>>>()?;
        from_polys(n, terms)
    })
}

/// Transformed Hall-Littlewood `H_λ = Σ_μ K_{μλ}(t) s_μ = t^{n(λ)} H̃_λ(x; 1/t)`.
pub fn htrans(lambda: &Partition) -> Result<SymFunc> {
    memo_element(Basis::TransformedH, lambda, || {
        let n = lambda.size();
        let terms = partitions_of(n)
            .into_iter()
            .map(|mu| Ok((mu.clone(), kostka_foulkes(&mu, lambda)?)))
            .collect::<Result<Vec<_>>>()?;
        from_polys(n, terms)
    })
}

/// Inverse of the Kostka-Foulkes matrix `A[λ][μ] = K_{λμ}(t)`, rows and
/// columns in `partitions_of(n)` order.
fn kostka_foulkes_inverse(n: usize) -> Result<Arc<Matrix<RatFunc>>> {
    static MEMO: Memo<usize, Matrix<RatFunc>> = Memo::new();
    MEMO.try_get_or_insert_with(&n, || {
        let parts = partitions_of(n);
        let a: Matrix<RatFunc> = parts
            .iter()
            .map(|l| {
                parts
                    .iter()
                    .map(|m| Ok(RatFunc::from_poly(kostka_foulkes(l, m)?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(linalg::inverse(&a).expect("Kostka-Foulkes matrix is unitriangular"))
    })
}

/// Hall-Littlewood `P_λ`, from `s_λ = Σ_μ K_{λμ}(t) P_μ`.
pub fn hl_p(lambda: &Partition) -> Result<SymFunc> {
    memo_element(Basis::HallLittlewoodP, lambda, || {
        let n = lambda.size();
        let parts = partitions_of(n);
        let inv = kostka_foulkes_inverse(n)?;
        let i = parts.binary_search(lambda).expect("partition of n");
        SymFunc::from_schur(n, parts.iter().cloned().zip(inv[i].iter().cloned()))
    })
}

/// q-Whittaker `W_λ = Σ_μ K_{μ'λ'}(t) s_μ`.
pub fn whittaker_w(lambda: &Partition) -> Result<SymFunc> {
    memo_element(Basis::Whittaker, lambda, || {
        let n = lambda.size();
        let lc = lambda.conjugate();
        let terms = partitions_of(n)
            .into_iter()
            .map(|mu| Ok((mu.clone(), kostka_foulkes(&mu.conjugate(), &lc)?)))
            .collect::<Result<Vec<_>>>()?;
        from_polys(n, terms)
    })
}

/// Dual q-Whittaker `W̃_λ = ω P_{λ'}`.
pub fn whittaker_dual(lambda: &Partition) -> Result<SymFunc> {
    memo_element(Basis::DualWhittaker, lambda, || Ok(omega(&hl_p(&lambda.conjugate())?)))
}

/// `W̃_λ` by the second route,
/// `(1-t)^{-λ_1} / Π_i [λ_i - λ_{i+1}]_t! · W_λ[X(1-t)]`.
pub fn whittaker_dual_via_plethysm(lambda: &Partition) -> Result<SymFunc> {
    let mut denom = PolyT::from_ints(&[1, -1]).pow(lambda.first());
    for i in 0..lambda.len() {
        denom = &denom * &q_factorial(lambda.get(i) - lambda.get(i + 1));
    }
    let c = RatFunc::from_poly(denom).recip()?;
    Ok(pleth_onem(&whittaker_w(lambda)?).scale(&c))
}

pub(crate) fn basis_element(tag: Basis, lambda: &Partition) -> Result<SymFunc> {
    match tag {
        Basis::HallLittlewoodP => hl_p(lambda),
        Basis::TransformedH => htrans(lambda),
        Basis::ModifiedH => hmod(lambda),
        Basis::Whittaker => whittaker_w(lambda),
        Basis::DualWhittaker => whittaker_dual(lambda),
        _ => crate::symfunc::from_basis(tag, lambda),
    }
}

fn map_power_sums(
    f: &SymFunc,
    degree: usize,
    g: impl Fn(&Partition, &RatFunc) -> (Partition, RatFunc),
) -> Result<SymFunc> {
    let mut out: BTreeMap<Partition, RatFunc> = BTreeMap::new();
    for (rho, c) in f.to_power_sums() {
        let (k, v) = g(&rho, &c);
        let e = out.entry(k).or_default();
        *e = &*e + &v;
    }
    out.retain(|_, c| !c.is_zero());
    SymFunc::from_power_sums(degree, &out)
}

/// `p_d[f]`: `p_r ↦ p_{dr}` and every coefficient `c(t) ↦ c(t^d)`.
pub fn plethysm_pd(d: usize, f: &SymFunc) -> Result<SymFunc> {
    if d == 0 {
        return Err(Error::InvalidArgument("plethysm by p_0".into()));
    }
    let degree = d * f.degree();
    check_cap(degree)?;
    map_power_sums(f, degree, |rho, c| (rho.scale(d), c.subst_power(d)))
}

fn one_minus_t_pow(r: usize) -> RatFunc {
    &RatFunc::one() - &RatFunc::t_pow(r as i64)
}

fn alphabet_factor(rho: &Partition) -> RatFunc {
    rho.parts().iter().map(|&r| one_minus_t_pow(r)).fold(RatFunc::one(), |a, b| &a * &b)
}

/// `f[X(1-t)]`: `p_r ↦ (1 - t^r) p_r`, with `t` a scalar.
pub fn pleth_onem(f: &SymFunc) -> SymFunc {
    map_power_sums(f, f.degree(), |rho, c| (rho.clone(), c * &alphabet_factor(rho)))
        .expect("degree is preserved")
}

/// `f[X/(1-t)]`: `p_r ↦ p_r / (1 - t^r)`, with `t` a scalar.
pub fn pleth_over_onem(f: &SymFunc) -> SymFunc {
    map_power_sums(f, f.degree(), |rho, c| {
        (rho.clone(), c.try_div(&alphabet_factor(rho)).expect("1 - t^r is nonzero"))
    })
    .expect("degree is preserved")
}

/// `ψ_{η/μ}(t) = Π_i [η_i - η_{i+1} choose η_i - μ_i]_t`, zero unless
/// `η/μ` is a horizontal strip.
pub fn pieri_psi(eta: &Partition, mu: &Partition) -> PolyT {
    if !is_horizontal_strip(&SkewPair::new(eta.clone(), mu.clone())) {
        return PolyT::zero();
    }
    (0..eta.len()).fold(PolyT::one(), |acc, i| {
        &acc * &q_binomial(eta.get(i) - eta.get(i + 1), eta.get(i) - mu.get(i))
    })
}

/// `θ_{μ/ρ}(t) = [|μ|-|ρ|]_t! / [μ_1-ρ_1]_t! · Π_i [ρ_i - ρ_{i+1} choose μ_{i+1} - ρ_{i+1}]_t`,
/// zero unless `μ/ρ` is a horizontal strip.
pub fn theta(mu: &Partition, rho: &Partition) -> RatFunc {
    if !is_horizontal_strip(&SkewPair::new(mu.clone(), rho.clone())) {
        return RatFunc::zero();
    }
    let mut num = q_factorial(mu.size() - rho.size());
    for i in 0..rho.len() {
        num = &num * &q_binomial(rho.get(i) - rho.get(i + 1), mu.get(i + 1) - rho.get(i + 1));
    }
    let den = q_factorial(mu.first() - rho.first());
    RatFunc::new(num, den).expect("q-factorials are nonzero")
}

/// `t^{n(λ)} · f(1/t)` applied coefficientwise.
pub fn twist_by_n(lambda: &Partition, f: &SymFunc) -> SymFunc {
    let tn = RatFunc::t_pow(n_stat(lambda) as i64);
    f.map_coeffs(|c| &tn * &c.subst_invert())
}
