//! Verification suites behind `subprofile verify`.

use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Result;
use crate::fforacle::{self, FpMatrix};
use crate::hlwhittaker::{hl_p, hmod, htrans, pieri_psi, twist_by_n, whittaker_dual, whittaker_dual_via_plethysm, whittaker_w};
use crate::partitions::{partitions_of, partitions_up_to, Partition, WeakComposition};
use crate::profiles::{self, types_of_size, ProfileTuple, SimilarityType};
use crate::ratfunc::{q_factorial, BigQ, PolyT, RatFunc};
use crate::symfunc::{from_basis, hall_inner, multiply, omega, product, to_basis, Basis, SymFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Sigma,
    Flags,
    Partial,
    Krylov,
    Identities,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub checks: u64,
    pub passed: bool,
    pub counterexample: Option<String>,
    pub seconds: f64,
}

/// Counts checks and records the first failure.
struct Tally {
    checks: u64,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, failure: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn done(&self) -> bool {
        self.failure.is_some()
    }
}

fn at(p: u64) -> BigQ {
    BigQ::from_integer(BigInt::from(p))
}

fn eval_poly(c: &PolyT, p: u64) -> BigQ {
    c.eval(&at(p))
}

/// One matrix per realizable type, plus a conjugated copy and, for the
/// zero type, a nonzero scalar matrix of the same type.
pub fn matrices_for(tau: &SimilarityType, p: u64) -> Result<Vec<FpMatrix>> {
    let n = tau.size();
    let base = fforacle::build_matrix_of_type(tau, p)?;
    let mut out = vec![base.conjugate_by(&FpMatrix::scrambler(p, n)?)?, base];
    if *tau == SimilarityType::zero(n)? {
        out.push(FpMatrix::scalar(p, n, 1)?);
    }
    Ok(out)
}

fn realizable_types(n: usize, p: u64) -> Vec<SimilarityType> {
    types_of_size(n).into_iter().filter(|t| t.is_realizable(p)).collect()
}

fn sigma_suite(max_n: usize, primes: &[u64], t: &mut Tally) -> Result<()> {
    for n in 1..=max_n {
        for &p in primes {
            for tau in realizable_types(n, p) {
                let table = profiles::sigma_table(&tau)?;
                for delta in matrices_for(&tau, p)? {
                    let counts = fforacle::profile_counts(&delta)?;
                    for (mu, s) in &table {
                        let brute = counts.get(mu).copied().unwrap_or(0);
                        let formula = eval_poly(s, p);
                        t.check(formula == BigQ::from_integer(BigInt::from(brute)), || {
                            format!("sigma({mu}, {tau}) at p={p}: formula {formula}, oracle {brute}")
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

fn flags_suite(max_n: usize, primes: &[u64], t: &mut Tally) -> Result<()> {
    for n in 1..=max_n {
        for &p in primes {
            for tau in realizable_types(n, p) {
                let x = to_basis(&profiles::flag_gf(&tau)?, Basis::M)?;
                let delta = fforacle::build_matrix_of_type(&tau, p)?;
                for lam in partitions_of(n) {
                    let expect = x.get(&lam).cloned().unwrap_or_default().eval_at(&at(p))?;
                    let mut rev = lam.parts().to_vec();
                    rev.reverse();
                    for comp in [lam.parts().to_vec(), rev] {
                        let brute = fforacle::flag_count_bruteforce(&WeakComposition::new(comp.clone()), &delta)?;
                        t.check(expect == BigQ::from_integer(BigInt::from(brute)), || {
                            format!("X_{comp:?}({tau}) at p={p}: formula {expect}, oracle {brute}")
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Tuples of length `1..=n` with entries summing to at most `n` and a nonzero last entry.
pub fn partial_profiles(n: usize) -> Vec<ProfileTuple> {
    let mut out = Vec::new();
    fn rec(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<ProfileTuple>) {
        if cur.last().is_some_and(|&x| x > 0) {
            out.push(ProfileTuple(cur.clone()));
        }
        if cur.len() == n {
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(n, left - x, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn partial_suite(max_n: usize, primes: &[u64], t: &mut Tally) -> Result<()> {
    for n in 1..=max_n {
        for &p in primes {
            for tau in realizable_types(n, p) {
                let delta = fforacle::build_matrix_of_type(&tau, p)?;
                for rho in partial_profiles(n) {
                    let formula = eval_poly(&profiles::pi_partial(&rho, &tau)?, p);
                    let brute = fforacle::partial_profile_bruteforce(&rho, &delta)?;
                    t.check(formula == BigQ::from_integer(BigInt::from(brute)), || {
                        format!("pi({:?}, {tau}) at p={p}: formula {formula}, oracle {brute}", rho.entries())
                    });
                }
                for fold in 1..n {
                    for m in 0..=n / (fold + 1) {
                        let formula = eval_poly(&profiles::anti_invariant_count(m, fold, &tau)?, p);
                        let brute = fforacle::anti_invariant_bruteforce(m, fold, &delta)?;
                        t.check(formula == BigQ::from_integer(BigInt::from(brute)), || {
                            format!("anti({m}, {fold}, {tau}) at p={p}: formula {formula}, oracle {brute}")
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

fn krylov_suite(max_n: usize, primes: &[u64], t: &mut Tally) -> Result<()> {
    for n in 1..=max_n {
        for &p in primes {
            for tau in realizable_types(n, p) {
                let delta = fforacle::build_matrix_of_type(&tau, p)?;
                for k in 1..=3 {
                    for l in 1..=3 {
                        let formula = profiles::krylov_prob(k, l, &tau)?.eval_at(&at(p))?;
                        let brute = fforacle::krylov_bruteforce(k, l, &delta)?;
                        t.check(formula == brute, || {
                            format!("krylov({k}, {l}, {tau}) at p={p}: formula {formula}, oracle {brute}")
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

fn delta_check(t: &mut Tally, v: &RatFunc, diag: bool, what: impl FnOnce() -> String) {
    t.check(if diag { v.is_one() } else { v.is_zero() }, what);
}

fn identities_suite(max_n: usize, t: &mut Tally) -> Result<()> {
    let specialize = |f: &SymFunc, q: i64| f.specialize(&BigQ::from_integer(BigInt::from(q)));
    for n in 0..=max_n {
        let ps = partitions_of(n);
        for l in &ps {
            let (pl, w, wd) = (hl_p(l)?, whittaker_w(l)?, whittaker_dual(l)?);
            for m in &ps {
                delta_check(t, &hall_inner(&pl, &htrans(m)?), l == m, || format!("<P{l}, H{m}>"));
                delta_check(t, &hall_inner(&w, &whittaker_dual(m)?), l == m, || format!("<W{l}, W~{m}>"));
            }
            t.check(omega(&htrans(&l.conjugate())?) == w, || format!("omega H{} = W{l}", l.conjugate()));
            t.check(omega(&hl_p(&l.conjugate())?) == wd, || format!("omega P{} = W~{l}", l.conjugate()));
            t.check(twist_by_n(l, &htrans(l)?) == hmod(l)?, || format!("H~{l} twist"));
            t.check(specialize(&w, 0)? == SymFunc::schur(l), || format!("W{l} at t=0"));
            t.check(specialize(&w, 1)? == from_basis(Basis::E, &l.conjugate())?, || format!("W{l} at t=1"));
            if n <= 5 {
                t.check(whittaker_dual_via_plethysm(l)? == wd, || format!("W~{l} plethystic route"));
            }
        }
        // Pieri
        for m in 0..=n {
            let e = from_basis(Basis::E, &Partition::row(n - m))?;
            for mu in partitions_of(m) {
                let lhs = multiply(&hl_p(&mu.conjugate())?, &e)?;
                let terms: Vec<(RatFunc, SymFunc)> = ps
                    .iter()
                    .map(|eta| Ok((RatFunc::from_poly(pieri_psi(eta, &mu)), hl_p(&eta.conjugate())?)))
                    .collect::<Result<_>>()?;
                let rhs = SymFunc::linear_combination(n, terms.iter().map(|(c, f)| (c.clone(), f)))?;
                t.check(lhs == rhs, || format!("Pieri for {mu} into degree {n}"));
            }
        }
        // b-polynomials
        for nu in &ps {
            let singles: Vec<SymFunc> = nu.parts().iter().map(|&v| whittaker_w(&Partition::row(v))).collect::<Result<_>>()?;
            let lhs = product(singles.iter())?;
            let mut terms = Vec::new();
            for mu in &ps {
                let b = profiles::b_poly(mu, nu)?;
                let num = mu.parts().iter().enumerate().fold(PolyT::one(), |a, (i, _)| &a * &q_factorial(mu.get(i) - mu.get(i + 1)));
                let den = nu.parts().iter().fold(PolyT::one(), |a, &v| &a * &q_factorial(v));
                let inner = hall_inner(&whittaker_w(mu)?, &from_basis(Basis::H, nu)?);
                t.check(RatFunc::from_poly(&b * &num) == &RatFunc::from_poly(den) * &inner, || format!("b{mu},{nu} inner-product identity"));
                let c = PolyT::from_ints(&[1, -1]).pow(mu.size() - mu.first());
                terms.push((RatFunc::from_poly(&c * &b), whittaker_w(mu)?));
            }
            let rhs = SymFunc::linear_combination(n, terms.iter().map(|(c, f)| (c.clone(), f)))?;
            t.check(lhs == rhs, || format!("product of single-row W for {nu}"));
        }
        // h_n and p_n on the W basis
        if n >= 1 {
            let h = to_basis(&from_basis(Basis::H, &Partition::row(n))?, Basis::Whittaker)?;
            let pn = to_basis(&from_basis(Basis::P, &Partition::row(n))?, Basis::Whittaker)?;
            for mu in &ps {
                let hc = h.get(mu).cloned().unwrap_or_default();
                t.check(hc == RatFunc::from_poly(profiles::h_n_whittaker_coeff(mu)), || format!("h_{n} coefficient of W{mu}"));
                let pc = pn.get(mu).cloned().unwrap_or_default();
                t.check(pc == profiles::p_n_whittaker_coeff(mu)?, || format!("p_{n} coefficient of W{mu}"));
            }
        }
        if t.done() {
            break;
        }
    }
    Ok(())
}

pub fn run_suite(suite: Suite, max_n: usize, primes: &[u64]) -> Result<Report> {
    crate::symfunc::check_cap(max_n)?;
    if suite != Suite::Identities {
        for &p in primes {
            fforacle::check_budget(fforacle::subspace_count(p, max_n, None), fforacle::DEFAULT_BUDGET)?;
        }
    }
    let start = Instant::now();
    let mut t = Tally::new();
    match suite {
        Suite::Sigma => sigma_suite(max_n, primes, &mut t)?,
        Suite::Flags => flags_suite(max_n, primes, &mut t)?,
        Suite::Partial => partial_suite(max_n, primes, &mut t)?,
        Suite::Krylov => krylov_suite(max_n, primes, &mut t)?,
        Suite::Identities => identities_suite(max_n, &mut t)?,
    }
    Ok(Report {
        suite,
        checks: t.checks,
        passed: t.failure.is_none(),
        counterexample: t.failure,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Every `σ` in the table for profiles up to `n`, as used by `profile-table`.
pub fn all_profiles(n: usize) -> Vec<Partition> {
    partitions_up_to(n, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for s in [Suite::Sigma, Suite::Flags, Suite::Partial, Suite::Krylov] {
            let r = run_suite(s, 2, &[2]).unwrap();
            assert!(r.passed, "{:?}", r.counterexample);
            assert!(r.checks > 0);
        }
        let r = run_suite(Suite::Identities, 3, &[]).unwrap();
        assert!(r.passed, "{:?}", r.counterexample);
    }

    #[test]
    fn budget_checked_up_front() {
        assert!(matches!(run_suite(Suite::Sigma, 9, &[2]), Err(crate::Error::Budget { .. })));
        assert!(matches!(run_suite(Suite::Identities, 40, &[]), Err(crate::Error::DegreeCap { .. })));
    }

    #[test]
    fn partial_profile_enumeration() {
        let ps = partial_profiles(2);
        let v: Vec<Vec<usize>> = ps.into_iter().map(|r| r.0).collect();
        assert_eq!(v, vec![vec![0, 1], vec![0, 2], vec![1], vec![1, 1], vec![2]]);
    }
}
